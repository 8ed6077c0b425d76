//! Finite fields `F_{p^k}` with `p^k <= 2^16`.
//!
//! Elements are packed as base-`p` integers: the element
//! `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` (with `a` the class of `X` modulo the
//! defining polynomial) is stored as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! Multiplication goes through discrete log tables built once per field;
//! fields are interned so repeated construction is free.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::arith::is_prime;

/// Largest extension degree over the prime field.
pub const MAX_EXTENSION_DEGREE: u32 = 8;
/// Largest field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree {0} exceeds the cap of {MAX_EXTENSION_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("field of order {p}^{k} exceeds 2^16 elements")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("extensions are built over prime fields, got a field of degree {0}")]
    NotPrimeField(u32),
    #[error("no embedding of F_{p}^{from} into F_{target_p}^{to}")]
    NoEmbedding {
        p: u32,
        from: u32,
        target_p: u32,
        to: u32,
    },
    #[error("elements live in different fields")]
    FieldMismatch,
}

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients of the monic defining polynomial, low degree first
    /// (length `k + 1`). For prime fields this is `[0, 1]`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `frobenius[x] = x^p`.
    frobenius: Vec<u32>,
}

/// A finite field descriptor. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

type FieldCache = Mutex<HashMap<(u32, u32), FiniteField>>;
type EmbeddingCache = Mutex<HashMap<(u32, u32, u32), Arc<Vec<u32>>>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embedding_cache() -> &'static EmbeddingCache {
    static CACHE: OnceLock<EmbeddingCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds `F_p`.
pub fn make_prime_field(p: u64) -> Result<FiniteField, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p > MAX_FIELD_ORDER {
        return Err(FieldError::FieldTooLarge { p, k: 1 });
    }
    let p = p as u32;
    let mut cache = field_cache().lock().unwrap();
    Ok(cache
        .entry((p, 1))
        .or_insert_with(|| FiniteField::build(p, vec![0, 1]))
        .clone())
}

/// Builds `F_{p^k}` over the prime field `base`. The defining polynomial is
/// the first monic irreducible of degree `k` when lower coefficients
/// `(c_0, ..., c_{k-1})` are read as a base-`p` integer with `c_0` least
/// significant.
pub fn make_extension(base: &FiniteField, k: u32) -> Result<FiniteField, FieldError> {
    if base.degree() != 1 {
        return Err(FieldError::NotPrimeField(base.degree()));
    }
    if k == 0 || k > MAX_EXTENSION_DEGREE {
        return Err(FieldError::DegreeTooLarge(k));
    }
    let p = base.characteristic();
    if (p as u64).pow(k) > MAX_FIELD_ORDER {
        return Err(FieldError::FieldTooLarge { p: p as u64, k });
    }
    if k == 1 {
        return Ok(base.clone());
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = first_irreducible(p, k);
    let field = FiniteField::build(p, modulus);
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, k)).or_insert(field).clone())
}

/// `F_{p^k}` directly from the characteristic.
pub fn field_of_order(p: u64, k: u32) -> Result<FiniteField, FieldError> {
    let base = make_prime_field(p)?;
    make_extension(&base, k)
}

fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|n| {
            let mut coeffs = digits_of(n, p, k as usize);
            coeffs.push(1);
            coeffs
        })
        .find(|c| is_irreducible_mod_p(c, p))
        .expect("an irreducible polynomial exists in every degree")
}

fn digits_of(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

/// Trial division of a monic polynomial over `F_p` by every monic polynomial
/// of degree at most half its degree.
pub(crate) fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for n in 0..(p as u64).pow(d as u32) {
            let mut g = digits_of(n, p, d);
            g.push(1);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    deg >= 1
}

fn rem_mod_p(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    // g monic
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * gc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

impl FiniteField {
    fn build(p: u32, modulus: Vec<u32>) -> FiniteField {
        let k = (modulus.len() - 1) as u32;
        let q = p.pow(k);
        let slow = SlowArith {
            p,
            k: k as usize,
            modulus: &modulus,
        };
        let (exp, log) = if q == 2 {
            (vec![1, 1], vec![0, 0])
        } else {
            let order = q - 1;
            let generator = (2..q)
                .chain(std::iter::once(1))
                .find(|&g| slow.order_of(g) == order)
                .expect("multiplicative group is cyclic");
            let mut exp = vec![0u32; 2 * order as usize];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..order {
                exp[i as usize] = x;
                exp[(i + order) as usize] = x;
                log[x as usize] = i;
                x = slow.mul(x, generator);
            }
            (exp, log)
        };
        let order = (q - 1) as u64;
        let frobenius = (0..q)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    exp[((log[x as usize] as u64 * p as u64) % order) as usize]
                }
            })
            .collect();
        FiniteField(Arc::new(FieldData {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            frobenius,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Defining polynomial, low degree first, or `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.0.k > 1).then_some(&self.0.modulus[..])
    }

    /// The prime subfield.
    pub fn prime_field(&self) -> FiniteField {
        make_prime_field(self.0.p as u64).expect("characteristic is a valid prime")
    }

    /// The class of `X`; for a prime field this is `1`.
    pub fn generator(&self) -> u32 {
        if self.0.k == 1 {
            1
        } else {
            self.0.p
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a != 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.0;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &self.0;
        let order = d.q - 1;
        Some(d.exp[((order - d.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &self.0;
        let order = (d.q - 1) as u64;
        let l = (d.log[a as usize] as u64 * (e % order)) % order;
        d.exp[l as usize]
    }

    /// `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.0.frobenius[a as usize]
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Coordinates in the power basis `1, a, ..., a^{k-1}`.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        digits_of(a as u64, self.0.p, self.0.k as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        coords
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.0.p + c % self.0.p)
    }

    pub fn element(&self, value: u32) -> FieldElement {
        FieldElement::new(self, value)
    }

    /// Smallest `e >= 1` with `a^{s^e} = a`, where `s` is the order of `sub`.
    pub fn degree_over(&self, a: u32, sub: &FiniteField) -> u32 {
        let steps = sub.degree();
        let mut x = a;
        let mut e = 0;
        loop {
            for _ in 0..steps {
                x = self.frobenius(x);
            }
            e += 1;
            if x == a {
                return e;
            }
        }
    }

    /// Renders an element as a polynomial in `gen_name` with integer
    /// coefficients.
    pub fn format_element(&self, a: u32, gen_name: &str) -> String {
        if self.0.k == 1 {
            return a.to_string();
        }
        let coords = self.coords(a);
        let mut parts = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => gen_name.to_string(),
                _ => format!("{gen_name}^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

struct SlowArith<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let a = digits_of(a as u64, self.p, self.k);
        let b = digits_of(b as u64, self.p, self.k);
        let mut prod = vec![0u32; 2 * self.k - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = rem_mod_p(&prod, self.modulus, self.p);
        r.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn order_of(&self, g: u32) -> u32 {
        let mut x = g;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, g);
            n += 1;
            if x == 0 {
                return 0;
            }
        }
        n
    }
}

/// A ring embedding `F_{p^a} -> F_{p^b}` with `a | b`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    /// Images of `1, a, ..., a^{k-1}`.
    basis_images: Arc<Vec<u32>>,
}

impl Embedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Embedding, FieldError> {
        let no_embedding = || FieldError::NoEmbedding {
            p: source.characteristic(),
            from: source.degree(),
            target_p: target.characteristic(),
            to: target.degree(),
        };
        if source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return Err(no_embedding());
        }
        let key = (source.characteristic(), source.degree(), target.degree());
        if let Some(images) = embedding_cache().lock().unwrap().get(&key) {
            return Ok(Embedding {
                source: source.clone(),
                target: target.clone(),
                basis_images: images.clone(),
            });
        }
        let images = if source.degree() == 1 {
            vec![1]
        } else {
            let modulus = source.modulus().expect("extension field");
            let root = target
                .elements()
                .find(|&beta| {
                    modulus
                        .iter()
                        .rev()
                        .fold(0, |acc, &c| target.add(target.mul(acc, beta), c))
                        == 0
                })
                .ok_or_else(no_embedding)?;
            let mut powers = Vec::with_capacity(source.degree() as usize);
            let mut x = 1;
            for _ in 0..source.degree() {
                powers.push(x);
                x = target.mul(x, root);
            }
            powers
        };
        let images = Arc::new(images);
        embedding_cache()
            .lock()
            .unwrap()
            .insert(key, images.clone());
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images: images,
        })
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn apply(&self, a: u32) -> u32 {
        if self.source.degree() == 1 {
            return a;
        }
        let t = &self.target;
        self.source
            .coords(a)
            .iter()
            .zip(self.basis_images.iter())
            .fold(0, |acc, (&c, &img)| t.add(acc, t.mul(c, img)))
    }
}

/// Maps an element of `F_q` into `F_{q^m}`.
pub fn embed_element(e: &FieldElement, target: &FiniteField) -> Result<FieldElement, FieldError> {
    let emb = Embedding::new(e.field(), target)?;
    Ok(FieldElement::new(target, emb.apply(e.value())))
}

/// An element bundled with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FiniteField,
    value: u32,
}

impl FieldElement {
    pub fn new(field: &FiniteField, value: u32) -> FieldElement {
        assert!(value < field.order(), "value out of range for {field}");
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.field, self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_element(self.value, "a"))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert_eq!(self.field, rhs.field, "field mismatch");
                self.with(self.field.$op(self.value, rhs.value))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f5 = make_prime_field(5).unwrap();
        assert_eq!(f5.add(2, 3), 0);
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(make_prime_field(4), Err(FieldError::NotPrime(4)));
        assert_eq!(make_prime_field(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn extension_moduli_follow_canonical_order() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(
            make_extension(&f2, 2).unwrap().modulus(),
            Some(&[1, 1, 1][..])
        );
        assert_eq!(
            make_extension(&f2, 3).unwrap().modulus(),
            Some(&[1, 1, 0, 1][..])
        );
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(make_extension(&f3, 1).unwrap(), f3);
        assert_eq!(
            make_extension(&f3, 2).unwrap().modulus(),
            Some(&[1, 0, 1][..])
        );
        assert_eq!(
            make_extension(&f2, 9).unwrap_err(),
            FieldError::DegreeTooLarge(9)
        );
        let f4 = make_extension(&f2, 2).unwrap();
        assert_eq!(
            make_extension(&f4, 2).unwrap_err(),
            FieldError::NotPrimeField(2)
        );
    }

    #[test]
    fn oversized_field_rejected() {
        let f3 = make_prime_field(3).unwrap();
        assert!(matches!(
            make_extension(&f3, 11),
            Err(FieldError::DegreeTooLarge(11))
        ));
        let f17 = make_prime_field(17).unwrap();
        assert!(matches!(
            make_extension(&f17, 4),
            Err(FieldError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn embedding_of_f4_generator_into_f16() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = make_extension(&f2, 2).unwrap();
        let f16 = make_extension(&f2, 4).unwrap();
        let f8 = make_extension(&f2, 3).unwrap();
        let alpha = f4.element(f4.generator());
        let beta = embed_element(&alpha, &f16).unwrap();
        // brute-force the roots of y^2+y+1 in F_16
        let roots: Vec<u32> = f16
            .elements()
            .filter(|&y| f16.add(f16.add(f16.mul(y, y), y), 1) == 0)
            .collect();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&beta.value()));
        let one = embed_element(&f2.element(1), &f4).unwrap();
        assert_eq!(one.value(), 1);
        assert!(matches!(
            embed_element(&alpha, &f8),
            Err(FieldError::NoEmbedding { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f3 = make_prime_field(3).unwrap();
        let f9 = make_extension(&f3, 2).unwrap();
        let f81 = make_extension(&f3, 4).unwrap();
        let emb = Embedding::new(&f9, &f81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(emb.apply(f9.add(a, b)), f81.add(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f9.mul(a, b)), f81.mul(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn degree_over_subfield() {
        let f2 = make_prime_field(2).unwrap();
        let f16 = make_extension(&f2, 4).unwrap();
        let degs: Vec<u32> = f16.elements().map(|a| f16.degree_over(a, &f2)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(degs.iter().filter(|&&d| d == 2).count(), 2);
        assert_eq!(degs.iter().filter(|&&d| d == 4).count(), 12);
    }
}
