//! Dense univariate polynomials over a finite field and their factorization
//! (squarefree, distinct-degree, then Cantor-Zassenhaus equal-degree
//! splitting).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FiniteField;
use crate::poly::{MultiPoly, Vars};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl UPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<u32>) -> UPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FiniteField) -> UPoly {
        UPoly::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> UPoly {
        UPoly::new(field, vec![1])
    }

    /// The polynomial `x`.
    pub fn x(field: &FiniteField) -> UPoly {
        UPoly::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UPoly::new(f, c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(
            &self.field,
            self.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, c)
    }

    pub fn scale(&self, s: u32) -> UPoly {
        UPoly::new(
            &self.field,
            self.coeffs.iter().map(|&c| self.field.mul(c, s)).collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.leading()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(f), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        (UPoly::new(f, q), UPoly::new(f, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        UPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UPoly) -> UPoly {
        let mut acc = UPoly::one(&self.field);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `p`-th root of a polynomial whose exponents are all divisible by `p`.
    fn pth_root(&self) -> UPoly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        UPoly::new(
            f,
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pth_root(c))
                .collect(),
        )
    }

    pub fn to_multipoly(&self, vars: &Vars, var: usize) -> MultiPoly<FiniteField> {
        MultiPoly::from_univariate(&self.field, vars, var, &self.coeffs)
    }

    /// Irreducible monic factors with multiplicities, sorted by degree then
    /// coefficients. Deterministic given `seed`; the result does not depend
    /// on the seed.
    pub fn factor(&self, seed: u64) -> Vec<(UPoly, u32)> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(UPoly, u32)> = Vec::new();
        for (sqfree, mult) in self.monic().squarefree_decomposition() {
            for (g, d) in sqfree.distinct_degree() {
                for factor in g.equal_degree(d, &mut rng) {
                    match out.iter_mut().find(|(h, _)| *h == factor) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((factor, mult)),
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.coeffs
                .len()
                .cmp(&b.0.coeffs.len())
                .then_with(|| a.0.coeffs.iter().rev().cmp(b.0.coeffs.iter().rev()))
        });
        out
    }

    /// Monic squarefree parts `s_i` with `self = prod s_i^{m_i}`.
    fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let p = self.field.characteristic();
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if !z.is_one() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into products of irreducibles of
    /// equal degree.
    fn distinct_degree(&self) -> Vec<(UPoly, usize)> {
        let q = BigUint::from(self.field.order());
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = UPoly::x(&self.field);
        let mut h = x.clone();
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&q, &rest);
            let g = h.sub(&x).gcd(&rest);
            if !g.is_one() {
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
                out.push((g, d));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            let deg = rest.degree().unwrap();
            out.push((rest, deg));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return Vec::new();
        }
        if n == d {
            return vec![self.monic()];
        }
        let f = &self.field;
        loop {
            let a = UPoly::new(f, (0..n).map(|_| rng.gen_range(0..f.order())).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if f.characteristic() == 2 {
                // trace map a + a^2 + ... + a^{2^{kd-1}}
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..(f.degree() as usize * d) {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (BigUint::from(f.order()).pow(d as u32) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&UPoly::one(f))
            };
            let g = b.gcd(self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }
}
