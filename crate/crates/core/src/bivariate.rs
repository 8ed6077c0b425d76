//! Gcd, radical and `p`-th roots for polynomials in two variables over a
//! finite field, viewing `F_q[x, y]` as `F_q[x][y]`.

use crate::field::FiniteField;
use crate::geometry::Poly;
use crate::poly::Monomial;
use crate::upoly::UPoly;

/// Coefficients in `x` of `y^0, y^1, ...`.
type Dense = Vec<UPoly>;

fn to_dense(f: &Poly) -> Dense {
    assert_eq!(f.nvars(), 2, "bivariate polynomial expected");
    let field = f.ring();
    let dy = f.degree_in(1).unwrap_or(0) as usize;
    let dx = f.degree_in(0).unwrap_or(0) as usize;
    let mut rows = vec![vec![0u32; dx + 1]; dy + 1];
    for (m, c) in f.terms() {
        rows[m.exps()[1] as usize][m.exps()[0] as usize] = *c;
    }
    let mut out: Dense = rows.into_iter().map(|r| UPoly::new(field, r)).collect();
    trim(&mut out);
    out
}

fn from_dense(d: &Dense, like: &Poly) -> Poly {
    let mut terms = Vec::new();
    for (j, u) in d.iter().enumerate() {
        for (i, &c) in u.coeffs().iter().enumerate() {
            terms.push((Monomial::new(vec![i as u32, j as u32]), c));
        }
    }
    Poly::from_terms(like.ring(), like.vars(), terms)
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(UPoly::is_zero) {
        d.pop();
    }
}

fn content(d: &Dense, field: &FiniteField) -> UPoly {
    d.iter().fold(UPoly::zero(field), |acc, c| acc.gcd(c))
}

fn primitive(d: &Dense, field: &FiniteField) -> Dense {
    let c = content(d, field);
    if c.is_zero() || c.is_one() {
        return d.clone();
    }
    d.iter().map(|u| u.div_rem(&c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in `y`.
fn prem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Dense = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

/// Monic gcd (leading term in the graded reverse lexicographic order).
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let field = f.ring().clone();
    let (a, b) = (to_dense(f), to_dense(g));
    let c = content(&a, &field).gcd(&content(&b, &field));
    let (mut a, mut b) = (primitive(&a, &field), primitive(&b, &field));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            b = Vec::new();
            break;
        }
        b = primitive(&r, &field);
    }
    let pp: Dense = if b.is_empty() {
        a
    } else {
        // b is a nonzero polynomial in x only, coprime to the primitive a
        vec![UPoly::one(&field)]
    };
    let result: Dense = pp.iter().map(|u| u.mul(&c)).collect();
    from_dense(&result, f).monic()
}

/// Exact quotient `f / g`, panicking when `g` does not divide `f`.
fn div(f: &Poly, g: &Poly) -> Poly {
    f.div_exact(g).expect("exact division")
}

pub fn lcm(f: &Poly, g: &Poly) -> Poly {
    div(&f.mul(g), &gcd(f, g)).monic()
}

/// `h` with `h^p = f`, when every exponent of `f` is divisible by `p`.
pub fn pth_root(f: &Poly) -> Option<Poly> {
    let field = f.ring();
    let p = field.characteristic();
    if f.is_constant() || f.terms().any(|(m, _)| m.exps().iter().any(|e| e % p != 0)) {
        return None;
    }
    Some(Poly::from_terms(
        field,
        f.vars(),
        f.terms().map(|(m, c)| {
            (
                Monomial::new(m.exps().iter().map(|e| e / p).collect()),
                field.pth_root(*c),
            )
        }),
    ))
}

/// The product of the distinct irreducible factors of `f`, made monic.
pub fn radical(f: &Poly) -> Poly {
    assert!(!f.is_zero(), "radical of zero");
    let mut f = f.monic();
    while let Some(h) = pth_root(&f) {
        f = h;
    }
    if f.is_constant() {
        return f;
    }
    let u = gcd(&f, &gcd(&f.derivative(0), &f.derivative(1)));
    if u.is_constant() {
        return f;
    }
    let v = div(&f, &u);
    lcm(&v, &radical(&u))
}
