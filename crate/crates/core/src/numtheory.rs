//! Integer primitives: squares, Legendre symbols, square-free parts and the
//! Pell-type equations `u² − D·v² = N` that index the commuting families.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumTheoryError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("square-free decomposition of zero is undefined")]
    Zero,
    #[error("Pell parameter {0} must be a positive non-square")]
    BadPellParameter(BigInt),
    #[error("−ab = {0} is a perfect square")]
    SquareProduct(BigInt),
}

/// A solution of `u² − d·v² = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub u: BigInt,
    pub v: BigInt,
    pub d: BigInt,
    pub n: BigInt,
}

impl PellSolution {
    pub fn holds(&self) -> bool {
        &self.u * &self.u - &self.d * &self.v * &self.v == self.n
    }
}

/// `input = k² · d` with `d` square-free and `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomp {
    pub input: BigInt,
    pub d: BigInt,
    pub k: BigInt,
}

/// `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// `Some(t)` with `t ≥ 0` and `t² = n`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Trial division; inputs here are small.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let two = BigInt::from(2);
    if n.is_even() {
        return *n == two;
    }
    let limit = isqrt(n);
    let mut d = BigInt::from(3);
    while d <= limit {
        if (n % &d).is_zero() {
            return false;
        }
        d += &two;
    }
    true
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8, NumTheoryError> {
    if p.is_even() || !is_prime(p) {
        return Err(NumTheoryError::NotOddPrime(p.clone()));
    }
    let r = a.mod_floor(p);
    if r.is_zero() {
        return Ok(0);
    }
    let e = (p - 1u32) >> 1;
    let s = r.modpow(&e, p);
    Ok(if s.is_one() { 1 } else { -1 })
}

pub fn squarefree_decompose(n: &BigInt) -> Result<SquarefreeDecomp, NumTheoryError> {
    if n.is_zero() {
        return Err(NumTheoryError::Zero);
    }
    let mut rest = n.abs();
    let mut d = BigInt::one();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1u32;
    }
    d *= rest;
    if n.is_negative() {
        d = -d;
    }
    Ok(SquarefreeDecomp {
        input: n.clone(),
        d,
        k,
    })
}

/// Minimal positive solution of `u² − d·v² = 1` from the continued
/// fraction of `√d`.
pub fn pell_fundamental(d: &BigInt) -> Result<PellSolution, NumTheoryError> {
    if *d < BigInt::from(2) || is_perfect_square(d) {
        return Err(NumTheoryError::BadPellParameter(d.clone()));
    }
    let a0 = isqrt(d);
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            let sol = PellSolution {
                u: h,
                v: k,
                d: d.clone(),
                n: BigInt::one(),
            };
            debug_assert!(sol.holds());
            return Ok(sol);
        }
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = core::mem::replace(&mut h, h_next);
        k_prev = core::mem::replace(&mut k, k_next);
    }
}

fn sign_rank(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Output order for `(u, v)` lists: `(|u|, |v|, sign u, sign v)`.
pub fn uv_order(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> Ordering {
    x.0.abs()
        .cmp(&y.0.abs())
        .then_with(|| x.1.abs().cmp(&y.1.abs()))
        .then_with(|| sign_rank(&x.0).cmp(&sign_rank(&y.0)))
        .then_with(|| sign_rank(&x.1).cmp(&sign_rank(&y.1)))
}

fn with_signs(set: &mut BTreeSet<(BigInt, BigInt)>, u: &BigInt, v: &BigInt) {
    for su in [u.clone(), -u] {
        for sv in [v.clone(), -v] {
            set.insert((su.clone(), sv));
        }
    }
}

fn sorted(set: BTreeSet<(BigInt, BigInt)>) -> Vec<(BigInt, BigInt)> {
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort_by(uv_order);
    out
}

/// Solutions of `u² + ab·v² = c²`, truncated or complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UvSolutions {
    pub pairs: Vec<(BigInt, BigInt)>,
    /// `false` when the solution set is infinite and `pairs` is a prefix.
    pub complete: bool,
}

fn check_product(a: &BigInt, b: &BigInt) -> Result<BigInt, NumTheoryError> {
    let ab = a * b;
    let neg = -&ab;
    if is_perfect_square(&neg) {
        return Err(NumTheoryError::SquareProduct(neg));
    }
    Ok(ab)
}

fn finite_uv(ab: &BigInt, c: &BigInt) -> BTreeSet<(BigInt, BigInt)> {
    let c2 = c * c;
    let mut set = BTreeSet::new();
    let mut v = BigInt::zero();
    while ab * &v * &v <= c2 {
        if let Some(u) = exact_sqrt(&(&c2 - ab * &v * &v)) {
            with_signs(&mut set, &u, &v);
        }
        v += 1u32;
    }
    set
}

fn mul_unit(u: &BigInt, v: &BigInt, x: &BigInt, y: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    (u * x + d * v * y, u * y + v * x)
}

/// All solutions of `u² − d·v² = n` (`n > 0`, `d` non-square) with
/// `|u| ≤ u_max`, as orbits of the classical base solutions under the
/// fundamental unit.
fn pell_general_upto(d: &BigInt, n: &BigInt, u_max: &BigInt) -> BTreeSet<(BigInt, BigInt)> {
    let unit = pell_fundamental(d).expect("d is a positive non-square");
    let (x1, y1) = (&unit.u, &unit.v);
    // Base solutions of every class satisfy 0 ≤ v ≤ y1·√(n / (2(x1+1))).
    let v_max = isqrt(&(y1 * y1 * n / (BigInt::from(2) * (x1 + 1u32)))) + 1u32;
    let mut bases = Vec::new();
    let mut v = BigInt::zero();
    while v <= v_max {
        if let Some(u) = exact_sqrt(&(n + d * &v * &v)) {
            bases.push((u, v.clone()));
        }
        v += 1u32;
    }

    let mut set = BTreeSet::new();
    let inv_y1 = -y1;
    for (bu, bv) in &bases {
        for (su, sv) in [
            (bu.clone(), bv.clone()),
            (-bu, bv.clone()),
            (bu.clone(), -bv),
            (-bu, -bv),
        ] {
            for step_y in [y1, &inv_y1] {
                let (mut u, mut v) = (su.clone(), sv.clone());
                loop {
                    if u.abs() <= *u_max {
                        debug_assert!(&u * &u - d * &v * &v == *n);
                        with_signs(&mut set, &u, &v);
                    }
                    let (nu, nv) = mul_unit(&u, &v, x1, step_y, d);
                    // |u| along an orbit is unimodal, so once it grows past
                    // the cap it never returns.
                    if nu.abs() > *u_max && nu.abs() > u.abs() {
                        break;
                    }
                    u = nu;
                    v = nv;
                }
            }
        }
    }
    set
}

/// All integer `(u, v)` with `u² + ab·v² = c²` and `|u| ≤ u_max`.
pub fn uv_solutions_upto(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    u_max: &BigInt,
) -> Result<Vec<(BigInt, BigInt)>, NumTheoryError> {
    let ab = check_product(a, b)?;
    let set = if ab.is_positive() {
        finite_uv(&ab, c)
            .into_iter()
            .filter(|(u, _)| u.abs() <= *u_max)
            .collect()
    } else {
        pell_general_upto(&-&ab, &(c * c), u_max)
    };
    Ok(sorted(set))
}

/// Solutions of `u² + ab·v² = c²` in `(|u|, |v|, sign)` order.
///
/// For `ab > 0` the set is finite and returned in full regardless of
/// `limit`; otherwise the first `limit` solutions are returned.
pub fn uv_solutions(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    limit: usize,
) -> Result<UvSolutions, NumTheoryError> {
    let ab = check_product(a, b)?;
    if ab.is_positive() {
        return Ok(UvSolutions {
            pairs: sorted(finite_uv(&ab, c)),
            complete: true,
        });
    }
    let d = -&ab;
    let n = c * c;
    let mut cap = c.abs().max(BigInt::one());
    loop {
        let set = pell_general_upto(&d, &n, &cap);
        if set.len() >= limit {
            let mut pairs = sorted(set);
            pairs.truncate(limit);
            return Ok(UvSolutions {
                pairs,
                complete: false,
            });
        }
        cap *= 4u32;
    }
}

/// Integer pairs with `a·t1² + b·t2² = c`.
///
/// When `a` and `b` share a sign the search range is the natural one and the
/// list is complete; otherwise `|t1|, |t2| ≤ bound`. Sorted by `(t1, t2)`.
pub fn represent(a: &BigInt, b: &BigInt, c: &BigInt, bound: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if a.is_zero() || b.is_zero() {
        return out;
    }
    let same_sign = a.signum() == b.signum();
    let t1_max = if same_sign {
        let target = c * a.signum();
        if target.is_negative() {
            return out;
        }
        isqrt(&(target / a.abs()))
    } else {
        BigInt::from(bound)
    };
    let t2_max = if same_sign { None } else { Some(BigInt::from(bound)) };
    let mut t1 = -&t1_max;
    while t1 <= t1_max {
        let rest = c - a * &t1 * &t1;
        if rest.is_multiple_of(b) {
            if let Some(t2) = exact_sqrt(&(rest / b)) {
                if t2_max.as_ref().is_none_or(|m| t2 <= *m) {
                    if t2.is_zero() {
                        out.push((t1.clone(), t2));
                    } else {
                        out.push((t1.clone(), -&t2));
                        out.push((t1.clone(), t2));
                    }
                }
            }
        }
        t1 += 1u32;
    }
    out
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// Exact integer `n`-th root of `x` when it exists (any sign for odd `n`).
pub fn exact_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let r = x.abs().nth_root(n);
    let r = if x.is_negative() { -r } else { r };
    (num_traits::Pow::pow(&r, n) == *x).then_some(r)
}
