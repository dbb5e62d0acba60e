//! Exact 2×2 integer matrices.
//!
//! Powers are computed from the trace/determinant recurrence
//! `y_j = T·y_{j-1} − D·y_{j-2}` with `y_0 = 1`, `y_{-1} = 0`, which gives
//!
//! ```text
//! A^n = [[y_n − h·y_{n−1},  f·y_{n−1}      ],
//!        [g·y_{n−1},        y_n − e·y_{n−1}]]     for A = [[e, f], [g, h]].
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

/// A 2×2 matrix over ℤ, `[[e11, e12], [e21, e22]]`.
///
/// The derived ordering is lexicographic on `(e11, e12, e21, e22)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub e11: BigInt,
    pub e12: BigInt,
    pub e21: BigInt,
    pub e22: BigInt,
}

/// The triple `(e11 − e22, e12, e21)`; two matrices commute iff their
/// triples are linearly dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommVector {
    pub v1: BigInt,
    pub v2: BigInt,
    pub v3: BigInt,
}

impl CommVector {
    pub fn cross(&self, other: &CommVector) -> [BigInt; 3] {
        [
            &self.v2 * &other.v3 - &self.v3 * &other.v2,
            &self.v3 * &other.v1 - &self.v1 * &other.v3,
            &self.v1 * &other.v2 - &self.v2 * &other.v1,
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.v1.is_zero() && self.v2.is_zero() && self.v3.is_zero()
    }
}

/// Minimal `k` with `A^k` scalar, together with the scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarPowerClass {
    /// One of 1, 2, 3, 4, 6.
    pub order: u32,
    /// `A^order = value · I`.
    pub value: BigInt,
}

impl Mat2 {
    pub fn new(
        e11: impl Into<BigInt>,
        e12: impl Into<BigInt>,
        e21: impl Into<BigInt>,
        e22: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            e11: e11.into(),
            e12: e12.into(),
            e21: e21.into(),
            e22: e22.into(),
        }
    }

    pub fn from_array(e: [i64; 4]) -> Self {
        Mat2::new(e[0], e[1], e[2], e[3])
    }

    pub fn identity() -> Self {
        Mat2::scalar(BigInt::one())
    }

    pub fn zero() -> Self {
        Mat2::scalar(BigInt::zero())
    }

    pub fn scalar(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        Mat2 {
            e11: v.clone(),
            e12: BigInt::zero(),
            e21: BigInt::zero(),
            e22: v,
        }
    }

    pub fn diag(d1: impl Into<BigInt>, d2: impl Into<BigInt>) -> Self {
        Mat2::new(d1, BigInt::zero(), BigInt::zero(), d2)
    }

    /// Traceless matrix `[[t1, t2], [t3, −t1]]`.
    pub fn traceless(t1: &BigInt, t2: &BigInt, t3: &BigInt) -> Self {
        Mat2 {
            e11: t1.clone(),
            e12: t2.clone(),
            e21: t3.clone(),
            e22: -t1,
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn trace(&self) -> BigInt {
        &self.e11 + &self.e22
    }

    pub fn det(&self) -> BigInt {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    /// `T² − 4D`, the discriminant of the characteristic polynomial.
    pub fn discriminant(&self) -> BigInt {
        let t = self.trace();
        &t * &t - BigInt::from(4) * self.det()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.e12.is_zero() && self.e21.is_zero() && self.e11 == self.e22
    }

    /// The scalar `λ` if `self = λI`.
    pub fn scalar_value(&self) -> Option<&BigInt> {
        self.is_scalar().then_some(&self.e11)
    }

    pub fn scale(&self, k: &BigInt) -> Mat2 {
        Mat2 {
            e11: k * &self.e11,
            e12: k * &self.e12,
            e21: k * &self.e21,
            e22: k * &self.e22,
        }
    }

    /// Entrywise exact division; `None` unless every entry is divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Mat2> {
        if k.is_zero() {
            return None;
        }
        let div = |x: &BigInt| -> Option<BigInt> {
            let (q, r) = num_integer::Integer::div_rem(x, k);
            r.is_zero().then_some(q)
        };
        Some(Mat2 {
            e11: div(&self.e11)?,
            e12: div(&self.e12)?,
            e21: div(&self.e21)?,
            e22: div(&self.e22)?,
        })
    }

    pub fn comm_vector(&self) -> CommVector {
        CommVector {
            v1: &self.e11 - &self.e22,
            v2: self.e12.clone(),
            v3: self.e21.clone(),
        }
    }

    /// `AB = BA`, decided by the cross product of the two commutation
    /// vectors.
    pub fn commutes(&self, other: &Mat2) -> bool {
        let c = self.comm_vector().cross(&other.comm_vector());
        c.iter().all(Zero::is_zero)
    }

    /// The sequence `y_{-1}, y_0, …, y_n` for this matrix's trace and
    /// determinant; returns `(y_{n-1}, y_n)`.
    fn recurrence_pair(&self, n: u32) -> (BigInt, BigInt) {
        let t = self.trace();
        let d = self.det();
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        for _ in 0..n {
            let next = &t * &cur - &d * &prev;
            prev = core::mem::replace(&mut cur, next);
        }
        (prev, cur)
    }

    /// `A^n` in closed form. `n = 0` gives the identity.
    pub fn pow_closed(&self, n: u32) -> Mat2 {
        let (y_prev, y_n) = self.recurrence_pair(n);
        Mat2 {
            e11: &y_n - &self.e22 * &y_prev,
            e12: &self.e12 * &y_prev,
            e21: &self.e21 * &y_prev,
            e22: &y_n - &self.e11 * &y_prev,
        }
    }

    /// The scalar-power order of `A`, or `None` when no power is scalar.
    ///
    /// Case tests, with `T` the trace and `D` the determinant:
    /// `k = 1` iff scalar; `k = 2` iff `T = 0` and `A ≠ 0`; for `T ≠ 0`,
    /// `T² = D`, `2D`, `3D` give `k = 3, 4, 6` with `A^k = −T³, −D², −D³`.
    pub fn scalar_order(&self) -> Option<ScalarPowerClass> {
        if let Some(v) = self.scalar_value() {
            return Some(ScalarPowerClass {
                order: 1,
                value: v.clone(),
            });
        }
        let t = self.trace();
        let d = self.det();
        if t.is_zero() {
            // A is nonzero here, so A² = (e11² + e12·e21)·I = −D·I.
            return Some(ScalarPowerClass {
                order: 2,
                value: -d,
            });
        }
        let t2 = &t * &t;
        if t2 == d {
            Some(ScalarPowerClass {
                order: 3,
                value: -(&t2 * &t),
            })
        } else if t2 == BigInt::from(2) * &d {
            Some(ScalarPowerClass {
                order: 4,
                value: -(&d * &d),
            })
        } else if t2 == BigInt::from(3) * &d {
            Some(ScalarPowerClass {
                order: 6,
                value: -(&d * &d * &d),
            })
        } else {
            None
        }
    }

    /// `λ` with `A^m = λI`, if any.
    ///
    /// For nonsingular `A` this uses `k | m`; singular matrices fall back
    /// to the closed-form power.
    pub fn scalar_power(&self, m: u32) -> Option<BigInt> {
        if self.det().is_zero() {
            return self.pow_closed(m).scalar_value().cloned();
        }
        let class = self.scalar_order()?;
        if !m.is_multiple_of(class.order) {
            return None;
        }
        Some(Pow::pow(&class.value, m / class.order))
    }

    pub fn abs_max(&self) -> BigInt {
        self.entries()
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 + &rhs.e11,
            e12: &self.e12 + &rhs.e12,
            e21: &self.e21 + &rhs.e21,
            e22: &self.e22 + &rhs.e22,
        }
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 - &rhs.e11,
            e12: &self.e12 - &rhs.e12,
            e21: &self.e21 - &rhs.e21,
            e22: &self.e22 - &rhs.e22,
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            e12: &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            e21: &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            e22: &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        }
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2 {
            e11: -&self.e11,
            e12: -&self.e12,
            e21: -&self.e21,
            e22: -&self.e22,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Mat2 {
            type Output = Mat2;
            fn $f(self, rhs: Mat2) -> Mat2 {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseMatError {
    #[error("expected `[[a,b],[c,d]]`, got {0:?}")]
    Shape(String),
    #[error("invalid integer entry {0:?}")]
    Entry(String),
}

impl FromStr for Mat2 {
    type Err = ParseMatError;

    /// Parses `[[e11,e12],[e21,e22]]`; whitespace anywhere is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let shape_err = || ParseMatError::Shape(String::from(s));
        let inner = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(shape_err)?;
        let (row1, row2) = inner.split_once("],[").ok_or_else(shape_err)?;
        let mut entries = Vec::with_capacity(4);
        for row in [row1, row2] {
            let (x, y) = row.split_once(',').ok_or_else(shape_err)?;
            for tok in [x, y] {
                let valid = !tok.is_empty()
                    && tok
                        .strip_prefix('-')
                        .unwrap_or(tok)
                        .chars()
                        .all(|c| c.is_ascii_digit());
                let parsed = valid.then(|| tok.parse::<BigInt>().ok()).flatten();
                entries.push(parsed.ok_or_else(|| ParseMatError::Entry(String::from(tok)))?);
            }
        }
        let mut it = entries.into_iter();
        let mut next = || it.next().expect("four entries");
        Ok(Mat2 {
            e11: next(),
            e12: next(),
            e21: next(),
            e22: next(),
        })
    }
}

/// Every matrix with entries in `[-bound, bound]`, in lexicographic order.
pub fn all_bounded(bound: u32) -> Vec<Mat2> {
    let b = i64::from(bound);
    let side = (2 * b + 1) as usize;
    let mut out = Vec::with_capacity(side.pow(4));
    for e11 in -b..=b {
        for e12 in -b..=b {
            for e21 in -b..=b {
                for e22 in -b..=b {
                    out.push(Mat2::from_array([e11, e12, e21, e22]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m(e: [i64; 4]) -> Mat2 {
        Mat2::from_array(e)
    }

    fn naive_pow(a: &Mat2, n: u32) -> Mat2 {
        (0..n).fold(Mat2::identity(), |acc, _| &acc * a)
    }

    #[test]
    fn arithmetic_examples() {
        let a = m([3, 1, 2, 5]);
        assert_eq!(&Mat2::identity() * &a, a);
        let fib = m([1, 1, 1, 0]);
        assert_eq!(&fib * &fib, m([2, 1, 1, 1]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.scale(&BigInt::from(-2)), m([-6, -2, -4, -10]));
    }

    #[test]
    fn closed_power_examples() {
        let a = m([3, 1, 2, 5]);
        assert_eq!(a.pow_closed(1), a);
        assert_eq!(a.pow_closed(0), Mat2::identity());
        assert_eq!(m([1, 1, 1, 0]).pow_closed(10), m([89, 55, 55, 34]));
        assert_eq!(m([0, 1, -1, 0]).pow_closed(2), m([-1, 0, 0, -1]));
    }

    #[test]
    fn closed_power_matches_naive_small() {
        for a in all_bounded(2).iter().step_by(7) {
            for n in 0..=9 {
                assert_eq!(a.pow_closed(n), naive_pow(a, n), "{a}^{n}");
            }
        }
    }

    #[test]
    fn commutes_examples() {
        assert!(Mat2::identity().commutes(&m([1, 2, 3, 4])));
        assert!(m([2, 2, 3, 1]).commutes(&m([3, 4, 6, 1])));
        assert!(!m([0, 1, -1, 0]).commutes(&m([0, 1, -2, 0])));
    }

    #[test]
    fn scalar_order_examples() {
        let c = m([3, 0, 0, 3]).scalar_order().unwrap();
        assert_eq!((c.order, c.value), (1, BigInt::from(3)));
        let c = m([1, 1, -1, 0]).scalar_order().unwrap();
        assert_eq!((c.order, c.value), (3, BigInt::from(-1)));
        let c = m([1, 1, -1, 1]).scalar_order().unwrap();
        assert_eq!((c.order, c.value), (4, BigInt::from(-4)));
        let c = m([2, 1, -1, 1]).scalar_order().unwrap();
        assert_eq!((c.order, c.value), (6, BigInt::from(-27)));
        let c = Mat2::zero().scalar_order().unwrap();
        assert_eq!((c.order, c.value), (1, BigInt::zero()));
        // nilpotent
        let c = m([0, 1, 0, 0]).scalar_order().unwrap();
        assert_eq!((c.order, c.value), (2, BigInt::zero()));
        assert_eq!(m([1, 0, 0, 0]).scalar_order(), None);
        assert_eq!(m([1, 1, 1, 0]).scalar_order(), None);
    }

    #[test]
    fn scalar_power_examples() {
        assert_eq!(m([0, 1, -1, 0]).scalar_power(6), Some(BigInt::from(-1)));
        assert_eq!(m([1, 1, -1, 0]).scalar_power(4), None);
        assert_eq!(m([1, 1, -1, 0]).scalar_power(6), Some(BigInt::from(1)));
        for e in 1..8 {
            assert_eq!(
                Mat2::scalar(5).scalar_power(e),
                Some(BigInt::from(5).pow(e))
            );
        }
        assert_eq!(m([0, 1, 0, 0]).scalar_power(1), None);
        assert_eq!(m([0, 1, 0, 0]).scalar_power(5), Some(BigInt::zero()));
        assert_eq!(Mat2::zero().scalar_power(3), Some(BigInt::zero()));
    }

    #[test]
    fn order_four_value_forms_agree() {
        // −4((a+d)/2)^4 and −(ad−bc)^2 describe the same scalar.
        for a in all_bounded(3) {
            if let Some(c) = a.scalar_order() {
                if c.order == 4 {
                    let half = a.trace() / BigInt::from(2);
                    assert_eq!(c.value, -BigInt::from(4) * half.pow(4u32));
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let a: Mat2 = " [[ 1, -2 ],[30,-4]] ".parse().unwrap();
        assert_eq!(a, m([1, -2, 30, -4]));
        assert_eq!(a.to_string(), "[[1,-2],[30,-4]]");
        assert_eq!(a.to_string().parse::<Mat2>().unwrap(), a);
        let big: Mat2 = "[[123456789012345678901234567890,0],[0,-1]]".parse().unwrap();
        assert_eq!(big.e22, BigInt::from(-1));
        assert!(matches!("[[1,2],[3]]".parse::<Mat2>(), Err(ParseMatError::Shape(_))));
        assert!(matches!("[[1,x],[3,4]]".parse::<Mat2>(), Err(ParseMatError::Entry(_))));
        assert!(matches!("[[1,+2],[3,4]]".parse::<Mat2>(), Err(ParseMatError::Entry(_))));
        assert!("[1,2,3,4]".parse::<Mat2>().is_err());
    }

    #[test]
    fn div_exact_requires_divisibility() {
        assert_eq!(m([2, 4, -6, 0]).div_exact(&BigInt::from(-2)), Some(m([-1, -2, 3, 0])));
        assert_eq!(m([2, 3, 0, 0]).div_exact(&BigInt::from(2)), None);
        assert_eq!(m([2, 3, 0, 0]).div_exact(&BigInt::zero()), None);
    }
}
