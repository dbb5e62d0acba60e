//! Half-integer lattice `(s + t√D)/2` of a quadratic field, and the
//! correspondence between the commutant `C(A) = {B : AB = BA}` of a frame
//! matrix `A = [[e, f], [g, 0]]` and quadratic integers.
//!
//! Every `B ∈ C(A)` is `αI + βA` with `α, β ∈ ℤ` (because `gcd(e, f, g) = 1`),
//! and `embed` evaluates that polynomial at the eigenvalue `(e + k√D)/2` of
//! `A`, where `e² + 4fg = k²D`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::equation::EquationSpec;
use crate::mat2::Mat2;
use crate::numtheory::{gcd3, is_perfect_square, squarefree_decompose, SquarefreeDecomp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("mismatched fields: D = {0} vs D = {1}")]
    MismatchedField(BigInt, BigInt),
    #[error("D = {0} must be square-free and different from 0 and 1")]
    InvalidD(BigInt),
    #[error("result leaves the half-integer lattice")]
    OutsideLattice,
    #[error("norm is not a rational integer")]
    NonIntegralNorm,
    #[error("frame requires fg != 0 and gcd(e, f, g) = 1")]
    BadFrame,
    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(BigInt),
    #[error("matrix does not commute with the frame matrix")]
    NotInCommutant,
    #[error("element is not representable in C(A): {0}")]
    NotRepresentable(&'static str),
}

/// `(s + t√d)/2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadElem {
    pub s: BigInt,
    pub t: BigInt,
    pub d: BigInt,
}

impl QuadElem {
    pub fn new(s: impl Into<BigInt>, t: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, QuadError> {
        let d = d.into();
        let valid = !d.is_zero()
            && !d.is_one()
            && squarefree_decompose(&d).map(|sf| sf.k.is_one()).unwrap_or(false);
        if !valid {
            return Err(QuadError::InvalidD(d));
        }
        Ok(QuadElem {
            s: s.into(),
            t: t.into(),
            d,
        })
    }

    /// The rational integer `n`.
    pub fn integer(n: &BigInt, d: &BigInt) -> Self {
        QuadElem {
            s: BigInt::from(2) * n,
            t: BigInt::zero(),
            d: d.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.t.is_zero()
    }

    /// Membership in the ring of integers of `ℚ(√d)`.
    pub fn is_algebraic_integer(&self) -> bool {
        if self.d.mod_floor(&BigInt::from(4)) == BigInt::one() {
            self.s.is_even() == self.t.is_even()
        } else {
            self.s.is_even() && self.t.is_even()
        }
    }

    fn same_field(&self, other: &QuadElem) -> Result<(), QuadError> {
        if self.d != other.d {
            return Err(QuadError::MismatchedField(self.d.clone(), other.d.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.same_field(other)?;
        Ok(QuadElem {
            s: &self.s + &other.s,
            t: &self.t + &other.t,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.same_field(other)?;
        Ok(QuadElem {
            s: &self.s - &other.s,
            t: &self.t - &other.t,
            d: self.d.clone(),
        })
    }

    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.same_field(other)?;
        let s2 = &self.s * &other.s + &self.d * &self.t * &other.t;
        let t2 = &self.s * &other.t + &self.t * &other.s;
        if s2.is_odd() || t2.is_odd() {
            return Err(QuadError::OutsideLattice);
        }
        Ok(QuadElem {
            s: s2 >> 1u32,
            t: t2 >> 1u32,
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> QuadElem {
        QuadElem {
            s: k * &self.s,
            t: k * &self.t,
            d: self.d.clone(),
        }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem {
            s: self.s.clone(),
            t: -&self.t,
            d: self.d.clone(),
        }
    }

    /// `(s² − t²d)/4`.
    pub fn norm(&self) -> Result<BigInt, QuadError> {
        let four = BigInt::from(4);
        let n = &self.s * &self.s - &self.t * &self.t * &self.d;
        let (q, r) = n.div_rem(&four);
        if !r.is_zero() {
            return Err(QuadError::NonIntegralNorm);
        }
        Ok(q)
    }

    pub fn pow(&self, n: u32) -> Result<QuadElem, QuadError> {
        let mut result = QuadElem::integer(&BigInt::one(), &self.d);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/2", self.s, self.t, self.d)
    }
}

/// `A = [[e, f], [g, 0]]` with `fg ≠ 0` and `gcd(e, f, g) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantFrame {
    pub e: BigInt,
    pub f: BigInt,
    pub g: BigInt,
    /// `e² + 4fg`.
    pub disc: BigInt,
    /// `None` when the discriminant is a perfect square.
    pub sqfree: Option<SquarefreeDecomp>,
}

impl CommutantFrame {
    pub fn new(
        e: impl Into<BigInt>,
        f: impl Into<BigInt>,
        g: impl Into<BigInt>,
    ) -> Result<Self, QuadError> {
        let (e, f, g) = (e.into(), f.into(), g.into());
        if f.is_zero() || g.is_zero() || !gcd3(&e, &f, &g).is_one() {
            return Err(QuadError::BadFrame);
        }
        let disc = &e * &e + BigInt::from(4) * &f * &g;
        let sqfree = if is_perfect_square(&disc) {
            None
        } else {
            Some(squarefree_decompose(&disc).expect("nonsquare discriminant is nonzero"))
        };
        Ok(CommutantFrame {
            e,
            f,
            g,
            disc,
            sqfree,
        })
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.e.clone(), self.f.clone(), self.g.clone(), 0)
    }

    fn decomp(&self) -> Result<&SquarefreeDecomp, QuadError> {
        self.sqfree
            .as_ref()
            .ok_or_else(|| QuadError::SquareDiscriminant(self.disc.clone()))
    }

    /// Square-free part `D` of the discriminant.
    pub fn field(&self) -> Result<&BigInt, QuadError> {
        Ok(&self.decomp()?.d)
    }

    pub fn contains(&self, b: &Mat2) -> bool {
        b.commutes(&self.matrix())
    }

    /// `B = αI + βA  ↦  α + β·(e + k√D)/2`.
    pub fn embed(&self, b: &Mat2) -> Result<QuadElem, QuadError> {
        let sf = self.decomp()?;
        if !self.contains(b) {
            return Err(QuadError::NotInCommutant);
        }
        let (beta, r) = b.e12.div_rem(&self.f);
        if !r.is_zero() || b.e21 != &beta * &self.g || &b.e11 - &b.e22 != &beta * &self.e {
            return Err(QuadError::NotInCommutant);
        }
        Ok(QuadElem {
            s: b.trace(),
            t: beta * &sf.k,
            d: sf.d.clone(),
        })
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn lift(&self, x: &QuadElem) -> Result<Mat2, QuadError> {
        let sf = self.decomp()?;
        if x.d != sf.d {
            return Err(QuadError::MismatchedField(x.d.clone(), sf.d.clone()));
        }
        let (beta, r) = x.t.div_rem(&sf.k);
        if !r.is_zero() {
            return Err(QuadError::NotRepresentable("k does not divide t"));
        }
        let twice_alpha = &x.s - &beta * &self.e;
        if twice_alpha.is_odd() {
            return Err(QuadError::NotRepresentable("non-integral entries"));
        }
        let alpha = twice_alpha >> 1u32;
        Ok(&Mat2::scalar(alpha) + &self.matrix().scale(&beta))
    }
}

/// A nontrivial solution of `a·x^m + b·y^n = c` in the image of `C(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantHit {
    pub x: QuadElem,
    pub y: QuadElem,
    pub mat_x: Mat2,
    pub mat_y: Mat2,
}

/// Exhaustive search over `x, y = (s + t√D)/2` with `|s|, |t| ≤ bound` that
/// lift into `C(A)`, keeping pairs with `a·x^m + b·y^n = c` and
/// `det(XY) ≠ 0`. Sorted by `(x.s, x.t, y.s, y.t)`.
pub fn commutant_search(
    spec: &EquationSpec,
    frame: &CommutantFrame,
    bound: u32,
) -> Result<Vec<CommutantHit>, QuadError> {
    let d = frame.field()?.clone();
    let b = i64::from(bound);
    let mut elems = Vec::new();
    for s in -b..=b {
        for t in -b..=b {
            let x = QuadElem {
                s: BigInt::from(s),
                t: BigInt::from(t),
                d: d.clone(),
            };
            if let Ok(mat) = frame.lift(&x) {
                // Zero norm means a singular matrix, which is never part of
                // a nontrivial pair.
                if !mat.det().is_zero() {
                    elems.push((x, mat));
                }
            }
        }
    }

    let mut by_rhs: BTreeMap<QuadElem, Vec<usize>> = BTreeMap::new();
    for (i, (y, _)) in elems.iter().enumerate() {
        let val = y.pow(spec.n)?.scale(&spec.b);
        by_rhs.entry(val).or_default().push(i);
    }
    let c = QuadElem::integer(&spec.c, &d);
    let mut hits = Vec::new();
    for (x, mx) in &elems {
        let target = c.sub(&x.pow(spec.m)?.scale(&spec.a))?;
        if let Some(ys) = by_rhs.get(&target) {
            for &j in ys {
                let (y, my) = &elems[j];
                debug_assert!(spec.holds(mx, my));
                hits.push(CommutantHit {
                    x: x.clone(),
                    y: y.clone(),
                    mat_x: mx.clone(),
                    mat_y: my.clone(),
                });
            }
        }
    }
    hits.sort_by(|p, q| {
        (&p.x.s, &p.x.t, &p.y.s, &p.y.t).cmp(&(&q.x.s, &q.x.t, &q.y.s, &q.y.t))
    });
    Ok(hits)
}
