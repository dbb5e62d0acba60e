//! Parametric solution families.
//!
//! Commuting solutions of `aX² + bY² = cI` (with `−ab` nonsquare) split into
//! scalar pairs, a scalar/traceless mix, and a family indexed by the
//! solutions `(u, v)` of `u² + ab·v² = c²`. Non-commuting solutions of the
//! quadratic and quartic equations are pairs of traceless matrices.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::equation::EquationSpec;
use crate::mat2::Mat2;
use crate::numtheory::{gcd, gcd3, is_perfect_square, uv_solutions, NumTheoryError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("constraint violated: {0}")]
    Constraint(&'static str),
    #[error("parameter vectors are linearly dependent")]
    Dependent,
    #[error("diagonal right-hand side needs c1 != c2")]
    EqualDiagonal,
    #[error("-ab is a perfect square")]
    SquareProduct,
    #[error("c must be nonzero")]
    ZeroC,
    #[error("gcd(a, b, c) must be 1")]
    NotCoprime,
    #[error("u = c is excluded")]
    UEqualsC,
    #[error("(u, v) does not satisfy u^2 + ab v^2 = c^2")]
    NotOnConic,
    #[error("wrong family for this operation")]
    WrongFamily,
    #[error("pair does not have the shape of {0}")]
    Shape(&'static str),
    #[error("constructed pair failed direct verification")]
    Defect,
}

impl From<NumTheoryError> for FamilyError {
    fn from(e: NumTheoryError) -> Self {
        match e {
            NumTheoryError::SquareProduct(_) => FamilyError::SquareProduct,
            NumTheoryError::Zero => FamilyError::ZeroC,
            _ => FamilyError::NotOnConic,
        }
    }
}

/// Data of one member of the Pell-indexed commuting family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellFamily {
    pub u: BigInt,
    pub v: BigInt,
    pub g: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl PellFamily {
    pub fn new(
        u: impl Into<BigInt>,
        v: impl Into<BigInt>,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self, FamilyError> {
        let (u, v, a, b, c) = (u.into(), v.into(), a.into(), b.into(), c.into());
        if c.is_zero() {
            return Err(FamilyError::ZeroC);
        }
        if u == c {
            return Err(FamilyError::UEqualsC);
        }
        if &u * &u + &a * &b * &v * &v != &c * &c {
            return Err(FamilyError::NotOnConic);
        }
        let g = gcd(&(&v * &a), &(&u - &c));
        Ok(PellFamily { u, v, g, a, b, c })
    }

    /// `(u − c)/g`, the multiplier of `t2`, `t3` in `X`.
    pub fn x_step(&self) -> BigInt {
        (&self.u - &self.c) / &self.g
    }

    /// `va/g`, the multiplier of `t2`, `t3` in `Y`.
    pub fn y_step(&self) -> BigInt {
        &self.v * &self.a / &self.g
    }

    /// The pair as linear forms in `t1..t4`.
    pub fn shape(&self) -> FamilyShape {
        let z = BigInt::zero;
        let one = BigInt::one;
        let (q, r) = (self.x_step(), self.y_step());
        let vb = &self.v * &self.b;
        let va = &self.v * &self.a;
        FamilyShape {
            x: [
                LinearForm::new([one(), z(), z(), z()], one()),
                LinearForm::new([z(), q.clone(), z(), z()], one()),
                LinearForm::new([z(), z(), q, z()], one()),
                LinearForm::new([self.u.clone(), z(), z(), vb], self.c.clone()),
            ],
            y: [
                LinearForm::new([z(), z(), z(), one()], one()),
                LinearForm::new([z(), r.clone(), z(), z()], one()),
                LinearForm::new([z(), z(), r, z()], one()),
                LinearForm::new([va, z(), z(), -&self.u], self.c.clone()),
            ],
        }
    }

    /// `g²(a·t1² + b·t4²) + 2ac·t2·t3·(c − u) = c·g²`, the cleared form of
    /// the quadratic side condition.
    fn quadratic_condition(&self, t: &[BigInt; 4]) -> bool {
        let g2 = &self.g * &self.g;
        let lhs = &g2 * (&self.a * &t[0] * &t[0] + &self.b * &t[3] * &t[3])
            + BigInt::from(2) * &self.a * &self.c * &t[1] * &t[2] * (&self.c - &self.u);
        lhs == &self.c * g2
    }

    pub fn instantiate(&self, t: &[BigInt; 4]) -> Result<SolutionPair, FamilyError> {
        if !self.quadratic_condition(t) {
            return Err(FamilyError::Constraint(
                "a*t1^2 + b*t4^2 + 2ac*t2*t3*(c-u)/g^2 = c",
            ));
        }
        let n4 = &self.u * &t[0] + &self.v * &self.b * &t[3];
        let (x4, r) = n4.div_rem(&self.c);
        if !r.is_zero() {
            return Err(FamilyError::Constraint("c | (u*t1 + v*b*t4)"));
        }
        let m4 = &self.v * &self.a * &t[0] - &self.u * &t[3];
        let (y4, r) = m4.div_rem(&self.c);
        if !r.is_zero() {
            return Err(FamilyError::Constraint("c | (v*a*t1 - u*t4)"));
        }
        let (q, r) = (self.x_step(), self.y_step());
        let x = Mat2::new(t[0].clone(), &q * &t[1], &q * &t[2], x4);
        let y = Mat2::new(t[3].clone(), &r * &t[1], &r * &t[2], y4);
        let spec = quad_spec(&self.a, &self.b, &self.c);
        SolutionPair::checked(x, y, FamilyDescriptor::PellParametrized(self.clone()), &spec)
    }

    /// Recovers `t1..t4` from a pair and re-instantiates it.
    fn parameters_of(&self, x: &Mat2, y: &Mat2) -> Option<[BigInt; 4]> {
        let q = self.x_step();
        let t2 = exact_div(&(&x.e12 * &self.g), &(&self.u - &self.c))?;
        let t3 = exact_div(&(&x.e21 * &self.g), &(&self.u - &self.c))?;
        if &q * &t2 != x.e12 || &q * &t3 != x.e21 {
            return None;
        }
        Some([x.e11.clone(), t2, t3, y.e11.clone()])
    }
}

fn exact_div(n: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() {
        return None;
    }
    let (q, r) = n.div_rem(d);
    r.is_zero().then_some(q)
}

fn quad_spec(a: &BigInt, b: &BigInt, c: &BigInt) -> EquationSpec {
    EquationSpec {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        m: 2,
        n: 2,
        lambda: None,
    }
}

/// `(Σ coeffs[i]·t_{i+1}) / denom` with `denom > 0` and the content removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: [BigInt; 4],
    pub denom: BigInt,
}

impl LinearForm {
    pub fn new(coeffs: [BigInt; 4], denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut g = denom.abs();
        for c in &coeffs {
            g = g.gcd(c);
        }
        let sign = if denom.is_negative() { -BigInt::one() } else { BigInt::one() };
        let k = &g * &sign;
        LinearForm {
            coeffs: coeffs.map(|c| c / &k),
            denom: denom / k,
        }
    }

    /// Integer coefficients, or `None` if the denominator is not 1.
    pub fn integral(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        if !self.denom.is_one() {
            return None;
        }
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = c.to_i64()?;
        }
        Some(out)
    }

    pub fn eval(&self, t: &[BigInt; 4]) -> Option<BigInt> {
        let num: BigInt = self.coeffs.iter().zip(t).map(|(c, x)| c * x).sum();
        exact_div(&num, &self.denom)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let open = !self.denom.is_one();
        if open {
            f.write_str("(")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let m = c.abs();
            if !m.is_one() {
                write!(f, "{}", m)?;
            }
            write!(f, "t{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        if open {
            write!(f, ")/{}", self.denom)?;
        }
        Ok(())
    }
}

/// Entries of `X` and `Y` (row-major) as linear forms in `t1..t4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyShape {
    pub x: [LinearForm; 4],
    pub y: [LinearForm; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    /// `X = t1·I`, `Y = t2·I`, `a·t1² + b·t2² = c`.
    ScalarPair { a: BigInt, b: BigInt, c: BigInt },
    /// `X = t1·I`, `Y` traceless, `a·t1² + b(t4² + t2·t3) = c`.
    ScalarTracelessRight { a: BigInt, b: BigInt, c: BigInt },
    /// `X` traceless, `Y = t4·I`, `a(t1² + t2·t3) + b·t4² = c`. This is the
    /// `u = −c` member of the Pell family, listed on its own.
    ScalarTracelessLeft { a: BigInt, b: BigInt, c: BigInt },
    PellParametrized(PellFamily),
    /// Non-commuting traceless `X`, `Y` with
    /// `a(t1² + t2·t3) + b(s1² + s2·s3) = c`.
    NonCommTraceless { a: BigInt, b: BigInt, c: BigInt },
    /// Non-commuting traceless `X`, `Y` with `X⁴ + Y⁴ = c⁴·I`.
    NonCommQuartic { c: BigInt },
    /// Diagonal `X`, `Y` with `a·X^m + b·Y^n = diag(c1, c2)`.
    DiagonalRhs {
        a: BigInt,
        b: BigInt,
        m: u32,
        n: u32,
        c1: BigInt,
        c2: BigInt,
    },
}

impl FamilyDescriptor {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyDescriptor::ScalarPair { .. } => "ScalarPair",
            FamilyDescriptor::ScalarTracelessRight { .. } => "ScalarTracelessRight",
            FamilyDescriptor::ScalarTracelessLeft { .. } => "ScalarTracelessLeft",
            FamilyDescriptor::PellParametrized(_) => "PellParametrized",
            FamilyDescriptor::NonCommTraceless { .. } => "NonCommTraceless",
            FamilyDescriptor::NonCommQuartic { .. } => "NonCommQuartic",
            FamilyDescriptor::DiagonalRhs { .. } => "DiagonalRHS",
        }
    }

    /// Coefficients `(a, b)`, exponents `(m, n)` and right-hand side.
    pub fn equation(&self) -> (BigInt, BigInt, u32, u32, Mat2) {
        use FamilyDescriptor::*;
        match self {
            ScalarPair { a, b, c }
            | ScalarTracelessRight { a, b, c }
            | ScalarTracelessLeft { a, b, c }
            | NonCommTraceless { a, b, c } => (a.clone(), b.clone(), 2, 2, Mat2::scalar(c.clone())),
            PellParametrized(p) => (p.a.clone(), p.b.clone(), 2, 2, Mat2::scalar(p.c.clone())),
            NonCommQuartic { c } => (
                BigInt::one(),
                BigInt::one(),
                4,
                4,
                Mat2::scalar(Pow::pow(c, 4u32)),
            ),
            DiagonalRhs { a, b, m, n, c1, c2 } => {
                (a.clone(), b.clone(), *m, *n, Mat2::diag(c1.clone(), c2.clone()))
            }
        }
    }

    fn satisfies(&self, x: &Mat2, y: &Mat2) -> bool {
        let (a, b, m, n, rhs) = self.equation();
        &x.pow_closed(m).scale(&a) + &y.pow_closed(n).scale(&b) == rhs
    }

    /// Checks that `(X, Y)` has this family's shape and side conditions.
    pub fn validate_member(&self, x: &Mat2, y: &Mat2) -> Result<(), FamilyError> {
        use FamilyDescriptor::*;
        let ok = match self {
            ScalarPair { a, b, c } => {
                let (Some(t1), Some(t2)) = (x.scalar_value(), y.scalar_value()) else {
                    return Err(FamilyError::Shape("ScalarPair"));
                };
                a * t1 * t1 + b * t2 * t2 == *c
            }
            ScalarTracelessRight { a, b, c } => {
                let Some(t1) = x.scalar_value() else {
                    return Err(FamilyError::Shape("ScalarTracelessRight"));
                };
                if !y.trace().is_zero() {
                    return Err(FamilyError::Shape("ScalarTracelessRight"));
                }
                a * t1 * t1 - b * y.det() == *c
            }
            ScalarTracelessLeft { a, b, c } => {
                let Some(t4) = y.scalar_value() else {
                    return Err(FamilyError::Shape("ScalarTracelessLeft"));
                };
                if !x.trace().is_zero() {
                    return Err(FamilyError::Shape("ScalarTracelessLeft"));
                }
                -(a * x.det()) + b * t4 * t4 == *c
            }
            PellParametrized(p) => {
                let t = p
                    .parameters_of(x, y)
                    .ok_or(FamilyError::Shape("PellParametrized"))?;
                let pair = p.instantiate(&t)?;
                if pair.x != *x || pair.y != *y {
                    return Err(FamilyError::Shape("PellParametrized"));
                }
                true
            }
            NonCommTraceless { a, b, c } => {
                if !x.trace().is_zero() || !y.trace().is_zero() {
                    return Err(FamilyError::Shape("NonCommTraceless"));
                }
                if x.commutes(y) {
                    return Err(FamilyError::Dependent);
                }
                -(a * x.det()) - b * y.det() == *c
            }
            NonCommQuartic { c } => {
                if !x.trace().is_zero() || !y.trace().is_zero() {
                    return Err(FamilyError::Shape("NonCommQuartic"));
                }
                if x.commutes(y) {
                    return Err(FamilyError::Dependent);
                }
                let (dx, dy) = (x.det(), y.det());
                &dx * &dx + &dy * &dy == Pow::pow(c, 4u32)
            }
            DiagonalRhs { a, b, m, n, c1, c2 } => {
                if !x.e12.is_zero() || !x.e21.is_zero() || !y.e12.is_zero() || !y.e21.is_zero() {
                    return Err(FamilyError::Shape("DiagonalRHS"));
                }
                let side = |xi: &BigInt, yi: &BigInt| {
                    a * Pow::pow(xi, *m) + b * Pow::pow(yi, *n)
                };
                side(&x.e11, &y.e11) == *c1 && side(&x.e22, &y.e22) == *c2
            }
        };
        if !ok {
            return Err(FamilyError::Constraint("family side condition"));
        }
        if !self.satisfies(x, y) {
            return Err(FamilyError::Defect);
        }
        Ok(())
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::PellParametrized(p) => {
                write!(f, "PellParametrized(u={}, v={}, g={})", p.u, p.v, p.g)
            }
            other => f.write_str(other.tag()),
        }
    }
}

/// A candidate pair together with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPair {
    pub x: Mat2,
    pub y: Mat2,
    /// `None` means unclassified.
    pub family: Option<FamilyDescriptor>,
    pub commuting: bool,
    /// `det(XY) ≠ 0`.
    pub nontrivial: bool,
    pub satisfied: bool,
}

impl SolutionPair {
    pub fn unclassified(x: Mat2, y: Mat2, spec: &EquationSpec) -> Self {
        let satisfied = spec.holds(&x, &y);
        let commuting = x.commutes(&y);
        let nontrivial = !(x.det() * y.det()).is_zero();
        SolutionPair {
            x,
            y,
            family: None,
            commuting,
            nontrivial,
            satisfied,
        }
    }

    fn checked(
        x: Mat2,
        y: Mat2,
        family: FamilyDescriptor,
        spec: &EquationSpec,
    ) -> Result<Self, FamilyError> {
        let mut pair = SolutionPair::unclassified(x, y, spec);
        if !pair.satisfied {
            return Err(FamilyError::Defect);
        }
        pair.family = Some(family);
        Ok(pair)
    }
}

fn independent(t: &[BigInt; 3], s: &[BigInt; 3]) -> bool {
    !(&t[0] * &s[1] == &t[1] * &s[0]
        && &t[0] * &s[2] == &t[2] * &s[0]
        && &t[1] * &s[2] == &t[2] * &s[1])
}

fn traceless(t: &[BigInt; 3]) -> Mat2 {
    Mat2::traceless(&t[0], &t[1], &t[2])
}

fn quad3(t: &[BigInt; 3]) -> BigInt {
    &t[0] * &t[0] + &t[1] * &t[2]
}

/// Non-commuting traceless solution of `aX² + bY² = cI`.
pub fn p2_quadratic(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    t: &[BigInt; 3],
    s: &[BigInt; 3],
) -> Result<SolutionPair, FamilyError> {
    if a * quad3(t) + b * quad3(s) != *c {
        return Err(FamilyError::Constraint("a(t1^2 + t2*t3) + b(s1^2 + s2*s3) = c"));
    }
    if !independent(t, s) {
        return Err(FamilyError::Dependent);
    }
    let pair = SolutionPair::checked(
        traceless(t),
        traceless(s),
        FamilyDescriptor::NonCommTraceless {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        &quad_spec(a, b, c),
    )?;
    if pair.commuting {
        return Err(FamilyError::Defect);
    }
    Ok(pair)
}

/// Non-commuting traceless solution of `X⁴ + Y⁴ = c⁴·I`.
pub fn p2_quartic(c: &BigInt, t: &[BigInt; 3], s: &[BigInt; 3]) -> Result<SolutionPair, FamilyError> {
    if c.is_zero() {
        return Err(FamilyError::ZeroC);
    }
    let (p, q) = (quad3(t), quad3(s));
    if &p * &p + &q * &q != Pow::pow(c, 4u32) {
        return Err(FamilyError::Constraint("(t1^2 + t2*t3)^2 + (s1^2 + s2*s3)^2 = c^4"));
    }
    if !independent(t, s) {
        return Err(FamilyError::Dependent);
    }
    let spec = EquationSpec {
        a: BigInt::one(),
        b: BigInt::one(),
        c: Pow::pow(c, 4u32),
        m: 4,
        n: 4,
        lambda: Some(c.clone()),
    };
    let pair = SolutionPair::checked(
        traceless(t),
        traceless(s),
        FamilyDescriptor::NonCommQuartic { c: c.clone() },
        &spec,
    )?;
    if pair.commuting {
        return Err(FamilyError::Defect);
    }
    Ok(pair)
}

/// Diagonal solution of `a·X^m + b·Y^n = diag(c1, c2)`.
#[allow(clippy::too_many_arguments)]
pub fn diag_rhs(
    a: &BigInt,
    b: &BigInt,
    m: u32,
    n: u32,
    c1: &BigInt,
    c2: &BigInt,
    x: &[BigInt; 2],
    y: &[BigInt; 2],
) -> Result<SolutionPair, FamilyError> {
    if c1 == c2 {
        return Err(FamilyError::EqualDiagonal);
    }
    let family = FamilyDescriptor::DiagonalRhs {
        a: a.clone(),
        b: b.clone(),
        m,
        n,
        c1: c1.clone(),
        c2: c2.clone(),
    };
    let mx = Mat2::diag(x[0].clone(), x[1].clone());
    let my = Mat2::diag(y[0].clone(), y[1].clone());
    match family.validate_member(&mx, &my) {
        Ok(()) => {}
        Err(FamilyError::Constraint(_)) => {
            return Err(FamilyError::Constraint("a*x_i^m + b*y_i^n = c_i"))
        }
        Err(e) => return Err(e),
    }
    let nontrivial = !(mx.det() * my.det()).is_zero();
    Ok(SolutionPair {
        x: mx,
        y: my,
        family: Some(family),
        commuting: true,
        nontrivial,
        satisfied: true,
    })
}

/// Commuting families of `aX² + bY² = cI`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Co1Families {
    pub families: Vec<FamilyDescriptor>,
    /// `false` when the Pell-indexed list was cut at `uv_limit`.
    pub complete: bool,
}

/// The scalar families plus one Pell-indexed family per `(u, v)` with
/// `u ≠ c`, taken from the first `uv_limit` classes `(|u|, |v|)`.
pub fn co1_families(a: &BigInt, b: &BigInt, c: &BigInt, uv_limit: usize) -> Result<Co1Families, FamilyError> {
    if c.is_zero() {
        return Err(FamilyError::ZeroC);
    }
    if !gcd3(a, b, c).is_one() {
        return Err(FamilyError::NotCoprime);
    }
    if is_perfect_square(&-(a * b)) {
        return Err(FamilyError::SquareProduct);
    }
    let (a_, b_, c_) = (a.clone(), b.clone(), c.clone());
    let mut families = alloc::vec![
        FamilyDescriptor::ScalarPair { a: a_.clone(), b: b_.clone(), c: c_.clone() },
        FamilyDescriptor::ScalarTracelessRight { a: a_.clone(), b: b_.clone(), c: c_.clone() },
        FamilyDescriptor::ScalarTracelessLeft { a: a_, b: b_, c: c_ },
    ];
    // `uv_limit` counts classes `(|u|, |v|)`; each class has at most four
    // sign variants, so `4·uv_limit` pairs cover the first `uv_limit` classes.
    let uv = uv_solutions(a, b, c, uv_limit.saturating_mul(4))?;
    let mut classes: Vec<(BigInt, BigInt)> = Vec::new();
    let mut complete = uv.complete;
    for (u, v) in uv.pairs {
        let class = (u.abs(), v.abs());
        if classes.last() != Some(&class) {
            if classes.len() == uv_limit {
                complete = false;
                break;
            }
            classes.push(class);
        }
        if u == *c {
            continue;
        }
        families.push(FamilyDescriptor::PellParametrized(PellFamily::new(
            u,
            v,
            a.clone(),
            b.clone(),
            c.clone(),
        )?));
    }
    Ok(Co1Families { families, complete })
}

pub fn co1_instantiate(fam: &FamilyDescriptor, t: &[BigInt; 4]) -> Result<SolutionPair, FamilyError> {
    match fam {
        FamilyDescriptor::PellParametrized(p) => p.instantiate(t),
        _ => Err(FamilyError::WrongFamily),
    }
}

/// `u = a·det X − b·det Y`, `v = x1·y4 + x4·y1 − x2·y3 − x3·y2`.
pub fn recover_uv(x: &Mat2, y: &Mat2, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let u = a * x.det() - b * y.det();
    let v = &x.e11 * &y.e22 + &x.e22 * &y.e11 - &x.e12 * &y.e21 - &x.e21 * &y.e12;
    (u, v)
}

/// Verifies `(X, Y)` against `spec` and, for solutions of a quadratic
/// equation, assigns the unique family tag.
pub fn classify_pair(x: &Mat2, y: &Mat2, spec: &EquationSpec) -> SolutionPair {
    let mut pair = SolutionPair::unclassified(x.clone(), y.clone(), spec);
    if !pair.satisfied || !spec.is_quadratic() {
        return pair;
    }
    let (a, b, c) = (spec.a.clone(), spec.b.clone(), spec.c.clone());
    let candidate = if !pair.commuting {
        Some(FamilyDescriptor::NonCommTraceless { a, b, c })
    } else if x.is_scalar() && y.is_scalar() {
        Some(FamilyDescriptor::ScalarPair { a, b, c })
    } else if x.is_scalar() {
        Some(FamilyDescriptor::ScalarTracelessRight { a, b, c })
    } else if y.is_scalar() {
        Some(FamilyDescriptor::ScalarTracelessLeft { a, b, c })
    } else {
        let (u, v) = recover_uv(x, y, &spec.a, &spec.b);
        PellFamily::new(u, v, a, b, c)
            .ok()
            .map(FamilyDescriptor::PellParametrized)
    };
    pair.family = candidate.filter(|f| f.validate_member(x, y).is_ok());
    pair
}

fn range(p: u32) -> impl Iterator<Item = BigInt> + Clone {
    let p = i64::from(p);
    (-p..=p).map(BigInt::from)
}

/// All members of a family whose parameters lie in `[−p, p]`, sorted and
/// deduplicated by `(X, Y)`.
pub fn enumerate_instances(fam: &FamilyDescriptor, p: u32) -> Vec<SolutionPair> {
    use FamilyDescriptor::*;
    let mut out = Vec::new();
    let mut push = |x: Mat2, y: Mat2| {
        if fam.validate_member(&x, &y).is_ok() {
            out.push(SolutionPair {
                commuting: x.commutes(&y),
                nontrivial: !(x.det() * y.det()).is_zero(),
                x,
                y,
                family: Some(fam.clone()),
                satisfied: true,
            });
        }
    };
    let triples: Vec<[BigInt; 3]> = {
        let mut v = Vec::new();
        for a in range(p) {
            for b in range(p) {
                for c in range(p) {
                    v.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        v
    };
    match fam {
        ScalarPair { .. } => {
            for t1 in range(p) {
                for t2 in range(p) {
                    push(Mat2::scalar(t1.clone()), Mat2::scalar(t2));
                }
            }
        }
        ScalarTracelessRight { .. } => {
            for t1 in range(p) {
                for t in &triples {
                    push(Mat2::scalar(t1.clone()), traceless(t));
                }
            }
        }
        ScalarTracelessLeft { .. } => {
            for t in &triples {
                for t4 in range(p) {
                    push(traceless(t), Mat2::scalar(t4));
                }
            }
        }
        PellParametrized(pf) => {
            for t in &triples {
                for t4 in range(p) {
                    let params = [t[0].clone(), t[1].clone(), t[2].clone(), t4];
                    if let Ok(pair) = pf.instantiate(&params) {
                        push(pair.x, pair.y);
                    }
                }
            }
        }
        NonCommTraceless { .. } | NonCommQuartic { .. } => {
            for t in &triples {
                for s in &triples {
                    push(traceless(t), traceless(s));
                }
            }
        }
        DiagonalRhs { .. } => {
            for x1 in range(p) {
                for x2 in range(p) {
                    for y1 in range(p) {
                        for y2 in range(p) {
                            push(
                                Mat2::diag(x1.clone(), x2.clone()),
                                Mat2::diag(y1.clone(), y2),
                            );
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    out.dedup_by(|p, q| p.x == q.x && p.y == q.y);
    out
}
