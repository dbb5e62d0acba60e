//! Dispatch from an equation to a solvability verdict.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

pub use crate::equation::{EquationSpec, SpecError};
use crate::families::{classify_pair, co1_families, FamilyDescriptor, SolutionPair};
use crate::mat2::Mat2;
use crate::numtheory::{exact_root, exact_sqrt, gcd3, is_perfect_square, squarefree_decompose};
use crate::quadfield::QuadElem;

/// Stable citation identifiers used in reports.
pub mod citation {
    /// Non-commuting solutions force `X^m`, `Y^n` to be scalar.
    pub const NONCOMM_SCALAR_POWERS: &str = "thm-2.2";
    /// Traceless parametrizations of the quadratic and quartic equations.
    pub const NONCOMM_TRACELESS: &str = "prop-2.7";
    /// Reduction of commuting solutions to a quadratic field.
    pub const QUADRATIC_FIELD_REDUCTION: &str = "thm-2.9";
    /// No non-commuting nontrivial Fermat solutions for `n ≠ 4`.
    pub const NONCOMM_FERMAT: &str = "thm-3.2";
    /// Fermat's equation has no nontrivial solutions in quadratic fields for
    /// `n = 6, 9`.
    pub const QUADRATIC_FERMAT_SIX_NINE: &str = "lemma-3.5";
    /// No nontrivial matrix solutions of `X^n + Y^n = λ^n I` for `n = 6, 9`.
    pub const MATRIX_FERMAT_SIX_NINE: &str = "prop-3.6";
    /// The same for `X^i + Y^j = λ^k I` with `6 | gcd(i, j, k)` or `9 | gcd(i, j, k)`.
    pub const MATRIX_FERMAT_DIVISIBLE: &str = "cor-prop-3.6";
    /// Complete description of commuting solutions of `aX² + bY² = cI`.
    pub const QUADRATIC_COMMUTING: &str = "thm-4.1";
}

/// Known results used as certificates without being re-derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `x^n + y^n = z^n` has no solutions in nonzero integers for `n ≥ 3`.
    FermatIntegers,
    /// `x^n + y^n = z^n` has no nontrivial solutions in quadratic fields for
    /// `n = 6, 9`.
    FermatQuadraticSixNine,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::FermatIntegers => "fermat-last-theorem",
            Axiom::FermatQuadraticSixNine => "fermat-quadratic-fields-6-9",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Parametrized,
    NoneByTheorem,
    NoncommFamilies,
    ReducedOpen,
    Undetermined,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Parametrized => "Parametrized",
            Verdict::NoneByTheorem => "NoneByTheorem",
            Verdict::NoncommFamilies => "NoncommFamilies",
            Verdict::ReducedOpen => "ReducedOpen",
            Verdict::Undetermined => "Undetermined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Commuting,
    NonCommuting,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Commuting => "commuting",
            Side::NonCommuting => "noncommuting",
        }
    }
}

/// `X^k = α·I`, `Y^l = β·I` with `a·α^{m/k} + b·β^{n/l} = c`, and a
/// non-commuting witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncommHit {
    pub k: u32,
    pub l: u32,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub x: Mat2,
    pub y: Mat2,
}

/// A frame `[[e, f], [g, 0]]` with `e² + 4fg = k²·D`, `D` square-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameReduction {
    pub e: BigInt,
    pub f: BigInt,
    pub g: BigInt,
    pub d: BigInt,
    pub k: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    None,
    Families {
        families: Vec<FamilyDescriptor>,
        /// `false` when an infinite list was truncated.
        complete: bool,
    },
    ScalarPowers(Vec<NoncommHit>),
    Reduction(Vec<FrameReduction>),
    Certificate(Vec<Axiom>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideReport {
    pub side: Side,
    pub verdict: Verdict,
    pub citation: Option<&'static str>,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityReport {
    pub verdict: Verdict,
    pub citation: Option<&'static str>,
    pub payload: Payload,
    pub sides: Vec<SideReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Number of `(|u|, |v|)` classes listed for the Pell-indexed family.
    pub uv_limit: usize,
    /// Entry bound for sample frames in quadratic-field reductions.
    pub frame_bound: u32,
    /// Search bound for the scalar-power equation.
    pub noncomm_bound: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            uv_limit: 8,
            frame_bound: 2,
            noncomm_bound: 3,
        }
    }
}

pub fn classify(spec: &EquationSpec) -> SolvabilityReport {
    classify_with(spec, &ClassifyOptions::default())
}

pub fn classify_with(spec: &EquationSpec, opts: &ClassifyOptions) -> SolvabilityReport {
    if spec.c.is_zero() {
        return SolvabilityReport {
            verdict: Verdict::Undetermined,
            citation: None,
            payload: Payload::None,
            sides: Vec::new(),
        };
    }
    if spec.is_quadratic() && !is_perfect_square(&-(&spec.a * &spec.b)) {
        return quadratic_report(spec, opts);
    }
    if let Some(report) = divisible_fermat_report(spec) {
        return report;
    }
    if spec.is_fermat_shape() && spec.n >= 3 {
        return fermat_report(spec, opts);
    }
    general_report(spec, opts)
}

fn quadratic_report(spec: &EquationSpec, opts: &ClassifyOptions) -> SolvabilityReport {
    let co1 = co1_families(&spec.a, &spec.b, &spec.c, opts.uv_limit)
        .expect("hypotheses checked by the caller");
    let noncomm = FamilyDescriptor::NonCommTraceless {
        a: spec.a.clone(),
        b: spec.b.clone(),
        c: spec.c.clone(),
    };
    let mut all = co1.families.clone();
    all.push(noncomm.clone());
    SolvabilityReport {
        verdict: Verdict::Parametrized,
        citation: Some(citation::QUADRATIC_COMMUTING),
        payload: Payload::Families {
            families: all,
            complete: co1.complete,
        },
        sides: vec![
            SideReport {
                side: Side::Commuting,
                verdict: Verdict::Parametrized,
                citation: Some(citation::QUADRATIC_COMMUTING),
                payload: Payload::Families {
                    families: co1.families,
                    complete: co1.complete,
                },
            },
            SideReport {
                side: Side::NonCommuting,
                verdict: Verdict::Parametrized,
                citation: Some(citation::NONCOMM_TRACELESS),
                payload: Payload::Families {
                    families: vec![noncomm],
                    complete: true,
                },
            },
        ],
    }
}

/// `X^m + Y^n = c·I` with `d | m`, `d | n` and `c` a perfect `d`-th power for
/// `d ∈ {6, 9}`.
fn divisible_fermat_report(spec: &EquationSpec) -> Option<SolvabilityReport> {
    if !(spec.a.is_one() && spec.b.is_one()) {
        return None;
    }
    let hit = [6u32, 9].into_iter().any(|d| {
        spec.m.is_multiple_of(d) && spec.n.is_multiple_of(d) && exact_root(&spec.c, d).is_some()
    });
    if !hit {
        return None;
    }
    let exact = spec.m == spec.n
        && (spec.m == 6 || spec.m == 9)
        && spec
            .lambda
            .as_ref()
            .is_none_or(|l| Pow::pow(l, spec.n) == spec.c);
    let cite = if exact {
        citation::MATRIX_FERMAT_SIX_NINE
    } else {
        citation::MATRIX_FERMAT_DIVISIBLE
    };
    Some(SolvabilityReport {
        verdict: Verdict::NoneByTheorem,
        citation: Some(cite),
        payload: Payload::Certificate(vec![Axiom::FermatIntegers, Axiom::FermatQuadraticSixNine]),
        sides: vec![
            SideReport {
                side: Side::Commuting,
                verdict: Verdict::NoneByTheorem,
                citation: Some(citation::QUADRATIC_FERMAT_SIX_NINE),
                payload: Payload::Certificate(vec![Axiom::FermatQuadraticSixNine]),
            },
            SideReport {
                side: Side::NonCommuting,
                verdict: Verdict::NoneByTheorem,
                citation: Some(citation::NONCOMM_FERMAT),
                payload: Payload::Certificate(vec![Axiom::FermatIntegers]),
            },
        ],
    })
}

fn commuting_reduction(opts: &ClassifyOptions) -> SideReport {
    SideReport {
        side: Side::Commuting,
        verdict: Verdict::ReducedOpen,
        citation: Some(citation::QUADRATIC_FIELD_REDUCTION),
        payload: Payload::Reduction(sample_frames(opts.frame_bound)),
    }
}

fn fermat_report(spec: &EquationSpec, opts: &ClassifyOptions) -> SolvabilityReport {
    let lambda = spec.lambda.clone().expect("fermat shape carries lambda");
    if spec.n == 4 {
        let fam = FamilyDescriptor::NonCommQuartic { c: lambda };
        let payload = Payload::Families {
            families: vec![fam],
            complete: true,
        };
        return SolvabilityReport {
            verdict: Verdict::NoncommFamilies,
            citation: Some(citation::NONCOMM_TRACELESS),
            payload: payload.clone(),
            sides: vec![
                commuting_reduction(opts),
                SideReport {
                    side: Side::NonCommuting,
                    verdict: Verdict::NoncommFamilies,
                    citation: Some(citation::NONCOMM_TRACELESS),
                    payload,
                },
            ],
        };
    }
    let reduction = commuting_reduction(opts);
    SolvabilityReport {
        verdict: Verdict::ReducedOpen,
        citation: Some(citation::QUADRATIC_FIELD_REDUCTION),
        payload: reduction.payload.clone(),
        sides: vec![
            reduction,
            SideReport {
                side: Side::NonCommuting,
                verdict: Verdict::NoneByTheorem,
                citation: Some(citation::NONCOMM_FERMAT),
                payload: Payload::Certificate(vec![Axiom::FermatIntegers]),
            },
        ],
    }
}

fn general_report(spec: &EquationSpec, opts: &ClassifyOptions) -> SolvabilityReport {
    let hits = noncomm_solve(spec, opts.noncomm_bound);
    let reduction = commuting_reduction(opts);
    let noncomm_side = SideReport {
        side: Side::NonCommuting,
        verdict: if hits.is_empty() {
            Verdict::Undetermined
        } else {
            Verdict::NoncommFamilies
        },
        citation: Some(citation::NONCOMM_SCALAR_POWERS),
        payload: Payload::ScalarPowers(hits.clone()),
    };
    let (verdict, cite, payload) = if hits.is_empty() {
        (
            Verdict::ReducedOpen,
            citation::QUADRATIC_FIELD_REDUCTION,
            reduction.payload.clone(),
        )
    } else {
        (
            Verdict::NoncommFamilies,
            citation::NONCOMM_SCALAR_POWERS,
            Payload::ScalarPowers(hits),
        )
    };
    SolvabilityReport {
        verdict,
        citation: Some(cite),
        payload,
        sides: vec![reduction, noncomm_side],
    }
}

/// Frames with entries in `[−bound, bound]` and nonsquare discriminant, one
/// per `(D, k)`, sorted by `(D, k)`.
pub fn sample_frames(bound: u32) -> Vec<FrameReduction> {
    let b = i64::from(bound);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in -b..=b {
        for f in -b..=b {
            for g in -b..=b {
                let (e, f, g) = (BigInt::from(e), BigInt::from(f), BigInt::from(g));
                if f.is_zero() || g.is_zero() || !gcd3(&e, &f, &g).is_one() {
                    continue;
                }
                let disc = &e * &e + BigInt::from(4) * &f * &g;
                if is_perfect_square(&disc) {
                    continue;
                }
                let sf = squarefree_decompose(&disc).expect("nonzero");
                if seen.insert((sf.d.clone(), sf.k.clone())) {
                    out.push(FrameReduction {
                        e,
                        f,
                        g,
                        d: sf.d,
                        k: sf.k,
                    });
                }
            }
        }
    }
    out.sort_by(|p, q| (&p.d, &p.k).cmp(&(&q.d, &q.k)));
    out
}

/// Trace and determinant of a matrix with minimal scalar-power order `k`
/// and `X^k = α·I`; `None` when `α` is not of the required form.
fn order_class(k: u32, alpha: &BigInt) -> Option<(BigInt, BigInt)> {
    match k {
        2 => Some((BigInt::zero(), -alpha)),
        3 => {
            // α = −s³, T = s, D = s²
            let s = exact_root(&-alpha, 3)?;
            (!s.is_zero()).then(|| (s.clone(), &s * &s))
        }
        4 => {
            // α = −4w⁴, T = 2w, D = 2w²
            let (q, r) = (-alpha).div_rem(&BigInt::from(4));
            if !r.is_zero() || q.is_zero() {
                return None;
            }
            let w = exact_root(&q, 4)?;
            Some((BigInt::from(2) * &w, BigInt::from(2) * &w * &w))
        }
        6 => {
            // α = −27w⁶, T = 3w, D = 3w²
            let (q, r) = (-alpha).div_rem(&BigInt::from(27));
            if !r.is_zero() || q.is_zero() {
                return None;
            }
            let w = exact_root(&q, 6)?;
            Some((BigInt::from(3) * &w, BigInt::from(3) * &w * &w))
        }
        _ => None,
    }
}

/// Values `α` with `X^k = α·I` for minimal order `k`, parameter `≤ bound`.
fn scalar_values(k: u32, bound: u32) -> Vec<BigInt> {
    let b = i64::from(bound);
    let mut out: Vec<BigInt> = match k {
        2 => (-b..=b).map(BigInt::from).collect(),
        3 => (-b..=b)
            .filter(|&s| s != 0)
            .map(|s| -Pow::pow(BigInt::from(s), 3u32))
            .collect(),
        4 => (1..=b)
            .map(|w| BigInt::from(-4) * Pow::pow(BigInt::from(w), 4u32))
            .collect(),
        6 => (1..=b)
            .map(|w| BigInt::from(-27) * Pow::pow(BigInt::from(w), 6u32))
            .collect(),
        _ => Vec::new(),
    };
    out.sort();
    out
}

fn companion(trace: &BigInt, det: &BigInt) -> Mat2 {
    Mat2::new(0, 1, -det, trace.clone())
}

/// Matrices with the given trace and determinant, tried in turn as the
/// second member of a non-commuting witness.
fn witness_candidates(trace: &BigInt, det: &BigInt) -> [Mat2; 3] {
    let t1 = trace - 1;
    [
        companion(trace, det),
        Mat2::new(0, -det, 1, trace.clone()),
        Mat2::new(1, 1, &t1 - det, t1),
    ]
}

/// Solutions of the scalar-power equation behind non-commuting solutions,
/// each with an explicit non-commuting witness. Ordered by `(k, l, α, β)`.
pub fn noncomm_solve(spec: &EquationSpec, bound: u32) -> Vec<NoncommHit> {
    let orders = [2u32, 3, 4, 6];
    let mut hits = Vec::new();
    for &k in orders.iter().filter(|&&k| spec.m.is_multiple_of(k)) {
        let alphas = scalar_values(k, bound);
        for &l in orders.iter().filter(|&&l| spec.n.is_multiple_of(l)) {
            let betas = scalar_values(l, bound);
            for alpha in &alphas {
                let lhs = &spec.a * Pow::pow(alpha, spec.m / k);
                for beta in &betas {
                    if lhs.clone() + &spec.b * Pow::pow(beta, spec.n / l) != spec.c {
                        continue;
                    }
                    let (tx, dx) = order_class(k, alpha).expect("alpha drawn from its class");
                    let (ty, dy) = order_class(l, beta).expect("beta drawn from its class");
                    let x = companion(&tx, &dx);
                    let Some(y) = witness_candidates(&ty, &dy)
                        .into_iter()
                        .find(|y| !x.commutes(y))
                    else {
                        continue;
                    };
                    debug_assert!(spec.holds(&x, &y));
                    hits.push(NoncommHit {
                        k,
                        l,
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        x,
                        y,
                    });
                }
            }
        }
    }
    hits
}

/// Eigenvalues `(T ± √(T² − 4D))/2` as half-integer lattice elements.
fn eigenvalues(m: &Mat2) -> [QuadElem; 2] {
    let t = m.trace();
    let disc = m.discriminant();
    if let Some(r) = exact_sqrt(&disc) {
        // T ≡ √disc (mod 2), so both eigenvalues are integers.
        let zero = BigInt::zero();
        let one = BigInt::one();
        return [
            QuadElem { s: &t + &r, t: zero.clone(), d: one.clone() },
            QuadElem { s: &t - &r, t: zero, d: one },
        ];
    }
    let sf = squarefree_decompose(&disc).expect("nonsquare is nonzero");
    [
        QuadElem { s: t.clone(), t: sf.k.clone(), d: sf.d.clone() },
        QuadElem { s: t, t: -sf.k, d: sf.d },
    ]
}

/// Equality of numbers possibly presented in different fields.
fn same_number(p: &QuadElem, q: &QuadElem) -> bool {
    if p.t.is_zero() || q.t.is_zero() {
        return p.t.is_zero() && q.t.is_zero() && p.s == q.s;
    }
    p == q
}

/// Necessary condition: the eigenvalues can be paired so that
/// `a·x_i^m + b·y_i^n = c` for both pairs.
pub fn eigen_condition_check(x: &Mat2, y: &Mat2, spec: &EquationSpec) -> bool {
    let lhs = eigenvalues(x).map(|xi| {
        let p = xi.pow(spec.m).expect("eigenvalues are algebraic integers");
        QuadElem::integer(&spec.c, &p.d)
            .sub(&p.scale(&spec.a))
            .expect("same field")
    });
    let rhs = eigenvalues(y).map(|yi| {
        yi.pow(spec.n)
            .expect("eigenvalues are algebraic integers")
            .scale(&spec.b)
    });
    (same_number(&lhs[0], &rhs[0]) && same_number(&lhs[1], &rhs[1]))
        || (same_number(&lhs[0], &rhs[1]) && same_number(&lhs[1], &rhs[0]))
}

/// Direct check of `(X, Y)` against `spec`, with the family tag when one
/// applies.
pub fn verify(x: &Mat2, y: &Mat2, spec: &EquationSpec) -> SolutionPair {
    if spec.is_quadratic() {
        return classify_pair(x, y, spec);
    }
    let mut pair = SolutionPair::unclassified(x.clone(), y.clone(), spec);
    if pair.satisfied && !pair.commuting && spec.a.is_one() && spec.b.is_one() && spec.m == 4 && spec.n == 4 {
        let lambda = spec
            .lambda
            .clone()
            .or_else(|| exact_root(&spec.c, 4).map(|r| r.abs()));
        if let Some(l) = lambda {
            let fam = FamilyDescriptor::NonCommQuartic { c: l };
            if fam.validate_member(x, y).is_ok() {
                pair.family = Some(fam);
            }
        }
    }
    pair
}
