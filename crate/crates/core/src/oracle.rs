//! Brute-force enumeration of solutions with bounded entries.
//!
//! For every `X` the needed value `Y^n = (cI − aX^m)/b` is looked up in a
//! table of all `n`-th powers, so the cost is linear in the number of
//! candidate matrices rather than quadratic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::equation::EquationSpec;
use crate::families::{classify_pair, SolutionPair};
use crate::mat2::{all_bounded, Mat2};
use crate::numtheory::{gcd3, is_perfect_square};

/// Solution counts split by commutativity and `det(XY) ≠ 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleCounts {
    pub commuting_nontrivial: usize,
    pub commuting_trivial: usize,
    pub noncommuting_nontrivial: usize,
    pub noncommuting_trivial: usize,
}

impl OracleCounts {
    pub fn total(&self) -> usize {
        self.commuting_nontrivial
            + self.commuting_trivial
            + self.noncommuting_nontrivial
            + self.noncommuting_trivial
    }

    pub fn nontrivial(&self) -> usize {
        self.commuting_nontrivial + self.noncommuting_nontrivial
    }

    fn add(&mut self, x: &Mat2, y: &Mat2) {
        let nontrivial = !(x.det() * y.det()).is_zero();
        match (x.commutes(y), nontrivial) {
            (true, true) => self.commuting_nontrivial += 1,
            (true, false) => self.commuting_trivial += 1,
            (false, true) => self.noncommuting_nontrivial += 1,
            (false, false) => self.noncommuting_trivial += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub spec: EquationSpec,
    pub bound: u32,
    /// Sorted by the 8-tuple of entries of `(X, Y)`.
    pub solutions: Vec<(Mat2, Mat2)>,
    pub counts: OracleCounts,
}

impl OracleResult {
    /// Builds a result from unordered pairs, sorting them.
    pub fn from_pairs(spec: EquationSpec, bound: u32, mut solutions: Vec<(Mat2, Mat2)>) -> Self {
        solutions.sort();
        let mut counts = OracleCounts::default();
        for (x, y) in &solutions {
            counts.add(x, y);
        }
        OracleResult {
            spec,
            bound,
            solutions,
            counts,
        }
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &(Mat2, Mat2)> {
        self.solutions
            .iter()
            .filter(|(x, y)| !(x.det() * y.det()).is_zero())
    }
}

/// All `n`-th powers of matrices with entries in `[−bound, bound]`, each
/// mapped to its roots in lexicographic order.
#[derive(Debug, Clone)]
pub struct PowerTable {
    roots: BTreeMap<Mat2, Vec<Mat2>>,
}

impl PowerTable {
    pub fn new(n: u32, bound: u32) -> Self {
        let mut roots: BTreeMap<Mat2, Vec<Mat2>> = BTreeMap::new();
        for y in all_bounded(bound) {
            roots.entry(y.pow_closed(n)).or_default().push(y);
        }
        PowerTable { roots }
    }

    pub fn roots(&self, power: &Mat2) -> &[Mat2] {
        self.roots.get(power).map_or(&[], Vec::as_slice)
    }
}

/// Solutions with first component `x`, ordered by `Y`.
pub fn solutions_for_x(spec: &EquationSpec, table: &PowerTable, x: &Mat2) -> Vec<(Mat2, Mat2)> {
    let rest = &Mat2::scalar(spec.c.clone()) - &x.pow_closed(spec.m).scale(&spec.a);
    let Some(target) = rest.div_exact(&spec.b) else {
        return Vec::new();
    };
    table
        .roots(&target)
        .iter()
        .map(|y| (x.clone(), y.clone()))
        .collect()
}

pub fn enumerate_solutions(spec: &EquationSpec, bound: u32) -> OracleResult {
    let table = PowerTable::new(spec.n, bound);
    let mut solutions = Vec::new();
    let mut counts = OracleCounts::default();
    for x in all_bounded(bound) {
        for (x, y) in solutions_for_x(spec, &table, &x) {
            debug_assert!(spec.holds(&x, &y));
            counts.add(&x, &y);
            solutions.push((x, y));
        }
    }
    OracleResult {
        spec: spec.clone(),
        bound,
        solutions,
        counts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletenessError {
    #[error("completeness check needs m = n = 2")]
    NotQuadratic,
    #[error("completeness check needs -ab to be a nonsquare")]
    SquareProduct,
    #[error("completeness check needs c != 0")]
    ZeroC,
    #[error("completeness check needs gcd(a, b, c) = 1")]
    NotCoprime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub oracle: OracleResult,
    pub classified: Vec<SolutionPair>,
    pub unclassified: Vec<(Mat2, Mat2)>,
    /// Pairs whose family failed to re-validate.
    pub invalid: Vec<SolutionPair>,
    /// Number of hits per family tag.
    pub by_tag: BTreeMap<&'static str, usize>,
}

impl CompletenessReport {
    pub fn pass(&self) -> bool {
        self.unclassified.is_empty() && self.invalid.is_empty()
    }
}

/// Classifies every oracle hit; passes iff every hit lands in a family whose
/// side conditions re-validate.
pub fn completeness_check(spec: &EquationSpec, bound: u32) -> Result<CompletenessReport, CompletenessError> {
    if !spec.is_quadratic() {
        return Err(CompletenessError::NotQuadratic);
    }
    if spec.c.is_zero() {
        return Err(CompletenessError::ZeroC);
    }
    if !num_traits::One::is_one(&gcd3(&spec.a, &spec.b, &spec.c)) {
        return Err(CompletenessError::NotCoprime);
    }
    if is_perfect_square(&-(&spec.a * &spec.b)) {
        return Err(CompletenessError::SquareProduct);
    }
    Ok(classify_oracle(enumerate_solutions(spec, bound)))
}

/// Runs the family classifier over an existing oracle result.
pub fn classify_oracle(oracle: OracleResult) -> CompletenessReport {
    let mut classified = Vec::new();
    let mut unclassified = Vec::new();
    let mut invalid = Vec::new();
    let mut by_tag = BTreeMap::new();
    for (x, y) in &oracle.solutions {
        let pair = classify_pair(x, y, &oracle.spec);
        match &pair.family {
            None => unclassified.push((x.clone(), y.clone())),
            Some(fam) => {
                *by_tag.entry(fam.tag()).or_insert(0) += 1;
                if fam.validate_member(x, y).is_err() || !pair.satisfied {
                    invalid.push(pair);
                } else {
                    classified.push(pair);
                }
            }
        }
    }
    CompletenessReport {
        oracle,
        classified,
        unclassified,
        invalid,
        by_tag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quadratic() {
        let spec = EquationSpec::new(1, 1, 2, 2, 2).unwrap();
        let res = enumerate_solutions(&spec, 1);
        for (x, y) in [
            (Mat2::identity(), Mat2::identity()),
            (-Mat2::identity(), Mat2::identity()),
            (Mat2::identity(), -Mat2::identity()),
            (-Mat2::identity(), -Mat2::identity()),
        ] {
            assert!(res.solutions.contains(&(x, y)));
        }
        let mut sorted = res.solutions.clone();
        sorted.sort();
        assert_eq!(sorted, res.solutions);
        assert_eq!(res.counts.total(), res.solutions.len());
        for (x, y) in &res.solutions {
            assert!(spec.holds(x, y));
        }
    }

    #[test]
    fn bound_zero() {
        let spec = EquationSpec::new(1, 1, 2, 2, 2).unwrap();
        assert!(enumerate_solutions(&spec, 0).solutions.is_empty());
        let spec = EquationSpec::new(1, 1, 0, 2, 2).unwrap();
        assert_eq!(enumerate_solutions(&spec, 0).solutions.len(), 1);
    }

    #[test]
    fn completeness_small() {
        let spec = EquationSpec::new(1, -3, -1, 2, 2).unwrap();
        let rep = completeness_check(&spec, 2).unwrap();
        assert!(rep.pass(), "{:?}", rep.unclassified);
        assert_eq!(
            completeness_check(&EquationSpec::new(1, 1, 2, 3, 2).unwrap(), 1),
            Err(CompletenessError::NotQuadratic)
        );
        assert_eq!(
            completeness_check(&EquationSpec::new(1, -4, 1, 2, 2).unwrap(), 1),
            Err(CompletenessError::SquareProduct)
        );
    }
}
