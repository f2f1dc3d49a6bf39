use std::sync::Arc;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{base_order, base_subfield, product_words, VerificationReport, Verdict};
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::gf::{Elt, Field};
use crate::mulset::EltSet;

/// Both product-set hypotheses of the main theorem, computed exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainHypothesisReport {
    pub q: u64,
    /// `|SSSS^{-1}S^{-1}S^{-1}|`
    pub size_six_fold: usize,
    /// `|SS^{-1}S^{-1}F_q^*|`
    pub size_three_fold_fq: usize,
    /// `(q² − 3)/2`
    pub threshold_a: Ratio<u64>,
    /// `(q² − 1)/2`
    pub threshold_b: Ratio<u64>,
    pub branch_a_holds: bool,
    pub branch_b_holds: bool,
}

impl MainHypothesisReport {
    pub fn any_branch(&self) -> bool {
        self.branch_a_holds || self.branch_b_holds
    }
}

fn validate(field: &Arc<Field>, s: &EltSet) -> Result<u64> {
    field.same_field(s.field())?;
    let q = base_order(field)?;
    if s.contains_zero() {
        return Err(Error::ZeroInOperand);
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(q)
}

pub fn check_main_hypotheses(field: &Arc<Field>, s: &EltSet) -> Result<MainHypothesisReport> {
    let q = validate(field, s)?;
    let fq_star = base_subfield(field)?.image().without(Elt::ZERO);
    let words = product_words(s)?;
    let three_fq = words.three_fold.product_set(&fq_star)?;
    let (six, three) = (words.six_fold.len() as u64, three_fq.len() as u64);
    let qq = q * q;
    Ok(MainHypothesisReport {
        q,
        size_six_fold: six as usize,
        size_three_fold_fq: three as usize,
        threshold_a: Ratio::new(qq - 3, 2),
        threshold_b: Ratio::new(qq - 1, 2),
        branch_a_holds: 2 * six <= qq - 3,
        branch_b_holds: 2 * three <= qq - 1,
    })
}

/// Enumerates the size-`q` cliques through `{0, 1}` and checks that the only
/// one (if any) is `F_q`.
pub fn verify_main_conclusion(field: &Arc<Field>, s: &EltSet) -> Result<VerificationReport> {
    let start = Instant::now();
    let hyp = check_main_hypotheses(field, s)?;
    let q = hyp.q;
    let fq = base_subfield(field)?.image();
    let mut report = VerificationReport::new("thm-main", q, "custom");
    report.hyp("branch_a", hyp.branch_a_holds);
    report.hyp("branch_b", hyp.branch_b_holds);
    report.qty("size_six_fold", hyp.size_six_fold);
    report.qty("size_three_fold_fq", hyp.size_three_fold_fq);
    report.qty("twice_threshold_a", q * q - 3);
    report.qty("twice_threshold_b", q * q - 1);

    let graph = CayleyGraph::new(field, s.clone())?;
    report.qty("fq_is_clique", i64::from(graph.is_clique(&fq)?));
    // No size-q clique contains {0,1} unless 1 ∈ S.
    if s.contains(Elt::ONE) {
        let anchors = EltSet::from_elts(field, [Elt::ZERO, Elt::ONE])?;
        report.witnesses = graph.cliques_through(&anchors, q as usize)?.witnesses;
    }
    report.qty("witness_count", report.witnesses.len());
    let holds = report.witnesses.is_empty() || report.witnesses == [fq.codes()];
    if !hyp.any_branch() {
        report.verdict = Verdict::Inapplicable;
        report.reason = Some(format!(
            "neither product-set bound holds; conclusion {}",
            if holds { "holds anyway" } else { "fails" }
        ));
    } else if !holds {
        report.fail("a size-q clique through {0,1} other than F_q exists");
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// The doubling corollary: `C⁶|S| ≤ (q² − 3)/2` with `C = |SS|/|S|` should
/// force the six-fold branch, via `|SSSS^{-1}S^{-1}S^{-1}| ≤ C⁶|S|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingReport {
    pub doubling: Ratio<u64>,
    pub size: usize,
    pub size_six_fold: usize,
    /// `|S³S⁻³| ≤ C⁶|S|`
    pub plunnecke_holds: bool,
    /// `C⁶|S| ≤ (q² − 3)/2`
    pub small_doubling: bool,
    pub branch_a_holds: bool,
}

impl DoublingReport {
    /// Small doubling must imply branch (a).
    pub fn consistent(&self) -> bool {
        !self.small_doubling || self.branch_a_holds
    }
}

pub fn check_doubling_corollary(field: &Arc<Field>, s: &EltSet) -> Result<DoublingReport> {
    let hyp = check_main_hypotheses(field, s)?;
    let c = s.doubling_constant()?;
    let n = s.len() as u128;
    let ss = *c.numer() as u128 * n / *c.denom() as u128;
    // C⁶|S| = |SS|⁶ / |S|⁵
    let c6s_num = ss.pow(6);
    let c6s_den = n.pow(5);
    let six = hyp.size_six_fold as u128;
    let qq = (hyp.q * hyp.q) as u128;
    Ok(DoublingReport {
        doubling: c,
        size: s.len(),
        size_six_fold: hyp.size_six_fold,
        plunnecke_holds: six * c6s_den <= c6s_num,
        small_doubling: 2 * c6s_num <= (qq - 3) * c6s_den,
        branch_a_holds: hyp.branch_a_holds,
    })
}

/// The two subspace propositions: a size-`q` clique through 0 is a subspace
/// when `|SS^{-1}| ≤ (q² − 3)/2` or `|SF_q^*| ≤ (q² − 1)/2`.
pub fn verify_subspace_propositions(field: &Arc<Field>, s: &EltSet) -> Result<VerificationReport> {
    let start = Instant::now();
    let q = validate(field, s)?;
    let fq_star = base_subfield(field)?.image().without(Elt::ZERO);
    let quotient = s.product_set(&s.inverse_set()?)?;
    let coset_hull = s.product_set(&fq_star)?;
    let qq = q * q;
    let mut report = VerificationReport::new("prop-subspace", q, "custom");
    let quotient_small = 2 * quotient.len() as u64 <= qq - 3;
    let cosets_few = 2 * coset_hull.len() as u64 <= qq - 1;
    report.hyp("quotient_bound", quotient_small);
    report.hyp("coset_bound", cosets_few);
    report.qty("size_quotient", quotient.len());
    report.qty("size_s_fq", coset_hull.len());

    let graph = CayleyGraph::new(field, s.clone())?;
    let anchors = EltSet::from_elts(field, [Elt::ZERO])?;
    let found = graph.cliques_through(&anchors, q as usize)?;
    let non_subspaces = found
        .witnesses
        .iter()
        .filter(|w| {
            !EltSet::from_codes(field, w.iter().copied())
                .map(|a| a.is_subspace())
                .unwrap_or(false)
        })
        .count();
    report.qty("cliques_through_0", found.witnesses.len());
    report.qty("non_subspace_cliques", non_subspaces);
    report.witnesses = found.witnesses;
    if !(quotient_small || cosets_few) {
        report.verdict = Verdict::Inapplicable;
        report.reason = Some("neither quotient nor coset bound holds".into());
    } else if non_subspaces > 0 {
        report.fail(format!("{non_subspaces} size-q cliques through 0 are not subspaces"));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mulset::{coset_union, CosetSpec};

    #[test]
    fn f25_squares_hypotheses() {
        let f = Field::new(5, 2).unwrap();
        let s = coset_union(&f, &CosetSpec::subgroup(2)).unwrap();
        let h = check_main_hypotheses(&f, &s).unwrap();
        assert_eq!(h.size_six_fold, 12);
        assert_eq!(h.threshold_a, Ratio::from_integer(11));
        assert!(!h.branch_a_holds);
        assert_eq!(h.size_three_fold_fq, 12);
        assert_eq!(h.threshold_b, Ratio::from_integer(12));
        assert!(h.branch_b_holds);
    }

    #[test]
    fn subgroup_hypotheses() {
        for (p, m, d) in [(5u64, 2u32, 3u64), (3, 4, 4), (2, 4, 3), (7, 2, 4)] {
            let f = Field::new(p, m).unwrap();
            let h = coset_union(&f, &CosetSpec::subgroup(d)).unwrap();
            let r = check_main_hypotheses(&f, &h).unwrap();
            assert_eq!(r.size_six_fold, h.len());
            assert!(r.branch_a_holds, "({p},{m},{d})");
        }
    }

    #[test]
    fn full_group_fails_both_branches() {
        let f = Field::new(3, 2).unwrap();
        let r = check_main_hypotheses(&f, &EltSet::nonzero(&f)).unwrap();
        assert_eq!((r.size_six_fold, r.size_three_fold_fq), (8, 8));
        assert!(!r.branch_a_holds && !r.branch_b_holds);
    }

    #[test]
    fn hypothesis_errors() {
        let f27 = Field::new(3, 3).unwrap();
        assert_eq!(
            check_main_hypotheses(&f27, &EltSet::nonzero(&f27)).unwrap_err(),
            Error::NotSquareOrder(27)
        );
        let f9 = Field::new(3, 2).unwrap();
        let s = EltSet::from_elts(&f9, [f9.generator()]).unwrap();
        assert_eq!(check_main_hypotheses(&f9, &s).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn main_conclusion_examples() {
        let f25 = Field::new(5, 2).unwrap();
        let sq = coset_union(&f25, &CosetSpec::subgroup(2)).unwrap();
        let r = verify_main_conclusion(&f25, &sq).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witnesses, vec![base_subfield(&f25).unwrap().image().codes()]);

        let f81 = Field::new(3, 4).unwrap();
        let fifth = coset_union(&f81, &CosetSpec::subgroup(5)).unwrap();
        let r = verify_main_conclusion(&f81, &fifth).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witnesses, vec![base_subfield(&f81).unwrap().image().codes()]);

        let f16 = Field::new(2, 4).unwrap();
        let cubes = coset_union(&f16, &CosetSpec::subgroup(3)).unwrap();
        let r = verify_main_conclusion(&f16, &cubes).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn inapplicable_main_conclusion_still_enumerates() {
        let f9 = Field::new(3, 2).unwrap();
        let r = verify_main_conclusion(&f9, &EltSet::nonzero(&f9)).unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        // In K_9 every pair with 0,1 extends: 7 choices for the third vertex.
        assert_eq!(r.witnesses.len(), 7);
    }

    #[test]
    fn doubling_corollary_on_subgroups() {
        let f = Field::new(3, 4).unwrap();
        let h = coset_union(&f, &CosetSpec::subgroup(5)).unwrap();
        let d = check_doubling_corollary(&f, &h).unwrap();
        assert_eq!(d.doubling, Ratio::from_integer(1));
        assert!(d.plunnecke_holds && d.small_doubling && d.branch_a_holds);
    }

    #[test]
    fn subspace_propositions_for_paley() {
        let f = Field::new(5, 2).unwrap();
        let sq = coset_union(&f, &CosetSpec::subgroup(2)).unwrap();
        let r = verify_subspace_propositions(&f, &sq).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.quantities["cliques_through_0"], 3);
    }
}
