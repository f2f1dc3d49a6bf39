use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{base_order, base_subfield, square_field, Config, VerificationReport};
use crate::error::{Error, Result};
use crate::gf::{Elt, Field};
use crate::mulset::{subspaces_of_size, EltSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldVerdict {
    /// `A` and its punctured inverse are both subspaces.
    pub both_subspaces: bool,
    pub is_subfield: bool,
}

impl SubfieldVerdict {
    pub fn implication_holds(&self) -> bool {
        !self.both_subspaces || self.is_subfield
    }
}

/// For `|A| = q` with `0, 1 ∈ A`: if `A` and `A^{-1}` (punctured) are both
/// subspaces then `A = F_q`.
pub fn subfield_criterion(field: &Arc<Field>, a: &EltSet) -> Result<SubfieldVerdict> {
    field.same_field(a.field())?;
    let q = base_order(field)? as usize;
    if a.len() != q {
        return Err(Error::WrongSize {
            expected: q,
            actual: a.len(),
        });
    }
    if !a.contains(Elt::ZERO) || !a.contains(Elt::ONE) {
        return Err(Error::MissingAnchors);
    }
    let fq = base_subfield(field)?.image();
    Ok(SubfieldVerdict {
        both_subspaces: a.is_subspace() && a.punctured_inverse()?.is_subspace(),
        is_subfield: *a == fq,
    })
}

/// `x² y^{-1} ∈ A` for all `x ∈ A`, `y ∈ A \ {0}`, given that `A` and its
/// punctured inverse are subspaces.
pub fn claim_x2_property(field: &Arc<Field>, a: &EltSet) -> Result<bool> {
    field.same_field(a.field())?;
    if !a.contains_zero() {
        return Err(Error::PreconditionViolated("0 must lie in A".into()));
    }
    if !a.is_subspace() || !a.punctured_inverse()?.is_subspace() {
        return Err(Error::PreconditionViolated(
            "A and its punctured inverse must both be subspaces".into(),
        ));
    }
    let f = field;
    let codes = a.codes();
    Ok(codes.iter().all(|&x| {
        let x2 = f.mul_codes(x, x);
        codes
            .iter()
            .filter(|&&y| y != 0)
            .all(|&y| a.contains(Elt::from_code(f.mul_codes(x2, f.inv_code(y)))))
    }))
}

/// Runs the subfield criterion over every `F_p`-subspace of `F_{q²}` of size
/// `q` that contains 1.
pub fn subfield_criterion_sweep(q: u64, cfg: &Config) -> Result<VerificationReport> {
    let start = Instant::now();
    let field = square_field(q, cfg.max_field_bits)?;
    let all = subspaces_of_size(&field, q as usize)?;
    let with_one: Vec<&EltSet> = all.iter().filter(|a| a.contains(Elt::ONE)).collect();
    let verdicts = cfg
        .parallelism
        .map(&with_one, |a| subfield_criterion(&field, a));
    let mut report = VerificationReport::new("prop-subfield", q, "subspaces");
    let mut both = 0;
    let mut claim_failures = 0;
    let mut bad = Vec::new();
    for (a, v) in with_one.iter().zip(verdicts) {
        let v = v?;
        if v.both_subspaces {
            both += 1;
            if !claim_x2_property(&field, a)? {
                claim_failures += 1;
            }
            report.witnesses.push(a.codes());
        }
        if !v.implication_holds() {
            bad.push(a.codes());
        }
    }
    report.hyp("q_prime_power", true);
    report.qty("subspaces_total", all.len());
    report.qty("subspaces_with_one", with_one.len());
    report.qty("both_subspaces", both);
    report.qty("counterexamples", bad.len());
    report.qty("claim_failures", claim_failures);
    if !bad.is_empty() {
        report.witnesses = bad;
        report.fail("a subspace with subspace inverse is not F_q");
    } else if claim_failures > 0 {
        report.fail("x^2/y closure failed on a qualifying subspace");
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
