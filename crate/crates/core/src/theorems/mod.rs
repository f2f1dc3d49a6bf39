//! Mechanical checks of the clique theorems at desk scale.
//!
//! Each verifier builds the relevant field and connection set, computes the
//! hypothesis quantities exactly, runs the clique enumeration, and records
//! the outcome in a [`VerificationReport`]. Threshold comparisons are done in
//! integers (`2·size ≤ q² − 3` rather than `size ≤ (q² − 3)/2`).

mod gp;
mod main_thm;
mod margin;
mod subfield;
mod suites;
mod vlm;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::gf::{Field, TowerMap, DEFAULT_MAX_FIELD_BITS};
use crate::mulset::EltSet;

pub use gp::{verify_gp_theorem, GpCase, GpCaseInput};
pub use main_thm::{
    check_doubling_corollary, check_main_hypotheses, verify_main_conclusion,
    verify_subspace_propositions, DoublingReport, MainHypothesisReport,
};
pub use margin::{character_margin, CharacterMargin};
pub use subfield::{claim_x2_property, subfield_criterion, subfield_criterion_sweep, SubfieldVerdict};
pub use suites::{plunnecke_suite, random_symmetric_subset, redei_exhaustive, SuiteSummary};
pub use vlm::vlm_verify;

pub const DEFAULT_SEED: u64 = 12345;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub max_field_bits: u32,
    pub parallelism: Parallelism,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_field_bits: DEFAULT_MAX_FIELD_BITS,
            parallelism: Parallelism::default(),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    /// A theorem instance was falsified.
    Fail,
    /// Hypotheses unmet; the computation ran for information only.
    Inapplicable,
    Skip,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inapplicable => "INAPPLICABLE",
            Verdict::Skip => "SKIP",
        }
    }
}

/// One theorem check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub set: String,
    pub hypothesis: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantities: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<usize>,
    pub witnesses: Vec<Vec<u32>>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(theorem: &str, q: u64, set: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            q,
            d: None,
            k: None,
            set: set.into(),
            hypothesis: BTreeMap::new(),
            quantities: BTreeMap::new(),
            omega: None,
            witnesses: Vec::new(),
            verdict: Verdict::Pass,
            reason: None,
            seed: None,
            elapsed_ms: 0,
        }
    }

    /// A placeholder row for a grid point that could not be run.
    pub fn skipped(theorem: &str, q: u64, set: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(theorem, q, set);
        r.verdict = Verdict::Skip;
        r.reason = Some(reason.into());
        r
    }

    pub(crate) fn hyp(&mut self, key: &str, value: bool) {
        self.hypothesis.insert(key.to_string(), value);
    }

    pub(crate) fn qty(&mut self, key: &str, value: impl TryInto<i64>) {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.quantities.insert(key.to_string(), v);
    }

    /// Records a failed check and downgrades the verdict.
    pub(crate) fn fail(&mut self, why: impl Into<String>) {
        let why = why.into();
        self.verdict = Verdict::Fail;
        self.reason = Some(match self.reason.take() {
            Some(prev) => format!("{prev}; {why}"),
            None => why,
        });
    }
}

/// `F_{q^2}` for a prime power `q`.
pub fn square_field(q: u64, max_bits: u32) -> Result<Arc<Field>> {
    let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Field::with_cap(p, 2 * n, max_bits)
}

/// The subfield `F_q` inside a field of order `q^2`.
pub fn base_subfield(field: &Arc<Field>) -> Result<TowerMap> {
    if field.m() % 2 != 0 {
        return Err(Error::NotSquareOrder(field.order()));
    }
    field.subfield(field.m() / 2)
}

/// `q` with `|F| = q^2`.
pub fn base_order(field: &Field) -> Result<u64> {
    if field.m() % 2 != 0 {
        return Err(Error::NotSquareOrder(field.order()));
    }
    Ok((field.p() as u64).pow(field.m() / 2))
}

/// `S^{-1}`, `SS^{-1}S^{-1}`, and `SSSS^{-1}S^{-1}S^{-1}`.
pub(crate) struct ProductWords {
    pub three_fold: EltSet,
    pub six_fold: EltSet,
}

pub(crate) fn product_words(s: &EltSet) -> Result<ProductWords> {
    let inv = s.inverse_set()?;
    let three_fold = s.product_set(&inv)?.product_set(&inv)?;
    let cube = s.product_set(s)?.product_set(s)?;
    let six_fold = cube.product_set(&cube.inverse_set()?)?;
    Ok(ProductWords {
        three_fold,
        six_fold,
    })
}

/// `W = aF_q` for the smallest nonzero `a ∈ W`; returns `a` when it holds.
pub(crate) fn scaled_subfield_generator(w: &EltSet, fq: &EltSet) -> Option<crate::gf::Elt> {
    let a = w.iter().find(|e| !e.is_zero())?;
    (fq.scale(a).ok()? == *w).then_some(a)
}
