//! Randomised and exhaustive property suites.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_doubling_corollary, square_field, Config};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::geometry::{directions_of_with, is_collinear, PointSet};
use crate::gf::{Elt, Field};
use crate::mulset::EltSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub q: u64,
    pub checked: u64,
    pub violations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// First offending set, as element codes (or point indices for AG(2,p)).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Vec<u32>>,
    pub elapsed_ms: u64,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A nonempty symmetric subset of `F^*`: each pair `{x, -x}` is kept with
/// probability `density`.
pub fn random_symmetric_subset<R: Rng + ?Sized>(field: &Arc<Field>, rng: &mut R, density: f64) -> EltSet {
    let mut reps: Vec<u32> = field
        .nonzero()
        .map(|x| x.code())
        .filter(|&c| c <= field.neg_code(c))
        .collect();
    reps.sort_unstable();
    let mut picked: Vec<u32> = reps.iter().copied().filter(|_| rng.gen_bool(density)).collect();
    if picked.is_empty() {
        picked.push(reps[rng.gen_range(0..reps.len())]);
    }
    let codes = picked.iter().flat_map(|&c| [c, field.neg_code(c)]);
    EltSet::from_elts_unchecked(field, codes.map(Elt::from_code))
}

/// `|S³S⁻³| ≤ C⁶|S|` on `samples` random symmetric sets in `F_{q²}^*`, with
/// the doubling corollary's consistency checked on each.
pub fn plunnecke_suite(q: u64, samples: usize, cfg: &Config) -> Result<SuiteSummary> {
    let start = Instant::now();
    let field = square_field(q, cfg.max_field_bits)?;
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed ^ q);
    let seeds: Vec<u64> = (0..samples).map(|_| master.next_u64()).collect();
    let outcomes = cfg.parallelism.map(&seeds, |&seed| -> Result<Option<Vec<u32>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let density = rng.gen_range(0.05..0.95);
        let s = random_symmetric_subset(&field, &mut rng, density);
        let rep = check_doubling_corollary(&field, &s)?;
        Ok((!rep.plunnecke_holds || !rep.consistent()).then(|| s.codes()))
    });
    let mut summary = SuiteSummary {
        suite: "plunnecke".into(),
        q,
        checked: samples as u64,
        violations: 0,
        seed: Some(cfg.seed),
        first_violation: None,
        elapsed_ms: 0,
    };
    for o in outcomes {
        if let Some(bad) = o? {
            summary.violations += 1;
            summary.first_violation.get_or_insert(bad);
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(summary)
}

/// Every `p`-subset of `AG(2, p)` is collinear or determines at least
/// `(p + 3)/2` directions. Points are indexed `x·p + y`.
pub fn redei_exhaustive(p: u64, cfg: &Config) -> Result<SuiteSummary> {
    let start = Instant::now();
    if !is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    let field = Field::with_cap(p, 1, cfg.max_field_bits)?;
    let n = (p * p) as usize;
    let k = p as usize;
    let need = (p as usize + 3) / 2;
    let point = |i: usize| (field.from_int((i / k) as i64), field.from_int((i % k) as i64));
    let parts = cfg.parallelism.map_range(0..n, |first| -> Result<(u64, u64, Option<Vec<u32>>)> {
        let (mut checked, mut bad, mut witness) = (0u64, 0u64, None);
        let mut rest = Combinations::new(n - first - 1, k - 1);
        while let Some(c) = rest.next_subset() {
            let idx: Vec<usize> = std::iter::once(first).chain(c.iter().map(|&j| first + 1 + j)).collect();
            let u = PointSet::new(&field, idx.iter().map(|&i| point(i)).collect())?;
            checked += 1;
            if !is_collinear(&u) && directions_of_with(&u, Parallelism::Sequential)?.len() < need {
                bad += 1;
                witness.get_or_insert_with(|| idx.iter().map(|&i| i as u32).collect());
            }
        }
        Ok((checked, bad, witness))
    });
    let mut summary = SuiteSummary {
        suite: "redei".into(),
        q: p,
        checked: 0,
        violations: 0,
        seed: None,
        first_violation: None,
        elapsed_ms: 0,
    };
    for part in parts {
        let (c, b, w) = part?;
        summary.checked += c;
        summary.violations += b;
        if summary.first_violation.is_none() {
            summary.first_violation = w;
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(summary)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next_subset(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if !self.started {
            self.started = true;
            return (k <= self.n).then_some(&self.idx[..]);
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx[..]);
            }
        }
        None
    }
}
