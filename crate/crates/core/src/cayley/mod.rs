//! Cayley graphs `Cay(F; S)` and exact clique computation.

mod search;

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::gf::{Elt, Field};
use crate::mulset::{coset_union, CosetSpec, EltSet};

/// Outcome of a clique computation.
///
/// `omega` is the largest witness size (0 when there are no witnesses).
/// Witnesses are sorted code lists in lexicographic order; `exhaustive`
/// records whether the list is complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub omega: usize,
    pub exhaustive: bool,
    pub witnesses: Vec<Vec<u32>>,
    #[serde(rename = "elapsed_ms")]
    pub elapsed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CliqueOptions {
    /// List every maximum clique through vertex 0 instead of one witness.
    pub exhaustive: bool,
    pub parallelism: Parallelism,
}

/// `Cay(F; S)`: vertices are field elements, `u ~ v` iff `v - u ∈ S`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    field: Arc<Field>,
    conn: EltSet,
    adj: Vec<BitSet>,
}

impl CayleyGraph {
    pub fn new(field: &Arc<Field>, conn: EltSet) -> Result<Self> {
        field.same_field(conn.field())?;
        if conn.contains_zero() {
            return Err(Error::ZeroInConnectionSet);
        }
        if !conn.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let r = field.order();
        let shifts: Vec<u32> = conn.codes();
        let adj = (0..r)
            .map(|v| BitSet::from_indices(r as usize, shifts.iter().map(|&s| field.add_codes(v, s) as usize)))
            .collect();
        Ok(CayleyGraph {
            field: field.clone(),
            conn,
            adj,
        })
    }

    /// The generalized Paley graph `GP(r, d) = Cay(F_r; (F_r^*)^d)`.
    pub fn generalized_paley(field: &Arc<Field>, d: u64) -> Result<Self> {
        let r = field.order();
        let n1 = field.group_order() as u64;
        if d <= 1 || n1 % d != 0 {
            return Err(Error::IndexNotDividing { d, group_order: n1 });
        }
        if r % 2 == 1 && (r as u64 - 1) % (2 * d) != 0 {
            return Err(Error::BadResidueCondition { r, d });
        }
        Self::new(field, coset_union(field, &CosetSpec::subgroup(d))?)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn connection_set(&self) -> &EltSet {
        &self.conn
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self) -> usize {
        self.conn.len()
    }

    pub fn adjacent(&self, u: Elt, v: Elt) -> bool {
        self.adj[u.code() as usize].contains(v.code() as usize)
    }

    pub fn neighbors(&self, v: Elt) -> impl Iterator<Item = Elt> + '_ {
        self.adj[v.code() as usize]
            .iter()
            .map(|c| Elt::from_code(c as u32))
    }

    /// `A` is a clique iff `A - A ⊆ S ∪ {0}`.
    pub fn is_clique(&self, a: &EltSet) -> Result<bool> {
        self.field.same_field(a.field())?;
        let allowed = self.conn.with(Elt::ZERO);
        a.difference_set().is_subset(&allowed)
    }

    /// Exact clique number with one witness through vertex 0.
    pub fn clique_number(&self) -> CliqueResult {
        self.clique_number_with(CliqueOptions::default())
    }

    pub fn clique_number_with(&self, opts: CliqueOptions) -> CliqueResult {
        let start = Instant::now();
        // Vertex-transitive: some maximum clique contains 0.
        let root = &self.adj[0];
        let best = search::max_clique(&self.adj, &[0], root, opts.parallelism);
        let omega = best.len();
        let limit = if opts.exhaustive { None } else { Some(1) };
        let found = search::enumerate(&self.adj, &[0], root, omega - 1, limit, opts.parallelism);
        debug_assert!(!found.is_empty());
        CliqueResult {
            omega,
            exhaustive: opts.exhaustive,
            witnesses: to_codes(found),
            elapsed: start.elapsed().as_millis() as u64,
        }
    }

    /// Every clique of exactly `size` vertices containing all `anchors`.
    pub fn cliques_through(&self, anchors: &EltSet, size: usize) -> Result<CliqueResult> {
        self.cliques_through_with(anchors, size, Parallelism::default())
    }

    pub fn cliques_through_with(
        &self,
        anchors: &EltSet,
        size: usize,
        exec: Parallelism,
    ) -> Result<CliqueResult> {
        let start = Instant::now();
        if !self.is_clique(anchors)? {
            return Err(Error::AnchorsNotClique);
        }
        let base: Vec<usize> = anchors.codes().into_iter().map(|c| c as usize).collect();
        if size < base.len() {
            return Err(Error::SizeBelowAnchors {
                size,
                anchors: base.len(),
            });
        }
        let mut cands = BitSet::full(self.order());
        for &a in &base {
            cands.intersect_with(&self.adj[a]);
        }
        let found = search::enumerate(&self.adj, &base, &cands, size - base.len(), None, exec);
        let witnesses = to_codes(found);
        Ok(CliqueResult {
            omega: witnesses.first().map_or(0, Vec::len),
            exhaustive: true,
            witnesses,
            elapsed: start.elapsed().as_millis() as u64,
        })
    }

    /// All maximum cliques of the graph: translates of the ones through 0.
    pub fn maximum_cliques(&self) -> Vec<EltSet> {
        let rooted = self.clique_number_with(CliqueOptions {
            exhaustive: true,
            ..Default::default()
        });
        let mut all: Vec<Vec<u32>> = Vec::new();
        for w in &rooted.witnesses {
            let base = EltSet::from_codes(&self.field, w.iter().copied()).expect("valid codes");
            for b in self.field.elements() {
                all.push(base.translate(b).expect("valid element").codes());
            }
        }
        all.sort_unstable();
        all.dedup();
        all.into_iter()
            .map(|c| EltSet::from_codes(&self.field, c).expect("valid codes"))
            .collect()
    }
}

fn to_codes(found: Vec<Vec<usize>>) -> Vec<Vec<u32>> {
    found
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u32).collect())
        .collect()
}
