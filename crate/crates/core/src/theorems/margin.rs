use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::mulset::EltSet;

/// Distance from the origin to the convex hull of `{χ(x) : x ∈ S}` for the
/// order-`m` character `χ(g^t) = e^{2πi t/m}`.
///
/// Any `ε ≤ margin` satisfies `|Σ χ(x_j)| / k ≥ ε` for every `k` and every
/// tuple from `S` (the hull interpretation of the bound).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterMargin {
    pub order: u64,
    pub margin: f64,
    /// Smallest arc (in units of `2π/m`) containing all character values.
    pub arc: u64,
    pub contains_origin: bool,
    pub interpretation: String,
}

pub fn character_margin(field: &Arc<Field>, s: &EltSet, m: u64) -> Result<CharacterMargin> {
    field.same_field(s.field())?;
    let n1 = field.group_order() as u64;
    if m <= 1 || n1 % m != 0 {
        return Err(Error::BadOrder { m, group_order: n1 });
    }
    if s.contains_zero() {
        return Err(Error::ZeroInOperand);
    }
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut residues: Vec<u64> = s
        .iter()
        .filter_map(|x| x.exponent())
        .map(|t| t as u64 % m)
        .collect();
    residues.sort_unstable();
    residues.dedup();

    let max_gap = residues
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(residues[0] + m - residues[residues.len() - 1]))
        .max()
        .unwrap_or(m);
    let arc = m - max_gap;
    // Points confined to an arc of angle φ < π sit at distance cos(φ/2) from
    // the origin; otherwise the hull reaches the origin.
    let contains_origin = 2 * arc >= m;
    let margin = if contains_origin {
        0.0
    } else {
        (PI * arc as f64 / m as f64).cos()
    };
    Ok(CharacterMargin {
        order: m,
        margin,
        arc,
        contains_origin,
        interpretation: "hull".into(),
    })
}
