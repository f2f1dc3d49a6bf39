//! Directions determined by point sets in `AG(2, r)` and the linearity test
//! inside `F_{r^2}`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::gf::{subfield_embed, Elt, Field, TowerMap};
use crate::mulset::EltSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: Arc<Field>,
    points: Vec<(Elt, Elt)>,
}

/// JSON form: `{"r":9,"points":[[0,0],[1,1],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetRecord {
    pub r: u32,
    pub points: Vec<[u32; 2]>,
}

impl PointSet {
    /// Rejects out-of-range coordinates and duplicate points.
    pub fn new(field: &Arc<Field>, points: Vec<(Elt, Elt)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for &(x, y) in &points {
            field.elt(x.code() as u64)?;
            field.elt(y.code() as u64)?;
            if !seen.insert((x, y)) {
                return Err(Error::DuplicatePoint(x.code(), y.code()));
            }
        }
        Ok(PointSet {
            field: field.clone(),
            points,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[(Elt, Elt)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, pt: (Elt, Elt)) -> bool {
        self.points.contains(&pt)
    }

    /// `U + (a, b)`.
    pub fn translate(&self, a: Elt, b: Elt) -> Result<Self> {
        let f = &self.field;
        let pts = self
            .points
            .iter()
            .map(|&(x, y)| Ok((f.add(x, a)?, f.add(y, b)?)))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(f, pts)
    }

    pub fn to_record(&self) -> PointSetRecord {
        PointSetRecord {
            r: self.field.order(),
            points: self.points.iter().map(|&(x, y)| [x.code(), y.code()]).collect(),
        }
    }
}

/// Directions as a subset of `PG(1, r)`: finite slopes plus the vertical one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    pub finite: EltSet,
    pub has_infinity: bool,
}

/// JSON form: `{"slopes":[codes],"infinity":true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionSetRecord {
    pub slopes: Vec<u32>,
    pub infinity: bool,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.finite.len() + usize::from(self.has_infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_record(&self) -> DirectionSetRecord {
        DirectionSetRecord {
            slopes: self.finite.codes(),
            infinity: self.has_infinity,
        }
    }
}

pub fn directions_of(u: &PointSet) -> Result<DirectionSet> {
    directions_of_with(u, Parallelism::default())
}

pub fn directions_of_with(u: &PointSet, exec: Parallelism) -> Result<DirectionSet> {
    if u.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let f = &u.field;
    let r = f.order() as usize;
    let pts = &u.points;
    // Slot r stands for the vertical direction.
    let rows = exec.map_range(0..pts.len(), |i| {
        let mut bits = BitSet::new(r + 1);
        let (xi, yi) = pts[i];
        for &(xj, yj) in &pts[i + 1..] {
            let dx = f.sub_codes(xj.code(), xi.code());
            if dx == 0 {
                bits.insert(r);
            } else {
                let dy = f.sub_codes(yj.code(), yi.code());
                bits.insert(f.mul_codes(dy, f.inv_code(dx)) as usize);
            }
        }
        bits
    });
    let mut all = BitSet::new(r + 1);
    for b in &rows {
        all.union_with(b);
    }
    let has_infinity = all.contains(r);
    Ok(DirectionSet {
        finite: EltSet::from_elts_unchecked(
            f,
            all.iter().filter(|&c| c < r).map(|c| Elt::from_code(c as u32)),
        ),
        has_infinity,
    })
}

/// All points on a single line.
pub fn is_collinear(u: &PointSet) -> bool {
    let f = &u.field;
    let pts = &u.points;
    if pts.len() <= 2 {
        return true;
    }
    let (x0, y0) = pts[0];
    let (x1, y1) = pts[1];
    let dx = f.sub_codes(x1.code(), x0.code());
    let dy = f.sub_codes(y1.code(), y0.code());
    pts[2..].iter().all(|&(x, y)| {
        let ex = f.sub_codes(x.code(), x0.code());
        let ey = f.sub_codes(y.code(), y0.code());
        f.mul_codes(dx, ey) == f.mul_codes(dy, ex)
    })
}

/// `A × A`.
pub fn grid_of(a: &EltSet) -> Result<PointSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems: Vec<Elt> = a.iter().collect();
    let pts = elems
        .iter()
        .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
        .collect();
    Ok(PointSet {
        field: a.field().clone(),
        points: pts,
    })
}

/// The embedding `F_r ⊂ F_{r^2}` used for linearity checks.
#[derive(Debug, Clone)]
pub struct QuadraticTower {
    map: TowerMap,
}

impl QuadraticTower {
    pub fn new(base: &Arc<Field>, max_bits: u32) -> Result<Self> {
        let big = Field::with_cap(base.p() as u64, 2 * base.m(), max_bits)
            .map_err(|e| Error::TowerUnavailable(e.to_string()))?;
        let map = subfield_embed(&big, base.m())?;
        debug_assert_eq!(**map.small(), **base);
        Ok(QuadraticTower { map })
    }

    pub fn map(&self) -> &TowerMap {
        &self.map
    }

    pub fn big(&self) -> &Arc<Field> {
        self.map.big()
    }

    /// Deterministic `β` choices: `g, g^2, g^3, ...` of `F_{r^2}` skipping
    /// the embedded `F_r`.
    pub fn betas(&self) -> impl Iterator<Item = Elt> + '_ {
        let big = self.map.big();
        (1..big.group_order() as i64)
            .map(|t| big.from_exp(t))
            .filter(|&b| !self.map.contains(b))
    }
}

/// How many `β` to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaSamples {
    Count(usize),
    All,
}

/// `W = {x + βy : (x, y) ∈ U}` inside `F_{r^2}`.
pub fn linear_image(u: &PointSet, tower: &QuadraticTower, beta: Elt) -> Result<EltSet> {
    let map = tower.map();
    if **map.small() != *u.field {
        return Err(Error::TowerUnavailable(format!(
            "tower base F_{} does not match F_{}",
            map.small().order(),
            u.field.order()
        )));
    }
    let big = map.big();
    big.elt(beta.code() as u64)?;
    if map.contains(beta) {
        return Err(Error::BetaInBaseField);
    }
    let elts = u
        .points
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (map.embed(x)?, map.embed(y)?);
            big.add(x, big.mul(beta, y)?)
        })
        .collect::<Result<Vec<_>>>()?;
    EltSet::from_elts(big, elts)
}

/// Whether `W = {x + βy}` is a subspace of `F_{r^2}` for the given `β`.
pub fn linearity_check(u: &PointSet, tower: &QuadraticTower, beta: Elt) -> Result<bool> {
    if !u.contains((Elt::ZERO, Elt::ZERO)) {
        return Err(Error::OriginMissing);
    }
    Ok(linear_image(u, tower, beta)?.is_subspace())
}

/// Conjunction of [`linearity_check`] over the deterministic `β` sequence.
pub fn linearity_check_sampled(
    u: &PointSet,
    tower: &QuadraticTower,
    samples: BetaSamples,
) -> Result<bool> {
    let take = match samples {
        BetaSamples::Count(n) => n,
        BetaSamples::All => usize::MAX,
    };
    for beta in tower.betas().take(take) {
        if !linearity_check(u, tower, beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}
