//! Exact algebra of subsets of a finite field.
//!
//! An [`EltSet`] is a bitset over element codes tied to its field. Product
//! sets work in the exponent domain, where multiplying by `g^s` is a cyclic
//! rotation by `s`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::{Elt, Field, FieldSummary};

#[derive(Clone)]
pub struct EltSet {
    field: Arc<Field>,
    bits: BitSet,
}

impl PartialEq for EltSet {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.bits == other.bits
    }
}

impl Eq for EltSet {}

impl fmt::Debug for EltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EltSet(F_{}){:?}", self.field.order(), self.codes())
    }
}

impl EltSet {
    pub fn empty(field: &Arc<Field>) -> Self {
        EltSet {
            field: field.clone(),
            bits: BitSet::new(field.order() as usize),
        }
    }

    /// The whole field, zero included.
    pub fn full(field: &Arc<Field>) -> Self {
        EltSet {
            field: field.clone(),
            bits: BitSet::full(field.order() as usize),
        }
    }

    /// `F^*`.
    pub fn nonzero(field: &Arc<Field>) -> Self {
        Self::full(field).without(Elt::ZERO)
    }

    pub fn from_codes<I: IntoIterator<Item = u32>>(field: &Arc<Field>, codes: I) -> Result<Self> {
        let mut bits = BitSet::new(field.order() as usize);
        for c in codes {
            bits.insert(field.elt(c as u64)?.code() as usize);
        }
        Ok(EltSet {
            field: field.clone(),
            bits,
        })
    }

    pub fn from_elts<I: IntoIterator<Item = Elt>>(field: &Arc<Field>, elts: I) -> Result<Self> {
        Self::from_codes(field, elts.into_iter().map(Elt::code))
    }

    pub(crate) fn from_elts_unchecked<I: IntoIterator<Item = Elt>>(
        field: &Arc<Field>,
        elts: I,
    ) -> Self {
        EltSet {
            field: field.clone(),
            bits: BitSet::from_indices(
                field.order() as usize,
                elts.into_iter().map(|e| e.code() as usize),
            ),
        }
    }

    pub(crate) fn from_bits(field: &Arc<Field>, bits: BitSet) -> Self {
        debug_assert_eq!(bits.len(), field.order() as usize);
        EltSet {
            field: field.clone(),
            bits,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, a: Elt) -> bool {
        self.bits.contains(a.code() as usize)
    }

    pub fn contains_zero(&self) -> bool {
        self.bits.contains(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elt> + '_ {
        self.bits.iter().map(|c| Elt::from_code(c as u32))
    }

    /// Sorted element codes.
    pub fn codes(&self) -> Vec<u32> {
        self.bits.iter().map(|c| c as u32).collect()
    }

    pub fn with(&self, a: Elt) -> Self {
        let mut s = self.clone();
        s.bits.insert(a.code() as usize);
        s
    }

    pub fn without(&self, a: Elt) -> Self {
        let mut s = self.clone();
        s.bits.remove(a.code() as usize);
        s
    }

    pub fn union(&self, other: &EltSet) -> Result<Self> {
        self.field.same_field(&other.field)?;
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        Ok(s)
    }

    pub fn intersection(&self, other: &EltSet) -> Result<Self> {
        self.field.same_field(&other.field)?;
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        Ok(s)
    }

    /// Set difference `self \ other` (not the additive difference set).
    pub fn minus(&self, other: &EltSet) -> Result<Self> {
        self.field.same_field(&other.field)?;
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        Ok(s)
    }

    pub fn is_subset(&self, other: &EltSet) -> Result<bool> {
        self.field.same_field(&other.field)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// `-A`.
    pub fn negate(&self) -> Self {
        let f = &self.field;
        EltSet::from_elts_unchecked(f, self.bits.iter().map(|c| Elt::from_code(f.neg_code(c as u32))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.negate() == *self
    }

    /// `S ∩ -S`: the largest symmetric subset.
    pub fn symmetric_core(&self) -> Self {
        let mut s = self.clone();
        s.bits.intersect_with(&self.negate().bits);
        s
    }

    /// `cA`.
    pub fn scale(&self, c: Elt) -> Result<Self> {
        let f = &self.field;
        let c = f.elt(c.code() as u64)?.code();
        Ok(EltSet::from_elts_unchecked(
            f,
            self.bits.iter().map(|a| Elt::from_code(f.mul_codes(a as u32, c))),
        ))
    }

    /// `A + b`.
    pub fn translate(&self, b: Elt) -> Result<Self> {
        let f = &self.field;
        let b = f.elt(b.code() as u64)?.code();
        Ok(EltSet::from_elts_unchecked(
            f,
            self.bits.iter().map(|a| Elt::from_code(f.add_codes(a as u32, b))),
        ))
    }

    /// Bitset over exponents `0..n-1` of the nonzero part.
    fn exponent_bits(&self) -> BitSet {
        let n1 = self.field.group_order() as usize;
        BitSet::from_indices(n1, self.bits.iter().filter(|&c| c != 0).map(|c| c - 1))
    }

    fn from_exponent_bits(field: &Arc<Field>, exps: &BitSet) -> Self {
        EltSet::from_bits(
            field,
            BitSet::from_indices(field.order() as usize, exps.iter().map(|t| t + 1)),
        )
    }

    /// `ST = {st}`; both operands must avoid zero.
    pub fn product_set(&self, other: &EltSet) -> Result<Self> {
        self.field.same_field(&other.field)?;
        if self.contains_zero() || other.contains_zero() {
            return Err(Error::ZeroInOperand);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let large_exps = large.exponent_bits();
        let mut acc = BitSet::new(large_exps.len());
        for s in small.bits.iter() {
            acc.union_with(&large_exps.rotate_left(s - 1));
        }
        Ok(Self::from_exponent_bits(&self.field, &acc))
    }

    /// `S^{-1}`; `S` must avoid zero.
    pub fn inverse_set(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::ZeroInOperand);
        }
        Ok(self.invert_nonzero())
    }

    fn invert_nonzero(&self) -> Self {
        let f = &self.field;
        EltSet::from_elts_unchecked(
            f,
            self.bits
                .iter()
                .filter(|&c| c != 0)
                .map(|c| Elt::from_code(f.inv_code(c as u32))),
        )
    }

    /// `A^{-1} = {a^{-1} : a ∈ A \ {0}} ∪ {0}` for `A` containing zero.
    pub fn punctured_inverse(&self) -> Result<Self> {
        if !self.contains_zero() {
            return Err(Error::ZeroNotInSet);
        }
        Ok(self.invert_nonzero().with(Elt::ZERO))
    }

    /// `A - A`.
    pub fn difference_set(&self) -> Self {
        let f = &self.field;
        let elems: Vec<u32> = self.bits.iter().map(|c| c as u32).collect();
        let mut bits = BitSet::new(f.order() as usize);
        for &a in &elems {
            for &b in &elems {
                bits.insert(f.sub_codes(a, b) as usize);
            }
        }
        EltSet::from_bits(f, bits)
    }

    /// `A + B`.
    pub fn sum_set(&self, other: &EltSet) -> Result<Self> {
        self.field.same_field(&other.field)?;
        let f = &self.field;
        let mut bits = BitSet::new(f.order() as usize);
        for a in self.bits.iter() {
            for b in other.bits.iter() {
                bits.insert(f.add_codes(a as u32, b as u32) as usize);
            }
        }
        Ok(EltSet::from_bits(f, bits))
    }

    /// Quotient set `S T^{-1}`, optionally with zero adjoined; zeros in the
    /// operands are ignored.
    pub fn quotient_set(&self, other: &EltSet, with_zero: bool) -> Result<Self> {
        let num = self.without(Elt::ZERO);
        let den = other.without(Elt::ZERO).inverse_set()?;
        let q = num.product_set(&den)?;
        Ok(if with_zero { q.with(Elt::ZERO) } else { q })
    }

    /// Exact `|SS| / |S|`.
    pub fn doubling_constant(&self) -> Result<Ratio<u64>> {
        if self.contains_zero() {
            return Err(Error::ZeroInOperand);
        }
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let ss = self.product_set(self)?;
        Ok(Ratio::new(ss.len() as u64, self.len() as u64))
    }

    /// Contains zero and is closed under addition, hence an `F_p`-subspace.
    pub fn is_subspace(&self) -> bool {
        if !self.contains_zero() {
            return false;
        }
        let f = &self.field;
        let elems: Vec<u32> = self.bits.iter().map(|c| c as u32).collect();
        elems.iter().enumerate().all(|(i, &a)| {
            elems[i..]
                .iter()
                .all(|&b| self.bits.contains(f.add_codes(a, b) as usize))
        })
    }

    pub fn to_record(&self) -> EltSetRecord {
        EltSetRecord {
            field: self.field.summary(),
            codes: self.codes(),
        }
    }

    /// Rebuilds a set from its JSON record, checking the polynomial matches.
    pub fn from_record(record: &EltSetRecord, max_bits: u32) -> Result<Self> {
        let f = Field::with_cap(record.field.p as u64, record.field.m, max_bits)?;
        if f.summary() != record.field {
            return Err(Error::SetSpec {
                spec: format!("{:?}", record.field),
                reason: "field summary does not match the canonical field".into(),
            });
        }
        EltSet::from_codes(&f, record.codes.iter().copied())
    }
}

/// JSON form: `{"field":{...},"codes":[sorted codes]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EltSetRecord {
    pub field: FieldSummary,
    pub codes: Vec<u32>,
}

/// `∪_{j ∈ js} g^j H` with `H = <g^d>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpec {
    pub d: u64,
    pub js: Vec<i64>,
}

impl CosetSpec {
    pub fn subgroup(d: u64) -> Self {
        CosetSpec { d, js: vec![0] }
    }

    /// `∪_{j=lo}^{hi} g^j H`.
    pub fn window(d: u64, lo: i64, hi: i64) -> Self {
        CosetSpec {
            d,
            js: (lo..=hi).collect(),
        }
    }
}

pub fn coset_union(field: &Arc<Field>, spec: &CosetSpec) -> Result<EltSet> {
    let n1 = field.group_order() as u64;
    if spec.d == 0 || n1 % spec.d != 0 {
        return Err(Error::IndexNotDividing {
            d: spec.d,
            group_order: n1,
        });
    }
    let d = spec.d as i64;
    let mut exps = BitSet::new(n1 as usize);
    let mut seen = HashSet::new();
    for &j in &spec.js {
        let r = j.rem_euclid(d);
        if !seen.insert(r) {
            continue;
        }
        for t in (r..n1 as i64).step_by(d as usize) {
            exps.insert(t as usize);
        }
    }
    Ok(EltSet::from_exponent_bits(field, &exps))
}

/// `F_p`-span of the given elements.
pub fn span(field: &Arc<Field>, gens: &[Elt]) -> EltSet {
    let mut acc = EltSet::from_elts_unchecked(field, [Elt::ZERO]);
    for &x in gens {
        if acc.contains(x) {
            continue;
        }
        acc = extend_span(&acc, x);
    }
    acc
}

fn extend_span(v: &EltSet, x: Elt) -> EltSet {
    let f = v.field();
    let mut bits = v.bits.clone();
    let mut mult = x.code();
    for _ in 1..f.p() {
        for a in v.bits.iter() {
            bits.insert(f.add_codes(a as u32, mult) as usize);
        }
        mult = f.add_codes(mult, x.code());
    }
    EltSet::from_bits(f, bits)
}

/// Every `F_p`-subspace of the field with exactly `size` elements, in
/// ascending order of their code lists.
pub fn subspaces_of_size(field: &Arc<Field>, size: usize) -> Result<Vec<EltSet>> {
    let p = field.p() as usize;
    let mut dim = 0;
    let mut s = 1;
    while s < size {
        s *= p;
        dim += 1;
    }
    if s != size || dim > field.m() {
        return Err(Error::PreconditionViolated(format!(
            "{size} is not p^k for 0 <= k <= {}",
            field.m()
        )));
    }
    let mut layer: Vec<EltSet> = vec![span(field, &[])];
    for _ in 0..dim {
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut next = Vec::new();
        for v in &layer {
            for x in field.nonzero() {
                if v.contains(x) {
                    continue;
                }
                let w = extend_span(v, x);
                if seen.insert(w.bits.clone()) {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_by_key(|s| s.codes());
    Ok(layer)
}

/// Set-specification mini-grammar:
/// `squares`, `subgroup(d)`, `cosets(d;j1,j2,...)`, `explicit:[c1,c2,...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Squares,
    Subgroup(u64),
    Cosets { d: u64, js: Vec<i64> },
    Explicit(Vec<u32>),
}

impl SetSpec {
    pub fn resolve(&self, field: &Arc<Field>) -> Result<EltSet> {
        match self {
            SetSpec::Squares => coset_union(field, &CosetSpec::subgroup(2)),
            SetSpec::Subgroup(d) => coset_union(field, &CosetSpec::subgroup(*d)),
            SetSpec::Cosets { d, js } => coset_union(
                field,
                &CosetSpec {
                    d: *d,
                    js: js.clone(),
                },
            ),
            SetSpec::Explicit(codes) => EltSet::from_codes(field, codes.iter().copied()),
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Squares => write!(f, "squares"),
            SetSpec::Subgroup(d) => write!(f, "subgroup({d})"),
            SetSpec::Cosets { d, js } => write!(f, "cosets({d};{})", join(js)),
            SetSpec::Explicit(codes) => write!(f, "explicit:[{}]", join(codes)),
        }
    }
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::SetSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t == "squares" {
            return Ok(SetSpec::Squares);
        }
        if let Some(inner) = t.strip_prefix("subgroup(").and_then(|r| r.strip_suffix(')')) {
            let d = inner.trim().parse().map_err(|_| bad("index is not an integer"))?;
            return Ok(SetSpec::Subgroup(d));
        }
        if let Some(inner) = t.strip_prefix("cosets(").and_then(|r| r.strip_suffix(')')) {
            let (d, js) = inner.split_once(';').ok_or_else(|| bad("expected `d;j1,...`"))?;
            let d = d.trim().parse().map_err(|_| bad("index is not an integer"))?;
            let js = js
                .split(',')
                .map(|j| j.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("offsets must be integers"))?;
            return Ok(SetSpec::Cosets { d, js });
        }
        if let Some(inner) = t
            .strip_prefix("explicit:[")
            .and_then(|r| r.strip_suffix(']'))
        {
            if inner.trim().is_empty() {
                return Ok(SetSpec::Explicit(Vec::new()));
            }
            let codes = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("codes must be nonnegative integers"))?;
            return Ok(SetSpec::Explicit(codes));
        }
        Err(bad("unknown form"))
    }
}
