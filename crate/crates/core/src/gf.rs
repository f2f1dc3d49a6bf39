//! Finite fields `F_{p^m}` in discrete-log form.
//!
//! Elements are coded as `0` for zero and `t + 1` for `g^t`, where `g` is the
//! class of `x` modulo the canonical primitive polynomial. Multiplication is
//! exponent addition; addition goes through a Zech-logarithm table
//! (`1 + g^t = g^{z(t)}`).
//!
//! The canonical polynomial is the monic primitive polynomial of degree `m`
//! whose coefficients `c_0..c_{m-1}` minimise `sum c_i p^i`. Element codes are
//! therefore reproducible across runs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{factor, gcd, is_prime};
use crate::error::{Error, Result};
use crate::mulset::EltSet;

/// Default cap on the field order, as a power of two.
pub const DEFAULT_MAX_FIELD_BITS: u32 = 20;

/// A field element: `0` is zero, `t + 1` is `g^t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elt(u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log relative to the field generator, `None` for zero.
    #[inline]
    pub fn exponent(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    #[inline]
    pub(crate) fn from_code(code: u32) -> Elt {
        Elt(code)
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            None => write!(f, "0"),
            Some(t) => write!(f, "g^{t}"),
        }
    }
}

/// JSON summary of a field: `{"p":3,"m":2,"poly":[2,1,1],"order":9}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub p: u32,
    pub m: u32,
    pub poly: Vec<u32>,
    pub order: u32,
}

pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    poly: Vec<u32>,
    /// `zech[t]` is the code of `1 + g^t`.
    zech: Vec<u32>,
    /// Codes of the prime-field integers `0..p`.
    prime_codes: Vec<u32>,
    /// Exponent of `-1`.
    neg_exp: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("poly", &self.poly)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^m}` under the default size cap.
    pub fn new(p: u64, m: u32) -> Result<Arc<Field>> {
        Self::with_cap(p, m, DEFAULT_MAX_FIELD_BITS)
    }

    pub fn with_cap(p: u64, m: u32, max_bits: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if m == 0 {
            return Err(Error::DegreeZero);
        }
        let max_bits = max_bits.min(31);
        let too_big = || Error::SizeCapExceeded { p, m, max_bits };
        let order = p.checked_pow(m).ok_or_else(too_big)?;
        if order > 1u64 << max_bits {
            return Err(too_big());
        }
        Ok(Arc::new(Self::build(p as u32, m, order as u32)))
    }

    fn build(p: u32, m: u32, order: u32) -> Field {
        let n1 = order - 1;
        let poly = canonical_poly(p, m, n1);

        // Walk the powers of x in packed base-p form.
        let mut exp = Vec::with_capacity(n1 as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for t in 0..n1 {
            let packed = pack(&cur, p);
            exp.push(packed);
            log[packed as usize] = t;
            mul_by_x(&mut cur, &poly, p);
        }

        let zech = exp
            .iter()
            .map(|&v| {
                let w = if v % p == p - 1 { v - (p - 1) } else { v + 1 };
                if w == 0 {
                    0
                } else {
                    log[w as usize] + 1
                }
            })
            .collect();
        let prime_codes = (0..p)
            .map(|c| if c == 0 { 0 } else { log[c as usize] + 1 })
            .collect();
        let neg_exp = if p == 2 { 0 } else { n1 / 2 };

        Field {
            p,
            m,
            order,
            poly,
            zech,
            prime_codes,
            neg_exp,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    /// Coefficients `c_0..c_m` of the canonical polynomial (monic, `c_m = 1`).
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            p: self.p,
            m: self.m,
            poly: self.poly.clone(),
            order: self.order,
        }
    }

    pub fn generator(&self) -> Elt {
        self.from_exp(1)
    }

    /// `g^t`, reduced modulo the group order.
    #[inline]
    pub fn from_exp(&self, t: i64) -> Elt {
        let n1 = self.group_order() as i64;
        Elt(t.rem_euclid(n1) as u32 + 1)
    }

    /// The image of the integer `k` in the prime field.
    pub fn from_int(&self, k: i64) -> Elt {
        Elt(self.prime_codes[k.rem_euclid(self.p as i64) as usize])
    }

    pub fn elt(&self, code: u64) -> Result<Elt> {
        if code < self.order as u64 {
            Ok(Elt(code as u32))
        } else {
            Err(Error::CodeOutOfRange {
                code,
                order: self.order,
            })
        }
    }

    fn check(&self, a: Elt) -> Result<Elt> {
        self.elt(a.0 as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.order).map(Elt)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elt> {
        (1..self.order).map(Elt)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(Elt(self.add_codes(self.check(a)?.0, self.check(b)?.0)))
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(Elt(self.sub_codes(self.check(a)?.0, self.check(b)?.0)))
    }

    pub fn neg(&self, a: Elt) -> Result<Elt> {
        Ok(Elt(self.neg_code(self.check(a)?.0)))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(Elt(self.mul_codes(self.check(a)?.0, self.check(b)?.0)))
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if self.check(a)?.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Elt(self.inv_code(a.0)))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        let b_inv = self.inv(b)?;
        self.mul(a, b_inv)
    }

    /// `a^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Elt, e: u64) -> Result<Elt> {
        let a = self.check(a)?;
        Ok(match a.exponent() {
            _ if e == 0 => Elt::ONE,
            None => Elt::ZERO,
            Some(t) => {
                let n1 = self.group_order() as u64;
                Elt(((t as u64 * (e % n1)) % n1) as u32 + 1)
            }
        })
    }

    /// `a^{p^i}`.
    pub fn frobenius(&self, a: Elt, i: u32) -> Result<Elt> {
        let a = self.check(a)?;
        Ok(match a.exponent() {
            None => Elt::ZERO,
            Some(t) => {
                let n1 = self.group_order() as u64;
                let pi = pow_mod(self.p as u64, i as u64, n1);
                Elt(((t as u64 * pi) % n1) as u32 + 1)
            }
        })
    }

    #[inline]
    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n1 = self.order - 1;
        let (i, j) = (a - 1, b - 1);
        let d = if j >= i { j - i } else { j + n1 - i };
        match self.zech[d as usize] {
            0 => 0,
            z => {
                let e = i as u64 + z as u64 - 1;
                (e % n1 as u64) as u32 + 1
            }
        }
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n1 = self.order - 1;
        (a - 1 + self.neg_exp) % n1 + 1
    }

    #[inline]
    pub(crate) fn sub_codes(&self, a: u32, b: u32) -> u32 {
        self.add_codes(a, self.neg_code(b))
    }

    #[inline]
    pub(crate) fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n1 = self.order - 1;
        ((a - 1) as u64 + (b - 1) as u64) as u32 % n1 + 1
    }

    #[inline]
    pub(crate) fn inv_code(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n1 = self.order - 1;
        (n1 - (a - 1)) % n1 + 1
    }

    /// Embedding of the unique subfield of order `p^s`.
    pub fn subfield(self: &Arc<Self>, s: u32) -> Result<TowerMap> {
        subfield_embed(self, s)
    }

    pub(crate) fn same_field(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies a residue (length `m`, low degree first) by `x` modulo the monic `poly`.
fn mul_by_x(cur: &mut [u32], poly: &[u32], p: u32) {
    let m = cur.len();
    let top = cur[m - 1];
    for i in (0..m).rev() {
        let shifted = if i == 0 { 0 } else { cur[i - 1] };
        cur[i] = (shifted + (p - top) * poly[i] % p) % p;
    }
}

/// Product of two residues modulo the monic `poly`.
fn mul_mod(a: &[u32], b: &[u32], poly: &[u32], p: u32) -> Vec<u32> {
    let m = a.len();
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    for v in prod.iter_mut() {
        *v %= p64;
    }
    for deg in (m..2 * m - 1).rev() {
        let c = prod[deg];
        if c != 0 {
            for i in 0..m {
                let idx = deg - m + i;
                prod[idx] = (prod[idx] + (p64 - c) * poly[i] as u64) % p64;
            }
            prod[deg] = 0;
        }
    }
    prod[..m].iter().map(|&v| v as u32).collect()
}

fn pow_residue(base: &[u32], mut e: u64, poly: &[u32], p: u32) -> Vec<u32> {
    let m = base.len();
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, poly, p);
        }
        b = mul_mod(&b, &b, poly, p);
        e >>= 1;
    }
    acc
}

/// Whether the class of `x` has multiplicative order exactly `n1` modulo `poly`.
/// This forces `poly` irreducible: a reducible modulus has fewer than `n1` units.
fn x_is_primitive(poly: &[u32], p: u32, n1: u64, primes: &[u64]) -> bool {
    let m = poly.len() - 1;
    if poly[0] == 0 {
        return false;
    }
    let mut x = vec![0u32; m];
    if m == 1 {
        x[0] = (p - poly[0]) % p;
    } else {
        x[1] = 1;
    }
    let mut one = vec![0u32; m];
    one[0] = 1;
    if pow_residue(&x, n1, poly, p) != one {
        return false;
    }
    primes
        .iter()
        .all(|&l| pow_residue(&x, n1 / l, poly, p) != one)
}

fn canonical_poly(p: u32, m: u32, n1: u32) -> Vec<u32> {
    let primes: Vec<u64> = factor(n1 as u64).into_iter().map(|(l, _)| l).collect();
    let candidates = (p as u64).pow(m);
    for key in 0..candidates {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut k = key;
        for _ in 0..m {
            poly.push((k % p as u64) as u32);
            k /= p as u64;
        }
        poly.push(1);
        if x_is_primitive(&poly, p, n1 as u64, &primes) {
            return poly;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

/// Ring embedding `F_{p^s} -> F_{p^m}` with `s | m`.
///
/// The small field's generator `h` is sent to `g^{scale * twist}`, where
/// `scale = (p^m - 1)/(p^s - 1)` and `twist` is the least unit for which that
/// power is a root of the small field's canonical polynomial.
#[derive(Debug, Clone)]
pub struct TowerMap {
    small: Arc<Field>,
    big: Arc<Field>,
    small_degree: u32,
    scale: u32,
    twist: u32,
    twist_inv: u32,
}

pub fn subfield_embed(big: &Arc<Field>, s: u32) -> Result<TowerMap> {
    if s == 0 || big.m % s != 0 {
        return Err(Error::DegreeNotDividing {
            small: s,
            big: big.m,
        });
    }
    let small = Field::with_cap(big.p as u64, s, 31)?;
    let scale = big.group_order() / small.group_order();
    let n_small = small.group_order();

    let root_at = |u: u32| {
        let h = big.from_exp(scale as i64 * u as i64).0;
        let value = small.poly.iter().rev().fold(0u32, |acc, &c| {
            big.add_codes(big.mul_codes(acc, h), big.prime_codes[c as usize])
        });
        value == 0
    };
    let twist = (1..=n_small)
        .find(|&u| gcd(u as u64, n_small as u64) == 1 && root_at(u))
        .expect("a primitive polynomial of the subfield has a root in the extension");
    let twist_inv = (1..=n_small)
        .find(|&v| (twist as u64 * v as u64) % n_small as u64 == 1 % n_small as u64)
        .expect("twist is a unit");

    Ok(TowerMap {
        small,
        big: big.clone(),
        small_degree: s,
        scale,
        twist,
        twist_inv,
    })
}

impl TowerMap {
    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn small_degree(&self) -> u32 {
        self.small_degree
    }

    /// Index `(p^m - 1)/(p^s - 1)` of the subfield's multiplicative group.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn embed(&self, a: Elt) -> Result<Elt> {
        let a = self.small.check(a)?;
        Ok(match a.exponent() {
            None => Elt::ZERO,
            Some(t) => self
                .big
                .from_exp(t as i64 * self.scale as i64 * self.twist as i64),
        })
    }

    pub fn contains(&self, b: Elt) -> bool {
        match b.exponent() {
            None => true,
            Some(e) => e % self.scale == 0,
        }
    }

    /// Preimage of `b` in the small field, if `b` lies in the image.
    pub fn restrict(&self, b: Elt) -> Option<Elt> {
        match b.exponent() {
            None => Some(Elt::ZERO),
            Some(e) if e % self.scale == 0 => {
                let n = self.small.group_order() as u64;
                let t = (e / self.scale) as u64 * self.twist_inv as u64 % n;
                Some(Elt(t as u32 + 1))
            }
            Some(_) => None,
        }
    }

    /// The subfield as a subset of the big field.
    pub fn image(&self) -> EltSet {
        EltSet::from_elts_unchecked(
            &self.big,
            std::iter::once(Elt::ZERO).chain(
                (0..self.small.group_order()).map(|t| self.big.from_exp((t * self.scale) as i64)),
            ),
        )
    }
}
