//! Independent re-implementations checked against the library.

use std::sync::Arc;

use cayley_core::theorems::{square_field, vlm_verify, Config};
use cayley_core::{CayleyGraph, CliqueOptions, Elt, EltSet, Field, Parallelism};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL_FIELDS: [(u64, u32); 16] = [
    (2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
    (3, 1), (3, 2), (3, 3), (3, 4), (3, 5),
    (5, 2), (7, 2), (13, 2),
];

/// Polynomials over F_p, coefficients low degree first, reduced mod `modulus`.
struct PolyField {
    p: u64,
    modulus: Vec<u64>,
}

impl PolyField {
    fn m(&self) -> usize {
        self.modulus.len() - 1
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m();
        let mut prod = vec![0u64; 2 * m];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for k in 0..=m {
                let sub = c * self.modulus[k] % self.p;
                prod[deg - m + k] = (prod[deg - m + k] + self.p - sub) % self.p;
            }
        }
        prod.truncate(m);
        prod
    }

    fn x(&self) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        if self.m() == 1 {
            v[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            v[1] = 1;
        }
        v
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        v[0] = 1;
        v
    }

    /// Multiplicative order of `x`, or `None` if some power is zero / it exceeds the bound.
    fn order_of_x(&self) -> Option<u64> {
        let one = self.one();
        let x = self.x();
        let mut acc = x.clone();
        let bound = self.p.pow(self.m() as u32);
        for k in 1..bound {
            if acc == one {
                return Some(k);
            }
            if acc.iter().all(|&c| c == 0) {
                return None;
            }
            acc = self.mul(&acc, &x);
        }
        None
    }

    /// `code -> polynomial`: 0 is zero, `t + 1` is `x^t`.
    fn table(&self) -> Vec<Vec<u64>> {
        let n = self.p.pow(self.m() as u32) as usize;
        let mut t = vec![vec![0; self.m()]];
        let mut acc = self.one();
        for _ in 1..n {
            t.push(acc.clone());
            acc = self.mul(&acc, &self.x());
        }
        t
    }
}

fn poly_of(f: &Field) -> PolyField {
    PolyField {
        p: f.p() as u64,
        modulus: f.poly().iter().map(|&c| c as u64).collect(),
    }
}

#[test]
fn canonical_polynomial_is_least_primitive() {
    for (p, m) in SMALL_FIELDS {
        let f = Field::new(p, m).unwrap();
        let pf = poly_of(&f);
        assert_eq!(pf.modulus.len(), m as usize + 1);
        assert_eq!(pf.modulus[m as usize], 1, "monic");
        let full = p.pow(m) - 1;
        assert_eq!(pf.order_of_x(), Some(full), "F_{}^{m} poly {:?}", p, pf.modulus);
        let key = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &x| acc * p + x);
        let own = key(&pf.modulus);
        // Every monic degree-m polynomial with a smaller key is not primitive.
        for low in 0..p.pow(m) {
            let mut coeffs: Vec<u64> = (0..m).map(|i| low / p.pow(i) % p).collect();
            coeffs.push(1);
            if key(&coeffs) >= own {
                continue;
            }
            let other = PolyField { p, modulus: coeffs.clone() };
            assert_ne!(other.order_of_x(), Some(full), "{coeffs:?} is primitive and smaller");
        }
    }
}

#[test]
fn zech_tables_match_polynomial_arithmetic() {
    for (p, m) in SMALL_FIELDS {
        let f = Field::new(p, m).unwrap();
        let pf = poly_of(&f);
        let table = pf.table();
        let code_of = |v: &Vec<u64>| table.iter().position(|w| w == v).unwrap() as u64;
        for a in f.elements() {
            for b in f.elements() {
                let (pa, pb) = (&table[a.code() as usize], &table[b.code() as usize]);
                assert_eq!(f.add(a, b).unwrap().code() as u64, code_of(&pf.add(pa, pb)));
                assert_eq!(f.mul(a, b).unwrap().code() as u64, code_of(&pf.mul(pa, pb)));
            }
        }
    }
}

#[test]
fn field_axioms_exhaustive() {
    for (p, m) in SMALL_FIELDS {
        let f = Field::new(p, m).unwrap();
        let elts: Vec<Elt> = f.elements().collect();
        let triples = elts.len() <= 64;
        for &a in &elts {
            assert_eq!(f.add(a, Elt::ZERO).unwrap(), a);
            assert_eq!(f.mul(a, Elt::ONE).unwrap(), a);
            assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), Elt::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), Elt::ONE);
            }
            assert_eq!(f.pow(a, f.order() as u64).unwrap(), a);
            for &b in &elts {
                assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                assert_eq!(f.sub(f.add(a, b).unwrap(), b).unwrap(), a);
                if !triples {
                    continue;
                }
                for &c in &elts {
                    let ab_c = f.mul(f.mul(a, b).unwrap(), c).unwrap();
                    assert_eq!(ab_c, f.mul(a, f.mul(b, c).unwrap()).unwrap());
                    let s = f.add(f.add(a, b).unwrap(), c).unwrap();
                    assert_eq!(s, f.add(a, f.add(b, c).unwrap()).unwrap());
                    let dist = f.mul(a, f.add(b, c).unwrap()).unwrap();
                    let split = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
                    assert_eq!(dist, split);
                }
            }
        }
    }
}

#[test]
fn subfield_embeddings_are_ring_maps() {
    for (p, m) in [(2u64, 4u32), (2, 6), (2, 8), (3, 4), (5, 2), (3, 2)] {
        let big = Field::new(p, m).unwrap();
        for s in (1..m).filter(|s| m % s == 0) {
            let map = big.subfield(s).unwrap();
            let small = map.small().clone();
            let image = map.image();
            assert_eq!(image.len() as u64, p.pow(s));
            for a in small.elements() {
                for b in small.elements() {
                    let (ea, eb) = (map.embed(a).unwrap(), map.embed(b).unwrap());
                    assert_eq!(map.embed(small.add(a, b).unwrap()).unwrap(), big.add(ea, eb).unwrap());
                    assert_eq!(map.embed(small.mul(a, b).unwrap()).unwrap(), big.mul(ea, eb).unwrap());
                }
            }
            // The image is the fixed field of x ↦ x^{p^s}.
            let fixed: Vec<u32> = big
                .elements()
                .filter(|&x| big.frobenius(x, s).unwrap() == x)
                .map(|x| x.code())
                .collect();
            assert_eq!(image.codes(), fixed);
        }
    }
}

fn naive_product(a: &EltSet, b: &EltSet) -> Vec<u32> {
    let f = a.field();
    a.iter()
        .cartesian_product(b.iter().collect_vec())
        .map(|(x, y)| f.mul(x, y).unwrap().code())
        .sorted()
        .dedup()
        .collect()
}

fn naive_sum(a: &EltSet, b: &EltSet) -> Vec<u32> {
    let f = a.field();
    a.iter()
        .cartesian_product(b.iter().collect_vec())
        .map(|(x, y)| f.add(x, y).unwrap().code())
        .sorted()
        .dedup()
        .collect()
}

fn random_set(f: &Arc<Field>, rng: &mut ChaCha8Rng, zero: bool) -> EltSet {
    let density = rng.gen_range(0.05..0.6);
    let codes: Vec<u32> = f
        .elements()
        .filter(|e| zero || !e.is_zero())
        .filter(|_| rng.gen_bool(density))
        .map(|e| e.code())
        .collect();
    EltSet::from_codes(f, codes).unwrap()
}

#[test]
fn set_operations_match_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, m) in [(3u64, 2u32), (2, 4), (5, 2), (7, 2), (3, 4), (2, 6)] {
        let f = Field::new(p, m).unwrap();
        for _ in 0..40 {
            let a = random_set(&f, &mut rng, false);
            let b = random_set(&f, &mut rng, false);
            assert_eq!(a.product_set(&b).unwrap().codes(), naive_product(&a, &b));
            let inv: Vec<u32> = a.iter().map(|x| f.inv(x).unwrap().code()).sorted().collect();
            assert_eq!(a.inverse_set().unwrap().codes(), inv);
            let az = random_set(&f, &mut rng, true);
            let bz = random_set(&f, &mut rng, true);
            assert_eq!(az.sum_set(&bz).unwrap().codes(), naive_sum(&az, &bz));
            let diff: Vec<u32> = az
                .iter()
                .cartesian_product(az.iter().collect_vec())
                .map(|(x, y)| f.sub(x, y).unwrap().code())
                .sorted()
                .dedup()
                .collect();
            assert_eq!(az.difference_set().codes(), diff);
            if !b.is_empty() {
                let quot: Vec<u32> = az
                    .iter()
                    .filter(|x| !x.is_zero())
                    .cartesian_product(b.iter().collect_vec())
                    .map(|(x, y)| f.div(x, y).unwrap().code())
                    .sorted()
                    .dedup()
                    .collect();
                assert_eq!(az.quotient_set(&b, false).unwrap().codes(), quot);
            }
        }
    }
}

/// All cliques of a graph on at most 32 vertices by subset enumeration.
fn brute_force_cliques(g: &CayleyGraph, size: usize) -> Vec<Vec<u32>> {
    let f = g.field();
    let elts: Vec<Elt> = f.elements().collect();
    elts.iter()
        .copied()
        .combinations(size)
        .filter(|c| c.iter().tuple_combinations().all(|(&u, &v)| g.adjacent(u, v)))
        .map(|c| c.iter().map(|e| e.code()).collect())
        .collect()
}

#[test]
fn paley_nine_cliques() {
    let f = Field::new(3, 2).unwrap();
    let g = CayleyGraph::generalized_paley(&f, 2).unwrap();
    let all = brute_force_cliques(&g, 3);
    assert_eq!(all.len(), 6);
    assert!(brute_force_cliques(&g, 4).is_empty());
    let through_zero: Vec<_> = all.iter().filter(|c| c.contains(&0)).cloned().collect();
    assert_eq!(through_zero.len(), 2);
    let r = g.clique_number_with(CliqueOptions {
        exhaustive: true,
        parallelism: Parallelism::Sequential,
    });
    assert_eq!(r.omega, 3);
    assert_eq!(r.witnesses, through_zero);
    let maxima: Vec<Vec<u32>> = g.maximum_cliques().iter().map(|s| s.codes()).sorted().collect();
    assert_eq!(maxima, all);
}

#[test]
fn small_cayley_graphs_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2u64, 3u32), (3, 2), (13, 1), (2, 4)] {
        let f = Field::new(p, m).unwrap();
        for _ in 0..25 {
            let s = random_set(&f, &mut rng, false);
            let s = s.union(&s.negate()).unwrap();
            let g = CayleyGraph::new(&f, s).unwrap();
            let r = g.clique_number_with(CliqueOptions {
                exhaustive: true,
                parallelism: Parallelism::Sequential,
            });
            assert!(brute_force_cliques(&g, r.omega + 1).is_empty());
            let rooted: Vec<Vec<u32>> = brute_force_cliques(&g, r.omega)
                .into_iter()
                .filter(|c| c.contains(&0))
                .collect();
            assert_eq!(r.witnesses, rooted);
        }
    }
}

#[test]
fn paley_square_order_clique_counts() {
    // Maximum cliques of GP(q², 2) are the q(q+1)/2 lines aF_q + b, a square.
    for q in [3u64, 5, 7, 9, 11] {
        let r = vlm_verify(q, &Config::default()).unwrap();
        assert_eq!(r.quantities["max_cliques_through_0"] as u64, (q + 1) / 2);
        assert_eq!(r.quantities["max_cliques_total"] as u64, q * (q + 1) / 2);
        let f = square_field(q, 20).unwrap();
        let g = CayleyGraph::generalized_paley(&f, 2).unwrap();
        assert_eq!(g.maximum_cliques().len() as u64, q * (q + 1) / 2);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for (q, d) in [(5u64, 2u64), (7, 4), (9, 2), (8, 3), (9, 5)] {
        let f = square_field(q, 20).unwrap();
        let g = CayleyGraph::generalized_paley(&f, d).unwrap();
        let run = |parallelism| {
            let mut r = g.clique_number_with(CliqueOptions {
                exhaustive: true,
                parallelism,
            });
            r.elapsed = 0;
            r
        };
        assert_eq!(run(Parallelism::Sequential), run(Parallelism::Parallel));
        let anchors = EltSet::from_elts(&f, [Elt::ZERO, Elt::ONE]).unwrap();
        let a = g.cliques_through_with(&anchors, q as usize, Parallelism::Sequential).unwrap();
        let b = g.cliques_through_with(&anchors, q as usize, Parallelism::Parallel).unwrap();
        assert_eq!(a.witnesses, b.witnesses);
    }
}
