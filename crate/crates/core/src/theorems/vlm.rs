use std::time::Instant;

use super::{base_subfield, scaled_subfield_generator, square_field, Config, VerificationReport};
use crate::arith::prime_power;
use crate::cayley::{CayleyGraph, CliqueOptions};
use crate::error::{Error, Result};
use crate::gf::Elt;
use crate::mulset::EltSet;

/// Paley graphs of square order: the only size-`q` clique of `GP(q², 2)`
/// through `{0, 1}` is `F_q`, and every maximum clique is `aF_q + b` with `a`
/// a nonzero square.
pub fn vlm_verify(q: u64, cfg: &Config) -> Result<VerificationReport> {
    let start = Instant::now();
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if q % 2 == 0 {
        return Err(Error::EvenQ(q));
    }
    let field = square_field(q, cfg.max_field_bits)?;
    let graph = CayleyGraph::generalized_paley(&field, 2)?;
    let squares = graph.connection_set().clone();
    let fq = base_subfield(&field)?.image();

    let mut report = VerificationReport::new("vlm", q, "squares");
    report.d = Some(2);
    report.hyp("q_odd", true);

    let anchors = EltSet::from_elts(&field, [Elt::ZERO, Elt::ONE])?;
    let through = graph.cliques_through_with(&anchors, q as usize, cfg.parallelism)?;
    report.qty("cliques_through_01", through.witnesses.len());
    if through.witnesses != [fq.codes()] {
        report.fail(format!(
            "size-q cliques through {{0,1}}: {:?}, expected only F_q",
            through.witnesses
        ));
    }

    let rooted = graph.clique_number_with(CliqueOptions {
        exhaustive: true,
        parallelism: cfg.parallelism,
    });
    report.omega = Some(rooted.omega);
    if rooted.omega as u64 != q {
        report.fail(format!("ω = {} ≠ q", rooted.omega));
    }
    let mut lines = Vec::new();
    for w in &rooted.witnesses {
        let set = EltSet::from_codes(&field, w.iter().copied())?;
        match scaled_subfield_generator(&set, &fq) {
            Some(a) if squares.contains(a) => lines.push(set),
            _ => report.fail(format!("maximum clique {w:?} is not aF_q with a square")),
        }
    }
    report.qty("max_cliques_through_0", rooted.witnesses.len());
    let mut all: Vec<Vec<u32>> = lines
        .iter()
        .flat_map(|l| field.elements().map(move |b| l.translate(b).map(|t| t.codes())))
        .collect::<Result<_>>()?;
    all.sort_unstable();
    all.dedup();
    report.qty("max_cliques_total", all.len());
    report.witnesses = through.witnesses;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
