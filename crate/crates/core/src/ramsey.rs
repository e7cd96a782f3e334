//! Exhaustive colouring sweeps: does every k-colouring of a graph contain a
//! monochromatic induced copy of a motif, and does every k-colouring of a
//! pattern tournament contain a quasi-monochromatic directed triangle?
//!
//! Both checkers enumerate colourings outright under an explicit budget and
//! never sample, so `holds = true` is a proof at the instance level. The
//! colour of the first edge is pinned to 0: both target properties are
//! invariant under bijective colour renaming, and any witness can be renamed
//! so its first edge carries colour 0, so the pruned sweep is exact and the
//! first failing colouring found is the lexicographically least witness.

use rayon::prelude::*;

use crate::duo::PatternTournament;
use crate::error::{Error, Result};
use crate::model::SimpleGraph;

/// Outcome of an exhaustive colouring check: either every colouring has the
/// property, or `witness` is a colouring without it (aligned with the
/// lexicographic edge/arc list of the instance).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifVerdict {
    pub holds: bool,
    pub witness: Option<Vec<u32>>,
}

/// Orients a simple graph into a pattern tournament: edges run forward
/// (small index to large), non-edges are added as backward arcs.
pub fn build_t(g: &SimpleGraph) -> PatternTournament {
    let m = g.n();
    let mut arcs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            if g.has_edge(i, j) {
                arcs.push((i, j));
            } else {
                arcs.push((j, i));
            }
        }
    }
    PatternTournament::from_arcs(m, arcs).expect("orientation covers every pair")
}

/// Does some vertex subset of `g` induce exactly a copy of `motif` whose
/// edges all carry one colour? `colouring` assigns a colour to every edge of
/// `g`, in lexicographic edge order.
pub fn has_mono_induced_motif(g: &SimpleGraph, colouring: &[u32], motif: &SimpleGraph) -> Result<bool> {
    if colouring.len() != g.edges().len() {
        return Err(Error::ColouringIncomplete {
            got: colouring.len(),
            expected: g.edges().len(),
        });
    }
    if motif.n() > g.n() {
        return Ok(false);
    }
    let mut images: Vec<usize> = Vec::with_capacity(motif.n());
    Ok(embed_motif(g, colouring, motif, &mut images, None))
}

fn edge_colour(g: &SimpleGraph, colouring: &[u32], u: usize, v: usize) -> u32 {
    let key = (u.min(v), u.max(v));
    let ix = g.edges().binary_search(&key).expect("edge exists");
    colouring[ix]
}

fn embed_motif(
    g: &SimpleGraph,
    colouring: &[u32],
    motif: &SimpleGraph,
    images: &mut Vec<usize>,
    colour: Option<u32>,
) -> bool {
    let a = images.len();
    if a == motif.n() {
        return true;
    }
    'candidates: for v in 0..g.n() {
        if images.contains(&v) || g.degree(v) < motif.degree(a) {
            continue;
        }
        let mut next_colour = colour;
        for (b, &w) in images.iter().enumerate() {
            if motif.has_edge(a, b) {
                if !g.has_edge(v, w) {
                    continue 'candidates;
                }
                let c = edge_colour(g, colouring, v, w);
                match next_colour {
                    None => next_colour = Some(c),
                    Some(fixed) if fixed != c => continue 'candidates,
                    _ => {}
                }
            } else if g.has_edge(v, w) {
                continue 'candidates; // induced: non-edges must stay non-edges
            }
        }
        images.push(v);
        if embed_motif(g, colouring, motif, images, next_colour) {
            return true;
        }
        images.pop();
    }
    false
}

fn sweep_size(k: usize, positions: usize, budget: u64) -> Result<u64> {
    // One edge is pinned, so k^(positions-1) colourings are enumerated.
    let free = positions.saturating_sub(1) as u32;
    let total = (k as u128)
        .checked_pow(free)
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { remaining: total });
    }
    Ok(total as u64)
}

fn decode_colouring(mut code: u64, k: usize, len: usize) -> Vec<u32> {
    let mut cols = vec![0u32; len];
    for i in (1..len).rev() {
        cols[i] = (code % k as u64) as u32;
        code /= k as u64;
    }
    cols
}

/// Does every `k`-colouring of `g` contain a monochromatic induced copy of
/// `motif`? Enumerates the whole (first-edge-pinned) colouring space within
/// `budget`, in parallel shards; the reported witness is the
/// lexicographically least failing colouring regardless of worker count.
pub fn ramsey_check(g: &SimpleGraph, k: usize, motif: &SimpleGraph, budget: u64) -> Result<MotifVerdict> {
    assert!(k >= 1, "colour count must be positive");
    let len = g.edges().len();
    let total = sweep_size(k, len, budget)?;
    let failing = (0..total).into_par_iter().find_first(|&code| {
        let cols = decode_colouring(code, k, len);
        !has_mono_induced_motif(g, &cols, motif).expect("colouring is complete")
    });
    Ok(match failing {
        Some(code) => MotifVerdict { holds: false, witness: Some(decode_colouring(code, k, len)) },
        None => MotifVerdict { holds: true, witness: None },
    })
}

/// Does every `k`-colouring of the pattern's arcs contain a directed
/// triangle with at least two same-coloured arcs? Witness colourings align
/// with the pattern's lexicographic arc list.
pub fn check_quasi_mono_c3_all_colourings(
    pattern: &PatternTournament,
    k: usize,
    budget: u64,
) -> Result<MotifVerdict> {
    assert!(k >= 1, "colour count must be positive");
    let arcs = pattern.arcs();
    let len = arcs.len();
    let total = sweep_size(k, len, budget)?;
    // Directed triangles as arc-index triples, fixed once.
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let m = pattern.m();
    let arc_ix = |u: usize, v: usize| arcs.binary_search(&(u, v)).expect("arc exists");
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if pattern.has_arc(a, b) && pattern.has_arc(b, c) && pattern.has_arc(c, a) {
                    triangles.push([arc_ix(a, b), arc_ix(b, c), arc_ix(c, a)]);
                } else if pattern.has_arc(a, c) && pattern.has_arc(c, b) && pattern.has_arc(b, a) {
                    triangles.push([arc_ix(a, c), arc_ix(c, b), arc_ix(b, a)]);
                }
            }
        }
    }
    let failing = (0..total).into_par_iter().find_first(|&code| {
        let cols = decode_colouring(code, k, len);
        !triangles.iter().any(|t| {
            let (x, y, z) = (cols[t[0]], cols[t[1]], cols[t[2]]);
            x == y || y == z || x == z
        })
    });
    Ok(match failing {
        Some(code) => MotifVerdict { holds: false, witness: Some(decode_colouring(code, k, len)) },
        None => MotifVerdict { holds: true, witness: None },
    })
}
