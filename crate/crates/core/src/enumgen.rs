//! Exhaustive and random generation of tournaments, colourings, digraphs and
//! graphs, with canonical forms for isomorphism-reduced sweeps.
//!
//! Randomness contract: all `random_*` generators draw from ChaCha8
//! (`rand_chacha` 0.3) seeded via `seed_from_u64`, with a fixed draw order
//! documented per generator and unbiased rejection sampling for bounded
//! values. Identical seed and parameters give identical output on every
//! platform; changing the generator or the draw order is a breaking change
//! because golden tests pin the streams.

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::model::{ColouredTournament, Digraph, SimpleGraph};

/// Relabeling-minimal serialization of a tournament: the lexicographically
/// least byte encoding of the orientation matrix (colours included) over all
/// vertex permutations. Equal keys hold exactly for isomorphic structures.
/// Computed for n <= 8 only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
}

impl CanonicalKey {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

pub const CANONICAL_MAX_N: usize = 8;

/// Byte encoding minimized by [`canonical_key`]: `[n, k]`, then per pair
/// `(i, j)` in lexicographic order a direction byte (0 = `i -> j`) and a
/// colour byte.
fn key_bytes_under(t: &ColouredTournament, sigma: &[usize], buf: &mut Vec<u8>) {
    let n = t.n();
    buf.clear();
    buf.push(n as u8);
    buf.push(t.k() as u8);
    for i in 0..n {
        for j in i + 1..n {
            match t.colour(sigma[i], sigma[j]) {
                Some(c) => {
                    buf.push(0);
                    buf.push(c.0 as u8);
                }
                None => {
                    let c = t.colour(sigma[j], sigma[i]).expect("complete");
                    buf.push(1);
                    buf.push(c.0 as u8);
                }
            }
        }
    }
}

pub fn canonical_key(t: &ColouredTournament) -> CanonicalKey {
    assert!(t.n() <= CANONICAL_MAX_N, "canonical keys support n <= {CANONICAL_MAX_N}");
    assert!(t.k() <= u8::MAX as usize, "canonical keys encode colours as single bytes");
    let mut sigma: Vec<usize> = (0..t.n()).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::new();
    permute(&mut sigma, 0, &mut |sigma| {
        key_bytes_under(t, sigma, &mut buf);
        match &best {
            Some(b) if *b <= buf => {}
            _ => best = Some(buf.clone()),
        }
    });
    CanonicalKey { bytes: best.expect("identity permutation always visited") }
}

fn permute(items: &mut [usize], at: usize, f: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        f(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, f);
        items.swap(at, i);
    }
}

fn decode_key(key: &CanonicalKey) -> ColouredTournament {
    let bytes = key.bytes();
    let (n, k) = (bytes[0] as usize, bytes[1] as usize);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut at = 2;
    for i in 0..n {
        for j in i + 1..n {
            let (dir, colour) = (bytes[at], bytes[at + 1] as u32);
            at += 2;
            if dir == 0 {
                arcs.push((i, j, colour));
            } else {
                arcs.push((j, i, colour));
            }
        }
    }
    ColouredTournament::new(n, k, arcs).expect("key encodes a valid tournament")
}

/// Lazy stream of tournaments; see [`enumerate_tournaments`].
pub enum TournamentStream {
    Orientations { n: usize, next: u64, end: u64 },
    Fixed(std::vec::IntoIter<ColouredTournament>),
}

impl Iterator for TournamentStream {
    type Item = ColouredTournament;

    fn next(&mut self) -> Option<ColouredTournament> {
        match self {
            TournamentStream::Orientations { n, next, end } => {
                if next == end {
                    return None;
                }
                let t = orientation_instance(*n, *next);
                *next += 1;
                Some(t)
            }
            TournamentStream::Fixed(it) => it.next(),
        }
    }
}

/// The `code`-th of the `2^(n(n-1)/2)` orientations, all colour 0: bit `p`
/// of the code (most significant bit = pair `(0, 1)`) flips pair `p` from
/// forward to backward, so ascending codes are lexicographic.
pub fn orientation_instance(n: usize, code: u64) -> ColouredTournament {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut arcs = Vec::with_capacity(pairs);
    let mut p = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> (pairs - 1 - p) & 1 == 0 {
                arcs.push((u, v, 0));
            } else {
                arcs.push((v, u, 0));
            }
            p += 1;
        }
    }
    ColouredTournament::new(n, 1, arcs).expect("complete by construction")
}

/// Enumerates 1-coloured tournaments on `n` vertices.
///
/// With `canonical = false`: all `2^(n(n-1)/2)` orientations in
/// lexicographic order, within `budget`. With `canonical = true` (n <= 7):
/// exactly one representative per isomorphism class — the canonical form
/// itself — in increasing [`CanonicalKey`] order, built by extending the
/// canonical representatives one vertex at a time and deduplicating keys.
pub fn enumerate_tournaments(n: usize, canonical: bool, budget: u64) -> Result<TournamentStream> {
    if canonical {
        if n > 7 {
            return Err(Error::CanonicalTooLarge { n, max: 7 });
        }
        return Ok(TournamentStream::Fixed(canonical_representatives(n).into_iter().collect::<Vec<_>>().into_iter()));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let count: u128 = if pairs >= 127 { u128::MAX } else { 1u128 << pairs };
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { remaining: count });
    }
    Ok(TournamentStream::Orientations { n, next: 0, end: count as u64 })
}

fn canonical_representatives(n: usize) -> Vec<ColouredTournament> {
    let mut reps = vec![ColouredTournament::new(0, 0, []).expect("empty")];
    for m in 1..=n {
        let mut keys: BTreeSet<CanonicalKey> = BTreeSet::new();
        for rep in &reps {
            // Attach vertex m-1 with every in/out pattern on the old vertices.
            for bits in 0u32..1 << (m - 1) {
                let mut arcs: Vec<(usize, usize, u32)> =
                    rep.arcs().into_iter().map(|(u, v, c)| (u, v, c.0)).collect();
                for j in 0..m - 1 {
                    if bits >> j & 1 == 1 {
                        arcs.push((m - 1, j, 0));
                    } else {
                        arcs.push((j, m - 1, 0));
                    }
                }
                let t = ColouredTournament::new(m, 1, arcs).expect("complete");
                keys.insert(canonical_key(&t));
            }
        }
        reps = keys.iter().map(decode_key).collect();
    }
    reps
}

/// Lazy stream of recolourings of one orientation; see
/// [`enumerate_colourings`].
pub struct ColouringStream {
    n: usize,
    k: usize,
    arcs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    fix_first: bool,
}

impl Iterator for ColouringStream {
    type Item = ColouredTournament;

    fn next(&mut self) -> Option<ColouredTournament> {
        if self.next == self.end {
            return None;
        }
        let mut code = self.next;
        self.next += 1;
        let mut cols = vec![0u32; self.arcs.len()];
        let skip = usize::from(self.fix_first && !self.arcs.is_empty());
        for i in (skip..cols.len()).rev() {
            cols[i] = (code % self.k as u64) as u32;
            code /= self.k as u64;
        }
        let arcs = self.arcs.iter().zip(&cols).map(|(&(u, v), &c)| (u, v, c));
        Some(ColouredTournament::new(self.n, self.k, arcs).expect("recolouring is complete"))
    }
}

/// All `k`-colourings of the orientation of `t`, in lexicographic order over
/// the arc list (first arc most significant). `fix_first` pins the first
/// arc's colour to 0, enumerating one representative per colour-swap orbit
/// of the first arc.
pub fn enumerate_colourings(t: &ColouredTournament, k: usize, fix_first: bool, budget: u64) -> Result<ColouringStream> {
    assert!(k >= 1, "colour count must be positive");
    let arcs: Vec<(usize, usize)> = t.arcs().into_iter().map(|(u, v, _)| (u, v)).collect();
    let free = arcs.len().saturating_sub(usize::from(fix_first && !arcs.is_empty()));
    let count = (k as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { remaining: count });
    }
    Ok(ColouringStream {
        n: t.n(),
        k,
        arcs,
        next: 0,
        end: count as u64,
        fix_first,
    })
}

fn uniform(rng: &mut ChaCha8Rng, k: u64) -> u64 {
    // Rejection sampling; the limit is a multiple of k so every residue is
    // equally likely.
    let limit = u64::MAX - u64::MAX % k;
    loop {
        let x = rng.next_u64();
        if x < limit {
            return x % k;
        }
    }
}

/// Uniform random `k`-coloured tournament: per pair `(u, v)` in
/// lexicographic order, one direction draw (low bit of `next_u64`) then one
/// colour draw.
pub fn random_instance(n: usize, k: usize, seed: u64) -> ColouredTournament {
    assert!(k >= 1, "colour count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let forward = rng.next_u64() & 1 == 0;
            let colour = uniform(&mut rng, k as u64) as u32;
            if forward {
                arcs.push((u, v, colour));
            } else {
                arcs.push((v, u, colour));
            }
        }
    }
    ColouredTournament::new(n, k, arcs).expect("complete by construction")
}

/// Random digraph: each ordered pair `(u, v)`, `u != v`, in lexicographic
/// order gets an arc with probability `percent / 100` (one draw per pair).
pub fn random_digraph(n: usize, percent: u64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && uniform(&mut rng, 100) < percent {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs).expect("no duplicates by construction")
}

/// Random simple graph: each pair `u < v` in lexicographic order gets an
/// edge with probability `percent / 100`.
pub fn random_graph(n: usize, percent: u64, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if uniform(&mut rng, 100) < percent {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("no duplicates by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::serialize_cdt;

    #[test]
    fn orientation_stream_is_lexicographic_and_complete() {
        let all: Vec<_> = enumerate_tournaments(3, false, 1 << 20).unwrap().collect();
        assert_eq!(all.len(), 8);
        // First instance: all pairs forward.
        assert_eq!(serialize_cdt(&all[0]), "cdt 3 1\n0 1 0\n0 2 0\n1 2 0\n");
        // Last instance: all pairs backward.
        assert_eq!(serialize_cdt(&all[7]), "cdt 3 1\n1 0 0\n2 0 0\n2 1 0\n");
        let rerun: Vec<_> = enumerate_tournaments(3, false, 1 << 20).unwrap().collect();
        assert_eq!(all, rerun);
    }

    #[test]
    fn orientation_budget() {
        assert!(matches!(
            enumerate_tournaments(10, false, 1 << 20),
            Err(Error::BudgetExceeded { remaining }) if remaining == 1 << 45
        ));
    }

    #[test]
    fn canonical_counts_small() {
        for (n, classes) in [(1usize, 1usize), (2, 1), (3, 2), (4, 4), (5, 12)] {
            let reps: Vec<_> = enumerate_tournaments(n, true, u64::MAX).unwrap().collect();
            assert_eq!(reps.len(), classes, "n = {n}");
        }
        assert!(matches!(
            enumerate_tournaments(8, true, u64::MAX),
            Err(Error::CanonicalTooLarge { n: 8, max: 7 })
        ));
    }

    #[test]
    fn canonical_key_invariance() {
        let t = random_instance(6, 3, 11);
        let mut sigma: Vec<usize> = (0..6).collect();
        let base = canonical_key(&t);
        let mut checked = 0;
        permute(&mut sigma, 0, &mut |s| {
            checked += 1;
            if checked % 97 == 0 {
                assert_eq!(canonical_key(&t.relabel(s)), base);
            }
        });
    }

    #[test]
    fn canonical_reps_are_their_own_key() {
        for rep in enumerate_tournaments(5, true, u64::MAX).unwrap() {
            assert_eq!(decode_key(&canonical_key(&rep)), rep);
        }
    }

    #[test]
    fn colouring_stream_counts() {
        let t2 = orientation_instance(2, 0);
        assert_eq!(enumerate_colourings(&t2, 2, false, 1 << 20).unwrap().count(), 2);
        let t3 = orientation_instance(3, 0);
        assert_eq!(enumerate_colourings(&t3, 2, false, 1 << 20).unwrap().count(), 8);
        assert_eq!(enumerate_colourings(&t3, 3, true, 1 << 20).unwrap().count(), 9);
        assert!(matches!(
            enumerate_colourings(&t3, 1000, false, 10),
            Err(Error::BudgetExceeded { remaining: 1_000_000_000 })
        ));
    }

    #[test]
    fn colouring_stream_is_lexicographic() {
        let t3 = orientation_instance(3, 0);
        let cols: Vec<Vec<u32>> = enumerate_colourings(&t3, 2, false, 1 << 20)
            .unwrap()
            .map(|t| t.arcs().into_iter().map(|(_, _, c)| c.0).collect())
            .collect();
        assert_eq!(cols[0], vec![0, 0, 0]);
        assert_eq!(cols[1], vec![0, 0, 1]);
        assert_eq!(cols[7], vec![1, 1, 1]);
    }

    #[test]
    fn random_instance_contract() {
        let empty = random_instance(0, 3, 5);
        assert_eq!(empty.n(), 0);
        let a = random_instance(30, 3, 7);
        assert_eq!(a.arcs().len(), 435);
        let b = random_instance(30, 3, 7);
        assert_eq!(serialize_cdt(&a), serialize_cdt(&b));
        assert_ne!(serialize_cdt(&a), serialize_cdt(&random_instance(30, 3, 8)));
    }

    #[test]
    fn random_digraph_and_graph_are_deterministic() {
        let d1 = random_digraph(10, 30, 42);
        let d2 = random_digraph(10, 30, 42);
        assert_eq!(d1, d2);
        let g1 = random_graph(10, 50, 42);
        let g2 = random_graph(10, 50, 42);
        assert_eq!(g1, g2);
    }
}
