//! Absorbing sets, quasi-kernels and quasi-sink duos, and the classical
//! sufficient conditions for an absorbing vertex, all as executable
//! predicates and exact desk-scale searches.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::model::{ColouredTournament, Digraph};
use crate::reach::colour_closure_from;

/// Is `set` reachable from every vertex by a monochromatic path (members
/// count as absorbed)?
pub fn is_absorbing(t: &ColouredTournament, set: &[usize]) -> Result<bool> {
    for &s in set {
        t.check_vertex(s)?;
    }
    let absorbed = absorbed_union(t, &absorbs_sets(t), set);
    Ok(absorbed.len() == t.n())
}

/// Per-vertex absorption sets: entry `s` holds every vertex with a
/// monochromatic path (any length) to `s`.
fn absorbs_sets(t: &ColouredTournament) -> Vec<BitSet> {
    let n = t.n();
    let mut absorbs = vec![BitSet::new(n); n];
    for c in 0..t.k() as u32 {
        for v in 0..n {
            for s in colour_closure_from(t, c, v).iter() {
                absorbs[s].insert(v);
            }
        }
    }
    absorbs
}

fn absorbed_union(t: &ColouredTournament, absorbs: &[BitSet], set: &[usize]) -> BitSet {
    let mut covered = BitSet::new(t.n());
    for &s in set {
        covered.union_with(&absorbs[s]);
    }
    covered
}

/// Exact minimum absorbing set: increasing size, lexicographically least
/// witness.
pub fn min_absorbing(t: &ColouredTournament) -> (usize, Vec<usize>) {
    let n = t.n();
    let absorbs = absorbs_sets(t);
    for size in 0..=n {
        let mut cur = Vec::new();
        let mut cover = BitSet::new(n);
        if let Some(set) = extend_cover(n, size, 0, &mut cur, &mut cover, &absorbs) {
            return (size, set);
        }
    }
    unreachable!("the full vertex set absorbs");
}

fn extend_cover(
    n: usize,
    size: usize,
    start: usize,
    cur: &mut Vec<usize>,
    cover: &mut BitSet,
    masks: &[BitSet],
) -> Option<Vec<usize>> {
    if cur.len() == size {
        return if cover.len() == n { Some(cur.clone()) } else { None };
    }
    for v in start..n {
        let saved = cover.clone();
        cover.union_with(&masks[v]);
        cur.push(v);
        if let Some(found) = extend_cover(n, size, v + 1, cur, cover, masks) {
            return Some(found);
        }
        cur.pop();
        *cover = saved;
    }
    None
}

/// Vertices within two (uncoloured) forward steps of `x`, including `x`.
fn two_step_out(d: &Digraph, x: usize) -> BitSet {
    let mut cover = BitSet::new(d.n());
    cover.insert(x);
    cover.union_with(d.out_set(x));
    for w in d.out_set(x).iter() {
        cover.union_with(d.out_set(w));
    }
    cover
}

/// Vertices within two (uncoloured) backward steps of `y`, including `y`.
fn two_step_in(d: &Digraph, y: usize) -> BitSet {
    let mut cover = BitSet::new(d.n());
    cover.insert(y);
    cover.union_with(d.in_set(y));
    for w in d.in_set(y).iter() {
        cover.union_with(d.in_set(w));
    }
    cover
}

/// Smallest independent set that reaches every other vertex by a directed
/// path of length at most 2; lexicographically least witness. Existence is
/// guaranteed for finite digraphs, so this always returns.
pub fn quasi_kernel(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let covers: Vec<BitSet> = (0..n).map(|x| two_step_out(d, x)).collect();
    for size in 0..=n {
        let mut sets = IndependentSubsets::new(d, size);
        while let Some(set) = sets.next_set() {
            let mut cover = BitSet::new(n);
            for &x in &set {
                cover.union_with(&covers[x]);
            }
            if cover.len() == n {
                return set;
            }
        }
    }
    unreachable!("every finite digraph has a quasi-kernel");
}

/// Lexicographic stream of independent sets of one fixed size.
struct IndependentSubsets<'a> {
    d: &'a Digraph,
    size: usize,
    stack: Vec<Vec<usize>>,
}

impl<'a> IndependentSubsets<'a> {
    fn new(d: &'a Digraph, size: usize) -> Self {
        IndependentSubsets { d, size, stack: vec![vec![]] }
    }

    fn next_set(&mut self) -> Option<Vec<usize>> {
        while let Some(cur) = self.stack.pop() {
            if cur.len() == self.size {
                return Some(cur);
            }
            let start = cur.last().map_or(0, |&l| l + 1);
            // Push extensions in reverse so the smallest pops first.
            for v in (start..self.d.n()).rev() {
                let ok = cur.iter().all(|&u| !self.d.has_arc(u, v) && !self.d.has_arc(v, u));
                if ok {
                    let mut next = cur.clone();
                    next.push(v);
                    self.stack.push(next);
                }
            }
        }
        None
    }
}

/// Minimum-total-size pair of disjoint independent sets `(K, S)` covering
/// every vertex by membership, a length-≤2 path from `K`, or a length-≤2
/// path to `S`.
///
/// Search order: total size ascending; within a total, all-king splits
/// first (|S| ascending), then king sets in set-lexicographic order, then
/// serf sets in set-lexicographic order.
pub fn quasi_partition_duo(d: &Digraph) -> (Vec<usize>, Vec<usize>) {
    let n = d.n();
    let out2: Vec<BitSet> = (0..n).map(|x| two_step_out(d, x)).collect();
    let in2: Vec<BitSet> = (0..n).map(|y| two_step_in(d, y)).collect();
    for total in 0..=n {
        for s_size in 0..=total {
            let k_size = total - s_size;
            let mut kings_stream = IndependentSubsets::new(d, k_size);
            while let Some(kings) = kings_stream.next_set() {
                let mut cover = BitSet::new(n);
                for &x in &kings {
                    cover.union_with(&out2[x]);
                }
                if let Some(serfs) = complete_serfs(d, &kings, s_size, &cover, &in2) {
                    return (kings, serfs);
                }
            }
        }
    }
    unreachable!("K = V, S = ∅ covers when V is independent; otherwise smaller splits exist");
}

fn complete_serfs(
    d: &Digraph,
    kings: &[usize],
    s_size: usize,
    cover: &BitSet,
    in2: &[BitSet],
) -> Option<Vec<usize>> {
    let n = d.n();
    fn rec(
        d: &Digraph,
        kings: &[usize],
        candidates: &[usize],
        start: usize,
        left: usize,
        serfs: &mut Vec<usize>,
        cover: &BitSet,
        in2: &[BitSet],
    ) -> Option<Vec<usize>> {
        if left == 0 {
            return if cover.len() == d.n() { Some(serfs.clone()) } else { None };
        }
        for ix in start..candidates.len() {
            let y = candidates[ix];
            if !serfs.iter().all(|&u| !d.has_arc(u, y) && !d.has_arc(y, u)) {
                continue;
            }
            let mut next_cover = cover.clone();
            next_cover.union_with(&in2[y]);
            serfs.push(y);
            if let Some(found) = rec(d, kings, candidates, ix + 1, left - 1, serfs, &next_cover, in2) {
                return Some(found);
            }
            serfs.pop();
        }
        None
    }
    let candidates: Vec<usize> = (0..n).filter(|v| !kings.contains(v)).collect();
    rec(d, kings, &candidates, 0, s_size, &mut Vec::new(), cover, in2)
}

/// A directed cycle of length 3 or 4 that is not quasi-monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleViolation {
    pub cycle: Vec<usize>,
    pub colours: Vec<u32>,
}

/// Do all directed cycles of length at most 4 carry at most one off-colour
/// arc? Tournaments have no 2-cycles, so lengths 3 and 4 are checked.
pub fn gs_condition(t: &ColouredTournament) -> bool {
    gs_violation(t).is_none()
}

/// First non-quasi-monochromatic short dicycle in scan order: triangles by
/// sorted triple, then 4-cycles by sorted quadruple and rotation.
pub fn gs_violation(t: &ColouredTournament) -> Option<CycleViolation> {
    let n = t.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let cycle = if t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) {
                    [a, b, c]
                } else if t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a) {
                    [a, c, b]
                } else {
                    continue;
                };
                if let Some(v) = check_dicycle(t, &cycle) {
                    return Some(v);
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    // All directed 4-cycles through the quadruple, rotated to
                    // start at the smallest vertex.
                    for rest in permutations3(&[b, c, d]) {
                        let cycle = [a, rest[0], rest[1], rest[2]];
                        let closed = cycle
                            .iter()
                            .zip(cycle.iter().cycle().skip(1))
                            .all(|(&u, &v)| t.has_arc(u, v));
                        if closed {
                            if let Some(v) = check_dicycle(t, &cycle) {
                                return Some(v);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn permutations3(items: &[usize; 3]) -> Vec<[usize; 3]> {
    let [x, y, z] = *items;
    vec![
        [x, y, z],
        [x, z, y],
        [y, x, z],
        [y, z, x],
        [z, x, y],
        [z, y, x],
    ]
}

fn check_dicycle(t: &ColouredTournament, cycle: &[usize]) -> Option<CycleViolation> {
    let colours: Vec<u32> = cycle
        .iter()
        .zip(cycle.iter().cycle().skip(1))
        .map(|(&u, &v)| t.colour(u, v).expect("cycle arc").0)
        .collect();
    let majority = colours
        .iter()
        .map(|&c| colours.iter().filter(|&&d| d == c).count())
        .max()
        .unwrap();
    if majority + 1 >= colours.len() {
        None
    } else {
        Some(CycleViolation { cycle: cycle.to_vec(), colours })
    }
}

/// Is there no vertex triple whose three connecting arcs (orientation
/// ignored) carry three distinct colours? In a tournament every triple is a
/// cycle of the underlying complete graph.
pub fn minggang_condition(t: &ColouredTournament) -> bool {
    minggang_violation(t).is_none()
}

/// First polychromatic triple in lexicographic order.
pub fn minggang_violation(t: &ColouredTournament) -> Option<[usize; 3]> {
    let n = t.n();
    let colour_of = |u: usize, v: usize| t.colour(u, v).or_else(|| t.colour(v, u)).unwrap().0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (colour_of(a, b), colour_of(b, c), colour_of(a, c));
                if x != y && y != z && x != z {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ColouredTournament, Digraph};
    use crate::reach::mono_reach_any;

    fn mono_c3() -> ColouredTournament {
        ColouredTournament::new(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap()
    }

    fn rainbow_c3() -> ColouredTournament {
        ColouredTournament::new(3, 3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)]).unwrap()
    }

    /// Oracle: subset enumeration with per-query reachability.
    pub(crate) fn oracle_min_absorbing(t: &ColouredTournament) -> (usize, Vec<usize>) {
        let n = t.n();
        let verts: Vec<usize> = (0..n).collect();
        for size in 0..=n {
            let mut found = None;
            subsets_rec(&verts, size, &mut vec![], &mut |set| {
                if found.is_none() {
                    let ok = (0..n).all(|v| {
                        set.contains(&v) || set.iter().any(|&s| mono_reach_any(t, v, s).unwrap())
                    });
                    if ok {
                        found = Some(set.to_vec());
                    }
                }
            });
            if let Some(set) = found {
                return (size, set);
            }
        }
        unreachable!()
    }

    fn subsets_rec(verts: &[usize], size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let start = cur.last().map_or(0, |&l| verts.iter().position(|&v| v == l).unwrap() + 1);
        for i in start..verts.len() {
            cur.push(verts[i]);
            subsets_rec(verts, size, cur, f);
            cur.pop();
        }
    }

    #[test]
    fn absorbing_examples() {
        assert!(is_absorbing(&rainbow_c3(), &[0, 1, 2]).unwrap());
        assert!(!is_absorbing(&rainbow_c3(), &[0]).unwrap());
        assert!(is_absorbing(&mono_c3(), &[0]).unwrap());
        assert!(is_absorbing(&rainbow_c3(), &[3]).is_err());
    }

    #[test]
    fn min_absorbing_examples() {
        assert_eq!(min_absorbing(&mono_c3()), (1, vec![0]));
        assert_eq!(min_absorbing(&rainbow_c3()), (2, vec![0, 1]));
        assert_eq!(min_absorbing(&rainbow_c3()), oracle_min_absorbing(&rainbow_c3()));
    }

    #[test]
    fn quasi_kernel_examples() {
        let arcless = Digraph::new(3, []).unwrap();
        assert_eq!(quasi_kernel(&arcless), vec![0, 1, 2]);
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(quasi_kernel(&c3), vec![0]);
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(quasi_kernel(&path), vec![0]);
    }

    #[test]
    fn quasi_kernel_is_independent_and_covering() {
        let d = Digraph::new(5, [(0, 1), (1, 0), (1, 2), (3, 2), (4, 3), (2, 4)]).unwrap();
        let k = quasi_kernel(&d);
        assert!(d.is_independent(&k));
        for v in 0..5 {
            let covered = k.contains(&v) || k.iter().any(|&x| two_step_out(&d, x).contains(v));
            assert!(covered, "vertex {v} uncovered by {k:?}");
        }
    }

    #[test]
    fn partition_duo_examples() {
        let arcless = Digraph::new(3, []).unwrap();
        assert_eq!(quasi_partition_duo(&arcless), (vec![0, 1, 2], vec![]));
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(quasi_partition_duo(&c3), (vec![0], vec![]));
        let two_arcs = Digraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(quasi_partition_duo(&two_arcs), (vec![0, 2], vec![]));
    }

    #[test]
    fn partition_duo_uses_serfs_when_needed() {
        // A sink pair unreachable in two steps from any single independent
        // king set of size 1 forces a serf.
        let d = Digraph::new(4, [(0, 1), (2, 1), (3, 2)]).unwrap();
        let (k, s) = quasi_partition_duo(&d);
        assert!(d.is_independent(&k) && d.is_independent(&s));
        assert!(k.iter().all(|v| !s.contains(v)));
        for v in 0..4 {
            let covered = k.contains(&v)
                || s.contains(&v)
                || k.iter().any(|&x| two_step_out(&d, x).contains(v))
                || s.iter().any(|&y| two_step_in(&d, y).contains(v));
            assert!(covered);
        }
    }

    #[test]
    fn gs_examples() {
        assert!(gs_condition(&mono_c3()));
        assert!(!gs_condition(&rainbow_c3()));
        let transitive =
            ColouredTournament::new(3, 3, [(0, 1, 0), (0, 2, 1), (1, 2, 2)]).unwrap();
        assert!(gs_condition(&transitive)); // no directed cycles at all
    }

    #[test]
    fn gs_catches_4cycle_violation() {
        // Triangles are quasi-monochromatic but the 4-cycle 0->1->2->3->0
        // alternates colours.
        let t = ColouredTournament::new(
            4,
            2,
            [(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1), (0, 2, 0), (1, 3, 0)],
        )
        .unwrap();
        let v = gs_violation(&t).unwrap();
        assert_eq!(v.cycle, vec![0, 1, 2, 3]);
        assert!(minggang_condition(&t)); // only two colours in play
    }

    #[test]
    fn minggang_examples() {
        let two_colours =
            ColouredTournament::new(3, 2, [(0, 1, 0), (1, 2, 1), (2, 0, 0)]).unwrap();
        assert!(minggang_condition(&two_colours));
        assert!(!minggang_condition(&rainbow_c3()));
        let rainbow_transitive =
            ColouredTournament::new(3, 3, [(0, 1, 0), (0, 2, 1), (1, 2, 2)]).unwrap();
        assert!(!minggang_condition(&rainbow_transitive)); // orientation ignored
        assert_eq!(minggang_violation(&rainbow_c3()), Some([0, 1, 2]));
    }
}
