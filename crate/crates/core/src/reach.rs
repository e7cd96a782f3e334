//! Monochromatic reachability, forbidding arcs, and quasi-monochromatic
//! triangle detection.
//!
//! A monochromatic path is a directed path (no repeated vertices) whose arcs
//! all carry one colour. Length counts arcs, and the empty path of length 0
//! from a vertex to itself counts as monochromatic, which makes every
//! reachability predicate here reflexive. Within a single colour class a
//! shortest walk is already a simple path, so bounded reachability reduces
//! to per-colour BFS and unbounded reachability to per-colour closure.

use crate::bits::BitSet;
use crate::error::Result;
use crate::model::ColouredTournament;

/// A set of arcs of a fixed host tournament, with O(1) membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSet {
    rows: Vec<BitSet>,
    members: Vec<(usize, usize)>,
}

impl ArcSet {
    fn from_rows(rows: Vec<BitSet>) -> Self {
        let mut members = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            for v in row.iter() {
                members.push((u, v));
            }
        }
        ArcSet { rows, members }
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u < self.rows.len() && self.rows[u].contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in lexicographic `(u, v)` order.
    pub fn members(&self) -> &[(usize, usize)] {
        &self.members
    }

    /// Arcs `u -> *` in the set, as a bitset over targets.
    pub fn out_row(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }
}

/// A directed triangle in which at least two arcs share a colour.
///
/// `cycle = (a, b, c)` means the arcs `a -> b`, `b -> c`, `c -> a` exist and
/// `a` is the smallest vertex of the triangle. `distinguished` is the one
/// arc whose colour differs from the other two, absent when all three arcs
/// agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiMonoTriangle {
    pub cycle: (usize, usize, usize),
    pub distinguished: Option<(usize, usize)>,
}

/// Is there a monochromatic directed path from `u` to `v` of length at most
/// `l`?
pub fn mono_reach_within(t: &ColouredTournament, u: usize, v: usize, l: usize) -> Result<bool> {
    t.check_vertex(u)?;
    t.check_vertex(v)?;
    if u == v {
        return Ok(true);
    }
    if l == 0 {
        return Ok(false);
    }
    if t.has_arc(u, v) {
        return Ok(true);
    }
    if l == 1 {
        return Ok(false);
    }
    if (0..t.k() as u32).any(|c| t.out_set(c, u).intersects(t.in_set(c, v))) {
        return Ok(true);
    }
    if l == 2 {
        return Ok(false);
    }
    // General bound: per-colour BFS. A shortest walk inside one colour class
    // is a simple path, so frontier expansion up to depth l is exact.
    for c in 0..t.k() as u32 {
        let mut seen = BitSet::new(t.n());
        seen.insert(u);
        let mut frontier = seen.clone();
        for _ in 0..l {
            let mut next = BitSet::new(t.n());
            for w in frontier.iter() {
                next.union_with(t.out_set(c, w));
            }
            next.difference_with(&seen);
            if next.contains(v) {
                return Ok(true);
            }
            if next.is_empty() {
                break;
            }
            seen.union_with(&next);
            frontier = next;
        }
    }
    Ok(false)
}

/// Is there a monochromatic directed path from `u` to `v` of any length?
pub fn mono_reach_any(t: &ColouredTournament, u: usize, v: usize) -> Result<bool> {
    t.check_vertex(u)?;
    t.check_vertex(v)?;
    if u == v {
        return Ok(true);
    }
    Ok((0..t.k() as u32).any(|c| colour_closure_from(t, c, u).contains(v)))
}

/// Vertices reachable from `u` inside the colour-`c` arc class (including
/// `u` itself).
pub fn colour_closure_from(t: &ColouredTournament, c: u32, u: usize) -> BitSet {
    let mut seen = BitSet::new(t.n());
    seen.insert(u);
    let mut frontier = seen.clone();
    loop {
        let mut next = BitSet::new(t.n());
        for w in frontier.iter() {
            next.union_with(t.out_set(c, w));
        }
        next.difference_with(&seen);
        if next.is_empty() {
            return seen;
        }
        seen.union_with(&next);
        frontier = next;
    }
}

/// Vertices v with a monochromatic path of length at most 2 from `x` to v.
pub fn reach2_out_set(t: &ColouredTournament, x: usize) -> BitSet {
    let mut cover = BitSet::new(t.n());
    cover.insert(x);
    for c in 0..t.k() as u32 {
        let first = t.out_set(c, x);
        cover.union_with(first);
        for w in first.iter() {
            cover.union_with(t.out_set(c, w));
        }
    }
    cover
}

/// Vertices v with a monochromatic path of length at most 2 from v to `y`.
pub fn reach2_in_set(t: &ColouredTournament, y: usize) -> BitSet {
    let mut cover = BitSet::new(t.n());
    cover.insert(y);
    for c in 0..t.k() as u32 {
        let last = t.in_set(c, y);
        cover.union_with(last);
        for w in last.iter() {
            cover.union_with(t.in_set(c, w));
        }
    }
    cover
}

/// Is the arc `u -> v` forbidding, i.e. is there no monochromatic path of
/// length at most two from `v` back to `u`? Returns false when `u -> v` is
/// not an arc.
pub fn is_forbidding(t: &ColouredTournament, u: usize, v: usize) -> Result<bool> {
    t.check_vertex(u)?;
    t.check_vertex(v)?;
    if !t.has_arc(u, v) {
        return Ok(false);
    }
    // v != u and the pair is oriented u -> v, so a return path must have
    // exactly two arcs of one colour.
    Ok(!(0..t.k() as u32).any(|c| t.out_set(c, v).intersects(t.in_set(c, u))))
}

/// All forbidding arcs of `t`.
pub fn forbidding_edges(t: &ColouredTournament) -> ArcSet {
    let n = t.n();
    let mut rows = vec![BitSet::new(n); n];
    for (u, v, _) in t.arcs() {
        if !(0..t.k() as u32).any(|c| t.out_set(c, v).intersects(t.in_set(c, u))) {
            rows[u].insert(v);
        }
    }
    ArcSet::from_rows(rows)
}

/// All quasi-monochromatic directed triangles, one per vertex triple, in
/// lexicographic order of the sorted triple. The cycle is rotated to start
/// at its smallest vertex.
pub fn quasi_mono_triangles(t: &ColouredTournament) -> Vec<QuasiMonoTriangle> {
    let n = t.n();
    let mut found = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                // The triple forms a dicycle iff it is not transitive; the
                // rotation through the smallest vertex a is unique.
                let cycle = if t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) {
                    (a, b, c)
                } else if t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a) {
                    (a, c, b)
                } else {
                    continue;
                };
                if let Some(tri) = classify_triangle(t, cycle) {
                    found.push(tri);
                }
            }
        }
    }
    found
}

fn classify_triangle(t: &ColouredTournament, (a, b, c): (usize, usize, usize)) -> Option<QuasiMonoTriangle> {
    let arcs = [(a, b), (b, c), (c, a)];
    let cols: Vec<u32> = arcs
        .iter()
        .map(|&(u, v)| t.colour(u, v).expect("dicycle arc").0)
        .collect();
    let distinguished = if cols[0] == cols[1] && cols[1] == cols[2] {
        None
    } else if cols[0] == cols[1] {
        Some(arcs[2])
    } else if cols[1] == cols[2] {
        Some(arcs[0])
    } else if cols[0] == cols[2] {
        Some(arcs[1])
    } else {
        return None; // three distinct colours
    };
    Some(QuasiMonoTriangle { cycle: (a, b, c), distinguished })
}
