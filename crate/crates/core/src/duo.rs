//! King-serf duos: verification, exact minimum search, the embed-or-duo
//! construction over forbidding arcs, and exact/symbolic bound arithmetic.
//!
//! A duo is a pair of disjoint vertex sets `(K, S)` such that every vertex
//! either belongs to `K ∪ S`, is reached from some king by a monochromatic
//! path of length at most two, or reaches some serf the same way.

use num_bigint::BigUint;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::model::ColouredTournament;
use crate::reach::{forbidding_edges, reach2_in_set, reach2_out_set};

/// Disjoint king and serf vertex sets, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duo {
    pub kings: Vec<usize>,
    pub serfs: Vec<usize>,
}

impl Duo {
    pub fn new(mut kings: Vec<usize>, mut serfs: Vec<usize>) -> Self {
        kings.sort_unstable();
        kings.dedup();
        serfs.sort_unstable();
        serfs.dedup();
        Duo { kings, serfs }
    }

    pub fn size(&self) -> usize {
        self.kings.len() + self.serfs.len()
    }
}

/// An uncoloured complete orientation on `0..m`. The vertex index order is
/// the recursion order of the embed-or-duo construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternTournament {
    m: usize,
    /// `forward[pair_index(i, j)]` for i < j: true iff the arc runs i -> j.
    forward: Vec<bool>,
}

impl PatternTournament {
    pub fn new(m: usize, forward: Vec<bool>) -> Result<Self> {
        let expected = m * m.saturating_sub(1) / 2;
        if forward.len() != expected {
            return Err(Error::MalformedHeader(format!(
                "pattern on {m} vertices needs {expected} orientation bits, got {}",
                forward.len()
            )));
        }
        Ok(PatternTournament { m, forward })
    }

    /// Builds a pattern from a complete arc list over `0..m`.
    pub fn from_arcs(m: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; m * m.saturating_sub(1) / 2];
        let mut forward = vec![false; seen.len()];
        for (u, v) in arcs {
            if u >= m {
                return Err(Error::VertexOutOfRange { v: u, n: m });
            }
            if v >= m {
                return Err(Error::VertexOutOfRange { v, n: m });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let ix = pair_index(m, u.min(v), u.max(v));
            if seen[ix] {
                return Err(Error::DuplicateArc(u, v));
            }
            seen[ix] = true;
            forward[ix] = u < v;
        }
        if let Some(ix) = seen.iter().position(|&s| !s) {
            let (u, v) = pair_from_index(m, ix);
            return Err(Error::MissingArc(u, v));
        }
        PatternTournament::new(m, forward)
    }

    /// The orientation of a coloured tournament, colours dropped.
    pub fn from_orientation(t: &ColouredTournament) -> Self {
        let m = t.n();
        let arcs = t.arcs().into_iter().map(|(u, v, _)| (u, v));
        PatternTournament::from_arcs(m, arcs).expect("tournament orientation is complete")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let fwd = self.forward[pair_index(self.m, i.min(j), i.max(j))];
        fwd == (i < j)
    }

    /// Arcs in lexicographic `(source, target)` order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.forward.len());
        for i in 0..self.m {
            for j in 0..self.m {
                if i != j && self.has_arc(i, j) {
                    arcs.push((i, j));
                }
            }
        }
        arcs
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

fn pair_from_index(m: usize, ix: usize) -> (usize, usize) {
    let mut rest = ix;
    for i in 0..m {
        let row = m - i - 1;
        if rest < row {
            return (i, i + 1 + rest);
        }
        rest -= row;
    }
    unreachable!("index within range")
}

/// An order-respecting map of a pattern into a host tournament whose image
/// arcs are all forbidding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: PatternTournament,
    /// `images[i]` is the host vertex assigned to pattern vertex `i`.
    pub images: Vec<usize>,
}

pub enum ConstructOutcome {
    Duo(Duo),
    Embedding(Embedding),
}

/// Checks the duo coverage contract: every vertex is in `K ∪ S`, reached
/// from a king within two monochromatic steps, or reaches a serf within two.
pub fn verify_duo(t: &ColouredTournament, duo: &Duo) -> Result<bool> {
    for &x in duo.kings.iter().chain(&duo.serfs) {
        t.check_vertex(x)?;
    }
    if let Some(&x) = duo.kings.iter().find(|x| duo.serfs.binary_search(x).is_ok()) {
        return Err(Error::OverlappingSets(x));
    }
    let mut covered = BitSet::new(t.n());
    for &x in &duo.kings {
        covered.union_with(&reach2_out_set(t, x));
    }
    for &y in &duo.serfs {
        covered.union_with(&reach2_in_set(t, y));
    }
    Ok(covered.len() == t.n())
}

/// Exact minimum king-serf duo.
///
/// Duos are searched in increasing total size. Within one size the nonempty
/// king sets are tried in set-lexicographic order (then the all-serf duo
/// with `K = ∅` last), and for each king set the serf sets in
/// set-lexicographic order; the first valid duo is returned, so reruns are
/// byte-identical. With `size_cap` set, exceeding the cap reports
/// `NotFoundWithinCap`.
pub fn min_duo(t: &ColouredTournament, size_cap: Option<usize>) -> Result<(usize, Duo)> {
    let n = t.n();
    let out2: Vec<BitSet> = (0..n).map(|x| reach2_out_set(t, x)).collect();
    let in2: Vec<BitSet> = (0..n).map(|y| reach2_in_set(t, y)).collect();
    let limit = size_cap.unwrap_or(n).min(n);
    for total in 0..=limit {
        if let Some(duo) = first_duo_of_size(n, total, &out2, &in2) {
            return Ok((total, duo));
        }
    }
    // K = V is always valid, so without a cap the loop above returns.
    Err(Error::NotFoundWithinCap { cap: limit })
}

fn first_duo_of_size(n: usize, total: usize, out2: &[BitSet], in2: &[BitSet]) -> Option<Duo> {
    if total == 0 {
        return if n == 0 { Some(Duo::new(vec![], vec![])) } else { None };
    }
    let mut kings = Vec::new();
    let mut cover = BitSet::new(n);
    if let Some(duo) = extend_kings(n, total, 0, &mut kings, &cover, out2, in2) {
        return Some(duo);
    }
    // K = ∅ comes last: all-serf duos of the full size.
    let candidates: Vec<usize> = (0..n).collect();
    let mut serfs = Vec::new();
    extend_serfs(n, total, &candidates, 0, &mut serfs, &mut cover, in2)
        .map(|serfs| Duo::new(vec![], serfs))
}

fn extend_kings(
    n: usize,
    total: usize,
    start: usize,
    kings: &mut Vec<usize>,
    cover: &BitSet,
    out2: &[BitSet],
    in2: &[BitSet],
) -> Option<Duo> {
    for x in start..n {
        let mut next_cover = cover.clone();
        next_cover.union_with(&out2[x]);
        kings.push(x);
        let left = total - kings.len();
        let serf_candidates: Vec<usize> = (0..n).filter(|v| !kings.contains(v)).collect();
        let mut serfs = Vec::new();
        let found = extend_serfs(n, left, &serf_candidates, 0, &mut serfs, &mut next_cover.clone(), in2);
        if let Some(serfs) = found {
            return Some(Duo::new(kings.clone(), serfs));
        }
        if kings.len() < total {
            if let Some(duo) = extend_kings(n, total, x + 1, kings, &next_cover, out2, in2) {
                return Some(duo);
            }
        }
        kings.pop();
    }
    None
}

fn extend_serfs(
    n: usize,
    left: usize,
    candidates: &[usize],
    start: usize,
    serfs: &mut Vec<usize>,
    cover: &mut BitSet,
    in2: &[BitSet],
) -> Option<Vec<usize>> {
    if left == 0 {
        return if cover.len() == n { Some(serfs.clone()) } else { None };
    }
    for ix in start..candidates.len() {
        let y = candidates[ix];
        let saved = cover.clone();
        cover.union_with(&in2[y]);
        serfs.push(y);
        if let Some(found) = extend_serfs(n, left - 1, candidates, ix + 1, serfs, cover, in2) {
            return Some(found);
        }
        serfs.pop();
        *cover = saved;
    }
    None
}

/// Runs the embed-or-duo recursion: grow an embedding of `pattern` into the
/// forbidding arcs of `t` one vertex at a time, in pattern index order. At
/// each step the already-placed images split into kings (pattern
/// out-neighbours of the new vertex) and serfs (the rest); the smallest host
/// vertex with a forbidding arc to every king and from every serf extends
/// the embedding. If none exists, that king/serf split is returned — it is
/// always a valid duo of size at most `m - 1`. If the pattern is exhausted,
/// the total embedding is returned.
pub fn duo_construct(t: &ColouredTournament, pattern: &PatternTournament) -> ConstructOutcome {
    let forbidding = forbidding_edges(t);
    let mut images: Vec<usize> = Vec::with_capacity(pattern.m());
    for step in 0..pattern.m() {
        let kings: Vec<usize> = (0..step)
            .filter(|&g| pattern.has_arc(step, g))
            .map(|g| images[g])
            .collect();
        let serfs: Vec<usize> = (0..step)
            .filter(|&g| !pattern.has_arc(step, g))
            .map(|g| images[g])
            .collect();
        let witness = (0..t.n()).find(|&v| {
            kings.iter().all(|&x| forbidding.contains(v, x))
                && serfs.iter().all(|&y| forbidding.contains(y, v))
        });
        match witness {
            Some(v) => images.push(v),
            None => return ConstructOutcome::Duo(Duo::new(kings, serfs)),
        }
    }
    ConstructOutcome::Embedding(Embedding { pattern: pattern.clone(), images })
}

/// Exact big integers up to this many decimal digits; symbolic beyond.
pub const EXACT_DIGIT_CAP: usize = 1_000_000;

/// Largest exponent e such that 2^e stays within [`EXACT_DIGIT_CAP`] digits.
const MAX_POW2_EXPONENT: u64 = 3_321_928;

/// An exactly evaluated or symbolic bound value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundExpr {
    Exact(BigUint),
    /// The `height`-fold iterated base-2 exponential of `base`.
    Tower { base: u64, height: u32 },
    /// `base ^ exponent`, kept symbolic past the digit cap.
    Power { base: u64, exponent: u64 },
}

impl BoundExpr {
    /// Decimal digit count for exactly evaluated values.
    pub fn digits(&self) -> Option<usize> {
        match self {
            BoundExpr::Exact(v) => Some(v.to_str_radix(10).len()),
            _ => None,
        }
    }
}

impl std::fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundExpr::Exact(v) => write!(f, "{v}"),
            BoundExpr::Tower { base, height } => write!(f, "exp_{height}({base})"),
            BoundExpr::Power { base, exponent } => write!(f, "{base}^{exponent}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    /// `k^(62500 k)`, the guarantee for finite colour counts.
    Finite,
    /// `exp_10(k)`, the guarantee that also covers infinite cardinals.
    General,
}

/// The `height`-fold iterated base-2 exponential of `base`, evaluated
/// exactly while it fits the digit cap.
pub fn exp_tower(base: u64, height: u32) -> BoundExpr {
    let mut value = BigUint::from(base);
    for _ in 0..height {
        match u64::try_from(&value) {
            Ok(e) if e <= MAX_POW2_EXPONENT => value = BigUint::from(1u8) << (e as usize),
            _ => return BoundExpr::Tower { base, height },
        }
    }
    BoundExpr::Exact(value)
}

/// Worst-case duo size bound for `k` colours, exact when it fits the digit
/// cap and symbolic otherwise.
pub fn duo_size_bound(k: u64, mode: BoundMode) -> BoundExpr {
    assert!(k >= 1, "colour count must be positive");
    match mode {
        BoundMode::General => exp_tower(k, 10),
        BoundMode::Finite => {
            let exponent = 62_500 * k;
            // Digit estimate; the nearest values to the cap are k = 13
            // (~905k digits) and k = 14 (~1,003k digits), far from the
            // f64 error margin.
            let digits = exponent as f64 * (k as f64).log10();
            if digits <= EXACT_DIGIT_CAP as f64 {
                BoundExpr::Exact(BigUint::from(k).pow(exponent as u32))
            } else {
                BoundExpr::Power { base: k, exponent }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ColouredTournament;
    use crate::reach::{is_forbidding, mono_reach_within};

    fn mono_c3() -> ColouredTournament {
        ColouredTournament::new(3, 1, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap()
    }

    fn rainbow_c3() -> ColouredTournament {
        ColouredTournament::new(3, 3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)]).unwrap()
    }

    fn rainbow_transitive() -> ColouredTournament {
        ColouredTournament::new(3, 3, [(0, 1, 0), (0, 2, 1), (1, 2, 2)]).unwrap()
    }

    /// Oracle coverage check straight from the reachability primitive.
    pub(crate) fn oracle_covers(t: &ColouredTournament, kings: &[usize], serfs: &[usize]) -> bool {
        (0..t.n()).all(|v| {
            kings.contains(&v)
                || serfs.contains(&v)
                || kings.iter().any(|&x| mono_reach_within(t, x, v, 2).unwrap())
                || serfs.iter().any(|&y| mono_reach_within(t, v, y, 2).unwrap())
        })
    }

    /// Oracle: enumerate every disjoint (K, S) pair in the documented order
    /// and return the first valid duo of minimum size.
    pub(crate) fn oracle_min_duo(t: &ColouredTournament) -> (usize, Duo) {
        let n = t.n();
        let verts: Vec<usize> = (0..n).collect();
        for total in 0..=n {
            let mut kings_order: Vec<Vec<usize>> = Vec::new();
            subsets_lex(&verts, total, &mut kings_order);
            kings_order.retain(|k| !k.is_empty());
            kings_order.push(vec![]);
            for kings in kings_order {
                let rest: Vec<usize> = verts.iter().copied().filter(|v| !kings.contains(v)).collect();
                let mut serf_sets = Vec::new();
                subsets_of_size(&rest, total - kings.len(), &mut vec![], &mut serf_sets);
                for serfs in serf_sets {
                    if oracle_covers(t, &kings, &serfs) {
                        return (total, Duo::new(kings, serfs));
                    }
                }
            }
        }
        unreachable!("K = V always covers");
    }

    fn subsets_lex(verts: &[usize], max: usize, out: &mut Vec<Vec<usize>>) {
        fn rec(verts: &[usize], start: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            if cur.len() == max {
                return;
            }
            for i in start..verts.len() {
                cur.push(verts[i]);
                rec(verts, i + 1, max, cur, out);
                cur.pop();
            }
        }
        rec(verts, 0, max, &mut vec![], out);
    }

    fn subsets_of_size(verts: &[usize], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&l| verts.iter().position(|&v| v == l).unwrap() + 1);
        for i in start..verts.len() {
            cur.push(verts[i]);
            subsets_of_size(verts, size, cur, out);
            cur.pop();
        }
    }

    #[test]
    fn verify_examples() {
        assert!(verify_duo(&mono_c3(), &Duo::new(vec![0], vec![])).unwrap());
        assert!(!verify_duo(&rainbow_c3(), &Duo::new(vec![0], vec![])).unwrap());
        let empty = ColouredTournament::new(0, 0, []).unwrap();
        assert!(verify_duo(&empty, &Duo::new(vec![], vec![])).unwrap());
        assert_eq!(
            verify_duo(&mono_c3(), &Duo::new(vec![0], vec![0])),
            Err(Error::OverlappingSets(0))
        );
    }

    #[test]
    fn min_duo_examples() {
        let empty = ColouredTournament::new(0, 0, []).unwrap();
        assert_eq!(min_duo(&empty, None).unwrap(), (0, Duo::new(vec![], vec![])));
        assert_eq!(min_duo(&mono_c3(), None).unwrap(), (1, Duo::new(vec![0], vec![])));
        assert_eq!(min_duo(&rainbow_c3(), None).unwrap(), (2, Duo::new(vec![0], vec![2])));
    }

    #[test]
    fn min_duo_cap() {
        assert_eq!(
            min_duo(&rainbow_c3(), Some(1)),
            Err(Error::NotFoundWithinCap { cap: 1 })
        );
        assert!(min_duo(&rainbow_c3(), Some(2)).is_ok());
    }

    #[test]
    fn min_duo_matches_oracle_exhaustively() {
        // All 3-vertex orientations with all 2-colourings.
        for code in 0..8u32 {
            for colouring in 0..8u32 {
                let arcs = [(0usize, 1usize), (0, 2), (1, 2)];
                let list: Vec<(usize, usize, u32)> = arcs
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| {
                        let (u, v) = if code >> i & 1 == 0 { (u, v) } else { (v, u) };
                        (u, v, colouring >> i & 1)
                    })
                    .collect();
                let t = ColouredTournament::new(3, 2, list).unwrap();
                assert_eq!(min_duo(&t, None).unwrap(), oracle_min_duo(&t));
            }
        }
    }

    #[test]
    fn construct_one_vertex_pattern() {
        let single = PatternTournament::new(1, vec![]).unwrap();
        match duo_construct(&mono_c3(), &single) {
            ConstructOutcome::Embedding(e) => assert_eq!(e.images, vec![0]),
            ConstructOutcome::Duo(_) => panic!("one-vertex pattern always embeds"),
        }
    }

    #[test]
    fn construct_duo_branches() {
        // Two-vertex pattern whose arc runs second -> first.
        let p = PatternTournament::from_arcs(2, [(1, 0)]).unwrap();
        match duo_construct(&mono_c3(), &p) {
            ConstructOutcome::Duo(d) => {
                assert_eq!(d, Duo::new(vec![0], vec![]));
                assert!(verify_duo(&mono_c3(), &d).unwrap());
            }
            ConstructOutcome::Embedding(_) => panic!("no forbidding arcs in a monochromatic triangle"),
        }
        match duo_construct(&rainbow_transitive(), &p) {
            ConstructOutcome::Duo(d) => {
                assert_eq!(d, Duo::new(vec![0], vec![]));
                assert!(verify_duo(&rainbow_transitive(), &d).unwrap());
            }
            ConstructOutcome::Embedding(_) => panic!("vertex 0 has no incoming arc"),
        }
    }

    #[test]
    fn construct_embedding_arcs_are_forbidding() {
        // The rainbow transitive triangle is all forbidding arcs, so the
        // matching 2-vertex pattern embeds.
        let p = PatternTournament::from_arcs(2, [(0, 1)]).unwrap();
        let t = rainbow_transitive();
        match duo_construct(&t, &p) {
            ConstructOutcome::Embedding(e) => {
                assert_eq!(e.images, vec![0, 1]);
                for (i, j) in e.pattern.arcs() {
                    assert!(is_forbidding(&t, e.images[i], e.images[j]).unwrap());
                }
            }
            ConstructOutcome::Duo(_) => panic!("expected an embedding"),
        }
    }

    #[test]
    fn construct_on_empty_host() {
        let empty = ColouredTournament::new(0, 0, []).unwrap();
        let p = PatternTournament::new(1, vec![]).unwrap();
        match duo_construct(&empty, &p) {
            ConstructOutcome::Duo(d) => {
                assert_eq!(d.size(), 0);
                assert!(verify_duo(&empty, &d).unwrap());
            }
            ConstructOutcome::Embedding(_) => panic!("nowhere to embed"),
        }
    }

    #[test]
    fn pattern_round_trips() {
        let p = PatternTournament::from_arcs(3, [(0, 1), (2, 0), (1, 2)]).unwrap();
        assert!(p.has_arc(0, 1) && p.has_arc(2, 0) && p.has_arc(1, 2));
        assert!(!p.has_arc(1, 0));
        assert_eq!(p.arcs(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(PatternTournament::from_arcs(2, []).is_err());
        assert!(PatternTournament::from_arcs(2, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn bound_finite_values() {
        assert_eq!(duo_size_bound(1, BoundMode::Finite), BoundExpr::Exact(BigUint::from(1u8)));
        let two = duo_size_bound(2, BoundMode::Finite);
        assert_eq!(two, BoundExpr::Exact(BigUint::from(2u8).pow(125_000)));
        // Digit count, independently: floor(125000 log10 2) + 1.
        let expected_digits = (125_000f64 * 2f64.log10()).floor() as usize + 1;
        assert_eq!(two.digits(), Some(expected_digits));
        assert_eq!(expected_digits, 37_629);
    }

    #[test]
    fn bound_symbolic_past_cap() {
        assert!(matches!(duo_size_bound(13, BoundMode::Finite), BoundExpr::Exact(_)));
        assert_eq!(
            duo_size_bound(14, BoundMode::Finite),
            BoundExpr::Power { base: 14, exponent: 875_000 }
        );
    }

    #[test]
    fn bound_general_tower() {
        assert_eq!(duo_size_bound(1, BoundMode::General), BoundExpr::Tower { base: 1, height: 10 });
        assert_eq!(format!("{}", duo_size_bound(2, BoundMode::General)), "exp_10(2)");
        // Exact tower prefixes by the defining recurrence.
        for (h, v) in [(1u32, 2u64), (2, 4), (3, 16), (4, 65_536)] {
            assert_eq!(exp_tower(1, h), BoundExpr::Exact(BigUint::from(v)));
        }
        let e5 = exp_tower(1, 5);
        assert_eq!(e5, BoundExpr::Exact(BigUint::from(1u8) << 65_536));
        assert_eq!(e5.digits(), Some(19_729));
        assert_eq!(exp_tower(1, 6), BoundExpr::Tower { base: 1, height: 6 });
    }
}
