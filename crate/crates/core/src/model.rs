//! Core immutable data types: edge-coloured tournaments, plain digraphs and
//! simple graphs, together with their text formats and induced substructures.
//!
//! Vertices are dense indices `0..n`, and the index order doubles as the
//! well-ordering used by every construction in this crate. All three types
//! are immutable after construction and safe to share across threads.
//!
//! Text formats (ASCII, LF-terminated, `#` starts a comment line):
//!
//! * `.cdt` — `cdt <n> <k>` then exactly `n(n-1)/2` lines `u v c`, one per
//!   vertex pair, meaning the arc `u -> v` carries colour `c`.
//! * `.dg` — `dg <n>` then `u v` arc lines (antiparallel pairs allowed).
//! * `.ug` — `ug <n>` then `u v` edge lines with `u < v`.

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// An arc colour. Valid values are `0..k` of the owning tournament.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colour(pub u32);

impl std::fmt::Display for Colour {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_ARC: u32 = u32::MAX;

/// A complete oriented graph with one colour per arc.
///
/// For every unordered pair `{u, v}` exactly one of the arcs `u -> v`,
/// `v -> u` is present. The colour palette `0..k` is carried explicitly so
/// that unused colours stay legal. Internally the structure keeps an O(1)
/// pair lookup matrix plus per-colour out- and in-neighbourhood bitsets;
/// those bitsets are the inner loop of every length-two reachability check.
#[derive(Clone)]
pub struct ColouredTournament {
    n: usize,
    k: usize,
    /// `matrix[u * n + v]` = colour of arc `u -> v`, or `NO_ARC`.
    matrix: Vec<u32>,
    /// `out[c * n + u]` = vertices w with an arc `u -> w` of colour c.
    out: Vec<BitSet>,
    /// `in_[c * n + u]` = vertices w with an arc `w -> u` of colour c.
    in_: Vec<BitSet>,
}

impl PartialEq for ColouredTournament {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.matrix == other.matrix
    }
}

impl Eq for ColouredTournament {}

impl std::fmt::Debug for ColouredTournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ColouredTournament(n={}, k={}, arcs={:?})", self.n, self.k, self.arcs())
    }
}

impl ColouredTournament {
    /// Builds a tournament from an arc list, validating completeness and
    /// colour range.
    pub fn new(n: usize, k: usize, arcs: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut matrix = vec![NO_ARC; n * n];
        for (u, v, c) in arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if matrix[u * n + v] != NO_ARC || matrix[v * n + u] != NO_ARC {
                return Err(Error::DuplicateArc(u, v));
            }
            if c as usize >= k {
                return Err(Error::ColourOutOfRange { colour: c as u64, k });
            }
            matrix[u * n + v] = c;
        }
        for u in 0..n {
            for v in u + 1..n {
                if matrix[u * n + v] == NO_ARC && matrix[v * n + u] == NO_ARC {
                    return Err(Error::MissingArc(u, v));
                }
            }
        }
        Ok(Self::from_matrix(n, k, matrix))
    }

    fn from_matrix(n: usize, k: usize, matrix: Vec<u32>) -> Self {
        let mut out = vec![BitSet::new(n); k * n];
        let mut in_ = vec![BitSet::new(n); k * n];
        for u in 0..n {
            for v in 0..n {
                let c = matrix[u * n + v];
                if c != NO_ARC {
                    out[c as usize * n + u].insert(v);
                    in_[c as usize * n + v].insert(u);
                }
            }
        }
        ColouredTournament { n, k, matrix, out, in_ }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colour of the arc `u -> v`, or `None` when the pair is oriented the
    /// other way (or `u == v`).
    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        match self.matrix[u * self.n + v] {
            NO_ARC => None,
            c => Some(Colour(c)),
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v] != NO_ARC
    }

    /// All arcs as `(source, target, colour)`, in lexicographic
    /// `(source, target)` order.
    pub fn arcs(&self) -> Vec<(usize, usize, Colour)> {
        let mut arcs = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in 0..self.n {
                if let Some(c) = self.colour(u, v) {
                    arcs.push((u, v, c));
                }
            }
        }
        arcs
    }

    /// Out-neighbourhood of `u` restricted to colour `c`.
    pub fn out_set(&self, c: u32, u: usize) -> &BitSet {
        &self.out[c as usize * self.n + u]
    }

    /// In-neighbourhood of `u` restricted to colour `c`.
    pub fn in_set(&self, c: u32, u: usize) -> &BitSet {
        &self.in_[c as usize * self.n + u]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Subtournament induced by the vertex set `w` (duplicates ignored),
    /// together with the index map: entry `i` of the map is the original
    /// vertex that became index `i`. Vertices keep their relative order.
    pub fn induced(&self, w: &[usize]) -> Result<(ColouredTournament, Vec<usize>)> {
        let mut map: Vec<usize> = w.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&v) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        let m = map.len();
        let mut matrix = vec![NO_ARC; m * m];
        for i in 0..m {
            for j in 0..m {
                matrix[i * m + j] = self.matrix[map[i] * self.n + map[j]];
            }
        }
        Ok((ColouredTournament::from_matrix(m, self.k, matrix), map))
    }

    /// Copy with vertex `x` renamed to `perm[x]`; `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> ColouredTournament {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut matrix = vec![NO_ARC; n * n];
        for u in 0..n {
            for v in 0..n {
                let c = self.matrix[u * n + v];
                if c != NO_ARC {
                    matrix[perm[u] * n + perm[v]] = c;
                }
            }
        }
        ColouredTournament::from_matrix(n, self.k, matrix)
    }
}

/// A finite directed graph; antiparallel arc pairs are allowed, self-loops
/// are not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<BitSet>,
    in_: Vec<BitSet>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut sorted: Vec<(usize, usize)> = Vec::new();
        let mut out = vec![BitSet::new(n); n];
        let mut in_ = vec![BitSet::new(n); n];
        for (u, v) in arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if out[u].contains(v) {
                return Err(Error::DuplicateArc(u, v));
            }
            out[u].insert(v);
            in_[v].insert(u);
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        Ok(Digraph { n, arcs: sorted, out, in_ })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_set(&self, u: usize) -> &BitSet {
        &self.out[u]
    }

    pub fn in_set(&self, u: usize) -> &BitSet {
        &self.in_[u]
    }

    /// True iff no arc joins two members of `set`, in either direction.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&u| set.iter().all(|&v| u == v || !self.has_arc(u, v)))
    }
}

/// An undirected simple graph: no loops, no multi-edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    /// Builds a graph from `(u, v)` pairs with `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut sorted: Vec<(usize, usize)> = Vec::new();
        let mut adj = vec![BitSet::new(n); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u > v {
                return Err(Error::EdgeOrder(u, v));
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        Ok(SimpleGraph { n, edges: sorted, adj })
    }

    /// The cycle on `0..n` with edges `{i, i+1}` and `{0, n-1}`.
    pub fn cycle(n: usize) -> SimpleGraph {
        let mut edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        SimpleGraph::new(n, edges).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(line: &'a str, tag: &str) -> Option<Vec<&'a str>> {
    let mut it = line.split_whitespace();
    if it.next()? != tag {
        return None;
    }
    Some(it.collect())
}

fn parse_usize(tok: &str) -> Option<usize> {
    tok.parse().ok()
}

/// Parses the `.cdt` coloured-tournament format.
pub fn parse_cdt(bytes: &[u8]) -> Result<ColouredTournament> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedHeader("input is not valid UTF-8 text".into()))?;
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields = parse_header(header, "cdt")
        .ok_or_else(|| Error::MalformedHeader(format!("expected `cdt <n> <k>`, got {header:?}")))?;
    let (n, k) = match fields.as_slice() {
        [n, k] => match (parse_usize(n), parse_usize(k)) {
            (Some(n), Some(k)) => (n, k),
            _ => return Err(Error::MalformedHeader(format!("bad counts in {header:?}"))),
        },
        _ => return Err(Error::MalformedHeader(format!("expected `cdt <n> <k>`, got {header:?}"))),
    };
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let arc = match toks.as_slice() {
            [u, v, c] => match (parse_usize(u), parse_usize(v), c.parse::<u64>().ok()) {
                (Some(u), Some(v), Some(c)) => (u, v, c),
                _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
            },
            _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
        };
        if arc.2 >= k as u64 {
            return Err(Error::ColourOutOfRange { colour: arc.2, k });
        }
        arcs.push((arc.0, arc.1, arc.2 as u32));
    }
    ColouredTournament::new(n, k, arcs)
}

/// Serializes to `.cdt`; arcs are emitted in lexicographic `(u, v)` order so
/// the output is byte-exact deterministic and `parse_cdt` round-trips it.
pub fn serialize_cdt(t: &ColouredTournament) -> String {
    let mut s = format!("cdt {} {}\n", t.n(), t.k());
    for (u, v, c) in t.arcs() {
        s.push_str(&format!("{u} {v} {c}\n"));
    }
    s
}

/// Parses the `.dg` digraph format.
pub fn parse_dg(bytes: &[u8]) -> Result<Digraph> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedHeader("input is not valid UTF-8 text".into()))?;
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields = parse_header(header, "dg")
        .ok_or_else(|| Error::MalformedHeader(format!("expected `dg <n>`, got {header:?}")))?;
    let n = match fields.as_slice() {
        [n] => parse_usize(n)
            .ok_or_else(|| Error::MalformedHeader(format!("bad count in {header:?}")))?,
        _ => return Err(Error::MalformedHeader(format!("expected `dg <n>`, got {header:?}"))),
    };
    let mut arcs = Vec::new();
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v] => match (parse_usize(u), parse_usize(v)) {
                (Some(u), Some(v)) => arcs.push((u, v)),
                _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
            },
            _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
        }
    }
    Digraph::new(n, arcs)
}

pub fn serialize_dg(d: &Digraph) -> String {
    let mut s = format!("dg {}\n", d.n());
    for &(u, v) in d.arcs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses the `.ug` simple-graph format (`u v` lines with `u < v`).
pub fn parse_ug(bytes: &[u8]) -> Result<SimpleGraph> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedHeader("input is not valid UTF-8 text".into()))?;
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields = parse_header(header, "ug")
        .ok_or_else(|| Error::MalformedHeader(format!("expected `ug <n>`, got {header:?}")))?;
    let n = match fields.as_slice() {
        [n] => parse_usize(n)
            .ok_or_else(|| Error::MalformedHeader(format!("bad count in {header:?}")))?,
        _ => return Err(Error::MalformedHeader(format!("expected `ug <n>`, got {header:?}"))),
    };
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v] => match (parse_usize(u), parse_usize(v)) {
                (Some(u), Some(v)) => edges.push((u, v)),
                _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
            },
            _ => return Err(Error::MalformedLine { line: lineno, text: line.into() }),
        }
    }
    SimpleGraph::new(n, edges)
}

pub fn serialize_ug(g: &SimpleGraph) -> String {
    let mut s = format!("ug {}\n", g.n());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
