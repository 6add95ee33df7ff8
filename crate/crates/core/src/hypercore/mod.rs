//! Core hypergraph model: canonical edge lists, edge-subset subgraphs, the
//! r-density `m_r`, strict r-balancedness and r-uniform expansions.

mod io;

pub use io::{parse_graph6, parse_hypergraph, parse_text, to_graph6};

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest edge count accepted by the exhaustive density scan.
pub const MAX_DENSITY_EDGES: usize = 22;

/// An r-uniform hypergraph on vertices `0..n` with a canonical edge list:
/// every edge is a strictly increasing r-tuple and the list is sorted
/// lexicographically without repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edge tuples. Vertices inside an
    /// edge may come in any order; duplicates are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        if r == 0 {
            return Err(Error::Invalid("uniformity must be positive".into()));
        }
        let mut out = Vec::new();
        for (i, e) in edges.into_iter().enumerate() {
            let mut e = e.as_ref().to_vec();
            if e.len() != r {
                return Err(Error::MalformedEdge {
                    line: i + 1,
                    reason: format!("expected {r} vertices, found {}", e.len()),
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { line: i + 1, vertex: v as u64, n });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedEdge { line: i + 1, reason: "repeated vertex".into() });
            }
            out.push(e);
        }
        out.sort();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { line: 0, edge: w[0].clone() });
        }
        Ok(Hypergraph { r, n, edges: out })
    }

    /// Internal constructor for edge lists already known to be canonical.
    pub(crate) fn from_sorted_unchecked(r: usize, n: usize, edges: Vec<Vec<u32>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Hypergraph { r, n, edges }
    }

    pub fn empty(r: usize, n: usize) -> Self {
        Hypergraph { r, n, edges: Vec::new() }
    }

    /// The complete r-uniform hypergraph `K_n^{(r)}`.
    pub fn complete(n: usize, r: usize) -> Self {
        Hypergraph { r, n, edges: combinations(n, r) }
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3);
        Self::new(2, k, (0..k as u32).map(|i| [i, (i + 1) % k as u32])).expect("cycle is valid")
    }

    /// Path on `k` vertices (`k - 1` edges).
    pub fn path(k: usize) -> Self {
        assert!(k >= 2);
        Self::new(2, k, (0..k as u32 - 1).map(|i| [i, i + 1])).expect("path is valid")
    }

    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        let edges = (0..s as u32).flat_map(|a| (0..t as u32).map(move |b| [a, s as u32 + b]));
        Self::new(2, s + t, edges).expect("bipartite graph is valid")
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Index of `edge` (given sorted) in the canonical list.
    pub fn edge_index(&self, edge: &[u32]) -> Option<usize> {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Vertices lying in at least one edge, ascending.
    pub fn spanned_vertices(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                seen[v as usize] = true;
            }
        }
        (0..self.n as u32).filter(|&v| seen[v as usize]).collect()
    }

    /// Relabels spanned vertices densely from 0, dropping isolated ones.
    /// Returns the new hypergraph and the map new label -> old label.
    pub fn compact(&self) -> (Hypergraph, Vec<u32>) {
        let keep = self.spanned_vertices();
        let mut new_of = vec![u32::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_of[v as usize] = i as u32;
        }
        let edges: Vec<Vec<u32>> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| new_of[v as usize]).collect())
            .collect();
        // Relabelling is monotone, so canonical order is preserved.
        (Hypergraph { r: self.r, n: keep.len(), edges }, keep)
    }

    /// The edge-subset subgraph on the given edge indices, keeping `n`.
    pub fn edge_subgraph(&self, indices: &[usize]) -> Hypergraph {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Hypergraph { r: self.r, n: self.n, edges: idx.iter().map(|&i| self.edges[i].clone()).collect() }
    }

    pub fn with_edge_added(&self, edge: &[u32]) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.push(edge.to_vec());
        Hypergraph::new(self.r, self.n, edges)
    }

    /// Canonical hypergraph-text serialization.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.r, self.n, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl std::fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All r-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<u32> = (0..r as u32).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        while i > 0 && cur[i - 1] as usize == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// A subgraph of `parent` given by a sorted set of edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphRef<'a> {
    parent: &'a Hypergraph,
    edge_indices: Vec<usize>,
}

impl<'a> SubgraphRef<'a> {
    pub fn new(parent: &'a Hypergraph, indices: &[usize]) -> Result<Self> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated edge index".into()));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= parent.num_edges()) {
            return Err(Error::Invalid(format!("edge index {i} out of range")));
        }
        Ok(SubgraphRef { parent, edge_indices: idx })
    }

    pub fn parent(&self) -> &'a Hypergraph {
        self.parent
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn num_vertices(&self) -> usize {
        let mut vs: Vec<u32> = self.edge_indices.iter().flat_map(|&i| self.parent.edge(i).iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        self.parent.edge_subgraph(&self.edge_indices)
    }
}

/// Result of a density maximization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    /// Maximum of `(e_F - 1)/(v_F - r)` over subgraphs with `v_F > r`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub value: Rational64,
    /// Edge indices of the first subgraph (in subset order) attaining `value`.
    pub witness: Vec<usize>,
    pub witness_vertices: usize,
    /// No proper subgraph attains `value`.
    pub achieved_only_by_whole: bool,
    /// For graphs only: the same maximum with denominator `v_F - 1`.
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    pub alt_value: Option<Rational64>,
}

impl DensityReport {
    pub fn witness_ref<'a>(&self, parent: &'a Hypergraph) -> SubgraphRef<'a> {
        SubgraphRef { parent, edge_indices: self.witness.clone() }
    }
}

/// Vertex masks for each edge after compaction; requires at most 128 spanned vertices.
fn edge_vertex_masks(h: &Hypergraph) -> Result<Vec<u128>> {
    let (c, _) = h.compact();
    if c.n_vertices() > 128 {
        return Err(Error::TooLarge(format!("{} spanned vertices (max 128)", c.n_vertices())));
    }
    Ok(c.edges().iter().map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v))).collect())
}

/// Spanned-vertex count of every edge subset, by lowest-bit recurrence.
fn subset_vertex_counts(masks: &[u128]) -> Vec<u8> {
    let m = masks.len();
    let mut span = vec![0u128; 1 << m];
    let mut counts = vec![0u8; 1 << m];
    for s in 1usize..(1 << m) {
        let low = s.trailing_zeros() as usize;
        span[s] = span[s & (s - 1)] | masks[low];
        counts[s] = span[s].count_ones() as u8;
    }
    counts
}

/// The r-density `m_r(H)` by exhaustive scan over edge subsets.
pub fn r_density(h: &Hypergraph) -> Result<DensityReport> {
    let m = h.num_edges();
    if m > MAX_DENSITY_EDGES {
        return Err(Error::TooLarge(format!("{m} edges (max {MAX_DENSITY_EDGES}) for density scan")));
    }
    let r = h.uniformity() as i64;
    let masks = edge_vertex_masks(h)?;
    let counts = subset_vertex_counts(&masks);
    let full = (1usize << m) - 1;
    let mut best: Option<(Rational64, usize)> = None;
    let mut alt: Option<Rational64> = None;
    for s in 1..=full {
        let v = counts[s] as i64;
        if v <= r {
            continue;
        }
        let e = s.count_ones() as i64;
        let val = Rational64::new(e - 1, v - r);
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, s));
        }
        if r == 2 {
            let a = Rational64::new(e - 1, v - 1);
            if alt.is_none_or(|b| a > b) {
                alt = Some(a);
            }
        }
    }
    let (value, witness_mask) = best.ok_or(Error::NoDenseSubgraph)?;
    let achieved_only_by_whole = (1..full).all(|s| {
        let v = counts[s] as i64;
        v <= r || Rational64::new(s.count_ones() as i64 - 1, v - r) != value
    });
    let witness: Vec<usize> = (0..m).filter(|&i| witness_mask >> i & 1 == 1).collect();
    Ok(DensityReport {
        value,
        witness,
        witness_vertices: counts[witness_mask] as usize,
        achieved_only_by_whole,
        alt_value: alt,
    })
}

/// The 2-density, taken as the r = 2 case of `r_density`.
pub fn two_density(h: &Hypergraph) -> Result<DensityReport> {
    if h.uniformity() != 2 {
        return Err(Error::Precondition(format!("two_density needs a graph, got r = {}", h.uniformity())));
    }
    r_density(h)
}

/// Every proper subgraph with at least two edges has strictly smaller
/// ratio `(e_F - 1)/(v_F - r)` than `H` itself.
pub fn is_strictly_r_balanced(h: &Hypergraph) -> Result<bool> {
    let m = h.num_edges();
    let r = h.uniformity() as i64;
    if m < 2 {
        return Err(Error::Precondition("strict balancedness needs at least two edges".into()));
    }
    if m > MAX_DENSITY_EDGES {
        return Err(Error::TooLarge(format!("{m} edges (max {MAX_DENSITY_EDGES})")));
    }
    let masks = edge_vertex_masks(h)?;
    let counts = subset_vertex_counts(&masks);
    let full = (1usize << m) - 1;
    let v_h = counts[full] as i64;
    if v_h <= r {
        return Err(Error::Precondition("H must span more than r vertices".into()));
    }
    let whole = Rational64::new(m as i64 - 1, v_h - r);
    Ok((1..full).filter(|s| s.count_ones() >= 2).all(|s| {
        let v = counts[s] as i64;
        v > r && Rational64::new(s.count_ones() as i64 - 1, v - r) < whole
    }))
}

/// The r-uniform expansion: edge `i` of the graph gains `r - 2` private
/// vertices numbered `v_G + (r - 2) i ..`.
pub fn expansion(g: &Hypergraph, r_target: usize) -> Result<Hypergraph> {
    if g.uniformity() != 2 {
        return Err(Error::Precondition("expansion takes a graph".into()));
    }
    if r_target < 3 {
        return Err(Error::Precondition(format!("target uniformity {r_target} < 3")));
    }
    let extra = r_target - 2;
    let base = g.n_vertices();
    let edges: Vec<Vec<u32>> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut out = e.clone();
            out.extend((0..extra).map(|j| (base + extra * i + j) as u32));
            out
        })
        .collect();
    Ok(Hypergraph::from_sorted_unchecked(r_target, base + extra * g.num_edges(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c = combinations(4, 2);
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<u32>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Hypergraph::new(3, 4, [[0, 1, 2, 2]]), Err(Error::MalformedEdge { .. })));
        assert!(matches!(Hypergraph::new(2, 4, [[0, 1], [1, 0]]), Err(Error::DuplicateEdge { .. })));
        assert!(matches!(Hypergraph::new(2, 3, [[0, 3]]), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(Hypergraph::new(2, 3, [[1, 1]]), Err(Error::MalformedEdge { .. })));
    }

    #[test]
    fn density_examples() {
        // Expected values from brute force over all edge subsets.
        assert_eq!(r_density(&Hypergraph::complete(3, 2)).unwrap().value, r(2, 1));
        assert_eq!(r_density(&Hypergraph::cycle(4)).unwrap().value, r(3, 2));
        assert_eq!(two_density(&Hypergraph::complete(4, 2)).unwrap().value, r(5, 2));
        assert_eq!(two_density(&Hypergraph::path(3)).unwrap().value, r(1, 1));
        let triple = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(r_density(&triple), Err(Error::NoDenseSubgraph));
        assert_eq!(two_density(&Hypergraph::path(2)), Err(Error::NoDenseSubgraph));
        assert!(two_density(&triple).is_err());
    }

    #[test]
    fn density_report_fields() {
        let c4 = Hypergraph::cycle(4);
        let rep = r_density(&c4).unwrap();
        assert_eq!(rep.witness, vec![0, 1, 2, 3]);
        assert_eq!(rep.witness_vertices, 4);
        assert!(rep.achieved_only_by_whole);
        // (e-1)/(v-1) variant: C_4 gives 1, P_3 gives 1/2.
        assert_eq!(rep.alt_value, Some(r(1, 1)));
        let w = rep.witness_ref(&c4);
        assert_eq!(w.num_vertices(), 4);

        let mut edges = c4.edges().to_vec();
        edges.push(vec![0, 4]);
        let pendant = Hypergraph::new(2, 5, edges).unwrap();
        let rep = r_density(&pendant).unwrap();
        assert_eq!(rep.value, r(3, 2));
        assert!(!rep.achieved_only_by_whole);
    }

    #[test]
    fn balanced_examples() {
        assert!(is_strictly_r_balanced(&Hypergraph::cycle(4)).unwrap());
        assert!(is_strictly_r_balanced(&Hypergraph::complete(3, 2)).unwrap());
        let pendant = Hypergraph::new(2, 5, [[0, 1], [1, 2], [2, 3], [0, 3], [0, 4]]).unwrap();
        assert!(!is_strictly_r_balanced(&pendant).unwrap());
        assert!(is_strictly_r_balanced(&Hypergraph::path(2)).is_err());
    }

    #[test]
    fn expansion_examples() {
        let e = expansion(&Hypergraph::complete(3, 2), 3).unwrap();
        assert_eq!((e.n_vertices(), e.num_edges(), e.uniformity()), (6, 3, 3));
        assert_eq!(e.edges(), &[vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]]);
        let p = expansion(&Hypergraph::path(3), 4).unwrap();
        assert_eq!((p.n_vertices(), p.num_edges()), (7, 2));
        let c = expansion(&Hypergraph::complete_bipartite(2, 2), 3).unwrap();
        assert_eq!((c.n_vertices(), c.num_edges()), (8, 4));
        assert!(expansion(&Hypergraph::cycle(4), 2).is_err());
    }

    #[test]
    fn compact_records_bijection() {
        let h = Hypergraph::new(2, 6, [[1, 4], [4, 5]]).unwrap();
        let (c, map) = h.compact();
        assert_eq!(map, vec![1, 4, 5]);
        assert_eq!(c.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    fn arb_graph() -> impl Strategy<Value = Hypergraph> {
        (3usize..7).prop_flat_map(|n| {
            let all = combinations(n, 2);
            let len = all.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |pick| {
                let edges: Vec<Vec<u32>> =
                    all.iter().zip(&pick).filter(|(_, &p)| p).map(|(e, _)| e.clone()).collect();
                Hypergraph::new(2, n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            let text = g.to_text();
            let back = parse_hypergraph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_text(), text);
        }

        #[test]
        fn density_is_monotone_under_subgraphs(g in arb_graph(), pick in proptest::collection::vec(any::<bool>(), 15)) {
            if let Ok(whole) = r_density(&g) {
                let idx: Vec<usize> = (0..g.num_edges()).filter(|&i| pick[i]).collect();
                if let Ok(sub) = r_density(&g.edge_subgraph(&idx)) {
                    prop_assert!(sub.value <= whole.value);
                }
            }
        }

        #[test]
        fn expansion_counts(g in arb_graph(), r in 3usize..=5) {
            let e = expansion(&g, r).unwrap();
            prop_assert_eq!(e.n_vertices(), g.n_vertices() + (r - 2) * g.num_edges());
            prop_assert_eq!(e.num_edges(), g.num_edges());
        }

        #[test]
        fn strict_balance_implies_unique_maximizer(g in arb_graph()) {
            if g.num_edges() >= 2 && g.spanned_vertices().len() > 2 {
                if is_strictly_r_balanced(&g).unwrap() {
                    prop_assert!(r_density(&g).unwrap().achieved_only_by_whole);
                }
            }
        }
    }
}
