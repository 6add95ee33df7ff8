//! Copies of a pattern `H` inside a host `G`, the copy hypergraph whose
//! vertices are the edges of `G`, and its codegree profile.
//!
//! Embeddings are found by backtracking over pattern vertices in a
//! connectivity-first order. Candidate host vertices come from bitset
//! intersections of the host "link" relation (two vertices are linked when
//! they share an edge), which is exact adjacency for graphs. An embedding
//! is reported only when it is lexicographically minimal among its
//! compositions with the automorphisms of `H`, so each edge image set
//! appears exactly once.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

/// Search limits for embedding enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    /// Abort once this many candidate placements have been tried.
    pub node_budget: Option<u64>,
    /// Partition the first placement across the rayon pool.
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { node_budget: None, parallel: true }
    }
}

struct HostIndex {
    n: usize,
    link: Vec<FixedBitSet>,
    degree: Vec<usize>,
    pair_edge: Vec<u32>,
    edge_map: HashMap<Vec<u32>, u32>,
    r: usize,
}

impl HostIndex {
    fn new(g: &Hypergraph) -> Self {
        let n = g.n_vertices();
        let r = g.uniformity();
        let mut link = vec![FixedBitSet::with_capacity(n); n];
        let mut degree = vec![0usize; n];
        let mut pair_edge = Vec::new();
        let mut edge_map = HashMap::new();
        if r == 2 {
            pair_edge = vec![u32::MAX; n * n];
        }
        for (i, e) in g.edges().iter().enumerate() {
            for &a in e {
                degree[a as usize] += 1;
                for &b in e {
                    if a != b {
                        link[a as usize].insert(b as usize);
                    }
                }
            }
            if r == 2 {
                let (a, b) = (e[0] as usize, e[1] as usize);
                pair_edge[a * n + b] = i as u32;
                pair_edge[b * n + a] = i as u32;
            } else {
                edge_map.insert(e.clone(), i as u32);
            }
        }
        HostIndex { n, link, degree, pair_edge, edge_map, r }
    }

    fn lookup(&self, verts: &mut [u32]) -> Option<u32> {
        if self.r == 2 {
            let id = self.pair_edge[verts[0] as usize * self.n + verts[1] as usize];
            (id != u32::MAX).then_some(id)
        } else {
            verts.sort_unstable();
            self.edge_map.get(verts).copied()
        }
    }
}

/// Placement order and per-step bookkeeping for a compact pattern.
struct Plan {
    k: usize,
    order: Vec<usize>,
    back_links: Vec<Vec<usize>>,
    closing: Vec<Vec<usize>>,
    pdeg: Vec<usize>,
    pattern_edges: Vec<Vec<u32>>,
    r: usize,
}

impl Plan {
    fn new(p: &Hypergraph) -> Self {
        let k = p.n_vertices();
        let r = p.uniformity();
        let mut linked = vec![vec![false; k]; k];
        let mut pdeg = vec![0usize; k];
        for e in p.edges() {
            for &a in e {
                pdeg[a as usize] += 1;
                for &b in e {
                    if a != b {
                        linked[a as usize][b as usize] = true;
                    }
                }
            }
        }
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u: &&usize| linked[v][u]).count();
                    (links, pdeg[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
        let mut pos_of = vec![0usize; k];
        for (i, &v) in order.iter().enumerate() {
            pos_of[v] = i;
        }
        let back_links = (0..k).map(|i| (0..i).filter(|&j| linked[order[i]][order[j]]).collect()).collect();
        let mut closing = vec![Vec::new(); k];
        for (eid, e) in p.edges().iter().enumerate() {
            let last = e.iter().map(|&v| pos_of[v as usize]).max().expect("edge is nonempty");
            closing[last].push(eid);
        }
        Plan { k, order, back_links, closing, pdeg, pattern_edges: p.edges().to_vec(), r }
    }
}

struct Search<'a> {
    host: &'a HostIndex,
    plan: &'a Plan,
    phi: Vec<u32>,
    used: FixedBitSet,
    edge_img: Vec<u32>,
    scratch: Vec<FixedBitSet>,
    nodes: u64,
    pending: u64,
    shared_nodes: &'a AtomicU64,
    budget: Option<u64>,
    abort: &'a AtomicBool,
    buf: Vec<u32>,
}

enum Stop {
    Budget,
    Done,
}

impl Drop for Search<'_> {
    fn drop(&mut self) {
        self.shared_nodes.fetch_add(self.pending, Ordering::Relaxed);
    }
}

impl<'a> Search<'a> {
    fn new(host: &'a HostIndex, plan: &'a Plan, shared: &'a AtomicU64, abort: &'a AtomicBool, budget: Option<u64>) -> Self {
        Search {
            host,
            plan,
            phi: vec![u32::MAX; plan.k],
            used: FixedBitSet::with_capacity(host.n),
            edge_img: vec![u32::MAX; plan.pattern_edges.len()],
            scratch: vec![FixedBitSet::with_capacity(host.n); plan.k],
            nodes: 0,
            pending: 0,
            shared_nodes: shared,
            budget,
            abort,
            buf: Vec::with_capacity(plan.r),
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        self.pending += 1;
        if self.pending == 1024 {
            self.shared_nodes.fetch_add(1024, Ordering::Relaxed);
            self.pending = 0;
        }
        if let Some(b) = self.budget {
            if self.shared_nodes.load(Ordering::Relaxed) + self.pending > b {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        if self.abort.load(Ordering::Relaxed) {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    /// Places host vertex `v` at position `pos`; returns false if a closing
    /// pattern edge has no host image.
    fn place(&mut self, pos: usize, v: u32) -> bool {
        let pv = self.plan.order[pos];
        self.phi[pv] = v;
        for &eid in &self.plan.closing[pos] {
            self.buf.clear();
            self.buf.extend(self.plan.pattern_edges[eid].iter().map(|&u| self.phi[u as usize]));
            match self.host.lookup(&mut self.buf) {
                Some(id) => self.edge_img[eid] = id,
                None => return false,
            }
        }
        true
    }

    fn candidates(&mut self, pos: usize) {
        let (head, tail) = self.scratch.split_at_mut(pos);
        let _ = head;
        let set = &mut tail[0];
        let links = &self.plan.back_links[pos];
        if links.is_empty() {
            set.clear();
            set.insert_range(..);
        } else {
            set.clone_from(&self.host.link[self.phi[self.plan.order[links[0]]] as usize]);
            for &j in &links[1..] {
                set.intersect_with(&self.host.link[self.phi[self.plan.order[j]] as usize]);
            }
        }
        set.difference_with(&self.used);
    }

    fn run<F>(&mut self, pos: usize, f: &mut F) -> std::result::Result<(), Stop>
    where
        F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
    {
        if pos == self.plan.k {
            return match f(&self.phi, &self.edge_img) {
                ControlFlow::Continue(()) => Ok(()),
                ControlFlow::Break(()) => Err(Stop::Done),
            };
        }
        self.candidates(pos);
        let need = self.plan.pdeg[self.plan.order[pos]];
        let cands: Vec<usize> = self.scratch[pos].ones().collect();
        for v in cands {
            self.tick()?;
            if self.host.degree[v] < need {
                continue;
            }
            if self.place(pos, v as u32) {
                self.used.insert(v);
                let res = self.run(pos + 1, f);
                self.used.set(v, false);
                res?;
            }
        }
        Ok(())
    }

    fn run_from(&mut self, first: u32, f: &mut impl FnMut(&[u32], &[u32]) -> ControlFlow<()>) -> std::result::Result<(), Stop> {
        self.tick()?;
        if self.host.degree[first as usize] < self.plan.pdeg[self.plan.order[0]] {
            return Ok(());
        }
        if self.place(0, first) {
            self.used.insert(first as usize);
            let res = self.run(1, f);
            self.used.set(first as usize, false);
            res?;
        }
        Ok(())
    }
}

fn check_inputs(g: &Hypergraph, h: &Hypergraph) -> Result<()> {
    if g.uniformity() != h.uniformity() {
        return Err(Error::Precondition(format!(
            "host uniformity {} differs from pattern uniformity {}",
            g.uniformity(),
            h.uniformity()
        )));
    }
    if h.num_edges() == 0 {
        return Err(Error::Precondition("pattern has no edges".into()));
    }
    Ok(())
}

/// Visits every injective homomorphism of the (compacted) pattern into `g`
/// sequentially. The callback sees the vertex map and the host edge index
/// of each pattern edge.
fn for_each_embedding<F>(g: &Hypergraph, p: &Hypergraph, budget: Option<u64>, mut f: F) -> Result<u64>
where
    F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
{
    let host = HostIndex::new(g);
    let plan = Plan::new(p);
    if plan.k > host.n {
        return Ok(0);
    }
    let shared = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let mut s = Search::new(&host, &plan, &shared, &abort, budget);
    for first in 0..host.n as u32 {
        match s.run_from(first, &mut f) {
            Ok(()) => {}
            Err(Stop::Done) => break,
            Err(Stop::Budget) => {
                return Err(Error::BudgetExceeded {
                    budget: budget.unwrap_or(0),
                    progress: format!("stopped at first vertex {first} after {} nodes", s.nodes),
                })
            }
        }
    }
    Ok(s.nodes)
}

/// Automorphisms of the compacted pattern as vertex permutations.
pub fn automorphisms(h: &Hypergraph) -> Vec<Vec<u32>> {
    let (p, _) = h.compact();
    let mut out = Vec::new();
    for_each_embedding(&p, &p, None, |phi, _| {
        out.push(phi.to_vec());
        ControlFlow::Continue(())
    })
    .expect("unbudgeted search cannot fail");
    out.sort();
    out
}

pub fn automorphism_count(h: &Hypergraph) -> u64 {
    automorphisms(h).len() as u64
}

/// Whether `g` contains a (not necessarily induced) copy of `h`.
pub fn contains_copy(g: &Hypergraph, h: &Hypergraph) -> bool {
    if g.uniformity() != h.uniformity() || h.num_edges() == 0 {
        return h.num_edges() == 0;
    }
    let (p, _) = h.compact();
    let mut found = false;
    for_each_embedding(g, &p, None, |_, _| {
        found = true;
        ControlFlow::Break(())
    })
    .expect("unbudgeted search cannot fail");
    found
}

/// Isomorphism of hypergraphs, ignoring isolated vertices.
pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    let (a, _) = a.compact();
    let (b, _) = b.compact();
    if a.uniformity() != b.uniformity() || a.n_vertices() != b.n_vertices() || a.num_edges() != b.num_edges() {
        return false;
    }
    if a.num_edges() == 0 {
        return true;
    }
    let mut da: Vec<usize> = (0..a.n_vertices() as u32).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n_vertices() as u32).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && contains_copy(&b, &a)
}

/// Number of injective homomorphisms of `h` into `g`, with no
/// deduplication.
pub fn count_embeddings(g: &Hypergraph, h: &Hypergraph) -> Result<u64> {
    check_inputs(g, h)?;
    let (p, _) = h.compact();
    let mut count = 0u64;
    for_each_embedding(g, &p, None, |_, _| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// The copy hypergraph: vertex set `E(G)`, one hyperedge per copy of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyHypergraph {
    host: Hypergraph,
    pattern: Hypergraph,
    hyperedges: Vec<Vec<u32>>,
    /// For each hyperedge, the host edge hit by each pattern edge under the
    /// representative embedding (empty when built from bare edge sets).
    images: Vec<Vec<u32>>,
    incidence: Vec<Vec<u32>>,
}

/// Codegrees `Δ_1 ≥ … ≥ Δ_{e_H}` with one attaining set for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodegreeProfile {
    pub deltas: Vec<usize>,
    pub witnesses: Vec<Vec<u32>>,
}

impl CodegreeProfile {
    /// `Δ_ℓ` for 1-based `ℓ`.
    pub fn delta(&self, l: usize) -> usize {
        self.deltas[l - 1]
    }
}

#[derive(Serialize)]
struct CopiesJson<'a> {
    schema: u32,
    pattern: String,
    host: String,
    copy_uniformity: usize,
    copies: &'a [Vec<u32>],
}

impl CopyHypergraph {
    /// Builds the index from hyperedges given as host-edge-index sets.
    pub fn from_hyperedges(host: Hypergraph, pattern: &Hypergraph, hyperedges: Vec<Vec<u32>>) -> Result<Self> {
        let (pattern, _) = pattern.compact();
        let k = pattern.num_edges();
        let mut hyperedges: Vec<Vec<u32>> = hyperedges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        for e in &hyperedges {
            if e.len() != k || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("hyperedge {e:?} is not a {k}-set")));
            }
            if let Some(&i) = e.iter().find(|&&i| i as usize >= host.num_edges()) {
                return Err(Error::Invalid(format!("host edge index {i} out of range")));
            }
        }
        hyperedges.sort();
        hyperedges.dedup();
        Ok(Self::assemble(host, pattern, hyperedges, Vec::new()))
    }

    fn assemble(host: Hypergraph, pattern: Hypergraph, hyperedges: Vec<Vec<u32>>, images: Vec<Vec<u32>>) -> Self {
        let mut incidence = vec![Vec::new(); host.num_edges()];
        for (i, e) in hyperedges.iter().enumerate() {
            for &v in e {
                incidence[v as usize].push(i as u32);
            }
        }
        CopyHypergraph { host, pattern, hyperedges, images, incidence }
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    /// The pattern with isolated vertices removed.
    pub fn pattern(&self) -> &Hypergraph {
        &self.pattern
    }

    pub fn copy_uniformity(&self) -> usize {
        self.pattern.num_edges()
    }

    pub fn hyperedges(&self) -> &[Vec<u32>] {
        &self.hyperedges
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    /// Host edge of pattern edge `j` in hyperedge `i`, if known.
    pub fn image(&self, i: usize) -> Option<&[u32]> {
        self.images.get(i).map(Vec::as_slice)
    }

    /// Hyperedges containing host edge `v`.
    pub fn incident(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Number of hyperedges containing every host edge in `s`.
    pub fn codegree(&self, s: &[u32]) -> Result<usize> {
        if s.len() > self.copy_uniformity() {
            return Err(Error::Invalid(format!("set of size {} exceeds e_H = {}", s.len(), self.copy_uniformity())));
        }
        if let Some(&i) = s.iter().find(|&&i| i as usize >= self.host.num_edges()) {
            return Err(Error::Invalid(format!("host edge index {i} out of range")));
        }
        if s.is_empty() {
            return Ok(self.hyperedges.len());
        }
        let smallest = s.iter().min_by_key(|&&v| self.incidence[v as usize].len()).expect("s is nonempty");
        Ok(self.incidence[*smallest as usize]
            .iter()
            .filter(|&&h| {
                let e = &self.hyperedges[h as usize];
                s.iter().all(|v| e.binary_search(v).is_ok())
            })
            .count())
    }

    /// Exact `Δ_ℓ` for every `ℓ` by counting each hyperedge's subsets.
    pub fn max_codegree_profile(&self) -> CodegreeProfile {
        let k = self.copy_uniformity();
        let mut deltas = vec![0usize; k];
        let mut witnesses = vec![Vec::new(); k];
        let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
        for e in &self.hyperedges {
            for mask in 1u32..(1 << k) {
                let sub: Vec<u32> = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| e[j]).collect();
                *counts.entry(sub).or_insert(0) += 1;
            }
        }
        // Deterministic witnesses: first hyperedge / subset in scan order.
        for e in &self.hyperedges {
            for mask in 1u32..(1 << k) {
                let sub: Vec<u32> = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| e[j]).collect();
                let c = counts[&sub];
                let l = sub.len() - 1;
                if c > deltas[l] {
                    deltas[l] = c;
                    witnesses[l] = sub;
                }
            }
        }
        CodegreeProfile { deltas, witnesses }
    }

    /// Versioned JSON listing of the copies.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CopiesJson {
            schema: 1,
            pattern: self.pattern.to_text(),
            host: self.host.to_text(),
            copy_uniformity: self.copy_uniformity(),
            copies: &self.hyperedges,
        })
        .expect("copy listing serializes")
    }
}

/// All copies of `h` in `g` with default limits.
pub fn enumerate_copies(g: &Hypergraph, h: &Hypergraph) -> Result<CopyHypergraph> {
    enumerate_copies_with(g, h, EnumConfig::default())
}

pub fn enumerate_copies_with(g: &Hypergraph, h: &Hypergraph, cfg: EnumConfig) -> Result<CopyHypergraph> {
    check_inputs(g, h)?;
    let (p, _) = h.compact();
    let auts = automorphisms(&p);
    let host = HostIndex::new(g);
    let plan = Plan::new(&p);
    if plan.k > host.n {
        return Ok(CopyHypergraph::assemble(g.clone(), p, Vec::new(), Vec::new()));
    }
    let shared = AtomicU64::new(0);
    let abort = AtomicBool::new(false);

    let canonical = |phi: &[u32]| {
        auts.iter().all(|sigma| {
            for v in 0..phi.len() {
                let other = phi[sigma[v] as usize];
                match other.cmp(&phi[v]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            true
        })
    };

    let run_part = |first: u32| -> std::result::Result<(Vec<(Vec<u32>, Vec<u32>)>, u64), u64> {
        let mut s = Search::new(&host, &plan, &shared, &abort, cfg.node_budget);
        let mut found = Vec::new();
        let res = s.run_from(first, &mut |phi: &[u32], img: &[u32]| {
            if canonical(phi) {
                let mut set = img.to_vec();
                set.sort_unstable();
                found.push((set, img.to_vec()));
            }
            ControlFlow::Continue(())
        });
        match res {
            Ok(()) | Err(Stop::Done) => Ok((found, s.nodes)),
            Err(Stop::Budget) => Err(found.len() as u64),
        }
    };

    let parts: Vec<_> = if cfg.parallel {
        (0..host.n as u32).into_par_iter().map(run_part).collect()
    } else {
        (0..host.n as u32).map(run_part).collect()
    };

    let mut pairs = Vec::new();
    let mut partial = 0u64;
    let mut failed = false;
    for part in parts {
        match part {
            Ok((found, _)) => pairs.extend(found),
            Err(k) => {
                failed = true;
                partial += k;
            }
        }
    }
    if failed {
        return Err(Error::BudgetExceeded {
            budget: cfg.node_budget.unwrap_or(0),
            progress: format!("{} copies found before abort", pairs.len() as u64 + partial),
        });
    }
    pairs.sort();
    let (hyperedges, images): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Ok(CopyHypergraph::assemble(g.clone(), p, hyperedges, images))
}

/// Isomorphism classes of the nonempty proper edge subsets of a pattern.
#[derive(Clone, Debug)]
pub struct SubpatternClasses {
    /// Class id of each edge mask `1..2^{e_H}-1` (index = mask).
    pub class_of: Vec<usize>,
    /// Representative mask, edge count and vertex count per class.
    pub reps: Vec<(u32, usize, usize)>,
}

impl SubpatternClasses {
    pub fn new(h: &Hypergraph) -> Result<Self> {
        let (p, _) = h.compact();
        let k = p.num_edges();
        if k > 16 {
            return Err(Error::TooLarge(format!("{k} pattern edges for subgraph classification")));
        }
        let full = (1u32 << k) - 1;
        let mut class_of = vec![usize::MAX; full as usize + 1];
        let mut reps: Vec<(u32, usize, usize)> = Vec::new();
        let mut rep_graphs: Vec<Hypergraph> = Vec::new();
        for mask in 1..full {
            let idx: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
            let sub = p.edge_subgraph(&idx);
            let v = sub.spanned_vertices().len();
            let hit = reps
                .iter()
                .zip(&rep_graphs)
                .position(|(&(_, e, rv), g)| e == idx.len() && rv == v && is_isomorphic(g, &sub));
            match hit {
                Some(c) => class_of[mask as usize] = c,
                None => {
                    class_of[mask as usize] = reps.len();
                    reps.push((mask, idx.len(), v));
                    rep_graphs.push(sub);
                }
            }
        }
        Ok(SubpatternClasses { class_of, reps })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::combinations;
    use proptest::prelude::*;

    /// Naive oracle: every injective map of pattern vertices into host
    /// vertices, keeping those that send edges to edges.
    fn naive_copies(g: &Hypergraph, h: &Hypergraph) -> (Vec<Vec<u32>>, u64) {
        let (p, _) = h.compact();
        let k = p.n_vertices();
        let n = g.n_vertices();
        let mut sets = std::collections::BTreeSet::new();
        let mut homs = 0u64;
        let mut phi = vec![0u32; k];
        fn rec(
            i: usize,
            k: usize,
            n: usize,
            phi: &mut Vec<u32>,
            g: &Hypergraph,
            p: &Hypergraph,
            sets: &mut std::collections::BTreeSet<Vec<u32>>,
            homs: &mut u64,
        ) {
            if i == k {
                let mut imgs = Vec::new();
                for e in p.edges() {
                    let mut img: Vec<u32> = e.iter().map(|&v| phi[v as usize]).collect();
                    img.sort();
                    match g.edge_index(&img) {
                        Some(id) => imgs.push(id as u32),
                        None => return,
                    }
                }
                *homs += 1;
                imgs.sort();
                sets.insert(imgs);
                return;
            }
            for v in 0..n as u32 {
                if phi[..i].contains(&v) {
                    continue;
                }
                phi[i] = v;
                rec(i + 1, k, n, phi, g, p, sets, homs);
            }
        }
        rec(0, k, n, &mut phi, g, &p, &mut sets, &mut homs);
        (sets.into_iter().collect(), homs)
    }

    #[test]
    fn copies_in_k4() {
        let k4 = Hypergraph::complete(4, 2);
        assert_eq!(enumerate_copies(&k4, &Hypergraph::complete(3, 2)).unwrap().len(), 4);
        assert_eq!(enumerate_copies(&k4, &Hypergraph::cycle(4)).unwrap().len(), 3);
        let star = Hypergraph::new(2, 5, [[0, 1], [0, 2], [0, 3], [3, 4]]).unwrap();
        assert!(enumerate_copies(&star, &Hypergraph::cycle(4)).unwrap().is_empty());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Hypergraph::cycle(4)), 8);
        assert_eq!(automorphism_count(&Hypergraph::complete(4, 2)), 24);
        assert_eq!(automorphism_count(&Hypergraph::path(4)), 2);
        assert_eq!(automorphism_count(&Hypergraph::complete_bipartite(2, 3)), 12);
    }

    #[test]
    fn codegree_examples() {
        let ch = enumerate_copies(&Hypergraph::complete(4, 2), &Hypergraph::complete(3, 2)).unwrap();
        assert_eq!(ch.codegree(&[0]).unwrap(), 2);
        assert_eq!(ch.codegree(&[]).unwrap(), 4);
        assert_eq!(ch.codegree(ch.hyperedges()[0].as_slice()).unwrap(), 1);
        assert!(ch.codegree(&[6]).is_err());
        assert!(ch.codegree(&[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn profile_examples() {
        let k4 = Hypergraph::complete(4, 2);
        let tri = enumerate_copies(&k4, &Hypergraph::complete(3, 2)).unwrap();
        assert_eq!(tri.max_codegree_profile().deltas, vec![2, 1, 1]);
        let cyc = enumerate_copies(&k4, &Hypergraph::cycle(4)).unwrap();
        let prof = cyc.max_codegree_profile();
        assert_eq!(prof.delta(1), 2);
        assert_eq!(prof.delta(4), 1);
        for (l, w) in prof.witnesses.iter().enumerate() {
            assert_eq!(w.len(), l + 1);
            assert_eq!(cyc.codegree(w).unwrap(), prof.deltas[l]);
        }
        let empty = enumerate_copies(&Hypergraph::path(5), &Hypergraph::cycle(4)).unwrap();
        assert_eq!(empty.max_codegree_profile().deltas, vec![0; 4]);
    }

    #[test]
    fn hypergraph_copies() {
        let k5_3 = Hypergraph::complete(5, 3);
        let two = Hypergraph::new(3, 4, [[0, 1, 2], [1, 2, 3]]).unwrap();
        // Pairs of triples sharing two vertices: 10 * 6 / 2.
        assert_eq!(enumerate_copies(&k5_3, &two).unwrap().len(), 30);
        let (naive, _) = naive_copies(&k5_3, &two);
        assert_eq!(enumerate_copies(&k5_3, &two).unwrap().hyperedges(), naive.as_slice());
    }

    #[test]
    fn budget_is_enforced() {
        let g = Hypergraph::complete(9, 2);
        let cfg = EnumConfig { node_budget: Some(2000), parallel: false };
        assert!(matches!(
            enumerate_copies_with(&g, &Hypergraph::cycle(4), cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn json_export() {
        let ch = enumerate_copies(&Hypergraph::complete(4, 2), &Hypergraph::complete(3, 2)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&ch.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["copies"].as_array().unwrap().len(), 4);
        assert_eq!(v["copies"][0], serde_json::json!([0, 1, 3]));
    }

    #[test]
    fn images_match_pattern_edges() {
        let g = Hypergraph::complete(5, 2);
        let ch = enumerate_copies(&g, &Hypergraph::path(4)).unwrap();
        for i in 0..ch.len() {
            let mut img = ch.image(i).unwrap().to_vec();
            img.sort();
            assert_eq!(img, ch.hyperedges()[i]);
        }
    }

    #[test]
    fn subpattern_classes_c4() {
        let c = SubpatternClasses::new(&Hypergraph::cycle(4)).unwrap();
        // K2, P3, 2K2, P4
        assert_eq!(c.num_classes(), 4);
        let mut sizes: Vec<(usize, usize)> = c.reps.iter().map(|&(_, e, v)| (e, v)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 2), (2, 3), (2, 4), (3, 4)]);
    }

    fn arb_host() -> impl Strategy<Value = Hypergraph> {
        (4usize..=7).prop_flat_map(|n| {
            let all = combinations(n, 2);
            proptest::collection::vec(proptest::bool::weighted(0.6), all.len()).prop_map(move |pick| {
                let e: Vec<Vec<u32>> = all.iter().zip(&pick).filter(|(_, &p)| p).map(|(e, _)| e.clone()).collect();
                Hypergraph::new(2, n, e).unwrap()
            })
        })
    }

    fn patterns() -> Vec<Hypergraph> {
        vec![
            Hypergraph::complete(3, 2),
            Hypergraph::cycle(4),
            Hypergraph::path(4),
            Hypergraph::complete_bipartite(1, 3),
            Hypergraph::new(2, 4, [[0, 1], [2, 3]]).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn agrees_with_naive_oracle(g in arb_host()) {
            for h in patterns() {
                let ch = enumerate_copies(&g, &h).unwrap();
                let (naive, homs) = naive_copies(&g, &h);
                prop_assert_eq!(ch.hyperedges(), naive.as_slice());
                prop_assert_eq!(ch.len() as u64 * automorphism_count(&h), homs);
                prop_assert_eq!(count_embeddings(&g, &h).unwrap(), homs);
                let seq = enumerate_copies_with(&g, &h, EnumConfig { node_budget: None, parallel: false }).unwrap();
                prop_assert_eq!(&seq, &ch);
            }
        }

        #[test]
        fn profile_monotone_and_host_monotone(g in arb_host(), extra in 0usize..21) {
            let h = Hypergraph::cycle(4);
            let p = enumerate_copies(&g, &h).unwrap().max_codegree_profile();
            for w in p.deltas.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            prop_assert!(*p.deltas.last().unwrap() <= 1);
            let all = combinations(g.n_vertices(), 2);
            let e = &all[extra % all.len()];
            if g.edge_index(e).is_none() {
                let bigger = g.with_edge_added(e).unwrap();
                let q = enumerate_copies(&bigger, &h).unwrap().max_codegree_profile();
                for l in 0..4 {
                    prop_assert!(q.deltas[l] >= p.deltas[l]);
                }
            }
        }
    }
}
