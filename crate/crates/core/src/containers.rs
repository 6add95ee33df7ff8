//! Hypergraph containers: a deterministic fingerprint algorithm for one
//! container step, the container tree over subsets of `K_n^{(r)}`, an
//! exhaustive coverage audit, and the leaf-count estimate.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::copyindex::{enumerate_copies, CopyHypergraph};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, floor_to_uint, pow_i, ratio_from_u64, ratio_to_f64};
use crate::hypercore::{combinations, Hypergraph};
use crate::supersat::{self, level_of, BuildOptions, BuildOutcome, OrderPolicy, ParamInput};

#[derive(Clone, Debug, Serialize)]
pub struct PreconditionRow {
    pub ell: usize,
    pub delta: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bound: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainerStepResult {
    /// Sorted vertex (host-edge) index sets.
    pub containers: Vec<Vec<u32>>,
    /// Number of distinct fingerprints explored.
    pub fingerprints: u64,
    pub fingerprint_size_cap: usize,
    /// `1 - max|C| / v`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub measured_delta: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub p: BigRational,
    #[serde(rename = "K", serialize_with = "crate::exactnum::as_string")]
    pub k_const: BigRational,
    pub precondition: Vec<PreconditionRow>,
    /// `Σ_{s <= cap} C(v, s)`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub count_bound: BigUint,
    pub count_bound_ok: bool,
    /// `log2 (e/(kp))^{kpv}`; an upper bound on the count only when `kp <= 1`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_display_bound: f64,
    pub display_bound_applies: bool,
    pub display_bound_ok: bool,
}

impl ContainerStepResult {
    pub fn bound_ok(&self) -> bool {
        self.count_bound_ok && (!self.display_bound_applies || self.display_bound_ok)
    }
}

/// Checks `Δ_ℓ <= K p^{ℓ-1} e/v` for every `ℓ`.
pub fn step_precondition(ch: &CopyHypergraph, p: &BigRational, k_const: &BigRational) -> Vec<PreconditionRow> {
    let prof = ch.max_codegree_profile();
    let v = ch.host().num_edges() as u64;
    let e = ratio_from_u64(ch.len() as u64);
    (1..=ch.copy_uniformity())
        .map(|l| {
            let bound = if v == 0 {
                BigRational::zero()
            } else {
                k_const * pow_i(p, l as i64 - 1) * &e / ratio_from_u64(v)
            };
            let delta = prof.delta(l);
            PreconditionRow { ell: l, delta, pass: ratio_from_u64(delta as u64) <= bound, bound }
        })
        .collect()
}

const UNDECIDED: u8 = 0;
const SELECTED: u8 = 1;
const REMOVED: u8 = 2;

struct StepSearch<'a> {
    edges: &'a [Vec<u32>],
    incident: Vec<&'a [u32]>,
    cap: usize,
    containers: BTreeSet<Vec<u32>>,
    fingerprints: u64,
    nodes: u64,
    budget: Option<u64>,
}

impl StepSearch<'_> {
    /// An edge is alive while none of its vertices is removed.
    fn alive(&self, state: &[u8], e: usize) -> bool {
        self.edges[e].iter().all(|&v| state[v as usize] != REMOVED)
    }

    fn rec(&mut self, state: &mut Vec<u8>, selected: usize) -> std::result::Result<(), ()> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(());
        }
        // A residual edge with one undecided vertex forces its removal; a
        // fully selected edge means the branch is not independent.
        loop {
            let mut forced = None;
            for (i, e) in self.edges.iter().enumerate() {
                if !self.alive(state, i) {
                    continue;
                }
                let mut open = e.iter().filter(|&&v| state[v as usize] == UNDECIDED);
                match (open.next(), open.next()) {
                    (None, _) => return Ok(()),
                    (Some(&v), None) => {
                        forced = Some(v);
                        break;
                    }
                    _ => {}
                }
            }
            match forced {
                Some(v) => state[v as usize] = REMOVED,
                None => break,
            }
        }
        let mut best: Option<(usize, u32)> = None;
        if selected < self.cap {
            for v in 0..state.len() {
                if state[v] != UNDECIDED {
                    continue;
                }
                let d = self.incident[v].iter().filter(|&&e| self.alive(state, e as usize)).count();
                if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
                    best = Some((d, v as u32));
                }
            }
        }
        let Some((_, u)) = best else {
            self.fingerprints += 1;
            let c: Vec<u32> = (0..state.len() as u32).filter(|&v| state[v as usize] != REMOVED).collect();
            self.containers.insert(c);
            return Ok(());
        };
        let saved = state.clone();
        state[u as usize] = SELECTED;
        self.rec(state, selected + 1)?;
        state.clone_from(&saved);
        state[u as usize] = REMOVED;
        self.rec(state, selected)?;
        state.clone_from(&saved);
        Ok(())
    }
}

/// One container step. Every vertex set containing no hyperedge lies in
/// some output container; each container is determined by a fingerprint of
/// at most `floor(k p v)` vertices, chosen by max residual degree.
pub fn container_step(
    ch: &CopyHypergraph,
    p: &BigRational,
    k_const: &BigRational,
    node_budget: Option<u64>,
) -> Result<ContainerStepResult> {
    if !p.is_positive() || p > &BigRational::one() {
        return Err(Error::Invalid(format!("p = {p} must lie in (0, 1]")));
    }
    if !k_const.is_positive() {
        return Err(Error::Invalid(format!("K = {k_const} must be positive")));
    }
    let precondition = step_precondition(ch, p, k_const);
    if let Some(row) = precondition.iter().find(|r| !r.pass) {
        return Err(Error::Precondition(format!(
            "codegree condition fails at l = {}: Δ = {} > {}",
            row.ell, row.delta, row.bound
        )));
    }
    let v = ch.host().num_edges();
    let k = ch.copy_uniformity();
    let kpv = ratio_from_u64(k as u64) * p * ratio_from_u64(v as u64);
    let cap = floor_to_uint(&kpv).to_usize().unwrap_or(usize::MAX);
    let mut search = StepSearch {
        edges: ch.hyperedges(),
        incident: (0..v).map(|i| ch.incident(i)).collect(),
        cap,
        containers: BTreeSet::new(),
        fingerprints: 0,
        nodes: 0,
        budget: node_budget,
    };
    let mut state = vec![UNDECIDED; v];
    if search.rec(&mut state, 0).is_err() {
        return Err(Error::BudgetExceeded {
            budget: node_budget.unwrap_or(0),
            progress: format!("{} containers found", search.containers.len()),
        });
    }
    let containers: Vec<Vec<u32>> = search.containers.into_iter().collect();
    let largest = containers.iter().map(Vec::len).max().unwrap_or(0);
    let measured_delta = if v == 0 {
        BigRational::zero()
    } else {
        BigRational::one() - BigRational::new((largest as u64).into(), (v as u64).into())
    };
    let count_bound: BigUint = (0..=cap.min(v)).map(|s| binomial(v as u64, s as u64)).sum();
    let kp = ratio_to_f64(&(ratio_from_u64(k as u64) * p));
    let kpv_f = kp * v as f64;
    let log2_display_bound = if kpv_f > 0.0 { kpv_f * (std::f64::consts::E / kp).log2() } else { 0.0 };
    let count = containers.len();
    Ok(ContainerStepResult {
        count_bound_ok: BigUint::from(count) <= count_bound,
        display_bound_applies: kp <= 1.0,
        display_bound_ok: (count as f64).log2() <= log2_display_bound + 1e-9,
        containers,
        fingerprints: search.fingerprints,
        fingerprint_size_cap: cap,
        measured_delta,
        p: p.clone(),
        k_const: k_const.clone(),
        precondition,
        count_bound,
        log2_display_bound,
    })
}

/// How many copies the builder at each tree node aims for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunTarget {
    /// `min(N, number of copies in G)`.
    Available,
    /// The formula value `N`; typically exceeds the copies available.
    Formula,
}

#[derive(Clone, Debug)]
pub struct ContainerConfig {
    /// Defaults to `2^{2e_H+3}`.
    pub k_const: Option<BigRational>,
    pub gamma: BigRational,
    pub t0: i64,
    pub big_m: BigRational,
    pub run_target: RunTarget,
    pub policy: OrderPolicy,
    /// Cap on tree nodes.
    pub node_budget: Option<u64>,
    /// Cap on decision nodes per container step.
    pub step_budget: Option<u64>,
}

impl ContainerConfig {
    pub fn new(gamma: BigRational, t0: i64, big_m: BigRational) -> Self {
        ContainerConfig {
            k_const: None,
            gamma,
            t0,
            big_m,
            run_target: RunTarget::Available,
            policy: OrderPolicy::Lexicographic,
            node_budget: Some(100_000),
            step_budget: Some(50_000_000),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitStats {
    pub copies_total: usize,
    pub collection_size: usize,
    pub containers: usize,
    pub fingerprint_size_cap: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub p: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub measured_delta: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub count_bound: BigUint,
    pub bound_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    #[serde(serialize_with = "hex_mask")]
    pub mask: u128,
    pub size: usize,
    pub level: i64,
    pub children: Vec<usize>,
    pub leaf: bool,
    /// Why a node above leaf size was not split.
    pub flag: Option<String>,
    pub split: Option<SplitStats>,
}

fn hex_mask<S: serde::Serializer>(m: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{m:x}"))
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainerTree {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub gamma: BigRational,
    pub t0: i64,
    #[serde(rename = "M", serialize_with = "crate::exactnum::as_string")]
    pub big_m: BigRational,
    #[serde(rename = "K", serialize_with = "crate::exactnum::as_string")]
    pub k_const: BigRational,
    /// Leaf size limit `γ^{t_0} M`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub leaf_limit: BigRational,
    pub nodes: Vec<TreeNode>,
    pub complete: bool,
    /// `(parent, child)` pairs whose level did not drop.
    pub level_violations: Vec<(usize, usize)>,
}

struct Sub {
    mask: u128,
    size: usize,
    level: i64,
    flag: Option<String>,
    split: Option<SplitStats>,
    children: Vec<Sub>,
}

struct TreeCtx<'a> {
    n: usize,
    h: &'a Hypergraph,
    universe: Vec<Vec<u32>>,
    cfg: &'a ContainerConfig,
    k_const: BigRational,
    leaf_limit: BigRational,
    count: AtomicU64,
}

impl TreeCtx<'_> {
    fn host(&self, mask: u128) -> Hypergraph {
        let edges: Vec<Vec<u32>> = bits(mask).map(|i| self.universe[i].clone()).collect();
        Hypergraph::new(self.h.uniformity(), self.n, edges).expect("subsets of K_n are valid")
    }

    fn build(&self, mask: u128) -> Result<Sub> {
        let used = self.count.fetch_add(1, Ordering::Relaxed) + 1;
        if self.cfg.node_budget.is_some_and(|b| used > b) {
            return Err(Error::BudgetExceeded {
                budget: self.cfg.node_budget.unwrap_or(0),
                progress: format!("{used} tree nodes"),
            });
        }
        let size = mask.count_ones() as usize;
        let sr = ratio_from_u64(size as u64);
        let level = level_of(&sr, &self.cfg.big_m, &self.cfg.gamma);
        let mut node = Sub { mask, size, level, flag: None, split: None, children: Vec::new() };
        if sr <= self.leaf_limit {
            return Ok(node);
        }
        match self.split(mask, size, &sr) {
            Ok((stats, kids)) => {
                node.split = Some(stats);
                if let Some(&bad) = kids.iter().find(|k| k.count_ones() as usize >= size) {
                    node.flag = Some(format!("non-shrinking split: child of size {}", bad.count_ones()));
                    return Ok(node);
                }
                let built: Vec<Result<Sub>> = kids.par_iter().map(|&k| self.build(k)).collect();
                node.children = built.into_iter().collect::<Result<_>>()?;
            }
            Err(Error::BudgetExceeded { budget, progress }) => return Err(Error::BudgetExceeded { budget, progress }),
            Err(e) => node.flag = Some(e.to_string()),
        }
        Ok(node)
    }

    fn split(&self, mask: u128, size: usize, sr: &BigRational) -> Result<(SplitStats, Vec<u128>)> {
        let g = self.host(mask);
        let all = enumerate_copies(&g, self.h)?;
        if all.is_empty() {
            return Err(Error::Precondition(format!("node with {size} edges contains no copy")));
        }
        let input = ParamInput {
            n: BigUint::from(self.n),
            m: BigUint::from(size),
            big_m: self.cfg.big_m.clone(),
            gamma: self.cfg.gamma.clone(),
            alpha: None,
            t0: self.cfg.t0,
            scale: BigRational::one(),
        };
        let mut params = supersat::derive_params(&input, self.h)?;
        if self.cfg.run_target == RunTarget::Available {
            let avail = floor_to_uint(&params.unscaled_n).min(BigUint::from(all.len()));
            params = params.with_run_target(avail.to_u64().unwrap_or(u64::MAX));
        }
        let copies_total = all.len();
        let coll = match supersat::greedy_build_on(all, &params, self.cfg.policy, &BuildOptions::default())? {
            BuildOutcome::Success(c) => c,
            BuildOutcome::Failure(f, _) => {
                return Err(Error::Invalid(format!(
                    "builder stalled at step {} of {} ({} copies in host)",
                    f.step, params.run_n, f.copies_total
                )))
            }
        };
        let ch = coll.to_copy_hypergraph();
        let p = (&params.b_t / sr).min(BigRational::one());
        let step = container_step(&ch, &p, &self.k_const, self.cfg.step_budget)?;
        let local: Vec<usize> = bits(mask).collect();
        let kids: Vec<u128> =
            step.containers.iter().map(|c| c.iter().fold(0u128, |m, &i| m | 1u128 << local[i as usize])).collect();
        let stats = SplitStats {
            copies_total,
            collection_size: coll.len(),
            containers: kids.len(),
            fingerprint_size_cap: step.fingerprint_size_cap,
            bound_ok: step.bound_ok(),
            p,
            measured_delta: step.measured_delta,
            count_bound: step.count_bound,
        };
        Ok((stats, kids))
    }
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&i| mask >> i & 1 == 1)
}

fn full_mask(len: usize) -> u128 {
    if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

pub fn build_container_tree(n: usize, h: &Hypergraph, cfg: &ContainerConfig) -> Result<ContainerTree> {
    if cfg.gamma <= BigRational::one() {
        return Err(Error::Invalid(format!("gamma = {} must exceed 1", cfg.gamma)));
    }
    if !cfg.big_m.is_positive() || cfg.t0 < 0 {
        return Err(Error::Invalid("M must be positive and t0 nonnegative".into()));
    }
    let r = h.uniformity();
    let universe = combinations(n, r);
    if universe.len() > 128 {
        return Err(Error::TooLarge(format!("C({n},{r}) = {} host edges; the tree supports 128", universe.len())));
    }
    let (p, _) = h.compact();
    let k_const = cfg.k_const.clone().unwrap_or_else(|| pow_i(&ratio_from_u64(2), 2 * p.num_edges() as i64 + 3));
    if !k_const.is_positive() {
        return Err(Error::Invalid("K must be positive".into()));
    }
    let leaf_limit = pow_i(&cfg.gamma, cfg.t0) * &cfg.big_m;
    let ctx = TreeCtx { n, h, universe, cfg, k_const: k_const.clone(), leaf_limit: leaf_limit.clone(), count: AtomicU64::new(0) };
    let root = ctx.build(full_mask(ctx.universe.len()))?;

    let mut nodes = Vec::new();
    fn flatten(s: Sub, parent: Option<usize>, out: &mut Vec<TreeNode>) -> usize {
        let id = out.len();
        out.push(TreeNode {
            id,
            parent,
            mask: s.mask,
            size: s.size,
            level: s.level,
            children: Vec::new(),
            leaf: s.children.is_empty(),
            flag: s.flag,
            split: s.split,
        });
        for c in s.children {
            let cid = flatten(c, Some(id), out);
            out[id].children.push(cid);
        }
        id
    }
    flatten(root, None, &mut nodes);
    let level_violations = nodes
        .iter()
        .flat_map(|nd| nd.children.iter().map(move |&c| (nd.id, c)))
        .filter(|&(a, b)| nodes[b].level >= nodes[a].level)
        .collect();
    Ok(ContainerTree {
        n,
        r,
        gamma: cfg.gamma.clone(),
        t0: cfg.t0,
        big_m: cfg.big_m.clone(),
        k_const,
        complete: nodes.iter().all(|nd| nd.flag.is_none()),
        leaf_limit,
        nodes,
        level_violations,
    })
}

impl ContainerTree {
    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.leaf)
    }

    /// Leaf sizes all within `γ^{t_0} M`.
    pub fn leaves_small(&self) -> bool {
        self.leaves().all(|l| ratio_from_u64(l.size as u64) <= self.leaf_limit)
    }

    /// Drops a leaf (for adversarial coverage tests).
    pub fn remove_leaf(&mut self, id: usize) -> Result<()> {
        if !self.nodes.get(id).is_some_and(|n| n.leaf) {
            return Err(Error::Invalid(format!("node {id} is not a leaf")));
        }
        self.nodes[id].leaf = false;
        self.nodes[id].flag = Some("removed".into());
        Ok(())
    }

    pub fn split_nodes(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.split.is_some() && !n.children.is_empty())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            schema: u32,
            #[serde(flatten)]
            tree: &'a ContainerTree,
        }
        serde_json::to_string_pretty(&Doc { schema: 1, tree: self }).expect("tree serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph containers {\n  node [shape=box];\n");
        for nd in &self.nodes {
            let style = match (&nd.flag, nd.leaf) {
                (Some(_), _) => ", color=red",
                (None, true) => ", style=rounded",
                _ => "",
            };
            s.push_str(&format!("  n{} [label=\"|G|={} t={}\\n{:x}\"{}];\n", nd.id, nd.size, nd.level, nd.mask, style));
            for c in &nd.children {
                s.push_str(&format!("  n{} -> n{};\n", nd.id, c));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub exhaustive: bool,
    pub checked: u64,
    pub h_free: u64,
    pub covered: bool,
    /// Edges of the first H-free host not inside any leaf.
    pub counterexample: Option<Vec<Vec<u32>>>,
}

fn copy_masks(n: usize, h: &Hypergraph) -> Result<Vec<u128>> {
    let k = Hypergraph::complete(n, h.uniformity());
    Ok(enumerate_copies(&k, h)?.hyperedges().iter().map(|e| e.iter().fold(0u128, |m, &i| m | 1u128 << i)).collect())
}

fn coverage_of(tree: &ContainerTree, h: &Hypergraph, hosts: impl ParallelIterator<Item = u128>, exhaustive: bool) -> Result<CoverageReport> {
    let copies = copy_masks(tree.n, h)?;
    let leaves: Vec<u128> = tree.leaves().map(|l| l.mask).collect();
    let universe = combinations(tree.n, tree.r);
    let free = |s: u128| copies.iter().all(|&c| c & !s != 0);
    let rows: Vec<(u128, bool)> = hosts
        .filter(|&s| free(s))
        .map(|s| (s, leaves.iter().any(|&l| s & !l == 0)))
        .collect();
    let miss = rows.iter().filter(|r| !r.1).map(|r| r.0).min();
    Ok(CoverageReport {
        exhaustive,
        checked: 0,
        h_free: rows.len() as u64,
        covered: miss.is_none(),
        counterexample: miss.map(|m| bits(m).map(|i| universe[i].clone()).collect()),
    })
}

/// Every H-free subgraph of `K_n^{(r)}` must lie inside some leaf.
pub fn coverage_check(tree: &ContainerTree, h: &Hypergraph) -> Result<CoverageReport> {
    let len = binomial(tree.n as u64, tree.r as u64).to_usize().unwrap_or(usize::MAX);
    if len > 24 {
        return Err(Error::TooLarge(format!("{len} host edges; exhaustive coverage supports 24")));
    }
    let mut rep = coverage_of(tree, h, (0..1u128 << len).into_par_iter(), true)?;
    rep.checked = 1 << len;
    Ok(rep)
}

/// Coverage restricted to the given hosts (edge masks over `K_n^{(r)}`).
pub fn coverage_check_sample(tree: &ContainerTree, h: &Hypergraph, hosts: &[u128]) -> Result<CoverageReport> {
    let mut rep = coverage_of(tree, h, hosts.par_iter().copied(), false)?;
    rep.checked = hosts.len() as u64;
    Ok(rep)
}

/// Random H-free hosts: greedy insertion in a random order, then each edge
/// is kept with probability 1/2.
pub fn random_h_free_hosts(n: usize, h: &Hypergraph, count: usize, seed: u64) -> Result<Vec<u128>> {
    let copies = copy_masks(n, h)?;
    let len = binomial(n as u64, h.uniformity() as u64).to_usize().unwrap_or(usize::MAX);
    if len > 128 {
        return Err(Error::TooLarge(format!("{len} host edges")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut order: Vec<usize> = (0..len).collect();
        order.shuffle(&mut rng);
        let mut s = 0u128;
        for i in order {
            let t = s | 1u128 << i;
            if copies.iter().all(|&c| c & !t != 0) {
                s = t;
            }
        }
        let keep: u128 = (0..len).filter(|_| rng.gen_bool(0.5)).fold(0, |m, i| m | 1u128 << i);
        out.push(if rng.gen_bool(0.5) { s } else { s & keep });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafCountBound {
    /// `log2 Π_{t=t_0}^{T} (e γ^{t+1} M / (e_H b_t))^{e_H b_t}`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_leaves: f64,
    /// `log2(#leaves) + γ^{t_0} M`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_enumeration: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate_vec")]
    pub terms: Vec<f64>,
}

pub fn leaf_count_bound(gamma: f64, big_m: f64, e_h: usize, t0: i64, t_max: i64) -> Result<LeafCountBound> {
    if !(gamma > 1.0) || !(big_m > 0.0) || e_h == 0 {
        return Err(Error::Invalid("leaf-count bound needs gamma > 1, M > 0, e_H >= 1".into()));
    }
    let k = e_h as f64;
    let terms: Vec<f64> = (t0..=t_max)
        .map(|t| {
            let b = big_m / ((t + 1) as f64).powi(3);
            k * b * (std::f64::consts::LOG2_E + (t + 1) as f64 * gamma.log2() + big_m.log2() - (k * b).log2())
        })
        .collect();
    // Compensated summation keeps long products stable.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in &terms {
        let y = x - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(LeafCountBound { log2_leaves: sum, log2_enumeration: sum + gamma.powi(t0 as i32) * big_m, terms })
}
