//! Exact extremal numbers and H-free counts over edge subsets of
//! `K_n^{(r)}`, the trivial counting bounds, extremal-number tables and the
//! growth-hypothesis scanners built on them.
//!
//! Hosts are bitmasks over the lexicographically ordered edges of
//! `K_n^{(r)}`, so the search is limited to `C(n, r) <= 128`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copyindex::{contains_copy, enumerate_copies};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, ratio_to_f64};
use crate::hypercore::{combinations, parse_text, r_density, Hypergraph};

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub node_budget: Option<u64>,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: None, parallel: true }
    }
}

/// Copies of `H` in `K_n^{(r)}` as edge masks, bucketed by their largest
/// edge index.
struct Universe {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
    by_max: Vec<Vec<u128>>,
    all: Vec<u128>,
}

impl Universe {
    fn new(n: usize, h: &Hypergraph) -> Result<Self> {
        let r = h.uniformity();
        if n < r {
            return Err(Error::Precondition(format!("n = {n} is below the uniformity {r}")));
        }
        if h.num_edges() == 0 {
            return Err(Error::Precondition("pattern has no edges".into()));
        }
        let total = binomial(n as u64, r as u64);
        if total > BigUint::from(128u32) {
            return Err(Error::TooLarge(format!("C({n}, {r}) = {total} edges exceeds 128")));
        }
        let host = Hypergraph::complete(n, r);
        let ch = enumerate_copies(&host, h)?;
        let mut by_max = vec![Vec::new(); host.num_edges()];
        let mut all = Vec::with_capacity(ch.len());
        for e in ch.hyperedges() {
            let mask = e.iter().fold(0u128, |m, &i| m | 1u128 << i);
            by_max[*e.last().expect("copies are nonempty") as usize].push(mask);
            all.push(mask);
        }
        Ok(Universe { n, r, edges: host.edges().to_vec(), by_max, all })
    }

    fn len(&self) -> usize {
        self.edges.len()
    }

    fn can_add(&self, mask: u128, i: usize) -> bool {
        let with = mask | 1u128 << i;
        self.by_max[i].iter().all(|&c| c & !with != 0)
    }

    fn to_hypergraph(&self, mask: u128) -> Hypergraph {
        let edges = (0..self.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.edges[i].clone()).collect();
        Hypergraph::from_sorted_unchecked(self.r, self.n, edges)
    }
}

struct Budget<'a> {
    shared: &'a AtomicU64,
    limit: Option<u64>,
    local: u64,
    tripped: &'a AtomicBool,
}

impl Budget<'_> {
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == 4096 {
            self.shared.fetch_add(4096, Ordering::Relaxed);
            self.local = 0;
        }
        if let Some(l) = self.limit {
            if self.shared.load(Ordering::Relaxed) + self.local > l {
                self.tripped.store(true, Ordering::Relaxed);
            }
        }
        !self.tripped.load(Ordering::Relaxed)
    }
}

impl Drop for Budget<'_> {
    fn drop(&mut self) {
        self.shared.fetch_add(self.local, Ordering::Relaxed);
    }
}

fn budget_error(limit: Option<u64>, what: &str) -> Error {
    Error::BudgetExceeded { budget: limit.unwrap_or(0), progress: what.to_string() }
}

/// Exact `ex(n, H)` with a canonical witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub value: usize,
    pub witness: Hypergraph,
}

pub fn extremal_number(n: usize, h: &Hypergraph) -> Result<Extremal> {
    extremal_number_with(n, h, SearchConfig::default())
}

pub fn extremal_number_with(n: usize, h: &Hypergraph, cfg: SearchConfig) -> Result<Extremal> {
    let u = Universe::new(n, h)?;
    let upper = vertex_averaging_bound(n, h, cfg)?;
    extremal_in(&u, upper, cfg)
}

/// `ex(n) <= floor(n ex(n-1) / (n - r))`: every edge survives exactly
/// `n - r` of the `n` single-vertex deletions.
fn vertex_averaging_bound(n: usize, h: &Hypergraph, cfg: SearchConfig) -> Result<usize> {
    let r = h.uniformity();
    let (p, _) = h.compact();
    let trivial = binomial(n as u64, r as u64).to_usize().unwrap_or(usize::MAX);
    if n <= p.n_vertices() || n == r {
        return Ok(trivial);
    }
    let prev = extremal_number_with(n - 1, h, cfg)?.value;
    Ok((n * prev / (n - r)).min(trivial))
}

fn extremal_in(u: &Universe, upper: usize, cfg: SearchConfig) -> Result<Extremal> {
    let e = u.len();
    let shared = AtomicU64::new(0);
    let tripped = AtomicBool::new(false);
    let best = AtomicUsize::new(0);

    fn value_dfs(u: &Universe, i: usize, mask: u128, count: usize, upper: usize, best: &AtomicUsize, b: &mut Budget) {
        if !b.tick() {
            return;
        }
        let cur = best.load(Ordering::Relaxed);
        if cur >= upper || count + (u.len() - i) <= cur {
            return;
        }
        if i == u.len() {
            best.fetch_max(count, Ordering::Relaxed);
            return;
        }
        if u.can_add(mask, i) {
            value_dfs(u, i + 1, mask | 1u128 << i, count + 1, upper, best, b);
        }
        value_dfs(u, i + 1, mask, count, upper, best, b);
    }

    // Expand a prefix of decisions into independent subtrees.
    let split = if cfg.parallel { e.min(10) } else { 0 };
    let mut frontier = vec![(0u128, 0usize)];
    for i in 0..split {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for &(mask, count) in &frontier {
            if u.can_add(mask, i) {
                next.push((mask | 1u128 << i, count + 1));
            }
            next.push((mask, count));
        }
        frontier = next;
    }
    let run = |&(mask, count): &(u128, usize)| {
        let mut b = Budget { shared: &shared, limit: cfg.node_budget, local: 0, tripped: &tripped };
        value_dfs(u, split, mask, count, upper, &best, &mut b);
    };
    if cfg.parallel {
        frontier.par_iter().for_each(run);
    } else {
        frontier.iter().for_each(run);
    }
    if tripped.load(Ordering::Relaxed) {
        return Err(budget_error(cfg.node_budget, &format!("best value so far {}", best.load(Ordering::Relaxed))));
    }
    let value = best.load(Ordering::Relaxed);

    // Canonical witness: first maximum host in include-first order.
    fn witness_dfs(u: &Universe, i: usize, mask: u128, count: usize, target: usize, b: &mut Budget) -> Option<u128> {
        if !b.tick() || count + (u.len() - i) < target {
            return None;
        }
        if count == target {
            return Some(mask);
        }
        if u.can_add(mask, i) {
            if let Some(m) = witness_dfs(u, i + 1, mask | 1u128 << i, count + 1, target, b) {
                return Some(m);
            }
        }
        witness_dfs(u, i + 1, mask, count, target, b)
    }
    let mut b = Budget { shared: &shared, limit: cfg.node_budget, local: 0, tripped: &tripped };
    let mask = witness_dfs(u, 0, 0, 0, value, &mut b);
    match mask {
        Some(mask) => Ok(Extremal { value, witness: u.to_hypergraph(mask) }),
        None if tripped.load(Ordering::Relaxed) => Err(budget_error(cfg.node_budget, &format!("value {value}, witness search"))),
        None => unreachable!("a host attaining the maximum exists"),
    }
}

/// `|F_n(H)|` with the trivial bounds `2^ex <= |F| <= sum_{k <= ex} C(C(n,r), k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub n: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub count: BigUint,
    pub ex: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub lower: BigUint,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub upper: BigUint,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl CountResult {
    pub fn passes(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

pub fn count_h_free(n: usize, h: &Hypergraph) -> Result<CountResult> {
    count_h_free_with(n, h, SearchConfig::default())
}

pub fn count_h_free_with(n: usize, h: &Hypergraph, cfg: SearchConfig) -> Result<CountResult> {
    let u = Universe::new(n, h)?;
    if u.len() > 127 {
        return Err(Error::TooLarge(format!("{} host edges for counting", u.len())));
    }
    let shared = AtomicU64::new(0);
    let tripped = AtomicBool::new(false);
    let mut b = Budget { shared: &shared, limit: cfg.node_budget, local: 0, tripped: &tripped };

    // Copies sorted by largest edge, so the live ones at step i form a suffix.
    let mut order: Vec<(usize, u128)> = u.all.iter().map(|&c| (127 - c.leading_zeros() as usize, c)).collect();
    order.sort();
    let starts: Vec<usize> = (0..=u.len()).map(|i| order.partition_point(|&(mx, _)| mx < i)).collect();

    fn dfs(
        u: &Universe,
        order: &[(usize, u128)],
        starts: &[usize],
        i: usize,
        incl: u128,
        excl: u128,
        b: &mut Budget,
    ) -> u128 {
        if !b.tick() {
            return 0;
        }
        // No copy can still be completed: every remaining choice is free.
        if order[starts[i]..].iter().all(|&(_, c)| c & excl != 0) {
            return 1u128 << (u.len() - i);
        }
        let bit = 1u128 << i;
        let mut total = dfs(u, order, starts, i + 1, incl, excl | bit, b);
        if u.can_add(incl, i) {
            total += dfs(u, order, starts, i + 1, incl | bit, excl, b);
        }
        total
    }
    let count = dfs(&u, &order, &starts, 0, 0, 0, &mut b);
    if tripped.load(Ordering::Relaxed) {
        return Err(budget_error(cfg.node_budget, "counting aborted"));
    }
    let ex = extremal_number_with(n, h, cfg)?.value;
    Ok(bounds_for(n, h.uniformity(), BigUint::from(count), ex))
}

fn bounds_for(n: usize, r: usize, count: BigUint, ex: usize) -> CountResult {
    let total = binomial(n as u64, r as u64).to_u64().expect("host edge count fits");
    let lower = BigUint::one() << ex;
    let upper = (0..=ex as u64).map(|k| binomial(total, k)).sum::<BigUint>();
    CountResult { n, lower_ok: lower <= count, upper_ok: count <= upper, count, ex, lower, upper }
}

/// Both sides of the trivial bounds together with the exact count.
pub fn verify_trivial_bounds(n: usize, h: &Hypergraph) -> Result<CountResult> {
    count_h_free(n, h)
}

/// Exact values `ex(s, H)` over a contiguous range of `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExTable {
    pattern: Hypergraph,
    values: BTreeMap<usize, u64>,
    witnesses: BTreeMap<usize, Hypergraph>,
    pub separation_epsilon: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ExTableJson {
    schema: u32,
    pattern: String,
    values: BTreeMap<String, u64>,
    witnesses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    separation_epsilon: Option<f64>,
}

impl ExTable {
    pub fn new(pattern: &Hypergraph) -> Self {
        ExTable {
            pattern: pattern.clone(),
            values: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            separation_epsilon: None,
        }
    }

    /// Computes `ex(s, H)` for every `s` in `lo..=hi` (`lo >= r`).
    pub fn compute(pattern: &Hypergraph, lo: usize, hi: usize, cfg: SearchConfig) -> Result<Self> {
        let mut t = ExTable::new(pattern);
        for s in lo.max(pattern.uniformity())..=hi {
            let ex = extremal_number_with(s, pattern, cfg)?;
            t.insert(s, ex.value as u64, Some(ex.witness))?;
        }
        Ok(t)
    }

    /// Values without witnesses, e.g. synthetic tables for the scanners.
    pub fn from_values(pattern: &Hypergraph, values: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut t = ExTable::new(pattern);
        t.values.extend(values);
        t
    }

    pub fn insert(&mut self, s: usize, value: u64, witness: Option<Hypergraph>) -> Result<()> {
        if let Some(w) = &witness {
            if w.num_edges() as u64 != value || w.n_vertices() != s || contains_copy(w, &self.pattern) {
                return Err(Error::Invalid(format!("witness for s = {s} is not an H-free host with {value} edges")));
            }
            self.witnesses.insert(s, w.clone());
        }
        self.values.insert(s, value);
        Ok(())
    }

    pub fn pattern(&self) -> &Hypergraph {
        &self.pattern
    }

    pub fn stored(&self) -> &BTreeMap<usize, u64> {
        &self.values
    }

    pub fn witness(&self, s: usize) -> Option<&Hypergraph> {
        self.witnesses.get(&s)
    }

    /// Largest `s` with a stored value.
    pub fn max_s(&self) -> Option<usize> {
        self.values.keys().next_back().copied()
    }

    /// `ex(s, H)`: stored value, else 0 below `r` and `C(s, r)` below `v_H`.
    pub fn value(&self, s: usize) -> Result<u64> {
        if let Some(&v) = self.values.get(&s) {
            return Ok(v);
        }
        let r = self.pattern.uniformity();
        if s < r {
            return Ok(0);
        }
        if s < self.pattern.spanned_vertices().len() {
            return binomial(s as u64, r as u64).to_u64().ok_or(Error::TooLarge("binomial".into()));
        }
        Err(Error::MissingEntry(s))
    }

    /// Values nondecreasing in `s` and every witness H-free with the stated size.
    pub fn validate(&self) -> Result<()> {
        let vals: Vec<(&usize, &u64)> = self.values.iter().collect();
        if let Some(w) = vals.windows(2).find(|w| w[1].1 < w[0].1) {
            return Err(Error::Invalid(format!("ex decreases from s = {} to s = {}", w[0].0, w[1].0)));
        }
        for (&s, w) in &self.witnesses {
            if contains_copy(w, &self.pattern) || Some(&(w.num_edges() as u64)) != self.values.get(&s) {
                return Err(Error::Invalid(format!("bad witness at s = {s}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let j = ExTableJson {
            schema: 1,
            pattern: self.pattern.to_text(),
            values: self.values.iter().map(|(s, v)| (s.to_string(), *v)).collect(),
            witnesses: self.witnesses.iter().map(|(s, w)| (s.to_string(), w.to_text())).collect(),
            separation_epsilon: self.separation_epsilon,
        };
        serde_json::to_string_pretty(&j).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ExTableJson = serde_json::from_str(text)?;
        if j.schema != 1 {
            return Err(Error::Invalid(format!("unsupported table schema {}", j.schema)));
        }
        let key = |s: &String| s.parse::<usize>().map_err(|_| Error::Invalid(format!("bad table key {s:?}")));
        let mut t = ExTable::new(&parse_text(&j.pattern)?);
        t.separation_epsilon = j.separation_epsilon;
        for (s, v) in &j.values {
            t.values.insert(key(s)?, *v);
        }
        for (s, w) in &j.witnesses {
            t.witnesses.insert(key(s)?, parse_text(w)?);
        }
        t.validate()?;
        Ok(t)
    }
}

/// Relative guard band for floating comparisons near ties.
const GUARD: f64 = 1.0 / (1u64 << 40) as f64;

fn leq_guarded(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + GUARD) + f64::MIN_POSITIVE
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalM {
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub value: f64,
    /// The `s` attaining the maximum.
    pub argmax: usize,
}

/// Least `M` with `ex(s, H) <= M (s/n)^alpha` for all `r <= s <= n`.
pub fn hypothesis_minimal_m(table: &ExTable, n: usize, alpha: &BigRational) -> Result<MinimalM> {
    let r = table.pattern.uniformity();
    if n < r {
        return Err(Error::Precondition(format!("n = {n} is below r = {r}")));
    }
    let a = ratio_to_f64(alpha);
    let mut best = MinimalM { value: 0.0, argmax: r };
    for s in r..=n {
        let v = table.value(s)? as f64 * (n as f64 / s as f64).powf(a);
        if v > best.value {
            best = MinimalM { value: v, argmax: s };
        }
    }
    Ok(best)
}

/// Every `n` for which `M = ex(n, H)` already satisfies the hypothesis.
pub fn find_good_n(table: &ExTable, alpha: &BigRational) -> Vec<usize> {
    let r = table.pattern.uniformity();
    let a = ratio_to_f64(alpha);
    let Some(hi) = table.max_s() else { return Vec::new() };
    let mut good = Vec::new();
    for n in r..=hi {
        let Ok(exn) = table.value(n) else { break };
        let ok = (r..=n).all(|s| match table.value(s) {
            Ok(v) => leq_guarded(v as f64, exn as f64 * (s as f64 / n as f64).powf(a)),
            Err(_) => false,
        });
        if ok {
            good.push(n);
        }
    }
    good
}

/// The plain and log-enhanced lower-bound expressions for `ex(n, H)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundFormulas {
    /// `r - 1/m_r(H)`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub exponent: Rational64,
    /// `c n^{r - 1/m_r}`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub plain: f64,
    /// `c n^{r - 1/m_r} (ln n)^{1/(e_H - 1)}`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub with_log: f64,
}

pub fn lower_bound_formulas(n: f64, h: &Hypergraph, c: f64) -> Result<LowerBoundFormulas> {
    let m = r_density(h)?.value;
    let exponent = Rational64::from_integer(h.uniformity() as i64) - m.recip();
    let e = *exponent.numer() as f64 / *exponent.denom() as f64;
    let plain = c * n.powf(e);
    let eh = h.num_edges() as f64;
    Ok(LowerBoundFormulas { exponent, plain, with_log: plain * n.ln().powf(1.0 / (eh - 1.0)) })
}

/// The pigeonhole bound `floor(C(n, l) / C(r, l))` for two-edge patterns
/// whose edges meet in `l` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PigeonholeBound {
    pub ell: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bound: BigUint,
    /// Only for `l = r - 1` does sharing an `l`-set force an intersection of
    /// exactly `l` vertices, so only then is `bound` an upper bound on `ex`.
    pub valid_upper_bound: bool,
}

pub fn pigeonhole_two_edge_bound(n: usize, h: &Hypergraph) -> Result<PigeonholeBound> {
    if h.num_edges() != 2 {
        return Err(Error::Precondition(format!("pattern has {} edges, expected 2", h.num_edges())));
    }
    let (a, b) = (h.edge(0), h.edge(1));
    let ell = a.iter().filter(|v| b.contains(v)).count();
    let r = h.uniformity();
    let bound = binomial(n as u64, ell as u64) / binomial(r as u64, ell as u64);
    Ok(PigeonholeBound { ell, bound, valid_upper_bound: ell + 1 == r })
}

/// All hosts on `K_n^{(r)}` as edge masks, for the oracles in tests.
#[doc(hidden)]
pub fn host_from_mask(n: usize, r: usize, mask: u128) -> Hypergraph {
    let edges: Vec<Vec<u32>> =
        combinations(n, r).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Hypergraph::from_sorted_unchecked(r, n, edges)
}
