//! Lower bounds through random hosts: sample `G^{(r)}_{n,m}`, delete
//! overlapping copies and high-degree edges, and take a greedy independent
//! set of what remains. Also evaluates the resulting counting bound.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::copyindex::{automorphism_count, contains_copy, enumerate_copies_with, CopyHypergraph, EnumConfig};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, binomial_u128, log2_binomial, ratio_from_u64, ratio_from_uint, ratio_to_f64};
use crate::hypercore::{is_strictly_r_balanced, r_density, Hypergraph};

/// Deterministic per-trial seed stream.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    splitmix64(seed ^ trial as u64)
}

/// The `rank`-th `r`-subset of `0..n` in lexicographic order.
fn unrank(n: usize, r: usize, mut rank: u128) -> Vec<u32> {
    let mut out = Vec::with_capacity(r);
    let mut c = 0usize;
    for pos in 0..r {
        loop {
            let below = binomial_u128((n - c - 1) as u64, (r - pos - 1) as u64).expect("fits");
            if rank < below {
                break;
            }
            rank -= below;
            c += 1;
        }
        out.push(c as u32);
        c += 1;
    }
    out
}

/// A uniformly random `m`-edge `r`-uniform hypergraph on `n` vertices.
pub fn sample_gnm(n: usize, r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    let total = binomial_u128(n as u64, r as u64)
        .and_then(|t| usize::try_from(t).ok())
        .ok_or_else(|| Error::TooLarge(format!("C({n},{r}) r-sets")))?;
    if m > total {
        return Err(Error::Invalid(format!("m = {m} exceeds C({n},{r}) = {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<u32>> =
        rand::seq::index::sample(&mut rng, total, m).into_iter().map(|k| unrank(n, r, k as u128)).collect();
    Hypergraph::new(r, n, edges)
}

/// When two copies conflict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overlap {
    /// They share at least two host edges (vertices of the copy hypergraph).
    CopyEdges,
    /// They share at least two host vertices.
    HostVertices,
}

/// A copy hypergraph induced on a subset of the input's vertices.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub ch: CopyHypergraph,
    /// Input vertex (host edge) index of each output vertex.
    pub kept: Vec<u32>,
    /// Input vertices deleted.
    pub removed: Vec<u32>,
    /// Input hyperedges that did not survive.
    pub copies_removed: usize,
}

fn induce(ch: &CopyHypergraph, removed: &HashSet<u32>) -> Reduced {
    let host = ch.host();
    let kept: Vec<u32> = (0..host.num_edges() as u32).filter(|i| !removed.contains(i)).collect();
    let mut new_index = vec![u32::MAX; host.num_edges()];
    for (j, &i) in kept.iter().enumerate() {
        new_index[i as usize] = j as u32;
    }
    let sub = Hypergraph::new(host.uniformity(), host.n_vertices(), kept.iter().map(|&i| host.edge(i as usize).to_vec()))
        .expect("subgraph of a valid host");
    let survivors: Vec<Vec<u32>> = ch
        .hyperedges()
        .iter()
        .filter(|e| e.iter().all(|v| !removed.contains(v)))
        .map(|e| e.iter().map(|&v| new_index[v as usize]).collect())
        .collect();
    let copies_removed = ch.len() - survivors.len();
    let mut removed: Vec<u32> = removed.iter().copied().collect();
    removed.sort_unstable();
    Reduced {
        ch: CopyHypergraph::from_hyperedges(sub, ch.pattern(), survivors).expect("surviving copies are valid"),
        kept,
        removed,
        copies_removed,
    }
}

fn overlap_keys(ch: &CopyHypergraph, e: &[u32], overlap: Overlap) -> Vec<(u32, u32)> {
    let items: Vec<u32> = match overlap {
        Overlap::CopyEdges => e.to_vec(),
        Overlap::HostVertices => {
            let mut vs: Vec<u32> = e.iter().flat_map(|&i| ch.host().edge(i as usize).iter().copied()).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        }
    };
    let mut keys = Vec::new();
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            keys.push((items[a], items[b]));
        }
    }
    keys
}

/// Scans copies in canonical order; a copy overlapping an earlier surviving
/// copy loses its largest-index host edge not shared with that copy. The
/// result is induced, so its independent sets stay H-free in the host.
pub fn linearize(ch: &CopyHypergraph, overlap: Overlap) -> Reduced {
    let mut removed: HashSet<u32> = HashSet::new();
    let mut seen: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    let alive = |e: &[u32], removed: &HashSet<u32>| e.iter().all(|v| !removed.contains(v));
    for (j, e) in ch.hyperedges().iter().enumerate() {
        if !alive(e, &removed) {
            continue;
        }
        let keys = overlap_keys(ch, e, overlap);
        let conflict = keys
            .iter()
            .filter_map(|k| seen.get(k))
            .flatten()
            .copied()
            .find(|&i| alive(&ch.hyperedges()[i], &removed));
        match conflict {
            Some(i) => {
                let other = &ch.hyperedges()[i];
                let victim = e.iter().rev().find(|v| other.binary_search(v).is_err()).expect("distinct copies");
                removed.insert(*victim);
            }
            None => {
                for k in keys {
                    seen.entry(k).or_default().push(j);
                }
            }
        }
    }
    induce(ch, &removed)
}

/// Removes every vertex whose degree exceeds `threshold`, in one pass.
pub fn prune_high_degree(ch: &CopyHypergraph, threshold: f64) -> Reduced {
    let removed: HashSet<u32> =
        (0..ch.host().num_edges() as u32).filter(|&v| ch.degree(v as usize) as f64 > threshold).collect();
    induce(ch, &removed)
}

/// `C n^{v_H - r} p^{e_H - 1}` with `p = m / C(n, r)`.
pub fn degree_threshold(n: usize, m: usize, h: &Hypergraph, c_const: f64) -> f64 {
    let (p, _) = h.compact();
    let prob = m as f64 / ratio_to_f64(&ratio_from_uint(&binomial(n as u64, p.uniformity() as u64)));
    c_const * (n as f64).powi((p.n_vertices() - p.uniformity()) as i32) * prob.powi(p.num_edges() as i32 - 1)
}

/// First pair of hyperedges sharing two or more vertices.
pub fn first_nonlinear_pair(ch: &CopyHypergraph) -> Option<(usize, usize)> {
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();
    for (j, e) in ch.hyperedges().iter().enumerate() {
        for k in overlap_keys(ch, e, Overlap::CopyEdges) {
            if let Some(&i) = seen.get(&k) {
                return Some((i, j));
            }
            seen.insert(k, j);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedyReport {
    pub set: Vec<u32>,
    pub size: usize,
    pub vertices: usize,
    pub hyperedges: usize,
    pub uniformity: usize,
    pub max_degree: usize,
    /// `v - (k-1) e`.
    pub trivial_bound: i64,
    /// `c v (ln D / D)^{1/(k-1)}`, reported for `k >= 3` and `D > 1`.
    #[serde(serialize_with = "crate::exactnum::as_estimate_opt")]
    pub dlr_bound: Option<f64>,
}

/// Maximal independent set, scanning vertices by increasing degree.
pub fn greedy_independent_set(ch: &CopyHypergraph, c_const: f64) -> Result<GreedyReport> {
    if let Some((i, j)) = first_nonlinear_pair(ch) {
        return Err(Error::NotLinear(i, j));
    }
    let v = ch.host().num_edges();
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&x| (ch.degree(x), x));
    let mut chosen = vec![false; v];
    for x in order {
        let completes = ch.incident(x).iter().any(|&e| {
            ch.hyperedges()[e as usize].iter().all(|&y| y as usize == x || chosen[y as usize])
        });
        if !completes {
            chosen[x] = true;
        }
    }
    let set: Vec<u32> = (0..v as u32).filter(|&x| chosen[x as usize]).collect();
    let k = ch.copy_uniformity();
    let d = (0..v).map(|x| ch.degree(x)).max().unwrap_or(0);
    let dlr_bound = (k >= 3 && d > 1).then(|| {
        let df = d as f64;
        c_const * v as f64 * (df.ln() / df).powf(1.0 / (k as f64 - 1.0))
    });
    Ok(GreedyReport {
        size: set.len(),
        set,
        vertices: v,
        hyperedges: ch.len(),
        uniformity: k,
        max_degree: d,
        trivial_bound: v as i64 - (k as i64 - 1) * ch.len() as i64,
        dlr_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionConfig {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub trials: usize,
    /// Degree-cap constant; defaults to `16 e_H`.
    pub big_c: Option<f64>,
    /// Constant in the independence-number bound.
    pub small_c: f64,
    /// Constant in the target `δ n^{r-1/m_r} (ln(m / n^{r-1/m_r}))^{1/(e_H-1)}`.
    pub delta: f64,
    pub overlap: Overlap,
    /// Warn when `m > n^{r - 1/m_r + ε}`.
    pub eps: Option<f64>,
    pub enum_budget: Option<u64>,
}

impl DeletionConfig {
    pub fn new(n: usize, m: usize, seed: u64, trials: usize) -> Self {
        DeletionConfig {
            n,
            m,
            seed,
            trials,
            big_c: None,
            small_c: 1.0,
            delta: 1.0,
            overlap: Overlap::CopyEdges,
            eps: None,
            enum_budget: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub copies_total: usize,
    pub overlap_edges_removed: usize,
    pub overlapping_copies_removed: usize,
    pub high_degree_removed: usize,
    pub final_vertices: usize,
    pub final_copies: usize,
    pub max_degree: usize,
    pub greedy_size: usize,
    pub trivial_bound: i64,
    #[serde(serialize_with = "crate::exactnum::as_estimate_opt")]
    pub dlr_bound: Option<f64>,
    pub linear_ok: bool,
    pub degree_ok: bool,
    pub independent_ok: bool,
    /// Selected host edges, as indices into the sampled host.
    #[serde(skip)]
    pub selected: Vec<u32>,
}

impl TrialRow {
    pub fn checks_pass(&self) -> bool {
        self.linear_ok && self.degree_ok && self.independent_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapCheck {
    /// `Σ_{F ⊊ H, e_F >= 2} p^{2e_H - e_F} n^{2v_H - v_F}` over subgraph shapes.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub pairs_bound: f64,
    /// `p n^r`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub scale: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionReport {
    pub config: DeletionConfig,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub p: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub degree_threshold: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub target: f64,
    pub trials: Vec<TrialRow>,
    pub median_size: f64,
    pub quartiles: (f64, f64),
    pub min_size: usize,
    pub max_size: usize,
    pub trials_meeting_trivial: usize,
    pub all_checks_pass: bool,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub mean_copies: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub copies_std_error: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub expected_copies: f64,
    pub overlap_check: OverlapCheck,
    pub warnings: Vec<String>,
}

/// `E[#copies of H in G_{n,m}] = C(n, v_H) (v_H!/|Aut H|) Π_{i<e_H} (m-i)/(C(n,r)-i)`.
pub fn expected_copies(n: usize, m: usize, h: &Hypergraph) -> BigRational {
    let (p, _) = h.compact();
    let big_n = binomial(n as u64, p.uniformity() as u64);
    let labelled = (1..=p.n_vertices() as u64).product::<u64>() / automorphism_count(&p);
    let mut out = ratio_from_uint(&binomial(n as u64, p.n_vertices() as u64)) * ratio_from_u64(labelled);
    for i in 0..p.num_edges() {
        let num = m as i64 - i as i64;
        if num <= 0 {
            return BigRational::from_integer(0.into());
        }
        out *= ratio_from_u64(num as u64) / (ratio_from_uint(&big_n) - ratio_from_u64(i as u64));
    }
    out
}

pub fn overlap_check(n: usize, m: usize, h: &Hypergraph) -> OverlapCheck {
    let (pat, _) = h.compact();
    let r = pat.uniformity();
    let k = pat.num_edges();
    let prob = m as f64 / ratio_to_f64(&ratio_from_uint(&binomial(n as u64, r as u64)));
    let nf = n as f64;
    let mut shapes = HashSet::new();
    for mask in 1u32..(1 << k) - 1 {
        let idx: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
        if idx.len() >= 2 {
            shapes.insert((idx.len(), pat.edge_subgraph(&idx).spanned_vertices().len()));
        }
    }
    let mut shapes: Vec<_> = shapes.into_iter().collect();
    shapes.sort();
    let pairs_bound: f64 = shapes
        .iter()
        .map(|&(e, v)| prob.powi((2 * k - e) as i32) * nf.powi((2 * pat.n_vertices() - v) as i32))
        .sum();
    let scale = prob * nf.powi(r as i32);
    OverlapCheck { pairs_bound, scale, ratio: pairs_bound / scale }
}

fn quantile(sorted: &[usize], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] as f64 + (sorted[hi] as f64 - sorted[lo] as f64) * (pos - lo as f64)
}

fn run_trial(cfg: &DeletionConfig, h: &Hypergraph, threshold: f64, trial: usize) -> Result<TrialRow> {
    let seed = trial_seed(cfg.seed, trial);
    let g = sample_gnm(cfg.n, h.uniformity(), cfg.m, seed)?;
    let ecfg = EnumConfig { node_budget: cfg.enum_budget, parallel: false };
    let ch = enumerate_copies_with(&g, h, ecfg)?;
    let lin = linearize(&ch, cfg.overlap);
    let pruned = prune_high_degree(&lin.ch, threshold);
    let greedy = greedy_independent_set(&pruned.ch, cfg.small_c)?;
    let selected: Vec<u32> =
        greedy.set.iter().map(|&x| lin.kept[pruned.kept[x as usize] as usize]).collect();
    let sub = Hypergraph::new(g.uniformity(), g.n_vertices(), selected.iter().map(|&i| g.edge(i as usize).to_vec()))?;
    let fin = &pruned.ch;
    let linear_ok = all_pairs_linear(fin, cfg.overlap);
    let degree_ok = (0..fin.host().num_edges()).all(|v| fin.degree(v) as f64 <= threshold);
    Ok(TrialRow {
        trial,
        seed,
        copies_total: ch.len(),
        overlap_edges_removed: lin.removed.len(),
        overlapping_copies_removed: lin.copies_removed,
        high_degree_removed: pruned.removed.len(),
        final_vertices: fin.host().num_edges(),
        final_copies: fin.len(),
        max_degree: greedy.max_degree,
        greedy_size: greedy.size,
        trivial_bound: greedy.trivial_bound,
        dlr_bound: greedy.dlr_bound,
        linear_ok,
        degree_ok,
        independent_ok: !contains_copy(&sub, h),
        selected,
    })
}

/// Brute-force pairwise check under the given overlap notion.
pub fn all_pairs_linear(ch: &CopyHypergraph, overlap: Overlap) -> bool {
    let sets: Vec<Vec<u32>> = ch
        .hyperedges()
        .iter()
        .map(|e| match overlap {
            Overlap::CopyEdges => e.clone(),
            Overlap::HostVertices => {
                let mut vs: Vec<u32> = e.iter().flat_map(|&i| ch.host().edge(i as usize).iter().copied()).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        })
        .collect();
    (0..sets.len()).all(|i| {
        (i + 1..sets.len()).all(|j| sets[i].iter().filter(|x| sets[j].binary_search(x).is_ok()).count() <= 1)
    })
}

pub fn deletion_experiment(cfg: &DeletionConfig, h: &Hypergraph) -> Result<DeletionReport> {
    if cfg.trials == 0 {
        return Err(Error::Invalid("trials must be positive".into()));
    }
    let (pat, _) = h.compact();
    let r = pat.uniformity();
    let e_h = pat.num_edges();
    let big_n = binomial(cfg.n as u64, r as u64);
    if BigUint::from(cfg.m) > big_n {
        return Err(Error::Invalid(format!("m = {} exceeds C({},{r})", cfg.m, cfg.n)));
    }
    let mr = r_density(&pat)?.value;
    let expo = r as f64 - *mr.denom() as f64 / *mr.numer() as f64;
    let base = (cfg.n as f64).powf(expo);
    let mut warnings = Vec::new();
    if (cfg.m as f64) < base {
        warnings.push(format!("m = {} is below n^(r - 1/m_r) = {base:.3}", cfg.m));
    }
    if let Some(eps) = cfg.eps {
        if cfg.m as f64 > (cfg.n as f64).powf(expo + eps) {
            warnings.push(format!("m exceeds n^(r - 1/m_r + {eps})"));
        }
    }
    if !is_strictly_r_balanced(&pat)? {
        warnings.push("pattern is not strictly balanced".into());
    }
    let big_c = cfg.big_c.unwrap_or(16.0 * e_h as f64);
    let threshold = degree_threshold(cfg.n, cfg.m, &pat, big_c);
    let rows: Vec<Result<TrialRow>> =
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, &pat, threshold, t)).collect();
    let trials: Vec<TrialRow> = rows.into_iter().collect::<Result<_>>()?;

    let mut sizes: Vec<usize> = trials.iter().map(|t| t.greedy_size).collect();
    sizes.sort_unstable();
    let copies: Vec<f64> = trials.iter().map(|t| t.copies_total as f64).collect();
    let k = copies.len() as f64;
    let mean = copies.iter().sum::<f64>() / k;
    let var = if copies.len() > 1 { copies.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
    let target = if cfg.m as f64 > base {
        cfg.delta * base * ((cfg.m as f64 / base).ln()).powf(1.0 / (e_h as f64 - 1.0))
    } else {
        0.0
    };
    Ok(DeletionReport {
        p: ratio_from_u64(cfg.m as u64) / ratio_from_uint(&big_n),
        degree_threshold: threshold,
        target,
        median_size: quantile(&sizes, 0.5),
        quartiles: (quantile(&sizes, 0.25), quantile(&sizes, 0.75)),
        min_size: sizes.first().copied().unwrap_or(0),
        max_size: sizes.last().copied().unwrap_or(0),
        trials_meeting_trivial: trials.iter().filter(|t| t.greedy_size as i64 >= t.trivial_bound).count(),
        all_checks_pass: trials.iter().all(TrialRow::checks_pass),
        mean_copies: mean,
        copies_std_error: (var / k).sqrt(),
        expected_copies: ratio_to_f64(&expected_copies(cfg.n, cfg.m, &pat)),
        overlap_check: overlap_check(cfg.n, cfg.m, &pat),
        warnings,
        config: DeletionConfig { big_c: Some(big_c), ..cfg.clone() },
        trials,
    })
}

pub fn trials_csv(rep: &DeletionReport) -> String {
    let mut s = String::from(
        "trial,seed,copies_total,overlap_edges_removed,overlapping_copies_removed,high_degree_removed,\
         final_vertices,final_copies,max_degree,greedy_size,trivial_bound,linear_ok,degree_ok,independent_ok\n",
    );
    for t in &rep.trials {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            t.trial,
            t.seed,
            t.copies_total,
            t.overlap_edges_removed,
            t.overlapping_copies_removed,
            t.high_degree_removed,
            t.final_vertices,
            t.final_copies,
            t.max_degree,
            t.greedy_size,
            t.trivial_bound,
            t.linear_ok,
            t.degree_ok,
            t.independent_ok
        ));
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct CountLowerBound {
    pub n: u64,
    /// Number of host r-sets `C(n, r)`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub r_sets: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub m: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub m_prime: f64,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub gamma: f64,
    /// `log2(½ C(N, m) / C(N - m', m - m'))`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_chain: f64,
    /// `log2(½ C(N, m') / C(m, m'))`; equal to the chain.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_chain_alt: f64,
    /// `log2(½ (n^r / (2 r! m'))^{m'} (m' / (e m))^{m'})`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_estimate: f64,
    /// `log2(½ (n^γ / (2 e r!))^{m'})`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_closed_form: f64,
    /// `log2 exp(c n^{r - 1/m_r} (ln n)^{e_H/(e_H-1)})`.
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub log2_target: f64,
    pub target_met: bool,
}

#[derive(Clone, Debug)]
pub struct CountBoundInput {
    pub n: u64,
    /// Defaults to `(2 m_r)^{-1}`.
    pub gamma: Option<f64>,
    pub delta_prime: f64,
    /// Overrides for the two sizes; by default `m = n^{r - 1/m_r + γ}` and
    /// `m' = δ' n^{r - 1/m_r} (ln n)^{1/(e_H - 1)}`, both rounded down.
    pub m: Option<f64>,
    pub m_prime: Option<f64>,
    pub c: f64,
}

pub fn count_lower_bound(input: &CountBoundInput, h: &Hypergraph) -> Result<CountLowerBound> {
    let (pat, _) = h.compact();
    let r = pat.uniformity();
    let e_h = pat.num_edges();
    if e_h < 2 {
        return Err(Error::Precondition("pattern needs at least two edges".into()));
    }
    let n = input.n as f64;
    if input.n < r as u64 {
        return Err(Error::Invalid(format!("n = {} is below the uniformity", input.n)));
    }
    let mr = r_density(&pat)?.value;
    let mrf = *mr.numer() as f64 / *mr.denom() as f64;
    let expo = r as f64 - 1.0 / mrf;
    let gamma = input.gamma.unwrap_or(1.0 / (2.0 * mrf));
    let big_n = ratio_to_f64(&ratio_from_uint(&binomial(input.n, r as u64)));
    let m = input.m.unwrap_or_else(|| n.powf(expo + gamma).floor());
    let m_prime =
        input.m_prime.unwrap_or_else(|| (input.delta_prime * n.powf(expo) * n.ln().powf(1.0 / (e_h as f64 - 1.0))).floor());
    if !(0.0..=big_n).contains(&m) || !(0.0..=m).contains(&m_prime) {
        return Err(Error::Invalid(format!("need 0 <= m' = {m_prime} <= m = {m} <= C(n,r) = {big_n}")));
    }
    let log2_chain = -1.0 + log2_binomial(big_n, m) - log2_binomial(big_n - m_prime, m - m_prime);
    let log2_chain_alt = -1.0 + log2_binomial(big_n, m_prime) - log2_binomial(m, m_prime);
    let r_fact: f64 = (1..=r).map(|i| i as f64).product();
    let e = std::f64::consts::E;
    let (log2_estimate, log2_closed_form) = if m_prime > 0.0 {
        (
            -1.0 + m_prime * ((n.powi(r as i32) / (2.0 * r_fact * m_prime)).log2() + (m_prime / (e * m)).log2()),
            -1.0 + m_prime * (n.powf(gamma) / (2.0 * e * r_fact)).log2(),
        )
    } else {
        (-1.0, -1.0)
    };
    let log2_target = input.c * n.powf(expo) * n.ln().powf(e_h as f64 / (e_h as f64 - 1.0)) / std::f64::consts::LN_2;
    Ok(CountLowerBound {
        n: input.n,
        r_sets: big_n,
        m,
        m_prime,
        gamma,
        log2_chain,
        log2_chain_alt,
        log2_estimate,
        log2_closed_form,
        log2_target,
        target_met: log2_chain >= log2_target,
    })
}
