//! Balanced supersaturation: the level/threshold calculus, the exact
//! `p`-window verifier, and a greedy builder that adds copies of `H` one at
//! a time while no sub-copy is saturated. All thresholds are exact
//! rationals; counters are integers compared against their ceilings.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::copyindex::{enumerate_copies, CopyHypergraph, SubpatternClasses};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, ceil_to_uint, floor_to_uint, ln_ratio, pow_i, ratio_from_u64, ratio_from_uint};
use crate::hypercore::{r_density, Hypergraph};

fn two_pow(k: i64) -> BigRational {
    pow_i(&ratio_from_u64(2), k)
}

/// `(t+1)^3 γ^{t+1}`.
pub fn level_factor(t: i64, gamma: &BigRational) -> BigRational {
    num_traits::pow(ratio_from_u64((t + 1) as u64), 3) * pow_i(gamma, t + 1)
}

/// The unique integer `t` with `γ^t M < m <= γ^{t+1} M`.
pub fn level_of(m: &BigRational, big_m: &BigRational, gamma: &BigRational) -> i64 {
    let mut t: i64 = 0;
    if m > big_m {
        while &(pow_i(gamma, t + 1) * big_m) < m {
            t += 1;
        }
    } else {
        while &(pow_i(gamma, t) * big_m) >= m {
            t -= 1;
        }
    }
    t
}

/// Saturation threshold for sub-copies of one isomorphism class.
#[derive(Clone, Debug, Serialize)]
pub struct Threshold {
    pub class: usize,
    pub e_f: usize,
    pub v_f: usize,
    /// Threshold for the run target.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub theta: BigRational,
    /// Threshold for the formula target `N`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub unscaled_theta: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupersatParams {
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub n: BigUint,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub m: BigUint,
    #[serde(rename = "M", serialize_with = "crate::exactnum::as_string")]
    pub big_m: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub gamma: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    pub alpha: Option<BigRational>,
    pub t: i64,
    pub t0: i64,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub b_t: BigRational,
    /// `(t+1)^3 γ^{t+1}`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub level_factor: BigRational,
    /// `N = ((t+1)^3 γ^{t+1})^{e_H - 1} m`.
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub unscaled_n: BigRational,
    /// Copies the builder actually targets: `max(1, floor(N · scale))`.
    pub run_n: u64,
    /// `run_n` was clamped to `u64::MAX`; only the parameters are usable.
    pub run_n_saturated: bool,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub scale: BigRational,
    pub r: usize,
    pub e_h: usize,
    pub v_h: usize,
    pub thresholds: Vec<Threshold>,
    #[serde(skip)]
    classes: SubpatternClasses,
}

impl SupersatParams {
    /// `θ` for sub-copies with `k` edges and target `target`:
    /// `2^{2e_H+2} ((t+1)^3 γ^{t+1})^{1-k} target / m`.
    pub fn theta_for(&self, k: usize, target: &BigRational) -> BigRational {
        two_pow(2 * self.e_h as i64 + 2) * pow_i(&self.level_factor, 1 - k as i64) * target / ratio_from_uint(&self.m)
    }

    pub fn theta(&self, k: usize) -> BigRational {
        self.theta_for(k, &ratio_from_u64(self.run_n))
    }

    /// Same parameters with a different run target; thresholds follow.
    pub fn with_run_target(mut self, run_n: u64) -> Self {
        self.run_n = run_n.max(1);
        self.run_n_saturated = false;
        for th in &mut self.thresholds {
            th.theta = two_pow(2 * self.e_h as i64 + 2) * pow_i(&self.level_factor, 1 - th.e_f as i64)
                * ratio_from_u64(self.run_n)
                / ratio_from_uint(&self.m);
        }
        self
    }

    pub fn classes(&self) -> &SubpatternClasses {
        &self.classes
    }

    /// Counter value at which a `k`-edge sub-copy becomes saturated.
    fn theta_ceil(&self, k: usize) -> u64 {
        ceil_to_uint(&self.theta(k)).to_u64().unwrap_or(u64::MAX)
    }
}

/// Inputs to [`derive_params`] beyond the host size.
#[derive(Clone, Debug)]
pub struct ParamInput {
    pub n: BigUint,
    pub m: BigUint,
    pub big_m: BigRational,
    pub gamma: BigRational,
    pub alpha: Option<BigRational>,
    pub t0: i64,
    pub scale: BigRational,
}

pub fn derive_params(input: &ParamInput, h: &Hypergraph) -> Result<SupersatParams> {
    let ParamInput { n, m, big_m, gamma, alpha, t0, scale } = input;
    if gamma <= &BigRational::one() {
        return Err(Error::Invalid(format!("gamma = {gamma} must exceed 1")));
    }
    if !big_m.is_positive() {
        return Err(Error::Invalid(format!("M = {big_m} must be positive")));
    }
    if !scale.is_positive() {
        return Err(Error::Invalid(format!("scale = {scale} must be positive")));
    }
    let (p, _) = h.compact();
    let e_h = p.num_edges();
    if e_h < 2 {
        return Err(Error::Precondition("pattern needs at least two edges".into()));
    }
    let mr = ratio_from_uint(m);
    let t = level_of(&mr, big_m, gamma);
    let floor_t = (*t0).max(0);
    if t < floor_t {
        return Err(Error::LevelTooLow(format!("m = {m} gives level t = {t}, below t0 = {floor_t}")));
    }
    let x = level_factor(t, gamma);
    let unscaled_n = pow_i(&x, e_h as i64 - 1) * &mr;
    let run = floor_to_uint(&(&unscaled_n * scale)).max(BigUint::one());
    let (run_n, run_n_saturated) = match run.to_u64() {
        Some(v) => (v, false),
        None => (u64::MAX, true),
    };
    let classes = SubpatternClasses::new(&p)?;
    let mut params = SupersatParams {
        n: n.clone(),
        m: m.clone(),
        big_m: big_m.clone(),
        gamma: gamma.clone(),
        alpha: alpha.clone(),
        t,
        t0: *t0,
        b_t: big_m / ratio_from_u64(num_traits::pow((t + 1) as u64, 3)),
        level_factor: x,
        unscaled_n,
        run_n,
        run_n_saturated,
        scale: scale.clone(),
        r: p.uniformity(),
        e_h,
        v_h: p.n_vertices(),
        thresholds: Vec::new(),
        classes,
    };
    params.thresholds = params
        .classes
        .reps
        .iter()
        .enumerate()
        .map(|(class, &(_, e_f, v_f))| Threshold {
            class,
            e_f,
            v_f,
            theta: params.theta(e_f),
            unscaled_theta: params.theta_for(e_f, &params.unscaled_n),
        })
        .collect();
    Ok(params)
}

/// Largest `T` with `γ^T <= n^r`; every admissible level lies below it.
pub fn t_range_bound(n: &BigUint, gamma: &BigRational, r: usize) -> Result<u64> {
    if gamma <= &BigRational::one() {
        return Err(Error::Invalid(format!("gamma = {gamma} must exceed 1")));
    }
    if n.is_zero() {
        return Ok(0);
    }
    let cap = ratio_from_uint(&num_traits::pow(n.clone(), r));
    let est = (r as f64 * crate::exactnum::ln_uint(n) / ln_ratio(gamma)).floor().max(0.0) as u64;
    let mut t = est.saturating_sub(2);
    while pow_i(gamma, t as i64) > cap {
        t -= 1;
    }
    while pow_i(gamma, t as i64 + 1) <= cap {
        t += 1;
    }
    Ok(t)
}

/// `(e_F, v_F)` for every nonempty proper edge subset of the compacted pattern.
fn sub_shapes(p: &Hypergraph) -> Vec<(usize, usize)> {
    let k = p.num_edges();
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) - 1 {
        let idx: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
        let shape = (idx.len(), p.edge_subgraph(&idx).spanned_vertices().len());
        if !out.contains(&shape) {
            out.push(shape);
        }
    }
    out.sort();
    out
}

fn split_ratio(q: &BigRational) -> (i64, i64) {
    (q.numer().to_i64().expect("small exponent"), q.denom().to_i64().expect("small exponent"))
}

#[derive(Clone, Debug, Serialize)]
pub struct T0Report {
    pub t0: i64,
    /// The level condition also quantifies over `F = H`.
    pub includes_whole: bool,
    /// No level condition applies, so the smallest level is returned.
    pub vacuous: bool,
    /// The `n`-dependent half of the condition was imposed.
    pub n_term: bool,
}

/// Smallest `t >= 1` with `2 (8 (t+1)^3 γ^{t+1})^{(e_F-1)/(v_F-r)} <=
/// min{(γ^t/8)^{1/(r-α)}, n/(2r^2)}` for every `F ⊊ H` with `e_F > 1`.
pub fn compute_t0(
    alpha: &BigRational,
    gamma: &BigRational,
    h: &Hypergraph,
    n: Option<&BigUint>,
    include_whole: bool,
) -> Result<T0Report> {
    if gamma <= &BigRational::one() {
        return Err(Error::Invalid(format!("gamma = {gamma} must exceed 1")));
    }
    let (p, _) = h.compact();
    let r = p.uniformity() as i64;
    let mr = r_density(&p)?.value;
    let threshold = BigRational::new(BigInt::from(r * mr.numer() - mr.denom()), BigInt::from(*mr.numer()));
    if alpha <= &threshold {
        return Err(Error::AlphaTooSmall { alpha: alpha.to_string(), threshold: threshold.to_string() });
    }
    let mut shapes: Vec<(usize, usize)> = sub_shapes(&p).into_iter().filter(|&(e, _)| e > 1).collect();
    if include_whole {
        shapes.push((p.num_edges(), p.n_vertices()));
    }
    let exps: Vec<BigRational> = shapes
        .iter()
        .map(|&(e, v)| BigRational::new(BigInt::from(e as i64 - 1), BigInt::from(v as i64 - r)))
        .collect();
    let r_minus_alpha = ratio_from_u64(r as u64) - alpha;
    let min_term = r_minus_alpha.is_positive();
    let report = |t0, vacuous| T0Report { t0, includes_whole: include_whole, vacuous, n_term: n.is_some() };
    if exps.is_empty() || (!min_term && n.is_none()) {
        return Ok(report(1, true));
    }
    let inv = r_minus_alpha.recip();
    let (c, d) = if min_term { split_ratio(&inv) } else { (0, 1) };
    let eight = ratio_from_u64(8);
    let n_cap = n.map(|n| ratio_from_uint(n) / ratio_from_u64(2 * (r * r) as u64));
    for t in 1..=100_000i64 {
        let y = &eight * level_factor(t, gamma);
        let z = pow_i(gamma, t) / &eight;
        let ok = exps.iter().all(|q| {
            let (a, b) = split_ratio(q);
            // 2 y^{a/b} <= z^{c/d}  <=>  2^{bd} y^{ad} <= z^{cb}
            let first = !min_term || two_pow(b * d) * pow_i(&y, a * d) <= pow_i(&z, c * b);
            let second = n_cap.as_ref().is_none_or(|cap| two_pow(b) * pow_i(&y, a) <= pow_i(cap, b));
            first && second
        });
        if ok {
            return Ok(report(t, false));
        }
        // Past the point where the n-term can still hold, give up early.
        if let Some(cap) = &n_cap {
            if &(ratio_from_u64(2) * &y) > cap && !min_term {
                break;
            }
        }
    }
    Err(Error::Invalid("no level satisfies the level condition".into()))
}

/// The inequalities a sampling density `p` must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "name")]
pub enum Inequality {
    /// `2r^2/n <= p <= 1`.
    Range,
    /// `p^{r - v_F} >= ((t+1)^3 γ^{t+1})^{e_F - 1}`.
    SubDensity { e_f: usize, v_f: usize },
    /// `p^{α - r} <= γ^t / 8`.
    AlphaPower,
    /// `p^{r - v_H} >= 8 N / m`.
    WholeDensity,
    /// `p^{r - v_F} >= (8 (t+1)^3 γ^{t+1})^{e_F - 1}`.
    Consolidated { e_f: usize, v_f: usize },
}

impl std::fmt::Display for Inequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Inequality::Range => write!(f, "range: 2r^2/n <= p <= 1"),
            Inequality::SubDensity { e_f, v_f } => {
                write!(f, "sub-density (e_F={e_f}, v_F={v_f}): p^(r-v_F) >= ((t+1)^3 gamma^(t+1))^(e_F-1)")
            }
            Inequality::AlphaPower => write!(f, "alpha-power: p^(alpha-r) <= gamma^t/8"),
            Inequality::WholeDensity => write!(f, "whole-density: p^(r-v_H) >= 8N/m"),
            Inequality::Consolidated { e_f, v_f } => {
                write!(f, "consolidated (e_F={e_f}, v_F={v_f}): p^(r-v_F) >= (8(t+1)^3 gamma^(t+1))^(e_F-1)")
            }
        }
    }
}

/// Exact evaluator for the `p`-window inequalities at a fixed level.
#[derive(Clone, Debug)]
pub struct PWindow {
    r: usize,
    v_h: usize,
    e_h: usize,
    shapes: Vec<(usize, usize)>,
    x: BigRational,
    gamma_t: BigRational,
    alpha: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct PWindowResult {
    pub feasible: bool,
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    pub p: Option<BigRational>,
    /// `p n` when feasible.
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    pub k: Option<BigUint>,
    pub violated: Option<Inequality>,
    pub violated_text: Option<String>,
}

impl PWindow {
    pub fn new(t: i64, gamma: &BigRational, alpha: &BigRational, h: &Hypergraph) -> Self {
        let (p, _) = h.compact();
        PWindow {
            r: p.uniformity(),
            v_h: p.n_vertices(),
            e_h: p.num_edges(),
            shapes: sub_shapes(&p),
            x: level_factor(t, gamma),
            gamma_t: pow_i(gamma, t),
            alpha: alpha.clone(),
        }
    }

    pub fn from_params(params: &SupersatParams, h: &Hypergraph) -> Result<Self> {
        let alpha = params.alpha.as_ref().ok_or_else(|| Error::Invalid("p-window needs alpha".into()))?;
        Ok(PWindow::new(params.t, &params.gamma, alpha, h))
    }

    /// `p^{r - v} >= rhs` for `v >= r`, i.e. `(1/p)^{v - r} >= rhs`.
    fn density_ok(&self, p: &BigRational, v: usize, rhs: &BigRational) -> bool {
        &pow_i(&p.recip(), (v - self.r) as i64) >= rhs
    }

    /// `p^{α - r} <= γ^t/8`, raised to the denominator of `α`.
    fn alpha_ok(&self, p: &BigRational) -> bool {
        let a = self.alpha.numer().to_i64().expect("small alpha");
        let b = self.alpha.denom().to_i64().expect("small alpha");
        let lhs = pow_i(p, a - self.r as i64 * b);
        let rhs = pow_i(&(&self.gamma_t / ratio_from_u64(8)), b);
        lhs <= rhs
    }

    fn alpha_is_lower(&self) -> bool {
        self.alpha < ratio_from_u64(self.r as u64)
    }

    /// Every inequality at `p`, in reporting order, with its truth value.
    pub fn evaluate(&self, p: &BigRational, n: &BigUint) -> Vec<(Inequality, bool)> {
        let mut out = Vec::new();
        let lo = ratio_from_u64(2 * (self.r * self.r) as u64) / ratio_from_uint(n);
        out.push((Inequality::Range, p >= &lo && p <= &BigRational::one() && p.is_positive()));
        if !p.is_positive() {
            return out;
        }
        for &(e_f, v_f) in &self.shapes {
            out.push((Inequality::SubDensity { e_f, v_f }, self.density_ok(p, v_f, &pow_i(&self.x, e_f as i64 - 1))));
        }
        out.push((Inequality::AlphaPower, self.alpha_ok(p)));
        let whole = ratio_from_u64(8) * pow_i(&self.x, self.e_h as i64 - 1);
        out.push((Inequality::WholeDensity, self.density_ok(p, self.v_h, &whole)));
        let x8 = ratio_from_u64(8) * &self.x;
        for &(e_f, v_f) in &self.shapes {
            out.push((Inequality::Consolidated { e_f, v_f }, self.density_ok(p, v_f, &pow_i(&x8, e_f as i64 - 1))));
        }
        out
    }

    /// Lower-side conditions are up-closed in `p`.
    fn lower_ok(&self, k: &BigUint, n: &BigUint) -> bool {
        let p = BigRational::new(BigInt::from(k.clone()), BigInt::from(n.clone()));
        !self.alpha_is_lower() || self.alpha_ok(&p)
    }

    /// The smallest `p = k/n` meeting the lower-side conditions is the best
    /// candidate, since every other condition is down-closed in `p`.
    pub fn solve(&self, n: &BigUint) -> PWindowResult {
        let infeasible = |ineq: Inequality| PWindowResult {
            feasible: false,
            p: None,
            k: None,
            violated_text: Some(ineq.to_string()),
            violated: Some(ineq),
        };
        let k_min = BigUint::from(2 * self.r * self.r);
        if n.is_zero() || &k_min > n {
            return infeasible(Inequality::Range);
        }
        if !self.lower_ok(n, n) {
            return infeasible(Inequality::AlphaPower);
        }
        let (mut lo, mut hi) = (k_min, n.clone());
        if !self.lower_ok(&lo, n) {
            // Invariant: lower_ok(hi) holds and lower_ok(lo) fails.
            while &hi - &lo > BigUint::one() {
                let mid: BigUint = (&lo + &hi) >> 1;
                if self.lower_ok(&mid, n) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            lo = hi;
        }
        let k = lo;
        let p = BigRational::new(BigInt::from(k.clone()), BigInt::from(n.clone()));
        match self.evaluate(&p, n).into_iter().find(|(_, ok)| !ok) {
            Some((ineq, _)) => infeasible(ineq),
            None => PWindowResult { feasible: true, p: Some(p), k: Some(k), violated: None, violated_text: None },
        }
    }

    /// Natural-log bounds `ln p_min`, `ln p_max` of the admissible interval.
    fn log_interval(&self) -> (f64, f64) {
        let lx = ln_ratio(&self.x);
        let l8 = 8f64.ln();
        let mut hi: f64 = 0.0;
        for &(e_f, v_f) in &self.shapes {
            if v_f > self.r {
                let d = (v_f - self.r) as f64;
                hi = hi.min(-(e_f as f64 - 1.0) * lx / d).min(-(e_f as f64 - 1.0) * (l8 + lx) / d);
            }
        }
        hi = hi.min(-(l8 + (self.e_h as f64 - 1.0) * lx) / (self.v_h - self.r) as f64);
        let ra = self.r as f64 - crate::exactnum::ratio_to_f64(&self.alpha);
        let lo = if ra > 0.0 { -(ln_ratio(&self.gamma_t) - l8) / ra } else { f64::NEG_INFINITY };
        (lo, hi)
    }

    /// Smallest `n` at which the window is nonempty, found by exact
    /// bisection; `None` when the admissible interval is empty.
    pub fn derived_floor(&self) -> Option<BigUint> {
        let (lo, hi) = self.log_interval();
        if lo > hi + 1e-9 {
            return None;
        }
        let feasible = |n: &BigUint| self.solve(n).feasible;
        let mut below = BigUint::from(2 * self.r * self.r - 1);
        let mut above = BigUint::from(2 * self.r * self.r);
        let mut doublings = 0;
        while !feasible(&above) {
            below = above.clone();
            above <<= 1;
            doublings += 1;
            if doublings > 2048 {
                return None;
            }
        }
        while &above - &below > BigUint::one() {
            let mid: BigUint = (&below + &above) >> 1;
            if feasible(&mid) {
                above = mid;
            } else {
                below = mid;
            }
        }
        Some(above)
    }
}

/// The window for the parameters' own level and host size.
pub fn p_window(params: &SupersatParams, h: &Hypergraph) -> Result<PWindowResult> {
    Ok(PWindow::from_params(params, h)?.solve(&params.n))
}

/// Order in which candidate copies are scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", content = "seed", rename_all = "kebab-case")]
pub enum OrderPolicy {
    Lexicographic,
    Random(u64),
    MinSaturation,
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Abort after this many candidate goodness checks.
    pub scan_budget: Option<u64>,
    /// Recount counters and check the ledger bound every this many steps
    /// (and at the end).
    pub audit_every: Option<usize>,
    pub trace: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceRow {
    pub step: usize,
    pub copy: Vec<u32>,
    pub scanned: u64,
    pub bad_total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditRecord {
    pub step: usize,
    pub counters_ok: bool,
    pub ledger_ok: bool,
}

/// Per-step check of `Δ_ℓ(H_{i+1}) <= max{Δ_ℓ(H_i), 2^{2e_H+3} X^{1-ℓ} N/m}`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StepAudit {
    pub steps_checked: usize,
    pub violations: usize,
    pub first_violation: Option<(usize, usize)>,
}

/// The growing balanced collection with live codegree counters.
#[derive(Clone, Debug)]
pub struct SupersatCollection {
    params: SupersatParams,
    all: CopyHypergraph,
    chosen: Vec<usize>,
    counters: HashMap<Vec<u32>, u64>,
    bad: Vec<Vec<Vec<u32>>>,
    deltas: Vec<u64>,
    pub step_audit: StepAudit,
    pub audits: Vec<AuditRecord>,
    pub trace: Vec<TraceRow>,
    masks: Vec<Vec<usize>>,
    theta_ceil: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureReport {
    pub step: usize,
    pub copies_total: usize,
    /// `|B_F|` per isomorphism class, indexed like the thresholds.
    pub ledger_sizes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum BuildOutcome {
    Success(SupersatCollection),
    Failure(FailureReport, SupersatCollection),
}

impl BuildOutcome {
    pub fn collection(&self) -> &SupersatCollection {
        match self {
            BuildOutcome::Success(c) | BuildOutcome::Failure(_, c) => c,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, BuildOutcome::Success(_))
    }
}

impl SupersatCollection {
    fn new(params: SupersatParams, all: CopyHypergraph) -> Self {
        let k = params.e_h;
        let masks: Vec<Vec<usize>> =
            (0u32..(1 << k)).map(|mask| (0..k).filter(|&j| mask >> j & 1 == 1).collect()).collect();
        let theta_ceil = (0..=k).map(|s| if s == 0 || s == k { u64::MAX } else { params.theta_ceil(s) }).collect();
        SupersatCollection {
            bad: vec![Vec::new(); params.classes.num_classes()],
            deltas: vec![0; k],
            params,
            all,
            chosen: Vec::new(),
            counters: HashMap::new(),
            step_audit: StepAudit::default(),
            audits: Vec::new(),
            trace: Vec::new(),
            masks,
            theta_ceil,
        }
    }

    pub fn params(&self) -> &SupersatParams {
        &self.params
    }

    /// Every copy of `H` in the host.
    pub fn all_copies(&self) -> &CopyHypergraph {
        &self.all
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Chosen copies as host-edge sets, in insertion order.
    pub fn copies(&self) -> Vec<Vec<u32>> {
        self.chosen.iter().map(|&c| self.all.hyperedges()[c].clone()).collect()
    }

    pub fn counter(&self, s: &[u32]) -> u64 {
        self.counters.get(s).copied().unwrap_or(0)
    }

    pub fn ledger(&self) -> &[Vec<Vec<u32>>] {
        &self.bad
    }

    /// Running `Δ_ℓ` maintained by the builder.
    pub fn running_deltas(&self) -> &[u64] {
        &self.deltas
    }

    /// The collection as a copy hypergraph over the host edges.
    pub fn to_copy_hypergraph(&self) -> CopyHypergraph {
        CopyHypergraph::from_hyperedges(self.all.host().clone(), self.all.pattern(), self.copies())
            .expect("chosen copies are valid hyperedges")
    }

    fn subset(&self, c: usize, mask: usize) -> Vec<u32> {
        let img = self.all.image(c).expect("enumerated copies carry their embedding");
        let mut s: Vec<u32> = self.masks[mask].iter().map(|&j| img[j]).collect();
        s.sort_unstable();
        s
    }

    fn proper_masks(&self) -> std::ops::Range<usize> {
        1..(1usize << self.params.e_h) - 1
    }

    fn is_good(&self, c: usize) -> bool {
        self.proper_masks().all(|mask| {
            let size = self.masks[mask].len();
            self.counter(&self.subset(c, mask)) < self.theta_ceil[size]
        })
    }

    fn saturation(&self, c: usize) -> u64 {
        self.proper_masks().map(|mask| self.counter(&self.subset(c, mask))).sum()
    }

    /// Adds copy `c` without checking goodness.
    fn push(&mut self, c: usize) {
        let k = self.params.e_h;
        let target = ratio_from_u64(self.params.run_n);
        let mut new_max = vec![0u64; k];
        for mask in self.proper_masks() {
            let s = self.subset(c, mask);
            let size = self.masks[mask].len();
            let cnt = self.counters.entry(s.clone()).or_insert(0);
            *cnt += 1;
            let now = *cnt;
            new_max[size - 1] = new_max[size - 1].max(now);
            if now == self.theta_ceil[size] {
                let class = self.params.classes.class_of[mask];
                self.bad[class].push(s);
            }
        }
        new_max[k - 1] = 1;
        let step = self.chosen.len();
        for l in 1..k {
            let before = self.deltas[l - 1];
            let after = before.max(new_max[l - 1]);
            let cap = two_pow(2 * k as i64 + 3) * pow_i(&self.params.level_factor, 1 - l as i64) * &target
                / ratio_from_uint(&self.params.m);
            let ok = after <= before || ratio_from_u64(after) <= cap;
            self.step_audit.steps_checked += 1;
            if !ok {
                self.step_audit.violations += 1;
                self.step_audit.first_violation.get_or_insert((step, l));
            }
            self.deltas[l - 1] = after;
        }
        self.deltas[k - 1] = 1;
        self.chosen.push(c);
    }

    /// Builds a collection from given copy indices (into
    /// `all.hyperedges()`), bypassing goodness; for ledger experiments.
    pub fn from_indices(params: SupersatParams, all: CopyHypergraph, indices: &[usize]) -> Result<Self> {
        let mut coll = SupersatCollection::new(params, all);
        for &c in indices {
            if c >= coll.all.len() || coll.chosen.contains(&c) {
                return Err(Error::Invalid(format!("bad or repeated copy index {c}")));
            }
            coll.push(c);
        }
        Ok(coll)
    }

    /// Recounts every counter by scanning the chosen copies.
    pub fn check_counters(&self) -> bool {
        let copies = self.copies();
        let fresh_ok = self.counters.iter().all(|(s, &cnt)| {
            let actual = copies.iter().filter(|e| s.iter().all(|v| e.binary_search(v).is_ok())).count() as u64;
            actual == cnt
        });
        let expected_keys: usize = {
            let mut keys = std::collections::HashSet::new();
            for &c in &self.chosen {
                for mask in self.proper_masks() {
                    keys.insert(self.subset(c, mask));
                }
            }
            keys.len()
        };
        fresh_ok && expected_keys == self.counters.len()
    }

    /// Re-derives, for every inserted copy, the counters of the prefix
    /// before it and confirms none of its proper sub-copies was saturated.
    pub fn replay_goodness(&self) -> bool {
        let copies = self.copies();
        (0..self.chosen.len()).all(|i| {
            let c = self.chosen[i];
            self.proper_masks().all(|mask| {
                let s = self.subset(c, mask);
                let before =
                    copies[..i].iter().filter(|e| s.iter().all(|v| e.binary_search(v).is_ok())).count() as u64;
                before < self.theta_ceil[s.len()]
            })
        })
    }
}

/// Greedily adds good copies until `run_n` copies are chosen or none is left.
pub fn greedy_build(
    g: &Hypergraph,
    h: &Hypergraph,
    params: &SupersatParams,
    policy: OrderPolicy,
    opts: &BuildOptions,
) -> Result<BuildOutcome> {
    if BigUint::from(g.num_edges()) != params.m {
        return Err(Error::Invalid(format!("host has {} edges but params use m = {}", g.num_edges(), params.m)));
    }
    let all = enumerate_copies(g, h)?;
    greedy_build_on(all, params, policy, opts)
}

/// As [`greedy_build`] with the host's copies already enumerated.
pub fn greedy_build_on(
    all: CopyHypergraph,
    params: &SupersatParams,
    policy: OrderPolicy,
    opts: &BuildOptions,
) -> Result<BuildOutcome> {
    if all.is_empty() {
        return Err(Error::Precondition("host contains no copy of the pattern".into()));
    }
    if params.run_n_saturated {
        return Err(Error::TooLarge(format!("run target {} (lower --scale-N)", &params.unscaled_n * &params.scale)));
    }
    let total = all.len();
    let mut coll = SupersatCollection::new(params.clone(), all);
    let order: Vec<usize> = match policy {
        OrderPolicy::Random(seed) => {
            let mut o: Vec<usize> = (0..total).collect();
            o.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            o
        }
        _ => (0..total).collect(),
    };
    let mut in_coll = vec![false; total];
    let mut cursor = 0usize;
    let mut scanned = 0u64;
    let target = params.run_n as usize;
    let over = |scanned: u64| opts.scan_budget.is_some_and(|b| scanned > b);

    while coll.len() < target {
        let step = coll.len();
        let pick = match policy {
            OrderPolicy::MinSaturation => {
                let mut best: Option<(u64, usize)> = None;
                for c in 0..total {
                    if in_coll[c] {
                        continue;
                    }
                    scanned += 1;
                    if over(scanned) {
                        return Err(scan_error(opts, step));
                    }
                    if coll.is_good(c) {
                        let key = (coll.saturation(c), c);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                best.map(|(_, c)| c)
            }
            _ => {
                // Copies passed over are either chosen or saturated, and
                // saturation never clears, so the cursor only moves forward.
                let mut found = None;
                while cursor < total {
                    let c = order[cursor];
                    if !in_coll[c] {
                        scanned += 1;
                        if over(scanned) {
                            return Err(scan_error(opts, step));
                        }
                        if coll.is_good(c) {
                            found = Some(c);
                            break;
                        }
                    }
                    cursor += 1;
                }
                found
            }
        };
        let Some(c) = pick else {
            let ledger_sizes = coll.bad.iter().map(Vec::len).collect();
            audit(&mut coll, opts, true);
            return Ok(BuildOutcome::Failure(FailureReport { step, copies_total: total, ledger_sizes }, coll));
        };
        in_coll[c] = true;
        coll.push(c);
        if opts.trace {
            let copy = coll.all.hyperedges()[c].clone();
            let bad_total = coll.bad.iter().map(Vec::len).sum();
            coll.trace.push(TraceRow { step, copy, scanned, bad_total });
        }
        audit(&mut coll, opts, false);
    }
    audit(&mut coll, opts, true);
    Ok(BuildOutcome::Success(coll))
}

fn scan_error(opts: &BuildOptions, step: usize) -> Error {
    Error::BudgetExceeded { budget: opts.scan_budget.unwrap_or(0), progress: format!("{step} copies chosen") }
}

fn audit(coll: &mut SupersatCollection, opts: &BuildOptions, end: bool) {
    let Some(every) = opts.audit_every else { return };
    let step = coll.len();
    let due = end || (every > 0 && step.is_multiple_of(every));
    if !due || coll.audits.last().is_some_and(|a| a.step == step) {
        return;
    }
    let counters_ok = coll.check_counters();
    let ledger_ok = bad_ledger_bound_check(coll).all_pass;
    coll.audits.push(AuditRecord { step, counters_ok, ledger_ok });
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaRow {
    pub ell: usize,
    pub delta: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bound: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub size: usize,
    pub rows: Vec<DeltaRow>,
    pub all_pass: bool,
}

/// Recomputes `Δ_ℓ` from scratch and checks
/// `Δ_ℓ <= 2^{2e_H+3} (b_t/m)^{ℓ-1} |coll| / m`.
pub fn verify_delta_bounds(coll: &SupersatCollection) -> DeltaReport {
    let p = &coll.params;
    let profile = coll.to_copy_hypergraph().max_codegree_profile();
    let m = ratio_from_uint(&p.m);
    let size = ratio_from_u64(coll.len() as u64);
    let rows: Vec<DeltaRow> = (1..=p.e_h)
        .map(|l| {
            let bound = two_pow(2 * p.e_h as i64 + 3) * pow_i(&(&p.b_t / &m), l as i64 - 1) * &size / &m;
            let delta = profile.delta(l);
            DeltaRow { ell: l, delta, pass: ratio_from_u64(delta as u64) <= bound, bound }
        })
        .collect();
    DeltaReport { size: coll.len(), all_pass: rows.iter().all(|r| r.pass), rows }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerRow {
    pub class: usize,
    pub e_f: usize,
    pub v_f: usize,
    pub size: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bound: BigRational,
    pub pass: bool,
}

/// `2^{e_H} N_run >= C(e_H, e_F) i >= |B_{e_F}| θ_{e_F}` for one size class.
#[derive(Clone, Debug, Serialize)]
pub struct ChainRow {
    pub e_f: usize,
    pub bad_total: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub top: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub middle: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bottom: BigRational,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    pub bound: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerReport {
    pub step: usize,
    pub classes: Vec<LedgerRow>,
    pub chain: Vec<ChainRow>,
    pub all_pass: bool,
}

/// Checks `|B_F| <= 2^{-e_H-2} ((t+1)^3 γ^{t+1})^{e_F-1} m` per class and
/// per edge count, together with the double-counting chain behind it.
pub fn bad_ledger_bound_check(coll: &SupersatCollection) -> LedgerReport {
    let p = &coll.params;
    let m = ratio_from_uint(&p.m);
    let bound = |e_f: usize| two_pow(-(p.e_h as i64) - 2) * pow_i(&p.level_factor, e_f as i64 - 1) * &m;
    let classes: Vec<LedgerRow> = p
        .classes
        .reps
        .iter()
        .enumerate()
        .map(|(class, &(_, e_f, v_f))| {
            let size = coll.bad[class].len();
            let b = bound(e_f);
            LedgerRow { class, e_f, v_f, size, pass: ratio_from_u64(size as u64) <= b, bound: b }
        })
        .collect();
    let i = ratio_from_u64(coll.len() as u64);
    let top = two_pow(p.e_h as i64) * ratio_from_u64(p.run_n);
    let chain: Vec<ChainRow> = (1..p.e_h)
        .map(|e_f| {
            let bad_total: usize = classes.iter().filter(|c| c.e_f == e_f).map(|c| c.size).sum();
            let middle = ratio_from_uint(&binomial(p.e_h as u64, e_f as u64)) * &i;
            let bottom = ratio_from_u64(bad_total as u64) * p.theta(e_f);
            let b = bound(e_f);
            let pass = top >= middle && middle >= bottom && ratio_from_u64(bad_total as u64) <= b;
            ChainRow { e_f, bad_total, top: top.clone(), middle, bottom, bound: b, pass }
        })
        .collect();
    LedgerReport {
        step: coll.len(),
        all_pass: classes.iter().all(|c| c.pass) && chain.iter().all(|c| c.pass),
        classes,
        chain,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub ell: usize,
    pub delta: usize,
    #[serde(serialize_with = "crate::exactnum::as_estimate")]
    pub bound: f64,
    pub pass: bool,
}

/// `Δ_ℓ <= C e(H) / k^{(1+ε)(ℓ-1)}` for every `ℓ`, with user constants.
pub fn conjecture_predicate(ch: &CopyHypergraph, k: f64, c: f64, eps: f64) -> Vec<ConjectureRow> {
    let prof = ch.max_codegree_profile();
    let e = ch.len() as f64;
    (1..=ch.copy_uniformity())
        .map(|l| {
            let bound = c * e / k.powf((1.0 + eps) * (l as f64 - 1.0));
            let delta = prof.delta(l);
            ConjectureRow { ell: l, delta, bound, pass: delta as f64 <= bound }
        })
        .collect()
}

/// `lcm` of denominators, used to put thresholds on a common scale in reports.
pub fn common_denominator(values: &[BigRational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn input(n: u64, m: u64, big_m: &str, gamma: &str) -> ParamInput {
        ParamInput {
            n: BigUint::from(n),
            m: BigUint::from(m),
            big_m: q(big_m),
            gamma: q(gamma),
            alpha: None,
            t0: 0,
            scale: BigRational::one(),
        }
    }

    #[test]
    fn params_for_c4() {
        let p = derive_params(&input(10, 10, "3", "2"), &Hypergraph::cycle(4)).unwrap();
        assert_eq!(p.t, 1);
        assert_eq!(p.unscaled_n, ratio_from_u64(327_680));
        assert_eq!(p.b_t, q("3/8"));
        // 2^{2·4+2} · 32^{-1} · N/m with N/m = 32^3.
        assert_eq!(p.theta_for(2, &p.unscaled_n), ratio_from_u64(1_048_576));
        assert_eq!(p.thresholds.len(), 4);
    }

    #[test]
    fn level_errors() {
        let mut i = input(10, 3, "3", "2");
        i.t0 = 1;
        assert!(matches!(derive_params(&i, &Hypergraph::cycle(4)), Err(Error::LevelTooLow(_))));
        assert_eq!(level_of(&ratio_from_u64(3), &ratio_from_u64(3), &q("2")), -1);
        assert_eq!(level_of(&ratio_from_u64(7), &ratio_from_u64(3), &q("2")), 1);
        assert_eq!(level_of(&ratio_from_u64(6), &ratio_from_u64(3), &q("2")), 0);
    }

    #[test]
    fn t_range_examples() {
        assert_eq!(t_range_bound(&BigUint::from(2u32), &q("2"), 2).unwrap(), 2);
        assert_eq!(t_range_bound(&BigUint::from(1u32), &q("2"), 2).unwrap(), 0);
        assert_eq!(t_range_bound(&BigUint::from(100u32), &q("2"), 2).unwrap(), 13);
        assert_eq!(t_range_bound(&BigUint::from(3u32), &q("3/2"), 3).unwrap(), 8);
    }

    #[test]
    fn t0_examples() {
        let c4 = Hypergraph::cycle(4);
        assert_eq!(compute_t0(&q("3/2"), &q("2"), &c4, None, false).unwrap().t0, 26);
        assert_eq!(compute_t0(&q("3/2"), &q("2"), &c4, None, true).unwrap().t0, 84);
        let r = compute_t0(&q("2"), &q("2"), &c4, None, false).unwrap();
        assert_eq!((r.t0, r.vacuous), (1, true));
        let pair = Hypergraph::new(2, 4, [[0, 1], [2, 3]]).unwrap();
        // Only e_F = 1 subgraphs, and 2K2 has m_2 = 1/2 so any alpha > 0 works.
        assert_eq!(compute_t0(&q("1/2"), &q("2"), &pair, None, false).unwrap().t0, 1);
        assert!(matches!(compute_t0(&q("4/3"), &q("2"), &c4, None, false), Err(Error::AlphaTooSmall { .. })));
        let with_n = compute_t0(&q("3/2"), &q("2"), &c4, Some(&num_traits::pow(BigUint::from(10u32), 30)), false);
        assert_eq!(with_n.unwrap().t0, 26);
    }

    #[test]
    fn window_at_unit_p() {
        let c4 = Hypergraph::cycle(4);
        // p = 1: alpha-power holds iff γ^t >= 8.
        for (t, ok) in [(2, false), (3, true)] {
            let w = PWindow::new(t, &q("2"), &q("3/2"), &c4);
            let row = w.evaluate(&BigRational::one(), &BigUint::from(8u32));
            let alpha = row.iter().find(|(i, _)| *i == Inequality::AlphaPower).unwrap();
            assert_eq!(alpha.1, ok);
        }
    }

    #[test]
    fn window_closed_at_t0() {
        let c4 = Hypergraph::cycle(4);
        let w = PWindow::new(26, &q("2"), &q("3/2"), &c4);
        assert!(w.derived_floor().is_none());
        let res = w.solve(&num_traits::pow(BigUint::from(10u32), 40));
        assert!(!res.feasible);
        assert_eq!(res.violated, Some(Inequality::WholeDensity));
    }

    fn k8_params() -> (Hypergraph, SupersatParams) {
        let g = Hypergraph::complete(8, 2);
        let mut i = input(8, 28, "28/3", "2");
        i.scale = q("1/700");
        (g, derive_params(&i, &Hypergraph::complete(3, 2)).unwrap())
    }

    #[test]
    fn k8_triangle_build() {
        let (g, p) = k8_params();
        assert_eq!((p.t, p.run_n), (1, 40));
        let opts = BuildOptions { audit_every: Some(10), ..Default::default() };
        let out = greedy_build(&g, &Hypergraph::complete(3, 2), &p, OrderPolicy::Lexicographic, &opts).unwrap();
        let coll = out.collection();
        assert!(out.is_success());
        assert_eq!(coll.len(), 40);
        assert!(verify_delta_bounds(coll).all_pass);
        assert!(bad_ledger_bound_check(coll).all_pass);
        assert!(coll.check_counters() && coll.replay_goodness());
        assert!(coll.audits.iter().all(|a| a.counters_ok && a.ledger_ok));
        assert_eq!(coll.step_audit.violations, 0);
    }

    #[test]
    fn policies_differ_only_in_choice() {
        let (g, p) = k8_params();
        let k3 = Hypergraph::complete(3, 2);
        for policy in [OrderPolicy::Random(7), OrderPolicy::MinSaturation] {
            let out = greedy_build(&g, &k3, &p, policy, &BuildOptions::default()).unwrap();
            assert!(out.is_success());
            assert!(verify_delta_bounds(out.collection()).all_pass);
            assert!(out.collection().replay_goodness());
        }
        let a = greedy_build(&g, &k3, &p, OrderPolicy::Random(7), &BuildOptions::default()).unwrap();
        let b = greedy_build(&g, &k3, &p, OrderPolicy::Random(7), &BuildOptions::default()).unwrap();
        assert_eq!(a.collection().copies(), b.collection().copies());
    }

    #[test]
    fn single_copy_and_exhaustion() {
        let k3 = Hypergraph::complete(3, 2);
        let g = Hypergraph::new(2, 4, [[0, 1], [1, 2], [0, 2], [2, 3]]).unwrap();
        let mut i = input(4, 4, "1", "2");
        let p = derive_params(&i, &k3).unwrap();
        // Scale the formula target down to one copy.
        i.scale = BigRational::new(BigInt::one(), p.unscaled_n.to_integer());
        let p1 = derive_params(&i, &k3).unwrap();
        assert_eq!(p1.run_n, 1);
        let out = greedy_build(&g, &k3, &p1, OrderPolicy::Lexicographic, &BuildOptions::default()).unwrap();
        assert_eq!(out.collection().copies(), vec![vec![0, 1, 2]]);
        let out = greedy_build(&g, &k3, &p, OrderPolicy::Lexicographic, &BuildOptions::default()).unwrap();
        match out {
            BuildOutcome::Failure(f, _) => assert_eq!(f.step, 1),
            BuildOutcome::Success(_) => panic!("target exceeds the copies available"),
        }
        let star = Hypergraph::new(2, 4, [[0, 1], [0, 2], [0, 3]]).unwrap();
        let ps = derive_params(&ParamInput { m: BigUint::from(3u32), ..i.clone() }, &k3).unwrap();
        assert!(greedy_build(&star, &k3, &ps, OrderPolicy::Lexicographic, &BuildOptions::default()).is_err());
    }

    #[test]
    fn empty_collection_passes() {
        let (g, p) = k8_params();
        let all = enumerate_copies(&g, &Hypergraph::complete(3, 2)).unwrap();
        let coll = SupersatCollection::from_indices(p, all, &[]).unwrap();
        let rep = verify_delta_bounds(&coll);
        assert!(rep.all_pass && rep.rows.iter().all(|r| r.delta == 0));
        assert!(bad_ledger_bound_check(&coll).all_pass);
    }

    #[test]
    fn synthetic_saturation() {
        // With a run target of one copy, θ_1 = 2^8/66, so an edge lying in
        // four chosen triangles saturates.
        let g = Hypergraph::complete(12, 2);
        let k3 = Hypergraph::complete(3, 2);
        let mut i = input(12, 66, "22", "2");
        i.scale = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
        let p = derive_params(&i, &k3).unwrap();
        assert_eq!(p.run_n, 1);
        let all = enumerate_copies(&g, &k3).unwrap();
        let theta1 = ceil_to_uint(&p.theta(1)).to_usize().unwrap();
        // Triangles through edge {0,1}: apex 2..11.
        let through: Vec<usize> =
            (0..all.len()).filter(|&c| all.hyperedges()[c].contains(&0)).take(theta1).collect();
        let coll = SupersatCollection::from_indices(p, all, &through).unwrap();
        assert_eq!(theta1, 4);
        assert_eq!(coll.counter(&[0]), theta1 as u64);
        let singles: usize = coll.ledger().iter().flatten().filter(|s| s.len() == 1).count();
        assert_eq!(singles, 1);
        let rep = bad_ledger_bound_check(&coll);
        assert!(rep.classes.iter().all(|c| c.pass));
        // Four copies exceed the one-copy target, so only the top link of
        // the counting chain breaks.
        let single = &rep.chain[0];
        assert!(single.middle >= single.bottom && single.top < single.middle);
    }

    #[test]
    fn conjecture_rows() {
        let ch = enumerate_copies(&Hypergraph::complete(5, 2), &Hypergraph::complete(3, 2)).unwrap();
        let rows = conjecture_predicate(&ch, 1.0, 1.0, 0.5);
        assert!(rows.iter().all(|r| r.pass));
        let rows = conjecture_predicate(&ch, 10.0, 1.0, 0.5);
        assert!(!rows[1].pass);
    }

    #[test]
    fn common_denominators() {
        assert_eq!(common_denominator(&[q("1/4"), q("5/6")]), BigInt::from(12));
    }
}
