//! Acceptance run: one PASS/FAIL line per criterion, each checked against an
//! oracle written independently of the library code it exercises.
//!
//! Run with `cargo test --test acceptance`; exits nonzero if any line fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use hfree::containers::{self, ContainerConfig};
use hfree::copyindex::enumerate_copies;
use hfree::exact;
use hfree::hypercore::{combinations, is_strictly_r_balanced, r_density};
use hfree::lbound::{self, DeletionConfig, Overlap};
use hfree::supersat::{self, BuildOptions, OrderPolicy, PWindow, ParamInput};
use hfree::Hypergraph;

/// Relative tolerance on log2 leaf-count values.
const LEAF_LOG_RTOL: f64 = 1e-12;
/// Allowed distance of the mean copy count from its expectation, in standard errors.
const COPY_MEAN_SE: f64 = 3.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn q(s: &str) -> BigRational {
    hfree::exactnum::parse_rational(s).unwrap()
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------- oracles

/// Every `r`-uniform hypergraph with up to `max_edges` edges, up to
/// relabelling: vertices are numbered in order of first appearance.
fn all_shapes(r: usize, max_edges: usize, connected: bool) -> Vec<Hypergraph> {
    fn grow(
        r: usize,
        max_edges: usize,
        connected: bool,
        edges: &mut Vec<Vec<u32>>,
        used: usize,
        out: &mut BTreeSet<Vec<Vec<u32>>>,
    ) {
        if !edges.is_empty() {
            let mut key = edges.clone();
            key.sort();
            out.insert(key);
        }
        if edges.len() == max_edges {
            return;
        }
        // `j` fresh vertices, the rest from the `used` ones.
        for j in 0..=r {
            if connected && !edges.is_empty() && j == r {
                continue;
            }
            for old in combinations(used, r - j) {
                let mut e = old.clone();
                e.extend((used..used + j).map(|v| v as u32));
                if edges.contains(&e) {
                    continue;
                }
                edges.push(e);
                grow(r, max_edges, connected, edges, used + j, out);
                edges.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    grow(r, max_edges, connected, &mut Vec::new(), 0, &mut out);
    out.into_iter()
        .map(|edges| {
            let v = edges.iter().flatten().map(|&x| x as usize + 1).max().unwrap();
            Hypergraph::new(r, v, edges).unwrap()
        })
        .collect()
}

/// `(e_F, v_F)` of every proper nonempty edge subset.
fn proper_edge_subsets(h: &Hypergraph) -> Vec<(i64, i64)> {
    let m = h.num_edges();
    (1u32..(1 << m) - 1)
        .map(|s| {
            let mut span = BTreeSet::new();
            for i in (0..m).filter(|i| s >> i & 1 == 1) {
                span.extend(h.edge(i).iter().copied());
            }
            (s.count_ones() as i64, span.len() as i64)
        })
        .collect()
}

fn induced_edges(h: &Hypergraph, s: u32) -> i64 {
    h.edges().iter().filter(|e| e.iter().all(|&v| s >> v & 1 == 1)).count() as i64
}

/// Density and strict balancedness via a scan of vertex subsets.
fn naive_density(h: &Hypergraph) -> (Option<Rational64>, Option<bool>) {
    let r = h.uniformity() as i64;
    let v = h.n_vertices();
    let full = (1u32 << v) - 1;
    let mut best: Option<Rational64> = None;
    for s in 1..=full {
        let k = s.count_ones() as i64;
        let e = induced_edges(h, s);
        if k > r && e >= 2 {
            let d = Rational64::new(e - 1, k - r);
            best = Some(best.map_or(d, |b| b.max(d)));
        }
    }
    if h.num_edges() < 2 {
        return (best, None);
    }
    let whole = Rational64::new(h.num_edges() as i64 - 1, v as i64 - r);
    let balanced = (1..full).all(|s| {
        let e = induced_edges(h, s);
        e < 2 || Rational64::new(e - 1, s.count_ones() as i64 - r) < whole
    });
    (best, Some(balanced))
}

/// Copies of `h` in `K_n^{(r)}` as edge masks, by trying every injection.
fn naive_copy_masks(n: usize, h: &Hypergraph) -> Vec<u64> {
    let k = Hypergraph::complete(n, h.uniformity());
    let v = h.n_vertices();
    let mut masks = BTreeSet::new();
    let mut map = vec![0u32; v];
    fn rec(i: usize, n: usize, map: &mut Vec<u32>, used: u32, h: &Hypergraph, k: &Hypergraph, out: &mut BTreeSet<u64>) {
        if i == map.len() {
            let mut m = 0u64;
            for e in h.edges() {
                let mut img: Vec<u32> = e.iter().map(|&x| map[x as usize]).collect();
                img.sort_unstable();
                m |= 1 << k.edge_index(&img).unwrap();
            }
            out.insert(m);
            return;
        }
        for x in 0..n as u32 {
            if used >> x & 1 == 0 {
                map[i] = x;
                rec(i + 1, n, map, used | 1 << x, h, k, out);
            }
        }
    }
    if v <= n {
        rec(0, n, &mut map, 0, h, &k, &mut masks);
    }
    masks.into_iter().collect()
}

fn naive_free_masks(n: usize, h: &Hypergraph) -> (usize, Vec<u64>) {
    let e = combinations(n, h.uniformity()).len();
    let copies = naive_copy_masks(n, h);
    let free = (0..1u64 << e).filter(|&s| copies.iter().all(|&c| c & !s != 0)).collect();
    (e, free)
}

fn naive_ex(n: usize, h: &Hypergraph) -> usize {
    naive_free_masks(n, h).1.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0)
}

/// `Σ_S (-1)^{|S|} 2^{E - |∪S|}` over sets of copies.
fn inclusion_exclusion(n: usize, h: &Hypergraph) -> BigInt {
    let e = combinations(n, h.uniformity()).len() as u32;
    let copies = naive_copy_masks(n, h);
    assert!(copies.len() <= 20);
    let mut total = BigInt::zero();
    for s in 0u32..1 << copies.len() {
        let union = (0..copies.len()).filter(|i| s >> i & 1 == 1).fold(0u64, |m, i| m | copies[i]);
        let term = BigInt::one() << (e - union.count_ones()) as usize;
        if s.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Vertices adjacent to both ends, for counting 4-cycles of a graph.
fn four_cycles(g: &Hypergraph) -> usize {
    let n = g.n_vertices();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e[0] as usize][e[1] as usize] = true;
        adj[e[1] as usize][e[0] as usize] = true;
    }
    let mut twice = 0usize;
    for a in 0..n {
        for c in a + 1..n {
            let k = (0..n).filter(|&b| adj[a][b] && adj[c][b]).count();
            twice += k * k.saturating_sub(1) / 2;
        }
    }
    twice / 2
}

fn pow(b: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(b.clone(), e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

// ---------------------------------------------------------------- criteria

fn density_oracle() -> Outcome {
    let mut shapes = all_shapes(2, 5, true);
    let graphs = shapes.len();
    shapes.extend(all_shapes(3, 4, false));
    let mut bad = Vec::new();
    for h in &shapes {
        let (d, b) = naive_density(h);
        let got = r_density(h).ok().map(|rep| rep.value);
        let got_b = if h.num_edges() >= 2 { is_strictly_r_balanced(h).ok() } else { None };
        if got != d || got_b != b {
            bad.push(h.to_text().replace('\n', ";"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{graphs} connected graphs, {} 3-graphs; mismatches: {:?}", shapes.len() - graphs, bad.first()),
    )
}

fn exact_extremal() -> Outcome {
    let patterns = [("K3", Hypergraph::complete(3, 2)), ("C4", Hypergraph::cycle(4)), ("P4", Hypergraph::path(4))];
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, h) in &patterns {
        for n in 2..=6 {
            checked += 1;
            let want = naive_ex(n, h);
            match exact::extremal_number(n, h) {
                Ok(ex) if ex.value == want && ex.witness.num_edges() == want => {}
                other => bad.push(format!("{name} n={n}: want {want}, got {:?}", other.map(|e| e.value))),
            }
        }
    }
    let c4 = Hypergraph::cycle(4);
    let naive7 = naive_ex(7, &c4);
    let bb7 = exact::extremal_number(7, &c4).map(|e| e.value);
    let ok7 = naive7 == 9 && bb7 == Ok(9);
    outcome(bad.is_empty() && ok7, format!("{checked} cases, ex(7,C4): naive {naive7}, search {bb7:?}; {bad:?}"))
}

fn exact_counts() -> Outcome {
    let k3 = Hypergraph::complete(3, 2);
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in [(3usize, 7u64), (4, 41)] {
        let enumerated = naive_free_masks(n, &k3).1.len() as u64;
        let ie = inclusion_exclusion(n, &k3);
        let got = exact::count_h_free(n, &k3).map(|c| c.count);
        let pass = enumerated == want && ie == BigInt::from(want) && got == Ok(BigUint::from(want));
        ok &= pass;
        notes.push(format!("n={n}: enum {enumerated}, incl-excl {ie}, lib {got:?}"));
    }
    let patterns = [Hypergraph::complete(3, 2), Hypergraph::cycle(4), Hypergraph::path(4)];
    let mut trivial = 0;
    for h in &patterns {
        for n in 2..=6 {
            let enumerated = naive_free_masks(n, h).1.len();
            match exact::verify_trivial_bounds(n, h) {
                Ok(c) if c.passes() && c.count == BigUint::from(enumerated) => trivial += 1,
                other => {
                    ok = false;
                    notes.push(format!("trivial bounds n={n} {}: {other:?}", h.to_text().replace('\n', ";")));
                }
            }
        }
    }
    notes.push(format!("{trivial}/15 trivial-bound cases"));
    outcome(ok, notes.join("; "))
}

/// Brute-force `Δ_ℓ` of a family of copies given as host-edge sets.
fn brute_codegrees(copies: &[Vec<u32>], host_edges: usize, e_h: usize) -> Vec<usize> {
    (1..=e_h)
        .map(|l| {
            combinations(host_edges, l)
                .iter()
                .map(|s| copies.iter().filter(|c| s.iter().all(|x| c.contains(x))).count())
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn supersat_builder() -> Outcome {
    let cases = [
        ("K8/K3", Hypergraph::complete(8, 2), Hypergraph::complete(3, 2), "28/3", "1/700"),
        ("K9/C4", Hypergraph::complete(9, 2), Hypergraph::cycle(4), "12", "1/3932"),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, g, h, big_m, scale) in cases {
        let input = ParamInput {
            n: BigUint::from(g.n_vertices()),
            m: BigUint::from(g.num_edges()),
            big_m: q(big_m),
            gamma: q("2"),
            alpha: None,
            t0: 0,
            scale: q(scale),
        };
        let params = supersat::derive_params(&input, &h).unwrap();
        let opts = BuildOptions { audit_every: Some(10), ..Default::default() };
        let out = supersat::greedy_build(&g, &h, &params, OrderPolicy::Lexicographic, &opts).unwrap();
        let coll = out.collection();
        let copies = coll.copies();
        let e_h = h.num_edges();
        let brute = brute_codegrees(&copies, g.num_edges(), e_h);
        let delta = supersat::verify_delta_bounds(coll);
        // Independent bound: 2^{2e_H+3} (b_t/m)^{ℓ-1} |coll| / m.
        let m = int(g.num_edges() as u64);
        let size = int(copies.len() as u64);
        let bound_ok = brute.iter().enumerate().all(|(i, &d)| {
            let bound = pow(&int(2), 2 * e_h as i64 + 3) * pow(&(&params.b_t / &m), i as i64) * &size / &m;
            int(d as u64) <= bound
        });
        let recount_ok = delta.rows.iter().map(|r| r.delta).eq(brute.iter().copied());
        let ledger = supersat::bad_ledger_bound_check(coll);
        let audits_ok = !coll.audits.is_empty() && coll.audits.iter().all(|a| a.counters_ok && a.ledger_ok);
        let pass = out.is_success()
            && delta.all_pass
            && bound_ok
            && recount_ok
            && ledger.all_pass
            && audits_ok
            && coll.step_audit.violations == 0;
        ok &= pass;
        notes.push(format!(
            "{name}: t={} N_run={} size={} Δ={brute:?} audits={} {}",
            params.t,
            params.run_n,
            copies.len(),
            coll.audits.len(),
            if pass { "ok" } else { "FAILED" }
        ));
    }
    outcome(ok, notes.join("; "))
}

/// Smallest level passing the level condition, scanned in floating point
/// over the proper edge subsets.
fn t0_oracle(h: &Hypergraph, alpha: f64, gamma: f64) -> i64 {
    let r = h.uniformity() as f64;
    let exps: Vec<f64> =
        proper_edge_subsets(h).into_iter().filter(|&(e, _)| e > 1).map(|(e, k)| (e - 1) as f64 / (k as f64 - r)).collect();
    let lg = gamma.log2();
    (1..10_000)
        .find(|&t| {
            let tf = t as f64;
            let log_y = 3.0 + 3.0 * (tf + 1.0).log2() + (tf + 1.0) * lg;
            let log_z = (tf * lg - 3.0) / (r - alpha);
            exps.iter().all(|q| 1.0 + q * log_y <= log_z)
        })
        .unwrap()
}

/// Checks every window inequality from scratch.
fn window_valid(p: &BigRational, n: &BigUint, t: i64, gamma: &BigRational, alpha: &BigRational, h: &Hypergraph) -> bool {
    let r = h.uniformity() as i64;
    let x = pow(&int((t + 1) as u64), 3) * pow(gamma, t + 1);
    let range = p <= &BigRational::one() && p * BigRational::from_integer(BigInt::from(n.clone())) >= int((2 * r * r) as u64);
    let mut dens = true;
    for (e, k) in proper_edge_subsets(h) {
        dens &= pow(p, r - k) >= pow(&(int(8) * &x), e - 1);
    }
    let whole = pow(p, r - h.n_vertices() as i64) >= int(8) * pow(&x, h.num_edges() as i64 - 1);
    let (a, b) = (alpha.numer().to_i64().unwrap(), alpha.denom().to_i64().unwrap());
    let alpha_ok = pow(p, a - r * b) <= pow(&(pow(gamma, t) / int(8)), b);
    range && dens && whole && alpha_ok
}

fn parameter_calculus() -> Outcome {
    let c4 = Hypergraph::cycle(4);
    let (alpha, gamma) = (q("3/2"), q("2"));
    let t0 = supersat::compute_t0(&alpha, &gamma, &c4, None, false).map(|r| r.t0);
    let oracle = t0_oracle(&c4, 1.5, 2.0);
    let mut ok = t0 == Ok(26) && oracle == 26;
    let mut notes = vec![format!("t0 lib {t0:?} oracle {oracle}")];
    for t in [75i64, 80, 100] {
        let w = PWindow::new(t, &gamma, &alpha, &c4);
        let Some(floor) = w.derived_floor() else {
            ok = false;
            notes.push(format!("t={t}: no floor"));
            continue;
        };
        let mut above_ok = true;
        let probes = (0u32..64)
            .map(|i| &floor + BigUint::from(i))
            .chain([2u32, 3, 10, 1000].map(|f| &floor * BigUint::from(f)))
            .chain([&floor << 40usize]);
        for n in probes {
            let res = w.solve(&n);
            above_ok &= res.feasible && res.p.as_ref().is_some_and(|p| window_valid(p, &n, t, &gamma, &alpha, &c4));
        }
        let below = w.solve(&(&floor - BigUint::one()));
        let below_ok = !below.feasible && below.violated.is_some();
        ok &= above_ok && below_ok;
        notes.push(format!(
            "t={t}: floor {floor} above={above_ok} below violates {:?}",
            below.violated_text.unwrap_or_default()
        ));
    }
    // Levels between t0 and the window opening admit no n.
    let w26 = PWindow::new(26, &gamma, &alpha, &c4);
    let named: Vec<Option<String>> = [BigUint::from(10u32).pow(6), BigUint::one() << 200usize]
        .iter()
        .map(|n| w26.solve(n).violated.map(|v| v.to_string()))
        .collect();
    let shut = w26.derived_floor().is_none() && named.iter().all(Option::is_some);
    ok &= shut;
    notes.push(format!("t=26 closed: {shut}, violated {named:?}"));
    outcome(ok, notes.join("; "))
}

fn container_contract() -> Outcome {
    let k3 = Hypergraph::complete(3, 2);
    let ex5 = exact::extremal_number(5, &k3).unwrap().value as u64;
    let cfg = ContainerConfig::new(q("2"), 0, int(ex5));
    let tree = containers::build_container_tree(5, &k3, &cfg).unwrap();
    let lib = containers::coverage_check(&tree, &k3).unwrap();

    let edges = combinations(5, 2);
    let leaves: Vec<u128> = tree.leaves().map(|l| l.mask).collect();
    let triangle_free = |s: u32| {
        !combinations(5, 3).iter().any(|t| {
            let idx = |a: u32, b: u32| edges.iter().position(|e| e == &vec![a, b]).unwrap();
            let tri = [idx(t[0], t[1]), idx(t[0], t[2]), idx(t[1], t[2])];
            tri.iter().all(|&i| s >> i & 1 == 1)
        })
    };
    let free: Vec<u32> = (0u32..1 << 10).filter(|&s| triangle_free(s)).collect();
    let escaped = free.iter().filter(|&&s| !leaves.iter().any(|&l| s as u128 & !l == 0)).count();

    let mut splits = 0;
    let mut bound_ok = true;
    let mut delta_ok = true;
    for node in &tree.nodes {
        if let Some(s) = &node.split {
            splits += 1;
            let v = node.size as u64;
            let sum: BigUint = (0..=s.fingerprint_size_cap as u64).map(|k| hfree::exactnum::binomial(v, k)).sum();
            bound_ok &= BigUint::from(s.containers) <= sum && s.count_bound == sum && s.bound_ok;
            delta_ok &= s.measured_delta > BigRational::zero();
        }
    }
    let pass = tree.complete
        && lib.exhaustive
        && lib.covered
        && escaped == 0
        && free.len() as u64 == lib.h_free
        && splits > 0
        && bound_ok
        && delta_ok;
    outcome(
        pass,
        format!(
            "{} nodes, {} leaves, {splits} splits; {} triangle-free hosts, {escaped} escaped; bound(i) {bound_ok}; δ̂>0 {delta_ok}",
            tree.nodes.len(),
            leaves.len(),
            free.len()
        ),
    )
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= LEAF_LOG_RTOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn leaf_count_evaluator() -> Outcome {
    let n = 1_000_000u64;
    let big_m = (n as f64).powf(1.5);
    let t_max = supersat::t_range_bound(&BigUint::from(n), &q("2"), 2).unwrap() as i64;
    let vals: Vec<f64> =
        (1..=t_max + 1).map(|t0| containers::leaf_count_bound(2.0, big_m, 4, t0, t_max).unwrap().log2_leaves).collect();
    let monotone = vals.windows(2).all(|w| w[1] <= w[0]);
    let around = (25..=27).map(|t0| containers::leaf_count_bound(2.0, big_m, 4, t0, t_max).unwrap().log2_leaves).collect::<Vec<_>>();
    let spot = around[0] >= around[1] && around[1] >= around[2] && around[1].is_finite();
    let m_mono = containers::leaf_count_bound(2.0, 2.0 * big_m, 4, 26, t_max).unwrap().log2_leaves >= around[1];
    let empty = containers::leaf_count_bound(2.0, 8.0, 4, 5, 4).unwrap().log2_leaves;
    let single = containers::leaf_count_bound(2.0, 8.0, 4, 1, 1).unwrap().log2_leaves;
    let hand = 4.0 * (8.0 * std::f64::consts::E).log2();
    let pass = monotone && spot && m_mono && empty == 0.0 && rel_close(single, hand);
    outcome(
        pass,
        format!(
            "T={t_max}; monotone {monotone}; t0=25..27 {around:?}; M-monotone {m_mono}; empty {empty}; single {single} vs {hand}"
        ),
    )
}

fn deletion_pipeline() -> Outcome {
    let c4 = Hypergraph::cycle(4);
    let n = 60usize;
    let m = (n as f64).powf(1.5).ceil() as usize;
    let cfg = DeletionConfig::new(n, m, 2025, 30);
    let rep = lbound::deletion_experiment(&cfg, &c4).unwrap();
    let threshold = rep.degree_threshold;
    let mut recheck = true;
    let mut copies = Vec::new();
    for row in &rep.trials {
        let g = lbound::sample_gnm(n, 2, m, row.seed).unwrap();
        let count = four_cycles(&g);
        copies.push(count as f64);
        let ch = enumerate_copies(&g, &c4).unwrap();
        let lin = lbound::linearize(&ch, Overlap::CopyEdges);
        let pruned = lbound::prune_high_degree(&lin.ch, threshold);
        let hs = pruned.ch.hyperedges();
        let linear = hs.iter().enumerate().all(|(i, a)| hs[i + 1..].iter().all(|b| a.iter().filter(|x| b.contains(x)).count() <= 1));
        let mut deg: HashMap<u32, usize> = HashMap::new();
        for v in hs.iter().flatten() {
            *deg.entry(*v).or_default() += 1;
        }
        let capped = deg.values().all(|&d| d as f64 <= threshold);
        let sel = Hypergraph::new(2, n, row.selected.iter().map(|&i| g.edge(i as usize).to_vec())).unwrap();
        let independent = four_cycles(&sel) == 0;
        recheck &= row.checks_pass() && count == row.copies_total && linear && capped && independent;
    }
    let k = copies.len() as f64;
    let mean = copies.iter().sum::<f64>() / k;
    let se = (copies.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (k - 1.0) / k).sqrt();
    // C(n,4) · 3 · Π_{i<4} (m-i)/(N-i), exactly.
    let big_n = (n * (n - 1) / 2) as u64;
    let mut expect = int(hfree::exactnum::binomial(n as u64, 4).to_u64().unwrap() * 3);
    for i in 0..4u64 {
        expect = expect * int(m as u64 - i) / int(big_n - i);
    }
    let expect = expect.to_f64().unwrap();
    let within = (mean - expect).abs() <= COPY_MEAN_SE * se;
    let lib_agrees = (rep.expected_copies - expect).abs() <= 1e-9 * expect && (rep.mean_copies - mean).abs() <= 1e-9 * mean;
    outcome(
        recheck && within && lib_agrees && rep.all_checks_pass,
        format!(
            "m={m}, 30 trials: rechecks {recheck}; mean {mean:.2} vs expected {expect:.2} (SE {se:.2}); median size {}",
            rep.median_size
        ),
    )
}

fn cli(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut full = vec!["hfree", "--no-cache"];
    full.extend_from_slice(args);
    hfree::cli::run(full, &mut out);
    out
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 8] = [
        &["density", "--pattern", "c4"],
        &["ex", "--pattern", "c4", "--n", "6"],
        &["count-free", "--pattern", "k3", "--n", "5"],
        &["hypothesis", "--pattern", "c4", "--n", "6", "--alpha", "3/2", "--gamma", "2"],
        &["supersat", "--pattern", "k3", "--host", "k8", "--M", "28/3", "--scale-N", "1/700", "--policy", "random", "--seed", "7"],
        &["containers", "--pattern", "k3", "--n", "5", "--samples", "50", "--seed", "3"],
        &["lower-bound", "--pattern", "c4", "--n", "30", "--m", "165", "--trials", "4", "--seed", "11"],
        &["count-bound", "--pattern", "c4", "--n", "10000"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let (a, b) = (cli(args), cli(args));
        if a != b || a.is_empty() {
            differing.push(args[0]);
        }
    }
    outcome(differing.is_empty(), format!("{} subcommands; differing/empty: {differing:?}", runs.len()))
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("density oracle", Duration::from_secs(10), density_oracle),
        ("exact extremal values", Duration::from_secs(300), exact_extremal),
        ("exact counts", Duration::from_secs(60), exact_counts),
        ("supersaturation builder", Duration::from_secs(120), supersat_builder),
        ("parameter calculus", Duration::from_secs(60), parameter_calculus),
        ("container contract", Duration::from_secs(600), container_contract),
        ("leaf-count evaluator", Duration::from_secs(10), leaf_count_evaluator),
        ("deletion pipeline", Duration::from_secs(300), deletion_pipeline),
        ("determinism", Duration::from_secs(120), determinism),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let pass = res.pass && took <= limit;
        failed += usize::from(!pass);
        println!(
            "{} {name} [{:.2}s / {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            res.detail
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
