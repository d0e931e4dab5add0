//! Acceptance suite. Every check prints one `[n] name: PASS|FAIL` line with
//! the measured numbers; the target fails if any check does.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;

use common::*;
use spanner_forge::geom::{low_angle_weight, REL_TOL};
use spanner_forge::graph::{verify_stretch, DEFAULT_ORACLE_LIMIT};
use spanner_forge::instances::{gen_lightness_lb, gen_motivating, gen_sparsity_lb, gen_sparsity_lb_x, GeneratedInstance};
use spanner_forge::nets::{
    approximate_edge, build_cluster_graph, build_hierarchy, build_net_tree_spanner, cluster_dist, NetHierarchy,
    DEFAULT_HOP_CAP,
};
use spanner_forge::prune::{delta_update, greedy_prune, update_params, PruneOutcome, PruneParams, Regime};
use spanner_forge::{brute_force_optimal, path_greedy, Objective, Point, PointSet, SpannerGraph};

fn witness(inst: &GeneratedInstance) -> SpannerGraph {
    inst.witness_graph().expect("instance has a witness").unwrap()
}

fn contains_all(g: &SpannerGraph, pairs: &[(usize, usize)]) -> bool {
    pairs.iter().all(|&(u, v)| g.contains(u, v))
}

fn c01_greedy_correctness() {
    let mut build_secs = 0.0;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut runs = 0;
    for d in [2, 3] {
        for eps in [0.5, 0.1] {
            for seed in 0..5 {
                let pts = random_points(200, d, 100 * d as u64 + seed);
                let clock = Instant::now();
                let g = path_greedy(&pts, 1.0 + eps).unwrap();
                let rep = verify_stretch(&g, &pts).unwrap();
                build_secs += clock.elapsed().as_secs_f64();
                let oracle = oracle_stretch(&g, &pts);
                ok &= rep.max_stretch <= 1.0 + eps + 1e-9;
                ok &= (rep.max_stretch - oracle).abs() <= 1e-9 * oracle;
                worst = worst.max(rep.max_stretch - 1.0 - eps);
                runs += 1;
            }
        }
    }
    ok &= runs == 20 && build_secs < 30.0;
    println!(
        "[1] greedy correctness: {} ({runs} instances, worst stretch - (1+eps) = {worst:.3e}, greedy+verify {build_secs:.2}s)",
        verdict(ok)
    );
    assert!(ok);
}

fn c02_sparsity_witness_and_bi_clique() {
    let clock = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for eps in [0.04, 0.02, 0.01] {
        let inst = gen_sparsity_lb(eps).unwrap();
        let h = witness(&inst);
        let ws = verify_stretch(&h, &inst.points).unwrap().max_stretch;
        let g = path_greedy(&inst.points, 1.0 + eps).unwrap();
        let ab = inst.cross_pairs("A", "B");
        let k = inst.meta.k.unwrap();
        ok &= ws <= 1.0 + eps + 1e-12;
        ok &= ab.len() == k * k && contains_all(&g, &ab);
        notes.push(format!("eps={eps}: k={k}, witness stretch {ws:.6}, |E_gr|={} |E_H|={}", g.edge_count(), h.edge_count()));
    }
    ok &= clock.elapsed().as_secs() < 300;
    println!("[2ab] sparsity witness + bi-clique: {} ({})", verdict(ok), notes.join("; "));
    assert!(ok);
}

fn sparsity_ratio(eps: f64) -> (usize, f64) {
    let inst = gen_sparsity_lb(eps).unwrap();
    let g = path_greedy(&inst.points, 1.0 + eps).unwrap();
    let h = witness(&inst);
    (inst.meta.k.unwrap(), g.edge_count() as f64 / h.edge_count() as f64)
}

// With the construction's k = floor(tan(alpha/10)/(2 eps)) + 1, every eps in
// {0.04, 0.02, 0.01} gives k = 1, so the edge ratio does not move. The growth
// only appears once k > 1 (eps well below 0.005); that range is reported too.
fn c02c_sparsity_ratio_growth() {
    let eps_list = [0.04, 0.02, 0.01];
    let rows: Vec<(f64, usize, f64)> = eps_list
        .iter()
        .map(|&e| {
            let (k, r) = sparsity_ratio(e);
            (e, k, r)
        })
        .collect();
    let increasing = rows.windows(2).all(|w| w[1].2 > w[0].2);
    let s = slope(&rows.iter().map(|&(e, _, r)| (1.0 / e, r)).collect::<Vec<_>>());
    let ok = increasing && (s - 0.5).abs() <= 0.15;
    let small: Vec<(f64, usize, f64)> = [4e-4, 2e-4, 1e-4]
        .iter()
        .map(|&e| {
            let (k, r) = sparsity_ratio(e);
            (e, k, r)
        })
        .collect();
    let s_small = slope(&small.iter().map(|&(e, _, r)| (1.0 / e, r)).collect::<Vec<_>>());
    println!(
        "[2c] sparsity ratio growth: {} (eps,k,ratio = {rows:?}, slope {s:.3}; informational eps,k,ratio = {small:?}, slope {s_small:.3})",
        verdict(ok)
    );
    assert!(ok, "ratio does not grow over eps in {{0.04, 0.02, 0.01}}: {rows:?}");
}

fn c03_relaxed_sparsity() {
    let clock = Instant::now();
    let eps = 0.01;
    let mut ok = true;
    let mut notes = Vec::new();
    for x in [1.0, 2.0, 4.0] {
        let inst = gen_sparsity_lb_x(eps, x).unwrap();
        let g = path_greedy(&inst.points, 1.0 + x * eps).unwrap();
        let ab = inst.cross_pairs("A", "B");
        let k = inst.meta.k.unwrap();
        let ws = verify_stretch(&witness(&inst), &inst.points).unwrap().max_stretch;
        ok &= ab.len() == k * k && contains_all(&g, &ab) && ws <= 1.0 + eps + 1e-12;
        notes.push(format!("x={x}: k={k}, witness stretch {ws:.6}"));
    }
    ok &= clock.elapsed().as_secs() < 300;
    println!("[3] relaxed sparsity: {} ({})", verdict(ok), notes.join("; "));
    assert!(ok);
}

fn c04_lightness_separation() {
    let clock = Instant::now();
    let mut ok = true;
    let mut ratios = Vec::new();
    let mut notes = Vec::new();
    for eps in [0.02, 0.01, 0.005] {
        let inst = gen_lightness_lb(eps).unwrap();
        let (alpha, beta) = (inst.meta.alpha.unwrap(), inst.meta.beta.unwrap());
        let h = witness(&inst);
        let g = path_greedy(&inst.points, 1.0 + eps).unwrap();
        let an = inst.meta.group("anchors");
        let heavy = euclid(&inst.points, an[0], an[2]) * (1.0 - eps);
        let count = g.edges().filter(|e| e.w >= heavy).count();
        let need = (alpha / (2.0 * eps * beta)).floor() as usize;
        ok &= h.weight() <= 2.0 * beta + 1e-9;
        ok &= count >= need;
        ratios.push((1.0 / eps, g.weight() / h.weight()));
        notes.push(format!(
            "eps={eps}: n={}, heavy {count} >= {need}, witness {:.4} <= {:.4}",
            inst.len(),
            h.weight(),
            2.0 * beta
        ));
    }
    let s = slope(&ratios);
    ok &= (s - 1.0).abs() <= 0.2;
    ok &= clock.elapsed().as_secs() < 600;
    println!("[4] lightness separation: {} ({}; weight ratio slope {s:.3})", verdict(ok), notes.join("; "));
    assert!(ok);
}

fn prune_instances() -> Vec<(&'static str, f64, PointSet)> {
    vec![
        ("random500", 0.1, random_points(500, 2, 7)),
        ("motivating", 0.01, gen_motivating(0.01).unwrap().points.normalized()),
        ("sparsity-lb", 0.02, gen_sparsity_lb(0.02).unwrap().points.normalized()),
    ]
}

fn prune(points: &PointSet, eps: f64, k: usize, seed: Option<&SpannerGraph>) -> PruneOutcome {
    let params = PruneParams::new(eps, points.dim()).practical().with_iterations(k);
    greedy_prune(points, &params, seed).unwrap()
}

fn c05_prune_validity() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, eps, pts) in prune_instances() {
        for k in [1, 2] {
            let out = prune(&pts, eps, k, None);
            let kappa = PruneParams::new(eps, pts.dim()).practical().kappa_used();
            let bound = 1.0 + (kappa + 1.0).powi(2 * k as i32) * eps;
            let s = verify_stretch(&out.graph, &pts).unwrap().max_stretch;
            let reconciled = out.reports.len() == k && out.reports.iter().all(|r| r.reconciles());
            ok &= s <= bound && reconciled;
            let input = out.reports[0].input_edges;
            notes.push(format!(
                "{name} k={k}: {input}->{} edges, stretch {s:.4} <= {bound:.2}",
                out.graph.edge_count()
            ));
        }
    }
    println!("[5] prune validity: {} ({})", verdict(ok), notes.join("; "));
    assert!(ok);
}

// The 25% target is out of reach on this instance: the greedy spanner has 27
// edges on 24 points and any connected graph needs 23. The fallback (valid
// output, documented shortfall) is what is checked.
fn c06_prune_effectiveness() {
    let eps = 0.01;
    let pts = gen_motivating(eps).unwrap().points.normalized();
    let greedy = path_greedy(&pts, 1.0 + eps).unwrap();
    let target = 0.25 * greedy.edge_count() as f64;
    let mut ok = true;
    let mut notes = Vec::new();
    let mut hit = false;
    for k in [1, 2] {
        let out = prune(&pts, eps, k, Some(&greedy));
        let s = verify_stretch(&out.graph, &pts).unwrap().max_stretch;
        let kappa = out.reports[0].kappa_used;
        let valid = s <= 1.0 + (kappa + 1.0).powi(2 * k as i32) * eps && out.reports.iter().all(|r| r.reconciles());
        hit |= out.graph.edge_count() as f64 <= target && s <= 1.0 + 10.0 * eps;
        ok &= valid;
        notes.push(format!(
            "k={k}: {} -> {} edges (target {target:.2}, spanning tree floor {}), stretch {s:.4}",
            greedy.edge_count(),
            out.graph.edge_count(),
            pts.len() - 1
        ));
        for r in &out.reports {
            notes.push(format!(
                "  iter {}: type-i {} type-ii {} phase1 pruned {} restored {} phase2 dropped {} helpers {}",
                r.iteration,
                r.type_i,
                r.type_ii,
                r.phase1.pruned.len(),
                r.phase1.restored,
                r.phase2.dropped.len(),
                r.phase2.helpers_added
            ));
        }
    }
    let mode = if hit { "target met" } else { "target missed, fallback" };
    println!("[6] prune effectiveness: {} ({mode})\n{}", verdict(ok), notes.join("\n"));
    assert!(ok);
}

struct OracleRun {
    seed: u64,
    opt: usize,
    greedy: usize,
    pruned: usize,
    pruned_stretch: f64,
    // Optimum at the stretch the pruned graph actually reaches.
    opt_at_pruned: usize,
    valid: bool,
}

fn oracle_runs() -> Vec<OracleRun> {
    let eps = 0.1;
    (0..50u64)
        .map(|seed| {
            let n = 5 + (seed % 5) as usize;
            let pts = random_points(n, 2, 7000 + seed);
            let opt = brute_force_optimal(&pts, eps, Objective::MinEdges, DEFAULT_ORACLE_LIMIT).unwrap();
            let gr = path_greedy(&pts, 1.0 + eps).unwrap();
            let pr = prune(&pts, eps, 1, Some(&gr)).graph;
            let pruned_stretch = oracle_stretch(&pr, &pts);
            let relaxed = (pruned_stretch - 1.0).max(eps) * (1.0 + 1e-9);
            let opt_at_pruned = brute_force_optimal(&pts, relaxed, Objective::MinEdges, DEFAULT_ORACLE_LIMIT)
                .unwrap()
                .edge_count();
            let valid = opt.edge_count() <= gr.edge_count()
                && oracle_stretch(&opt, &pts) <= 1.0 + eps + 1e-9
                && oracle_stretch(&gr, &pts) <= 1.0 + eps + 1e-9;
            OracleRun {
                seed,
                opt: opt.edge_count(),
                greedy: gr.edge_count(),
                pruned: pr.edge_count(),
                pruned_stretch,
                opt_at_pruned,
                valid,
            }
        })
        .collect()
}

fn c07_oracle_consistency() {
    let runs = oracle_runs();
    let ok = runs.iter().all(|r| r.valid && r.pruned >= r.opt_at_pruned);
    let sum = |f: fn(&OracleRun) -> usize| runs.iter().map(f).sum::<usize>();
    println!(
        "[7] oracle consistency: {} (50 instances, eps 0.1; edges: oracle {}, greedy {}, pruned {}; pruned >= optimum at its own measured stretch on all)",
        verdict(ok),
        sum(|r| r.opt),
        sum(|r| r.greedy),
        sum(|r| r.pruned)
    );
    assert!(ok);
}

// The pruned graph may stretch up to 1 + (kappa+1)^2 eps, so the optimal
// (1+eps)-spanner is not a lower bound for it. This check is kept as stated
// and fails whenever pruning trades stretch for an edge.
fn c07b_pruned_not_below_strict_oracle() {
    let runs = oracle_runs();
    let below: Vec<String> = runs
        .iter()
        .filter(|r| r.pruned < r.opt)
        .map(|r| format!("seed {}: pruned {} < oracle {} (pruned stretch {:.4})", r.seed, r.pruned, r.opt, r.pruned_stretch))
        .collect();
    let ok = below.is_empty();
    println!("[7b] pruned >= (1+eps)-oracle: {} ({})", verdict(ok), if ok { "all 50".into() } else { below.join("; ") });
    assert!(ok, "{below:?}");
}

fn hierarchy_invariants(pts: &PointSet, h: &NetHierarchy) -> bool {
    let mut ok = h.level(0).len() == pts.len() && h.level(h.top()).len() == 1;
    for i in 0..h.num_levels() {
        let lvl = h.level(i);
        let r = NetHierarchy::radius(i);
        for (a, &p) in lvl.iter().enumerate() {
            for &q in &lvl[a + 1..] {
                // N_0 is the whole normalized set, whose closest pair sits at exactly 1.
                let d = euclid(pts, p, q);
                ok &= if i == 0 { d >= r * (1.0 - REL_TOL) } else { d > r };
            }
        }
        if i > 0 {
            let upper: BTreeSet<usize> = lvl.iter().copied().collect();
            for &p in h.level(i - 1) {
                ok &= lvl.iter().any(|&q| euclid(pts, p, q) <= r);
                ok &= h.parent(p, i - 1).is_some_and(|q| upper.contains(&q));
            }
        }
    }
    ok
}

fn c08_net_structures() {
    let mut ok = true;
    let mut levels = Vec::new();
    for (n, d, seed) in [(1000, 2, 1), (1000, 3, 2), (300, 2, 3), (50, 4, 4)] {
        let pts = random_points(n, d, 8000 + seed);
        let h = build_hierarchy(&pts);
        ok &= hierarchy_invariants(&pts, &h);
        levels.push(h.num_levels());
    }
    let mut worst_stretch: f64 = 0.0;
    for eps in [0.5, 0.25] {
        for seed in 0..10 {
            let pts = random_points(120, 2, 8100 + seed);
            let h = build_hierarchy(&pts);
            let g = build_net_tree_spanner(&h, &pts, eps).unwrap();
            let s = verify_stretch(&g, &pts).unwrap().max_stretch;
            ok &= s <= 1.0 + eps + 1e-9;
            worst_stretch = worst_stretch.max(s - 1.0 - eps);
        }
    }
    let mut worst_disp: f64 = 0.0;
    let mut r = rng(8200);
    for eps in [0.5, 0.25] {
        let pts = random_points(300, 2, 8300);
        let h = build_hierarchy(&pts);
        let g = build_net_tree_spanner(&h, &pts, eps).unwrap();
        for _ in 0..500 {
            let u = r.random_range(0..pts.len());
            let v = (u + r.random_range(1..pts.len())) % pts.len();
            let (a, b, _) = approximate_edge(&h, &g, u, v).unwrap();
            ok &= g.contains(a, b);
            let uv = euclid(&pts, u, v);
            let disp = euclid(&pts, u, a).max(euclid(&pts, v, b)) / uv;
            ok &= disp <= eps * (1.0 + 1e-9);
            worst_disp = worst_disp.max(disp / eps);
        }
    }
    println!(
        "[8] net structures: {} (levels {levels:?}, net-tree worst stretch - (1+eps) = {worst_stretch:.3e}, max displacement/eps {worst_disp:.3})",
        verdict(ok)
    );
    assert!(ok);
}

// Random points in the unit square, half of them with a twin at distance
// ~1e-7, so that contraction at scale 2^i actually merges vertices.
fn twinned_points(m: usize, seed: u64) -> PointSet {
    let base = random_raw(m, 2, seed);
    let mut r = rng(seed ^ 0x5eed);
    let mut pts = base.to_points();
    for i in 0..m / 2 {
        let p = base.point(i);
        let ang: f64 = r.random::<f64>() * std::f64::consts::TAU;
        pts.push(Point::new(vec![p[0] + 1e-7 * ang.cos(), p[1] + 1e-7 * ang.sin()]));
    }
    PointSet::new(&pts).unwrap()
}

fn below(g: &SpannerGraph, scale: f64) -> SpannerGraph {
    let mut out = SpannerGraph::new(g.n());
    for e in g.edges().filter(|e| e.w < scale) {
        out.add_weighted(e.u, e.v, e.w);
    }
    out
}

// Exact distances in the graph with every edge of weight <= `thr` collapsed.
fn contracted_distances(g: &SpannerGraph, thr: f64, s: usize) -> Vec<f64> {
    let n = g.n();
    let mut rep: Vec<usize> = (0..n).collect();
    fn root(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            x = rep[x];
        }
        x
    }
    for e in g.edges().filter(|e| e.w <= thr) {
        let (a, b) = (root(&mut rep, e.u), root(&mut rep, e.v));
        rep[a.max(b)] = a.min(b);
    }
    let cls: Vec<usize> = (0..n).map(|u| root(&mut rep, u)).collect();
    let mut q = SpannerGraph::new(n);
    for e in g.edges() {
        let (a, b) = (cls[e.u], cls[e.v]);
        if a != b && q.edge_weight(a, b).is_none_or(|w| e.w < w) {
            q.remove(a, b);
            q.add_weighted(a, b, e.w);
        }
    }
    let d = distances_from(&q, cls[s]);
    (0..n).map(|u| d[cls[u]]).collect()
}

fn c09_cluster_sandwich() {
    let eps = 0.1;
    let mut ok = true;
    let (mut worst_up, mut worst_low, mut worst_dev, mut worst_contract_up): (f64, f64, f64, f64) = (1.0, f64::INFINITY, 0.0, 1.0);
    let mut tested = 0;
    let mut merged = 0;
    let mut r = rng(9000);
    for seed in 0..10u64 {
        let pts = twinned_points(200 + 20 * seed as usize, 9100 + seed);
        let n = pts.len();
        let g = path_greedy(&pts, 1.0 + eps).unwrap();
        let i = -2 - (seed % 3) as i32;
        let scale = (i as f64).exp2();
        let gb = below(&g, scale);
        let f = build_cluster_graph(&gb, i, eps, false, n).unwrap();
        let fc = build_cluster_graph(&gb, i, eps, true, n).unwrap();
        merged += (0..n).filter(|&u| fc.contraction[u] != u).count();
        let thr = scale * eps * eps / n as f64;
        let mut found = 0;
        let mut attempts = 0;
        while found < 200 && attempts < 200_000 {
            attempts += 1;
            let s = r.random_range(0..n);
            let t = r.random_range(0..n);
            let st = euclid(&pts, s, t);
            if s == t || st < scale || st >= 2.0 * scale {
                continue;
            }
            let exact = distances_from(&gb, s)[t];
            // Bounded-hop queries only answer pairs with a short enough
            // path below the scale; long detours fall outside the hop cap.
            if exact > 4.0 * scale {
                continue;
            }
            found += 1;
            let approx = cluster_dist(&f, s, t, DEFAULT_HOP_CAP);
            let ratio = approx / exact;
            ok &= ratio >= 1.0 - 1e-12 && ratio <= 1.0 + 10.0 * eps;
            worst_up = worst_up.max(ratio);
            worst_low = worst_low.min(ratio);

            let contracted = contracted_distances(&gb, thr, s)[t];
            let dev = exact - contracted;
            ok &= dev >= -1e-12 && dev <= scale * eps * eps;
            worst_dev = worst_dev.max(dev / (scale * eps * eps));
            let ac = cluster_dist(&fc, s, t, DEFAULT_HOP_CAP);
            ok &= ac + scale * eps * eps >= exact - 1e-12 && ac <= (1.0 + 10.0 * eps) * exact;
            worst_contract_up = worst_contract_up.max(ac / exact);
        }
        ok &= found == 200;
        tested += found;
    }
    println!(
        "[9] cluster sandwich: {} ({tested} pairs, ratio in [{worst_low:.4}, {worst_up:.4}] (c = {:.2}), contracted ratio <= {worst_contract_up:.4}, {merged} vertices merged, max deviation / 2^i eps^2 = {worst_dev:.3})",
        verdict(ok),
        (worst_up - 1.0) / eps
    );
    assert!(ok);
}

// A path from a to b with random perpendicular wiggles, rescaled until its
// length is at most (1+eps)|ab|, cut into edges and shuffled.
fn low_angle_case(r: &mut impl Rng) -> (Vec<(Point, Point)>, Point, Point, f64) {
    let d = r.random_range(2..=3);
    let eps = 10f64.powf(r.random_range(-4.0..-1.0));
    let a: Vec<f64> = (0..d).map(|_| r.random_range(-5.0..5.0)).collect();
    let b: Vec<f64> = (0..d).map(|_| r.random_range(-5.0..5.0)).collect();
    let ab: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let m = r.random_range(2..40);
    let mut fr: Vec<f64> = (0..m).map(|_| r.random::<f64>()).collect();
    fr.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let offsets: Vec<Vec<f64>> = (0..m).map(|_| (0..d).map(|_| r.random_range(-1.0..1.0)).collect()).collect();
    let mut amp = r.random_range(0.0..0.5) * ab;
    loop {
        let mut pts = vec![a.clone()];
        for (f, o) in fr.iter().zip(&offsets) {
            pts.push((0..d).map(|k| a[k] + f * (b[k] - a[k]) + amp * o[k]).collect());
        }
        pts.push(b.clone());
        let len: f64 = pts
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
            .sum();
        if len <= (1.0 + eps) * ab {
            let mut edges: Vec<(Point, Point)> = pts
                .windows(2)
                .map(|w| {
                    if r.random::<bool>() {
                        (Point::new(w[1].clone()), Point::new(w[0].clone()))
                    } else {
                        (Point::new(w[0].clone()), Point::new(w[1].clone()))
                    }
                })
                .collect();
            for j in (1..edges.len()).rev() {
                edges.swap(j, r.random_range(0..=j));
            }
            return (edges, Point::new(a), Point::new(b), eps);
        }
        amp *= 0.7;
    }
}

fn c10_lemma_suite() {
    let mut r = rng(10_000);
    let mut failures = 0;
    let mut min_frac = f64::INFINITY;
    for _ in 0..1000 {
        let (edges, a, b, eps) = low_angle_case(&mut r);
        let ab: f64 = a.coords.iter().zip(&b.coords).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let w = low_angle_weight(&edges, &a, &b, 2.0 * eps.sqrt()).unwrap();
        if w < 0.5 * ab {
            failures += 1;
        }
        min_frac = min_frac.min(w / ab);
    }

    let mut bad_delta = 0;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..1000 {
        let kappa = 10f64.powf(r.random_range(0.31..4.0));
        let delta = kappa.powi(-5) * r.random_range(1e-6..1.0);
        let expanded = (delta.ln_1p() + (kappa * delta).ln_1p() + (kappa * kappa * delta).ln_1p()).exp_m1();
        let got = delta_update(kappa, delta);
        let mut p = PruneParams::new(delta, 2);
        p.regime = Regime::Theoretical;
        p.kappa = kappa;
        let next = update_params(&p).delta;
        let bound = (kappa + 1.0).powi(2) * delta;
        if !(got < bound && next < bound && (got - expanded).abs() <= 1e-9 * expanded && (next - got).abs() <= 1e-9 * got) {
            bad_delta += 1;
        }
        max_ratio = max_ratio.max(got / bound);
    }
    let ok = failures == 0 && bad_delta == 0;
    println!(
        "[10] lemma suite: {} (low-angle failures {failures}/1000, min weight/|ab| {min_frac:.3}; delta failures {bad_delta}/1000, max delta'/((k+1)^2 d) {max_ratio:.4})",
        verdict(ok)
    );
    assert!(ok);
}

fn main() {
    std::panic::set_hook(Box::new(|info| eprintln!("{info}")));
    let checks: &[(&str, fn())] = &[
        ("c01_greedy_correctness", c01_greedy_correctness),
        ("c02_sparsity_witness_and_bi_clique", c02_sparsity_witness_and_bi_clique),
        ("c02c_sparsity_ratio_growth", c02c_sparsity_ratio_growth),
        ("c03_relaxed_sparsity", c03_relaxed_sparsity),
        ("c04_lightness_separation", c04_lightness_separation),
        ("c05_prune_validity", c05_prune_validity),
        ("c06_prune_effectiveness", c06_prune_effectiveness),
        ("c07_oracle_consistency", c07_oracle_consistency),
        ("c07b_pruned_not_below_strict_oracle", c07b_pruned_not_below_strict_oracle),
        ("c08_net_structures", c08_net_structures),
        ("c09_cluster_sandwich", c09_cluster_sandwich),
        ("c10_lemma_suite", c10_lemma_suite),
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, f)| std::panic::catch_unwind(f).is_err())
        .map(|(name, _)| *name)
        .collect();
    println!("\nacceptance: {} of {} checks passed", checks.len() - failed.len(), checks.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
