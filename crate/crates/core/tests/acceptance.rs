//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use fdelete::c4::{solve_c4, solve_c4_on, C4Options};
use fdelete::canon::all_graphs;
use fdelete::decomp::{heuristic_nice, heuristic_td, make_nice};
use fdelete::folio_dp::{heuristic_branch, solve_minor, solve_tm_folio};
use fdelete::hardness::{self, Completion};
use fdelete::oracle::{min_deletion, min_deletion_branching, min_deletion_bruteforce, verify_solution, Mode};
use fdelete::paths::{solve_p3, solve_p4};
use fdelete::pattern::{c4_condition, is_p3_free, is_p4_free, is_topological_minor};
use fdelete::random::{erdos_renyi, partial_ktree};
use fdelete::wpart::{all_partitions, Partition, WeightedPartitionSet};
use fdelete::{Family, Graph, Solved};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() <= limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

/// Graphs of the exhaustive and random DP suites, shared with the edge bound.
fn suite_graphs() -> (Vec<Graph>, Vec<(usize, Graph)>) {
    let small: Vec<Graph> = (0..=6).flat_map(all_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = Vec::new();
    for n in [8, 9, 10] {
        for _ in 0..200 {
            let p = rng.gen_range(0.1..0.5);
            random.push((n, erdos_renyi(&mut rng, n, p)));
        }
    }
    (small, random)
}

fn structural() -> Outcome {
    let t = Instant::now();
    let (p3, p4, c4) = (Graph::path(3), Graph::path(4), Graph::cycle(4));
    let mut count = 0;
    for n in 0..=6 {
        for g in all_graphs(n) {
            count += 1;
            let e = |s: &str| format!("{s} disagrees on {:?}", g.edges());
            ensure(is_p3_free(&g) == !is_topological_minor(&p3, &g).unwrap(), || e("P3"))?;
            ensure(is_p4_free(&g) == !is_topological_minor(&p4, &g).unwrap(), || e("P4"))?;
            ensure(c4_condition(&g) == !is_topological_minor(&c4, &g).unwrap(), || e("C4"))?;
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("{count} graphs on 0..=6 vertices ({} on exactly 6)", all_graphs(6).len()))
}

fn check_dp(g: &Graph, name: &str, fam: &Family, s: Solved) -> Result<(), String> {
    let o = min_deletion_bruteforce(g, fam, Mode::Tm).unwrap();
    ensure(s.optimum == o.size, || format!("{name}: dp {} vs oracle {} on {:?}", s.optimum, o.size, g.edges()))?;
    ensure(s.solution.len() == s.optimum, || format!("{name}: witness size"))?;
    ensure(verify_solution(g, fam, &s.solution, Mode::Tm).unwrap(), || format!("{name}: bad witness on {:?}", g.edges()))
}

fn dp_vs_oracle() -> Outcome {
    let t = Instant::now();
    let (small, random) = suite_graphs();
    let (p3, p4, c4) = (Family::p3(), Family::p4(), Family::c4());
    let mut runs = 0;
    for (n, g) in small.iter().map(|g| (g.n(), g)).chain(random.iter().map(|(n, g)| (*n, g))) {
        let ntd = heuristic_nice(g);
        check_dp(g, "p3", &p3, solve_p3(g, &ntd).map_err(|e| e.to_string())?)?;
        check_dp(g, "p4", &p4, solve_p4(g, &ntd).map_err(|e| e.to_string())?)?;
        runs += 2;
        if n <= 9 {
            check_dp(g, "c4", &c4, solve_c4(g).map_err(|e| e.to_string())?)?;
            runs += 1;
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{runs} solver runs on {} exhaustive + {} random graphs", small.len(), random.len()))
}

fn folio_vs_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let tm_fams: Vec<Family> = ["p3", "c3", "c4", "k3"].iter().map(|s| Family::named(s).unwrap()).collect();
    let mut graphs = 0;
    while graphs < 100 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.7);
        let g = erdos_renyi(&mut rng, n, p);
        if heuristic_td(&g).width() > 3 {
            continue;
        }
        graphs += 1;
        let bd = heuristic_branch(&g).map_err(|e| e.to_string())?;
        for f in &tm_fams {
            let s = solve_tm_folio(&g, f, bd.as_ref()).map_err(|e| e.to_string())?;
            let o = min_deletion_bruteforce(&g, f, Mode::Tm).unwrap();
            ensure(s.optimum == o.size, || format!("{}: {} vs {} on {:?}", f.name, s.optimum, o.size, g.edges()))?;
            ensure(verify_solution(&g, f, &s.solution, Mode::Tm).unwrap(), || format!("{}: bad witness", f.name))?;
        }
    }
    let minor_fams = [Family::named("k4").unwrap(), Family::c4()];
    let mut mgraphs = 0;
    while mgraphs < 50 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let g = erdos_renyi(&mut rng, n, p);
        if heuristic_td(&g).width() > 3 {
            continue;
        }
        mgraphs += 1;
        let bd = heuristic_branch(&g).map_err(|e| e.to_string())?;
        for f in &minor_fams {
            let s = solve_minor(&g, f, bd.as_ref()).map_err(|e| e.to_string())?;
            let o = min_deletion_bruteforce(&g, f, Mode::Minor).unwrap();
            ensure(s.optimum == o.size, || format!("{} minor: {} vs {} on {:?}", f.name, s.optimum, o.size, g.edges()))?;
            ensure(verify_solution(&g, f, &s.solution, Mode::Minor).unwrap(), || format!("{}: bad minor witness", f.name))?;
        }
    }
    within(t, Duration::from_secs(600))?;
    Ok(format!("{graphs} tm graphs x 4 families, {mgraphs} minor graphs x 2 families"))
}

fn representation() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0usize;
    for _ in 0..500 {
        let n = rng.gen_range(0..=5);
        let universe: Vec<usize> = (0..n).map(|i| 10 * i + 1).collect();
        let k = rng.gen_range(0..40);
        let entries = (0..k)
            .map(|_| {
                let labs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
                (Partition::from_labels(&labs), rng.gen_range(0..=100u32))
            })
            .collect();
        let a = WeightedPartitionSet::from_entries(&universe, entries).map_err(|e| e.to_string())?;
        let r = a.reduce().map_err(|e| e.to_string())?;
        for q in all_partitions(n) {
            ensure(a.opt(&q) == r.opt(&q), || format!("opt differs at {q:?} for {a:?}"))?;
        }
        ensure(r.len() <= 1 << n, || format!("{} entries after reduce over |U| = {n}", r.len()))?;
        worst = worst.max(r.len());
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("500 sets, largest reduced set {worst}"))
}

fn edge_bound() -> Outcome {
    let (small, random) = suite_graphs();
    let c4 = Family::c4();
    let mut certified = 0;
    for g in small.iter().chain(random.iter().map(|(_, g)| g)) {
        if g.n() == 0 || min_deletion_bruteforce(g, &c4, Mode::Tm).unwrap().size != 0 {
            continue;
        }
        certified += 1;
        ensure(2 * g.m() <= 3 * (g.n() - 1), || format!("m = {} > 3(n-1)/2 on {:?}", g.m(), g.edges()))?;
    }
    Ok(format!("{certified} C4-free graphs checked"))
}

fn choice_gadgets() -> Outcome {
    let t = Instant::now();
    for f in ["p6", "k4"] {
        for s in [2, 3] {
            let (inst, cg) = hardness::choice_gadget(&Family::named(f).unwrap(), s).map_err(|e| e.to_string())?;
            let o = min_deletion(&inst.graph, &inst.family, Mode::Tm).map_err(|e| e.to_string())?;
            ensure(o.size == 2 * s, || format!("{f}, s={s}: optimum {} != {}", o.size, 2 * s))?;
            for (i, &x) in cg.xs.iter().enumerate() {
                let r = min_deletion_branching(&inst.graph, &inst.family, Mode::Tm, &[x], 2 * s).map_err(|e| e.to_string())?;
                ensure(r.map(|r| r.size) == Some(2 * s), || format!("{f}, s={s}: no optimum spares x{}", i + 1))?;
            }
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok("P6 and K4, s in {2, 3}".into())
}

fn forward_soundness() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    for (f, completion) in [("p6", Completion::Paths), ("p7", Completion::Paths), ("k4", Completion::Kclass), ("c5", Completion::Kclass)] {
        let fam = Family::named(f).unwrap();
        for _ in 0..10 {
            let p = rng.gen_range(0.0..0.6);
            let (g, _) = hardness::random_permclique(&mut rng, 2, p);
            let inst = hardness::general_construction(&g, 2, &fam, completion).map_err(|e| e.to_string())?;
            let sigmas = hardness::permutation_cliques(&g, 2);
            ensure(!sigmas.is_empty(), || "planted clique missing".into())?;
            for sigma in sigmas {
                let s = hardness::sigma_solution(&inst, &sigma).map_err(|e| e.to_string())?;
                let edges = inst.layout.as_ref().unwrap().edges.len();
                ensure(s.len() == 3 * edges + 8 && s.len() == inst.budget, || format!("{f}: |S| = {}", s.len()))?;
                ensure(verify_solution(&inst.graph, &inst.family, &s, Mode::Tm).unwrap(), || {
                    format!("{f}: sigma solution {sigma:?} leaves a pattern")
                })?;
                checked += 1;
            }
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{checked} sigma solutions over 40 instances"))
}

fn vc_equivalence() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for f in ["k4", "c5", "p6"] {
        let fam = Family::named(f).unwrap();
        for n in 1..=5 {
            for g in all_graphs(n).into_iter().filter(Graph::is_connected) {
                let vc = (0u32..1 << n)
                    .filter(|m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
                    .map(|m| m.count_ones() as usize)
                    .min()
                    .unwrap();
                let inst = hardness::vc_reduction(&g, &fam).map_err(|e| e.to_string())?;
                let o = min_deletion(&inst.graph, &inst.family, Mode::Tm).map_err(|e| e.to_string())?;
                ensure(o.size == vc, || format!("{f}: vc {vc} vs {} on {:?}", o.size, g.edges()))?;
                count += 1;
            }
        }
    }
    within(t, Duration::from_secs(600))?;
    Ok(format!("{count} (graph, family) pairs"))
}

fn scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (g, td) = partial_ktree(&mut rng, 200, 8, 0.6);
    let ntd = make_nice(&td, &g).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let s = solve_p3(&g, &ntd).map_err(|e| e.to_string())?;
    let p3_time = t.elapsed();
    ensure(p3_time < Duration::from_secs(60), || format!("p3 took {p3_time:.1?}"))?;
    ensure(verify_solution(&g, &Family::p3(), &s.solution, Mode::Tm).unwrap(), || "p3 witness".into())?;

    let (g, td) = partial_ktree(&mut rng, 60, 6, 0.6);
    let s = solve_p4(&g, &make_nice(&td, &g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(verify_solution(&g, &Family::p4(), &s.solution, Mode::Tm).unwrap(), || "p4 witness".into())?;

    let (g, td) = partial_ktree(&mut rng, 60, 5, 0.6);
    let t = Instant::now();
    let s = solve_c4_on(&g, &td, C4Options::default()).map_err(|e| e.to_string())?;
    let c4_time = t.elapsed();
    ensure(c4_time < Duration::from_secs(600), || format!("c4 took {c4_time:.1?}"))?;
    ensure(verify_solution(&g, &Family::c4(), &s.solution, Mode::Tm).unwrap(), || "c4 witness".into())?;
    // table-size bounds are asserted inside the solvers; reaching here means none fired
    Ok(format!("p3 n=200 w<=8 in {p3_time:.2?}, c4 n=60 w<=5 in {c4_time:.2?}"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("structural characterizations", structural),
        ("P3/P4/C4 dynamic programs vs oracle", dp_vs_oracle),
        ("folio dynamic program vs oracle", folio_vs_oracle),
        ("partition set representation", representation),
        ("edge bound for C4-free graphs", edge_bound),
        ("choice gadget optimum", choice_gadgets),
        ("hardness forward soundness", forward_soundness),
        ("vertex cover reduction equivalence", vc_equivalence),
        ("scaling envelope", scaling),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {:.1?})", i + 1, t.elapsed()),
            Err(why) => {
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
