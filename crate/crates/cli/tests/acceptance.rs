//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the report prints in order; exits non-zero if any check fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

use bootperc::constructions::{build_hypercube_set, build_hypercube_set_recursive, build_torus_set, Family};
use bootperc::formulas::{consistency_report, grid_recursion, hypercube_set_size, torus_recursion, ReportBudget};
use bootperc::graph::{make_cycle, make_path, make_random_graph, make_torus, Graph};
use bootperc::hyperperc::{graph_to_hypergraph, hyper_closure, hyper_dim_w, HyperColouring};
use bootperc::oracle::{min_percolating_bond, min_percolating_bond_with, min_percolating_vertex, SearchOptions};
use bootperc::percolation::{
    bond_closure, bond_closure_random_order, edge_to_vertex_percolating, percolates_bond, percolates_vertex,
    vertex_to_edge_percolating,
};
use bootperc::witness::{
    basis_w, dim_w, greedy_colouring, lift_basis_cycle, lift_basis_path, lifted_basis_size, recognize, ProductKind,
};

type Check = Result<String, String>;
/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exhaustive() -> SearchOptions {
    SearchOptions { closed_forms: false, dim_floor: false, ..SearchOptions::with_budget(1 << 24) }
}

fn random_subset(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    (0..len).filter(|_| rng.next_u32() & 1 == 1).collect()
}

const PROBS: [(u32, u32); 3] = [(3, 10), (1, 2), (7, 10)];

/// Deterministic random graphs: vertex counts cycle through `2..=max_n` and
/// edge probabilities through 0.3, 0.5, 0.7.
fn corpus(count: usize, max_n: usize, salt: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let n = 2 + i % (max_n - 1);
            let (a, b) = PROBS[i % 3];
            make_random_graph(n, Ratio::new(a, b), salt * 1_000_003 + i as u64).unwrap()
        })
        .collect()
}

fn cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bootperc"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr).trim()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn hypercube_q3() -> Check {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let graph = dir.path().join("q3.json");
    let graph = graph.to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bootperc"))
        .args(["gen", "--kind", "hypercube", "--d", "3", "--out", graph])
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(out.success(), "gen failed");

    let built = cli(&["construct", "--kind", "hypercube", "--d", "3", "--r", "2"])?;
    let brute = cli(&["brute", "--graph", graph, "--r", "2"])?;
    let dim = cli(&["dim", "--graph", graph, "--r", "2", "--colouring", "product", "--family", "hypercube", "--d", "3"])?;
    let recursion = grid_recursion(&[2, 2, 2], 2).unwrap();
    ensure!(built["size"] == 5 && built["percolates"] == true, "construct gave {built}");
    ensure!(brute["status"] == "exact" && brute["size"] == 5, "brute gave {brute}");
    ensure!(dim["dim"] == 5, "dim gave {dim}");
    ensure!(recursion == 5u32.into(), "grid recursion gave {recursion}");

    let row = consistency_report(&Family::Hypercube { d: 3 }, 2, &ReportBudget::default()).unwrap();
    ensure!(
        row.eq2.as_deref() == Some("4") && row.corollary.as_deref() == Some("7"),
        "printed closed forms gave {:?}/{:?}",
        row.eq2,
        row.corollary
    );
    ensure!(row.eq2_matches_recursion == Some(false) && row.corollary_matches_recursion == Some(false), "flags wrong");
    Ok("construct = brute = dim = recursion = 5; printed closed forms 4 and 7 flagged as disagreeing".into())
}

fn torus_3x3() -> Check {
    let fam = Family::Torus { dims: vec![3, 3] };
    let g = fam.graph().unwrap();
    let (pg, c) = fam.product_colouring().unwrap();
    let cap = binom(18, 10);
    let mut notes = Vec::new();
    for (r, want) in [(2usize, 4usize), (3, 10)] {
        let rec = torus_recursion(&[3, 3], r as i64).unwrap();
        let set = fam.construct(r).unwrap();
        let dim = dim_w(&pg, &c, r).unwrap();
        let opts = SearchOptions { known_lower_bound: Some(dim), ..SearchOptions::with_budget(cap) };
        let res = min_percolating_bond_with(&g, r, &opts);
        ensure!(rec == want.into(), "r={r}: recursion {rec}");
        ensure!(set.len() == want && percolates_bond(&g, &set, r).unwrap(), "r={r}: construction {}", set.len());
        ensure!(dim == want, "r={r}: dim {dim}");
        ensure!(res.is_exact() && res.size == want, "r={r}: oracle {:?}", res);
        ensure!(res.closures_evaluated <= cap, "r={r}: {} closures", res.closures_evaluated);
        let greedy_only = min_percolating_bond(&g, r, 1 << 22);
        ensure!(greedy_only.size == want, "r={r}: greedy-floor oracle {}", greedy_only.size);
        notes.push(format!(
            "r={r}: all {want}, {} closures (greedy floor alone: {})",
            res.closures_evaluated, greedy_only.closures_evaluated
        ));
    }
    Ok(format!("{}; cap {cap}", notes.join("; ")))
}

fn grid_3x3() -> Check {
    let fam = Family::Grid { dims: vec![3, 3] };
    let g = fam.graph().unwrap();
    let (pg, c) = fam.product_colouring().unwrap();
    let rec = grid_recursion(&[3, 3], 2).unwrap();
    let set = fam.construct(2).unwrap();
    let dim = dim_w(&pg, &c, 2).unwrap();
    let res = min_percolating_bond(&g, 2, 1 << 22);
    ensure!(rec == 6u32.into(), "recursion {rec}");
    ensure!(set.len() == 6 && percolates_bond(&g, &set, 2).unwrap(), "construction {}", set.len());
    ensure!(dim == 6, "dim {dim}");
    ensure!(res.is_exact() && res.size == 6, "oracle {:?}", res);
    Ok(format!("all 6, {} closures", res.closures_evaluated))
}

fn max_degree_sharpness() -> Check {
    let mut found = 0;
    let mut seed = 0u64;
    while found < 100 {
        let n = 2 + (seed % 6) as usize;
        let r = 1 + found % 3;
        let (a, b) = PROBS[(seed % 3) as usize];
        let g = make_random_graph(n, Ratio::new(a, b), 77_000 + seed).unwrap();
        seed += 1;
        if g.num_edges() == 0 || g.max_degree() > r {
            continue;
        }
        found += 1;
        let m = g.num_edges();
        let dim = dim_w(&g, &greedy_colouring(&g), r).unwrap();
        let res = min_percolating_bond_with(&g, r, &exhaustive());
        ensure!(dim == m && res.is_exact() && res.size == m, "n={n} r={r} |E|={m}: dim {dim}, oracle {}", res.size);
    }
    Ok(format!("100 graphs (drawn from {seed}), dim = |E| = oracle"))
}

fn soundness_sweep() -> Check {
    let graphs = corpus(200, 6, 5);
    let mut violations = 0;
    let mut tight = 0;
    for g in &graphs {
        for r in 1..=3 {
            let dim = dim_w(g, &greedy_colouring(g), r).unwrap();
            let res = min_percolating_bond_with(g, r, &exhaustive());
            ensure!(res.is_exact(), "oracle did not finish");
            if dim > res.size {
                violations += 1;
            }
            if dim == res.size {
                tight += 1;
            }
        }
    }
    ensure!(violations == 0, "{violations} violations");
    Ok(format!("600 instances, 0 violations, {tight} tight"))
}

fn lift_verification() -> Check {
    let graphs = [
        ("G0", Graph::single_vertex()),
        ("P2", make_path(2).unwrap()),
        ("P3", make_path(3).unwrap()),
        ("C3", make_cycle(3).unwrap()),
        ("C4", make_cycle(4).unwrap()),
    ];
    let mut families = 0;
    for (name, g) in &graphs {
        let c = greedy_colouring(g);
        let basis = |r: i64| basis_w(g, &c, r.max(0) as usize).unwrap();
        for k in [3usize, 4] {
            for r in 1..=3i64 {
                let (br, b1, b2) = (basis(r), basis(r - 1), basis(r - 2));
                let sizes = (br.len(), b1.len(), b2.len());
                for kind in [ProductKind::Cycle, ProductKind::Path] {
                    let lifted = match kind {
                        ProductKind::Cycle => lift_basis_cycle(g, &c, &br, &b1, &b2, k),
                        ProductKind::Path => lift_basis_path(g, &c, &br, &b1, k),
                    }
                    .map_err(|e| format!("{name} k={k} r={r}: {e}"))?;
                    let product = bootperc::graph::cartesian_product(g, &kind.factor(k).unwrap());
                    for phi in &lifted.vectors {
                        let rec = recognize(&product, &lifted.colouring, r as usize, phi).unwrap();
                        ensure!(rec.is_some(), "{name} {kind:?} k={k} r={r}: vector not recognised");
                    }
                    let rows: Vec<_> = lifted.vectors.iter().map(|v| v.0.clone()).collect();
                    let rank = bootperc::linalg::rational_rank(&rows);
                    let want = lifted_basis_size(g, r as usize, sizes, k, kind);
                    ensure!(rank == want, "{name} {kind:?} k={k} r={r}: rank {rank}, expected {want}");
                    families += 1;
                }
            }
        }
    }
    Ok(format!("{families} lifted families recognised with the expected rank"))
}

fn hypercube_identities() -> Check {
    for d in 0..=10usize {
        for r in 0..=d {
            let closed = build_hypercube_set(d, r).unwrap();
            let rec = build_hypercube_set_recursive(d, r).unwrap();
            ensure!(closed == rec, "d={d} r={r}: closed form differs from recursive set");
            let s = hypercube_set_size(d, r).unwrap();
            ensure!(s == closed.len().into(), "d={d} r={r}: size {} vs s = {s}", closed.len());
            if r >= 1 && r < d {
                let sum = hypercube_set_size(d - 1, r).unwrap() + hypercube_set_size(d - 1, r - 1).unwrap();
                ensure!(s == sum, "d={d} r={r}: recursion fails");
            }
            ensure!(grid_recursion(&vec![2; d], r as i64).unwrap() == s, "d={d} r={r}: grid recursion differs");
        }
    }
    Ok("d <= 10, all r <= d".into())
}

fn hypergraph_reduction() -> Check {
    let graphs = corpus(50, 7, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut runs = 0;
    for g in &graphs {
        let h = graph_to_hypergraph(g);
        let c = greedy_colouring(g);
        for r in 1..=3 {
            for _ in 0..10 {
                let seed = random_subset(&mut rng, g.num_edges());
                let a = hyper_closure(&h, &seed, r).unwrap();
                let b = bond_closure(g, &seed, r).unwrap();
                ensure!(a.generations == b.generations, "generations differ");
                runs += 1;
            }
            let hd = hyper_dim_w(&h, &HyperColouring::from_edge_colouring(&c), r).unwrap();
            let gd = dim_w(g, &c, r).unwrap();
            ensure!(hd == gd, "dims differ: {hd} vs {gd}");
        }
    }
    Ok(format!("{runs} closure runs and 150 dimensions agree"))
}

fn inequality_one() -> Check {
    let graphs = corpus(50, 7, 8);
    for g in &graphs {
        for r in 1..=3usize {
            let me = min_percolating_bond(g, r, 1 << 24);
            let mv = min_percolating_vertex(g, r, 1 << 24);
            ensure!(me.is_exact() && mv.is_exact(), "oracle did not finish");
            let low = (0..g.n()).filter(|&v| g.degree(v) < r).count();
            ensure!(me.size <= r * mv.size && mv.size <= me.size + low, "m_e={} m={} low={low}", me.size, mv.size);
            let edges = vertex_to_edge_percolating(g, &mv.witness, r).map_err(|e| e.to_string())?;
            ensure!(percolates_bond(g, &edges, r).unwrap() && edges.len() <= r * mv.size, "vertex->edge failed");
            let verts = edge_to_vertex_percolating(g, &me.witness, r).map_err(|e| e.to_string())?;
            ensure!(percolates_vertex(g, &verts, r).unwrap() && verts.len() <= me.size + low, "edge->vertex failed");
        }
    }
    Ok("150 instances satisfy both bounds; conversions percolate within size".into())
}

fn closure_properties() -> Check {
    let graphs = corpus(100, 8, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..500 {
        let g = &graphs[i % graphs.len()];
        let r = i % 4;
        let seed = random_subset(&mut rng, g.num_edges());
        let canonical = bond_closure(g, &seed, r).unwrap();
        let shuffled = bond_closure_random_order(g, &seed, r, &mut rng).unwrap();
        ensure!(shuffled.as_slice() == canonical.mask(), "order dependence on run {i}");
    }
    for i in 0..500 {
        let g = &graphs[(i * 7) % graphs.len()];
        let r = i % 4;
        let small = random_subset(&mut rng, g.num_edges());
        let mut big = small.clone();
        big.extend(random_subset(&mut rng, g.num_edges()));
        let a = bond_closure(g, &small, r).unwrap();
        let b = bond_closure(g, &big, r).unwrap();
        ensure!(a.infected().iter().all(|&e| b.contains(e)), "monotonicity fails on pair {i}");
    }
    Ok("500 random-order runs, 500 monotone pairs".into())
}

fn scaling() -> Check {
    let t0 = Instant::now();
    let g = make_torus(&[200, 200]).unwrap();
    let set = build_torus_set(&[200, 200], 2).unwrap();
    let built = t0.elapsed();
    let t1 = Instant::now();
    let st = bond_closure(&g, &set, 2).unwrap();
    let closure = t1.elapsed();
    ensure!(st.is_complete(), "construction does not percolate");
    ensure!(closure < Duration::from_secs(5), "closure took {closure:.2?}");
    Ok(format!(
        "{} edges seeded, {} rounds, closure {closure:.2?} (build {built:.2?})",
        set.len(),
        st.generations.len() - 1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("hypercube Q3, r=2", hypercube_q3, 60),
        ("torus C3xC3, r=2 and r=3", torus_3x3, 300),
        ("grid 3x3, r=2", grid_3x3, 60),
        ("max degree <= r sharpness", max_degree_sharpness, 300),
        ("dimension bound soundness", soundness_sweep, 600),
        ("basis lifts", lift_verification, 120),
        ("hypercube set identities", hypercube_identities, 10),
        ("hypergraph reduction", hypergraph_reduction, 300),
        ("bond/vertex minimum inequality", inequality_one, 600),
        ("closure confluence and monotonicity", closure_properties, 120),
        ("200x200 torus closure", scaling, 60),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*limit) => Err(format!("{msg}; over the {limit}s limit")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{tag} [{:>2}] {name}: {msg} ({took:.2?})", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
