//! Exhaustive minimum percolating set search.
//!
//! Candidate sets are tried by increasing size and, within a size, in
//! colexicographic order, so the first hit is the colex-least minimum. Each
//! size is scanned in fixed-size batches that are tested in parallel; the
//! first hit of a batch is taken by position, so results never depend on
//! scheduling.
//!
//! `closures_evaluated` counts candidates in that order up to and including
//! the witness, which is what the budget caps. The count is the same whether
//! the batches run in parallel or not.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{EdgeIndex, Graph};
use crate::hyperperc::{hyper_closure, Hypergraph};
use crate::percolation::{bond_closure, neighbour_closure};
use crate::witness::{dim_w, greedy_colouring};

const BATCH: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Exact,
    Bounds,
}

/// `{"status", "size", "witness", "lower", "upper", "closures_evaluated"}`.
///
/// For `Bounds`, `size` and `witness` describe the best percolating set known
/// (`upper`), and `lower` is the smallest size not yet ruled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub status: SearchStatus,
    pub size: usize,
    pub witness: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
    pub closures_evaluated: u64,
}

impl OracleResult {
    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }

    fn exact(witness: Vec<usize>, closures_evaluated: u64) -> Self {
        let size = witness.len();
        OracleResult {
            status: SearchStatus::Exact,
            size,
            witness,
            lower: size,
            upper: size,
            closures_evaluated,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of closure evaluations.
    pub budget: u64,
    /// Answer `r = 0` and `Δ <= r` (bond) without searching.
    pub closed_forms: bool,
    /// Start at the greedy-colouring dimension instead of the number of
    /// forced items. Turning this off gives a search that is independent of
    /// the lower bound, for checking the bound itself.
    pub dim_floor: bool,
    /// Extra certified lower bound on the answer, e.g. the witness-space
    /// dimension under a colouring better than the greedy one. Sizes below it
    /// are skipped, so it must be a true lower bound.
    pub known_lower_bound: Option<usize>,
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions { budget, closed_forms: true, dim_floor: true, known_lower_bound: None }
    }
}

/// Colex-ordered `t`-subsets of `0..m`.
struct Colex {
    comb: Vec<usize>,
    m: usize,
    done: bool,
}

impl Colex {
    fn new(m: usize, t: usize) -> Self {
        Colex { comb: (0..t).collect(), m, done: t > m }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.comb.clone();
        let t = self.comb.len();
        // lowest position that can move up without colliding with the next
        let i = (0..t).find(|&i| {
            let cap = if i + 1 < t { self.comb[i + 1] } else { self.m };
            self.comb[i] + 1 < cap
        });
        match i {
            Some(i) => {
                self.comb[i] += 1;
                for (j, x) in self.comb[..i].iter_mut().enumerate() {
                    *x = j;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Search over subsets of `0..universe` that contain `mandatory`, starting
/// at size `floor`.
fn search<F>(universe: usize, mandatory: &[usize], floor: usize, budget: u64, percolates: F) -> OracleResult
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let mut is_mandatory = vec![false; universe];
    for &i in mandatory {
        is_mandatory[i] = true;
    }
    let free: Vec<usize> = (0..universe).filter(|&i| !is_mandatory[i]).collect();
    let assemble = |comb: &[usize]| {
        let mut set: Vec<usize> = mandatory.iter().copied().chain(comb.iter().map(|&j| free[j])).collect();
        set.sort_unstable();
        set
    };

    let mut evaluated = 0u64;
    let start = floor.max(mandatory.len()).min(universe);
    for size in start..=universe {
        let mut combos = Colex::new(free.len(), size - mandatory.len());
        loop {
            let room = budget.saturating_sub(evaluated);
            let batch: Vec<Vec<usize>> = combos.by_ref().take(BATCH.min(room as usize)).collect();
            if batch.is_empty() {
                if room == 0 && !combos.done {
                    let all: Vec<usize> = (0..universe).collect();
                    return OracleResult {
                        status: SearchStatus::Bounds,
                        size: universe,
                        witness: all,
                        lower: size,
                        upper: universe,
                        closures_evaluated: evaluated,
                    };
                }
                break;
            }
            let hit = batch.par_iter().position_first(|comb| percolates(&assemble(comb)));
            match hit {
                Some(p) => return OracleResult::exact(assemble(&batch[p]), evaluated + p as u64 + 1),
                None => evaluated += batch.len() as u64,
            }
        }
    }
    // unreachable for a monotone process: the full universe percolates
    OracleResult::exact((0..universe).collect(), evaluated)
}

/// Witness-space dimension under the greedy colouring; a lower bound on the
/// minimum percolating edge set size.
pub fn lower_bound_hint(g: &Graph, r: usize) -> usize {
    dim_w(g, &greedy_colouring(g), r).expect("greedy colouring is proper")
}

/// Exact `m_e(G, r)` with the colex-least witness, or bounds if `budget`
/// closure evaluations do not suffice.
pub fn min_percolating_bond(g: &Graph, r: usize, budget: u64) -> OracleResult {
    min_percolating_bond_with(g, r, &SearchOptions::with_budget(budget))
}

pub fn min_percolating_bond_with(g: &Graph, r: usize, opts: &SearchOptions) -> OracleResult {
    if opts.closed_forms {
        if r == 0 {
            return OracleResult::exact(Vec::new(), 0);
        }
        if g.max_degree() <= r {
            return OracleResult::exact((0..g.num_edges()).collect(), 0);
        }
    }
    // an edge whose endpoints both have degree < r can never be infected
    let mandatory: Vec<EdgeIndex> = (0..g.num_edges())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            g.degree(u) < r && g.degree(v) < r
        })
        .collect();
    let hint = if opts.dim_floor { lower_bound_hint(g, r) } else { 0 };
    let floor = hint.max(opts.known_lower_bound.unwrap_or(0));
    search(g.num_edges(), &mandatory, floor, opts.budget, |seed| {
        matches!(bond_closure(g, seed, r), Ok(s) if s.is_complete())
    })
}

/// Exact `m(G, r)` for the r-neighbour process.
pub fn min_percolating_vertex(g: &Graph, r: usize, budget: u64) -> OracleResult {
    min_percolating_vertex_with(g, r, &SearchOptions::with_budget(budget))
}

pub fn min_percolating_vertex_with(g: &Graph, r: usize, opts: &SearchOptions) -> OracleResult {
    if opts.closed_forms && r == 0 {
        return OracleResult::exact(Vec::new(), 0);
    }
    let mandatory: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < r).collect();
    // m_e <= r·m, so m >= ceil(dim W / r)
    let floor = if r == 0 || !opts.dim_floor { 0 } else { lower_bound_hint(g, r).div_ceil(r) };
    let floor = floor.max(opts.known_lower_bound.unwrap_or(0));
    search(g.n(), &mandatory, floor, opts.budget, |seed| {
        matches!(neighbour_closure(g, seed, r), Ok(s) if s.is_complete())
    })
}

/// Exact minimum percolating vertex set of a hypergraph. Vertices that no
/// hyperedge of size `>= r` covers are always seeded.
pub fn min_percolating_hyper(h: &Hypergraph, r: usize, budget: u64) -> OracleResult {
    let mut reachable = vec![false; h.n()];
    for s in h.hyperedges() {
        if s.len() >= r {
            for &v in s {
                reachable[v] = true;
            }
        }
    }
    let mandatory: Vec<usize> = (0..h.n()).filter(|&v| !reachable[v]).collect();
    search(h.n(), &mandatory, 0, budget, |seed| {
        matches!(hyper_closure(h, seed, r), Ok(s) if s.is_complete())
    })
}
