//! Percolating edge sets for products with cycles and paths, and the
//! recursive sets for tori, grids and hypercubes built from them.
//!
//! In `G □ C_k` (or `G □ P_k`) the copy of vertex `v` in layer `t` is
//! `v * k + t`, matching [`cartesian_product`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::graph::{cartesian_product, make_cycle, make_grid, make_hypercube, make_path, make_torus, EdgeIndex, Graph};
use crate::percolation::percolates_bond;
use crate::witness::{recursive_product_colouring, EdgeColouring, ProductKind};

fn require_percolates(g: &Graph, set: &[EdgeIndex], r: usize, what: &str) -> Result<()> {
    if percolates_bond(g, set, r)? {
        Ok(())
    } else {
        Err(Error::PreconditionViolation(format!("{what} does not {r}-percolate the factor")))
    }
}

struct Layers<'a> {
    g: &'a Graph,
    product: Graph,
    k: usize,
    out: Vec<EdgeIndex>,
}

impl Layers<'_> {
    fn edge(&self, a: usize, b: usize) -> EdgeIndex {
        self.product.edge_index(a, b).expect("edge of the product")
    }

    fn copy_set(&mut self, set: &[EdgeIndex], t: usize) {
        for &e in set {
            let (u, w) = self.g.edge(e);
            let pe = self.edge(u * self.k + t, w * self.k + t);
            self.out.push(pe);
        }
    }

    fn rung(&mut self, v: usize, t: usize, t2: usize) {
        let pe = self.edge(v * self.k + t, v * self.k + t2);
        self.out.push(pe);
    }

    fn finish(mut self) -> Vec<EdgeIndex> {
        self.out.sort_unstable();
        self.out.dedup();
        self.out
    }
}

/// Percolating set of `G □ C_k` at level `r` from percolating sets of `G` at
/// levels `r`, `r-1`, `r-2` (levels below zero take the empty set).
///
/// Layer 0 receives `f_r`, layers `1..k-1` receive `f_rm1`, the last layer
/// receives `f_rm2`. A vertex of degree `r - 1` adds the closing rung between
/// its first and last copies; a vertex of smaller degree adds its whole fibre.
pub fn lift_cycle_percolating(
    g: &Graph,
    f_r: &[EdgeIndex],
    f_rm1: &[EdgeIndex],
    f_rm2: &[EdgeIndex],
    k: usize,
    r: usize,
) -> Result<Vec<EdgeIndex>> {
    if r == 0 {
        return Err(invalid_param("cycle lift needs r >= 1"));
    }
    let factor = make_cycle(k)?;
    require_percolates(g, f_r, r, "F_r")?;
    require_percolates(g, f_rm1, r - 1, "F_{r-1}")?;
    require_percolates(g, f_rm2, r.saturating_sub(2), "F_{r-2}")?;

    let mut layers = Layers { g, product: cartesian_product(g, &factor), k, out: Vec::new() };
    layers.copy_set(f_r, 0);
    for t in 1..k - 1 {
        layers.copy_set(f_rm1, t);
    }
    layers.copy_set(f_rm2, k - 1);
    for v in 0..g.n() {
        let deg = g.degree(v);
        if deg + 1 == r {
            layers.rung(v, 0, k - 1);
        } else if deg + 1 < r {
            for t in 0..k {
                layers.rung(v, t, (t + 1) % k);
            }
        }
    }
    Ok(layers.finish())
}

/// Path analogue of [`lift_cycle_percolating`]: layer 0 receives `f_r`, every
/// other layer receives `f_rm1`. A vertex of degree `r - 1` adds its first
/// rung; a vertex of smaller degree adds all `k - 1` rungs of its fibre.
pub fn lift_path_percolating(
    g: &Graph,
    f_r: &[EdgeIndex],
    f_rm1: &[EdgeIndex],
    k: usize,
    r: usize,
) -> Result<Vec<EdgeIndex>> {
    if r == 0 {
        return Err(invalid_param("path lift needs r >= 1"));
    }
    if k < 2 {
        return Err(invalid_param(format!("path lift needs k >= 2, got {k}")));
    }
    let factor = make_path(k)?;
    require_percolates(g, f_r, r, "F_r")?;
    require_percolates(g, f_rm1, r - 1, "F_{r-1}")?;

    let mut layers = Layers { g, product: cartesian_product(g, &factor), k, out: Vec::new() };
    layers.copy_set(f_r, 0);
    for t in 1..k {
        layers.copy_set(f_rm1, t);
    }
    for v in 0..g.n() {
        let deg = g.degree(v);
        if deg + 1 == r {
            layers.rung(v, 0, 1);
        } else if deg + 1 < r {
            for t in 0..k - 1 {
                layers.rung(v, t, t + 1);
            }
        }
    }
    Ok(layers.finish())
}

/// Recursive builder shared by tori and grids; `prefixes[j]` is the product of
/// the first `j` factors.
struct Recursive {
    prefixes: Vec<Graph>,
    dims: Vec<usize>,
    cycle: bool,
    memo: HashMap<(usize, i64), Vec<EdgeIndex>>,
}

impl Recursive {
    fn set(&mut self, j: usize, r: i64) -> Result<Vec<EdgeIndex>> {
        if j == 0 || r <= 0 {
            return Ok(Vec::new());
        }
        if let Some(s) = self.memo.get(&(j, r)) {
            return Ok(s.clone());
        }
        let k = self.dims[j - 1];
        let f_r = self.set(j - 1, r)?;
        let f_rm1 = self.set(j - 1, r - 1)?;
        let out = if self.cycle {
            let f_rm2 = self.set(j - 1, r - 2)?;
            lift_cycle_percolating(&self.prefixes[j - 1], &f_r, &f_rm1, &f_rm2, k, r as usize)?
        } else {
            lift_path_percolating(&self.prefixes[j - 1], &f_r, &f_rm1, k, r as usize)?
        };
        self.memo.insert((j, r), out.clone());
        Ok(out)
    }
}

fn prefixes(dims: &[usize], cycle: bool) -> Result<Vec<Graph>> {
    let mut out = vec![Graph::single_vertex()];
    for &a in dims {
        let factor = if cycle { make_cycle(a)? } else { make_path(a)? };
        let next = cartesian_product(out.last().expect("non-empty"), &factor);
        out.push(next);
    }
    Ok(out)
}

/// Percolating set of `C_{a_1} □ … □ C_{a_d}` (edge indices of
/// [`make_torus`]) at level `r`.
pub fn build_torus_set(dims: &[usize], r: usize) -> Result<Vec<EdgeIndex>> {
    if let Some(&a) = dims.iter().find(|&&a| a < 3) {
        return Err(invalid_param(format!("torus dimensions must be >= 3, got {a}")));
    }
    let mut rec = Recursive { prefixes: prefixes(dims, true)?, dims: dims.to_vec(), cycle: true, memo: HashMap::new() };
    rec.set(dims.len(), r as i64)
}

/// Percolating set of `P_{a_1} □ … □ P_{a_d}` (edge indices of
/// [`make_grid`]) at level `r`.
pub fn build_grid_set(dims: &[usize], r: usize) -> Result<Vec<EdgeIndex>> {
    if let Some(&a) = dims.iter().find(|&&a| a < 2) {
        return Err(invalid_param(format!("grid dimensions must be >= 2, got {a}")));
    }
    let mut rec = Recursive { prefixes: prefixes(dims, false)?, dims: dims.to_vec(), cycle: false, memo: HashMap::new() };
    rec.set(dims.len(), r as i64)
}

/// Bit mask of coordinate `j` (1-based) of `Q_d`: coordinate 1 is the most
/// significant bit, matching the row-major encoding of [`make_hypercube`].
fn coordinate_bit(d: usize, j: usize) -> usize {
    1 << (d - j)
}

fn check_hypercube_args(d: usize, r: usize) -> Result<()> {
    if r > d {
        return Err(invalid_param(format!("hypercube set needs r <= d, got r = {r}, d = {d}")));
    }
    Ok(())
}

fn pairs_to_indices(q: &Graph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<EdgeIndex> {
    let mut out: Vec<EdgeIndex> = pairs
        .into_iter()
        .map(|(a, b)| q.edge_index(a, b).expect("hypercube edge"))
        .collect();
    out.sort_unstable();
    out
}

/// `{(x, δ_j x) : 1 <= j <= d, x_1 + … + x_{j-1} >= d - r}` as edge indices of
/// `Q_d`.
pub fn build_hypercube_set(d: usize, r: usize) -> Result<Vec<EdgeIndex>> {
    check_hypercube_args(d, r)?;
    let q = make_hypercube(d);
    let mut pairs = Vec::new();
    for x in 0..1usize << d {
        let mut prefix_weight = 0;
        for j in 1..=d {
            let bit = coordinate_bit(d, j);
            if x & bit == 0 && prefix_weight + r >= d {
                pairs.push((x, x | bit));
            }
            if x & bit != 0 {
                prefix_weight += 1;
            }
        }
    }
    Ok(pairs_to_indices(&q, pairs))
}

fn hypercube_pairs(d: usize, r: usize) -> Vec<(usize, usize)> {
    if r == 0 {
        return Vec::new();
    }
    if r == d {
        return make_hypercube(d).edges().to_vec();
    }
    // split on coordinate 1: the x_1 = 1 copy gets level r, the x_1 = 0 copy
    // gets level r - 1
    let high = 1 << (d - 1);
    let mut out: Vec<(usize, usize)> = hypercube_pairs(d - 1, r)
        .into_iter()
        .map(|(a, b)| (a | high, b | high))
        .collect();
    out.extend(hypercube_pairs(d - 1, r - 1));
    out
}

/// The same set built recursively, `F_r(Q_d) = F_r(Q'_{d-1}) ∪ F_{r-1}(Q''_{d-1})`
/// with `Q'` and `Q''` the halves `x_1 = 1` and `x_1 = 0`.
pub fn build_hypercube_set_recursive(d: usize, r: usize) -> Result<Vec<EdgeIndex>> {
    check_hypercube_args(d, r)?;
    Ok(pairs_to_indices(&make_hypercube(d), hypercube_pairs(d, r)))
}

/// A named product family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Grid { dims: Vec<usize> },
    Torus { dims: Vec<usize> },
    Hypercube { d: usize },
}

impl Family {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Grid { dims } => make_grid(dims),
            Family::Torus { dims } => make_torus(dims),
            Family::Hypercube { d } => Ok(make_hypercube(*d)),
        }
    }

    /// The construction for this family. Hypercubes use the closed-form set
    /// when `r <= d` and fall back to the full edge set otherwise.
    pub fn construct(&self, r: usize) -> Result<Vec<EdgeIndex>> {
        match self {
            Family::Grid { dims } => build_grid_set(dims, r),
            Family::Torus { dims } => build_torus_set(dims, r),
            Family::Hypercube { d } if r <= *d => build_hypercube_set(*d, r),
            Family::Hypercube { d } => Ok((0..make_hypercube(*d).num_edges()).collect()),
        }
    }

    /// Factor sizes as a grid/torus; hypercubes are grids of `P_2`.
    pub fn dims(&self) -> Vec<usize> {
        match self {
            Family::Grid { dims } | Family::Torus { dims } => dims.clone(),
            Family::Hypercube { d } => vec![2; *d],
        }
    }

    /// The family's graph with the recursive product colouring (cycle
    /// factors for tori, path factors otherwise).
    pub fn product_colouring(&self) -> Result<(Graph, EdgeColouring)> {
        let kind = match self {
            Family::Torus { .. } => ProductKind::Cycle,
            _ => ProductKind::Path,
        };
        recursive_product_colouring(&self.dims(), kind)
    }

    pub fn label(&self) -> String {
        let join = |dims: &[usize]| dims.iter().map(usize::to_string).collect::<Vec<_>>().join("x");
        match self {
            Family::Grid { dims } => format!("grid[{}]", join(dims)),
            Family::Torus { dims } => format!("torus[{}]", join(dims)),
            Family::Hypercube { d } => format!("hypercube[{d}]"),
        }
    }
}
