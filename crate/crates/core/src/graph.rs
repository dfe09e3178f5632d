//! Simple undirected graphs with a canonical edge order.
//!
//! Edges are stored as pairs `(u, v)` with `u < v`, sorted lexicographically.
//! The position of an edge in that list is its edge index, and every edge
//! function or edge set in this crate is indexed by it.
//!
//! Cartesian products encode the vertex `(u, v)` of `G □ H` as
//! `u * |V(H)| + v` (row-major over factor order). Grids, tori and hypercubes
//! are left folds of the product over their factors, so for
//! `make_torus(&[a1, a2])` the vertex `(i, j)` is `i * a2 + j`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, invalid_param, Error, Result};

pub type EdgeIndex = usize;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<EdgeIndex>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// On-disk form: `{"n": <int>, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        Graph::from_edges(json.n, json.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph from an arbitrary edge list, orienting each pair as
    /// `(min, max)` and sorting. Self-loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(invalid_input(format!("self-loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(invalid_input(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid_input(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        Graph { n, edges, incident }
    }

    /// The single-vertex graph, base of every product recursion.
    pub fn single_vertex() -> Self {
        Self::from_sorted(1, Vec::new())
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIndex) -> (usize, usize) {
        self.edges[e]
    }

    /// Incident edge indices of `v`, ascending.
    pub fn incident(&self, v: usize) -> &[EdgeIndex] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn other_endpoint(&self, e: EdgeIndex, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&e| self.other_endpoint(e, v))
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<EdgeIndex> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(s).map_err(|e| invalid_input(format!("graph JSON: {e}")))?;
        Graph::try_from(raw)
    }
}

pub fn make_path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(invalid_param("path needs at least one vertex"));
    }
    Ok(Graph::from_sorted(k, (1..k).map(|i| (i - 1, i)).collect()))
}

pub fn make_cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(invalid_param(format!("cycle length must be at least 3, got {k}")));
    }
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n;
    let mut edges = Vec::with_capacity(g.num_edges() * nh + g.n * h.num_edges());
    for &(a, b) in &g.edges {
        for v in 0..nh {
            edges.push((a * nh + v, b * nh + v));
        }
    }
    for u in 0..g.n {
        for &(x, y) in &h.edges {
            edges.push((u * nh + x, u * nh + y));
        }
    }
    edges.sort_unstable();
    Graph::from_sorted(g.n * nh, edges)
}

/// `P_{a_1} □ … □ P_{a_d}`; the empty product is the single vertex.
pub fn make_grid(dims: &[usize]) -> Result<Graph> {
    if let Some(&a) = dims.iter().find(|&&a| a < 2) {
        return Err(invalid_param(format!("grid dimensions must be >= 2, got {a}")));
    }
    dims.iter().try_fold(Graph::single_vertex(), |acc, &a| {
        Ok(cartesian_product(&acc, &make_path(a)?))
    })
}

/// `C_{a_1} □ … □ C_{a_d}`; the empty product is the single vertex.
pub fn make_torus(dims: &[usize]) -> Result<Graph> {
    if let Some(&a) = dims.iter().find(|&&a| a < 3) {
        return Err(invalid_param(format!("torus dimensions must be >= 3, got {a}")));
    }
    dims.iter().try_fold(Graph::single_vertex(), |acc, &a| {
        Ok(cartesian_product(&acc, &make_cycle(a)?))
    })
}

pub fn make_hypercube(d: usize) -> Graph {
    make_grid(&vec![2; d]).expect("P_2 factors are valid")
}

pub fn degree_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for v in 0..g.n {
        *counts.entry(g.degree(v)).or_insert(0) += 1;
    }
    counts
}

/// `G(n, p)` with `p = num/den`. Pairs `(u, v)`, `u < v`, are visited in
/// lexicographic order and each is kept when `gen_range(0..den) < num`
/// under a `ChaCha8Rng` seeded with `seed_from_u64(seed)`.
pub fn make_random_graph(n: usize, p: Ratio<u32>, seed: u64) -> Result<Graph> {
    let (num, den) = (*p.numer(), *p.denom());
    if num > den {
        return Err(invalid_param(format!("edge probability {p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted(n, edges))
}
