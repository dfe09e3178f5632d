//! Bootstrap percolation on hypergraphs: a hyperedge holding at least `r`
//! infected vertices infects all of its vertices.
//!
//! The r-bond process on a graph is the special case where the hypergraph has
//! one vertex per edge and one hyperedge per vertex (its incident edges).

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::error::{invalid_input, Error, Result};
use crate::graph::Graph;
use crate::linalg::{Echelon, SparseRow};
use crate::percolation::{seed_mask, InfectionState};
use crate::witness::{powers, EdgeColouring};

/// Vertex count plus a list of non-empty vertex sets. Each set is sorted and
/// the list is sorted; repeated hyperedges are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
    #[serde(skip)]
    incident: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        Hypergraph::new(j.n, j.hyperedges)
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        HypergraphJson { n: h.n, hyperedges: h.hyperedges }
    }
}

impl Hypergraph {
    pub fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(hyperedges.len());
        for mut s in hyperedges {
            if s.is_empty() {
                return Err(invalid_input("empty hyperedge"));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid_input(format!("hyperedge {s:?} repeats a vertex")));
            }
            if let Some(&v) = s.last().filter(|&&v| v >= n) {
                return Err(invalid_input(format!("vertex {v} out of range (n = {n})")));
            }
            sets.push(s);
        }
        sets.sort();
        let mut incident = vec![Vec::new(); n];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                incident[v].push(i);
            }
        }
        Ok(Hypergraph { n, hyperedges: sets, incident })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    /// Indices of the hyperedges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn is_covered(&self, v: usize) -> bool {
        !self.incident[v].is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| invalid_input(e.to_string()))
    }
}

/// One colour per vertex, distinct within every hyperedge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HyperColouring(pub Vec<i64>);

impl HyperColouring {
    /// The colouring of `graph_to_hypergraph(g)` induced by an edge colouring.
    pub fn from_edge_colouring(c: &EdgeColouring) -> Self {
        HyperColouring(c.0.clone())
    }

    pub fn is_valid(&self, h: &Hypergraph) -> bool {
        self.0.len() == h.n()
            && h.hyperedges().iter().all(|s| {
                let mut cs: Vec<i64> = s.iter().map(|&v| self.0[v]).collect();
                cs.sort_unstable();
                cs.windows(2).all(|w| w[0] != w[1])
            })
    }
}

/// Hyperedges of `G`'s incident-edge sets: vertex `e` of the result is edge
/// `e` of `G`, with one hyperedge per vertex of positive degree.
pub fn graph_to_hypergraph(g: &Graph) -> Hypergraph {
    let sets = (0..g.n())
        .filter(|&v| g.degree(v) > 0)
        .map(|v| g.incident(v).to_vec())
        .collect();
    Hypergraph::new(g.num_edges(), sets).expect("incident sets are valid hyperedges")
}

/// Least fixed point of the hypergraph process, traced in synchronous rounds.
/// With `r = 0` every hyperedge fires at once.
pub fn hyper_closure(h: &Hypergraph, seed: &[usize], r: usize) -> Result<InfectionState> {
    let (mut infected, initial) = seed_mask(h.n(), seed, "vertex")?;
    let mut hits = vec![0usize; h.hyperedges().len()];
    for &v in &initial {
        for &s in h.incident(v) {
            hits[s] += 1;
        }
    }
    let mut fired = vec![false; hits.len()];
    let mut frontier: Vec<usize> = (0..hits.len()).filter(|&s| hits[s] >= r).collect();
    let mut generations = vec![initial];

    while !frontier.is_empty() {
        for &s in &frontier {
            fired[s] = true;
        }
        let mut fresh = Vec::new();
        for &s in &frontier {
            for &v in &h.hyperedges()[s] {
                if !infected[v] {
                    infected[v] = true;
                    fresh.push(v);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for &v in &fresh {
            for &s in h.incident(v) {
                hits[s] += 1;
                if !fired[s] && hits[s] == r.max(1) {
                    next.push(s);
                }
            }
        }
        next.sort_unstable();
        fresh.sort_unstable();
        generations.push(fresh);
        frontier = next;
    }
    Ok(InfectionState::new(infected, generations))
}

pub fn percolates_hyper(h: &Hypergraph, seed: &[usize], r: usize) -> Result<bool> {
    Ok(hyper_closure(h, seed, r)?.is_complete())
}

/// Dimension of the vertex functions recognised by per-hyperedge polynomials
/// of degree `< r` that agree at the colours of shared vertices. A vertex in
/// no hyperedge is unconstrained and adds one dimension.
pub fn hyper_dim_w(h: &Hypergraph, c: &HyperColouring, r: usize) -> Result<usize> {
    if !c.is_valid(h) {
        return Err(Error::ImproperColouring("two vertices of a hyperedge share a colour".into()));
    }
    let uncovered = (0..h.n()).filter(|&v| !h.is_covered(v)).count();
    if r == 0 {
        return Ok(uncovered);
    }
    let cols = h.hyperedges().len() * r;
    let row = |s: usize, pw: &[num_bigint::BigInt], sign: bool| -> SparseRow {
        pw.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (s * r + j, if sign { x.clone() } else { -x.clone() }))
            .collect()
    };
    let mut ech = Echelon::new(cols);
    let mut evaluations = Vec::new();
    for v in 0..h.n() {
        let inc = h.incident(v);
        let Some(&first) = inc.first() else { continue };
        let pw = powers(c.0[v], r);
        for &t in &inc[1..] {
            let mut cons = row(first, &pw, true);
            cons.extend(row(t, &pw, false));
            ech.insert(cons);
        }
        evaluations.push(row(first, &pw, true));
    }
    let rank_a = ech.rank();
    for e in evaluations {
        ech.insert(e);
    }
    Ok(ech.rank() - rank_a + uncovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_hypercube, make_path};
    use crate::percolation::bond_closure;
    use crate::witness::{dim_w, greedy_colouring};

    #[test]
    fn single_hyperedge() {
        let h = Hypergraph::new(3, vec![vec![2, 0, 1]]).unwrap();
        let st = hyper_closure(&h, &[0, 1], 2).unwrap();
        assert_eq!(st.infected(), vec![0, 1, 2]);
        assert_eq!(st.generations, vec![vec![0, 1], vec![2]]);
        assert!(!percolates_hyper(&h, &[0], 2).unwrap());
        let c = HyperColouring(vec![5, -1, 2]);
        assert_eq!(hyper_dim_w(&h, &c, 3).unwrap(), 3);
        assert_eq!(hyper_dim_w(&h, &c, 2).unwrap(), 2);
    }

    #[test]
    fn zero_threshold_covers_hyperedges() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(hyper_closure(&h, &[], 0).unwrap().infected(), vec![0, 1, 2]);
    }

    #[test]
    fn validation() {
        assert!(Hypergraph::new(2, vec![vec![]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![0, 2]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![1, 1]]).is_err());
        assert!(hyper_closure(&Hypergraph::new(2, vec![]).unwrap(), &[5], 1).is_err());
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(hyper_dim_w(&h, &HyperColouring(vec![1, 1]), 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = Hypergraph::from_json(r#"{"n":3,"hyperedges":[[2,1],[0]]}"#).unwrap();
        assert_eq!(h.hyperedges(), &[vec![0], vec![1, 2]]);
        assert_eq!(h.to_json(), r#"{"n":3,"hyperedges":[[0],[1,2]]}"#);
        assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn reductions() {
        let h = graph_to_hypergraph(&make_cycle(3).unwrap());
        assert_eq!(h.n(), 3);
        assert!(h.hyperedges().iter().all(|s| s.len() == 2));
        let h = graph_to_hypergraph(&make_path(3).unwrap());
        assert_eq!(h.hyperedges(), &[vec![0], vec![0, 1], vec![1]]);
        let h = graph_to_hypergraph(&make_hypercube(3));
        assert_eq!((h.n(), h.hyperedges().len()), (12, 8));
        assert!(h.hyperedges().iter().all(|s| s.len() == 3));
    }

    #[test]
    fn matches_bond_process() {
        let q3 = make_hypercube(3);
        let h = graph_to_hypergraph(&q3);
        let seed = crate::constructions::build_hypercube_set(3, 2).unwrap();
        let a = hyper_closure(&h, &seed, 2).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.generations, bond_closure(&q3, &seed, 2).unwrap().generations);
        let c = greedy_colouring(&q3);
        for r in 0..4 {
            assert_eq!(
                hyper_dim_w(&h, &HyperColouring::from_edge_colouring(&c), r).unwrap(),
                dim_w(&q3, &c, r).unwrap()
            );
        }
    }

    #[test]
    fn hyper_minima() {
        use crate::oracle::min_percolating_hyper;
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(min_percolating_hyper(&h, 2, 100).size, 2);
        let c4 = graph_to_hypergraph(&make_cycle(4).unwrap());
        assert_eq!(min_percolating_hyper(&c4, 2, 1000).size, 4);
        let q3 = graph_to_hypergraph(&make_hypercube(3));
        let res = min_percolating_hyper(&q3, 2, 1_000_000);
        assert!(res.is_exact());
        assert_eq!(res.size, 5);
    }
}
