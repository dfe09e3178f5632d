//! Closure engines for the r-bond and r-neighbour processes.
//!
//! Both engines keep, per vertex, a counter of infected incident edges (bond)
//! or infected neighbours (neighbour) and only revisit vertices whose counter
//! changed. Traces are recorded in synchronous rounds: every infection enabled
//! at the start of a round fires in that round.

use rand::Rng;
use serde::Serialize;

use crate::error::{invalid_input, Error, Result};
use crate::graph::{EdgeIndex, Graph};

/// Result of running a process to its fixed point.
///
/// `generations[0]` is the (deduplicated, sorted) initial set; each later
/// generation holds the items first infected in that round. Generations are
/// disjoint and their union is the infected set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfectionState {
    infected: Vec<bool>,
    count: usize,
    pub generations: Vec<Vec<usize>>,
}

pub type BondState = InfectionState;
pub type VertexState = InfectionState;

impl InfectionState {
    pub(crate) fn new(infected: Vec<bool>, generations: Vec<Vec<usize>>) -> Self {
        let count = generations.iter().map(Vec::len).sum();
        InfectionState { infected, count, generations }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.infected[i]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// True when every item of the universe is infected.
    pub fn is_complete(&self) -> bool {
        self.count == self.infected.len()
    }

    pub fn infected(&self) -> Vec<usize> {
        (0..self.infected.len()).filter(|&i| self.infected[i]).collect()
    }

    pub fn mask(&self) -> &[bool] {
        &self.infected
    }

    pub fn report(&self) -> InfectionReport {
        InfectionReport {
            percolated: self.is_complete(),
            closure_size: self.count,
            generations: self.generations.clone(),
        }
    }
}

/// `{"percolated": bool, "closure_size": int, "generations": [[...]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfectionReport {
    pub percolated: bool,
    pub closure_size: usize,
    pub generations: Vec<Vec<usize>>,
}

pub(crate) fn seed_mask(universe: usize, seed: &[usize], what: &str) -> Result<(Vec<bool>, Vec<usize>)> {
    let mut mask = vec![false; universe];
    let mut initial = Vec::with_capacity(seed.len());
    for &i in seed {
        if i >= universe {
            return Err(invalid_input(format!("{what} index {i} out of range (universe {universe})")));
        }
        if !mask[i] {
            mask[i] = true;
            initial.push(i);
        }
    }
    initial.sort_unstable();
    Ok((mask, initial))
}

pub fn bond_closure(g: &Graph, seed: &[EdgeIndex], r: usize) -> Result<BondState> {
    let (mut infected, initial) = seed_mask(g.num_edges(), seed, "edge")?;
    let mut count = initial.len();
    let mut hits = vec![0usize; g.n()];
    for &e in &initial {
        let (u, v) = g.edge(e);
        hits[u] += 1;
        hits[v] += 1;
    }
    let mut fired = vec![false; g.n()];
    let mut frontier: Vec<usize> = (0..g.n()).filter(|&v| hits[v] >= r).collect();
    let mut generations = vec![initial];

    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for &v in &frontier {
            fired[v] = true;
        }
        for &v in &frontier {
            for &e in g.incident(v) {
                if !infected[e] {
                    infected[e] = true;
                    fresh.push(e);
                }
            }
        }
        let mut next = Vec::new();
        for &e in &fresh {
            let (u, v) = g.edge(e);
            for w in [u, v] {
                hits[w] += 1;
                if !fired[w] && hits[w] == r.max(1) {
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        if fresh.is_empty() {
            break;
        }
        count += fresh.len();
        fresh.sort_unstable();
        generations.push(fresh);
        frontier = next;
    }
    Ok(InfectionState { infected, count, generations })
}

/// Bond closure that fires saturated vertices one at a time, picking the next
/// one uniformly from the pending queue. Used to check order independence.
pub fn bond_closure_random_order<R: Rng>(
    g: &Graph,
    seed: &[EdgeIndex],
    r: usize,
    rng: &mut R,
) -> Result<Vec<bool>> {
    let (mut infected, initial) = seed_mask(g.num_edges(), seed, "edge")?;
    let mut hits = vec![0usize; g.n()];
    for &e in &initial {
        let (u, v) = g.edge(e);
        hits[u] += 1;
        hits[v] += 1;
    }
    let mut queued = vec![false; g.n()];
    let mut queue = Vec::new();
    for v in 0..g.n() {
        if hits[v] >= r {
            queued[v] = true;
            queue.push(v);
        }
    }
    while !queue.is_empty() {
        let v = queue.swap_remove(rng.gen_range(0..queue.len()));
        for &e in g.incident(v) {
            if infected[e] {
                continue;
            }
            infected[e] = true;
            let (a, b) = g.edge(e);
            for w in [a, b] {
                hits[w] += 1;
                if !queued[w] && hits[w] >= r {
                    queued[w] = true;
                    queue.push(w);
                }
            }
        }
    }
    Ok(infected)
}

pub fn percolates_bond(g: &Graph, seed: &[EdgeIndex], r: usize) -> Result<bool> {
    Ok(bond_closure(g, seed, r)?.is_complete())
}

pub fn neighbour_closure(g: &Graph, seed: &[usize], r: usize) -> Result<VertexState> {
    let (mut infected, initial) = seed_mask(g.n(), seed, "vertex")?;
    let mut count = initial.len();
    let mut hits = vec![0usize; g.n()];
    for &v in &initial {
        for w in g.neighbours(v) {
            hits[w] += 1;
        }
    }
    let mut frontier: Vec<usize> = (0..g.n()).filter(|&v| !infected[v] && hits[v] >= r).collect();
    let mut generations = vec![initial];

    while !frontier.is_empty() {
        for &v in &frontier {
            infected[v] = true;
        }
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.neighbours(v) {
                hits[w] += 1;
                if !infected[w] && hits[w] >= r {
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        count += frontier.len();
        generations.push(std::mem::replace(&mut frontier, next));
    }
    Ok(InfectionState { infected, count, generations })
}

pub fn percolates_vertex(g: &Graph, seed: &[usize], r: usize) -> Result<bool> {
    Ok(neighbour_closure(g, seed, r)?.is_complete())
}

/// Turns an r-neighbour percolating vertex set into an r-bond percolating
/// edge set: the `r` smallest-index incident edges of each seed vertex, or
/// all of them when the degree is below `r`.
pub fn vertex_to_edge_percolating(g: &Graph, seed: &[usize], r: usize) -> Result<Vec<EdgeIndex>> {
    if !percolates_vertex(g, seed, r)? {
        return Err(Error::PreconditionViolation(format!(
            "vertex set does not percolate the {r}-neighbour process"
        )));
    }
    let mut out: Vec<EdgeIndex> = seed
        .iter()
        .flat_map(|&v| g.incident(v).iter().take(r).copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Turns an r-bond percolating edge set into an r-neighbour percolating
/// vertex set: the smaller endpoint of each seed edge together with every
/// vertex of degree below `r`.
pub fn edge_to_vertex_percolating(g: &Graph, seed: &[EdgeIndex], r: usize) -> Result<Vec<usize>> {
    if !percolates_bond(g, seed, r)? {
        return Err(Error::PreconditionViolation(format!(
            "edge set does not percolate the {r}-bond process"
        )));
    }
    let mut out: Vec<usize> = seed.iter().map(|&e| g.edge(e).0).collect();
    out.extend((0..g.n()).filter(|&v| g.degree(v) < r));
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_hypercube, make_path, Graph};

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// Bottom face x3 = 0 of Q_3 under the row-major encoding.
    fn q3_bottom_face(q3: &Graph) -> Vec<usize> {
        [(0, 2), (0, 4), (2, 6), (4, 6)]
            .iter()
            .map(|&(a, b)| q3.edge_index(a, b).unwrap())
            .collect()
    }

    #[test]
    fn saturated_cycle_does_not_spread() {
        let c4 = make_cycle(4).unwrap();
        let st = bond_closure(&c4, &[0, 1, 2], 2).unwrap();
        assert_eq!(st.infected(), vec![0, 1, 2]);
        assert_eq!(st.generations.len(), 1);
        assert!(!percolates_bond(&c4, &[0, 1, 2], 2).unwrap());
    }

    #[test]
    fn r1_spreads_on_connected_graphs() {
        let p3 = make_path(3).unwrap();
        let st = bond_closure(&p3, &[0], 1).unwrap();
        assert!(st.is_complete());
        assert_eq!(st.generations, vec![vec![0], vec![1]]);
    }

    #[test]
    fn hypercube_face_plus_one_percolates() {
        let q3 = make_hypercube(3);
        let mut seed = q3_bottom_face(&q3);
        assert!(!percolates_bond(&q3, &seed, 2).unwrap());
        assert_eq!(bond_closure(&q3, &seed, 2).unwrap().len(), 8);
        // an edge of the opposite face, parallel to the bottom face
        seed.push(q3.edge_index(1, 3).unwrap());
        assert!(bond_closure(&q3, &seed, 2).unwrap().is_complete());
    }

    #[test]
    fn r0_and_large_r() {
        let c4 = make_cycle(4).unwrap();
        assert!(bond_closure(&c4, &[], 0).unwrap().is_complete());
        assert_eq!(bond_closure(&c4, &[1], 3).unwrap().infected(), vec![1]);
        assert!(bond_closure(&Graph::empty(3), &[], 0).unwrap().is_complete());
    }

    #[test]
    fn out_of_range_seed() {
        let p3 = make_path(3).unwrap();
        assert!(matches!(bond_closure(&p3, &[2], 1), Err(Error::InvalidInput(_))));
        assert!(matches!(neighbour_closure(&p3, &[3], 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn neighbour_process() {
        assert!(percolates_vertex(&star(3), &[0], 1).unwrap());
        let c4 = make_cycle(4).unwrap();
        assert_eq!(neighbour_closure(&c4, &[0, 1], 2).unwrap().infected(), vec![0, 1]);
        let all: Vec<usize> = (0..4).collect();
        assert!(percolates_vertex(&c4, &all, 7).unwrap());
        assert!(percolates_vertex(&c4, &[], 0).unwrap());
    }

    #[test]
    fn conversions() {
        let p3 = make_path(3).unwrap();
        let f = vertex_to_edge_percolating(&p3, &[0, 1, 2], 2).unwrap();
        assert!(percolates_bond(&p3, &f, 2).unwrap());
        // middle vertex alone cannot percolate P_3 at r = 2 (the leaves never
        // reach two infected neighbours)
        assert!(vertex_to_edge_percolating(&p3, &[1], 2).is_err());
        assert_eq!(vertex_to_edge_percolating(&p3, &[], 0).unwrap(), Vec::<usize>::new());

        let a = edge_to_vertex_percolating(&p3, &[0, 1], 2).unwrap();
        assert_eq!(a, vec![0, 1, 2]);
        assert!(percolates_vertex(&p3, &a, 2).unwrap());

        let c5 = make_cycle(5).unwrap();
        let a = edge_to_vertex_percolating(&c5, &[0], 1).unwrap();
        assert_eq!(a, vec![0]);
        assert!(percolates_vertex(&c5, &a, 1).unwrap());
        assert!(edge_to_vertex_percolating(&c5, &[], 1).is_err());
    }

    #[test]
    fn report_shape() {
        let p3 = make_path(3).unwrap();
        let rep = bond_closure(&p3, &[1], 1).unwrap().report();
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(json, r#"{"percolated":true,"closure_size":2,"generations":[[1],[0]]}"#);
    }
}
