//! Closed forms and recursions for minimum percolating set sizes in tori,
//! grids and hypercubes, evaluated in arbitrary precision.
//!
//! `hypercube_eq2_as_printed` and `hypercube_corollary_as_printed` evaluate
//! two published closed forms literally. They disagree with each other and
//! with exhaustive search (e.g. at `d = 3, r = 2` they give 4 and 7 while the
//! true minimum is 5), so nothing here treats them as ground truth; the
//! consistency report records the disagreement instead.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::constructions::Family;
use crate::error::{invalid_param, Result};
use crate::graph::{degree_histogram, make_grid};
use crate::oracle::{self, SearchOptions};
use crate::percolation::percolates_bond;
use crate::witness::dim_w;

/// `C(n, k)`, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn product(values: &[usize]) -> BigUint {
    values.iter().fold(BigUint::one(), |acc, &a| acc * a)
}

/// Elementary symmetric polynomials `e_0..=e_m` of `values`.
fn elementary_symmetric(values: &[usize]) -> Vec<BigUint> {
    let mut e = vec![BigUint::one()];
    for &x in values {
        e.push(BigUint::zero());
        for s in (1..e.len()).rev() {
            let add = &e[s - 1] * x;
            e[s] += add;
        }
    }
    e
}

/// Vertices of `P_{a_1} □ … □ P_{a_m}` whose coordinates are interior in
/// exactly `s` factors: `2^{m-s} · e_s(a_1 - 2, …, a_m - 2)`. Such a vertex has
/// degree `m + s`.
fn interior_count(prefix: &[usize], s: i64) -> BigUint {
    if s < 0 || s as usize > prefix.len() {
        return BigUint::zero();
    }
    let shifted: Vec<usize> = prefix.iter().map(|a| a - 2).collect();
    let e = elementary_symmetric(&shifted);
    pow2(prefix.len() - s as usize) * &e[s as usize]
}

fn check_dims(dims: &[usize], min: usize, what: &str) -> Result<()> {
    if let Some(&a) = dims.iter().find(|&&a| a < min) {
        return Err(invalid_param(format!("{what} dimensions must be >= {min}, got {a}")));
    }
    Ok(())
}

/// `m_e(C_{a_1} □ … □ C_{a_d}, r)` by the torus recursion from `m_e(G_0, ·) = 0`:
/// `m(j, r) = m(j-1, r) + (a_j - 2) m(j-1, r-1) + m(j-1, r-2) + corr`, where
/// `corr` is 0 for `r < 2j - 1`, `a_1⋯a_{j-1}` for `r = 2j - 1` and
/// `a_1⋯a_j` for `r >= 2j`. Negative levels evaluate to 0.
pub fn torus_recursion(dims: &[usize], r: i64) -> Result<BigUint> {
    check_dims(dims, 3, "torus")?;
    let mut memo = HashMap::new();
    Ok(torus_rec(dims, dims.len(), r, &mut memo))
}

fn torus_rec(dims: &[usize], j: usize, r: i64, memo: &mut HashMap<(usize, i64), BigUint>) -> BigUint {
    if j == 0 || r <= 0 {
        return BigUint::zero();
    }
    if let Some(v) = memo.get(&(j, r)) {
        return v.clone();
    }
    let a = dims[j - 1];
    let two_j = 2 * j as i64;
    let corr = if r < two_j - 1 {
        BigUint::zero()
    } else if r == two_j - 1 {
        product(&dims[..j - 1])
    } else {
        product(&dims[..j])
    };
    let v = torus_rec(dims, j - 1, r, memo)
        + torus_rec(dims, j - 1, r - 1, memo) * (a - 2)
        + torus_rec(dims, j - 1, r - 2, memo)
        + corr;
    memo.insert((j, r), v.clone());
    v
}

/// `m_e(P_{a_1} □ … □ P_{a_d}, r)` by the grid recursion:
/// `m(j, r) = m(j-1, r) + (a_j - 1) m(j-1, r-1) + D_{=} + (a_j - 1) D_{<}`,
/// with `D_{=}` and `D_{<}` the numbers of vertices of `G_{j-1}` of degree
/// exactly `r - 1` and below `r - 1`.
pub fn grid_recursion(dims: &[usize], r: i64) -> Result<BigUint> {
    check_dims(dims, 2, "grid")?;
    let mut memo = HashMap::new();
    Ok(grid_rec(dims, dims.len(), r, &mut memo))
}

fn grid_rec(dims: &[usize], j: usize, r: i64, memo: &mut HashMap<(usize, i64), BigUint>) -> BigUint {
    if j == 0 || r <= 0 {
        return BigUint::zero();
    }
    if let Some(v) = memo.get(&(j, r)) {
        return v.clone();
    }
    let a = dims[j - 1];
    let prefix = &dims[..j - 1];
    let s = r - j as i64;
    let at_threshold = interior_count(prefix, s);
    let below: BigUint = (0..s.max(0)).map(|t| interior_count(prefix, t)).sum();
    let v = grid_rec(dims, j - 1, r, memo)
        + grid_rec(dims, j - 1, r - 1, memo) * (a - 1)
        + at_threshold
        + below * (a - 1);
    memo.insert((j, r), v.clone());
    v
}

fn check_hypercube(d: usize, r: usize) -> Result<()> {
    if r > d {
        return Err(invalid_param(format!("needs d >= r, got d = {d}, r = {r}")));
    }
    Ok(())
}

/// `Σ_{j=1}^{r} C(d-r-1, r-j) · j · 2^{j-1}`, literally.
pub fn hypercube_eq2_as_printed(d: usize, r: usize) -> Result<BigUint> {
    check_hypercube(d, r)?;
    let (d, r) = (d as i64, r as i64);
    Ok((1..=r)
        .map(|j| binomial(d - r - 1, r - j) * j as u64 * pow2(j as usize - 1))
        .sum())
}

/// `Σ_{i=1}^{r} C(d-i+1, r-i) · i · 2^{i-1}`, literally.
pub fn hypercube_corollary_as_printed(d: usize, r: usize) -> Result<BigUint> {
    check_hypercube(d, r)?;
    let (d, r) = (d as i64, r as i64);
    Ok((1..=r)
        .map(|i| binomial(d - i + 1, r - i) * i as u64 * pow2(i as usize - 1))
        .sum())
}

/// `s(d, r) = s(d-1, r) + s(d-1, r-1)`, `s(d, 0) = 0`, `s(d, d) = d·2^{d-1}`.
pub fn hypercube_set_size(d: usize, r: usize) -> Result<BigUint> {
    check_hypercube(d, r)?;
    // table[r] holds s(dd, r) for the current dd
    let mut table: Vec<BigUint> = vec![BigUint::zero(); d + 1];
    for dd in 1..=d {
        let mut next = vec![BigUint::zero(); d + 1];
        for rr in 1..=dd {
            next[rr] = if rr == dd {
                pow2(dd - 1) * dd
            } else {
                &table[rr] + &table[rr - 1]
            };
        }
        table = next;
    }
    Ok(table[r].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    #[serde(serialize_with = "as_decimal")]
    pub combinatorial: BigUint,
    pub enumerated: usize,
}

impl DegreeCount {
    pub fn agrees(&self) -> bool {
        self.combinatorial.to_usize() == Some(self.enumerated)
    }
}

/// Vertices of degree exactly `t` in the grid `dims`, by the interior-set
/// sum and by enumerating the generated grid.
pub fn grid_degree_count(dims: &[usize], t: usize) -> Result<DegreeCount> {
    check_dims(dims, 2, "grid")?;
    let combinatorial = interior_count(dims, t as i64 - dims.len() as i64);
    let enumerated = degree_histogram(&make_grid(dims)?).get(&t).copied().unwrap_or(0);
    Ok(DegreeCount { combinatorial, enumerated })
}

/// Which optional values `consistency_report` computes.
#[derive(Debug, Clone, Copy)]
pub struct ReportBudget {
    /// Run the exhaustive oracle only when the instance has at most this
    /// many edges.
    pub oracle_max_edges: usize,
    pub oracle_closures: u64,
    /// Compute the witness dimension only when `n * r` is at most this.
    pub dim_max_unknowns: usize,
}

impl Default for ReportBudget {
    fn default() -> Self {
        ReportBudget { oracle_max_edges: 24, oracle_closures: 5_000_000, dim_max_unknowns: 2_000 }
    }
}

fn as_string(x: &BigUint) -> String {
    x.to_string()
}

fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub instance: String,
    pub r: usize,
    pub recursion: String,
    pub eq2: Option<String>,
    pub corollary: Option<String>,
    pub construction_size: usize,
    pub construction_percolates: bool,
    pub oracle_min: Option<usize>,
    pub dim_lower_bound: Option<usize>,
    pub recursion_matches_construction: bool,
    pub recursion_matches_oracle: Option<bool>,
    pub recursion_matches_dim: Option<bool>,
    pub eq2_matches_recursion: Option<bool>,
    pub corollary_matches_recursion: Option<bool>,
}

impl FormulaReport {
    pub const CSV_HEADER: &'static str =
        "instance,r,recursion,eq2,corollary,construction_size,oracle_min,dim_lower_bound";

    pub fn csv_row(&self) -> String {
        let opt = |x: &Option<String>| x.clone().unwrap_or_default();
        let opt_n = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.instance,
            self.r,
            self.recursion,
            opt(&self.eq2),
            opt(&self.corollary),
            self.construction_size,
            opt_n(self.oracle_min),
            opt_n(self.dim_lower_bound),
        )
    }
}

/// Evaluates every applicable formula for `(family, r)`, builds and checks the
/// construction, and adds the witness dimension under the recursive product
/// colouring and the oracle minimum when the instance fits `budget`.
pub fn consistency_report(family: &Family, r: usize, budget: &ReportBudget) -> Result<FormulaReport> {
    let g = family.graph()?;
    let recursion = match family {
        Family::Torus { dims } => torus_recursion(dims, r as i64)?,
        Family::Grid { dims } => grid_recursion(dims, r as i64)?,
        Family::Hypercube { d } if r <= *d => hypercube_set_size(*d, r)?,
        Family::Hypercube { d } => grid_recursion(&vec![2; *d], r as i64)?,
    };
    let (eq2, corollary) = match family {
        Family::Hypercube { d } if r <= *d => (
            Some(hypercube_eq2_as_printed(*d, r)?),
            Some(hypercube_corollary_as_printed(*d, r)?),
        ),
        _ => (None, None),
    };
    let construction = family.construct(r)?;
    let construction_percolates = percolates_bond(&g, &construction, r)?;

    // the dimension is a certified lower bound, so it doubles as the oracle floor
    let dim_lower_bound = if g.n() * r <= budget.dim_max_unknowns {
        let (pg, c) = family.product_colouring()?;
        Some(dim_w(&pg, &c, r)?)
    } else {
        None
    };
    let oracle_min = if g.num_edges() <= budget.oracle_max_edges {
        let opts = SearchOptions {
            known_lower_bound: dim_lower_bound,
            ..SearchOptions::with_budget(budget.oracle_closures)
        };
        let res = oracle::min_percolating_bond_with(&g, r, &opts);
        res.is_exact().then_some(res.size)
    } else {
        None
    };

    let rec_usize = recursion.to_usize();
    let matches = |x: Option<usize>| x.map(|v| rec_usize == Some(v));
    Ok(FormulaReport {
        instance: family.label(),
        r,
        recursion: as_string(&recursion),
        recursion_matches_construction: rec_usize == Some(construction.len()),
        recursion_matches_oracle: matches(oracle_min),
        recursion_matches_dim: matches(dim_lower_bound),
        eq2_matches_recursion: eq2.as_ref().map(|v| v == &recursion),
        corollary_matches_recursion: corollary.as_ref().map(|v| v == &recursion),
        eq2: eq2.as_ref().map(as_string),
        corollary: corollary.as_ref().map(as_string),
        construction_size: construction.len(),
        construction_percolates,
        oracle_min,
        dim_lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), n(10));
        assert_eq!(binomial(0, 0), n(1));
        assert_eq!(binomial(-1, 0), n(0));
        assert_eq!(binomial(3, 4), n(0));
        assert_eq!(binomial(3, -1), n(0));
    }

    #[test]
    fn torus_values() {
        for k in 3..8 {
            assert_eq!(torus_recursion(&[k], 1).unwrap(), n(1));
            assert_eq!(torus_recursion(&[k], 2).unwrap(), n(k as u64));
        }
        assert_eq!(torus_recursion(&[3, 3], 2).unwrap(), n(4));
        assert_eq!(torus_recursion(&[3, 3], 3).unwrap(), n(10));
        assert_eq!(torus_recursion(&[3, 3], 0).unwrap(), n(0));
        assert_eq!(torus_recursion(&[3, 3], -2).unwrap(), n(0));
        assert!(torus_recursion(&[3, 2], 1).is_err());
    }

    #[test]
    fn grid_values() {
        assert_eq!(grid_recursion(&[3, 3], 2).unwrap(), n(6));
        assert_eq!(grid_recursion(&[2, 2, 2], 2).unwrap(), n(5));
        for a in 2..7 {
            assert_eq!(grid_recursion(&[a], 1).unwrap(), n(1));
            // r = 2 >= Δ(P_a): every edge is needed
            assert_eq!(grid_recursion(&[a], 2).unwrap(), n(a as u64 - 1));
        }
        assert!(grid_recursion(&[1], 1).is_err());
    }

    #[test]
    fn printed_hypercube_forms() {
        for d in 2..8 {
            assert_eq!(hypercube_eq2_as_printed(d, 1).unwrap(), n(1));
            assert_eq!(hypercube_eq2_as_printed(d, 0).unwrap(), n(0));
        }
        assert_eq!(hypercube_corollary_as_printed(3, 2).unwrap(), n(7));
        assert_eq!(hypercube_eq2_as_printed(3, 2).unwrap(), n(4));
        assert!(hypercube_eq2_as_printed(2, 3).is_err());
    }

    #[test]
    fn hypercube_sizes() {
        assert_eq!(hypercube_set_size(3, 2).unwrap(), n(5));
        assert_eq!(hypercube_set_size(4, 2).unwrap(), n(6));
        for d in 1..8 {
            assert_eq!(hypercube_set_size(d, 1).unwrap(), n(1));
            assert_eq!(hypercube_set_size(d, 0).unwrap(), n(0));
            assert_eq!(hypercube_set_size(d, d).unwrap(), n(d as u64) << (d - 1));
        }
        assert_eq!(hypercube_set_size(0, 0).unwrap(), n(0));
        assert!(hypercube_set_size(2, 3).is_err());
    }

    #[test]
    fn degree_counts() {
        let c = grid_degree_count(&[3, 3], 2).unwrap();
        assert_eq!(c.enumerated, 4);
        assert!(c.agrees());
        assert_eq!(grid_degree_count(&[2, 2, 2], 3).unwrap().enumerated, 8);
        let c = grid_degree_count(&[3, 4], 3).unwrap();
        assert_eq!(c.enumerated, 6);
        assert!(c.agrees());
        assert_eq!(grid_degree_count(&[3, 4], 7).unwrap().enumerated, 0);
        assert!(grid_degree_count(&[3, 4], 7).unwrap().agrees());
    }

    #[test]
    fn hypercube_report() {
        let rep = consistency_report(&Family::Hypercube { d: 3 }, 2, &ReportBudget::default()).unwrap();
        assert_eq!(rep.recursion, "5");
        assert_eq!(rep.construction_size, 5);
        assert_eq!(rep.oracle_min, Some(5));
        assert_eq!(rep.dim_lower_bound, Some(5));
        assert_eq!(rep.eq2.as_deref(), Some("4"));
        assert_eq!(rep.corollary.as_deref(), Some("7"));
        assert_eq!(rep.eq2_matches_recursion, Some(false));
        assert_eq!(rep.csv_row(), "hypercube[3],2,5,4,7,5,5,5");
    }

    #[test]
    fn zero_threshold_report() {
        let rep = consistency_report(&Family::Grid { dims: vec![3, 3] }, 0, &ReportBudget::default()).unwrap();
        assert_eq!(rep.recursion, "0");
        assert_eq!(rep.construction_size, 0);
        assert_eq!(rep.oracle_min, Some(0));
        assert_eq!(rep.dim_lower_bound, Some(0));
    }
}
