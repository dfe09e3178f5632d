//! The polynomial method.
//!
//! For a proper edge colouring `c` and a threshold `r`, an edge function `φ`
//! is *recognized* by per-vertex polynomials `p_v` of degree at most `r - 1`
//! when `p_u(c_e) = p_v(c_e) = φ(e)` for every edge `e = uv`. The recognized
//! functions form a space whose dimension is a lower bound on the size of
//! every r-bond percolating set.
//!
//! The coefficient unknowns of vertex `v` occupy columns `v*r .. v*r + r`
//! (constant term first). Edge `e = (u, v)` contributes one constraint row
//! `p_u(c_e) - p_v(c_e) = 0` and one evaluation row `p_u(c_e)`, with `u` the
//! smaller endpoint. All arithmetic is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, invalid_param, Error, Result};
use crate::graph::{cartesian_product, degree_histogram, make_cycle, make_path, EdgeIndex, Graph};
use crate::linalg::{self, Echelon, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColouring(pub Vec<i64>);

impl EdgeColouring {
    pub fn colour(&self, e: EdgeIndex) -> i64 {
        self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_colour(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }
}

pub type Poly = Vec<BigRational>;

/// One polynomial per vertex, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    pub coeffs: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFunction(pub Vec<BigRational>);

impl EdgeFunction {
    pub fn zero(len: usize) -> Self {
        EdgeFunction(vec![BigRational::zero(); len])
    }

    pub fn indicator(len: usize, e: EdgeIndex) -> Self {
        let mut f = Self::zero(len);
        f.0[e] = BigRational::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone)]
pub struct WitnessBasis {
    pub r: usize,
    pub colouring: EdgeColouring,
    pub vectors: Vec<EdgeFunction>,
    pub recognizers: Vec<PolyFamily>,
}

impl WitnessBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vectors: Vec<Vec<String>> = self
            .vectors
            .iter()
            .map(|f| f.0.iter().map(rational_string).collect())
            .collect();
        let recognizers: Vec<Vec<Vec<String>>> = self
            .recognizers
            .iter()
            .map(|fam| {
                fam.coeffs
                    .iter()
                    .map(|p| p.iter().map(rational_string).collect())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "r": self.r,
            "colouring": self.colouring,
            "vectors": vectors,
            "recognizers": recognizers,
        })
    }
}

pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || invalid_input(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

// ---------------------------------------------------------------------------
// polynomial helpers

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn eval_poly(p: &[BigRational], x: i64) -> BigRational {
    let x = q(x);
    p.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a)
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `p * (x - root)`
fn mul_linear(p: &[BigRational], root: i64) -> Poly {
    if p.is_empty() {
        return Vec::new();
    }
    let root = q(root);
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (j, a) in p.iter().enumerate() {
        out[j + 1] += a;
        out[j] -= a * &root;
    }
    out
}

fn scale(p: &[BigRational], s: &BigRational) -> Poly {
    trim(p.iter().map(|a| a * s).collect())
}

fn vanishing(roots: impl IntoIterator<Item = i64>) -> Poly {
    roots.into_iter().fold(vec![BigRational::one()], |p, x| mul_linear(&p, x))
}

/// The polynomial that is 1 at `target` and 0 at every colour in `others`.
fn lagrange_indicator(target: i64, others: &[i64]) -> Poly {
    let p = vanishing(others.iter().copied());
    let at = eval_poly(&p, target);
    scale(&p, &(BigRational::one() / at))
}

// ---------------------------------------------------------------------------
// colourings

fn check_len(g: &Graph, c: &EdgeColouring) -> Result<()> {
    if c.len() != g.num_edges() {
        return Err(invalid_input(format!(
            "colouring has {} entries but graph has {} edges",
            c.len(),
            g.num_edges()
        )));
    }
    Ok(())
}

pub fn check_proper(g: &Graph, c: &EdgeColouring) -> Result<bool> {
    check_len(g, c)?;
    for v in 0..g.n() {
        let mut seen: Vec<i64> = g.incident(v).iter().map(|&e| c.colour(e)).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_proper(g: &Graph, c: &EdgeColouring) -> Result<()> {
    if check_proper(g, c)? {
        Ok(())
    } else {
        Err(Error::ImproperColouring("two edges at a vertex share a colour".into()))
    }
}

/// Colours edges in canonical order with the least colour unused at either
/// endpoint; at most `2Δ - 1` colours.
pub fn greedy_colouring(g: &Graph) -> EdgeColouring {
    let order: Vec<EdgeIndex> = (0..g.num_edges()).collect();
    greedy_colouring_in_order(g, &order)
}

/// Greedy colouring visiting edges in `order`, which must be a permutation
/// of the edge indices.
pub fn greedy_colouring_in_order(g: &Graph, order: &[EdgeIndex]) -> EdgeColouring {
    let mut colour: Vec<Option<i64>> = vec![None; g.num_edges()];
    for &e in order {
        let (u, v) = g.edge(e);
        let used: Vec<i64> = g
            .incident(u)
            .iter()
            .chain(g.incident(v))
            .filter_map(|&f| colour[f])
            .collect();
        colour[e] = (0..).find(|c| !used.contains(c));
    }
    EdgeColouring(colour.into_iter().map(|c| c.expect("order covers every edge")).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cycle,
    Path,
}

impl ProductKind {
    pub fn factor(self, k: usize) -> Result<Graph> {
        match self {
            ProductKind::Cycle => make_cycle(k),
            ProductKind::Path => {
                if k < 2 {
                    return Err(invalid_param(format!("path factor needs k >= 2, got {k}")));
                }
                make_path(k)
            }
        }
    }

    fn rungs(self, k: usize) -> usize {
        match self {
            ProductKind::Cycle => k,
            ProductKind::Path => k - 1,
        }
    }
}

/// Rung colours `α_1, α_2, …` of a product lift.
#[derive(Debug, Clone, Copy)]
struct Alphas {
    base: i64,
    k: usize,
}

impl Alphas {
    fn new(c: &EdgeColouring, k: usize) -> Self {
        Alphas { base: c.max_colour().unwrap_or(-1), k }
    }

    /// `α_i` for `1 <= i <= k`.
    fn get(self, i: usize) -> i64 {
        debug_assert!((1..=self.k).contains(&i));
        self.base + i as i64
    }

    /// Colour of the rung between copies `t` and `t'` (0-based): the rung
    /// `v_{t+1} v_{t+2}` of the 1-based numbering carries `α_{t+1}`, and the
    /// closing rung of a cycle carries `α_k`.
    fn rung(self, t: usize, t2: usize) -> i64 {
        let (a, b) = if t < t2 { (t, t2) } else { (t2, t) };
        if b == a + 1 {
            self.get(a + 1)
        } else {
            self.get(self.k)
        }
    }
}

/// Colouring of `G □ C_k` or `G □ P_k` that copies `c` onto every copy of
/// `G` and gives the rung level `i` the fresh colour `α_i = max(c) + i`
/// (with `max(c) = -1` for an edgeless `G`).
pub fn product_colouring(g: &Graph, c: &EdgeColouring, k: usize, kind: ProductKind) -> Result<EdgeColouring> {
    require_proper(g, c)?;
    let factor = kind.factor(k)?;
    let product = cartesian_product(g, &factor);
    Ok(colour_product(g, c, &product, k))
}

fn colour_product(g: &Graph, c: &EdgeColouring, product: &Graph, k: usize) -> EdgeColouring {
    let alphas = Alphas::new(c, k);
    EdgeColouring(
        product
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (u, t) = (a / k, a % k);
                let (w, t2) = (b / k, b % k);
                if t == t2 {
                    c.colour(g.edge_index(u, w).expect("copy edge exists in factor"))
                } else {
                    alphas.rung(t, t2)
                }
            })
            .collect(),
    )
}

/// Folds [`product_colouring`] over `dims`, starting from the single vertex.
/// Returns the product graph (equal to `make_torus`/`make_grid`) and its
/// colouring.
pub fn recursive_product_colouring(dims: &[usize], kind: ProductKind) -> Result<(Graph, EdgeColouring)> {
    let mut g = Graph::single_vertex();
    let mut c = EdgeColouring(Vec::new());
    for &k in dims {
        let product = cartesian_product(&g, &kind.factor(k)?);
        c = colour_product(&g, &c, &product, k);
        g = product;
    }
    Ok((g, c))
}

// ---------------------------------------------------------------------------
// the witness space

struct System {
    cols: usize,
    constraints: Vec<SparseRow>,
    evaluations: Vec<SparseRow>,
}

pub(crate) fn powers(x: i64, r: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(r);
    let mut acc = BigInt::one();
    for _ in 0..r {
        out.push(acc.clone());
        acc *= x;
    }
    out
}

fn build_system(g: &Graph, c: &EdgeColouring, r: usize) -> System {
    let mut constraints = Vec::with_capacity(g.num_edges());
    let mut evaluations = Vec::with_capacity(g.num_edges());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let pw = powers(c.colour(e), r);
        let eval: SparseRow = pw
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (u * r + j, x.clone()))
            .collect();
        let mut cons = eval.clone();
        cons.extend(
            pw.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (v * r + j, -x.clone())),
        );
        constraints.push(cons);
        evaluations.push(eval);
    }
    System { cols: g.n() * r, constraints, evaluations }
}

/// `dim W^r_{G,c}` = `rank[A; B] - rank A`, with `A` the agreement
/// constraints and `B` the evaluation rows.
pub fn dim_w(g: &Graph, c: &EdgeColouring, r: usize) -> Result<usize> {
    require_proper(g, c)?;
    if r == 0 {
        return Ok(0);
    }
    let sys = build_system(g, c, r);
    let mut ech = Echelon::new(sys.cols);
    for row in sys.constraints {
        ech.insert(row);
    }
    let rank_a = ech.rank();
    for row in sys.evaluations {
        ech.insert(row);
    }
    Ok(ech.rank() - rank_a)
}

fn family_from_solution(x: &[BigRational], n: usize, r: usize) -> PolyFamily {
    PolyFamily {
        coeffs: (0..n).map(|v| trim(x[v * r..(v + 1) * r].to_vec())).collect(),
    }
}

/// Checks the recognition conditions edge by edge, exactly.
pub fn recognizes(g: &Graph, c: &EdgeColouring, r: usize, family: &PolyFamily, phi: &EdgeFunction) -> bool {
    if family.coeffs.len() != g.n() || phi.0.len() != g.num_edges() {
        return false;
    }
    if family.coeffs.iter().any(|p| trim(p.clone()).len() > r) {
        return false;
    }
    g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let x = c.colour(e);
        let pu = eval_poly(&family.coeffs[u], x);
        pu == phi.0[e] && eval_poly(&family.coeffs[v], x) == phi.0[e]
    })
}

/// Evaluates a family on the edges (via the smaller endpoint).
pub fn evaluate_family(g: &Graph, c: &EdgeColouring, family: &PolyFamily) -> EdgeFunction {
    EdgeFunction(
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, _))| eval_poly(&family.coeffs[u], c.colour(e)))
            .collect(),
    )
}

pub fn basis_w(g: &Graph, c: &EdgeColouring, r: usize) -> Result<WitnessBasis> {
    require_proper(g, c)?;
    let mut basis = WitnessBasis {
        r,
        colouring: c.clone(),
        vectors: Vec::new(),
        recognizers: Vec::new(),
    };
    if r == 0 {
        return Ok(basis);
    }
    let sys = build_system(g, c, r);
    let mut kernel = Echelon::new(sys.cols);
    for row in sys.constraints {
        kernel.insert(row);
    }
    let mut image = Echelon::new(g.num_edges());
    for x in kernel.nullspace() {
        let x: Vec<BigRational> = x.into_iter().map(BigRational::from_integer).collect();
        let family = family_from_solution(&x, g.n(), r);
        let phi = evaluate_family(g, c, &family);
        if image.insert(linalg::sparse_from_dense(&linalg::integer_row(&phi.0))) {
            basis.vectors.push(phi);
            basis.recognizers.push(family);
        }
    }
    Ok(basis)
}

/// Finds polynomials recognizing `phi`, or `None` when `phi` is not in the
/// witness space.
pub fn recognize(g: &Graph, c: &EdgeColouring, r: usize, phi: &EdgeFunction) -> Result<Option<PolyFamily>> {
    require_proper(g, c)?;
    if phi.0.len() != g.num_edges() {
        return Err(invalid_input(format!(
            "edge function has {} entries but graph has {} edges",
            phi.0.len(),
            g.num_edges()
        )));
    }
    if r == 0 {
        let zero = PolyFamily { coeffs: vec![Vec::new(); g.n()] };
        return Ok(phi.is_zero().then_some(zero));
    }
    let sys = build_system(g, c, r);
    let mut rows = sys.constraints;
    let mut rhs = vec![BigRational::zero(); rows.len()];
    rows.extend(sys.evaluations);
    rhs.extend(phi.0.iter().cloned());
    let Some(x) = linalg::solve(&rows, sys.cols, &rhs) else {
        return Ok(None);
    };
    let family = family_from_solution(&x, g.n(), r);
    if !recognizes(g, c, r, &family, phi) {
        return Err(Error::InvalidBasis("solver returned a non-recognizing family".into()));
    }
    Ok(Some(family))
}

// ---------------------------------------------------------------------------
// lifting bases to products

/// Expected size of a lifted family:
/// cycle: `|B_r| + (k-2)|B_{r-1}| + |B_{r-2}| + d_{r-1} + k·Σ_{t<r-1} d_t`,
/// path:  `|B_r| + (k-1)|B_{r-1}| + d_{r-1} + (k-1)·Σ_{t<r-1} d_t`.
pub fn lifted_basis_size(
    g: &Graph,
    r: usize,
    sizes: (usize, usize, usize),
    k: usize,
    kind: ProductKind,
) -> usize {
    if r == 0 {
        return 0;
    }
    let hist = degree_histogram(g);
    let d_eq = hist.get(&(r - 1)).copied().unwrap_or(0);
    let d_lt: usize = hist.range(..r - 1).map(|(_, n)| n).sum();
    match kind {
        ProductKind::Cycle => sizes.0 + (k - 2) * sizes.1 + sizes.2 + d_eq + k * d_lt,
        ProductKind::Path => sizes.0 + (k - 1) * sizes.1 + d_eq + (k - 1) * d_lt,
    }
}

fn validate_basis(g: &Graph, c: &EdgeColouring, b: &WitnessBasis, level: Option<usize>) -> Result<()> {
    if b.is_empty() && (level.is_none() || level == Some(0)) {
        return Ok(());
    }
    let Some(level) = level else {
        return Err(Error::InvalidBasis("basis supplied for a negative level".into()));
    };
    if b.r != level {
        return Err(Error::InvalidBasis(format!("expected a level-{level} basis, got level {}", b.r)));
    }
    if &b.colouring != c {
        return Err(Error::InvalidBasis("basis built for a different colouring".into()));
    }
    if b.vectors.len() != b.recognizers.len() {
        return Err(Error::InvalidBasis("vectors and recognizers differ in length".into()));
    }
    for (phi, fam) in b.vectors.iter().zip(&b.recognizers) {
        if !recognizes(g, c, level, fam, phi) {
            return Err(Error::InvalidBasis("a recognizer does not recognize its vector".into()));
        }
    }
    let rows: Vec<Vec<BigRational>> = b.vectors.iter().map(|f| f.0.clone()).collect();
    if linalg::rational_rank(&rows) != rows.len() {
        return Err(Error::InvalidBasis("basis vectors are linearly dependent".into()));
    }
    Ok(())
}

struct Lift<'a> {
    g: &'a Graph,
    c: &'a EdgeColouring,
    k: usize,
    kind: ProductKind,
    alphas: Alphas,
    product: Graph,
    colouring: EdgeColouring,
    out: WitnessBasis,
}

impl Lift<'_> {
    fn zero_family(&self) -> PolyFamily {
        PolyFamily { coeffs: vec![Vec::new(); self.product.n()] }
    }

    fn vertex(&self, v: usize, t: usize) -> usize {
        v * self.k + t
    }

    fn alpha(&self, i: usize) -> i64 {
        self.alphas.get(i)
    }

    fn push(&mut self, family: PolyFamily) -> Result<()> {
        let phi = evaluate_family(&self.product, &self.colouring, &family);
        if !recognizes(&self.product, &self.colouring, self.out.r, &family, &phi) {
            return Err(Error::InvalidBasis("lifted family fails recognition".into()));
        }
        self.out.vectors.push(phi);
        self.out.recognizers.push(family);
        Ok(())
    }

    /// Places `factor_t(x) * q_v` on copy `t` for each listed `(t, factor)`.
    fn place(&mut self, recognizer: &PolyFamily, levels: &[(usize, Poly)]) -> Result<()> {
        let mut fam = self.zero_family();
        for v in 0..self.g.n() {
            for (t, factor) in levels {
                fam.coeffs[self.vertex(v, *t)] = trim(poly_mul(factor, &recognizer.coeffs[v]));
            }
        }
        self.push(fam)
    }

    /// `(x - α_a) / (α_b - α_a)`
    fn ratio(&self, a: usize, b: usize) -> Poly {
        let denom = q(self.alpha(b) - self.alpha(a));
        scale(&mul_linear(&[BigRational::one()], self.alpha(a)), &(BigRational::one() / denom))
    }

    fn low_degree(&mut self, r: usize) -> Result<()> {
        let g = self.g;
        for v in 0..g.n() {
            let deg = g.degree(v);
            if deg + 1 == r {
                let p = vanishing(g.incident(v).iter().map(|&e| self.c.colour(e)));
                let mut fam = self.zero_family();
                for t in 0..self.k {
                    fam.coeffs[self.vertex(v, t)] = p.clone();
                }
                self.push(fam)?;
            } else if deg + 1 < r {
                for t in 0..self.kind.rungs(self.k) {
                    let t2 = (t + 1) % self.k;
                    let e = self
                        .product
                        .edge_index(self.vertex(v, t), self.vertex(v, t2))
                        .expect("rung exists");
                    let fam = indicator_family(&self.product, &self.colouring, e);
                    self.push(fam)?;
                }
            }
        }
        Ok(())
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Recognizer of the indicator of edge `e`: at each endpoint, the polynomial
/// that is 1 at `c_e` and vanishes on the other incident colours.
fn indicator_family(g: &Graph, c: &EdgeColouring, e: EdgeIndex) -> PolyFamily {
    let mut coeffs = vec![Vec::new(); g.n()];
    let (u, v) = g.edge(e);
    for w in [u, v] {
        let others: Vec<i64> = g
            .incident(w)
            .iter()
            .filter(|&&f| f != e)
            .map(|&f| c.colour(f))
            .collect();
        coeffs[w] = lagrange_indicator(c.colour(e), &others);
    }
    PolyFamily { coeffs }
}

fn start_lift<'a>(
    g: &'a Graph,
    c: &'a EdgeColouring,
    r: usize,
    k: usize,
    kind: ProductKind,
) -> Result<Lift<'a>> {
    let product = cartesian_product(g, &kind.factor(k)?);
    let colouring = colour_product(g, c, &product, k);
    Ok(Lift {
        g,
        c,
        k,
        kind,
        alphas: Alphas::new(c, k),
        product,
        out: WitnessBasis {
            r,
            colouring: colouring.clone(),
            vectors: Vec::new(),
            recognizers: Vec::new(),
        },
        colouring,
    })
}

fn finish(lift: Lift<'_>) -> Result<WitnessBasis> {
    let rows: Vec<Vec<BigRational>> = lift.out.vectors.iter().map(|f| f.0.clone()).collect();
    if linalg::rational_rank(&rows) != rows.len() {
        return Err(Error::InvalidBasis("lifted family is linearly dependent".into()));
    }
    Ok(lift.out)
}

/// Lifts bases of `W^r`, `W^{r-1}`, `W^{r-2}` on `(G, c)` to an independent
/// family in `W^r` of `G □ C_k` under [`product_colouring`].
///
/// Copies are 0-based here: copy `t` is the 1-based copy `t + 1`.
pub fn lift_basis_cycle(
    g: &Graph,
    c: &EdgeColouring,
    b_r: &WitnessBasis,
    b_rm1: &WitnessBasis,
    b_rm2: &WitnessBasis,
    k: usize,
) -> Result<WitnessBasis> {
    require_proper(g, c)?;
    let r = b_r.r;
    validate_basis(g, c, b_r, Some(r))?;
    validate_basis(g, c, b_rm1, r.checked_sub(1))?;
    validate_basis(g, c, b_rm2, r.checked_sub(2))?;
    let mut lift = start_lift(g, c, r, k, ProductKind::Cycle)?;
    if r == 0 {
        return Ok(lift.out);
    }
    let one = vec![BigRational::one()];

    for fam in &b_r.recognizers {
        let levels: Vec<(usize, Poly)> = (0..k).map(|t| (t, one.clone())).collect();
        lift.place(fam, &levels)?;
    }
    // level ℓ (1-based) lives on copies ℓ-1 and ℓ
    for l in 2..k {
        let levels = vec![(l - 1, lift.ratio(l - 1, l)), (l, lift.ratio(l + 1, l))];
        for fam in &b_rm1.recognizers {
            lift.place(fam, &levels)?;
        }
    }
    let last = mul_linear(&mul_linear(&one, lift.alpha(k - 1)), lift.alpha(k));
    for fam in &b_rm2.recognizers {
        lift.place(fam, &[(k - 1, last.clone())])?;
    }
    lift.low_degree(r)?;
    finish(lift)
}

/// Path analogue of [`lift_basis_cycle`] on `G □ P_k`.
///
/// Levels `2..k` use the middle-level rule. The last copy has no outgoing
/// rung, so level `k - 1` places `q_v` unscaled on copy `k - 1` and level `k`
/// places `(x - α_{k-1}) q_v` on the last copy.
pub fn lift_basis_path(
    g: &Graph,
    c: &EdgeColouring,
    b_r: &WitnessBasis,
    b_rm1: &WitnessBasis,
    k: usize,
) -> Result<WitnessBasis> {
    require_proper(g, c)?;
    let r = b_r.r;
    validate_basis(g, c, b_r, Some(r))?;
    validate_basis(g, c, b_rm1, r.checked_sub(1))?;
    let mut lift = start_lift(g, c, r, k, ProductKind::Path)?;
    if r == 0 {
        return Ok(lift.out);
    }
    let one = vec![BigRational::one()];

    for fam in &b_r.recognizers {
        let levels: Vec<(usize, Poly)> = (0..k).map(|t| (t, one.clone())).collect();
        lift.place(fam, &levels)?;
    }
    for l in 2..=k {
        let mut levels = vec![(l - 1, lift.ratio(l - 1, l))];
        if l == k {
            levels[0].1 = mul_linear(&one, lift.alpha(k - 1));
        } else if l + 1 == k {
            levels.push((l, one.clone()));
        } else {
            levels.push((l, lift.ratio(l + 1, l)));
        }
        for fam in &b_rm1.recognizers {
            lift.place(fam, &levels)?;
        }
    }
    lift.low_degree(r)?;
    finish(lift)
}
