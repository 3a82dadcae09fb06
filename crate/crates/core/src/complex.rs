//! Labeled chain complexes of free modules with polynomial differentials.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::sparse_rank;
use crate::poly::{Monomial, Poly};

/// Sparse matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Poly> {
        self.entries.get(&(i, j))
    }

    /// Adds `p` to entry `(i, j)`, dropping the entry if it cancels.
    pub fn add(&mut self, i: usize, j: usize, p: &Poly) {
        assert!(i < self.rows && j < self.cols, "entry out of bounds");
        let sum = match self.entries.get(&(i, j)) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), sum);
        }
    }

    pub fn add_term(&mut self, i: usize, j: usize, coeff: i64, m: Monomial) {
        self.add(i, j, &Poly::term(coeff, m));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Poly)>> = BTreeMap::new();
        for (&(k, j), p) in &other.entries {
            by_row.entry(k).or_default().push((j, p));
        }
        let mut out = PolyMatrix::new(self.rows, other.cols);
        for (&(i, k), p) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, q) in row {
                    out.add(i, j, &(p * q));
                }
            }
        }
        out
    }

    /// Every variable set to 1.
    pub fn at_one(&self) -> BTreeMap<(usize, usize), i64> {
        self.entries
            .iter()
            .map(|(&k, p)| (k, p.eval_at_one()))
            .filter(|(_, v)| *v != 0)
            .collect()
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let mut out = PolyMatrix::new(self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            out.add(i, j, &f(p));
        }
        out
    }
}

/// A basis element of one of the free modules.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    pub id: usize,
    pub degree: usize,
    pub label: Monomial,
    /// Human-readable name (sign vector, ordered partition, vertex set).
    pub key: String,
}

/// Free modules indexed by homological degree `0..=top`, with
/// `boundary(k)` mapping degree `k` to degree `k - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledComplex {
    n: usize,
    m: usize,
    cells: Vec<Vec<Cell>>,
    boundary: Vec<PolyMatrix>,
}

impl LabeledComplex {
    /// `boundary[k - 1]` is the differential out of degree `k`.
    pub fn new(
        n: usize,
        m: usize,
        cells: Vec<Vec<Cell>>,
        boundary: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if cells.is_empty() || boundary.len() + 1 != cells.len() {
            return Err(Error::Dimension(format!(
                "{} cell groups need {} boundary maps, got {}",
                cells.len(),
                cells.len().saturating_sub(1),
                boundary.len()
            )));
        }
        for (k, d) in boundary.iter().enumerate() {
            if d.rows() != cells[k].len() || d.cols() != cells[k + 1].len() {
                return Err(Error::Dimension(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    cells[k].len(),
                    cells[k + 1].len()
                )));
            }
        }
        Ok(LabeledComplex {
            n,
            m,
            cells,
            boundary,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, k: usize) -> &[Cell] {
        &self.cells[k]
    }

    pub fn boundary(&self, k: usize) -> &PolyMatrix {
        assert!(k >= 1, "no boundary out of degree 0");
        &self.boundary[k - 1]
    }

    pub fn boundary_mut(&mut self, k: usize) -> &mut PolyMatrix {
        assert!(k >= 1, "no boundary out of degree 0");
        &mut self.boundary[k - 1]
    }

    /// All composites `∂_k ∘ ∂_{k+1}` vanish identically.
    pub fn check_d_squared(&self) -> bool {
        self.boundary.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.boundary
            .iter()
            .all(|d| d.entries().all(|(_, p)| !p.has_constant_term()))
    }

    /// Every term of `∂_k(F)` in the row of `G` satisfies `label(G)·term =
    /// label(F)` exactly (the complex is graded by its labels).
    pub fn is_label_graded(&self) -> bool {
        (1..self.cells.len()).all(|k| {
            self.boundary(k).entries().all(|(&(i, j), p)| {
                p.terms()
                    .all(|(t, _)| &self.cells[k - 1][i].label * t == self.cells[k][j].label)
            })
        })
    }

    /// Rational homology ranks after setting every variable to 1.
    pub fn homology_at_one(&self) -> Vec<usize> {
        let maps: Vec<BTreeMap<(usize, usize), i64>> =
            self.boundary.iter().map(PolyMatrix::at_one).collect();
        homology_ranks(&self.ranks(), &maps)
    }

    /// Reduced rational homology of the underlying cell complex, reading
    /// degree `k` as the `k`-dimensional cells.
    pub fn reduced_homology_at_one(&self) -> Vec<usize> {
        let mut h = self.homology_at_one();
        if !self.cells[0].is_empty() {
            h[0] -= 1;
        }
        h
    }

    /// Drops the degrees below `first`, renumbering the rest from 0.
    pub fn truncate(&self, first: usize) -> LabeledComplex {
        let cells: Vec<Vec<Cell>> = self.cells[first..]
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| Cell {
                        degree: c.degree - first,
                        ..c.clone()
                    })
                    .collect()
            })
            .collect();
        LabeledComplex {
            n: self.n,
            m: self.m,
            cells,
            boundary: self.boundary[first..].to_vec(),
        }
    }
}

/// Homology ranks over Q of a complex with the given module ranks and
/// integer differentials (`maps[k - 1]` out of degree `k`).
pub fn homology_ranks(dims: &[usize], maps: &[BTreeMap<(usize, usize), i64>]) -> Vec<usize> {
    let ranks: Vec<usize> = maps.iter().map(sparse_rank).collect();
    (0..dims.len())
        .map(|k| {
            let out = if k >= 1 { ranks[k - 1] } else { 0 };
            let inc = ranks.get(k).copied().unwrap_or(0);
            dims[k] - out - inc
        })
        .collect()
}

/// Union-find with parity, for solving `σ_i σ_j = ±1` systems.
struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        ParityUnion {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Records `σ_a σ_b = -1` if `odd`, else `+1`. False on contradiction.
    fn relate(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == odd;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ odd;
        true
    }
}

fn consistent_signs(a: &LabeledComplex, b: &LabeledComplex, perms: &[Vec<usize>]) -> bool {
    let offsets: Vec<usize> = a
        .cells
        .iter()
        .scan(0, |acc, cs| {
            let o = *acc;
            *acc += cs.len();
            Some(o)
        })
        .collect();
    let total: usize = a.cells.iter().map(Vec::len).sum();
    let mut uf = ParityUnion::new(total);
    for k in 1..a.cells.len() {
        let da = a.boundary(k);
        let db = b.boundary(k);
        if da.nnz() != db.nnz() {
            return false;
        }
        for (&(i, j), p) in da.entries() {
            let Some(q) = db.get(perms[k - 1][i], perms[k][j]) else {
                return false;
            };
            let odd = if p == q {
                false
            } else if &-p == q {
                true
            } else {
                return false;
            };
            if !uf.relate(offsets[k - 1] + i, offsets[k] + j, odd) {
                return false;
            }
        }
    }
    true
}

/// Whether `b` is obtained from `a` by reordering and negating basis
/// elements. With `match_labels`, bases are matched by their (distinct)
/// labels; otherwise every permutation is tried, which is only sensible for
/// tiny complexes (at most 7 cells per degree).
pub fn equivalent_up_to_basis_signs(
    a: &LabeledComplex,
    b: &LabeledComplex,
    match_labels: bool,
) -> bool {
    if a.ranks() != b.ranks() {
        return false;
    }
    if match_labels {
        let mut perms = Vec::new();
        for (ca, cb) in a.cells.iter().zip(&b.cells) {
            let index: BTreeMap<&Monomial, usize> =
                cb.iter().enumerate().map(|(i, c)| (&c.label, i)).collect();
            if index.len() != cb.len() {
                return false;
            }
            let perm: Option<Vec<usize>> =
                ca.iter().map(|c| index.get(&c.label).copied()).collect();
            match perm {
                Some(p) => perms.push(p),
                None => return false,
            }
        }
        return consistent_signs(a, b, &perms);
    }
    if a.cells.iter().any(|cs| cs.len() > 7) {
        return false;
    }
    a.cells
        .iter()
        .map(|cs| (0..cs.len()).permutations(cs.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .any(|perms| consistent_signs(a, b, &perms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize, y: bool) -> Monomial {
        let mut m = Monomial::one(n);
        if y {
            m.y[i] = 1;
        } else {
            m.x[i] = 1;
        }
        m
    }

    fn cell(id: usize, degree: usize, label: Monomial) -> Cell {
        Cell {
            id,
            degree,
            label,
            key: String::new(),
        }
    }

    /// Koszul-style complex on x1, x2: S <- S^2 <- S.
    fn koszul() -> LabeledComplex {
        let n = 2;
        let x1 = var(n, 0, false);
        let x2 = var(n, 1, false);
        let mut d1 = PolyMatrix::new(1, 2);
        d1.add_term(0, 0, 1, x1.clone());
        d1.add_term(0, 1, 1, x2.clone());
        let mut d2 = PolyMatrix::new(2, 1);
        d2.add_term(0, 0, 1, x2.clone());
        d2.add_term(1, 0, -1, x1.clone());
        LabeledComplex::new(
            n,
            2,
            vec![
                vec![cell(0, 0, Monomial::one(n))],
                vec![cell(0, 1, x1.clone()), cell(1, 1, x2.clone())],
                vec![cell(0, 2, &x1 * &x2)],
            ],
            vec![d1, d2],
        )
        .unwrap()
    }

    #[test]
    fn koszul_checks() {
        let k = koszul();
        assert!(k.check_d_squared());
        assert!(k.is_minimal());
        assert!(k.is_label_graded());
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        // variables to 1: 1 <- 2 <- 1 with maps (1 1) and (1 -1)^T, exact except H_0 = 0
        assert_eq!(k.homology_at_one(), vec![0, 0, 0]);
    }

    #[test]
    fn mutation_breaks_d_squared() {
        let mut k = koszul();
        let x1 = var(2, 0, false);
        k.boundary_mut(2).add_term(1, 0, 2, x1);
        assert!(!k.check_d_squared());
    }

    #[test]
    fn signed_equivalence() {
        let a = koszul();
        let mut b = koszul();
        // negate the second degree-1 basis element
        let x2 = var(2, 1, false);
        let x1 = var(2, 0, false);
        b.boundary_mut(1).add_term(0, 1, -2, x2);
        b.boundary_mut(2).add_term(1, 0, 2, x1);
        // b: d1 = (x1, -x2), d2 = (x2, x1)^T
        assert!(b.check_d_squared());
        assert!(equivalent_up_to_basis_signs(&a, &b, true));
        assert!(equivalent_up_to_basis_signs(&a, &b, false));
        let mut c = koszul();
        c.boundary_mut(2).add_term(0, 0, -2, var(2, 1, false));
        assert!(!equivalent_up_to_basis_signs(&a, &c, false));
    }

    #[test]
    fn truncation_drops_degree_zero() {
        let t = koszul().truncate(1);
        assert_eq!(t.ranks(), vec![2, 1]);
        assert_eq!(t.cells(0)[1].degree, 0);
    }

    #[test]
    fn homology_of_circle() {
        // one vertex, one edge with boundary 0
        let maps = vec![BTreeMap::new()];
        assert_eq!(homology_ranks(&[1, 1], &maps), vec![1, 1]);
        // triangle boundary: 3 vertices, 3 edges
        let mut d: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (e, (a, b)) in [(0, 1), (1, 2), (0, 2)].into_iter().enumerate() {
            d.insert((a, e), -1);
            d.insert((b, e), 1);
        }
        assert_eq!(homology_ranks(&[3, 3], &[d]), vec![1, 1]);
    }
}
