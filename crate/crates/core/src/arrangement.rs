//! Faces of the central arrangement of coordinate hyperplanes in `R·L`, and
//! the quotient of the periodic arrangement by `L`.
//!
//! Points of `R·L` are written in basis coordinates `x ∈ R^m`; the `i`-th
//! hyperplane is `b_i · x = 0`. A covector is the sign vector of `B x`.
//! The cell of a covector `s` is the polytope `{-s⁻ ≤ B x ≤ s⁺}`, which has
//! the origin as a vertex; every cell of the periodic arrangement is a
//! lattice translate of such a cell.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot, Lattice};
use crate::linalg::{integer_rank, kernel_basis, IntMatrix};
use crate::lp::{self, Constraint, Relation};
use crate::poly::Monomial;

/// One coordinate of a sign vector. The derived order `0 < + < -` is the
/// canonical order used to pick orbit representatives.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        match v.signum() {
            0 => Sign::Zero,
            1 => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Zero => 0,
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn zero(n: usize) -> Self {
        SignVector(vec![Sign::Zero; n])
    }

    pub fn of(v: &[i64]) -> Self {
        SignVector(v.iter().map(|&x| Sign::of(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|s| s.value()).collect()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] == Sign::Zero)
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != Sign::Zero)
            .collect()
    }

    pub fn neg(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    /// Flips `+` and `-` on the coordinates where `v` is nonzero.
    pub fn flipped_by(&self, v: &[i64]) -> SignVector {
        SignVector(
            self.0
                .iter()
                .zip(v)
                .map(|(&s, &x)| if x != 0 { s.neg() } else { s })
                .collect(),
        )
    }

    /// `self_i ∈ {0, other_i}` for every `i`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    /// The label `x^{s+} y^{s-}`.
    pub fn label(&self) -> Monomial {
        Monomial::from_signed(&self.values())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covector {
    pub signs: SignVector,
    pub dim: usize,
    /// A point `x ∈ Z^m` with `sign(B x) = signs`.
    pub witness: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_covectors: usize,
    pub max_lattice_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_covectors: 1_000_000,
            max_lattice_points: 1_000_000,
        }
    }
}

fn sub_rows(l: &Lattice, idx: &[usize]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = idx.iter().map(|&i| l.rows()[i].clone()).collect();
    IntMatrix::from_rows_with_cols(&rows, l.m())
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Integer basis of `{x : b_i · x = 0 for i in zero}`, in Hermite form.
pub fn tangent_basis(l: &Lattice, zero: &[usize]) -> Result<Vec<Vec<i64>>> {
    let k = kernel_basis(&sub_rows(l, zero));
    (0..k.rows()).map(|i| to_i64_vec(k.row(i))).collect()
}

fn content_normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn checked_combo(n: i64, x: &[i64], e: i64, w: &[i64]) -> Result<Vec<i64>> {
    x.iter()
        .zip(w)
        .map(|(&a, &b)| {
            n.checked_mul(a)
                .and_then(|t| t.checked_add(e * b))
                .ok_or(Error::Overflow)
        })
        .collect()
}

/// Face poset of the central arrangement.
#[derive(Clone, Debug)]
pub struct Arrangement {
    n: usize,
    m: usize,
    covectors: Vec<Covector>,
    index: HashMap<SignVector, usize>,
    down: Vec<Vec<usize>>,
    by_dim: Vec<Vec<usize>>,
}

impl Arrangement {
    /// Breadth-first enumeration upward from the zero covector.
    ///
    /// From a covector `s` with zero set `Z` of rank `r`, each rank `r-1`
    /// subflat of `Z` is reached through an independent `(r-1)`-subset `I`
    /// and a direction `w ∈ ker B_I` not killed by `B_Z`. The two covers are
    /// realized by `N x_s ± w` for `N` large enough to keep the signs of `s`.
    pub fn enumerate(l: &Lattice, limits: &Limits) -> Result<Self> {
        let (n, m) = (l.n(), l.m());
        let mut found: Vec<Covector> = vec![Covector {
            signs: SignVector::zero(n),
            dim: 0,
            witness: vec![0; m],
        }];
        let mut index: HashMap<SignVector, usize> = HashMap::new();
        index.insert(SignVector::zero(n), 0);
        let mut down: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        let mut frontier = vec![0usize];
        for dim in 0..m {
            let mut next = Vec::new();
            for &si in &frontier {
                let s = found[si].clone();
                let zero = s.signs.zero_set();
                let r = m - dim;
                let mut seen_flats: BTreeSet<Vec<usize>> = BTreeSet::new();
                for subset in zero.iter().copied().combinations(r - 1) {
                    let k = kernel_basis(&sub_rows(l, &subset));
                    if k.rows() != m - r + 1 {
                        continue;
                    }
                    let w = (0..k.rows())
                        .map(|j| to_i64_vec(k.row(j)))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .find(|w| zero.iter().any(|&i| dot(&l.rows()[i], w) != 0))
                        .expect("independent subset leaves a direction off the flat");
                    let flat: Vec<usize> = zero
                        .iter()
                        .copied()
                        .filter(|&i| dot(&l.rows()[i], &w) == 0)
                        .collect();
                    if !seen_flats.insert(flat) {
                        continue;
                    }
                    let mut big_n = 1i64;
                    for i in s.signs.support() {
                        let p = dot(&l.rows()[i], &s.witness).abs();
                        let q = dot(&l.rows()[i], &w).abs();
                        big_n = big_n.max(q / p + 1);
                    }
                    for e in [1i64, -1] {
                        let mut x = checked_combo(big_n, &s.witness, e, &w)?;
                        content_normalize(&mut x);
                        let t = SignVector::of(&l.apply(&x));
                        debug_assert!(s.signs.conforms_to(&t));
                        let ti = match index.get(&t) {
                            Some(&ti) => ti,
                            None => {
                                let ti = found.len();
                                if ti >= limits.max_covectors {
                                    return Err(Error::CapExceeded {
                                        what: "covector",
                                        count: ti + 1,
                                        cap: limits.max_covectors,
                                    });
                                }
                                index.insert(t.clone(), ti);
                                found.push(Covector {
                                    signs: t,
                                    dim: dim + 1,
                                    witness: x,
                                });
                                down.push(BTreeSet::new());
                                next.push(ti);
                                ti
                            }
                        };
                        down[ti].insert(si);
                    }
                }
            }
            frontier = next;
        }
        Ok(Self::finish(n, m, found, down))
    }

    fn finish(n: usize, m: usize, found: Vec<Covector>, down: Vec<BTreeSet<usize>>) -> Self {
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| {
            (found[a].dim, &found[a].signs).cmp(&(found[b].dim, &found[b].signs))
        });
        let mut new_pos = vec![0; found.len()];
        for (p, &old) in order.iter().enumerate() {
            new_pos[old] = p;
        }
        let covectors: Vec<Covector> = order.iter().map(|&i| found[i].clone()).collect();
        let down: Vec<Vec<usize>> = order
            .iter()
            .map(|&i| {
                let mut d: Vec<usize> = down[i].iter().map(|&j| new_pos[j]).collect();
                d.sort();
                d
            })
            .collect();
        let index = covectors
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        let mut by_dim = vec![Vec::new(); m + 1];
        for (i, c) in covectors.iter().enumerate() {
            by_dim[c.dim].push(i);
        }
        Arrangement {
            n,
            m,
            covectors,
            index,
            down,
            by_dim,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// All covectors, sorted by dimension and then sign vector.
    pub fn covectors(&self) -> &[Covector] {
        &self.covectors
    }

    pub fn covector(&self, i: usize) -> &Covector {
        &self.covectors[i]
    }

    pub fn index_of(&self, s: &SignVector) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Covectors of dimension one less lying in the closure of covector `i`.
    pub fn down_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn of_dim(&self, d: usize) -> &[usize] {
        &self.by_dim[d]
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }
}

/// Exhaustive oracle: every sign pattern is tested for realizability by an
/// exact LP (`b_i·x = 0`, `≥ 1` or `≤ -1`), extending patterns one coordinate
/// at a time and pruning infeasible prefixes. Results are sorted by
/// `(dim, signs)`.
pub fn brute_force_covectors(l: &Lattice) -> Result<Vec<Covector>> {
    let (n, m) = (l.n(), l.m());
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Sign>, Option<Vec<BigRational>>)> = vec![(Vec::new(), None)];
    while let Some((prefix, point)) = stack.pop() {
        if prefix.len() == n {
            let signs = SignVector(prefix);
            let zero = signs.zero_set();
            let dim = m - integer_rank(&sub_rows(l, &zero));
            let pt = point.unwrap_or_else(|| vec![BigRational::zero(); m]);
            let den = pt.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let witness = to_i64_vec(
                &pt.iter()
                    .map(|v| (v * BigRational::from_integer(den.clone())).to_integer())
                    .collect::<Vec<_>>(),
            )?;
            out.push(Covector {
                signs,
                dim,
                witness,
            });
            continue;
        }
        for s in [Sign::Zero, Sign::Plus, Sign::Minus] {
            let mut p = prefix.clone();
            p.push(s);
            let cons: Vec<Constraint> = p
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    let (rel, rhs) = match s {
                        Sign::Zero => (Relation::Eq, 0),
                        Sign::Plus => (Relation::Ge, 1),
                        Sign::Minus => (Relation::Le, -1),
                    };
                    Constraint::from_ints(&l.rows()[i], rel, rhs)
                })
                .collect();
            if let Some(pt) = lp::feasible_point(m, &cons) {
                stack.push((p, Some(pt)));
            }
        }
    }
    out.sort_by(|a, b| (a.dim, &a.signs).cmp(&(b.dim, &b.signs)));
    Ok(out)
}

/// Face relation recomputed from scratch: `t` is a facet of `s` iff `t`
/// conforms to `s` and has dimension one less.
pub fn brute_force_down_covers(covs: &[Covector]) -> Vec<Vec<usize>> {
    covs.iter()
        .map(|s| {
            covs.iter()
                .enumerate()
                .filter(|(_, t)| t.dim + 1 == s.dim && t.signs.conforms_to(&s.signs))
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// A vector in the span of the cone `s` (spanned by `tangent`) pointing out
/// of `s` across its facet `t`, where `t` conforms to `s` with one more
/// dimension of zeros.
pub fn outward_direction(
    rows: &[Vec<i64>],
    tangent: &[Vec<i64>],
    s: &SignVector,
    t: &SignVector,
) -> Vec<i64> {
    let i = (0..s.len())
        .find(|&i| t.0[i] == Sign::Zero && s.0[i] != Sign::Zero)
        .expect("facet lies on a new hyperplane");
    let g = tangent
        .iter()
        .find(|g| dot(&rows[i], g) != 0)
        .expect("cell span is not inside the facet hyperplane");
    let dir = -s.0[i].value() * dot(&rows[i], g).signum();
    g.iter().map(|&x| dir * x).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientCell {
    /// Index among the quotient cells of the same dimension.
    pub id: usize,
    pub dim: usize,
    /// Covector index of the canonical representative.
    pub rep: usize,
    pub signs: SignVector,
    pub label: Monomial,
    pub orbit_size: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellGeometry {
    pub vertices: Vec<Vec<i64>>,
    pub tangent_basis: Vec<Vec<i64>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacetIncidence {
    /// Quotient cell id in dimension `dim - 1`.
    pub facet: usize,
    /// The geometric facet is `cell(facet rep) + translation`.
    pub translation: Vec<i64>,
    /// `m_F / m_G`, computed for the geometric facet `G`.
    pub monomial_quotient: Monomial,
    /// A direction in the cell's span pointing out of the cell across `G`.
    pub outward: Vec<i64>,
    /// Vertices of the geometric facet, sorted.
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
struct OrbitEntry {
    cell: usize,
    offset: Vec<i64>,
}

/// The finite cell complex `H_L / L`.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    arrangement: Arrangement,
    rows: Vec<Vec<i64>>,
    cells: Vec<Vec<QuotientCell>>,
    orbit: Vec<OrbitEntry>,
    vertices: Vec<Vec<Vec<Vec<i64>>>>,
    tangents: BTreeMap<Vec<usize>, Vec<Vec<i64>>>,
}

impl QuotientComplex {
    pub fn new(l: &Lattice, limits: &Limits) -> Result<Self> {
        l.require_unimodular()?;
        let arrangement = Arrangement::enumerate(l, limits)?;
        Self::from_arrangement(l, arrangement, limits)
    }

    pub fn from_arrangement(
        l: &Lattice,
        arrangement: Arrangement,
        limits: &Limits,
    ) -> Result<Self> {
        let m = l.m();
        let mut orbit: Vec<Option<OrbitEntry>> = vec![None; arrangement.covectors.len()];
        let mut cells = vec![Vec::new(); m + 1];
        let mut vertices = vec![Vec::new(); m + 1];
        let mut tangents = BTreeMap::new();
        for d in 0..=m {
            for &ci in arrangement.of_dim(d) {
                if orbit[ci].is_some() {
                    continue;
                }
                let s = &arrangement.covectors[ci].signs;
                let vals = s.values();
                let lo: Vec<i64> = vals.iter().map(|&v| v.min(0)).collect();
                let hi: Vec<i64> = vals.iter().map(|&v| v.max(0)).collect();
                let verts = l.lattice_points(&lo, &hi, limits.max_lattice_points)?;
                let id = cells[d].len();
                for v in &verts {
                    let t = s.flipped_by(&l.apply(v));
                    let ti = arrangement
                        .index_of(&t)
                        .expect("translate of a cell at a vertex is a covector cell");
                    assert!(orbit[ti].is_none(), "orbits overlap");
                    orbit[ti] = Some(OrbitEntry {
                        cell: id,
                        offset: v.clone(),
                    });
                }
                let zero = s.zero_set();
                if !tangents.contains_key(&zero) {
                    tangents.insert(zero.clone(), tangent_basis(l, &zero)?);
                }
                cells[d].push(QuotientCell {
                    id,
                    dim: d,
                    rep: ci,
                    signs: s.clone(),
                    label: s.label(),
                    orbit_size: verts.len(),
                });
                vertices[d].push(verts);
            }
        }
        let orbit = orbit
            .into_iter()
            .map(|o| o.expect("every covector belongs to an orbit"))
            .collect();
        Ok(QuotientComplex {
            arrangement,
            rows: l.rows().to_vec(),
            cells,
            orbit,
            vertices,
            tangents,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, d: usize) -> &[QuotientCell] {
        &self.cells[d]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Quotient cell (dimension, id) containing the covector with index `ci`,
    /// and the offset `z` with `cell(ci) = cell(rep) - z`.
    pub fn orbit_of(&self, ci: usize) -> (usize, usize, &[i64]) {
        let e = &self.orbit[ci];
        (self.arrangement.covectors[ci].dim, e.cell, &e.offset)
    }

    pub fn tangent(&self, signs: &SignVector) -> &[Vec<i64>] {
        &self.tangents[&signs.zero_set()]
    }

    /// Vertices of `cell(s)` for the covector with index `ci`, sorted.
    pub fn covector_vertices(&self, ci: usize) -> Vec<Vec<i64>> {
        let d = self.arrangement.covectors[ci].dim;
        let e = &self.orbit[ci];
        let mut v: Vec<Vec<i64>> = self.vertices[d][e.cell]
            .iter()
            .map(|w| w.iter().zip(&e.offset).map(|(a, b)| a - b).collect())
            .collect();
        v.sort();
        v
    }

    pub fn geometry(&self, d: usize, id: usize) -> CellGeometry {
        CellGeometry {
            vertices: self.vertices[d][id].clone(),
            tangent_basis: self.tangent(&self.cells[d][id].signs).to_vec(),
        }
    }

    fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| dot(r, u)).collect()
    }

    /// Codimension-one faces of the closed cell, one entry per geometric
    /// facet. Facets are found at every vertex `v`: the cell translated by
    /// `-v` is the cell of a covector, whose down-covers give the facets
    /// through `v`.
    pub fn cell_facets(&self, d: usize, id: usize) -> Vec<FacetIncidence> {
        assert!(d >= 1, "vertices have no facets");
        let cell = &self.cells[d][id];
        let s = &cell.signs;
        let tangent = self.tangent(s);
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let mut out = Vec::new();
        for v in &self.vertices[d][id] {
            let bv = self.apply(v);
            let sv = s.flipped_by(&bv);
            let svi = self
                .arrangement
                .index_of(&sv)
                .expect("translate is a covector");
            for &ti in self.arrangement.down_covers(svi) {
                let t = &self.arrangement.covectors[ti].signs;
                let e = &self.orbit[ti];
                let facet = &self.cells[d - 1][e.cell];
                let translation: Vec<i64> = v.iter().zip(&e.offset).map(|(a, b)| a - b).collect();
                let mut verts: Vec<Vec<i64>> = self.vertices[d - 1][e.cell]
                    .iter()
                    .map(|w| w.iter().zip(&translation).map(|(a, b)| a + b).collect())
                    .collect();
                verts.sort();
                if !seen.insert(verts.clone()) {
                    continue;
                }
                let bt = self.apply(&translation);
                let sp = s.values();
                let tp = facet.signs.values();
                let exponent = |e: i64| -> u32 {
                    assert!(e >= 0, "facet label does not divide the cell label");
                    e as u32
                };
                let xq: Vec<u32> = (0..sp.len())
                    .map(|i| exponent(sp[i].max(0) - tp[i].max(0) - bt[i]))
                    .collect();
                let yq: Vec<u32> = (0..sp.len())
                    .map(|i| exponent((-sp[i]).max(0) - (-tp[i]).max(0) + bt[i]))
                    .collect();
                let outward = outward_direction(&self.rows, tangent, &sv, t);
                out.push(FacetIncidence {
                    facet: facet.id,
                    translation,
                    monomial_quotient: Monomial::new(xq, yq),
                    outward,
                    vertices: verts,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sum_zero_lattice;

    fn graphic(d: usize, edges: &[(usize, usize)]) -> Lattice {
        let rows: Vec<Vec<i64>> = edges
            .iter()
            .map(|&(i, j)| {
                let mut r = vec![0i64; d - 1];
                if i < d {
                    r[i - 1] += 1;
                }
                if j < d {
                    r[j - 1] -= 1;
                }
                r
            })
            .collect();
        Lattice::from_image(IntMatrix::from_rows(&rows)).unwrap()
    }

    fn complete(d: usize) -> Lattice {
        let edges: Vec<(usize, usize)> = (1..=d).tuple_combinations().collect();
        graphic(d, &edges)
    }

    fn rank_one() -> Lattice {
        Lattice::from_image(IntMatrix::from_rows(&[[1], [-1]])).unwrap()
    }

    #[test]
    fn sign_order_and_flips() {
        assert!(Sign::Zero < Sign::Plus && Sign::Plus < Sign::Minus);
        let s = SignVector::of(&[1, 0, -1]);
        assert_eq!(s.to_string(), "+0-");
        assert_eq!(s.flipped_by(&[1, 0, 0]).to_string(), "-0-");
        assert!(SignVector::of(&[1, 0, 0]).conforms_to(&s));
        assert!(!SignVector::of(&[-1, 0, 0]).conforms_to(&s));
        assert_eq!(s.label().to_string(), "x1*y3");
    }

    #[test]
    fn sum_zero_counts() {
        let l = sum_zero_lattice(3).unwrap();
        let a = Arrangement::enumerate(&l, &Limits::default()).unwrap();
        assert_eq!(a.counts_by_dim(), vec![1, 6, 6]);
        let q = QuotientComplex::from_arrangement(&l, a, &Limits::default()).unwrap();
        assert_eq!(q.f_vector(), vec![1, 3, 2]);
        assert_eq!(q.euler_characteristic(), 0);
    }

    #[test]
    fn rank_one_counts() {
        let l = rank_one();
        let q = QuotientComplex::new(&l, &Limits::default()).unwrap();
        assert_eq!(q.arrangement().counts_by_dim(), vec![1, 2]);
        assert_eq!(q.f_vector(), vec![1, 1]);
    }

    #[test]
    fn k4_counts_match_ordered_partitions() {
        let l = complete(4);
        let q = QuotientComplex::new(&l, &Limits::default()).unwrap();
        // ordered set partitions of 4 elements into k+1 blocks
        assert_eq!(q.arrangement().counts_by_dim(), vec![1, 14, 36, 24]);
        assert_eq!(q.f_vector(), vec![1, 7, 12, 6]);
    }

    #[test]
    fn bfs_matches_brute_force() {
        for l in [sum_zero_lattice(3).unwrap(), rank_one(), complete(4)] {
            let a = Arrangement::enumerate(&l, &Limits::default()).unwrap();
            let b = brute_force_covectors(&l).unwrap();
            let lhs: Vec<(usize, SignVector)> = a
                .covectors()
                .iter()
                .map(|c| (c.dim, c.signs.clone()))
                .collect();
            let rhs: Vec<(usize, SignVector)> =
                b.iter().map(|c| (c.dim, c.signs.clone())).collect();
            assert_eq!(lhs, rhs);
            let downs = brute_force_down_covers(&b);
            for i in 0..downs.len() {
                assert_eq!(a.down_covers(i), &downs[i][..]);
            }
            for c in a.covectors().iter().chain(&b) {
                assert_eq!(SignVector::of(&l.apply(&c.witness)), c.signs);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let l = complete(4);
        let limits = Limits {
            max_covectors: 10,
            ..Limits::default()
        };
        assert!(matches!(
            Arrangement::enumerate(&l, &limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn geometry_of_small_cells() {
        let l = sum_zero_lattice(3).unwrap();
        let q = QuotientComplex::new(&l, &Limits::default()).unwrap();
        let g0 = q.geometry(0, 0);
        assert_eq!(g0.vertices, vec![vec![0, 0]]);
        assert!(g0.tangent_basis.is_empty());
        for id in 0..3 {
            let g = q.geometry(1, id);
            assert_eq!(g.vertices.len(), 2);
            assert!(g.vertices.contains(&vec![0, 0]));
            let u = g.vertices.iter().find(|v| v != &&vec![0, 0]).unwrap();
            let c = l.apply(u);
            assert_eq!(c.iter().filter(|&&x| x != 0).count(), 2);
            let facets = q.cell_facets(1, id);
            assert_eq!(facets.len(), 2);
            let mut quotients: Vec<Monomial> =
                facets.iter().map(|f| f.monomial_quotient.clone()).collect();
            quotients.sort();
            let plus = Monomial::from_signed(&c);
            let mut expected = vec![plus.clone(), plus.swap_xy()];
            expected.sort();
            assert_eq!(quotients, expected);
        }
        for id in 0..2 {
            assert_eq!(q.geometry(2, id).vertices.len(), 3);
            let facets = q.cell_facets(2, id);
            assert_eq!(facets.len(), 3);
            for f in facets {
                assert_eq!(f.monomial_quotient.degree(), 1);
            }
        }
    }

    #[test]
    fn orbits_partition_covectors() {
        let l = complete(4);
        let q = QuotientComplex::new(&l, &Limits::default()).unwrap();
        let counts = q.arrangement().counts_by_dim();
        for d in 0..=3 {
            let total: usize = q.cells(d).iter().map(|c| c.orbit_size).sum();
            assert_eq!(total, counts[d]);
            for c in q.cells(d) {
                assert!(c.label.is_squarefree());
                for (a, b) in c.label.x.iter().zip(&c.label.y) {
                    assert!(a * b == 0);
                }
            }
        }
    }

    #[test]
    fn k4_top_cell_facets_against_polytope_oracle() {
        // oracle: facets of {-s⁻ ≤ Bx ≤ s⁺} are the maximal sets of vertices
        // lying on a common tight inequality whose affine span has dim - 1
        let l = complete(4);
        let q = QuotientComplex::new(&l, &Limits::default()).unwrap();
        for id in 0..q.cells(3).len() {
            let g = q.geometry(3, id);
            let s = q.cells(3)[id].signs.values();
            let mut oracle: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
            for i in 0..l.n() {
                for bound in [s[i].min(0), s[i].max(0)] {
                    let on: Vec<Vec<i64>> = g
                        .vertices
                        .iter()
                        .filter(|v| l.apply(v)[i] == bound)
                        .cloned()
                        .collect();
                    if on.len() < 3 {
                        continue;
                    }
                    let diffs: Vec<Vec<i64>> = on[1..]
                        .iter()
                        .map(|v| v.iter().zip(&on[0]).map(|(a, b)| a - b).collect())
                        .collect();
                    if crate::linalg::rank_i64(&diffs, 3) == 2 {
                        oracle.insert(on);
                    }
                }
            }
            let got: BTreeSet<Vec<Vec<i64>>> = q
                .cell_facets(3, id)
                .into_iter()
                .map(|f| f.vertices)
                .collect();
            assert_eq!(got, oracle);
        }
    }
}
