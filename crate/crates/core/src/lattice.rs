//! Lattices `L ⊂ Z^n`, unimodularity certificates, circuits and Lawrence
//! binomials.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    determinant, integer_rank, kernel_basis, max_minor_scan, row_lattice_basis, smith_invariants,
    IntMatrix, MinorScan,
};
use crate::lp::{self, Constraint, Relation};
use crate::poly::{Monomial, Poly};

/// An element of `L` together with its coordinates in the basis `B`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVector {
    pub coords: Vec<i64>,
    pub preimage: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Circuit {
    pub vector: LatticeVector,
    pub support: Vec<usize>,
}

impl Circuit {
    pub fn coords(&self) -> &[i64] {
        &self.vector.coords
    }
}

/// `plus - minus`, with `plus = x^{c+} y^{c-}` and `minus = x^{c-} y^{c+}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn from_vector(c: &[i64]) -> Self {
        let plus = Monomial::from_signed(c);
        Binomial {
            minus: plus.swap_xy(),
            plus,
        }
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::term(1, self.plus.clone());
        p.add_term(-1, self.minus.clone());
        p
    }

    pub fn degree(&self) -> u64 {
        self.plus.degree()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// `m` rows of `B` forming a unimodular submatrix, with its integer inverse.
/// Lattice points are then parametrized by their values on these rows.
#[derive(Clone, Debug)]
struct Frame {
    rows: Vec<usize>,
    inverse: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    b: IntMatrix,
    a: Option<IntMatrix>,
    rows: Vec<Vec<i64>>,
    frame: Option<Frame>,
}

fn ensure_full_column_rank(b: &IntMatrix) -> Result<()> {
    if b.cols() == 0 {
        return Err(Error::TrivialLattice);
    }
    let rank = integer_rank(b);
    if rank < b.cols() {
        return Err(Error::RankDeficient {
            rank,
            cols: b.cols(),
        });
    }
    Ok(())
}

/// Lexicographically first set of rows of maximal rank.
fn greedy_row_basis(b: &IntMatrix) -> Vec<usize> {
    let mut chosen = Vec::new();
    for i in 0..b.rows() {
        chosen.push(i);
        if integer_rank(&b.select_rows(&chosen)) < chosen.len() {
            chosen.pop();
        }
        if chosen.len() == b.cols() {
            break;
        }
    }
    chosen
}

/// Inverse of a square integer matrix with determinant ±1.
fn unimodular_inverse(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    let k = m.rows();
    if !determinant(m).abs().is_one() {
        return None;
    }
    // Gauss-Jordan over Q on [M | I]
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            row.extend((0..k).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for v in a[c].iter_mut() {
            *v /= &piv;
        }
        let prow = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            row[k..]
                .iter()
                .map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten())
                .collect()
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Lattice {
    fn build(b: IntMatrix, a: Option<IntMatrix>) -> Result<Self> {
        let rows = b.to_i64_rows().ok_or(Error::Overflow)?;
        let basis = greedy_row_basis(&b);
        let frame = unimodular_inverse(&b.select_rows(&basis)).map(|inverse| Frame {
            rows: basis,
            inverse,
        });
        Ok(Lattice { b, a, rows, frame })
    }

    /// `L` = column span of `b`, taken as given (no saturation).
    pub fn from_image(b: IntMatrix) -> Result<Self> {
        ensure_full_column_rank(&b)?;
        Self::build(b, None)
    }

    /// Saturation of the column span of `b`: `L = (R·L) ∩ Z^n`.
    pub fn from_image_saturated(b: IntMatrix) -> Result<Self> {
        ensure_full_column_rank(&b)?;
        let a = kernel_basis(&b.transpose());
        if a.rows() == 0 {
            return Self::build(IntMatrix::identity(b.rows()), Some(a));
        }
        let sat = kernel_basis(&a).transpose();
        Self::build(sat, Some(a))
    }

    /// `L = ker(a) ∩ Z^n`, always saturated.
    pub fn from_kernel(a: IntMatrix) -> Result<Self> {
        let k = kernel_basis(&a);
        if k.rows() == 0 {
            return Err(Error::TrivialLattice);
        }
        Self::build(k.transpose(), Some(a))
    }

    /// Both descriptions at once. Requires `A·B = 0` and `im(B) = ker(A)`;
    /// lattices whose image is not saturated are refused.
    pub fn from_image_and_kernel(b: IntMatrix, a: IntMatrix) -> Result<Self> {
        ensure_full_column_rank(&b)?;
        if a.cols() != b.rows() {
            return Err(Error::Dimension(format!(
                "kernel matrix has {} columns but the lattice lives in Z^{}",
                a.cols(),
                b.rows()
            )));
        }
        if !a.mul(&b).is_zero() || integer_rank(&a) + b.cols() != b.rows() {
            return Err(Error::NotSaturated);
        }
        let ker = kernel_basis(&a);
        if row_lattice_basis(&ker) != row_lattice_basis(&b.transpose()) {
            return Err(Error::NotSaturated);
        }
        Self::build(b, Some(a))
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.b
    }

    /// Rows `b_i ∈ Z^m` of the basis matrix.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The kernel matrix supplied or derived at construction, if any.
    pub fn kernel_matrix(&self) -> Option<&IntMatrix> {
        self.a.as_ref()
    }

    /// A matrix whose kernel is the saturation of `L`.
    pub fn orthogonal_matrix(&self) -> IntMatrix {
        match &self.a {
            Some(a) => a.clone(),
            None => kernel_basis(&self.b.transpose()),
        }
    }

    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| dot(r, u)).collect()
    }

    pub fn vector(&self, u: Vec<i64>) -> LatticeVector {
        LatticeVector {
            coords: self.apply(&u),
            preimage: u,
        }
    }

    /// Solves `B u = v` over the integers.
    pub fn preimage(&self, v: &[i64]) -> Option<Vec<i64>> {
        if let Some(f) = &self.frame {
            let y: Vec<i64> = f.rows.iter().map(|&i| v[i]).collect();
            let u: Vec<i64> = f.inverse.iter().map(|r| dot(r, &y)).collect();
            return (self.apply(&u) == v).then_some(u);
        }
        let basis = greedy_row_basis(&self.b);
        let sub = self.b.select_rows(&basis);
        let d = determinant(&sub);
        // Cramer's rule
        let mut u = Vec::with_capacity(self.m());
        for j in 0..self.m() {
            let mut mj = sub.clone();
            for (r, &i) in basis.iter().enumerate() {
                mj.set(r, j, BigInt::from(v[i]));
            }
            let (q, rem) = determinant(&mj).div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            u.push(q.to_i64()?);
        }
        (self.apply(&u) == v).then_some(u)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.n() && self.preimage(v).is_some()
    }

    /// Same lattice as `other` (same ambient space and same set of points).
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.n() == other.n()
            && row_lattice_basis(&self.b.transpose()) == row_lattice_basis(&other.b.transpose())
    }

    /// Re-expresses `L` in a different basis `B·U` (U unimodular).
    pub fn with_basis_change(&self, u: &IntMatrix) -> Result<Lattice> {
        if !determinant(u).abs().is_one() {
            return Err(Error::Dimension("basis change is not unimodular".into()));
        }
        Self::build(self.b.mul(u), self.a.clone())
    }

    /// The lattice `{ (s_k v_{perm[k]})_k : v ∈ L }` obtained by permuting and
    /// negating ambient coordinates.
    pub fn relabel_coordinates(&self, perm: &[usize], negate: &[bool]) -> Result<Lattice> {
        let rows: Vec<Vec<i64>> = perm
            .iter()
            .zip(negate)
            .map(|(&p, &neg)| {
                self.rows[p]
                    .iter()
                    .map(|&v| if neg { -v } else { v })
                    .collect()
            })
            .collect();
        Self::from_image(IntMatrix::from_rows_with_cols(&rows, self.m()))
    }

    /// Every maximal minor of `B` in `{0, ±1}`.
    pub fn is_unimodular(&self) -> MinorScan {
        max_minor_scan(&self.b, &[BigInt::zero(), BigInt::one(), -BigInt::one()])
    }

    pub fn require_unimodular(&self) -> Result<()> {
        let scan = self.is_unimodular();
        match scan.witness {
            None => Ok(()),
            Some(w) => Err(Error::NotUnimodular {
                rows: w.rows,
                value: w.value,
            }),
        }
    }

    /// `Z^|coords| / π(L)` is torsion-free, `π` the coordinate projection.
    pub fn projection_torsion_check(&self, coords: &[usize]) -> bool {
        if coords.is_empty() {
            return true;
        }
        smith_invariants(&self.b.select_rows(coords))
            .iter()
            .all(|d| d.is_one())
    }

    /// Conjunction of [`Self::projection_torsion_check`] over all coordinate
    /// subsets; returns the first failing subset.
    pub fn projection_torsion_all(&self) -> std::result::Result<(), Vec<usize>> {
        for k in 1..=self.n() {
            for s in (0..self.n()).combinations(k) {
                if !self.projection_torsion_check(&s) {
                    return Err(s);
                }
            }
        }
        Ok(())
    }

    /// Structure of `Z^n / L`: free rank and the invariant factors above 1.
    pub fn class_group(&self) -> (usize, Vec<BigInt>) {
        let inv = smith_invariants(&self.b);
        let free = self.n() - inv.len();
        (free, inv.into_iter().filter(|d| !d.is_one()).collect())
    }

    /// Kernel-side criterion: `L = ker(A)` and all maximal minors of `A` lie
    /// in `{0, ±μ}` for a single `μ`.
    pub fn kernel_side_test(&self) -> bool {
        let a = self.orthogonal_matrix();
        let ker = kernel_basis(&a);
        if row_lattice_basis(&ker) != row_lattice_basis(&self.b.transpose()) {
            return false;
        }
        // dependent rows make every maximal minor vanish; use a row basis instead
        let a = if integer_rank(&a) < a.rows() {
            row_lattice_basis(&a)
        } else {
            a
        };
        let mut values = BTreeSet::new();
        for cols in (0..a.cols()).combinations(a.rows()) {
            let d = determinant(&a.select_cols(&cols)).abs();
            if !d.is_zero() {
                values.insert(d);
                if values.len() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Circuits of `L` with canonical sign (first nonzero coordinate
    /// positive), sorted by coordinates.
    pub fn circuits(&self) -> Result<Vec<Circuit>> {
        self.require_unimodular()?;
        let m = self.m();
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        for subset in (0..self.n()).combinations(m - 1) {
            let sub = IntMatrix::from_rows_with_cols(
                &subset
                    .iter()
                    .map(|&i| self.rows[i].clone())
                    .collect::<Vec<_>>(),
                m,
            );
            let k = kernel_basis(&sub);
            if k.rows() != 1 {
                continue;
            }
            let u: Vec<i64> = k.row(0).iter().map(|v| v.to_i64().unwrap()).collect();
            let c = self.apply(&u);
            found.insert(canonical_sign(&c));
        }
        let supports: Vec<(Vec<i64>, BTreeSet<usize>)> = found
            .into_iter()
            .map(|c| {
                let s = support(&c).into_iter().collect();
                (c, s)
            })
            .collect();
        let mut out = Vec::new();
        for (c, s) in &supports {
            let dominated = supports
                .iter()
                .any(|(_, t)| t.len() < s.len() && t.is_subset(s));
            if dominated {
                continue;
            }
            let pre = self.preimage(c).expect("circuit lies in the lattice");
            out.push(Circuit {
                support: support(c),
                vector: LatticeVector {
                    coords: c.clone(),
                    preimage: pre,
                },
            });
        }
        Ok(out)
    }

    /// Minimal generators of `J_L`: one binomial per circuit.
    pub fn lawrence_generators(&self) -> Result<Vec<Binomial>> {
        Ok(self
            .circuits()?
            .iter()
            .map(|c| Binomial::from_vector(c.coords()))
            .collect())
    }

    /// Lattice points `u ∈ Z^m` with `lo ≤ B u ≤ hi`, sorted.
    ///
    /// Uses the unimodular row frame when there is one (points are then
    /// parametrized by their values on the frame rows); otherwise falls back
    /// to [`Self::lattice_points_lp`].
    pub fn lattice_points(&self, lo: &[i64], hi: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        let Some(f) = &self.frame else {
            return self.lattice_points_lp(lo, hi, cap);
        };
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Ok(Vec::new());
        }
        let ranges: Vec<std::ops::RangeInclusive<i64>> =
            f.rows.iter().map(|&i| lo[i]..=hi[i]).collect();
        let mut out = Vec::new();
        for y in ranges.into_iter().multi_cartesian_product() {
            let u: Vec<i64> = f.inverse.iter().map(|r| dot(r, &y)).collect();
            let v = self.apply(&u);
            if v.iter().zip(lo).zip(hi).all(|((x, l), h)| l <= x && x <= h) {
                out.push(u);
                if out.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "lattice point",
                        count: out.len(),
                        cap,
                    });
                }
            }
        }
        if self.m() == 0 {
            out = vec![Vec::new()];
        }
        out.sort();
        Ok(out)
    }

    /// Same as [`Self::lattice_points`], via exact LP bounds on each
    /// coordinate of `u` followed by a scan of the bounding box.
    pub fn lattice_points_lp(&self, lo: &[i64], hi: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        let m = self.m();
        let mut cons = Vec::with_capacity(2 * self.n());
        for (i, r) in self.rows.iter().enumerate() {
            cons.push(Constraint::from_ints(r, Relation::Ge, lo[i]));
            cons.push(Constraint::from_ints(r, Relation::Le, hi[i]));
        }
        let mut ranges = Vec::with_capacity(m);
        let mut volume: usize = 1;
        for j in 0..m {
            let mut e = vec![BigRational::zero(); m];
            e[j] = BigRational::one();
            let Some((Some(l), Some(h))) = lp::bounds(m, &cons, &e) else {
                return Ok(Vec::new());
            };
            let l = l.ceil().to_integer().to_i64().ok_or(Error::Overflow)?;
            let h = h.floor().to_integer().to_i64().ok_or(Error::Overflow)?;
            if l > h {
                return Ok(Vec::new());
            }
            volume = volume.saturating_mul((h - l + 1) as usize);
            ranges.push(l..=h);
        }
        let scan_cap = cap.saturating_mul(64);
        if volume > scan_cap {
            return Err(Error::CapExceeded {
                what: "lattice point scan",
                count: volume,
                cap: scan_cap,
            });
        }
        let mut out = Vec::new();
        for u in ranges.into_iter().multi_cartesian_product() {
            let v = self.apply(&u);
            if v.iter().zip(lo).zip(hi).all(|((x, l), h)| l <= x && x <= h) {
                out.push(u);
                if out.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "lattice point",
                        count: out.len(),
                        cap,
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn support(v: &[i64]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i)
        .collect()
}

/// `v` or `-v`, whichever has its first nonzero coordinate positive.
pub fn canonical_sign(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&c| -c).collect(),
        _ => v.to_vec(),
    }
}

/// The lattice of sum-zero vectors in `Z^n`.
pub fn sum_zero_lattice(n: usize) -> Result<Lattice> {
    Lattice::from_kernel(IntMatrix::from_rows(&[vec![1i64; n]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn k4_graphic() -> Lattice {
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let rows: Vec<Vec<i64>> = edges
            .iter()
            .map(|&(i, j)| {
                let mut r = vec![0i64; 3];
                if i < 4 {
                    r[i - 1] += 1;
                }
                if j < 4 {
                    r[j - 1] -= 1;
                }
                r
            })
            .collect();
        Lattice::from_image(IntMatrix::from_rows(&rows)).unwrap()
    }

    #[test]
    fn constructors_agree_on_sum_zero() {
        let img = Lattice::from_image(IntMatrix::from_rows(&[[1, 0], [-1, 1], [0, -1]])).unwrap();
        let ker = sum_zero_lattice(3).unwrap();
        assert_eq!((ker.n(), ker.m()), (3, 2));
        assert!(img.same_lattice(&ker));
        let both = Lattice::from_image_and_kernel(
            IntMatrix::from_rows(&[[1, 0], [-1, 1], [0, -1]]),
            IntMatrix::from_rows(&[[1, 1, 1]]),
        )
        .unwrap();
        assert!(both.same_lattice(&img));
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(
            Lattice::from_image(IntMatrix::from_rows(&[[1, 2], [2, 4]])),
            Err(Error::RankDeficient { rank: 1, cols: 2 })
        ));
        assert!(matches!(
            Lattice::from_kernel(IntMatrix::identity(3)),
            Err(Error::TrivialLattice)
        ));
        assert!(matches!(
            Lattice::from_image_and_kernel(IntMatrix::from_rows(&[[2]]), IntMatrix::zeros(0, 1)),
            Err(Error::NotSaturated)
        ));
        assert!(matches!(
            Lattice::from_image_and_kernel(
                IntMatrix::from_rows(&[[1], [1]]),
                IntMatrix::from_rows(&[[1, 1]])
            ),
            Err(Error::NotSaturated)
        ));
    }

    #[test]
    fn kernel_of_two_four() {
        let l = Lattice::from_kernel(IntMatrix::from_rows(&[[2, 4]])).unwrap();
        assert_eq!(l.rows(), &[vec![2], vec![-1]]);
        // brute-force oracle: lattice points of ker(2 4) in a small box are multiples of (2,-1)
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                assert_eq!(2 * a + 4 * b == 0, l.contains(&[a, b]));
            }
        }
    }

    #[test]
    fn saturation_flag() {
        let l = Lattice::from_image_saturated(IntMatrix::from_rows(&[[2], [0]])).unwrap();
        assert_eq!(l.rows(), &[vec![1], vec![0]]);
        let raw = Lattice::from_image(IntMatrix::from_rows(&[[2], [0]])).unwrap();
        assert!(!raw.same_lattice(&l));
    }

    #[test]
    fn unimodularity_examples() {
        assert!(sum_zero_lattice(5).unwrap().is_unimodular().holds);
        assert!(k4_graphic().is_unimodular().holds);
        let two = Lattice::from_image(IntMatrix::from_rows(&[[2]])).unwrap();
        let scan = two.is_unimodular();
        assert!(!scan.holds);
        assert_eq!(scan.witness.unwrap().value, BigInt::from(2));
        assert!(matches!(two.circuits(), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn projection_examples() {
        let l = sum_zero_lattice(3).unwrap();
        assert!(l.projection_torsion_check(&[0, 1]));
        // hand oracle: projected basis onto coords {1,2}
        let proj = l.basis().select_rows(&[0, 1]);
        assert_eq!(smith_invariants(&proj), big(&[1, 1]));
        let two = Lattice::from_image(IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(!two.projection_torsion_check(&[0]));
        assert!(two.projection_torsion_check(&[]));
        assert!(l.projection_torsion_all().is_ok());
        assert_eq!(two.projection_torsion_all(), Err(vec![0]));
    }

    #[test]
    fn class_groups() {
        assert_eq!(sum_zero_lattice(4).unwrap().class_group(), (1, vec![]));
        let full = Lattice::from_image(IntMatrix::identity(3)).unwrap();
        assert_eq!(full.class_group(), (0, vec![]));
        let two = Lattice::from_image(IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(two.class_group(), (0, big(&[2])));
    }

    #[test]
    fn kernel_side_examples() {
        assert!(sum_zero_lattice(4).unwrap().kernel_side_test());
        assert!(k4_graphic().kernel_side_test());
        assert!(Lattice::from_kernel(IntMatrix::from_rows(&[[2, 2, 2]]))
            .unwrap()
            .kernel_side_test());
        let two = Lattice::from_image(IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(!two.kernel_side_test());
        // saturated but not unimodular: ker (1 2 3 ...) style
        let l = Lattice::from_kernel(IntMatrix::from_rows(&[[1, 1, 2]])).unwrap();
        assert!(!l.is_unimodular().holds);
        assert!(!l.kernel_side_test());
    }

    #[test]
    fn circuits_of_sum_zero() {
        let c: Vec<Vec<i64>> = sum_zero_lattice(3)
            .unwrap()
            .circuits()
            .unwrap()
            .into_iter()
            .map(|c| c.vector.coords)
            .collect();
        assert_eq!(c, vec![vec![0, 1, -1], vec![1, -1, 0], vec![1, 0, -1]]);
    }

    #[test]
    fn rank_one_circuits_and_generators() {
        let l = Lattice::from_image(IntMatrix::from_rows(&[[1], [-1]])).unwrap();
        let c = l.circuits().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].vector.coords, vec![1, -1]);
        let g = l.lawrence_generators().unwrap();
        assert_eq!(g[0].to_string(), "x1*y2 - x2*y1");
    }

    #[test]
    fn sum_zero_generators() {
        let g: BTreeSet<String> = sum_zero_lattice(3)
            .unwrap()
            .lawrence_generators()
            .unwrap()
            .iter()
            .map(|b| b.to_poly().to_string())
            .collect();
        let expected: BTreeSet<String> = ["x1*y2 - x2*y1", "x2*y3 - x3*y2", "x1*y3 - x3*y1"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn frame_and_lp_points_agree() {
        let l = k4_graphic();
        let lo = vec![-1, 0, -1, 0, -1, -2];
        let hi = vec![1, 2, 0, 1, 1, 0];
        let a = l.lattice_points(&lo, &hi, 1000).unwrap();
        let b = l.lattice_points_lp(&lo, &hi, 1000).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn preimage_roundtrip() {
        let l = k4_graphic();
        let u = vec![3, -2, 5];
        assert_eq!(l.preimage(&l.apply(&u)), Some(u));
        assert_eq!(l.preimage(&[1, 0, 0, 0, 0, 0]), None);
        let two = Lattice::from_image(IntMatrix::from_rows(&[[2], [4]])).unwrap();
        assert_eq!(two.preimage(&[2, 4]), Some(vec![1]));
        assert_eq!(two.preimage(&[1, 2]), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn minor_test_matches_projection_test(
                rows in (1usize..3).prop_flat_map(|m| {
                    proptest::collection::vec(proptest::collection::vec(-2i64..3, m), (m + 1)..6)
                })
            ) {
                let b = IntMatrix::from_rows(&rows);
                prop_assume!(integer_rank(&b) == b.cols());
                let l = Lattice::from_image(b).unwrap();
                let minor = l.is_unimodular().holds;
                prop_assert_eq!(minor, l.projection_torsion_all().is_ok());
                prop_assert_eq!(minor, l.kernel_side_test());
                if minor {
                    let cs = l.circuits().unwrap();
                    for c in &cs {
                        prop_assert!(c.coords().iter().all(|v| v.abs() <= 1));
                        prop_assert_eq!(l.apply(&c.vector.preimage), c.vector.coords.clone());
                    }
                }
            }
        }
    }
}
