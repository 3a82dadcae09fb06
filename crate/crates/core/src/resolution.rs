//! The minimal free resolution of `S/J_L` supported on `H_L / L`.
//!
//! Each cell `F` of the quotient complex contributes a basis element of
//! degree `dim F` labeled `m_F`. The differential is
//! `∂F = Σ ε(F, G) (m_F / m_G) G` over the geometric facets `G` of `F`,
//! where `ε` compares the orientation of `(outward normal, basis of G)`
//! with the fixed basis of `F`. Orientation bases come from the zero set of
//! the covector alone, so all translates of a cell are oriented alike.

use rand::Rng;

use crate::arrangement::{Limits, QuotientComplex};
use crate::complex::{Cell, LabeledComplex, PolyMatrix};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::linalg::orientation_sign;
use crate::specializations::FiberBuilder;

/// Which module is resolved: `S/J_L` (with the degree-0 free module) or the
/// ideal `J_L` itself (the same complex starting at the generators).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Ring,
    Ideal,
}

impl Convention {
    pub fn apply(self, c: LabeledComplex) -> LabeledComplex {
        match self {
            Convention::Ring => c,
            Convention::Ideal => c.truncate(1),
        }
    }
}

pub fn resolution_from_quotient(q: &QuotientComplex, n: usize) -> Result<LabeledComplex> {
    let top = q.dim();
    let cells: Vec<Vec<Cell>> = (0..=top)
        .map(|d| {
            q.cells(d)
                .iter()
                .map(|c| Cell {
                    id: c.id,
                    degree: d,
                    label: c.label.clone(),
                    key: c.signs.to_string(),
                })
                .collect()
        })
        .collect();
    let mut boundary = Vec::with_capacity(top);
    for d in 1..=top {
        let mut mat = PolyMatrix::new(cells[d - 1].len(), cells[d].len());
        for cell in q.cells(d) {
            let tangent = q.tangent(&cell.signs);
            for inc in q.cell_facets(d, cell.id) {
                let facet = &q.cells(d - 1)[inc.facet];
                let mut frame = vec![inc.outward.clone()];
                frame.extend(q.tangent(&facet.signs).iter().cloned());
                let eps = orientation_sign(tangent, &frame);
                mat.add_term(inc.facet, cell.id, eps as i64, inc.monomial_quotient);
            }
        }
        boundary.push(mat);
    }
    LabeledComplex::new(n, top, cells, boundary)
}

/// The minimal free resolution of `S/J_L` (ring convention).
pub fn build_resolution(l: &Lattice, limits: &Limits) -> Result<LabeledComplex> {
    let q = QuotientComplex::new(l, limits)?;
    resolution_from_quotient(&q, l.n())
}

/// Betti numbers of `S/J_L`: the f-vector of the quotient complex.
pub fn betti_numbers(l: &Lattice, limits: &Limits) -> Result<Vec<usize>> {
    Ok(QuotientComplex::new(l, limits)?.f_vector())
}

pub fn check_d_squared(c: &LabeledComplex) -> bool {
    c.check_d_squared()
}

/// Homology of the complex with all variables set to 1, which is the
/// cellular chain complex of the torus `R·L / L`.
pub fn torus_homology_check(c: &LabeledComplex) -> Vec<usize> {
    c.homology_at_one()
}

pub fn binomial_row(m: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 1..=m {
        let prev = row[k - 1];
        row.push(prev * (m + 1 - k) / k);
    }
    row
}

/// Every differential entry is homogeneous for the grading by
/// `Z^{2n} / {(u, -u) : u ∈ L}`: label(row)·term and label(column) differ by
/// some `(u, -u)` with `u ∈ L`.
pub fn check_lattice_graded(c: &LabeledComplex, l: &Lattice) -> bool {
    (1..=c.top_degree()).all(|k| {
        c.boundary(k).entries().all(|(&(i, j), p)| {
            p.terms().all(|(t, _)| {
                let lhs = &c.cells(k - 1)[i].label * t;
                let rhs = &c.cells(k)[j].label;
                let u: Vec<i64> = lhs
                    .x
                    .iter()
                    .zip(&rhs.x)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                let v: Vec<i64> = lhs
                    .y
                    .iter()
                    .zip(&rhs.y)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                u.iter().zip(&v).all(|(a, b)| *a == -*b) && l.contains(&u)
            })
        })
    })
}

/// An `x`-part and a `y`-part exponent vector.
pub type Degree = (Vec<i64>, Vec<i64>);

#[derive(Clone, Debug, Default)]
pub struct ExactnessReport {
    pub checked: usize,
    /// Degrees whose box complex has nonzero reduced homology, with the
    /// offending homology ranks.
    pub failures: Vec<(Degree, Vec<usize>)>,
}

impl ExactnessReport {
    pub fn all_contractible(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each degree `(a, b)`, the subcomplex of `H_L` inside
/// `{-b ≤ B u ≤ a}` must be acyclic (reduced rational homology zero).
pub fn graded_exactness_sample(
    l: &Lattice,
    degrees: &[Degree],
    limits: &Limits,
) -> Result<ExactnessReport> {
    let builder = FiberBuilder::new(l, limits)?;
    let mut report = ExactnessReport::default();
    for (a, b) in degrees {
        let fc = builder.fiber_resolution(a, b)?;
        let h = fc.complex.reduced_homology_at_one();
        report.checked += 1;
        if h.iter().any(|&r| r != 0) {
            report.failures.push(((a.clone(), b.clone()), h));
        }
    }
    Ok(report)
}

/// Uniform random degrees with entries in `0..=max_entry`.
pub fn random_degrees<R: Rng>(rng: &mut R, n: usize, count: usize, max_entry: i64) -> Vec<Degree> {
    (0..count)
        .map(|_| {
            let a = (0..n).map(|_| rng.gen_range(0..=max_entry)).collect();
            let b = (0..n).map(|_| rng.gen_range(0..=max_entry)).collect();
            (a, b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sum_zero_lattice;
    use crate::linalg::IntMatrix;
    use crate::poly::Poly;

    fn k4_graphic() -> Lattice {
        let rows = [
            [1, -1, 0],
            [1, 0, -1],
            [1, 0, 0],
            [0, 1, -1],
            [0, 1, 0],
            [0, 0, 1],
        ];
        Lattice::from_image(IntMatrix::from_rows(&rows)).unwrap()
    }

    #[test]
    fn sum_zero_resolution() {
        let l = sum_zero_lattice(3).unwrap();
        let c = build_resolution(&l, &Limits::default()).unwrap();
        assert_eq!(c.ranks(), vec![1, 3, 2]);
        assert!(c.check_d_squared());
        assert!(c.is_minimal());
        assert!(check_lattice_graded(&c, &l));
        assert_eq!(torus_homology_check(&c), vec![1, 2, 1]);
        // degree-one entries are the generators up to sign
        let gens: Vec<Poly> = l
            .lawrence_generators()
            .unwrap()
            .iter()
            .map(|g| g.to_poly())
            .collect();
        for j in 0..3 {
            let p = c.boundary(1).get(0, j).unwrap();
            assert!(gens.iter().any(|g| g == p || &-g == p));
        }
    }

    #[test]
    fn rank_one_resolution() {
        let l = Lattice::from_image(IntMatrix::from_rows(&[[1], [-1]])).unwrap();
        let c = build_resolution(&l, &Limits::default()).unwrap();
        assert_eq!(c.ranks(), vec![1, 1]);
        let p = c.boundary(1).get(0, 0).unwrap();
        let s = p.to_string();
        assert!(s == "x1*y2 - x2*y1" || s == "-x1*y2 + x2*y1", "{s}");
        assert_eq!(torus_homology_check(&c), vec![1, 1]);
        assert_eq!(Convention::Ideal.apply(c).ranks(), vec![1]);
    }

    #[test]
    fn k4_resolution() {
        let l = k4_graphic();
        let c = build_resolution(&l, &Limits::default()).unwrap();
        assert_eq!(c.ranks(), vec![1, 7, 12, 6]);
        assert!(c.check_d_squared());
        assert!(c.is_minimal());
        assert!(check_lattice_graded(&c, &l));
        assert_eq!(torus_homology_check(&c), binomial_row(3));
    }

    #[test]
    fn sign_mutation_is_detected() {
        let l = sum_zero_lattice(3).unwrap();
        let mut c = build_resolution(&l, &Limits::default()).unwrap();
        let (&(i, j), p) = c.boundary(2).entries().next().unwrap();
        let p = p.clone();
        c.boundary_mut(2).add(i, j, &(&(-&p) - &p));
        assert!(!c.check_d_squared());
    }

    #[test]
    fn pentagon_and_trivial_degree_are_contractible() {
        let l = sum_zero_lattice(3).unwrap();
        let degrees = vec![
            (vec![2, 1, 1], vec![1, 1, 1]),
            (vec![0, 0, 0], vec![0, 0, 0]),
        ];
        let r = graded_exactness_sample(&l, &degrees, &Limits::default()).unwrap();
        assert_eq!(r.checked, 2);
        assert!(r.all_contractible());
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1]);
        assert_eq!(binomial_row(0), vec![1]);
    }
}
