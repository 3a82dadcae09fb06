//! Resolutions of the initial ideals `in_≺(J_L)` and of the fiber ideals
//! `⟨fib(a, b)⟩`.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::arrangement::{
    outward_direction, tangent_basis, Arrangement, Limits, QuotientComplex, SignVector,
};
use crate::complex::{Cell, LabeledComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::lattice::{dot, Lattice};
use crate::linalg::orientation_sign;
use crate::poly::Monomial;
use crate::resolution::Degree;

/// An integer weight `w ∈ Z^{2n}` on `x_1..x_n, y_1..y_n`.
///
/// The binomial of a circuit `c` has leading term `x^{c+} y^{c-}` exactly
/// when `δ · c > 0`, with `δ = w_x - w_y`; in basis coordinates this is the
/// linear form `ω = Bᵀ δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrder {
    w: Vec<i64>,
    delta: Vec<i64>,
    omega: Vec<i64>,
}

impl WeightOrder {
    /// Fails with [`Error::NonGenericWeight`] if some circuit has weight 0.
    pub fn new(l: &Lattice, w: Vec<i64>) -> Result<Self> {
        let n = l.n();
        if w.len() != 2 * n {
            return Err(Error::Dimension(format!(
                "weight has {} entries, expected {}",
                w.len(),
                2 * n
            )));
        }
        let delta: Vec<i64> = (0..n).map(|i| w[i] - w[n + i]).collect();
        let omega: Vec<i64> = (0..l.m())
            .map(|j| (0..n).map(|i| l.rows()[i][j] * delta[i]).sum())
            .collect();
        for c in l.circuits()? {
            if dot(&delta, c.coords()) == 0 {
                return Err(Error::NonGenericWeight {
                    circuit: c.vector.coords,
                });
            }
        }
        Ok(WeightOrder { w, delta, omega })
    }

    pub fn weight(&self) -> &[i64] {
        &self.w
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    /// `δ · v` for a lattice vector in ambient coordinates.
    pub fn vector_weight(&self, v: &[i64]) -> i64 {
        dot(&self.delta, v)
    }

    pub fn negated(&self) -> WeightOrder {
        WeightOrder {
            w: self.w.iter().map(|x| -x).collect(),
            delta: self.delta.iter().map(|x| -x).collect(),
            omega: self.omega.iter().map(|x| -x).collect(),
        }
    }
}

/// Leading terms of the Lawrence generators, sorted.
pub fn initial_terms(l: &Lattice, ord: &WeightOrder) -> Result<Vec<Monomial>> {
    let mut out: Vec<Monomial> = l
        .circuits()?
        .iter()
        .map(|c| {
            let v = c.coords();
            if ord.vector_weight(v) > 0 {
                Monomial::from_signed(v)
            } else {
                Monomial::from_signed(&v.iter().map(|x| -x).collect::<Vec<_>>())
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveCone {
    /// Covector index in the arrangement.
    pub covector: usize,
    pub signs: SignVector,
    pub dim: usize,
    /// Circuit vectors spanning the extreme rays.
    pub rays: Vec<Vec<i64>>,
    pub label: Monomial,
}

/// Cones of dimension ≥ 1 all of whose extreme rays have positive weight,
/// grouped by dimension (index 0 is empty).
pub fn positive_cones(arr: &Arrangement, ord: &WeightOrder) -> Vec<Vec<PositiveCone>> {
    let rays: Vec<Vec<i64>> = arr
        .of_dim(1)
        .iter()
        .map(|&i| arr.covector(i).signs.values())
        .collect();
    let mut out = vec![Vec::new(); arr.m() + 1];
    for (ci, cov) in arr.covectors().iter().enumerate() {
        if cov.dim == 0 {
            continue;
        }
        let mine: Vec<Vec<i64>> = rays
            .iter()
            .filter(|r| SignVector::of(r).conforms_to(&cov.signs))
            .cloned()
            .collect();
        if mine.iter().all(|r| ord.vector_weight(r) > 0) {
            out[cov.dim].push(PositiveCone {
                covector: ci,
                signs: cov.signs.clone(),
                dim: cov.dim,
                rays: mine,
                label: cov.signs.label(),
            });
        }
    }
    out
}

/// Resolution of `S/in_≺(J_L)` on the slice of the positive cones by a
/// generic hyperplane `ω·x = 1`. Degree `k ≥ 1` holds the `k`-dimensional
/// positive cones, whose slices are `(k-1)`-cells.
///
/// A slice is oriented by dropping the radial direction from the front of
/// its cone's basis, which turns a cone incidence sign `ε` into `-ε`;
/// slices of rays are points and carry the sign of the ray against its own
/// basis vector.
pub fn initial_resolution_from(
    l: &Lattice,
    arr: &Arrangement,
    ord: &WeightOrder,
) -> Result<LabeledComplex> {
    let n = l.n();
    let m = l.m();
    let cones = positive_cones(arr, ord);
    let mut tangents: BTreeMap<Vec<usize>, Vec<Vec<i64>>> = BTreeMap::new();
    for cone in cones.iter().flatten() {
        let z = cone.signs.zero_set();
        if !tangents.contains_key(&z) {
            let t = tangent_basis(l, &z)?;
            tangents.insert(z, t);
        }
    }
    let mut cells = vec![vec![Cell {
        id: 0,
        degree: 0,
        label: Monomial::one(n),
        key: SignVector::zero(n).to_string(),
    }]];
    let mut position: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, group) in cones.iter().enumerate().skip(1) {
        let mut cs = Vec::new();
        for (id, cone) in group.iter().enumerate() {
            position.insert(cone.covector, id);
            cs.push(Cell {
                id,
                degree: k,
                label: cone.label.clone(),
                key: cone.signs.to_string(),
            });
        }
        cells.push(cs);
    }
    let mut boundary = Vec::with_capacity(m);
    let mut d1 = PolyMatrix::new(1, cells[1].len());
    for (j, c) in cells[1].iter().enumerate() {
        d1.add_term(0, j, 1, c.label.clone());
    }
    boundary.push(d1);
    for k in 2..=m {
        let mut mat = PolyMatrix::new(cells[k - 1].len(), cells[k].len());
        for (j, cone) in cones[k].iter().enumerate() {
            let tf = &tangents[&cone.signs.zero_set()];
            for &fi in arr.down_covers(cone.covector) {
                let facet = arr.covector(fi);
                let row = *position
                    .get(&fi)
                    .expect("faces of a positive cone are positive");
                let tg = &tangents[&facet.signs.zero_set()];
                let o = outward_direction(l.rows(), tf, &cone.signs, &facet.signs);
                let mut frame = vec![o];
                frame.extend(tg.iter().cloned());
                let mut eps = -orientation_sign(tf, &frame);
                if k == 2 {
                    eps *= orientation_sign(tg, std::slice::from_ref(&facet.witness));
                }
                let q = facet
                    .signs
                    .label()
                    .checked_quotient(&cone.label)
                    .expect("face labels divide cone labels");
                mat.add_term(row, j, eps as i64, q);
            }
        }
        boundary.push(mat);
    }
    LabeledComplex::new(n, m, cells, boundary)
}

pub fn initial_resolution(
    l: &Lattice,
    ord: &WeightOrder,
    limits: &Limits,
) -> Result<LabeledComplex> {
    l.require_unimodular()?;
    let arr = Arrangement::enumerate(l, limits)?;
    initial_resolution_from(l, &arr, ord)
}

fn check_nonnegative(v: &[i64], what: &str) -> Result<()> {
    if v.iter().any(|&x| x < 0) {
        return Err(Error::InvalidDegree(format!("{what} has a negative entry")));
    }
    Ok(())
}

fn fiber_label(a: &[i64], b: &[i64], bu: &[i64]) -> Monomial {
    Monomial::new(
        a.iter().zip(bu).map(|(x, y)| (x - y) as u32).collect(),
        b.iter().zip(bu).map(|(x, y)| (x + y) as u32).collect(),
    )
}

/// Points `u` with `-b ≤ B u ≤ a` and their fiber monomials
/// `x^{a - Bu} y^{b + Bu}`, found by exact LP bounds and a box scan.
pub fn fiber_points(
    l: &Lattice,
    a: &[i64],
    b: &[i64],
    limits: &Limits,
) -> Result<Vec<(Vec<i64>, Monomial)>> {
    check_degree(l, a, b)?;
    check_nonnegative(a, "a")?;
    check_nonnegative(b, "b")?;
    let lo: Vec<i64> = b.iter().map(|x| -x).collect();
    let pts = l.lattice_points_lp(&lo, a, limits.max_lattice_points)?;
    Ok(pts
        .into_iter()
        .map(|u| {
            let bu = l.apply(&u);
            let m = fiber_label(a, b, &bu);
            (u, m)
        })
        .collect())
}

fn check_degree(l: &Lattice, a: &[i64], b: &[i64]) -> Result<()> {
    if a.len() != l.n() || b.len() != l.n() {
        return Err(Error::InvalidDegree(format!(
            "degree vectors must have {} entries",
            l.n()
        )));
    }
    Ok(())
}

/// The labeled subdivision of `{-b ≤ B x ≤ a}` by the periodic arrangement.
#[derive(Clone, Debug)]
pub struct FiberComplex {
    pub degree: Degree,
    pub points: Vec<(Vec<i64>, Monomial)>,
    /// Vertex sets of the cells, by dimension, in the order of `complex`.
    pub cell_vertices: Vec<Vec<Vec<Vec<i64>>>>,
    pub complex: LabeledComplex,
}

impl FiberComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = self.complex.ranks();
        while f.len() > 1 && f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    /// Subcomplex of the cells whose labels divide `x^c y^d`.
    pub fn restrict(&self, c: &[i64], d: &[i64]) -> FiberComplex {
        let bound = Monomial::new(
            c.iter().map(|&v| v.max(0) as u32).collect(),
            d.iter().map(|&v| v.max(0) as u32).collect(),
        );
        let negative = c.iter().chain(d).any(|&v| v < 0);
        let top = self.complex.top_degree();
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            keep.push(
                self.complex
                    .cells(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, cell)| !negative && cell.label.divides(&bound))
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
        let new_index: Vec<BTreeMap<usize, usize>> = keep
            .iter()
            .map(|ks| {
                ks.iter()
                    .enumerate()
                    .map(|(new, &old)| (old, new))
                    .collect()
            })
            .collect();
        let cells: Vec<Vec<Cell>> = keep
            .iter()
            .enumerate()
            .map(|(k, ks)| {
                ks.iter()
                    .enumerate()
                    .map(|(new, &old)| Cell {
                        id: new,
                        ..self.complex.cells(k)[old].clone()
                    })
                    .collect()
            })
            .collect();
        let mut boundary = Vec::with_capacity(top);
        for k in 1..=top {
            let mut mat = PolyMatrix::new(keep[k - 1].len(), keep[k].len());
            for (&(i, j), p) in self.complex.boundary(k).entries() {
                if let (Some(&ni), Some(&nj)) = (new_index[k - 1].get(&i), new_index[k].get(&j)) {
                    mat.add(ni, nj, p);
                }
            }
            boundary.push(mat);
        }
        let points = self
            .points
            .iter()
            .filter(|(_, m)| !negative && m.divides(&bound))
            .cloned()
            .collect();
        let cell_vertices = keep
            .iter()
            .enumerate()
            .map(|(k, ks)| {
                ks.iter()
                    .map(|&i| self.cell_vertices[k][i].clone())
                    .collect()
            })
            .collect();
        FiberComplex {
            degree: self.degree.clone(),
            points,
            cell_vertices,
            complex: LabeledComplex::new(self.complex.n(), self.complex.m(), cells, boundary)
                .expect("restriction keeps a consistent shape"),
        }
    }
}

/// Shares one arrangement among many fiber computations for a lattice.
pub struct FiberBuilder<'a> {
    l: &'a Lattice,
    q: QuotientComplex,
    limits: Limits,
}

fn vertex_key(vs: &[Vec<i64>]) -> String {
    vs.iter()
        .map(|v| format!("({})", v.iter().join(",")))
        .join(" ")
}

impl<'a> FiberBuilder<'a> {
    pub fn new(l: &'a Lattice, limits: &Limits) -> Result<Self> {
        Ok(FiberBuilder {
            l,
            q: QuotientComplex::new(l, limits)?,
            limits: *limits,
        })
    }

    pub fn quotient(&self) -> &QuotientComplex {
        &self.q
    }

    /// Fiber complex of a degree in `N^n × N^n`.
    pub fn fiber_resolution(&self, a: &[i64], b: &[i64]) -> Result<FiberComplex> {
        check_degree(self.l, a, b)?;
        check_nonnegative(a, "a")?;
        check_nonnegative(b, "b")?;
        self.box_complex(a, b)
    }

    /// Same construction for arbitrary integer bounds `-b ≤ B x ≤ a`; labels
    /// are still `x^{a - Bu} y^{b + Bu}` and are genuine monomials on the box.
    pub fn box_complex(&self, a: &[i64], b: &[i64]) -> Result<FiberComplex> {
        check_degree(self.l, a, b)?;
        let l = self.l;
        let (n, m) = (l.n(), l.m());
        let lo: Vec<i64> = b.iter().map(|x| -x).collect();
        let pts = l.lattice_points(&lo, a, self.limits.max_lattice_points)?;
        let arr = self.q.arrangement();

        // cell vertex set -> (covector index, base vertex)
        let mut found: Vec<BTreeMap<Vec<Vec<i64>>, (usize, Vec<i64>)>> =
            vec![BTreeMap::new(); m + 1];
        for v in &pts {
            let bv = l.apply(v);
            for (ci, cov) in arr.covectors().iter().enumerate() {
                let fits = cov
                    .signs
                    .0
                    .iter()
                    .enumerate()
                    .all(|(i, s)| match s.value() {
                        1 => bv[i] + 1 <= a[i],
                        -1 => bv[i] - 1 >= -b[i],
                        _ => true,
                    });
                if !fits {
                    continue;
                }
                let verts: Vec<Vec<i64>> = self
                    .q
                    .covector_vertices(ci)
                    .iter()
                    .map(|w| w.iter().zip(v).map(|(x, y)| x + y).collect())
                    .collect();
                found[cov.dim].entry(verts).or_insert((ci, v.clone()));
            }
        }
        let mut index: Vec<BTreeMap<Vec<Vec<i64>>, usize>> = Vec::with_capacity(m + 1);
        let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(m + 1);
        let mut cell_vertices = Vec::with_capacity(m + 1);
        for (k, group) in found.iter().enumerate() {
            let mut idx = BTreeMap::new();
            let mut cs = Vec::new();
            let mut vs = Vec::new();
            for (id, verts) in group.keys().enumerate() {
                let label = verts
                    .iter()
                    .map(|u| fiber_label(a, b, &l.apply(u)))
                    .reduce(|x, y| x.lcm(&y))
                    .expect("cells have vertices");
                idx.insert(verts.clone(), id);
                cs.push(Cell {
                    id,
                    degree: k,
                    label,
                    key: vertex_key(verts),
                });
                vs.push(verts.clone());
            }
            index.push(idx);
            cells.push(cs);
            cell_vertices.push(vs);
        }
        let mut boundary = Vec::with_capacity(m);
        for k in 1..=m {
            let mut mat = PolyMatrix::new(cells[k - 1].len(), cells[k].len());
            for (j, (verts, (ci, base))) in found[k].iter().enumerate() {
                let s = &arr.covector(*ci).signs;
                let tf = self.q.tangent(s);
                let base_image = l.apply(base);
                let mut seen = std::collections::BTreeSet::new();
                for w in verts {
                    let shift: Vec<i64> = l
                        .apply(w)
                        .iter()
                        .zip(&base_image)
                        .map(|(x, y)| x - y)
                        .collect();
                    let sw = s.flipped_by(&shift);
                    let swi = arr.index_of(&sw).expect("translate is a covector");
                    for &ti in arr.down_covers(swi) {
                        let mut fv: Vec<Vec<i64>> = self
                            .q
                            .covector_vertices(ti)
                            .iter()
                            .map(|x| x.iter().zip(w).map(|(p, q)| p + q).collect())
                            .collect();
                        fv.sort();
                        if !seen.insert(fv.clone()) {
                            continue;
                        }
                        let row = index[k - 1][&fv];
                        let t = &arr.covector(ti).signs;
                        let o = outward_direction(l.rows(), tf, &sw, t);
                        let mut frame = vec![o];
                        frame.extend(self.q.tangent(t).iter().cloned());
                        let eps = orientation_sign(tf, &frame);
                        let q = cells[k - 1][row]
                            .label
                            .checked_quotient(&cells[k][j].label)
                            .expect("face labels divide cell labels");
                        mat.add_term(row, j, eps as i64, q);
                    }
                }
            }
            boundary.push(mat);
        }
        let points = pts
            .into_iter()
            .map(|u| {
                let bu = l.apply(&u);
                let mo = fiber_label(a, b, &bu);
                (u, mo)
            })
            .collect();
        Ok(FiberComplex {
            degree: (a.to_vec(), b.to_vec()),
            points,
            cell_vertices,
            complex: LabeledComplex::new(n, m, cells, boundary)?,
        })
    }
}

pub fn fiber_resolution(
    l: &Lattice,
    a: &[i64],
    b: &[i64],
    limits: &Limits,
) -> Result<FiberComplex> {
    FiberBuilder::new(l, limits)?.fiber_resolution(a, b)
}
