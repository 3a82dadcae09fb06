//! Exact linear programming over the rationals.
//!
//! A dense two-phase tableau simplex with Bland's anti-cycling rule. Meant for
//! the small programs that show up here (a handful of variables, a few dozen
//! constraints), where exactness matters far more than speed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rel: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn from_ints(coeffs: &[i64], rel: Relation, rhs: i64) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&v| rat(v)).collect(),
            rel,
            rhs: rat(rhs),
        }
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, v| acc + v);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Maximize (or minimize) `objective · x` subject to `constraints`, with all
/// variables free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<BigRational>,
    pub maximize: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs primal simplex maximizing `cost` over columns `< allowed`.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(c) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Step::Unbounded,
            }
        }
    }

    fn value(&self, col: usize) -> BigRational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(BigRational::zero, |i| self.rhs[i].clone())
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let d = lp.num_vars;
    let nslack = lp
        .constraints
        .iter()
        .filter(|c| c.rel != Relation::Eq)
        .count();
    let nrows = lp.constraints.len();
    let art0 = 2 * d + nslack;
    let ncols = art0 + nrows;

    let mut rows = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    let mut slack = 2 * d;
    for (i, con) in lp.constraints.iter().enumerate() {
        assert_eq!(con.coeffs.len(), d, "constraint has wrong arity");
        let mut row = vec![BigRational::zero(); ncols];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[d + j] = -a;
        }
        match con.rel {
            Relation::Le => {
                row[slack] = BigRational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        let mut b = con.rhs.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[art0 + i] = BigRational::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (art0..ncols).collect(),
        ncols,
    };

    // phase I: maximize minus the sum of artificials
    let mut phase1 = vec![BigRational::zero(); ncols];
    for v in phase1.iter_mut().skip(art0) {
        *v = -BigRational::one();
    }
    t.optimize(&phase1, ncols);
    let infeas: BigRational = (art0..ncols).map(|j| t.value(j)).sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive zero-valued artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![BigRational::zero(); t.ncols];
    for (j, c) in lp.objective.iter().enumerate() {
        let c = if lp.maximize { c.clone() } else { -c };
        cost[j] = c.clone();
        cost[d + j] = -c;
    }
    if let Step::Unbounded = t.optimize(&cost, art0) {
        return LpOutcome::Unbounded;
    }
    let point: Vec<BigRational> = (0..d).map(|j| t.value(j) - t.value(d + j)).collect();
    let value = lp
        .objective
        .iter()
        .zip(&point)
        .map(|(a, b)| a * b)
        .fold(BigRational::zero(), |acc, v| acc + v);
    LpOutcome::Optimal { point, value }
}

/// Any point satisfying all constraints, or `None` if there is none.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<BigRational>> {
    let lp = LinearProgram {
        num_vars,
        constraints: constraints.to_vec(),
        objective: vec![BigRational::zero(); num_vars],
        maximize: true,
    };
    match solve(&lp) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Bounds of `objective · x` over the polyhedron, `None` on an unbounded side.
/// Returns `None` overall when the polyhedron is empty.
pub fn bounds(
    num_vars: usize,
    constraints: &[Constraint],
    objective: &[BigRational],
) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let mut lp = LinearProgram {
        num_vars,
        constraints: constraints.to_vec(),
        objective: objective.to_vec(),
        maximize: false,
    };
    let lo = match solve(&lp) {
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => None,
        LpOutcome::Optimal { value, .. } => Some(value),
    };
    lp.maximize = true;
    let hi = match solve(&lp) {
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => None,
        LpOutcome::Optimal { value, .. } => Some(value),
    };
    Some((lo, hi))
}
