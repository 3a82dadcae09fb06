//! Monomials and polynomials in the 2n variables `x_1..x_n, y_1..y_n`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// The monomial `x^x * y^y`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            x: vec![0; n],
            y: vec![0; n],
        }
    }

    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Self {
        assert_eq!(
            x.len(),
            y.len(),
            "x and y exponent vectors differ in length"
        );
        Monomial { x, y }
    }

    /// `x^{v+} y^{v-}` for an integer vector `v`.
    pub fn from_signed(v: &[i64]) -> Self {
        Monomial {
            x: v.iter().map(|&c| c.max(0) as u32).collect(),
            y: v.iter().map(|&c| (-c).max(0) as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.x.iter().chain(&self.y).map(|&e| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
            && self.y.iter().zip(&other.y).all(|(a, b)| a <= b)
    }

    /// `other / self` if it is a monomial.
    pub fn checked_quotient(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            x: other.x.iter().zip(&self.x).map(|(a, b)| a - b).collect(),
            y: other.y.iter().zip(&self.y).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(a, b)| *a.max(b))
                .collect(),
            y: self
                .y
                .iter()
                .zip(&other.y)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(a, b)| *a.min(b))
                .collect(),
            y: self
                .y
                .iter()
                .zip(&other.y)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Monomial {
        Monomial {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    /// Exponent difference `x - y` as a signed vector.
    pub fn signed_exponent(&self) -> Vec<i64> {
        self.x
            .iter()
            .zip(&self.y)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (name, exps) in [("x", &self.x), ("y", &self.y)] {
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{name}{}", i + 1)),
                    _ => factors.push(format!("{name}{}^{e}", i + 1)),
                }
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Integer polynomial, kept merged with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn term(coeff: i64, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(coeff, m);
        p
    }

    pub fn add_term(&mut self, coeff: i64, m: Monomial) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(Monomial::is_one)
    }

    /// Sum of coefficients: the value with every variable set to 1.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, &c)| (k * m, c)).collect(),
        }
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        let mut p = Poly::zero();
        for (m, &c) in &self.terms {
            p.add_term(c, f(m));
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, &c) in &other.terms {
            p.add_term(c, m.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                p.add_term(ca * cb, a * b);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            let body = if m.is_one() {
                c.abs().to_string()
            } else if c.abs() == 1 {
                m.to_string()
            } else {
                format!("{}*{m}", c.abs())
            };
            match (k, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
