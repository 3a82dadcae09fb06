#![allow(dead_code)]

use lawrence_core::graphs::{cographic_lattice, graphic_lattice, pair_variable};
use lawrence_core::{Cell, Digraph, IntMatrix, LabeledComplex, Lattice, Monomial, PolyMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Parses `x1^2*y3` style monomials in `n` variable pairs.
pub fn mono(s: &str, n: usize) -> Monomial {
    let mut m = Monomial::one(n);
    if s == "1" {
        return m;
    }
    for f in s.split('*') {
        let (var, exp) = match f.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().unwrap()),
            None => (f, 1),
        };
        let idx = var[1..].parse::<usize>().unwrap() - 1;
        match &var[..1] {
            "x" => m.x[idx] += exp,
            "y" => m.y[idx] += exp,
            other => panic!("unknown variable {other}"),
        }
    }
    m
}

/// Parses a product of pair variables such as `x12 x23 x31` for `K_d`.
pub fn pair_product(s: &str, d: usize) -> Monomial {
    let mut m = Monomial::one(d * (d - 1) / 2);
    for t in s.split_whitespace() {
        let digits: Vec<usize> = t[1..]
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect();
        m = &m * &pair_variable(d, digits[0], digits[1]);
    }
    m
}

/// A complex with all labels 1, built from matrices of `(row, col, sign, monomial)`.
pub fn bare_complex(
    n: usize,
    ranks: &[usize],
    maps: &[Vec<(usize, usize, i64, Monomial)>],
) -> LabeledComplex {
    let cells = ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            (0..r)
                .map(|id| Cell {
                    id,
                    degree: k,
                    label: Monomial::one(n),
                    key: String::new(),
                })
                .collect()
        })
        .collect();
    let boundary = maps
        .iter()
        .enumerate()
        .map(|(k, entries)| {
            let mut p = PolyMatrix::new(ranks[k], ranks[k + 1]);
            for (i, j, s, m) in entries {
                p.add_term(*i, *j, *s, m.clone());
            }
            p
        })
        .collect();
    LabeledComplex::new(n, ranks.len() - 1, cells, boundary).unwrap()
}

/// A random connected digraph: a random spanning tree plus extra edges.
pub fn random_connected_digraph<R: Rng>(rng: &mut R, d: usize, edges: usize) -> Digraph {
    let mut list: Vec<(usize, usize)> = Vec::new();
    let mut order: Vec<usize> = (1..=d).collect();
    order.shuffle(rng);
    for k in 1..d {
        let parent = order[rng.gen_range(0..k)];
        list.push((order[k], parent));
    }
    let mut candidates: Vec<(usize, usize)> = (1..=d)
        .flat_map(|i| (i + 1..=d).map(move |j| (i, j)))
        .filter(|&(i, j)| !list.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (i, j)))
        .collect();
    candidates.shuffle(rng);
    for &(i, j) in candidates.iter().take(edges.saturating_sub(d - 1)) {
        list.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
    }
    list.shuffle(rng);
    Digraph::new(d, list).unwrap()
}

pub fn random_unimodular_matrix<R: Rng>(rng: &mut R, m: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * m {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            if rng.gen_bool(0.5) {
                rows[i].iter_mut().for_each(|v| *v = -*v);
            }
            continue;
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let src = rows[j].clone();
        rows[i].iter_mut().zip(src).for_each(|(a, b)| *a += s * b);
    }
    IntMatrix::from_rows_with_cols(&rows, m)
}

/// Scrambles the basis and the signed order of the coordinates.
pub fn scramble<R: Rng>(rng: &mut R, l: &Lattice) -> Lattice {
    let u = random_unimodular_matrix(rng, l.m());
    let l = l.with_basis_change(&u).unwrap();
    let mut perm: Vec<usize> = (0..l.n()).collect();
    perm.shuffle(rng);
    let neg: Vec<bool> = (0..l.n()).map(|_| rng.gen_bool(0.3)).collect();
    l.relabel_coordinates(&perm, &neg).unwrap()
}

/// Deterministic corpus of unimodular lattices with `n ≤ 8`, built from
/// random graphs and scrambled.
pub fn random_unimodular_lattices(seed: u64, count: usize) -> Vec<(String, Lattice)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(3..=5);
        let max_edges = (d * (d - 1) / 2).min(8);
        let e = rng.gen_range(d..=max_edges);
        let g = random_connected_digraph(&mut rng, d, e);
        let cographic = out.len() % 2 == 1;
        let l = if cographic {
            cographic_lattice(&g)
        } else {
            graphic_lattice(&g)
        };
        let Ok(l) = l else { continue };
        let l = scramble(&mut rng, &l);
        let name = format!(
            "{} d={} edges={:?}",
            if cographic { "cographic" } else { "graphic" },
            d,
            g.edges()
        );
        out.push((name, l));
    }
    out
}
