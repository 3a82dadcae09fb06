//! Graphic and cographic lattices of directed graphs, and the ordered
//! partition resolution of `J_{K_d}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arrangement::Limits;
use crate::complex::{Cell, LabeledComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::lattice::{canonical_sign, Lattice};
use crate::linalg::IntMatrix;
use crate::poly::{Monomial, Poly};
use crate::resolution::betti_numbers;

/// Largest `d` accepted by [`kd_bar_resolution`] unless a cap is given.
pub const DEFAULT_KD_CAP: usize = 7;

/// A directed graph on vertices `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    d: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    /// Loops, out-of-range vertices and repeated edges (in either direction)
    /// are rejected.
    pub fn new(d: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(i, j) in &edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            if i == 0 || j == 0 || i > d || j > d {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i},{j}) leaves the vertex range 1..={d}"
                )));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{i},{j}}}")));
            }
        }
        Ok(Digraph { d, edges })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge-node incidence matrix: row `e` is `e_i - e_j` for `e = (i, j)`.
    pub fn incidence(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let mut r = vec![0; self.d];
                r[i - 1] = 1;
                r[j - 1] = -1;
                r
            })
            .collect();
        IntMatrix::from_rows_with_cols(&rows, self.d)
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.d + 1];
        let mut out = Vec::new();
        for start in 1..=self.d {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }

    fn induced_connected(&self, vs: &BTreeSet<usize>) -> bool {
        let Some(&first) = vs.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if vs.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == vs.len()
    }
}

/// `K_d` with edges `(i, j)`, `i < j`, in lexicographic order.
pub fn complete_graph(d: usize) -> Digraph {
    let edges = (1..=d)
        .tuple_combinations()
        .collect::<Vec<(usize, usize)>>();
    Digraph { d, edges }
}

/// `L_G`: the column span of the incidence matrix. One vertex column per
/// component is dropped to get a basis.
pub fn graphic_lattice(g: &Digraph) -> Result<Lattice> {
    if g.edges.is_empty() {
        return Err(Error::TrivialLattice);
    }
    let drop: BTreeSet<usize> = g
        .components()
        .iter()
        .map(|c| *c.last().expect("components are nonempty") - 1)
        .collect();
    let keep: Vec<usize> = (0..g.d).filter(|c| !drop.contains(c)).collect();
    if keep.is_empty() {
        return Err(Error::TrivialLattice);
    }
    Lattice::from_image(g.incidence().select_cols(&keep))
}

/// `L*_G`: the integer cycle space, orthogonal to `L_G`.
pub fn cographic_lattice(g: &Digraph) -> Result<Lattice> {
    if g.edges.is_empty() {
        return Err(Error::TrivialLattice);
    }
    Lattice::from_kernel(g.incidence().transpose())
}

/// Signed cut vectors of the bonds, found by scanning vertex subsets `W`
/// containing vertex 1 with `G[W]` and `G[V \ W]` both connected.
pub fn graph_cocircuits(g: &Digraph) -> Result<Vec<Vec<i64>>> {
    if !g.is_connected() {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    if g.d > 24 {
        return Err(Error::CapExceeded {
            what: "vertices for cocircuit enumeration",
            count: g.d,
            cap: 24,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (g.d - 1)) {
        let w: BTreeSet<usize> = std::iter::once(1)
            .chain((2..=g.d).filter(|v| mask >> (v - 2) & 1 == 1))
            .collect();
        let rest: BTreeSet<usize> = (1..=g.d).filter(|v| !w.contains(v)).collect();
        if rest.is_empty() || !g.induced_connected(&w) || !g.induced_connected(&rest) {
            continue;
        }
        let cut: Vec<i64> = g
            .edges
            .iter()
            .map(|(i, j)| match (w.contains(i), w.contains(j)) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            })
            .collect();
        out.push(cut);
    }
    out.sort();
    Ok(out)
}

/// Signed simple cycles: `+1` on edges traversed forward, `-1` on edges
/// traversed backward, normalized so the first nonzero entry is positive.
pub fn graph_circuits(g: &Digraph) -> Vec<Vec<i64>> {
    let n = g.edges.len();
    let mut adj: BTreeMap<usize, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (e, &(i, j)) in g.edges.iter().enumerate() {
        adj.entry(i).or_default().push((j, e, 1));
        adj.entry(j).or_default().push((i, e, -1));
    }
    let mut found = BTreeSet::new();
    for s in 1..=g.d {
        // cycles whose smallest vertex is s
        let mut stack: Vec<(usize, Vec<usize>, Vec<(usize, i64)>)> = vec![(s, vec![s], Vec::new())];
        while let Some((v, path, used)) = stack.pop() {
            for &(w, e, sign) in adj.get(&v).into_iter().flatten() {
                if used.iter().any(|&(u, _)| u == e) {
                    continue;
                }
                if w == s && used.len() >= 2 {
                    let mut vec = vec![0; n];
                    for &(u, sg) in used.iter().chain(std::iter::once(&(e, sign))) {
                        vec[u] = sg;
                    }
                    found.insert(canonical_sign(&vec));
                } else if w > s && !path.contains(&w) {
                    let mut p = path.clone();
                    p.push(w);
                    let mut u = used.clone();
                    u.push((e, sign));
                    stack.push((w, p, u));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// `(A_1 | A_2 | ... | A_r)` with `1 ∈ A_1`; blocks are sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidGraph("empty block".into()));
            }
            b.sort_unstable();
        }
        let all: Vec<usize> = blocks.iter().flatten().copied().sorted().collect();
        if all != (1..=all.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidGraph("blocks must partition 1..=d".into()));
        }
        if blocks.first().map(|b| b[0]) != Some(1) {
            return Err(Error::InvalidGraph("1 must lie in the first block".into()));
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn d(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut at = vec![0; self.d() + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &v in b {
                at[v] = k;
            }
        }
        at
    }

    /// `∏ x_{ij}` over `i` in an earlier block than `j`.
    pub fn label(&self) -> Monomial {
        let at = self.block_of();
        let d = self.d();
        let mut m = Monomial::one(d * (d - 1) / 2);
        for i in 1..=d {
            for j in 1..=d {
                if at[i] < at[j] {
                    m = &m * &pair_variable(d, i, j);
                }
            }
        }
        m
    }

    fn merged(&self, first: usize, second: usize) -> OrderedPartition {
        let mut blocks = Vec::with_capacity(self.r() - 1);
        let mut joint = self.blocks[first].clone();
        joint.extend(&self.blocks[second]);
        joint.sort_unstable();
        for (k, b) in self.blocks.iter().enumerate() {
            if k == first {
                blocks.push(joint.clone());
            } else if k != second {
                blocks.push(b.clone());
            }
        }
        if first > second {
            // the wrap-around merge puts the union first
            let pos = blocks.iter().position(|b| *b == joint).unwrap();
            let j = blocks.remove(pos);
            blocks.insert(0, j);
        }
        OrderedPartition { blocks }
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.d() > 9 { "," } else { "" };
        let body = self.blocks.iter().map(|b| b.iter().join(sep)).join("|");
        write!(f, "({body})")
    }
}

/// Index of edge `{i, j}` of `K_d` in lexicographic edge order.
pub fn kd_edge_index(d: usize, i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    (1..a).map(|k| d - k).sum::<usize>() + (b - a - 1)
}

/// The variable `x_{ij}`: `x_e` if `i < j`, `y_e` if `i > j`, `e = {i, j}`.
pub fn pair_variable(d: usize, i: usize, j: usize) -> Monomial {
    let n = d * (d - 1) / 2;
    let e = kd_edge_index(d, i, j);
    let mut m = Monomial::one(n);
    if i < j {
        m.x[e] = 1;
    } else {
        m.y[e] = 1;
    }
    m
}

fn block_product(d: usize, from: &[usize], to: &[usize]) -> Monomial {
    let mut m = Monomial::one(d * (d - 1) / 2);
    for &i in from {
        for &j in to {
            m = &m * &pair_variable(d, i, j);
        }
    }
    m
}

/// Ordered partitions of `1..=d` into `r` blocks with `1` in the first,
/// sorted.
pub fn ordered_partitions(d: usize, r: usize) -> Vec<OrderedPartition> {
    if r == 0 || r > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; d.saturating_sub(1)];
    loop {
        let mut blocks = vec![Vec::new(); r];
        blocks[0].push(1);
        for (k, &b) in assign.iter().enumerate() {
            blocks[b].push(k + 2);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(OrderedPartition { blocks });
        }
        // odometer over r^(d-1) assignments
        let mut pos = 0;
        loop {
            if pos == assign.len() {
                out.sort();
                return out;
            }
            assign[pos] += 1;
            if assign[pos] < r {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// The ordered partition complex for `K_d` with the cyclic-rule
/// differential. Degree `r - 1` has the partitions into `r` blocks.
pub fn kd_bar_resolution(d: usize) -> Result<LabeledComplex> {
    kd_bar_resolution_with_cap(d, DEFAULT_KD_CAP)
}

pub fn kd_bar_resolution_with_cap(d: usize, cap: usize) -> Result<LabeledComplex> {
    if d < 2 {
        return Err(Error::InvalidGraph("K_d needs d >= 2".into()));
    }
    if d > cap {
        return Err(Error::CapExceeded {
            what: "d for the ordered partition complex",
            count: d,
            cap,
        });
    }
    let n = d * (d - 1) / 2;
    let bases: Vec<Vec<OrderedPartition>> = (1..=d).map(|r| ordered_partitions(d, r)).collect();
    let cells: Vec<Vec<Cell>> = bases
        .iter()
        .enumerate()
        .map(|(k, ps)| {
            ps.iter()
                .enumerate()
                .map(|(id, p)| Cell {
                    id,
                    degree: k,
                    label: p.label(),
                    key: p.to_string(),
                })
                .collect()
        })
        .collect();
    let index: Vec<BTreeMap<&OrderedPartition, usize>> = bases
        .iter()
        .map(|ps| ps.iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let mut boundary = Vec::with_capacity(d - 1);
    for k in 1..d {
        let r = k + 1;
        let mut mat = PolyMatrix::new(bases[k - 1].len(), bases[k].len());
        for (j, p) in bases[k].iter().enumerate() {
            let wrap_sign = if r % 2 == 1 { 1 } else { -1 };
            let wrap = p.merged(r - 1, 0);
            mat.add_term(
                index[k - 1][&wrap],
                j,
                wrap_sign,
                block_product(d, &p.blocks[r - 1], &p.blocks[0]),
            );
            for s in 2..=r {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let q = p.merged(s - 2, s - 1);
                mat.add_term(
                    index[k - 1][&q],
                    j,
                    sign,
                    block_product(d, &p.blocks[s - 2], &p.blocks[s - 1]),
                );
            }
        }
        boundary.push(mat);
    }
    LabeledComplex::new(n, d - 1, cells, boundary)
}

/// `r! S(d, r) / r`: ordered partitions into `r` blocks with `1` first.
pub fn ordered_partition_count(d: usize, r: usize) -> u64 {
    if r == 0 || r > d {
        return 0;
    }
    // S(d, r) by the triangle recurrence
    let mut s = vec![vec![0u64; r + 1]; d + 1];
    s[0][0] = 1;
    for i in 1..=d {
        for k in 1..=r.min(i) {
            s[i][k] = k as u64 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    (1..r as u64).product::<u64>() * s[d][r]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KdReport {
    pub d: usize,
    pub bar_ranks: Vec<usize>,
    pub pipeline_ranks: Vec<usize>,
    pub d_squared: bool,
    pub generators_match: bool,
}

impl KdReport {
    pub fn passed(&self) -> bool {
        self.d_squared && self.generators_match && self.bar_ranks == self.pipeline_ranks
    }
}

/// Compares the ordered partition complex against the arrangement pipeline
/// on the graphic lattice of `K_d`.
pub fn kd_cross_check(d: usize, limits: &Limits) -> Result<KdReport> {
    if d > 5 {
        return Err(Error::CapExceeded {
            what: "d for the pipeline cross-check",
            count: d,
            cap: 5,
        });
    }
    let bar = kd_bar_resolution(d)?;
    let l = graphic_lattice(&complete_graph(d))?;
    let pipeline_ranks = betti_numbers(&l, limits)?;
    let normalize = |p: &Poly| -> Vec<(Monomial, i64)> {
        let mut t: Vec<(Monomial, i64)> = p.terms().map(|(m, c)| (m.clone(), c)).collect();
        t.sort();
        if t.last().is_some_and(|(_, c)| *c < 0) {
            t.iter_mut().for_each(|(_, c)| *c = -*c);
        }
        t
    };
    let ours: BTreeSet<Vec<(Monomial, i64)>> = bar
        .boundary(1)
        .entries()
        .map(|(_, p)| normalize(p))
        .collect();
    let theirs: BTreeSet<Vec<(Monomial, i64)>> = l
        .lawrence_generators()?
        .iter()
        .map(|b| normalize(&b.to_poly()))
        .collect();
    Ok(KdReport {
        d,
        bar_ranks: bar.ranks(),
        pipeline_ranks,
        d_squared: bar.check_d_squared(),
        generators_match: ours == theirs && ours.len() == bar.ranks()[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_canonical(v: &[Vec<i64>]) -> Vec<Vec<i64>> {
        v.iter().map(|c| canonical_sign(c)).sorted().collect()
    }

    #[test]
    fn digraph_validation() {
        assert!(Digraph::new(3, vec![(1, 1)]).is_err());
        assert!(Digraph::new(3, vec![(1, 4)]).is_err());
        assert!(Digraph::new(3, vec![(1, 2), (2, 1)]).is_err());
        let g = Digraph::new(4, vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn path_and_single_edge() {
        let p = Digraph::new(3, vec![(1, 2), (2, 3)]).unwrap();
        let l = graphic_lattice(&p).unwrap();
        assert_eq!((l.n(), l.m()), (2, 2));
        assert!(l.contains(&[1, 0]) && l.contains(&[0, 1]));
        let e = Digraph::new(2, vec![(1, 2)]).unwrap();
        let l = graphic_lattice(&e).unwrap();
        assert_eq!((l.n(), l.m()), (1, 1));
        assert_eq!(graph_cocircuits(&e).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn triangle_and_tree_cographic() {
        let t = Digraph::new(3, vec![(1, 2), (2, 3), (3, 1)]).unwrap();
        let l = cographic_lattice(&t).unwrap();
        assert_eq!(l.m(), 1);
        assert!(l.contains(&[1, 1, 1]));
        assert_eq!(graph_circuits(&t), vec![vec![1, 1, 1]]);
        let tree = Digraph::new(3, vec![(1, 2), (1, 3)]).unwrap();
        assert!(matches!(
            cographic_lattice(&tree),
            Err(Error::TrivialLattice)
        ));
        assert!(graph_circuits(&tree).is_empty());
    }

    #[test]
    fn k4_counts_and_cross_checks() {
        let g = complete_graph(4);
        let gl = graphic_lattice(&g).unwrap();
        assert!(gl.is_unimodular().holds);
        let cc = graph_cocircuits(&g).unwrap();
        assert_eq!(cc.len(), 7);
        let lc: Vec<Vec<i64>> = gl
            .circuits()
            .unwrap()
            .iter()
            .map(|c| c.coords().to_vec())
            .collect();
        assert_eq!(sorted_canonical(&cc), sorted_canonical(&lc));
        let cl = cographic_lattice(&g).unwrap();
        let cyc = graph_circuits(&g);
        assert_eq!(cyc.len(), 7);
        assert_eq!(
            cyc.iter()
                .filter(|c| c.iter().filter(|&&x| x != 0).count() == 3)
                .count(),
            4
        );
        let lc: Vec<Vec<i64>> = cl
            .circuits()
            .unwrap()
            .iter()
            .map(|c| c.coords().to_vec())
            .collect();
        assert_eq!(sorted_canonical(&cyc), sorted_canonical(&lc));
    }

    #[test]
    fn k5_cocircuit_profile() {
        let cc = graph_cocircuits(&complete_graph(5)).unwrap();
        let sizes: Vec<usize> = cc
            .iter()
            .map(|c| c.iter().filter(|&&x| x != 0).count())
            .sorted()
            .collect();
        assert_eq!(sizes, [vec![4; 5], vec![6; 10]].concat());
    }

    #[test]
    fn edge_indices() {
        assert_eq!(kd_edge_index(4, 1, 2), 0);
        assert_eq!(kd_edge_index(4, 1, 4), 2);
        assert_eq!(kd_edge_index(4, 2, 3), 3);
        assert_eq!(kd_edge_index(4, 4, 3), 5);
        assert_eq!(pair_variable(3, 2, 1).y, vec![1, 0, 0]);
    }

    #[test]
    fn partition_counts() {
        for d in 1..=7 {
            for r in 1..=d {
                let ps = ordered_partitions(d, r);
                assert_eq!(
                    ps.len() as u64,
                    ordered_partition_count(d, r),
                    "d={d} r={r}"
                );
                assert!(ps.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(ordered_partition_count(5, 5), 24);
    }

    #[test]
    fn bar_d3() {
        let c = kd_bar_resolution(3).unwrap();
        assert_eq!(c.ranks(), vec![1, 3, 2]);
        assert!(c.check_d_squared());
        assert!(c.is_minimal());
        let p = OrderedPartition::new(vec![vec![1], vec![2, 3]]).unwrap();
        let j = c
            .cells(1)
            .iter()
            .position(|cell| cell.key == p.to_string())
            .unwrap();
        // x12 x13 - x21 x31
        let want = &Poly::term(1, &pair_variable(3, 1, 2) * &pair_variable(3, 1, 3))
            - &Poly::term(1, &pair_variable(3, 2, 1) * &pair_variable(3, 3, 1));
        assert_eq!(c.boundary(1).get(0, j), Some(&want));
    }

    #[test]
    fn bar_d_squared_and_ranks() {
        for d in 2..=5 {
            let c = kd_bar_resolution(d).unwrap();
            assert!(c.check_d_squared(), "d={d}");
            let want: Vec<usize> = (1..=d)
                .map(|r| ordered_partition_count(d, r) as usize)
                .collect();
            assert_eq!(c.ranks(), want);
        }
        assert!(kd_bar_resolution(8).is_err());
        assert!(kd_bar_resolution(1).is_err());
    }

    #[test]
    fn cross_check_small() {
        for d in 3..=4 {
            let r = kd_cross_check(d, &Limits::default()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
