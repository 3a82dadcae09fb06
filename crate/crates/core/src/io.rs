//! Text input formats, JSON serialization of labeled complexes, and a
//! human-readable dump.
//!
//! Input files are one of
//!
//! ```text
//! n m          ker d n        graph d
//! <n rows>     <d rows>       i j
//!                             ...
//! ```
//!
//! with `#` starting a comment. The first is a basis matrix `B` (`L = im B`),
//! the second a matrix `A` with `L = ker A`, the third a directed graph.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{Cell, LabeledComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::graphs::Digraph;
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;
use crate::poly::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeInput {
    Image(IntMatrix),
    Kernel(IntMatrix),
    Graph(Digraph),
}

impl LatticeInput {
    /// The lattice described by a matrix input. Graph inputs need a choice
    /// between the graphic and cographic lattice and are refused here.
    pub fn lattice(&self) -> Result<Lattice> {
        match self {
            LatticeInput::Image(b) => Lattice::from_image(b.clone()),
            LatticeInput::Kernel(a) => Lattice::from_kernel(a.clone()),
            LatticeInput::Graph(_) => Err(Error::Dimension(
                "a graph input needs --graphic or --cographic".into(),
            )),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| parse_err(line, format!("expected an integer, found {t:?}")))
        })
        .collect()
}

fn parse_usize(line: usize, t: &str) -> Result<usize> {
    t.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected a count, found {t:?}")))
}

pub fn parse_input(text: &str) -> Result<LatticeInput> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    });
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let rows_of = |count: usize,
                   width: usize,
                   lines: &mut dyn Iterator<Item = (usize, &str)>|
     -> Result<Vec<Vec<i64>>> {
        let mut rows = Vec::with_capacity(count);
        for k in 0..count {
            let (ln, body) = lines
                .next()
                .ok_or_else(|| parse_err(hl, format!("expected {count} rows, found {k}")))?;
            let r = parse_ints(ln, body)?;
            if r.len() != width {
                return Err(parse_err(
                    ln,
                    format!("expected {width} entries, found {}", r.len()),
                ));
            }
            rows.push(r);
        }
        Ok(rows)
    };
    let finish = |lines: &mut dyn Iterator<Item = (usize, &str)>| -> Result<()> {
        match lines.next() {
            Some((ln, _)) => Err(parse_err(ln, "trailing content")),
            None => Ok(()),
        }
    };
    match words.as_slice() {
        ["ker", d, n] => {
            let (d, n) = (parse_usize(hl, d)?, parse_usize(hl, n)?);
            let rows = rows_of(d, n, &mut lines)?;
            finish(&mut lines)?;
            Ok(LatticeInput::Kernel(IntMatrix::from_rows_with_cols(
                &rows, n,
            )))
        }
        ["graph", d] => {
            let d = parse_usize(hl, d)?;
            let mut edges = Vec::new();
            for (ln, body) in lines {
                let e: Vec<&str> = body.split_whitespace().collect();
                if e.len() != 2 {
                    return Err(parse_err(ln, "an edge line has two vertices"));
                }
                edges.push((parse_usize(ln, e[0])?, parse_usize(ln, e[1])?));
            }
            let g = Digraph::new(d, edges).map_err(|e| parse_err(hl, e.to_string()))?;
            Ok(LatticeInput::Graph(g))
        }
        [n, m] => {
            let (n, m) = (parse_usize(hl, n)?, parse_usize(hl, m)?);
            let rows = rows_of(n, m, &mut lines)?;
            finish(&mut lines)?;
            Ok(LatticeInput::Image(IntMatrix::from_rows_with_cols(
                &rows, m,
            )))
        }
        _ => Err(parse_err(
            hl,
            "header must be `n m`, `ker d n` or `graph d`",
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub dim: usize,
    pub label_x: Vec<u32>,
    pub label_y: Vec<u32>,
    pub id: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub key: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub sign: i64,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermJson>,
}

/// Serialized form of a [`LabeledComplex`]. `dim` is the homological
/// degree of the basis element; `degree` in a boundary entry is `k` for
/// `∂_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub m: usize,
    pub ranks: Vec<usize>,
    pub cells: Vec<CellJson>,
    pub boundary: Vec<EntryJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &LabeledComplex) -> Self {
        let cells = (0..=c.top_degree())
            .flat_map(|k| {
                c.cells(k).iter().map(move |cell| CellJson {
                    dim: k,
                    label_x: cell.label.x.clone(),
                    label_y: cell.label.y.clone(),
                    id: cell.id,
                    key: cell.key.clone(),
                })
            })
            .collect();
        let mut boundary = Vec::new();
        for k in 1..=c.top_degree() {
            for (&(row, col), p) in c.boundary(k).entries() {
                boundary.push(EntryJson {
                    degree: k,
                    row,
                    col,
                    terms: p
                        .terms()
                        .map(|(mo, s)| TermJson {
                            sign: s,
                            x: mo.x.clone(),
                            y: mo.y.clone(),
                        })
                        .collect(),
                });
            }
        }
        ComplexJson {
            n: c.n(),
            m: c.m(),
            ranks: c.ranks(),
            cells,
            boundary,
        }
    }

    pub fn to_complex(&self) -> Result<LabeledComplex> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let mut cells: Vec<Vec<Cell>> = self.ranks.iter().map(|&r| Vec::with_capacity(r)).collect();
        for c in &self.cells {
            let slot = cells
                .get_mut(c.dim)
                .ok_or_else(|| bad(format!("cell of dimension {} beyond ranks", c.dim)))?;
            if c.id != slot.len() || c.label_x.len() != self.n || c.label_y.len() != self.n {
                return Err(bad(format!(
                    "malformed cell {} in dimension {}",
                    c.id, c.dim
                )));
            }
            slot.push(Cell {
                id: c.id,
                degree: c.dim,
                label: Monomial::new(c.label_x.clone(), c.label_y.clone()),
                key: c.key.clone(),
            });
        }
        let mut boundary: Vec<PolyMatrix> = (1..self.ranks.len())
            .map(|k| PolyMatrix::new(self.ranks[k - 1], self.ranks[k]))
            .collect();
        for e in &self.boundary {
            if e.degree == 0 || e.degree > boundary.len() {
                return Err(bad(format!("boundary degree {} out of range", e.degree)));
            }
            let mat = &mut boundary[e.degree - 1];
            if e.row >= mat.rows() || e.col >= mat.cols() {
                return Err(bad(format!("entry ({}, {}) out of range", e.row, e.col)));
            }
            for t in &e.terms {
                if t.x.len() != self.n || t.y.len() != self.n {
                    return Err(bad("term exponent of the wrong length".into()));
                }
                mat.add_term(
                    e.row,
                    e.col,
                    t.sign,
                    Monomial::new(t.x.clone(), t.y.clone()),
                );
            }
        }
        LabeledComplex::new(self.n, self.m, cells, boundary)
    }
}

pub fn to_json(c: &LabeledComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_complex(c)).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<LabeledComplex> {
    let j: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    j.to_complex()
}

/// Ranks, cell labels, and each differential as a list of nonzero entries.
pub fn human_dump(c: &LabeledComplex) -> String {
    let mut out = String::new();
    let ranks = c.ranks();
    writeln!(
        out,
        "ranks: {}",
        ranks
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    for k in 0..=c.top_degree() {
        writeln!(out, "degree {k}:").unwrap();
        for cell in c.cells(k) {
            if cell.key.is_empty() {
                writeln!(out, "  [{}] {}", cell.id, cell.label).unwrap();
            } else {
                writeln!(out, "  [{}] {}  {}", cell.id, cell.label, cell.key).unwrap();
            }
        }
    }
    for k in 1..=c.top_degree() {
        let mat = c.boundary(k);
        writeln!(out, "d{k}: {} x {}", mat.rows(), mat.cols()).unwrap();
        for (&(i, j), p) in mat.entries() {
            writeln!(out, "  ({i},{j}) {p}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Limits;
    use crate::lattice::sum_zero_lattice;
    use crate::resolution::build_resolution;

    #[test]
    fn parse_matrix_with_comments() {
        let text = "# sum zero\n3 2\n1 0\n0 1 # second\n\n-1 -1\n";
        let input = parse_input(text).unwrap();
        let l = input.lattice().unwrap();
        assert!(l.same_lattice(&sum_zero_lattice(3).unwrap()));
    }

    #[test]
    fn parse_kernel_and_graph() {
        let l = parse_input("ker 1 3\n1 1 1\n").unwrap().lattice().unwrap();
        assert!(l.same_lattice(&sum_zero_lattice(3).unwrap()));
        match parse_input("graph 3\n1 2\n2 3\n").unwrap() {
            LatticeInput::Graph(g) => assert_eq!(g.edges(), &[(1, 2), (2, 3)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_input("2 1\n1\nx\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        assert!(matches!(parse_input("").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(
            parse_input("2 2\n1 0\n").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(
            parse_input("2 1\n1 0\n1\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_input("graph 2\n1 1\n").unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        let c = build_resolution(&sum_zero_lattice(3).unwrap(), &Limits::default()).unwrap();
        let text = to_json(&c);
        let back = from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_json(&back), text);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["ranks"], serde_json::json!([1, 3, 2]));
        assert_eq!(v["cells"][0]["label_x"], serde_json::json!([0, 0, 0]));
    }

    #[test]
    fn dump_mentions_generators() {
        let l = Lattice::from_image(IntMatrix::from_rows(&[[1], [-1]])).unwrap();
        let c = build_resolution(&l, &Limits::default()).unwrap();
        let d = human_dump(&c);
        assert!(d.contains("ranks: 1 1"));
        assert!(d.contains("x1*y2") && d.contains("x2*y1"), "{d}");
    }
}
