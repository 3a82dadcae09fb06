//! Command implementations behind the `lawrence` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use lawrence_core::graphs::{
    cographic_lattice, graph_circuits, graph_cocircuits, graphic_lattice,
    kd_bar_resolution_with_cap, DEFAULT_KD_CAP,
};
use lawrence_core::io::{human_dump, parse_input, ComplexJson, LatticeInput};
use lawrence_core::lattice::canonical_sign;
use lawrence_core::resolution::{binomial_row, graded_exactness_sample, random_degrees};
use lawrence_core::specializations::{initial_resolution, FiberBuilder};
use lawrence_core::{
    build_resolution, Convention, Digraph, Error, LabeledComplex, Lattice, Limits, WeightOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const NOT_UNIMODULAR: i32 = 4;
    pub const CAP_EXCEEDED: i32 = 5;
    pub const NON_GENERIC: i32 = 6;
    pub const IO: i32 = 7;
    pub const OTHER: i32 = 8;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphKind {
    #[default]
    Graphic,
    Cographic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Circuits,
    Generators,
    Resolve,
    Initial {
        weight: Vec<i64>,
    },
    Fiber {
        a: Vec<i64>,
        b: Vec<i64>,
    },
    Graph,
    Kd {
        d: usize,
    },
    Verify {
        degrees: usize,
        weights: usize,
        max_entry: i64,
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Which lattice a graph input stands for.
    pub graph_kind: GraphKind,
    pub json: Option<PathBuf>,
    pub convention: Convention,
    pub limits: Limits,
    pub kd_cap: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            graph_kind: GraphKind::default(),
            json: None,
            convention: Convention::default(),
            limits: Limits::default(),
            kd_cap: DEFAULT_KD_CAP,
            seed: 1,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::IO,
            CliError::Core(e) => match e {
                Error::Parse { .. } | Error::InvalidGraph(_) => exit::PARSE,
                Error::NotUnimodular { .. } => exit::NOT_UNIMODULAR,
                Error::CapExceeded { .. } => exit::CAP_EXCEEDED,
                Error::NonGenericWeight { .. } => exit::NON_GENERIC,
                Error::Dimension(_) | Error::InvalidDegree(_) => exit::USAGE,
                _ => exit::OTHER,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// What a command produced: the exit status, the text report and the JSON
/// document (written to `--json` when given).
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub json: Value,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let outcome = dispatch(cfg)?;
    if let Some(path) = &cfg.json {
        let text = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome)
}

fn read_input(cfg: &RunConfig) -> Result<LatticeInput, CliError> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs an input file".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_input(&text)?)
}

fn graph_lattice(g: &Digraph, kind: GraphKind) -> Result<Lattice, CliError> {
    Ok(match kind {
        GraphKind::Graphic => graphic_lattice(g)?,
        GraphKind::Cographic => cographic_lattice(g)?,
    })
}

fn load_lattice(cfg: &RunConfig) -> Result<Lattice, CliError> {
    match read_input(cfg)? {
        LatticeInput::Graph(g) => graph_lattice(&g, cfg.graph_kind),
        other => Ok(other.lattice()?),
    }
}

fn complex_outcome(c: &LabeledComplex, mut report: String, code: i32) -> Outcome {
    report.push_str(&human_dump(c));
    Outcome {
        code,
        report,
        json: serde_json::to_value(ComplexJson::from_complex(c)).expect("json values serialize"),
    }
}

struct Checks {
    lines: Vec<(String, bool)>,
}

impl Checks {
    fn new() -> Self {
        Checks { lines: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, ok: bool) {
        self.lines.push((name.into(), ok));
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }

    fn render(&self) -> String {
        let mut s = String::new();
        for (name, ok) in &self.lines {
            writeln!(s, "{} {name}", if *ok { "ok  " } else { "FAIL" }).unwrap();
        }
        s
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.lines
                .iter()
                .map(|(name, ok)| json!({"check": name, "passed": ok}))
                .collect(),
        )
    }
}

fn resolution_checks(c: &LabeledComplex, m: usize, checks: &mut Checks) {
    checks.add("d^2 = 0", c.check_d_squared());
    checks.add("minimal (no unit entries)", c.is_minimal());
    checks.add(
        format!("torus homology = binomial({m}, i)"),
        c.homology_at_one() == binomial_row(m),
    );
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Check => check(cfg),
        Command::Circuits => {
            let l = load_lattice(cfg)?;
            let cs = l.circuits()?;
            let mut report = String::new();
            for c in &cs {
                writeln!(report, "{:?}", c.coords()).unwrap();
            }
            let list: Vec<&[i64]> = cs.iter().map(|c| c.coords()).collect();
            Ok(Outcome {
                code: exit::OK,
                report,
                json: json!({"n": l.n(), "m": l.m(), "circuits": list}),
            })
        }
        Command::Generators => {
            let l = load_lattice(cfg)?;
            let gens = l.lawrence_generators()?;
            let mut report = String::new();
            for g in &gens {
                writeln!(report, "{g}").unwrap();
            }
            let list: Vec<Value> = gens
                .iter()
                .map(|g| {
                    json!({
                        "text": g.to_string(),
                        "plus": {"x": g.plus.x, "y": g.plus.y},
                        "minus": {"x": g.minus.x, "y": g.minus.y},
                    })
                })
                .collect();
            Ok(Outcome {
                code: exit::OK,
                report,
                json: json!({"n": l.n(), "m": l.m(), "generators": list}),
            })
        }
        Command::Resolve => {
            let l = load_lattice(cfg)?;
            resolve(&l, cfg, String::new())
        }
        Command::Initial { weight } => {
            let l = load_lattice(cfg)?;
            let ord = WeightOrder::new(&l, weight.clone())?;
            let c = initial_resolution(&l, &ord, &cfg.limits)?;
            let mut checks = Checks::new();
            resolution_checks_initial(&c, &mut checks);
            let code = if checks.passed() {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            };
            let c = cfg.convention.apply(c);
            Ok(complex_outcome(&c, checks.render(), code))
        }
        Command::Fiber { a, b } => {
            let l = load_lattice(cfg)?;
            let builder = FiberBuilder::new(&l, &cfg.limits)?;
            let fc = builder.fiber_resolution(a, b)?;
            let mut report = String::new();
            writeln!(report, "fiber of size {}", fc.points.len()).unwrap();
            for (u, m) in &fc.points {
                writeln!(report, "  {m}  at {u:?}").unwrap();
            }
            let h = fc.complex.reduced_homology_at_one();
            writeln!(report, "f-vector: {:?}", fc.f_vector()).unwrap();
            writeln!(report, "reduced homology: {h:?}").unwrap();
            let ok = fc.complex.check_d_squared() && h.iter().all(|&r| r == 0);
            let code = if ok { exit::OK } else { exit::VERIFY_FAILED };
            let mut out = complex_outcome(&fc.complex, report, code);
            let monomials: Vec<Value> = fc
                .points
                .iter()
                .map(|(u, m)| json!({"point": u, "x": m.x, "y": m.y}))
                .collect();
            out.json["fiber"] = Value::Array(monomials);
            Ok(out)
        }
        Command::Graph => graph(cfg),
        Command::Kd { d } => {
            let c = kd_bar_resolution_with_cap(*d, cfg.kd_cap)?;
            let mut checks = Checks::new();
            resolution_checks(&c, d - 1, &mut checks);
            let code = if checks.passed() {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            };
            let c = cfg.convention.apply(c);
            Ok(complex_outcome(&c, checks.render(), code))
        }
        Command::Verify {
            degrees,
            weights,
            max_entry,
        } => verify(cfg, *degrees, *weights, *max_entry),
    }
}

fn resolution_checks_initial(c: &LabeledComplex, checks: &mut Checks) {
    checks.add("d^2 = 0", c.check_d_squared());
    checks.add("minimal (no unit entries)", c.is_minimal());
}

fn resolve(l: &Lattice, cfg: &RunConfig, mut report: String) -> Result<Outcome, CliError> {
    let c = build_resolution(l, &cfg.limits)?;
    let mut checks = Checks::new();
    resolution_checks(&c, l.m(), &mut checks);
    report.push_str(&checks.render());
    let code = if checks.passed() {
        exit::OK
    } else {
        exit::VERIFY_FAILED
    };
    let c = cfg.convention.apply(c);
    Ok(complex_outcome(&c, report, code))
}

fn check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let l = load_lattice(cfg)?;
    let scan = l.is_unimodular();
    let (free, torsion) = l.class_group();
    let kernel = l.kernel_side_test();
    let projection = l.projection_torsion_all();
    let mut report = String::new();
    writeln!(report, "n = {}, m = {}", l.n(), l.m()).unwrap();
    match &scan.witness {
        None => writeln!(report, "unimodular: yes").unwrap(),
        Some(w) => writeln!(
            report,
            "unimodular: no (minor on rows {:?} is {})",
            w.rows, w.value
        )
        .unwrap(),
    }
    writeln!(
        report,
        "kernel-side test: {}",
        if kernel { "pass" } else { "fail" }
    )
    .unwrap();
    match &projection {
        Ok(()) => writeln!(report, "projection test: pass").unwrap(),
        Err(s) => writeln!(report, "projection test: fail on coordinates {s:?}").unwrap(),
    }
    let torsion_text: Vec<String> = torsion.iter().map(|d| d.to_string()).collect();
    writeln!(
        report,
        "class group Z^n/L: Z^{free}{}",
        torsion_text
            .iter()
            .map(|d| format!(" + Z/{d}"))
            .collect::<String>()
    )
    .unwrap();
    let json = json!({
        "n": l.n(),
        "m": l.m(),
        "unimodular": scan.holds,
        "witness": scan.witness.as_ref().map(|w| json!({"rows": w.rows, "value": w.value.to_string()})),
        "kernel_side_test": kernel,
        "projection_test": projection.is_ok(),
        "class_group": {"free_rank": free, "torsion": torsion_text},
    });
    let code = if scan.holds {
        exit::OK
    } else {
        exit::NOT_UNIMODULAR
    };
    Ok(Outcome { code, report, json })
}

fn graph(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g = match read_input(cfg)? {
        LatticeInput::Graph(g) => g,
        _ => return Err(CliError::Usage("`graph` needs a graph input file".into())),
    };
    let l = graph_lattice(&g, cfg.graph_kind)?;
    l.require_unimodular()?;
    let combinatorial = match cfg.graph_kind {
        GraphKind::Graphic => graph_cocircuits(&g)?,
        GraphKind::Cographic => graph_circuits(&g),
    };
    let mut ours: Vec<Vec<i64>> = combinatorial.iter().map(|c| canonical_sign(c)).collect();
    ours.sort();
    let theirs: Vec<Vec<i64>> = l.circuits()?.iter().map(|c| c.coords().to_vec()).collect();
    let mut report = String::new();
    let kind = match cfg.graph_kind {
        GraphKind::Graphic => "graphic",
        GraphKind::Cographic => "cographic",
    };
    writeln!(report, "{kind} lattice: n = {}, m = {}", l.n(), l.m()).unwrap();
    let agree = ours == theirs;
    writeln!(
        report,
        "{} combinatorial circuits, {} lattice circuits: {}",
        ours.len(),
        theirs.len(),
        if agree { "agree" } else { "DISAGREE" }
    )
    .unwrap();
    let mut out = resolve(&l, cfg, report)?;
    if !agree {
        out.code = exit::VERIFY_FAILED;
    }
    Ok(out)
}

fn verify(
    cfg: &RunConfig,
    degrees: usize,
    weights: usize,
    max_entry: i64,
) -> Result<Outcome, CliError> {
    let l = load_lattice(cfg)?;
    l.require_unimodular()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let c = build_resolution(&l, &cfg.limits)?;
    let mut checks = Checks::new();
    resolution_checks(&c, l.m(), &mut checks);
    checks.add(
        "degree-1 entries are the generators",
        c.ranks()[1] == l.lawrence_generators()?.len(),
    );
    let sample = random_degrees(&mut rng, l.n(), degrees, max_entry);
    let report = graded_exactness_sample(&l, &sample, &cfg.limits)?;
    checks.add(
        format!("{} sampled degrees are acyclic", report.checked),
        report.all_contractible(),
    );
    let mut tried = 0;
    let mut used = 0;
    while used < weights && tried < 100 * weights.max(1) {
        tried += 1;
        let w: Vec<i64> = (0..2 * l.n()).map(|_| rng.gen_range(-9..=9)).collect();
        let ord = match WeightOrder::new(&l, w.clone()) {
            Ok(o) => o,
            Err(Error::NonGenericWeight { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        used += 1;
        let ic = initial_resolution(&l, &ord, &cfg.limits)?;
        checks.add(
            format!("initial complex for {w:?}: d^2 = 0, minimal, same Betti numbers"),
            ic.check_d_squared() && ic.is_minimal() && ic.ranks() == c.ranks(),
        );
    }
    checks.add(format!("{used} generic weights found"), used == weights);
    let mut text = format!("betti numbers: {:?}\n", c.ranks());
    text.push_str(&checks.render());
    let code = if checks.passed() {
        exit::OK
    } else {
        exit::VERIFY_FAILED
    };
    Ok(Outcome {
        code,
        report: text,
        json: json!({"ranks": c.ranks(), "checks": checks.to_json(), "passed": checks.passed()}),
    })
}
