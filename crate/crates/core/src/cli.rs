//! Command-line front end.
//!
//! Every command builds a [`Report`]; `--json` prints it, otherwise a text
//! rendering with the certificates inlined. Exit codes: 0 success or positive
//! verdict, 1 negative verdict, 2 usage error, 3 internal invariant violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::cubic::{self, discriminant_table, fano_positive_entropy};
use crate::diophantine::{self, QuadraticDiophantine, SolvabilityCertificate, SolverConfig, Status};
use crate::entropy::{self, entropy_report, FloatInterval};
use crate::error::{Error, Result};
use crate::lattice::{saturate, span, MukaiVector};
use crate::matrix::Matrix;
use crate::report::{self, evidence_text, Certificate, Report};
use crate::scan::{self, ScanJob};
use crate::walls::{self, PairDecision, Strength, WallVerdict};

const VERSION_LINE: &str = concat!(env!("CARGO_PKG_VERSION"), " (report schema 1)");

#[derive(Parser, Debug)]
#[command(name = "mukai", version = VERSION_LINE, about = "Wall, Diophantine and entropy certificates for K3 surfaces and cubic fourfolds")]
struct Cli {
    /// print the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// key=value configuration file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether every wall for v is fake
    K3Walls {
        /// h^2, even and positive
        #[arg(long)]
        h2: BigInt,
        /// Mukai vector r,t,s meaning (r, t h, s)
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Spectral radius and entropy bounds of the composed spherical twist
    Entropy {
        /// h^2 = 2d
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Special cubic fourfolds of discriminant d
    Cubic {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "scan", conflicts_with = "scan")]
        d: Option<BigInt>,
        /// tabulate every admissible d up to --max-d
        #[arg(long, requires = "max_d")]
        scan: bool,
        #[arg(long)]
        max_d: Option<u64>,
    },
    /// Decide A x^2 + B xy + C y^2 + D x + E y + F = 0 over the integers
    SolveQuadratic {
        #[arg(num_args = 6, required = true, allow_negative_numbers = true, value_names = ["A", "B", "C", "D", "E", "F"])]
        coefficients: Vec<BigInt>,
    },
    /// Search for (h^2, v) with every wall fake
    Scan {
        #[arg(long)]
        h2_min: u64,
        #[arg(long)]
        h2_max: u64,
        /// comma-separated even values of v^2
        #[arg(long, value_delimiter = ',')]
        targets: Vec<u64>,
        /// cap on the number of vectors examined
        #[arg(long)]
        budget: Option<usize>,
        /// scan middle coefficients 1..=max-t
        #[arg(long)]
        max_t: Option<u64>,
        /// worker threads (MUKAI_WORKERS overrides)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Replay every certificate of a JSON report
    Verify { file: PathBuf },
}

/// Values read from a configuration file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub solver: SolverConfig,
    pub budget: Option<usize>,
    pub max_t: Option<u64>,
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::InvalidInput(format!("config line {}: {what}", no + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            let num = || value.parse::<u64>().map_err(|_| bad("expected a non-negative integer"));
            match key.trim() {
                "sieve_bound" => cfg.solver.sieve_bound = num()?,
                "disc_modulus_cap" => cfg.solver.disc_modulus_cap = num()?,
                "max_solution_bits" => cfg.solver.max_solution_bits = num()?,
                "budget" => cfg.budget = Some(num()? as usize),
                "max_t" => cfg.max_t = Some(num()?),
                other => return Err(bad(&format!("unknown key {other}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }
}

/// A finished command: the report, its text form and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub code: i32,
}

/// Runs the program on `argv` (program name first), printing to stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(outcome) => {
            let body = if json {
                outcome.report.to_json() + "\n"
            } else {
                outcome.text
            };
            let _ = out.write_all(body.as_bytes());
            outcome.code
        }
        Err(Error::InvalidInput(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Error::Invariant(msg)) => {
            let _ = writeln!(err, "internal error: invariant violated: {msg}");
            3
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::K3Walls { h2, v } => k3_walls(&h2, &v, &cfg.solver),
        Command::Entropy { d, v } => entropy_command(&d, v.as_deref()),
        Command::Cubic { d: Some(d), .. } => cubic_command(&d),
        Command::Cubic { max_d, .. } => cubic_scan(max_d.unwrap_or(0)),
        Command::SolveQuadratic { coefficients } => {
            let [a, b, c, d, e, f]: [BigInt; 6] = coefficients
                .try_into()
                .map_err(|_| Error::InvalidInput("expected six coefficients".into()))?;
            solve_quadratic(&QuadraticDiophantine::new(a, b, c, d, e, f), &cfg.solver)
        }
        Command::Scan {
            h2_min,
            h2_max,
            targets,
            budget,
            max_t,
            workers,
        } => {
            let job = ScanJob {
                h2_min,
                h2_max,
                v2_targets: targets,
                budget: budget.or(cfg.budget),
                max_t: max_t.or(cfg.max_t).unwrap_or(1),
            };
            scan_command(&job, scan::worker_count(workers), &cfg.solver)
        }
        Command::Verify { file } => verify_command(&file),
    }
}

/// Parses `r,t,s`.
pub fn parse_vector(text: &str, d: &BigInt) -> Result<MukaiVector> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::InvalidInput(format!("expected r,t,s, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let c = parts
        .iter()
        .map(|p| p.parse::<BigInt>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    MukaiVector::from_coords(&c, d)
}

fn half_of_h2(h2: &BigInt) -> Result<BigInt> {
    if !h2.is_positive() || h2.is_odd() {
        return Err(Error::InvalidInput(format!("h^2 = {h2} must be even and positive")));
    }
    Ok(h2 / 2)
}

fn strings(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| strings(r)).collect())
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn solver_json(cfg: &SolverConfig) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

fn inputs(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn certificate_text(cert: &SolvabilityCertificate) -> String {
    match cert.status {
        Status::AllPairs => "every pair solves".to_string(),
        Status::Solvable => match &cert.witness {
            Some(w) => format!("solvable, witness (x, y) = ({}, {})", w[0], w[1]),
            None => "solvable".to_string(),
        },
        Status::Unsolvable => match &cert.obstruction {
            Some(e) => format!("unsolvable: {}", evidence_text(e)),
            None => "unsolvable".to_string(),
        },
    }
}

pub fn k3_walls(h2: &BigInt, v: &str, cfg: &SolverConfig) -> Result<Outcome> {
    let d = half_of_h2(h2)?;
    let v = parse_vector(v, &d)?;
    let verdict = walls::all_walls_fake_with(&v, cfg)?;
    let mut report = Report::new(
        "k3-walls",
        inputs(vec![
            ("h2", json!(h2.to_string())),
            ("v", strings(&v.coords())),
            ("solver", solver_json(cfg)),
        ]),
        walls_verdict_json(&verdict),
    );
    for pair in &verdict.pairs {
        report.certificates.push(Certificate::WallPair {
            v: v.clone(),
            pair: pair.clone(),
        });
    }
    for cand in &verdict.candidates {
        for (w, class) in cand.candidate.witnesses.iter().zip(&cand.classes) {
            report.certificates.push(Certificate::WallClass {
                v: v.clone(),
                h: saturate(&span(&[v.clone(), w.clone()])?),
                class: class.clone(),
            });
        }
    }
    report.claims.push(verdict.statement.clone());
    let code = exit_code(verdict.strength);
    let text = walls_text(h2, &verdict);
    Ok(Outcome { report, text, code })
}

fn walls_verdict_json(w: &WallVerdict) -> Value {
    let candidates: Vec<Value> = w
        .candidates
        .iter()
        .map(|c| {
            json!({
                "m": c.candidate.m.to_string(),
                "k": c.candidate.k.to_string(),
                "hyperbolic": c.candidate.hyperbolic,
                "witness_kind": c.witness_kind,
                "witnesses": c.candidate.witnesses,
                "classes": c.classes,
            })
        })
        .collect();
    json!({
        "strength": w.strength,
        "v": w.v,
        "v_squared": w.v_squared.to_string(),
        "dim": w.dim.to_string(),
        "statement": w.statement,
        "pairs_examined": w.pairs.len(),
        "candidates": candidates,
    })
}

fn walls_text(h2: &BigInt, w: &WallVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "k3-walls: h^2 = {h2}, v = {}, v^2 = {}, dim M = {}",
        w.v, w.v_squared, w.dim
    );
    let _ = writeln!(s, "verdict: {}", w.strength);
    let _ = writeln!(s, "  {}", w.statement);
    let _ = writeln!(s, "pairs (m, k):");
    for p in &w.pairs {
        let detail = match &p.decision {
            PairDecision::Divisibility { gcd } => {
                format!("unsolvable: <v, a> is always a multiple of {gcd}")
            }
            PairDecision::Equation { certificate, .. } => {
                format!("{}: {}", certificate.equation, certificate_text(certificate))
            }
            PairDecision::Isotropy { certificate } => {
                if certificate.isotropic {
                    format!("v^perp is isotropic (-det = {} is a square)", certificate.minus_det)
                } else {
                    format!(
                        "unsolvable: v^perp is anisotropic (-det = {} is not a square)",
                        certificate.minus_det
                    )
                }
            }
        };
        let _ = writeln!(s, "  ({}, {}) {}", p.m, p.k, detail);
    }
    if !w.candidates.is_empty() {
        let _ = writeln!(s, "candidates:");
    }
    for c in &w.candidates {
        let cand = &c.candidate;
        let wit = cand.witness.as_ref().map_or("none".to_string(), |a| a.to_string());
        let kind = c.witness_kind.map_or(String::new(), |k| format!(" [{k} witness]"));
        let _ = writeln!(s, "  (m, k) = ({}, {}): a = {wit}{kind}", cand.m, cand.k);
        if !cand.hyperbolic {
            let _ = writeln!(s, "    v and a span a non-hyperbolic lattice; not classified");
        }
        for (a, class) in cand.witnesses.iter().zip(&c.classes) {
            let mut line = format!("    <v, {a}> saturates to a {} lattice", class.kind);
            if let Some(x) = &class.a {
                let _ = write!(line, ", class {x}");
            }
            if let Some(y) = &class.b {
                let _ = write!(line, " + {y}");
            }
            let _ = writeln!(s, "{line}");
        }
    }
    s
}

fn interval_json(i: &FloatInterval) -> Value {
    json!({ "lo": i.lo, "hi": i.hi })
}

pub fn entropy_command(d: &BigInt, v: Option<&str>) -> Result<Outcome> {
    let v = v.map(|t| parse_vector(t, d)).transpose()?;
    let r = entropy_report(d, v.as_ref())?;
    let (lo, hi) = r.radius.interval.decimal(20);
    let verdict = json!({
        "d": d.to_string(),
        "matrix": matrix_json(&r.matrix),
        "charpoly": strings(&r.radius.charpoly),
        "spectral_radius": { "lo": lo, "hi": hi },
        "log_rho": interval_json(&r.log_rho),
        "h_cat_lower": interval_json(&r.h_cat_lower),
        "v": r.v,
        "dimM": r.dim_m.as_ref().map(|n| n.to_string()),
        "h_top": r.h_top.as_ref().map(interval_json),
        "fixes_v": r.fixes_v,
    });
    let mut inputs_map = vec![("d", json!(d.to_string()))];
    if let Some(v) = &v {
        inputs_map.push(("v", strings(&v.coords())));
    }
    let mut report = Report::new("entropy", inputs(inputs_map), verdict);
    let gram = crate::lattice::mukai_gram(d);
    let phi1 = entropy::twist_structure_sheaf(d)?;
    let phi2 = entropy::reflection(&entropy::spherical_class(d)?)?;
    for (label, m) in [("Phi1", phi1.matrix()), ("Phi2", phi2.matrix()), ("Phi", &r.matrix)] {
        report.certificates.push(Certificate::Isometry {
            label: label.to_string(),
            matrix: m.clone(),
            gram: gram.clone(),
        });
    }
    report.certificates.push(Certificate::spectral_radius(&r.radius));
    if let (Some(v), Some(true)) = (&v, r.fixes_v) {
        report.certificates.push(Certificate::FixedVector {
            matrix: r.matrix.clone(),
            v: v.clone(),
        });
    }
    report.claims.push(format!(
        "the composed twist at h^2 = {} has spectral radius in [{lo}, {hi}] on the algebraic Mukai lattice",
        BigInt::from(2) * d
    ));
    let mut s = String::new();
    let _ = writeln!(s, "entropy: d = {d} (h^2 = {})", BigInt::from(2) * d);
    let _ = writeln!(s, "Phi = twist along (1, 0h, 1) after twist along {}", entropy::spherical_class(d)?);
    let _ = writeln!(s, "matrix: {}", matrix_text(&r.matrix));
    let cp: Vec<String> = r.radius.charpoly.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "charpoly (low to high): [{}]", cp.join(", "));
    let _ = writeln!(s, "spectral radius: {}", r.radius.interval);
    let _ = writeln!(s, "log rho: [{:.12}, {:.12}]", r.log_rho.lo, r.log_rho.hi);
    let _ = writeln!(s, "h_cat(Phi) >= log rho");
    if let (Some(v), Some(dim), Some(h), Some(fix)) = (&v, &r.dim_m, &r.h_top, r.fixes_v) {
        let _ = writeln!(s, "v = {v}, dim M = {dim}");
        let _ = writeln!(s, "(dim M / 2) log rho: [{:.12}, {:.12}]", h.lo, h.hi);
        let _ = writeln!(s, "Phi(v) = v: {fix}");
    }
    Ok(Outcome {
        report,
        text: s,
        code: 0,
    })
}

pub fn cubic_command(d: &BigInt) -> Result<Outcome> {
    let f = fano_positive_entropy(d)?;
    let verdict = serde_json::to_value(&f).expect("verdict serializes");
    let mut report = Report::new("cubic", inputs(vec![("d", json!(d.to_string()))]), verdict);
    report.certificates.push(Certificate::Star2 {
        d: d.clone(),
        holds: f.star2.holds,
    });
    report.certificates.push(Certificate::Quadratic {
        label: "condition (***)".to_string(),
        certificate: f.star3.certificate.clone(),
    });
    report.certificates.push(Certificate::FanoLattice {
        d: d.clone(),
        knum_gram: f.lattice.knum_gram.clone(),
        ns_basis: f.lattice.ns_basis.clone(),
        ns_gram: f.lattice.ns_gram.clone(),
    });
    report.certificates.push(Certificate::Isotropy {
        label: "NS(F(X))".to_string(),
        gram: f.lattice.ns_gram.clone(),
        certificate: f.isotropy.clone(),
    });
    report.certificates.push(Certificate::Quadratic {
        label: "-2 in NS(F(X))".to_string(),
        certificate: f.minus_two.clone(),
    });
    if let Some(fund) = &f.fundamental {
        report.certificates.push(Certificate::Isometry {
            label: "fundamental isometry of NS(F(X))".to_string(),
            matrix: fund.isometry.matrix().clone(),
            gram: fund.isometry.gram().clone(),
        });
        report.certificates.push(Certificate::spectral_radius(&fund.radius));
    }
    report.claims.push(f.statement.clone());
    let mut s = String::new();
    let _ = writeln!(s, "cubic fourfold, d = {d}{}", if f.exploratory { " (exploratory)" } else { "" });
    let _ = writeln!(s, "assumption: {}", f.assumption);
    let _ = writeln!(s, "(*)   d > 6, d = 0, 2 mod 6: {}", f.star);
    let fac: Vec<String> = f
        .star2
        .factorization
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    let _ = writeln!(
        s,
        "(**)  4 and 9 do not divide d, odd primes are 1 mod 3: {} (d = {})",
        f.star2.holds,
        fac.join(" * ")
    );
    let _ = writeln!(
        s,
        "(***) a^2 d = 2n^2 + 2n + 2 solvable: {}{}",
        f.star3.solvable,
        match &f.star3.witness {
            Some(w) => format!(", (a, n) = ({}, {})", w[0], w[1]),
            None => format!(" ({})", certificate_text(&f.star3.certificate)),
        }
    );
    let _ = writeln!(s, "K_num Gram: {}", matrix_text(&f.lattice.knum_gram));
    let _ = writeln!(s, "NS(F(X)) Gram: {}", matrix_text(&f.lattice.ns_gram));
    let _ = writeln!(
        s,
        "isotropic class: {} (-det = {})",
        f.isotropy.isotropic, f.isotropy.minus_det
    );
    let _ = writeln!(
        s,
        "-2 represented: {}: {}",
        f.minus_two.is_solvable(),
        certificate_text(&f.minus_two)
    );
    if let Some(fund) = &f.fundamental {
        let _ = writeln!(
            s,
            "fundamental isometry: {} (t, u) = ({}, {}), spectral radius {}",
            matrix_text(fund.isometry.matrix()),
            fund.t,
            fund.u,
            fund.radius.interval
        );
    }
    let _ = writeln!(s, "verdict: {}", f.statement);
    Ok(Outcome {
        report,
        text: s,
        code: if f.positive { 0 } else { 1 },
    })
}

pub fn cubic_scan(max_d: u64) -> Result<Outcome> {
    let table = discriminant_table(max_d)?;
    let verdict = serde_json::to_value(&table).expect("table serializes");
    let mut report = Report::new(
        "cubic",
        inputs(vec![("scan", json!(true)), ("max_d", json!(max_d))]),
        verdict,
    );
    for row in &table {
        let star3 = cubic::check_star3(&row.d)?;
        report.certificates.push(Certificate::Quadratic {
            label: format!("condition (***) at d = {}", row.d),
            certificate: star3.certificate,
        });
    }
    report
        .claims
        .push(format!("conditions (*), (**), (***) for every admissible d <= {max_d}"));
    let mut s = String::new();
    let _ = writeln!(s, "{:>6} {:>5} {:>5} {:>5}  (a, n)", "d", "(*)", "(**)", "(***)");
    let mark = |b: bool| if b { "yes" } else { "no" };
    for row in &table {
        let wit = row
            .star3_witness
            .as_ref()
            .map_or(String::new(), |w| format!("({}, {})", w[0], w[1]));
        let _ = writeln!(
            s,
            "{:>6} {:>5} {:>5} {:>5}  {wit}",
            row.d,
            mark(row.star),
            mark(row.star2),
            mark(row.star3)
        );
    }
    Ok(Outcome {
        report,
        text: s,
        code: 0,
    })
}

pub fn solve_quadratic(eq: &QuadraticDiophantine, cfg: &SolverConfig) -> Result<Outcome> {
    let cert = diophantine::solve_with(eq, cfg);
    let verdict = serde_json::to_value(&cert).expect("certificate serializes");
    let mut report = Report::new(
        "solve-quadratic",
        inputs(vec![
            ("coefficients", strings(&eq.coefficients().map(|c| c.clone()))),
            ("solver", solver_json(cfg)),
        ]),
        verdict,
    );
    report.certificates.push(Certificate::Quadratic {
        label: eq.to_string(),
        certificate: cert.clone(),
    });
    report.claims.push(format!("{eq}: {}", certificate_text(&cert)));
    let mut s = String::new();
    let _ = writeln!(s, "equation: {eq}");
    let _ = writeln!(s, "discriminant B^2 - 4AC = {} ({:?})", eq.discriminant(), cert.kind);
    let _ = writeln!(s, "status: {}", certificate_text(&cert));
    if let Some(n) = cert.cycle_length {
        let _ = writeln!(s, "reduction cycle length: {n}");
    }
    for class in &cert.fundamental_solutions {
        let p = &class.representative;
        let _ = writeln!(s, "  class of ({}, {}): {:?}", p[0], p[1], class.generator);
    }
    if cert.truncated {
        let _ = writeln!(s, "  (classes with huge representatives omitted)");
    }
    Ok(Outcome {
        report,
        text: s,
        code: 0,
    })
}

pub fn scan_command(job: &ScanJob, workers: usize, cfg: &SolverConfig) -> Result<Outcome> {
    let out = scan::scan(job, workers, cfg)?;
    let verdict = serde_json::to_value(&out).expect("scan serializes");
    // the worker count is deliberately not echoed: output must not depend on it
    let mut report = Report::new(
        "scan",
        inputs(vec![
            ("h2_min", json!(job.h2_min)),
            ("h2_max", json!(job.h2_max)),
            ("v2_targets", json!(job.v2_targets)),
            ("budget", json!(job.budget)),
            ("max_t", json!(job.max_t)),
            ("solver", solver_json(cfg)),
        ]),
        verdict,
    );
    for rec in &out.records {
        report.claims.push(format!(
            "all walls fake for v = {} at h^2 = {} ({}, dim M = {})",
            rec.v, rec.h2, rec.strength, rec.dim
        ));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "scan: h^2 in [{}, {}], v^2 in {:?}, t <= {}",
        job.h2_min, job.h2_max, job.v2_targets, job.max_t
    );
    for rec in &out.records {
        let _ = writeln!(
            s,
            "h^2 = {}, v = {}, v^2 = {}, dim M = {}: {}",
            rec.h2, rec.v, rec.v_squared, rec.dim, rec.strength
        );
    }
    let _ = writeln!(s, "examined {} vectors, {} positive", out.examined, out.records.len());
    if out.truncated {
        let _ = writeln!(s, "TRUNCATED: budget of {} vectors reached", job.budget.unwrap_or(0));
    }
    Ok(Outcome {
        report,
        text: s,
        code: 0,
    })
}

pub fn verify_command(path: &Path) -> Result<Outcome> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::InvalidInput(e.to_string()))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    let source = Report::from_json(&text)?;
    let outcome = report::verify(&source);
    let verdict = json!({
        "command": source.command,
        "checked": outcome.checked,
        "failures": outcome.failures,
        "passed": outcome.passed(),
    });
    let mut report = Report::new(
        "verify",
        inputs(vec![("file", json!(path.display().to_string()))]),
        verdict,
    );
    report.claims = source.claims.clone();
    let mut s = String::new();
    let _ = writeln!(s, "verify: {} report, {} certificates", source.command, outcome.checked);
    for (i, cert) in source.certificates.iter().enumerate() {
        let failed = outcome.failures.iter().any(|f| f.starts_with(&format!("#{i} ")));
        let _ = writeln!(s, "  {} {}", if failed { "FAIL" } else { "ok  " }, cert.name());
    }
    for f in &outcome.failures {
        let _ = writeln!(s, "  {f}");
    }
    let _ = writeln!(s, "{}", if outcome.passed() { "all certificates verified" } else { "verification FAILED" });
    Ok(Outcome {
        report,
        text: s,
        code: if outcome.passed() { 0 } else { 1 },
    })
}

/// Whether a wall verdict counts as positive for exit codes.
pub fn exit_code(strength: Strength) -> i32 {
    if strength.is_positive() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("mukai").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn version_mentions_schema() {
        let (code, out, _) = run_capture(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains(env!("CARGO_PKG_VERSION")));
        assert!(out.contains(&format!("report schema {}", report::SCHEMA_VERSION)));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["k3-walls", "--bogus"]).0, 2);
        assert_eq!(run_capture(&["k3-walls", "--h2", "133", "--v", "4,1,16"]).0, 2);
        assert_eq!(run_capture(&["k3-walls", "--h2", "132", "--v", "4,1"]).0, 2);
        assert_eq!(run_capture(&["cubic", "--d", "9"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
    }

    #[test]
    fn walls_exit_codes() {
        let (code, out, _) = run_capture(&["k3-walls", "--h2", "132", "--v", "4,1,16"]);
        assert_eq!(code, 0);
        assert!(out.contains("STRICT"));
        assert!(out.contains("dim M = 6"));
        let (code, out, _) = run_capture(&["k3-walls", "--h2", "4", "--v", "1,0,-1"]);
        assert_eq!(code, 1);
        assert!(out.contains("Brill-Noether witness"));
        assert!(out.contains("Hilbert-Chow witness"));
    }

    #[test]
    fn negative_coefficients_parse() {
        let (code, out, _) = run_capture(&["solve-quadratic", "6", "-4", "-24", "0", "0", "2", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"]["status"], "unsolvable");
        assert!(v["verdict"]["cycle_length"].is_number());
    }

    #[test]
    fn config_parsing() {
        let cfg = Config::parse("# comment\nsieve_bound = 32\nbudget=10\n").unwrap();
        assert_eq!(cfg.solver.sieve_bound, 32);
        assert_eq!(cfg.budget, Some(10));
        assert!(Config::parse("nonsense = 1").is_err());
        assert!(Config::parse("budget").is_err());
    }

    #[test]
    fn reports_verify() {
        for outcome in [
            k3_walls(&BigInt::from(132), "4,1,16", &SolverConfig::default()).unwrap(),
            k3_walls(&BigInt::from(4), "1,0,-1", &SolverConfig::default()).unwrap(),
            entropy_command(&BigInt::from(2), Some("1,0,-1")).unwrap(),
            cubic_command(&BigInt::from(74)).unwrap(),
        ] {
            let back = Report::from_json(&outcome.report.to_json()).unwrap();
            assert_eq!(back, outcome.report);
            let v = report::verify(&back);
            assert!(v.passed(), "{:?}", v.failures);
        }
    }
}
