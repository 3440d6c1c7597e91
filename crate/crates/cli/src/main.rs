//! Command-line frontend: classification, Hilbert series, homology tables
//! and machine-readable verification reports, all over exact rationals.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use potentia_core::linalg::{parse_rat, rat, rat_string, RatMatrix};
use potentia_core::poisson::{hp_table, hphi_table, verify_family, PoissonPotential};
use potentia_core::potential::{
    apply_basis_change, build_b, classify2, diagonal_lambda, koszul_hh, poisson_potential,
    relation_span_of, self_duality_check, swap_lambda, QuadMatrix, Type2Tag,
};
use potentia_core::quotient::{hilbert_coeffs, RewriteSystem};
use potentia_core::report::{Check, CheckList, HomologyTable};
use potentia_core::{brylinski, free, Error, Rat};

const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Parser)]
#[command(
    name = "potentia",
    about = "Exact engine for graded algebras defined by cubic superpotentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a 2x2 matrix into classical / jordan / quantum / degenerate.
    Classify(AlgebraArgs),
    /// Graded dimensions of B(M) for d = 0..=max-degree.
    Hilbert(AlgebraArgs),
    /// Homology tables.
    Homology {
        #[command(subcommand)]
        kind: HomologyKind,
    },
    /// Verification suites; exit code 1 when a check fails.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Run every verification and table for the selected algebra.
    Report(AlgebraArgs),
}

#[derive(Subcommand)]
enum HomologyKind {
    /// Hochschild homology of B(M) via the Koszul complex.
    Hochschild(AlgebraArgs),
    /// Poisson homology of the semiclassical limit.
    Poisson(AlgebraArgs),
    /// Homology of the Koszul complex of the potential (∧dφ).
    Koszulphi(AlgebraArgs),
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Noncommutative Euler relation for w = fz.
    Euler(AlgebraArgs),
    /// Hessian symmetry of the potential.
    Hessian(AlgebraArgs),
    /// Overlap resolution of the derived rewrite system.
    Confluence(AlgebraArgs),
    /// Centrality of Φ = (a x² + (b+1) xy) z.
    Center(AlgebraArgs),
    /// Self-duality data of the Koszul complex.
    Duality(AlgebraArgs),
    /// Associated-graded identities gr(d̃) = δ (Jordan type).
    Gr(AlgebraArgs),
    /// Explicit lifts of Poisson cycles to Koszul cycles (Jordan type).
    Lifts(AlgebraArgs),
    /// Degree-by-degree degeneration HH = HP = basis count (Jordan type).
    Degeneration(AlgebraArgs),
    /// Quantum-type comparison at the given q.
    Quantum(AlgebraArgs),
    /// Basis-change span identities (diagonal and swap).
    Basischange(AlgebraArgs),
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Named algebra: classical, jordan, or quantum:q.
    #[arg(long)]
    preset: Option<String>,
    /// Matrix as a JSON array of arrays of rational strings.
    #[arg(long)]
    matrix: Option<String>,
    /// Path to a file holding the same JSON matrix.
    #[arg(long)]
    matrix_file: Option<String>,
    /// Quantum parameter (used by quantum presets and `verify quantum`).
    #[arg(long)]
    q: Option<String>,
    /// Degree cap; POTENTIA_MAX_DEGREE overrides the default of 8.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

struct Resolved {
    matrix: QuadMatrix,
    preset: Option<String>,
    q: Rat,
    max_degree: usize,
}

fn default_max_degree() -> usize {
    std::env::var("POTENTIA_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn parse_matrix_json(text: &str) -> Result<RatMatrix, Error> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text)
        .map_err(|e| Error::BadInput(format!("matrix JSON: {e}")))?;
    if rows.is_empty() {
        return Err(Error::BadInput("matrix is empty".into()));
    }
    let cols = rows[0].len();
    let mut parsed = Vec::new();
    for row in &rows {
        if row.len() != cols {
            return Err(Error::BadInput("ragged matrix rows".into()));
        }
        parsed.push(
            row.iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(RatMatrix::from_rows(parsed))
}

fn resolve(args: &AlgebraArgs) -> Result<Resolved, Error> {
    let max_degree = args.max_degree.unwrap_or_else(default_max_degree);
    if max_degree < 2 {
        return Err(Error::BadInput("max-degree must be at least 2".into()));
    }
    let q = match &args.q {
        Some(text) => parse_rat(text)?,
        None => rat(2),
    };
    let (matrix, preset) = if let Some(name) = &args.preset {
        let matrix = match name.as_str() {
            "classical" => QuadMatrix::classical(),
            "jordan" => QuadMatrix::jordan(),
            other => match other.strip_prefix("quantum:") {
                Some(param) => QuadMatrix::quantum(&parse_rat(param)?)?,
                None if other == "quantum" => QuadMatrix::quantum(&q)?,
                None => {
                    return Err(Error::BadInput(format!("unknown preset `{other}`")));
                }
            },
        };
        (matrix, Some(name.clone()))
    } else if let Some(text) = &args.matrix {
        (QuadMatrix::new(parse_matrix_json(text)?)?, None)
    } else if let Some(path) = &args.matrix_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::BadInput(format!("reading {path}: {e}")))?;
        (QuadMatrix::new(parse_matrix_json(&text)?)?, None)
    } else {
        (QuadMatrix::jordan(), Some("jordan".into()))
    };
    Ok(Resolved {
        matrix,
        preset,
        q,
        max_degree,
    })
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| {
                Value::Array(
                    (0..m.cols)
                        .map(|j| Value::String(rat_string(&m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn input_json(command: &str, resolved: &Resolved) -> Value {
    json!({
        "command": command,
        "preset": resolved.preset,
        "matrix": matrix_json(&resolved.matrix.m),
        "q": rat_string(&resolved.q),
        "max_degree": resolved.max_degree,
    })
}

fn table_rows(table: &HomologyTable) -> Value {
    Value::Array(
        table
            .rows()
            .into_iter()
            .map(|[p, d, n]| json!([p, d, n]))
            .collect(),
    )
}

struct Report {
    input: Value,
    tables: BTreeMap<&'static str, HomologyTable>,
    checks: Vec<Check>,
    started: Instant,
}

impl Report {
    fn new(command: &str, resolved: &Resolved) -> Self {
        Report {
            input: input_json(command, resolved),
            tables: BTreeMap::new(),
            checks: Vec::new(),
            started: Instant::now(),
        }
    }

    fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn to_json(&self) -> Value {
        let mut tables = serde_json::Map::new();
        for key in ["HH", "HP", "Hphi"] {
            let rows = self
                .tables
                .get(key)
                .map(table_rows)
                .unwrap_or_else(|| Value::Array(vec![]));
            tables.insert(key.into(), rows);
        }
        json!({
            "input": self.input,
            "tables": Value::Object(tables),
            "checks": self.checks,
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
        })
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for key in ["HH", "HP", "Hphi"] {
            if let Some(table) = self.tables.get(key) {
                for [p, d, n] in table.rows() {
                    out.push_str(&format!("{key},{p},{d},{n}\n"));
                }
            }
        }
        for check in &self.checks {
            let detail = check.detail.replace(['\n', ','], ";");
            out.push_str(&format!("check,{},{},{}\n", check.name, check.pass, detail));
        }
        out.push_str(&format!(
            "elapsed_ms,{}\n",
            self.started.elapsed().as_millis()
        ));
        out
    }
}

fn emit(report: &Report, args: &AlgebraArgs) -> Result<(), Error> {
    let text = match args.format {
        Format::Json => format!("{:#}\n", report.to_json()),
        Format::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::BadInput(format!("writing {path}: {e}"))),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn emit_value(value: &Value, args: &AlgebraArgs) -> Result<(), Error> {
    let text = format!("{value}\n");
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::BadInput(format!("writing {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Check suites
// ---------------------------------------------------------------------------

fn euler_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    let algebra = build_b(&resolved.matrix.m);
    let mut checks = CheckList::default();
    checks.push(
        "euler: Σ ∂_i(w)·x_i + fz = Σ x_i·∂_i(w) + zf = c(w)",
        free::euler_check(&algebra.w)?,
        String::new(),
    );
    Ok(checks)
}

fn hessian_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    let algebra = build_b(&resolved.matrix.m);
    let mut checks = CheckList::default();
    checks.push(
        "hessian: τ(∂²w/∂x_i∂x_j) = ∂²w/∂x_j∂x_i",
        free::hessian_symmetry_check(&algebra.w),
        String::new(),
    );
    Ok(checks)
}

fn confluence_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    let algebra = build_b(&resolved.matrix.m);
    let rs = RewriteSystem::derive(&algebra.presentation)?;
    let overlaps = rs.confluence_check();
    let mut checks = CheckList::default();
    checks.push(
        "confluence: all overlaps resolve",
        overlaps.is_empty(),
        if overlaps.is_empty() {
            format!("{} rules", rs.rule_count())
        } else {
            overlaps
                .iter()
                .map(|o| format!("{:?}", o.word))
                .collect::<Vec<_>>()
                .join("; ")
        },
    );
    Ok(checks)
}

fn center_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    // normalize the matrix to the (a b; 1 0) representative shape
    let m = &resolved.matrix.m;
    let f21 = m.get(1, 0);
    if resolved.matrix.n != 2 || f21 == rat(0) {
        return Err(Error::BadInput(
            "center test needs a 2x2 matrix with f_21 ≠ 0".into(),
        ));
    }
    let scaled = m.scale(&f21.recip());
    let a = scaled.get(0, 0);
    let b = scaled.get(0, 1);
    let mut checks = CheckList::default();
    checks.push(
        format!(
            "center: Φ = ({}·x² + {}·xy)z commutes with x, y, z",
            rat_string(&a),
            rat_string(&(b.clone() + rat(1)))
        ),
        potentia_core::potential::center_test(&a, &b)?,
        String::new(),
    );
    Ok(checks)
}

fn duality_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    let mut checks = CheckList::default();
    checks.push(
        "duality: Koszul complex is self-dual slice by slice",
        self_duality_check(&resolved.matrix, resolved.max_degree)?,
        String::new(),
    );
    Ok(checks)
}

fn basischange_checks(resolved: &Resolved) -> Result<CheckList, Error> {
    let mut checks = CheckList::default();
    let m = &resolved.matrix;
    // deterministic sample of diagonal changes Λ = diag(P, ν)
    let mut rng = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    let mut diag_ok = true;
    let mut detail = Vec::new();
    let mut tried = 0;
    while tried < 5 {
        let n = m.n;
        let mut p = RatMatrix::new(n, n);
        for i in 0..n {
            for j in 0..n {
                p.set(i, j, rat((next() % 7) as i64 - 3));
            }
        }
        if potentia_core::linalg::inverse(&p).is_none() {
            continue;
        }
        tried += 1;
        let nu = rat((next() % 5) as i64 + 1);
        let lambda = diagonal_lambda(&p, &nu);
        let changed = apply_basis_change(m, &lambda)?;
        let target = QuadMatrix::new(p.transpose().mul(&m.m).mul(&p).scale(&nu))
            .expect("congruence of nonzero is nonzero");
        if changed != relation_span_of(&target) {
            diag_ok = false;
            detail.push(format!("failed for sample {tried}"));
        }
    }
    checks.push(
        "basis change: Λ = diag(P, ν) gives the relation span of B(ν ᵗPMP)",
        diag_ok,
        detail.join("; "),
    );
    // the swap change on the zero-diagonal shape gives B(ᵗM)
    let shape = QuadMatrix::from_i64(&[&[0, 1], &[2, 0]]);
    let swapped = apply_basis_change(&shape, &swap_lambda(2))?;
    let transposed = QuadMatrix::new(shape.m.transpose()).expect("nonzero");
    checks.push(
        "basis change: swap Λ on the zero-diagonal shape gives B(ᵗM)",
        swapped == relation_span_of(&transposed),
        String::new(),
    );
    Ok(checks)
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify(args) => {
            let resolved = resolve(&args)?;
            if resolved.matrix.n != 2 {
                return Err(Error::BadInput("classification is for 2x2 matrices".into()));
            }
            let tag = classify2(&resolved.matrix)?;
            let value = match &tag {
                Type2Tag::Quantum(q) => json!({"type": "quantum", "q": rat_string(q)}),
                Type2Tag::Classical => json!({"type": "classical"}),
                Type2Tag::Jordan => json!({"type": "jordan"}),
                Type2Tag::Degenerate => json!({"type": "degenerate"}),
            };
            emit_value(&value, &args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert(args) => {
            let resolved = resolve(&args)?;
            let algebra = build_b(&resolved.matrix.m);
            let dims = hilbert_coeffs(&algebra.presentation, resolved.max_degree);
            emit_value(&json!(dims), &args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { kind } => {
            let (args, which) = match &kind {
                HomologyKind::Hochschild(a) => (a.clone(), "hochschild"),
                HomologyKind::Poisson(a) => (a.clone(), "poisson"),
                HomologyKind::Koszulphi(a) => (a.clone(), "koszulphi"),
            };
            let resolved = resolve(&args)?;
            let mut report = Report::new(&format!("homology {which}"), &resolved);
            match which {
                "hochschild" => {
                    let (table, dd) = koszul_hh(&resolved.matrix, resolved.max_degree, false)?;
                    report.checks.push(Check::new(
                        "d̃∘d̃ = 0 on every slice",
                        dd,
                        String::new(),
                    ));
                    report.tables.insert("HH", table);
                }
                "poisson" => {
                    let phi = poisson_potential(&resolved.matrix)?;
                    let pp = PoissonPotential::new(phi)?;
                    report.tables.insert("HP", hp_table(&pp, resolved.max_degree, false));
                }
                "koszulphi" => {
                    let phi = poisson_potential(&resolved.matrix)?;
                    let pp = PoissonPotential::new(phi)?;
                    report
                        .tables
                        .insert("Hphi", hphi_table(&pp, resolved.max_degree));
                }
                _ => unreachable!(),
            }
            let pass = report.all_pass();
            emit(&report, &args)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Verify { kind } => {
            let (args, name) = match &kind {
                VerifyKind::Euler(a) => (a.clone(), "euler"),
                VerifyKind::Hessian(a) => (a.clone(), "hessian"),
                VerifyKind::Confluence(a) => (a.clone(), "confluence"),
                VerifyKind::Center(a) => (a.clone(), "center"),
                VerifyKind::Duality(a) => (a.clone(), "duality"),
                VerifyKind::Gr(a) => (a.clone(), "gr"),
                VerifyKind::Lifts(a) => (a.clone(), "lifts"),
                VerifyKind::Degeneration(a) => (a.clone(), "degeneration"),
                VerifyKind::Quantum(a) => (a.clone(), "quantum"),
                VerifyKind::Basischange(a) => (a.clone(), "basischange"),
            };
            let resolved = resolve(&args)?;
            let mut report = Report::new(&format!("verify {name}"), &resolved);
            let checks = match name {
                "euler" => euler_checks(&resolved)?,
                "hessian" => hessian_checks(&resolved)?,
                "confluence" => confluence_checks(&resolved)?,
                "center" => center_checks(&resolved)?,
                "duality" => duality_checks(&resolved)?,
                "gr" => brylinski::gr_compare(resolved.max_degree),
                "lifts" => {
                    let mut checks = brylinski::verify_all_lifts(resolved.max_degree);
                    checks.extend(brylinski::solver_cross_check(resolved.max_degree.min(6)));
                    checks
                }
                "degeneration" => {
                    let (checks, hh, hp) = brylinski::degeneration_check(resolved.max_degree)?;
                    report.tables.insert("HH", hh);
                    report.tables.insert("HP", hp);
                    checks
                }
                "quantum" => {
                    let (checks, hh, hp) =
                        brylinski::quantum_compare(&resolved.q, resolved.max_degree)?;
                    report.tables.insert("HH", hh);
                    report.tables.insert("HP", hp);
                    checks
                }
                "basischange" => basischange_checks(&resolved)?,
                _ => unreachable!(),
            };
            report.checks.extend(checks.checks);
            let pass = report.all_pass();
            emit(&report, &args)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Report(args) => {
            let resolved = resolve(&args)?;
            let mut report = Report::new("report", &resolved);
            let d = resolved.max_degree;

            report.checks.extend(euler_checks(&resolved)?.checks);
            report.checks.extend(hessian_checks(&resolved)?.checks);
            report.checks.extend(confluence_checks(&resolved)?.checks);
            report.checks.extend(duality_checks(&resolved)?.checks);
            report.checks.extend(basischange_checks(&resolved)?.checks);

            let (hh, dd) = koszul_hh(&resolved.matrix, d, false)?;
            report
                .checks
                .push(Check::new("d̃∘d̃ = 0 on every slice", dd, String::new()));
            report.tables.insert("HH", hh);

            if let Ok(phi) = poisson_potential(&resolved.matrix) {
                let pp = PoissonPotential::new(phi)?;
                report.tables.insert("HP", hp_table(&pp, d, false));
                report.tables.insert("Hphi", hphi_table(&pp, d));
                report.checks.push(Check::new(
                    "δ∘δ = 0 and (∧dφ)² = 0 on every slice",
                    potentia_core::poisson::complexes_square_to_zero(&pp, d),
                    String::new(),
                ));
            }

            let is_jordan = classify2(&resolved.matrix)? == Type2Tag::Jordan;
            if is_jordan {
                report.checks.extend(center_checks(&resolved)?.checks);
                report.checks.extend(brylinski::gr_compare(d).checks);
                report
                    .checks
                    .extend(brylinski::verify_all_lifts(d).checks);
                let (checks, _, _) = brylinski::degeneration_check(d)?;
                report.checks.extend(checks.checks);
                let pp = PoissonPotential::jordan();
                for family in potentia_core::poisson::ALL_FAMILIES {
                    report
                        .checks
                        .extend(verify_family(&pp, family, d).checks);
                }
                let (checks, _, _) = brylinski::quantum_compare(&resolved.q, d)?;
                report.checks.extend(checks.checks);
            }

            let pass = report.all_pass();
            emit(&report, &args)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
