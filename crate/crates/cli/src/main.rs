//! Command-line front end: fixtures, computations, JSON reports, and the
//! verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::process::ExitCode;

use crmodel::fixtures::{fixture, fixture_names, DEFAULT_SEEDS};
use crmodel::kernel::{
    assemble, export_matrix, graded_profile, jet_from_vector, kernel_basis, matrix_stats,
};
use crmodel::surfaces::surface_to_json;
use crmodel::verify::{run_suite, suite_names};

#[derive(Parser)]
#[command(name = "crmodel", version, about = "Exact engine for CR model-surface automorphism algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded automorphism-algebra profile of a weight-homogeneous fixture.
    Aut {
        #[arg(long)]
        fixture: String,
        /// Field-grade range, e.g. -3..3
        #[arg(long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also print kernel bases per grade.
        #[arg(long)]
        basis: bool,
        #[arg(long, default_value_t = DEFAULT_SEEDS.0)]
        seed: u64,
    },
    /// Window-kernel dimension: the parameter bound for a jet space.
    Bound {
        #[arg(long)]
        fixture: String,
        /// Jet space: V5, V5ext, jet3 (three-nondegenerate) or V5tilde
        /// (two-nondegenerate).
        #[arg(long)]
        space: String,
        /// Top jet index of the window.
        #[arg(long)]
        top: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_SEEDS.0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        basis: bool,
    },
    /// Classify a pair (Hermitian form, quadratic form) on C^2.
    Classify {
        /// Hermitian matrix as `h11,h12,h21,h22` with Gaussian-rational
        /// entries like `1`, `-1/2`, `(0,1)` (= i).
        #[arg(long)]
        hermitian: String,
        /// Quadratic form `K = k z1^2 + 2 l z1 z2 + m z2^2` as `k,l,m`.
        #[arg(long)]
        quadratic: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite (`all` or one of the named suites).
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEEDS.0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SEEDS.1)]
        seed2: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the surface-spec JSON of a fixture.
    ExportSurface {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value_t = DEFAULT_SEEDS.0)]
        seed: u64,
    },
    /// Export the operator matrix of a fixture window as text triplets.
    ExportMatrix {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        top: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_SEEDS.0)]
        seed: u64,
    },
    /// List fixtures and suites.
    List,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: String,
    fixture: Option<String>,
    window: Option<(i64, i64)>,
    seed: Option<u64>,
    fixture_sha256: Option<String>,
    result: T,
}

fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    format!("{:x}", h.finalize())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> crmodel::Result<ExitCode> {
    match cli.command {
        Cmd::Aut {
            fixture: name,
            range,
            format,
            basis,
            seed,
        } => {
            let f = fixture(&name, seed)?;
            let grades = match range {
                Some(r) => parse_range(&r)?,
                None => f.default_grades().ok_or_else(|| {
                    crmodel::Error::BadSurface(format!(
                        "fixture `{name}` has no graded profile; pass --range"
                    ))
                })?,
            };
            let op = f.operator()?;
            let profile = graded_profile(&op, grades, false)?;
            let mut bases = Vec::new();
            if basis {
                let wt_w = f.surface.weights().weight(f.surface.w_var());
                for nu in grades.0..=grades.1 {
                    let window = crmodel::kernel::JetWindow::new(nu + wt_w, nu + wt_w);
                    if let Ok(mat) = assemble(&op, &window) {
                        let k = kernel_basis(&mat);
                        for v in &k.basis {
                            let jet = jet_from_vector(&mat, &op, v)?;
                            let comps: Vec<String> = jet
                                .comps
                                .iter()
                                .map(|p| p.canonical_string())
                                .collect();
                            bases.push((nu, comps));
                        }
                    }
                }
            }
            #[derive(Serialize)]
            struct AutResult {
                weights: std::collections::BTreeMap<i64, usize>,
                total: usize,
                stabilized: bool,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                basis: Vec<(i64, Vec<String>)>,
            }
            let result = AutResult {
                weights: profile.dims.clone(),
                total: profile.total(),
                stabilized: profile.stabilized,
                basis: bases,
            };
            let report = Report {
                command: "aut".into(),
                fixture: Some(name.clone()),
                window: Some(grades),
                seed: Some(seed),
                fixture_sha256: Some(sha256_hex(&surface_to_json(&f.surface))),
                result,
            };
            emit(&report, format, |r| {
                let mut s = format!(
                    "aut {}: total {} profile {:?} stabilized {}\n",
                    name, r.result.total, r.result.weights, r.result.stabilized
                );
                for (nu, comps) in &r.result.basis {
                    s.push_str(&format!("  grade {nu}: ({})\n", comps.join(", ")));
                }
                s
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound {
            fixture: name,
            space,
            top,
            seed,
            format,
            basis,
        } => {
            let f = fixture(&name, seed)?;
            let (op, window) = f.space_window(&space, top)?;
            let mat = assemble(&op, &window)?;
            let k = kernel_basis(&mat);
            let (nrows, ncols, nnz) = matrix_stats(&mat);
            let mut bases = Vec::new();
            if basis {
                for v in &k.basis {
                    let jet = jet_from_vector(&mat, &op, v)?;
                    bases.push(
                        jet.comps
                            .iter()
                            .map(|p| p.canonical_string())
                            .collect::<Vec<_>>(),
                    );
                }
            }
            #[derive(Serialize)]
            struct BoundResult {
                space: String,
                dimension: usize,
                rank: usize,
                rows: usize,
                cols: usize,
                entries: usize,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                basis: Vec<Vec<String>>,
            }
            let result = BoundResult {
                space: space.clone(),
                dimension: k.dim(),
                rank: k.rank,
                rows: nrows,
                cols: ncols,
                entries: nnz,
                basis: bases,
            };
            let report = Report {
                command: "bound".into(),
                fixture: Some(name.clone()),
                window: Some((window.lo, window.hi)),
                seed: Some(seed),
                fixture_sha256: Some(sha256_hex(&surface_to_json(&f.surface))),
                result,
            };
            emit(&report, format, |r| {
                format!(
                    "bound {} on {}: window {}..{} dimension {} (rank {}, {}x{} matrix)\n",
                    name,
                    space,
                    r.window.unwrap().0,
                    r.window.unwrap().1,
                    r.result.dimension,
                    r.result.rank,
                    r.result.rows,
                    r.result.cols
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify {
            hermitian,
            quadratic,
            format,
        } => {
            let h = parse_mat2(&hermitian)?;
            let k3 = parse_triple(&quadratic)?;
            let k = [
                [k3[0].clone(), k3[1].clone()],
                [k3[1].clone(), k3[2].clone()],
            ];
            let pair = crmodel::classify::FormPair::new(h, k)?;
            let c = crmodel::classify::classify_pair(&pair)?;
            let g0 = crmodel::classify::g0_dim(&pair);
            #[derive(Serialize)]
            struct ClassifyResult {
                class: u8,
                params: crmodel::classify::PairClass,
                witness: Option<Vec<Vec<String>>>,
                g0_dim: usize,
            }
            let result = ClassifyResult {
                class: c.class.id,
                witness: c.witness.as_ref().map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect())
                        .collect()
                }),
                params: c.class,
                g0_dim: g0,
            };
            let report = Report {
                command: "classify".into(),
                fixture: None,
                window: None,
                seed: None,
                fixture_sha256: None,
                result,
            };
            emit(&report, format, |r| {
                format!(
                    "class {} (g0 dimension {})\n",
                    r.result.class, r.result.g0_dim
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            suite,
            seed,
            seed2,
            format,
        } => {
            if suite != "all" && !suite_names().contains(&suite.as_str()) {
                return Err(crmodel::Error::Parse(format!(
                    "unknown suite `{suite}`; use `all` or one of {:?}",
                    suite_names()
                )));
            }
            let results = run_suite(&suite, (seed, seed2))?;
            let all_pass = results.iter().all(|r| r.pass);
            #[derive(Serialize)]
            struct CheckJson {
                name: String,
                claim: String,
                pass: bool,
                details: String,
            }
            let checks: Vec<CheckJson> = results
                .iter()
                .map(|r| CheckJson {
                    name: r.name.clone(),
                    claim: r.claim.clone(),
                    pass: r.pass,
                    details: r.details.clone(),
                })
                .collect();
            let report = Report {
                command: "verify".into(),
                fixture: None,
                window: None,
                seed: Some(seed),
                fixture_sha256: None,
                result: checks,
            };
            emit(&report, format, |r| {
                let mut s = String::new();
                for c in &r.result {
                    s.push_str(&format!(
                        "{} {} — {}{}\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.claim,
                        if c.details.is_empty() {
                            String::new()
                        } else {
                            format!(" [{}]", c.details)
                        }
                    ));
                }
                s.push_str(&format!(
                    "{}/{} checks passed\n",
                    r.result.iter().filter(|c| c.pass).count(),
                    r.result.len()
                ));
                s
            });
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::ExportSurface { fixture: name, seed } => {
            let f = fixture(&name, seed)?;
            println!("{}", surface_to_json(&f.surface));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ExportMatrix {
            fixture: name,
            space,
            top,
            seed,
        } => {
            let f = fixture(&name, seed)?;
            let (op, window) = f.space_window(&space, top)?;
            let mat = assemble(&op, &window)?;
            print!("{}", export_matrix(&mat, &op));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::List => {
            println!("fixtures: {}", fixture_names().join(", "));
            println!("suites: all, {}", suite_names().join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit<T: Serialize, F: Fn(&Report<T>) -> String>(report: &Report<T>, format: Format, text: F) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable report")
        ),
        Format::Text => print!("{}", text(report)),
    }
}

fn parse_range(s: &str) -> crmodel::Result<(i64, i64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| crmodel::Error::Parse(format!("bad range `{s}`")))?;
    let lo = a
        .parse()
        .map_err(|_| crmodel::Error::Parse(format!("bad range `{s}`")))?;
    let hi = b
        .parse()
        .map_err(|_| crmodel::Error::Parse(format!("bad range `{s}`")))?;
    Ok((lo, hi))
}

fn parse_gauss(s: &str) -> crmodel::Result<crmodel::GaussRat> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| crmodel::Error::Parse(format!("bad Gaussian rational `{s}`")))?;
        Ok(crmodel::GaussRat::new(
            crmodel::GaussRat::parse_rational(re)?,
            crmodel::GaussRat::parse_rational(im)?,
        ))
    } else {
        Ok(crmodel::GaussRat::new(
            crmodel::GaussRat::parse_rational(s)?,
            num::rational::BigRational::new(0.into(), 1.into()),
        ))
    }
}

fn parse_mat2(s: &str) -> crmodel::Result<[[crmodel::GaussRat; 2]; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    // allow `(re,im)` entries by rejoining parenthesized pairs
    let mut entries = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        if parts[i].trim_start().starts_with('(') {
            if i + 1 >= parts.len() {
                return Err(crmodel::Error::Parse("unbalanced parentheses".into()));
            }
            entries.push(format!("{},{}", parts[i], parts[i + 1]));
            i += 2;
        } else {
            entries.push(parts[i].to_string());
            i += 1;
        }
    }
    if entries.len() != 4 {
        return Err(crmodel::Error::Parse(
            "Hermitian matrix needs 4 entries h11,h12,h21,h22".into(),
        ));
    }
    let vals: Vec<crmodel::GaussRat> = entries
        .iter()
        .map(|e| parse_gauss(e))
        .collect::<crmodel::Result<Vec<_>>>()?;
    Ok([
        [vals[0].clone(), vals[1].clone()],
        [vals[2].clone(), vals[3].clone()],
    ])
}

fn parse_triple(s: &str) -> crmodel::Result<Vec<crmodel::GaussRat>> {
    let parts: Vec<&str> = s.split(',').collect();
    let mut entries = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        if parts[i].trim_start().starts_with('(') {
            if i + 1 >= parts.len() {
                return Err(crmodel::Error::Parse("unbalanced parentheses".into()));
            }
            entries.push(format!("{},{}", parts[i], parts[i + 1]));
            i += 2;
        } else {
            entries.push(parts[i].to_string());
            i += 1;
        }
    }
    if entries.len() != 3 {
        return Err(crmodel::Error::Parse(
            "quadratic form needs 3 entries k,l,m".into(),
        ));
    }
    entries.iter().map(|e| parse_gauss(e)).collect()
}
