//! Command-line front end for exact products in the Kauffman bracket skein
//! algebra of the once-punctured torus.
//!
//! Exit codes: 0 success, 2 syntax or input error, 3 unsupported product,
//! 4 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ptskein_core::curves::{analyze_pair, canonicalize};
use ptskein_core::oracle::{brute_force_pn, decompose_multiply};
use ptskein_core::product::{cascade_g, classify, p_n_closed, ProductError};
use ptskein_core::{BasisKey, CurveVector, SkeinElement};

use ptskein_cli::render::{render, Format, Normalization};
use ptskein_cli::{parse, verify};

const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ptskein",
    version,
    about = "Exact products in the Kauffman bracket skein algebra of the once-punctured torus"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for result elements.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Unit display convention.
    #[arg(long, global = true, value_enum, default_value_t = Normalization::T0)]
    normalization: Normalization,
    /// Also write the result as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and evaluate a product expression, e.g. "(3,6)*(1,0)".
    Mul { expr: String },
    /// Print the closed form of the family product (n,2n)_T * (1,0)_T.
    Pn {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Cross-check against the recurrence and decomposition oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Report which product rule an ordered pair "(p,q),(r,s)" dispatches to.
    Classify { pair: String },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Corrupt the named fixture first (demonstrates diff reporting).
        #[arg(long, value_name = "NAME")]
        corrupt_fixture: Option<String>,
    },
    /// Print the degree-lowering cascade sum for a stage, sign, and curve.
    Cascade {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Cascade sign: 1 or -1.
        #[arg(allow_hyphen_values = true)]
        eps: String,
        /// Primitive curve the cascade threads along, as "p,q".
        #[arg(long, default_value = "0,1")]
        mu: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Appendix,
    Properties,
    All,
}

fn main() -> ExitCode {
    // Die quietly when a pipeline closes stdout early (`ptskein ... | head`),
    // like other line-oriented tools, instead of panicking on the write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Mul { expr } => cmd_mul(&cli, expr),
        Cmd::Pn { n, oracle } => cmd_pn(&cli, *n, *oracle),
        Cmd::Classify { pair } => cmd_classify(&cli, pair),
        Cmd::Verify {
            suite,
            corrupt_fixture,
        } => cmd_verify(&cli, *suite, corrupt_fixture.as_deref()),
        Cmd::Cascade { n, eps, mu } => cmd_cascade(&cli, *n, eps, mu),
    }
}

/// Prints the element in the selected format and honors `--json-out`.
fn emit(cli: &Cli, e: &SkeinElement) -> ExitCode {
    println!("{}", render(e, cli.format, cli.normalization));
    write_json_out(cli, &render(e, Format::Json, cli.normalization))
}

fn write_json_out(cli: &Cli, payload: &str) -> ExitCode {
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, payload) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}

/// Machine-readable diagnostic on stdout, human-readable line on stderr.
fn unsupported_exit(err: &ProductError) -> ExitCode {
    let diag = match err {
        ProductError::Unsupported { a, b, case } => serde_json::json!({
            "error": "unsupported_product",
            "left": a.to_string(),
            "right": b.to_string(),
            "case": case.to_string(),
        }),
        ProductError::NotMaxThread { alpha, beta } => serde_json::json!({
            "error": "not_maximal_thread",
            "left": alpha.to_string(),
            "right": beta.to_string(),
        }),
    };
    println!("{diag}");
    eprintln!("{err}");
    ExitCode::from(EXIT_UNSUPPORTED)
}

fn cmd_mul(cli: &Cli, expr: &str) -> ExitCode {
    let ast = match parse::parse(expr) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match parse::eval(&ast) {
        Ok(v) => emit(cli, &v),
        Err(e) => unsupported_exit(&e),
    }
}

fn cmd_pn(cli: &Cli, n: u32, oracle: bool) -> ExitCode {
    let closed = p_n_closed(n);
    let code = emit(cli, &closed);
    if code != ExitCode::SUCCESS {
        return code;
    }
    if oracle {
        let rec_ok = brute_force_pn(n) == closed;
        let ni = i64::from(n);
        let dec_ok = matches!(decompose_multiply((ni, 2 * ni), (1, 0)), Ok(d) if d == closed);
        println!(
            "oracle recurrence: {}",
            if rec_ok { "agree" } else { "MISMATCH" }
        );
        println!(
            "oracle decomposition: {}",
            if dec_ok { "agree" } else { "MISMATCH" }
        );
        if !(rec_ok && dec_ok) {
            return ExitCode::from(EXIT_VERIFY);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_classify(cli: &Cli, pair: &str) -> ExitCode {
    let ((p, q), (r, s)) = match parse::parse_pair(pair) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let (mu_a, ka) = canonicalize(p, q);
    let (mu_b, kb) = canonicalize(r, s);
    if ka == 0 || kb == 0 {
        eprintln!("the zero vector is not a curve");
        return ExitCode::from(EXIT_INPUT);
    }
    let a = BasisKey::threaded(mu_a, ka);
    let b = BasisKey::threaded(mu_b, kb);
    let case = classify(&a, &b);
    let analysis = if ka == 1 && kb == 1 && mu_a != mu_b {
        analyze_pair(mu_a, mu_b).ok()
    } else {
        None
    };
    match cli.format {
        Format::Json => {
            let j = serde_json::json!({
                "left": a.to_string(),
                "right": b.to_string(),
                "case": case.to_string(),
                "analysis": analysis,
            });
            println!("{j}");
            write_json_out(cli, &j.to_string())
        }
        _ => {
            println!("case: {case}");
            if let Some(pr) = analysis {
                println!("det: {}", pr.n);
                println!("sum curve: {} (thread degree {})", pr.c_plus, pr.d_plus);
                println!(
                    "difference curve: {} (thread degree {})",
                    pr.c_minus, pr.d_minus
                );
                println!("maximal summand: {:?}", pr.maximal_summand);
            }
            write_json_out(
                cli,
                &serde_json::json!({"case": case.to_string(), "analysis": analysis}).to_string(),
            )
        }
    }
}

fn cmd_verify(cli: &Cli, suite: SuiteArg, corrupt: Option<&str>) -> ExitCode {
    let mut outcomes = Vec::new();
    if matches!(suite, SuiteArg::Appendix | SuiteArg::All) {
        match verify::appendix_suite(corrupt) {
            Ok(v) => outcomes.extend(v),
            Err(msg) => {
                eprintln!("{msg}");
                return ExitCode::from(EXIT_INPUT);
            }
        }
    } else if corrupt.is_some() {
        eprintln!("--corrupt-fixture applies to the appendix suite only");
        return ExitCode::from(EXIT_INPUT);
    }
    if matches!(suite, SuiteArg::Properties | SuiteArg::All) {
        outcomes.extend(verify::property_suite());
    }
    let mut failed = 0u32;
    for o in &outcomes {
        println!("{} {}", if o.passed { "PASS" } else { "FAIL" }, o.label);
        if !o.passed {
            failed += 1;
            for line in o.detail.lines() {
                println!("  {line}");
            }
        }
    }
    println!("{} checks, {failed} failed", outcomes.len());
    let report: Vec<_> = outcomes
        .iter()
        .map(|o| {
            serde_json::json!({
                "label": o.label,
                "passed": o.passed,
                "detail": o.detail,
            })
        })
        .collect();
    let io = write_json_out(cli, &serde_json::json!(report).to_string());
    if io != ExitCode::SUCCESS {
        return io;
    }
    if failed > 0 {
        ExitCode::from(EXIT_VERIFY)
    } else {
        ExitCode::SUCCESS
    }
}

fn parse_mu(text: &str) -> Option<CurveVector> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(text.trim());
    let (p, q) = inner.split_once(',')?;
    let p: i64 = p.trim().parse().ok()?;
    let q: i64 = q.trim().parse().ok()?;
    let v = CurveVector::new(p, q);
    v.is_primitive().then_some(v)
}

fn cmd_cascade(cli: &Cli, n: u32, eps: &str, mu: &str) -> ExitCode {
    let sign: i8 = match eps.trim() {
        "1" | "+1" => 1,
        "-1" => -1,
        other => {
            eprintln!("eps must be 1 or -1, got `{other}`");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let Some(mu) = parse_mu(mu) else {
        eprintln!("--mu expects a primitive curve as `p,q`");
        return ExitCode::from(EXIT_INPUT);
    };
    emit(cli, &cascade_g(n, sign, mu))
}
