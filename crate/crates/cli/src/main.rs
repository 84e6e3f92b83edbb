use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lambda_invariants::golden::{self, RowReport, TableId};
use lambda_invariants::oracle;
use lambda_invariants::wedge::{build_invariant_pair, hodge_dual, induced_inner_product, InnerProduct};
use lambda_invariants::{ExteriorAlgebra, Extraction, GroupFamily, GroupId, Notation};

/// Hilbert series of invariants of exterior algebras Λ(W)^G.
#[derive(Parser)]
#[command(name = "lambda-inv", version)]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "LAMBDA_INV_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// ⟨e^d, e^d⟩ = d1!..dn!/k!
    Tensor,
    /// Monomials orthonormal.
    Orthonormal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Full,
    Pruned,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of Λ(W)^G.
    Series {
        /// Module, e.g. `S3`, `L2`, `V(2,1)`, `2*S1+L2`.
        #[arg(short, long)]
        module: String,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        group: GroupFamily,
        #[arg(short, long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "full")]
        extraction: Strategy,
    },
    /// GL(n) decomposition of each Λ^p(W).
    Decompose {
        #[arg(short, long)]
        module: String,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute the published tables and compare.
    Tables {
        /// Only this table (1-9, or `E4.4`).
        #[arg(short, long)]
        table: Option<String>,
        #[arg(short, long, value_enum, default_value = "text")]
        format: Format,
    },
    /// SL(n)-invariant v in Λ^p(S^k C^n) and its Hodge dual.
    InvariantPair {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        k: u32,
        #[arg(short, long)]
        p: usize,
        #[arg(long, value_enum, default_value = "tensor")]
        inner_product: Convention,
        #[arg(short, long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Invariant dimension by linear algebra, against the series coefficient.
    Oracle {
        #[arg(short, long)]
        module: String,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        group: GroupFamily,
        #[arg(short, long)]
        p: usize,
        #[arg(short, long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command printed and whether it found a discrepancy.
struct Outcome {
    stdout: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, mismatch: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> lambda_invariants::Result<Outcome> {
    match command {
        Command::Series { module, n, group, format, extraction } => {
            let group = GroupId::new(group, n)?;
            let how = match extraction {
                Strategy::Full => Extraction::FullProduct,
                Strategy::Pruned => Extraction::Pruned,
            };
            let alg = ExteriorAlgebra::with_extraction(lambda_invariants::ModuleSpec::parse(&module, n)?, how)?;
            let series = alg.invariant_series(group.family())?;
            Ok(Outcome::ok(match format {
                Format::Text => format!("{series}\n"),
                Format::Latex => format!("{}\n", series.render(Notation::Latex)),
                Format::Json => json_line(&json!({
                    "module": alg.spec().to_string(),
                    "n": n,
                    "group": group.family(),
                    "series": series,
                })),
            }))
        }
        Command::Decompose { module, n, format } => {
            let alg = ExteriorAlgebra::parse(&module, n)?;
            let degrees = alg.decomposition()?;
            Ok(Outcome::ok(match format {
                Format::Json => {
                    let degrees: Vec<_> = degrees
                        .iter()
                        .map(|d| {
                            let components: Vec<_> = d
                                .components
                                .iter()
                                .map(
                                    |(lambda, m)| json!({"partition": lambda.trimmed(), "multiplicity": m.to_string()}),
                                )
                                .collect();
                            json!({"degree": d.degree, "components": components})
                        })
                        .collect();
                    json_line(&json!({"module": alg.spec().to_string(), "n": n, "degrees": degrees}))
                }
                Format::Text | Format::Latex => {
                    let latex = matches!(format, Format::Latex);
                    let mut out = String::new();
                    for d in &degrees {
                        let parts: Vec<String> = d
                            .components
                            .iter()
                            .map(|(lambda, m)| {
                                let name = if latex { format!("V_{{{}}}", lambda.compact()) } else { lambda.compact() };
                                if m.to_string() == "1" {
                                    name
                                } else {
                                    format!("{m}{name}")
                                }
                            })
                            .collect();
                        let join = if latex { " \\oplus " } else { " + " };
                        let label =
                            if latex { format!("\\Lambda^{{{}}}", d.degree) } else { format!("degree {}", d.degree) };
                        let _ = writeln!(out, "{label}: {}", parts.join(join));
                    }
                    out
                }
            }))
        }
        Command::Tables { table, format } => tables(table.as_deref(), format),
        Command::InvariantPair { n, k, p, inner_product, format } => {
            let pair = build_invariant_pair(n, k, p)?;
            let ip = match inner_product {
                Convention::Tensor => InnerProduct::TensorInduced,
                Convention::Orthonormal => InnerProduct::OrthonormalMonomial,
            };
            let dual = hodge_dual(&pair.v, &pair.basis.volume(), &pair.basis, ip)?;
            let norm = induced_inner_product(&pair.v, &pair.v, &pair.basis, ip)?;
            if pair.v.is_zero() {
                eprintln!("warning: v = 0 (no nonzero projection among {} arrangements tried)", pair.attempts);
            }
            Ok(Outcome::ok(match format {
                Format::Json => json_line(&json!({
                    "n": n,
                    "k": k,
                    "p": p,
                    "inner_product": match inner_product { Convention::Tensor => "tensor", Convention::Orthonormal => "orthonormal" },
                    "basis": pair.basis.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "v": pair.v.to_json(),
                    "dual": dual.to_json(),
                    "norm": norm.to_string(),
                })),
                Format::Text | Format::Latex => {
                    let mut out = String::new();
                    let _ = writeln!(out, "basis of S^{k}C^{n}:");
                    for (i, m) in pair.basis.elements().iter().enumerate() {
                        let _ = writeln!(out, "  a{} = {m}", i + 1);
                    }
                    if matches!(format, Format::Latex) {
                        let _ = writeln!(out, "v = {}", pair.v.render_latex());
                        let _ = writeln!(out, "\\ast v = {}", dual.render_latex());
                    } else {
                        let _ = writeln!(out, "v = {}", pair.v);
                        let _ = writeln!(out, "*v = {dual}");
                        let _ = writeln!(out, "<v,v> = {norm}");
                    }
                    out
                }
            }))
        }
        Command::Oracle { module, n, group, p, format } => {
            let group = GroupId::new(group, n)?;
            let alg = ExteriorAlgebra::parse(&module, n)?;
            let dim = oracle::invariant_dimension(alg.spec(), p, group)?;
            let series = alg.invariant_series(group.family())?.coeff(p as u32);
            let ok = series == dim.into();
            let stdout = match format {
                Format::Json => json_line(&json!({
                    "module": alg.spec().to_string(),
                    "n": n,
                    "group": group.family(),
                    "p": p,
                    "oracle": dim,
                    "series": series.to_string(),
                    "ok": ok,
                })),
                _ => format!("oracle={dim} series={series} {}\n", if ok { "OK" } else { "MISMATCH" }),
            };
            Ok(Outcome { stdout, mismatch: !ok })
        }
    }
}

fn tables(only: Option<&str>, format: Format) -> lambda_invariants::Result<Outcome> {
    let mut rows = golden::rows();
    if let Some(t) = only {
        rows.retain(|r| match r.table {
            TableId::Table(i) => t == i.to_string(),
            TableId::Example => t.eq_ignore_ascii_case("E4.4"),
        });
    }
    let reports = golden::reproduce(&rows)?;
    let failures = reports.iter().filter(|r| !r.matches()).count();
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                table: String,
                module: &'a str,
                n: usize,
                group: GroupFamily,
                expected: &'a str,
                computed: String,
                ok: bool,
            }
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row {
                    table: r.row.table.to_string(),
                    module: &r.row.module,
                    n: r.row.n,
                    group: r.row.group,
                    expected: &r.row.series,
                    computed: r.rendered(),
                    ok: r.matches(),
                })
                .collect();
            json_line(&json!({"rows": rows, "ok": failures == 0}))
        }
        Format::Text | Format::Latex => render_tables(&reports, failures, matches!(format, Format::Latex)),
    };
    Ok(Outcome { stdout, mismatch: failures > 0 })
}

fn render_tables(reports: &[RowReport], failures: usize, latex: bool) -> String {
    let mut out = String::new();
    let mut current = None;
    for r in reports {
        if current != Some(r.row.table) {
            current = Some(r.row.table);
            let _ = writeln!(out, "{}", r.row.table);
        }
        let group = r.row.group_id().map(|g| g.to_string()).unwrap_or_default();
        let shown = if latex { r.rendered() } else { r.computed.to_string() };
        let status = if r.matches() { "OK" } else { "MISMATCH" };
        let _ = writeln!(out, "  {:<4} {:<6} {:<8} {shown}", r.row.module, group, status);
        if !r.matches() {
            let _ = writeln!(out, "    - {}", r.row.series);
            let _ = writeln!(out, "    + {}", r.rendered());
        }
    }
    let numbered = reports
        .iter()
        .filter_map(|r| match r.row.table {
            TableId::Table(t) => Some(t),
            TableId::Example => None,
        })
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let example = reports.iter().any(|r| r.row.table == TableId::Example);
    let tables = if numbered == 1 { "1 table".to_string() } else { format!("{numbered} tables") };
    let scope = if example { format!("{tables} + Example 4.4") } else { tables };
    if failures == 0 {
        let _ = writeln!(out, "{scope}: OK");
    } else {
        let _ = writeln!(out, "{scope}: {failures} MISMATCH{}", if failures == 1 { "" } else { "ES" });
    }
    out
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
