//! `descent` — batch CLI for exact descent-algebra computations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod output;
mod qmode;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use descent_core::compositions::{fibonacci_order, SubsetOfRanks};
use descent_core::descent_algebra::dynkin::dynkin_action_on_b;
use descent_core::descent_algebra::mackey::multiply_b;
use descent_core::descent_algebra::spectrum::{
    dynkin_action_matrix, eigenvalues, image_dimension, is_diagonalizable,
};
use descent_core::scalars::{CyclotomicField, Integers, LaurentPoly, LaurentRing, Rationals, Ring};

use output::{emit, json_to_string, OutputFormat};
use qmode::QMode;

#[derive(Parser)]
#[command(
    name = "descent",
    version,
    about = "Exact computations in the descent algebra of the symmetric group",
    after_help = "Q MODES:\n    symbolic   keep q as a polynomial variable\n    rat:a/b    an exact rational value\n    root:p     a primitive p-th root of unity\n    int:k      shorthand for rat:k"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized verification suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker-pool size for verification (0 = one worker per CPU)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Override the documented per-command caps on n
    #[arg(long = "unsafe-no-cap", global = true)]
    unsafe_no_cap: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Expand V_n^(q) B_I in the B basis (cap: n <= 12)
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        q: String,
        /// Members of I, e.g. "1,3" (empty for the empty set)
        #[arg(long, default_value = "")]
        i: String,
    },
    /// The product B_J · B_I in the B basis (cap: n <= 10)
    Multiply {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        i: String,
        #[arg(long, default_value = "")]
        j: String,
    },
    /// The eigenvalue family e_I of the action of V_n^(q) (cap: n <= 12)
    Eigenvalues {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        q: String,
    },
    /// Exact dimension of the image V_n^(q) Σ_n over Q(zeta_p) against the
    /// order-p Fibonacci number (caps: n <= 9, 2 <= p <= 12)
    Rank {
        #[arg(long)]
        n: usize,
        /// Must be a root-of-unity mode, root:p
        #[arg(long)]
        q: String,
        /// Also write the action matrix to this path (in --format)
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Table of the order-p Fibonacci numbers s_n^(p) (cap: max-n <= 30)
    Table {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Comma-separated orders, e.g. "2,3,4"
        #[arg(long, default_value = "2,3,4,5")]
        p_list: String,
        /// Append the composition count (1 for n = 0, else 2^(n-1))
        #[arg(long)]
        pow2: bool,
    },
    /// Run a verification suite ("all" runs every suite)
    Verify {
        /// One of: all, mackey-oracle, vnq-threeway, involution, eigenvalues,
        /// zero-class, rank, peak, idempotence, product-form
        suite: String,
        /// Largest n to verify (each suite has a default and a hard cap)
        #[arg(long)]
        n_cap: Option<usize>,
    },
    /// Diagonalizability probe for the action of V_n^(q); exploratory, the
    /// question is open (caps: n <= 8, field q modes only)
    DiagProbe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: String,
        /// Also write the action matrix to this path (in --format)
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
}

pub enum CliError {
    /// Bad arguments or exceeded caps: exit 2.
    Usage(String),
    /// A verification suite found a counterexample: exit 1.
    Verification,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification) => ExitCode::from(1),
    }
}

fn check_cap(what: &str, value: usize, cap: usize, no_cap: bool) -> Result<(), CliError> {
    if value > cap && !no_cap {
        return Err(CliError::Usage(format!(
            "{what} = {value} exceeds the documented cap {cap} (use --unsafe-no-cap to override)"
        )));
    }
    Ok(())
}

fn parse_set(n: usize, text: &str) -> Result<SubsetOfRanks, CliError> {
    let mut members = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse set member '{part}'")))?;
        if v < 1 || v >= n {
            return Err(CliError::Usage(format!(
                "set member {v} outside [n-1] = [{}]",
                n.saturating_sub(1)
            )));
        }
        members.push(v);
    }
    Ok(SubsetOfRanks::from_members(n, &members))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Expand { n, q, i } => {
            if n < 1 {
                return Err(CliError::Usage("expand needs n >= 1".into()));
            }
            check_cap("n", n, 12, cli.unsafe_no_cap)?;
            let qmode = QMode::parse(&q).map_err(CliError::Usage)?;
            let i = parse_set(n, &i)?;
            let desc = qmode.describe();
            let (json_val, csv_val) = match &qmode {
                QMode::Symbolic => {
                    let ring = LaurentRing;
                    let f = dynkin_action_on_b(&ring, n, &LaurentPoly::variable(), &i);
                    (output::sigma_json(&ring, &f, &desc), output::sigma_csv(&ring, &f)?)
                }
                QMode::Root(p) => {
                    let field = CyclotomicField::new(*p);
                    let f = dynkin_action_on_b(&field, n, &field.zeta(), &i);
                    (output::sigma_json(&field, &f, &desc), output::sigma_csv(&field, &f)?)
                }
                _ => {
                    let ring = Rationals;
                    let value = qmode.as_rational().expect("numeric mode");
                    let f = dynkin_action_on_b(&ring, n, &value, &i);
                    (output::sigma_json(&ring, &f, &desc), output::sigma_csv(&ring, &f)?)
                }
            };
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }

        Command::Multiply { n, i, j } => {
            if n < 1 {
                return Err(CliError::Usage("multiply needs n >= 1".into()));
            }
            check_cap("n", n, 10, cli.unsafe_no_cap)?;
            let i = parse_set(n, &i)?;
            let j = parse_set(n, &j)?;
            let ring = Integers;
            let f = multiply_b(&i, &j);
            let json_val = output::sigma_json(&ring, &f, "int:1");
            let csv_val = output::sigma_csv(&ring, &f)?;
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }

        Command::Eigenvalues { n, q } => {
            if n < 1 {
                return Err(CliError::Usage("eigenvalues needs n >= 1".into()));
            }
            check_cap("n", n, 12, cli.unsafe_no_cap)?;
            let qmode = QMode::parse(&q).map_err(CliError::Usage)?;
            let desc = qmode.describe();
            let (json_val, csv_val) = match &qmode {
                QMode::Symbolic => {
                    let ring = LaurentRing;
                    let vals = eigenvalues(&ring, n, &LaurentPoly::variable());
                    (
                        output::values_json(&ring, n, &desc, &vals),
                        output::values_csv(&ring, &vals)?,
                    )
                }
                QMode::Root(p) => {
                    let field = CyclotomicField::new(*p);
                    let vals = eigenvalues(&field, n, &field.zeta());
                    (
                        output::values_json(&field, n, &desc, &vals),
                        output::values_csv(&field, &vals)?,
                    )
                }
                _ => {
                    let ring = Rationals;
                    let value = qmode.as_rational().expect("numeric mode");
                    let vals = eigenvalues(&ring, n, &value);
                    (
                        output::values_json(&ring, n, &desc, &vals),
                        output::values_csv(&ring, &vals)?,
                    )
                }
            };
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }

        Command::Rank { n, q, dump_matrix } => {
            if n < 1 {
                return Err(CliError::Usage("rank needs n >= 1".into()));
            }
            check_cap("n", n, 9, cli.unsafe_no_cap)?;
            let qmode = QMode::parse(&q).map_err(CliError::Usage)?;
            let QMode::Root(p) = qmode else {
                return Err(CliError::Usage(
                    "rank needs a root-of-unity mode, --q root:p".into(),
                ));
            };
            if p < 2 {
                return Err(CliError::Usage("rank needs p >= 2 (p = 1 means q = 1)".into()));
            }
            check_cap("p", p, 12, cli.unsafe_no_cap)?;
            if let Some(path) = &dump_matrix {
                let field = CyclotomicField::new(p);
                let m = dynkin_action_matrix(&field, n, &field.zeta());
                let desc = format!("root:{p}");
                let content = match cli.format {
                    OutputFormat::Json => {
                        json_to_string(&output::matrix_json(&field, n, &desc, &m))
                    }
                    OutputFormat::Csv => output::matrix_csv(&field, &m)?,
                };
                emit(&Some(path.clone()), &content)?;
            }
            let rank = image_dimension(n, p);
            let fib = fibonacci_order(n, p) as usize;
            let json_val = json!({
                "n": n,
                "p": p,
                "rank": rank,
                "fibonacci": fib,
                "match": rank == fib,
            });
            let mut w = output::csv_writer();
            w.write_record(["n", "p", "rank", "fibonacci", "match"]).unwrap();
            w.write_record([
                n.to_string(),
                p.to_string(),
                rank.to_string(),
                fib.to_string(),
                (rank == fib).to_string(),
            ])
            .unwrap();
            let csv_val = output::finish_csv(w)?;
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }

        Command::Table { max_n, p_list, pow2 } => {
            check_cap("max-n", max_n, 30, cli.unsafe_no_cap)?;
            let mut orders = Vec::new();
            for part in p_list.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let p: usize = part
                    .parse()
                    .map_err(|_| CliError::Usage(format!("cannot parse order '{part}'")))?;
                if p < 2 {
                    return Err(CliError::Usage("table orders need p >= 2".into()));
                }
                orders.push(p);
            }
            if orders.is_empty() {
                return Err(CliError::Usage("table needs at least one order".into()));
            }
            let comp_count = |n: usize| if n == 0 { 1u64 } else { 1u64 << (n - 1) };
            let rows: Vec<serde_json::Value> = (0..=max_n)
                .map(|n| {
                    let values: Vec<u64> = orders.iter().map(|&p| fibonacci_order(n, p)).collect();
                    if pow2 {
                        json!({"n": n, "values": values, "compositions": comp_count(n)})
                    } else {
                        json!({"n": n, "values": values})
                    }
                })
                .collect();
            let json_val = json!({"max_n": max_n, "p": orders, "rows": rows});
            let mut w = output::csv_writer();
            let mut header: Vec<String> = vec!["n".into()];
            header.extend(orders.iter().map(|p| format!("s^({p})")));
            if pow2 {
                header.push("compositions".into());
            }
            w.write_record(&header).unwrap();
            for n in 0..=max_n {
                let mut rec: Vec<String> = vec![n.to_string()];
                rec.extend(orders.iter().map(|&p| fibonacci_order(n, p).to_string()));
                if pow2 {
                    rec.push(comp_count(n).to_string());
                }
                w.write_record(&rec).unwrap();
            }
            let csv_val = output::finish_csv(w)?;
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }

        Command::Verify { suite, n_cap } => {
            let outcome = verify::run(&suite, n_cap, cli.seed, cli.jobs, cli.unsafe_no_cap)
                .map_err(CliError::Usage)?;
            match outcome {
                Ok(reports) => {
                    for r in &reports {
                        println!("suite {}: PASS ({} cases)", r.name, r.cases);
                    }
                    Ok(())
                }
                Err(ce) => {
                    println!("{}", json_to_string(&ce.to_json()).trim_end());
                    Err(CliError::Verification)
                }
            }
        }

        Command::DiagProbe { n, q, dump_matrix } => {
            if n < 1 {
                return Err(CliError::Usage("diag-probe needs n >= 1".into()));
            }
            check_cap("n", n, 8, cli.unsafe_no_cap)?;
            let qmode = QMode::parse(&q).map_err(CliError::Usage)?;
            let desc = qmode.describe();
            let diagonalizable = match &qmode {
                QMode::Symbolic => {
                    return Err(CliError::Usage(
                        "diag-probe needs a field value of q (rat:a/b, int:k or root:p)".into(),
                    ));
                }
                QMode::Root(p) => {
                    let field = CyclotomicField::new(*p);
                    if let Some(path) = &dump_matrix {
                        let m = dynkin_action_matrix(&field, n, &field.zeta());
                        let content = match cli.format {
                            OutputFormat::Json => {
                                json_to_string(&output::matrix_json(&field, n, &desc, &m))
                            }
                            OutputFormat::Csv => output::matrix_csv(&field, &m)?,
                        };
                        emit(&Some(path.clone()), &content)?;
                    }
                    is_diagonalizable(&field, n, &field.zeta())
                }
                _ => {
                    let field = Rationals;
                    let value = qmode.as_rational().expect("numeric mode");
                    if let Some(path) = &dump_matrix {
                        if field.is_zero(&value) {
                            return Err(CliError::Usage(
                                "the action at q = 0 is the identity; no matrix to dump".into(),
                            ));
                        }
                        let m = dynkin_action_matrix(&field, n, &value);
                        let content = match cli.format {
                            OutputFormat::Json => {
                                json_to_string(&output::matrix_json(&field, n, &desc, &m))
                            }
                            OutputFormat::Csv => output::matrix_csv(&field, &m)?,
                        };
                        emit(&Some(path.clone()), &content)?;
                    }
                    is_diagonalizable(&field, n, &value)
                }
            };
            let json_val = json!({"n": n, "q": desc, "diagonalizable": diagonalizable});
            let mut w = output::csv_writer();
            w.write_record(["n", "q", "diagonalizable"]).unwrap();
            w.write_record([n.to_string(), desc.clone(), diagonalizable.to_string()])
                .unwrap();
            let csv_val = output::finish_csv(w)?;
            emit_formatted(&cli.format, &cli.out, json_val, csv_val)
        }
    }
}

fn emit_formatted(
    format: &OutputFormat,
    out: &Option<PathBuf>,
    json_val: serde_json::Value,
    csv_val: String,
) -> Result<(), CliError> {
    let content = match format {
        OutputFormat::Json => json_to_string(&json_val),
        OutputFormat::Csv => csv_val,
    };
    emit(out, &content)
}
