use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use alexq::classify::{classify_order, count_table, table1_report, ClassifyOptions};
use alexq::lambda::{identify_as_quotient, image_one_minus_t};
use alexq::linear::{linear_connected, linear_dual, linear_iso, linear_self_dual, n_cap, LinearError};
use alexq::notation::{parse_spec, Quandle, Spec};
use alexq::quandle::{brute_iso, theorem1_iso, theorem1_witness, IsoWitness, QuandleTable};

const DEFAULT_MAX_ORDER: usize = 15;

#[derive(Parser)]
#[command(name = "alexq", version, about = "Finite Alexander quandles: construction, isomorphism, classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Cayley table of a quandle.
    Build {
        #[arg(value_parser = spec_arg)]
        spec: Spec,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Check the quandle axioms; exits 1 with a witness triple on failure.
    Axioms {
        #[arg(value_parser = spec_arg)]
        spec: Spec,
    },
    /// Decide whether two quandles are isomorphic.
    Iso {
        #[arg(value_parser = spec_arg)]
        left: Spec,
        #[arg(value_parser = spec_arg)]
        right: Spec,
        /// Defaults to theorem1 for two modules and brute otherwise.
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Also print the isomorphism as a 0-indexed permutation line.
        #[arg(long)]
        witness: bool,
    },
    /// Print the dual quandle, or test whether it is isomorphic to the original.
    Dual {
        #[arg(value_parser = spec_arg)]
        spec: Spec,
        #[arg(long)]
        self_check: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Print the orbits of a quandle.
    Orbits {
        #[arg(value_parser = spec_arg)]
        spec: Spec,
    },
    /// Print the submodule (1 - t)^k M.
    Im1t {
        #[arg(value_parser = spec_arg)]
        spec: Spec,
        /// Name the submodule by a standard constructor.
        #[arg(long)]
        identify: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        power: u32,
    },
    /// Closed-form criteria for linear quandles Λ_n/(t - a).
    #[command(subcommand)]
    Linear(LinearCommand),
    /// List the Alexander quandles of one order up to isomorphism.
    Classify {
        n: usize,
        #[arg(long)]
        connected_only: bool,
        /// Enumerate every automorphism instead of one per conjugacy class.
        #[arg(long)]
        no_conjugacy_prune: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
    /// The (1 - t) images of the modules over (Z_2)^2, (Z_2)^3 and (Z_3)^2.
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Class counts for every order from 2 to --max.
    Table2 {
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        guard: Guard,
    },
}

#[derive(Subcommand)]
enum LinearCommand {
    Iso {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    Connected {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    Dual {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    Selfdual {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    Ncap {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
}

#[derive(Args)]
struct Guard {
    /// Allow orders above the limit (15, or QUANDLE_MAX_ORDER).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Theorem1,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Text,
}

enum Failure {
    Usage(String),
    Invalid(String),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Disagreement(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::Disagreement(m) => m,
        }
    }
}

/// `Ok(true)` exits 0, `Ok(false)` exits 1.
type Outcome = Result<bool, Failure>;

fn spec_arg(text: &str) -> Result<Spec, String> {
    parse_spec(text).map_err(|e| e.to_string())
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn load(spec: &Spec) -> Result<Quandle, Failure> {
    spec.resolve().map_err(|e| Failure::Invalid(format!("{spec}: {e}")))
}

/// Loads a spec and rejects tables that are not quandles.
fn load_quandle(spec: &Spec) -> Result<Quandle, Failure> {
    let q = load(spec)?;
    if let Quandle::Table(t) = &q {
        t.check_axioms().map_err(|v| Failure::Invalid(format!("{spec} is not a quandle: {v}")))?;
    }
    Ok(q)
}

fn render_table(t: &QuandleTable, format: TableFormat) -> String {
    match format {
        TableFormat::Json => t.to_json() + "\n",
        TableFormat::Text => t.to_text(),
    }
}

fn max_order() -> Result<usize, Failure> {
    match std::env::var("QUANDLE_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("QUANDLE_MAX_ORDER must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_guard(n: usize, guard: &Guard) -> Result<(), Failure> {
    let limit = max_order()?;
    if n > limit {
        if !guard.allow_large {
            return Err(Failure::Usage(format!(
                "order {n} exceeds the limit of {limit}; pass --allow-large or raise QUANDLE_MAX_ORDER"
            )));
        }
        eprintln!("warning: order {n} exceeds {limit}; automorphism counts grow quickly and this may be slow");
    }
    Ok(())
}

fn iso(left: &Spec, right: &Spec, method: Option<Method>, witness: bool) -> Outcome {
    let (a, b) = (load_quandle(left)?, load_quandle(right)?);
    let modules = a.module().zip(b.module());
    let method = method.unwrap_or(if modules.is_some() { Method::Theorem1 } else { Method::Brute });
    let theorem = |want_witness: bool| -> Result<(bool, Option<IsoWitness>), Failure> {
        let (m, n) = modules.ok_or_else(|| Failure::Invalid("the theorem1 method needs two module specs".into()))?;
        Ok(if want_witness {
            let w = theorem1_witness(m, n);
            (w.is_some(), w)
        } else {
            (theorem1_iso(m, n), None)
        })
    };
    let brute = || {
        let w = brute_iso(&a.table(), &b.table());
        (w.is_some(), w)
    };
    let (found, w) = match method {
        Method::Theorem1 => theorem(witness)?,
        Method::Brute => brute(),
        Method::Both => {
            let (t_found, t_w) = theorem(witness)?;
            let (b_found, b_w) = brute();
            if t_found != b_found {
                return Err(Failure::Disagreement(format!(
                    "methods disagree on {left} vs {right}: theorem1 says {t_found}, brute force says {b_found}"
                )));
            }
            (t_found, t_w.or(b_w))
        }
    };
    println!("{}", if found { "isomorphic" } else { "not isomorphic" });
    if let (true, Some(w)) = (witness, w) {
        if !w.verify(&a.table(), &b.table()) {
            return Err(Failure::Disagreement(format!("{} witness failed verification", w.method)));
        }
        println!("{}", w.to_line());
    }
    Ok(found)
}

fn linear(cmd: LinearCommand) -> Outcome {
    let lin = |e: LinearError| invalid(e);
    let modulus = |n: i64| -> Result<usize, Failure> {
        if n < 2 {
            Err(lin(LinearError::InvalidModulus(n)))
        } else {
            Ok(n as usize)
        }
    };
    let answer = match cmd {
        LinearCommand::Iso { n, a, b } => linear_iso(modulus(n)?, a, b).map_err(lin)?,
        LinearCommand::Connected { n, a } => linear_connected(modulus(n)?, a).map_err(lin)?,
        LinearCommand::Dual { n, a, b } => linear_dual(modulus(n)?, a, b).map_err(lin)?,
        LinearCommand::Selfdual { n, a } => linear_self_dual(modulus(n)?, a).map_err(lin)?,
        LinearCommand::Ncap { n, a } => {
            let n = modulus(n)?;
            println!("{}", n_cap(n, a));
            return Ok(true);
        }
    };
    println!("{answer}");
    Ok(answer)
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Build { spec, output, format } => {
            let t = load(&spec)?.table();
            let text = render_table(&t, format);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Axioms { spec } => {
            let t = load(&spec)?.table();
            match t.check_axioms() {
                Ok(()) => {
                    println!("ok: all quandle axioms hold (order {})", t.order());
                    Ok(true)
                }
                Err(v) => {
                    println!("{v}");
                    Ok(false)
                }
            }
        }
        Command::Iso { left, right, method, witness } => iso(&left, &right, method, witness),
        Command::Dual { spec, self_check, format } => {
            let t = load_quandle(&spec)?.table();
            let d = t.dual();
            if self_check {
                let same = brute_iso(&t, &d).is_some();
                println!("{}", if same { "self-dual" } else { "not self-dual" });
                Ok(same)
            } else {
                print!("{}", render_table(&d, format));
                Ok(true)
            }
        }
        Command::Orbits { spec } => {
            let t = load_quandle(&spec)?.table();
            let orbits = t.orbits();
            println!("orbits: {}", orbits.len());
            println!("connected: {}", orbits.len() == 1);
            for o in orbits {
                println!("{}", o.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            }
            Ok(true)
        }
        Command::Im1t { spec, identify, power } => {
            let q = load(&spec)?;
            let m = q.module().ok_or_else(|| Failure::Invalid("im1t needs a module spec, not a table".into()))?;
            let sub = image_one_minus_t(m, power);
            println!("order: {}", sub.order());
            println!("group: {}", sub.module().group());
            println!("members: {}", sub.members().iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            if identify {
                match identify_as_quotient(sub.module()) {
                    Some(s) => println!("identified: {} ({s})", s.pretty()),
                    None => println!("identified: none"),
                }
            }
            Ok(true)
        }
        Command::Linear(cmd) => linear(cmd),
        Command::Classify { n, connected_only, no_conjugacy_prune, format, guard } => {
            if n == 0 {
                return Err(Failure::Usage("order must be at least 1".into()));
            }
            check_guard(n, &guard)?;
            let mut report = classify_order(n, ClassifyOptions { prune: !no_conjugacy_prune });
            if connected_only {
                report.classes.retain(|c| c.connected);
            }
            match format {
                Format::Json => println!("{}", to_json(&report)),
                Format::Csv => {
                    println!("representative,name,connected,class_size");
                    for c in &report.classes {
                        println!("{},\"{}\",{},{}", c.representative, c.name, c.connected, c.class_size);
                    }
                }
                Format::Text => {
                    println!(
                        "order {}: {} classes, {} connected",
                        report.order, report.distinct_count, report.connected_count
                    );
                    for c in &report.classes {
                        let flag = if c.connected { "connected" } else { "" };
                        println!("  {:<36} {:<22} {:<9} {}", c.name, c.representative.to_string(), flag, c.class_size);
                    }
                }
            }
            Ok(true)
        }
        Command::Table1 { format } => {
            let rows = table1_report();
            match format {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "group": r.group.invariant_factors(),
                                "module": r.module.to_string(),
                                "module_name": r.module.pretty(),
                                "image": r.image.to_string(),
                                "image_name": r.image.pretty(),
                            })
                        })
                        .collect();
                    println!("{}", to_json(&v));
                }
                Format::Csv => {
                    println!("group,module,image");
                    for r in &rows {
                        println!("{},\"{}\",\"{}\"", r.group, r.module.pretty(), r.image.pretty());
                    }
                }
                Format::Text => {
                    for r in &rows {
                        println!("{:<12} {:<28} {}", r.group.to_string(), r.module.pretty(), r.image.pretty());
                    }
                }
            }
            Ok(true)
        }
        Command::Table2 { max, format, guard } => {
            if max < 2 {
                return Err(Failure::Usage("--max must be at least 2".into()));
            }
            check_guard(max, &guard)?;
            let rows = count_table(max);
            match format {
                Format::Json => println!("{}", to_json(&rows)),
                Format::Csv => {
                    println!("n,distinct,connected");
                    for r in &rows {
                        println!("{},{},{}", r.n, r.distinct, r.connected);
                    }
                }
                Format::Text => {
                    println!("{:>3} {:>9} {:>10}", "n", "distinct", "connected");
                    for r in &rows {
                        println!("{:>3} {:>9} {:>10}", r.n, r.distinct, r.connected);
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
