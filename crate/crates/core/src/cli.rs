//! Command-line front end.
//!
//! Every invocation writes exactly one JSON record (or, for `table` and
//! `diff`, optionally CSV) to stdout. Exit codes: 0 success, 1 I/O failure,
//! 2 bad input or arithmetic overflow, 3 internal consistency failure.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::egyptian::{self, PositiveRational};
use crate::error::Error;
use crate::general::{self, GeneralInstance};
use crate::solution::{equation_sides, OrderedPair, SolutionSet};
use crate::theorem::{self, SolveInstance};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest integer every JSON consumer can represent exactly (2^53 − 1).
const MAX_SAFE_INTEGER: u128 = (1 << 53) - 1;

#[derive(Debug, Parser)]
#[command(name = "unitfrac", version, about = "Write n/p as a sum of two unit fractions, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Emit every integer as a decimal string.
    #[arg(long, global = true)]
    strings: bool,

    /// Print a human-readable summary to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form solutions of n·x·y = p·(x + y).
    Solve {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Which case applies to (n, p).
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Check one pair against n·x·y = p·(x + y).
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Replay the uniqueness argument on one solution pair.
    Trace {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Number of solutions of n·x·y = m·(x + y) for any m.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Solve n·x·y = m·(x + y) with both general solvers.
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Cross-check the two general solvers over a grid.
    Diff {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        m_max: u64,
    },
    /// Greedy unit-fraction expansion of num/den.
    Egyptian {
        #[arg(long)]
        num: u64,
        #[arg(long)]
        den: u64,
    },
    /// Decomposition table of n/p for primes p in a range.
    Table {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Classify { .. } => "classify",
            Command::Verify { .. } => "verify",
            Command::Trace { .. } => "trace",
            Command::Count { .. } => "count",
            Command::Oracle { .. } => "oracle",
            Command::Diff { .. } => "diff",
            Command::Egyptian { .. } => "egyptian",
            Command::Table { .. } => "table",
        }
    }

    fn supports_csv(&self) -> bool {
        matches!(self, Command::Diff { .. } | Command::Table { .. })
    }
}

/// Integer encoder honoring the safe-integer and `--strings` rules.
#[derive(Debug, Clone, Copy)]
struct Num {
    strings: bool,
}

impl Num {
    fn int(self, v: impl Into<u128>) -> Value {
        let v = v.into();
        if self.strings || v > MAX_SAFE_INTEGER {
            Value::String(v.to_string())
        } else {
            json!(v as u64)
        }
    }

    fn big(self, v: &BigUint) -> Value {
        match u128::try_from(v) {
            Ok(small) => self.int(small),
            Err(_) => Value::String(v.to_string()),
        }
    }

    fn pairs(self, set: &SolutionSet) -> Value {
        self.raw_pairs(&set.raw_pairs())
    }

    fn raw_pairs(self, pairs: &[(u64, u64)]) -> Value {
        pairs.iter().map(|&(x, y)| json!([self.int(x), self.int(y)])).collect()
    }
}

/// What a command produced before it is wrapped into a record.
enum Outcome {
    Json { result: Value, diagnostics: Vec<String>, exit: i32 },
    Csv { rows: Vec<[String; 5]>, diagnostics: Vec<String>, exit: i32 },
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome::Json { result, diagnostics: Vec::new(), exit: EXIT_OK }
    }
}

const CSV_HEADER: &str = "n,p_or_m,case,x,y";

/// Runs one invocation, writing to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    io_code(out.write_all(rendered.as_bytes()))
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };

    let command = cli.command.name();
    if cli.format == Format::Csv && !cli.command.supports_csv() {
        let _ = writeln!(err, "error: --format csv is only available for `table` and `diff`");
        return EXIT_INPUT;
    }

    let num = Num { strings: cli.strings };
    let input = echo_input(&cli.command, num);
    let outcome = match execute(&cli.command, cli.format, num, err, cli.verbose) {
        Ok(outcome) => outcome,
        Err(e) => {
            let code = if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT };
            let _ = writeln!(err, "error: {e}");
            if cli.format == Format::Csv {
                return code;
            }
            Outcome::Json { result: Value::Null, diagnostics: vec![e.to_string()], exit: code }
        }
    };

    match outcome {
        Outcome::Json { result, diagnostics, exit } => {
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "input": input,
                "result": result,
                "diagnostics": diagnostics,
            });
            let text = serde_json::to_string(&record).expect("JSON values always serialize");
            match writeln!(out, "{text}").and_then(|_| out.flush()) {
                Ok(()) => exit,
                Err(e) => {
                    let _ = writeln!(err, "error: writing output: {e}");
                    EXIT_IO
                }
            }
        }
        Outcome::Csv { rows, diagnostics, exit } => {
            for d in &diagnostics {
                let _ = writeln!(err, "note: {d}");
            }
            let written = (|| -> io::Result<()> {
                writeln!(out, "{CSV_HEADER}")?;
                for row in &rows {
                    writeln!(out, "{}", row.join(","))?;
                }
                out.flush()
            })();
            match written {
                Ok(()) => exit,
                Err(e) => {
                    let _ = writeln!(err, "error: writing output: {e}");
                    EXIT_IO
                }
            }
        }
    }
}

fn io_code(r: io::Result<()>) -> i32 {
    if r.is_ok() {
        EXIT_OK
    } else {
        EXIT_IO
    }
}

fn echo_input(command: &Command, num: Num) -> Value {
    match *command {
        Command::Solve { n, p } | Command::Classify { n, p } => json!({ "n": num.int(n), "p": num.int(p) }),
        Command::Verify { n, p, x, y } | Command::Trace { n, p, x, y } => json!({
            "n": num.int(n), "p": num.int(p), "x": num.int(x), "y": num.int(y),
        }),
        Command::Count { n, m } | Command::Oracle { n, m } => json!({ "n": num.int(n), "m": num.int(m) }),
        Command::Diff { n_max, m_max } => json!({ "n_max": num.int(n_max), "m_max": num.int(m_max) }),
        Command::Egyptian { num: a, den: b } => json!({ "num": num.int(a), "den": num.int(b) }),
        Command::Table { n, p_min, p_max } => json!({
            "n": num.int(n), "p_min": num.int(p_min), "p_max": num.int(p_max),
        }),
    }
}

fn execute(
    command: &Command,
    format: Format,
    num: Num,
    err: &mut dyn Write,
    verbose: bool,
) -> Result<Outcome, Error> {
    let mut say = |msg: String| {
        if verbose {
            let _ = writeln!(err, "{msg}");
        }
    };

    let outcome = match *command {
        Command::Solve { n, p } => {
            let inst = SolveInstance::new(n, p)?;
            let set = theorem::solve(&inst)?;
            let case = set.regime().label();
            say(format!("{n}/{p}: {case}, {} solution(s)", set.len()));
            for pair in set.pairs() {
                say(format!("  {n}/{p} = 1/{} + 1/{}", pair.x, pair.y));
            }
            Outcome::ok(json!({
                "case": case,
                "count": set.len(),
                "pairs": num.pairs(&set),
            }))
        }
        Command::Classify { n, p } => {
            let tag = theorem::classify(&SolveInstance::new(n, p)?);
            say(format!("{n}/{p}: {tag}"));
            Outcome::ok(json!({ "case": tag.label(), "expected_count": tag.solution_count() }))
        }
        Command::Verify { n, p, x, y } => {
            let inst = SolveInstance::new(n, p)?;
            let pair = OrderedPair::from_raw(x, y)?;
            let holds = theorem::verify(&inst, &pair)?;
            let (lhs, rhs) = equation_sides(n, p, x, y)?;
            say(format!("{n}·{x}·{y} = {lhs}, {p}·({x} + {y}) = {rhs}: {holds}"));
            Outcome::ok(json!({ "solution": holds, "lhs": num.int(lhs), "rhs": num.int(rhs) }))
        }
        Command::Trace { n, p, x, y } => {
            let inst = SolveInstance::new(n, p)?;
            let pair = OrderedPair::from_raw(x, y)?;
            let trace = theorem::derive_trace(&inst, &pair)?;
            let dec = trace.decomposition;
            say(format!(
                "({x}, {y}) = {d}·({u1}, {u2}), branch {}",
                trace.branch.label(),
                d = dec.d,
                u1 = dec.u1,
                u2 = dec.u2
            ));
            let checks: Vec<Value> = trace
                .checks
                .iter()
                .map(|c| {
                    say(format!("  {}: {} = {}", c.relation.label(), c.lhs, c.rhs));
                    json!({
                        "relation": c.relation.label(),
                        "lhs": num.int(c.lhs),
                        "rhs": num.int(c.rhs),
                        "holds": c.holds(),
                    })
                })
                .collect();
            Outcome::ok(json!({
                "decomposition": {
                    "d": num.int(dec.d.get()),
                    "u1": num.int(dec.u1.get()),
                    "u2": num.int(dec.u2.get()),
                },
                "branch": trace.branch.label(),
                "v1": trace.v1.map(|v| num.int(v.get())),
                "delta": trace.delta.map(|v| num.int(v.get())),
                "checks": checks,
                "all_checks_hold": trace.all_checks_hold(),
            }))
        }
        Command::Count { n, m } => {
            let inst = GeneralInstance::new(n, m)?;
            let set = general::brute_force(&inst)?;
            say(format!("{n}/{m}: {} solution(s)", set.len()));
            Outcome::ok(json!({ "count": set.len(), "regime": set.regime().label() }))
        }
        Command::Oracle { n, m } => {
            let inst = GeneralInstance::new(n, m)?;
            let bf = general::brute_force(&inst)?;
            let dv = general::divisor_solve(&inst)?;
            let agree = bf.pairs() == dv.pairs();
            say(format!("{n}/{m}: {} solution(s), solvers agree: {agree}", bf.len()));
            let mut diagnostics = Vec::new();
            if !agree {
                diagnostics.push(format!("brute force and divisor solver disagree on {n}/{m}"));
            }
            Outcome::Json {
                result: json!({
                    "regime": bf.regime().label(),
                    "brute_force": num.pairs(&bf),
                    "divisor": num.pairs(&dv),
                    "agree": agree,
                }),
                diagnostics,
                exit: if agree { EXIT_OK } else { EXIT_INTERNAL },
            }
        }
        Command::Diff { n_max, m_max } => {
            let report = general::cross_check(n_max, m_max)?;
            let bad = report.disagreements.len();
            let summary = format!("{bad} disagreements");
            // The summary line is the point of the command, so it is not gated on --verbose.
            let _ = writeln!(err, "{summary} over {} instances", report.instances);
            let exit = if bad == 0 { EXIT_OK } else { EXIT_INTERNAL };
            let diagnostics: Vec<String> = report
                .disagreements
                .iter()
                .map(|d| format!("solvers disagree on {}/{}", d.n, d.m))
                .collect();
            match format {
                Format::Csv => {
                    let mut rows = Vec::new();
                    for d in &report.disagreements {
                        let tagged = d
                            .brute_force_only
                            .iter()
                            .map(|p| ("brute_force_only", p))
                            .chain(d.divisor_only.iter().map(|p| ("divisor_only", p)));
                        for (tag, &(x, y)) in tagged {
                            rows.push([d.n.to_string(), d.m.to_string(), tag.into(), x.to_string(), y.to_string()]);
                        }
                    }
                    Outcome::Csv { rows, diagnostics, exit }
                }
                Format::Json => {
                    let mismatches: Vec<Value> = report
                        .disagreements
                        .iter()
                        .map(|d| {
                            json!({
                                "n": num.int(d.n),
                                "m": num.int(d.m),
                                "brute_force_only": num.raw_pairs(&d.brute_force_only),
                                "divisor_only": num.raw_pairs(&d.divisor_only),
                            })
                        })
                        .collect();
                    Outcome::Json {
                        result: json!({
                            "instances": num.int(report.instances),
                            "solutions": num.int(report.solutions),
                            "disagreements": bad,
                            "mismatches": mismatches,
                            "summary": summary,
                        }),
                        diagnostics,
                        exit,
                    }
                }
            }
        }
        Command::Egyptian { num: a, den: b } => {
            let q = PositiveRational::from_u64(a, b)?;
            let expansion = egyptian::greedy(&q)?;
            let sum = expansion
                .sum()
                .ok_or_else(|| Error::Internal(format!("empty expansion for {q}")))?;
            if sum != q {
                return Err(Error::Internal(format!("expansion of {q} sums to {sum}")));
            }
            let terms: Vec<String> = expansion.terms.iter().map(ToString::to_string).collect();
            say(format!("{q} = {}", terms.join(" + ")));
            Outcome::ok(json!({
                "reduced": [num.big(q.num()), num.big(q.den())],
                "denominators": expansion.terms.iter().map(|t| num.big(t.den())).collect::<Vec<_>>(),
                "terms": expansion.terms.len(),
            }))
        }
        Command::Table { n, p_min, p_max } => {
            let table = egyptian::table(n, p_min, p_max)?;
            let diagnostics: Vec<String> = table
                .skipped
                .iter()
                .map(|p| format!("skipped p = {p}: divides n = {n}"))
                .collect();
            for row in &table.rows {
                say(format!(
                    "{n}/{}: {} {:?}",
                    row.instance.p(),
                    row.solutions.regime().label(),
                    row.solutions.raw_pairs()
                ));
            }
            match format {
                Format::Csv => {
                    let mut rows = Vec::new();
                    for row in &table.rows {
                        let p = row.instance.p().to_string();
                        let case = row.solutions.regime().label().to_string();
                        if row.solutions.is_empty() {
                            rows.push([n.to_string(), p.clone(), case.clone(), String::new(), String::new()]);
                        }
                        for &(x, y) in &row.solutions.raw_pairs() {
                            rows.push([n.to_string(), p.clone(), case.clone(), x.to_string(), y.to_string()]);
                        }
                    }
                    Outcome::Csv { rows, diagnostics, exit: EXIT_OK }
                }
                Format::Json => {
                    let rows: Vec<Value> = table
                        .rows
                        .iter()
                        .map(|row| {
                            json!({
                                "p": num.int(row.instance.p()),
                                "case": row.solutions.regime().label(),
                                "pairs": num.pairs(&row.solutions),
                            })
                        })
                        .collect();
                    let skipped: Vec<Value> = table.skipped.iter().map(|&p| num.int(p)).collect();
                    Outcome::Json {
                        result: json!({ "rows": rows, "skipped": skipped }),
                        diagnostics,
                        exit: EXIT_OK,
                    }
                }
            }
        }
    };
    Ok(outcome)
}
