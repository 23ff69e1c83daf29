//! Command-line front end. [`run`] parses arguments, executes one verb and
//! returns the exit code with everything to be printed, so it can be driven
//! in-process as well as from the binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::braiding::{gdd_of, BraidingMatrix, Gdd, GddDoc, MatrixDoc};
use crate::classify::{self, enumerate_rank2, enumerate_rank3, weyl_orbit, weyl_reflect, CaseLabel, ClassRow, Verdict};
use crate::error::Error;
use crate::modarith::{factorize, legendre, solve_quadratic, QuadCongruence};
use crate::nichols::{rank3_dimension, NicholsSummary};
use crate::realize::{realize_gdd, realize_matrix, Budget, Realization};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    I,
    Ii,
    Iii,
}

impl From<ClassArg> for CaseLabel {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::I => CaseLabel::Rank3I,
            ClassArg::Ii => CaseLabel::Rank3II,
            ClassArg::Iii => CaseLabel::Rank3III,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nichols-zn", version, about = "Nichols algebras of diagonal type over cyclic groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prime factorization of N.
    Factor { n: u64 },
    /// Legendre symbol (A/P) for an odd prime P.
    #[command(allow_negative_numbers = true)]
    Legendre { a: i64, p: u64 },
    /// Solutions of A·x² + B·x + C ≡ 0 (mod M).
    #[command(allow_negative_numbers = true)]
    Qsolve { a: i64, b: i64, c: i64, m: u64 },
    /// Find x, y with x_i·y_j matching a braiding matrix or a diagram.
    Realize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Classify one diagram, or enumerate all finite classes over ℤ_N.
    Classify {
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Weyl reflection of a braiding matrix at a vertex (1-based).
    Reflect {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Weyl orbit of a braiding matrix's diagram.
    Orbit {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = classify::DEFAULT_ORBIT_LIMIT)]
        max: usize,
    },
    /// Nichols algebra dimension of a rank-three class.
    Dim {
        #[arg(long = "class", value_enum)]
        class: ClassArg,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        m2: Option<u64>,
        /// Also list the PBW generators.
        #[arg(long)]
        summary: bool,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_parser = ["thm1.7", "thm2.2", "thm3.1", "corollaries"])]
        suite: String,
    },
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Matrix JSON file, or - for stdin.
    #[arg(long)]
    matrix: Option<String>,
    /// Diagram JSON file, or - for stdin.
    #[arg(long)]
    gdd: Option<String>,
    #[arg(long, requires = "gdd")]
    n: Option<u64>,
}

#[derive(Debug, clap::Args)]
struct OptionalInput {
    #[arg(long, conflicts_with = "gdd")]
    matrix: Option<String>,
    #[arg(long)]
    gdd: Option<String>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded(_)) { EXIT_BUDGET } else { EXIT_INVALID };
        Failure(code, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INVALID, msg.into())
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                _ => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut ctx = Ctx { format: cli.format, stdin, budget: Budget::from_env() };
    match ctx.execute(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure(code, msg)) => Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

struct Ctx<'a> {
    format: OutputFormat,
    stdin: &'a mut dyn Read,
    budget: Budget,
}

/// Rows for CSV and Markdown output.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "| {} |", self.header.join(" | "));
        let _ = writeln!(s, "|{}", "---|".repeat(self.header.len()));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
            let _ = writeln!(s, "| {} |", cells.join(" | "));
        }
        s
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Compact JSON, except that a non-empty top-level array of objects gets one
/// element per line.
fn json_document<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    match &value {
        Value::Array(items) if items.iter().any(Value::is_object) => {
            let lines: Vec<String> = items.iter().map(|i| format!("  {}", compact(i))).collect();
            format!("[\n{}\n]\n", lines.join(",\n"))
        }
        _ => compact(&value) + "\n",
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn witness_json(w: &Option<Realization>) -> String {
    w.as_ref().map(compact).unwrap_or_default()
}

const ROW_HEADER: [&str; 8] = ["n", "rank", "gdd", "label", "m", "m2", "dimension", "witness"];

fn class_row(r: &ClassRow) -> Vec<String> {
    vec![
        r.gdd.modulus().to_string(),
        r.gdd.rank().to_string(),
        compact(&r.gdd),
        r.label.to_string(),
        opt(r.m),
        opt(r.m2),
        opt(r.dimension),
        compact(&r.witness),
    ]
}

fn dimension_of(v: &Verdict) -> Option<u128> {
    v.label.is_rank3_class().then(|| rank3_dimension(v.label, v.m, v.m2).ok()).flatten()
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&self, value: &T, table: impl FnOnce() -> Table) -> String {
        match self.format {
            OutputFormat::Json => json_document(value),
            OutputFormat::Csv => table().csv(),
            OutputFormat::Md => table().markdown(),
        }
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let mut s = String::new();
        if path == "-" {
            self.stdin.read_to_string(&mut s).map_err(|e| invalid(format!("reading stdin: {e}")))?;
        } else {
            s = std::fs::read_to_string(path).map_err(|e| invalid(format!("reading {path}: {e}")))?;
        }
        Ok(s)
    }

    fn matrix(&mut self, path: &str) -> Result<BraidingMatrix, Failure> {
        let doc: MatrixDoc =
            serde_json::from_str(&self.read(path)?).map_err(|e| invalid(format!("malformed matrix JSON in {path}: {e}")))?;
        Ok(doc.into_matrix()?)
    }

    fn gdd(&mut self, path: &str, n: Option<u64>) -> Result<Gdd, Failure> {
        let doc: GddDoc =
            serde_json::from_str(&self.read(path)?).map_err(|e| invalid(format!("malformed diagram JSON in {path}: {e}")))?;
        Ok(doc.into_gdd_with(n)?)
    }

    fn execute(&mut self, cmd: Command) -> Result<(i32, String), Failure> {
        let out = match cmd {
            Command::Factor { n } => {
                if n == 0 {
                    return Err(Error::ZeroModulus.into());
                }
                let f = factorize(n);
                let pairs: Vec<(u64, u32)> = f.factors().to_vec();
                let value = json!({ "n": n, "factors": pairs, "display": f.to_string() });
                self.emit(&value, || {
                    let mut t = Table::new(&["p", "e"]);
                    pairs.iter().for_each(|(p, e)| t.push(vec![p.to_string(), e.to_string()]));
                    t
                })
            }
            Command::Legendre { a, p } => {
                let l = legendre(a, p)?;
                self.emit(&l, || {
                    let mut t = Table::new(&["a", "p", "legendre"]);
                    t.push(vec![a.to_string(), p.to_string(), l.to_string()]);
                    t
                })
            }
            Command::Qsolve { a, b, c, m } => {
                if m == 0 {
                    return Err(Error::ZeroModulus.into());
                }
                let s = solve_quadratic(&QuadCongruence::new(a, b, c, m))?;
                let xs: Vec<u64> = s.residues().to_vec();
                self.emit(&xs, || {
                    let mut t = Table::new(&["x"]);
                    xs.iter().for_each(|x| t.push(vec![x.to_string()]));
                    t
                })
            }
            Command::Realize { input } => {
                let w = match (&input.matrix, &input.gdd) {
                    (Some(path), _) => realize_matrix(&self.matrix(path)?, self.budget)?,
                    (_, Some(path)) => realize_gdd(&self.gdd(path, input.n)?, self.budget)?,
                    _ => return Err(invalid("one of --matrix or --gdd is required")),
                };
                let value = json!({ "realizable": w.is_some(), "witness": w });
                self.emit(&value, || {
                    let mut t = Table::new(&["realizable", "x", "y"]);
                    let (x, y) = w.as_ref().map(|w| (compact(&w.x), compact(&w.y))).unwrap_or_default();
                    t.push(vec![w.is_some().to_string(), x, y]);
                    t
                })
            }
            Command::Classify { input, rank, enumerate } => self.classify(input, rank, enumerate)?,
            Command::Reflect { matrix, vertex } => {
                let b = self.matrix(&matrix)?;
                if vertex == 0 || vertex > b.rank() {
                    return Err(invalid(format!("vertex {vertex} out of range 1..={}", b.rank())));
                }
                let r = weyl_reflect(&b, vertex - 1).map_err(|e| match e {
                    Error::ReflectionUndefined(i) => invalid(format!("reflection undefined at vertex {}", i + 1)),
                    other => other.into(),
                })?;
                self.emit(&r, || {
                    let mut t = Table::new(&["row", "exponents"]);
                    for (i, row) in r.rows().iter().enumerate() {
                        t.push(vec![(i + 1).to_string(), compact(row)]);
                    }
                    t
                })
            }
            Command::Orbit { matrix, max } => {
                let b = self.matrix(&matrix)?;
                let orbit = weyl_orbit(&b, max.max(1));
                let value = json!({ "size": orbit.len(), "truncated": orbit.truncated, "members": orbit.members });
                self.emit(&value, || {
                    let mut t = Table::new(&["n", "rank", "gdd"]);
                    for g in &orbit.members {
                        t.push(vec![g.modulus().to_string(), g.rank().to_string(), compact(g)]);
                    }
                    t
                })
            }
            Command::Dim { class, m, m2, summary } => {
                let label = CaseLabel::from(class);
                if summary {
                    let s = NicholsSummary::new(label, m, m2)?;
                    self.emit(&s, || {
                        let mut t = Table::new(&["label", "dimension", "pbw"]);
                        let words: Vec<String> = s.pbw.iter().map(|w| w.to_string()).collect();
                        t.push(vec![label.to_string(), opt(s.dimension), words.join(" ")]);
                        t
                    })
                } else {
                    let d = rank3_dimension(label, m, m2)?;
                    self.emit(&d, || {
                        let mut t = Table::new(&["label", "m", "m2", "dimension"]);
                        t.push(vec![label.to_string(), opt(m), opt(m2), d.to_string()]);
                        t
                    })
                }
            }
            Command::Verify { suite } => {
                let suite: Suite = suite.parse()?;
                let checks = run_suite(suite, self.budget)?;
                let failed = checks.iter().any(|c| !c.passed);
                let body = match self.format {
                    OutputFormat::Json => json_document(&checks),
                    _ => {
                        let mut t = Table::new(&["suite", "check", "result", "detail"]);
                        for c in &checks {
                            let r = if c.passed { "PASS" } else { "FAIL" };
                            t.push(vec![suite.to_string(), c.name.clone(), r.into(), c.detail.clone()]);
                        }
                        if self.format == OutputFormat::Csv { t.csv() } else { t.markdown() }
                    }
                };
                return Ok((if failed { EXIT_VERIFY_FAILED } else { EXIT_OK }, body));
            }
        };
        Ok((EXIT_OK, out))
    }

    fn classify(&mut self, input: OptionalInput, rank: Option<usize>, enumerate: bool) -> Result<String, Failure> {
        if enumerate {
            if input.matrix.is_some() || input.gdd.is_some() {
                return Err(invalid("--enumerate takes --rank and --n, not an input file"));
            }
            let n = input.n.ok_or_else(|| invalid("--enumerate needs --n"))?;
            let rows = match rank {
                Some(2) => enumerate_rank2(n, self.budget)?,
                Some(3) => enumerate_rank3(n, self.budget)?,
                Some(r) => return Err(invalid(format!("--rank must be 2 or 3, got {r}"))),
                None => return Err(invalid("--enumerate needs --rank")),
            };
            return Ok(self.emit(&rows, || {
                let mut t = Table::new(&ROW_HEADER);
                rows.iter().for_each(|r| t.push(class_row(r)));
                t
            }));
        }
        let g = match (&input.matrix, &input.gdd) {
            (Some(path), _) => {
                if input.n.is_some() {
                    return Err(invalid("--n applies to --gdd input only"));
                }
                gdd_of(&self.matrix(path)?)
            }
            (_, Some(path)) => self.gdd(path, input.n)?,
            _ => return Err(invalid("classify needs --matrix, --gdd, or --enumerate with --rank and --n")),
        };
        if let Some(r) = rank.filter(|&r| r != g.rank()) {
            return Err(invalid(format!("--rank {r} does not match input rank {}", g.rank())));
        }
        let v = classify::classify(&g, self.budget)?;
        let dimension = dimension_of(&v);
        let value: Value = json!({
            "gdd": g,
            "label": v.label,
            "m": v.m,
            "m2": v.m2,
            "dimension": dimension,
            "witness": v.witness,
            "diagnostics": v.diagnostics,
        });
        Ok(self.emit(&value, || {
            let mut t = Table::new(&ROW_HEADER);
            t.push(vec![
                g.modulus().to_string(),
                g.rank().to_string(),
                compact(&g),
                v.label.to_string(),
                opt(v.m),
                opt(v.m2),
                opt(dimension),
                witness_json(&v.witness),
            ]);
            t
        }))
    }
}
