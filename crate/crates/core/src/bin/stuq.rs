//! `stuq`: command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 axiom/closure violation or
//! failed expectation, 3 unknown fixture.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use stuquandle::algebra::{affine_stuquandle, alexander_stuquandle, AffineParams, AlexanderParams, AlgebraError, Subset};
use stuquandle::catalog::{self, CatalogError, Fixture};
use stuquandle::formats::{self, FormatError};
use stuquandle::polynomial::{sstqp, stqp, PolynomialError};
use stuquandle::presentation::{compare_jobs, enumerate_colorings_jobs, phi_of_colorings, Presentation};
use stuquandle::rna::{folding_invariant_jobs, to_presentation};
use stuquandle::FiniteStuquandle;

#[derive(Parser)]
#[command(name = "stuq", version, about = "Finite stuquandles and stuck-link invariants")]
struct Cli {
    /// Worker threads for coloring search
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print a JSON run report instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Report elapsed time (stderr, and in the JSON report)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check all axioms of a stuquandle file
    Verify { stuquandle: String },
    /// Emit a stuquandle file from a parametric family
    #[command(subcommand)]
    Make(Make),
    /// Stuquandle polynomial
    Poly { stuquandle: String },
    /// Substuquandle polynomial of a subset
    Subpoly {
        stuquandle: String,
        /// Comma-separated elements, e.g. 1,3
        #[arg(long)]
        subset: String,
    },
    /// List all colorings and their number
    Color { presentation: String, stuquandle: String },
    /// Substuquandle polynomial invariant
    Phi { presentation: String, stuquandle: String },
    /// Compare two presentations by counting and phi invariants
    Compare { first: String, second: String, stuquandle: String },
    /// Arc diagrams of RNA foldings
    #[command(subcommand)]
    Rna(Rna),
    /// Built-in fixtures
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum Make {
    /// x*y = ax+(1-a)y with R1..R4 from b and e
    Affine {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
    },
    /// Alexander family over Z_n
    Alexander {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        /// a,b,c,d,e,f
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Subcommand)]
enum Rna {
    /// Print the stuck-link presentation of an arc diagram
    Convert { arc_diagram: String },
    /// Counting and phi invariants of an arc diagram
    Phi { arc_diagram: String, stuquandle: String },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { id: String },
    /// Export every fixture, reload it and recompute all expectations
    Check {
        /// Keep the exported files here instead of a temporary directory
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

enum Failure {
    Malformed(String),
    Violation(String),
    Unknown(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Unknown(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Violation(m) | Failure::Unknown(m) => m,
        }
    }
}

fn algebra_failure(e: AlgebraError) -> Failure {
    match e {
        AlgebraError::AxiomViolation { .. } | AlgebraError::NonBijectiveColumn(_) => Failure::Violation(e.to_string()),
        other => Failure::Malformed(other.to_string()),
    }
}

fn format_failure(source: &str, e: FormatError) -> Failure {
    match e {
        FormatError::Algebra(a) => match algebra_failure(a) {
            Failure::Violation(m) => Failure::Violation(format!("{source}: {m}")),
            other => Failure::Malformed(format!("{source}: {}", other.message())),
        },
        other => Failure::Malformed(format!("{source}: {other}")),
    }
}

/// Output of a command: plain text plus named values for the JSON report.
#[derive(Default)]
struct Outcome {
    text: String,
    outputs: BTreeMap<String, Value>,
    status: Option<Failure>,
}

impl Outcome {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.to_string(), v.into());
    }
}

struct Inputs {
    digests: Vec<Value>,
}

impl Inputs {
    /// Reads a file, or a built-in fixture written as `catalog:<id>`.
    fn read(&mut self, arg: &str) -> Result<String, Failure> {
        let text = match arg.strip_prefix("catalog:") {
            Some(id) => {
                let f = catalog::fixture(id).map_err(|e| Failure::Unknown(e.to_string()))?;
                formats::payload_to_json(&f.payload)
            }
            None => fs::read_to_string(arg).map_err(|e| Failure::Malformed(format!("{arg}: {e}")))?,
        };
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.digests.push(json!({ "source": arg, "sha256": digest }));
        Ok(text)
    }

    fn stuquandle(&mut self, arg: &str) -> Result<FiniteStuquandle, Failure> {
        let text = self.read(arg)?;
        formats::parse_stuquandle(&text).map_err(|e| format_failure(arg, e))
    }

    /// JSON presentation, JSON crossing diagram, or the text form.
    fn presentation(&mut self, arg: &str) -> Result<Presentation, Failure> {
        let text = self.read(arg)?;
        if text.trim_start().starts_with('{') {
            formats::parse_presentation_or_diagram(&text).map_err(|e| format_failure(arg, e))
        } else {
            Presentation::parse_text(&text).map_err(|e| Failure::Malformed(format!("{arg}: {e}")))
        }
    }

    fn arc_diagram(&mut self, arg: &str) -> Result<stuquandle::ArcDiagram, Failure> {
        let text = self.read(arg)?;
        formats::parse_arc_diagram(&text).map_err(|e| format_failure(arg, e))
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| Failure::Malformed(format!("bad number `{s}`: {e}"))))
        .collect()
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let jobs = cli.jobs.max(1);
    let mut out = Outcome::default();
    match &cli.command {
        Command::Verify { stuquandle } => {
            let text = inputs.read(stuquandle)?;
            let raw = formats::parse_stuquandle_tables(&text).map_err(|e| format_failure(stuquandle, e))?;
            let n = raw.star.size();
            raw.build().map_err(algebra_failure)?;
            out.line(format!("ok: order {n}, all 13 axioms hold"));
            out.put("valid", true);
        }
        Command::Make(m) => {
            let x = match m {
                Make::Affine { n, a, b, e } => affine_stuquandle(&AffineParams { n: *n, a: *a, b: *b, e: *e }),
                Make::Alexander { n, t, v, coeffs } => {
                    let c = parse_list(coeffs)?;
                    let [a, b, cc, d, e, f] = c[..] else {
                        return Err(Failure::Malformed(format!("--coeffs needs six values, got {}", c.len())));
                    };
                    alexander_stuquandle(&AlexanderParams { n: *n, t: *t, v: *v, a, b, c: cc, d, e, f })
                }
            }
            .map_err(|e| match e {
                AlgebraError::NonUnit { .. } => Failure::Malformed(e.to_string()),
                other => algebra_failure(other),
            })?;
            let text = formats::stuquandle_to_json(&x);
            out.text.push_str(&text);
            out.put("stuquandle", serde_json::from_str::<Value>(&text).expect("emitted JSON parses"));
        }
        Command::Poly { stuquandle } => {
            let x = inputs.stuquandle(stuquandle)?;
            let p = stqp(&x).to_string();
            out.line(&p);
            out.put("stqp", p);
        }
        Command::Subpoly { stuquandle, subset } => {
            let x = inputs.stuquandle(stuquandle)?;
            let members = parse_list(subset)?;
            if members.iter().any(|&m| m < 0) {
                return Err(Failure::Malformed(format!("negative element in `{subset}`")));
            }
            let s = Subset::new(&x, members.into_iter().map(|m| m as usize))
                .map_err(|e| Failure::Malformed(e.to_string()))?;
            match sstqp(&s) {
                Ok(p) => {
                    out.line(p.to_string());
                    out.put("sstqp", p.to_string());
                }
                Err(PolynomialError::NotClosed(_)) => {
                    return Err(Failure::Violation(format!(
                        "subset {s} is not a substuquandle; its closure is {}",
                        s.closure()
                    )));
                }
                Err(e) => return Err(Failure::Malformed(e.to_string())),
            }
        }
        Command::Color { presentation, stuquandle } => {
            let p = inputs.presentation(presentation)?;
            let x = inputs.stuquandle(stuquandle)?;
            let cs = enumerate_colorings_jobs(&p, &x, jobs);
            let rendered: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            for r in &rendered {
                out.line(r);
            }
            out.line(format!("count: {}", cs.len()));
            out.put("colorings", rendered);
            out.put("count", cs.len());
        }
        Command::Phi { presentation, stuquandle } => {
            let p = inputs.presentation(presentation)?;
            let x = inputs.stuquandle(stuquandle)?;
            let cs = enumerate_colorings_jobs(&p, &x, jobs);
            let phi = phi_of_colorings(&cs, &x).to_string();
            out.line(&phi);
            out.put("phi", phi);
            out.put("count", cs.len());
        }
        Command::Compare { first, second, stuquandle } => {
            let p1 = inputs.presentation(first)?;
            let p2 = inputs.presentation(second)?;
            let x = inputs.stuquandle(stuquandle)?;
            let r = compare_jobs(&p1, &p2, &x, jobs);
            out.line(r.to_string());
            out.put("counting", r.counting.to_vec());
            out.put("phi", r.phi.to_vec());
            out.put("verdict", r.verdict.to_string());
        }
        Command::Rna(Rna::Convert { arc_diagram }) => {
            let a = inputs.arc_diagram(arc_diagram)?;
            let p = to_presentation(&a).map_err(|e| Failure::Malformed(e.to_string()))?;
            out.text.push_str(&p.to_text());
            out.put("presentation", p.to_text());
        }
        Command::Rna(Rna::Phi { arc_diagram, stuquandle }) => {
            let a = inputs.arc_diagram(arc_diagram)?;
            let x = inputs.stuquandle(stuquandle)?;
            let r = folding_invariant_jobs(&a, &x, jobs).map_err(|e| Failure::Malformed(e.to_string()))?;
            out.line(format!("counting: {}", r.counting));
            out.line(format!("phi: {}", r.phi));
            out.put("counting", r.counting);
            out.put("phi", r.phi.to_string());
        }
        Command::Catalog(CatalogCmd::List) => {
            let mut ids = Vec::new();
            for id in catalog::list_fixtures() {
                let f = catalog::fixture(id).expect("listed fixture exists");
                out.line(format!("{id}\t{}", f.kind));
                ids.push(id);
            }
            out.put("fixtures", ids);
        }
        Command::Catalog(CatalogCmd::Show { id }) => {
            let f = catalog::fixture(id).map_err(|e: CatalogError| Failure::Unknown(e.to_string()))?;
            let payload = formats::payload_to_json(&f.payload);
            out.line(format!("id: {}", f.id));
            out.line(format!("kind: {}", f.kind));
            out.text.push_str(&payload);
            let mut expected = Vec::new();
            for e in &f.expected {
                let head = match &e.target {
                    Some(t) => format!("{} [{t}]", e.operation),
                    None => e.operation.to_string(),
                };
                out.line(format!("expect {head}:"));
                for l in e.value.lines() {
                    out.line(format!("  {l}"));
                }
                expected.push(json!({ "operation": e.operation.name(), "target": e.target, "value": e.value }));
            }
            out.put("kind", f.kind.to_string());
            out.put("payload", serde_json::from_str::<Value>(&payload).expect("payload JSON parses"));
            out.put("expected", expected);
        }
        Command::Catalog(CatalogCmd::Check { dir }) => {
            let (dir, cleanup) = match dir {
                Some(d) => (d.clone(), false),
                None => (std::env::temp_dir().join(format!("stuq-catalog-{}", std::process::id())), true),
            };
            let result = catalog_check(&dir, &mut out);
            if cleanup {
                let _ = fs::remove_dir_all(&dir);
            }
            result?;
        }
    }
    Ok(out)
}

fn catalog_check(dir: &Path, out: &mut Outcome) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Malformed(format!("{}: {e}", dir.display())))?;
    let mut reloaded = Vec::new();
    for f in catalog::all_fixtures() {
        let path = dir.join(format!("{}.json", f.id));
        fs::write(&path, formats::payload_to_json(&f.payload))
            .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
        let text = fs::read_to_string(&path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
        let payload = formats::payload_from_json(f.kind, &text).map_err(|e| format_failure(&path.display().to_string(), e))?;
        reloaded.push(Fixture { payload, ..f });
    }
    let outcomes = catalog::check(&reloaded);
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let mut lines = Vec::new();
    for o in &outcomes {
        out.line(o.to_string());
        lines.push(o.to_string());
    }
    out.line(format!("{passed}/{} expectations passed", outcomes.len()));
    out.put("results", lines);
    out.put("passed", passed);
    out.put("total", outcomes.len());
    out.put("fixtures", reloaded.len());
    if passed != outcomes.len() {
        out.status = Some(Failure::Violation(format!("{} expectations failed", outcomes.len() - passed)));
    }
    Ok(())
}

/// Writes to stdout; a reader that hangs up early is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let mut inputs = Inputs { digests: Vec::new() };
    let result = run(&cli, &mut inputs);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    if cli.timing {
        eprintln!("elapsed: {elapsed_ms:.3} ms");
    }
    match result {
        Ok(outcome) => {
            if cli.json {
                let mut report = json!({
                    "command": std::env::args().skip(1).collect::<Vec<_>>(),
                    "inputs": inputs.digests,
                    "outputs": outcome.outputs,
                });
                if cli.timing {
                    report["timing_ms"] = json!(elapsed_ms);
                }
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")));
            } else {
                emit(&outcome.text);
            }
            match outcome.status {
                Some(f) => {
                    eprintln!("error: {}", f.message());
                    ExitCode::from(f.code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
