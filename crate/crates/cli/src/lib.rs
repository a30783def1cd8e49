//! `eqschub`: equivariant Schubert calculus on `Gr(k, n)` from the command line.
//!
//! Exit status is 0 on success, 1 on usage or domain errors and 2 when a
//! verification finds a failure.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use eqschub_core::gkm::{
    chern_class_taut, expansion_is_positive, gkm_check, gkm_graph, integrate, kempf_laksov_class,
    opposite_schubert_class, schubert_class, structure_constants, EqClass, TautologicalBundle,
};
use eqschub_core::schur::{double_schur, ordinary_schur, restrict_schur};
use eqschub_core::verify::{self, Suite};
use eqschub_core::{BasisExpansion, Error, GrassmannianShape, Partition};

mod expr;

pub use expr::parse_class;

#[derive(Parser, Debug)]
#[command(name = "eqschub", version, about = "Exact torus-equivariant Schubert calculus on Grassmannians")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ShapeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

impl ShapeArgs {
    fn shape(self) -> Result<GrassmannianShape, Error> {
        GrassmannianShape::new(self.n, self.k)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Double Schur function, its restriction to a fixed point, or the ordinary Schur polynomial
    Schur {
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        k: usize,
        /// Specialize at the fixed point of this partition (needs --n)
        #[arg(long, value_name = "PARTITION")]
        restrict_to: Option<Partition>,
        #[arg(long)]
        n: Option<usize>,
        /// Set all u variables to zero
        #[arg(long, conflicts_with = "restrict_to")]
        ordinary: bool,
    },
    /// Fixed-point restrictions of a Schubert class or class expression
    Class {
        #[command(flatten)]
        gr: ShapeArgs,
        #[arg(long, required_unless_present = "class")]
        shape: Option<Partition>,
        /// Use the opposite Schubert class
        #[arg(long, requires = "shape")]
        opposite: bool,
        #[arg(long, conflicts_with = "shape")]
        class: Option<String>,
    },
    /// Pointwise product of two Schubert classes
    Mult {
        #[command(flatten)]
        gr: ShapeArgs,
        #[arg(long)]
        a: Partition,
        #[arg(long)]
        b: Partition,
    },
    /// Structure constants of a product of two Schubert classes, with a positivity report
    Lr {
        #[command(flatten)]
        gr: ShapeArgs,
        #[arg(long)]
        a: Partition,
        #[arg(long)]
        b: Partition,
    },
    /// Push a class forward to a point
    Integrate {
        #[command(flatten)]
        gr: ShapeArgs,
        #[arg(long)]
        class: String,
    },
    /// Check the edge divisibility conditions for a class
    GkmCheck {
        #[command(flatten)]
        gr: ShapeArgs,
        #[arg(long)]
        class: String,
    },
    /// Vertices and weighted edges of the moment graph
    GkmGraph {
        #[command(flatten)]
        gr: ShapeArgs,
    },
    /// Compare the determinantal formula with the tableau formula
    KlVerify {
        #[command(flatten)]
        gr: ShapeArgs,
        /// Only this partition (default: every partition in the box)
        #[arg(long)]
        shape: Option<Partition>,
    },
    /// Run verification suites
    Verify {
        /// interpolation, gkm, positivity, duality, kl, integrals or all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// What a run printed and how it exited.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

struct Rendered {
    text: String,
    /// Exit 2 after printing when set.
    failed: bool,
}

impl Rendered {
    fn ok(text: String) -> Rendered {
        Rendered { text, failed: false }
    }
}

/// Sizes the global rayon pool from `EQSCHUB_THREADS`, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("EQSCHUB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("EQSCHUB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let json = cli.json;
    let result = execute(&cli.command, json).and_then(|r| {
        let mut text = r.text;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &cli.out {
            Some(path) => {
                std::fs::write(path, &text).map_err(|e| Failure::Io(format!("cannot write {path}: {e}")))?;
                Ok(Rendered { text: String::new(), failed: r.failed })
            }
            None => Ok(Rendered { text, failed: r.failed }),
        }
    });
    match result {
        Ok(r) => Outcome {
            code: if r.failed { 2 } else { 0 },
            stdout: r.text,
            stderr: String::new(),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(Failure::Io(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn execute(cmd: &Command, json: bool) -> Result<Rendered, Failure> {
    match cmd {
        Command::Schur {
            shape,
            k,
            restrict_to,
            n,
            ordinary,
        } => {
            let value = match (restrict_to, ordinary) {
                (Some(mu), _) => {
                    let n = n.ok_or_else(|| Error::Parse("--restrict-to needs --n".into()))?;
                    restrict_schur(shape, mu, &GrassmannianShape::new(n, *k)?)?
                }
                (None, true) => ordinary_schur(shape, *k)?,
                (None, false) => double_schur(shape, *k)?.value().clone(),
            };
            Ok(Rendered::ok(if json {
                let mut obj = json!({"shape": shape.to_string(), "k": k, "value": value.to_string()});
                if let Some(mu) = restrict_to {
                    obj["restrict_to"] = json!(mu.to_string());
                    obj["n"] = json!(n);
                }
                obj.to_string()
            } else {
                value.to_string()
            }))
        }
        Command::Class {
            gr,
            shape,
            opposite,
            class,
        } => {
            let sh = gr.shape()?;
            let c = match (shape, class) {
                (Some(lam), _) if *opposite => opposite_schubert_class(lam, &sh)?,
                (Some(lam), _) => schubert_class(lam, &sh)?,
                (None, Some(expr)) => parse_class(expr, &sh)?,
                (None, None) => unreachable!("clap requires --shape or --class"),
            };
            Ok(Rendered::ok(render_class(&c, json)))
        }
        Command::Mult { gr, a, b } => {
            let sh = gr.shape()?;
            let c = schubert_class(a, &sh)?.mul(&schubert_class(b, &sh)?)?;
            Ok(Rendered::ok(render_class(&c, json)))
        }
        Command::Lr { gr, a, b } => {
            let sh = gr.shape()?;
            let e = structure_constants(a, b, &sh)?;
            let positive = expansion_is_positive(&e)?;
            #[derive(Serialize)]
            struct LrOutput<'a> {
                #[serde(flatten)]
                expansion: &'a BasisExpansion,
                positive: bool,
            }
            Ok(Rendered {
                text: to_json(&LrOutput {
                    expansion: &e,
                    positive,
                }),
                failed: !positive,
            })
        }
        Command::Integrate { gr, class } => {
            let sh = gr.shape()?;
            let v = integrate(&parse_class(class, &sh)?)?;
            Ok(Rendered::ok(if json { json!({"value": v.to_string()}).to_string() } else { v.to_string() }))
        }
        Command::GkmCheck { gr, class } => {
            let sh = gr.shape()?;
            let report = gkm_check(&parse_class(class, &sh)?);
            let text = if json {
                let violations: Vec<_> = report
                    .violations
                    .iter()
                    .map(|v| {
                        json!({
                            "from": v.edge.from.to_string(),
                            "to": v.edge.to.to_string(),
                            "weight": v.edge.weight.to_string(),
                            "remainder": v.remainder.to_string(),
                        })
                    })
                    .collect();
                json!({"ok": report.is_ok(), "violations": violations}).to_string()
            } else if report.is_ok() {
                "ok".to_string()
            } else {
                let mut s = String::new();
                for v in &report.violations {
                    let _ = writeln!(
                        s,
                        "violation {} -- {} ({}): remainder {}",
                        v.edge.from, v.edge.to, v.edge.weight, v.remainder
                    );
                }
                s
            };
            Ok(Rendered {
                text,
                failed: !report.is_ok(),
            })
        }
        Command::GkmGraph { gr } => {
            let sh = gr.shape()?;
            let g = gkm_graph(&sh);
            Ok(Rendered::ok(if json {
                to_json(&g)
            } else {
                let mut s = format!("{sh}: {} vertices, {} edges\n", g.vertices().len(), g.edges().len());
                for e in g.edges() {
                    let _ = writeln!(s, "{} -- {}: {}", e.from, e.to, e.weight);
                }
                s
            }))
        }
        Command::KlVerify { gr, shape } => {
            let sh = gr.shape()?;
            let partitions = match shape {
                Some(lam) => {
                    sh.check_fits(lam)?;
                    vec![lam.clone()]
                }
                None => sh.partitions(),
            };
            let mut mismatches = Vec::new();
            for lam in &partitions {
                if kempf_laksov_class(lam, &sh)? != schubert_class(lam, &sh)? {
                    mismatches.push(lam.to_string());
                }
            }
            let passed = mismatches.is_empty();
            let text = if json {
                json!({
                    "n": sh.n(),
                    "k": sh.k(),
                    "checked": partitions.len(),
                    "mismatches": mismatches,
                    "passed": passed,
                })
                .to_string()
            } else if passed {
                format!("PASS {} partitions on {sh}", partitions.len())
            } else {
                format!("FAIL on {sh}: {}", mismatches.join("; "))
            };
            Ok(Rendered { text, failed: !passed })
        }
        Command::Verify { suite } => {
            let reports = if suite == "all" {
                verify::run_all()
            } else {
                vec![verify::run_suite(suite.parse::<Suite>()?)]
            };
            let failed = reports.iter().any(|r| !r.passed);
            let text = if json {
                to_json(&reports)
            } else {
                let mut s = String::new();
                for r in &reports {
                    for c in &r.checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        let _ = write!(s, "{status} {} {}", r.suite, c.name);
                        if let Some(d) = &c.detail {
                            let _ = write!(s, ": {d}");
                        }
                        s.push('\n');
                    }
                }
                s
            };
            Ok(Rendered { text, failed })
        }
    }
}

fn render_class(c: &EqClass, json: bool) -> String {
    if json {
        to_json(c)
    } else {
        c.to_string()
    }
}

/// `c_1` of the dual tautological subbundle, written `zeta` in expressions.
pub fn zeta_class(shape: &GrassmannianShape) -> Result<EqClass, Error> {
    chern_class_taut(TautologicalBundle::SubDual, 1, shape)
}
