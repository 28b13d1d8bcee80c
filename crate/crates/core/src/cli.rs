//! Command-line front end. [`run`] parses arguments, dispatches, writes to
//! the given streams and returns the process exit code: 0 on success, 1 on a
//! FAIL verdict, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bases::{Basis, BasisKind};
use crate::classify::{
    self, hp_falsify, mscomb_derive, quad_op_hp_check, standard_corpus, MscombKind, Verdict,
};
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::fixtures::{self, FixtureReport};
use crate::hermite::{hermite_hn, hermite_qk, HermiteMethod};
use crate::jensen::jensen_poly;
use crate::laguerre::{laguerre_hn, laguerre_qk, sweep_identity, LaguerreMethod};
use crate::peetre::{peetre_expand, DiffOp};
use crate::poly::Poly;
use crate::rational::{parse_rational, rationals_to_strings};
use crate::seq::SeqSpec;

pub const DEFAULT_OP_ORDER: usize = 12;
pub const DEFAULT_SERIES_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hypercore", version, about = "Exact computations with diagonal differential operators")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    /// hermite | laguerre | legendre | monomial
    #[arg(long)]
    pub basis: String,
    /// Use B_n(alpha x + beta) with this beta.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Use B_n(alpha x + beta) with this alpha.
    #[arg(long, allow_hyphen_values = true)]
    pub scale: Option<String>,
}

impl BasisArgs {
    fn basis(&self) -> Result<Basis> {
        match (&self.scale, &self.shift) {
            (None, None) => Ok(Basis::new(self.basis.parse::<BasisKind>()?)),
            (a, b) => {
                let alpha = a.as_deref().map_or(Ok(crate::rational::int(1)), parse_rational)?;
                let beta = b.as_deref().map_or(Ok(crate::rational::int(0)), parse_rational)?;
                Basis::with_affine(self.basis.parse::<BasisKind>()?, alpha, beta)
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct OrderArg {
    /// Truncation order (default 12 for operators, 24 for series).
    #[arg(long, env = "HYPERCORE_ORDER")]
    pub order: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Differential form sum Q_k D^k of T[B_n] = gamma_n B_n.
    Peetre {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Rewrite T as sum T_n D^n with classical diagonal T_n.
    Decompose {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[command(flatten)]
        order: OrderArg,
        /// Also render each T_n in x^k D^k form.
        #[arg(long)]
        show_ops: bool,
    },
    /// Multiplier-sequence classification.
    Classify {
        #[arg(long)]
        kind: ClassKind,
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Decide hyperbolicity preservation of Q2 D^2 + Q1 D + Q0.
    Hpcheck {
        #[arg(long, allow_hyphen_values = true)]
        q2: String,
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
    },
    /// Search a corpus of hyperbolic polynomials for a non-hyperbolic image.
    Falsify {
        /// Operator JSON file.
        #[arg(long)]
        op: PathBuf,
        /// `standard` or a JSON file holding a list of polynomials.
        #[arg(long, default_value = "standard")]
        corpus: String,
    },
    /// Hermite closed forms.
    Hermite {
        #[command(subcommand)]
        cmd: HermiteCmd,
    },
    /// Laguerre closed forms.
    Laguerre {
        #[command(subcommand)]
        cmd: LaguerreCmd,
    },
    /// Brute-force sweep of a binomial identity over [0, max]^3.
    Identity {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 12)]
        max: i64,
    },
    /// Recompute stored worked examples and compare with golden values.
    VerifyPaper {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        example: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Jensen polynomial g_n.
    Jensen {
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        n: usize,
    },
    /// Derived sequences sum C(n,k) gamma_{m+k} (first) or sum C(m,k) gamma_{n+k} (second).
    Mscomb {
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "first")]
        which: MscombKind,
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    Classical,
    Hermite,
    Laguerre,
}

#[derive(Debug, Subcommand)]
pub enum HermiteCmd {
    /// Q_k of a Hermite diagonal operator.
    Qk {
        #[arg(long, default_value = "recursion")]
        method: HermiteMethod,
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        k: usize,
    },
    /// The series h_n.
    Hn {
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum LaguerreCmd {
    /// Q_k of a Laguerre diagonal operator.
    Qk {
        #[arg(long, default_value = "recursion")]
        method: LaguerreMethod,
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        k: usize,
    },
    /// The polynomial h_n.
    Hn {
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long)]
        n: usize,
    },
}

/// Text and JSON renderings of one command's result.
struct Output {
    json: serde_json::Value,
    text: String,
    failed: bool,
}

impl Output {
    fn new(value: impl Serialize, text: String) -> Result<Self> {
        Ok(Output {
            json: serde_json::to_value(value)?,
            text,
            failed: false,
        })
    }
}

fn op_text(op: &DiffOp) -> String {
    let mut s = String::new();
    for (k, q) in op.terms() {
        s.push_str(&format!("Q_{k:<3} = {q}\n"));
    }
    if op.is_zero() {
        s.push_str("0\n");
    }
    s
}

fn verdict_output(v: Verdict) -> Result<Output> {
    let failed = v.is_fail();
    let mut o = Output::new(&v, format!("{v}\n"))?;
    o.failed = failed;
    Ok(o)
}

fn report_text(r: &FixtureReport) -> String {
    let mut s = format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id, r.description);
    let width = r.checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
    for c in &r.checks {
        s.push_str(&format!(
            "  {} {:<width$}  {}\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.label,
            c.got
        ));
        if !c.passed {
            s.push_str(&format!("       {:<width$}  expected {}\n", "", c.expected));
        }
    }
    s
}

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn seq(text: &str) -> Result<SeqSpec> {
    text.parse()
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Peetre { basis, eigs, order } => {
            let op = peetre_expand(&basis.basis()?, &seq(&eigs)?, order.order.unwrap_or(DEFAULT_OP_ORDER))?;
            Output::new(&op, op_text(&op))
        }
        Command::Decompose {
            basis,
            eigs,
            order,
            show_ops,
        } => {
            let op = peetre_expand(&basis.basis()?, &seq(&eigs)?, order.order.unwrap_or(DEFAULT_OP_ORDER))?;
            let d = decompose(&op);
            let mut text = String::new();
            for (n, row) in &d.entries {
                text.push_str(&format!("b_{n:<3} = [{}]\n", rationals_to_strings(&row.0).join(", ")));
            }
            if !show_ops {
                return Output::new(&d, text);
            }
            let ops = d.operators();
            let rendered: std::collections::BTreeMap<String, String> =
                ops.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
            for (n, t) in &ops {
                text.push_str(&format!("T_{n:<3} = {t}\n"));
            }
            Output::new(json!({ "decomposition": d, "operators": rendered }), text)
        }
        Command::Classify { kind, eigs, order } => {
            let n = order.order.unwrap_or(DEFAULT_OP_ORDER);
            let eigs = seq(&eigs)?;
            verdict_output(match kind {
                ClassKind::Classical => classify::classical_ms_check(&eigs, n)?,
                ClassKind::Hermite => classify::hermite_ms_check(&eigs, n)?,
                ClassKind::Laguerre => classify::laguerre_ms_check(&eigs)?,
            })
        }
        Command::Hpcheck { q2, q1, q0 } => verdict_output(quad_op_hp_check(
            &Poly::parse(&q2, 'x')?,
            &Poly::parse(&q1, 'x')?,
            &Poly::parse(&q0, 'x')?,
        )?),
        Command::Falsify { op, corpus } => {
            let op: DiffOp = read_json(&op)?;
            let corpus: Vec<Poly> = if corpus == "standard" {
                standard_corpus()
            } else {
                read_json(std::path::Path::new(&corpus))?
            };
            verdict_output(hp_falsify(&op, &corpus)?)
        }
        Command::Hermite { cmd } => match cmd {
            HermiteCmd::Qk { method, eigs, k } => {
                let q = hermite_qk(method, &Basis::hermite(), &seq(&eigs)?, k)?;
                Output::new(&q, format!("Q_{k} = {q}\n"))
            }
            HermiteCmd::Hn { eigs, n, order } => {
                let h = hermite_hn(&seq(&eigs)?, n, order.order.unwrap_or(DEFAULT_SERIES_ORDER))?;
                let text = format!("h_{n} = [{}] (order {})\n", rationals_to_strings(h.coeffs()).join(", "), h.order());
                Output::new(&h, text)
            }
        },
        Command::Laguerre { cmd } => match cmd {
            LaguerreCmd::Qk { method, eigs, k } => {
                let q = laguerre_qk(method, &Basis::laguerre(), &seq(&eigs)?, k)?;
                Output::new(&q, format!("Q_{k} = {q}\n"))
            }
            LaguerreCmd::Hn { eigs, n } => {
                let h = laguerre_hn(&seq(&eigs)?, n)?;
                Output::new(&h, format!("h_{n} = {h}\n"))
            }
        },
        Command::Identity { name, max } => {
            let rep = sweep_identity(&name, max)?;
            let text = format!(
                "{} {}: {} cases, {} failures\n",
                if rep.passed() { "PASS" } else { "FAIL" },
                rep.name,
                rep.cases,
                rep.failures.len()
            );
            let failed = !rep.passed();
            let mut o = Output::new(json!({ "status": if failed { "FAIL" } else { "PASS" }, "report": rep }), text)?;
            o.failed = failed;
            Ok(o)
        }
        Command::VerifyPaper { example, all } => {
            let reports = if all {
                fixtures::verify_all()?
            } else {
                vec![fixtures::verify_example(example.as_deref().unwrap_or_default())?]
            };
            let passed = reports.iter().all(|r| r.passed);
            let mut text: String = reports.iter().map(report_text).collect();
            if all {
                text.push_str(&format!(
                    "{}: {} of {} examples reproduced\n",
                    if passed { "PASS" } else { "FAIL" },
                    reports.iter().filter(|r| r.passed).count(),
                    reports.len()
                ));
            }
            let mut o = Output::new(
                json!({ "status": if passed { "PASS" } else { "FAIL" }, "examples": reports }),
                text,
            )?;
            o.failed = !passed;
            Ok(o)
        }
        Command::Jensen { eigs, n } => {
            let g = jensen_poly(&seq(&eigs)?, n)?;
            Output::new(&g, format!("g_{n} = {g}\n"))
        }
        Command::Mscomb { eigs, m, which, order } => {
            let v = mscomb_derive(&seq(&eigs)?, m, which, order.order.unwrap_or(DEFAULT_OP_ORDER))?;
            let strings = rationals_to_strings(&v);
            let text = format!("[{}]\n", strings.join(", "));
            Output::new(strings, text)
        }
    }
}

fn write_error(err: &mut dyn Write, format: Format, e: &Error) {
    let _ = match format {
        Format::Json => writeln!(
            err,
            "{}",
            json!({ "error": { "code": e.code(), "message": e.to_string() } })
        ),
        Format::Text => writeln!(err, "error[{}]: {e}", e.code()),
    };
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    2
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok(o) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json value")),
                Format::Text => write!(out, "{}", o.text),
            };
            if o.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            write_error(err, format, &e);
            2
        }
    }
}
