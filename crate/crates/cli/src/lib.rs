//! Argument parsing, dispatch and report rendering for the `cmspace` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cmspace::exceptional::{scan_exceptional, table1_comparison, ExceptionalDataset};
use cmspace::fake_degree::{
    fake_degree, irr_dimension, irr_labels, predicted_trailing_degree, GroupSpec,
};
use cmspace::g4::run_battery;
use cmspace::monomial::{molien_comparison, omega_class_sums, DEFAULT_MAX_ORDER};
use cmspace::scan::{
    scan_series, scan_series_par, witness_check, DivisibilityVerdict, LemmaOutcome, ScanReport,
};
use cmspace::GroupError;
use serde_json::{Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_TRUNCATION: usize = 30;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(
    name = "cmspace",
    version,
    about = "Smoothness criteria for Calogero-Moser spaces of G(m,p,n) and G4"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; sequential when absent.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Largest group order for element-level commands.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Every irreducible label with orbit, dimension, fake degree and b.
    FakeDegrees {
        #[arg(value_parser = parse_group)]
        group: GroupSpec,
    },
    /// Divisibility test for every label.
    Scan {
        #[arg(value_parser = parse_group)]
        group: GroupSpec,
    },
    /// Evaluates the family witness.
    Witness {
        #[arg(value_parser = parse_group)]
        group: GroupSpec,
    },
    /// Sums restricted symplectic forms over each reflection class.
    VerifyOmega {
        #[arg(value_parser = parse_group)]
        group: GroupSpec,
    },
    /// Molien series of the invariants against the degrees.
    Molien {
        #[arg(value_parser = parse_group)]
        group: GroupSpec,
        /// Highest power of t compared.
        n: Option<usize>,
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// The G4 verifier battery.
    G4,
    /// Scans an exceptional fake-degree dataset and compares with the published counts.
    Table1 {
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse::<GroupSpec>().map_err(|e| e.to_string())
}

/// Parse failure, with the exit code clap would use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub code: i32,
    pub message: String,
}

/// `argv` includes the program name.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map_err(|e| UsageError {
        code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
        message: e.render().to_string(),
    })
}

/// One key/value row. Keys never contain `=`; values never contain tabs or newlines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Row(pub Vec<(String, String)>);

impl Row {
    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn to_map(&self) -> Map<String, Value> {
        self.0
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect()
    }
}

/// Common shape of every report; text and JSON are two renderings of it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub command: String,
    pub status: String,
    pub summary: Row,
    pub notes: Vec<String>,
    pub rows: Vec<Row>,
}

impl Document {
    fn new(command: &str) -> Self {
        Document {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn render_text(&self) -> String {
        let pairs = |r: &Row| {
            r.0.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join("\t")
        };
        let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status);
        if !self.summary.0.is_empty() {
            let _ = writeln!(out, "summary: {}", pairs(&self.summary));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for r in &self.rows {
            let _ = writeln!(out, "row: {}", pairs(r));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "status": self.status,
            "summary": self.summary.to_map(),
            "notes": self.notes,
            "rows": self.rows.iter().map(Row::to_map).collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`Document::render_text`] up to key order, as JSON.
    pub fn parse_text(text: &str) -> Option<Value> {
        let pairs = |s: &str| -> Option<Map<String, Value>> {
            if s.is_empty() {
                return Some(Map::new());
            }
            s.split('\t')
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
                })
                .collect()
        };
        let (mut command, mut status) = (None, None);
        let mut summary = Map::new();
        let (mut notes, mut rows) = (Vec::new(), Vec::new());
        for line in text.lines() {
            let (tag, rest) = line.split_once(": ")?;
            match tag {
                "command" => command = Some(rest.to_string()),
                "status" => status = Some(rest.to_string()),
                "summary" => summary = pairs(rest)?,
                "note" => notes.push(Value::String(rest.to_string())),
                "row" => rows.push(Value::Object(pairs(rest)?)),
                _ => return None,
            }
        }
        Some(serde_json::json!({
            "command": command?,
            "status": status?,
            "summary": summary,
            "notes": notes,
            "rows": rows,
        }))
    }
}

/// Exit code plus rendered output; `stderr` marks failures that produced no report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub stderr: bool,
}

fn usage_failure(message: impl ToString) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        output: format!("{}\n", message.to_string()),
        stderr: true,
    }
}

fn group_error_code(e: &GroupError) -> i32 {
    match e {
        GroupError::Invariant(_) | GroupError::Poly(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn finish(cli: &Cli, doc: Document, code: i32) -> Outcome {
    let output = if cli.json {
        let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("documents serialise");
        s.push('\n');
        s
    } else {
        doc.render_text()
    };
    Outcome {
        code,
        output,
        stderr: false,
    }
}

fn status(ok: bool) -> (&'static str, i32) {
    if ok {
        ("ok", EXIT_OK)
    } else {
        ("mismatch", EXIT_MISMATCH)
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => usage_failure(format!("cli: cannot start {t} threads: {e}")),
        },
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::FakeDegrees { group } => fake_degrees(cli, group),
        Command::Scan { group } => {
            let report = if cli.threads.is_some() {
                scan_series_par(group)
            } else {
                scan_series(group)
            };
            finish(cli, scan_document("scan", &report), EXIT_OK)
        }
        Command::Witness { group } => witness(cli, group),
        Command::VerifyOmega { group } => verify_omega(cli, group),
        Command::Molien { group, n, truncate } => {
            let truncation = match (n, truncate) {
                (Some(a), Some(b)) if a != b => {
                    return usage_failure(format!("cli: truncation given twice ({a} and {b})"))
                }
                (Some(a), _) | (None, Some(a)) => *a,
                (None, None) => DEFAULT_TRUNCATION,
            };
            molien(cli, group, truncation)
        }
        Command::G4 => g4(cli),
        Command::Table1 { data } => match data {
            Some(path) => table1(cli, path),
            None => usage_failure(
                "cli: table1 needs --data <path> (an exceptional fake-degree dataset)",
            ),
        },
    }
}

fn fake_degrees(cli: &Cli, g: &GroupSpec) -> Outcome {
    let mut doc = Document::new("fake-degrees");
    let mut ok = true;
    let labels = irr_labels(g);
    for label in &labels {
        let f = fake_degree(g, &label.orbit);
        let dim = irr_dimension(label);
        let b = f.trailing_degree().expect("fake degrees are nonzero");
        ok &= f.eval_one() == dim && b == predicted_trailing_degree(g, &label.orbit);
        let orbit = label
            .orbit
            .members()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        doc.rows.push(
            Row::default()
                .with("label", label)
                .with("orbit", orbit)
                .with("dim", dim)
                .with("f", f)
                .with("b", b),
        );
    }
    doc.summary = Row::default()
        .with("group", g)
        .with("order", g.order())
        .with("labels", labels.len());
    let (s, code) = status(ok);
    doc.status = s.to_string();
    finish(cli, doc, code)
}

fn verdict_row(v: &DivisibilityVerdict) -> Row {
    let row = Row::default()
        .with("label", &v.label)
        .with("dim", &v.dim)
        .with("b", v.b)
        .with("f", &v.fake_degree);
    match &v.outcome {
        LemmaOutcome::Divisible {
            module_poincare, ..
        } => {
            let row = row
                .with("verdict", "divisible")
                .with("quotient", v.detail());
            match module_poincare {
                Some(p) => row.with("module_poincare", p),
                None => row,
            }
        }
        LemmaOutcome::Fails { .. } => row.with("verdict", "fails").with("remainder", v.detail()),
    }
}

fn scan_document(command: &str, report: &ScanReport) -> Document {
    let mut doc = Document::new(command);
    doc.status = "ok".into();
    doc.summary = Row::default()
        .with("group", &report.group)
        .with("order", &report.order)
        .with("labels", report.labels)
        .with("failures", report.failures);
    doc.notes = report.notes.clone();
    doc.rows = report.verdicts.iter().map(verdict_row).collect();
    doc
}

fn witness(cli: &Cli, g: &GroupSpec) -> Outcome {
    let w = match witness_check(g) {
        Ok(w) => w,
        Err(e) => return usage_failure(e),
    };
    let mut doc = Document::new("witness");
    doc.status = if w.agrees { "ok" } else { "discrepancy" }.into();
    doc.summary = Row::default()
        .with("group", &w.group)
        .with("family", &w.family)
        .with("witness", &w.witness)
        .with("closed_form", &w.closed_form)
        .with("closed_form_is_polynomial", w.closed_form_is_polynomial)
        .with("claimed_failure", w.claimed_failure)
        .with("agrees", w.agrees);
    doc.notes = w.note.iter().cloned().collect();
    doc.rows.push(verdict_row(&w.verdict));
    finish(cli, doc, EXIT_OK)
}

fn verify_omega(cli: &Cli, g: &GroupSpec) -> Outcome {
    let certs = match omega_class_sums(g, cli.max_order) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: group_error_code(&e),
                output: format!("{e}\n"),
                stderr: true,
            }
        }
    };
    let mut doc = Document::new("verify-omega");
    let mut ok = true;
    for (i, (class, cert)) in certs.iter().enumerate() {
        ok &= cert.matches_closed_form();
        doc.rows.push(
            Row::default()
                .with("class", i)
                .with("size", class.len())
                .with("zeta", class.zeta_label())
                .with("lambda", &cert.lambda)
                .with("closed_form", &cert.closed_form)
                .with("match", cert.matches_closed_form()),
        );
    }
    doc.summary = Row::default()
        .with("group", g)
        .with("order", g.order())
        .with("classes", certs.len());
    let (s, code) = status(ok);
    doc.status = s.to_string();
    finish(cli, doc, code)
}

fn molien(cli: &Cli, g: &GroupSpec, truncation: usize) -> Outcome {
    let cmp = match molien_comparison(g, truncation, cli.max_order) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: group_error_code(&e),
                output: format!("{e}\n"),
                stderr: true,
            }
        }
    };
    let mut doc = Document::new("molien");
    let degrees = g
        .degrees()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    doc.summary = Row::default()
        .with("group", g)
        .with("degrees", degrees)
        .with("truncation", truncation);
    for (k, (a, b)) in cmp.series.iter().zip(&cmp.expected).enumerate() {
        doc.rows.push(
            Row::default()
                .with("degree", k)
                .with("molien", a)
                .with("expected", b)
                .with("match", a == b),
        );
    }
    let (s, code) = status(cmp.matches());
    doc.status = s.to_string();
    finish(cli, doc, code)
}

fn g4(cli: &Cli) -> Outcome {
    let lines = match run_battery() {
        Ok(l) => l,
        Err(e) => {
            return Outcome {
                code: EXIT_MISMATCH,
                output: format!("{e}\n"),
                stderr: true,
            }
        }
    };
    let mut doc = Document::new("g4");
    let passed = lines.iter().filter(|l| l.passed).count();
    doc.summary = Row::default()
        .with("checks", lines.len())
        .with("passed", passed);
    doc.rows = lines
        .iter()
        .map(|l| {
            Row::default()
                .with("check", &l.name)
                .with("passed", l.passed)
                .with("detail", &l.detail)
        })
        .collect();
    let (s, code) = status(passed == lines.len());
    doc.status = s.to_string();
    finish(cli, doc, code)
}

fn table1(cli: &Cli, path: &std::path::Path) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_failure(format!("cli: cannot read {}: {e}", path.display())),
    };
    let reports = match ExceptionalDataset::parse(&text).and_then(|ds| scan_exceptional(&ds)) {
        Ok(r) => r,
        Err(e) => return usage_failure(e),
    };
    let mut doc = Document::new("table1");
    let rows = table1_comparison(&reports);
    let mut ok = true;
    for r in &rows {
        let verdict = match r.matches() {
            Some(true) => "match",
            Some(false) => {
                ok = false;
                "mismatch"
            }
            None => "unpublished",
        };
        let expected = r
            .expected
            .map_or_else(|| "-".to_string(), |e| e.to_string());
        doc.rows.push(
            Row::default()
                .with("group", &r.group)
                .with("order", &r.order)
                .with("labels", r.labels)
                .with("failures", r.failures)
                .with("expected", expected)
                .with("verdict", verdict),
        );
    }
    for rep in &reports {
        for label in rep.failing_labels() {
            doc.notes.push(format!("{} fails at {label}", rep.group));
        }
    }
    doc.summary = Row::default().with("groups", rows.len());
    let (s, code) = status(ok);
    doc.status = s.to_string();
    finish(cli, doc, code)
}

/// Parses and runs; the entry point of the binary.
pub fn main_with_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            stderr: e.code != EXIT_OK,
            code: e.code,
            output: e.message,
        },
    }
}
