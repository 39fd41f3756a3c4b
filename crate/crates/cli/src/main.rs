//! `k3leech`: run the verification suite, print face tables and graphs,
//! and re-emit fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use k3leech::chamber::{self, CaseId};
use k3leech::fixture::Fixture;
use k3leech::leech::{self, MinimalShell, Shape};
use k3leech::lorentz::count_by;
use k3leech::mog;
use k3leech::quartic::{self, IdentityReport};
use k3leech::report::{CheckResult, Report};
use k3leech::surface::SurfaceModel;
use k3leech::verify::{self, CheckKind, RunConfig};

#[derive(Parser)]
#[command(name = "k3leech", version, about = "Exact checks of K3 chambers built from Leech roots")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Minimal-shell cache: loaded if present, written otherwise.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the selected checks on the selected cases.
    Verify {
        #[arg(long, visible_alias = "case", default_value = "all")]
        cases: String,
        #[arg(long, default_value = "all")]
        checks: String,
        /// Also scan the norm -6 layer in extension searches.
        #[arg(long)]
        shell6: bool,
    },
    /// Face table of one case; optionally the chamber graph as DOT.
    Faces {
        #[arg(long, visible_alias = "cases")]
        case: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        shell6: bool,
    },
    /// A graph of one case as DOT: a fixture graph id, `chamber` or `orthogonal`.
    /// Without `--id`, lists the available graphs.
    Graph {
        #[arg(long, visible_alias = "cases")]
        case: String,
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The 759 octads with their classes.
    Octads {
        /// Only octads of this class, e.g. 2+6.
        #[arg(long)]
        class: Option<String>,
    },
    /// Minimal vectors: count and shapes, plus the first `--limit` vectors.
    Minvec {
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Fibration checks of one case.
    Fibration {
        #[arg(long, visible_alias = "cases")]
        case: String,
        #[arg(long)]
        id: Option<String>,
    },
    /// Exact polynomial identities; `all` runs the catalog.
    Poly {
        #[arg(long, default_value = "all")]
        identity: String,
    },
    /// Re-emit a shipped fixture, or a blank template.
    Fixture {
        #[arg(long, visible_alias = "cases")]
        case: String,
        #[arg(long)]
        template: bool,
    },
}

/// Config or fixture problems; exit 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.into())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(anyhow!("--threads must be positive").into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    if let Some(p) = &cli.cache {
        prepare_cache(p)?;
    }
    match &cli.cmd {
        Cmd::Verify { cases, checks, shell6 } => cmd_verify(cli, cases, checks, *shell6),
        Cmd::Faces { case, dot, shell6 } => cmd_faces(cli, parse_case(case)?, dot.as_deref(), *shell6),
        Cmd::Graph { case, id, dot } => cmd_graph(cli, parse_case(case)?, id.as_deref(), dot.as_deref()),
        Cmd::Octads { class } => cmd_octads(cli, class.as_deref()),
        Cmd::Minvec { limit } => cmd_minvec(cli, *limit),
        Cmd::Fibration { case, id } => cmd_fibration(cli, parse_case(case)?, id.as_deref()),
        Cmd::Poly { identity } => cmd_poly(cli, identity),
        Cmd::Fixture { case, template } => cmd_fixture(cli, case, *template),
    }
}

fn parse_case(s: &str) -> Result<CaseId, Usage> {
    Ok(s.parse::<CaseId>()?)
}

fn prepare_cache(p: &Path) -> Result<(), Usage> {
    if p.exists() {
        let shell = MinimalShell::load(p)?;
        leech::install_minimal_shell(shell);
    } else {
        leech::minimal_shell().save(p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

/// `SOURCE_DATE_EPOCH` when set, else the epoch, so reports are reproducible.
fn timestamp() -> Result<String, Usage> {
    let secs = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| anyhow!("SOURCE_DATE_EPOCH is not an integer: {s}"))?,
        Err(_) => 0,
    };
    let t: SystemTime = UNIX_EPOCH + Duration::from_secs(secs);
    Ok(humantime::format_rfc3339_seconds(t).to_string())
}

fn emit(cli: &Cli, text: &str) -> Result<(), Usage> {
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_report(cli: &Cli, checks: Vec<CheckResult>) -> Outcome {
    let report = Report::new(timestamp()?, checks);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    emit(cli, &text)?;
    eprintln!("{} checks, {} failed", report.checks.len(), report.failures());
    Ok(report.passed())
}

fn cmd_verify(cli: &Cli, cases: &str, checks: &str, shell6: bool) -> Outcome {
    let cfg = RunConfig {
        cases: verify::parse_list(cases, &CaseId::ALL)?,
        checks: verify::parse_list(checks, &CheckKind::ALL)?,
        shell6,
    };
    if cfg.checks.is_empty() {
        return Err(anyhow!("no checks selected").into());
    }
    for c in &cfg.cases {
        c.fixture().with_context(|| format!("fixture {c}"))?;
    }
    emit_report(cli, verify::run(&cfg))
}

#[derive(Serialize)]
struct FaceTable {
    case: String,
    basis: String,
    orthogonal: usize,
    extensions: Vec<chamber::ExtensionSummary>,
    counts_by_norm: std::collections::BTreeMap<String, usize>,
    total_faces: usize,
    search: String,
    checks: Vec<CheckResult>,
}

fn cmd_faces(cli: &Cli, case: CaseId, dot: Option<&Path>, shell6: bool) -> Outcome {
    let f = case.fixture()?;
    let rep = chamber::report_for(&f, shell6)?;
    let checks = verify::face_table(&rep, &f, case, shell6)?;
    let ok = checks.iter().all(CheckResult::passed);
    if let Some(p) = dot {
        let (g, _) = chamber::incidence_graph(&f, &rep)?;
        fs::write(p, g.to_dot(case.as_str())).with_context(|| format!("writing {}", p.display()))?;
    }
    let table = FaceTable {
        case: case.to_string(),
        basis: rep.basis.ade.to_string(),
        orthogonal: rep.orthogonal.len(),
        extensions: rep.summaries(),
        counts_by_norm: rep.counts_by_norm.clone(),
        total_faces: rep.total_faces(),
        search: if shell6 { "norm -4 and -6 layers".into() } else { "norm -4 layer".into() },
        checks,
    };
    let text = match cli.format {
        Format::Json => json(&table),
        Format::Md => {
            let mut s = format!("# {}\n\nBasis {}, {} orthogonal roots, {} faces ({}).\n\n", table.case, table.basis, table.orthogonal, table.total_faces, table.search);
            s.push_str("| extension | roots | norms | multipliers |\n|---|---|---|---|\n");
            for e in &table.extensions {
                let norms: Vec<String> = e.norms.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                let mult: Vec<String> = e.multipliers.iter().map(|(k, v)| format!("x{k}: {v}")).collect();
                s.push_str(&format!("| {} | {} | {} | {} |\n", e.ade, e.count, norms.join(", "), mult.join(", ")));
            }
            s.push_str("\n| norm | faces |\n|---|---|\n");
            for (k, v) in &table.counts_by_norm {
                s.push_str(&format!("| {k} | {v} |\n"));
            }
            s.push('\n');
            for c in &table.checks {
                s.push_str(&format!("- {} `{}`: expected {}, got {}\n", if c.passed() { "pass" } else { "FAIL" }, c.id, c.expected, c.actual));
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(ok)
}

fn cmd_graph(cli: &Cli, case: CaseId, id: Option<&str>, dot: Option<&Path>) -> Outcome {
    let m = SurfaceModel::load(case)?;
    let fixture_ids: Vec<&str> = m.fixture.graphs.iter().flatten().map(|g| g.id.as_str()).collect();
    let Some(id) = id else {
        let mut s = String::from("chamber\torthogonal roots and every extension face\northogonal\torthogonal roots only\n");
        for g in m.fixture.graphs.iter().flatten() {
            s.push_str(&format!("{}\t{}\n", g.id, g.what));
        }
        emit(cli, &s)?;
        return Ok(true);
    };
    let g = match id {
        "chamber" => chamber::incidence_graph(&m.fixture, &m.faces)?.0,
        "orthogonal" => chamber::orthogonal_graph(&m.faces.orthogonal, chamber::curve_names(&m.fixture, &m.faces.orthogonal)?),
        _ => {
            let spec = m.fixture.graphs.iter().flatten().find(|g| g.id == id);
            let spec = spec.ok_or_else(|| anyhow!("{case} has no graph {id}; known: chamber, orthogonal, {}", fixture_ids.join(", ")))?;
            m.drawn(spec)?
        }
    };
    let text = g.to_dot(&format!("{case} {id}"));
    match dot {
        Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => emit(cli, &text)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct OctadRow {
    octad: String,
    class: &'static str,
}

fn cmd_octads(cli: &Cli, class: Option<&str>) -> Outcome {
    let s = mog::steiner();
    let mut rows = Vec::new();
    for &o in s.octads() {
        let tag = s.classify(o)?.tag();
        if class.is_none_or(|c| c == tag) {
            rows.push(OctadRow { octad: mog::mask_label(o), class: tag });
        }
    }
    if let Some(c) = class {
        if rows.is_empty() && !["3+5", "2+6", "1+7", "0+8"].contains(&c) {
            return Err(anyhow!("unknown octad class {c}; expected 3+5, 2+6, 1+7 or 0+8").into());
        }
    }
    let text = match cli.format {
        Format::Json => json(&rows),
        Format::Md => rows.iter().map(|r| format!("{} {}\n", r.class, r.octad)).collect(),
    };
    emit(cli, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct ShellSummary {
    count: usize,
    shapes: std::collections::BTreeMap<Shape, usize>,
    vectors: Vec<[i32; 24]>,
}

fn cmd_minvec(cli: &Cli, limit: usize) -> Outcome {
    let shell = leech::minimal_shell();
    let sum = ShellSummary {
        count: shell.len(),
        shapes: count_by(shell.vectors().iter().map(MinimalShell::shape)),
        vectors: shell.vectors().iter().take(limit).map(|v| v.0).collect(),
    };
    let text = match cli.format {
        Format::Json => json(&sum),
        Format::Md => {
            let mut s = format!("{} minimal vectors\n", sum.count);
            for (k, v) in &sum.shapes {
                s.push_str(&format!("{k:?}: {v}\n"));
            }
            for v in &sum.vectors {
                s.push_str(&format!("{v:?}\n"));
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(sum.count == 196_560)
}

fn cmd_fibration(cli: &Cli, case: CaseId, id: Option<&str>) -> Outcome {
    let m = SurfaceModel::load(case)?;
    let specs: Vec<_> = m.fixture.fibrations.iter().flatten().filter(|f| id.is_none_or(|i| f.id == i)).collect();
    if specs.is_empty() {
        return Err(anyhow!("{case} has no fibration {}", id.unwrap_or("at all")).into());
    }
    let checks = specs.iter().map(|f| m.check_fibration(f).unwrap_or_else(|e| CheckResult::error(format!("{case}/fibration/{}", f.id), "fibration", e))).collect();
    emit_report(cli, checks)
}

fn cmd_poly(cli: &Cli, identity: &str) -> Outcome {
    let reps: Vec<IdentityReport> = if identity == "all" {
        quartic::verify_all()
    } else {
        vec![quartic::verify_identity(identity)?]
    };
    let text = match cli.format {
        Format::Json => json(&reps),
        Format::Md => reps
            .iter()
            .map(|r| {
                let mut s = format!("{} {}: cofactor {}", if r.passed() { "pass" } else { "FAIL" }, r.id, r.cofactor);
                if let Some(x) = &r.remainder {
                    s.push_str(&format!(", remainder {x}"));
                }
                s.push('\n');
                s
            })
            .collect(),
    };
    emit(cli, &text)?;
    Ok(reps.iter().all(IdentityReport::passed))
}

fn cmd_fixture(cli: &Cli, case: &str, template: bool) -> Outcome {
    let text = if template {
        if case.is_empty() || !case.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(anyhow!("invalid case id {case:?}").into());
        }
        Fixture::template(case).to_json()
    } else {
        parse_case(case)?.fixture()?.to_json()
    };
    emit(cli, &text)?;
    Ok(true)
}
