use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use coclass::families::{construct, FamilyLabel, Tree};
use coclass::pc::gap::export_gap;
use coclass::pcover::{immediate_descendants_with, DedupMode, DescendantOptions};
use coclass::suites::{run_suite, Suite, SuiteConfig};
use coclass::trees::{to_dot, tree_report, Report, TreeVertex, VertexReport, SCHEMA_VERSION};
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coclass", version, about = "Build and verify the CF and BCF coclass trees of finite 3-groups")]
struct Cli {
    /// worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Gap,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeArg {
    #[value(name = "CF", alias = "cf")]
    Cf,
    #[value(name = "BCF", alias = "bcf")]
    Bcf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dedup {
    Iso,
    Fingerprint,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and Artin pattern of one family vertex, e.g. `M[e=2,i=1]`
    Build {
        label: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Depth-1 branches of a tree
    Tree {
        #[arg(value_enum)]
        tree: TreeArg,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 4)]
        i_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Immediate descendants of a family vertex with a given step size
    Descendants {
        label: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
        /// largest log_3 order of a descendant
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, value_enum, default_value_t = Dedup::Iso)]
        dedup: Dedup,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite, or `all`
    Verify(VerifyArgs),
    /// GAP source for a family presentation
    ExportGap {
        label: String,
        #[arg(long, default_value = "G")]
        var: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// consistency, invariants, patterns, laws, bifurcation, periodicity,
    /// class2, exhaustion, properties or all
    suite: String,
    #[arg(long)]
    e_min: Option<u32>,
    #[arg(long)]
    e_max: Option<u32>,
    #[arg(long)]
    c_max: Option<u32>,
    #[arg(long)]
    i_max: Option<u32>,
    /// largest log_3 order for exhaustive isomorphism tests
    #[arg(long)]
    iso_cap: Option<u32>,
    /// largest log_3 order handed to the p-covering construction
    #[arg(long)]
    cap: Option<u32>,
    /// random triples per group in the property suite
    #[arg(long)]
    triples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// print every check, not only failures
    #[arg(long)]
    verbose: bool,
}

/// Errors that are the caller's fault exit with 2.
struct Usage(anyhow::Error);

fn usage<E: Into<anyhow::Error>>(e: E) -> Usage {
    Usage(e.into())
}

fn parse_label(s: &str) -> Result<FamilyLabel, Usage> {
    s.parse().map_err(usage)
}

fn vertex_json(v: &TreeVertex) -> serde_json::Value {
    json!({
        "schema": SCHEMA_VERSION,
        "order": v.group.order().to_string(),
        "vertex": VertexReport::new(v),
    })
}

fn vertex_text(v: &TreeVertex) -> String {
    let inv = v.invariants;
    format!(
        "{}\norder 3^{} = {}\nclass {}, coclass {}, p-class {}, p-coclass {}\ntype {}, kappa ({}), canonical ({})\nrho {:?}\ncentre {}\n",
        v.label,
        inv.lo,
        v.group.order(),
        inv.cl,
        inv.cc,
        inv.cl_p,
        inv.cc_p,
        v.named_type(),
        v.pattern.kappa,
        v.pattern.kappa_canonical,
        v.pattern.rho,
        v.centre,
    )
}

fn cmd_build(label: &str, format: Format) -> Result<bool, Usage> {
    let l = parse_label(label)?;
    let v = TreeVertex::from_family(l, 0).map_err(usage)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&vertex_json(&v)).unwrap()),
        Format::Gap => print!("{}", export_gap(&v.group, "G")),
        Format::Text => print!("{}", vertex_text(&v)),
        Format::Dot => return Err(usage(anyhow::anyhow!("build has no dot output"))),
    }
    Ok(true)
}

fn cmd_tree(tree: TreeArg, e: u32, i_max: u32, format: Format) -> Result<bool, Usage> {
    let tree = match tree {
        TreeArg::Cf => Tree::Cf,
        TreeArg::Bcf => Tree::Bcf,
    };
    let rep = tree_report(tree, e, i_max).map_err(usage)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
        Format::Dot => print!("{}", to_dot(&rep)),
        Format::Text => {
            for v in &rep.vertices {
                let mark = if v.mainline { "*" } else { " " };
                println!("{mark} {:<34} {:<5} ({}) cl {} lo {}", v.id, v.named_type, v.kappa, v.invariants.cl, v.invariants.lo);
            }
            println!("{} vertices, {} edges", rep.vertices.len(), rep.edges.len());
        }
        Format::Gap => return Err(usage(anyhow::anyhow!("tree has no gap output"))),
    }
    Ok(true)
}

fn cmd_descendants(label: &str, step: u32, cap: Option<u32>, dedup: Dedup, format: Format) -> Result<bool, Usage> {
    let l = parse_label(label)?;
    let g = construct(&l).map_err(usage)?;
    let mut opts = DescendantOptions::default();
    opts.dedup = match dedup {
        Dedup::Iso => DedupMode::Iso,
        Dedup::Fingerprint => DedupMode::Fingerprint,
    };
    opts.cap_log = cap.unwrap_or(opts.cap_log.max(g.log_order() + step));
    let set = immediate_descendants_with(&g, step, &opts).map_err(usage)?;
    let mut rows = Vec::new();
    for (k, m) in set.members.iter().enumerate() {
        let name = format!("{l}-#{step};{}", k + 1);
        let v = TreeVertex::from_group(name.clone(), None, m.group.clone(), 1).ok();
        rows.push((name, m, v));
    }
    match format {
        Format::Json => {
            let members: Vec<_> = rows
                .iter()
                .map(|(name, m, v)| {
                    json!({
                        "id": name,
                        "exact": m.exact,
                        "fingerprint": m.fingerprint,
                        "named_type": v.as_ref().map(|v| v.named_type().to_string()),
                        "kappa": v.as_ref().map(|v| v.pattern.kappa.to_string()),
                    })
                })
                .collect();
            let out = json!({
                "schema": SCHEMA_VERSION,
                "parent": l.to_string(),
                "step": step,
                "candidates": set.candidates,
                "members": members,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            for (name, m, v) in &rows {
                let (ty, kappa) = match v {
                    Some(v) => (v.named_type().to_string(), format!("({})", v.pattern.kappa)),
                    None => ("-".into(), "-".into()),
                };
                println!("{name:<28} order 3^{:<3} cl {} {ty:<5} {kappa}", m.fingerprint.log_order, m.fingerprint.cl);
            }
            println!("{} descendants from {} candidates", rows.len(), set.candidates);
        }
        _ => return Err(usage(anyhow::anyhow!("descendants supports text and json output"))),
    }
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, Usage> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(usage)?]
    };
    let cfg = SuiteConfig {
        e_min: a.e_min,
        e_max: a.e_max,
        c_max: a.c_max,
        i_max: a.i_max,
        iso_cap: a.iso_cap,
        cover_cap: a.cap,
        triples: a.triples,
        seed: a.seed,
    };
    cfg.validate().map_err(usage)?;
    let mut reports: Vec<(Suite, Report)> = Vec::new();
    for s in suites {
        let r = run_suite(s, &cfg).map_err(usage).map_err(|Usage(e)| Usage(e.context(format!("suite {s}"))))?;
        if let Format::Text = a.format {
            for c in &r.checks {
                if a.verbose || !c.passed {
                    println!("{} [{}] {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.law, c.subject, c.detail);
                }
            }
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            println!("{verdict} {s}: {} checks, {} failed", r.checks.len(), r.failures().len());
        }
        reports.push((s, r));
    }
    let passed = reports.iter().all(|(_, r)| r.passed());
    match a.format {
        Format::Json => {
            let out: Vec<_> = reports
                .iter()
                .map(|(s, r)| json!({"suite": s.name(), "passed": r.passed(), "checks": r.checks}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA_VERSION, "passed": passed, "suites": out})).unwrap());
        }
        Format::Text => {}
        _ => return Err(usage(anyhow::anyhow!("verify supports text and json output"))),
    }
    Ok(passed)
}

fn cmd_export_gap(label: &str, var: &str) -> Result<bool, Usage> {
    let g = construct(&parse_label(label)?).map_err(usage)?;
    print!("{}", export_gap(&g, var));
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, Usage> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .context("configuring the worker pool")
            .map_err(Usage)?;
    }
    match &cli.command {
        Command::Build { label, format } => cmd_build(label, *format),
        Command::Tree { tree, e, i_max, format } => cmd_tree(*tree, *e, *i_max, *format),
        Command::Descendants { label, step, cap, dedup, format } => cmd_descendants(label, *step, *cap, *dedup, *format),
        Command::Verify(a) => cmd_verify(a),
        Command::ExportGap { label, var } => cmd_export_gap(label, var),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
