use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use holonet::catalog_io::{check_catalog, load_verified_catalog};
use holonet::theory_spec::parse_product;
use holonet::{emit_report, emit_reports, load_catalog, Format, HolonetError};
use holonet_core::entries::{verify_entry, EntryId, DEFAULT_TOLERANCE};
use holonet_core::extensions::find_local_system;
use holonet_core::inclusions::{Inclusion, INCLUSIONS};
use holonet_core::level_rank::{beta, branching, partner};
use holonet_core::math::{fmt_q, to_f64};
use holonet_core::modular::{conformal_weight, split_top_level, LevelOne, TensorProduct};
use holonet_core::weights::enumerate_weights;
use holonet_core::{AffineWeight, ModularDatum, Theory};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "holonet", version, about = "Modular data, level-rank duality and holomorphic c = 24 extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Su,
    Spin,
    E6,
}

#[derive(Clone, Copy, ValueEnum)]
enum DataFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Labels, h, c, quantum dimensions and optionally S of one theory.
    ModularData {
        #[arg(long, value_enum, default_value = "su")]
        algebra: Algebra,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Include the S-matrix as [re, im] pairs.
        #[arg(long)]
        with_s: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// beta images, partners and level-one branchings for SU(m)_n x SU(n)_m.
    LevelRank {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// One SU(m)_n weight, e.g. "6" or "4,4".
        #[arg(long)]
        weight: Option<String>,
        /// Print the full pairing table.
        #[arg(long)]
        pairing: bool,
        /// Level-one label of SU(mn) whose branching is paired.
        #[arg(long, default_value_t = 0)]
        lambda: u32,
    },
    /// Closes generators under fusion and checks locality.
    LocalSystem {
        /// Factors joined by '*', e.g. mirror:su10_2*su5_1*spin7_1.
        #[arg(long)]
        theory: String,
        /// Comma-separated product labels, e.g. "(aJ,y2,v)".
        #[arg(long)]
        generators: String,
    },
    /// Coupling matrix Z = B^T B of a builtin conformal inclusion.
    Coupling {
        #[arg(long)]
        inclusion: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Shows or verifies a bundled extension catalog.
    Catalog {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Builds and verifies the c = 24 entries 18, 27 and 40.
    Verify {
        /// 18, 27, 40 or all.
        #[arg(long, default_value = "all")]
        entry: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Omit the timestamp so repeated runs are byte-identical.
        #[arg(long)]
        reproducible: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure kinds mapped to exit codes.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_out(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::ModularData { algebra, rank, level, with_s, format, out } => {
            let datum = match (algebra, rank) {
                (Algebra::Su, Some(n)) if level == 1 => LevelOne::Su(n).datum()?,
                (Algebra::Su, Some(n)) => ModularDatum::wzw(n, level)?,
                (Algebra::Spin, Some(n)) if level == 1 => LevelOne::Spin(n).datum()?,
                (Algebra::E6, _) if level == 1 => LevelOne::E6.datum()?,
                (Algebra::Su | Algebra::Spin, None) => bail!("--rank is required"),
                _ => bail!("only level-one tables exist for spin and e6"),
            };
            let text = match format {
                DataFormat::Json => pretty(&modular_json(&datum, with_s)),
                DataFormat::Csv => modular_csv(&datum)?,
            };
            write_out(out.as_ref(), &text)?;
            Ok(Outcome::Pass)
        }
        Command::LevelRank { m, n, weight, pairing, lambda } => {
            let value = if let Some(text) = weight {
                let w = AffineWeight::parse(m, n as u32, &text)?;
                let b = beta(&w);
                let mut v = json!({
                    "weight": w.labels(),
                    "h": fmt_q(conformal_weight(&w)),
                    "color": w.color(),
                    "beta": b.labels(),
                });
                if let Ok(p) = partner(&w, lambda) {
                    v["partner"] = json!(p.labels());
                    v["partner_h"] = json!(fmt_q(conformal_weight(&p)));
                }
                v
            } else if pairing {
                let table = branching(lambda, m, n)?;
                json!({
                    "m": m, "n": n, "lambda": lambda,
                    "pairs": table.pairs().iter().map(|p| json!({
                        "dot": p.dot.labels(),
                        "ddot": p.ddot.labels(),
                        "twist": p.twist,
                        "h_dot": fmt_q(conformal_weight(&p.dot)),
                        "h_ddot": fmt_q(conformal_weight(&p.ddot)),
                        "congruent_twists": p.congruent_twists,
                    })).collect::<Vec<_>>(),
                })
            } else {
                let ws = enumerate_weights(m, n as u32)?;
                json!({
                    "m": m, "n": n,
                    "beta": ws.iter().map(|w| json!({"weight": w.labels(), "beta": beta(w).labels()})).collect::<Vec<_>>(),
                })
            };
            write_out(None, &pretty(&value))?;
            Ok(Outcome::Pass)
        }
        Command::LocalSystem { theory, generators } => {
            let owned = parse_product(&theory)?;
            let factors: Vec<&dyn Theory> = owned.iter().map(|b| b.as_ref()).collect();
            let product = TensorProduct::new(factors)?;
            let labels: Vec<&str> = split_top_level(&generators).into_iter().filter(|s| !s.is_empty()).collect();
            let gens = labels.iter().map(|l| product.require(l)).collect::<Result<Vec<_>, _>>()?;
            let value = match find_local_system(&product, &gens) {
                Ok(sys) => json!({
                    "theory": product.name(),
                    "local": true,
                    "group": sys.structure(),
                    "invariant_factors": sys.invariant_factors,
                    "elements": sys.elements.iter().map(|&e| json!({
                        "label": product.label(e),
                        "h": fmt_q(product.h(e)),
                    })).collect::<Vec<_>>(),
                }),
                Err(e) => json!({"theory": product.name(), "local": false, "witness": e.to_string()}),
            };
            let ok = value["local"] == json!(true);
            write_out(None, &pretty(&value))?;
            Ok(outcome(ok))
        }
        Command::Coupling { inclusion, tolerance } => {
            let inc = Inclusion::builtin(&inclusion)
                .with_context(|| format!("known inclusions: {}", INCLUSIONS.join(", ")))?;
            let table = inc.branching()?;
            let z = table.coupling_matrix();
            let report = table.verify_coupling(tolerance);
            let mut entries = Vec::new();
            for (a, row) in z.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    if v != 0 {
                        entries.push(json!([inc.base.label(a), inc.base.label(b), v]));
                    }
                }
            }
            let value = json!({
                "inclusion": inc.name,
                "pass": report.passed(),
                "z_nonzero": entries,
                "checks": report.checks.iter().map(|c| json!({
                    "name": c.name, "status": c.status.as_str(), "residual": c.residual, "details": c.details,
                })).collect::<Vec<_>>(),
            });
            write_out(None, &pretty(&value))?;
            Ok(outcome(report.passed()))
        }
        Command::Catalog { name, check, list, tolerance, format } => {
            if list {
                write_out(None, &format!("{}\n", holonet::CATALOG_NAMES.join("\n")))?;
                return Ok(Outcome::Pass);
            }
            let name = name.expect("clap enforces --name");
            let cat = load_catalog(&name)?;
            if check {
                let report = check_catalog(&cat, tolerance)?;
                write_out(None, &emit_report(&report, format, true))?;
                return Ok(outcome(report.passed()));
            }
            let base = cat.base();
            let value = json!({
                "name": cat.data().name,
                "display": cat.name(),
                "mu": fmt_q(cat.mu()),
                "index": cat.index(),
                "irreps": (0..cat.len()).map(|i| json!({
                    "label": cat.label(i),
                    "dim": cat.dim(i),
                    "h_mod1": fmt_q(cat.h(i)),
                    "dual": cat.label(cat.dual(i)),
                    "restriction": cat.restriction(i).describe(base),
                })).collect::<Vec<_>>(),
            });
            write_out(None, &pretty(&value))?;
            Ok(Outcome::Pass)
        }
        Command::Verify { entry, tolerance, format, reproducible, out } => {
            let ids: Vec<EntryId> = if entry == "all" {
                EntryId::ALL.to_vec()
            } else {
                let n: u32 = entry.parse().map_err(|_| anyhow::anyhow!("--entry must be 18, 27, 40 or all"))?;
                vec![EntryId::from_number(n)?]
            };
            let results: Vec<Result<_, HolonetError>> = std::thread::scope(|s| {
                let handles: Vec<_> = ids
                    .iter()
                    .map(|&id| {
                        s.spawn(move || {
                            let (cat, _) = load_verified_catalog(id.catalog_name(), 1e-6)?;
                            Ok(verify_entry(id, &cat, tolerance)?)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
            });
            let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            write_out(out.as_ref(), &emit_reports(&reports, format, reproducible))?;
            Ok(outcome(reports.iter().all(|r| r.passed())))
        }
    }
}

fn modular_json(d: &ModularDatum, with_s: bool) -> Value {
    let mut v = json!({
        "name": d.name(),
        "c": fmt_q(d.central_charge()),
        "mu": d.mu_index(),
        "labels": (0..d.len()).map(|i| json!({
            "label": d.label(i),
            "h": fmt_q(d.h(i)),
            "d": d.quantum_dim(i),
            "dual": d.label(d.dual(i)),
        })).collect::<Vec<_>>(),
    });
    if with_s {
        let s = d.s();
        v["s"] =
            json!((0..s.rows()).map(|i| s.row(i).iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    v
}

fn modular_csv(d: &ModularDatum) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "h", "h_float", "d"])?;
    for i in 0..d.len() {
        w.write_record([d.label(i), fmt_q(d.h(i)), format!("{}", to_f64(d.h(i))), format!("{}", d.quantum_dim(i))])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
