//! `greenberg`: structure polynomials, the Greenberg transform, change of
//! level, brute-force point counts, Weil restriction and the verification
//! suites, over files in the JSON-shaped formats documented in the README.
//!
//! Exit codes: 0 success, 1 check failure or computation error, 2 usage or
//! parse error.

use clap::{Args, Parser, Subcommand};
use greenberg_core::algebra::FiniteAlgebra;
use greenberg_core::cache::LawCache;
use greenberg_core::config;
use greenberg_core::corpus::Guards;
use greenberg_core::error::Error as CoreError;
use greenberg_core::greenberg::GreenbergAlgebra;
use greenberg_core::scheme::solve;
use greenberg_core::transform::{change_level, gr_transform};
use greenberg_core::verify::{render_summary, reports_to_json, run_suites, VerifyConfig};
use greenberg_core::weil::{ext_build_field, res_affine, wr_gr_check};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "greenberg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Structure-polynomial cache directory (default: $GREENBERG_CACHE or ./.cache).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Write the report or output file here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    guards: GuardArgs,
}

#[derive(Args)]
struct GuardArgs {
    /// Cap on algebra cardinality.
    #[arg(long, global = true)]
    size_guard: Option<u64>,
    /// Cap on candidate tuples enumerated by the solver.
    #[arg(long, global = true)]
    candidate_guard: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the structure polynomials of R_N for a base ring.
    StructurePolys {
        /// Base-ring config file.
        #[arg(long)]
        base: PathBuf,
        /// Truncation level N.
        #[arg(long)]
        level: usize,
    },
    /// Greenberg transform of an affine scheme file into a scheme over k.
    Transform {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Change-of-level data: the reduced scheme, both transforms and the
    /// coordinate projection between them.
    ChangeLevel {
        #[arg(long)]
        scheme: PathBuf,
        /// Target level M <= N.
        #[arg(long)]
        target: usize,
    },
    /// Exact point count of a scheme over a finite algebra.
    Count {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        /// Also list the solutions.
        #[arg(long)]
        list: bool,
    },
    /// Weil restriction of a scheme along an extension.
    WeilRestrict {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        extension: PathBuf,
    },
    /// Compare restriction-then-transform against transform-then-restriction.
    WrGrCheck {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        extension: PathBuf,
        /// Test algebra files (repeatable).
        #[arg(long = "algebra", required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Point-level law checks with witnesses on failure.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Run a verification suite: witt, algebra, ratpts, levels, groups,
    /// weil, or all.
    Verify {
        suite: String,
        /// Seed for the randomized polynomial identities.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// |Gr_N(Z)(A)| = |Z(R_N(A))| with the explicit coordinate bijection.
    RatPts {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Every point downstairs lifts along the change-of-level morphism.
    Surjective {
        #[arg(long)]
        scheme: PathBuf,
        /// Target level m; the scheme's own level is m + i.
        #[arg(long)]
        target: usize,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// The change-of-level square of a formally etale morphism is cartesian.
    Cartesian {
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Kernel count of the change-of-level map against |A|^(i d).
    Kernel {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        algebra: PathBuf,
    },
}

fn guards_from(args: &GuardArgs) -> Guards {
    let mut g = Guards::default();
    if let Some(s) = args.size_guard {
        g.size = s;
        g.points = (s as u128).pow(2);
    }
    if let Some(c) = args.candidate_guard {
        g.candidates = c;
    }
    g
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> anyhow::Result<()> {
    emit(out, &config::to_canonical_string(v))
}

fn load_algebra(path: &Path, guard: u64) -> Result<Arc<FiniteAlgebra>, CoreError> {
    let v = config::load_json_file(path)?;
    config::parse_algebra(&v, &path.display().to_string(), guard)
}

fn run(cli: &Cli) -> Result<bool, CoreError> {
    let cache = match &cli.cache {
        Some(dir) => LawCache::at(dir.clone()),
        None => LawCache::from_env_or_default(),
    };
    let guards = guards_from(&cli.guards);
    match &cli.command {
        Command::StructurePolys { base, level } => {
            let v = config::load_json_file(base)?;
            let spec = config::parse_base_ring(&v, &base.display().to_string())?;
            let ga = GreenbergAlgebra::build(&spec, *level, &cache)?;
            emit(&cli.out, &ga.to_cache_text()).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(true)
        }
        Command::Transform { scheme } => {
            let v = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&v, &scheme.display().to_string(), &cache)?;
            let t = gr_transform(&z)?;
            emit_json(&cli.out, &config::scheme_to_value(&t.result))
                .map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(true)
        }
        Command::ChangeLevel { scheme, target } => {
            let v = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&v, &scheme.display().to_string(), &cache)?;
            let col = change_level(&z, *target, &cache)?;
            let images: Value = col
                .morphism
                .images
                .iter()
                .map(|(tv, img)| {
                    // Identity-on-name coordinate projections.
                    (tv.clone(), json!(img.vars()[0]))
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let report = json!({
                "target_level": target,
                "reduced": config::scheme_to_value(&col.reduced),
                "transform_source": config::scheme_to_value(&col.high.result),
                "transform_target": config::scheme_to_value(&col.low.result),
                "images": images,
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(true)
        }
        Command::Count {
            scheme,
            algebra,
            list,
        } => {
            let v = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&v, &scheme.display().to_string(), &cache)?;
            let alg = load_algebra(algebra, guards.size)?;
            let candidates = z
                .candidate_count(&alg)
                .ok_or_else(|| CoreError::SizeGuard("candidate count overflows".into()))?;
            if candidates > guards.candidates {
                return Err(CoreError::SizeGuard(format!(
                    "{candidates} candidate tuples exceed the guard {}",
                    guards.candidates
                )));
            }
            let outcome = solve(&z, &alg, guards.candidates, *list)?;
            let mut report = json!({
                "count": outcome.count.to_string(),
                "candidates": candidates.to_string(),
                "algebra": alg.label(),
            });
            if *list {
                let sols: Vec<String> = outcome
                    .points
                    .iter()
                    .map(|p| greenberg_core::weil::render_point(&alg, p))
                    .collect();
                report["solutions"] = json!(sols);
            }
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(true)
        }
        Command::WeilRestrict { scheme, extension } => {
            let sv = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&sv, &scheme.display().to_string(), &cache)?;
            let ev = config::load_json_file(extension)?;
            let ext = config::parse_extension(
                &ev,
                &extension.display().to_string(),
                &cache,
                guards.points,
            )?;
            let restricted = res_affine(&z, &ext)?;
            let report = json!({
                "extension": ext.label,
                "gamma": ext.gamma,
                "rank": ext.rank,
                "basis": ext.basis_labels,
                "restriction": config::scheme_to_value(&restricted),
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(true)
        }
        Command::WrGrCheck {
            scheme,
            extension,
            algebras,
        } => {
            let sv = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&sv, &scheme.display().to_string(), &cache)?;
            let ev = config::load_json_file(extension)?;
            let ext = config::parse_extension(
                &ev,
                &extension.display().to_string(),
                &cache,
                guards.points,
            )?;
            let field_ext = ext_build_field(ext.base.k(), ext.top.k(), guards.points)?;
            let algs = algebras
                .iter()
                .map(|p| load_algebra(p, guards.size))
                .collect::<Result<Vec<_>, _>>()?;
            let cells = wr_gr_check(&z, &ext, &field_ext, &algs, guards.candidates)?;
            let passed = cells.iter().all(|c| c.equal());
            let report = json!({
                "extension": ext.label,
                "passed": passed,
                "cells": cells.iter().map(|c| json!({
                    "algebra": c.algebra,
                    "lhs": c.lhs.to_string(),
                    "rhs": c.rhs.to_string(),
                    "equal": c.equal(),
                    "witness": c.witness,
                })).collect::<Vec<_>>(),
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(passed)
        }
        Command::Check { what } => run_check(what, cli, &cache, &guards),
        Command::Verify { suite, seed } => {
            let cfg = VerifyConfig {
                cache,
                guards,
                seed: *seed,
            };
            let started = std::time::Instant::now();
            let reports = run_suites(suite, &cfg)?;
            emit_json(&cli.out, &reports_to_json(&reports))
                .map_err(|e| CoreError::Io(e.to_string()))?;
            eprint!("{}", render_summary(&reports));
            eprintln!("elapsed: {:.2?}", started.elapsed());
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}

fn run_check(
    what: &CheckCommand,
    cli: &Cli,
    cache: &LawCache,
    guards: &Guards,
) -> Result<bool, CoreError> {
    use greenberg_core::transform::{
        check_cartesian, check_surjective_lift, ker_change_level_count, rat_pts_check,
    };
    match what {
        CheckCommand::RatPts { scheme, algebra } => {
            let v = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&v, &scheme.display().to_string(), cache)?;
            let alg = load_algebra(algebra, guards.size)?;
            let (transformed, direct, bijection) = rat_pts_check(&z, &alg, guards.candidates)?;
            let report = json!({
                "check": "rat-pts",
                "algebra": alg.label(),
                "transform_count": transformed.to_string(),
                "direct_count": direct.to_string(),
                "bijection": bijection,
                "passed": bijection,
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(bijection)
        }
        CheckCommand::Surjective {
            scheme,
            target,
            algebra,
        } => {
            let v = config::load_json_file(scheme)?;
            let z = config::parse_scheme(&v, &scheme.display().to_string(), cache)?;
            let alg = load_algebra(algebra, guards.size)?;
            let rep = check_surjective_lift(&z, *target, &alg, guards.candidates, cache)?;
            let passed = rep.surjective() && rep.all_images_valid;
            let report = json!({
                "check": "surjective",
                "algebra": alg.label(),
                "target_level": target,
                "low_count": rep.low_count.to_string(),
                "high_count": rep.high_count.to_string(),
                "images_well_defined": rep.all_images_valid,
                "unlifted_witnesses": rep.unlifted,
                "passed": passed,
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(passed)
        }
        CheckCommand::Cartesian {
            morphism,
            target,
            algebra,
        } => {
            let v = config::load_json_file(morphism)?;
            let f = config::parse_morphism(&v, &morphism.display().to_string(), cache)?;
            let alg = load_algebra(algebra, guards.size)?;
            let rep = check_cartesian(&f, *target, &alg, guards.candidates, cache)?;
            let report = json!({
                "check": "cartesian",
                "algebra": alg.label(),
                "target_level": target,
                "high_count": rep.high_count.to_string(),
                "fiber_product_count": rep.fiber_product_count.to_string(),
                "injective": rep.injective,
                "passed": rep.bijective(),
            });
            let passed = rep.bijective();
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(passed)
        }
        CheckCommand::Kernel {
            group,
            target,
            algebra,
        } => {
            let v = config::load_json_file(group)?;
            let g = config::parse_group(&v, &group.display().to_string(), cache)?;
            let alg = load_algebra(algebra, guards.size)?;
            let count = ker_change_level_count(&g, *target, &alg, guards.candidates, cache)?;
            let d = g.lie_dim()? as u32;
            let i = (g.pres.ring.level() - target) as u32;
            let expected = (alg.order() as u128).pow(i * d);
            let passed = !g.smooth || count == expected;
            let report = json!({
                "check": "kernel",
                "algebra": alg.label(),
                "target_level": target,
                "lie_dim": d,
                "count": count.to_string(),
                "expected_if_smooth": expected.to_string(),
                "smooth_flag": g.smooth,
                "passed": passed,
            });
            emit_json(&cli.out, &report).map_err(|e| CoreError::Io(e.to_string()))?;
            Ok(passed)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            let usage = matches!(e, CoreError::Parse { .. } | CoreError::Io(_));
            std::process::exit(if usage { 2 } else { 1 });
        }
    }
}
