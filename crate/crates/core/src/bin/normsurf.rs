use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use normsurf::angles::find_angle_structure;
use normsurf::boundary::{boundary_complex, meridional_bound};
use normsurf::discs::enumerate_disc_types;
use normsurf::matching::{build_system, fundamental_solutions_with};
use normsurf::pipeline::{
    meridian_slots, run_pipeline, slots_to_word, BoundaryBudget, PipelineConfig, FLAG_CAP_PRUNED,
    FLAG_CONDITION_4, FLAG_NO_ANGLE_STRUCTURE, FLAG_TERMINAL, FLAG_TRUNCATED,
};
use normsurf::tri::{parse_input, validate, ParsedInput};
use normsurf::{Error, Result};

#[derive(Parser)]
#[command(
    name = "normsurf",
    version,
    about = "Normal surface search in ideal triangulations of one-cusped manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a triangulation file and describe its boundary.
    Validate(Common),
    /// Find a strict or partially flat angle structure.
    Angles {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        flat_budget: usize,
    },
    /// Contract the boundary torus and bound the meridian length.
    MeridianBound(Common),
    /// Enumerate disc types of one tetrahedron.
    Discs {
        #[arg(long, default_value = "0")]
        b: u32,
        #[arg(long)]
        interior_cap: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the matching equations.
    Match(Universe),
    /// Fundamental solutions within the boundary budget.
    Fundamental {
        #[command(flatten)]
        universe: Universe,
        #[arg(long, default_value_t = 20)]
        coord_cap: i64,
    },
    /// Candidate surfaces on the input triangulation, without moves.
    Candidates(Search),
    /// The full search, starting with 2-3 and 3-2 moves.
    Pipeline(Search),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Universe {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0")]
    b: u32,
    #[arg(long)]
    interior_cap: Option<u32>,
}

#[derive(Args)]
struct Search {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    n: u64,
    /// Boundary degree budget, or `auto`.
    #[arg(long, default_value = "0", value_parser = parse_budget)]
    b: BoundaryBudget,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    flat_budget: usize,
    #[arg(long)]
    interior_cap: Option<u32>,
    #[arg(long, default_value_t = 20)]
    coord_cap: i64,
    /// Multiplier in the automatic boundary budget.
    #[arg(long, default_value_t = 1)]
    surface_factor: u64,
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_budget(s: &str) -> std::result::Result<BoundaryBudget, String> {
    if s == "auto" {
        return Ok(BoundaryBudget::Auto);
    }
    s.parse::<u64>()
        .map(BoundaryBudget::Fixed)
        .map_err(|_| format!("expected a nonnegative integer or `auto`, got `{s}`"))
}

fn read(common: &Common) -> Result<ParsedInput> {
    let text = fs::read_to_string(&common.input)
        .map_err(|e| Error::Syntax(format!("{}: {e}", common.input.display())).at_stage("parse"))?;
    parse_input(&text).map_err(|e| e.at_stage("parse"))
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a command; returns the completeness flags raised.
fn execute(command: Command) -> Result<Vec<String>> {
    match command {
        Command::Validate(common) => {
            let p = read(&common)?;
            let v = validate(&p.triangulation);
            let flags = if v.ok {
                vec![]
            } else {
                vec!["invalid triangulation".to_string()]
            };
            emit(&v, common.out.as_ref())?;
            Ok(flags)
        }
        Command::Angles {
            common,
            flat_budget,
        } => {
            let p = read(&common)?;
            let a = find_angle_structure(&p.triangulation, flat_budget > 0, flat_budget);
            let mut flags = Vec::new();
            match &a {
                None => flags.push(FLAG_NO_ANGLE_STRUCTURE.to_string()),
                Some(a) if a.has_flat() => flags.push(FLAG_CONDITION_4.to_string()),
                Some(_) => {}
            }
            emit(&json!({ "angles": a, "flags": flags }), common.out.as_ref())?;
            Ok(flags)
        }
        Command::MeridianBound(common) => {
            let p = read(&common)?;
            if p.meridian.is_empty() {
                return Err(Error::MissingMeridian.at_stage("meridian-bound"));
            }
            let slots =
                meridian_slots(&p.triangulation, &p.meridian).map_err(|e| e.at_stage("parse"))?;
            let torus =
                boundary_complex(&p.triangulation).map_err(|e| e.at_stage("meridian-bound"))?;
            let mb = meridional_bound(&torus, &slots_to_word(&slots))
                .map_err(|e| e.at_stage("meridian-bound"))?;
            let flags: Vec<String> = mb
                .deviation
                .iter()
                .map(|_| FLAG_TERMINAL.to_string())
                .collect();
            emit(&json!({ "bound": mb, "flags": flags }), common.out.as_ref())?;
            Ok(flags)
        }
        Command::Discs {
            b,
            interior_cap,
            out,
        } => {
            let cap = interior_cap.unwrap_or(b.max(2));
            let en = enumerate_disc_types(b, cap);
            let flags: Vec<String> = en
                .cap_pruned
                .then(|| FLAG_CAP_PRUNED.to_string())
                .into_iter()
                .collect();
            emit(
                &json!({ "b_max": b, "interior_cap": cap, "count": en.discs.len(), "discs": en.discs, "flags": flags }),
                out.as_ref(),
            )?;
            Ok(flags)
        }
        Command::Match(u) => {
            let p = read(&u.common)?;
            let cap = u.interior_cap.unwrap_or(u.b.max(2));
            let en = enumerate_disc_types(u.b, cap);
            let sys = build_system(&p.triangulation, &en.admissible());
            let flags: Vec<String> = en
                .cap_pruned
                .then(|| FLAG_CAP_PRUNED.to_string())
                .into_iter()
                .collect();
            emit(
                &json!({
                    "variables": sys.dimension(),
                    "equations": sys.rows.len(),
                    "system": sys,
                    "flags": flags,
                }),
                u.common.out.as_ref(),
            )?;
            Ok(flags)
        }
        Command::Fundamental {
            universe: u,
            coord_cap,
        } => {
            let p = read(&u.common)?;
            let cap = u.interior_cap.unwrap_or(u.b.max(2));
            let en = enumerate_disc_types(u.b, cap);
            let sys = build_system(&p.triangulation, &en.admissible());
            let basis = fundamental_solutions_with(&sys, Some(coord_cap), Some(u.b as i64))
                .map_err(|e| e.at_stage("fundamental"))?;
            let mut flags = Vec::new();
            if en.cap_pruned {
                flags.push(FLAG_CAP_PRUNED.to_string());
            }
            if basis.truncated {
                flags.push(FLAG_TRUNCATED.to_string());
            }
            emit(
                &json!({ "variables": sys.dimension(), "basis": basis, "flags": flags }),
                u.common.out.as_ref(),
            )?;
            Ok(flags)
        }
        Command::Candidates(s) => search(s, true),
        Command::Pipeline(s) => search(s, false),
    }
}

fn search(s: Search, fixed_triangulation: bool) -> Result<Vec<String>> {
    let text = fs::read_to_string(&s.common.input).map_err(|e| {
        Error::Syntax(format!("{}: {e}", s.common.input.display())).at_stage("parse")
    })?;
    let config = PipelineConfig {
        chi_budget: s.n,
        boundary_budget: s.b,
        depth: if fixed_triangulation { 0 } else { s.depth },
        flat_budget: s.flat_budget,
        interior_cap: s.interior_cap,
        coord_cap: Some(s.coord_cap),
        surface_count_factor: s.surface_factor,
        threads: s.threads,
    };
    let report = run_pipeline(&text, &config)?;
    emit(&report, s.common.out.as_ref())?;
    Ok(report.flags)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(flags) if flags.is_empty() => ExitCode::SUCCESS,
        Ok(flags) => {
            for f in flags {
                eprintln!("incomplete: {f}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
