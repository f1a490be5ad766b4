use std::fs;
use std::path::{Path, PathBuf};
use std::process;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use colimkit::canon::{canonical, serialize};
use colimkit::commands::{self, Bounds};
use colimkit::error::CliError;
use colimkit::parser::parse;
use colimkit::report::RunReport;
use colimkit::resolve::{resolve, Env};

/// Bounded checkers for colimits of set diagrams, poset joins, presented
/// categories, grids of squares, cubes, and message relays.
#[derive(Debug, Parser)]
#[command(name = "colimkit", version)]
struct Cli {
    /// Search depth for grid and cube equality.
    #[arg(long, global = true, default_value_t = 12)]
    depth: usize,

    /// Rewriting depth for path equality in presented categories.
    #[arg(long, global = true, default_value_t = 8)]
    word_depth: usize,

    /// Emit the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized commands; the others accept and ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the colimit of a diagram of finite sets.
    Colim {
        /// Diagram to use when the document defines more than one.
        #[arg(long)]
        diagram: Option<String>,
        file: PathBuf,
    },
    /// Factor a commuting cocone through the colimit.
    Factor {
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        cocone: Option<String>,
        file: PathBuf,
    },
    /// Check that a cocone commutes with every edge of its diagram.
    CheckCocone {
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        cocone: Option<String>,
        file: PathBuf,
    },
    /// Find the join of two poset elements, optionally certifying it as a
    /// colimit over a lower-bound witness.
    Join {
        #[arg(long)]
        poset: Option<String>,
        /// Lower bound of both elements; turns the join into a span colimit.
        #[arg(long)]
        witness: Option<String>,
        a: String,
        b: String,
        file: PathBuf,
    },
    /// Check identity and associativity over a finite composition table.
    CheckAxioms {
        #[arg(long)]
        category: Option<String>,
        file: PathBuf,
    },
    /// Sort a word of commuting atoms and print it with exponents.
    NormalizeWord {
        #[arg(required = true)]
        atoms: Vec<String>,
    },
    /// Evaluate the outer boundary of a grid of squares.
    GridBoundary {
        #[arg(long)]
        grid: Option<String>,
        file: PathBuf,
    },
    /// Decide whether two grids compose to the same square, within bounds.
    GridEqual {
        left: String,
        right: String,
        file: PathBuf,
    },
    /// Decide whether the two composites of a cube agree, within bounds.
    CubeCheck {
        #[arg(long)]
        cube: Option<String>,
        file: PathBuf,
    },
    /// Split a message, route the parts through a network, and reassemble.
    RelayDemo {
        #[arg(long)]
        message: Option<String>,
        #[arg(long)]
        network: Option<String>,
        /// Number of parts to split the message into.
        #[arg(long, default_value_t = 4)]
        parts: usize,
        /// Independent seed for routing and delivery order; derived from
        /// --seed when absent.
        #[arg(long)]
        route_seed: Option<u64>,
        file: PathBuf,
    },
    /// Verify the universal property of a colimit by exhaustive enumeration.
    VerifyUniversal {
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        cocone: Option<String>,
        file: PathBuf,
    },
}

fn load(path: &Path, word_depth: usize) -> Result<(Env, String), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        message: format!("cannot read `{}`: {e}", path.display()),
    })?;
    let document = canonical(&parse(&text)?);
    let canonical_text = serialize(&document);
    let env = resolve(&document, word_depth)?;
    Ok((env, canonical_text))
}

fn run(cli: Cli) -> Result<RunReport, CliError> {
    let bounds = Bounds {
        depth: cli.depth,
        word_depth: cli.word_depth,
    };
    let seed = cli.seed;
    match cli.command {
        Command::Colim { diagram, file } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::colim(&env, &canonical, diagram.as_deref())
        }
        Command::Factor {
            diagram,
            cocone,
            file,
        } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::factor(&env, &canonical, diagram.as_deref(), cocone.as_deref())
        }
        Command::CheckCocone {
            diagram,
            cocone,
            file,
        } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::check_cocone_cmd(&env, &canonical, diagram.as_deref(), cocone.as_deref())
        }
        Command::Join {
            poset,
            witness,
            a,
            b,
            file,
        } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::join(&env, &canonical, poset.as_deref(), &a, &b, witness.as_deref())
        }
        Command::CheckAxioms { category, file } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::check_axioms(&env, &canonical, category.as_deref())
        }
        Command::NormalizeWord { atoms } => commands::normalize_word(&atoms),
        Command::GridBoundary { grid, file } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::grid_boundary(&env, &canonical, grid.as_deref())
        }
        Command::GridEqual { left, right, file } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::grid_equal(&env, &canonical, &left, &right, bounds)
        }
        Command::CubeCheck { cube, file } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::cube_check(&env, &canonical, cube.as_deref(), bounds)
        }
        Command::RelayDemo {
            message,
            network,
            parts,
            route_seed,
            file,
        } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::relay_demo(
                &env,
                &canonical,
                message.as_deref(),
                network.as_deref(),
                parts,
                seed,
                route_seed,
            )
        }
        Command::VerifyUniversal {
            diagram,
            cocone,
            file,
        } => {
            let (env, canonical) = load(&file, bounds.word_depth)?;
            commands::verify_universal(&env, &canonical, diagram.as_deref(), cocone.as_deref())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    let json = cli.json;
    let started = Instant::now();
    match run(cli) {
        Ok(report) => {
            let elapsed_ms = started.elapsed().as_millis() as u64;
            let code = report.status.exit_code();
            if json {
                let body = json!({"report": report.to_json(), "timing_ms": elapsed_ms});
                println!("{body}");
            } else {
                print!("{}", report.render_text());
                println!("time: {elapsed_ms} ms");
            }
            process::exit(code);
        }
        Err(err) => {
            if json {
                let body = json!({"report": {"error": err.to_string(), "status": "error"}});
                println!("{body}");
            }
            eprintln!("error: {err}");
            process::exit(err.exit_code());
        }
    }
}
