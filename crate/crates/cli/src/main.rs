use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weaves::census::{census_with, write_csv, CensusConfig};
use weaves::hyperbolicity::HyperbolicityVerdict;
use weaves::{
    homeo_canonical_form, is_hyperbolic, is_layered, isotopy_witness, jsj_report, orbit,
    parse_matrix, plain, render, satin, twill, CrossingMatrix, JsjPiece, RenderStyle,
    WeaveDocument, WeaveError,
};

/// Isotopy, hyperbolicity and census tools for weaves on the torus.
///
/// Matrices are rows of 0/1 joined by '/', e.g. 01/10, where entry (i, j)
/// is 1 when warp i passes over weft j. An argument of the form @FILE reads
/// the matrix from a text or JSON document.
#[derive(Parser)]
#[command(name = "weave", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Least diagram in the isotopy class.
    Canon {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
    },
    /// Least diagram up to isotopy and the symmetries of the thickened torus.
    HomeoCanon {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
    },
    /// Decide isotopy of two diagrams.
    Isotopic {
        #[arg(value_parser = matrix_arg)]
        a: CrossingMatrix,
        #[arg(value_parser = matrix_arg)]
        b: CrossingMatrix,
    },
    /// List the isotopy class.
    Orbit {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
        /// Maximum number of states to explore.
        #[arg(long)]
        cap: Option<usize>,
        /// Print the moves reaching each member.
        #[arg(long)]
        witness: bool,
    },
    /// Hyperbolicity verdict.
    Hyperbolic {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
        /// Print the obstruction found.
        #[arg(long)]
        witness: bool,
    },
    /// Layering test with the layers bottom to top.
    Layered {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
    },
    /// Decomposition into hyperbolic, axis-only and parallel-family pieces.
    Decompose {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
    },
    /// Exhaustive census of m x n diagrams.
    Census {
        m: usize,
        n: usize,
        /// Write the CSV row here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest m*n to accept.
        #[arg(long, default_value_t = weaves::census::DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Draw the diagram.
    Render {
        #[arg(value_parser = matrix_arg)]
        matrix: CrossingMatrix,
        #[arg(long, value_enum, default_value_t = Style::Ascii)]
        style: Style,
    },
    /// Generate a named weave.
    #[command(subcommand)]
    Gen(Generator),
}

#[derive(Subcommand)]
enum Generator {
    /// Checkerboard; m and n even.
    Plain { m: usize, n: usize },
    /// Diagonal ribs, `over` up and `under` down per warp.
    Twill {
        m: usize,
        n: usize,
        over: usize,
        under: usize,
    },
    /// n x n satin with the given step.
    Satin { n: usize, step: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Ascii,
    Svg,
}

fn matrix_arg(s: &str) -> Result<CrossingMatrix, String> {
    let (source, text) = match s.strip_prefix('@') {
        Some(path) => (path, fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?),
        None => ("argument", s.to_string()),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        WeaveDocument::from_json(trimmed)
            .map(|d| d.matrix)
            .map_err(|e| format!("{source}: {e}"))
    } else {
        parse_matrix(trimmed).map_err(|e| e.to_string())
    }
}

fn moves_json(moves: &weaves::MoveSequence) -> Value {
    serde_json::to_value(moves).expect("moves serialize")
}

fn run(cli: Cli) -> Result<String, WeaveError> {
    let json_mode = cli.json;
    let out = match cli.command {
        Command::Canon { matrix } => {
            let o = orbit(&matrix, None)?;
            let moves = o.path_to(o.min()).expect("member");
            if json_mode {
                json!({
                    "canonical": o.min().to_string(),
                    "m": matrix.m(),
                    "n": matrix.n(),
                    "orbit_size": o.len(),
                    "moves": moves_json(&moves),
                })
                .to_string()
            } else {
                o.min().to_string()
            }
        }
        Command::HomeoCanon { matrix } => {
            let form = homeo_canonical_form(&matrix)?;
            if json_mode {
                json!({
                    "canonical": form.matrix.to_string(),
                    "m": form.matrix.m(),
                    "n": form.matrix.n(),
                    "orbit_size": form.orbit_size,
                    "moves": [],
                })
                .to_string()
            } else {
                form.matrix.to_string()
            }
        }
        Command::Isotopic { a, b } => {
            let witness = match isotopy_witness(&a, &b) {
                Ok(w) => Some(w),
                Err(WeaveError::NotIsotopic) => None,
                Err(e) => return Err(e),
            };
            if json_mode {
                json!({
                    "isotopic": witness.is_some(),
                    "moves": witness.as_ref().map(moves_json).unwrap_or(json!([])),
                })
                .to_string()
            } else if witness.is_some() {
                "isotopic".to_string()
            } else {
                "not isotopic".to_string()
            }
        }
        Command::Orbit {
            matrix,
            cap,
            witness,
        } => {
            let o = orbit(&matrix, cap)?;
            let mut members: Vec<&CrossingMatrix> = o.members().iter().collect();
            members.sort();
            if json_mode {
                let listed: Vec<Value> = members
                    .iter()
                    .map(|m| {
                        if witness {
                            json!({"matrix": m.to_string(), "moves": moves_json(&o.path_to(m).expect("member"))})
                        } else {
                            json!(m.to_string())
                        }
                    })
                    .collect();
                json!({
                    "canonical": o.min().to_string(),
                    "orbit_size": o.len(),
                    "members": listed,
                    "moves": [],
                })
                .to_string()
            } else {
                let mut lines = vec![format!("orbit size {}", o.len())];
                for m in members {
                    if witness {
                        let path = o.path_to(m).expect("member");
                        if path.is_empty() {
                            lines.push(format!("{m}  (identity)"));
                        } else {
                            lines.push(format!("{m}  {path}"));
                        }
                    } else {
                        lines.push(m.to_string());
                    }
                }
                lines.join("\n")
            }
        }
        Command::Hyperbolic { matrix, witness } => {
            let verdict = is_hyperbolic(&matrix);
            if json_mode {
                verdict.to_json(&matrix).to_string()
            } else if witness {
                let detail = match &verdict {
                    HyperbolicityVerdict::NotHyperbolicLayered(v) => Some(format_layers(&v.layers)),
                    HyperbolicityVerdict::NotHyperbolicParallel(w) => Some(format!(
                        "{} {} and {} {} become adjacent after: {}",
                        w.kind,
                        w.pair.0 + 1,
                        w.kind,
                        w.pair.1 + 1,
                        if w.moves.is_empty() { "no moves".to_string() } else { w.moves.to_string() }
                    )),
                    _ => None,
                };
                match detail {
                    Some(d) => format!("{verdict}\n{d}"),
                    None => verdict.to_string(),
                }
            } else {
                verdict.to_string()
            }
        }
        Command::Layered { matrix } => {
            let v = is_layered(&matrix)?;
            if json_mode {
                let layers: Vec<Vec<String>> = v
                    .layers
                    .iter()
                    .map(|l| l.iter().map(ToString::to_string).collect())
                    .collect();
                json!({"layered": v.layered, "layers": layers}).to_string()
            } else {
                let head = if v.layered { "layered" } else { "not layered" };
                format!("{head}\n{}", format_layers(&v.layers))
            }
        }
        Command::Decompose { matrix } => {
            let report = jsj_report(&matrix)?;
            if json_mode {
                serde_json::to_string(&report).expect("report serializes")
            } else {
                report.pieces.iter().map(format_piece).collect::<Vec<_>>().join("\n")
            }
        }
        Command::Census {
            m,
            n,
            csv,
            jobs,
            ceiling,
        } => {
            let config = CensusConfig {
                ceiling,
                jobs,
                ..Default::default()
            };
            let row = census_with(m, n, &config)?;
            let mut buf = Vec::new();
            write_csv(std::slice::from_ref(&row), &mut buf)
                .map_err(|e| WeaveError::Document(e.to_string()))?;
            if let Some(path) = &csv {
                fs::write(path, &buf)
                    .map_err(|e| WeaveError::Document(format!("{}: {e}", path.display())))?;
            }
            if json_mode {
                serde_json::to_string(&row).expect("row serializes")
            } else if csv.is_some() {
                String::new()
            } else {
                String::from_utf8(buf).expect("csv is utf-8").trim_end().to_string()
            }
        }
        Command::Render { matrix, style } => {
            let style = match style {
                Style::Ascii => RenderStyle::Ascii,
                Style::Svg => RenderStyle::Svg,
            };
            let text = render(&WeaveDocument::new(matrix), style);
            if json_mode {
                json!({"render": text}).to_string()
            } else {
                text.trim_end().to_string()
            }
        }
        Command::Gen(generator) => {
            let doc = match generator {
                Generator::Plain { m, n } => plain(m, n)?,
                Generator::Twill { m, n, over, under } => twill(m, n, over, under)?,
                Generator::Satin { n, step } => satin(n, step)?,
            };
            if json_mode {
                doc.to_json()
            } else {
                doc.matrix.to_string()
            }
        }
    };
    Ok(out)
}

fn format_layers(layers: &[Vec<weaves::ComponentId>]) -> String {
    layers
        .iter()
        .enumerate()
        .map(|(k, layer)| {
            let names: Vec<String> = layer.iter().map(ToString::to_string).collect();
            format!("layer {}: {}", k + 1, names.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn format_piece(piece: &JsjPiece) -> String {
    let join = |s: &[weaves::Strand]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    match piece {
        JsjPiece::HyperbolicWeave { matrix, warps, wefts } => format!(
            "hyperbolic {} warps [{}] wefts [{}]",
            matrix,
            join(warps),
            join(wefts)
        ),
        JsjPiece::AxisOnlyWeave { kind, strands } => {
            format!("axis-only {kind} [{}]", join(strands))
        }
        JsjPiece::SolidTorusParallelFamily { id, kind, members } => {
            format!("parallel family{} {kind} [{}]", id + 1, join(members))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
