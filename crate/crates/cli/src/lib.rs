//! Command-line front end for the `btangent` library.
//!
//! Every subcommand produces one report, rendered as JSON (default), Markdown
//! or, for graph-valued inputs, Graphviz DOT. Exit code 0 means success, 2 a
//! negative mathematical verdict, 1 an operational error.

pub mod input;
pub mod render;
pub mod report;

use std::path::PathBuf;

use btangent::euler::EulerError;
use btangent::index::{sphere_pole_zeros, x_delta, Atlas, IndexError, NamedField};
use btangent::obstruction::{BmReport, ObstructionError};
use btangent::sphere::{edge_s2_homotopy_witness, sphere_map_report, SphereError};
use btangent::{
    b_frame_index, classify_bm, edge_obstruction, equivalence_report, euler_report, two_color, verify_poincare_hopf,
    winding_index, BGraph, EdgeVerdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use input::InputError;
use report::{ColorReport, EdgeReport, IndexReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Frame {
    Honest,
    B,
}

#[derive(Debug, Parser)]
#[command(name = "btangent", version, about = "Obstructions to b-tangent bundles being tangent bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Manifold JSON file (may also be given positionally).
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Ambient dimension of the sphere `Sⁿ⁻¹ ⊂ ℝⁿ` for `sphere`.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Order of the bᵐ-tangent bundle to classify with `analyze`.
    #[arg(long, global = true)]
    pub m: Option<u32>,

    /// Parameter δ of the `x_delta` field.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<f64>,

    /// Monte Carlo samples for `sphere`, or steps of the `edge` witness.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// RNG seed for `sphere`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Contour radius for `index` and `ph-verify`.
    #[arg(long, global = true)]
    pub radius: Option<f64>,

    /// Dimension of M for `edge`.
    #[arg(long = "dim-m", global = true)]
    pub dim_m: Option<u32>,

    /// Fibre dimension for `edge`.
    #[arg(long = "dim-f", global = true)]
    pub dim_f: Option<u32>,

    /// Built-in field for `index`: x_delta, radial, saddle, x0_degenerate, sphere_height_b.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Contour center `x,y` for `index`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_point)]
    pub center: Option<(f64, f64)>,

    /// Frame in which `index` measures a b-field.
    #[arg(long, global = true, value_enum, default_value = "honest")]
    pub frame: Frame,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Equivalence verdict: colorability, L, w, orientability, f, KO.
    Analyze { file: Option<PathBuf> },
    /// b-Euler and classical Euler numbers.
    Euler { file: Option<PathBuf> },
    /// Canonical two-coloring of the associated graph.
    Color { file: Option<PathBuf> },
    /// Winding-number index of a built-in planar field.
    Index,
    /// Degree of the sphere map μf by quadrature and by preimages.
    Sphere,
    /// Edge-structure obstruction; without input, the S² homotopy witness.
    Edge { file: Option<PathBuf> },
    /// Poincaré–Hopf cross-check on S² with the height b-field.
    PhVerify { file: Option<PathBuf> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("`{0}` needs a manifold file (positional or --input)")]
    MissingInput(&'static str),
    #[error("input given twice: {0} and {1}")]
    DuplicateInput(PathBuf, PathBuf),
    #[error("--format {format} is not available for `{command}`")]
    Format { format: &'static str, command: &'static str },
    #[error("`index` needs --field, one of {names}", names = NamedField::NAMES.join(", "))]
    MissingField,
    #[error("unknown field `{0}`, expected one of {names}", names = NamedField::NAMES.join(", "))]
    UnknownField(String),
    #[error("field `x_delta` needs --delta")]
    MissingDelta,
    #[error("--frame b needs a b-field (x_delta or x0_degenerate), got `{0}`")]
    NotABField(String),
    #[error("ph-verify works on S²: total χ = 2 with two regions joined by one edge, or one region without edges")]
    NotASphere,
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Euler(#[from] EulerError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
    #[error("cannot serialize report: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Rendered report plus the exit code to leave with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(x)?, num(y)?))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Euler { .. } => "euler",
            Command::Color { .. } => "color",
            Command::Index => "index",
            Command::Sphere => "sphere",
            Command::Edge { .. } => "edge",
            Command::PhVerify { .. } => "ph-verify",
        }
    }

    fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Analyze { file }
            | Command::Euler { file }
            | Command::Color { file }
            | Command::Edge { file }
            | Command::PhVerify { file } => file.as_ref(),
            Command::Index | Command::Sphere => None,
        }
    }
}

impl Cli {
    fn input_path(&self) -> Result<Option<&PathBuf>, CliError> {
        match (self.command.file(), self.input.as_ref()) {
            (Some(a), Some(b)) if a != b => Err(CliError::DuplicateInput(a.clone(), b.clone())),
            (a, b) => Ok(a.or(b)),
        }
    }

    fn load(&self) -> Result<Option<BGraph>, CliError> {
        Ok(match self.input_path()? {
            Some(p) => Some(input::load(p)?.graph),
            None => None,
        })
    }

    fn require(&self) -> Result<BGraph, CliError> {
        self.load()?.ok_or(CliError::MissingInput(self.command.name()))
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

struct Emit<'a> {
    cli: &'a Cli,
}

impl Emit<'_> {
    fn render<T: Serialize>(
        &self,
        value: &T,
        markdown: impl FnOnce(&T) -> String,
        dot: Option<String>,
    ) -> Result<String, CliError> {
        match self.cli.format {
            Format::Json => json(value),
            Format::Markdown => Ok(markdown(value)),
            Format::Dot => dot.ok_or(CliError::Format {
                format: "dot",
                command: self.cli.command.name(),
            }),
        }
    }
}

fn outcome(stdout: String, negative: bool) -> Outcome {
    Outcome {
        stdout,
        stderr: String::new(),
        code: if negative { EXIT_NEGATIVE } else { EXIT_OK },
    }
}

/// Executes one invocation. Operational failures are returned as errors;
/// negative verdicts come back as an [`Outcome`] with exit code 2.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let emit = Emit { cli };
    match &cli.command {
        Command::Analyze { .. } => {
            let g = cli.require()?;
            let mut v = equivalence_report(&g)?;
            if let Some(m) = cli.m {
                v.bm_classification = Some(BmReport {
                    m,
                    class: classify_bm(m)?,
                });
            }
            let dot = render::dot(&g, v.coloring.as_ref());
            Ok(outcome(emit.render(&v, render::verdict, Some(dot))?, !v.two_colorable))
        }
        Command::Euler { .. } => {
            let g = cli.require()?;
            match euler_report(&g) {
                Ok(r) => {
                    let dot = render::dot(&g, Some(&r.coloring_used));
                    Ok(outcome(emit.render(&r, render::euler, Some(dot))?, false))
                }
                Err(e @ EulerError::NotColorable) => Ok(Outcome {
                    stdout: String::new(),
                    stderr: format!("{e}\n"),
                    code: EXIT_NEGATIVE,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Color { .. } => {
            let g = cli.require()?;
            let r = ColorReport::new(two_color(&g));
            let dot = render::dot(&g, r.coloring.as_ref());
            Ok(outcome(emit.render(&r, render::color, Some(dot))?, !r.two_colorable))
        }
        Command::Index => {
            let name = cli.field.as_deref().ok_or(CliError::MissingField)?;
            if name == "x_delta" && cli.delta.is_none() {
                return Err(CliError::MissingDelta);
            }
            let field = NamedField::parse(name, cli.delta).ok_or_else(|| CliError::UnknownField(name.to_owned()))?;
            let center = cli.center.unwrap_or_else(|| field.default_center());
            let radius = cli.radius.unwrap_or_else(|| field.default_radius());
            let result = match cli.frame {
                Frame::Honest => winding_index(&field, center, radius)?,
                Frame::B => {
                    let delta = match field {
                        NamedField::XDelta(d) => d,
                        NamedField::X0Degenerate => 0.0,
                        _ => return Err(CliError::NotABField(name.to_owned())),
                    };
                    b_frame_index(&x_delta(delta), center, radius)?
                }
            };
            let r = IndexReport {
                field: name.to_owned(),
                delta: matches!(field, NamedField::XDelta(_)).then_some(cli.delta).flatten(),
                frame: match cli.frame {
                    Frame::Honest => "honest",
                    Frame::B => "b",
                }
                .to_owned(),
                center,
                result,
            };
            Ok(outcome(emit.render(&r, render::index, None)?, false))
        }
        Command::Sphere => {
            let r = sphere_map_report(
                cli.n.unwrap_or(2),
                cli.samples.unwrap_or(200_000),
                cli.seed.unwrap_or(0),
            )?;
            Ok(outcome(emit.render(&r, render::sphere, None)?, !r.agreement))
        }
        Command::Edge { .. } => match cli.load()? {
            Some(g) => {
                let dim_m = cli.dim_m.unwrap_or(g.ambient_dim);
                let dim_f = cli.dim_f.unwrap_or(0);
                let verdict = edge_obstruction(&g, dim_m, dim_f)?;
                let coloring = two_color(&g);
                let r = EdgeReport {
                    verdict,
                    dim_m,
                    dim_f,
                    codimension: dim_m - dim_f,
                    two_colorable: coloring.is_some(),
                };
                let dot = render::dot(&g, coloring.as_ref());
                Ok(outcome(
                    emit.render(&r, render::edge, Some(dot))?,
                    verdict == EdgeVerdict::Obstructed,
                ))
            }
            None => {
                let r = edge_s2_homotopy_witness(cli.samples.unwrap_or(1000))?;
                Ok(outcome(emit.render(&r, render::checks, None)?, !r.passed))
            }
        },
        Command::PhVerify { .. } => {
            let g = cli.load()?.unwrap_or_else(|| btangent::model::sphere_equator_graph(2));
            let (zeros, atlas) = sphere_setup(&g, cli.radius)?;
            let c = two_color(&g).ok_or(EulerError::NotColorable)?;
            let r = verify_poincare_hopf(&zeros, &g, &c, &atlas)?;
            let dot = render::dot(&g, Some(&c));
            Ok(outcome(emit.render(&r, render::verification, Some(dot))?, !r.passed))
        }
    }
}

/// Pole zeros and atlas for a sphere graph. The north pole lies in the
/// region with the smallest label.
fn sphere_setup(g: &BGraph, radius: Option<f64>) -> Result<(Vec<btangent::index::ChartZero>, Atlas), CliError> {
    if g.ambient_dim != 2 || g.total_region_euler() != 2 {
        return Err(CliError::NotASphere);
    }
    let mut labels: Vec<&str> = g.region_labels().collect();
    labels.sort_unstable();
    let (north, south, b_field) = match (labels.as_slice(), g.edges.as_slice()) {
        ([a, b], [e]) if !e.is_loop() => (*a, *b, true),
        ([a], []) => (*a, *a, false),
        _ => return Err(CliError::NotASphere),
    };
    let mut zeros = sphere_pole_zeros(north, south);
    if let Some(r) = radius {
        zeros.iter_mut().for_each(|z| z.radius = r);
    }
    Ok((zeros, Atlas::sphere_height(b_field)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parser() {
        assert_eq!(parse_point("0.5,-1"), Ok((0.5, -1.0)));
        assert!(parse_point("0.5").is_err());
        assert!(parse_point("a,b").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
