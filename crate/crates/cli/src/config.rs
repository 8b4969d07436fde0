//! Command-line surface and the resolved [`RunConfig`].

use std::path::PathBuf;
use std::str::FromStr;

use asray_core::ray::MarginPolicy;
use asray_core::VertexId;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "asray",
    version,
    about = "Decide whether a graph is asymorphic to the ray"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify or refute asymorphism to the ray; finite graphs are classified.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Second finite generator to classify against.
        #[arg(long, value_name = "SPEC", conflicts_with = "against_input")]
        against_gen: Option<String>,
        /// Second finite edge list to classify against.
        #[arg(long, value_name = "PATH")]
        against_input: Option<PathBuf>,
    },
    /// Measure the Lipschitz constants of a vertex map.
    CheckMap {
        #[command(flatten)]
        common: CommonArgs,
        /// Map file with one "v f(v)" pair per line.
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
        /// Target generator (default: a prefix of the ray).
        #[arg(long, value_name = "SPEC", conflicts_with = "to_input")]
        to_gen: Option<String>,
        /// Target edge list.
        #[arg(long, value_name = "PATH")]
        to_input: Option<PathBuf>,
    },
    /// Check the ball-structure axioms of a finite graph or ball table.
    Axioms {
        #[command(flatten)]
        common: CommonArgs,
        /// Ball-table file instead of a graph.
        #[arg(long, value_name = "PATH")]
        ball_table: Option<PathBuf>,
    },
    /// Split a tree along its arrow and apply the component-size criterion.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the layer numbering as "v f(v)" lines.
    Numbering {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Edge-list file ("u v" per line).
    #[arg(short = 'i', long, value_name = "PATH", conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generator spec, e.g. comb:inf, kary:2:inf, path:5.
    #[arg(short = 'g', long, value_name = "SPEC")]
    pub gen: Option<String>,
    /// Root vertex (default: generator origin or least id).
    #[arg(long)]
    pub root: Option<u64>,
    /// Exploration radius for infinite inputs.
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
    /// "auto" or a number of trailing layers to leave uncertified.
    #[arg(long, default_value = "auto")]
    pub margin: Margin,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Abort exploration past this many vertices.
    #[arg(long, default_value_t = asray_core::graph::DEFAULT_VERTEX_BUDGET)]
    pub max_vertices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Margin(pub MarginPolicy);

impl FromStr for Margin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Margin(MarginPolicy::Auto));
        }
        s.parse()
            .map(|m| Margin(MarginPolicy::Explicit(m)))
            .map_err(|_| format!("expected \"auto\" or a non-negative integer, got {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    EdgeList(PathBuf),
    Generator(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandConfig {
    Analyze {
        against: Option<InputSource>,
    },
    CheckMap {
        map: PathBuf,
        target: Option<InputSource>,
    },
    Axioms {
        ball_table: Option<PathBuf>,
    },
    Decompose,
    Numbering,
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::Analyze { .. } => "analyze",
            CommandConfig::CheckMap { .. } => "check-map",
            CommandConfig::Axioms { .. } => "axioms",
            CommandConfig::Decompose => "decompose",
            CommandConfig::Numbering => "numbering",
        }
    }
}

/// Everything a run depends on. Identical configs give identical documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Absent only for `axioms --ball-table`.
    pub input: Option<InputSource>,
    pub root: Option<VertexId>,
    pub depth: usize,
    pub margin: MarginPolicy,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub max_vertices: usize,
    pub command: CommandConfig,
}

fn source(input: Option<PathBuf>, gen: Option<String>) -> Option<InputSource> {
    input
        .map(InputSource::EdgeList)
        .or(gen.map(InputSource::Generator))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (common, command) = match cli.command {
            Command::Analyze {
                common,
                against_gen,
                against_input,
            } => (
                common,
                CommandConfig::Analyze {
                    against: source(against_input, against_gen),
                },
            ),
            Command::CheckMap {
                common,
                map,
                to_gen,
                to_input,
            } => (
                common,
                CommandConfig::CheckMap {
                    map,
                    target: source(to_input, to_gen),
                },
            ),
            Command::Axioms { common, ball_table } => {
                (common, CommandConfig::Axioms { ball_table })
            }
            Command::Decompose { common } => (common, CommandConfig::Decompose),
            Command::Numbering { common } => (common, CommandConfig::Numbering),
        };
        let config = RunConfig {
            input: source(common.input, common.gen),
            root: common.root.map(VertexId),
            depth: common.depth,
            margin: common.margin.0,
            format: common.format,
            out: common.out,
            max_vertices: common.max_vertices,
            command,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.depth == 0 {
            return Err(CliError::Usage("--depth must be at least 1".into()));
        }
        if let MarginPolicy::Explicit(m) = self.margin {
            if m >= self.depth {
                return Err(CliError::Usage(format!(
                    "--margin {m} must be below --depth {}",
                    self.depth
                )));
            }
        }
        let table = matches!(
            self.command,
            CommandConfig::Axioms {
                ball_table: Some(_)
            }
        );
        match (&self.input, table) {
            (None, false) => Err(CliError::Usage(
                "one of --input or --gen is required".into(),
            )),
            (Some(_), true) => Err(CliError::Usage(
                "--ball-table replaces --input/--gen".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn defaults() {
        let c = parse(&["asray", "analyze", "-g", "comb:inf"]).unwrap();
        assert_eq!(c.depth, 64);
        assert_eq!(c.margin, MarginPolicy::Auto);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.input, Some(InputSource::Generator("comb:inf".into())));
    }

    #[test]
    fn margin_must_be_below_depth() {
        assert!(
            parse(&["asray", "analyze", "-g", "ray", "--depth", "5", "--margin", "5"]).is_err()
        );
        let c = parse(&[
            "asray", "analyze", "-g", "ray", "--depth", "5", "--margin", "4",
        ])
        .unwrap();
        assert_eq!(c.margin, MarginPolicy::Explicit(4));
        assert!(parse(&["asray", "analyze", "-g", "ray", "--margin", "x"]).is_err());
    }

    #[test]
    fn input_is_required_unless_a_ball_table_is_given() {
        assert!(parse(&["asray", "analyze"]).is_err());
        assert!(parse(&["asray", "axioms", "--ball-table", "t.txt"]).is_ok());
        assert!(parse(&["asray", "axioms", "--ball-table", "t.txt", "-g", "path:3"]).is_err());
        assert!(parse(&["asray", "analyze", "-g", "ray", "-i", "g.txt"]).is_err());
    }
}
