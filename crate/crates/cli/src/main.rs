//! `regtri`: build, check, classify and draw degree-regular triangulations.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use regtri_core::classify::{classify_closed, reference, ReferenceKind};
use regtri_core::equivalence::find_isomorphism;
use regtri_core::generator::{
    generate_with, layer_counts_closed_form, layer_counts_recurrence, verify_document,
    GenerateOptions, DEFAULT_MAX_VERTICES,
};
use regtri_core::geometry::{
    realize_surface, render_svg, verify_metric, write_off, Model, RealizeOptions, SvgOptions,
};
use regtri_core::tri::{TriDocument, TriError};
use regtri_core::SimplicialSurface;

#[derive(Debug, Parser)]
#[command(name = "regtri", version, about = "Degree-regular triangulations of surfaces")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Sphere,
    Flat,
    Hyperbolic,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Sphere => Model::Spherical,
            ModelArg::Flat => Model::Euclidean,
            ModelArg::Hyperbolic => Model::Hyperboloid,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the layered d-regular disc of radius K as TRI.
    Generate {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        layers: usize,
        /// Output file, `-` for standard output.
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long, env = "REGTRI_MAX_VERTICES", default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Print the layer sizes n_0 .. n_K as `d<TAB>k<TAB>n_k`.
    Count {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        layers: usize,
        /// Also evaluate the closed form and compare.
        #[arg(long)]
        closed_form: bool,
    },
    /// Check the layer invariants of an annotated TRI disc.
    Verify { file: PathBuf },
    /// Identify a closed degree-regular surface.
    Classify { file: PathBuf },
    /// Decide whether two TRI surfaces are combinatorially equivalent.
    Isocheck { first: PathBuf, second: PathBuf },
    /// Write one of the small-degree reference surfaces as TRI.
    Reference {
        #[arg(value_parser = parse_reference)]
        kind: ReferenceKind,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Place the vertices in a constant-curvature model and audit the metric.
    Realize {
        file: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        off: Option<PathBuf>,
        /// Draw hyperbolic edges as geodesic arcs.
        #[arg(long)]
        arcs: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_reference(s: &str) -> Result<ReferenceKind, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: TriError },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Format { .. } => 3,
        }
    }
}

fn display(path: &Path) -> String {
    if path == Path::new("-") {
        "<stdin>".into()
    } else {
        path.display().to_string()
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: display(path),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: if path == Path::new("-") {
            "<stdout>".into()
        } else {
            path.display().to_string()
        },
        source,
    };
    if path == Path::new("-") {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(io_err)?;
        out.flush().map_err(io_err)
    } else {
        fs::write(path, text).map_err(io_err)
    }
}

fn read_document(path: &Path) -> Result<TriDocument, CliError> {
    TriDocument::parse(&read_text(path)?).map_err(|source| CliError::Format {
        path: display(path),
        source,
    })
}

fn read_surface(path: &Path) -> Result<SimplicialSurface, CliError> {
    read_document(path)?
        .to_surface()
        .map_err(|source| CliError::Format {
            path: display(path),
            source,
        })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tsv = cli.format == Format::Tsv;
    match cli.command {
        Command::Generate {
            degree,
            layers,
            out,
            max_vertices,
        } => {
            let options = GenerateOptions {
                max_vertices,
                ..GenerateOptions::default()
            };
            let disk = generate_with(degree, layers, options)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            write_text(&out, &disk.to_document().write())
        }
        Command::Count {
            degree,
            layers,
            closed_form,
        } => {
            let counts =
                layer_counts_recurrence(degree, layers).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut text = String::new();
            let mut all_match = true;
            if closed_form {
                let closed = layer_counts_closed_form(degree, layers)
                    .map_err(|e| CliError::Failed(e.to_string()))?;
                for (k, (n, c)) in counts.iter().zip(&closed).enumerate() {
                    all_match &= n == c;
                    text += &format!("{degree}\t{k}\t{n}\t{c}\t{}\n", n == c);
                }
            } else {
                for (k, n) in counts.iter().enumerate() {
                    text += &format!("{degree}\t{k}\t{n}\n");
                }
            }
            write_text(Path::new("-"), &text)?;
            if all_match {
                Ok(())
            } else {
                Err(CliError::Failed("closed form disagrees with the recurrence".into()))
            }
        }
        Command::Verify { file } => {
            let report = verify_document(&read_document(&file)?);
            let text = if tsv {
                report.to_tsv()
            } else {
                format!("{report}\n")
            };
            write_text(Path::new("-"), &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed("layer invariants violated".into()))
            }
        }
        Command::Classify { file } => {
            let surface = read_surface(&file)?;
            let c = classify_closed(&surface).map_err(|e| CliError::Failed(e.to_string()))?;
            let text = if tsv {
                format!("{}\t{}\t{}\n", c.case, c.degree, c.chi)
            } else {
                format!("{c}\n")
            };
            write_text(Path::new("-"), &text)
        }
        Command::Isocheck { first, second } => {
            let a = read_surface(&first)?;
            let b = read_surface(&second)?;
            let map = find_isomorphism(&a, &b).map_err(|e| CliError::Failed(e.to_string()))?;
            write_text(
                Path::new("-"),
                if map.is_some() {
                    "equivalent\n"
                } else {
                    "inequivalent\n"
                },
            )?;
            match map {
                Some(_) => Ok(()),
                None => Err(CliError::Failed("surfaces are not equivalent".into())),
            }
        }
        Command::Reference { kind, out } => {
            write_text(&out, &TriDocument::from_surface(&reference(kind).surface).write())
        }
        Command::Realize {
            file,
            model,
            svg,
            off,
            arcs,
            tol,
        } => {
            if !(tol >= 0.0) {
                return Err(CliError::Usage(format!("tolerance must be non-negative, got {tol}")));
            }
            let surface = read_surface(&file)?;
            let r = realize_surface(&surface, model.into(), RealizeOptions::default())
                .map_err(|e| CliError::Failed(e.to_string()))?;
            let report = verify_metric(&r, tol);
            if let Some(path) = svg {
                let options = SvgOptions {
                    arcs,
                    ..SvgOptions::default()
                };
                write_text(&path, &render_svg(&r, &options))?;
            }
            if let Some(path) = off {
                write_text(&path, &write_off(&r))?;
            }
            let text = if tsv {
                report.to_tsv()
            } else {
                format!("{report}\n")
            };
            write_text(Path::new("-"), &text)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Failed("metric check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("regtri: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
