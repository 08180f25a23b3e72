//! The `ttd` command-line tool: argument parsing and the commands, each
//! rendering its result to a string so output can be compared byte for byte.

pub mod error;
pub mod render;
pub mod workspace;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ttd_core::abelian::GroupElement;
use ttd_core::io::{ComplexDocument, HomeoDocument, PairClassRecord, SimplicialMapDocument};
use ttd_core::moduli::{doubled_descriptor, nerve_export, GroupoidModel, HomeoData, DEFAULT_DEPTH};
use ttd_core::pairs::{classify_fiber, cup_vanishes, fiber_classes, restrict, t_dual, PairClass};
use ttd_core::simplicial::{load_complex, mapping_torus, SimplicialComplex, SimplicialMap};

pub use error::{CliError, Result};
use workspace::{parse, Workspace};

#[derive(Debug, Parser)]
#[command(
    name = "ttd",
    version,
    about = "Topological T-duality pairs over finite simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    P0,
    P1,
    Aut,
    Loops,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology groups with generator IDs.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Pair classes in the fiber over a bundle class `c`.
    Pairs {
        complex: PathBuf,
        /// `H^2` coordinates of `c`, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Restrict to one flux class `d`.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, default_value_t = 1)]
        bound: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The T-dual of a pair class record.
    Tdual(RecordArgs),
    /// Correspondence-space record of a pair class.
    Doubled(RecordArgs),
    /// Components, automorphisms and loop groups of a moduli model.
    Moduli(ModuliArgs),
    /// Mapping torus of a simplicial self-map.
    MappingTorus {
        map: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        /// `json` writes the complex, `table` its cohomology.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Restriction of a pair class along a subcomplex inclusion.
    Restrict {
        record: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        subcomplex: PathBuf,
        /// Simplicial map document of the inclusion.
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RecordArgs {
    pub record: PathBuf,
    /// Complex document; with `--workspace` the record's complex name is used instead.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    #[arg(long)]
    pub workspace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModuliArgs {
    pub complex: Option<PathBuf>,
    #[arg(long, num_args = 1..)]
    pub homeos: Vec<PathBuf>,
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long)]
    pub depth: Option<u64>,
    #[arg(long, requires = "model")]
    pub workspace: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, value_enum, default_value = "p0")]
    pub report: Report,
    /// Bundle class for the loops report.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Write the 1-skeleton of the nerve as Graphviz.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

pub fn load_complex_file(path: &Path) -> Result<Arc<SimplicialComplex>> {
    let doc = parse(path, ComplexDocument::from_json)?;
    Ok(Arc::new(load_complex(&doc)?))
}

/// Comma-separated integers as a class of `H^k`.
pub fn parse_class(x: &SimplicialComplex, k: usize, text: &str, what: &str) -> Result<GroupElement> {
    let coords = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<i64>, _>>()
        .map_err(|e| CliError::input(format!("--{what}: {e}")))?;
    let g = x.cohomology(k);
    if coords.len() != g.group().ngens() {
        return Err(CliError::input(format!(
            "--{what}: {} coordinates given, H{k}({}) = {} has {}",
            coords.len(),
            x.name(),
            g.group(),
            g.group().ngens()
        )));
    }
    Ok(g.group().element_i64(&coords)?)
}

fn load_record(args: &RecordArgs) -> Result<PairClass> {
    let record = parse(&args.record, PairClassRecord::from_json)?;
    let base = match (&args.complex, &args.workspace) {
        (Some(path), _) => load_complex_file(path)?,
        (None, Some(dir)) => Arc::new(load_complex(Workspace::load(dir)?.complex(&record.complex)?)?),
        (None, None) => return Err(CliError::input("--complex or --workspace is required")),
    };
    Ok(PairClass::from_record(&record, base)?)
}

fn build_model(args: &ModuliArgs) -> Result<GroupoidModel> {
    let (base, docs, bound, depth): (Arc<SimplicialComplex>, Vec<HomeoDocument>, u64, Option<u64>) =
        match (&args.workspace, &args.model) {
            (Some(dir), Some(name)) => {
                let ws = Workspace::load(dir)?;
                let model = ws.model(name)?;
                let base = Arc::new(load_complex(ws.complex(&model.complex)?)?);
                let docs = model.homeos.iter().map(|h| ws.homeos[h].clone()).collect();
                (
                    base,
                    docs,
                    args.bound.unwrap_or(model.bound),
                    args.depth.or(model.depth),
                )
            }
            _ => {
                let path = args
                    .complex
                    .as_ref()
                    .ok_or_else(|| CliError::input("a complex path or --workspace with --model is required"))?;
                let docs = args
                    .homeos
                    .iter()
                    .map(|p| parse(p, HomeoDocument::from_json))
                    .collect::<Result<Vec<_>>>()?;
                (load_complex_file(path)?, docs, args.bound.unwrap_or(1), args.depth)
            }
        };
    let mut model = GroupoidModel::new(base.clone(), bound)?.with_depth(depth.unwrap_or(DEFAULT_DEPTH));
    for doc in &docs {
        model.register_homeo(HomeoData::from_document(doc, base.clone())?)?;
    }
    Ok(model)
}

/// Runs one command and returns what it prints on standard output.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Homology {
            complex,
            degree,
            format,
        } => {
            let x = load_complex_file(&complex)?;
            Ok(render::homology(&x, degree, format))
        }
        Command::Pairs {
            complex,
            c,
            d,
            bound,
            format,
        } => {
            let x = load_complex_file(&complex)?;
            let c = parse_class(&x, 2, &c, "c")?;
            let fiber = classify_fiber(&x, &c, bound)?;
            let classes = match d {
                Some(d) => {
                    let d = parse_class(&x, 2, &d, "d")?;
                    if !cup_vanishes(&x, &c, &d)? {
                        return Err(CliError::input("--d: c ∪ d does not vanish"));
                    }
                    fiber_classes(&x, &c, &d, bound)?
                }
                None => fiber.classes.clone(),
            };
            Ok(render::pairs(&x, &fiber, &classes, format))
        }
        Command::Tdual(args) => {
            let p = load_record(&args)?;
            Ok(render::json(&t_dual(&p).to_record()))
        }
        Command::Doubled(args) => {
            let p = load_record(&args)?;
            Ok(render::json(&doubled_descriptor(&p)?))
        }
        Command::Moduli(args) => {
            let model = build_model(&args)?;
            if let Some(path) = &args.dot {
                let dot = nerve_export(&model, 1)?.to_dot();
                std::fs::write(path, dot).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            let c = match &args.c {
                Some(text) => Some(parse_class(model.base(), 2, text, "c")?),
                None => None,
            };
            render::moduli(&model, args.report, c.as_ref(), args.format)
        }
        Command::MappingTorus { map, complex, format } => {
            let x = load_complex_file(&complex)?;
            let doc = parse(&map, SimplicialMapDocument::from_json)?;
            let f = SimplicialMap::from_document(&doc, x.clone(), x)?;
            let torus = mapping_torus(&f)?;
            Ok(match format {
                Format::Json => render::json(&torus.to_document()),
                Format::Table => render::homology(&torus, None, Format::Table),
            })
        }
        Command::Restrict {
            record,
            complex,
            subcomplex,
            map,
        } => {
            let x = load_complex_file(&complex)?;
            let a = load_complex_file(&subcomplex)?;
            let p = PairClass::from_record(&parse(&record, PairClassRecord::from_json)?, x.clone())?;
            let incl = SimplicialMap::from_document(&parse(&map, SimplicialMapDocument::from_json)?, a, x)?;
            Ok(render::json(&restrict(&p, &incl)?.to_record()))
        }
    }
}
