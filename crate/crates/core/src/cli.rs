//! The `z5lab` command line. Exit codes: 0 success, 1 input or usage
//! error (and a failing `check`), 2 a certified negative answer.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::families::{build, enumerate_family, recognize_generalized_multi_wheel, FamilyDescriptor, PrincipalPath};
use crate::gcg::{self, GcgDocument, GcgError};
use crate::group_color::Coloring;
use crate::plane_graph::{Graph, GraphError};
use crate::propcheck::{self, PhiMode, RandomInstanceConfig};
use crate::solver::{
    color_short_cycle, enumerate_colorings, extend_three, extend_two, lemma1_alpha, ExtensionProblem, Instance,
    Lemma1Outcome, ShortCycleOutcome, ThreeOutcome, DEFAULT_NODE_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "z5lab", version, about = "Z5 group colourings of plane near-triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a gcg file and list every violated invariant.
    Validate { input: PathBuf },
    /// Count the colourings respecting labels, lists and precolouring.
    Count { input: PathBuf },
    /// Print colourings, one per line.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Extend a precoloured outer edge.
    Extend2 {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extend a precoloured outer path of three vertices or certify that it does not extend.
    Extend3 {
        input: PathBuf,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Colour a graph whose outer cycle of length at most five is precoloured.
    ShortCycle { input: PathBuf },
    /// Report the difference c(vk) - c(v2) shared by non-extendable path colourings.
    Lemma1Alpha {
        input: PathBuf,
        #[command(flatten)]
        path: PathArg,
        /// Skip the multi-wheel recognition step.
        #[arg(long)]
        no_check: bool,
    },
    /// Build, list and recognise family members.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Run a property check and write its report.
    Check(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// Write the member described by an s-expression as gcg.
    Gen {
        descriptor: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a descriptor of a gcg file as a generalized multi-wheel.
    Recognize {
        input: PathBuf,
        #[command(flatten)]
        path: PathArg,
    },
    /// List every member with at most `max_n` vertices.
    List {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Args, Debug)]
struct PathArg {
    /// Principal path as `vk,v1,v2`; defaults to the last, first and second outer vertices.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    path: Option<Vec<usize>>,
}

impl PathArg {
    fn resolve(&self, doc: &GcgDocument) -> PrincipalPath {
        match self.path.as_deref() {
            Some(&[vk, v1, v2]) => PrincipalPath { vk, v1, v2 },
            _ => PrincipalPath::of(&doc.graph),
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    property: String,
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "uniform")]
    phi_mode: PhiMode,
    #[arg(long)]
    report: Option<PathBuf>,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn read_doc(path: &Path) -> Result<GcgDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    gcg::parse(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn colors_line(c: &Coloring) -> String {
    c.colors.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
}

/// The input document with every vertex precoloured by `c`.
fn write_colored(doc: &GcgDocument, c: &Coloring, path: &Path) -> Result<()> {
    let mut out = doc.clone();
    for (v, &col) in c.colors.iter().enumerate() {
        if out.colors.precolored(v).is_none() {
            out.colors.precolor(v, col)?;
        }
    }
    fs::write(path, gcg::write(&out)).with_context(|| format!("cannot write {}", path.display()))
}

fn problem(doc: &GcgDocument, len: usize) -> Result<ExtensionProblem> {
    let p = ExtensionProblem::from_precoloured(doc.graph.clone(), doc.phi.clone(), doc.colors.clone())?;
    if p.path.len() != len {
        bail!("expected {len} precoloured vertices, found {}", p.path.len());
    }
    Ok(p)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Validate { input } => {
            let text = fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
            match gcg::parse(&text) {
                Ok(doc) => {
                    println!(
                        "valid: {} vertices, {} edges, outer cycle of length {}",
                        doc.graph.vertex_count(),
                        doc.graph.edge_count(),
                        doc.graph.outer_len()
                    );
                    Ok(0)
                }
                Err(GcgError::Graph(GraphError::Invalid(report))) => {
                    for v in &report.violations {
                        println!("violation: {v}");
                    }
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Count { input } => {
            let doc = read_doc(&input)?;
            let n = Instance::new(&doc.graph, &doc.phi, &doc.colors)?.count();
            println!("colorings: {n}");
            Ok(0)
        }
        Command::Enumerate { input, limit } => {
            let doc = read_doc(&input)?;
            let all = enumerate_colorings(&doc.graph, &doc.phi, &doc.colors, limit)?;
            for c in &all {
                println!("{}", colors_line(c));
            }
            println!("listed: {}", all.len());
            Ok(0)
        }
        Command::Extend2 { input, output } => {
            let doc = read_doc(&input)?;
            let c = extend_two(&problem(&doc, 2)?)?;
            println!("coloring: {}", colors_line(&c));
            if let Some(path) = output {
                write_colored(&doc, &c, &path)?;
            }
            Ok(0)
        }
        Command::Extend3 { input, emit_certificate, output, budget } => {
            let doc = read_doc(&input)?;
            match extend_three(&problem(&doc, 3)?, budget)? {
                ThreeOutcome::Colored(c) => {
                    println!("coloring: {}", colors_line(&c));
                    if let Some(path) = output {
                        write_colored(&doc, &c, &path)?;
                    }
                    Ok(0)
                }
                ThreeOutcome::Obstruction(cert) => {
                    println!("obstruction: {}", cert.descriptor);
                    let hosts: Vec<String> = cert.host_vertices.iter().map(usize::to_string).collect();
                    println!("vertices: {}", hosts.join(" "));
                    if let Some(path) = emit_certificate {
                        fs::write(&path, cert.to_gcg()).with_context(|| format!("cannot write {}", path.display()))?;
                    }
                    Ok(2)
                }
            }
        }
        Command::ShortCycle { input } => {
            let doc = read_doc(&input)?;
            let outer = doc.graph.outer_cycle();
            let colors: Vec<u8> = outer
                .iter()
                .map(|&v| doc.colors.precolored(v).ok_or_else(|| anyhow!("outer vertex {v} is not precoloured")))
                .collect::<Result<_>>()?;
            match color_short_cycle(&doc.graph, &doc.phi, &colors)? {
                ShortCycleOutcome::Colored(c) => {
                    println!("coloring: {}", colors_line(&c));
                    Ok(0)
                }
                ShortCycleOutcome::HubException(v) => {
                    println!("hub exception: vertex {v} sees every colour");
                    Ok(2)
                }
            }
        }
        Command::Lemma1Alpha { input, path, no_check } => {
            let doc = read_doc(&input)?;
            let p = path.resolve(&doc);
            match lemma1_alpha(&doc.graph, &doc.phi, &doc.colors, p, !no_check)? {
                Lemma1Outcome::Vacuous => println!("alpha: vacuous"),
                Lemma1Outcome::Alpha(a) => println!("alpha: {a}"),
                Lemma1Outcome::Inconsistent(ds) => {
                    let ds: Vec<String> = ds.iter().map(u8::to_string).collect();
                    println!("alpha: none (differences {})", ds.join(" "));
                }
            }
            Ok(0)
        }
        Command::Family(FamilyCommand::Gen { descriptor, output }) => {
            let d: FamilyDescriptor = descriptor.parse()?;
            let (graph, _) = build(&d)?;
            let mut doc = GcgDocument::plain(graph);
            doc.descriptor = Some(d.to_string());
            let text = gcg::write(&doc);
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Family(FamilyCommand::Recognize { input, path }) => {
            let doc = read_doc(&input)?;
            match recognize_generalized_multi_wheel(&doc.graph, path.resolve(&doc)) {
                Some(d) => {
                    println!("descriptor: {d}");
                    Ok(0)
                }
                None => {
                    println!("descriptor: none");
                    Ok(2)
                }
            }
        }
        Command::Family(FamilyCommand::List { max_n }) => {
            for d in enumerate_family(max_n) {
                println!("{} {d}", d.vertex_count());
            }
            Ok(0)
        }
        Command::Check(args) => {
            let cfg = RandomInstanceConfig {
                n_min: args.n_min,
                n_max: args.n_max,
                instances: args.instances,
                samples: args.samples,
                phi_mode: args.phi_mode,
                seed: args.seed,
                jobs: args.jobs,
            };
            let report = propcheck::check(&args.property, &cfg)?;
            let text = report.render();
            print!("{text}");
            if let Some(path) = args.report {
                fs::write(&path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}
