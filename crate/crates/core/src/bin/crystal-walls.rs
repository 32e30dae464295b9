use std::fs;
use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crystal_walls::graph::DEFAULT_NODE_CAP;
use crystal_walls::verify::{self, Fault, VerifyConfig};
use crystal_walls::{
    generate, Error, GraphSpec, PerfectCrystal, PerfectElement, Realization, Weight,
};

const EXIT_INVARIANT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "crystal-walls",
    version,
    about = "Crystal graphs of level-1 C_n^(1) Young walls and paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the perfect crystal B with its arrows, φ, ε and weights.
    Perfect {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a depth-limited crystal graph of B(Λ_k).
    Graph {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run the invariant suite.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print weight multiplicities by depth.
    Character {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = RealizationArg::Wall)]
    realization: RealizationArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RealizationArg {
    Wall,
    Path,
}

impl From<RealizationArg> for Realization {
    fn from(r: RealizationArg) -> Self {
        match r {
            RealizationArg::Wall => Realization::Wall,
            RealizationArg::Path => Realization::Path,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
    /// Already reported on stdout.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRank(_) | Error::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
            e => Failure::Lib(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl RunArgs {
    fn spec(&self) -> Result<GraphSpec, Failure> {
        if self.node_cap == 0 {
            return Err(Failure::Usage("--node-cap must be positive".into()));
        }
        PerfectCrystal::new(self.n)?;
        if self.k > self.n {
            return Err(Error::IndexOutOfRange {
                index: self.k,
                n: self.n,
            }
            .into());
        }
        Ok(GraphSpec {
            realization: self.realization.into(),
            n: self.n,
            k: self.k,
            depth: self.depth,
            node_cap: self.node_cap,
        })
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn cmd_perfect(n: usize, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Row {
        element: String,
        x: Vec<u32>,
        xbar: Vec<u32>,
        phi: Vec<u32>,
        eps: Vec<u32>,
        cwt: Weight,
    }
    #[derive(Serialize)]
    struct Doc {
        n: usize,
        elements: Vec<Row>,
        edges: Vec<(usize, usize, usize)>,
    }
    let bc = PerfectCrystal::new(n)?;
    let els = bc.elements();
    let id = |b: &PerfectElement| {
        els.iter()
            .position(|c| c == b)
            .expect("closed under operators")
    };
    let mut edges = Vec::new();
    for (u, b) in els.iter().enumerate() {
        for i in 0..=n {
            if let Some(c) = bc.f(i, b) {
                edges.push((u, i, id(&c)));
            }
        }
    }
    let text = match format {
        Format::Json => {
            let doc = Doc {
                n,
                elements: els
                    .iter()
                    .map(|b| Row {
                        element: b.to_string(),
                        x: b.x.clone(),
                        xbar: b.xbar.clone(),
                        phi: (0..=n).map(|i| bc.phi(i, b)).collect(),
                        eps: (0..=n).map(|i| bc.eps(i, b)).collect(),
                        cwt: bc.cwt(b),
                    })
                    .collect(),
                edges,
            };
            let mut s = serde_json::to_string(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Dot => {
            let mut s = format!("digraph perfect {{\n  // B for C_{n}^(1)\n");
            for (u, b) in els.iter().enumerate() {
                s.push_str(&format!("  {u} [label=\"{b}\"];\n"));
            }
            for (u, i, v) in edges {
                s.push_str(&format!("  {u} -> {v} [label=\"{i}\"];\n"));
            }
            s.push_str("}\n");
            s
        }
        Format::Tsv => {
            let mut s = String::from("# id\telement\tphi\teps\tcwt\n");
            let list = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            for (u, b) in els.iter().enumerate() {
                s.push_str(&format!(
                    "{u}\t{b}\t{}\t{}\t{}\n",
                    list((0..=n).map(|i| bc.phi(i, b)).collect()),
                    list((0..=n).map(|i| bc.eps(i, b)).collect()),
                    bc.cwt(b)
                ));
            }
            s.push_str("# source\tcolor\ttarget\n");
            for (u, i, v) in edges {
                s.push_str(&format!("{u}\t{i}\t{v}\n"));
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(())
}

fn cmd_graph(run: &RunArgs, format: Format) -> Result<(), Failure> {
    let g = generate(&run.spec()?)?;
    let text = match format {
        Format::Dot => g.export_dot(),
        Format::Json => g.export_json(),
        Format::Tsv => g.export_tsv(),
    };
    emit(run.out.as_ref(), &text)?;
    Ok(())
}

fn cmd_character(run: &RunArgs, format: Format) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Row {
        depth: usize,
        weight: String,
        wt: Weight,
        multiplicity: usize,
    }
    let g = generate(&run.spec()?)?;
    let rows = g.character();
    let text = match format {
        Format::Tsv => {
            let mut s = String::from("# depth\tweight\tmultiplicity\n");
            for (d, w, c) in &rows {
                s.push_str(&format!("{d}\t{w}\t{c}\n"));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Row> = rows
                .into_iter()
                .map(|(depth, wt, multiplicity)| Row {
                    depth,
                    weight: wt.to_string(),
                    wt,
                    multiplicity,
                })
                .collect();
            let mut s = serde_json::to_string(&rows).expect("serializable");
            s.push('\n');
            s
        }
        Format::Dot => return Err(Failure::Usage("character tables have no dot format".into())),
    };
    emit(run.out.as_ref(), &text)?;
    Ok(())
}

fn cmd_verify(run: &RunArgs, inject_fault: bool) -> Result<(), Failure> {
    let spec = run.spec()?;
    let cfg = VerifyConfig {
        n: spec.n,
        k: spec.k,
        depth: spec.depth,
        node_cap: spec.node_cap,
        fault: inject_fault.then_some(Fault::RecolorEdge),
    };
    let report = verify::run(&cfg)?;
    let mut text = String::new();
    for outcome in &report {
        text.push_str(&serde_json::to_string(outcome).expect("serializable"));
        text.push('\n');
    }
    emit(run.out.as_ref(), &text)?;
    let failed: Vec<&str> = report
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.check)
        .collect();
    if failed.is_empty() {
        eprintln!(
            "verify n={} k={} depth={}: all {} checks passed",
            cfg.n,
            cfg.k,
            cfg.depth,
            report.len()
        );
        Ok(())
    } else {
        eprintln!(
            "verify n={} k={} depth={}: {} of {} checks failed: {}",
            cfg.n,
            cfg.k,
            cfg.depth,
            failed.len(),
            report.len(),
            failed.join(", ")
        );
        Err(Failure::Checks)
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Perfect { n, format, out } => cmd_perfect(*n, *format, out.as_ref()),
        Command::Graph { run, format } => cmd_graph(run, *format),
        Command::Verify { run, inject_fault } => cmd_verify(run, *inject_fault),
        Command::Character { run, format } => cmd_character(run, *format),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CRYSTAL_WALLS_LOG", "error"))
        .init();
    let cli = Cli::parse();
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Ok(Err(Failure::Lib(e))) if e.is_budget() => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Ok(Err(Failure::Lib(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVARIANT)
        }
        Ok(Err(Failure::Io(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVARIANT)
        }
        Ok(Err(Failure::Checks)) => ExitCode::from(EXIT_INVARIANT),
        Err(_) => ExitCode::from(EXIT_INVARIANT),
    }
}
