use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use temporal_zigzag::hypergraph::EventMode;
use temporal_zigzag::pipeline::{
    betti_command, load_barcode_document, run_pipeline, stats_command, InputFormat, PipelineConfig, PipelineError,
};
use temporal_zigzag::svg::{inferred_ticks, render_svg};
use temporal_zigzag::zigzag::{Axis, InterleaveMode};

#[derive(Parser)]
#[command(name = "temporal-zigzag", version, about = "Zigzag persistence barcodes for temporal hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the zigzag barcode
    Run(RunArgs),
    /// Betti numbers of every window complex
    Betti(PipelineArgs),
    /// Edge and vertex counts of every window snapshot
    Stats(PipelineArgs),
    /// Plot a barcode JSON file as SVG
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    ThgJson,
    EventCsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EventModeArg {
    Span,
    Points,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Union,
    Intersection,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Index,
    Time,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "thg-json")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "span")]
    event_mode: EventModeArg,
    /// Gap up to which consecutive point intervals are fused
    #[arg(long, default_value_t = 0.0)]
    merge_gap: f64,
    #[arg(long)]
    window_size: f64,
    #[arg(long)]
    shift: f64,
    #[arg(long, allow_negative_numbers = true)]
    t0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tf: Option<f64>,
    /// Highest homology dimension
    #[arg(long = "dim", default_value_t = 1)]
    dim: usize,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: PipelineArgs,
    #[arg(long, value_enum, default_value = "union")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "index")]
    axis: AxisArg,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Snapshot statistics CSV
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Barcode JSON
    #[arg(long)]
    input: PathBuf,
    /// SVG output; stdout when absent
    #[arg(long, alias = "out")]
    svg: Option<PathBuf>,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(&self.input, self.window_size, self.shift);
        cfg.format = match self.format {
            FormatArg::ThgJson => InputFormat::ThgJson,
            FormatArg::EventCsv => InputFormat::EventCsv,
        };
        cfg.event_mode = match self.event_mode {
            EventModeArg::Span => EventMode::Span,
            EventModeArg::Points => EventMode::Points,
        };
        cfg.merge_gap = self.merge_gap;
        cfg.t0 = self.t0;
        cfg.tf = self.tf;
        cfg.p_max = self.dim;
        cfg.out = self.out.clone();
        cfg
    }
}

fn emit(text: &str) -> Result<(), PipelineError> {
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| PipelineError::Io { path: PathBuf::from("<stdout>"), source })
}

fn execute(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Run(args) => {
            let mut cfg = args.common.config();
            cfg.mode = match args.mode {
                ModeArg::Union => InterleaveMode::Union,
                ModeArg::Intersection => InterleaveMode::Intersection,
            };
            cfg.axis = match args.axis {
                AxisArg::Index => Axis::Index,
                AxisArg::Time => Axis::Time,
            };
            cfg.svg = args.svg;
            cfg.stats_out = args.stats;
            let out = run_pipeline(&cfg)?;
            if cfg.out.is_none() {
                emit(&out.barcode_json)?;
            }
        }
        Command::Betti(args) => {
            let cfg = args.config();
            let table = betti_command(&cfg)?;
            if cfg.out.is_none() {
                emit(&table)?;
            }
        }
        Command::Stats(args) => {
            let cfg = args.config();
            let table = stats_command(&cfg)?;
            if cfg.out.is_none() {
                emit(&table)?;
            }
        }
        Command::Render(args) => {
            let doc = load_barcode_document(&args.input)?;
            let svg = render_svg(&doc, &inferred_ticks(&doc));
            match &args.svg {
                Some(path) => std::fs::write(path, svg).map_err(|source| PipelineError::Io { path: path.clone(), source })?,
                None => emit(&svg)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
