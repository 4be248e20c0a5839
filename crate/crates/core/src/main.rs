use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use wigner_lab::experiment::{self, ExperimentConfig, ExperimentError, Format, Mode};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    EntropySweep,
    EfficiencySweep,
    CollapseCheck,
    Clicks,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::EntropySweep => Mode::EntropySweep,
            ModeArg::EfficiencySweep => Mode::EfficiencySweep,
            ModeArg::CollapseCheck => Mode::CollapseCheck,
            ModeArg::Clicks => Mode::Clicks,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Boosted spin-1/2 wave packets: entropy, detector efficiency,
/// record orthogonality and click statistics.
#[derive(Debug, Parser)]
#[command(name = "wigner-lab", version)]
struct Cli {
    mode: ModeArg,
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when neither this nor `output_path` is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    quad_order: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn run(cli: Cli) -> Result<usize, ExperimentError> {
    let mut cfg = ExperimentConfig::from_path(&cli.config)?;
    let mode = Mode::from(cli.mode);
    cfg.mode = Some(mode);
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(order) = cli.quad_order {
        cfg.quad_order = order;
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(out) = cli.out {
        cfg.output_path = Some(out);
    }
    cfg.validate()?;

    let table = experiment::run(&cfg, mode)?;
    let meta = cfg.meta(mode);
    match &cfg.output_path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(&meta, cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(&meta, cfg.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(table.flagged)
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for flagged rows, so usage errors report 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::FAILURE;
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(flagged) => {
            eprintln!("wigner-lab: {flagged} row(s) flagged");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("wigner-lab: {e}");
            ExitCode::FAILURE
        }
    }
}
