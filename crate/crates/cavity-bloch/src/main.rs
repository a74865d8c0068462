use cavity_bloch::config::{Command, OutputFormat};
use cavity_bloch::envelope::Payload;
use cavity_bloch::{execute, read_config, render, write_output, CliError};
use clap::Parser;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Cavity QED spectra: electron gases, response functions and QED-Bloch butterflies.
#[derive(Parser, Debug)]
#[command(name = "cavity-bloch", version)]
struct Args {
    /// What to compute.
    #[arg(value_enum)]
    command: Command,

    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,

    /// Output file (stdout when absent; overrides [output].path).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format (overrides [output].format; default csv).
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    /// Worker threads for sweeps.
    #[arg(long, env = "CAVITY_BLOCH_THREADS")]
    threads: Option<usize>,

    /// Seed for sampled k grids.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match go(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cavity-bloch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn go(args: &Args) -> Result<(), CliError> {
    let source = read_config(&args.config)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Io {
        path: PathBuf::from("<thread pool>"),
        source: std::io::Error::other(e.to_string()),
    })?;
    let (config, envelope) = pool.install(|| execute(args.command, &source, args.seed))?;

    if let Payload::Spectrum(s) = &envelope.payload {
        if !s.failures.is_empty() {
            eprintln!("cavity-bloch: {} of {} samples failed:", s.failures.len(), s.axis.len() * s.k_grid.len());
            for f in s.failures.iter().take(10) {
                eprintln!("  axis {} k {}: {}", f.axis_index, f.k_index, f.message);
            }
        }
    }
    if let Payload::Table(t) = &envelope.payload {
        for l in &t.labels {
            eprintln!("{} = {}", l.key, l.value);
        }
    }

    let format = args.format.or(config.output.format).unwrap_or(OutputFormat::Csv);
    let text = render(&envelope, format)?;
    match args.out.clone().or(config.output.path) {
        Some(path) => write_output(&path, &text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}
