use std::path::PathBuf;
use std::process::ExitCode;

use arcspace_cli::{
    drinfeld_cmd, ecodim_cmd, exit, jet_ideal_cmd, ord_cmd, render, verify_dgk_cmd, CliError, JobDocument, OrdTarget,
    Overrides, Settings, SEED_ENV,
};
use clap::{Args, Parser, Subcommand};

/// Local invariants of jet and arc spaces from JSON job documents.
#[derive(Debug, Parser)]
#[command(name = "arcspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generators of the jet ideal at a level.
    JetIdeal(Common),
    /// Order of contact of the arc with an ideal.
    Ord {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "jacobian")]
        target: OrdTarget,
    },
    /// Embedding codimension of the jet schemes at one level or over a window.
    Ecodim(Common),
    /// Builds and verifies the Drinfeld model of the arc.
    Drinfeld {
        #[command(flatten)]
        common: Common,
        /// Writes the model equations as a plain-text presentation.
        #[arg(long, value_name = "FILE")]
        presentation: Option<PathBuf>,
    },
    /// Runs every check on one document; exits 3 if any check fails.
    VerifyDgk(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Job document, or `-` for standard input.
    document: PathBuf,
    #[arg(long)]
    level: Option<usize>,
    /// Inclusive range of jet levels, written `a:b`.
    #[arg(long, value_parser = parse_window)]
    window: Option<(usize, usize)>,
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the arc precision.
    #[arg(long)]
    precision: Option<usize>,
    /// Largest truncation degree for the dimension bounds of the model.
    #[arg(long)]
    trunc_degree: Option<u32>,
    #[arg(long)]
    resample_limit: Option<usize>,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("window start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("window end: {e}"))?;
    if b < a {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok((a, b))
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            level: self.level,
            window: self.window,
            seed: self.seed,
            trunc_degree: self.trunc_degree,
            resample_limit: self.resample_limit,
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Report text and exit status, or the error plus the seed to echo.
fn run(cli: Cli) -> Result<(String, i32, Option<PathBuf>), (CliError, Option<u64>)> {
    let (common, cmd) = match &cli.command {
        Command::JetIdeal(c) | Command::Ecodim(c) | Command::VerifyDgk(c) => (c, &cli.command),
        Command::Ord { common, .. } | Command::Drinfeld { common, .. } => (common, &cli.command),
    };
    let job = JobDocument::read(&common.document)
        .and_then(|d| d.into_job(common.precision))
        .map_err(|e| (e, None))?;
    let env = std::env::var(SEED_ENV).ok();
    let s = Settings::resolve(&job, common.overrides(), env.as_deref()).map_err(|e| (e, None))?;
    let seeded = |e: CliError| (e, Some(s.seed));
    let plain = |e: CliError| (e, None);
    let (text, code) = match cmd {
        Command::JetIdeal(_) => {
            let level = s
                .level
                .ok_or_else(|| plain(CliError::Usage("jet-ideal needs --level or options.level".into())))?;
            (render(&jet_ideal_cmd(&job, level).map_err(plain)?), exit::SUCCESS)
        }
        Command::Ord { target, .. } => (render(&ord_cmd(&job, *target, &s).map_err(plain)?), exit::SUCCESS),
        Command::Ecodim(_) => (render(&ecodim_cmd(&job, &s).map_err(plain)?), exit::SUCCESS),
        Command::Drinfeld { presentation, .. } => {
            let (report, run) = drinfeld_cmd(&job, &s).map_err(seeded)?;
            if let Some(p) = presentation {
                write_file(p, &run.model.presentation()).map_err(seeded)?;
            }
            (render(&report), exit::SUCCESS)
        }
        Command::VerifyDgk(_) => {
            let r = verify_dgk_cmd(&job, &s).map_err(seeded)?;
            (render(&r), if r.pass { exit::SUCCESS } else { exit::ASSERTION })
        }
    };
    Ok((text, code, common.output.clone()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_owned());
            eprintln!("{}", serde_json::to_string_pretty(&err.to_json(None)).expect("error json"));
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let outcome = run(cli).and_then(|(text, code, output)| match output {
        Some(p) => write_file(&p, &text).map(|()| code).map_err(|e| (e, None)),
        None => {
            print!("{text}");
            Ok(code)
        }
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err((e, seed)) => {
            eprintln!("{}", serde_json::to_string_pretty(&e.to_json(seed)).expect("error json"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
