use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abst_cli::commands::{run_build, run_gb, run_pbasis, run_snf, run_type_formula, run_verify, Flags, Outcome};
use abst_cli::CliError;
use abst_core::groebner::Engine;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Additive structure of finitely presented abelian p-groups.
#[derive(Parser)]
#[command(name = "abst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// p-basis, generator orders and type of a presentation
    Pbasis(Common),
    /// Smith normal form invariants of a presentation
    Snf(Io),
    /// Presentation of the module described by a spec
    Build(Io),
    /// Cross-check the Gröbner pipeline against the Smith normal form
    Verify(Common),
    /// Reduced Gröbner basis of the relation lattice ideal
    Gb(Common),
    /// Type formula for a glued module versus the direct computation
    TypeFormula(Common),
}

#[derive(Args)]
struct Io {
    /// Input file, `-` for stdin
    #[arg(short, long)]
    input: PathBuf,
    /// Output file; stdout when absent
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    io: Io,
    /// Include the Gröbner basis in the report
    #[arg(long)]
    gb: bool,
    /// Variable order to force, as 1-based generator indices from the
    /// smallest variable to the largest, e.g. `3,1,2`
    #[arg(long, value_delimiter = ',')]
    perm: Option<Vec<usize>>,
    /// Largest k tried when computing generator orders p^k
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Buchberger,
    Hermite,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Buchberger => Engine::Buchberger,
            EngineArg::Hermite => Engine::Hermite,
        }
    }
}

impl Common {
    fn flags(&self) -> Flags {
        Flags {
            gb: self.gb,
            perm: self.perm.clone(),
            cap: self.cap,
            engine: self.io.engine.into(),
            inject_fault: self.inject_fault,
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `out.json` → `out.sidecar.json`.
fn sidecar_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{stem}.sidecar.json"))
}

fn emit(io: &Io, outcome: &Outcome) -> Result<(), CliError> {
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    };
    match &io.output {
        Some(path) => {
            write(path, &outcome.report)?;
            if let Some(sidecar) = &outcome.sidecar {
                write(&sidecar_path(path), sidecar)?;
            }
        }
        None => {
            print!("{}", outcome.report);
            if let Some(sidecar) = &outcome.sidecar {
                eprint!("{sidecar}");
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let (io, outcome) = match &cli.command {
        Command::Pbasis(c) => (&c.io, run_pbasis(&read_input(&c.io.input)?, &c.flags())?),
        Command::Verify(c) => (&c.io, run_verify(&read_input(&c.io.input)?, &c.flags())?),
        Command::Gb(c) => (&c.io, run_gb(&read_input(&c.io.input)?, &c.flags())?),
        Command::TypeFormula(c) => (&c.io, run_type_formula(&read_input(&c.io.input)?, &c.flags())?),
        Command::Snf(io) => (io, run_snf(&read_input(&io.input)?)?),
        Command::Build(io) => {
            let flags = Flags { engine: io.engine.into(), ..Flags::default() };
            (io, run_build(&read_input(&io.input)?, &flags)?)
        }
    };
    emit(io, &outcome)?;
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("abst: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
