use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use twotorus::error::{Error, Result};
use twotorus::instance::{self, Instance};
use twotorus::report;

#[derive(Parser)]
#[command(
    name = "twotorus",
    version,
    about = "Formality, mod-2 cohomology and codes of 2-torus manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural check and list the results
    Validate { file: PathBuf },
    /// f- and h-vectors and Gorenstein quick checks
    Hvector { file: PathBuf },
    /// Mod-2 Betti numbers of the canonical model
    Betti { file: PathBuf },
    /// Equivariant formality verdicts
    Formality { file: PathBuf },
    /// Hilbert functions of the GKM ring and the face ring
    Gkm {
        file: PathBuf,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Cut a face off the orbit space and write the result
    Blowup {
        file: PathBuf,
        #[arg(long)]
        face: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fixed locus of an involution given as a bit string
    FixedLocus {
        file: PathBuf,
        #[arg(long)]
        g: String,
    },
    /// m-involution and the facet code
    Code { file: PathBuf },
    /// All fragments
    Report {
        file: PathBuf,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
}

fn load_unchecked(path: &PathBuf) -> Result<Instance> {
    Instance::from_json(&std::fs::read_to_string(path)?)
}

fn run(cmd: Command) -> Result<ExitCode> {
    let text = match cmd {
        Command::Validate { file } => {
            let (text, ok) = report::validate_fragment(&load_unchecked(&file)?);
            print!("{text}");
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Hvector { file } => report::hvector_fragment(&instance::load(file)?),
        Command::Betti { file } => report::betti_fragment(&instance::load(file)?)?,
        Command::Formality { file } => report::formality_fragment(&instance::load(file)?)?,
        Command::Gkm { file, max_deg } => report::gkm_fragment(&instance::load(file)?, max_deg)?,
        Command::Blowup { file, face, out } => {
            let (cut, _, text) = report::blowup(&instance::load(file)?, &face)?;
            std::fs::write(&out, cut.to_json() + "\n")?;
            format!("{text}wrote {}\n", out.display())
        }
        Command::FixedLocus { file, g } => report::fixed_locus_fragment(&instance::load(file)?, &g)?,
        Command::Code { file } => report::code_fragment(&instance::load(file)?)?,
        Command::Report { file, json } => {
            let inst = instance::load(file)?;
            if json {
                report::report_json(&inst)? + "\n"
            } else {
                report::report_text(&inst)?
            }
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                Error::Validation(ws) => {
                    eprintln!("error: validation failed");
                    for w in ws {
                        eprintln!("  {w}");
                    }
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
