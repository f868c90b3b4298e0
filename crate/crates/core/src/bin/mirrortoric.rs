use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mirrortoric::fan::FanJson;
use mirrortoric::polytope::PolytopeJson;
use mirrortoric::render::render_svg;
use mirrortoric::scenarios::{face_drawing, face_names, run_suite, Suite, SuiteOptions, SuiteReport};
use mirrortoric::{Error, Fan, Polytope};

#[derive(Parser)]
#[command(name = "mirrortoric", version, about = "Exact checks for toric mirror transitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteArg,
        /// Sampling seed; MIRRORTORIC_SEED takes precedence when set.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Samples per birational theorem.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Verify against a fixture with one printed vertex moved.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Query a polytope given as JSON.
    Polytope {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        op: PolytopeOp,
        /// Face dimension for `faces`.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Read a fan as JSON, or build the fan over the faces of a polytope, and print it.
    Fan {
        #[arg(long)]
        input: PathBuf,
        /// Treat the input as a polytope and use the fan over its faces.
        #[arg(long)]
        over_faces: bool,
        /// Print only the cones of at most this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Draw the computed subdivision of a named face as SVG.
    Render {
        #[arg(long, default_value = "p24")]
        suite: Suite,
        #[arg(long)]
        face: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    P24,
    P11222,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolytopeOp {
    Dual,
    Faces,
    Points,
}

enum Failure {
    Checks,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(x: &T) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(x).map_err(Error::from)?);
    Ok(())
}

fn seed_from_env(flag: u64) -> Result<u64, Failure> {
    match std::env::var("MIRRORTORIC_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("MIRRORTORIC_SEED={s:?} is not a seed"))),
        Err(_) => Ok(flag),
    }
}

fn verify(
    suite: SuiteArg,
    seed: u64,
    samples: usize,
    out: Option<PathBuf>,
    format: Format,
    corrupt: bool,
) -> Result<(), Failure> {
    let opts = SuiteOptions { seed: seed_from_env(seed)?, samples, corrupt };
    let suites = match suite {
        SuiteArg::P24 => vec![Suite::P24],
        SuiteArg::P11222 => vec![Suite::P11222],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &opts)).collect::<Result<_, _>>()?;
    let body = match format {
        Format::Text => reports.iter().map(SuiteReport::to_text).collect::<String>(),
        Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0]).map_err(Error::from)?,
        Format::Json => serde_json::to_string_pretty(&reports).map_err(Error::from)?,
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match out {
        Some(path) => fs::write(&path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    if reports.iter().all(SuiteReport::all_passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn polytope(input: &Path, op: PolytopeOp, dim: Option<usize>) -> Result<(), Failure> {
    let p = Polytope::from_json(&read_json::<PolytopeJson>(input)?)?;
    match op {
        PolytopeOp::Dual => print_json(&p.dual()?.to_json()),
        PolytopeOp::Points => print_json(&p.lattice_points()),
        PolytopeOp::Faces => {
            let faces = match dim {
                Some(k) => p.faces(k),
                None => p.proper_faces(),
            };
            let out: Vec<PolytopeJson> = faces.iter().map(|f| p.face_polytope(f).to_json()).collect();
            print_json(&out)
        }
    }
}

fn fan(input: &Path, over_faces: bool, dim: Option<usize>) -> Result<(), Failure> {
    let f = if over_faces {
        Fan::over_faces(&Polytope::from_json(&read_json::<PolytopeJson>(input)?)?)?
    } else {
        Fan::from_json(&read_json::<FanJson>(input)?)?
    };
    let f = match dim {
        Some(k) => f.skeleton(k),
        None => f,
    };
    print_json(&f.to_json())
}

fn render(suite: Suite, face: &str, out: &Path) -> Result<(), Failure> {
    if !face_names(suite).contains(&face) {
        return Err(Failure::Input(format!(
            "unknown face {face:?} for suite {suite}; known faces: {}",
            face_names(suite).join(", ")
        )));
    }
    let drawing = face_drawing(suite, face)?;
    let svg = render_svg(&drawing)?;
    fs::write(out, svg).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    eprintln!("{}: {} cells", drawing.title, drawing.cells.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suite, seed, samples, out, format, corrupt } => {
            verify(suite, seed, samples, out, format, corrupt)
        }
        Command::Polytope { input, op, dim } => polytope(&input, op, dim),
        Command::Fan { input, over_faces, dim } => fan(&input, over_faces, dim),
        Command::Render { suite, face, out } => render(suite, &face, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
