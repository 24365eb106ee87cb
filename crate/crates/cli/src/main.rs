use std::io::Read;
use std::process::ExitCode;

use berkram::cli::{
    default_precision, map_text_from_input, parse_exp, render_error, run, Command, OutFormat,
    RunConfig,
};
use berkram::valfield::FieldMode;
use berkram::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "berkram",
    version,
    about = "Local degrees and ramification loci of rational maps on the Berkovich line"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// Field model.
    #[arg(long, value_enum, default_value_t = Field::Equichar0, global = true)]
    field: Field,
    /// Residue characteristic (required for equicharp and mixed).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Ramification index N.
    #[arg(long = "ram-index", default_value_t = 1, global = true)]
    ram_index: u32,
    /// Degree m of the coefficient field F_{p^m} (equicharp).
    #[arg(long = "residue-degree", default_value_t = 1, global = true)]
    residue_degree: u32,
    /// Precision cap, a rational such as 48 or 97/2 [default: 64/N].
    #[arg(long, global = true)]
    precision: Option<String>,
    /// Splits allowed per skeleton edge.
    #[arg(long = "max-subdiv", default_value_t = 12, global = true)]
    max_subdiv: usize,
    /// Probe rays per hull vertex.
    #[arg(long, default_value_t = 3, global = true)]
    rays: usize,
    /// Samples for the oracle and for random checks.
    #[arg(long, default_value_t = 8, global = true)]
    trials: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Out::Json, global = true)]
    out: Out,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full ramification report.
    Analyze {
        /// The map, or '-' for standard input.
        map: String,
    },
    /// Local degree and directional data at a point.
    LocalDegree { map: String, point: String },
    /// Annotated hull of the critical points.
    Skeleton { map: String },
    /// Component summary.
    Components { map: String },
    /// Check the invariant suite on this map.
    Verify { map: String },
    /// Print a map whose ramification locus has n components.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Field {
    Equichar0,
    Equicharp,
    Mixed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Out {
    Json,
    Dot,
    Text,
}

fn read_map(arg: &str) -> Result<String, Error> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Error::Invalid(format!("cannot read standard input: {e}")))?;
    map_text_from_input(&s)
}

fn config(o: &Opts) -> Result<RunConfig, Error> {
    let field = match o.field {
        Field::Equichar0 => FieldMode::EquicharZero,
        Field::Equicharp => FieldMode::EquicharP,
        Field::Mixed => FieldMode::Mixed,
    };
    let p = match (field, o.p) {
        (FieldMode::EquicharZero, p) => p.unwrap_or(0),
        (_, Some(p)) => p,
        (_, None) => {
            return Err(Error::Invalid(format!(
                "--field {} needs --p",
                field.name()
            )));
        }
    };
    Ok(RunConfig {
        field,
        p,
        ram_index: o.ram_index,
        residue_degree: o.residue_degree,
        precision: match &o.precision {
            Some(p) => parse_exp(p)?,
            None => default_precision(o.ram_index.max(1)),
        },
        max_subdiv: o.max_subdiv,
        rays: o.rays,
        trials: o.trials,
        out: match o.out {
            Out::Json => OutFormat::Json,
            Out::Dot => OutFormat::Dot,
            Out::Text => OutFormat::Text,
        },
        seed: o.seed,
    })
}

fn command(c: &Cmd) -> Result<Command, Error> {
    Ok(match c {
        Cmd::Analyze { map } => Command::Analyze {
            map: read_map(map)?,
        },
        Cmd::LocalDegree { map, point } => Command::LocalDegree {
            map: read_map(map)?,
            point: point.clone(),
        },
        Cmd::Skeleton { map } => Command::Skeleton {
            map: read_map(map)?,
        },
        Cmd::Components { map } => Command::Components {
            map: read_map(map)?,
        },
        Cmd::Verify { map } => Command::Verify {
            map: read_map(map)?,
        },
        Cmd::Generate { n, d } => Command::Generate { n: *n, d: *d },
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let json_out = matches!(cli.opts.out, Out::Json);
    let result = config(&cli.opts).and_then(|cfg| {
        let cmd = command(&cli.cmd)?;
        run(&cfg, &cmd).map(|o| (o, cfg.out))
    });
    match result {
        Ok((outcome, out)) => {
            print!("{}", outcome.render(out));
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            if json_out {
                print!("{}", render_error(&e));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(1)
        }
    }
}
