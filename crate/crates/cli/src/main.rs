use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frontkit::io::{parse_floats, write_text, Germ};
use frontkit::{commands, Result};
use frontkit_core::focal::ScanGrid;
use frontkit_core::gaussbonnet::SectorOptions;
use frontkit_core::NormalFormGerm;

/// Normal forms and differential geometry of D4+ wave-front germs.
#[derive(Parser)]
#[command(name = "frontkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Germ file (raw map or normal form).
    #[arg(long = "in", visible_alias = "germ", value_name = "FILE")]
    input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Truncation degree; defaults to the degree of the file.
    #[arg(long)]
    degree: Option<usize>,
    /// Zero tolerance (normal-form shape check, symmetry parity).
    #[arg(long)]
    tol: Option<f64>,
}

impl Common {
    fn germ(&self) -> Result<Germ> {
        Germ::read(&self.input)
    }

    fn normal_form(&self) -> Result<NormalFormGerm> {
        let nf = self.germ()?.normal_form(self.tol)?;
        Ok(match self.degree {
            Some(r) => nf.with_degree(r)?,
            None => nf,
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_text(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn floats<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let v = parse_floats(s)?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} numbers, got {}", v.len()))
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a germ to normal form and print it with the transformation used.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Also remove the u²v² block of b, which makes the jet coordinate-free.
        #[arg(long)]
        eliminate_b2: bool,
    },
    /// Frame, fundamental forms and curvatures at a source point.
    Frame {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = floats::<2>, allow_hyphen_values = true, value_name = "U,V")]
        point: [f64; 2],
    },
    /// Cuspidal-edge invariants, their asymptotics and boundedness.
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.1,-0.01,0.01,0.1")]
        samples: Vec<f64>,
        /// Also write the samples as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Tangent, principal and center symmetries.
    Symmetry {
        #[command(flatten)]
        common: Common,
    },
    /// Gauss-Bonnet identity on the four sectors of a disk.
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.3)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        mesh: usize,
        /// Gauss-Legendre nodes per panel.
        #[arg(long, default_value_t = 1)]
        nodes: usize,
    },
    /// Singularity type of the distance-squared function.
    Focal {
        #[command(subcommand)]
        action: Focal,
    },
    /// f on a (u, v) grid as CSV.
    SampleSurface {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.5)]
        range: f64,
        #[arg(long, default_value_t = 41)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Focal {
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = floats::<3>, allow_hyphen_values = true, value_name = "X1,X2,X3")]
        x: [f64; 3],
    },
    /// Classify a lattice and print CSV `x1,x2,x3,label,detail`.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(
            long = "box",
            value_parser = floats::<6>,
            allow_hyphen_values = true,
            default_value = "-2,2,-1,1,-1,1",
            value_name = "LO1,HI1,LO2,HI2,LO3,HI3"
        )]
        bounds: [f64; 6],
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Reduce { common, eliminate_b2 } => {
            common.emit(&commands::reduce(&common.germ()?, common.degree, eliminate_b2)?)
        }
        Command::Frame { common, point } => {
            let germ = match common.degree {
                Some(r) => Germ::Map(common.germ()?.map().truncate(r)),
                None => common.germ()?,
            };
            common.emit(&commands::frame(&germ, point[0], point[1])?)
        }
        Command::Invariants { common, samples, csv } => {
            let (json, table) = commands::invariants(&common.normal_form()?, &samples)?;
            if let Some(path) = csv {
                write_text(&path, &table)?;
            }
            common.emit(&json)
        }
        Command::Symmetry { common } => common.emit(&commands::symmetry(&common.normal_form()?, common.tol)?),
        Command::Gb {
            common,
            radius,
            mesh,
            nodes,
        } => {
            let opts = SectorOptions {
                radius,
                mesh,
                nodes_per_panel: nodes,
            };
            common.emit(&commands::gauss_bonnet(&common.normal_form()?, opts)?)
        }
        Command::Focal { action } => match action {
            Focal::Classify { common, x } => common.emit(&commands::focal_classify(&common.normal_form()?, x)?),
            Focal::Scan { common, bounds, step } => {
                let [l1, h1, l2, h2, l3, h3] = bounds;
                let grid = ScanGrid {
                    lo: [l1, l2, l3],
                    hi: [h1, h2, h3],
                    step,
                };
                common.emit(&commands::focal_scan_csv(&common.normal_form()?, &grid)?)
            }
        },
        Command::SampleSurface { common, range, n } => {
            let m = common.germ()?.map();
            let m = match common.degree {
                Some(r) => m.truncate(r),
                None => m,
            };
            common.emit(&commands::sample_surface(&m, range, n)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frontkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
