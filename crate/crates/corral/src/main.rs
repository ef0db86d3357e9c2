use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use corral::doc::{self, Document};
use corral::report::{self, Options, Report};

#[derive(Parser)]
#[command(name = "corral", about = "corner-geometry toolkit", version)]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Args)]
struct Common {
    /// emit the report as canonical JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// numerical rank tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// cap for enumeration-bounded computations
    #[arg(long, global = true)]
    bound: Option<u64>,
}

#[derive(Subcommand)]
enum Group {
    /// commutative monoid analysis
    Monoid {
        #[command(subcommand)]
        cmd: MonoidCmd,
        #[command(flatten)]
        common: Common,
    },
    /// corner local models
    Model {
        #[command(subcommand)]
        cmd: ModelCmd,
        #[command(flatten)]
        common: Common,
    },
    /// interior map germs and their fibre products
    Germ {
        #[command(subcommand)]
        cmd: GermCmd,
        #[command(flatten)]
        common: Common,
    },
    /// b-cotangent module fibres
    Bcot {
        #[command(subcommand)]
        cmd: BcotCmd,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// classify a monoid (integral, sharp, toric, ...)
    Props { file: String },
    /// run the reflection pipeline: groupify, integralize, saturate, sharpen
    Reflect { file: String },
    /// list prime ideals by face support
    Primes { file: String },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// corner decomposition of a local model
    Corners { file: String },
}

#[derive(Subcommand)]
enum GermCmd {
    /// b- and c-transversality of a germ pair
    Check { file: String },
    /// fibre-product corner monoid, grading, and strictness
    Product { file: String },
}

#[derive(Subcommand)]
enum BcotCmd {
    /// b-cotangent fibre dimension at a point
    Fibre { ring: String, point: String },
    /// exactness of the pushout cotangent sequence
    Pushout {
        left: String,
        right: String,
        point: String,
    },
    /// exactness of the corner-stratum cotangent sequence
    #[command(name = "corner-seq")]
    CornerSeq { ring: String, point: String },
}

fn load(path: &str, command: &str, opts: &Options) -> Result<Document, Report> {
    let text = fs::read_to_string(path)
        .map_err(|e| report::io_error_report(command, opts, path, &e))?;
    doc::parse(&text).map_err(|e| report::parse_error_report(command, opts, path, &e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, rep) = dispatch(cli.group);
    let color = match std::env::var("CORRAL_COLOR").as_deref() {
        Ok("1") => true,
        _ => false,
    };
    if common.json {
        println!("{}", rep.render_json());
    } else {
        print!("{}", rep.render_human(color));
    }
    ExitCode::from(rep.status.exit_code() as u8)
}

fn dispatch(group: Group) -> (Common, Report) {
    macro_rules! run {
        ($common:expr, |$opts:ident| $body:expr) => {{
            let $opts = Options {
                tolerance: $common.tol.unwrap_or(corral::bcotangent::RANK_TOLERANCE),
                bound: $common.bound,
            };
            let rep = match (|| -> Result<Report, Report> { $body })() {
                Ok(r) | Err(r) => r,
            };
            ($common, rep)
        }};
    }
    match group {
        Group::Monoid { cmd, common } => match cmd {
            MonoidCmd::Props { ref file } => run!(common, |opts| {
                Ok(report::monoid_props(&load(file, "monoid props", &opts)?, &opts))
            }),
            MonoidCmd::Reflect { ref file } => run!(common, |opts| {
                Ok(report::monoid_reflect(&load(file, "monoid reflect", &opts)?, &opts))
            }),
            MonoidCmd::Primes { ref file } => run!(common, |opts| {
                Ok(report::monoid_primes(&load(file, "monoid primes", &opts)?, &opts))
            }),
        },
        Group::Model { cmd, common } => match cmd {
            ModelCmd::Corners { ref file } => run!(common, |opts| {
                Ok(report::model_corners(&load(file, "model corners", &opts)?, &opts))
            }),
        },
        Group::Germ { cmd, common } => match cmd {
            GermCmd::Check { ref file } => run!(common, |opts| {
                Ok(report::germ_check(&load(file, "germ check", &opts)?, &opts))
            }),
            GermCmd::Product { ref file } => run!(common, |opts| {
                Ok(report::germ_product(&load(file, "germ product", &opts)?, &opts))
            }),
        },
        Group::Bcot { cmd, common } => match cmd {
            BcotCmd::Fibre { ref ring, ref point } => run!(common, |opts| {
                let r = load(ring, "bcot fibre", &opts)?;
                let p = load(point, "bcot fibre", &opts)?;
                Ok(report::bcot_fibre(&r, &p, &opts))
            }),
            BcotCmd::Pushout {
                ref left,
                ref right,
                ref point,
            } => run!(common, |opts| {
                let d = load(left, "bcot pushout", &opts)?;
                let e = load(right, "bcot pushout", &opts)?;
                let p = load(point, "bcot pushout", &opts)?;
                Ok(report::bcot_pushout(&d, &e, &p, &opts))
            }),
            BcotCmd::CornerSeq { ref ring, ref point } => {
                run!(common, |opts| {
                    let r = load(ring, "bcot corner-seq", &opts)?;
                    let p = load(point, "bcot corner-seq", &opts)?;
                    Ok(report::bcot_corner_seq(&r, &p, &opts))
                })
            }
        },
    }
}
