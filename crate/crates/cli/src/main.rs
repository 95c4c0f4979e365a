#![allow(clippy::result_large_err)]

mod cache;
mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gradedim::Family;

use cache::Cache;
use commands::{Failure, Output};

/// Exact characters, Wronskians and modular forms of affine sl2 and
/// Virasoro minimal models.
#[derive(Parser, Debug)]
#[command(name = "gradedim", version)]
struct Cli {
    /// Integral powers of q to compute past the leading exponent.
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(i64).range(1..))]
    terms: i64,

    /// Output format; `table` defaults to markdown, `suite` to plain, the rest to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Directory for cached Wronskian results.
    #[arg(long, global = true, env = "GRADEDIM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-expansion of one irreducible character.
    Char {
        #[command(subcommand)]
        which: CharCmd,
        /// Rescale to leading coefficient 1.
        #[arg(long, global = true)]
        normalize: bool,
    },
    /// W, W' and the normalized F of a whole family.
    Wronskian {
        #[command(subcommand)]
        family: FamilyCmd,
        /// Also compare the normalized W with its eta-power closed form.
        #[arg(long, global = true)]
        verify_eta: bool,
    },
    /// The normalized form F_V, optionally decomposed with the zeros of G.
    Fv {
        #[command(subcommand)]
        family: FamilyCmd,
        #[arg(long, global = true)]
        decompose: bool,
        #[arg(long, global = true)]
        zeros: bool,
    },
    /// Almost-linear-dependence identities between characters.
    Identity {
        #[command(subcommand)]
        which: IdentityCmd,
    },
    /// Congruences modulo p = 2k + 3 for the affine level k.
    Congruence {
        #[arg(long)]
        level: i64,
        /// Include the conjectural F ≡ 1 (mod p) check.
        #[arg(long)]
        hasse: bool,
        /// Include the exploratory W' ≡ h W (mod p^2) probe.
        #[arg(long)]
        mod_p2_probe: bool,
    },
    /// Decomposition table for affine levels 1..=kmax.
    Table {
        #[arg(long, default_value_t = 11)]
        kmax: i64,
    },
    /// Run the acceptance battery.
    Suite {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    /// L(k, i-1) at level k, 1 <= i <= k+1.
    Affine {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        index: i64,
    },
    /// L(c_{p,p'}, h_{r,s}) of the minimal model M(p, p').
    Virasoro {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        pp: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum FamilyCmd {
    /// All k+1 modules of affine sl2 at level k.
    Affine {
        #[arg(long)]
        level: i64,
    },
    /// The minimal model M(p, p').
    Virasoro {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        pp: i64,
    },
}

impl From<FamilyCmd> for Family {
    fn from(f: FamilyCmd) -> Self {
        match f {
            FamilyCmd::Affine { level } => Family::Affine { k: level },
            FamilyCmd::Virasoro { p, pp } => Family::Virasoro { p, pp },
        }
    }
}

#[derive(Subcommand, Debug)]
enum IdentityCmd {
    /// Alternating sum over level 2i^2 - 2 equal to i.
    Affine {
        #[arg(long)]
        i: i64,
    },
    /// Signed sum over M(2p̃^2, 3p̃'^2) equal to 1.
    Virasoro {
        #[arg(long)]
        pt: i64,
        #[arg(long)]
        ppt: i64,
    },
    /// Jacobi's cube identity split by residues mod 2i.
    Jacobi {
        #[arg(long)]
        i: i64,
    },
}

fn run(cli: &Cli) -> Result<(Output, Format), Failure> {
    let cache = Cache::new(cli.cache_dir.clone());
    let terms = cli.terms;
    let pick = |default: Format| cli.format.unwrap_or(default);
    let out = match &cli.command {
        Command::Char { which, normalize } => match *which {
            CharCmd::Affine { level, index } => commands::char_affine(level, index, terms, *normalize)?,
            CharCmd::Virasoro { p, pp, r, s } => commands::char_virasoro(p, pp, r, s, terms, *normalize)?,
        },
        Command::Wronskian { family, verify_eta } => commands::wronskian(&cache, (*family).into(), terms, *verify_eta)?,
        Command::Fv { family, decompose, zeros } => commands::fv(&cache, (*family).into(), terms, *decompose, *zeros)?,
        Command::Identity { which } => match *which {
            IdentityCmd::Affine { i } => commands::identity_affine(i, terms)?,
            IdentityCmd::Virasoro { pt, ppt } => commands::identity_virasoro(pt, ppt, terms)?,
            IdentityCmd::Jacobi { i } => commands::identity_jacobi(i, terms)?,
        },
        Command::Congruence { level, hasse, mod_p2_probe } => commands::congruence(*level, terms, *hasse, *mod_p2_probe)?,
        Command::Table { kmax } => return Ok((commands::table(&cache, *kmax, terms)?, pick(Format::Markdown))),
        Command::Suite { criterion } => return Ok((commands::suite(*criterion)?, pick(Format::Plain))),
    };
    Ok((out, pick(Format::Json)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Plain => print!("{}", out.plain),
                Format::Markdown => print!("{}", out.markdown),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
