use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "locres", version, about = "Exact Grothendieck residues, local duality and free resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis, leading terms and quotient basis.
    Gb {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
    },
    /// Ideal membership of a germ, with cofactors when it is a member.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        germ: String,
        /// Test membership in the component of the ideal at the origin.
        #[arg(long)]
        local: bool,
    },
    /// Minimal free resolution of the quotient ring.
    Resolve {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Koszul complex of the generators.
    Koszul {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Residue of `germ dz` along a complete intersection, exact and by quadrature.
    Residue {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        germ: String,
        #[command(flatten)]
        quad: QuadArgs,
        /// Skip the quadrature cross-check.
        #[arg(long)]
        exact_only: bool,
    },
    /// Table of residues of monomials and the induced pairing on the quotient.
    Pairing {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Print every table entry, including zeros.
        #[arg(long)]
        all: bool,
    },
    /// Compares residue duality with Gröbner membership in the local ideal.
    DualityCheck {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Check every monomial of total degree at most this bound; defaults
        /// to the monomials of degree below the quotient dimension.
        #[arg(long)]
        degree: Option<u32>,
        /// Additional random polynomials, half of them forced into the ideal.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bochner–Martinelli quadrature against exact residues.
    BmVerify {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Numerator to test; defaults to every monomial up to `--degree`.
        #[arg(long)]
        germ: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[command(flatten)]
        quad: QuadArgs,
        /// Second radius for the radius-independence check.
        #[arg(long)]
        second_radius: Option<f64>,
    },
    /// Symbolic identities of the Bochner–Martinelli forms for the generators.
    VpCheck {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also build the exactness witness for this germ of the ideal.
        #[arg(long)]
        germ: Option<String>,
        /// Print the top-degree component and its closed form.
        #[arg(long)]
        show_forms: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    /// Comma separated variable names, e.g. `z,w`.
    #[arg(long)]
    pub vars: Option<String>,
    /// Comma separated generators in the polynomial grammar.
    #[arg(long, conflicts_with = "ideal_file")]
    pub ideal: Option<String>,
    /// File with generators, one or more per line; `# vars: z, w` sets names.
    #[arg(long)]
    pub ideal_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Number of random rational points off the zero set for the rank check.
    #[arg(long, default_value_t = 5)]
    pub random: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 0.7)]
    pub radius: f64,
    /// Angular grid; defaults to 256 on the circle and 64 on the three-sphere.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Gauss–Legendre nodes in the polar direction of the three-sphere.
    #[arg(long, default_value_t = 48)]
    pub eta_grid: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Grevlex,
    Lex,
}

impl Command {
    pub fn ideal(&self) -> &IdealArgs {
        match self {
            Command::Gb { ideal, .. }
            | Command::Member { ideal, .. }
            | Command::Resolve { ideal, .. }
            | Command::Koszul { ideal, .. }
            | Command::Residue { ideal, .. }
            | Command::Pairing { ideal, .. }
            | Command::DualityCheck { ideal, .. }
            | Command::BmVerify { ideal, .. }
            | Command::VpCheck { ideal, .. } => ideal,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Member { .. } => "member",
            Command::Resolve { .. } => "resolve",
            Command::Koszul { .. } => "koszul",
            Command::Residue { .. } => "residue",
            Command::Pairing { .. } => "pairing",
            Command::DualityCheck { .. } => "duality-check",
            Command::BmVerify { .. } => "bm-verify",
            Command::VpCheck { .. } => "vp-check",
        }
    }
}
