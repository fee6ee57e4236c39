//! Command-line grammar.

use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "srkit",
    version,
    about = "Sum-rank metric codes: bounds, MSRD certification, duality, distributions, constructions",
    after_help = "Exit status: 0 success, 1 negative verdict, 2 usage or input error, 3 enumeration guard exceeded.\n\
                  SRKIT_MAX_ENUM overrides the enumeration guard; --max-enum overrides both."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Largest number of codewords or subspaces any sweep may visit.
    #[arg(long, global = true, value_name = "COUNT")]
    pub max_enum: Option<u128>,

    /// Worker threads for enumeration; 1 runs everything on the main thread.
    #[arg(long, global = true)]
    pub threads: Option<NonZeroUsize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every upper bound on |C| for a profile and minimum distance.
    Bounds(BoundsArgs),
    /// Computes the minimum distance of a code file and tests the MSRD property.
    Check(CodeArg),
    /// Writes the dual code.
    Dual(DualArgs),
    /// Shortens a code: the MSRD row/column operations, or C(U) for an explicit support.
    Shorten(ShortenArgs),
    /// Deletes the last row of a block of an MSRD code.
    Puncture(PunctureArgs),
    /// Sum-rank, rank-list and support distributions by enumeration.
    Distributions(DistributionsArgs),
    /// Rank-list distribution of the dual via the MacWilliams identities.
    Macwilliams(MacwilliamsArgs),
    /// Nonexistence test for MSRD codes through the sign of ω.
    Omega(OmegaArgs),
    /// Builds a code from one of the known families.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Asymptotic bound curves as CSV. Sphere bounds need every block of one shape.
    Asymptotics(AsymptoticsArgs),
    /// Number of tuples of sum-rank weight at most r.
    SphereVolume(SphereArgs),
}

#[derive(Args, Debug)]
pub struct FieldProfile {
    /// Field order (e.g. 4) or full spec `q=p^k;mod=c_k,...,c_0`.
    #[arg(long)]
    pub q: String,
    /// Blocks `nxm`, comma separated, optional repeat suffix (`1x2x7`).
    #[arg(long)]
    pub profile: String,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub space: FieldProfile,
    /// Minimum distance.
    #[arg(long, required_unless_present = "all_d")]
    pub d: Option<usize>,
    /// One row per distance 1..=N.
    #[arg(long, conflicts_with = "d")]
    pub all_d: bool,
}

#[derive(Args, Debug)]
pub struct CodeArg {
    /// Code file in `.src` format.
    pub code: PathBuf,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    pub code: PathBuf,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("how").required(true).args(["row", "col", "support"])))]
pub struct ShortenArgs {
    pub code: PathBuf,
    /// Remove a row of this block (1-based, blocks in nonincreasing-m order).
    #[arg(long, value_name = "BLOCK")]
    pub row: Option<usize>,
    /// Remove a column of this block (1-based, blocks in nonincreasing-m order).
    #[arg(long, value_name = "BLOCK")]
    pub col: Option<usize>,
    /// Which row or column to remove (1-based, default 1).
    #[arg(long, requires = "how")]
    pub index: Option<usize>,
    /// Subspace tuple U in file block order: `|`-separated generator
    /// matrices (`1 0;0 1`), `0` for the zero space, `full` for everything.
    #[arg(long, conflicts_with = "index")]
    pub support: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PunctureArgs {
    pub code: PathBuf,
    /// Block to lose its last row (1-based, blocks in nonincreasing-m order).
    #[arg(long)]
    pub block: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistributionsArgs {
    pub code: PathBuf,
    /// Report the dual code instead.
    #[arg(long)]
    pub dual: bool,
    /// Also enumerate the other code and verify both MacWilliams transforms
    /// and the binomial moments.
    #[arg(long)]
    pub check_macwilliams: bool,
    /// List every support with its count.
    #[arg(long)]
    pub support: bool,
}

#[derive(Args, Debug)]
pub struct MacwilliamsArgs {
    /// Code file whose rank-list distribution is transformed.
    #[arg(required_unless_present = "input", conflicts_with = "input")]
    pub code: Option<PathBuf>,
    /// CSV with header `ranks,count`; ranks space separated in nonincreasing-m block order.
    #[arg(long, requires_all = ["q", "profile", "dim"])]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub profile: Option<String>,
    /// Dimension of the code the distribution belongs to.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    #[arg(long)]
    pub q: u64,
    /// Common column count.
    #[arg(long)]
    pub m: usize,
    /// Row counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub shape: Vec<usize>,
    #[arg(long)]
    pub d: usize,
    /// Scan every u above the distance (default).
    #[arg(long, conflicts_with = "fast")]
    pub full: bool,
    /// Only the extremal vector ũ.
    #[arg(long)]
    pub fast: bool,
    /// Apply the test to the would-be dual (ω̂).
    #[arg(long)]
    pub dual: bool,
}

#[derive(Args, Debug)]
pub struct ConstructIo {
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verify the distance by enumeration, or record a structural certificate.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Subcommand, Debug)]
pub enum Construction {
    /// Gabidulin MRD code in one n×m block.
    Gabidulin {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// An MDS code over GF(q^m) expanded into t blocks 1×m.
    MdsLift {
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Distance-2 MSRD code for any profile.
    D2 {
        #[command(flatten)]
        space: FieldProfile,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Distance-N MSRD code.
    Dn {
        #[command(flatten)]
        space: FieldProfile,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Distance N-α MSRD code.
    DnMinus {
        #[command(flatten)]
        space: FieldProfile,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// MRD blocks followed by t2 blocks 1×1 carrying an MDS code.
    Msrd111 {
        #[arg(long)]
        q: String,
        /// Inner blocks, profile syntax.
        #[arg(long)]
        inner: String,
        #[arg(long)]
        t2: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// MRD blocks followed by t2 blocks 1×m̂ carrying an MDS code over GF(q^m̂).
    Combine {
        #[arg(long)]
        q: String,
        #[arg(long)]
        inner: String,
        #[arg(long)]
        t2: usize,
        #[arg(long)]
        m_hat: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Distance s+2 MSRD code in s+1 blocks 1×m and m+1 blocks 1×1.
    Msrd111Ext {
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Simplex code over GF(q^m) lifted through full-rank n×m MRD codes.
    SimplexLift {
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        io: ConstructIo,
    },
    /// Uniformly random code of dimension k.
    Random {
        #[command(flatten)]
        space: FieldProfile,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        io: ConstructIo,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Ternary search in ln z.
    Ternary,
    /// Grid over z with step --z-step.
    Grid,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub q: u64,
    /// Column count of the repeating tail blocks.
    #[arg(long)]
    pub m: usize,
    /// Tail row counts, cycled; comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Finite head: entries `m` (with the first tail row count) or `nxm`.
    #[arg(long, value_delimiter = ',')]
    pub head: Vec<String>,
    /// Curves to emit, comma separated keys, or `all`.
    #[arg(long, default_value = "all")]
    pub bounds: String,
    /// `start:stop:step` in η.
    #[arg(long, default_value = "0:1:0.005")]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = Method::Ternary)]
    pub method: Method,
    #[arg(long, default_value_t = 1e-4)]
    pub z_step: f64,
    /// Report where total-distance drops below sphere-packing inside `lo:hi`.
    #[arg(long, value_name = "LO:HI")]
    pub crossover: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    #[command(flatten)]
    pub space: FieldProfile,
    /// Radius.
    #[arg(long, required_unless_present = "all")]
    pub r: Option<usize>,
    /// Every radius 0..=N.
    #[arg(long, conflicts_with = "r")]
    pub all: bool,
}
