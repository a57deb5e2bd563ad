use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qdef", version, about = "Exact decision procedures over the rationals")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest integer size, in bits, that factorization will attempt (default 256).
    #[arg(long, global = true)]
    pub factor_bits: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-adic valuation of a rational.
    Valuation {
        #[arg(allow_hyphen_values = true)]
        x: String,
        p: String,
    },
    /// Prime factorization of a nonzero rational.
    Factor {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Legendre symbol (a | l) for an odd prime l.
    Legendre {
        #[arg(allow_hyphen_values = true)]
        a: String,
        l: String,
    },
    /// Legendre symbol of the l-adic unit part of p.
    GenLegendre {
        #[arg(allow_hyphen_values = true)]
        p: String,
        l: String,
    },
    /// Lexicographically largest x1 >= x2 >= x3 >= x4 with n = x1^2 + ... + x4^2.
    FourSquares { n: String },
    /// p-adic numbers.
    Padic {
        #[command(subcommand)]
        op: PadicOp,
    },
    /// Hilbert symbol (a, b) at a place.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        place: String,
    },
    /// Whether a diagonal form represents a value over Q.
    Represents {
        #[command(flatten)]
        target: FormTarget,
        /// Include the per-place verdicts.
        #[arg(long)]
        trace: bool,
    },
    /// Bounded search for a rational point of q(x) = a.
    Witness {
        #[command(flatten)]
        target: FormTarget,
        #[arg(long, default_value_t = 1000)]
        height: u64,
    },
    /// Whether 2 + a b k^2 + b z^2 = x^2 + a y^2 is solvable over Q.
    RobinsonPhi {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
    },
    /// Local solvability and global search for 3x^3 + 4y^3 = 5.
    Selmer {
        #[arg(long, default_value_t = 20)]
        places: u64,
        #[arg(long, default_value_t = 100)]
        height: u64,
    },
    /// Ramified places of the quaternion algebra (a, b).
    Delta {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Membership of t in T_{a,b}.
    TMember {
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Trace-of-norm-one membership of s in S_{a,b}.
    SMember {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Semi-local ring R_p^[k] (kind r3, r5, r7) or R_{p,q}^[1] (kind r1).
    Ring {
        kind: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Membership of p in Phi_k.
    PhiK {
        #[arg(allow_hyphen_values = true)]
        p: String,
        k: i64,
    },
    /// Membership of (p, q) in Psi.
    Psi {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Membership of x in ~R for the ring with the given places.
    Tilde {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Comma-separated primes; empty means R = Q.
        #[arg(long, default_value = "")]
        places: String,
    },
    /// Checks t against the universal definition of Z in Q.
    ZCertificate {
        #[arg(allow_hyphen_values = true)]
        t: String,
        /// Sampled parameters per clause family.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Search bound for the auxiliary prime q.
        #[arg(long, default_value_t = 100_000)]
        q_bound: u64,
    },
    /// Positive a, b with t outside T_{a,b}.
    PoonenExclude {
        #[arg(allow_hyphen_values = true)]
        t: String,
        /// Bound on numerators and denominators of a and b.
        #[arg(long, default_value_t = 64)]
        grid: u64,
    },
    /// Solutions of x^2 - (a^2 - 1) y^2 = 1.
    Pell {
        a: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Whether x^2 - (a^2 - 1) y^2 = 1.
    J {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        a: String,
    },
    /// Growth of Pell solutions in both orientations.
    Growth {
        a: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        k_bound: u64,
    },
    /// Turing machines.
    Tm {
        #[command(subcommand)]
        op: TmOp,
    },
    /// Goedel codes of formulas and machines.
    Godel {
        #[command(subcommand)]
        op: GodelOp,
    },
    /// Codes 2^i 3^j of machine/input pairs that halt within the step bound.
    HaltingList {
        /// Machine files, comma-separated or repeated.
        #[arg(long, value_delimiter = ',', required = true)]
        machines: Vec<PathBuf>,
        /// Input words, repeated; defaults to the empty tape.
        #[arg(long = "input")]
        inputs: Vec<String>,
        #[arg(long)]
        steps: u64,
    },
}

#[derive(Debug, Args)]
pub struct FormTarget {
    /// Comma-separated coefficients, e.g. 1,1,-3.
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
    #[arg(long, allow_hyphen_values = true)]
    pub value: String,
}

#[derive(Debug, Args)]
pub struct PrimePrec {
    #[arg(short, long)]
    pub prime: String,
    /// Number of significant digits.
    #[arg(long, default_value_t = 16)]
    pub prec: usize,
}

#[derive(Debug, Subcommand)]
pub enum PadicOp {
    /// Digit expansion of a rational.
    Embed {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        pp: PrimePrec,
    },
    Add {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        pp: PrimePrec,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        pp: PrimePrec,
    },
    /// Lift a simple root of a monic polynomial (coefficients high to low).
    Hensel {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true)]
        root: String,
        #[command(flatten)]
        pp: PrimePrec,
    },
    /// Square class of a rational in Q_p.
    SquareClass {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(short, long)]
        prime: String,
    },
    /// Existential membership test for Z_p (cubic variant at p = 2).
    ZpMember {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(short, long)]
        prime: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TmOp {
    /// Run a machine file on an input word.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long)]
        steps: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GodelOp {
    /// Code of a formula over + · 0 1 ≐ ( ) ¬ → ∀ v ′.
    Encode { formula: String },
    /// Token sequence of a code.
    Decode { code: String },
    /// Code of a machine program file.
    EncodeMachine { file: PathBuf },
    /// Program text of a machine code.
    DecodeMachine { code: String },
}

impl Command {
    pub fn name(&self) -> String {
        let s = match self {
            Command::Valuation { .. } => "valuation",
            Command::Factor { .. } => "factor",
            Command::Legendre { .. } => "legendre",
            Command::GenLegendre { .. } => "gen-legendre",
            Command::FourSquares { .. } => "four-squares",
            Command::Padic { op } => {
                return format!(
                    "padic {}",
                    match op {
                        PadicOp::Embed { .. } => "embed",
                        PadicOp::Add { .. } => "add",
                        PadicOp::Mul { .. } => "mul",
                        PadicOp::Hensel { .. } => "hensel",
                        PadicOp::SquareClass { .. } => "square-class",
                        PadicOp::ZpMember { .. } => "zp-member",
                    }
                )
            }
            Command::Hilbert { .. } => "hilbert",
            Command::Represents { .. } => "represents",
            Command::Witness { .. } => "witness",
            Command::RobinsonPhi { .. } => "robinson-phi",
            Command::Selmer { .. } => "selmer",
            Command::Delta { .. } => "delta",
            Command::TMember { .. } => "t-member",
            Command::SMember { .. } => "s-member",
            Command::Ring { .. } => "ring",
            Command::PhiK { .. } => "phi-k",
            Command::Psi { .. } => "psi",
            Command::Tilde { .. } => "tilde",
            Command::ZCertificate { .. } => "z-certificate",
            Command::PoonenExclude { .. } => "poonen-exclude",
            Command::Pell { .. } => "pell",
            Command::J { .. } => "j",
            Command::Growth { .. } => "growth",
            Command::Tm { .. } => "tm run",
            Command::Godel { op } => {
                return format!(
                    "godel {}",
                    match op {
                        GodelOp::Encode { .. } => "encode",
                        GodelOp::Decode { .. } => "decode",
                        GodelOp::EncodeMachine { .. } => "encode-machine",
                        GodelOp::DecodeMachine { .. } => "decode-machine",
                    }
                )
            }
            Command::HaltingList { .. } => "halting-list",
        };
        s.to_string()
    }
}
