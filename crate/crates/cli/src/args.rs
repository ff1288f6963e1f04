use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub const DEFAULT_ORDER: u32 = 16;

/// Exact computations in valued groups: parabolic series under
/// composition, contracting derivations, free nilpotent groups and
/// equations `t(y) = 1` over them.
#[derive(Parser, Debug)]
#[command(name = "valgroups", version)]
pub struct Cli {
    /// Truncation order N: series are exact modulo t^(N+1) [default: 16]
    #[arg(long, global = true, value_name = "N")]
    pub order: Option<u32>,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print one JSON document per command (schema version 1)
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: TopCommand,
}

#[derive(Subcommand, Debug)]
pub enum TopCommand {
    #[command(flatten)]
    Op(Op),
    /// Execute a session script (`-` reads standard input)
    Run { script: PathBuf },
}

/// A single statement inside a session script.
#[derive(Parser, Debug)]
#[command(name = "statement", no_binary_name = true)]
pub struct Statement {
    #[command(subcommand)]
    pub op: Op,
}

/// Commands available both one-shot and inside scripts. Arguments that
/// end a command line may be spread over several words; they are joined
/// with single spaces.
#[derive(Subcommand, Debug, Clone)]
pub enum Op {
    /// Evaluate a term at a parabolic series
    Eval {
        #[arg(required = true, num_args = 1..)]
        term: Vec<String>,
        /// Value substituted for y
        #[arg(long, default_value = "t")]
        at: String,
        /// Bind a constant for this command only
        #[arg(long, value_name = "NAME=SERIES")]
        bind: Vec<String>,
    },
    /// Solve t(y) = 1 in the composition group
    Solve {
        #[arg(required = true, num_args = 1..)]
        term: Vec<String>,
        /// Bind a constant for this command only
        #[arg(long, value_name = "NAME=SERIES")]
        bind: Vec<String>,
    },
    /// Composition f(g(t))
    Compose { f: String, g: String },
    /// Compositional inverse
    Invert {
        #[arg(required = true, num_args = 1..)]
        f: Vec<String>,
    },
    /// The flow f^mu for rational mu
    Flow { f: String, mu: String },
    /// The n-th compositional root
    Root { f: String, n: u32 },
    /// Logarithm: the derivation u with exp(u) = f (printed at order N-2)
    Log {
        #[arg(required = true, num_args = 1..)]
        f: Vec<String>,
    },
    /// Exponential of a derivation u t^2 d/dt (u read at order N-2)
    Exp {
        #[arg(required = true, num_args = 1..)]
        u: Vec<String>,
    },
    /// The BCH group law on derivations
    Bch { u: String, w: String },
    /// Factor f as a product of flows of t + t^rho
    Decompose {
        #[arg(required = true, num_args = 1..)]
        f: Vec<String>,
    },
    /// Check valued-group laws on a built-in model
    Laws {
        /// Model name, or `list` to show the registry
        model: String,
        /// Check a single law (default: every law)
        #[arg(long)]
        law: Option<String>,
        /// Samples per law
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Free nilpotent groups in Mal'cev coordinates
    Nil {
        /// Number of generators [default: 2]
        #[arg(long, global = true)]
        gens: Option<usize>,
        /// Nilpotency class [default: 2]
        #[arg(long, global = true)]
        class: Option<usize>,
        #[command(subcommand)]
        op: NilOp,
    },
}

/// Coordinates are given in basis order, e.g. `[1, 0, 1/2]` or `1,0,1/2`.
#[derive(Subcommand, Debug, Clone)]
pub enum NilOp {
    /// List the basis with weights
    Basis,
    /// Group product a b
    Mul { a: String, b: String },
    /// Rational power a^q
    Pow { a: String, q: String },
    /// Lie bracket of the logarithms
    Bracket { a: String, b: String },
    /// Lowest weight with a nonzero coordinate
    Val { a: String },
    /// Homogeneous component of lowest weight
    Res { a: String },
    /// Solve t(y) = 1
    Solve {
        #[arg(required = true, num_args = 1..)]
        term: Vec<String>,
        /// Bind a constant for this command only
        #[arg(long, value_name = "NAME=COORDS")]
        bind: Vec<String>,
    },
}

/// Words such as `-1/2` or `-t^2` are values, not flags: a leading space
/// hides the hyphen from the argument parser, and every value parser
/// skips whitespace.
pub fn protect_values<I, S>(words: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    words
        .into_iter()
        .map(|w| {
            let w: String = w.into();
            let mut chars = w.chars();
            match (chars.next(), chars.next()) {
                (Some('-'), Some(c)) if c != '-' && c != 'h' && c != 'V' => format!(" {w}"),
                _ => w,
            }
        })
        .collect()
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Eval { .. } => "eval",
            Op::Solve { .. } => "solve",
            Op::Compose { .. } => "compose",
            Op::Invert { .. } => "invert",
            Op::Flow { .. } => "flow",
            Op::Root { .. } => "root",
            Op::Log { .. } => "log",
            Op::Exp { .. } => "exp",
            Op::Bch { .. } => "bch",
            Op::Decompose { .. } => "decompose",
            Op::Laws { .. } => "laws",
            Op::Nil { op, .. } => match op {
                NilOp::Basis => "nil basis",
                NilOp::Mul { .. } => "nil mul",
                NilOp::Pow { .. } => "nil pow",
                NilOp::Bracket { .. } => "nil bracket",
                NilOp::Val { .. } => "nil val",
                NilOp::Res { .. } => "nil res",
                NilOp::Solve { .. } => "nil solve",
            },
        }
    }
}
