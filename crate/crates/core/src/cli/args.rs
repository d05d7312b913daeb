use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "s3knots", version, about = "Knots, braids and flows on the 3-sphere", propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reeb and Hamiltonian flows on the unit sphere in R^4.
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Closed braids: invariants, Alexander polynomial, simplification.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Iterated torus knots by cabling.
    #[command(subcommand)]
    Cable(CableCmd),
    /// Lorenz system, lobe coding and template braids.
    #[command(subcommand)]
    Lorenz(LorenzCmd),
    /// Markov triples, trace matrices and geodesic lengths.
    #[command(subcommand)]
    Markov(MarkovCmd),
    /// Group presentations under matrix representations.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Kirby moves on linking matrices.
    #[command(subcommand)]
    Kirby(KirbyCmd),
}

#[derive(Args, Debug, Clone)]
pub struct Integration {
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Keep every n-th sample in the exported trajectory.
    #[arg(long, default_value_t = 100)]
    pub every: usize,
}

#[derive(Subcommand, Debug)]
pub enum FlowCmd {
    /// Integrate the standard or weighted flow and export samples.
    Trace {
        /// x1,y1,x2,y2 on the unit sphere.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0")]
        point: String,
        /// Flow field, e.g. {"kind":"weighted","r1":0.5,"r2":0.3333333333333333}.
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        integration: Integration,
        /// Closed-orbit detection radius.
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
    },
    /// Reeb conditions at a point, or at a seeded batch of random points.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Torus-knot type from two frequencies or from an integrated flow.
    KnotType {
        /// omega1,omega2
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "0.6,0,0.8,0")]
        point: String,
        #[command(flatten)]
        integration: Integration,
        /// Largest denominator tried.
        #[arg(long, default_value_t = 50)]
        depth: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    /// Exponent sum, strands, Bennequin number and closure components.
    Invariants {
        /// {"n": strands, "w": [signed letters]}
        #[arg(long)]
        word: String,
    },
    /// Alexander polynomial of a knot closure.
    Alexander {
        #[arg(long)]
        word: String,
    },
    /// Bounded search for a simpler conjugate under Markov moves.
    Reduce {
        #[arg(long)]
        word: String,
        /// Node expansion budget.
        #[arg(long, default_value_t = 20_000)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CableCmd {
    /// Braid word of an iterated torus knot.
    Build {
        /// {"stages": [[p, q], ...], "orientation": 1}
        #[arg(long)]
        params: String,
    },
    /// Report every descriptor constraint that fails.
    Validate {
        #[arg(long)]
        params: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct LorenzRun {
    #[arg(long, allow_hyphen_values = true, default_value = "1,1,1")]
    pub point: String,
    /// {"sigma": 10, "b": 2.6666666666666665, "r": 24}; missing fields take defaults.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
}

#[derive(Subcommand, Debug)]
pub enum LorenzCmd {
    /// Integrate and export samples.
    Simulate {
        #[command(flatten)]
        run: LorenzRun,
        #[arg(long, default_value_t = 100)]
        every: usize,
    },
    /// Lobe coding and close-return candidates.
    Encode {
        #[command(flatten)]
        run: LorenzRun,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Longest candidate word.
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Template braid and invariants of a periodic L/R word.
    Template {
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MarkovCmd {
    /// Markov triples reachable from (1,1,1) in `depth` Vieta moves.
    Tree {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Matrices with traces x,y,z.
    Matrices {
        /// x,y,z
        #[arg(long, allow_hyphen_values = true, default_value = "3,3,3")]
        trace: String,
    },
    /// Geodesic length for a real trace `x` or a complex trace `re,im`.
    Geodesic {
        #[arg(long, allow_hyphen_values = true)]
        trace: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Evaluate every relator of a presentation.
    Check {
        /// Built-in presentation name.
        #[arg(long, conflicts_with = "params")]
        name: Option<String>,
        /// Use the conjugate root of w^2 + w + 1 = 0 for built-ins.
        #[arg(long)]
        conjugate_root: bool,
        /// {"presentation": "<a,b | ...>", "assignment": {"a": {"ring": "Z", "entries": [...]}}, "projective": false}
        #[arg(long)]
        params: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum KirbyCmd {
    /// Apply a move script to a framed link.
    Apply {
        /// {"link": {"labels": [...], "matrix": [[...]]}, "moves": [{"move": "blow_up", "sign": 1}, ...]}
        #[arg(long)]
        params: String,
    },
}
