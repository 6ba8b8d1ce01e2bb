use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mfill_core::normed_plane::AreaDefinition;

#[derive(Debug, Parser)]
#[command(name = "mfill", version, about = "Metric filling toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for randomized items.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Patch resolution.
    #[arg(long, global = true)]
    pub mesh: Option<f64>,
    /// Area definition: b (Hausdorff), ht (Holmes–Thompson) or m* (mass*).
    #[arg(long, global = true, value_parser = parse_mu)]
    pub mu: Option<AreaDefinition>,
    /// Multiplies every numerical tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn parse_mu(s: &str) -> Result<AreaDefinition, String> {
    match s {
        "b" => Ok(AreaDefinition::Hausdorff),
        "ht" => Ok(AreaDefinition::HolmesThompson),
        "m*" | "mstar" => Ok(AreaDefinition::MassStar),
        _ => Err(format!("unknown area definition `{s}` (expected b, ht or m*)")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of polygonal norms.
    #[command(subcommand)]
    Norm(NormCmd),
    /// Finite metric spaces, graphs and groups.
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Filling area, filling radius and related functionals.
    #[command(subcommand)]
    Fill(FillCmd),
    /// Run the verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Constants,
    All,
}

/// A polygon JSON file or a built-in name (`square`, `diamond`, `hexagon`,
/// `euclid64`, `regular:<m>`).
#[derive(Debug, Args)]
pub struct NormInput {
    pub polygon: String,
}

#[derive(Debug, Subcommand)]
pub enum NormCmd {
    /// Perimeter of the unit ball in its own norm.
    Perimeter(NormInput),
    /// The polar dual polygon.
    Dual(NormInput),
    /// Area densities relative to Lebesgue measure.
    Density(NormInput),
    /// Isoperimetrix and isoperimetric ratio.
    Isoperimetrix(NormInput),
    /// Jung constant enclosure.
    Jung(NormInput),
    /// α_V = 1/(J·perimeter).
    Alpha(NormInput),
    /// Invariants over seeded random norms.
    Sweep {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MetricCmd {
    /// Four-point δ, and the slim-triangle constant for graphs.
    Delta {
        /// Metric (JSON or CSV) or graph JSON, or `tree:<depth>`,
        /// `cycle:<n>`, `grid:<n>`.
        input: String,
        /// Triples scanned exhaustively up to this count, sampled above.
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
    },
    /// Kuratowski embedding into ℓ∞.
    Embed {
        input: String,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Sampled injective envelope.
    Tightspan {
        input: String,
        #[arg(long, default_value_t = 0.25)]
        resolution: f64,
    },
    /// δ-thickening of a graph.
    Thicken {
        input: String,
        #[arg(long)]
        delta: f64,
    },
    /// Ball in the Cayley graph of a presentation (JSON, or `z2`, `f2`).
    Cayley {
        input: String,
        #[arg(long)]
        radius: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FillCmd {
    /// Least filling area of a 1-cycle in a complex.
    Area {
        complex: String,
        chain: String,
        /// Restrict to integer coefficients.
        #[arg(long)]
        integral: bool,
    },
    /// Filling radius of a 1-cycle in a complex with a vertex metric.
    Radius { complex: String, chain: String },
    /// Filling radius of a loop through a finite metric space, by the Rips
    /// and Kuratowski routes.
    Rips {
        /// Metric file or `circle:<n>`.
        metric: String,
        /// Loop JSON; defaults to all points in order.
        #[arg(name = "loop")]
        loop_: Option<String>,
    },
    /// Isoperimetric profile over a family of loops.
    Profile {
        /// Complex JSON, or `euclid` / `hyperbolic` for generated substrates.
        substrate: String,
        /// Loops JSON (required for a complex file).
        loops: Option<String>,
        /// Circle radii for `euclid`, as `lo..hi`.
        #[arg(long, default_value = "4..12")]
        radii: String,
        /// Ball radius for `hyperbolic`.
        #[arg(long, default_value_t = 6)]
        radius: usize,
        /// SVG plot path; defaults to the report path with `.svg`, or
        /// `profile.svg`.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Lower bound for H_λ(r) on a loop in a graph.
    Hlambda {
        /// Graph JSON, or `grid:<n>`, `tree:<depth>`.
        graph: String,
        /// Loop JSON, or `square:<side>`, `excursion`.
        #[arg(name = "loop")]
        loop_: String,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
    /// Semi-ellipticity test of a convex region.
    Semiell {
        /// Norm polygon or built-in name.
        norm: String,
        /// Region JSON `{"vertices": [[x, y], ...]}`, or `unit-square`,
        /// `diamond`.
        region: String,
    },
}
