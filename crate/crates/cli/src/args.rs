//! Command-line surface: one subcommand per construction.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "coalgraph",
    version,
    about = "Finite graphs as coalgebras for set functors: validate, search homomorphisms, build limits, cofree graphs and covariety checks",
    max_term_width = 100
)]
pub struct Cli {
    /// Enumeration budget (elements / search-space size). Overrides the
    /// COALGRAPH_MAX_ENUM environment variable; defaults to 4096.
    #[arg(long, global = true)]
    pub max_enum: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph document against its invariants.
    Validate {
        graph: PathBuf,
    },
    /// Check that a homomorphism document commutes with the structure maps.
    HomCheck {
        hom: PathBuf,
    },
    /// Enumerate all homomorphisms between two graphs.
    HomEnum {
        a: PathBuf,
        b: PathBuf,
        /// Write the JSON listing here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two graphs are isomorphic; prints true or false.
    IsoCheck {
        a: PathBuf,
        b: PathBuf,
    },
    /// Factor a homomorphism as a surjection onto its image followed by an inclusion.
    Factorize {
        hom: PathBuf,
        /// Prefix for the three output files: <prefix>.image.graph,
        /// <prefix>.epi.hom, <prefix>.mono.hom.
        #[arg(short, long)]
        out_prefix: PathBuf,
    },
    /// List all subcoalgebras of a graph.
    Subgraphs {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest subcoalgebra inside a carrier selection (graph input) or
    /// inside a pattern (pattern input).
    Cogenerate {
        /// A .graph file (used with --vkeep/--ekeep) or a .pattern file.
        input: PathBuf,
        /// Comma-separated vertices to keep (graph input only).
        #[arg(long)]
        vkeep: Option<String>,
        /// Comma-separated edges to keep (graph input only).
        #[arg(long)]
        ekeep: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product of two graphs (edges paired through admissible structure elements).
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the projection homomorphisms.
        #[arg(long)]
        proj_a: Option<PathBuf>,
        #[arg(long)]
        proj_b: Option<PathBuf>,
    },
    /// Coproduct (tagged disjoint union) of two graphs.
    Coproduct {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the injection homomorphisms.
        #[arg(long)]
        inj_a: Option<PathBuf>,
        #[arg(long)]
        inj_b: Option<PathBuf>,
    },
    /// Equalizer of two parallel homomorphisms, cogenerated from the
    /// carrier-wise equalizers.
    Equalizer {
        h1: PathBuf,
        h2: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the inclusion homomorphism.
        #[arg(long)]
        inclusion: Option<PathBuf>,
    },
    /// The cofree graph over a color pair.
    Cofree {
        /// Functor expression: Id, P12, Pow or JSON like {"prod":["Id","Id"]}.
        #[arg(long)]
        functor: String,
        /// Comma-separated vertex colors.
        #[arg(long)]
        vcolors: String,
        /// Comma-separated edge colors.
        #[arg(long)]
        ecolors: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The first four carriers of the cofree construction's cochain.
    Cochain {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        vcolors: String,
        #[arg(long)]
        ecolors: String,
    },
    /// Lift a coloring to the unique homomorphism into the cofree graph.
    Lift {
        graph: PathBuf,
        /// Vertex coloring as v=color,w=color,...
        #[arg(long)]
        vcol: String,
        /// Edge coloring as e=color,...
        #[arg(long)]
        ecol: String,
        #[arg(long)]
        vcolors: String,
        #[arg(long)]
        ecolors: String,
        /// Output homomorphism file.
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the cofree graph the homomorphism targets.
        #[arg(long)]
        cofree_out: PathBuf,
    },
    /// Bake a coloring into the graph over the composite colored functor.
    Color {
        graph: PathBuf,
        #[arg(long)]
        vcol: String,
        #[arg(long)]
        ecol: String,
        #[arg(long)]
        vcolors: String,
        #[arg(long)]
        ecolors: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Does a pattern hold in a graph? Prints true or false.
    Satisfies {
        graph: PathBuf,
        pattern: PathBuf,
    },
    /// The least pattern over a color pair satisfied by all given graphs.
    PatternOf {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        vcolors: String,
        #[arg(long)]
        ecolors: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Close a class of graphs under subgraphs, homomorphic images and sums.
    Closure {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        /// Operators in composition order, rightmost first: a comma
        /// list over sub, hom, sum, or the shorthand shs (= sub,hom,sum).
        #[arg(long, default_value = "shs")]
        ops: String,
        /// Summand budget per coproduct.
        #[arg(long, default_value_t = 2)]
        max_summands: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the covariety closure of a class against its least
    /// pattern on an explicit universe.
    Birkhoff {
        /// Generating class members.
        #[arg(short = 'k', long = "class", required = true)]
        class: Vec<PathBuf>,
        /// Universe members (checked up to isomorphism).
        #[arg(short = 'u', long = "universe", required = true)]
        universe: Vec<PathBuf>,
        #[arg(long)]
        vcolors: String,
        #[arg(long)]
        ecolors: String,
        #[arg(long, default_value_t = 2)]
        max_summands: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a graph as DOT (undirected, directed, or their colored wrappers).
    ExportDot {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}
