use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "coxkit",
    version,
    about = "Exact toric geometry: class groups, Cox gradings, Mori chambers and blow-up certificates",
    after_help = "Variable and ray indices are 1-based on the command line and in documents.\n\
                  Exit codes: 0 ok, 1 bad input, 2 a mathematical precondition failed, 3 golden mismatch.\n\
                  COXKIT_PRIMES=p1,p2,p3 overrides the modular prime list."
)]
pub struct Cli {
    /// Print the whole report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Compare the structured result with a golden report; exit 3 on mismatch.
    #[arg(long, global = true, value_name = "FILE")]
    pub expect: Option<PathBuf>,
    /// Use exact fraction-free ranks instead of the multi-prime default.
    #[arg(long, global = true)]
    pub exact: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a fan comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct FanSource {
    /// Fan document.
    #[arg(long, value_name = "FILE")]
    pub fan: Option<PathBuf>,
    /// Built-in fan: pN, fN (Hirzebruch), wp:a,b,c.
    #[arg(long, value_name = "NAME")]
    pub standard: Option<String>,
    /// Normal fan of a polytope document; `--divisor H` is its ample divisor.
    #[arg(long, value_name = "FILE")]
    pub polytope: Option<PathBuf>,
    /// Normal fan of the lattice polygon with these vertices, e.g. "0,0;1,0;0,1".
    #[arg(long, value_name = "POINTS", allow_hyphen_values = true)]
    pub vertices: Option<String>,
}

/// Where a grading comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct GradingSource {
    /// Grading document.
    #[arg(long, value_name = "FILE")]
    pub grading: Option<PathBuf>,
    /// Free degrees inline, one column per variable, e.g. "1,0;1,0;1,1;0,1".
    #[arg(long, value_name = "COLUMNS", allow_hyphen_values = true)]
    pub degrees: Option<String>,
    /// Otherwise the Cox grading of this fan.
    #[command(flatten)]
    pub fan: FanSource,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Divisor class group and the degrees of the torus-invariant divisors.
    Classgroup(FanSource),
    /// Cox ring of a toric variety: variables, degrees and the grading test.
    CoxGrading(FanSource),
    /// Lattice points of the divisor polytope of m·D.
    Sections {
        #[command(flatten)]
        src: FanSource,
        /// Coefficients a_1,...,a_r, or H for the ample divisor of a polytope.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Include the points themselves.
        #[arg(long)]
        list: bool,
    },
    /// Nef, basepoint free and ample tests.
    Positivity {
        #[command(flatten)]
        src: FanSource,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Effective cone of a grading.
    Eff(GradingSource),
    /// Moving cone of a grading.
    Mov(GradingSource),
    /// Mori chamber of a class, with its semistable supports.
    Chamber {
        #[command(flatten)]
        src: GradingSource,
        /// Rational class, e.g. "2,1" or "1/2,3".
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// All full-dimensional Mori chambers.
    Chambers(GradingSource),
    /// Whether a graded polynomial ring can be a Cox ring.
    IsCoxGrading(GradingSource),
    /// Hilbert basis of a pointed rational cone.
    HilbertBasis {
        /// Generators, e.g. "1,0;1,2".
        #[arg(long, allow_hyphen_values = true)]
        generators: Option<String>,
        /// Inward facet normals, e.g. "1,0;0,1".
        #[arg(long, allow_hyphen_values = true)]
        facets: Option<String>,
        /// Ambient dimension (needed when --facets is empty).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Minimal generators of the multisection ring R(X; D_1, ..., D_s).
    SectionRing {
        #[command(flatten)]
        src: FanSource,
        /// Divisors separated by ';', or H.
        #[arg(long, allow_hyphen_values = true)]
        divisors: String,
    },
    /// Generators of the Veronese monoid Q^{-1}(H) in the nonnegative orthant.
    Veronese {
        /// Degree columns of Q, e.g. "1;1" for Q = (1, 1).
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        /// Generators of the cone H.
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        /// Rows spanning a sublattice of degrees, e.g. "2".
        #[arg(long, allow_hyphen_values = true)]
        lattice: Option<String>,
    },
    /// Variable sets whose monomials generate the irrelevant ideal.
    Irrelevant(FanSource),
    /// Intersection number of two nef divisors on a toric surface.
    IntersectNef {
        #[command(flatten)]
        src: FanSource,
        #[arg(long, allow_hyphen_values = true)]
        d1: String,
        #[arg(long, allow_hyphen_values = true)]
        d2: String,
    },
    /// Negative curve and nef-not-semiample certificate on a blow-up at e.
    BlowupAnalyze(BlowupArgs),
    /// Whether 1/r + 1/(n - r) > 1/2.
    Mukai {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
    },
    /// Project the rays of the Losev-Manin fan LM_n to the plane.
    LmProject(LmArgs),
    /// Deterministic SVG figures.
    Plot {
        #[command(subcommand)]
        target: PlotTarget,
    },
}

#[derive(Args, Debug)]
pub struct BlowupArgs {
    /// Weights a,b,c of the weighted projective plane.
    #[arg(long)]
    pub weights: Option<String>,
    /// Blow-up or polytope document.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Polygon vertices inline.
    #[arg(long, value_name = "POINTS", allow_hyphen_values = true)]
    pub vertices: Option<String>,
    /// Vanishing order k of D = π*H - kE.
    #[arg(long)]
    pub k: Option<u64>,
    /// Certify base points of mD for m = 1..m_max.
    #[arg(long, default_value_t = 5)]
    pub m_max: u64,
    /// The curve is x^a y^b (1 - y)^w for this monomial a,b.
    #[arg(long, allow_hyphen_values = true)]
    pub curve_monomial: Option<String>,
    /// Order w of the curve's section at e.
    #[arg(long)]
    pub curve_order: Option<u64>,
    /// Only report h0 of m·Δ with vanishing order k.
    #[arg(long)]
    pub h0: bool,
    /// Dilation used with --h0.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
}

#[derive(Args, Debug)]
pub struct LmArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Rows of the projection, e.g. "1,0,1;0,1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v3: Option<String>,
    #[arg(long)]
    pub weights: Option<String>,
    /// Rays to look for among the images, in both orientations.
    #[arg(long, allow_hyphen_values = true)]
    pub rays: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PlotTarget {
    /// Chamber decomposition of a rank-2 grading.
    Chambers {
        #[command(flatten)]
        src: GradingSource,
        /// Write the SVG here instead of embedding it in the report.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// A lattice polygon with highlighted points.
    Polygon {
        #[arg(long, value_name = "FILE")]
        polytope: Option<PathBuf>,
        #[arg(long, value_name = "POINTS", allow_hyphen_values = true)]
        vertices: Option<String>,
        /// Points to highlight, e.g. "49,0;50,0".
        #[arg(long, allow_hyphen_values = true)]
        highlight: Option<String>,
        /// Also mark every lattice point.
        #[arg(long)]
        lattice: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}
