use thiserror::Error;

/// Everything that can go wrong while building patterns, quartics, the group
/// law, or the measure. Variants are grouped roughly by the stage that raises
/// them; the CLI maps them onto its exit-code taxonomy via [`Error::class`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    // -- geometric primitives --
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("collinear points (normalized area {area:.3e}), no circumcircle")]
    CollinearPoints { area: f64 },
    #[error("lines are parallel within tolerance")]
    ParallelLines,

    // -- pattern validation --
    #[error("periodicity violated: {detail} (residual {residual:.3e})")]
    PeriodicityViolation { detail: &'static str, residual: f64 },
    #[error("monodromies u, v are collinear")]
    CollinearMonodromies,
    #[error("face {face} is not concyclic (residual {residual:.3e})")]
    NonConcyclicFace { face: &'static str, residual: f64 },
    #[error("face {face} has coincident vertices")]
    DegenerateFace { face: &'static str },
    #[error("pattern is both horizontally and vertically trapezoidal within tolerance")]
    AmbiguousClass,
    #[error("pattern has the wrong class for this construction: expected {expected}")]
    WrongClass { expected: &'static str },

    // -- mutation --
    #[error("face circle of {face} is degenerate, cannot place its center")]
    DegenerateFaceCircle { face: &'static str },
    #[error("reflection axis is undefined: the two circle centers coincide")]
    CoincidentCenters,

    // -- hyperbola fit / reconstruction --
    #[error("conic fit through the five points failed")]
    FitFailure,
    #[error("five points do not lie on a common equilateral hyperbola (residual {residual:.3e})")]
    NotOnCommonHyperbola { residual: f64 },
    #[error("abscissas must be nonzero and pairwise distinct")]
    InvalidAbscissas,

    // -- quartic construction --
    #[error("flat angle: {0} are collinear, generic construction impossible")]
    FlatAngle(&'static str),
    #[error("vanishing denominator in {0}")]
    ZeroDenominator(&'static str),
    #[error("quartic is degenerate (a={a:.6e}, b={b:.6e}, c={c:.6e})")]
    DegenerateQuartic { a: f64, b: f64, c: f64 },
    #[error("quartic has empty real locus")]
    EmptyRealLocus,
    #[error("quartic does not meet the x-axis in real points")]
    NoRealAxisPoint,

    // -- group law --
    #[error("point is not on the quartic (|F| = {residual:.3e} > {bound:.3e})")]
    NotOnCurve { residual: f64, bound: f64 },
    #[error("root extraction is ambiguous near a tangency")]
    AmbiguousTangency,
    #[error("gradient of the quartic vanishes at the point")]
    DegenerateGradient,
    #[error("root solver failed: {0}")]
    SolverFailure(&'static str),

    // -- measure --
    #[error("s = {0} is outside the admissible locus")]
    OutOfDomain(f64),
    #[error("points lie on different branches ({0} vs {1})")]
    DifferentBranches(String, String),
    #[error("quadrature did not converge")]
    QuadratureFailure,

    // -- sampling --
    #[error("rejection sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
}

/// Coarse classification used by callers that need an exit-code style triage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Inputs violated a precondition (bad abscissas, wrong class, off-curve point).
    InvalidInput,
    /// A geometric degeneracy made the construction impossible.
    DegenerateMath,
    /// An iterative solver or quadrature failed to converge.
    SolverFailure,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidAbscissas | WrongClass { .. } | NotOnCurve { .. } | OutOfDomain(_)
            | DifferentBranches(..) => ErrorClass::InvalidInput,
            SolverFailure(_) | QuadratureFailure | AmbiguousTangency | SamplingExhausted(_) => {
                ErrorClass::SolverFailure
            }
            _ => ErrorClass::DegenerateMath,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
