use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    /// A chart point or profile left the upper half space `y > 0`.
    #[error("point outside the chart domain: y = {y}")]
    NonPositiveY { y: f64 },

    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },

    #[error("metric parameter must be nonzero")]
    ZeroMetricParam,

    #[error("degenerate plane: Gram determinant {gram:e} below tolerance")]
    DegeneratePlane { gram: f64 },

    #[error("immersion not regular at (u, v) = ({u}, {v}): Gram determinant {gram:e}")]
    RankDeficient { u: f64, v: f64, gram: f64 },

    #[error("degenerate first fundamental form: det I = {det:e}")]
    DegenerateForm { det: f64 },

    #[error(
        "unit normal is timelike (g(n, n) = {norm}); second fundamental form convention requires a spacelike normal"
    )]
    TimelikeNormal { norm: f64 },

    #[error("sample ({u}, {v}) too close to the domain boundary for the finite-difference stencil")]
    BoundaryMargin { u: f64, v: f64 },

    #[error("curve is not unit speed: speed = {speed}")]
    NotUnitSpeed { speed: f64 },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("profile has no interval of positivity")]
    EmptyInterval,

    #[error("mean curvature not constant over the grid: spread {spread:e}")]
    NotConstantMeanCurvature { spread: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
