use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix does not preserve the Hermitian form (deviation {deviation:.3e})")]
    FormViolation { deviation: f64 },
    #[error("matrix is singular (|det| = {det:.3e})")]
    Singular { det: f64 },
    #[error("point is not fixed by the isometry (residual {residual:.3e})")]
    NotFixed { residual: f64 },
    #[error("vector is not null for the Hermitian form (|⟨v,v⟩| = {value:.3e})")]
    NotNull { value: f64 },
    #[error("the two boundary points coincide projectively")]
    DegeneratePair,
    #[error("point lies on an endpoint of the geodesic")]
    OnIdealEndpoint,
    #[error("degenerate triple of boundary points")]
    DegenerateTriple,
    #[error("degenerate configuration: vanishing Hermitian product in cross-ratio")]
    DegenerateConfiguration,
    #[error("a vertex triple lies in a complex line; angle ψ is undefined")]
    ComplexLineDegeneracy,
    #[error("degenerate tetrahedron: vertices {0} and {1} coincide")]
    DegenerateTetrahedron(usize, usize),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("rank decision is ill-conditioned (singular value {sigma:.3e} near threshold {threshold:.3e})")]
    IllConditioned { sigma: f64, threshold: f64 },
    #[error("basis matrix is numerically singular (condition {condition:.3e})")]
    SingularBasis { condition: f64 },
    #[error("eigenvalue must have unit modulus (|λ| = {modulus})")]
    NotUnitModulus { modulus: f64 },
    #[error("tetrahedron is not balanced (|X| - 1 = {deviation:.3e})")]
    NotBalanced { deviation: f64 },
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("no real solution: {0}")]
    Infeasible(String),
    #[error("bisection found no sign change on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("family {0} has no involution conjugator")]
    NoInvolution(&'static str),
}
