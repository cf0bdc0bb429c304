use std::fmt;

/// Errors surfaced by the exact kernels and the algebraic layers on top of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square matrix was required.
    NonSquareMatrix { rows: usize, cols: usize },
    /// The Gram matrix is not symmetric positive definite.
    NotPositiveDefinite,
    /// The shortest-vector enumeration tree exceeded the node budget.
    BudgetExceeded { budget: u64 },
    /// The LLL parameter delta must satisfy 1/4 < delta < 1.
    BadDelta,
    /// The defining polynomial has non-real roots.
    NotTotallyReal,
    /// The defining polynomial factors over Q.
    ReduciblePolynomial,
    /// The defining polynomial is not monic of degree >= 1, or is not squarefree.
    BadMinimalPolynomial(String),
    /// The supplied integral basis is not a full-rank multiplicatively closed Z-module.
    IntegralBasisNotClosed,
    /// Division by zero in a field or algebra.
    DivisionByZero,
    /// A nonzero element was required.
    ZeroElement,
    /// Elements belong to different fields.
    FieldMismatch,
    /// Elements belong to different algebras.
    AlgebraMismatch,
    /// The constants a, b of a quaternion algebra must be nonzero.
    ZeroAlgebraConstant,
    /// A generating set spans a module of rank lower than required.
    RankDeficient { got: usize, need: usize },
    /// The twisting element alpha is not totally positive.
    NotTotallyPositive,
    /// The algebra is not totally definite.
    NotTotallyDefinite,
    /// A module expected to be an order failed the order axioms.
    NotAnOrder,
    /// The element has reduced norm zero, hence no inverse.
    NotInvertible,
    /// A minimal vector of the unit lattice had reduced norm != 1.
    NormOneViolation(String),
    /// The norm-one set is not closed under multiplication.
    ClosureFailure,
    /// The finite unit group matches none of the admissible shapes.
    UnclassifiableGroup { order: usize, max_element_order: usize },
    /// No presentation generators satisfying the defining relations were found.
    NoPresentationGenerators,
    /// A claimed basis of minimal vectors failed its rank certificate.
    MinimalBasisRankDeficient { got: usize, need: usize },
    /// The three well-roundedness tests disagree.
    ConsistencyFailure {
        direct: bool,
        spans_basis: bool,
        predicted: bool,
    },
    /// Lattice dimensions differ where equality is required.
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquareMatrix { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            Error::BudgetExceeded { budget } => {
                write!(f, "enumeration node budget exceeded ({budget} nodes)")
            }
            Error::BadDelta => write!(f, "LLL delta must satisfy 1/4 < delta < 1"),
            Error::NotTotallyReal => write!(f, "polynomial is not totally real"),
            Error::ReduciblePolynomial => write!(f, "polynomial is reducible over Q"),
            Error::BadMinimalPolynomial(msg) => write!(f, "bad minimal polynomial: {msg}"),
            Error::IntegralBasisNotClosed => {
                write!(f, "integral basis is not multiplicatively closed over Z")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroElement => write!(f, "nonzero element required"),
            Error::FieldMismatch => write!(f, "elements belong to different fields"),
            Error::AlgebraMismatch => write!(f, "elements belong to different algebras"),
            Error::ZeroAlgebraConstant => write!(f, "algebra constants a, b must be nonzero"),
            Error::RankDeficient { got, need } => {
                write!(f, "generators span rank {got}, need {need}")
            }
            Error::NotTotallyPositive => write!(f, "element is not totally positive"),
            Error::NotTotallyDefinite => write!(f, "algebra is not totally definite"),
            Error::NotAnOrder => write!(f, "module is not an order"),
            Error::NotInvertible => write!(f, "element has reduced norm zero"),
            Error::NormOneViolation(msg) => write!(f, "norm-one violation: {msg}"),
            Error::ClosureFailure => write!(f, "norm-one set is not multiplicatively closed"),
            Error::UnclassifiableGroup {
                order,
                max_element_order,
            } => write!(
                f,
                "unit group of order {order} with max element order {max_element_order} matches no admissible class"
            ),
            Error::NoPresentationGenerators => {
                write!(f, "no presentation generators found")
            }
            Error::MinimalBasisRankDeficient { got, need } => {
                write!(f, "minimal basis spans rank {got}, need {need}")
            }
            Error::ConsistencyFailure {
                direct,
                spans_basis,
                predicted,
            } => write!(
                f,
                "well-roundedness tests disagree: direct={direct} spans_basis={spans_basis} predicted={predicted}"
            ),
            Error::DimensionMismatch { left, right } => {
                write!(f, "lattice dimensions differ: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
