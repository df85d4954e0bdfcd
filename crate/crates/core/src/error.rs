use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two words (or a word and an enumeration) over different alphabets.
    AlphabetMismatch { left: usize, right: usize },
    /// A letter outside `1..=alphabet`.
    LetterOutOfRange { letter: usize, alphabet: usize },
    /// Alphabet sizes start at 1.
    EmptyAlphabet,
    /// The empty word has no predecessor.
    NoPredecessor,
    /// A construction that needs a nonempty word was given the empty one.
    EmptyWord,
    /// A Schur-type parameter with modulus not below one.
    NotContractive { k: usize, j: usize, modulus: f64 },
    /// Diagonal scales must be strictly positive.
    NonPositiveDiagonal { index: usize, value: f64 },
    /// A pivot (or leading minor) was not positive.
    NotPositive { index: usize, value: f64 },
    /// Inversion produced a parameter of modulus close to or above one.
    PositivityViolation { k: usize, j: usize, modulus: f64 },
    /// The affine coefficient in the inverse map vanished.
    NearDegenerate { k: usize, j: usize, denominator: f64 },
    DimensionMismatch { expected: usize, found: usize },
    Singular { index: usize },
    IndexOutOfRange { index: usize, bound: usize },
    /// Index tuple does not satisfy the required ordering.
    IndexOrder,
    /// The parameter horizon does not reach far enough.
    HorizonTooShort { needed: usize, available: usize },
    /// Finite-horizon Szego margin is not positive.
    NotSzegoClass { margin: f64 },
    /// Kernel entries violate the Hankel property.
    NotHankel { k: usize, j: usize },
    /// Kernel entries violate hermitian symmetry.
    NotHermitian { k: usize, j: usize },
    /// A scalar parameter lies outside its domain.
    Domain(&'static str),
    /// Kolmogorov construction assumes a unit diagonal.
    DiagonalNotUnit { index: usize },
    /// A checked identity exceeded its tolerance.
    Residual { what: &'static str, residual: f64, tol: f64 },
    /// Polynomial degree exceeds the available moments.
    DegreeOverflow { degree: usize, available: usize },
    /// Operator tuple is not a strict row contraction.
    NotInBall { margin: f64 },
    /// Operator tuple is not in the Siegel upper half-space.
    NotInHalfSpace { margin: f64 },
    /// A block `B_n` with a (near) zero diagonal entry.
    NotInvertible { level: usize, index: usize },
    /// A polynomial family without a usable leading coefficient.
    ZeroLeadingCoefficient { n: usize, l: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: {left} vs {right}")
            }
            LetterOutOfRange { letter, alphabet } => {
                write!(f, "letter {letter} outside 1..={alphabet}")
            }
            EmptyAlphabet => write!(f, "alphabet size must be at least 1"),
            NoPredecessor => write!(f, "the empty word has no predecessor"),
            EmptyWord => write!(f, "a nonempty word is required"),
            NotContractive { k, j, modulus } => {
                write!(f, "parameter ({k},{j}) has modulus {modulus} >= 1")
            }
            NonPositiveDiagonal { index, value } => {
                write!(f, "diagonal entry {index} = {value} is not positive")
            }
            NotPositive { index, value } => {
                write!(f, "not positive definite: pivot {index} = {value}")
            }
            PositivityViolation { k, j, modulus } => write!(
                f,
                "positivity violation: recovered parameter ({k},{j}) has modulus {modulus}"
            ),
            NearDegenerate { k, j, denominator } => write!(
                f,
                "near-degenerate kernel at ({k},{j}): coefficient {denominator}"
            ),
            DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Singular { index } => write!(f, "singular matrix (pivot {index})"),
            IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            IndexOrder => write!(f, "index ordering violated"),
            HorizonTooShort { needed, available } => {
                write!(f, "horizon {available} too short, need {needed}")
            }
            NotSzegoClass { margin } => write!(f, "not in the Szego class (margin {margin})"),
            NotHankel { k, j } => write!(f, "kernel is not Hankel at ({k},{j})"),
            NotHermitian { k, j } => write!(f, "kernel is not hermitian at ({k},{j})"),
            Domain(msg) => write!(f, "parameter out of domain: {msg}"),
            DiagonalNotUnit { index } => write!(f, "kernel diagonal at {index} is not 1"),
            Residual { what, residual, tol } => {
                write!(f, "{what}: residual {residual:e} exceeds {tol:e}")
            }
            DegreeOverflow { degree, available } => {
                write!(f, "degree {degree} exceeds available moments ({available})")
            }
            NotInBall { margin } => write!(f, "not a strict row contraction (margin {margin:e})"),
            NotInHalfSpace { margin } => {
                write!(f, "not in the Siegel upper half-space (margin {margin:e})")
            }
            NotInvertible { level, index } => {
                write!(f, "B_{level} has a vanishing diagonal entry at {index}")
            }
            ZeroLeadingCoefficient { n, l } => {
                write!(f, "polynomial ({n},{l}) has a zero leading coefficient")
            }
        }
    }
}

impl core::error::Error for Error {}
