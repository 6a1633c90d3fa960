use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix of shape {rows}x{cols} needs {} entries, got {len}", rows * cols)]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("modulus must be at least 1")]
    Modulus,
    #[error("vector length {found} does not match ambient dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("sub generator {column} is not in the ambient span")]
    NotInSpan { column: usize },
    #[error("invariant factors {0:?} do not form a divisibility chain of integers >= 2")]
    NotADivisorChain(Vec<u64>),
    #[error("cannot parse invariant factor {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("generator {index} is not a permutation of 0..{degree}")]
    BadPermutation { index: usize, degree: usize },
    #[error("generators act on different degrees ({0} and {1})")]
    MixedDegrees(usize, usize),
    #[error("generated group exceeds the order limit {limit}")]
    TooLarge { limit: usize },
    #[error("table row {row} has {len} entries, expected {order}")]
    RaggedTable {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table row {row} is not a permutation of 0..{order}")]
    RowNotPermutation { row: usize, order: usize },
    #[error("table column {col} is not a permutation of 0..{order}")]
    ColumnNotPermutation { col: usize, order: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("expected {order} element names, got {len}")]
    Names { order: usize, len: usize },
    #[error("element index {index} out of range for group of order {order}")]
    ElementIndex { index: usize, order: usize },
    #[error("unknown builtin group {0:?}")]
    UnknownBuiltin(String),
    #[error("group file: {0}")]
    Input(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("action of element {element} is {rows}x{cols}, expected {rank}x{rank}")]
    ActionShape {
        element: usize,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("action given for {found} elements, group has order {order}")]
    ActionCount { found: usize, order: usize },
    #[error("identity element does not act as the identity matrix")]
    IdentityAction,
    #[error("action is not a homomorphism: action({a}*{b}) != action({a})*action({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("given actions do not generate an action of the whole group")]
    IncompleteAction,
    #[error("twist is not a homomorphism into units: twist({a}*{b}) != twist({a})*twist({b}) mod {modulus}")]
    TwistNotMultiplicative { a: usize, b: usize, modulus: u64 },
    #[error("twist value {value} at element {element} is not a unit mod {modulus}")]
    TwistNotUnit {
        element: usize,
        value: u64,
        modulus: u64,
    },
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
    #[error("module map is not equivariant at element {element}")]
    NotEquivariant { element: usize },
    #[error("module map shapes or moduli do not match")]
    MapShape,
    #[error("module spec {0:?} not understood")]
    Spec(String),
    #[error("module file: {0}")]
    Input(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("module is defined over a different group than the one supplied")]
    GroupMismatch,
    #[error("subgroup does not belong to the group")]
    ForeignSubgroup,
    #[error("excluded label {0:?} is not a known place")]
    UnknownLabel(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("{ell} does not divide {p} - 1, the power residue criterion is undefined")]
    ResidueUndefined { ell: u64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n must be at least 1")]
    ZeroExponent,
    #[error("search left the 64-bit range")]
    Overflow,
    #[error("no prime q below the search bound {bound}")]
    SearchExhausted { bound: u64 },
    #[error("invalid Kummer pair ({a}, {b}): {reason}")]
    KummerPair {
        a: i64,
        b: i64,
        reason: &'static str,
    },
    #[error("Galois group of order {order} exceeds the order limit {limit}")]
    GroupTooLarge { order: u64, limit: usize },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
