use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("node `{node}` (var {var}) has son `{son}` with var {son_var}; son variables must be strictly larger")]
    Ordering {
        node: String,
        var: usize,
        son: String,
        son_var: usize,
    },

    #[error("reference to undeclared node `{0}`")]
    UndeclaredNode(String),

    #[error("node `{0}` declared twice")]
    DuplicateNode(String),

    #[error("variable {var} out of range [1, {nvars}]")]
    VarOutOfRange { var: usize, nvars: usize },

    #[error("missing root directive")]
    MissingRoot,

    #[error("missing nvars directive")]
    MissingNvars,

    #[error("bitstring has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("k = {k} out of range [0, {n}]")]
    WeightOutOfRange { k: usize, n: usize },

    #[error("BDDs range over different variable counts ({0} vs {1})")]
    NvarsMismatch(usize, usize),

    #[error("n = {n} exceeds the brute-force limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("invalid row: {0}")]
    InvalidRow(String),

    #[error("DIMACS: {0}")]
    Dimacs(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
