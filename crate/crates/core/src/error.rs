use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partial order: {0} and {1} lie on a cycle")]
    NotAPartialOrder(String, String),

    #[error("not a complete lattice: {0}")]
    NotComplete(String),

    #[error("not distributive: {a} ∧ ({b} ∨ {c}) = {lhs} but ({a} ∧ {b}) ∨ ({a} ∧ {c}) = {rhs}")]
    NotDistributive {
        a: String,
        b: String,
        c: String,
        lhs: String,
        rhs: String,
    },

    #[error("element `{0}` not found")]
    ElementNotFound(String),

    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),

    #[error("bad builder spec: {0}")]
    BadBuilderSpec(String),

    #[error("not reflexive: e({0},{0}) = {1}")]
    NotReflexive(String, String),

    #[error("not transitive: e({x},{y}) ∧ e({y},{z}) = {lhs} ≰ e({x},{z}) = {rhs}")]
    NotTransitive {
        x: String,
        y: String,
        z: String,
        lhs: String,
        rhs: String,
    },

    #[error("not antisymmetric: e({0},{1}) = e({1},{0}) = ⊤")]
    NotAntisymmetric(String, String),

    #[error("frame mismatch: `{0}` vs `{1}`")]
    FrameMismatch(String, String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("enumeration budget exceeded: {required} candidates required, budget is {budget}")]
    EnumerationBudgetExceeded { required: u64, budget: u64 },

    #[error("search budget exceeded: more than {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },

    #[error("not an L-topology: {0}")]
    NotATopology(String),

    #[error("space is not T0: {0} and {1} are not separated")]
    NotT0(String, String),

    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuousMap(String),

    #[error("not an L-dcpo: ideal {0} has no supremum")]
    NotAnLdcpo(String),

    #[error("not continuous: {0}")]
    NotContinuous(String),

    #[error("target space is not L-sober")]
    TargetNotSober,

    #[error("target is not a continuous L-dcpo: {0}")]
    TargetNotContinuousLdcpo(String),

    #[error("map is not Scott continuous: {0}")]
    NotScottContinuous(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Budget errors are resource limits rather than mathematical verdicts.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBudgetExceeded { .. } | Error::SearchBudgetExceeded { .. }
        )
    }
}
