use std::fmt;

use thiserror::Error;

/// Which resource cap an operation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceKind {
    /// A multilinear table grew past `EvalBudget::max_table_entries`.
    TableEntries,
    /// Accumulated pair inspections passed `EvalBudget::max_total_work`.
    Work,
    /// Brute-force expansion would enumerate more monomials than allowed.
    ExpansionLimit,
    /// Exhaustive search tree larger than allowed.
    SearchLimit,
    /// Matrix dimension above what the inclusion-exclusion oracle accepts.
    Dimension,
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ResourceKind::TableEntries => "table entry limit",
            ResourceKind::Work => "work limit",
            ResourceKind::ExpansionLimit => "expansion limit",
            ResourceKind::SearchLimit => "search limit",
            ResourceKind::Dimension => "dimension limit",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} exceeded (limit {limit}){}", node.map(|n| format!(" at node {n}")).unwrap_or_default())]
pub struct ResourceError {
    pub kind: ResourceKind,
    pub limit: u128,
    /// Circuit node being evaluated when the cap was hit, if any.
    pub node: Option<usize>,
}

impl ResourceError {
    pub fn new(kind: ResourceKind, limit: u128) -> Self {
        ResourceError { kind, limit, node: None }
    }

    pub(crate) fn at_node(mut self, node: usize) -> Self {
        self.node = Some(node);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands or inputs have incompatible shapes (variable counts, polynomial class).
    #[error("shape error: {0}")]
    Shape(String),
    /// Input is structurally invalid.
    #[error("validation error: {0}")]
    Validation(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
