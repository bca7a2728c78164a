use alloc::boxed::Box;
use core::fmt;

/// Everything that can go wrong inside the core crate.
///
/// Row and column indices carried by the variants are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A row does not have the ambient dimension of its polyhedron.
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    /// A linearity index points past the last row.
    LinearityIndex { index: usize, rows: usize },
    /// A V-representation row whose leading entry is neither 0 nor 1.
    GeneratorLead { row: usize },
    /// An operation that needs an H-representation got a V-representation.
    NotInequalities,
    /// A row index is out of range.
    RowIndex { index: usize, rows: usize },
    /// A column index is out of range.
    ColumnIndex { index: usize, dim: usize },
    /// A row that must be an inequality is declared as an equation.
    RowIsEquation { row: usize },
    /// The polyhedron still carries equations that should have been
    /// substituted out first.
    HasEquations,
    /// A constraint system that the caller guaranteed to be non-empty is
    /// infeasible.
    Infeasible,
    /// The point passed as interior point does not strictly satisfy `row`.
    NotInterior { row: usize },
    /// The ray or segment never leaves the polyhedron.
    NoExit,
    /// The inequality system has no interior point, so a method that needs
    /// one cannot run.
    NotFullDimensional,
    /// Projection keep/eliminate sets do not partition the columns.
    BadProjection,
    /// An oracle input exceeds the brute-force size limits.
    GuardRail {
        what: &'static str,
        limit: usize,
        found: usize,
    },
    /// Vertex enumeration needs a pointed polyhedron (no lineality space).
    NotPointed,
    /// A parallel task failed; `key` is the row index it was working on.
    Task { key: usize, source: Box<Error> },
    /// An internal consistency check failed.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RowLength {
                row,
                expected,
                found,
            } => write!(
                f,
                "row {} has {} coefficients, expected {}",
                row + 1,
                found,
                expected
            ),
            Error::LinearityIndex { index, rows } => write!(
                f,
                "linearity index {} out of range for {} rows",
                index + 1,
                rows
            ),
            Error::GeneratorLead { row } => {
                write!(
                    f,
                    "row {}: leading entry of a V-row must be 0 or 1",
                    row + 1
                )
            }
            Error::NotInequalities => f.write_str("expected an H-representation"),
            Error::RowIndex { index, rows } => {
                write!(f, "row index {} out of range for {} rows", index + 1, rows)
            }
            Error::ColumnIndex { index, dim } => {
                write!(f, "column {} out of range for dimension {}", index + 1, dim)
            }
            Error::RowIsEquation { row } => write!(f, "row {} is an equation", row + 1),
            Error::HasEquations => f.write_str("equations must be substituted out first"),
            Error::Infeasible => f.write_str("constraint system is infeasible"),
            Error::NotInterior { row } => {
                write!(f, "point is not strictly inside row {}", row + 1)
            }
            Error::NoExit => f.write_str("ray does not leave the polyhedron"),
            Error::NotFullDimensional => f.write_str("system has no interior point"),
            Error::BadProjection => {
                f.write_str("keep and eliminate columns must partition the columns")
            }
            Error::GuardRail { what, limit, found } => {
                write!(f, "oracle limit exceeded: {what} is {found}, limit {limit}")
            }
            Error::NotPointed => f.write_str("polyhedron has a lineality space"),
            Error::Task { key, source } => write!(f, "task for row {} failed: {}", key + 1, source),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}
