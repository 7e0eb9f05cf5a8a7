use std::fmt;

use crate::algebra::AlgebraSpec;

/// A single spectral component: a real line or a complex plane (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Line(usize, &'static str),
    Plane(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Line(_, label) => write!(f, "line {label}"),
            Component::Plane(k) => write!(f, "plane {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("algebra mismatch: {0} vs {1}")]
    Mismatch(AlgebraSpec, AlgebraSpec),
    #[error("nodal value: {0} vanishes")]
    Nodal(Component),
    #[error("domain error: {component} {reason}")]
    Domain {
        component: Component,
        reason: &'static str,
    },
    #[error("undefined form: {0}")]
    Undefined(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("geometry error: {0}")]
    Geometry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
