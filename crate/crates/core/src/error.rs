use thiserror::Error;

use crate::density::DensityError;
use crate::field::{FieldError, QuadInt};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("{op} applies only to Q(sqrt {expected}), not Q(sqrt {got})")]
    WrongField { op: &'static str, expected: i64, got: i64 },
    #[error("{0} is not locally represented, so the divisor formula does not apply")]
    NotLocallyRepresented(QuadInt),
    #[error("unsupported class: {0}")]
    Unsupported(String),
    #[error("the sum of four squares is universal over Q(sqrt 5); there is no witness")]
    Universal,
    #[error("eigenform table: {0}")]
    Eigenform(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(FieldError::NotTotallyPositive(_)) => "not_totally_positive",
            Error::Field(FieldError::Parse(_)) => "parse",
            Error::Field(_) => "field",
            Error::Density(DensityError::BudgetExceeded { .. }) => "budget_exceeded",
            Error::Density(DensityError::Field(FieldError::NotTotallyPositive(_))) => "not_totally_positive",
            Error::Density(_) => "density",
            Error::WrongField { .. } => "wrong_field",
            Error::NotLocallyRepresented(_) => "not_locally_represented",
            Error::Unsupported(_) => "unsupported_class",
            Error::Universal => "universal",
            Error::Eigenform(_) => "eigenform",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }

    /// Domain errors are caused by the input; others are internal or I/O failures.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
