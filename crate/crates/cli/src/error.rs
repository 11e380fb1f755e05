use homdend_core::structures::ValidationReport;
use homdend_core::{CohomologyError, DeformationError, OperadError, StructureError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::violations_json;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("{message}")]
    Validation {
        message: String,
        report: Option<ValidationReport>,
    },
    #[error("{0}")]
    Usage(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn parse(context: impl Into<String>, message: impl ToString) -> CliError {
        CliError::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }

    pub fn invalid(message: impl Into<String>, report: ValidationReport) -> CliError {
        CliError::Validation {
            message: message.into(),
            report: Some(report),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::Usage(_) => "usage",
            CliError::Internal(_) => "internal",
            CliError::Io(_) => "io",
        }
    }

    /// Machine-readable form printed on standard error.
    pub fn to_json(&self) -> Value {
        let mut err = json!({
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        match self {
            CliError::Parse { context, .. } => err["context"] = json!(context),
            CliError::Validation {
                report: Some(r), ..
            } => err["violations"] = violations_json(r),
            _ => {}
        }
        json!({ "schema": crate::format::SCHEMA, "error": err })
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> CliError {
        match e {
            StructureError::InvalidInput(r) => CliError::invalid("structure is invalid", r),
            StructureError::NotRotaBaxter(r) => CliError::invalid("not a Rota-Baxter operator", r),
            StructureError::NotOOperator(r) => CliError::invalid("not an O-operator", r),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OperadError> for CliError {
    fn from(e: OperadError) -> CliError {
        match e {
            OperadError::InvalidInput(r) => CliError::invalid("structure is invalid", r),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> CliError {
        match e {
            CohomologyError::InternalInconsistency(m) => CliError::Internal(m),
            CohomologyError::InvalidInput(r) => CliError::invalid("structure is invalid", r),
            CohomologyError::Operad(o) => o.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<DeformationError> for CliError {
    fn from(e: DeformationError) -> CliError {
        match e {
            DeformationError::AssertionFailure(m) => CliError::Internal(m),
            DeformationError::Cohomology(c) => c.into(),
            DeformationError::Operad(o) => o.into(),
            e @ (DeformationError::NotCocycle
            | DeformationError::InvalidInput(_)
            | DeformationError::DeformationInvalid(_)
            | DeformationError::NonCommutingComponent(_)
            | DeformationError::NotUnipotent) => CliError::Validation {
                message: e.to_string(),
                report: None,
            },
            other => CliError::Usage(other.to_string()),
        }
    }
}
