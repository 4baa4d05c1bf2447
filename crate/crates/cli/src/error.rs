use serde_json::json;
use thiserror::Error;
use unitcode::card::CardError;
use unitcode::distance::DistanceError;
use unitcode::duality::DualityError;
use unitcode::field::FieldError;
use unitcode::groupring::GroupRingError;
use unitcode::{DesignError, MatrixError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input(_) => "invalid-input",
            CliError::Verification(_) => "verification-failed",
            CliError::Guard(_) => "guard-exceeded",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Guard(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "code": self.code(), "message": self.to_string() }).to_string()
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::Matrix(m) => m.into(),
            DesignError::Catastrophic(_) | DesignError::Verification(_) | DesignError::NotUnit => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        match e {
            DistanceError::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            DistanceError::Matrix(m) => m.into(),
            DistanceError::Design(d) => d.into(),
            DistanceError::Catastrophic => CliError::Verification(e.to_string()),
        }
    }
}

impl From<DualityError> for CliError {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::Design(d) => d.into(),
            DualityError::NotOrthogonal => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GroupRingError> for CliError {
    fn from(e: GroupRingError) -> Self {
        match e {
            GroupRingError::Matrix(m) => m.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CardError> for CliError {
    fn from(e: CardError) -> Self {
        match e {
            CardError::Verification(_) => CliError::Verification(e.to_string()),
            CardError::Design(d) => d.into(),
            CardError::Io(io) => CliError::Io(io),
            _ => CliError::Input(e.to_string()),
        }
    }
}
