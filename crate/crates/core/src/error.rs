use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("paths do not share endpoints: start {start_ok}, end {end_ok}")]
    EndpointMismatch { start_ok: bool, end_ok: bool },

    #[error("holonomy displacement ({a}, {b}) is not integral")]
    NonIntegerDisplacement { a: String, b: String },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("loop ({0}, {1}) is null")]
    NullLoop(i64, i64),

    #[error("intersection point does not lie on {0}")]
    NotOnLoop(&'static str),

    #[error("determinant {det} outside tolerance {tol} of 1")]
    NotUnimodular { det: f64, tol: f64 },

    #[error("conjugator is ill-conditioned (condition number {cond:e} exceeds {cap:e})")]
    IllConditioned { cond: f64, cap: f64 },

    #[error("matrices do not commute (commutator norm {norm:e}, tolerance {tol:e})")]
    NonCommuting { norm: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
