use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Cone(#[from] dandelin::ConeError),
    #[error(transparent)]
    Conic(#[from] dandelin::ConicError),
    #[error(transparent)]
    Section(#[from] dandelin::SectionError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Write(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
