//! Matroid file I/O and command-line matroid specs.
//!
//! A matroid file is a single JSON document in one of three layouts:
//! `{"kind":"linear","p":2,"rows":3,"cols":7,"columns":[[0,0,1],...]}`,
//! `{"kind":"bases","m":4,"rank":2,"bases":[[0,1],...]}` or
//! `{"kind":"fixture","name":"fano"}`. On the command line a spec is
//! either a catalogue name or a path to such a file.

use std::path::Path;

use matroid_adjoint::field::{MatrixF, PrimeModulus};
use matroid_adjoint::{fixtures, Error, Matroid, Result, SubsetMask};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidFile {
    Linear { p: u16, rows: usize, cols: usize, columns: Vec<Vec<u8>> },
    Bases { m: usize, rank: usize, bases: Vec<Vec<usize>> },
    Fixture { name: String },
}

impl MatroidFile {
    pub fn parse(text: &str) -> Result<MatroidFile> {
        serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("matroid file: {e}")))
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            MatroidFile::Linear { p, rows, cols, columns } => {
                if columns.len() != *cols {
                    return Err(Error::Invalid(format!(
                        "field cols is {cols} but {} columns are listed",
                        columns.len()
                    )));
                }
                let modulus = PrimeModulus::new(*p)?;
                let matrix = MatrixF::from_columns(modulus, *rows, columns)?;
                Matroid::from_matrix(matrix)
            }
            MatroidFile::Bases { m, rank, bases } => {
                let masks: Vec<SubsetMask> = bases
                    .iter()
                    .map(|b| {
                        if let Some(&bad) = b.iter().find(|&&e| e >= *m) {
                            return Err(Error::Invalid(format!(
                                "basis element {bad} outside ground set of {m}"
                            )));
                        }
                        Ok(SubsetMask::from_indices(b))
                    })
                    .collect::<Result<_>>()?;
                let matroid = Matroid::from_bases(*m, masks)?;
                if matroid.rank() != *rank {
                    return Err(Error::Invalid(format!(
                        "declared rank {rank} but the bases have rank {}",
                        matroid.rank()
                    )));
                }
                Ok(matroid)
            }
            MatroidFile::Fixture { name } => fixtures::parse_fixture(name),
        }
    }

    pub fn from_matroid(m: &Matroid) -> MatroidFile {
        match m.matrix() {
            Some(a) => MatroidFile::Linear {
                p: a.modulus().get(),
                rows: a.rows(),
                cols: a.cols(),
                columns: (0..a.cols()).map(|c| a.column(c).to_vec()).collect(),
            },
            None => MatroidFile::Bases {
                m: m.size(),
                rank: m.rank(),
                bases: m.bases().iter().map(|b| b.indices()).collect(),
            },
        }
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string(self).expect("matroid files serialize cleanly")
    }
}

/// Resolves a command-line matroid spec: catalogue names first, then a
/// path to a matroid file.
pub fn resolve_spec(spec: &str) -> Result<Matroid> {
    match fixtures::parse_fixture(spec) {
        Ok(m) => Ok(m),
        Err(fixture_err) => {
            if Path::new(spec).exists() {
                let text = std::fs::read_to_string(spec)
                    .map_err(|e| Error::Invalid(format!("reading {spec}: {e}")))?;
                MatroidFile::parse(&text)?.to_matroid()
            } else {
                Err(fixture_err)
            }
        }
    }
}
