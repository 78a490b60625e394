use serde::{Deserialize, Serialize};

use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Wire form `{"rows":n,"cols":m,"data":[[re,im],…]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            data: m.row_major().into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<CMatrix> {
        if j.data.len() != j.rows * j.cols {
            return Err(Error::Format(format!(
                "matrix data has {} entries, expected {}x{}={}",
                j.data.len(),
                j.rows,
                j.cols,
                j.rows * j.cols
            )));
        }
        let data: Vec<C64> = j.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        CMatrix::from_row_major(j.rows, j.cols, &data).map_err(|e| Error::Format(e.to_string()))
    }
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let j: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    CMatrix::try_from(j)
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix serializes")
}
