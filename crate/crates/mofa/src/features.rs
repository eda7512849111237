//! Feature files: npy arrays of shape `(N, D + 1)`, column 0 holding
//! timestamps in seconds and columns `1..=D` the feature vector.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use mofa_core::posenc::EmbeddingTable;
use mofa_core::{FeatureFrame, FeatureSequence};

use crate::npy::{read_array, write_array, Array2};
use crate::{Error, Result};

/// Decodes and validates a feature sequence; timestamps must strictly increase.
pub fn read_features<R: Read>(r: &mut R) -> Result<FeatureSequence> {
    let array = read_array(r)?;
    if array.cols < 2 {
        return Err(Error::TooFewColumns);
    }
    let frames = (0..array.rows)
        .map(|i| {
            let row = array.row(i);
            FeatureFrame::new(row[0], row[1..].to_vec())
        })
        .collect();
    Ok(FeatureSequence::new(array.cols - 1, frames)?)
}

pub fn to_array(seq: &FeatureSequence) -> Array2 {
    let cols = seq.dim() + 1;
    let mut data = Vec::with_capacity(seq.len() * cols);
    for f in seq.frames() {
        data.push(f.timestamp);
        data.extend_from_slice(&f.feature);
    }
    Array2 { rows: seq.len(), cols, data }
}

pub fn write_features<W: Write>(w: &mut W, seq: &FeatureSequence) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    write_array(w, &to_array(seq))
}

pub fn read_feature_file(path: impl AsRef<Path>) -> Result<FeatureSequence> {
    let path = path.as_ref();
    let file = File::open(path).map_err(Error::io(path))?;
    read_features(&mut BufReader::new(file))
}

pub fn write_feature_file(seq: &FeatureSequence, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut w = BufWriter::new(File::create(path).map_err(Error::io(path))?);
    write_features(&mut w, seq)?;
    w.flush().map_err(Error::io(path))
}

/// Positional-embedding tables are plain `(L, D_pe)` arrays.
pub fn read_table_file(path: impl AsRef<Path>) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(Error::io(path))?;
    let a = read_array(&mut BufReader::new(file))?;
    Ok(EmbeddingTable::new(a.rows, a.cols, a.data)?)
}

pub fn write_table_file(table: &EmbeddingTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = BufWriter::new(File::create(path).map_err(Error::io(path))?);
    let a = Array2 { rows: table.rows(), cols: table.dim(), data: table.values().to_vec() };
    write_array(&mut w, &a)?;
    w.flush().map_err(Error::io(path))
}
