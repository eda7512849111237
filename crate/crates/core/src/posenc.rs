//! Extension of a pretrained positional-embedding table to a new length.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Row-major `rows × dim` matrix of finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    rows: usize,
    dim: usize,
    values: Vec<f32>,
}

impl EmbeddingTable {
    pub fn new(rows: usize, dim: usize, values: Vec<f32>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::TableTooShort { rows, required: 1 });
        }
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if values.len() != rows * dim {
            return Err(Error::DimensionMismatch { expected: rows * dim, found: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i / dim });
        }
        Ok(Self { rows, dim, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }
}

/// Cyclic replication: `out[i] = table[i mod L]`.
pub fn extend_periodic(table: &EmbeddingTable, new_len: usize) -> Result<EmbeddingTable> {
    if new_len == 0 {
        return Err(Error::InvalidConfig("new length must be ≥ 1"));
    }
    let mut values = Vec::with_capacity(new_len * table.dim);
    for i in 0..new_len {
        values.extend_from_slice(table.row(i % table.rows));
    }
    EmbeddingTable::new(new_len, table.dim, values)
}

/// Per-dimension linear resampling on an endpoint-aligned grid: output row
/// `i` sits at input position `i·(L - 1)/(L_new - 1)`.
pub fn extend_interpolate(table: &EmbeddingTable, new_len: usize) -> Result<EmbeddingTable> {
    if table.rows < 2 {
        return Err(Error::TableTooShort { rows: table.rows, required: 2 });
    }
    if new_len < 2 {
        return Err(Error::InvalidConfig("new length must be ≥ 2"));
    }
    let span = table.rows - 1;
    let steps = new_len - 1;
    let mut values = Vec::with_capacity(new_len * table.dim);
    for i in 0..new_len {
        // Exact rational position j + rem / steps.
        let num = i * span;
        let (j, rem) = (num / steps, num % steps);
        if rem == 0 {
            values.extend_from_slice(table.row(j));
            continue;
        }
        let w = rem as f64 / steps as f64;
        for (&a, &b) in table.row(j).iter().zip(table.row(j + 1)) {
            let (a, b) = (f64::from(a), f64::from(b));
            let v = (a + (b - a) * w).clamp(a.min(b), a.max(b));
            values.push(v as f32);
        }
    }
    EmbeddingTable::new(new_len, table.dim, values)
}
