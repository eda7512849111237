//! JSON-lines anchor files: one `{"t": <seconds>, "caption": "<text>"}` per line.
//! Blank lines are skipped.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use mofa_core::eval::{Anchor, AnchorSet};

use crate::{Error, Result};

pub fn read_anchor_lines(path: impl AsRef<Path>) -> Result<Vec<Anchor>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(Error::io(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(Error::io(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let anchor = serde_json::from_str(&line).map_err(|source| Error::AnchorLine {
            path: path.to_owned(),
            line: i + 1,
            source,
        })?;
        out.push(anchor);
    }
    Ok(out)
}

pub fn read_anchor_file(path: impl AsRef<Path>, duration: f64) -> Result<AnchorSet> {
    Ok(AnchorSet::new(read_anchor_lines(path)?, duration)?)
}

pub fn write_anchor_file(anchors: &AnchorSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = BufWriter::new(File::create(path).map_err(Error::io(path))?);
    for a in anchors.items() {
        serde_json::to_writer(&mut w, a)?;
        w.write_all(b"\n").map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}
