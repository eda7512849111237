//! Dataset manifest: one feature file plus its anchor files.
//!
//! ```json
//! {"version": "1", "duration": 600.0, "fps": 1.0, "dim": 768,
//!  "frame_count": 600, "features": "x.npy", "anchors": ["gt.jsonl"]}
//! ```
//!
//! Relative paths resolve against the manifest's directory.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::features::read_feature_file;
use crate::{Error, Result};

pub const MANIFEST_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: String,
    pub duration: f64,
    pub fps: f64,
    pub dim: usize,
    pub frame_count: usize,
    pub features: PathBuf,
    #[serde(default)]
    pub anchors: Vec<PathBuf>,
}

impl Manifest {
    /// Parses the manifest and checks the version only.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(Error::io(path))?;
        let mut m: Manifest = serde_json::from_reader(BufReader::new(file))?;
        if m.version != MANIFEST_VERSION {
            return Err(Error::Manifest(format!("unrecognized version {:?}", m.version)));
        }
        if !(m.duration >= 0.0 && m.duration.is_finite()) || !(m.fps > 0.0 && m.fps.is_finite()) {
            return Err(Error::Manifest("duration must be ≥ 0 and fps > 0".into()));
        }
        let base = path.parent().unwrap_or(Path::new(""));
        m.features = base.join(&m.features);
        m.anchors = m.anchors.iter().map(|a| base.join(a)).collect();
        Ok(m)
    }

    /// Loads the manifest and cross-checks it against its feature file.
    pub fn load_checked(path: impl AsRef<Path>) -> Result<Self> {
        let m = Self::load(path)?;
        let seq = read_feature_file(&m.features)?;
        if seq.len() != m.frame_count {
            return Err(Error::Manifest(format!(
                "frame_count {} does not match {} rows in {}",
                m.frame_count,
                seq.len(),
                m.features.display()
            )));
        }
        if seq.dim() != m.dim {
            return Err(Error::Manifest(format!(
                "dim {} does not match feature file dim {}",
                m.dim,
                seq.dim()
            )));
        }
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(Error::io(path))
    }
}
