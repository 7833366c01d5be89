use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::dim::Dim;
use crate::error::HaarError;
use crate::group::Group;
use crate::symfun::{seed_spherical_table, spherical_table, Alpha, SphericalTable};

use super::table::{build_table, cached_table, seed_table, WeingartenTable};

/// On-disk cache of Weingarten and spherical tables in their text formats.
///
/// Files are named `wg-<group>-<n>-<dim>.txt` and `sph-<n>-<alpha>.txt`.
/// A file that fails to parse is rebuilt and overwritten.
#[derive(Clone, Debug)]
pub struct TableStore {
    dir: PathBuf,
}

impl TableStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn weingarten_path(&self, group: Group, n: usize, dim: Dim) -> PathBuf {
        self.dir.join(format!("wg-{group}-{n}-{dim}.txt"))
    }

    fn spherical_path(&self, n: usize, alpha: Alpha) -> PathBuf {
        let a = match alpha {
            Alpha::Two => "2",
            Alpha::Half => "half",
        };
        self.dir.join(format!("sph-{n}-{a}.txt"))
    }

    /// Loads from memory, then disk, then builds and writes the file.
    pub fn weingarten(&self, group: Group, n: usize, dim: Dim) -> Result<Arc<WeingartenTable>, HaarError> {
        if let Some(t) = cached_table(group, n, dim) {
            return Ok(t);
        }
        let path = self.weingarten_path(group, n, dim);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(t) = WeingartenTable::from_text(&text) {
                if t.group() == group && t.n() == n && t.dim() == dim {
                    return Ok(seed_table(t));
                }
            }
        }
        if group != Group::Unitary {
            let alpha = if group == Group::Orthogonal {
                Alpha::Two
            } else {
                Alpha::Half
            };
            self.spherical(n, alpha)?;
        }
        let t = build_table(group, n, dim)?;
        self.write(&path, &t.to_text())?;
        Ok(t)
    }

    pub fn spherical(&self, n: usize, alpha: Alpha) -> Result<Arc<SphericalTable>, HaarError> {
        let path = self.spherical_path(n, alpha);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(t) = SphericalTable::from_text(&text) {
                if t.n() == n && t.alpha() == alpha {
                    return Ok(seed_spherical_table(t));
                }
            }
        }
        let t = spherical_table(n, alpha);
        self.write(&path, &t.to_text())?;
        Ok(t)
    }

    fn write(&self, path: &Path, text: &str) -> Result<(), HaarError> {
        let io_err = |e: io::Error| HaarError::Io(format!("{}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(io_err)?;
        // write then rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }
}
