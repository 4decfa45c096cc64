use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::frame::{Frame, MotionMask};
use crate::io::pnm;

const IMAGE_EXTENSIONS: [&str; 3] = ["pgm", "ppm", "pnm"];

fn is_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.iter().any(|x| e.eq_ignore_ascii_case(x)))
}

/// Regular image files in `dir`, sorted lexicographically by name.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && is_image(&path) {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Reads one frame file: `P5` directly or `P6` via luminance.
pub fn read_frame(path: &Path) -> Result<Frame> {
    pnm::read_gray(&read_bytes(path)?).map_err(|e| e.in_file(path))
}

pub fn read_mask(path: &Path) -> Result<MotionMask> {
    pnm::read_mask_pgm(&read_bytes(path)?).map_err(|e| e.in_file(path))
}

/// Every mask in `dir` (0/255 PGM), in lexicographic order.
pub fn read_mask_dir(dir: &Path) -> Result<Vec<MotionMask>> {
    list_images(dir)?.iter().map(|p| read_mask(p)).collect()
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// File name without its extension, used to name derived outputs.
pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// An ordered list of frame files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSource {
    paths: Vec<PathBuf>,
}

impl SequenceSource {
    pub fn from_paths(paths: Vec<PathBuf>) -> Self {
        SequenceSource { paths }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        Ok(SequenceSource {
            paths: list_images(dir)?,
        })
    }

    /// One path per line; blank lines are skipped and relative paths are
    /// resolved against the manifest's directory.
    pub fn from_manifest(manifest: &Path) -> Result<Self> {
        let text = fs::read_to_string(manifest).map_err(|e| Error::io(manifest, e))?;
        let base = manifest.parent().unwrap_or(Path::new(""));
        let paths = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| base.join(l))
            .collect();
        Ok(SequenceSource { paths })
    }

    /// A directory is listed, anything else is read as a manifest.
    pub fn open(path: &Path) -> Result<Self> {
        if path.is_dir() {
            Self::from_dir(path)
        } else {
            Self::from_manifest(path)
        }
    }

    pub fn paths(&self) -> &[PathBuf] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Reads frames lazily, requiring every frame to match the first one's size.
    pub fn frames(&self) -> Frames<'_> {
        Frames {
            paths: self.paths.iter(),
            dims: None,
        }
    }
}

pub struct Frames<'a> {
    paths: std::slice::Iter<'a, PathBuf>,
    dims: Option<(usize, usize)>,
}

impl Iterator for Frames<'_> {
    type Item = Result<(PathBuf, Frame)>;

    fn next(&mut self) -> Option<Self::Item> {
        let path = self.paths.next()?;
        let frame = match read_frame(path) {
            Ok(f) => f,
            Err(e) => return Some(Err(e)),
        };
        match self.dims {
            None => self.dims = Some(frame.dims()),
            Some(dims) if dims != frame.dims() => {
                let err = Error::SizeMismatch {
                    left: dims,
                    right: frame.dims(),
                };
                return Some(Err(err.in_file(path)));
            }
            Some(_) => {}
        }
        Some(Ok((path.clone(), frame)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.paths.size_hint()
    }
}
