//! Connected-component labelling of motion masks.

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::frame::{Connectivity, MotionMask};

/// Inclusive pixel bounds. Serialises as `[x_min, y_min, x_max, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundingBox {
    pub x_min: usize,
    pub y_min: usize,
    pub x_max: usize,
    pub y_max: usize,
}

impl BoundingBox {
    pub fn new(x_min: usize, y_min: usize, x_max: usize, y_max: usize) -> Self {
        BoundingBox {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    fn point(x: usize, y: usize) -> Self {
        BoundingBox::new(x, y, x, y)
    }

    fn include(&mut self, x: usize, y: usize) {
        self.x_min = self.x_min.min(x);
        self.y_min = self.y_min.min(y);
        self.x_max = self.x_max.max(x);
        self.y_max = self.y_max.max(y);
    }

    pub fn width(&self) -> usize {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> usize {
        self.y_max - self.y_min + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }

    pub fn to_array(self) -> [usize; 4] {
        [self.x_min, self.y_min, self.x_max, self.y_max]
    }
}

impl Serialize for BoundingBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(4)?;
        for v in self.to_array() {
            tup.serialize_element(&v)?;
        }
        tup.end()
    }
}

/// One connected component of a motion mask.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Blob {
    pub label: u32,
    pub area: usize,
    pub bbox: BoundingBox,
}

/// Per-pixel component ids (0 = background) plus a summary of each component.
///
/// Components are numbered from 1 in the raster order of their first pixel;
/// `blobs[i].label == i + 1`.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    blobs: Vec<Blob>,
}

impl ComponentLabels {
    pub fn label_at(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn blobs(&self) -> &[Blob] {
        &self.blobs
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }
}

/// Labels every connected component of `m` with a depth-first flood fill.
pub fn label_components(m: &MotionMask, connectivity: Connectivity) -> ComponentLabels {
    let (width, height) = m.dims();
    let data = m.as_slice();
    let mut labels = vec![0u32; data.len()];
    let mut blobs = Vec::new();
    let mut stack = Vec::new();
    let offsets = connectivity.offsets();

    for start in 0..data.len() {
        if data[start] == 0 || labels[start] != 0 {
            continue;
        }
        let label = blobs.len() as u32 + 1;
        let mut area = 0;
        let mut bbox = BoundingBox::point(start % width, start / width);
        labels[start] = label;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (x, y) = (idx % width, idx / width);
            area += 1;
            bbox.include(x, y);
            for &(dx, dy) in offsets {
                let (Some(nx), Some(ny)) = (x.checked_add_signed(dx), y.checked_add_signed(dy)) else {
                    continue;
                };
                if nx >= width || ny >= height {
                    continue;
                }
                let n = ny * width + nx;
                if data[n] == 1 && labels[n] == 0 {
                    labels[n] = label;
                    stack.push(n);
                }
            }
        }
        blobs.push(Blob { label, area, bbox });
    }

    ComponentLabels {
        width,
        height,
        labels,
        blobs,
    }
}

/// Components with area at least `max(min_size, 1)`, relabelled 1..=k in
/// raster order of their first pixel.
pub fn extract_blobs(m: &MotionMask, connectivity: Connectivity, min_size: usize) -> Vec<Blob> {
    label_components(m, connectivity)
        .blobs
        .into_iter()
        .filter(|b| b.area >= min_size.max(1))
        .enumerate()
        .map(|(i, b)| Blob {
            label: i as u32 + 1,
            ..b
        })
        .collect()
}
