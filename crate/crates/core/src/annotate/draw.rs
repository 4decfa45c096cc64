use crate::annotate::{Blob, BoundingBox, GridMap};
use crate::error::{Error, Result};
use crate::frame::{same_dims, Color, Connectivity, Frame, MotionMask};

/// Three-channel 8-bit image, row-major `r, g, b` triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RgbFrame {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbFrame {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        let expected = width * height * 3;
        if data.len() != expected {
            return Err(Error::BufferLength {
                width,
                height,
                expected,
                actual: data.len(),
            });
        }
        Ok(RgbFrame {
            width,
            height,
            data,
        })
    }

    /// Grayscale replicated into all three channels.
    pub fn from_gray(base: &Frame) -> Self {
        let data = base.as_slice().iter().flat_map(|&v| [v, v, v]).collect();
        RgbFrame {
            width: base.width(),
            height: base.height(),
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Color) {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        let i = 3 * (y * self.width + x);
        self.data[i..i + 3].copy_from_slice(&c.to_array());
    }

    /// Number of pixels exactly equal to `c`.
    pub fn count_color(&self, c: Color) -> usize {
        let c = c.to_array();
        self.data.chunks_exact(3).filter(|px| **px == c).count()
    }

    /// Sets every mask pixel to `c`.
    pub fn paint_mask(&mut self, m: &MotionMask, c: Color) -> Result<()> {
        same_dims(self.dims(), m.dims())?;
        let c = c.to_array();
        for (px, &v) in self.data.chunks_exact_mut(3).zip(m.as_slice()) {
            if v == 1 {
                px.copy_from_slice(&c);
            }
        }
        Ok(())
    }

    /// Draws the one-pixel outline of `bbox`.
    pub fn draw_box(&mut self, bbox: BoundingBox, c: Color) -> Result<()> {
        if bbox.x_min > bbox.x_max
            || bbox.y_min > bbox.y_max
            || bbox.x_max >= self.width
            || bbox.y_max >= self.height
        {
            return Err(Error::BoxOutOfBounds {
                bbox,
                width: self.width,
                height: self.height,
            });
        }
        for x in bbox.x_min..=bbox.x_max {
            self.set(x, bbox.y_min, c);
            self.set(x, bbox.y_max, c);
        }
        for y in bbox.y_min..=bbox.y_max {
            self.set(bbox.x_min, y, c);
            self.set(bbox.x_max, y, c);
        }
        Ok(())
    }

    /// Outlines every grid cell that contains motion.
    pub fn draw_active_cells(&mut self, grid: &GridMap, c: Color) -> Result<()> {
        same_dims(self.dims(), grid.image_dims())?;
        for row in 0..grid.rows {
            for col in 0..grid.cols {
                if grid.count(row, col) > 0 {
                    self.draw_box(grid.cell_bounds(row, col), c)?;
                }
            }
        }
        Ok(())
    }
}

pub fn highlight_motion_area(base: &Frame, m: &MotionMask, c: Color) -> Result<RgbFrame> {
    same_dims(base.dims(), m.dims())?;
    let mut out = RgbFrame::from_gray(base);
    out.paint_mask(m, c)?;
    Ok(out)
}

/// Motion pixels with at least one background neighbour. Positions outside
/// the image count as background.
pub fn extract_border(m: &MotionMask, connectivity: Connectivity) -> MotionMask {
    let (width, height) = m.dims();
    let src = m.as_slice();
    let offsets = connectivity.offsets();
    let mut data = vec![0u8; src.len()];
    for y in 0..height {
        for x in 0..width {
            if src[y * width + x] == 0 {
                continue;
            }
            let touches_background = offsets.iter().any(|&(dx, dy)| {
                match (x.checked_add_signed(dx), y.checked_add_signed(dy)) {
                    (Some(nx), Some(ny)) if nx < width && ny < height => src[ny * width + nx] == 0,
                    _ => true,
                }
            });
            data[y * width + x] = touches_background as u8;
        }
    }
    MotionMask::from_binary_unchecked(width, height, data)
}

pub fn highlight_motion_border(
    base: &Frame,
    m: &MotionMask,
    c: Color,
    connectivity: Connectivity,
) -> Result<RgbFrame> {
    highlight_motion_area(base, &extract_border(m, connectivity), c)
}

/// Outlines each blob's bounding box over the grayscale base. Later blobs
/// overwrite earlier ones.
pub fn draw_blob_boxes(base: &Frame, blobs: &[Blob], c: Color) -> Result<RgbFrame> {
    let mut out = RgbFrame::from_gray(base);
    for blob in blobs {
        out.draw_box(blob.bbox, c)?;
    }
    Ok(out)
}
