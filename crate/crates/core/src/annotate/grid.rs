use serde::Serialize;

use crate::annotate::BoundingBox;
use crate::error::{Error, Result};
use crate::frame::MotionMask;

/// Motion counts over a `rows x cols` partition of a mask.
///
/// Cell `(i, j)` covers rows `[i*H/rows, (i+1)*H/rows)` and columns
/// `[j*W/cols, (j+1)*W/cols)` with floor division, so cells tile the image
/// exactly and differ in size by at most one pixel per axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMap {
    pub rows: usize,
    pub cols: usize,
    /// Motion pixels per cell, row-major.
    pub counts: Vec<usize>,
    /// `count / cell_area` per cell, row-major.
    pub levels: Vec<f64>,
    #[serde(skip)]
    width: usize,
    #[serde(skip)]
    height: usize,
}

fn edge(i: usize, extent: usize, parts: usize) -> usize {
    i * extent / parts
}

impl GridMap {
    /// Inclusive pixel bounds of cell `(row, col)`.
    pub fn cell_bounds(&self, row: usize, col: usize) -> BoundingBox {
        assert!(row < self.rows && col < self.cols, "cell ({row}, {col}) out of range");
        BoundingBox::new(
            edge(col, self.width, self.cols),
            edge(row, self.height, self.rows),
            edge(col + 1, self.width, self.cols) - 1,
            edge(row + 1, self.height, self.rows) - 1,
        )
    }

    pub fn cell_area(&self, row: usize, col: usize) -> usize {
        self.cell_bounds(row, col).area()
    }

    pub fn count(&self, row: usize, col: usize) -> usize {
        self.counts[row * self.cols + col]
    }

    pub fn level(&self, row: usize, col: usize) -> f64 {
        self.levels[row * self.cols + col]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Dimensions of the mask this grid was computed from.
    pub fn image_dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }
}

pub fn grid_motion(m: &MotionMask, rows: usize, cols: usize) -> Result<GridMap> {
    let (width, height) = m.dims();
    if rows == 0 || cols == 0 || rows > height || cols > width {
        return Err(Error::InvalidGrid {
            rows,
            cols,
            width,
            height,
        });
    }

    let col_of: Vec<usize> = {
        let mut v = Vec::with_capacity(width);
        let mut j = 0;
        for x in 0..width {
            while x >= edge(j + 1, width, cols) {
                j += 1;
            }
            v.push(j);
        }
        v
    };

    let mut counts = vec![0usize; rows * cols];
    let mut i = 0;
    for (y, row) in m.as_slice().chunks_exact(width).enumerate() {
        while y >= edge(i + 1, height, rows) {
            i += 1;
        }
        let cells = &mut counts[i * cols..(i + 1) * cols];
        for (x, &v) in row.iter().enumerate() {
            cells[col_of[x]] += v as usize;
        }
    }

    let mut grid = GridMap {
        rows,
        cols,
        counts,
        levels: Vec::new(),
        width,
        height,
    };
    grid.levels = (0..rows * cols)
        .map(|k| grid.counts[k] as f64 / grid.cell_area(k / cols, k % cols) as f64)
        .collect();
    Ok(grid)
}
