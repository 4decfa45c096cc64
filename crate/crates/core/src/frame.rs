//! Image value types and the per-pixel primitives every detector is built on.
//!
//! All rasters are row-major with the top row first, one byte per pixel.
//! A [`Frame`] holds intensities, a [`DiffFrame`] holds absolute
//! differences between two frames, and a [`MotionMask`] holds the 0/1
//! result of thresholding a difference.

use crate::error::{Error, Result};

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage { width, height });
    }
    let expected = width
        .checked_mul(height)
        .ok_or(Error::EmptyImage { width, height })?;
    if expected != len {
        return Err(Error::BufferLength {
            width,
            height,
            expected,
            actual: len,
        });
    }
    Ok(())
}

pub(crate) fn same_dims(left: (usize, usize), right: (usize, usize)) -> Result<()> {
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    Ok(())
}

macro_rules! raster_accessors {
    ($ty:ty) => {
        impl $ty {
            pub fn width(&self) -> usize {
                self.width
            }

            pub fn height(&self) -> usize {
                self.height
            }

            /// `(width, height)`
            pub fn dims(&self) -> (usize, usize) {
                (self.width, self.height)
            }

            pub fn len(&self) -> usize {
                self.data.len()
            }

            /// Always false: every raster has at least one pixel.
            pub fn is_empty(&self) -> bool {
                self.data.is_empty()
            }

            pub fn as_slice(&self) -> &[u8] {
                &self.data
            }

            pub fn into_vec(self) -> Vec<u8> {
                self.data
            }

            /// Pixel at column `x`, row `y`. Panics when out of bounds.
            pub fn get(&self, x: usize, y: usize) -> u8 {
                assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
                self.data[y * self.width + x]
            }
        }
    };
}

/// Single-channel 8-bit intensity image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

raster_accessors!(Frame);

impl Frame {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(Frame {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        check_dims(width, height, width.saturating_mul(height))?;
        Ok(Frame {
            width,
            height,
            data: vec![value; width * height],
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        check_dims(width, height, width.saturating_mul(height))?;
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Ok(Frame {
            width,
            height,
            data,
        })
    }
}

/// Per-pixel absolute difference between two frames.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffFrame {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

raster_accessors!(DiffFrame);

impl DiffFrame {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(DiffFrame {
            width,
            height,
            data,
        })
    }
}

/// Binary motion image: 1 marks a motion pixel, 0 background.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotionMask {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

raster_accessors!(MotionMask);

impl MotionMask {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(Error::NonBinaryMask { index, value });
        }
        Ok(MotionMask {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![0; width.saturating_mul(height)])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_dims(width, height, width.saturating_mul(height))?;
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y) as u8)
            .collect();
        Ok(MotionMask {
            width,
            height,
            data,
        })
    }

    /// Builds a mask from data already known to be 0/1.
    pub(crate) fn from_binary_unchecked(width: usize, height: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        debug_assert!(data.iter().all(|&v| v <= 1));
        MotionMask {
            width,
            height,
            data,
        }
    }

    pub fn is_set(&self, x: usize, y: usize) -> bool {
        self.get(x, y) == 1
    }

    /// Number of motion pixels.
    pub fn count(&self) -> usize {
        self.data.iter().map(|&v| v as usize).sum()
    }

    /// True when `self` has no motion pixel outside `other`.
    pub fn is_subset_of(&self, other: &MotionMask) -> bool {
        self.dims() == other.dims() && self.data.iter().zip(&other.data).all(|(&a, &b)| a <= b)
    }
}

/// Minimum difference that must be strictly exceeded to count as motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(u8);

impl Threshold {
    pub const fn new(value: u8) -> Self {
        Threshold(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold(25)
    }
}

impl From<u8> for Threshold {
    fn from(value: u8) -> Self {
        Threshold(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Color {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Color {
    pub const RED: Color = Color::new(255, 0, 0);
    pub const GREEN: Color = Color::new(0, 255, 0);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Color { r, g, b }
    }

    pub const fn to_array(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

/// Neighbour relation used by component labelling and border extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Connectivity {
    /// Edge-adjacent neighbours only.
    Four,
    /// Edge and diagonal neighbours.
    #[default]
    Eight,
}

impl Connectivity {
    pub(crate) fn offsets(self) -> &'static [(isize, isize)] {
        const FOUR: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];
        const EIGHT: [(isize, isize); 8] = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }

    pub fn neighbours(self) -> usize {
        self.offsets().len()
    }
}

/// `|a - b|` per pixel.
pub fn absdiff(a: &Frame, b: &Frame) -> Result<DiffFrame> {
    same_dims(a.dims(), b.dims())?;
    let data = a.data.iter().zip(&b.data).map(|(&p, &q)| p.abs_diff(q)).collect();
    Ok(DiffFrame {
        width: a.width,
        height: a.height,
        data,
    })
}

/// 1 where the difference strictly exceeds `t`, 0 elsewhere.
pub fn threshold(d: &DiffFrame, t: Threshold) -> MotionMask {
    let t = t.value();
    let data = d.data.iter().map(|&v| (v > t) as u8).collect();
    MotionMask::from_binary_unchecked(d.width, d.height, data)
}

/// `threshold(absdiff(a, b), t)` in a single pass.
pub fn difference_mask(a: &Frame, b: &Frame, t: Threshold) -> Result<MotionMask> {
    same_dims(a.dims(), b.dims())?;
    let t = t.value();
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&p, &q)| (p.abs_diff(q) > t) as u8)
        .collect();
    Ok(MotionMask::from_binary_unchecked(a.width, a.height, data))
}

pub fn motion_pixel_count(m: &MotionMask) -> usize {
    m.count()
}

/// Integer luma: `(299 r + 587 g + 114 b + 500) / 1000`.
pub fn luminance(r: u8, g: u8, b: u8) -> u8 {
    let sum = 299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500;
    (sum / 1000) as u8
}
