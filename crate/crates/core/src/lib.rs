//! Motion detection on 8-bit grayscale frame sequences.
//!
//! Two detectors are provided. Background subtraction compares each frame
//! with a stored reference frame; frame differencing compares each frame
//! with the one before it. Either way the absolute per-pixel difference is
//! thresholded (strictly greater than `T` means motion) into a binary
//! [`MotionMask`], and small connected components are dropped as noise.
//!
//! Masks can then be visualised by highlighting the motion area or its
//! border, summarised per grid cell, or split into blobs with bounding
//! boxes. [`metrics`] scores masks against ground truth, and [`io`] reads
//! and writes binary PGM/PPM sequences and generates synthetic scenes with
//! exact ground truth.
//!
//! ```
//! use motiondet::{Detector, DetectorConfig, Frame};
//!
//! let background = Frame::filled(8, 8, 40)?;
//! let mut detector = Detector::background(background, DetectorConfig::default())?;
//!
//! // A bright 3x3 patch on an otherwise unchanged scene.
//! let current = Frame::from_fn(8, 8, |x, y| if x < 3 && y < 3 { 200 } else { 40 })?;
//! let mask = detector.process(&current)?;
//! assert_eq!(mask.count(), 9);
//! # Ok::<(), motiondet::Error>(())
//! ```

pub mod annotate;
pub mod detector;
mod error;
pub mod frame;
pub mod io;
pub mod metrics;

pub use annotate::{Blob, BoundingBox, GridMap, RgbFrame};
pub use detector::{denoise, BackgroundModel, Detector, DetectorConfig, FrameDiffState, Method};
pub use error::{Error, Result};
pub use frame::{
    absdiff, difference_mask, luminance, motion_pixel_count, threshold, Color, Connectivity, DiffFrame, Frame,
    MotionMask, Threshold,
};
pub use metrics::{Confusion, EvalReport};

// The guide's chapters are compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/differencing.md")]
    mod differencing {}
    #[doc = include_str!("../../../book/src/detectors.md")]
    mod detectors {}
    #[doc = include_str!("../../../book/src/annotation.md")]
    mod annotation {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
