//! Pixel-level confusion counts and the precision/accuracy ratios built on them.
//!
//! Sequences are micro-averaged: per-frame confusions are summed first and the
//! ratios are taken over the totals. A ratio whose denominator is zero is
//! `None` rather than 0 or 1.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{same_dims, MotionMask};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Confusion {
    pub fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        Confusion { tp, fp, tn, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// `tp / (tp + fp)`
    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    /// `(tp + tn) / total`
    pub fn accuracy(&self) -> Option<f64> {
        ratio(self.tp + self.tn, self.total())
    }

    /// `tp / (tp + fn)`
    pub fn recall(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl Add for Confusion {
    type Output = Confusion;

    fn add(self, o: Confusion) -> Confusion {
        Confusion::new(self.tp + o.tp, self.fp + o.fp, self.tn + o.tn, self.fn_ + o.fn_)
    }
}

impl AddAssign for Confusion {
    fn add_assign(&mut self, o: Confusion) {
        *self = *self + o;
    }
}

impl Sum for Confusion {
    fn sum<I: Iterator<Item = Confusion>>(iter: I) -> Confusion {
        iter.fold(Confusion::default(), Add::add)
    }
}

pub fn confusion(pred: &MotionMask, truth: &MotionMask) -> Result<Confusion> {
    same_dims(pred.dims(), truth.dims())?;
    // Index by 2*pred + truth: tn, fn, fp, tp.
    let mut cells = [0u64; 4];
    for (&p, &t) in pred.as_slice().iter().zip(truth.as_slice()) {
        cells[(2 * p + t) as usize] += 1;
    }
    Ok(Confusion::new(cells[3], cells[2], cells[0], cells[1]))
}

pub fn precision(c: &Confusion) -> Option<f64> {
    c.precision()
}

pub fn accuracy(c: &Confusion) -> Option<f64> {
    c.accuracy()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EvalReport {
    pub frames: Vec<Confusion>,
    pub aggregate: Confusion,
    pub precision: Option<f64>,
    pub accuracy: Option<f64>,
    pub frames_evaluated: usize,
}

impl EvalReport {
    pub fn from_frames(frames: Vec<Confusion>) -> Self {
        let aggregate: Confusion = frames.iter().copied().sum();
        EvalReport {
            precision: aggregate.precision(),
            accuracy: aggregate.accuracy(),
            frames_evaluated: frames.len(),
            aggregate,
            frames,
        }
    }

    pub fn push(&mut self, c: Confusion) {
        self.frames.push(c);
        self.aggregate += c;
        self.frames_evaluated = self.frames.len();
        self.precision = self.aggregate.precision();
        self.accuracy = self.aggregate.accuracy();
    }
}

pub fn evaluate_sequence(pred: &[MotionMask], truth: &[MotionMask]) -> Result<EvalReport> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let frames = pred
        .iter()
        .zip(truth)
        .map(|(p, t)| confusion(p, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalReport::from_frames(frames))
}
