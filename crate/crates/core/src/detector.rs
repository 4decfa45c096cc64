//! Stateful detection pipelines: background subtraction against a stored
//! reference frame, and differencing of two consecutive frames.
//!
//! Both produce a raw [`MotionMask`] per frame. [`denoise`] then removes
//! connected components smaller than a configured area, and [`Detector`]
//! bundles detect, background update and denoise into one per-frame step.

use crate::annotate::label_components;
use crate::error::{Error, Result};
use crate::frame::{difference_mask, same_dims, Connectivity, Frame, MotionMask, Threshold};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    pub threshold: Threshold,
    /// Background learning rate in `[0, 1]`; 0 keeps the reference static.
    pub update_alpha: f64,
    /// Components smaller than this are dropped by [`denoise`].
    pub min_blob_size: usize,
    pub connectivity: Connectivity,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            threshold: Threshold::default(),
            update_alpha: 0.0,
            min_blob_size: 8,
            connectivity: Connectivity::Eight,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.update_alpha) {
            return Err(Error::InvalidAlpha(self.update_alpha));
        }
        Ok(())
    }
}

/// Per-pixel mean of `frames`, rounded half up.
pub fn init_background<'a, I>(frames: I) -> Result<Frame>
where
    I: IntoIterator<Item = &'a Frame>,
{
    let mut iter = frames.into_iter();
    let first = iter.next().ok_or(Error::EmptySequence)?;
    let mut sums: Vec<u64> = first.as_slice().iter().map(|&v| v as u64).collect();
    let mut n = 1u64;
    for f in iter {
        same_dims(first.dims(), f.dims())?;
        for (s, &v) in sums.iter_mut().zip(f.as_slice()) {
            *s += v as u64;
        }
        n += 1;
    }
    // round(s / n) = floor((2s + n) / 2n)
    let data = sums.iter().map(|&s| ((2 * s + n) / (2 * n)) as u8).collect();
    Frame::new(first.width(), first.height(), data)
}

/// Stored reference frame plus the detection parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct BackgroundModel {
    reference: Frame,
    config: DetectorConfig,
}

impl BackgroundModel {
    pub fn new(reference: Frame, config: DetectorConfig) -> Result<Self> {
        config.validate()?;
        Ok(BackgroundModel { reference, config })
    }

    /// Reference = rounded per-pixel mean of `frames`.
    pub fn from_frames<'a, I>(frames: I, config: DetectorConfig) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Frame>,
    {
        Self::new(init_background(frames)?, config)
    }

    pub fn reference(&self) -> &Frame {
        &self.reference
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    /// `threshold(absdiff(current, reference), T)`. Does not touch the reference.
    pub fn detect(&self, current: &Frame) -> Result<MotionMask> {
        difference_mask(current, &self.reference, self.config.threshold)
    }

    /// `B' = round((1 - a) B + a F)` per pixel, rounded half up.
    pub fn update(&mut self, current: &Frame) -> Result<()> {
        same_dims(self.reference.dims(), current.dims())?;
        let alpha = self.config.update_alpha;
        if alpha == 0.0 {
            return Ok(());
        }
        let blended = self
            .reference
            .as_slice()
            .iter()
            .zip(current.as_slice())
            .map(|(&b, &f)| ((1.0 - alpha) * b as f64 + alpha * f as f64 + 0.5).floor().clamp(0.0, 255.0) as u8)
            .collect();
        self.reference = Frame::new(current.width(), current.height(), blended)?;
        Ok(())
    }
}

/// Two-frame differencing state: the previous frame of the stream, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameDiffState {
    previous: Option<Frame>,
    config: DetectorConfig,
}

impl FrameDiffState {
    pub fn new(config: DetectorConfig) -> Result<Self> {
        config.validate()?;
        Ok(FrameDiffState {
            previous: None,
            config,
        })
    }

    pub fn previous(&self) -> Option<&Frame> {
        self.previous.as_ref()
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    /// Thresholded difference against the previous frame; the first frame of
    /// a stream yields an all-zero mask. On success `current` becomes the
    /// previous frame. On error the state is left unchanged.
    pub fn detect(&mut self, current: &Frame) -> Result<MotionMask> {
        let mask = match &self.previous {
            None => MotionMask::zeros(current.width(), current.height())?,
            Some(prev) => difference_mask(current, prev, self.config.threshold)?,
        };
        self.previous = Some(current.clone());
        Ok(mask)
    }
}

/// Keeps only components (under `connectivity`) with area `>= min_blob_size`.
pub fn denoise(m: &MotionMask, min_blob_size: usize, connectivity: Connectivity) -> MotionMask {
    if min_blob_size <= 1 {
        return m.clone();
    }
    let components = label_components(m, connectivity);
    let keep: Vec<bool> = std::iter::once(false)
        .chain(components.blobs().iter().map(|b| b.area >= min_blob_size))
        .collect();
    let data = components.labels().iter().map(|&l| keep[l as usize] as u8).collect();
    MotionMask::from_binary_unchecked(m.width(), m.height(), data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BackgroundSubtraction,
    FrameDifference,
}

/// One stream's detector: detect, update the background, then denoise.
#[derive(Debug, Clone, PartialEq)]
pub enum Detector {
    Background(BackgroundModel),
    FrameDiff(FrameDiffState),
}

impl Detector {
    pub fn background(reference: Frame, config: DetectorConfig) -> Result<Self> {
        Ok(Detector::Background(BackgroundModel::new(reference, config)?))
    }

    pub fn frame_difference(config: DetectorConfig) -> Result<Self> {
        Ok(Detector::FrameDiff(FrameDiffState::new(config)?))
    }

    pub fn method(&self) -> Method {
        match self {
            Detector::Background(_) => Method::BackgroundSubtraction,
            Detector::FrameDiff(_) => Method::FrameDifference,
        }
    }

    pub fn config(&self) -> &DetectorConfig {
        match self {
            Detector::Background(m) => m.config(),
            Detector::FrameDiff(s) => s.config(),
        }
    }

    /// The raw (not yet denoised) mask for `current`, advancing the state.
    pub fn detect_raw(&mut self, current: &Frame) -> Result<MotionMask> {
        match self {
            Detector::Background(model) => {
                let mask = model.detect(current)?;
                model.update(current)?;
                Ok(mask)
            }
            Detector::FrameDiff(state) => state.detect(current),
        }
    }

    pub fn process(&mut self, current: &Frame) -> Result<MotionMask> {
        let raw = self.detect_raw(current)?;
        let cfg = self.config();
        Ok(denoise(&raw, cfg.min_blob_size, cfg.connectivity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn px(values: &[u8]) -> Frame {
        Frame::new(values.len(), 1, values.to_vec()).unwrap()
    }

    fn cfg(t: u8) -> DetectorConfig {
        DetectorConfig {
            threshold: Threshold::new(t),
            ..DetectorConfig::default()
        }
    }

    #[test]
    fn init_background_examples() {
        let f = Frame::from_fn(3, 2, |x, y| (x * 40 + y) as u8).unwrap();
        assert_eq!(init_background([&f]).unwrap(), f);
        assert_eq!(init_background([&px(&[100]), &px(&[200])]).unwrap(), px(&[150]));
        assert_eq!(init_background([&px(&[0]), &px(&[0]), &px(&[1])]).unwrap(), px(&[0]));
        // 0.5 rounds up
        assert_eq!(init_background([&px(&[0]), &px(&[1])]).unwrap(), px(&[1]));
    }

    #[test]
    fn init_background_errors() {
        assert!(matches!(init_background(std::iter::empty()), Err(Error::EmptySequence)));
        assert!(matches!(
            init_background([&px(&[0, 0]), &px(&[0])]),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn background_subtraction_examples() {
        let reference = Frame::new(2, 2, vec![10; 4]).unwrap();
        let current = Frame::new(2, 2, vec![10, 50, 10, 10]).unwrap();
        let model = BackgroundModel::new(reference.clone(), cfg(20)).unwrap();
        assert_eq!(model.detect(&current).unwrap().as_slice(), &[0, 1, 0, 0]);
        assert_eq!(model.detect(&reference).unwrap().count(), 0);
        assert_eq!(model.reference(), &reference);

        let strict = BackgroundModel::new(reference, cfg(40)).unwrap();
        assert_eq!(strict.detect(&current).unwrap().count(), 0);

        assert!(matches!(strict.detect(&px(&[1, 2, 3])), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn frame_difference_examples() {
        let mut state = FrameDiffState::new(cfg(50)).unwrap();
        assert_eq!(state.detect(&Frame::new(2, 2, vec![0; 4]).unwrap()).unwrap().count(), 0);
        let mask = state.detect(&Frame::new(2, 2, vec![0, 0, 0, 90]).unwrap()).unwrap();
        assert_eq!(mask.as_slice(), &[0, 0, 0, 1]);

        let err = state.detect(&px(&[0, 0, 0, 0]));
        assert!(matches!(err, Err(Error::SizeMismatch { .. })));
        assert_eq!(state.previous().unwrap().dims(), (2, 2));
    }

    #[test]
    fn static_stream_never_moves() {
        let f = Frame::from_fn(4, 4, |x, y| (x * 17 + y * 3) as u8).unwrap();
        let mut state = FrameDiffState::new(cfg(0)).unwrap();
        for _ in 0..5 {
            assert_eq!(state.detect(&f).unwrap().count(), 0);
        }
    }

    #[test]
    fn update_examples() {
        let mut still = BackgroundModel::new(px(&[100]), DetectorConfig { update_alpha: 0.0, ..cfg(25) }).unwrap();
        still.update(&px(&[7])).unwrap();
        assert_eq!(still.reference(), &px(&[100]));

        let mut full = BackgroundModel::new(px(&[100, 3]), DetectorConfig { update_alpha: 1.0, ..cfg(25) }).unwrap();
        full.update(&px(&[200, 250])).unwrap();
        assert_eq!(full.reference(), &px(&[200, 250]));

        let mut half = BackgroundModel::new(px(&[100]), DetectorConfig { update_alpha: 0.5, ..cfg(25) }).unwrap();
        half.update(&px(&[200])).unwrap();
        assert_eq!(half.reference(), &px(&[150]));

        // 0.5 * 100 + 0.5 * 101 = 100.5 rounds up
        let mut up = BackgroundModel::new(px(&[100]), DetectorConfig { update_alpha: 0.5, ..cfg(25) }).unwrap();
        up.update(&px(&[101])).unwrap();
        assert_eq!(up.reference(), &px(&[101]));

        assert!(half.update(&px(&[1, 2])).is_err());
    }

    #[test]
    fn alpha_out_of_range_is_rejected() {
        for alpha in [-0.1, 1.5, f64::NAN] {
            let c = DetectorConfig { update_alpha: alpha, ..DetectorConfig::default() };
            assert!(matches!(BackgroundModel::new(px(&[0]), c), Err(Error::InvalidAlpha(_))));
            assert!(matches!(FrameDiffState::new(c), Err(Error::InvalidAlpha(_))));
        }
    }

    #[test]
    fn denoise_examples() {
        let square_and_dot = MotionMask::from_fn(5, 5, |x, y| (x < 2 && y < 2) || (x, y) == (4, 4)).unwrap();
        assert_eq!(denoise(&square_and_dot, 0, Connectivity::Four), square_and_dot);
        let cleaned = denoise(&square_and_dot, 2, Connectivity::Four);
        assert_eq!(cleaned, MotionMask::from_fn(5, 5, |x, y| x < 2 && y < 2).unwrap());

        let full = MotionMask::new(4, 3, vec![1; 12]).unwrap();
        assert_eq!(denoise(&full, 12, Connectivity::Four), full);
        assert_eq!(denoise(&full, 13, Connectivity::Four).count(), 0);
    }

    fn mask_strategy() -> impl Strategy<Value = MotionMask> {
        (1usize..=16, 1usize..=16).prop_flat_map(|(w, h)| {
            proptest::collection::vec(prop::bool::weighted(0.4), w * h)
                .prop_map(move |bits| MotionMask::new(w, h, bits.into_iter().map(u8::from).collect()).unwrap())
        })
    }

    fn connectivity() -> impl Strategy<Value = Connectivity> {
        prop_oneof![Just(Connectivity::Four), Just(Connectivity::Eight)]
    }

    fn stream(max_len: usize) -> impl Strategy<Value = Vec<Frame>> {
        (1usize..=8, 1usize..=8, 1..=max_len).prop_flat_map(|(w, h, n)| {
            proptest::collection::vec(proptest::collection::vec(any::<u8>(), w * h), n)
                .prop_map(move |fs| fs.into_iter().map(|d| Frame::new(w, h, d).unwrap()).collect())
        })
    }

    proptest! {
        #[test]
        fn denoise_shrinks_and_is_idempotent(m in mask_strategy(), k in 0usize..12, c in connectivity()) {
            let once = denoise(&m, k, c);
            prop_assert!(once.is_subset_of(&m));
            prop_assert!(once.count() <= m.count());
            prop_assert_eq!(denoise(&once, k, c), once);
        }

        #[test]
        fn frame_difference_replays_from_any_midpoint(frames in stream(10), t in any::<u8>(), start in 1usize..10) {
            let mut full = FrameDiffState::new(cfg(t)).unwrap();
            let masks: Vec<_> = frames.iter().map(|f| full.detect(f).unwrap()).collect();
            if start < frames.len() {
                let mut replay = FrameDiffState::new(cfg(t)).unwrap();
                replay.detect(&frames[start - 1]).unwrap();
                for i in start..frames.len() {
                    prop_assert_eq!(&replay.detect(&frames[i]).unwrap(), &masks[i]);
                }
            }
        }

        #[test]
        fn static_reference_is_stateless(frames in stream(10), t in any::<u8>()) {
            let reference = frames[0].clone();
            let mut model = BackgroundModel::new(reference.clone(), cfg(t)).unwrap();
            let fresh = BackgroundModel::new(reference, cfg(t)).unwrap();
            for f in &frames {
                model.update(f).unwrap();
                prop_assert_eq!(model.detect(f).unwrap(), fresh.detect(f).unwrap());
            }
        }

        #[test]
        fn full_update_equals_frame_difference(frames in stream(10), t in any::<u8>()) {
            let c = DetectorConfig { update_alpha: 1.0, ..cfg(t) };
            let mut model = BackgroundModel::new(frames[0].clone(), c).unwrap();
            for pair in frames.windows(2) {
                model.update(&pair[0]).unwrap();
                let via_background = model.detect(&pair[1]).unwrap();
                let direct = difference_mask(&pair[1], &pair[0], Threshold::new(t)).unwrap();
                prop_assert_eq!(via_background, direct);
            }
        }
    }
}
