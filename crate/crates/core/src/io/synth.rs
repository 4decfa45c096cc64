//! Synthetic moving-square scenes with exact ground truth.
//!
//! Frame `t` places a `size x size` square of constant intensity with its
//! top-left corner at `(x0 + vx*t, y0 + vy*t)`, each coordinate clamped so
//! the square stays fully inside the image. The ground-truth mask is 1
//! exactly on the square.
//!
//! Salt-and-pepper noise is then applied to the frame (never to the mask).
//! The generator is SplitMix64 with its state initialised to `seed`, one
//! stream shared by every frame. For each pixel in raster order, frame by
//! frame, one value `r` is drawn; the pixel flips when
//! `(r >> 11) * 2^-53 < salt_pepper_prob`, and a flipped pixel draws one
//! more value whose top bit picks 255 (set) or 0 (clear).

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, MotionMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSpec {
    pub size: usize,
    pub intensity: u8,
    pub x0: i64,
    pub y0: i64,
    pub vx: i64,
    pub vy: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub salt_pepper_prob: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub frame_count: usize,
    pub background_level: u8,
    pub square: SquareSpec,
    pub noise: NoiseSpec,
}

impl Default for SceneSpec {
    fn default() -> Self {
        SceneSpec {
            width: 128,
            height: 128,
            frame_count: 100,
            background_level: 64,
            square: SquareSpec {
                size: 16,
                intensity: 200,
                x0: 8,
                y0: 56,
                vx: 1,
                vy: 0,
            },
            noise: NoiseSpec {
                salt_pepper_prob: 0.005,
                seed: 20_240_517,
            },
        }
    }
}

fn clamp_axis(start: i64, velocity: i64, t: usize, max: usize) -> usize {
    let pos = start.saturating_add(velocity.saturating_mul(t as i64));
    pos.clamp(0, max as i64) as usize
}

impl SceneSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidScene(msg));
        if self.width == 0 || self.height == 0 {
            return fail(format!("image must be at least 1x1, got {}x{}", self.width, self.height));
        }
        if self.frame_count == 0 {
            return fail("frame_count must be at least 1".into());
        }
        if self.square.size == 0 {
            return fail("square size must be at least 1".into());
        }
        if self.square.size > self.width || self.square.size > self.height {
            return fail(format!(
                "square of size {} does not fit a {}x{} image",
                self.square.size, self.width, self.height
            ));
        }
        let p = self.noise.salt_pepper_prob;
        if !(0.0..=1.0).contains(&p) {
            return fail(format!("salt_pepper_prob must lie in [0, 1], got {p}"));
        }
        Ok(())
    }

    /// Clamped top-left corner of the square in frame `t`.
    pub fn square_origin(&self, t: usize) -> (usize, usize) {
        let s = &self.square;
        (
            clamp_axis(s.x0, s.vx, t, self.width.saturating_sub(s.size)),
            clamp_axis(s.y0, s.vy, t, self.height.saturating_sub(s.size)),
        )
    }

    /// Noise-free, object-free frame.
    pub fn background_frame(&self) -> Result<Frame> {
        Frame::filled(self.width, self.height, self.background_level)
    }

    pub fn truth_mask(&self, t: usize) -> Result<MotionMask> {
        let (sx, sy) = self.square_origin(t);
        let size = self.square.size;
        MotionMask::from_fn(self.width, self.height, |x, y| {
            (sx..sx + size).contains(&x) && (sy..sy + size).contains(&y)
        })
    }

    pub fn frames(&self) -> Result<SceneFrames> {
        self.validate()?;
        Ok(SceneFrames {
            spec: *self,
            rng: SplitMix64::seed_from_u64(self.noise.seed),
            t: 0,
        })
    }
}

/// Lazily generated `(frame, truth)` pairs.
pub struct SceneFrames {
    spec: SceneSpec,
    rng: SplitMix64,
    t: usize,
}

const UNIT: f64 = 1.0 / (1u64 << 53) as f64;

impl Iterator for SceneFrames {
    type Item = (Frame, MotionMask);

    fn next(&mut self) -> Option<Self::Item> {
        let spec = &self.spec;
        if self.t >= spec.frame_count {
            return None;
        }
        let truth = spec.truth_mask(self.t).ok()?;
        let p = spec.noise.salt_pepper_prob;
        let data = truth
            .as_slice()
            .iter()
            .map(|&inside| {
                let clean = if inside == 1 { spec.square.intensity } else { spec.background_level };
                let r = self.rng.next_u64();
                if ((r >> 11) as f64 * UNIT) < p {
                    if self.rng.next_u64() >> 63 == 1 {
                        255
                    } else {
                        0
                    }
                } else {
                    clean
                }
            })
            .collect();
        let frame = Frame::new(spec.width, spec.height, data).ok()?;
        self.t += 1;
        Some((frame, truth))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.spec.frame_count - self.t;
        (left, Some(left))
    }
}

pub fn generate_scene(spec: &SceneSpec) -> Result<Vec<(Frame, MotionMask)>> {
    Ok(spec.frames()?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(width: usize, height: usize, size: usize, start: (i64, i64), v: (i64, i64)) -> SceneSpec {
        SceneSpec {
            width,
            height,
            frame_count: 6,
            background_level: 10,
            square: SquareSpec {
                size,
                intensity: 240,
                x0: start.0,
                y0: start.1,
                vx: v.0,
                vy: v.1,
            },
            noise: NoiseSpec {
                salt_pepper_prob: 0.0,
                seed: 1,
            },
        }
    }

    #[test]
    fn square_position_example() {
        let spec = quiet(8, 8, 2, (1, 1), (1, 0));
        let scene = generate_scene(&spec).unwrap();
        let (frame, truth) = &scene[3];
        assert_eq!(spec.square_origin(3), (4, 1));
        assert_eq!(truth.count(), 4);
        for y in 0..8 {
            for x in 0..8 {
                let inside = (4..=5).contains(&x) && (1..=2).contains(&y);
                assert_eq!(truth.is_set(x, y), inside);
                assert_eq!(frame.get(x, y), if inside { 240 } else { 10 });
            }
        }
    }

    #[test]
    fn motion_is_clamped_inside_the_image() {
        let spec = quiet(6, 5, 3, (-4, 2), (2, 5));
        for t in 0..6 {
            let (x, y) = spec.square_origin(t);
            assert!(x + 3 <= 6 && y + 3 <= 5);
            assert_eq!(spec.truth_mask(t).unwrap().count(), 9);
        }
        assert_eq!(spec.square_origin(0), (0, 2));
        assert_eq!(spec.square_origin(5), (3, 2));
    }

    #[test]
    fn static_noise_free_scene_repeats() {
        let scene = generate_scene(&quiet(5, 5, 2, (1, 1), (0, 0))).unwrap();
        assert!(scene.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn seeded_noise_is_deterministic() {
        let mut spec = SceneSpec { frame_count: 3, ..SceneSpec::default() };
        let a = generate_scene(&spec).unwrap();
        let b = generate_scene(&spec).unwrap();
        assert_eq!(a, b);
        spec.noise.seed += 1;
        assert_ne!(a, generate_scene(&spec).unwrap());
    }

    #[test]
    fn noise_only_uses_extremes_and_spares_truth() {
        let mut spec = quiet(16, 16, 4, (2, 2), (1, 1));
        spec.noise.salt_pepper_prob = 0.3;
        for (t, (frame, truth)) in spec.frames().unwrap().enumerate() {
            assert_eq!(truth, spec.truth_mask(t).unwrap());
            assert!(frame.as_slice().iter().all(|v| [0, 10, 240, 255].contains(v)));
        }
        spec.noise.salt_pepper_prob = 1.0;
        let (frame, _) = spec.frames().unwrap().next().unwrap();
        assert!(frame.as_slice().iter().all(|&v| v == 0 || v == 255));
    }

    #[test]
    fn first_draws_match_splitmix_reference() {
        // Published SplitMix64 output for state 1234567.
        let mut rng = SplitMix64::seed_from_u64(1_234_567);
        assert_eq!(rng.next_u64(), 6_457_827_717_110_365_317);
        assert_eq!(rng.next_u64(), 3_203_168_211_198_807_973);
    }

    #[test]
    fn invalid_specs() {
        let base = quiet(4, 4, 2, (0, 0), (0, 0));
        let too_big = SceneSpec { square: SquareSpec { size: 5, ..base.square }, ..base };
        let no_frames = SceneSpec { frame_count: 0, ..base };
        let bad_p = SceneSpec { noise: NoiseSpec { salt_pepper_prob: 1.5, seed: 0 }, ..base };
        for spec in [too_big, no_frames, bad_p] {
            assert!(matches!(generate_scene(&spec), Err(Error::InvalidScene(_))));
        }
    }
}
