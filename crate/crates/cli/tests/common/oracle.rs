//! Naive reference implementations used to check the pipeline.
//!
//! Nothing here touches the `motiondet` crate. Every routine is a plain
//! double loop over `Vec<u8>` rasters so it can serve as an independent
//! second route for the equivalence and benchmark checks.

#![allow(dead_code, clippy::needless_range_loop)]

/// Plain SplitMix64, written out from its published constants.
pub struct NaiveSplitMix(pub u64);

impl NaiveSplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

pub struct NaiveScene {
    pub width: usize,
    pub height: usize,
    pub frames: usize,
    pub background: u8,
    pub size: usize,
    pub intensity: u8,
    pub start: (i64, i64),
    pub velocity: (i64, i64),
    pub noise: f64,
    pub seed: u64,
}

impl NaiveScene {
    /// Returns `(frame, truth)` pairs; truth pixels are 0/1.
    pub fn generate(&self) -> Vec<(Vec<u8>, Vec<u8>)> {
        let mut rng = NaiveSplitMix(self.seed);
        let mut out = Vec::new();
        for t in 0..self.frames as i64 {
            let max_x = (self.width - self.size) as i64;
            let max_y = (self.height - self.size) as i64;
            let sx = (self.start.0 + self.velocity.0 * t).max(0).min(max_x) as usize;
            let sy = (self.start.1 + self.velocity.1 * t).max(0).min(max_y) as usize;
            let mut frame = vec![0u8; self.width * self.height];
            let mut truth = vec![0u8; self.width * self.height];
            for y in 0..self.height {
                for x in 0..self.width {
                    let inside = x >= sx && x < sx + self.size && y >= sy && y < sy + self.size;
                    let mut v = if inside { self.intensity } else { self.background };
                    let r = rng.next();
                    let u = (r >> 11) as f64 / 9_007_199_254_740_992.0;
                    if u < self.noise {
                        v = if rng.next() >> 63 == 1 { 255 } else { 0 };
                    }
                    frame[y * self.width + x] = v;
                    truth[y * self.width + x] = inside as u8;
                }
            }
            out.push((frame, truth));
        }
        out
    }
}

pub fn naive_mask(a: &[u8], b: &[u8], t: u8) -> Vec<u8> {
    let mut out = vec![0u8; a.len()];
    for i in 0..a.len() {
        let d = (a[i] as i32 - b[i] as i32).abs();
        out[i] = if d > t as i32 { 1 } else { 0 };
    }
    out
}

/// Component labels by repeated min-label relaxation until nothing changes.
/// Labels are arbitrary positive ids; 0 is background.
pub fn naive_labels(mask: &[u8], width: usize, height: usize, eight: bool) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..mask.len())
        .map(|i| if mask[i] == 1 { i + 1 } else { 0 })
        .collect();
    loop {
        let mut changed = false;
        for y in 0..height {
            for x in 0..width {
                let i = y * width + x;
                if labels[i] == 0 {
                    continue;
                }
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        if !eight && dx != 0 && dy != 0 {
                            continue;
                        }
                        let nx = x as i64 + dx;
                        let ny = y as i64 + dy;
                        if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 {
                            continue;
                        }
                        let j = ny as usize * width + nx as usize;
                        if labels[j] != 0 && labels[j] < labels[i] {
                            labels[i] = labels[j];
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return labels;
        }
    }
}

pub fn naive_denoise(mask: &[u8], width: usize, height: usize, min: usize, eight: bool) -> Vec<u8> {
    let labels = naive_labels(mask, width, height, eight);
    let mut areas = std::collections::HashMap::new();
    for &l in labels.iter().filter(|&&l| l != 0) {
        *areas.entry(l).or_insert(0usize) += 1;
    }
    let mut out = vec![0u8; mask.len()];
    for i in 0..mask.len() {
        if labels[i] == 0 {
            continue;
        }
        if areas[&labels[i]] >= min {
            out[i] = 1;
        }
    }
    out
}

/// Blobs as `(area, [x0, y0, x1, y1])`, ordered by first pixel in raster order.
pub fn naive_blobs(
    mask: &[u8],
    width: usize,
    height: usize,
    eight: bool,
    min: usize,
) -> Vec<(usize, [usize; 4])> {
    let labels = naive_labels(mask, width, height, eight);
    let mut seen: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for i in 0..mask.len() {
        let l = labels[i];
        if l == 0 || seen.contains(&l) {
            continue;
        }
        seen.push(l);
        let mut area = 0;
        let mut bbox = [usize::MAX, usize::MAX, 0, 0];
        for j in 0..mask.len() {
            if labels[j] == l {
                area += 1;
                let (x, y) = (j % width, j / width);
                bbox[0] = bbox[0].min(x);
                bbox[1] = bbox[1].min(y);
                bbox[2] = bbox[2].max(x);
                bbox[3] = bbox[3].max(y);
            }
        }
        if area >= min.max(1) {
            out.push((area, bbox));
        }
    }
    out
}

/// `(tp, fp, tn, fn)` over two 0/1 rasters.
pub fn naive_confusion(pred: &[u8], truth: &[u8]) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for i in 0..pred.len() {
        match (pred[i], truth[i]) {
            (1, 1) => c.0 += 1,
            (1, 0) => c.1 += 1,
            (0, 0) => c.2 += 1,
            _ => c.3 += 1,
        }
    }
    c
}

/// The noise-rejection benchmark scene.
pub fn benchmark_scene() -> NaiveScene {
    NaiveScene {
        width: 128,
        height: 128,
        frames: 100,
        background: 64,
        size: 16,
        intensity: 200,
        start: (8, 56),
        velocity: (1, 0),
        noise: 0.005,
        seed: 20_240_517,
    }
}

/// Background subtraction against the clean background, T=25, then
/// 8-connected minimum-area-8 filtering; returns aggregate `(tp, fp, tn, fn)`.
pub fn benchmark_confusion() -> (u64, u64, u64, u64) {
    let scene = benchmark_scene();
    let background = vec![scene.background; scene.width * scene.height];
    let mut total = (0, 0, 0, 0);
    for (frame, truth) in scene.generate() {
        let mask = naive_mask(&frame, &background, 25);
        let mask = naive_denoise(&mask, scene.width, scene.height, 8, true);
        let c = naive_confusion(&mask, &truth);
        total.0 += c.0;
        total.1 += c.1;
        total.2 += c.2;
        total.3 += c.3;
    }
    total
}
