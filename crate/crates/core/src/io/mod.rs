//! Frame sequences on disk and synthetic scenes.

pub mod pnm;
mod sequence;
mod synth;

pub use pnm::{read_gray, read_mask_pgm, read_pgm, read_ppm, write_mask_pgm, write_pgm, write_ppm};
pub use sequence::{
    list_images, read_frame, read_mask, read_mask_dir, stem, write_file, Frames, SequenceSource,
};
pub use synth::{generate_scene, NoiseSpec, SceneFrames, SceneSpec, SquareSpec};
