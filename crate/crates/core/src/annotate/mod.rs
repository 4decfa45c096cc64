//! Post-processing of motion masks: area and border highlighting, grid
//! motion levels, and blob extraction with bounding boxes.

mod blob;
mod draw;
mod grid;

pub use blob::{extract_blobs, label_components, Blob, BoundingBox, ComponentLabels};
pub use draw::{
    draw_blob_boxes, extract_border, highlight_motion_area, highlight_motion_border, RgbFrame,
};
pub use grid::{grid_motion, GridMap};
