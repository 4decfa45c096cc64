//! Line-delimited JSON report: one object per frame, then a summary footer.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use motiondet::{Blob, EvalReport, GridMap};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct FrameRecord<'a> {
    pub frame: usize,
    pub file: &'a str,
    pub motion_pixels: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blobs: Option<&'a [Blob]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<&'a GridMap>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Timing {
    pub frames: usize,
    /// Time spent in detection, background update, noise filtering and blob extraction.
    pub detect_seconds: f64,
    pub fps: f64,
}

impl Timing {
    pub fn new(frames: usize, detect_seconds: f64) -> Self {
        let fps = if detect_seconds > 0.0 { frames as f64 / detect_seconds } else { f64::INFINITY };
        Timing {
            frames,
            detect_seconds,
            fps,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalSummary<'a> {
    pub averaging: &'static str,
    #[serde(flatten)]
    pub report: &'a EvalReport,
}

impl<'a> EvalSummary<'a> {
    pub fn micro(report: &'a EvalReport) -> Self {
        EvalSummary {
            averaging: "micro",
            report,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary<'a> {
    pub complete: bool,
    pub frames: usize,
    pub method: &'static str,
    pub timing: Timing,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eval: Option<EvalSummary<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Footer<'a> {
    pub summary: Summary<'a>,
}

pub struct ReportWriter {
    out: Option<BufWriter<File>>,
}

impl ReportWriter {
    pub fn create(path: Option<&Path>) -> std::io::Result<Self> {
        let out = path.map(File::create).transpose()?.map(BufWriter::new);
        Ok(ReportWriter { out })
    }

    pub fn line<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        if let Some(out) = &mut self.out {
            serde_json::to_writer(&mut *out, value)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        if let Some(out) = &mut self.out {
            out.flush()?;
        }
        Ok(())
    }
}
