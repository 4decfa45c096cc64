//! The `run` subcommand: read frames, detect, filter noise, annotate, report.

use std::path::{Path, PathBuf};
use std::time::Instant;

use motiondet::annotate::{extract_blobs, extract_border, grid_motion};
use motiondet::io::{self, SequenceSource};
use motiondet::metrics::confusion;
use motiondet::{
    Blob, Color, Connectivity, Detector, DetectorConfig, EvalReport, Frame, GridMap, Method,
    MotionMask, RgbFrame, Threshold,
};
use serde::Serialize;

use crate::args::{MethodArg, Mode, RunArgs};
use crate::report::{EvalSummary, Footer, FrameRecord, ReportWriter, Summary, Timing};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    pub method: &'static str,
    pub threshold: u8,
    pub alpha: f64,
    pub min_blob_size: usize,
    pub connectivity: u8,
    pub border_connectivity: u8,
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub modes: Vec<&'static str>,
    pub highlight_color: [u8; 3],
    pub input: Option<PathBuf>,
    pub background: Option<PathBuf>,
    pub background_frames: usize,
    pub output_dir: Option<PathBuf>,
    pub masks_dir: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub truth_dir: Option<PathBuf>,
    #[serde(skip)]
    kind: Method,
    #[serde(skip)]
    detector: DetectorConfig,
    #[serde(skip)]
    border: Connectivity,
    #[serde(skip)]
    color: Color,
    #[serde(skip)]
    mode_set: Vec<Mode>,
}

fn conn_number(c: Connectivity) -> u8 {
    c.neighbours() as u8
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::BackgroundSubtraction => "background-subtraction",
        MethodArg::FrameDifference => "frame-difference",
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Area => "area",
        Mode::Border => "border",
        Mode::Grid => "grid",
        Mode::Blobs => "blobs",
    }
}

impl PipelineConfig {
    /// Resolves flags into a configuration, rejecting contradictions.
    /// `--print-config` skips the checks that need an input.
    pub fn from_args(args: &RunArgs) -> Result<Self, CliError> {
        let mut mode_set = args.modes.clone();
        mode_set.sort();
        mode_set.dedup();
        let detector = DetectorConfig {
            threshold: Threshold::new(args.threshold),
            update_alpha: args.alpha,
            min_blob_size: args.min_blob_size,
            connectivity: args.connectivity,
        };
        let cfg = PipelineConfig {
            method: method_name(args.method),
            threshold: args.threshold,
            alpha: args.alpha,
            min_blob_size: args.min_blob_size,
            connectivity: conn_number(args.connectivity),
            border_connectivity: conn_number(args.border_connectivity),
            grid_rows: args.grid.0,
            grid_cols: args.grid.1,
            modes: mode_set.iter().map(|&m| mode_name(m)).collect(),
            highlight_color: args.color.to_array(),
            input: args.input.clone(),
            background: args.background.clone(),
            background_frames: args.background_frames,
            output_dir: args.output.clone(),
            masks_dir: args.masks.clone(),
            report_path: args.report.clone(),
            truth_dir: args.truth.clone(),
            kind: match args.method {
                MethodArg::BackgroundSubtraction => Method::BackgroundSubtraction,
                MethodArg::FrameDifference => Method::FrameDifference,
            },
            detector,
            border: args.border_connectivity,
            color: args.color,
            mode_set,
        };
        cfg.detector.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if args.print_config {
            return Ok(cfg);
        }
        let usage = |msg: &str| Err(CliError::Usage(msg.to_string()));
        if cfg.input.is_none() {
            return usage("--input is required");
        }
        if cfg.background_frames == 0 {
            return usage("--background-frames must be at least 1");
        }
        if cfg.kind == Method::FrameDifference && (cfg.background.is_some() || cfg.background_frames > 1) {
            return usage("--background and --background-frames only apply to background subtraction");
        }
        if cfg.background.is_some() && cfg.background_frames > 1 {
            return usage("--background and --background-frames are mutually exclusive");
        }
        if cfg.output_dir.is_some() && cfg.mode_set.is_empty() {
            return usage("--output needs at least one --modes entry");
        }
        if cfg.output_dir.is_none() && cfg.report_path.is_none() && cfg.masks_dir.is_none() {
            return usage("nothing to write: pass --report, --output or --masks");
        }
        Ok(cfg)
    }

    fn has(&self, mode: Mode) -> bool {
        self.mode_set.contains(&mode)
    }
}

/// Outcome of a finished run, echoed to stdout by the caller.
pub struct RunOutcome {
    pub footer_json: String,
    pub timing: Timing,
}

struct Prepared {
    source: SequenceSource,
    detector: Detector,
    truth: Option<Vec<MotionMask>>,
    dims: (usize, usize),
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn prepare(cfg: &PipelineConfig) -> Result<Prepared, CliError> {
    let input = cfg.input.as_deref().expect("validated");
    let source = SequenceSource::open(input).map_err(input_err)?;
    if source.is_empty() {
        return Err(CliError::Input(format!("{}: no frames found", input.display())));
    }
    let first = io::read_frame(&source.paths()[0]).map_err(input_err)?;
    let dims = first.dims();

    if cfg.has(Mode::Grid) && (cfg.grid_rows > dims.1 || cfg.grid_cols > dims.0) {
        return Err(CliError::Usage(format!(
            "grid {}x{} does not fit {}x{} frames",
            cfg.grid_rows, cfg.grid_cols, dims.0, dims.1
        )));
    }

    let detector = match cfg.kind {
        Method::FrameDifference => Detector::frame_difference(cfg.detector),
        Method::BackgroundSubtraction => {
            let reference = match &cfg.background {
                Some(path) => io::read_frame(path).map_err(input_err)?,
                None => {
                    if cfg.background_frames > source.len() {
                        return Err(CliError::Input(format!(
                            "--background-frames {} exceeds the {} available frames",
                            cfg.background_frames,
                            source.len()
                        )));
                    }
                    let frames = source
                        .frames()
                        .take(cfg.background_frames)
                        .map(|r| r.map(|(_, f)| f))
                        .collect::<Result<Vec<Frame>, _>>()
                        .map_err(input_err)?;
                    motiondet::detector::init_background(&frames).map_err(input_err)?
                }
            };
            if reference.dims() != dims {
                return Err(CliError::Input(format!(
                    "background is {}x{} but frames are {}x{}",
                    reference.width(),
                    reference.height(),
                    dims.0,
                    dims.1
                )));
            }
            Detector::background(reference, cfg.detector)
        }
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let truth = match &cfg.truth_dir {
        None => None,
        Some(dir) => {
            let masks = io::read_mask_dir(dir).map_err(input_err)?;
            if masks.len() != source.len() {
                return Err(CliError::Input(format!(
                    "{} ground-truth masks for {} frames",
                    masks.len(),
                    source.len()
                )));
            }
            if let Some(m) = masks.iter().find(|m| m.dims() != dims) {
                return Err(CliError::Input(format!(
                    "ground-truth mask is {}x{} but frames are {}x{}",
                    m.width(),
                    m.height(),
                    dims.0,
                    dims.1
                )));
            }
            Some(masks)
        }
    };

    for dir in [&cfg.output_dir, &cfg.masks_dir].into_iter().flatten() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))?;
    }

    Ok(Prepared {
        source,
        detector,
        truth,
        dims,
    })
}

fn annotate(
    cfg: &PipelineConfig,
    frame: &Frame,
    mask: &MotionMask,
    blobs: Option<&[Blob]>,
    grid: Option<&GridMap>,
) -> motiondet::Result<RgbFrame> {
    let mut rgb = RgbFrame::from_gray(frame);
    if cfg.has(Mode::Area) {
        rgb.paint_mask(mask, cfg.color)?;
    }
    if cfg.has(Mode::Border) {
        rgb.paint_mask(&extract_border(mask, cfg.border), cfg.color)?;
    }
    if let Some(grid) = grid {
        rgb.draw_active_cells(grid, cfg.color)?;
    }
    for blob in blobs.unwrap_or_default() {
        rgb.draw_box(blob.bbox, cfg.color)?;
    }
    Ok(rgb)
}

struct Progress {
    frames: usize,
    detect_seconds: f64,
    eval: Option<EvalReport>,
}

fn process_all(
    cfg: &PipelineConfig,
    prepared: &mut Prepared,
    report: &mut ReportWriter,
    progress: &mut Progress,
) -> Result<(), String> {
    let blobs_on = cfg.has(Mode::Blobs);
    let grid_on = cfg.has(Mode::Grid);
    let min_size = cfg.detector.min_blob_size;
    let connectivity = cfg.detector.connectivity;

    for (index, item) in prepared.source.frames().enumerate() {
        let (path, frame) = item.map_err(|e| e.to_string())?;
        if frame.dims() != prepared.dims {
            return Err(format!("{}: frame size differs from the first frame", path.display()));
        }
        let stem = io::stem(&path);

        let started = Instant::now();
        let mask = prepared.detector.process(&frame).map_err(|e| e.to_string())?;
        let blobs = blobs_on.then(|| extract_blobs(&mask, connectivity, min_size));
        progress.detect_seconds += started.elapsed().as_secs_f64();

        let grid = if grid_on {
            Some(grid_motion(&mask, cfg.grid_rows, cfg.grid_cols).map_err(|e| e.to_string())?)
        } else {
            None
        };

        if let Some(dir) = &cfg.output_dir {
            let rgb = annotate(cfg, &frame, &mask, blobs.as_deref(), grid.as_ref()).map_err(|e| e.to_string())?;
            write(&dir.join(format!("{stem}.annotated.ppm")), &io::write_ppm(&rgb))?;
        }
        if let Some(dir) = &cfg.masks_dir {
            write(&dir.join(format!("{stem}.mask.pgm")), &io::write_mask_pgm(&mask))?;
        }
        if let (Some(eval), Some(truth)) = (&mut progress.eval, &prepared.truth) {
            eval.push(confusion(&mask, &truth[index]).map_err(|e| e.to_string())?);
        }

        let record = FrameRecord {
            frame: index,
            file: &stem,
            motion_pixels: mask.count(),
            blobs: blobs.as_deref(),
            grid: grid.as_ref(),
        };
        report.line(&record).map_err(|e| format!("writing report: {e}"))?;
        progress.frames += 1;
    }
    Ok(())
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), String> {
    io::write_file(path, bytes).map_err(|e| e.to_string())
}

pub fn run(cfg: &PipelineConfig) -> Result<RunOutcome, CliError> {
    let mut prepared = prepare(cfg)?;
    let mut report = ReportWriter::create(cfg.report_path.as_deref()).map_err(|e| {
        CliError::Runtime(format!("{}: {e}", cfg.report_path.as_deref().unwrap_or(Path::new("")).display()))
    })?;

    let mut progress = Progress {
        frames: 0,
        detect_seconds: 0.0,
        eval: prepared.truth.as_ref().map(|_| EvalReport::default()),
    };
    let result = process_all(cfg, &mut prepared, &mut report, &mut progress);

    let timing = Timing::new(progress.frames, progress.detect_seconds);
    let footer = Footer {
        summary: Summary {
            complete: result.is_ok(),
            frames: progress.frames,
            method: cfg.method,
            timing,
            eval: progress.eval.as_ref().map(EvalSummary::micro),
            error: result.as_ref().err().cloned(),
        },
    };
    let footer_json = serde_json::to_string(&footer).expect("footer serialises");
    let written = report.line(&footer).and_then(|_| report.finish());

    match (result, written) {
        (Err(message), _) => Err(CliError::Incomplete { message, footer: footer_json }),
        (Ok(()), Err(e)) => Err(CliError::Runtime(format!("writing report: {e}"))),
        (Ok(()), Ok(())) => Ok(RunOutcome { footer_json, timing }),
    }
}
