use std::fs;
use std::path::Path;

use motiondet::io::{self, NoiseSpec, SceneSpec, SquareSpec};
use motiondet::metrics::evaluate_sequence;

use crate::args::{EvalArgs, SynthArgs};
use crate::report::EvalSummary;
use crate::CliError;

fn runtime(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

pub fn scene_spec(args: &SynthArgs) -> SceneSpec {
    SceneSpec {
        width: args.width,
        height: args.height,
        frame_count: args.frames,
        background_level: args.background_level,
        square: SquareSpec {
            size: args.square_size,
            intensity: args.square_intensity,
            x0: args.start.0,
            y0: args.start.1,
            vx: args.velocity.0,
            vy: args.velocity.1,
        },
        noise: NoiseSpec {
            salt_pepper_prob: args.noise,
            seed: args.seed,
        },
    }
}

/// Writes `frames/`, `truth/`, `background.pgm` and `spec.json` under `out`.
/// Returns the number of frames written.
pub fn synth(args: &SynthArgs) -> Result<usize, CliError> {
    let spec = scene_spec(args);
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let frames_dir = args.out.join("frames");
    let truth_dir = args.out.join("truth");
    for dir in [&frames_dir, &truth_dir] {
        fs::create_dir_all(dir).map_err(|e| runtime(dir, e))?;
    }
    let digits = (spec.frame_count - 1).to_string().len().max(5);
    let scene = spec.frames().map_err(|e| CliError::Usage(e.to_string()))?;
    for (t, (frame, truth)) in scene.enumerate() {
        let name = format!("frame_{t:0digits$}.pgm");
        io::write_file(&frames_dir.join(&name), &io::write_pgm(&frame)).map_err(|e| CliError::Runtime(e.to_string()))?;
        io::write_file(&truth_dir.join(&name), &io::write_mask_pgm(&truth)).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let background = spec.background_frame().map_err(|e| CliError::Usage(e.to_string()))?;
    io::write_file(&args.out.join("background.pgm"), &io::write_pgm(&background))
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let spec_path = args.out.join("spec.json");
    let json = serde_json::to_string_pretty(&spec).expect("scene spec serialises");
    fs::write(&spec_path, json + "\n").map_err(|e| runtime(&spec_path, e))?;
    Ok(spec.frame_count)
}

/// Scores predicted masks against ground truth; returns the JSON report.
pub fn eval(args: &EvalArgs) -> Result<String, CliError> {
    let input = |e: motiondet::Error| CliError::Input(e.to_string());
    let pred = io::read_mask_dir(&args.pred).map_err(input)?;
    let truth = io::read_mask_dir(&args.truth).map_err(input)?;
    if truth.is_empty() {
        return Err(CliError::Input(format!("{}: no masks found", args.truth.display())));
    }
    let report = evaluate_sequence(&pred, &truth).map_err(input)?;
    let json = serde_json::to_string(&EvalSummary::micro(&report)).expect("report serialises");
    if let Some(path) = &args.report {
        fs::write(path, format!("{json}\n")).map_err(|e| runtime(path, e))?;
    }
    Ok(json)
}
