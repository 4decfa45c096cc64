use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motiondet::{Color, Connectivity};

#[derive(Debug, Parser)]
#[command(name = "motiondet", version, about = "Motion detection over PGM/PPM frame sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect motion in a frame sequence, writing annotations and a report.
    Run(RunArgs),
    /// Generate a synthetic moving-square scene with ground-truth masks.
    Synth(SynthArgs),
    /// Score a directory of predicted masks against ground truth.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(alias = "background_subtraction")]
    BackgroundSubtraction,
    #[value(alias = "frame_difference")]
    FrameDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Mode {
    Area,
    Border,
    Grid,
    Blobs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Directory of frames (sorted by name) or a manifest file listing one path per line.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = MethodArg::BackgroundSubtraction)]
    pub method: MethodArg,

    /// A pixel is motion when its difference strictly exceeds this value.
    #[arg(long, default_value_t = 25)]
    pub threshold: u8,

    /// Background learning rate in [0, 1]; 0 keeps the reference static.
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,

    /// Connected components smaller than this are discarded as noise.
    #[arg(long, default_value_t = 8)]
    pub min_blob_size: usize,

    /// Neighbourhood for noise filtering and blobs.
    #[arg(long, default_value = "8", value_parser = parse_connectivity)]
    pub connectivity: Connectivity,

    /// Neighbourhood for border extraction.
    #[arg(long, default_value = "4", value_parser = parse_connectivity)]
    pub border_connectivity: Connectivity,

    /// Grid size as ROWSxCOLS.
    #[arg(long, default_value = "8x8", value_parser = parse_grid)]
    pub grid: (usize, usize),

    /// Post-processing modes, comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub modes: Vec<Mode>,

    /// Annotation colour as R,G,B.
    #[arg(long, default_value = "255,0,0", value_parser = parse_color)]
    pub color: Color,

    /// Reference frame for background subtraction (PGM or PPM).
    #[arg(long)]
    pub background: Option<PathBuf>,

    /// Without --background, average this many leading frames into the reference.
    #[arg(long, default_value_t = 1)]
    pub background_frames: usize,

    /// Directory for `<stem>.annotated.ppm` files.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Directory for denoised masks as `<stem>.mask.pgm` (0/255).
    #[arg(long)]
    pub masks: Option<PathBuf>,

    /// Line-delimited JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,

    /// Directory of ground-truth masks (0/255 PGM), one per input frame.
    #[arg(long)]
    pub truth: Option<PathBuf>,

    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory; receives frames/, truth/, background.pgm and spec.json.
    #[arg(long)]
    pub out: PathBuf,

    #[arg(long, default_value_t = 128)]
    pub width: usize,

    #[arg(long, default_value_t = 128)]
    pub height: usize,

    #[arg(long, default_value_t = 100)]
    pub frames: usize,

    #[arg(long, default_value_t = 64)]
    pub background_level: u8,

    #[arg(long, default_value_t = 16)]
    pub square_size: usize,

    #[arg(long, default_value_t = 200)]
    pub square_intensity: u8,

    /// Top-left corner of the square in the first frame, as X,Y.
    #[arg(long, default_value = "8,56", value_parser = parse_pair, allow_hyphen_values = true)]
    pub start: (i64, i64),

    /// Square velocity in pixels per frame, as VX,VY.
    #[arg(long, default_value = "1,0", value_parser = parse_pair, allow_hyphen_values = true)]
    pub velocity: (i64, i64),

    /// Salt-and-pepper probability per pixel.
    #[arg(long, default_value_t = 0.005)]
    pub noise: f64,

    #[arg(long, default_value_t = 20_240_517)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory of predicted masks (0/255 PGM).
    #[arg(long)]
    pub pred: PathBuf,

    /// Directory of ground-truth masks (0/255 PGM).
    #[arg(long)]
    pub truth: PathBuf,

    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_connectivity(s: &str) -> Result<Connectivity, String> {
    match s {
        "4" => Ok(Connectivity::Four),
        "8" => Ok(Connectivity::Eight),
        _ => Err(format!("expected 4 or 8, got {s:?}")),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let (rows, cols) = (parse(r)?, parse(c)?);
    if rows == 0 || cols == 0 {
        return Err("grid rows and cols must be at least 1".into());
    }
    Ok((rows, cols))
}

fn parse_color(s: &str) -> Result<Color, String> {
    let parts: Vec<_> = s.split(',').map(|p| p.trim().parse::<u8>()).collect();
    match parts.as_slice() {
        [Ok(r), Ok(g), Ok(b)] => Ok(Color::new(*r, *g, *b)),
        _ => Err(format!("expected R,G,B with values 0-255, got {s:?}")),
    }
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}
