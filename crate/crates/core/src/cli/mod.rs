//! The `differint` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use serde_json::json;

use crate::engine::{apply_window, differintegrate_1d, Signal1D, WindowKind};
use crate::error::{Error, Result};
use crate::imaging::{edge_overlay, emboss, process_image, read_image, write_image};
use crate::imaging::{ChannelMode, RescaleMode};
use crate::oracles::convolution_apply;
use crate::signal_io::{parse_signal, write_signal, HeaderPolicy, TextFormat};
use crate::spectral::{multiplier_for, Axis, DcPolicy, DiffintParams, FrequencyGrid, Mode, Scale};
use crate::transit::{crone_inflection_detect, eclipse_lightcurve, Detection, NoiseSpec, TransitParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_FORMAT: i32 = 4;
pub const EXIT_INVALID: i32 = 5;
pub const EXIT_ENGINE: i32 = 6;

const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success
  2  usage error (unknown flag, missing or malformed argument)
  3  file could not be read or written
  4  input file is malformed (CSV, JSON, PGM/PPM)
  5  parameter out of range (order, skew, threshold, geometry, sizes)
  6  numerical failure in the engine";

#[derive(Debug, Parser)]
#[command(
    name = "differint",
    version,
    about = "Fractional derivatives and integrals of signals and images by spectral filtering",
    after_help = EXIT_CODES_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Differintegrate a 1D signal (CSV or JSON in, CSV or JSON out).
    #[command(after_help = EXIT_CODES_HELP)]
    D1(D1Args),
    /// Blur (q < 0) or sharpen (q > 0) a PGM/PPM image.
    #[command(after_help = EXIT_CODES_HELP)]
    D2(D2Args),
    /// Overlay the thresholded fractional derivative on an image.
    #[command(after_help = EXIT_CODES_HELP)]
    Edges(EdgesArgs),
    /// Relief image from the skewed fractional derivative.
    #[command(after_help = EXIT_CODES_HELP)]
    Emboss(EmbossArgs),
    /// Synthesize a transit light curve and locate its inflection points.
    #[command(after_help = EXIT_CODES_HELP)]
    Eclipse(EclipseArgs),
    /// Time the spectral engine against the O(n²) convolution oracle.
    #[command(after_help = EXIT_CODES_HELP)]
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Riesz,
    Feller,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Riesz => Mode::Riesz,
            ModeArg::Feller => Mode::Feller,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DcPolicyArg {
    /// The output has zero mean (q != 0).
    Zero,
    /// The input mean passes through.
    Keep,
}

impl From<DcPolicyArg> for DcPolicy {
    fn from(p: DcPolicyArg) -> Self {
        match p {
            DcPolicyArg::Zero => DcPolicy::Zero,
            DcPolicyArg::Keep => DcPolicy::Keep,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WindowArg {
    None,
    Hann,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> Self {
        match w {
            WindowArg::None => WindowKind::None,
            WindowArg::Hann => WindowKind::Hann,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    Horizontal,
    Vertical,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Horizontal => Axis::Horizontal,
            AxisArg::Vertical => Axis::Vertical,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HeaderArg {
    /// A non-numeric first line is an error.
    Reject,
    /// A non-numeric first line is ignored.
    Skip,
}

impl From<HeaderArg> for HeaderPolicy {
    fn from(h: HeaderArg) -> Self {
        match h {
            HeaderArg::Reject => HeaderPolicy::Reject,
            HeaderArg::Skip => HeaderPolicy::Skip,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignalFormatArg {
    /// Chosen from the output file extension (.json or CSV).
    Auto,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChannelModeArg {
    /// Luma only; writes a gray image.
    Gray,
    /// Red, green and blue independently.
    RgbSeparate,
    /// HSB brightness only; hue and saturation are kept.
    HsbBrightness,
}

impl From<ChannelModeArg> for ChannelMode {
    fn from(c: ChannelModeArg) -> Self {
        match c {
            ChannelModeArg::Gray => ChannelMode::Gray,
            ChannelModeArg::RgbSeparate => ChannelMode::RgbSeparate,
            ChannelModeArg::HsbBrightness => ChannelMode::HsbBrightness,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RescaleArg {
    /// Stretch the filtered range onto [0, 1]; a flat result becomes 0.5.
    Minmax,
    /// Clip the filtered values to [0, 1].
    Clamp,
    /// Add gain times the filtered values to the original, then clip.
    Overlay,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct D1Args {
    /// Order: derivative for q > 0, integral for q < 0.
    #[arg(long)]
    q: f64,
    /// Skew in [0, 1] (feller mode only).
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Riesz)]
    mode: ModeArg,
    /// Gain at zero frequency.
    #[arg(long, value_enum, default_value_t = DcPolicyArg::Zero)]
    dc_policy: DcPolicyArg,
    /// Window applied to the input before filtering.
    #[arg(long, value_enum, default_value_t = WindowArg::None)]
    window: WindowArg,
    /// Sample rate in Hz; when given, output is in physical units (π fs)^q.
    #[arg(long)]
    sample_rate: Option<f64>,
    /// Input signal, CSV (one value per line) or JSON.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = SignalFormatArg::Auto)]
    format: SignalFormatArg,
    /// Handling of a CSV header line.
    #[arg(long, value_enum, default_value_t = HeaderArg::Reject)]
    header: HeaderArg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct D2Args {
    /// Input PGM (P5) or PPM (P6) image.
    input: PathBuf,
    /// Output image; gray input or --channel-mode gray writes PGM, otherwise PPM.
    output: PathBuf,
    /// Order: blur for q < 0, sharpen for q > 0.
    #[arg(long)]
    q: f64,
    /// Skew in [0, 1] (feller mode only).
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Riesz)]
    mode: ModeArg,
    /// Gain at zero frequency.
    #[arg(long, value_enum, default_value_t = DcPolicyArg::Zero)]
    dc_policy: DcPolicyArg,
    #[arg(long, value_enum, default_value_t = ChannelModeArg::HsbBrightness)]
    channel_mode: ChannelModeArg,
    #[arg(long, value_enum, default_value_t = RescaleArg::Minmax)]
    rescale: RescaleArg,
    /// Weight of the filtered image in overlay rescaling.
    #[arg(long, default_value_t = 1.0)]
    gain: f64,
    /// Direction of the skew (feller mode only).
    #[arg(long, value_enum, default_value_t = AxisArg::Horizontal)]
    axis: AxisArg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EdgesArgs {
    input: PathBuf,
    output: PathBuf,
    /// Order of the derivative that detects edges.
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Normalized response, in [0, 1], a pixel needs to be marked.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EmbossArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Skew in [0, 1]; 0 and 1 give the symmetric and antisymmetric extremes.
    #[arg(long, default_value_t = 0.3)]
    theta: f64,
    /// Direction of the relief.
    #[arg(long, value_enum, default_value_t = AxisArg::Horizontal)]
    axis: AxisArg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EclipseArgs {
    /// Planet to star radius ratio R/Rs.
    #[arg(long, default_value_t = 0.1)]
    depth_ratio: f64,
    /// Transit speed in star radii per time unit.
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    /// Number of samples.
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Fraction of the window at baseline on each side, in [0, 0.5).
    #[arg(long, default_value_t = 0.4)]
    padding: f64,
    /// Noise standard deviation as a fraction of the transit depth.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Seed of the noise generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Order of the detector.
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Skew of the detector.
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Also write the light curve here (.json adds a metadata object, else CSV).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Text)]
    format: ReportFormatArg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct BenchArgs {
    /// Signal length.
    #[arg(long, default_value_t = 16384)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Skew in [0, 1] (feller mode only).
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Riesz)]
    mode: ModeArg,
    /// Seed of the random test signal.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Spectral engine runs; the fastest is reported.
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// Leave wall-clock timings out of the report so that it is reproducible.
    #[arg(long)]
    no_timings: bool,
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Text)]
    format: ReportFormatArg,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::Format(_) | Error::Parse(_) => EXIT_FORMAT,
        Error::InvalidSize(_)
        | Error::InvalidParameter(_)
        | Error::DegenerateOrder { .. }
        | Error::UnsupportedOrder(_)
        | Error::LengthMismatch { .. } => EXIT_INVALID,
        Error::NonFinite(_)
        | Error::DcSingularity { .. }
        | Error::Pole(_)
        | Error::SymmetryViolation { .. } => EXIT_ENGINE,
    }
}

/// Runs the command line with `argv[0]` as the program name, printing to the
/// process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::D1(a) => d1(a),
        Command::D2(a) => d2(a),
        Command::Edges(a) => edges(a),
        Command::Emboss(a) => run_emboss(a),
        Command::Eclipse(a) => eclipse(a, out),
        Command::Bench(a) => bench(a, out),
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("--{name} must be finite, got {v}")))
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_context(e, "read", path))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| io_context(e, "write", path))
}

fn io_context(e: std::io::Error, verb: &str, path: &Path) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("cannot {verb} {}: {e}", path.display()),
    ))
}

fn read_pnm(path: &Path) -> Result<crate::ImageBuffer> {
    read_image(path).map_err(|e| match e {
        Error::Io(io) => io_context(io, "read", path),
        other => other,
    })
}

fn write_pnm(img: &crate::ImageBuffer, path: &Path) -> Result<()> {
    write_image(img, path).map_err(|e| match e {
        Error::Io(io) => io_context(io, "write", path),
        other => other,
    })
}

fn d1(a: D1Args) -> Result<()> {
    let mut params = DiffintParams {
        q: finite("q", a.q)?,
        theta: finite("theta", a.theta)?,
        mode: a.mode.into(),
        dc_policy: a.dc_policy.into(),
        ..DiffintParams::default()
    };
    if let Some(fs) = a.sample_rate {
        params.scale = Scale::Physical { sample_rate: fs };
    }
    params.validate()?;
    let format = match a.format {
        SignalFormatArg::Auto => TextFormat::from_path(&a.output),
        SignalFormatArg::Csv => TextFormat::Csv,
        SignalFormatArg::Json => TextFormat::Json,
    };

    let samples = parse_signal(&read_text(&a.input)?, a.header.into())?;
    let mut signal = Signal1D::new(samples)?;
    if let Some(fs) = a.sample_rate {
        signal = signal.with_sample_rate(fs)?;
    }
    let signal = apply_window(&signal, a.window.into());
    let result = differintegrate_1d(&signal, &params)?;
    write_bytes(&a.output, write_signal(result.samples(), format, None).as_bytes())
}

fn d2(a: D2Args) -> Result<()> {
    let params = DiffintParams {
        q: finite("q", a.q)?,
        theta: finite("theta", a.theta)?,
        mode: a.mode.into(),
        dc_policy: a.dc_policy.into(),
        axis: a.axis.into(),
        ..DiffintParams::default()
    };
    params.validate()?;
    let rescale = match a.rescale {
        RescaleArg::Minmax => RescaleMode::MinMax,
        RescaleArg::Clamp => RescaleMode::Clamp,
        RescaleArg::Overlay => RescaleMode::Overlay {
            gain: finite("gain", a.gain)?,
        },
    };
    if !(a.gain.is_finite() && a.gain > 0.0) {
        return Err(Error::InvalidParameter(format!("--gain must be positive, got {}", a.gain)));
    }

    let img = read_pnm(&a.input)?;
    let out = process_image(&img, &params, a.channel_mode.into(), rescale)?;
    write_pnm(&out, &a.output)
}

fn edges(a: EdgesArgs) -> Result<()> {
    let q = finite("q", a.q)?;
    DiffintParams::riesz(q).validate()?;
    if !(0.0..=1.0).contains(&a.threshold) {
        return Err(Error::InvalidParameter(format!(
            "--threshold must lie in [0, 1], got {}",
            a.threshold
        )));
    }
    let img = read_pnm(&a.input)?;
    write_pnm(&edge_overlay(&img, q, a.threshold)?, &a.output)
}

fn run_emboss(a: EmbossArgs) -> Result<()> {
    let q = finite("q", a.q)?;
    DiffintParams::feller(q, finite("theta", a.theta)?).validate()?;
    let img = read_pnm(&a.input)?;
    write_pnm(&emboss(&img, q, a.theta, a.axis.into())?, &a.output)
}

#[derive(Serialize)]
struct EclipseReport {
    transit: TransitParams,
    noise: NoiseSpec,
    q: f64,
    theta: f64,
    analytic: [f64; 2],
    detection: Detection,
    /// Absolute index errors of the detected peaks, when two were found.
    errors: Option<[f64; 2]>,
    within_2_samples: bool,
    within_2_percent: bool,
}

fn eclipse(a: EclipseArgs, out: &mut dyn Write) -> Result<()> {
    let transit = TransitParams {
        star_radius: 1.0,
        planet_radius: finite("depth-ratio", a.depth_ratio)?,
        speed: finite("speed", a.speed)?,
        n_samples: a.n,
        padding: finite("padding", a.padding)?,
    };
    transit.validate()?;
    let noise = NoiseSpec {
        sigma: finite("sigma", a.sigma)?,
        seed: a.seed,
    };
    if noise.sigma < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "--sigma must be nonnegative, got {}",
            noise.sigma
        )));
    }
    DiffintParams::feller(finite("q", a.q)?, finite("theta", a.theta)?).validate()?;

    let curve = eclipse_lightcurve(&transit, &noise)?;
    let detection = crone_inflection_detect(&curve, a.q, a.theta)?;
    let (i1, i2) = transit.inflection_indices();
    let errors = detection
        .indices()
        .map(|[p, r]| [(p as f64 - i1).abs(), (r as f64 - i2).abs()]);
    let worst = errors.map(|[x, y]| x.max(y));
    let report = EclipseReport {
        transit,
        noise,
        q: a.q,
        theta: a.theta,
        analytic: [i1, i2],
        detection,
        errors,
        within_2_samples: worst.is_some_and(|w| w <= 2.0),
        within_2_percent: worst.is_some_and(|w| w <= 0.02 * transit.n_samples as f64),
    };

    if let Some(path) = &a.output {
        let metadata = json!({ "transit": transit, "noise": noise });
        let text = write_signal(curve.samples(), TextFormat::from_path(path), Some(&metadata));
        write_bytes(path, text.as_bytes())?;
    }

    let text = match a.format {
        ReportFormatArg::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        ReportFormatArg::Text => eclipse_text(&report),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn eclipse_text(r: &EclipseReport) -> String {
    let mut s = format!(
        "transit: R/Rs={} v={} n={} padding={}\nnoise: sigma={} seed={}\ndetector: q={} theta={}\nanalytic inflections: {} {}\n",
        r.transit.planet_radius / r.transit.star_radius,
        r.transit.speed,
        r.transit.n_samples,
        r.transit.padding,
        r.noise.sigma,
        r.noise.seed,
        r.q,
        r.theta,
        r.analytic[0],
        r.analytic[1],
    );
    match r.detection {
        Detection::Found { first, second } => {
            let [e1, e2] = r.errors.unwrap_or([f64::NAN; 2]);
            s += &format!("detected inflections: {first} {second}\nerrors (samples): {e1} {e2}\n");
        }
        Detection::Failed { peaks_found } => {
            s += &format!("detection failed: {peaks_found} peak(s) found\n");
        }
    }
    s += &format!(
        "within 2 samples: {}\nwithin 2% of n: {}\n",
        yes_no(r.within_2_samples),
        yes_no(r.within_2_percent)
    );
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct BenchReport {
    n: usize,
    mode: Mode,
    q: f64,
    theta: f64,
    seed: u64,
    /// `max |engine - oracle| / max |oracle|`
    max_relative_discrepancy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    engine_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    speedup: Option<f64>,
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let params = DiffintParams {
        q: finite("q", a.q)?,
        theta: finite("theta", a.theta)?,
        mode: a.mode.into(),
        ..DiffintParams::default()
    };
    params.validate()?;
    if a.n < 2 {
        return Err(Error::InvalidSize(format!("--n must be at least 2, got {}", a.n)));
    }
    if a.repeats == 0 {
        return Err(Error::InvalidParameter("--repeats must be at least 1".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let samples: Vec<f64> = (0..a.n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let signal = Signal1D::new(samples)?;

    let mut engine_best = f64::INFINITY;
    let mut engine_out = None;
    for _ in 0..a.repeats {
        let t = Instant::now();
        let y = differintegrate_1d(&signal, &params)?;
        engine_best = engine_best.min(t.elapsed().as_secs_f64());
        engine_out = Some(y);
    }
    let engine_out = engine_out.expect("at least one repeat");

    let t = Instant::now();
    let multiplier = multiplier_for(&FrequencyGrid::new_1d(a.n)?, &params)?;
    let oracle_out = convolution_apply(&signal, &multiplier)?;
    let oracle_time = t.elapsed().as_secs_f64();

    let scale = oracle_out.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = engine_out
        .samples()
        .iter()
        .zip(oracle_out.samples())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let timed = !a.no_timings;
    let report = BenchReport {
        n: a.n,
        mode: params.mode,
        q: params.q,
        theta: params.theta,
        seed: a.seed,
        max_relative_discrepancy: if scale > 0.0 { diff / scale } else { diff },
        engine_seconds: timed.then_some(engine_best),
        oracle_seconds: timed.then_some(oracle_time),
        speedup: timed.then_some(oracle_time / engine_best),
    };

    let text = match a.format {
        ReportFormatArg::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        ReportFormatArg::Text => {
            let mut s = format!(
                "n: {}\nmode: {:?}\nq: {}\ntheta: {}\nseed: {}\nmax relative discrepancy: {:e}\n",
                report.n,
                report.mode,
                report.q,
                report.theta,
                report.seed,
                report.max_relative_discrepancy
            );
            if timed {
                s += &format!(
                    "spectral engine: {engine_best:.6} s\nconvolution oracle: {oracle_time:.6} s\nspeedup: {:.1}x\n",
                    oracle_time / engine_best
                );
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}
