//! Argument parsing and command dispatch for the `edt-texture` binary.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use log::info;

use crate::classify::ClassifierKind;
use crate::descriptors::{DescriptorId, DescriptorParams, GaborParams, DEFAULT_GLCM_LEVELS, DEFAULT_KERNEL_SIDE};
use crate::error::{Error, Result};
use crate::harness::{generate_synthetic, run_sweep, write_curve, write_report, SweepConfig, SweepMode, SynthSpec};
use crate::imageio::{load_dataset, load_image, write_dataset, write_pgm, write_png, GrayImage};
use crate::selftest::run_selftest;
use crate::transform::{binarize, edt_exact, quantize_distance};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "edt-texture",
    version,
    about = "Distance-transform feature augmentation for texture classification"
)]
pub struct CliArgs {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sweep thresholds over a dataset and write a CSV report.
    Run(RunArgs),
    /// Generate a synthetic texture dataset as a directory of PGM files.
    Synth(SynthArgs),
    /// Write the rescaled distance transform of one image at one threshold.
    EdtDump(EdtDumpArgs),
    /// Run the built-in oracle and invariant checks.
    Selftest,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Dataset root with one subdirectory per class.
    #[arg(long)]
    pub dataset: PathBuf,
    /// lbp, lbpv, glcm, gldm, fourier or gabor.
    #[arg(long)]
    pub descriptor: DescriptorId,
    /// knn or gnb.
    #[arg(long)]
    pub classifier: ClassifierKind,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// baseline, edt-only or combined.
    #[arg(long, default_value = "combined")]
    pub mode: SweepMode,
    #[arg(long, default_value_t = 1)]
    pub i_min: u8,
    #[arg(long, default_value_t = 150)]
    pub i_max: u8,
    #[arg(long, default_value_t = 10, value_parser = parse_folds)]
    pub folds: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_GLCM_LEVELS, value_parser = parse_glcm_levels)]
    pub glcm_levels: usize,
    /// Odd Gabor kernel side, at least 11.
    #[arg(long, default_value_t = DEFAULT_KERNEL_SIDE, value_parser = parse_kernel_side)]
    pub gabor_kernel: usize,
    /// Also write `iteration,acc_mean` pairs here.
    #[arg(long)]
    pub curve: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
    pub classes: u32,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(2..))]
    pub per_class: u32,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..=4096))]
    pub size: u32,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EdtDumpArgs {
    #[arg(long)]
    pub image: PathBuf,
    #[arg(long)]
    pub threshold: u8,
    /// Output path; `.png` writes PNG, anything else PGM.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_folds(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if k >= 2 => Ok(k),
        Ok(_) => Err("folds must be ≥ 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_glcm_levels(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (2..=256).contains(&n) => Ok(n),
        Ok(_) => Err("glcm levels must be in 2..=256".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_kernel_side(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 11 && n % 2 == 1 => Ok(n),
        Ok(_) => Err("gabor kernel side must be odd and ≥ 11".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `argv` (including the program name) and applies cross-flag checks.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<CliArgs, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = CliArgs::try_parse_from(argv)?;
    if let Command::Run(run) = &args.command {
        if run.i_min > run.i_max {
            return Err(CliArgs::command().error(
                ErrorKind::ValueValidation,
                format!("--i-min ({}) must not exceed --i-max ({})", run.i_min, run.i_max),
            ));
        }
    }
    Ok(args)
}

impl RunArgs {
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            descriptor: self.descriptor,
            classifier: self.classifier,
            mode: self.mode,
            i_min: self.i_min,
            i_max: self.i_max,
            folds: self.folds,
            seed: self.seed,
            params: DescriptorParams {
                glcm_levels: self.glcm_levels,
                gabor: GaborParams {
                    kernel_side: self.gabor_kernel,
                    ..GaborParams::default()
                },
            },
            cache_original: true,
        }
    }
}

/// Runs the parsed command. Progress goes to the log, one summary line to
/// stdout.
pub fn execute(args: &CliArgs) -> Result<()> {
    match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| dispatch(&args.command)),
        None => dispatch(&args.command),
    }
}

fn dispatch(command: &Command) -> Result<()> {
    match command {
        Command::Run(run) => run_command(run),
        Command::Synth(synth) => synth_command(synth),
        Command::EdtDump(dump) => edt_dump_command(dump),
        Command::Selftest => selftest_command(),
    }
}

fn run_command(args: &RunArgs) -> Result<()> {
    let dataset = load_dataset(&args.dataset)?;
    info!(
        "loaded {} images in {} classes from {}",
        dataset.len(),
        dataset.num_classes(),
        args.dataset.display()
    );
    let result = run_sweep(&dataset, &args.sweep_config())?;
    write_report(&result, &args.out)?;
    if let Some(curve) = &args.curve {
        write_curve(&result, curve)?;
    }
    let baseline = format!(
        "{} {} baseline {:.2} ({:.2})",
        result.descriptor,
        result.classifier,
        result.baseline.mean_percent(),
        result.baseline.std_percent()
    );
    match result.best() {
        Some((i, best)) => println!(
            "{baseline}; {} best i={i} {:.2} ({:.2})",
            result.mode,
            best.mean_percent(),
            best.std_percent()
        ),
        None => println!("{baseline}"),
    }
    Ok(())
}

fn synth_command(args: &SynthArgs) -> Result<()> {
    let spec = SynthSpec::with_palette(
        args.classes as usize,
        args.per_class as usize,
        args.size as usize,
        args.seed,
    );
    let dataset = generate_synthetic(&spec)?;
    write_dataset(&dataset, &args.out)?;
    println!(
        "wrote {} images in {} classes to {}",
        dataset.len(),
        dataset.num_classes(),
        args.out.display()
    );
    Ok(())
}

fn edt_dump_command(args: &EdtDumpArgs) -> Result<()> {
    let img = load_image(&args.image)?;
    let map = edt_exact(&binarize(&img, args.threshold));
    if map.foreground_empty() {
        log::warn!(
            "threshold {} is below the image minimum; foreground is empty",
            args.threshold
        );
    }
    write_image(&quantize_distance(&map), &args.out)?;
    println!(
        "max distance {:.3} px, written to {}",
        (map.max_sq_dist() as f64).sqrt(),
        args.out.display()
    );
    Ok(())
}

fn write_image(img: &GrayImage, path: &Path) -> Result<()> {
    let is_png = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"));
    if is_png {
        write_png(img, path)
    } else {
        write_pgm(img, path)
    }
}

fn selftest_command() -> Result<()> {
    let results = run_selftest();
    for r in &results {
        println!("{r}");
    }
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        failed => Err(Error::SelftestFailed(failed)),
    }
}
