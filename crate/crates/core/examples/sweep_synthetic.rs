//! Threshold sweep on a generated dataset, printed as CSV.
//!
//!     RUST_LOG=info cargo run --release --example sweep_synthetic [descriptor] [classifier]

use edt_texture::harness::{generate_synthetic, render_report, run_sweep, SweepConfig, SynthSpec};

fn main() -> edt_texture::Result<()> {
    env_logger::init();
    let mut args = std::env::args().skip(1);
    let descriptor = args
        .next()
        .unwrap_or_else(|| "lbp".into())
        .parse()
        .map_err(edt_texture::Error::Config)?;
    let classifier = args
        .next()
        .unwrap_or_else(|| "knn".into())
        .parse()
        .map_err(edt_texture::Error::Config)?;

    let dataset = generate_synthetic(&SynthSpec::with_palette(4, 40, 64, 42))?;
    let config = SweepConfig {
        descriptor,
        classifier,
        i_min: 10,
        i_max: 250,
        ..SweepConfig::default()
    };
    let result = run_sweep(&dataset, &config)?;
    print!("{}", render_report(&result));
    Ok(())
}
