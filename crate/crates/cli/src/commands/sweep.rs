use std::fs::File;
use std::path::PathBuf;

use qsonus_core::measurement::MeasurementMode;
use qsonus_core::metrics::QUADRATIC_FIT_MAX_EPSILON;
use qsonus_core::readout::ReadoutRegistry;
use qsonus_core::sweep::{fit_sweep, run_sweep, summarize, write_sweep_csv, Reference, SweepConfig};
use qsonus_core::AngleDistribution;

use crate::exit::{Failure, Outcome};
use crate::input::{check_epsilon, output, parse_list, SignalArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Measurements per frame, comma-separated.
    #[arg(long = "M", default_value = "5,20,100,1000")]
    pub shots: String,
    /// Gate-noise amplitudes, comma-separated.
    #[arg(long = "epsilon-list", default_value = "0,0.05,0.1,0.3,1")]
    pub epsilons: String,
    #[arg(long, default_value_t = 10)]
    pub realizations: usize,
    #[arg(long, default_value = "total")]
    pub mode: MeasurementMode,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Fidelity reference: the ideal reconstruction or the original signal.
    #[arg(long, default_value = "ideal")]
    pub reference: Reference,
    #[arg(long = "noise-dist", default_value = "gaussian")]
    pub noise_dist: AngleDistribution,
    /// Comma-separated readouts to run (default: all registered).
    #[arg(long)]
    pub readouts: Option<String>,
    /// Output prefix.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &Args) -> Outcome {
    let shots: Vec<u64> = parse_list("--M", &args.shots)?;
    let epsilons: Vec<f64> = parse_list("--epsilon-list", &args.epsilons)?;
    if shots.contains(&0) {
        return Err(Failure::usage("--M entries must be positive"));
    }
    for &e in &epsilons {
        check_epsilon(e)?;
    }
    if args.realizations == 0 {
        return Err(Failure::usage("--realizations must be positive"));
    }
    let readouts = match &args.readouts {
        Some(raw) => parse_list("--readouts", raw)?,
        None => Vec::new(),
    };
    let loaded = args.signal.load(args.seed)?;
    let config = SweepConfig {
        n_q: loaded.n_q,
        n_f: args.signal.nf,
        shots_per_frame: shots.clone(),
        epsilons,
        realizations: args.realizations,
        mode: args.mode,
        seed: args.seed,
        reference: args.reference,
        readouts,
        distribution: args.noise_dist,
    };
    let reports = run_sweep(loaded.signal.samples(), &config, &ReadoutRegistry::builtin())?;
    let sweep_path = output(&args.out, "sweep.csv");
    write_sweep_csv(&reports, File::create(&sweep_path)?)?;

    let summary = summarize(&reports);
    println!("{:>9} {:>6} {:>8} {:>8} {:>8}", "pipeline", "M", "epsilon", "mean", "stderr");
    for s in &summary {
        println!(
            "{:>9} {:>6} {:>8} {:>8.4} {:>8.4}",
            s.pipeline, s.shots_per_frame, s.epsilon, s.mean, s.stderr
        );
    }

    let fit_path = output(&args.out, "fit.csv");
    let mut fit_csv = csv::Writer::from_writer(File::create(&fit_path)?);
    fit_csv
        .write_record(["pipeline", "M", "c", "exponent", "floor", "points", "residual"])
        .map_err(qsonus_core::Error::from)?;
    let mut pipelines: Vec<&str> = Vec::new();
    for s in &summary {
        if !pipelines.contains(&s.pipeline.as_str()) {
            pipelines.push(&s.pipeline);
        }
    }
    for pipeline in pipelines {
        for &m in &shots {
            match fit_sweep(&summary, pipeline, m, args.signal.nf) {
                Ok(fit) => {
                    println!(
                        "fit {pipeline} M={m}: 1-f = {:.4} eps^2 nf^2 (free exponent {:.3})",
                        fit.coefficient, fit.exponent
                    );
                    fit_csv
                        .write_record([
                            pipeline.to_string(),
                            m.to_string(),
                            fit.coefficient.to_string(),
                            fit.exponent.to_string(),
                            fit.floor.to_string(),
                            fit.points.to_string(),
                            fit.residual.to_string(),
                        ])
                        .map_err(qsonus_core::Error::from)?;
                }
                Err(e) => println!(
                    "no fit for {pipeline} M={m} (needs >= 3 amplitudes in (0, {QUADRATIC_FIT_MAX_EPSILON}]): {e}"
                ),
            }
        }
    }
    fit_csv.flush()?;
    println!("wrote {} and {}", sweep_path.display(), fit_path.display());
    Ok(())
}
