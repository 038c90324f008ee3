use std::path::PathBuf;

use qsonus_core::audio::{save_wav, DEFAULT_SAWTOOTH_FRAME_QUBITS, DEFAULT_SAWTOOTH_RATE};
use qsonus_core::coarse::{coarse_diagram, pearson, Shots};
use qsonus_core::measurement::MeasurementMode;
use qsonus_core::qft::qft_low_qubits;
use qsonus_core::readout::Campaign;
use qsonus_core::render::{render_grid, ImageFormat};
use qsonus_core::sawtooth::{
    husimi, iterate_map, momentum_eigenstate, momentum_ordered, quantum_sound, HusimiConfig, SawtoothParams,
    Smoothing,
};
use qsonus_core::{AngleDistribution, FramePlan, NoiseModel, StateVector};

use super::campaign;
use crate::exit::{Failure, Outcome};
use crate::input::{check_register, output, parse_list};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, default_value_t = 14)]
    pub nq: usize,
    /// Chaos parameter K = kT.
    #[arg(long = "K", default_value_t = -0.5, allow_negative_numbers = true)]
    pub chaos: f64,
    /// Map iterations t.
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    /// Initial momentum eigenstate, labelled l + N/2 in 1..=N.
    #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
    pub l0: i64,
    #[arg(long, default_value_t = DEFAULT_SAWTOOTH_FRAME_QUBITS)]
    pub nf: usize,
    /// Gate-noise amplitude for the noisy runs (map and QFT).
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "noise-dist", default_value = "gaussian")]
    pub noise_dist: AngleDistribution,
    /// Measurements per frame for the sampled runs.
    #[arg(long = "shots-per-frame", default_value_t = 5)]
    pub shots_per_frame: u64,
    #[arg(long, default_value = "total")]
    pub mode: MeasurementMode,
    /// Sound sampling rate in Hz.
    #[arg(long, default_value_t = DEFAULT_SAWTOOTH_RATE)]
    pub rate: u32,
    /// Diagram row qubits (default: the nf most significant).
    #[arg(long = "row-qubits")]
    pub row_qubits: Option<String>,
    /// Diagram column qubits (default: the nf least significant).
    #[arg(long = "col-qubits")]
    pub col_qubits: Option<String>,
    /// Husimi box window width in momentum (default N/2^nf).
    #[arg(long = "box-width")]
    pub box_width: Option<usize>,
    #[arg(long, default_value = "ppm")]
    pub format: ImageFormat,
    /// Output prefix.
    #[arg(long)]
    pub out: PathBuf,
}

fn qubits(flag: &str, raw: &Option<String>, default: Vec<usize>, n_q: usize) -> Result<Vec<usize>, Failure> {
    let list = match raw {
        Some(raw) => parse_list(flag, raw)?,
        None => default,
    };
    if let Some(q) = list.iter().find(|&&q| q == 0 || q > n_q) {
        return Err(Failure::size(format!("{flag}: qubit {q} outside 1..={n_q}")));
    }
    Ok(list)
}

fn extension(format: ImageFormat) -> &'static str {
    match format {
        ImageFormat::Ppm => "ppm",
        ImageFormat::Pgm => "pgm",
        ImageFormat::Csv => "csv",
    }
}

pub fn run(args: &Args) -> Outcome {
    check_register(args.nq, args.nf)?;
    crate::input::check_epsilon(args.epsilon)?;
    let params = SawtoothParams::new(args.nq, args.chaos, args.iters);
    let n = params.dim() as i64;
    if args.l0 < 1 || args.l0 > n {
        return Err(Failure::size(format!("--l0 {} outside 1..={n}", args.l0)));
    }
    let l0 = args.l0 - n / 2;
    let frames = FramePlan::new(args.nq, args.nf)?;
    let rows = qubits("--row-qubits", &args.row_qubits, (1..=args.nf).collect(), args.nq)?;
    let cols = qubits(
        "--col-qubits",
        &args.col_qubits,
        (args.nq - args.nf + 1..=args.nq).collect(),
        args.nq,
    )?;

    // Stream 0 drives the QFT readout and shots, stream 1 the map itself.
    let exact_noise = NoiseModel::exact(args.seed).with_distribution(args.noise_dist);
    let noisy = NoiseModel::new(args.epsilon, args.seed, 0).with_distribution(args.noise_dist);

    let initial = momentum_eigenstate(&params, l0)?;
    let mut state = initial.clone();
    iterate_map(&mut state, &params, &mut exact_noise.gates())?;
    let mut noisy_state = initial;
    iterate_map(&mut noisy_state, &params, &mut noisy.with_stream(1).gates())?;
    println!(
        "{} iterations at K = {}: norm drift {:.2e} (exact), {:.2e} (noisy)",
        args.iters,
        args.chaos,
        (1.0 - state.norm_sqr()).abs(),
        (1.0 - noisy_state.norm_sqr()).abs()
    );

    let sampled = campaign(args.mode, args.shots_per_frame);
    let runs: [(&str, &StateVector, Campaign, &NoiseModel); 3] = [
        ("exact", &state, Campaign::exact(), &exact_noise),
        ("sampled", &state, sampled, &exact_noise),
        ("noisy", &noisy_state, sampled, &noisy),
    ];
    let ext = extension(args.format);
    let mut exact_diagram = None;
    for (name, st, camp, noise) in runs {
        let sound = quantum_sound(st, &frames, camp, noise, args.rate)?;
        let wav = output(&args.out, &format!("sound.{name}.wav"));
        save_wav(&sound.signal, &wav)?;

        let mut spec = st.clone();
        qft_low_qubits(&mut spec, &frames, &mut noise.gates())?;
        let shots = match camp.shots_per_frame {
            None => Shots::Exact,
            Some(m) => Shots::Count(m * frames.frame_count() as u64),
        };
        let diagram = coarse_diagram(&spec, &rows, &cols, shots, &mut noise.shots())?;
        render_grid(&diagram.grid, output(&args.out, &format!("sg.{name}.{ext}")), args.format)?;
        if name == "exact" {
            exact_diagram = Some(diagram);
        }
        println!("{name:>8}: {} and sg.{name}.{ext}", wav.display());
    }

    let box_width = args.box_width.unwrap_or(1 << (args.nq - args.nf));
    if box_width == 0 {
        return Err(Failure::usage("--box-width must be positive"));
    }
    let (theta_cells, l_cells) = (1usize << rows.len(), 1usize << cols.len());
    let box_grid = husimi(
        &state,
        &params,
        &HusimiConfig::new(Smoothing::Box { width: box_width }, theta_cells, l_cells),
    )?;
    let gauss_grid = husimi(&state, &params, &HusimiConfig::new(Smoothing::Gaussian, theta_cells, l_cells))?;
    render_grid(&box_grid, output(&args.out, &format!("husimi.box.{ext}")), args.format)?;
    render_grid(&gauss_grid, output(&args.out, &format!("husimi.gauss.{ext}")), args.format)?;

    let diagram = exact_diagram.expect("exact run always present");
    let default_layout = rows == (1..=args.nf).collect::<Vec<_>>()
        && cols == (args.nq - args.nf + 1..=args.nq).collect::<Vec<_>>();
    if default_layout {
        let sg = momentum_ordered(&diagram.probabilities());
        println!("correlation S(g) vs box Husimi: {:.4}", pearson(&sg, &box_grid));
    }
    println!("correlation box vs gaussian Husimi: {:.4}", pearson(&box_grid, &gauss_grid));
    Ok(())
}
