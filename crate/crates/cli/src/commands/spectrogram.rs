use std::path::PathBuf;

use qsonus_core::audio::{encode, encode_samples};
use qsonus_core::coarse::{coarse_diagram, pearson, CoarseGrid, Shots};
use qsonus_core::measurement::MeasurementMode;
use qsonus_core::qft::qft_low_qubits;
use qsonus_core::readout::{run_readout, ReadoutRegistry};
use qsonus_core::render::{render_grid, ImageFormat};
use qsonus_core::sweep::stream_id;
use qsonus_core::{FramePlan, GateNoise, StateVector};

use super::campaign;
use crate::exit::{Failure, Outcome};
use crate::input::{output, parse_list, NoiseArgs, SignalArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Gate-angle fluctuation amplitude for the noisy spectral panel.
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "noise-dist", default_value = "gaussian")]
    pub noise_dist: qsonus_core::AngleDistribution,
    /// Measurements per frame M for the reconstructions and sampled diagrams.
    #[arg(long = "shots-per-frame", default_value_t = 5)]
    pub shots_per_frame: u64,
    #[arg(long, default_value = "total")]
    pub mode: MeasurementMode,
    /// Measured qubits along the diagram rows (1 = most significant).
    #[arg(long = "row-qubits", default_value = "1,2,3,4")]
    pub row_qubits: String,
    /// Measured qubits along the diagram columns.
    #[arg(long = "col-qubits", default_value = "10,11,12,13")]
    pub col_qubits: String,
    #[arg(long, default_value = "ppm")]
    pub format: ImageFormat,
    /// Output prefix.
    #[arg(long)]
    pub out: PathBuf,
}

fn extension(format: ImageFormat) -> &'static str {
    match format {
        ImageFormat::Ppm => "ppm",
        ImageFormat::Pgm => "pgm",
        ImageFormat::Csv => "csv",
    }
}

pub fn run(args: &Args) -> Outcome {
    let noise_args = NoiseArgs {
        epsilon: args.epsilon,
        seed: args.seed,
        noise_dist: args.noise_dist,
    };
    let loaded = args.signal.load(args.seed)?;
    let n_q = loaded.n_q;
    let frames = FramePlan::new(n_q, args.signal.nf)?;
    let rows: Vec<usize> = parse_list("--row-qubits", &args.row_qubits)?;
    let cols: Vec<usize> = parse_list("--col-qubits", &args.col_qubits)?;
    if let Some(q) = rows.iter().chain(&cols).find(|&&q| q == 0 || q > n_q) {
        return Err(Failure::size(format!("qubit {q} outside 1..={n_q}")));
    }
    let encoded = encode(&loaded.signal, n_q)?;
    let registry = ReadoutRegistry::builtin();
    let shots = campaign(args.mode, args.shots_per_frame);
    let diagram_shots = if args.shots_per_frame == 0 {
        Shots::Exact
    } else {
        Shots::Count(args.shots_per_frame * frames.frame_count() as u64)
    };

    // Panel states, each framewise transformed before the coarse measurement.
    let spectral_state = |state: &StateVector| -> Result<StateVector, Failure> {
        let mut s = state.clone();
        qft_low_qubits(&mut s, &frames, &mut GateNoise::exact())?;
        Ok(s)
    };
    let reconstructed = |name: &str, p: usize, eps: f64| -> Result<StateVector, Failure> {
        let readout = registry.get(name)?;
        let noise = noise_args.model(eps, stream_id(p, 0))?;
        let (_, wave) = run_readout(readout.as_ref(), &encoded, &frames, shots, &noise)?;
        spectral_state(&encode_samples(&wave, n_q)?)
    };
    let panels = [
        ("original", spectral_state(&encoded)?),
        ("spectral", reconstructed("spectral", 0, 0.0)?),
        ("spectral-noisy", reconstructed("spectral", 0, args.epsilon)?),
        ("time", reconstructed("time", 1, 0.0)?),
    ];

    let ext = extension(args.format);
    let mut reference: Option<CoarseGrid> = None;
    for (i, (name, state)) in panels.iter().enumerate() {
        let mut rng = noise_args.model(0.0, 1000 + i as u64)?.shots();
        let exact = coarse_diagram(state, &rows, &cols, Shots::Exact, &mut rng)?;
        let sampled = coarse_diagram(state, &rows, &cols, diagram_shots, &mut rng)?;
        for (kind, grid) in [("exact", &exact), ("sampled", &sampled)] {
            render_grid(&grid.grid, output(&args.out, &format!("{name}.{kind}.{ext}")), args.format)?;
        }
        let reference = reference.get_or_insert_with(|| exact.clone());
        println!(
            "{name:>14}: correlation with original {:.4} (exact), {:.4} (sampled)",
            pearson(&reference.grid, &exact.grid),
            pearson(&reference.grid, &sampled.grid)
        );
    }
    println!("wrote {}.*.{ext}", args.out.display());
    Ok(())
}
