use std::fs::File;
use std::path::PathBuf;

use qsonus_core::audio::{encode, save_wav, PcmSignal};
use qsonus_core::measurement::MeasurementMode;
use qsonus_core::metrics::fidelity;
use qsonus_core::readout::{ideal_waveform, run_readout, ReadoutRegistry};
use qsonus_core::sweep::stream_id;
use qsonus_core::FramePlan;

use super::campaign;
use crate::exit::Outcome;
use crate::input::{output, parse_list, NoiseArgs, SignalArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub signal: SignalArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Measurements per frame M; 0 uses exact probabilities.
    #[arg(long = "shots-per-frame", default_value_t = 5)]
    pub shots_per_frame: u64,
    #[arg(long, default_value = "total")]
    pub mode: MeasurementMode,
    /// Comma-separated readouts to run (default: all registered).
    #[arg(long)]
    pub readouts: Option<String>,
    /// Output prefix.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &Args) -> Outcome {
    let loaded = args.signal.load(args.noise.seed)?;
    let frames = FramePlan::new(loaded.n_q, args.signal.nf)?;
    let encoded = encode(&loaded.signal, loaded.n_q)?;
    let registry = ReadoutRegistry::builtin();
    let names: Vec<String> = match &args.readouts {
        Some(raw) => parse_list("--readouts", raw)?,
        None => registry.names().iter().map(|s| s.to_string()).collect(),
    };
    let len = loaded.signal.len();
    let rate = loaded.signal.rate();
    let mut original = loaded.signal.samples().to_vec();
    original.resize(frames.len(), 0.0);

    let csv_path = output(&args.out, "fidelity.csv");
    let mut csv = csv::Writer::from_writer(File::create(&csv_path)?);
    csv.write_record(["pipeline", "M", "epsilon", "seed", "fidelity_ideal", "fidelity_original"])
        .map_err(qsonus_core::Error::from)?;

    for (p, name) in names.iter().enumerate() {
        let readout = registry.get(name)?;
        let noise = args.noise.model(args.noise.epsilon, stream_id(p, 0))?;
        let (_, wave) = run_readout(
            readout.as_ref(),
            &encoded,
            &frames,
            campaign(args.mode, args.shots_per_frame),
            &noise,
        )?;
        let ideal = ideal_waveform(readout.as_ref(), &encoded, &frames)?;
        let f_ideal = fidelity(&ideal, &wave)?;
        let f_orig = fidelity(&original, &wave)?;
        let pcm = PcmSignal::for_playback(wave[..len].to_vec(), rate)?;
        let wav_path = output(&args.out, &format!("{name}.wav"));
        save_wav(&pcm, &wav_path)?;
        csv.write_record([
            name.clone(),
            args.shots_per_frame.to_string(),
            args.noise.epsilon.to_string(),
            args.noise.seed.to_string(),
            f_ideal.to_string(),
            f_orig.to_string(),
        ])
        .map_err(qsonus_core::Error::from)?;
        println!(
            "{name:>9}: fidelity {f_ideal:.4} vs ideal, {f_orig:.4} vs original -> {}",
            wav_path.display()
        );
    }
    csv.flush()?;
    println!("wrote {}", csv_path.display());
    Ok(())
}
