//! `qsonus`: encode audio into a simulated register, read it back through
//! framewise QFT and finite measurement, and render the quantum sawtooth map.

mod commands;
mod exit;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{reconstruct, sawtooth, spectrogram, sweep};

#[derive(Parser, Debug)]
#[command(name = "qsonus", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Time-domain and spectral reconstructions of a signal, plus their fidelities.
    Reconstruct(reconstruct::Args),
    /// Coarse-grained spectrum diagrams of the original and reconstructed signals.
    Spectrogram(spectrogram::Args),
    /// Fidelity sweep over shot budgets and gate-noise amplitudes.
    Sweep(sweep::Args),
    /// Quantum sawtooth map: sound, spectrum diagrams and Husimi portraits.
    Sawtooth(sawtooth::Args),
}

fn configure_threads() -> Result<(), exit::Failure> {
    let Ok(raw) = std::env::var("QSONUS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| exit::Failure::usage(format!("QSONUS_THREADS=`{raw}` is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| exit::Failure::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Reconstruct(a) => reconstruct::run(&a),
        Command::Spectrogram(a) => spectrogram::run(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::Sawtooth(a) => sawtooth::run(&a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qsonus: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
