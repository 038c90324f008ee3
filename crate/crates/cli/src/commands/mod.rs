pub mod reconstruct;
pub mod sawtooth;
pub mod spectrogram;
pub mod sweep;

use qsonus_core::measurement::MeasurementMode;
use qsonus_core::readout::Campaign;

/// Zero shots per frame is the infinite-measurement limit.
pub fn campaign(mode: MeasurementMode, shots_per_frame: u64) -> Campaign {
    if shots_per_frame == 0 {
        Campaign::exact()
    } else {
        Campaign::shots(mode, shots_per_frame)
    }
}
