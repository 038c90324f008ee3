//! Mono 16-bit PCM RIFF/WAVE reading and writing.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::PcmSignal;
use crate::error::{Error, Result};

/// Largest sample magnitude written; keeps quantized values inside (-1, 1).
pub const CLIP: f64 = 0.999969;

fn format_err(chunk: &str, reason: impl Into<String>) -> Error {
    Error::Format {
        chunk: chunk.to_string(),
        reason: reason.into(),
    }
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<PcmSignal> {
    let bytes = fs::read(path)?;
    parse_wav(&bytes)
}

pub fn parse_wav(bytes: &[u8]) -> Result<PcmSignal> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" {
        return Err(format_err("RIFF", "missing RIFF header"));
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(format_err("RIFF", "form type is not WAVE"));
    }
    let mut rate = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let name = String::from_utf8_lossy(id).into_owned();
        let body_end = body_start
            .checked_add(size)
            .filter(|&end| end <= bytes.len())
            .ok_or_else(|| format_err(&name, "chunk runs past end of file"))?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(format_err("fmt ", "chunk shorter than 16 bytes"));
                }
                let format = u16::from_le_bytes([body[0], body[1]]);
                let channels = u16::from_le_bytes([body[2], body[3]]);
                let sample_rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes([body[14], body[15]]);
                if format != 1 {
                    return Err(format_err("fmt ", format!("audio format {format} is not PCM (1)")));
                }
                if channels != 1 {
                    return Err(format_err("fmt ", format!("{channels} channels, expected mono")));
                }
                if bits != 16 {
                    return Err(format_err("fmt ", format!("{bits} bits per sample, expected 16")));
                }
                if sample_rate == 0 {
                    return Err(format_err("fmt ", "sample rate is zero"));
                }
                rate = Some(sample_rate);
            }
            b"data" => {
                let rate = rate.ok_or_else(|| format_err("data", "data chunk before fmt chunk"))?;
                if !body.len().is_multiple_of(2) {
                    return Err(format_err("data", "odd byte count for 16-bit samples"));
                }
                let samples: Vec<f64> = body
                    .chunks_exact(2)
                    .map(|b| i16::from_le_bytes([b[0], b[1]]) as f64 / 32768.0)
                    .collect();
                if samples.is_empty() {
                    return Err(format_err("data", "no samples"));
                }
                return PcmSignal::from_raw(samples, rate);
            }
            _ => {}
        }
        // chunks are word aligned
        pos = body_end + (size & 1);
    }
    Err(format_err("data", "no data chunk"))
}

/// Quantizes a sample to PCM16 after clipping to `±CLIP`.
pub fn quantize(x: f64) -> i16 {
    let clipped = x.clamp(-CLIP, CLIP);
    (clipped * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

pub fn encode_wav(signal: &PcmSignal) -> Vec<u8> {
    let data_len = signal.samples().len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&signal.rate().to_le_bytes());
    out.extend_from_slice(&(signal.rate() * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in signal.samples() {
        out.extend_from_slice(&quantize(s).to_le_bytes());
    }
    out
}

pub fn save_wav(signal: &PcmSignal, path: impl AsRef<Path>) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode_wav(signal))?;
    Ok(())
}
