//! Sine-tone rendering of note strings to 16-bit mono PCM.

use std::f64::consts::TAU;
use std::io::Cursor;

use crate::error::{Error, Result};
use crate::raga::LevelSequence;

use super::pitch::PitchMap;

pub const SAMPLE_RATE: u32 = 44_100;
const FADE_MS: u32 = 5;
const PEAK: f64 = 0.8;

/// One fixed-duration tone per symbol (silence for rests), with a linear
/// fade at both tone edges to avoid clicks.
pub fn render_pcm(
    ls: &LevelSequence,
    map: &PitchMap,
    sa_hz: f64,
    note_ms: u32,
) -> Result<Vec<i16>> {
    if !(sa_hz.is_finite() && sa_hz > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tonic frequency must be positive (got {sa_hz})"
        )));
    }
    if note_ms == 0 {
        return Err(Error::InvalidConfig("note duration must be nonzero".into()));
    }
    if map.n_levels() < ls.raga().n_levels() {
        return Err(Error::InvalidConfig(format!(
            "pitch map covers {} levels but raga {:?} has {}",
            map.n_levels(),
            ls.raga().name(),
            ls.raga().n_levels()
        )));
    }
    let note_samples = (SAMPLE_RATE as u64 * note_ms as u64 / 1000) as usize;
    let fade_samples = ((SAMPLE_RATE as u64 * FADE_MS as u64 / 1000) as usize)
        .min(note_samples / 2)
        .max(1);
    let mut pcm = Vec::with_capacity(note_samples * ls.len());
    for &level in ls.levels() {
        match map.frequency(level, sa_hz) {
            None => pcm.extend(std::iter::repeat(0i16).take(note_samples)),
            Some(freq) => {
                for i in 0..note_samples {
                    let t = i as f64 / SAMPLE_RATE as f64;
                    let fade_in = (i + 1) as f64 / fade_samples as f64;
                    let fade_out = (note_samples - i) as f64 / fade_samples as f64;
                    let gain = fade_in.min(fade_out).min(1.0);
                    let v = PEAK * gain * (TAU * freq * t).sin();
                    pcm.push((v * i16::MAX as f64).round() as i16);
                }
            }
        }
    }
    Ok(pcm)
}

/// Wraps samples in a WAV container (PCM, mono, 16-bit, 44100 Hz).
pub fn wav_bytes(samples: &[i16]) -> Vec<u8> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: SAMPLE_RATE,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut cursor = Cursor::new(Vec::new());
    {
        let mut writer = hound::WavWriter::new(&mut cursor, spec).expect("in-memory wav");
        for &s in samples {
            writer.write_sample(s).expect("in-memory wav");
        }
        writer.finalize().expect("in-memory wav");
    }
    cursor.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raga::{builtin_raga, parse_notes};

    fn pcm_for(symbols: &str, sa_hz: f64) -> Vec<i16> {
        let raga = builtin_raga("bhupali").unwrap();
        let ls = parse_notes(symbols, &raga).unwrap();
        let map = PitchMap::builtin(&raga).unwrap();
        render_pcm(&ls, &map, sa_hz, 200).unwrap()
    }

    fn zero_crossings(samples: &[i16]) -> usize {
        samples
            .windows(2)
            .filter(|w| (w[0] >= 0) != (w[1] >= 0))
            .count()
    }

    #[test]
    fn one_tone_per_symbol() {
        let pcm = pcm_for("S", 240.0);
        assert_eq!(pcm.len(), 8820);
        assert!(pcm.iter().any(|&s| s != 0));
        // 240 Hz for 200 ms: ~96 zero crossings.
        let zc = zero_crossings(&pcm);
        assert!((92..=100).contains(&zc), "zero crossings {zc}");
    }

    #[test]
    fn pause_is_silence() {
        let pcm = pcm_for("B", 240.0);
        assert_eq!(pcm.len(), 8820);
        assert!(pcm.iter().all(|&s| s == 0));
    }

    #[test]
    fn octave_doubles_the_frequency() {
        let pcm = pcm_for("SC", 240.0);
        let first = zero_crossings(&pcm[..8820]);
        let second = zero_crossings(&pcm[8820..]);
        assert!((188..=196).contains(&second), "zero crossings {second}");
        assert!(second > first * 19 / 10);
    }

    #[test]
    fn fades_tame_the_edges() {
        let pcm = pcm_for("S", 240.0);
        let peak = pcm.iter().map(|&s| s.unsigned_abs()).max().unwrap() as f64;
        let edge = pcm[..44]
            .iter()
            .chain(&pcm[pcm.len() - 44..])
            .map(|&s| s.unsigned_abs())
            .max()
            .unwrap() as f64;
        assert!(edge < peak * 0.3, "edge {edge} vs peak {peak}");
    }

    #[test]
    fn wav_container_shape() {
        let pcm = pcm_for("S", 240.0);
        let bytes = wav_bytes(&pcm);
        assert_eq!(&bytes[..4], b"RIFF");
        assert_eq!(&bytes[8..12], b"WAVE");
        assert_eq!(bytes.len(), 44 + 2 * pcm.len());
    }

    #[test]
    fn bad_tonic_is_rejected() {
        let raga = builtin_raga("bhupali").unwrap();
        let ls = parse_notes("S", &raga).unwrap();
        let map = PitchMap::builtin(&raga).unwrap();
        assert!(render_pcm(&ls, &map, 0.0, 200).is_err());
        assert!(render_pcm(&ls, &map, f64::NAN, 200).is_err());
        assert!(render_pcm(&ls, &map, 240.0, 0).is_err());
    }
}
