//! Pitch maps for audio rendering: 12-tone equal temperament offsets from
//! the tonic Sa, with the pause symbol mapped to a rest.

use crate::raga::RagaSpec;

pub const DEFAULT_SA_HZ: f64 = 240.0;
pub const DEFAULT_NOTE_MS: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pitch {
    Semitones(i32),
    Rest,
}

/// Per-level pitch assignment for one raga.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PitchMap {
    steps: Vec<Pitch>,
}

impl PitchMap {
    pub fn new(steps: Vec<Pitch>) -> Self {
        Self { steps }
    }

    /// Conventional scale degrees for the bundled ragas; `None` for custom
    /// ragas, which have no default pitch assignment.
    pub fn builtin(raga: &RagaSpec) -> Option<Self> {
        use Pitch::{Rest, Semitones};
        let steps = match raga.name() {
            // S r g M P d n C B
            "bhairabi" => vec![
                Semitones(0),
                Semitones(1),
                Semitones(3),
                Semitones(5),
                Semitones(7),
                Semitones(8),
                Semitones(10),
                Semitones(12),
                Rest,
            ],
            // S R G P D C B
            "bhupali" => vec![
                Semitones(0),
                Semitones(2),
                Semitones(4),
                Semitones(7),
                Semitones(9),
                Semitones(12),
                Rest,
            ],
            _ => return None,
        };
        debug_assert_eq!(steps.len(), raga.n_levels());
        Some(Self { steps })
    }

    pub fn n_levels(&self) -> usize {
        self.steps.len()
    }

    /// Frequency for a level (`sa_hz * 2^(semitones / 12)`), or `None` for a
    /// rest. Panics if the level is outside the map.
    pub fn frequency(&self, level: usize, sa_hz: f64) -> Option<f64> {
        match self.steps[level] {
            Pitch::Rest => None,
            Pitch::Semitones(s) => Some(sa_hz * (s as f64 / 12.0).exp2()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raga::builtin_raga;

    #[test]
    fn builtins_cover_their_alphabets() {
        for name in ["bhairabi", "bhupali"] {
            let raga = builtin_raga(name).unwrap();
            let map = PitchMap::builtin(&raga).unwrap();
            assert_eq!(map.n_levels(), raga.n_levels());
        }
    }

    #[test]
    fn tonic_octave_and_rest() {
        let raga = builtin_raga("bhupali").unwrap();
        let map = PitchMap::builtin(&raga).unwrap();
        assert_eq!(map.frequency(0, 240.0), Some(240.0));
        // 'C' is the upper-octave Sa: exactly twice the tonic.
        let c = map.frequency(5, 240.0).unwrap();
        assert!((c - 480.0).abs() < 1e-9);
        assert_eq!(map.frequency(6, 240.0), None);
    }

    #[test]
    fn custom_raga_has_no_builtin_map() {
        let spec = RagaSpec::new("kafi", "SRgMPDn").unwrap();
        assert!(PitchMap::builtin(&spec).is_none());
    }
}
