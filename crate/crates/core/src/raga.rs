//! Raga alphabets and symbolic quantization.
//!
//! A raga is an ordered alphabet of `n` single-character note symbols plus the
//! uniform threshold bins that quantize unit-interval values: bin `k` is the
//! half-open interval `[k/n, (k+1)/n)`, and 1.0 is assigned to the top bin.
//! Two ragas ship built in:
//!
//! * `bhairabi` — 9 levels `S r g M P d n C B` (seven fundamental notes plus
//!   the upper-octave Sa and a pause),
//! * `bhupali` — 7 levels `S R G P D C B` (pentatonic plus upper Sa and pause).
//!
//! Custom ragas can be registered from a two-line definition file: line 1 the
//! name, line 2 the alphabet as contiguous characters in bin order.

use std::sync::{Arc, OnceLock};

use crate::chaos::RealSequence;
use crate::error::{Error, Result};
use crate::float::Float;

/// An alphabet of note symbols with uniform quantization bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RagaSpec {
    name: String,
    alphabet: Vec<char>,
}

impl RagaSpec {
    /// Builds a spec after validating the alphabet: at least two symbols, all
    /// distinct (case-sensitive). Names are normalized to lowercase and may
    /// not contain whitespace.
    pub fn new(name: &str, alphabet: &str) -> Result<Self> {
        let name = name.trim().to_lowercase();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidRaga(format!(
                "name must be a single non-empty word (got {name:?})"
            )));
        }
        let alphabet: Vec<char> = alphabet.chars().collect();
        if alphabet.len() < 2 {
            return Err(Error::InvalidRaga(format!(
                "alphabet needs at least 2 symbols (got {})",
                alphabet.len()
            )));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if c.is_whitespace() || *c == '#' {
                return Err(Error::InvalidRaga(format!(
                    "symbol {c:?} is reserved or unprintable"
                )));
            }
            if alphabet[..i].contains(c) {
                return Err(Error::InvalidRaga(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Self { name, alphabet })
    }

    /// Parses the two-line raga definition format.
    pub fn from_definition(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let name = lines
            .next()
            .ok_or_else(|| Error::InvalidRaga("missing name line".into()))?;
        let alphabet = lines
            .next()
            .ok_or_else(|| Error::InvalidRaga("missing alphabet line".into()))?;
        if let Some(extra) = lines.next() {
            return Err(Error::InvalidRaga(format!(
                "unexpected extra line {extra:?}"
            )));
        }
        Self::new(name, alphabet)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn n_levels(&self) -> usize {
        self.alphabet.len()
    }

    /// The symbol for a level; panics if the level is out of range.
    pub fn symbol(&self, level: usize) -> char {
        self.alphabet[level]
    }

    pub fn level_of(&self, symbol: char) -> Option<usize> {
        self.alphabet.iter().position(|&c| c == symbol)
    }

    /// Midpoint amplitude of bin `level`: `(2k + 1) / (2n)`, strictly inside
    /// `(0, 1)` and therefore strictly positive.
    pub fn midpoint<F: Float>(&self, level: usize) -> F {
        F::from_f64((2 * level + 1) as f64 / (2 * self.n_levels()) as f64)
    }

    pub fn midpoints<F: Float>(&self) -> Vec<F> {
        (0..self.n_levels()).map(|k| self.midpoint(k)).collect()
    }
}

fn bhairabi() -> &'static Arc<RagaSpec> {
    static SPEC: OnceLock<Arc<RagaSpec>> = OnceLock::new();
    SPEC.get_or_init(|| Arc::new(RagaSpec::new("bhairabi", "SrgMPdnCB").unwrap()))
}

fn bhupali() -> &'static Arc<RagaSpec> {
    static SPEC: OnceLock<Arc<RagaSpec>> = OnceLock::new();
    SPEC.get_or_init(|| Arc::new(RagaSpec::new("bhupali", "SRGPDCB").unwrap()))
}

/// Looks up a built-in raga by (case-insensitive) name.
pub fn builtin_raga(name: &str) -> Result<Arc<RagaSpec>> {
    match name.to_lowercase().as_str() {
        "bhairabi" => Ok(bhairabi().clone()),
        "bhupali" => Ok(bhupali().clone()),
        other => Err(Error::UnknownRaga(other.to_string())),
    }
}

/// A set of known ragas: the built-ins plus any registered custom specs.
#[derive(Debug, Clone)]
pub struct RagaRegistry {
    ragas: Vec<Arc<RagaSpec>>,
}

impl Default for RagaRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl RagaRegistry {
    pub fn with_builtins() -> Self {
        Self {
            ragas: vec![bhairabi().clone(), bhupali().clone()],
        }
    }

    pub fn register(&mut self, spec: RagaSpec) -> Result<Arc<RagaSpec>> {
        if self.ragas.iter().any(|r| r.name() == spec.name()) {
            return Err(Error::DuplicateRaga(spec.name().to_string()));
        }
        let spec = Arc::new(spec);
        self.ragas.push(spec.clone());
        Ok(spec)
    }

    pub fn get(&self, name: &str) -> Result<Arc<RagaSpec>> {
        let name = name.to_lowercase();
        self.ragas
            .iter()
            .find(|r| r.name() == name)
            .cloned()
            .ok_or(Error::UnknownRaga(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<RagaSpec>> {
        self.ragas.iter()
    }
}

/// A composition as integer amplitude levels, each in `[0, n_levels - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSequence {
    raga: Arc<RagaSpec>,
    levels: Vec<usize>,
}

impl LevelSequence {
    pub fn new(raga: Arc<RagaSpec>, levels: Vec<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptySequence);
        }
        let n = raga.n_levels();
        if let Some(&level) = levels.iter().find(|&&l| l >= n) {
            return Err(Error::LevelOutOfRange {
                level,
                raga: raga.name().to_string(),
                n_levels: n,
            });
        }
        Ok(Self { raga, levels })
    }

    pub fn raga(&self) -> &Arc<RagaSpec> {
        &self.raga
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn to_notes(&self) -> NoteString {
        let symbols = self.levels.iter().map(|&l| self.raga.symbol(l)).collect();
        NoteString {
            raga: self.raga.clone(),
            symbols,
        }
    }
}

/// A composition as note symbols; bijective with [`LevelSequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoteString {
    raga: Arc<RagaSpec>,
    symbols: String,
}

impl NoteString {
    /// Validates that every character belongs to the raga alphabet. Unlike
    /// [`parse_notes`] this accepts no whitespace or comments.
    pub fn new(raga: Arc<RagaSpec>, symbols: &str) -> Result<Self> {
        let ls = parse_symbols(symbols.chars(), &raga)?;
        Ok(Self {
            raga,
            symbols: ls
                .levels
                .iter()
                .map(|&l| ls.raga.symbol(l))
                .collect::<String>(),
        })
    }

    pub fn raga(&self) -> &Arc<RagaSpec> {
        &self.raga
    }

    pub fn symbols(&self) -> &str {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn to_levels(&self) -> LevelSequence {
        let levels = self
            .symbols
            .chars()
            .map(|c| self.raga.level_of(c).expect("symbols match the alphabet"))
            .collect();
        LevelSequence {
            raga: self.raga.clone(),
            levels,
        }
    }
}

#[inline]
pub(crate) fn quantize_unchecked<F: Float>(value: F, n_levels: usize) -> usize {
    let scaled = (value * F::from_usize(n_levels)).floor().into_f64() as usize;
    scaled.min(n_levels - 1)
}

/// Maps a value in `[0, 1]` to its bin index `floor(value * n)`, with 1.0
/// clamped into the top bin.
pub fn quantize<F: Float>(value: F, raga: &RagaSpec) -> Result<usize> {
    if !(value >= F::zero() && value <= F::one()) {
        return Err(Error::ValueOutOfRange(value.into_f64()));
    }
    Ok(quantize_unchecked(value, raga.n_levels()))
}

/// Quantizes every sample of a sequence into a note string.
pub fn encode<F: Float>(seq: &RealSequence<F>, raga: &Arc<RagaSpec>) -> NoteString {
    let n = raga.n_levels();
    let symbols = seq
        .values()
        .iter()
        .map(|&v| raga.symbol(quantize_unchecked(v, n)))
        .collect();
    NoteString {
        raga: raga.clone(),
        symbols,
    }
}

/// Amplitude sequence for correlation: each level contributes its bin
/// midpoint, so every output is strictly positive.
pub fn decode_amplitudes<F: Float>(ls: &LevelSequence) -> RealSequence<F> {
    let values = ls.levels().iter().map(|&l| ls.raga().midpoint(l)).collect();
    RealSequence::new(values).expect("midpoints lie strictly inside (0, 1)")
}

fn parse_symbols(chars: impl Iterator<Item = char>, raga: &Arc<RagaSpec>) -> Result<LevelSequence> {
    let mut levels = Vec::new();
    let mut position = 0usize;
    for c in chars {
        position += 1;
        match raga.level_of(c) {
            Some(level) => levels.push(level),
            None => {
                return Err(Error::IllegalSymbol {
                    symbol: c,
                    position,
                })
            }
        }
    }
    LevelSequence::new(raga.clone(), levels)
}

/// Parses note text: whitespace is skipped, lines whose first non-blank
/// character is `#` are comments, and every other character must belong to
/// the raga alphabet (case-sensitive). Positions in errors are 1-based
/// ordinals over the symbol characters actually consumed.
pub fn parse_notes(text: &str, raga: &Arc<RagaSpec>) -> Result<LevelSequence> {
    let symbols = text
        .lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .flat_map(|line| line.chars())
        .filter(|c| !c.is_whitespace());
    parse_symbols(symbols, raga)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::{iterate, LogisticParams};
    use rand::{Rng, SeedableRng};

    #[test]
    fn builtin_alphabets_match_published_tables() {
        let bhairabi = builtin_raga("bhairabi").unwrap();
        assert_eq!(bhairabi.n_levels(), 9);
        assert_eq!(
            bhairabi.alphabet(),
            &['S', 'r', 'g', 'M', 'P', 'd', 'n', 'C', 'B']
        );
        assert_eq!(bhairabi.symbol(4), 'P');

        let bhupali = builtin_raga("bhupali").unwrap();
        assert_eq!(bhupali.n_levels(), 7);
        assert_eq!(bhupali.alphabet(), &['S', 'R', 'G', 'P', 'D', 'C', 'B']);
        assert_eq!(bhupali.symbol(6), 'B');
    }

    #[test]
    fn unknown_raga_is_an_error() {
        assert!(matches!(
            builtin_raga("ragamalika"),
            Err(Error::UnknownRaga(name)) if name == "ragamalika"
        ));
    }

    #[test]
    fn quantize_examples() {
        let bhairabi = builtin_raga("bhairabi").unwrap();
        let bhupali = builtin_raga("bhupali").unwrap();
        assert_eq!(quantize(0.05, &bhairabi).unwrap(), 0);
        assert_eq!(quantize(0.5, &bhairabi).unwrap(), 4);
        assert_eq!(bhairabi.symbol(quantize(0.5, &bhairabi).unwrap()), 'P');
        // The closest double to 1/7 scales back to exactly 1.0, so the
        // half-open convention puts it in bin 1.
        assert_eq!(quantize(1.0 / 7.0, &bhupali).unwrap(), 1);
        assert_eq!(quantize(1.0, &bhupali).unwrap(), 6);
        assert_eq!(quantize(0.0, &bhupali).unwrap(), 0);
    }

    #[test]
    fn quantize_rejects_out_of_range() {
        let bhupali = builtin_raga("bhupali").unwrap();
        assert!(matches!(
            quantize(-0.1, &bhupali),
            Err(Error::ValueOutOfRange(_))
        ));
        assert!(matches!(
            quantize(1.1, &bhupali),
            Err(Error::ValueOutOfRange(_))
        ));
        assert!(matches!(
            quantize(f64::NAN, &bhupali),
            Err(Error::ValueOutOfRange(_))
        ));
    }

    #[test]
    fn quantize_partitions_the_unit_interval() {
        // 10^6 uniform draws: the bin is floor(v * n) exactly (v < 1 here).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let bhairabi = builtin_raga("bhairabi").unwrap();
        let bhupali = builtin_raga("bhupali").unwrap();
        for _ in 0..1_000_000 {
            let v: f64 = rng.gen();
            for raga in [&bhairabi, &bhupali] {
                let n = raga.n_levels();
                assert_eq!(quantize(v, raga).unwrap(), (v * n as f64).floor() as usize);
            }
        }
    }

    #[test]
    fn encode_published_prefixes() {
        let bhupali = builtin_raga("bhupali").unwrap();
        let seq = iterate(&LogisticParams::new(3.99, 0.1, 12).unwrap());
        assert_eq!(encode(&seq, &bhupali).symbols(), "SGBGCPBSRPBS");

        let seq = iterate(&LogisticParams::new(3.95, 0.3, 6).unwrap());
        assert_eq!(encode(&seq, &bhupali).symbols(), "GCPBSG");
    }

    #[test]
    fn encode_constant_sequence() {
        let bhairabi = builtin_raga("bhairabi").unwrap();
        let seq = RealSequence::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(encode(&seq, &bhairabi).symbols(), "PP");
    }

    #[test]
    fn encode_preserves_length() {
        let bhupali = builtin_raga("bhupali").unwrap();
        let seq = iterate(&LogisticParams::new(3.7, 0.4, 257).unwrap());
        assert_eq!(encode(&seq, &bhupali).len(), 257);
    }

    #[test]
    fn decode_midpoints() {
        let bhupali = builtin_raga("bhupali").unwrap();
        let bhairabi = builtin_raga("bhairabi").unwrap();
        let ls = LevelSequence::new(bhupali, vec![0]).unwrap();
        assert_eq!(decode_amplitudes::<f64>(&ls).values(), &[1.0 / 14.0]);
        let ls = LevelSequence::new(bhairabi, vec![8]).unwrap();
        assert_eq!(decode_amplitudes::<f64>(&ls).values(), &[17.0 / 18.0]);
    }

    #[test]
    fn decode_outputs_strictly_positive() {
        let bhupali = builtin_raga("bhupali").unwrap();
        let ls = LevelSequence::new(bhupali, (0..7).collect()).unwrap();
        for &v in decode_amplitudes::<f64>(&ls).values() {
            assert!(v > 0.0 && v < 1.0);
        }
    }

    #[test]
    fn parse_notes_examples() {
        let bhupali = builtin_raga("bhupali").unwrap();
        assert_eq!(
            parse_notes("SGB G", &bhupali).unwrap().levels(),
            &[0, 2, 6, 2]
        );
        assert_eq!(parse_notes("# comment\nSS", &bhupali).unwrap().levels(), &[0, 0]);
        assert!(matches!(
            parse_notes("SXZ", &bhupali),
            Err(Error::IllegalSymbol {
                symbol: 'X',
                position: 2
            })
        ));
        assert!(matches!(
            parse_notes("", &bhupali),
            Err(Error::EmptySequence)
        ));
        assert!(matches!(
            parse_notes("# only comments\n", &bhupali),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn parsing_is_case_sensitive() {
        let bhairabi = builtin_raga("bhairabi").unwrap();
        // 'R' is a Bhairabi table typo; the canonical symbol is lowercase 'r'.
        assert!(parse_notes("r", &bhairabi).is_ok());
        assert!(matches!(
            parse_notes("R", &bhairabi),
            Err(Error::IllegalSymbol { symbol: 'R', .. })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            RagaSpec::new("x", "S"),
            Err(Error::InvalidRaga(_))
        ));
        assert!(matches!(
            RagaSpec::new("x", "SS"),
            Err(Error::InvalidRaga(_))
        ));
        assert!(matches!(
            RagaSpec::new("two words", "SR"),
            Err(Error::InvalidRaga(_))
        ));
        let spec = RagaSpec::new("Kafi", "SRgMPDn").unwrap();
        assert_eq!(spec.name(), "kafi");
        assert_eq!(spec.n_levels(), 7);
    }

    #[test]
    fn definition_file_round_trip() {
        let spec = RagaSpec::from_definition("# custom\nkafi\nSRgMPDn\n").unwrap();
        assert_eq!(spec.name(), "kafi");
        assert!(matches!(
            RagaSpec::from_definition("kafi\n"),
            Err(Error::InvalidRaga(_))
        ));
        assert!(matches!(
            RagaSpec::from_definition("kafi\nSRg\nextra"),
            Err(Error::InvalidRaga(_))
        ));
    }

    #[test]
    fn registry_tracks_custom_ragas() {
        let mut reg = RagaRegistry::with_builtins();
        assert_eq!(reg.iter().count(), 2);
        assert!(reg.get("bhupali").is_ok());
        assert!(reg.get("kafi").is_err());
        reg.register(RagaSpec::new("kafi", "SRgMPDn").unwrap()).unwrap();
        assert_eq!(reg.iter().count(), 3);
        assert!(reg.get("kafi").is_ok());
        assert!(matches!(
            reg.register(RagaSpec::new("kafi", "AB").unwrap()),
            Err(Error::DuplicateRaga(_))
        ));
    }

    #[test]
    fn level_sequence_validates_range() {
        let bhupali = builtin_raga("bhupali").unwrap();
        assert!(matches!(
            LevelSequence::new(bhupali.clone(), vec![]),
            Err(Error::EmptySequence)
        ));
        assert!(matches!(
            LevelSequence::new(bhupali, vec![0, 7]),
            Err(Error::LevelOutOfRange { level: 7, .. })
        ));
    }

    #[test]
    fn note_string_round_trips_levels() {
        let bhupali = builtin_raga("bhupali").unwrap();
        let ls = LevelSequence::new(bhupali.clone(), vec![0, 2, 6, 2]).unwrap();
        let notes = ls.to_notes();
        assert_eq!(notes.symbols(), "SGBG");
        assert_eq!(notes.to_levels(), ls);
        assert!(NoteString::new(bhupali, "SG B").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        fn arb_raga() -> impl Strategy<Value = Arc<RagaSpec>> {
            prop_oneof![
                Just(builtin_raga("bhairabi").unwrap()),
                Just(builtin_raga("bhupali").unwrap()),
            ]
        }

        proptest! {
            #[test]
            fn quantize_is_monotone(raga in arb_raga(), a in 0.0_f64..=1.0, b in 0.0_f64..=1.0) {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                prop_assert!(quantize(lo, &raga).unwrap() <= quantize(hi, &raga).unwrap());
            }

            #[test]
            fn encode_decode_round_trip(raga in arb_raga(), seed in any::<u64>(), len in 1_usize..200) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let n = raga.n_levels();
                let levels: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
                let ls = LevelSequence::new(raga.clone(), levels).unwrap();
                let decoded = decode_amplitudes::<f64>(&ls);
                prop_assert_eq!(encode(&decoded, &raga).to_levels(), ls);
            }

            #[test]
            fn parse_render_round_trip(raga in arb_raga(), seed in any::<u64>(), len in 1_usize..200) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let n = raga.n_levels();
                let levels: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
                let ls = LevelSequence::new(raga.clone(), levels).unwrap();
                let text = ls.to_notes().symbols().to_string();
                prop_assert_eq!(parse_notes(&text, &raga).unwrap(), ls);
            }
        }
    }
}
