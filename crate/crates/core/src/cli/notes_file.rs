//! The notes-file format.
//!
//! A notes file is UTF-8 text: `#` lines are comments, whitespace is
//! insignificant, and one comment line must declare the raga as
//! `# raga: <name>`. Everything else is note symbols.

use crate::error::{Error, Result};
use crate::raga::{parse_notes, LevelSequence, NoteString, RagaRegistry};

const WRAP_COLUMNS: usize = 72;

/// Renders a note string with its raga header, wrapped for readability.
/// Parsing the result reproduces the input exactly.
pub fn render(notes: &NoteString) -> String {
    let mut out = format!("# raga: {}\n", notes.raga().name());
    let symbols: Vec<char> = notes.symbols().chars().collect();
    for chunk in symbols.chunks(WRAP_COLUMNS) {
        out.extend(chunk.iter());
        out.push('\n');
    }
    out
}

/// Extracts the declared raga name from the header comment, if any.
pub fn header_raga(text: &str) -> Option<String> {
    text.lines().find_map(|line| {
        let line = line.trim_start();
        let rest = line.strip_prefix('#')?.trim_start();
        let name = rest.strip_prefix("raga:")?.trim();
        (!name.is_empty()).then(|| name.to_string())
    })
}

/// Parses a notes file against its declared raga.
pub fn parse(text: &str, registry: &RagaRegistry) -> Result<LevelSequence> {
    let name = header_raga(text).ok_or(Error::MissingRagaHeader)?;
    let raga = registry.get(&name)?;
    parse_notes(text, &raga)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raga::builtin_raga;

    #[test]
    fn render_parse_round_trip() {
        let raga = builtin_raga("bhupali").unwrap();
        let levels: Vec<usize> = (0..200).map(|i| i % 7).collect();
        let ls = LevelSequence::new(raga, levels).unwrap();
        let text = render(&ls.to_notes());
        assert!(text.starts_with("# raga: bhupali\n"));
        let registry = RagaRegistry::with_builtins();
        assert_eq!(parse(&text, &registry).unwrap(), ls);
    }

    #[test]
    fn missing_header_is_an_error() {
        let registry = RagaRegistry::with_builtins();
        assert!(matches!(
            parse("SGBG\n", &registry),
            Err(Error::MissingRagaHeader)
        ));
    }

    #[test]
    fn unknown_declared_raga_is_an_error() {
        let registry = RagaRegistry::with_builtins();
        assert!(matches!(
            parse("# raga: ragamalika\nSS\n", &registry),
            Err(Error::UnknownRaga(_))
        ));
    }

    #[test]
    fn header_variants() {
        assert_eq!(header_raga("#raga:bhupali"), Some("bhupali".into()));
        assert_eq!(header_raga("#  raga:  kafi  "), Some("kafi".into()));
        assert_eq!(header_raga("# note: nothing"), None);
        assert_eq!(header_raga("SS"), None);
    }
}
