use std::cmp::Ordering;
use std::fmt;

/// A terminal word, held as symbol names.
///
/// Ordered canonically: shorter words first, then lexicographically by
/// symbol name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Self {
        Word(symbols.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Splits on whitespace when present, otherwise one symbol per character.
    /// `<eps>` and the empty string denote the empty word.
    pub fn parse(text: &str) -> Self {
        let text = text.trim();
        if text.is_empty() || text == crate::EPSILON {
            return Word::empty();
        }
        if text.contains(char::is_whitespace) {
            Word::new(text.split_whitespace())
        } else {
            Word(text.chars().map(String::from).collect())
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Single-character symbols are concatenated, longer names space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(crate::EPSILON);
        }
        let compact = self.0.iter().all(|s| s.chars().count() == 1);
        let sep = if compact { "" } else { " " };
        f.write_str(&self.0.join(sep))
    }
}
