//! Tweet text cleaning, tokenization and stopword handling.

use std::collections::HashSet;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;

use super::porter::porter_stem;
use crate::error::{Error, Result};

static URL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)https?://\S*").unwrap());

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");

/// A set of lowercase tokens dropped during preprocessing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One token per line; blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Self {
        Self(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for StopWords {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

/// Cleaning steps 1-5: URLs, non-ASCII, ellipses, `# @ { }`, lowercase.
///
/// Ellipses are replaced by a space so that `wait...what` still yields two tokens.
pub fn clean_text(raw: &str) -> String {
    let no_urls = URL.replace_all(raw, " ");
    let ascii: String = no_urls
        .replace('\u{2026}', " ")
        .chars()
        .filter(char::is_ascii)
        .collect();
    ascii
        .replace("...", " ")
        .chars()
        .filter(|c| !matches!(c, '#' | '@' | '{' | '}'))
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Split cleaned text into maximal runs of ASCII alphanumerics.
pub fn tokenize(cleaned: &str) -> Vec<String> {
    cleaned
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Cleaning plus tokenization, with no stopword removal or stemming.
pub fn normalize_tokens(raw: &str) -> Vec<String> {
    tokenize(&clean_text(raw))
}

/// Cleaning and tokenization followed by stopword removal, without stemming.
pub fn content_tokens(raw: &str, stopwords: &StopWords) -> Vec<String> {
    normalize_tokens(raw)
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

/// The full preprocessing pipeline: clean, tokenize, drop stopwords, stem.
///
/// A stem that itself lands on a stopword (`abouts` -> `about`) is dropped as well.
pub fn preprocess_text(raw: &str, stopwords: &StopWords) -> Vec<String> {
    content_tokens(raw, stopwords)
        .iter()
        .map(|t| porter_stem(t))
        .filter(|t| !stopwords.contains(t))
        .collect()
}

/// Tokenized sentences of one text, split on `.`, `!` and `?`; empty sentences dropped.
pub fn sentences(raw: &str) -> Vec<Vec<String>> {
    clean_text(raw)
        .split(['.', '!', '?'])
        .map(tokenize)
        .filter(|s| !s.is_empty())
        .collect()
}
