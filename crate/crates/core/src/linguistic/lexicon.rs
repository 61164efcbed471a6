use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk form of a category dictionary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconFile {
    pub name: String,
    pub categories: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone)]
struct CategoryPatterns {
    name: String,
    literals: HashSet<String>,
    prefixes: Vec<String>,
}

impl CategoryPatterns {
    fn matches(&self, token: &str) -> bool {
        self.literals.contains(token) || self.prefixes.iter().any(|p| token.starts_with(p.as_str()))
    }
}

/// A LIWC-compatible category dictionary. Patterns are literal lowercase
/// tokens or prefixes ending in `*`.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub name: String,
    categories: Vec<CategoryPatterns>,
}

impl Lexicon {
    pub fn from_file(file: LexiconFile) -> Result<Self> {
        let mut categories = Vec::with_capacity(file.categories.len());
        for (name, patterns) in file.categories {
            if name.is_empty() {
                return Err(Error::Validation("lexicon category with empty name".into()));
            }
            if patterns.is_empty() {
                return Err(Error::Validation(format!(
                    "lexicon category {name:?} has no patterns"
                )));
            }
            let mut literals = HashSet::new();
            let mut prefixes = Vec::new();
            for p in patterns {
                let p = p.to_lowercase();
                let stars = p.matches('*').count();
                if p.is_empty() || p == "*" || stars > 1 || (stars == 1 && !p.ends_with('*')) {
                    return Err(Error::Validation(format!(
                        "lexicon category {name:?}: bad pattern {p:?}"
                    )));
                }
                match p.strip_suffix('*') {
                    Some(prefix) => prefixes.push(prefix.to_string()),
                    None => {
                        literals.insert(p);
                    }
                }
            }
            categories.push(CategoryPatterns {
                name,
                literals,
                prefixes,
            });
        }
        Ok(Self {
            name: file.name,
            categories,
        })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: LexiconFile =
            serde_json::from_str(json).map_err(|e| Error::format("lexicon", e))?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Category names in sorted order.
    pub fn category_names(&self) -> impl Iterator<Item = &str> {
        self.categories.iter().map(|c| c.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Indices (into [`Lexicon::category_names`]) of every category matching `token`.
    pub fn matching<'a>(&'a self, token: &'a str) -> impl Iterator<Item = usize> + 'a {
        self.categories
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.matches(token))
            .map(|(i, _)| i)
    }

    pub fn matches(&self, category: &str, token: &str) -> bool {
        self.categories
            .iter()
            .find(|c| c.name == category)
            .is_some_and(|c| c.matches(token))
    }
}

/// Word valences in `[-4, 4]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentLexicon {
    valences: HashMap<String, f64>,
}

impl SentimentLexicon {
    /// Parse `token<TAB>valence` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut valences = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (tok, val) = line.split_once('\t').ok_or_else(|| {
                Error::format(
                    "sentiment lexicon",
                    format!("line {}: expected token<TAB>valence", i + 1),
                )
            })?;
            let v: f64 = val.trim().parse().map_err(|_| {
                Error::format(
                    "sentiment lexicon",
                    format!("line {}: bad valence {val:?}", i + 1),
                )
            })?;
            if !(-4.0..=4.0).contains(&v) {
                return Err(Error::Validation(format!(
                    "sentiment lexicon line {}: valence {v} outside [-4, 4]",
                    i + 1
                )));
            }
            valences.insert(tok.trim().to_lowercase(), v);
        }
        Ok(Self { valences })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for SentimentLexicon {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        Self {
            valences: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Spelling dictionary used for the in-vocabulary proportion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary(HashSet<String>);

impl Dictionary {
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

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Dictionary {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_literal_patterns() {
        let lex = Lexicon::from_json(
            r#"{"name":"t","categories":{"posemo":["happi*","love"],"funct":["the"]}}"#,
        )
        .unwrap();
        assert!(lex.matches("posemo", "happiness"));
        assert!(lex.matches("posemo", "love"));
        assert!(!lex.matches("posemo", "lovely"));
        assert_eq!(
            lex.category_names().collect::<Vec<_>>(),
            ["funct", "posemo"]
        );
        assert_eq!(lex.matching("the").collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn bad_patterns_rejected() {
        for bad in [r#"["ha*ppy"]"#, r#"[]"#, r#"["*"]"#, r#"["a**"]"#] {
            let json = format!(r#"{{"name":"t","categories":{{"x":{bad}}}}}"#);
            assert!(Lexicon::from_json(&json).is_err(), "{bad}");
        }
    }

    #[test]
    fn sentiment_tsv() {
        let lex = SentimentLexicon::parse("# c\ngood\t1.9\nbad\t-2.5\n").unwrap();
        assert_eq!(lex.valence("good"), Some(1.9));
        assert_eq!(lex.valence("meh"), None);
        assert!(SentimentLexicon::parse("good 1").is_err());
        assert!(SentimentLexicon::parse("good\t9").is_err());
    }
}
