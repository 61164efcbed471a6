//! Per-celebrity linguistic features.
//!
//! Every feature is computed over the tweets a celebrity authored. Token
//! streams differ by feature:
//!
//! | feature              | tokens                                   |
//! |----------------------|------------------------------------------|
//! | category density     | cleaned + tokenized, per tweet            |
//! | in-vocabulary        | cleaned + tokenized, stopwords removed    |
//! | sentiment, entropy   | cleaned + tokenized                       |
//! | style, ARI           | cleaned + tokenized, split into sentences |
//!
//! None of the features use stemmed tokens.

mod lexicon;
pub mod tagger;

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use serde::Serialize;

use crate::corpus::text::{content_tokens, normalize_tokens, sentences, StopWords};
use crate::corpus::TweetRecord;
use crate::error::{Error, Result};
use crate::fmt::fixed6;

pub use lexicon::{Dictionary, Lexicon, LexiconFile, SentimentLexicon};
pub use tagger::{PosTagger, SuffixTagger, UNIVERSAL_TAGS};

/// Compound-score normalisation constant.
pub const COMPOUND_ALPHA: f64 = 15.0;

/// Anything that carries tweet text.
pub trait AsText {
    fn text(&self) -> &str;
}

impl AsText for TweetRecord {
    fn text(&self) -> &str {
        &self.text
    }
}

impl AsText for &TweetRecord {
    fn text(&self) -> &str {
        &self.text
    }
}

impl AsText for &str {
    fn text(&self) -> &str {
        self
    }
}

impl AsText for String {
    fn text(&self) -> &str {
        self
    }
}

fn no_tokens() -> Error {
    Error::UndefinedProfile("no usable tokens".into())
}

/// Mean over tweets of the per-tweet fraction of tokens matching each category.
/// Tweets without tokens are skipped.
pub fn category_density<T: AsText>(
    tweets: &[T],
    lexicon: &Lexicon,
) -> Result<BTreeMap<String, f64>> {
    let k = lexicon.len();
    let mut sums = vec![0.0; k];
    let mut used = 0usize;
    let mut hits = vec![0usize; k];
    for t in tweets {
        let tokens = normalize_tokens(t.text());
        if tokens.is_empty() {
            continue;
        }
        hits.iter_mut().for_each(|h| *h = 0);
        for tok in &tokens {
            for c in lexicon.matching(tok) {
                hits[c] += 1;
            }
        }
        for (s, &h) in sums.iter_mut().zip(&hits) {
            *s += h as f64 / tokens.len() as f64;
        }
        used += 1;
    }
    if used == 0 {
        return Err(no_tokens());
    }
    Ok(lexicon
        .category_names()
        .zip(sums)
        .map(|(name, s)| (name.to_string(), s / used as f64))
        .collect())
}

/// Share of non-stopword tokens found in `dictionary`.
pub fn in_vocab_proportion<T: AsText>(
    tweets: &[T],
    dictionary: &Dictionary,
    stopwords: &StopWords,
) -> Result<f64> {
    let (mut hit, mut total) = (0usize, 0usize);
    for t in tweets {
        for tok in content_tokens(t.text(), stopwords) {
            total += 1;
            hit += dictionary.contains(&tok) as usize;
        }
    }
    if total == 0 {
        return Err(no_tokens());
    }
    Ok(hit as f64 / total as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sentiment {
    pub pos: f64,
    pub neg: f64,
    pub neu: f64,
    pub comp: f64,
}

/// `s / sqrt(s^2 + alpha)`.
pub fn compound(valence_sum: f64) -> f64 {
    valence_sum / (valence_sum * valence_sum + COMPOUND_ALPHA).sqrt()
}

fn sentiment_of_tokens<'a>(
    tokens: impl Iterator<Item = &'a String>,
    lex: &SentimentLexicon,
) -> Option<Sentiment> {
    let (mut pos, mut neg, mut n, mut sum) = (0usize, 0usize, 0usize, 0.0);
    for tok in tokens {
        n += 1;
        match lex.valence(tok) {
            Some(v) if v > 0.0 => {
                pos += 1;
                sum += v;
            }
            Some(v) if v < 0.0 => {
                neg += 1;
                sum += v;
            }
            _ => {}
        }
    }
    if n == 0 {
        return None;
    }
    let nf = n as f64;
    Some(Sentiment {
        pos: pos as f64 / nf,
        neg: neg as f64 / nf,
        neu: (n - pos - neg) as f64 / nf,
        comp: compound(sum),
    })
}

/// Lexicon sentiment over the pooled tokens of all tweets.
pub fn sentiment<T: AsText>(tweets: &[T], lex: &SentimentLexicon) -> Result<Sentiment> {
    let tokens: Vec<String> = tweets
        .iter()
        .flat_map(|t| normalize_tokens(t.text()))
        .collect();
    sentiment_of_tokens(tokens.iter(), lex).ok_or_else(no_tokens)
}

/// Lexicon sentiment computed per tweet and then averaged over tweets with tokens.
pub fn sentiment_per_tweet_mean<T: AsText>(
    tweets: &[T],
    lex: &SentimentLexicon,
) -> Result<Sentiment> {
    let per: Vec<Sentiment> = tweets
        .iter()
        .filter_map(|t| sentiment_of_tokens(normalize_tokens(t.text()).iter(), lex))
        .collect();
    if per.is_empty() {
        return Err(no_tokens());
    }
    let m = per.len() as f64;
    let mean = |f: fn(&Sentiment) -> f64| per.iter().map(f).sum::<f64>() / m;
    Ok(Sentiment {
        pos: mean(|s| s.pos),
        neg: mean(|s| s.neg),
        neu: mean(|s| s.neu),
        comp: mean(|s| s.comp),
    })
}

/// Shannon entropy of a count distribution, natural log.
pub fn entropy<I: IntoIterator<Item = usize>>(counts: I) -> f64 {
    let counts: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    let total: usize = counts.iter().sum();
    if counts.len() <= 1 {
        return 0.0;
    }
    let t = total as f64;
    -counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Entropy of the POS-tag distribution of all tokens, in the given log base
/// (`None` for natural log).
pub fn pos_entropy<T: AsText>(
    tweets: &[T],
    tagger: &dyn PosTagger,
    log_base: Option<f64>,
) -> Result<f64> {
    // ordered so the floating-point sum is reproducible
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for t in tweets {
        for tok in normalize_tokens(t.text()) {
            *counts.entry(tagger.tag(&tok)).or_default() += 1;
        }
    }
    if counts.is_empty() {
        return Err(no_tokens());
    }
    let h = entropy(counts.into_values());
    Ok(match log_base {
        Some(b) => h / b.ln(),
        None => h,
    })
}

/// First, second and third person pronoun lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PronounLists {
    pub first: HashSet<String>,
    pub second: HashSet<String>,
    pub third: HashSet<String>,
}

impl Default for PronounLists {
    fn default() -> Self {
        let set = |s: &str| s.split_whitespace().map(str::to_string).collect();
        Self {
            first: set("i me my mine we us our ours"),
            second: set("you your yours"),
            third: set("he she him her his hers they them their theirs"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StyleFeatures {
    /// Type-token ratio.
    pub ttr: f64,
    /// Characters per word.
    pub cpw: f64,
    /// Words per sentence.
    pub wps: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub it: f64,
}

/// Token and sentence totals shared by the style features and ARI.
#[derive(Debug, Clone, Default)]
struct TextStats {
    tokens: Vec<String>,
    sentences: usize,
}

impl TextStats {
    fn gather<T: AsText>(tweets: &[T]) -> Self {
        let mut s = Self::default();
        for t in tweets {
            for sent in sentences(t.text()) {
                s.sentences += 1;
                s.tokens.extend(sent);
            }
        }
        s
    }

    fn chars(&self) -> usize {
        self.tokens
            .iter()
            .map(|t| t.chars().filter(char::is_ascii_alphanumeric).count())
            .sum()
    }
}

pub fn style_features<T: AsText>(tweets: &[T], pronouns: &PronounLists) -> Result<StyleFeatures> {
    let stats = TextStats::gather(tweets);
    let n = stats.tokens.len();
    if n == 0 || stats.sentences == 0 {
        return Err(no_tokens());
    }
    let nf = n as f64;
    let distinct: HashSet<&String> = stats.tokens.iter().collect();
    let share = |set: &HashSet<String>| {
        stats.tokens.iter().filter(|t| set.contains(*t)).count() as f64 / nf
    };
    Ok(StyleFeatures {
        ttr: distinct.len() as f64 / nf,
        cpw: stats
            .tokens
            .iter()
            .map(|t| t.chars().count())
            .sum::<usize>() as f64
            / nf,
        wps: nf / stats.sentences as f64,
        p1: share(&pronouns.first),
        p2: share(&pronouns.second),
        p3: share(&pronouns.third),
        it: stats.tokens.iter().filter(|t| *t == "it").count() as f64 / nf,
    })
}

/// Automated readability index from raw counts:
/// `4.17 * chars/words + 0.15 * words/sentences - 21.53`.
///
/// Evaluated as one rational so the result is the correctly rounded value.
pub fn ari_from_counts(chars: u64, words: u64, sentences: u64) -> Result<f64> {
    if words == 0 || sentences == 0 {
        return Err(no_tokens());
    }
    let (c, w, s) = (chars as i128, words as i128, sentences as i128);
    let num = 417 * c * s + 15 * w * w - 2153 * w * s;
    let den = 100 * w * s;
    Ok(num as f64 / den as f64)
}

pub fn ari<T: AsText>(tweets: &[T]) -> Result<f64> {
    let stats = TextStats::gather(tweets);
    ari_from_counts(
        stats.chars() as u64,
        stats.tokens.len() as u64,
        stats.sentences as u64,
    )
}

/// Feature-computation switches.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinguisticOptions {
    /// Average sentiment over tweets instead of pooling tokens.
    pub per_tweet_mean: bool,
    /// Entropy log base; natural log when `None`.
    pub log_base: Option<f64>,
}

/// Shared read-only inputs for profile extraction.
pub struct LinguisticResources {
    pub lexicon: Lexicon,
    pub sentiment: SentimentLexicon,
    pub dictionary: Dictionary,
    pub stopwords: StopWords,
    pub tagger: Box<dyn PosTagger>,
    pub pronouns: PronounLists,
    pub options: LinguisticOptions,
}

/// Every linguistic feature for one celebrity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticProfile {
    pub handle: String,
    pub category_density: BTreeMap<String, f64>,
    pub in_vocab_proportion: f64,
    pub sentiment: Sentiment,
    pub pos_entropy: f64,
    pub style: StyleFeatures,
    pub ari: f64,
}

/// Column prefix for lexicon-category densities.
pub const LIWC_PREFIX: &str = "liwc_";

impl LinguisticProfile {
    /// Flattened `(feature name, value)` pairs in a fixed order.
    pub fn features(&self) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = self
            .category_density
            .iter()
            .map(|(k, v)| (format!("{LIWC_PREFIX}{k}"), *v))
            .collect();
        let s = &self.sentiment;
        let st = &self.style;
        out.extend(
            [
                ("in_vocab", self.in_vocab_proportion),
                ("sent_pos", s.pos),
                ("sent_neg", s.neg),
                ("sent_neu", s.neu),
                ("sent_comp", s.comp),
                ("pos_entropy", self.pos_entropy),
                ("ttr", st.ttr),
                ("cpw", st.cpw),
                ("wps", st.wps),
                ("p1", st.p1),
                ("p2", st.p2),
                ("p3", st.p3),
                ("it", st.it),
                ("ari", self.ari),
            ]
            .map(|(k, v)| (k.to_string(), v)),
        );
        out
    }
}

/// Compute every feature family from one celebrity's tweets.
pub fn profile_from_tweets<T: AsText>(
    handle: &str,
    tweets: &[T],
    res: &LinguisticResources,
) -> Result<LinguisticProfile> {
    let with_handle = |e: Error| match e {
        Error::UndefinedProfile(msg) => Error::UndefinedProfile(format!("{handle}: {msg}")),
        other => other,
    };
    let sentiment = if res.options.per_tweet_mean {
        sentiment_per_tweet_mean(tweets, &res.sentiment)
    } else {
        sentiment(tweets, &res.sentiment)
    };
    Ok(LinguisticProfile {
        handle: handle.to_string(),
        category_density: category_density(tweets, &res.lexicon).map_err(with_handle)?,
        in_vocab_proportion: in_vocab_proportion(tweets, &res.dictionary, &res.stopwords)
            .map_err(with_handle)?,
        sentiment: sentiment.map_err(with_handle)?,
        pos_entropy: pos_entropy(tweets, res.tagger.as_ref(), res.options.log_base)
            .map_err(with_handle)?,
        style: style_features(tweets, &res.pronouns).map_err(with_handle)?,
        ari: ari(tweets).map_err(with_handle)?,
    })
}

/// Profile of one roster celebrity.
pub fn linguistic_profile(
    corpus: &crate::corpus::Corpus,
    handle: &str,
    res: &LinguisticResources,
) -> Result<LinguisticProfile> {
    let tweets = corpus.celebrity_tweets(handle)?;
    profile_from_tweets(handle, &tweets, res)
}

/// CSV with one row per profile and one column per feature, six decimals.
pub fn write_profiles_csv(w: impl Write, profiles: &[LinguisticProfile]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let Some(first) = profiles.first() else {
        wtr.write_record(["handle"])?;
        return wtr.flush();
    };
    let mut header = vec!["handle".to_string()];
    header.extend(first.features().into_iter().map(|(k, _)| k));
    wtr.write_record(&header)?;
    for p in profiles {
        let mut row = vec![p.handle.clone()];
        row.extend(p.features().into_iter().map(|(_, v)| fixed6(v)));
        wtr.write_record(&row)?;
    }
    wtr.flush()
}
