//! Bundled demo resources and file loaders with fallback to them.
//!
//! The bundled lexicon, sentiment list and dictionary are small open
//! stand-ins; pass real files for serious analyses.

use std::path::Path;

use crate::corpus::StopWords;
use crate::error::Result;
use crate::linguistic::{
    Dictionary, Lexicon, LinguisticOptions, LinguisticResources, PronounLists, SentimentLexicon,
    SuffixTagger,
};

pub const DEMO_LEXICON_JSON: &str = include_str!("../data/demo_lexicon.json");
pub const DEMO_SENTIMENT_TSV: &str = include_str!("../data/demo_sentiment.tsv");
pub const DEMO_DICTIONARY: &str = include_str!("../data/demo_dictionary.txt");

pub fn demo_lexicon() -> Lexicon {
    Lexicon::from_json(DEMO_LEXICON_JSON).expect("bundled lexicon is valid")
}

pub fn demo_sentiment() -> SentimentLexicon {
    SentimentLexicon::parse(DEMO_SENTIMENT_TSV).expect("bundled sentiment lexicon is valid")
}

pub fn demo_dictionary() -> Dictionary {
    Dictionary::parse(DEMO_DICTIONARY)
}

/// Optional resource paths; `None` selects the bundled default.
#[derive(Debug, Clone, Copy, Default)]
pub struct ResourcePaths<'a> {
    pub lexicon: Option<&'a Path>,
    pub sentiment: Option<&'a Path>,
    pub dictionary: Option<&'a Path>,
    pub stopwords: Option<&'a Path>,
}

pub fn load_resources(
    paths: ResourcePaths<'_>,
    options: LinguisticOptions,
) -> Result<LinguisticResources> {
    Ok(LinguisticResources {
        lexicon: paths
            .lexicon
            .map_or_else(|| Ok(demo_lexicon()), Lexicon::load)?,
        sentiment: paths
            .sentiment
            .map_or_else(|| Ok(demo_sentiment()), SentimentLexicon::load)?,
        dictionary: paths
            .dictionary
            .map_or_else(|| Ok(demo_dictionary()), Dictionary::load)?,
        stopwords: paths
            .stopwords
            .map_or_else(|| Ok(StopWords::english()), StopWords::load)?,
        tagger: Box::new(SuffixTagger),
        pronouns: PronounLists::default(),
        options,
    })
}

/// Bundled resources with default options.
pub fn default_resources() -> LinguisticResources {
    load_resources(ResourcePaths::default(), LinguisticOptions::default())
        .expect("bundled resources load")
}
