//! Part-of-speech tagging for the tag-entropy feature.

use std::collections::HashSet;
use std::sync::LazyLock;

/// Maps a lowercase token to a tag from a fixed tagset.
pub trait PosTagger: Send + Sync {
    fn tag(&self, token: &str) -> &'static str;
    fn tagset_size(&self) -> usize;
}

/// The twelve universal tags.
pub const UNIVERSAL_TAGS: [&str; 12] = [
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", ".", "X",
];

fn set(words: &str) -> HashSet<&str> {
    words.split_whitespace().collect()
}

static PRON: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set("i me my mine myself we us our ours ourselves you your yours yourself yourselves \
         he him his himself she her hers herself it its itself they them their theirs themselves \
         who whom whose what which someone anyone everyone nobody something anything everything nothing")
});
static DET: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set(
        "a an the this that these those some any each every no another either neither \
         all both such",
    )
});
static ADP: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set(
        "of in on at by for with about against between into through during before after \
         above below from up down out off over under across along among around behind beyond \
         near since toward towards upon within without via",
    )
});
static CONJ: LazyLock<HashSet<&str>> =
    LazyLock::new(|| set("and but or nor so yet because although though while if unless whereas"));
static PRT: LazyLock<HashSet<&str>> = LazyLock::new(|| set("to not t s"));
static VERB: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set(
        "is am are was were be been being have has had do does did will would shall should \
         can could may might must get got go went make made say said see saw know knew think \
         thought take took come came want give gave tell told feel felt",
    )
});
static ADV: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set(
        "very too also just now then here there again always never often still already \
         soon today tomorrow yesterday really well even ever maybe",
    )
});
static ADJ: LazyLock<HashSet<&str>> = LazyLock::new(|| {
    set(
        "good great new old big small best better happy sad bad nice first last long little \
         own other same right high low",
    )
});

/// Deterministic closed-class lists plus suffix rules over the universal tagset.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuffixTagger;

impl PosTagger for SuffixTagger {
    fn tag(&self, token: &str) -> &'static str {
        if token.is_empty() {
            return "X";
        }
        if token.bytes().all(|b| b.is_ascii_digit()) {
            return "NUM";
        }
        if !token.bytes().any(|b| b.is_ascii_alphabetic()) {
            return ".";
        }
        if !token.bytes().all(|b| b.is_ascii_alphabetic()) {
            return "X";
        }
        let closed: [(&LazyLock<HashSet<&str>>, &'static str); 8] = [
            (&PRON, "PRON"),
            (&DET, "DET"),
            (&ADP, "ADP"),
            (&CONJ, "CONJ"),
            (&PRT, "PRT"),
            (&VERB, "VERB"),
            (&ADV, "ADV"),
            (&ADJ, "ADJ"),
        ];
        for (words, tag) in closed {
            if words.contains(token) {
                return tag;
            }
        }
        let n = token.len();
        if n > 4 && token.ends_with("ly") {
            "ADV"
        } else if n > 5
            && (token.ends_with("ing") || token.ends_with("ed") || token.ends_with("ize"))
        {
            "VERB"
        } else if n > 5
            && [
                "ous", "ful", "able", "ible", "ive", "ic", "al", "less", "est",
            ]
            .iter()
            .any(|s| token.ends_with(s))
        {
            "ADJ"
        } else {
            "NOUN"
        }
    }

    fn tagset_size(&self) -> usize {
        UNIVERSAL_TAGS.len()
    }
}
