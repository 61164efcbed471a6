//! Deterministic synthetic corpora with plantable bucket signal.
//!
//! Follower counts are drawn first and bucketed with [`assign_buckets`]; each
//! bucket's planted effect then shifts two things:
//!
//! - the share of a celebrity's tokens drawn from a pool of words matching
//!   the `posemo`, `affect`, `social`, `cogmech` and `funct` categories of
//!   the bundled lexicon (lexicon boost). Planted words displace filler
//!   words, so overall `funct` density falls slightly as the boost grows;
//! - how often users pick the celebrity to retweet or mention (engagement
//!   boost), which drives the co-engagement centralities.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::seq::{index, IndexedRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::classify::{assign_buckets, write_labels_csv, Bucket, BucketLabel};
use crate::corpus::{write_roster, write_tweets, Category, CelebrityProfile, Corpus, TweetRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantedEffect {
    pub lexicon_boost: f64,
    pub engagement_boost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    pub n_celebrities: usize,
    pub n_users: usize,
    pub seed: u64,
    /// Buckets without an entry get no boost.
    #[serde(default)]
    pub planted_effects: BTreeMap<Bucket, PlantedEffect>,
}

impl SynthSpec {
    /// No planted signal at all.
    pub fn null(n_celebrities: usize, n_users: usize, seed: u64) -> Self {
        Self {
            n_celebrities,
            n_users,
            seed,
            planted_effects: BTreeMap::new(),
        }
    }

    /// A lexicon boost concentrated on HIGH and an engagement boost that
    /// mostly separates LOW from the rest, so text and network carry
    /// complementary information about the bucket.
    pub fn planted(n_celebrities: usize, n_users: usize, seed: u64) -> Self {
        let effect = |lexicon_boost, engagement_boost| PlantedEffect {
            lexicon_boost,
            engagement_boost,
        };
        Self {
            n_celebrities,
            n_users,
            seed,
            planted_effects: [
                (Bucket::High, effect(1.0, 1.0)),
                (Bucket::Mid, effect(0.25, 0.8)),
                (Bucket::Low, effect(0.0, 0.0)),
            ]
            .into(),
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(json).map_err(|e| Error::format("synth spec", e))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_celebrities < 9 {
            return Err(Error::Validation(format!(
                "n_celebrities must be at least 9, got {}",
                self.n_celebrities
            )));
        }
        if self.n_users < ENGAGERS_PER_RING_LINK {
            return Err(Error::Validation(format!(
                "n_users must be at least {ENGAGERS_PER_RING_LINK}, got {}",
                self.n_users
            )));
        }
        for (b, e) in &self.planted_effects {
            let ok = |v: f64| v.is_finite() && v >= 0.0;
            if !ok(e.lexicon_boost) || !ok(e.engagement_boost) {
                return Err(Error::Validation(format!(
                    "boosts for {b} must be finite and non-negative"
                )));
            }
        }
        Ok(())
    }

    fn effect(&self, b: Bucket) -> PlantedEffect {
        self.planted_effects.get(&b).copied().unwrap_or_default()
    }
}

/// Words matching the boosted lexicon categories.
pub const PLANTED_WORDS: &[&str] = &[
    "love",
    "great",
    "amazing",
    "happy",
    "proud",
    "thanks",
    "awesome",
    "beautiful",
    "wonderful",
    "excited",
    "best",
    "enjoy",
    "perfect",
    "fantastic",
    "friends",
    "family",
    "together",
    "fans",
    "everyone",
    "people",
    "team",
    "share",
    "talk",
    "meet",
    "celebrate",
    "think",
    "know",
    "because",
    "believe",
    "understand",
    "maybe",
    "realize",
    "learn",
    "idea",
    "we",
    "our",
    "you",
    "with",
    "us",
    "and",
];

/// Content words that match no category of the bundled lexicon.
pub const NEUTRAL_WORDS: &[&str] = &[
    "movie",
    "film",
    "song",
    "album",
    "match",
    "game",
    "show",
    "stage",
    "city",
    "news",
    "phone",
    "launch",
    "release",
    "trailer",
    "music",
    "shoot",
    "studio",
    "cricket",
    "score",
    "series",
    "episode",
    "tour",
    "concert",
    "story",
    "report",
    "market",
    "startup",
    "app",
    "device",
    "camera",
    "football",
    "player",
    "season",
    "award",
    "ticket",
    "poster",
    "interview",
    "channel",
    "update",
    "video",
    "photo",
    "crowd",
    "budget",
    "policy",
    "election",
    "minister",
    "country",
    "nation",
    "weather",
    "traffic",
    "airport",
    "morning",
    "evening",
    "screen",
    "script",
    "director",
    "actor",
    "singer",
    "band",
    "guitar",
    "stadium",
    "goal",
    "runs",
    "wicket",
    "innings",
    "batting",
    "bowler",
    "coach",
    "league",
    "final",
    "trophy",
    "medal",
    "record",
    "speech",
    "debate",
    "economy",
    "growth",
    "software",
    "code",
    "data",
    "cloud",
    "robot",
    "chip",
    "battery",
    "network",
    "internet",
    "watch",
    "play",
    "live",
    "official",
    "special",
    "big",
];

/// Function words everybody uses.
pub const FILLER_WORDS: &[&str] = &[
    "a", "is", "to", "on", "at", "of", "this", "for", "it", "in", "my", "the",
];

pub const NEGATIVE_WORDS: &[&str] = &[
    "hate", "sad", "angry", "awful", "terrible", "worst", "upset", "stupid", "cry", "worried",
    "lost", "bad",
];

/// Slang absent from the bundled dictionary.
pub const OOV_WORDS: &[&str] = &[
    "lol", "omg", "gr8", "plz", "tmrw", "btw", "idk", "smh", "yaaay", "sooo", "xoxo", "haha",
];

const BASE_PLANTED_SHARE: f64 = 0.12;
const PLANTED_SHARE_PER_BOOST: f64 = 0.24;
const PLANTED_SHARE_SD: f64 = 0.02;
const FILLER_SHARE: f64 = 0.25;
const NEGATIVE_SHARE: f64 = 0.04;
const OOV_SHARE: f64 = 0.03;
const ENGAGEMENT_SCALE: f64 = 2.0;
const ATTRACTIVENESS_SD: f64 = 0.4;
const MEAN_EXTRA_ENGAGEMENTS: f64 = 4.0;
/// Users shared by ring neighbours, enough to clear the default threshold.
const ENGAGERS_PER_RING_LINK: usize = 5;

/// A generated corpus together with its ground-truth buckets.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthCorpus {
    pub corpus: Corpus,
    pub labels: Vec<BucketLabel>,
}

impl SynthCorpus {
    /// Write `tweets.jsonl`, `roster.csv` and `labels.csv` into `dir`.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let write =
            |name: &str, f: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>| -> Result<()> {
                let path = dir.join(name);
                let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
                let mut w = BufWriter::new(file);
                f(&mut w)
                    .and_then(|_| w.flush())
                    .map_err(|e| Error::io(&path, e))
            };
        write("tweets.jsonl", &|w| write_tweets(w, &self.corpus.tweets))?;
        write("roster.csv", &|w| write_roster(w, &self.corpus.roster))?;
        write("labels.csv", &|w| write_labels_csv(w, &self.labels))
    }
}

struct Ids {
    next: u64,
    start: DateTime<Utc>,
}

impl Ids {
    fn tweet(&mut self, rng: &mut ChaCha8Rng, author: &str, text: String) -> TweetRecord {
        self.next += 1;
        TweetRecord {
            id: format!("{:09}", self.next),
            author: author.to_string(),
            text,
            timestamp: self.start + Duration::seconds(rng.random_range(0..60 * 24 * 3600)),
            retweet_of: None,
            mentions: Vec::new(),
        }
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).expect("non-empty word list")
}

fn celebrity_word<'a>(rng: &mut ChaCha8Rng, planted_share: f64) -> &'a str {
    let u: f64 = rng.random();
    if u < planted_share {
        return pick(rng, PLANTED_WORDS);
    }
    let u: f64 = rng.random();
    if u < NEGATIVE_SHARE {
        pick(rng, NEGATIVE_WORDS)
    } else if u < NEGATIVE_SHARE + OOV_SHARE {
        pick(rng, OOV_WORDS)
    } else if u < NEGATIVE_SHARE + OOV_SHARE + FILLER_SHARE {
        pick(rng, FILLER_WORDS)
    } else {
        pick(rng, NEUTRAL_WORDS)
    }
}

fn celebrity_text(rng: &mut ChaCha8Rng, planted_share: f64) -> String {
    let mut out = String::new();
    for s in 0..rng.random_range(1..=2) {
        if s > 0 {
            out.push(' ');
        }
        let len = rng.random_range(4..=9);
        for w in 0..len {
            let word = celebrity_word(rng, planted_share);
            if w == 0 {
                let mut cs = word.chars();
                if let Some(c) = cs.next() {
                    out.extend(c.to_uppercase());
                    out.push_str(cs.as_str());
                }
            } else {
                out.push(' ');
                out.push_str(word);
            }
        }
        out.push(*['.', '!', '?', '.'].choose(rng).expect("punctuation"));
    }
    if rng.random_bool(0.2) {
        out.push_str(" #");
        out.push_str(pick(rng, NEUTRAL_WORDS));
    }
    if rng.random_bool(0.25) {
        let code: String = (0..8)
            .map(|_| {
                *b"abcdefghijklmnopqrstuvwxyz0123456789"
                    .choose(rng)
                    .expect("alphabet") as char
            })
            .collect();
        out.push_str(" https://t.co/");
        out.push_str(&code);
    }
    out
}

/// Generate a corpus from `spec`. Identical specs give identical corpora.
pub fn generate(spec: &SynthSpec) -> Result<SynthCorpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_celebrities;

    let followers_dist = LogNormal::<f64>::new(12.0, 1.5).expect("valid lognormal");
    let roster: Vec<CelebrityProfile> = (0..n)
        .map(|i| CelebrityProfile {
            handle: format!("celeb_{i:04}"),
            category: Category::ALL[i % Category::ALL.len()],
            followers_future: followers_dist.sample(&mut rng).round() as u64 + 1,
        })
        .collect();
    let handles: HashSet<&str> = roster.iter().map(|p| p.handle.as_str()).collect();
    let labels = assign_buckets(&roster, &handles)?;
    let bucket_of: BTreeMap<&str, Bucket> = labels
        .iter()
        .map(|l| (l.handle.as_str(), l.bucket))
        .collect();
    let effect = |i: usize| spec.effect(bucket_of[roster[i].handle.as_str()]);

    let std_normal = Normal::new(0.0, 1.0).expect("valid normal");
    let mut ids = Ids {
        next: 0,
        start: Utc
            .with_ymd_and_hms(2017, 3, 1, 0, 0, 0)
            .single()
            .expect("valid date"),
    };
    let mut tweets = Vec::new();

    for (i, celeb) in roster.iter().enumerate() {
        let z: f64 = std_normal.sample(&mut rng);
        let share = (BASE_PLANTED_SHARE
            + PLANTED_SHARE_PER_BOOST * effect(i).lexicon_boost
            + PLANTED_SHARE_SD * z)
            .clamp(0.01, 0.95);
        for _ in 0..rng.random_range(20..=30) {
            let text = celebrity_text(&mut rng, share);
            tweets.push(ids.tweet(&mut rng, &celeb.handle, text));
        }
    }
    let celeb_tweets: Vec<(usize, usize)> = {
        // index range of each celebrity's own tweets
        let mut ranges = Vec::with_capacity(n);
        let mut start = 0;
        for celeb in &roster {
            let len = tweets[start..]
                .iter()
                .take_while(|t| t.author == celeb.handle)
                .count();
            ranges.push((start, len));
            start += len;
        }
        ranges
    };

    let attract: Vec<f64> = (0..n)
        .map(|i| {
            (ENGAGEMENT_SCALE * effect(i).engagement_boost
                + ATTRACTIVENESS_SD * std_normal.sample(&mut rng))
            .exp()
        })
        .collect();
    let users: Vec<String> = (0..spec.n_users).map(|u| format!("user_{u:05}")).collect();
    let extra = Poisson::new(MEAN_EXTRA_ENGAGEMENTS).expect("valid poisson");

    // engagement sets per user, one per flavour
    let mut retweets: Vec<Vec<usize>> = vec![Vec::new(); spec.n_users];
    let mut mentions: Vec<Vec<usize>> = vec![Vec::new(); spec.n_users];
    for sets in [&mut retweets, &mut mentions] {
        for set in sets.iter_mut() {
            let m = (2 + extra.sample(&mut rng) as usize).min(n);
            let mut chosen = index::sample_weighted(&mut rng, n, |i| attract[i], m)
                .map_err(|e| Error::Validation(format!("engagement sampling: {e}")))?
                .into_vec();
            chosen.sort_unstable();
            *set = chosen;
        }
        for i in 0..n {
            let next = (i + 1) % n;
            for u in index::sample(&mut rng, spec.n_users, ENGAGERS_PER_RING_LINK) {
                for c in [i, next] {
                    if let Err(pos) = sets[u].binary_search(&c) {
                        sets[u].insert(pos, c);
                    }
                }
            }
        }
    }

    for (u, user) in users.iter().enumerate() {
        for &c in &retweets[u] {
            let (start, len) = celeb_tweets[c];
            for _ in 0..rng.random_range(1..=2) {
                let original = &tweets[start + rng.random_range(0..len)];
                let text = format!("RT @{}: {}", original.author, original.text);
                let mut t = ids.tweet(&mut rng, user, text);
                t.retweet_of = Some(roster[c].handle.clone());
                tweets.push(t);
            }
        }
        for &c in &mentions[u] {
            let words: Vec<&str> = (0..rng.random_range(3..=6))
                .map(|_| pick(&mut rng, NEUTRAL_WORDS))
                .collect();
            let text = format!("@{} {}", roster[c].handle, words.join(" "));
            let mut t = ids.tweet(&mut rng, user, text);
            t.mentions = vec![roster[c].handle.clone()];
            tweets.push(t);
        }
    }

    Ok(SynthCorpus {
        corpus: Corpus { tweets, roster },
        labels,
    })
}
