use celebnet::linguistic::{ari, ari_from_counts, entropy, pos_entropy, sentiment, PosTagger};
use celebnet::resources::demo_sentiment;
use celebnet::synth::{NEGATIVE_WORDS, NEUTRAL_WORDS, PLANTED_WORDS};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tags a token by its first letter.
struct FirstLetter;

impl PosTagger for FirstLetter {
    fn tag(&self, token: &str) -> &'static str {
        match token.as_bytes()[0] {
            b'a' => "A",
            b'b' => "B",
            b'c' => "C",
            _ => "D",
        }
    }

    fn tagset_size(&self) -> usize {
        4
    }
}

#[test]
fn ari_of_constructed_text() {
    // 2 sentences, 20 words, 100 letters
    let s = "apple bread chair dance eagle fable grape house input joker.";
    let text = format!("{s} {s}");
    assert_eq!(ari(&[text.as_str()]).unwrap(), 0.82);
    assert_eq!(ari_from_counts(100, 20, 2).unwrap(), 0.82);
}

#[test]
fn entropy_uniform_and_single_tag() {
    let h = pos_entropy(
        &["apple banana cherry date", "avocado bean corn dill"],
        &FirstLetter,
        None,
    )
    .unwrap();
    assert!((h - 4f64.ln()).abs() <= 1e-12);
    assert_eq!(
        pos_entropy(&["apple avocado apricot"], &FirstLetter, None).unwrap(),
        0.0
    );
    let bits = pos_entropy(&["apple banana cherry date"], &FirstLetter, Some(2.0)).unwrap();
    assert!((bits - 2.0).abs() <= 1e-12);
    assert_eq!(entropy([7]), 0.0);
}

#[test]
fn sentiment_channels_sum_to_one() {
    let lex = demo_sentiment();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pools = [PLANTED_WORDS, NEGATIVE_WORDS, NEUTRAL_WORDS];
    for _ in 0..100 {
        let len = rng.random_range(1..60);
        let words: Vec<&str> = (0..len)
            .map(|_| *pools.choose(&mut rng).unwrap().choose(&mut rng).unwrap())
            .collect();
        let s = sentiment(&[words.join(" ")], &lex).unwrap();
        assert!((s.pos + s.neg + s.neu - 1.0).abs() <= 1e-9);
        assert!(s.comp > -1.0 && s.comp < 1.0);
    }
}
