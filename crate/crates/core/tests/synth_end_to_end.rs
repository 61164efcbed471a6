use celebnet::classify::Bucket;
use celebnet::corpus::load_corpus;
use celebnet::pipeline::{Analysis, AnalysisConfig};
use celebnet::resources::default_resources;
use celebnet::synth::{generate, SynthSpec};

/// Features the planted channels move.
const PLANTED_CHANNELS: [&str; 10] = [
    "liwc_posemo",
    "liwc_affect",
    "liwc_social",
    "liwc_cogmech",
    "liwc_funct",
    "sent_comp",
    "rt_c_deg",
    "rt_c_pr",
    "men_c_deg",
    "men_c_pr",
];

fn analyse(spec: &SynthSpec) -> Analysis {
    let s = generate(spec).unwrap();
    Analysis::run(&s.corpus, &default_resources(), AnalysisConfig::default()).unwrap()
}

#[test]
fn null_spec_has_no_signal() {
    let a = analyse(&SynthSpec::null(300, 3000, 42));
    let corr = a.correlations().unwrap();
    for f in PLANTED_CHANNELS {
        let rho = corr.get(f).unwrap();
        assert!(rho.abs() <= 0.15, "{f}: {rho}");
    }
}

#[test]
fn planted_spec_separates_buckets() {
    let a = analyse(&SynthSpec::planted(300, 3000, 42));
    let agg = a.bucket_aggregates().unwrap();
    // planted words displace filler words, which are all function words, so
    // funct density falls with the boost rather than rising
    for f in PLANTED_CHANNELS.iter().filter(|f| **f != "liwc_funct") {
        let (hi, lo) = (
            agg.mean(Bucket::High, f).unwrap(),
            agg.mean(Bucket::Low, f).unwrap(),
        );
        assert!(hi > lo, "{f}: HIGH {hi} LOW {lo}");
    }
    assert!(
        agg.mean(Bucket::High, "liwc_funct").unwrap()
            < agg.mean(Bucket::Low, "liwc_funct").unwrap()
    );
    let corr = a.correlations().unwrap();
    assert!(corr.get("liwc_posemo").unwrap() > 0.3);
    assert!(corr.get("rt_c_deg").unwrap() > 0.3);
}

#[test]
fn written_corpus_round_trips() {
    let s = generate(&SynthSpec::planted(30, 400, 9)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    s.write_to_dir(dir.path()).unwrap();
    let (corpus, stats) = load_corpus(
        dir.path().join("tweets.jsonl"),
        dir.path().join("roster.csv"),
    )
    .unwrap();
    assert_eq!(stats.dropped(), 0);
    assert_eq!(corpus, s.corpus);
}

#[test]
fn generation_is_byte_identical() {
    let spec = SynthSpec::planted(30, 400, 3);
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    generate(&spec).unwrap().write_to_dir(d1.path()).unwrap();
    generate(&spec).unwrap().write_to_dir(d2.path()).unwrap();
    for f in ["tweets.jsonl", "roster.csv", "labels.csv"] {
        assert_eq!(
            std::fs::read(d1.path().join(f)).unwrap(),
            std::fs::read(d2.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let other = SynthSpec::planted(30, 400, 4);
    assert_ne!(
        generate(&other).unwrap().corpus,
        generate(&spec).unwrap().corpus
    );
}

#[test]
fn analysis_reruns_identically() {
    let spec = SynthSpec::planted(45, 600, 8);
    let (a, b) = (analyse(&spec), analyse(&spec));
    assert_eq!(a.matrix, b.matrix);
    assert_eq!(a.labels, b.labels);
}
