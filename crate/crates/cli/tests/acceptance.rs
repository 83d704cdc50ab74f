//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p speechaudit-cli --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use speechaudit_core::audio_metrics::{segment_speech, usable_hours, VadConfig};
use speechaudit_core::manifest::{attach_durations, parse_manifest, DurationSource, SourceKind};
use speechaudit_core::report::{
    apply_flags, speaker_stats, AuditReport, FlagCode, FlagThresholds, SpeechProportionStats,
};
use speechaudit_core::text_metrics::{detect_templates, prompt_shape_stats, TemplateConfig};
use speechaudit_core::variety::lexicon::MatchMode;
use speechaudit_core::variety::script::{check_script_expectation, detect_script, ScriptVerdict};
use speechaudit_core::variety::{
    classify_corpus, classify_two_way, MarkerLexicon, VarietyCategory,
};
use speechaudit_core::{align, duration_stats};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------- 1

const NYNORSK: [&str; 18] = [
    "ikkje", "eg", "eit", "eitt", "me", "ho", "hjå", "kva", "kven", "noko", "nokre", "sjå",
    "skule", "kor", "fyrst", "mykje", "òg", "medan",
];
const BOKMAL: [&str; 18] = [
    "ikke", "jeg", "et", "en", "vi", "hun", "hos", "hva", "hvem", "noe", "noen", "se", "skole",
    "hvor", "først", "mye", "også", "mens",
];

/// Direct transcription of the classifier pseudocode.
fn pseudocode_classify(sentence: &str) -> &'static str {
    let sentence = sentence.to_lowercase();
    let words: Vec<&str> = sentence
        .split(|c: char| !c.is_alphabetic())
        .filter(|w| !w.is_empty())
        .collect();
    let mut nynorsk_count = 0;
    let mut bokmal_count = 0;
    for marker in NYNORSK {
        if words.contains(&marker) {
            nynorsk_count += 1;
        }
    }
    for marker in BOKMAL {
        if words.contains(&marker) {
            bokmal_count += 1;
        }
    }
    nynorsk_count += words.iter().filter(|w| w.ends_with('a')).count();
    bokmal_count += words.iter().filter(|w| w.ends_with("en")).count();
    if nynorsk_count > bokmal_count {
        "Nynorsk"
    } else if bokmal_count > nynorsk_count {
        "Bokmål"
    } else if nynorsk_count > 0 {
        "Mixed"
    } else {
        "Unmarked"
    }
}

fn random_sentence(rng: &mut ChaCha8Rng) -> String {
    const FILLER: [&str; 12] = [
        "det", "er", "fint", "her", "huset", "bygda", "sola", "gutten", "til", "på", "Oslo", "heim",
    ];
    const PUNCT: [&str; 6] = ["", "", ",", ".", "!", "?"];
    let n = rng.gen_range(1..12);
    let words: Vec<String> = (0..n)
        .map(|_| {
            let w = match rng.gen_range(0..3) {
                0 => NYNORSK[rng.gen_range(0..NYNORSK.len())],
                1 => BOKMAL[rng.gen_range(0..BOKMAL.len())],
                _ => FILLER[rng.gen_range(0..FILLER.len())],
            };
            let w = if rng.gen_bool(0.2) {
                w.to_uppercase()
            } else {
                w.to_string()
            };
            format!("{w}{}", PUNCT[rng.gen_range(0..PUNCT.len())])
        })
        .collect();
    words.join(" ")
}

fn criterion_1() -> Outcome {
    let lex = MarkerLexicon::norwegian();
    let label = |s: &str| {
        classify_two_way(s, &lex)
            .unwrap()
            .category
            .label(&lex)
            .to_string()
    };
    let a = label("Har eg dekt meg med song og harpespel.");
    let b = label("Har jeg dekket meg med sang og harpespill.");
    let traced = a == "Nynorsk" && b == "Bokmål";

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sentences: Vec<String> = (0..1000).map(|_| random_sentence(&mut rng)).collect();
    let start = Instant::now();
    let ours: Vec<String> = sentences.iter().map(|s| label(s)).collect();
    let elapsed = start.elapsed();
    let agree = ours
        .iter()
        .zip(&sentences)
        .filter(|(o, s)| o.as_str() == pseudocode_classify(s))
        .count();
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for o in &ours {
        *seen.entry(o.as_str()).or_default() += 1;
    }
    outcome(
        traced && agree == 1000 && seen.len() == 4 && elapsed.as_secs_f64() < 1.0,
        format!(
            "pair -> {a}/{b}; agreement {agree}/1000 over categories {seen:?}; {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------- 2

fn corpus(parts: &[(&str, usize)]) -> Vec<String> {
    parts
        .iter()
        .flat_map(|(s, n)| std::iter::repeat_n(s.to_string(), *n))
        .collect()
}

fn criterion_2() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;

    let no = MarkerLexicon::norwegian();
    let sentences = corpus(&[
        ("Eg veit ikkje.", 764),
        ("Jeg vet ikke.", 96),
        ("Ikkje ikke.", 161),
        ("Det er fint her.", 153),
    ]);
    let tally = classify_corpus(&sentences, &no).unwrap();
    let printed = [65.1, 8.1, 13.7, 13.0];
    let _ = write!(detail, "no(n={}):", tally.total);
    for (c, p) in tally.categories.iter().zip(printed) {
        let ok = (c.percent - p).abs() < 1e-9;
        pass &= ok;
        let _ = write!(
            detail,
            " {} {} {:.1}{}",
            c.label,
            c.count,
            c.percent,
            if ok {
                ""
            } else {
                "(printed 8.1; 96/1174=8.177)"
            }
        );
    }

    // Injected toy lexicon: one standard-register and one dialect marker.
    let ar = MarkerLexicon::new(
        "ar-toy",
        ("MSA", "Dialect"),
        ["سوف"],
        ["راح"],
        Vec::new(),
        MatchMode::Substring,
    )
    .unwrap();
    let sentences = corpus(&[
        ("سوف نذهب غدا", 2787),
        ("سوف نذهب راح", 25),
        ("نذهب غدا", 15),
    ]);
    let tally = classify_corpus(&sentences, &ar).unwrap();
    let checks = [
        (VarietyCategory::ClassA, 2787, 98.6, 1),
        (VarietyCategory::ClassB, 0, 0.0, 1),
        (VarietyCategory::Mixed, 25, 0.88, 2),
        (VarietyCategory::Unmarked, 15, 0.53, 2),
    ];
    let _ = write!(detail, "; ar(n={}):", tally.total);
    for (cat, count, printed, decimals) in checks {
        let c = tally.categories.iter().find(|c| c.category == cat).unwrap();
        let shown = format!("{:.*}", decimals, c.percent_exact);
        let ok = c.count == count && shown == format!("{printed:.decimals$}");
        pass &= ok;
        let _ = write!(
            detail,
            " {} {} {}{}",
            c.label,
            c.count,
            shown,
            if ok { "" } else { "!" }
        );
    }
    outcome(pass, detail)
}

// ---------------------------------------------------------------- 3

fn brute_edit_distance(a: &[&str], b: &[&str]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => (brute_edit_distance(ra, rb) + usize::from(x != y))
            .min(brute_edit_distance(ra, b) + 1)
            .min(brute_edit_distance(a, rb) + 1),
    }
}

fn criterion_3() -> Outcome {
    let r: Vec<&str> = "har eg dekt meg med song og harpespel".split(' ').collect();
    let h: Vec<&str> = "har jeg dekket meg med sang og harpespill"
        .split(' ')
        .collect();
    let res = align(&r, &h);
    let pair_ok = res.n_ref == 8
        && (res.substitutions, res.deletions, res.insertions) == (4, 0, 0)
        && res.wer.map(|w| (w - 0.5).abs() < 1e-12) == Some(true);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alphabet = ["a", "b", "c"];
    let mut exact = 0;
    let mut decomposed = 0;
    for _ in 0..500 {
        let r: Vec<&str> = (0..rng.gen_range(0..=6))
            .map(|_| alphabet[rng.gen_range(0..3)])
            .collect();
        let h: Vec<&str> = (0..rng.gen_range(0..=6))
            .map(|_| alphabet[rng.gen_range(0..3)])
            .collect();
        let res = align(&r, &h);
        exact += usize::from(res.errors() == brute_edit_distance(&r, &h));
        decomposed += usize::from(res.hits + res.substitutions + res.deletions == r.len());
    }
    outcome(
        pair_ok && exact == 500 && decomposed == 500,
        format!(
            "pair WER {:.3} S={} D={} I={}; brute force {exact}/500; hits+S+D=n_ref {decomposed}/500",
            res.wer.unwrap_or(f64::NAN),
            res.substitutions,
            res.deletions,
            res.insertions
        ),
    )
}

// ---------------------------------------------------------------- 4

const SR: u32 = 16000;

/// 10 s of low background noise with a few louder bursts.
fn random_signal(rng: &mut ChaCha8Rng) -> Vec<f32> {
    let n = 10 * SR as usize;
    let noise = rng.gen_range(0.002f32..0.02);
    let mut s: Vec<f32> = (0..n).map(|_| rng.gen_range(-noise..noise)).collect();
    for _ in 0..rng.gen_range(1..8) {
        let start = rng.gen_range(0..n);
        let len = rng.gen_range(800..32000).min(n - start);
        let amp = rng.gen_range(0.1f32..0.8);
        let freq = rng.gen_range(0.02f32..0.2);
        for (k, x) in s[start..start + len].iter_mut().enumerate() {
            *x += (k as f32 * freq).sin() * amp;
        }
    }
    s
}

fn criterion_4() -> Outcome {
    let cfg = VadConfig::default();
    let zeros = segment_speech(&vec![0.0; 10 * SR as usize], SR, &cfg).unwrap();
    let zero_ok = zeros.speech_proportion == 0.0 && zeros.segments.is_empty();

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut half: Vec<f32> = (0..5 * SR as usize)
        .map(|_| rng.gen_range(-1e-4f32..1e-4))
        .collect();
    let white: Vec<f32> = (0..5 * SR as usize + 3)
        .map(|_| rng.gen_range(-1.0f32..1.0))
        .collect();
    half.extend(
        white
            .windows(4)
            .map(|w| (w.iter().sum::<f32>() / 4.0 * 1.8).clamp(-1.0, 1.0)),
    );
    let half_p = segment_speech(&half, SR, &cfg).unwrap().speech_proportion;
    let half_ok = (half_p - 0.5).abs() <= 0.02;

    let signals: Vec<Vec<f32>> = (0..100).map(|_| random_signal(&mut rng)).collect();
    let start = Instant::now();
    let base: Vec<_> = signals
        .iter()
        .map(|s| segment_speech(s, SR, &cfg).unwrap())
        .collect();
    let elapsed = start.elapsed().as_secs_f64();

    let stricter = VadConfig {
        relative_margin_db: 18.0,
        ..cfg.clone()
    };
    let mut monotone = 0;
    let mut gain_ok = 0;
    for (s, b) in signals.iter().zip(&base) {
        let tight = segment_speech(s, SR, &stricter).unwrap();
        monotone += usize::from(tight.speech_proportion <= b.speech_proportion);
        let same = [0.5f32, 2.0].iter().all(|g| {
            let scaled: Vec<f32> = s.iter().map(|x| x * g).collect();
            segment_speech(&scaled, SR, &cfg).unwrap().frame_decisions == b.frame_decisions
        });
        gain_ok += usize::from(same);
    }
    outcome(
        zero_ok && half_ok && monotone == 100 && gain_ok == 100 && elapsed < 10.0,
        format!(
            "zeros {:.1}; half/half {half_p:.4}; monotone {monotone}/100; gain-invariant {gain_ok}/100; 100x10 s in {elapsed:.2} s",
            zeros.speech_proportion
        ),
    )
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let h = usable_hours(21.0, 0.483).unwrap();
    outcome(
        (h - 10.14).abs() < 0.005 && (h - 10.0).abs() <= 0.2,
        format!("(21 h, 0.483) -> {h:.2} h"),
    )
}

// ---------------------------------------------------------------- 6

/// Writes a manifest and a millisecond sidecar with `speakers` speakers
/// sharing `total_ms` unevenly, then reads them back.
fn speaker_fixture(
    dir: &std::path::Path,
    speakers: usize,
    total_ms: u64,
) -> speechaudit_core::SpeakerStats {
    let weights: u64 = (1..=speakers as u64).map(|i| i % 7 + 1).sum();
    let mut tsv = String::from("client_id\tpath\tsentence\n");
    let mut sidecar = String::from("clip\tduration[ms]\n");
    let mut assigned = 0;
    for i in 0..speakers as u64 {
        let share = if i + 1 == speakers as u64 {
            total_ms - assigned
        } else {
            total_ms * (i % 7 + 1) / weights
        };
        assigned += share;
        // two clips per speaker
        let first = share / 2;
        for (k, ms) in [first, share - first].into_iter().enumerate() {
            let clip = format!("s{i}_{k}.mp3");
            tsv.push_str(&format!("spk{i}\t{clip}\tx\n"));
            sidecar.push_str(&format!("{clip}\t{ms}\n"));
        }
    }
    let m = dir.join(format!("m{speakers}.tsv"));
    let d = dir.join(format!("d{speakers}.tsv"));
    fs::write(&m, tsv).unwrap();
    fs::write(&d, sidecar).unwrap();
    let manifest = parse_manifest(&m, SourceKind::CommonVoiceTsv, None).unwrap();
    let (manifest, report) = attach_durations(manifest, &DurationSource::SidecarTsv(d)).unwrap();
    assert!(report.unresolved.is_empty());
    speaker_stats(&manifest.records).unwrap()
}

fn criterion_6() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let rw = speaker_fixture(dir.path(), 1131, 2_384_000 * 3600);
    // The printed 22.9 h total is rounded; 22.88 h prints the same.
    let mk = speaker_fixture(dir.path(), 19, 22_880 * 3600);
    let single = speaker_fixture(dir.path(), 1, 5 * 3_600_000);

    let mut report = AuditReport::new("und", "0");
    report.speaker_stats = Some(single.clone());
    let flags = apply_flags(&report, &FlagThresholds::default())
        .unwrap()
        .flags;
    let single_flag = flags.iter().any(|f| f.code == FlagCode::SingleSpeaker);

    let rw_s = format!("{:.2}", rw.avg_hours_per_speaker);
    let mk_s = format!("{:.2}", mk.avg_hours_per_speaker);
    outcome(
        rw.unique_speakers == 1131
            && format!("{:.1}", rw.total_hours) == "2384.0"
            && rw_s == "2.11"
            && mk.unique_speakers == 19
            && format!("{:.1}", mk.total_hours) == "22.9"
            && mk_s == "1.20"
            && single.single_speaker
            && single.top_speaker_share == 1.0
            && single_flag,
        format!(
            "rw {} spk {:.1} h -> {rw_s}; mk {} spk {:.1} h -> {mk_s}; single speaker flagged {single_flag}",
            rw.unique_speakers, rw.total_hours, mk.unique_speakers, mk.total_hours
        ),
    )
}

// ---------------------------------------------------------------- 7

fn speech_stats(p: f64) -> SpeechProportionStats {
    SpeechProportionStats {
        method: "energy_vad".into(),
        measured_utterances: 1,
        failed_utterances: 0,
        total_audio_s: 1.0,
        speech_s: p,
        speech_proportion: p,
        median_utterance_proportion: p,
        other_proportion: None,
        snr_method: "vad_frame_power_ratio".into(),
        snr_measured_utterances: 0,
        median_snr_db: None,
    }
}

fn codes(report: &AuditReport) -> Vec<FlagCode> {
    apply_flags(report, &FlagThresholds::default())
        .unwrap()
        .flags
        .into_iter()
        .map(|f| f.code)
        .collect()
}

fn criterion_7() -> Outcome {
    let mut d: Vec<f64> = (0..50).map(|i| 1.0 + i as f64 * 0.028).collect();
    d.push(2.45);
    d.extend((0..48).map(|i| 2.5 + i as f64 * 0.07));
    d.extend([6.8, 7.0]);
    let mut short = AuditReport::new("und", "0");
    short.duration_stats = Some(duration_stats(&d).unwrap());
    let stats = short.duration_stats.clone().unwrap();
    let short_codes = codes(&short);

    let mut quiet = AuditReport::new("und", "0");
    quiet.speech_proportion_stats = Some(speech_stats(0.483));
    let quiet_codes = codes(&quiet);

    let prompts = [
        "竹南鎮（Tik-lâm-tìn）",
        "竹南鎮（Tek-lâm-tìn）",
        "竹坑口（Tik-khinn-kháu | Tek-khiⁿ-kháu）",
        "竹坑口（Tik-khinn-kháu）",
        "新竹（Sin-tik）",
        "新竹（Sin-tek）",
        "台北（Tâi-pak）",
        "大安（Tāi-an）",
    ];
    let mut dual = AuditReport::new("nan-tw", "0");
    dual.prompt_shape_stats = Some(prompt_shape_stats(&prompts).unwrap());
    let dual_codes = codes(&dual);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut clean = AuditReport::new("en", "0");
    let durations: Vec<f64> = (0..400).map(|_| rng.gen_range(7.0..20.0)).collect();
    clean.duration_stats = Some(duration_stats(&durations).unwrap());
    clean.speech_proportion_stats = Some(speech_stats(0.92));
    let records: Vec<_> = durations
        .iter()
        .enumerate()
        .map(|(i, &d)| speechaudit_core::UtteranceRecord {
            utterance_id: i.to_string(),
            speaker_id: Some(format!("mep{}", i % 40)),
            audio_path: format!("{i}.wav"),
            transcript: String::new(),
            locale: "en".into(),
            duration_s: Some(d),
            extra: Vec::new(),
        })
        .collect();
    clean.speaker_stats = speaker_stats(&records);
    let words = [
        "the",
        "house",
        "will",
        "now",
        "vote",
        "on",
        "report",
        "amendment",
        "council",
        "member",
        "states",
    ];
    let sentences: Vec<String> = (0..400)
        .map(|_| {
            let mut w: Vec<&str> = words.to_vec();
            w.shuffle(&mut rng);
            w.join(" ")
        })
        .collect();
    clean.prompt_shape_stats = Some(prompt_shape_stats(&sentences).unwrap());
    clean.template_clusters = detect_templates(&sentences, &TemplateConfig::default(), 0);
    let clean_codes = codes(&clean);

    let pass = short_codes.contains(&FlagCode::ExtremeShortUtterances)
        && quiet_codes.contains(&FlagCode::LowSpeechProportion)
        && dual_codes.contains(&FlagCode::DualScriptPrompts)
        && dual_codes.contains(&FlagCode::DictionaryDump)
        && clean_codes.is_empty();
    outcome(
        pass,
        format!(
            "median {:.2}/p99 {:.2} -> {short_codes:?}; 0.483 -> {quiet_codes:?}; dual-script -> {dual_codes:?}; long-form -> {clean_codes:?}",
            stats.median_s, stats.p99_s
        ),
    )
}

// ---------------------------------------------------------------- 8

const PLACES: [&str; 30] = [
    "Agost",
    "Aigües",
    "Aiora",
    "Aiòder",
    "Alaior",
    "Alaró",
    "Albaida",
    "Albatera",
    "Alberic",
    "Alcoi",
    "Alella",
    "Alfara",
    "Algemesí",
    "Alginet",
    "Almassora",
    "Alpicat",
    "Altea",
    "Alzira",
    "Amposta",
    "Andorra",
    "Anglès",
    "Arenys",
    "Artà",
    "Balaguer",
    "Banyoles",
    "Begur",
    "Berga",
    "Besalú",
    "Blanes",
    "Borriana",
];

fn criterion_8() -> Outcome {
    let sentences: Vec<String> = PLACES
        .iter()
        .map(|p| format!("No he anat mai a {p}."))
        .collect();
    let cfg = TemplateConfig::default();
    let all = detect_templates(&sentences, &cfg, 0);
    let one =
        all.len() == 1 && all[0].size == 30 && all[0].key_prefix == ["no", "he", "anat", "mai"];
    let at_19 = detect_templates(&sentences[..19], &cfg, 0).len();
    let at_20 = detect_templates(&sentences[..20], &cfg, 0).len();
    outcome(
        one && at_19 == 0 && at_20 == 1,
        format!(
            "30 sentences -> {} cluster(s) of size {:?}; 19 -> {at_19}; 20 -> {at_20}",
            all.len(),
            all.iter().map(|c| c.size).collect::<Vec<_>>()
        ),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, fx) in [
        ("dual-script", common::dual_script_corpus()),
        ("long-form", common::clean_corpus()),
    ] {
        let manifest = fx.manifest().display().to_string();
        let root = fx.clips().display().to_string();
        let mut reports = Vec::new();
        for j in ["1", "8"] {
            let out_path = fx.arg(&format!("report_{j}.json"));
            let out = common::run(&[
                "audit",
                &manifest,
                "--audio-root",
                &root,
                "-j",
                j,
                "-o",
                &out_path,
            ]);
            let code = common::code(&out);
            reports.push((code, fs::read(&out_path).unwrap_or_default()));
        }
        let same = reports[0] == reports[1] && !reports[0].1.is_empty();
        pass &= same;
        detail.push(format!(
            "{name}: exit {}/{}, {} bytes, identical {same}",
            reports[0].0,
            reports[1].0,
            reports[0].1.len()
        ));
    }
    outcome(pass, detail.join("; "))
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let p = detect_script("竹南鎮（Tik-lâm-tìn）", 0.1);
    let han = p.per_script_letter_counts.get("Han").copied().unwrap_or(0);
    let latin = p
        .per_script_letter_counts
        .get("Latin")
        .copied()
        .unwrap_or(0);
    let mixed = p.verdict == ScriptVerdict::MixedScript && han > 0 && latin > 0;

    let cyr = "Ово је реченица на ћирилици.";
    let lat = "Ovo je rečenica na latinici.";
    let cases: Vec<(&str, Vec<&str>, &str, f64)> = vec![
        (
            "sr 1:1",
            [vec![cyr; 50], vec![lat; 50]].concat(),
            "Cyrillic",
            0.5,
        ),
        (
            "sr 3:1",
            [vec![cyr; 75], vec![lat; 25]].concat(),
            "Cyrillic",
            0.75,
        ),
        ("latin", vec![lat; 40], "Latin", 1.0),
        ("nan dual", vec!["竹南鎮（Tik-lâm-tìn）"; 20], "Han", 0.0),
        (
            "mn 9:1",
            [vec!["Сайн байна уу"; 90], vec!["ᠮᠣᠩᠭᠣᠯ ᠪᠢᠴᠢᠭ"; 10]].concat(),
            "Cyrillic",
            0.9,
        ),
    ];
    let mut detail = format!("Han {han} Latin {latin} {:?}", p.verdict);
    let mut exact = mixed;
    for (name, corpus, script, want) in cases {
        let got = check_script_expectation(&corpus, script, 0.1, 0)
            .unwrap()
            .fraction;
        exact &= got == want;
        let _ = write!(detail, "; {name} {got} (want {want})");
    }
    outcome(exact, detail)
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("marker classifier matches pseudocode", criterion_1),
        (
            "category tallies reproduce published percentages",
            criterion_2,
        ),
        ("WER alignment and decomposition", criterion_3),
        ("VAD properties", criterion_4),
        ("usable hours", criterion_5),
        ("hours per speaker", criterion_6),
        ("quality flags", criterion_7),
        ("template detection", criterion_8),
        ("thread-count determinism", criterion_9),
        ("script detection and conformance", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name} [{:.2} s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
