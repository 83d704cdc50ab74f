//! Synthetic corpora shared by the CLI tests and the acceptance suite.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use speechaudit_core::audio::write_wav_i16;

pub const SR: u32 = 16000;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_speechaudit"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Near-silent hiss, then words of 450 ms separated by 130 ms pauses for
/// `speech_s`, then hiss again for `trail_s`. Pauses are shorter than the
/// default gap limit, so the speech span comes out as one segment.
pub fn speech_clip(lead_s: f64, speech_s: f64, trail_s: f64, seed: u64) -> Vec<f32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sr = f64::from(SR);
    let n = ((lead_s + speech_s + trail_s) * sr).round() as usize;
    let carrier = rng.gen_range(0.05..0.12);
    let level = rng.gen_range(0.4..0.7);
    (0..n)
        .map(|i| {
            let t = i as f64 / sr;
            let hiss = rng.gen_range(-1e-4..1e-4) as f32;
            if t < lead_s || t >= lead_s + speech_s {
                return hiss;
            }
            let pos = (t - lead_s) % 0.58;
            if pos >= 0.45 {
                return hiss;
            }
            let envelope = 0.3 + 0.7 * (std::f64::consts::PI * pos / 0.45).sin();
            ((i as f64 * carrier).sin() * level * envelope) as f32 + hiss
        })
        .collect()
}

pub struct Fixture {
    pub dir: tempfile::TempDir,
}

impl Fixture {
    pub fn manifest(&self) -> PathBuf {
        self.dir.path().join("validated.tsv")
    }

    pub fn clips(&self) -> PathBuf {
        self.dir.path().join("clips")
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }
}

fn write_corpus(rows: &[(String, String, Vec<f32>)], locale: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let clips = dir.path().join("clips");
    fs::create_dir_all(&clips).unwrap();
    let mut tsv = String::from("client_id\tpath\tsentence\tup_votes\tlocale\n");
    for (i, (speaker, sentence, audio)) in rows.iter().enumerate() {
        let name = format!("clip_{i:04}.wav");
        write_wav_i16(&clips.join(&name), audio, SR).unwrap();
        tsv.push_str(&format!("{speaker}\t{name}\t{sentence}\t2\t{locale}\n"));
    }
    fs::write(dir.path().join("validated.tsv"), tsv).unwrap();
    Fixture { dir }
}

const SYLLABLES: [&str; 16] = [
    "ka", "lo", "mi", "ren", "sa", "to", "vel", "du", "ni", "por", "ga", "le", "tri", "so", "mun",
    "bi",
];

fn pseudo_sentence(rng: &mut ChaCha8Rng, words: usize) -> String {
    let w: Vec<String> = (0..words)
        .map(|_| {
            (0..rng.gen_range(1..4))
                .map(|_| SYLLABLES[rng.gen_range(0..SYLLABLES.len())])
                .collect()
        })
        .collect();
    let mut s = w.join(" ");
    s.push('.');
    s
}

/// Long-form parliamentary-style corpus: 40 speakers, clips of 8 to 11 s
/// that are over 90% speech, varied full sentences.
pub fn clean_corpus() -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let rows: Vec<(String, String, Vec<f32>)> = (0..40)
        .map(|i| {
            let speech = rng.gen_range(8.0..11.0);
            let sentence = pseudo_sentence(&mut rng, 14);
            (
                format!("mep{i:02}"),
                sentence,
                speech_clip(0.3, speech, 0.3, i),
            )
        })
        .collect();
    write_corpus(&rows, "en")
}

const PLACES: [(&str, &[&str]); 8] = [
    ("竹南鎮", &["Tik-lâm-tìn", "Tek-lâm-tìn"]),
    (
        "竹坑口",
        &["Tik-khinn-kháu | Tek-khiⁿ-kháu", "Tik-khinn-kháu"],
    ),
    ("台北", &["Tâi-pak"]),
    ("新竹", &["Sin-tik", "Sin-tek"]),
    ("大安", &["Tāi-an"]),
    ("中壢", &["Tiong-lı̍k"]),
    ("鹿港", &["Lo̍k-káng"]),
    ("淡水", &["Tām-tsuí"]),
];

/// Short dual-script word-list prompts: place names in Han with romanized
/// readings in parentheses, clips of 2.2 to 2.9 s that are about 45% speech.
pub fn dual_script_corpus() -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rows: Vec<(String, String, Vec<f32>)> = (0..48)
        .map(|i| {
            let (han, readings) = PLACES[i % PLACES.len()];
            let reading = readings[(i / PLACES.len()) % readings.len()];
            let total = rng.gen_range(2.2..2.9);
            let speech = total * 0.45;
            let lead = (total - speech) / 2.0;
            (
                format!("spk{}", i % 6),
                format!("{han}（{reading}）"),
                speech_clip(lead, speech, lead, 100 + i as u64),
            )
        })
        .collect();
    write_corpus(&rows, "nan-tw")
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}
