//! Token alignment with substitution/deletion/insertion decomposition.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditOp {
    Match,
    Sub,
    Del,
    Ins,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub op: EditOp,
    pub ref_token: Option<String>,
    pub hyp_token: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentResult {
    pub n_ref: usize,
    pub n_hyp: usize,
    pub hits: usize,
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    /// `None` when the reference is empty but the hypothesis is not.
    pub wer: Option<f64>,
    pub alignment: Vec<AlignedPair>,
}

impl AlignmentResult {
    pub fn errors(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }
}

fn error_rate(errors: usize, n_ref: usize, n_hyp: usize) -> Option<f64> {
    if n_ref > 0 {
        Some(errors as f64 / n_ref as f64)
    } else if n_hyp == 0 {
        Some(0.0)
    } else {
        None
    }
}

/// Minimal unit-cost alignment of `hyp` against `reference`.
///
/// The backtrace starts at the sequence ends and prefers, in order: match,
/// substitution, deletion, insertion.
pub fn align<T: AsRef<str>>(reference: &[T], hyp: &[T]) -> AlignmentResult {
    let (n, m) = (reference.len(), hyp.len());
    let width = m + 1;
    let mut dist = vec![0u32; (n + 1) * width];
    for (j, d) in dist[..width].iter_mut().enumerate() {
        *d = j as u32;
    }
    for i in 1..=n {
        dist[i * width] = i as u32;
        for j in 1..=m {
            let same = reference[i - 1].as_ref() == hyp[j - 1].as_ref();
            let diag = dist[(i - 1) * width + j - 1] + u32::from(!same);
            let up = dist[(i - 1) * width + j] + 1;
            let left = dist[i * width + j - 1] + 1;
            dist[i * width + j] = diag.min(up).min(left);
        }
    }

    let at = |i: usize, j: usize| dist[i * width + j];
    let (mut i, mut j) = (n, m);
    let mut ops = Vec::with_capacity(n.max(m));
    let (mut hits, mut subs, mut dels, mut ins) = (0, 0, 0, 0);
    while i > 0 || j > 0 {
        let here = at(i, j);
        if i > 0 && j > 0 {
            let same = reference[i - 1].as_ref() == hyp[j - 1].as_ref();
            if same && here == at(i - 1, j - 1) {
                hits += 1;
                ops.push(AlignedPair {
                    op: EditOp::Match,
                    ref_token: Some(reference[i - 1].as_ref().to_string()),
                    hyp_token: Some(hyp[j - 1].as_ref().to_string()),
                });
                i -= 1;
                j -= 1;
                continue;
            }
            if !same && here == at(i - 1, j - 1) + 1 {
                subs += 1;
                ops.push(AlignedPair {
                    op: EditOp::Sub,
                    ref_token: Some(reference[i - 1].as_ref().to_string()),
                    hyp_token: Some(hyp[j - 1].as_ref().to_string()),
                });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && here == at(i - 1, j) + 1 {
            dels += 1;
            ops.push(AlignedPair {
                op: EditOp::Del,
                ref_token: Some(reference[i - 1].as_ref().to_string()),
                hyp_token: None,
            });
            i -= 1;
        } else {
            ins += 1;
            ops.push(AlignedPair {
                op: EditOp::Ins,
                ref_token: None,
                hyp_token: Some(hyp[j - 1].as_ref().to_string()),
            });
            j -= 1;
        }
    }
    ops.reverse();
    AlignmentResult {
        n_ref: n,
        n_hyp: m,
        hits,
        substitutions: subs,
        deletions: dels,
        insertions: ins,
        wer: error_rate(subs + dels + ins, n, m),
        alignment: ops,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionCount {
    pub reference: String,
    pub hypothesis: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusWer {
    pub pairs: usize,
    pub n_ref: usize,
    pub n_hyp: usize,
    pub hits: usize,
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    /// Fraction, `None` when every reference is empty and some hypothesis is not.
    pub wer: Option<f64>,
    /// Per-component rates in percent of reference tokens.
    pub sub_rate: Option<f64>,
    pub del_rate: Option<f64>,
    pub ins_rate: Option<f64>,
    pub top_substitutions: Vec<SubstitutionCount>,
}

impl CorpusWer {
    /// `WER 50.0 | Del 0.0 / Ins 0.0 / Sub 50.0`
    pub fn summary_line(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.1}"));
        format!(
            "WER {} | Del {} / Ins {} / Sub {}",
            fmt(self.wer.map(|w| w * 100.0)),
            fmt(self.del_rate),
            fmt(self.ins_rate),
            fmt(self.sub_rate)
        )
    }
}

pub const DEFAULT_TOP_SUBSTITUTIONS: usize = 20;

/// Aligns every pair and sums the counts. Rates are totals over the summed
/// reference length, so the result does not depend on pair order.
pub fn corpus_wer<T: AsRef<str>>(pairs: &[(Vec<T>, Vec<T>)], top_n: usize) -> Result<CorpusWer> {
    if pairs.is_empty() {
        return Err(AuditError::EmptyInput("no reference/hypothesis pairs"));
    }
    let mut acc = CorpusWer {
        pairs: pairs.len(),
        n_ref: 0,
        n_hyp: 0,
        hits: 0,
        substitutions: 0,
        deletions: 0,
        insertions: 0,
        wer: None,
        sub_rate: None,
        del_rate: None,
        ins_rate: None,
        top_substitutions: Vec::new(),
    };
    let mut subs: HashMap<(String, String), usize> = HashMap::new();
    for (r, h) in pairs {
        let a = align(r, h);
        acc.n_ref += a.n_ref;
        acc.n_hyp += a.n_hyp;
        acc.hits += a.hits;
        acc.substitutions += a.substitutions;
        acc.deletions += a.deletions;
        acc.insertions += a.insertions;
        for p in a.alignment.into_iter().filter(|p| p.op == EditOp::Sub) {
            *subs
                .entry((
                    p.ref_token.unwrap_or_default(),
                    p.hyp_token.unwrap_or_default(),
                ))
                .or_default() += 1;
        }
    }
    acc.wer = error_rate(
        acc.substitutions + acc.deletions + acc.insertions,
        acc.n_ref,
        acc.n_hyp,
    );
    if acc.n_ref > 0 {
        let pct = |x: usize| Some(x as f64 * 100.0 / acc.n_ref as f64);
        acc.sub_rate = pct(acc.substitutions);
        acc.del_rate = pct(acc.deletions);
        acc.ins_rate = pct(acc.insertions);
    }
    let mut ranked: Vec<_> = subs.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    acc.top_substitutions = ranked
        .into_iter()
        .take(top_n)
        .map(|((reference, hypothesis), count)| SubstitutionCount {
            reference,
            hypothesis,
            count,
        })
        .collect();
    Ok(acc)
}

/// Reads an `id<TAB>text` file. Lines without a tab are treated as an id
/// with empty text; blank lines are skipped.
pub fn read_id_tsv(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
    Ok(text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .map(|l| match l.split_once('\t') {
            Some((id, t)) => (id.trim().to_string(), t.to_string()),
            None => (l.trim().to_string(), String::new()),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JoinedTranscripts {
    /// `(id, reference, hypothesis)` in reference-file order.
    pub pairs: Vec<(String, String, String)>,
    pub missing_hyp: Vec<String>,
    pub missing_ref: Vec<String>,
}

/// Joins reference and hypothesis rows on their id. Later duplicates win.
pub fn join_on_id(refs: &[(String, String)], hyps: &[(String, String)]) -> JoinedTranscripts {
    let hyp_map: BTreeMap<&str, &str> =
        hyps.iter().map(|(i, t)| (i.as_str(), t.as_str())).collect();
    let ref_map: BTreeMap<&str, &str> =
        refs.iter().map(|(i, t)| (i.as_str(), t.as_str())).collect();
    let mut out = JoinedTranscripts::default();
    let mut seen = std::collections::BTreeSet::new();
    for (id, _) in refs {
        if !seen.insert(id.as_str()) {
            continue;
        }
        match hyp_map.get(id.as_str()) {
            Some(h) => out.pairs.push((
                id.clone(),
                ref_map[id.as_str()].to_string(),
                (*h).to_string(),
            )),
            None => out.missing_hyp.push(id.clone()),
        }
    }
    let mut seen_h = std::collections::BTreeSet::new();
    for (id, _) in hyps {
        if seen_h.insert(id.as_str()) && !ref_map.contains_key(id.as_str()) {
            out.missing_ref.push(id.clone());
        }
    }
    out
}
