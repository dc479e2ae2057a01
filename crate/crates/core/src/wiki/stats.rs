use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::logic::{contains_neg_or_impl, SentencePattern};

use super::{SentenceId, WikiError, WikiState};

/// Correctness judgments over the corpus: `s` sentences, of which `s_plus`
/// were judged correct.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnotationSummary {
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "Splus")]
    pub s_plus: usize,
    #[serde(rename = "Sminus")]
    pub s_minus: usize,
    /// `s_plus / s`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsReport {
    pub sentences: usize,
    /// Every pattern, including those with no sentences.
    pub pattern_counts: BTreeMap<SentencePattern, usize>,
    pub neg_or_impl: usize,
    pub neg_or_impl_fraction: f64,
    pub owl_compatible: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotations: Option<AnnotationSummary>,
}

fn fraction(n: usize, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}

impl StatsReport {
    /// One `key value` pair per line.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sentences {}", self.sentences);
        for (p, n) in &self.pattern_counts {
            let _ = writeln!(out, "pattern.{p} {n}");
        }
        let _ = writeln!(out, "negOrImpl {}", self.neg_or_impl);
        let _ = writeln!(out, "negOrImplFraction {:.6}", self.neg_or_impl_fraction);
        let _ = writeln!(out, "owlCompatible {}", self.owl_compatible);
        if let Some(a) = &self.annotations {
            let _ = writeln!(out, "S {}", a.s);
            let _ = writeln!(out, "Splus {}", a.s_plus);
            let _ = writeln!(out, "Sminus {}", a.s_minus);
            let _ = writeln!(out, "ratio {:.6}", a.ratio);
        }
        out
    }

    /// Aligned human-readable table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        rows.push(("sentences".into(), self.sentences.to_string()));
        for (p, n) in &self.pattern_counts {
            rows.push((format!("  {p}"), n.to_string()));
        }
        rows.push((
            "negation or implication".into(),
            format!("{} ({:.1}%)", self.neg_or_impl, self.neg_or_impl_fraction * 100.0),
        ));
        rows.push(("OWL compatible".into(), self.owl_compatible.to_string()));
        if let Some(a) = &self.annotations {
            rows.push(("S".into(), a.s.to_string()));
            rows.push(("S+".into(), a.s_plus.to_string()));
            rows.push(("S-".into(), a.s_minus.to_string()));
            rows.push(("S+/S".into(), format!("{:.3}", a.ratio)));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

impl WikiState {
    /// Corpus statistics. `annotations` maps sentences to a correctness
    /// judgment; unjudged sentences count as not correct.
    pub fn corpus_stats(&self, annotations: Option<&BTreeMap<SentenceId, bool>>) -> Result<StatsReport, WikiError> {
        let mut pattern_counts: BTreeMap<SentencePattern, usize> =
            SentencePattern::ALL.into_iter().map(|p| (p, 0)).collect();
        let mut neg_or_impl = 0;
        let mut owl_compatible = 0;
        let mut sentences = 0;
        for s in self.sentences() {
            sentences += 1;
            *pattern_counts.entry(s.pattern).or_default() += 1;
            let (neg, imp) = contains_neg_or_impl(&s.ast);
            if neg || imp {
                neg_or_impl += 1;
            }
            if s.axiom.owl_compatible() {
                owl_compatible += 1;
            }
        }
        let annotations = match annotations {
            None => None,
            Some(map) => {
                if let Some(id) = map.keys().find(|id| self.sentence(**id).is_err()) {
                    return Err(WikiError::AnnotationForUnknownSentence(*id));
                }
                let s_plus = map.values().filter(|&&ok| ok).count();
                Some(AnnotationSummary {
                    s: sentences,
                    s_plus,
                    s_minus: sentences - s_plus,
                    ratio: fraction(s_plus, sentences),
                })
            }
        };
        Ok(StatsReport {
            sentences,
            pattern_counts,
            neg_or_impl,
            neg_or_impl_fraction: fraction(neg_or_impl, sentences),
            owl_compatible,
            annotations,
        })
    }
}
