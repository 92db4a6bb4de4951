//! CSV / JSON emission and the verdict summary.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::record::{BoundRecord, TheoremTag, Verdict};
use crate::{HarnessError, Result};

pub const CSV_HEADER: [&str; 15] = [
    "model",
    "theorem",
    "a",
    "b",
    "s",
    "q",
    "lhs",
    "rhs",
    "gap",
    "ratio",
    "hyp_class",
    "hyp_monotone",
    "hyp_fprime_a",
    "verdict",
    "discrepancy",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &BoundRecord) -> [String; 15] {
    [
        r.model.clone(),
        r.theorem.to_string(),
        fmt_float(r.a),
        fmt_float(r.b),
        opt_float(r.s),
        opt_float(r.q),
        opt_float(r.lhs),
        opt_float(r.rhs),
        opt_float(r.gap),
        opt_float(r.ratio),
        opt_bool(r.hyp_class),
        opt_bool(r.hyp_monotone),
        opt_bool(r.hyp_fprime_a),
        r.verdict.to_string(),
        r.discrepancy.join(";"),
    ]
}

pub fn write_csv<W: Write>(records: &[BoundRecord], out: W) -> Result<()> {
    if records.is_empty() {
        return Err(HarnessError::EmptyReport);
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(csv_row(r))?;
    }
    w.flush().map_err(|source| HarnessError::Io {
        path: "<csv>".into(),
        source,
    })
}

pub fn to_csv_string(records: &[BoundRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub summary: Summary,
    pub records: Vec<BoundRecord>,
}

pub fn to_json_string(records: &[BoundRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::EmptyReport);
    }
    let report = Report {
        summary: Summary::from_records(records),
        records: records.to_vec(),
    };
    Ok(serde_json::to_string_pretty(&report)?)
}

pub fn from_json_str(text: &str) -> Result<Report> {
    Ok(serde_json::from_str(text)?)
}

pub fn render(records: &[BoundRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv_string(records),
        Format::Json => to_json_string(records),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub violation: usize,
    pub outside_hypotheses: usize,
    pub eval_error: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Violation => self.violation += 1,
            Verdict::OutsideHypotheses => self.outside_hypotheses += 1,
            Verdict::EvalError => self.eval_error += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.violation + self.outside_hypotheses + self.eval_error
    }
}

/// How a proposition fares regardless of its stated hypotheses.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PropositionAudit {
    pub evaluated: usize,
    /// Records whose hypotheses (including `|f'(a)| <= 1`) all held.
    pub hypotheses_hold: usize,
    /// `lhs <= stated rhs` among evaluable records.
    pub stated_holds: usize,
    pub stated_evaluable: usize,
    /// `lhs <= rhs routed through the bound composites`.
    pub routed_holds: usize,
    pub routed_evaluable: usize,
}

impl PropositionAudit {
    pub fn stated_pass_rate(&self) -> Option<f64> {
        (self.stated_evaluable > 0).then(|| self.stated_holds as f64 / self.stated_evaluable as f64)
    }

    pub fn routed_pass_rate(&self) -> Option<f64> {
        (self.routed_evaluable > 0).then(|| self.routed_holds as f64 / self.routed_evaluable as f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub verdicts: BTreeMap<TheoremTag, VerdictCounts>,
    pub propositions: BTreeMap<TheoremTag, PropositionAudit>,
    /// Identity tags that came out discrepant, with counts.
    pub discrepancies: BTreeMap<String, usize>,
    pub max_lemma_residual: Option<f64>,
    pub findings: Vec<String>,
}

impl Summary {
    pub fn from_records(records: &[BoundRecord]) -> Self {
        let mut s = Summary {
            records: records.len(),
            ..Default::default()
        };
        for r in records {
            s.verdicts.entry(r.theorem).or_default().add(r.verdict);
            for tag in &r.discrepancy {
                if tag.ends_with(":discrepant") {
                    *s.discrepancies.entry(tag.clone()).or_default() += 1;
                }
            }
            if let Some(&res) = r.residuals.get("lemma1") {
                s.max_lemma_residual = Some(s.max_lemma_residual.map_or(res, |m: f64| m.max(res)));
            }
            if r.theorem.is_proposition() {
                let audit = s.propositions.entry(r.theorem).or_default();
                audit.evaluated += 1;
                if r.hypotheses_hold() && r.verdict != Verdict::EvalError {
                    audit.hypotheses_hold += 1;
                }
                if let Some(ok) = r.holds_empirically(1e-12) {
                    audit.stated_evaluable += 1;
                    audit.stated_holds += ok as usize;
                }
                if let (Some(l), Some(&rr)) = (r.lhs, r.residuals.get("rhs_via_bounds")) {
                    audit.routed_evaluable += 1;
                    audit.routed_holds += (l <= rr + 1e-12) as usize;
                }
            }
        }
        s.findings = s.derive_findings();
        s
    }

    pub fn violations(&self) -> usize {
        self.verdicts.values().map(|c| c.violation).sum()
    }

    fn derive_findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let v = self.violations();
        if v == 0 {
            out.push("no violations among records whose hypotheses held".to_string());
        } else {
            out.push(format!("{v} violation(s) among records whose hypotheses held"));
        }
        for (tag, audit) in &self.propositions {
            if audit.hypotheses_hold == 0 && audit.evaluated > 0 {
                out.push(format!(
                    "{tag}: no record satisfies all hypotheses (the power model has |f'(a)| = a^(s-1) > 1 for 0 < a < 1)"
                ));
            }
            if let Some(rate) = audit.stated_pass_rate() {
                out.push(format!(
                    "{tag}: stated bound holds empirically on {}/{} evaluable records ({:.1}%)",
                    audit.stated_holds,
                    audit.stated_evaluable,
                    100.0 * rate
                ));
            }
            if let Some(rate) = audit.routed_pass_rate() {
                out.push(format!(
                    "{tag}: bound routed through the composites holds on {}/{} records ({:.1}%)",
                    audit.routed_holds,
                    audit.routed_evaluable,
                    100.0 * rate
                ));
            }
        }
        for (tag, n) in &self.discrepancies {
            out.push(format!("{tag} on {n} record(s)"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(-2.5), "-2.5000000000000000e0");
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -1e-300] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn empty_report_is_an_error() {
        assert!(matches!(to_csv_string(&[]), Err(HarnessError::EmptyReport)));
        assert!(matches!(to_json_string(&[]), Err(HarnessError::EmptyReport)));
    }

    #[test]
    fn csv_row_leaves_absent_values_empty() {
        let mut r = BoundRecord::new("m", TheoremTag::Eq8, 1.0, 2.0);
        r.verdict = Verdict::OutsideHypotheses;
        r.hyp_class = Some(false);
        let row = csv_row(&r);
        assert_eq!(row[4], "");
        assert_eq!(row[10], "false");
        assert_eq!(row[11], "");
        assert_eq!(row[13], "outside-hypotheses");
    }
}
