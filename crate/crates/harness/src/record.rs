use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which inequality a record tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremTag {
    /// Classical bound for convex `|f'|`.
    Eq8,
    /// Classical Hölder-type bound for convex `|f'|^{p/(p-1)}`.
    Eq9,
    /// `(b-a)/2 · G1` for s-geometrically convex `|f'|`.
    Eq10,
    /// `(b-a)/(2(p+1)^{1/p}) · G2` for s-geometrically convex `|f'|^q`.
    Eq11,
    /// `(b-a)/2 · (1/4)^{1-1/q} · G3` for s-geometrically convex `|f'|^q`.
    Eq111,
    Prop41,
    Prop32,
    Prop33,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 8] = [
        TheoremTag::Eq8,
        TheoremTag::Eq9,
        TheoremTag::Eq10,
        TheoremTag::Eq11,
        TheoremTag::Eq111,
        TheoremTag::Prop41,
        TheoremTag::Prop32,
        TheoremTag::Prop33,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::Eq8 => "eq8",
            TheoremTag::Eq9 => "eq9",
            TheoremTag::Eq10 => "eq10",
            TheoremTag::Eq11 => "eq11",
            TheoremTag::Eq111 => "eq111",
            TheoremTag::Prop41 => "prop41",
            TheoremTag::Prop32 => "prop32",
            TheoremTag::Prop33 => "prop33",
        }
    }

    pub fn is_proposition(self) -> bool {
        matches!(self, TheoremTag::Prop41 | TheoremTag::Prop32 | TheoremTag::Prop33)
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Violation,
    OutsideHypotheses,
    EvalError,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violation => "violation",
            Verdict::OutsideHypotheses => "outside-hypotheses",
            Verdict::EvalError => "eval-error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verification row.
///
/// Parameters that do not apply to a theorem (`s` for the classical bounds,
/// `q` where no exponent enters) are `None`; for `eq9` the `q` column holds
/// the exponent on `|f'|`, i.e. `q = p/(p-1)`. Non-finite quantities are stored
/// as `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub model: String,
    pub theorem: TheoremTag,
    pub a: f64,
    pub b: f64,
    pub s: Option<f64>,
    pub q: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub ratio: Option<f64>,
    pub hyp_class: Option<bool>,
    pub hyp_monotone: Option<bool>,
    pub hyp_fprime_a: Option<bool>,
    pub verdict: Verdict,
    /// `name:status` tags from two-route identity checks.
    pub discrepancy: Vec<String>,
    /// Oracle residuals and alternate-route values, keyed by name.
    pub residuals: BTreeMap<String, f64>,
    pub error: Option<String>,
}

impl BoundRecord {
    pub fn new(model: impl Into<String>, theorem: TheoremTag, a: f64, b: f64) -> Self {
        Self {
            model: model.into(),
            theorem,
            a,
            b,
            s: None,
            q: None,
            lhs: None,
            rhs: None,
            gap: None,
            ratio: None,
            hyp_class: None,
            hyp_monotone: None,
            hyp_fprime_a: None,
            verdict: Verdict::EvalError,
            discrepancy: Vec::new(),
            residuals: BTreeMap::new(),
            error: None,
        }
    }

    /// True if every applicable hypothesis flag passed.
    pub fn hypotheses_hold(&self) -> bool {
        [self.hyp_class, self.hyp_monotone, self.hyp_fprime_a]
            .iter()
            .all(|f| f.unwrap_or(true))
    }

    /// Empirical truth of `lhs <= rhs + slack`, regardless of hypotheses.
    pub fn holds_empirically(&self, slack: f64) -> Option<bool> {
        Some(self.lhs? <= self.rhs? + slack)
    }

    /// Canonical ordering used before emission.
    pub fn sort_key_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let opt = |v: Option<f64>| v.unwrap_or(f64::NEG_INFINITY);
        self.model
            .cmp(&other.model)
            .then(self.a.total_cmp(&other.a))
            .then(self.b.total_cmp(&other.b))
            .then(self.theorem.cmp(&other.theorem))
            .then(opt(self.s).total_cmp(&opt(other.s)))
            .then(opt(self.q).total_cmp(&opt(other.q)))
    }
}

pub(crate) fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}
