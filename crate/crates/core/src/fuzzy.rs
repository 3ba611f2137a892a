//! Triangular fuzzy numbers, the linguistic judgment scale and the linear
//! membership function used by fuzzy preference programming.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error(
        "invalid triangular fuzzy number ({l}, {m}, {u}): require 0 < l <= m <= u, all finite"
    )]
    InvalidTfn { l: f64, m: f64, u: f64 },
    #[error("unknown linguistic term {term:?}; valid terms: {}", valid.join(", "))]
    UnknownTerm { term: String, valid: Vec<String> },
    #[error("invalid linguistic scale: {0}")]
    InvalidScale(String),
    #[error("ratio must be positive and finite, got {0}")]
    NonPositiveRatio(f64),
    #[error("cannot aggregate an empty list of judgments")]
    EmptyAggregation,
}

/// A triangular fuzzy ratio judgment `(l, m, u)` with `0 < l <= m <= u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Tfn {
    l: f64,
    m: f64,
    u: f64,
}

impl Tfn {
    pub fn new(l: f64, m: f64, u: f64) -> Result<Self, FuzzyError> {
        let ok = l.is_finite() && m.is_finite() && u.is_finite() && l > 0.0 && l <= m && m <= u;
        if ok {
            Ok(Tfn { l, m, u })
        } else {
            Err(FuzzyError::InvalidTfn { l, m, u })
        }
    }

    /// A degenerate judgment `l = m = u`.
    pub fn crisp(value: f64) -> Result<Self, FuzzyError> {
        Tfn::new(value, value, value)
    }

    pub fn lower(&self) -> f64 {
        self.l
    }

    pub fn mode(&self) -> f64 {
        self.m
    }

    pub fn upper(&self) -> f64 {
        self.u
    }

    pub fn is_crisp(&self) -> bool {
        self.l == self.m && self.m == self.u
    }

    /// `(1/u, 1/m, 1/l)`: the same judgment read in the opposite direction.
    pub fn reciprocal(&self) -> Tfn {
        Tfn {
            l: 1.0 / self.u,
            m: 1.0 / self.m,
            u: 1.0 / self.l,
        }
    }

    /// Degree to which `ratio` satisfies this judgment.
    ///
    /// Rising branch `(r - l) / (m - l)` at or below the mode, falling branch
    /// `(u - r) / (u - m)` at or above it. Both branches continue linearly
    /// outside `[l, u]`, so the result goes negative for ratios outside the
    /// support. A side with zero spread is a step: 1 at the mode and
    /// `-inf` on that side of it. A crisp judgment is therefore 1 at `m` and
    /// `-inf` everywhere else.
    pub fn membership(&self, ratio: f64) -> Result<f64, FuzzyError> {
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(FuzzyError::NonPositiveRatio(ratio));
        }
        Ok(self.membership_unchecked(ratio))
    }

    pub(crate) fn membership_unchecked(&self, ratio: f64) -> f64 {
        if ratio == self.m {
            1.0
        } else if ratio < self.m {
            if self.m > self.l {
                (ratio - self.l) / (self.m - self.l)
            } else {
                f64::NEG_INFINITY
            }
        } else if self.u > self.m {
            (self.u - ratio) / (self.u - self.m)
        } else {
            f64::NEG_INFINITY
        }
    }
}

impl TryFrom<[f64; 3]> for Tfn {
    type Error = FuzzyError;

    fn try_from(v: [f64; 3]) -> Result<Self, Self::Error> {
        Tfn::new(v[0], v[1], v[2])
    }
}

impl From<Tfn> for [f64; 3] {
    fn from(t: Tfn) -> Self {
        [t.l, t.m, t.u]
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.u)
    }
}

/// Free-function form of [`Tfn::membership`].
pub fn membership(judgment: &Tfn, ratio: f64) -> Result<f64, FuzzyError> {
    judgment.membership(ratio)
}

pub fn reciprocal(judgment: &Tfn) -> Tfn {
    judgment.reciprocal()
}

/// How several experts' judgments on the same pair are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMethod {
    /// Componentwise geometric mean (ratio-scale).
    #[default]
    Geometric,
    /// Componentwise arithmetic mean, for sensitivity checks.
    Arithmetic,
}

/// Componentwise geometric mean of the judgments.
pub fn aggregate_judgments(judgments: &[Tfn]) -> Result<Tfn, FuzzyError> {
    aggregate_judgments_with(judgments, AggregationMethod::Geometric)
}

pub fn aggregate_judgments_with(
    judgments: &[Tfn],
    method: AggregationMethod,
) -> Result<Tfn, FuzzyError> {
    if judgments.is_empty() {
        return Err(FuzzyError::EmptyAggregation);
    }
    let k = judgments.len() as f64;
    let combine = |get: fn(&Tfn) -> f64| -> f64 {
        match method {
            AggregationMethod::Geometric => {
                (judgments.iter().map(|j| get(j).ln()).sum::<f64>() / k).exp()
            }
            AggregationMethod::Arithmetic => judgments.iter().map(get).sum::<f64>() / k,
        }
    };
    let l = combine(|j| j.l);
    let m = combine(|j| j.m);
    let u = combine(|j| j.u);
    // exp/ln round-off can break l <= m <= u by an ulp when inputs coincide
    let m = m.max(l);
    let u = u.max(m);
    Tfn::new(l, m, u)
}

/// An ordered set of linguistic terms, each mapped to a fuzzy ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ScaleEntry>", into = "Vec<ScaleEntry>")]
pub struct LinguisticScale {
    entries: Vec<ScaleEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleEntry {
    pub term: String,
    pub value: Tfn,
}

impl LinguisticScale {
    /// Terms must be unique and modes strictly increasing.
    pub fn new(entries: Vec<ScaleEntry>) -> Result<Self, FuzzyError> {
        if entries.is_empty() {
            return Err(FuzzyError::InvalidScale("scale has no terms".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|p| p.term == e.term) {
                return Err(FuzzyError::InvalidScale(format!(
                    "duplicate term {:?}",
                    e.term
                )));
            }
            if i > 0 && entries[i - 1].value.mode() >= e.value.mode() {
                return Err(FuzzyError::InvalidScale(format!(
                    "modes must strictly increase, but {:?} does not exceed {:?}",
                    e.term,
                    entries[i - 1].term
                )));
            }
        }
        Ok(LinguisticScale { entries })
    }

    /// The five-term scale used in the supply-chain case study.
    pub fn standard() -> Self {
        let rows = [
            ("very low", 1.0, 2.0, 3.0),
            ("low", 2.0, 3.0, 4.0),
            ("medium", 3.0, 4.0, 5.0),
            ("high", 4.0, 5.0, 6.0),
            ("very high", 5.0, 6.0, 7.0),
        ];
        let entries = rows
            .iter()
            .map(|&(term, l, m, u)| ScaleEntry {
                term: term.to_string(),
                value: Tfn { l, m, u },
            })
            .collect();
        LinguisticScale { entries }
    }

    pub fn lookup(&self, term: &str) -> Result<Tfn, FuzzyError> {
        self.entries
            .iter()
            .find(|e| e.term == term)
            .map(|e| e.value)
            .ok_or_else(|| FuzzyError::UnknownTerm {
                term: term.to_string(),
                valid: self.terms().map(str::to_string).collect(),
            })
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.term.as_str())
    }

    pub fn entries(&self) -> &[ScaleEntry] {
        &self.entries
    }
}

impl Default for LinguisticScale {
    fn default() -> Self {
        LinguisticScale::standard()
    }
}

impl TryFrom<Vec<ScaleEntry>> for LinguisticScale {
    type Error = FuzzyError;

    fn try_from(entries: Vec<ScaleEntry>) -> Result<Self, Self::Error> {
        LinguisticScale::new(entries)
    }
}

impl From<LinguisticScale> for Vec<ScaleEntry> {
    fn from(s: LinguisticScale) -> Self {
        s.entries
    }
}

pub fn scale_lookup(term: &str, scale: &LinguisticScale) -> Result<Tfn, FuzzyError> {
    scale.lookup(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tfn(l: f64, m: f64, u: f64) -> Tfn {
        Tfn::new(l, m, u).unwrap()
    }

    #[test]
    fn rejects_invalid_triples() {
        assert!(Tfn::new(0.0, 1.0, 2.0).is_err());
        assert!(Tfn::new(2.0, 1.0, 3.0).is_err());
        assert!(Tfn::new(1.0, 3.0, 2.0).is_err());
        assert!(Tfn::new(1.0, f64::NAN, 2.0).is_err());
        assert!(Tfn::crisp(2.0).unwrap().is_crisp());
    }

    #[test]
    fn standard_scale_lookup() {
        let s = LinguisticScale::standard();
        assert_eq!(scale_lookup("very low", &s).unwrap(), tfn(1.0, 2.0, 3.0));
        assert_eq!(scale_lookup("high", &s).unwrap(), tfn(4.0, 5.0, 6.0));
        assert_eq!(scale_lookup("very high", &s).unwrap(), tfn(5.0, 6.0, 7.0));
        assert_eq!(s.entries().len(), 5);
    }

    #[test]
    fn unknown_term_lists_valid_terms() {
        let err = LinguisticScale::standard().lookup("extreme").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"extreme\""));
        assert!(msg.contains("very low, low, medium, high, very high"));
    }

    #[test]
    fn scale_rejects_duplicates_and_unordered_modes() {
        let e = |t: &str, m: f64| ScaleEntry {
            term: t.into(),
            value: tfn(m, m, m),
        };
        assert!(LinguisticScale::new(vec![e("a", 1.0), e("a", 2.0)]).is_err());
        assert!(LinguisticScale::new(vec![e("a", 2.0), e("b", 2.0)]).is_err());
        assert!(LinguisticScale::new(vec![e("a", 1.0), e("b", 2.0)]).is_ok());
    }

    #[test]
    fn membership_examples() {
        let j = tfn(2.0, 3.0, 4.0);
        assert_eq!(membership(&j, 3.0).unwrap(), 1.0);
        assert!((membership(&j, 2.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((membership(&j, 5.0).unwrap() + 1.0).abs() < 1e-15);
        assert!(membership(&j, 0.0).is_err());
        assert!(membership(&j, -1.0).is_err());
    }

    #[test]
    fn crisp_membership_is_a_spike() {
        let j = Tfn::crisp(2.0).unwrap();
        assert_eq!(j.membership(2.0).unwrap(), 1.0);
        assert_eq!(j.membership(2.0001).unwrap(), f64::NEG_INFINITY);
        assert_eq!(j.membership(1.9999).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn reciprocal_examples() {
        let r = tfn(2.0, 3.0, 4.0).reciprocal();
        assert_eq!(r.lower(), 0.25);
        assert!((r.mode() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.upper(), 0.5);
        assert_eq!(tfn(1.0, 1.0, 1.0).reciprocal(), tfn(1.0, 1.0, 1.0));
        let j = tfn(2.5, 3.47, 4.25);
        let back = j.reciprocal().reciprocal();
        assert!((back.lower() - 2.5).abs() < 1e-12);
        assert!((back.mode() - 3.47).abs() < 1e-12);
        assert!((back.upper() - 4.25).abs() < 1e-12);
    }

    #[test]
    fn aggregation_examples() {
        let close = |a: Tfn, b: Tfn| {
            (a.lower() - b.lower()).abs() < 1e-12
                && (a.mode() - b.mode()).abs() < 1e-12
                && (a.upper() - b.upper()).abs() < 1e-12
        };
        let j = tfn(2.0, 3.0, 4.0);
        assert!(close(aggregate_judgments(&[j, j]).unwrap(), j));
        assert!(close(
            aggregate_judgments(&[tfn(1.0, 2.0, 3.0), tfn(4.0, 8.0, 12.0)]).unwrap(),
            tfn(2.0, 4.0, 6.0)
        ));
        assert!(close(
            aggregate_judgments(&[Tfn::crisp(1.0).unwrap(), Tfn::crisp(4.0).unwrap()]).unwrap(),
            Tfn::crisp(2.0).unwrap()
        ));
        assert!(close(
            aggregate_judgments_with(
                &[tfn(1.0, 2.0, 3.0), tfn(3.0, 4.0, 5.0)],
                AggregationMethod::Arithmetic
            )
            .unwrap(),
            tfn(2.0, 3.0, 4.0)
        ));
        assert_eq!(aggregate_judgments(&[]), Err(FuzzyError::EmptyAggregation));
    }

    fn arb_tfn() -> impl Strategy<Value = Tfn> {
        (0.05f64..10.0, 0.0f64..3.0, 0.0f64..3.0)
            .prop_map(|(l, dm, du)| Tfn::new(l, l + dm, l + dm + du).unwrap())
    }

    fn arb_fuzzy_tfn() -> impl Strategy<Value = Tfn> {
        (0.05f64..10.0, 0.01f64..3.0, 0.01f64..3.0)
            .prop_map(|(l, dm, du)| Tfn::new(l, l + dm, l + dm + du).unwrap())
    }

    proptest! {
        #[test]
        fn membership_boundaries(j in arb_fuzzy_tfn()) {
            prop_assert_eq!(j.membership(j.mode()).unwrap(), 1.0);
            prop_assert!(j.membership(j.lower()).unwrap().abs() < 1e-12);
            prop_assert!(j.membership(j.upper()).unwrap().abs() < 1e-12);
        }

        #[test]
        fn membership_unimodal(j in arb_fuzzy_tfn(), a in 0.01f64..20.0, b in 0.01f64..20.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (ml, mh) = (j.membership(lo).unwrap(), j.membership(hi).unwrap());
            if hi <= j.mode() {
                prop_assert!(ml <= mh + 1e-12);
            }
            if lo >= j.mode() {
                prop_assert!(ml + 1e-12 >= mh);
            }
        }

        #[test]
        fn reciprocal_involution(j in arb_tfn()) {
            let r = j.reciprocal();
            prop_assert!(Tfn::new(r.lower(), r.mode(), r.upper()).is_ok());
            let back = r.reciprocal();
            prop_assert!((back.lower() - j.lower()).abs() <= 1e-12 * j.lower().max(1.0));
            prop_assert!((back.mode() - j.mode()).abs() <= 1e-12 * j.mode().max(1.0));
            prop_assert!((back.upper() - j.upper()).abs() <= 1e-12 * j.upper().max(1.0));
        }

        #[test]
        fn aggregation_of_copies_and_mode_bounds(j in arb_tfn(), k in 1usize..8, others in proptest::collection::vec(arb_tfn(), 1..6)) {
            let agg = aggregate_judgments(&vec![j; k]).unwrap();
            prop_assert!((agg.lower() - j.lower()).abs() < 1e-12 * j.lower().max(1.0));
            prop_assert!((agg.mode() - j.mode()).abs() < 1e-12 * j.mode().max(1.0));
            prop_assert!((agg.upper() - j.upper()).abs() < 1e-12 * j.upper().max(1.0));

            let agg = aggregate_judgments(&others).unwrap();
            let lo = others.iter().map(Tfn::mode).fold(f64::INFINITY, f64::min);
            let hi = others.iter().map(Tfn::mode).fold(0.0, f64::max);
            prop_assert!(agg.mode() >= lo * (1.0 - 1e-12) && agg.mode() <= hi * (1.0 + 1e-12));
        }
    }
}
