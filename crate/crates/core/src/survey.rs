//! Screening arithmetic that precedes the ranking: CASP article appraisal,
//! Delphi consensus rounds, and Cronbach's alpha for questionnaire
//! reliability.

use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurveyError {
    #[error("CASP score needs exactly 10 criteria, got {0}")]
    CaspLength(usize),
    #[error("CASP criterion {index} is {value}, expected 1..=5")]
    CaspRange { index: usize, value: u8 },
    #[error("Delphi ratings need at least one item and one expert")]
    EmptyRatings,
    #[error("rating {value} for item {item:?} by expert {expert:?} is outside 0..=4")]
    RatingRange {
        item: String,
        expert: String,
        value: u8,
    },
    #[error("ratings matrix shape does not match {items} items x {experts} experts")]
    Shape { items: usize, experts: usize },
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("consensus threshold must be in (0, 1], got {0}")]
    Threshold(f64),
    #[error("round {round} rates [{}] but the deferred set of the previous round is [{}]", got.join(", "), expected.join(", "))]
    RoundMismatch {
        round: usize,
        expected: Vec<String>,
        got: Vec<String>,
    },
    #[error("no Delphi rounds given")]
    NoRounds,
    #[error("responses need at least 2 items and 2 respondents, got {items} x {respondents}")]
    TooFewResponses { items: usize, respondents: usize },
    #[error("respondent {row} has {got} responses, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("response at respondent {row}, item {col} is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("total-score variance is zero; alpha is undefined")]
    ZeroVariance,
}

/// Ten CASP criteria, each scored 1..=5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaspScore([u8; 10]);

impl CaspScore {
    pub fn new(criteria: &[u8]) -> Result<Self, SurveyError> {
        let arr: [u8; 10] = criteria
            .try_into()
            .map_err(|_| SurveyError::CaspLength(criteria.len()))?;
        if let Some((index, &value)) = arr.iter().enumerate().find(|(_, v)| !(1..=5).contains(*v)) {
            return Err(SurveyError::CaspRange { index, value });
        }
        Ok(CaspScore(arr))
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&v| v as u32).sum()
    }

    pub fn mean(&self) -> f64 {
        self.total() as f64 / 10.0
    }
}

/// An article passes when its mean criterion score is strictly above 4.
pub fn casp_pass(score: &CaspScore) -> bool {
    score.total() > 40
}

/// One Delphi round: `ratings[item][expert]` on the 0..=4 importance scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelphiRatings {
    items: Vec<String>,
    experts: Vec<String>,
    ratings: Vec<Vec<u8>>,
}

impl DelphiRatings {
    pub fn new(
        items: Vec<String>,
        experts: Vec<String>,
        ratings: Vec<Vec<u8>>,
    ) -> Result<Self, SurveyError> {
        if items.is_empty() || experts.is_empty() {
            return Err(SurveyError::EmptyRatings);
        }
        unique(&items)?;
        unique(&experts)?;
        if ratings.len() != items.len() || ratings.iter().any(|r| r.len() != experts.len()) {
            return Err(SurveyError::Shape {
                items: items.len(),
                experts: experts.len(),
            });
        }
        for (i, row) in ratings.iter().enumerate() {
            for (e, &v) in row.iter().enumerate() {
                if v > 4 {
                    return Err(SurveyError::RatingRange {
                        item: items[i].clone(),
                        expert: experts[e].clone(),
                        value: v,
                    });
                }
            }
        }
        Ok(DelphiRatings {
            items,
            experts,
            ratings,
        })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn experts(&self) -> &[String] {
        &self.experts
    }

    pub fn ratings(&self, item: usize) -> &[u8] {
        &self.ratings[item]
    }

    /// Share of experts rating `item` important (3) or very important (4).
    pub fn consensus(&self, item: usize) -> f64 {
        self.important_count(item) as f64 / self.experts.len() as f64
    }

    fn important_count(&self, item: usize) -> usize {
        self.ratings[item].iter().filter(|&&v| v >= 3).count()
    }
}

fn unique(ids: &[String]) -> Result<(), SurveyError> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(SurveyError::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelphiRound {
    pub accepted: Vec<String>,
    pub deferred: Vec<String>,
    /// Consensus share per item, in input order.
    pub consensus: IndexMap<String, f64>,
}

fn check_threshold(threshold: f64) -> Result<(), SurveyError> {
    if threshold > 0.0 && threshold <= 1.0 {
        Ok(())
    } else {
        Err(SurveyError::Threshold(threshold))
    }
}

/// Accepts items whose important/very-important share reaches `threshold`
/// (inclusive); defers the rest.
pub fn delphi_round(r: &DelphiRatings, threshold: f64) -> Result<DelphiRound, SurveyError> {
    check_threshold(threshold)?;
    let n = r.experts.len() as f64;
    let mut out = DelphiRound {
        accepted: Vec::new(),
        deferred: Vec::new(),
        consensus: IndexMap::new(),
    };
    for (i, item) in r.items.iter().enumerate() {
        // count >= t·n, with slack for t·n landing just above an integer
        let ok = r.important_count(i) as f64 >= threshold * n - 1e-9;
        out.consensus.insert(item.clone(), r.consensus(i));
        if ok {
            out.accepted.push(item.clone());
        } else {
            out.deferred.push(item.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelphiOutcome {
    pub rounds: Vec<DelphiRound>,
    /// Union of every round's accepted items, in acceptance order.
    pub accepted: Vec<String>,
    /// Still deferred after the last round; dropped from the study.
    pub dropped: Vec<String>,
}

/// Runs successive rounds; each round must rate exactly the previous
/// round's deferred items.
pub fn run_delphi(rounds: &[DelphiRatings], threshold: f64) -> Result<DelphiOutcome, SurveyError> {
    check_threshold(threshold)?;
    if rounds.is_empty() {
        return Err(SurveyError::NoRounds);
    }
    let mut results = Vec::with_capacity(rounds.len());
    let mut accepted = Vec::new();
    let mut pending: Option<Vec<String>> = None;
    for (k, r) in rounds.iter().enumerate() {
        if let Some(expected) = &pending {
            let want: HashSet<&String> = expected.iter().collect();
            let got: HashSet<&String> = r.items.iter().collect();
            if want != got {
                return Err(SurveyError::RoundMismatch {
                    round: k + 1,
                    expected: expected.clone(),
                    got: r.items.clone(),
                });
            }
        }
        let res = delphi_round(r, threshold)?;
        accepted.extend(res.accepted.iter().cloned());
        pending = Some(res.deferred.clone());
        results.push(res);
    }
    Ok(DelphiOutcome {
        rounds: results,
        accepted,
        dropped: pending.unwrap_or_default(),
    })
}

/// Respondents × items questionnaire responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemResponses {
    items: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ItemResponses {
    pub fn new(items: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, SurveyError> {
        if items.len() < 2 || rows.len() < 2 {
            return Err(SurveyError::TooFewResponses {
                items: items.len(),
                respondents: rows.len(),
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != items.len() {
                return Err(SurveyError::Ragged {
                    row: r,
                    expected: items.len(),
                    got: row.len(),
                });
            }
            if let Some(c) = row.iter().position(|v| !v.is_finite()) {
                return Err(SurveyError::NonFinite { row: r, col: c });
            }
        }
        Ok(ItemResponses { items, rows })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn respondents(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceConvention {
    /// Divisor `N - 1`.
    #[default]
    Sample,
    /// Divisor `N`.
    Population,
}

fn variance(xs: impl Iterator<Item = f64> + Clone, conv: VarianceConvention) -> f64 {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    let ss: f64 = xs.map(|x| (x - mean) * (x - mean)).sum();
    match conv {
        VarianceConvention::Sample => ss / (n - 1.0),
        VarianceConvention::Population => ss / n,
    }
}

pub fn cronbach_alpha(x: &ItemResponses) -> Result<f64, SurveyError> {
    cronbach_alpha_with(x, VarianceConvention::Sample)
}

/// `k/(k-1) · (1 - Σ var(item) / var(total))`.
pub fn cronbach_alpha_with(
    x: &ItemResponses,
    conv: VarianceConvention,
) -> Result<f64, SurveyError> {
    let k = x.items.len();
    let item_var: f64 = (0..k)
        .map(|c| variance(x.rows.iter().map(move |r| r[c]), conv))
        .sum();
    let total_var = variance(x.rows.iter().map(|r| r.iter().sum::<f64>()), conv);
    if total_var <= 1e-12 * item_var.max(1.0) {
        return Err(SurveyError::ZeroVariance);
    }
    let k = k as f64;
    Ok(k / (k - 1.0) * (1.0 - item_var / total_var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ids(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn casp_examples() {
        assert!(casp_pass(&CaspScore::new(&[5; 10]).unwrap()));
        assert!(!casp_pass(&CaspScore::new(&[4; 10]).unwrap()));
        let s = CaspScore::new(&[5, 5, 5, 5, 5, 4, 4, 4, 4, 4]).unwrap();
        assert_eq!(s.mean(), 4.5);
        assert!(casp_pass(&s));
        assert_eq!(CaspScore::new(&[4; 9]), Err(SurveyError::CaspLength(9)));
        assert!(matches!(
            CaspScore::new(&[4, 4, 4, 0, 4, 4, 4, 4, 4, 4]),
            Err(SurveyError::CaspRange { index: 3, value: 0 })
        ));
    }

    #[test]
    fn delphi_boundary_is_inclusive() {
        let r = DelphiRatings::new(
            ids("I", 2),
            ids("E", 4),
            vec![vec![4, 3, 3, 1], vec![2, 2, 3, 4]],
        )
        .unwrap();
        let out = delphi_round(&r, 0.75).unwrap();
        assert_eq!(out.accepted, ["I1"]);
        assert_eq!(out.deferred, ["I2"]);
        assert_eq!(out.consensus["I1"], 0.75);
        assert_eq!(out.consensus["I2"], 0.5);
        assert!(delphi_round(&r, 0.0).is_err());
        assert!(delphi_round(&r, 1.5).is_err());
    }

    #[test]
    fn delphi_rejects_bad_ratings() {
        assert!(matches!(
            DelphiRatings::new(ids("I", 1), ids("E", 2), vec![vec![5, 1]]),
            Err(SurveyError::RatingRange { value: 5, .. })
        ));
        assert!(matches!(
            DelphiRatings::new(ids("I", 1), ids("E", 2), vec![vec![1]]),
            Err(SurveyError::Shape { .. })
        ));
        assert_eq!(
            DelphiRatings::new(vec![], ids("E", 2), vec![]),
            Err(SurveyError::EmptyRatings)
        );
    }

    #[test]
    fn run_delphi_single_and_two_rounds() {
        let all =
            DelphiRatings::new(ids("I", 2), ids("E", 2), vec![vec![4, 4], vec![3, 3]]).unwrap();
        let out = run_delphi(std::slice::from_ref(&all), 0.75).unwrap();
        assert_eq!(out.accepted, ["I1", "I2"]);
        assert!(out.dropped.is_empty());

        let r1 = DelphiRatings::new(
            ids("I", 3),
            ids("E", 2),
            vec![vec![4, 4], vec![0, 3], vec![1, 1]],
        )
        .unwrap();
        let r2 = DelphiRatings::new(
            vec!["I3".into(), "I2".into()],
            ids("E", 2),
            vec![vec![1, 2], vec![4, 3]],
        )
        .unwrap();
        let out = run_delphi(&[r1.clone(), r2], 0.75).unwrap();
        assert_eq!(out.accepted, ["I1", "I2"]);
        assert_eq!(out.dropped, ["I3"]);

        let wrong = DelphiRatings::new(ids("I", 1), ids("E", 2), vec![vec![4, 4]]).unwrap();
        assert!(matches!(
            run_delphi(&[r1, wrong], 0.75),
            Err(SurveyError::RoundMismatch { round: 2, .. })
        ));
    }

    /// 30 items over 8 experts; round 1 has exactly 7 items at >= 6 of 8
    /// important, round 2 re-rates the other 23 with exactly 3 passing.
    #[test]
    fn thirty_item_fixture_accepts_seven_then_three() {
        let experts = ids("E", 8);
        let items = ids("C", 30);
        let row = |important: usize| -> Vec<u8> {
            (0..8)
                .map(|e| {
                    if e < important {
                        3 + (e % 2) as u8
                    } else {
                        (e % 3) as u8
                    }
                })
                .collect()
        };
        let r1: Vec<Vec<u8>> = (0..30)
            .map(|i| {
                row(if i % 4 == 0 && i < 28 {
                    6 + i % 3
                } else {
                    i % 6
                })
            })
            .collect();
        let round1 = DelphiRatings::new(items.clone(), experts.clone(), r1.clone()).unwrap();

        // brute-force count independent of delphi_round
        let pass1: Vec<String> = items
            .iter()
            .zip(&r1)
            .filter(|(_, r)| r.iter().filter(|&&v| v == 3 || v == 4).count() * 4 >= 3 * 8)
            .map(|(i, _)| i.clone())
            .collect();
        assert_eq!(pass1.len(), 7);

        let deferred: Vec<String> = items
            .iter()
            .filter(|i| !pass1.contains(i))
            .cloned()
            .collect();
        let r2: Vec<Vec<u8>> = (0..deferred.len())
            .map(|k| row(if k < 3 { 6 } else { 5 }))
            .collect();
        let round2 = DelphiRatings::new(deferred, experts, r2).unwrap();

        let out = run_delphi(&[round1, round2], 0.75).unwrap();
        assert_eq!(out.rounds[0].accepted, pass1);
        assert_eq!(out.rounds[1].accepted.len(), 3);
        assert_eq!(out.accepted.len(), 10);
        assert_eq!(out.dropped.len(), 20);
    }

    #[test]
    fn alpha_examples() {
        let col = [2.0, 4.0, 3.0, 5.0, 1.0];
        let same =
            ItemResponses::new(ids("Q", 3), col.iter().map(|&v| vec![v, v, v]).collect()).unwrap();
        assert!((cronbach_alpha(&same).unwrap() - 1.0).abs() < 1e-12);

        let opposite = ItemResponses::new(
            ids("Q", 2),
            vec![
                vec![1.0, 4.0],
                vec![2.0, 3.0],
                vec![3.0, 2.0],
                vec![4.0, 1.0],
            ],
        )
        .unwrap();
        assert_eq!(cronbach_alpha(&opposite), Err(SurveyError::ZeroVariance));
        assert!(ItemResponses::new(ids("Q", 1), vec![vec![1.0], vec![2.0]]).is_err());
        assert!(matches!(
            ItemResponses::new(ids("Q", 2), vec![vec![1.0, 2.0], vec![1.0]]),
            Err(SurveyError::Ragged { row: 1, .. })
        ));
    }

    #[test]
    fn population_convention_differs_only_by_scale() {
        let x = ItemResponses::new(
            ids("Q", 3),
            vec![
                vec![1.0, 2.0, 2.0],
                vec![3.0, 3.0, 4.0],
                vec![2.0, 2.0, 1.0],
                vec![4.0, 5.0, 4.0],
            ],
        )
        .unwrap();
        // the N vs N-1 factor cancels in the variance ratio
        let a = cronbach_alpha_with(&x, VarianceConvention::Sample).unwrap();
        let b = cronbach_alpha_with(&x, VarianceConvention::Population).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn delphi_threshold_monotone(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..=4, 5), 1..10),
            t1 in 0.05f64..1.0, t2 in 0.05f64..1.0,
        ) {
            let r = DelphiRatings::new(ids("I", rows.len()), ids("E", 5), rows).unwrap();
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let a_lo = delphi_round(&r, lo).unwrap().accepted;
            let a_hi = delphi_round(&r, hi).unwrap().accepted;
            prop_assert!(a_hi.iter().all(|i| a_lo.contains(i)));
        }

        #[test]
        fn delphi_expert_permutation_invariant(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..=4, 4), 1..8),
            shift in 0usize..4,
        ) {
            let r = DelphiRatings::new(ids("I", rows.len()), ids("E", 4), rows.clone()).unwrap();
            let rotated: Vec<Vec<u8>> = rows.iter().map(|row| {
                let mut v = row.clone();
                v.rotate_left(shift);
                v
            }).collect();
            let mut experts = ids("E", 4);
            experts.rotate_left(shift);
            let p = DelphiRatings::new(ids("I", rows.len()), experts, rotated).unwrap();
            prop_assert_eq!(delphi_round(&r, 0.75).unwrap(), delphi_round(&p, 0.75).unwrap());
        }

        #[test]
        fn casp_monotone(base in proptest::collection::vec(1u8..=5, 10), idx in 0usize..10) {
            let before = casp_pass(&CaspScore::new(&base).unwrap());
            let mut raised = base.clone();
            raised[idx] = (raised[idx] + 1).min(5);
            let after = casp_pass(&CaspScore::new(&raised).unwrap());
            prop_assert!(!before || after);
        }

        #[test]
        fn alpha_never_exceeds_one(
            rows in proptest::collection::vec(proptest::collection::vec(0.0f64..5.0, 4), 3..12)
        ) {
            let x = ItemResponses::new(ids("Q", 4), rows).unwrap();
            if let Ok(a) = cronbach_alpha(&x) {
                prop_assert!(a <= 1.0 + 1e-12);
            }
        }
    }
}
