//! Seiberg–Witten blowup bookkeeping and the blowup obstruction to Einstein
//! metrics.
//!
//! Non-vanishing of a Seiberg–Witten invariant is an input axiom. Nothing
//! analytic is computed; the obstruction is recorded as an exact chain of
//! integer/rational comparisons in `(e, σ, k)` that can be re-checked by any
//! consumer.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topo::{self, CharNumbers, TopologicalType};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("no non-zero Seiberg–Witten invariant is known for the input manifold")]
    MissingSw,
    #[error("b2+ = {0} but the blowup obstruction needs b2+ > 1")]
    B2PlusTooSmall(i64),
}

/// A manifold together with the (assumed) non-vanishing of some SW invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwManifold {
    pub topo: TopologicalType,
    pub has_nonzero_sw: bool,
    pub provenance: String,
}

impl SwManifold {
    pub fn new(topo: TopologicalType, provenance: impl Into<String>) -> Self {
        Self {
            topo,
            has_nonzero_sw: true,
            provenance: provenance.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A Spin^c first Chern class `m·c₁(Y) ± E₁ ± … ± E_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FormalClass {
    pub base_coeff: i64,
    pub exceptional: Vec<Sign>,
}

impl FormalClass {
    pub fn new(base_coeff: i64) -> Self {
        Self {
            base_coeff,
            exceptional: Vec::new(),
        }
    }

    /// Square of the class given `c₁(Y)²`; each `Eᵢ` contributes `−1`.
    pub fn square(&self, base_square: i64) -> i64 {
        self.base_coeff * self.base_coeff * base_square - self.exceptional.len() as i64
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}c", self.base_coeff)?;
        for (idx, s) in self.exceptional.iter().enumerate() {
            let sym = if *s == Sign::Plus { '+' } else { '-' };
            write!(f, " {sym} E{}", idx + 1)?;
        }
        Ok(())
    }
}

/// Classes with non-zero SW invariant after `k` further blowups: every input
/// class `c` yields `c ± E_{n+1} ± … ± E_{n+k}`.
pub fn blowup_classes(classes: &BTreeSet<FormalClass>, k: u32) -> BTreeSet<FormalClass> {
    assert!(k < 64, "2^{k} sign choices per class");
    classes
        .iter()
        .flat_map(|c| {
            (0..1u64 << k).map(move |mask| {
                let mut exceptional = Vec::with_capacity(c.exceptional.len() + k as usize);
                exceptional.extend_from_slice(&c.exceptional);
                // Highest bit first keeps the output in lexicographic order.
                exceptional.extend((0..k).rev().map(|j| {
                    if mask >> j & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                }));
                FormalClass {
                    base_coeff: c.base_coeff,
                    exceptional,
                }
            })
        })
        .collect()
}

/// Non-negativity of the expected moduli dimension: `c₁² ≥ 2e + 3σ`.
pub fn moduli_dim_nonneg(c1sq: i64, c: CharNumbers) -> bool {
    c1sq >= c.c1sq()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: Rational, rhs: Rational) -> bool {
        let ord = lhs.cmp(&rhs);
        match self {
            Relation::Eq => ord == Ordering::Equal,
            Relation::Lt => ord == Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Le => ord != Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
        }
    }

    fn of(lhs: Rational, rhs: Rational) -> Self {
        match lhs.cmp(&rhs) {
            Ordering::Less => Relation::Lt,
            Ordering::Equal => Relation::Eq,
            Ordering::Greater => Relation::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

/// Serializes rationals as `p/q` strings (plain `p` for integers).
pub mod rational_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepLabel {
    /// `2e(X) + 3σ(X) = 2e(Y) + 3σ(Y) − k`.
    BlowupArithmetic,
    /// `(1/32π²)∫s² ≥ (c₁(P̃(X))⁺)² ≥ c₁(P̃(Y))² ≥ 2e(Y)+3σ(Y) = 2e(X)+3σ(X)+k`.
    ScalarCurvatureBound,
    /// For Einstein `g`: `2e(X)+3σ(X) = (1/4π²)∫(s²/24 + 2|W₊|²) ≥ (1/3)(2e(X)+3σ(X)+k)`.
    EinsteinChernWeil,
    /// Einstein forces `k ≤ (2/3)(2e(Y)+3σ(Y))`.
    Threshold,
}

/// One recorded comparison. `relation` is the one that actually holds
/// between `lhs` and `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: StepLabel,
    pub statement: String,
    #[serde(with = "rational_str")]
    pub lhs: Rational,
    pub relation: Relation,
    #[serde(with = "rational_str")]
    pub rhs: Rational,
}

impl Step {
    pub fn holds(&self) -> bool {
        self.relation.holds(self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Obstructed,
    NotObstructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub y_char: CharNumbers,
    pub k: u32,
    pub x_char: CharNumbers,
    /// `2e(X) + 3σ(X) + k`, the lower bound for `(1/32π²)∫s²`.
    #[serde(with = "rational_str")]
    pub lhs_bound: Rational,
    /// `(1/3)(2e(X) + 3σ(X) + k)`, what an Einstein metric needs below `2e(X)+3σ(X)`.
    #[serde(with = "rational_str")]
    pub einstein_bound: Rational,
    pub conclusion: Conclusion,
    pub steps: Vec<Step>,
    /// `2e(X) = 3|σ(X)|`; informational only.
    pub hitchin_equality: bool,
    pub notes: Vec<String>,
}

impl ObstructionCertificate {
    pub fn is_obstructed(&self) -> bool {
        self.conclusion == Conclusion::Obstructed
    }

    /// `3k − 2(2e(Y) + 3σ(Y))`; positive exactly when obstructed.
    pub fn margin(&self) -> i64 {
        3 * i64::from(self.k) - 2 * self.y_char.c1sq()
    }

    /// `"3k > 2(2e(Y)+3σ(Y))"` rendered with values, e.g. `"39 > 38"`.
    pub fn margin_line(&self) -> String {
        let lhs = 3 * i64::from(self.k);
        let rhs = 2 * self.y_char.c1sq();
        let rel = match lhs.cmp(&rhs) {
            Ordering::Greater => ">",
            Ordering::Equal => "=",
            Ordering::Less => "<",
        };
        format!("{lhs} {rel} {rhs}")
    }

    /// Re-checks every recorded step and the link between the steps and the
    /// conclusion.
    pub fn is_consistent(&self) -> bool {
        let q = self.y_char.c1sq();
        let k = i64::from(self.k);
        let expected = if 3 * k > 2 * q {
            Conclusion::Obstructed
        } else {
            Conclusion::NotObstructed
        };
        self.steps.iter().all(Step::holds)
            && self.x_char.c1sq() == q - k
            && self.lhs_bound == Rational::from_integer(self.x_char.c1sq() + k)
            && self.einstein_bound == self.lhs_bound / 3
            && self.conclusion == expected
    }
}

/// Tests whether `X = Y # k·ℂP̄²` is barred from carrying an Einstein metric.
///
/// Obstructed exactly when `3k > 2(2e(Y) + 3σ(Y))`.
pub fn einstein_obstructed(
    y: &SwManifold,
    k: u32,
) -> Result<ObstructionCertificate, ObstructionError> {
    if !y.has_nonzero_sw {
        return Err(ObstructionError::MissingSw);
    }
    if y.topo.b2_plus() <= 1 {
        return Err(ObstructionError::B2PlusTooSmall(y.topo.b2_plus()));
    }

    let y_char = y.topo.char_numbers();
    let x_char = topo::blowup(&y.topo, k).char_numbers();
    let kk = i64::from(k);
    let q_y = y_char.c1sq();
    let q_x = x_char.c1sq();

    let int = Rational::from_integer;
    let lhs_bound = int(q_x + kk);
    let einstein_bound = lhs_bound / 3;
    let threshold = int(2 * q_y) / 3;

    let obstructed = 3 * kk > 2 * q_y;
    let conclusion = if obstructed {
        Conclusion::Obstructed
    } else {
        Conclusion::NotObstructed
    };

    let steps = vec![
        Step {
            label: StepLabel::BlowupArithmetic,
            statement: "2e(X)+3σ(X) vs 2e(Y)+3σ(Y) − k".into(),
            lhs: int(q_x),
            relation: Relation::of(int(q_x), int(q_y - kk)),
            rhs: int(q_y - kk),
        },
        Step {
            label: StepLabel::ScalarCurvatureBound,
            statement: "(1/32π²)∫s² ≥ 2e(Y)+3σ(Y) = 2e(X)+3σ(X)+k".into(),
            lhs: int(q_y),
            relation: Relation::of(int(q_y), lhs_bound),
            rhs: lhs_bound,
        },
        Step {
            label: StepLabel::EinsteinChernWeil,
            statement: "Einstein needs 2e(X)+3σ(X) ≥ (1/3)(2e(X)+3σ(X)+k)".into(),
            lhs: int(q_x),
            relation: Relation::of(int(q_x), einstein_bound),
            rhs: einstein_bound,
        },
        Step {
            label: StepLabel::Threshold,
            statement: "Einstein needs k ≤ (2/3)(2e(Y)+3σ(Y))".into(),
            lhs: int(kk),
            relation: Relation::of(int(kk), threshold),
            rhs: threshold,
        },
    ];

    let mut notes = Vec::new();
    if q_y < 0 {
        notes.push(format!(
            "warning: 2e(Y)+3σ(Y) = {q_y} < 0, so Y already violates Hitchin–Thorpe and every k is obstructed"
        ));
    }
    if 3 * kk == 2 * q_y {
        notes.push(
            "borderline k = (2/3)(2e(Y)+3σ(Y)): not obstructed by the strict test; \
             complex or symplectic refinements are not modeled"
                .into(),
        );
    }
    let hitchin_equality = topo::hitchin_thorpe_equality(x_char);
    if hitchin_equality {
        notes.push("X attains Hitchin–Thorpe equality".into());
    }

    Ok(ObstructionCertificate {
        y_char,
        k,
        x_char,
        lhs_bound,
        einstein_bound,
        conclusion,
        steps,
        hitchin_equality,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::{chern_to_char, ChernNumbers, Parity};

    fn persson(i: i64) -> SwManifold {
        let c = chern_to_char(ChernNumbers::new(6 * i + 13, i + 5));
        SwManifold::new(
            TopologicalType::from_char(c, Parity::Odd).unwrap(),
            "minimal surface of general type",
        )
    }

    #[test]
    fn blowup_classes_small() {
        let c: BTreeSet<_> = [FormalClass::new(1)].into();
        assert_eq!(blowup_classes(&c, 0), c);
        let one = blowup_classes(&c, 1);
        let expected: BTreeSet<_> = [Sign::Plus, Sign::Minus]
            .into_iter()
            .map(|s| FormalClass {
                base_coeff: 1,
                exceptional: vec![s],
            })
            .collect();
        assert_eq!(one, expected);
        assert_eq!(blowup_classes(&c, 2).len(), 4);
    }

    #[test]
    fn formal_class_square() {
        let c = FormalClass {
            base_coeff: 1,
            exceptional: vec![Sign::Plus, Sign::Minus, Sign::Plus],
        };
        assert_eq!(c.square(19), 16);
        assert_eq!(c.to_string(), "1c + E1 - E2 + E3");
    }

    #[test]
    fn moduli_dimension() {
        let y = CharNumbers::new(53, -29);
        assert!(moduli_dim_nonneg(y.c1sq(), y));
        assert!(!moduli_dim_nonneg(y.c1sq() - 1, y));
        assert!(moduli_dim_nonneg(0, CharNumbers::new(24, -16)));
    }

    #[test]
    fn persson_family_obstructed() {
        for i in 0..200 {
            let y = persson(i);
            let k = (4 * i + 9) as u32;
            let cert = einstein_obstructed(&y, k).unwrap();
            assert!(cert.is_obstructed());
            assert_eq!(cert.margin(), 1);
            assert!(cert.is_consistent());

            let below = einstein_obstructed(&y, k - 1).unwrap();
            assert_eq!(below.conclusion, Conclusion::NotObstructed);
            assert_eq!(below.margin(), -2);
            assert!(below.is_consistent());

            let none = einstein_obstructed(&y, 0).unwrap();
            assert_eq!(none.conclusion, Conclusion::NotObstructed);
        }
        let cert = einstein_obstructed(&persson(1), 13).unwrap();
        assert_eq!(cert.margin_line(), "39 > 38");
        assert_eq!(cert.y_char, CharNumbers::new(53, -29));
        assert_eq!(cert.x_char, CharNumbers::new(66, -42));
        assert_eq!(cert.lhs_bound, Rational::from_integer(19));
        assert_eq!(cert.einstein_bound, Rational::new(19, 3));
    }

    #[test]
    fn borderline_is_not_obstructed() {
        // Y with 2e+3σ = 3 at k = 2.
        let t = TopologicalType::from_char(chern_to_char(ChernNumbers::new(3, 3)), Parity::Odd)
            .unwrap();
        let cert = einstein_obstructed(&SwManifold::new(t, "test"), 2).unwrap();
        assert_eq!(cert.conclusion, Conclusion::NotObstructed);
        assert_eq!(cert.margin(), 0);
        assert!(cert.notes.iter().any(|n| n.contains("borderline")));
        assert!(cert.is_consistent());
    }

    #[test]
    fn hypothesis_errors() {
        let mut y = persson(0);
        y.has_nonzero_sw = false;
        assert_eq!(einstein_obstructed(&y, 3), Err(ObstructionError::MissingSw));
        let godeaux = TopologicalType::from_char(CharNumbers::new(11, -7), Parity::Odd).unwrap();
        assert_eq!(
            einstein_obstructed(&SwManifold::new(godeaux, "test"), 3),
            Err(ObstructionError::B2PlusTooSmall(1))
        );
    }

    #[test]
    fn negative_c1sq_warns() {
        let t = TopologicalType::new(2, 20, Parity::Odd).unwrap();
        let cert = einstein_obstructed(&SwManifold::new(t, "test"), 0).unwrap();
        assert!(cert.is_obstructed());
        assert!(cert.notes[0].starts_with("warning"));
    }

    #[test]
    fn k3_certificate_flags_equality() {
        let k3 = TopologicalType::new(3, 19, Parity::Even).unwrap();
        let cert = einstein_obstructed(&SwManifold::new(k3, "Kähler"), 0).unwrap();
        assert!(cert.hitchin_equality);
        assert_eq!(cert.conclusion, Conclusion::NotObstructed);
    }

    #[test]
    fn certificate_json_uses_ratio_strings() {
        let cert = einstein_obstructed(&persson(1), 13).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"einstein_bound\":\"19/3\""));
        let back: ObstructionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
