//! Topological types of simply connected, closed, oriented, smoothable
//! 4-manifolds.
//!
//! Every value here implicitly describes a simply connected smooth manifold
//! with vanishing Kirby–Siebenmann invariant. Under those assumptions the
//! triple `(b₂⁺, b₂⁻, parity)` determines the homeomorphism type, so no
//! intersection-form matrices are carried around.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("b2 ranks must be non-negative, got b2+={b2_plus}, b2-={b2_minus}")]
    NegativeRank { b2_plus: i64, b2_minus: i64 },
    #[error("even intersection form with signature {sigma} violates Rokhlin (sigma must be divisible by 16)")]
    Rokhlin { sigma: i64 },
    #[error("e + sigma = {} is not divisible by 4; (e={e}, sigma={sigma}) cannot underlie a complex surface", e + sigma)]
    NonIntegralChi { e: i64, sigma: i64 },
    #[error("(e={e}, sigma={sigma}) is not realized by a simply connected closed 4-manifold")]
    Unrealizable { e: i64, sigma: i64 },
    #[error("cannot parse topological type {0:?}; expected `b2plus,b2minus,parity`")]
    Parse(String),
}

/// Parity of the intersection form. Even forms are exactly the spin ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_spin(self) -> bool {
        self == Parity::Even
    }

    pub fn from_spin(spin: bool) -> Self {
        if spin {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" | "spin" => Ok(Parity::Even),
            "odd" | "non-spin" | "nonspin" => Ok(Parity::Odd),
            _ => Err(TopoError::Parse(s.to_string())),
        }
    }
}

/// Euler characteristic and signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CharNumbers {
    pub e: i64,
    pub sigma: i64,
}

impl CharNumbers {
    pub const fn new(e: i64, sigma: i64) -> Self {
        Self { e, sigma }
    }

    /// `2e + 3σ`, which equals `c₁²` for a complex surface.
    pub fn c1sq(&self) -> i64 {
        2 * self.e + 3 * self.sigma
    }

    /// Hitchin–Thorpe margin `2e − 3|σ|`; non-negative iff the inequality holds.
    pub fn hitchin_thorpe_margin(&self) -> i64 {
        2 * self.e - 3 * self.sigma.abs()
    }
}

/// Chern numbers `(c₁², χ)` of a complex surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChernNumbers {
    pub c1sq: i64,
    pub chi: i64,
}

impl ChernNumbers {
    pub const fn new(c1sq: i64, chi: i64) -> Self {
        Self { c1sq, chi }
    }
}

/// Homeomorphism-relevant data of a simply connected smoothable 4-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct TopologicalType {
    b2_plus: i64,
    b2_minus: i64,
    parity: Parity,
}

#[derive(Deserialize)]
struct RawType {
    b2_plus: i64,
    b2_minus: i64,
    parity: Parity,
}

impl TryFrom<RawType> for TopologicalType {
    type Error = TopoError;

    fn try_from(raw: RawType) -> Result<Self, Self::Error> {
        TopologicalType::new(raw.b2_plus, raw.b2_minus, raw.parity)
    }
}

impl TopologicalType {
    /// The 4-sphere, identity for connected sum.
    pub const SPHERE: TopologicalType = TopologicalType {
        b2_plus: 0,
        b2_minus: 0,
        parity: Parity::Even,
    };
    /// ℂP².
    pub const CP2: TopologicalType = TopologicalType {
        b2_plus: 1,
        b2_minus: 0,
        parity: Parity::Odd,
    };
    /// ℂP² with reversed orientation; connected sum with it is a blowup.
    pub const CP2_BAR: TopologicalType = TopologicalType {
        b2_plus: 0,
        b2_minus: 1,
        parity: Parity::Odd,
    };

    /// Validates ranks and the Rokhlin constraint for even forms.
    pub fn new(b2_plus: i64, b2_minus: i64, parity: Parity) -> Result<Self, TopoError> {
        if b2_plus < 0 || b2_minus < 0 {
            return Err(TopoError::NegativeRank { b2_plus, b2_minus });
        }
        let sigma = b2_plus - b2_minus;
        if parity == Parity::Even && sigma.rem_euclid(16) != 0 {
            return Err(TopoError::Rokhlin { sigma });
        }
        Ok(Self {
            b2_plus,
            b2_minus,
            parity,
        })
    }

    /// Recovers `(b₂⁺, b₂⁻)` from `(e, σ)`.
    pub fn from_char(c: CharNumbers, parity: Parity) -> Result<Self, TopoError> {
        let b2 = c.e - 2;
        if b2 < 0 || (b2 + c.sigma).rem_euclid(2) != 0 || c.sigma.abs() > b2 {
            return Err(TopoError::Unrealizable {
                e: c.e,
                sigma: c.sigma,
            });
        }
        Self::new((b2 + c.sigma) / 2, (b2 - c.sigma) / 2, parity)
    }

    pub fn b2_plus(&self) -> i64 {
        self.b2_plus
    }

    pub fn b2_minus(&self) -> i64 {
        self.b2_minus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn char_numbers(&self) -> CharNumbers {
        char_numbers(self)
    }

    pub fn connected_sum(&self, other: &TopologicalType) -> TopologicalType {
        connected_sum(self, other)
    }

    pub fn blowup(&self, k: u32) -> TopologicalType {
        blowup(self, k)
    }

    pub fn reversed(&self) -> TopologicalType {
        orientation_reverse(self)
    }
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.b2_plus, self.b2_minus, self.parity)
    }
}

impl FromStr for TopologicalType {
    type Err = TopoError;

    /// Parses `b2plus,b2minus,parity`, e.g. `1,8,odd`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [plus, minus, parity] = parts.as_slice() else {
            return Err(TopoError::Parse(s.to_string()));
        };
        let parse = |v: &str| {
            v.parse::<i64>()
                .map_err(|_| TopoError::Parse(s.to_string()))
        };
        TopologicalType::new(parse(plus)?, parse(minus)?, parity.parse()?)
    }
}

pub fn char_numbers(t: &TopologicalType) -> CharNumbers {
    CharNumbers {
        e: 2 + t.b2_plus + t.b2_minus,
        sigma: t.b2_plus - t.b2_minus,
    }
}

/// `e = 12χ − c₁²`, `σ = c₁² − 8χ`.
pub fn chern_to_char(c: ChernNumbers) -> CharNumbers {
    CharNumbers {
        e: 12 * c.chi - c.c1sq,
        sigma: c.c1sq - 8 * c.chi,
    }
}

/// `c₁² = 2e + 3σ`, `χ = (e + σ)/4`; fails when `χ` would not be an integer.
pub fn char_to_chern(c: CharNumbers) -> Result<ChernNumbers, TopoError> {
    let sum = c.e + c.sigma;
    if sum.rem_euclid(4) != 0 {
        return Err(TopoError::NonIntegralChi {
            e: c.e,
            sigma: c.sigma,
        });
    }
    Ok(ChernNumbers {
        c1sq: c.c1sq(),
        chi: sum / 4,
    })
}

pub fn connected_sum(t1: &TopologicalType, t2: &TopologicalType) -> TopologicalType {
    let parity = if t1.parity == Parity::Even && t2.parity == Parity::Even {
        Parity::Even
    } else {
        Parity::Odd
    };
    // Signatures add, so Rokhlin is preserved for even sums.
    TopologicalType {
        b2_plus: t1.b2_plus + t2.b2_plus,
        b2_minus: t1.b2_minus + t2.b2_minus,
        parity,
    }
}

/// `t # k·ℂP̄²`.
pub fn blowup(t: &TopologicalType, k: u32) -> TopologicalType {
    if k == 0 {
        return *t;
    }
    TopologicalType {
        b2_plus: t.b2_plus,
        b2_minus: t.b2_minus + i64::from(k),
        parity: Parity::Odd,
    }
}

/// Homeomorphism test for simply connected smoothable types.
pub fn freedman_homeomorphic(t1: &TopologicalType, t2: &TopologicalType) -> bool {
    t1 == t2
}

/// `2e ≥ 3|σ|` (or `>` when `strict`), compared in integers.
pub fn hitchin_thorpe(c: CharNumbers, strict: bool) -> bool {
    let margin = c.hitchin_thorpe_margin();
    if strict {
        margin > 0
    } else {
        margin >= 0
    }
}

/// True when the Hitchin–Thorpe inequality is an equality (`2e = 3|σ|`).
pub fn hitchin_thorpe_equality(c: CharNumbers) -> bool {
    c.hitchin_thorpe_margin() == 0
}

pub fn orientation_reverse(t: &TopologicalType) -> TopologicalType {
    TopologicalType {
        b2_plus: t.b2_minus,
        b2_minus: t.b2_plus,
        parity: t.parity,
    }
}
