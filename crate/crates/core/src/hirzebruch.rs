//! Divisor classes on Hirzebruch surfaces Σᵢ and invariants of double covers
//! branched along them.
//!
//! `Pic(Σᵢ)` is generated by the negative section `S` (with `S² = −i`) and the
//! fiber `F`, with `S·F = 1` and `F² = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topo::ChernNumbers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HirzebruchError {
    #[error("divisor classes live on different surfaces (Σ{0} vs Σ{1})")]
    BaseMismatch(u32, u32),
    #[error("branch class {0} is not divisible by 2 in Pic")]
    OddBranch(DivisorClass),
    #[error("L·(L+K) = {0} is odd; χ of the double cover would not be an integer")]
    NonIntegralChi(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HirzebruchSurface {
    pub index: u32,
}

impl HirzebruchSurface {
    pub const fn new(index: u32) -> Self {
        Self { index }
    }

    pub fn class(&self, a: i64, b: i64) -> DivisorClass {
        DivisorClass {
            a,
            b,
            base: self.index,
        }
    }

    /// The section `S` with `S² = −i`.
    pub fn section(&self) -> DivisorClass {
        self.class(1, 0)
    }

    pub fn fiber(&self) -> DivisorClass {
        self.class(0, 1)
    }

    /// Branch class `6S + 2(2i+3)F` of the Horikawa double cover.
    pub fn horikawa_branch(&self) -> DivisorClass {
        self.class(6, 2 * (2 * i64::from(self.index) + 3))
    }

    pub fn canonical_class(&self) -> DivisorClass {
        canonical_class(*self)
    }
}

/// The class `a·S + b·F` on `Σ_base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
    pub base: u32,
}

impl DivisorClass {
    pub fn surface(&self) -> HirzebruchSurface {
        HirzebruchSurface::new(self.base)
    }

    pub fn intersect(&self, other: &DivisorClass) -> Result<i64, HirzebruchError> {
        intersect(self, other)
    }

    pub fn is_two_divisible(&self) -> bool {
        self.a % 2 == 0 && self.b % 2 == 0
    }

    /// Exact half of a 2-divisible class.
    pub fn half(&self) -> Result<DivisorClass, HirzebruchError> {
        if !self.is_two_divisible() {
            return Err(HirzebruchError::OddBranch(*self));
        }
        Ok(DivisorClass {
            a: self.a / 2,
            b: self.b / 2,
            base: self.base,
        })
    }

    fn same_base(&self, other: &DivisorClass) -> Result<(), HirzebruchError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(HirzebruchError::BaseMismatch(self.base, other.base))
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}S{:+}F on Σ{}", self.a, self.b, self.base)
    }
}

// Arithmetic on classes of different surfaces is a programming error.
impl Add for DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: DivisorClass) -> DivisorClass {
        assert_eq!(
            self.base, rhs.base,
            "adding classes on different Hirzebruch surfaces"
        );
        DivisorClass {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            base: self.base,
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        self + (-rhs)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            a: -self.a,
            b: -self.b,
            base: self.base,
        }
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            a: self * rhs.a,
            b: self * rhs.b,
            base: rhs.base,
        }
    }
}

/// `(a₁S + b₁F)·(a₂S + b₂F) = −i·a₁a₂ + a₁b₂ + a₂b₁`.
pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<i64, HirzebruchError> {
    d1.same_base(d2)?;
    let i = i64::from(d1.base);
    Ok(-i * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b)
}

/// `K_Σ = −2S − (i+2)F`, obtained as `(S + (i+1)F) − B/2` for the Horikawa
/// branch class `B`.
pub fn canonical_class(s: HirzebruchSurface) -> DivisorClass {
    let i = i64::from(s.index);
    let twisted = s.section() + (i + 1) * s.fiber();
    let half_branch = s.class(3, 2 * i + 3);
    twisted - half_branch
}

/// `(c₁², χ)` of the double cover of `s` branched along a smooth curve in
/// `branch`: with `L = branch/2`, `c₁² = 2(K+L)²` and `χ = 2 + ½·L·(L+K)`.
pub fn double_cover_invariants(
    s: HirzebruchSurface,
    branch: &DivisorClass,
) -> Result<ChernNumbers, HirzebruchError> {
    let k = canonical_class(s);
    k.same_base(branch)?;
    let l = branch.half()?;
    let kl = k + l;
    let c1sq = 2 * intersect(&kl, &kl)?;
    let ll = intersect(&l, &kl)?;
    if ll % 2 != 0 {
        return Err(HirzebruchError::NonIntegralChi(ll));
    }
    // χ(O_Σ) = 1 for every rational ruled surface.
    Ok(ChernNumbers::new(c1sq, 2 + ll / 2))
}

/// Nakai–Moishezon on Σᵢ: `aS + bF` is ample iff `a > 0` and `b > a·i`.
pub fn is_ample(d: &DivisorClass) -> bool {
    d.a > 0 && d.b > d.a * i64::from(d.base)
}

/// How a [`SurfaceRecord`] came about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Double cover of Σᵢ branched along `6S + 2(2i+3)F`.
    Horikawa { i: u32 },
    /// Minimal surface with a numerical Godeaux invariant pair `(1, 1)`.
    NumericalGodeaux,
    /// A geography lattice point whose realization is assumed.
    LatticePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub chern: ChernNumbers,
    pub spin: bool,
    pub ample_canonical: bool,
    pub simply_connected: bool,
    pub construction: Construction,
}

/// Verdicts reported alongside a Horikawa surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorikawaAmpleness {
    pub branch: DivisorClass,
    /// Numerical verdict for the branch class itself (fails for `i ≥ 3`).
    pub branch_ample: bool,
    /// `K_Σ + B/2 = S + (i+1)F`, whose pullback is `K_Z`.
    pub canonical_pushdown: DivisorClass,
    pub canonical_pushdown_ample: bool,
    pub canonical_two_divisible: bool,
}

pub fn horikawa_ampleness(i: u32) -> HorikawaAmpleness {
    let s = HirzebruchSurface::new(i);
    let branch = s.horikawa_branch();
    let half = branch.half().expect("Horikawa branch class is even");
    let pushdown = canonical_class(s) + half;
    HorikawaAmpleness {
        branch,
        branch_ample: is_ample(&branch),
        canonical_pushdown: pushdown,
        canonical_pushdown_ample: is_ample(&pushdown),
        canonical_two_divisible: pushdown.is_two_divisible(),
    }
}

/// The Horikawa surface `Zᵢ`.
///
/// Simple connectivity is recorded on the strength of the branch curve being
/// ample, even where the numerical criterion in [`is_ample`] disagrees; see
/// [`horikawa_ampleness`].
pub fn horikawa(i: u32) -> SurfaceRecord {
    let s = HirzebruchSurface::new(i);
    let chern =
        double_cover_invariants(s, &s.horikawa_branch()).expect("Horikawa branch class is even");
    let verdicts = horikawa_ampleness(i);
    SurfaceRecord {
        chern,
        spin: verdicts.canonical_two_divisible,
        ample_canonical: verdicts.canonical_pushdown_ample,
        simply_connected: true,
        construction: Construction::Horikawa { i },
    }
}
