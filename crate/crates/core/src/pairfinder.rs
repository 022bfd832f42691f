//! Homeomorphic pairs `(X, Z)` where `Z` is a minimal surface with ample
//! canonical bundle (hence Kähler–Einstein) and `X = Y # k·ℂP̄²` is barred
//! from any Einstein metric by the Seiberg–Witten blowup obstruction.
//!
//! Existence of the minimal surfaces `Y` is never verified; it is asserted
//! through a configurable geography region and carried as provenance text.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hirzebruch::{self, Construction, SurfaceRecord};
use crate::obstruction::{self, ObstructionCertificate, ObstructionError, SwManifold};
use crate::topo::{self, ChernNumbers, Parity, TopoError, TopologicalType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("index {i} is below the configured minimum {i_min}")]
    BelowIMin { i: u32, i_min: u32 },
    #[error("chi_min must be at least 1, got {0}")]
    InvalidRange(i64),
    #[error("unknown geography region {0:?} (expected `noether-my` or `noether-8chi`)")]
    UnknownRegion(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
}

/// Region in which minimal simply connected surfaces are assumed to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PerssonRegion {
    /// `2χ − 6 ≤ c₁² ≤ 9χ`, `χ ≥ 1`.
    #[default]
    #[serde(rename = "noether-my")]
    NoetherMy,
    /// `2χ − 6 ≤ c₁² ≤ 8χ`, `χ ≥ 1`.
    #[serde(rename = "noether-8chi")]
    Noether8Chi,
}

impl PerssonRegion {
    pub const ENV_VAR: &'static str = "FOURFOLD_PERSSON_REGION";

    pub fn contains(self, c: ChernNumbers) -> bool {
        let cap = match self {
            PerssonRegion::NoetherMy => 9 * c.chi,
            PerssonRegion::Noether8Chi => 8 * c.chi,
        };
        c.chi >= 1 && 2 * c.chi - 6 <= c.c1sq && c.c1sq <= cap
    }

    /// Reads the region from the environment, defaulting when unset.
    pub fn from_env() -> Result<Self, PairError> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(Self::default()),
        }
    }
}

impl fmt::Display for PerssonRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerssonRegion::NoetherMy => "noether-my",
            PerssonRegion::Noether8Chi => "noether-8chi",
        })
    }
}

impl FromStr for PerssonRegion {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "noether-my" => Ok(PerssonRegion::NoetherMy),
            "noether-8chi" => Ok(PerssonRegion::Noether8Chi),
            other => Err(PairError::UnknownRegion(other.to_string())),
        }
    }
}

/// Integer geography tests on `(c₁², χ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeographyPredicateSet {
    pub persson_region: PerssonRegion,
}

impl GeographyPredicateSet {
    pub fn new(persson_region: PerssonRegion) -> Self {
        Self { persson_region }
    }

    pub fn noether(&self, c: ChernNumbers) -> bool {
        c.c1sq >= 2 * c.chi - 6
    }

    /// `2χ − 6 ≤ c₁² < 3χ`: ample canonical bundle that cannot be very ample.
    pub fn ample_sector(&self, c: ChernNumbers) -> bool {
        self.noether(c) && c.c1sq < 3 * c.chi
    }

    /// Castelnuovo's bound `c₁² ≥ 3χ − 10`, necessary for a very ample canonical bundle.
    pub fn castelnuovo_very_ample(&self, c: ChernNumbers) -> bool {
        c.c1sq >= 3 * c.chi - 10
    }

    pub fn miyaoka_yau(&self, c: ChernNumbers) -> bool {
        c.c1sq <= 9 * c.chi
    }

    pub fn persson_region(&self, c: ChernNumbers) -> bool {
        self.persson_region.contains(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairChecks {
    pub homeomorphic: bool,
    pub strict_hitchin_thorpe: bool,
    pub z_in_ample_sector: bool,
    pub y_in_persson_region: bool,
}

impl PairChecks {
    pub fn all(&self) -> bool {
        self.homeomorphic
            && self.strict_hitchin_thorpe
            && self.z_in_ample_sector
            && self.y_in_persson_region
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Checked by exact arithmetic in this crate.
    pub verified: Vec<String>,
    /// Taken on the authority of the literature.
    pub imported: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinPair {
    /// The Kähler–Einstein side.
    pub z: SurfaceRecord,
    /// The minimal surface that is blown up.
    pub y_chern: ChernNumbers,
    pub k: u32,
    /// The side without Einstein metrics.
    pub x_topo: TopologicalType,
    pub certificate: ObstructionCertificate,
    pub checks: PairChecks,
    /// `c₁²(Z) < 3χ − 10`: `K_Z` cannot be very ample, as the construction requires.
    pub castelnuovo_excludes_very_ample: bool,
    pub provenance: Provenance,
}

impl EinsteinPair {
    pub fn is_verified(&self) -> bool {
        self.checks.all() && self.certificate.is_obstructed()
    }

    /// `2e(X) − 3|σ(X)|`.
    pub fn hitchin_thorpe_margin(&self) -> i64 {
        self.x_topo.char_numbers().hitchin_thorpe_margin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairFinder {
    pub predicates: GeographyPredicateSet,
    /// Smallest Horikawa index for which a companion `Y` is asserted to exist.
    pub i_min: u32,
}

impl PairFinder {
    pub fn new(predicates: GeographyPredicateSet, i_min: u32) -> Self {
        Self { predicates, i_min }
    }

    /// The pair `(Xᵢ, Zᵢ)`: `Zᵢ` Horikawa, `Yᵢ` with `(6i+13, i+5)` blown up `4i+9` times.
    pub fn horikawa_pair(&self, i: u32) -> Result<EinsteinPair, PairError> {
        if i < self.i_min {
            return Err(PairError::BelowIMin {
                i,
                i_min: self.i_min,
            });
        }
        let ii = i64::from(i);
        let z = hirzebruch::horikawa(i);
        let y_chern = ChernNumbers::new(6 * ii + 13, ii + 5);
        self.assemble(z, y_chern, 4 * i + 9)
    }

    /// Builds the pair for a given `Z`, `Y` and blowup count and runs every check.
    pub fn assemble(
        &self,
        z: SurfaceRecord,
        y_chern: ChernNumbers,
        k: u32,
    ) -> Result<EinsteinPair, PairError> {
        // c₁²(Y) odd forces K_Y non-divisible by 2; otherwise Y's parity is
        // irrelevant once it is blown up.
        let y_topo = TopologicalType::from_char(topo::chern_to_char(y_chern), Parity::Odd)?;
        let y = SwManifold::new(
            y_topo,
            "minimal surface of general type (Witten: Kähler, b2+ > 1)",
        );
        let certificate = obstruction::einstein_obstructed(&y, k)?;
        let x_topo = topo::blowup(&y_topo, k);
        let z_topo =
            TopologicalType::from_char(topo::chern_to_char(z.chern), Parity::from_spin(z.spin))?;

        let p = &self.predicates;
        let checks = PairChecks {
            homeomorphic: topo::freedman_homeomorphic(&x_topo, &z_topo),
            strict_hitchin_thorpe: topo::hitchin_thorpe(x_topo.char_numbers(), true),
            z_in_ample_sector: p.ample_sector(z.chern),
            y_in_persson_region: p.persson_region(y_chern) && p.noether(y_chern),
        };

        let mut imported = vec![format!(
            "existence of a simply connected minimal surface Y with (c1^2, chi) = ({}, {}) ({} region assumption)",
            y_chern.c1sq, y_chern.chi, p.persson_region
        )];
        match z.construction {
            Construction::Horikawa { .. } => {
                imported.push("smooth branch curve in |B| and simple connectivity of Z".into());
                if self.i_min == 0 {
                    imported.push(
                        "companions Y are only claimed for i large enough; i_min = 0 is a configuration default".into(),
                    );
                }
            }
            _ => imported
                .push("existence of Z: simply connected, non-spin, ample canonical bundle".into()),
        }
        imported.push("Kähler–Einstein metric on Z (Aubin–Yau, ample canonical bundle)".into());
        imported.push("non-zero Seiberg–Witten invariant of Y (Witten)".into());

        Ok(EinsteinPair {
            castelnuovo_excludes_very_ample: !p.castelnuovo_very_ample(z.chern),
            z,
            y_chern,
            k,
            x_topo,
            certificate,
            checks,
            provenance: Provenance {
                verified: vec![
                    "characteristic-number arithmetic".into(),
                    "Freedman homeomorphism (e, sigma, parity)".into(),
                    "strict Hitchin–Thorpe for X".into(),
                    "blowup obstruction inequality chain".into(),
                ],
                imported,
            },
        })
    }

    /// Scans `(c₁²_Z, χ)` with `chi_min ≤ χ ≤ chi_max` in the ample sector and
    /// pairs each point with the smallest admissible `c₁²_Y > 3·c₁²_Z`.
    ///
    /// Output is sorted by `(χ, c₁²_Z)`.
    pub fn general_search(
        &self,
        chi_min: i64,
        chi_max: i64,
    ) -> Result<Vec<EinsteinPair>, PairError> {
        if chi_min < 1 {
            return Err(PairError::InvalidRange(chi_min));
        }
        let mut pairs: Vec<EinsteinPair> = (chi_min..=chi_max)
            .into_par_iter()
            .flat_map_iter(|chi| self.pairs_at_chi(chi))
            .collect();
        pairs.sort_by_key(|p| (p.z.chern.chi, p.z.chern.c1sq));
        Ok(pairs)
    }

    fn pairs_at_chi(&self, chi: i64) -> Vec<EinsteinPair> {
        let p = &self.predicates;
        // c₁² ≥ 1 for minimal surfaces of general type.
        let lo = (2 * chi - 6).max(1);
        (lo..3 * chi)
            .map(|c1sq| ChernNumbers::new(c1sq, chi))
            .filter(|z| p.ample_sector(*z))
            .filter_map(|z| {
                // 3k > 2c₁²(Y) with k = c₁²(Y) − c₁²(Z)  ⇔  c₁²(Y) > 3c₁²(Z);
                // no surface of general type lies above the Miyaoka–Yau line.
                let y_c1sq = (3 * z.c1sq + 1..=9 * chi).find(|&c| {
                    p.persson_region(ChernNumbers::new(c, chi))
                        && p.noether(ChernNumbers::new(c, chi))
                })?;
                let k = u32::try_from(y_c1sq - z.c1sq).ok()?;
                let record = SurfaceRecord {
                    chern: z,
                    spin: false,
                    ample_canonical: true,
                    simply_connected: true,
                    construction: Construction::LatticePoint,
                };
                // b2+(Y) = 2χ − 1 ≤ 1 fails the obstruction hypotheses; skip.
                self.assemble(record, ChernNumbers::new(y_c1sq, chi), k)
                    .ok()
                    .filter(EinsteinPair::is_verified)
            })
            .collect()
    }
}

/// The pair `ℂP² # 8ℂP̄²` versus a simply connected numerical Godeaux surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveNegativePair {
    pub x_topo: TopologicalType,
    pub blowups: u32,
    pub y: SurfaceRecord,
    pub y_topo: TopologicalType,
    pub homeomorphic: bool,
    pub strict_hitchin_thorpe: bool,
    pub hitchin_thorpe_margin: i64,
    pub x_label: String,
    pub y_label: String,
}

pub fn positive_negative_pair() -> Result<PositiveNegativePair, PairError> {
    let blowups = 8;
    let x_topo = topo::blowup(&TopologicalType::CP2, blowups);
    // (1, 1) is forced by the homeomorphism with ℂP² # 8ℂP̄².
    let y = SurfaceRecord {
        chern: ChernNumbers::new(1, 1),
        spin: false,
        ample_canonical: true,
        simply_connected: true,
        construction: Construction::NumericalGodeaux,
    };
    let y_topo = TopologicalType::from_char(topo::chern_to_char(y.chern), Parity::Odd)?;
    let x_char = x_topo.char_numbers();
    Ok(PositiveNegativePair {
        x_topo,
        blowups,
        homeomorphic: topo::freedman_homeomorphic(&x_topo, &y_topo),
        strict_hitchin_thorpe: topo::hitchin_thorpe(x_char, true),
        hitchin_thorpe_margin: x_char.hitchin_thorpe_margin(),
        y,
        y_topo,
        x_label: "positive scalar curvature Kähler–Einstein (Tian–Yau), imported".into(),
        y_label: "negative scalar curvature Kähler–Einstein (Aubin–Yau), imported".into(),
    })
}
