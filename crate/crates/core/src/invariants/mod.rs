//! Rank formulas for pattern homology, Euler characteristics, K-theory ranks and the
//! substitution obstruction verdict.

mod chain;
mod obstruction;
mod ranks;
mod wedge;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::ArrangementError;
use crate::decimal;

pub use chain::{closed_euler, euler_chain};
pub use obstruction::{obstruction_check, ObstructionInput, ObstructionVerdict, Reason, SchemeRanks, Verdict};
pub use ranks::{analyze, ranks_codim1, ranks_codim2, ranks_codim3, Analysis};
pub use wedge::wedge_span_rank;

/// Stable rule identifiers used in reports.
pub mod rules {
    /// rk Γ must be a multiple of dim V (scheme form: N − rk Δ a multiple of N − rk Δ − d).
    pub const DIVISIBILITY: &str = "rank-divisibility";
    /// Every stabilizer of an l-dimensional intersection has rank l·ν.
    pub const STABILIZER_RANK: &str = "stabilizer-rank";
    /// A stabilizer of infinite index in its projected group forces infinitely many point orbits.
    pub const PROJECTED_INDEX: &str = "projected-index";
    /// Enumeration of point orbits terminated with an infinite coset set.
    pub const POINT_ORBITS: &str = "point-orbits";
    /// Generic slopes force stabilizer rank deficits.
    pub const GENERIC_POSITION: &str = "generic-position";
    pub const CODIM1: &str = "codim1-ranks";
    pub const CODIM2: &str = "codim2-ranks";
    pub const CODIM3: &str = "codim3-ranks";
    pub const CHAIN_EULER: &str = "chain-euler";
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("orbit tables are infinite: {0}")]
    InfiniteTables(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Which hypotheses of the closed formulas were checked and found to hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub indecomposable: bool,
    pub l0_finite: bool,
}

/// Codimension-specific intermediate quantities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Auxiliary {
    Codim1 {
        #[serde(with = "decimal::bigint")]
        l0: BigInt,
    },
    Codim2 {
        #[serde(with = "decimal::bigint")]
        l1: BigInt,
        #[serde(with = "decimal::bigint")]
        l0: BigInt,
        /// r_1, r_2, … up to the last nonzero value.
        #[serde(with = "decimal::bigint_vec")]
        r: Vec<BigInt>,
    },
    Codim3 {
        #[serde(with = "decimal::bigint")]
        l2: BigInt,
        #[serde(with = "decimal::bigint")]
        l1: BigInt,
        #[serde(with = "decimal::bigint")]
        l0: BigInt,
        #[serde(with = "decimal::bigint")]
        l1_tilde: BigInt,
        /// R_1, R_2, … up to the last nonzero value.
        #[serde(with = "decimal::bigint_vec")]
        big_r: Vec<BigInt>,
    },
    /// Codimension four and above: only the chain Euler characteristic is available.
    NoClosedFormula,
}

/// Ranks D_p of the pattern homology and derived quantities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub codim: usize,
    #[serde(with = "decimal::rational")]
    pub nu: BigRational,
    /// D_0, D_1, … up to the last nonzero value; empty when no closed formula applies.
    #[serde(with = "decimal::bigint_vec")]
    pub d: Vec<BigInt>,
    #[serde(with = "decimal::bigint")]
    pub e: BigInt,
    pub aux: Auxiliary,
    /// K_0 and K_1 ranks; absent when no closed formula applies.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub k0_rank: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub k1_rank: Option<BigInt>,
    pub flags: HypothesisFlags,
    pub free_abelian: bool,
    /// Rule identifiers of the formulas used.
    pub rules: Vec<String>,
    /// Cohomology ranks H^0, H^1, … of a codimension-one scheme, when derived from one.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint_vec")]
    pub cohomology: Option<Vec<BigInt>>,
}

mod opt_bigint {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        use serde::de::Error;
        Option::<String>::deserialize(d)?.map(|s| s.parse::<BigInt>().map_err(D::Error::custom)).transpose()
    }
}

mod opt_bigint_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(xs) => s.collect_seq(xs.iter().map(ToString::to_string)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        use serde::de::Error;
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|xs| xs.iter().map(|s| s.parse::<BigInt>().map_err(D::Error::custom)).collect())
            .transpose()
    }
}

/// K_0 and K_1 ranks: sums of D_p over even and odd p.
pub fn ktheory_ranks(d: &[BigInt]) -> (BigInt, BigInt) {
    let mut k = (BigInt::from(0), BigInt::from(0));
    for (p, x) in d.iter().enumerate() {
        if p % 2 == 0 {
            k.0 += x;
        } else {
            k.1 += x;
        }
    }
    k
}

/// Alternating sum Σ (−1)^p D_p.
pub fn alternating_sum(d: &[BigInt]) -> BigInt {
    d.iter()
        .enumerate()
        .fold(BigInt::from(0), |acc, (p, x)| if p % 2 == 0 { acc + x } else { acc - x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ktheory_examples() {
        assert_eq!(ktheory_ranks(&zv(&[180, 71, 12, 1])), (BigInt::from(192), BigInt::from(72)));
        assert_eq!(ktheory_ranks(&zv(&[1])), (BigInt::from(1), BigInt::from(0)));
        assert_eq!(ktheory_ranks(&zv(&[2, 1])), (BigInt::from(2), BigInt::from(1)));
    }

    #[test]
    fn alternating_sum_example() {
        assert_eq!(alternating_sum(&zv(&[180, 71, 12, 1])), BigInt::from(120));
    }
}

#[cfg(test)]
mod worked_examples;
