use std::collections::HashMap;

use num_bigint::BigInt;

use super::InvariantsError;
use crate::arrangement::{ClassId, OrbitTables};

/// Euler characteristic as a signed count of strictly ascending singular sequences.
///
/// A sequence Θ_1 ⊂ … ⊂ Θ_k starts at a point class and each member is a relative class of
/// the next. With g(Θ) = Σ (−1)^|c| over sequences ending at Θ we have g = −1 on points and
/// g(Θ) = −Σ g(Ψ) over the relative entries Ψ of Θ, so e = (−1)^dim V Σ_Θ g(Θ).
pub fn euler_chain(tables: &OrbitTables) -> Result<BigInt, InvariantsError> {
    let mut g: HashMap<ClassId, BigInt> = HashMap::new();
    for level in &tables.levels {
        for class in level {
            let value = if class.level == 0 {
                BigInt::from(-1)
            } else {
                let table = tables.relative_table(class.id).ok_or_else(|| {
                    InvariantsError::InfiniteTables(format!("no relative table for class {:?}", class.id))
                })?;
                let mut sum = BigInt::from(0);
                for entry in table.by_level.iter().flatten() {
                    sum += g.get(&entry.class).ok_or_else(|| {
                        InvariantsError::Inconsistent(format!("relative entry {:?} is unknown", entry.class))
                    })?;
                }
                -sum
            };
            g.insert(class.id, value);
        }
    }
    let total: BigInt = g.values().sum();
    Ok(if tables.dim_v % 2 == 0 { total } else { -total })
}

/// The codimension-specific closed Euler expressions (dim V = 1, 2, 3).
///
/// dim V = 1: L_0. dim V = 2: −L_0 + Σ_α L_0^α. dim V = 3:
/// L_0 − Σ_α L_0^α + Σ_α Σ_{Θ∈I_1^α} L_0^Θ − Σ_Θ L_0^Θ.
pub fn closed_euler(tables: &OrbitTables) -> Option<BigInt> {
    let count = |id: ClassId, l: usize| BigInt::from(tables.relative_count(id, l));
    let l0 = BigInt::from(tables.count(0));
    match tables.dim_v {
        1 => Some(l0),
        2 => {
            let s: BigInt = tables.levels[1].iter().map(|a| count(a.id, 0)).sum();
            Some(s - l0)
        }
        3 => {
            let planes = &tables.levels[2];
            let lines = &tables.levels[1];
            let in_planes: BigInt = planes.iter().map(|a| count(a.id, 0)).sum();
            let in_lines: BigInt = lines.iter().map(|t| count(t.id, 0)).sum();
            let nested: BigInt = planes
                .iter()
                .filter_map(|a| tables.relative_table(a.id))
                .flat_map(|t| t.by_level[1].iter())
                .map(|entry| count(entry.class, 0))
                .sum();
            Some(l0 - in_planes + nested - in_lines)
        }
        _ => None,
    }
}
