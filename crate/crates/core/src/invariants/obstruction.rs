use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::rules;
use crate::exact::FieldVector;
use crate::arrangement::{
    direction_key, enumerate_level, indecomposable_components, independent_subsets, projected_group, stabilizer,
    Arrangement, ArrangementError,
};

/// Integer data of a projection scheme, used for the divisibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRanks {
    pub n: usize,
    pub d: usize,
    pub rk_delta: usize,
}

/// What the obstruction check runs on.
#[derive(Clone, Debug)]
pub struct ObstructionInput<'a> {
    /// `None` when the scheme has infinitely many hyperplane classes; only the
    /// divisibility test is available then.
    pub arrangement: Option<&'a Arrangement>,
    pub scheme: Option<SchemeRanks>,
    /// Upper bound on enumerated subsets and point-orbit cosets.
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NoObstruction,
    InfinitelyGenerated,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
    pub notes: Vec<String>,
    pub implication: String,
}

impl ObstructionVerdict {
    fn close(verdict: Verdict, reasons: Vec<Reason>, notes: Vec<String>) -> Self {
        let implication = match verdict {
            Verdict::InfinitelyGenerated => {
                "cohomology is infinitely generated, so the pattern is not a substitution tiling"
            }
            Verdict::NoObstruction => "no obstruction to finitely generated cohomology was found",
            Verdict::Unknown => "the available checks are inconclusive",
        };
        ObstructionVerdict { verdict, reasons, notes, implication: implication.to_string() }
    }
}

fn reason(rule: &str, witness: String) -> Reason {
    Reason { rule: rule.to_string(), witness }
}

/// Runs the divisibility, stabilizer-rank, projected-index and point-orbit checks in order.
///
/// Any witness yields `InfinitelyGenerated`. `NoObstruction` needs indecomposable normals,
/// every stabilizer rank equal to l·ν and finitely many point orbits.
pub fn obstruction_check(input: &ObstructionInput<'_>) -> ObstructionVerdict {
    let mut reasons = Vec::new();
    let mut notes = Vec::new();

    if let Some(s) = input.scheme {
        let rk = s.n - s.rk_delta;
        let m = rk.saturating_sub(s.d);
        if m > 0 && rk % m != 0 {
            reasons.push(reason(
                rules::DIVISIBILITY,
                format!("N - rk Delta = {rk} is not divisible by N - rk Delta - d = {m}"),
            ));
        }
        if s.n > s.d + 1 {
            notes.push(format!(
                "{}: if E is in generic position then N > d + 1 forces infinitely generated cohomology; genericity is not tested",
                rules::GENERIC_POSITION
            ));
        }
    }

    let Some(arr) = input.arrangement else {
        notes.push("hyperplane classes are not finite in number; only the divisibility test was run".into());
        let verdict = if reasons.is_empty() { Verdict::Unknown } else { Verdict::InfinitelyGenerated };
        return ObstructionVerdict::close(verdict, reasons, notes);
    };

    let m = arr.dim_v();
    let r = arr.rank_gamma();
    let indecomposable = match indecomposable_components(&arr.normals()) {
        Ok(parts) => parts.len() == 1,
        Err(e) => {
            notes.push(format!("decomposition failed: {e}"));
            false
        }
    };
    let mut conforming = indecomposable;

    if !indecomposable {
        notes.push("normals are decomposable; stabilizer-rank checks skipped".into());
    } else if r % m != 0 {
        conforming = false;
        if input.scheme.is_none() {
            reasons.push(reason(rules::DIVISIBILITY, format!("rk Gamma = {r} is not divisible by dim V = {m}")));
        }
    } else {
        let nu = r / m;
        match stabilizer_witness(arr, nu, input.cap) {
            Ok(None) => {}
            Ok(Some(w)) => {
                conforming = false;
                reasons.push(reason(rules::STABILIZER_RANK, w));
            }
            Err(e) => {
                conforming = false;
                notes.push(format!("stabilizer-rank check incomplete: {e}"));
            }
        }
    }

    match projected_index_witness(arr, input.cap) {
        Ok(Some(w)) => reasons.push(reason(rules::PROJECTED_INDEX, w)),
        Ok(None) => {}
        Err(e) => notes.push(format!("projected-index probe incomplete: {e}")),
    }

    let mut l0_finite = false;
    if reasons.is_empty() {
        match enumerate_level(arr, 0, input.cap) {
            Ok(points) => {
                l0_finite = true;
                notes.push(format!("L0 = {}", points.len()));
            }
            Err(ArrangementError::InfiniteOrbitSet { subset, .. }) => reasons.push(reason(
                rules::POINT_ORBITS,
                format!("infinitely many point orbits on the transversal {subset:?}"),
            )),
            Err(e) => notes.push(format!("point-orbit enumeration incomplete: {e}")),
        }
    }

    let verdict = if !reasons.is_empty() {
        Verdict::InfinitelyGenerated
    } else if conforming && l0_finite {
        Verdict::NoObstruction
    } else {
        Verdict::Unknown
    };
    ObstructionVerdict::close(verdict, reasons, notes)
}

/// First independent subset whose stabilizer rank differs from l·ν.
fn stabilizer_witness(arr: &Arrangement, nu: usize, cap: usize) -> Result<Option<String>, ArrangementError> {
    let m = arr.dim_v();
    let mut cache: HashMap<Vec<FieldVector>, usize> = HashMap::new();
    for size in 1..m {
        let l = m - size;
        for a in independent_subsets(arr, size, cap)? {
            let rows: Vec<_> = a.iter().map(|&i| arr.hyperplanes()[i].normal.clone()).collect();
            let key = direction_key(&rows);
            let rank = *cache.entry(key.clone()).or_insert_with(|| stabilizer(arr, &key).rank());
            if rank != l * nu {
                return Ok(Some(format!(
                    "hyperplanes {a:?} meet in a {l}-dimensional space whose stabilizer has rank {rank}, expected {}",
                    l * nu
                )));
            }
        }
    }
    Ok(None)
}

/// First transversal family and subset A with rk Γ^A < rk Γ_A.
fn projected_index_witness(arr: &Arrangement, cap: usize) -> Result<Option<String>, ArrangementError> {
    let m = arr.dim_v();
    let mut seen: HashSet<(Vec<FieldVector>, Vec<FieldVector>)> = HashSet::new();
    for t in independent_subsets(arr, m, cap)? {
        for size in 1..m {
            for a in (0..m).combinations(size) {
                let (inside, outside): (Vec<_>, Vec<_>) = (0..m).partition(|p| a.contains(p));
                let rows = |ps: &[usize]| -> Vec<_> { ps.iter().map(|&p| arr.hyperplanes()[t[p]].normal.clone()).collect() };
                let key = (direction_key(&rows(&inside)), direction_key(&rows(&outside)));
                if !seen.insert(key.clone()) {
                    continue;
                }
                let stab = stabilizer(arr, &key.0).rank();
                let proj = projected_group(arr, &t, &a)?.rank;
                if stab < proj {
                    let hs: Vec<usize> = a.iter().map(|&p| t[p]).collect();
                    return Ok(Some(format!(
                        "within the transversal {t:?}, hyperplanes {hs:?} have stabilizer rank {stab} below projected rank {proj}"
                    )));
                }
            }
        }
    }
    Ok(None)
}
