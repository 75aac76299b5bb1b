use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::{
    alternating_sum, closed_euler, euler_chain, ktheory_ranks, rules, wedge_span_rank, Auxiliary,
    HypothesisFlags, InvariantsError, RankReport,
};
use crate::arrangement::{compute_tables, indecomposable_components, Arrangement, ArrangementError, OrbitTables};
use crate::exact::Lattice;

/// C(n, k), zero outside 0 ≤ k ≤ n.
fn binom(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn trim_trailing_zeros(mut v: Vec<BigInt>, keep: usize) -> Vec<BigInt> {
    while v.len() > keep && v.last().is_some_and(|x| *x == BigInt::from(0)) {
        v.pop();
    }
    v
}

fn check_nonnegative(d: &[BigInt]) -> Result<(), InvariantsError> {
    match d.iter().position(|x| *x < BigInt::from(0)) {
        Some(p) => Err(InvariantsError::Inconsistent(format!("negative rank D_{p} = {}", d[p]))),
        None => Ok(()),
    }
}

fn finish(
    codim: usize,
    nu: BigRational,
    d: Vec<BigInt>,
    e: BigInt,
    aux: Auxiliary,
    flags: HypothesisFlags,
    rule: &str,
) -> Result<RankReport, InvariantsError> {
    check_nonnegative(&d)?;
    let alt = alternating_sum(&d);
    if alt != e {
        return Err(InvariantsError::Inconsistent(format!("alternating sum {alt} differs from e = {e}")));
    }
    let (k0, k1) = ktheory_ranks(&d);
    Ok(RankReport {
        codim,
        nu,
        d,
        e,
        aux,
        k0_rank: Some(k0),
        k1_rank: Some(k1),
        flags,
        free_abelian: true,
        rules: vec![rule.to_string(), rules::CHAIN_EULER.to_string()],
        cohomology: None,
    })
}

/// Codimension one: D_p = C(ν, p+1) for p > 0 and D_0 = ν − 1 + L_0.
///
/// The cohomology presentation H^m = D_{ν−1−m} is attached.
pub fn ranks_codim1(nu: usize, l0: &BigInt) -> RankReport {
    let mut d = vec![BigInt::from(nu) - 1 + l0];
    d.extend((1..nu).map(|p| binom(nu, p as i64 + 1)));
    let d = trim_trailing_zeros(d, 1);
    let flags = HypothesisFlags { indecomposable: true, l0_finite: true };
    let aux = Auxiliary::Codim1 { l0: l0.clone() };
    let mut report = finish(1, BigRational::from_integer(nu.into()), d, l0.clone(), aux, flags, rules::CODIM1)
        .expect("codimension-one ranks are nonnegative and sum to L_0");
    report.cohomology = Some(report.d.iter().rev().cloned().collect());
    report
}

fn integral_nu(arr: &Arrangement) -> Result<usize, InvariantsError> {
    let (r, m) = (arr.rank_gamma(), arr.dim_v());
    if r % m != 0 {
        return Err(InvariantsError::HypothesisViolated(format!("dim V = {m} does not divide rk Γ = {r}")));
    }
    Ok(r / m)
}

fn require_indecomposable(arr: &Arrangement) -> Result<(), InvariantsError> {
    let parts = indecomposable_components(&arr.normals())?;
    if parts.len() != 1 {
        return Err(InvariantsError::HypothesisViolated(format!(
            "normals decompose into {} components",
            parts.len()
        )));
    }
    Ok(())
}

fn require_codim(tables: &OrbitTables, m: usize) -> Result<(), InvariantsError> {
    if tables.dim_v != m {
        return Err(InvariantsError::HypothesisViolated(format!("formula needs dim V = {m}, got {}", tables.dim_v)));
    }
    Ok(())
}

/// Checks the closed Euler expression against the chain count and returns it.
fn checked_euler(tables: &OrbitTables) -> Result<BigInt, InvariantsError> {
    let chain = euler_chain(tables)?;
    if let Some(closed) = closed_euler(tables) {
        if closed != chain {
            return Err(InvariantsError::Inconsistent(format!("closed Euler value {closed} differs from chain sum {chain}")));
        }
    }
    Ok(chain)
}

/// Codimension two ranks from orbit tables.
pub fn ranks_codim2(arr: &Arrangement, tables: &OrbitTables) -> Result<RankReport, InvariantsError> {
    require_codim(tables, 2)?;
    require_indecomposable(arr)?;
    let nu = integral_nu(arr)?;
    let e = checked_euler(tables)?;
    let l1 = BigInt::from(tables.count(1));
    let lines: Vec<&Lattice> = tables.levels[1].iter().map(|c| &c.stabilizer).collect();
    // r_p for p = 0..=2ν+1; only p ≥ 1 enters the formulas.
    let r: Vec<BigInt> = (0..=2 * nu + 1).map(|p| BigInt::from(wedge_span_rank(&lines, p + 1))).collect();
    let two_nu = 2 * nu;
    let mut d = vec![
        binom(two_nu, 2) - BigInt::from(two_nu) + 1 + &l1 * (BigInt::from(nu) - 1) + &e - &r[1],
    ];
    for p in 1..=two_nu {
        d.push(binom(two_nu, p as i64 + 2) + &l1 * binom(nu, p as i64 + 1) - &r[p + 1] - &r[p]);
    }
    let d = trim_trailing_zeros(d, 1);
    let aux = Auxiliary::Codim2 {
        l1,
        l0: BigInt::from(tables.count(0)),
        r: trim_trailing_zeros(r[1..].to_vec(), 0),
    };
    let flags = HypothesisFlags { indecomposable: true, l0_finite: true };
    finish(2, arr.nu(), d, e, aux, flags, rules::CODIM2)
}

/// Codimension three ranks from orbit tables.
pub fn ranks_codim3(arr: &Arrangement, tables: &OrbitTables) -> Result<RankReport, InvariantsError> {
    require_codim(tables, 3)?;
    require_indecomposable(arr)?;
    let nu = integral_nu(arr)?;
    let e = checked_euler(tables)?;
    let l2 = BigInt::from(tables.count(2));
    let l1 = BigInt::from(tables.count(1));
    let planes = &tables.levels[2];
    let l1_tilde: BigInt =
        planes.iter().map(|a| BigInt::from(tables.relative_count(a.id, 1))).sum::<BigInt>() - &l1;
    let plane_stabs: Vec<&Lattice> = planes.iter().map(|c| &c.stabilizer).collect();
    let line_stabs: Vec<&Lattice> = tables.levels[1].iter().map(|c| &c.stabilizer).collect();
    let per_plane: Vec<Vec<&Lattice>> = planes
        .iter()
        .map(|a| {
            tables
                .relative_table(a.id)
                .map(|t| t.by_level[1].iter().map(|entry| &tables.class(entry.class).stabilizer).collect())
                .unwrap_or_default()
        })
        .collect();
    let big_r_at = |p: usize| -> BigInt {
        let within: usize = per_plane.iter().map(|s| wedge_span_rank(s, p + 1)).sum();
        BigInt::from(wedge_span_rank(&plane_stabs, p + 2)) - BigInt::from(wedge_span_rank(&line_stabs, p + 1))
            + BigInt::from(within)
    };
    let three_nu = 3 * nu;
    // R_p for p = 0..=3ν+1; index 0 is unused.
    let big_r: Vec<BigInt> = (0..=three_nu + 1).map(|p| if p == 0 { BigInt::from(0) } else { big_r_at(p) }).collect();
    let alt = |n: usize, top: i64| -> BigInt {
        (0..=top).map(|j| if j % 2 == 0 { binom(n, top - j) } else { -binom(n, top - j) }).sum()
    };
    let mut d = vec![alt(three_nu, 3) + &l2 * alt(2 * nu, 2) + &l1_tilde * alt(nu, 1) + &e - &big_r[1]];
    for p in 1..=three_nu {
        let pi = p as i64;
        d.push(
            binom(three_nu, pi + 3) + &l2 * binom(2 * nu, pi + 2) + &l1_tilde * binom(nu, pi + 1)
                - &big_r[p]
                - &big_r[p + 1],
        );
    }
    let d = trim_trailing_zeros(d, 1);
    let aux = Auxiliary::Codim3 {
        l2,
        l1,
        l0: BigInt::from(tables.count(0)),
        l1_tilde,
        big_r: trim_trailing_zeros(big_r[1..].to_vec(), 0),
    };
    let flags = HypothesisFlags { indecomposable: true, l0_finite: true };
    finish(3, arr.nu(), d, e, aux, flags, rules::CODIM3)
}

/// Orbit tables together with the rank report they support.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub components: Vec<Vec<usize>>,
    pub tables: OrbitTables,
    pub report: RankReport,
}

/// Full pipeline on an arrangement: tables, hypothesis checks and the matching formula.
///
/// Codimension four and above yields only the chain Euler characteristic.
pub fn analyze(arr: &Arrangement, cap: usize) -> Result<Analysis, InvariantsError> {
    let components = indecomposable_components(&arr.normals())?;
    let tables = compute_tables(arr, cap).map_err(|e| match e {
        ArrangementError::InfiniteOrbitSet { level, subset } => InvariantsError::InfiniteTables(format!(
            "infinitely many orbits of singular {level}-spaces (witness subset {subset:?})"
        )),
        other => other.into(),
    })?;
    let report = match arr.dim_v() {
        1 => ranks_codim1(integral_nu(arr)?, &BigInt::from(tables.count(0))),
        2 => ranks_codim2(arr, &tables)?,
        3 => ranks_codim3(arr, &tables)?,
        m => RankReport {
            codim: m,
            nu: arr.nu(),
            d: Vec::new(),
            e: euler_chain(&tables)?,
            aux: Auxiliary::NoClosedFormula,
            k0_rank: None,
            k1_rank: None,
            flags: HypothesisFlags { indecomposable: components.len() == 1, l0_finite: true },
            free_abelian: true,
            rules: vec![rules::CHAIN_EULER.to_string()],
            cohomology: None,
        },
    };
    Ok(Analysis { components, tables, report })
}
