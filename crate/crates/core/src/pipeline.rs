//! Input-to-report orchestration shared by the command-line tool and the test suites.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{stabilizer, Arrangement, ArrangementError, HyperplaneClass, HyperplaneSource, OrbitTables};
use crate::decimal;
use crate::exact::FieldElement;
use crate::invariants::{analyze, obstruction_check, InvariantsError, ObstructionInput, ObstructionVerdict, RankReport, SchemeRanks};
use crate::io::Input;
use crate::scheme::{
    codim1_domain, codim1_orbit_count, derive_internal, to_arrangement, validate_scheme, Codim1Domain, InternalData,
    ProjectionScheme, SchemeError,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

/// A loaded input brought to arrangement form.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub kind: &'static str,
    pub label: String,
    pub scheme: Option<(ProjectionScheme, InternalData)>,
    /// Present for codimension one, whether given directly or derived from a scheme.
    pub domain: Option<Codim1Domain>,
    /// Absent only when a scheme has infinitely many hyperplane classes.
    pub arrangement: Option<Arrangement>,
    /// Why `arrangement` is absent.
    pub arrangement_error: Option<String>,
}

/// The point arrangement of a codimension-one domain: endpoints as hyperplanes of the line.
pub fn codim1_arrangement(dom: &Codim1Domain) -> Result<Arrangement, ArrangementError> {
    let field = dom.generators[0].field().clone();
    let one = FieldElement::one(&field);
    let points = dom
        .endpoints
        .iter()
        .enumerate()
        .map(|(i, p)| HyperplaneClass::new(vec![one.clone()], p.clone(), vec![HyperplaneSource::Input(i)]))
        .collect::<Result<Vec<_>, _>>()?;
    let gamma = dom.generators.iter().map(|g| vec![g.clone()]).collect();
    Arrangement::new(field, 1, gamma, points)
}

/// Validates the input and derives its arrangement.
pub fn prepare(input: &Input) -> Result<Prepared, PipelineError> {
    let kind = input.kind();
    let label = input.label().to_string();
    let out = match input {
        Input::Arrangement { arrangement, .. } => Prepared {
            kind,
            label,
            scheme: None,
            domain: None,
            arrangement: Some(arrangement.clone()),
            arrangement_error: None,
        },
        Input::Codim1 { domain, .. } => Prepared {
            kind,
            label,
            scheme: None,
            domain: Some(domain.clone()),
            arrangement: Some(codim1_arrangement(domain)?),
            arrangement_error: None,
        },
        Input::Scheme(s) => {
            validate_scheme(s)?;
            let data = derive_internal(s)?;
            let (domain, arrangement, arrangement_error) = if data.dim_v == 1 && s.n == s.d + 1 {
                let dom = codim1_domain(s, &data)?;
                let arr = codim1_arrangement(&dom)?;
                (Some(dom), Some(arr), None)
            } else {
                match to_arrangement(s, &data) {
                    Ok(arr) => (None, Some(arr), None),
                    Err(e @ SchemeError::InfiniteFamily { .. }) => (None, None, Some(e.to_string())),
                    Err(e) => return Err(e.into()),
                }
            };
            Prepared { kind, label, scheme: Some((s.clone(), data)), domain, arrangement, arrangement_error }
        }
    };
    Ok(out)
}

/// Dimensions and ranks of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rk_delta: Option<usize>,
    pub dim_v: usize,
    pub rk_gamma: usize,
    #[serde(with = "decimal::rational")]
    pub nu: BigRational,
    /// Number of hyperplane classes, when finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane_classes: Option<usize>,
    /// Set for schemes with Δ ≠ 0 and an irrational offset, where no worked orbit table exists
    /// to compare against.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub unverified_offset: bool,
}

impl Prepared {
    pub fn derived(&self) -> Derived {
        let (n, d, rk_delta) = match &self.scheme {
            Some((s, data)) => (Some(s.n), Some(s.d), Some(data.rk_delta)),
            None => (None, None, None),
        };
        let unverified_offset = match &self.scheme {
            Some((s, data)) => data.rk_delta > 0 && s.u.iter().any(|x| x.coeffs().iter().skip(1).any(|c| !c.is_zero())),
            None => false,
        };
        let (dim_v, rk_gamma) = match (&self.arrangement, &self.scheme) {
            (Some(a), _) => (a.dim_v(), a.rank_gamma()),
            (None, Some((_, data))) => (data.dim_v, data.rank_gamma),
            (None, None) => unreachable!("inputs without a scheme always have an arrangement"),
        };
        Derived {
            n,
            d,
            rk_delta,
            dim_v,
            rk_gamma,
            nu: BigRational::new(rk_gamma.into(), dim_v.into()),
            hyperplane_classes: self.arrangement.as_ref().map(|a| a.hyperplanes().len()),
            unverified_offset,
        }
    }

    pub fn scheme_ranks(&self) -> Option<SchemeRanks> {
        self.scheme.as_ref().map(|(s, data)| SchemeRanks { n: s.n, d: s.d, rk_delta: data.rk_delta })
    }

    /// Stabilizer rank of each hyperplane class.
    pub fn stabilizer_ranks(&self) -> Vec<usize> {
        self.arrangement
            .as_ref()
            .map(|a| a.hyperplanes().iter().map(|h| stabilizer(a, std::slice::from_ref(&h.normal)).rank()).collect())
            .unwrap_or_default()
    }

    fn require_arrangement(&self) -> Result<&Arrangement, PipelineError> {
        self.arrangement.as_ref().ok_or_else(|| {
            InvariantsError::InfiniteTables(self.arrangement_error.clone().unwrap_or_default()).into()
        })
    }

    /// Orbit tables and rank report.
    pub fn invariants(&self, cap: usize) -> Result<(OrbitSummary, RankReport), PipelineError> {
        let arr = self.require_arrangement()?;
        let analysis = analyze(arr, cap)?;
        if let Some(dom) = &self.domain {
            let k = codim1_orbit_count(dom);
            if k != analysis.tables.count(0) {
                return Err(InvariantsError::Inconsistent(format!(
                    "endpoint orbit count {k} differs from the point table size {}",
                    analysis.tables.count(0)
                ))
                .into());
            }
        }
        Ok((OrbitSummary::from_tables(&analysis.tables), analysis.report))
    }

    /// Substitution obstruction verdict.
    pub fn obstruction(&self, cap: usize) -> ObstructionVerdict {
        obstruction_check(&ObstructionInput { arrangement: self.arrangement.as_ref(), scheme: self.scheme_ranks(), cap })
    }
}

/// Σ over l-dimensional classes Θ of the relative counts L_k^Θ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeSum {
    pub parent_dim: usize,
    pub level: usize,
    pub sum: usize,
    pub min: usize,
    pub max: usize,
}

/// Sizes of the orbit tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    /// L_0, L_1, …, L_{m−1}.
    pub counts: Vec<usize>,
    pub relative: Vec<RelativeSum>,
}

impl OrbitSummary {
    pub fn from_tables(t: &OrbitTables) -> Self {
        let counts: Vec<usize> = (0..t.dim_v).map(|l| t.count(l)).collect();
        let mut relative = Vec::new();
        for parent_dim in 1..t.dim_v {
            for level in 0..parent_dim {
                let per: Vec<usize> = t.levels[parent_dim].iter().map(|c| t.relative_count(c.id, level)).collect();
                relative.push(RelativeSum {
                    parent_dim,
                    level,
                    sum: per.iter().sum(),
                    min: per.iter().copied().min().unwrap_or(0),
                    max: per.iter().copied().max().unwrap_or(0),
                });
            }
        }
        OrbitSummary { counts, relative }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::arrangement::DEFAULT_SUBSET_CAP;
    use crate::invariants::Verdict;
    use crate::io::parse_input;

    const GOLD: &str = "version = 1\n[field]\nmin_poly = [-1, 1, 1]\nroot_interval = [\"1/2\", \"1\"]\n";

    #[test]
    fn codim1_domain_runs_through_the_arrangement_path() {
        let text = format!("{GOLD}[codim1]\ngenerators = [[1], [0, 1]]\nintervals = [[[0], [\"1/2\"]], [[1], [1, 1]]]\n");
        let p = prepare(&parse_input(&text).unwrap()).unwrap();
        let (summary, report) = p.invariants(DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(summary.counts, vec![2]);
        assert_eq!(report.cohomology.unwrap(), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(p.obstruction(DEFAULT_SUBSET_CAP).verdict, Verdict::NoObstruction);
    }

    #[test]
    fn fibonacci_scheme_takes_the_codim1_path() {
        let text = format!("{GOLD}[scheme]\nN = 2\nd = 1\nE_basis = [[[1]], [[0, 1]]]\n");
        let p = prepare(&parse_input(&text).unwrap()).unwrap();
        assert!(p.domain.is_some());
        let (_, report) = p.invariants(DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(report.d, vec![BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn irrational_offset_with_rational_kernel_is_flagged() {
        let base = include_str!("../../../fixtures/penrose.toml");
        let p = prepare(&parse_input(base).unwrap()).unwrap();
        assert!(!p.derived().unverified_offset);
        let text = format!("{base}u = [[\"1/97\", \"1/89\"], [\"3/107\"], [\"5/113\"], [\"7/127\"], [\"-1/7\"]]\n");
        let p = prepare(&parse_input(&text).unwrap()).unwrap();
        assert!(p.derived().unverified_offset);
    }
}
