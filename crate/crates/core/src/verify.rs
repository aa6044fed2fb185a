//! Cross-checks every counting and enumeration route against the brute-force
//! oracle on one diagram.

use std::fmt;

use num_bigint::BigUint;

use crate::bdd::Bdd;
use crate::counting::{count_models, gen_poly, GenPoly};
use crate::enumerate::{method1_sieve, method2_enumerate, method3_run, Method3Options};
use crate::error::Result;
use crate::oracle::{brute_force_models, node_weights};
use crate::schedule::compute_card1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    /// `None` on success, otherwise what went wrong.
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(why) => write!(f, "FAIL {}: {why}", self.name),
        }
    }
}

/// Optional reference values the diagram is expected to reproduce.
#[derive(Clone, Debug, Default)]
pub struct Expectations {
    pub models: Option<BigUint>,
    pub per_weight: Option<GenPoly>,
}

struct Report(Vec<CheckResult>);

impl Report {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.0.push(CheckResult {
            name: name.into(),
            failure: (!ok).then(detail),
        });
    }
}

fn sorted(mut v: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    v.sort();
    v
}

/// Runs every suite for weights `0..=kmax`. Fails only if the oracle cannot
/// run (`n > limit`).
pub fn run_checks(
    bdd: &Bdd,
    kmax: usize,
    limit: usize,
    expect: &Expectations,
) -> Result<Vec<CheckResult>> {
    let n = bdd.nvars();
    let oracle = brute_force_models(bdd, limit)?;
    let mut r = Report(Vec::new());

    let count = count_models(bdd);
    let poly = gen_poly(bdd);
    let oracle_poly = GenPoly::from_coeffs(oracle.per_weight.iter().copied());
    r.check("count vs oracle", count == BigUint::from(oracle.total_models), || {
        format!("count_models={count} oracle={}", oracle.total_models)
    });
    r.check("per-weight counts vs oracle", poly == oracle_poly, || {
        format!("gen_poly=[{poly}] oracle=[{oracle_poly}]")
    });
    r.check("coefficients sum to count", poly.sum() == count, || {
        format!("sum={} count={count}", poly.sum())
    });
    if let Some(want) = &expect.models {
        r.check("count vs expected", &count == want, || {
            format!("count_models={count} expected={want}")
        });
    }
    if let Some(want) = &expect.per_weight {
        r.check("per-weight counts vs expected", &poly == want, || {
            format!("gen_poly=[{poly}] expected=[{want}]")
        });
    }

    let card1 = compute_card1(bdd);
    let mut bad_nodes = Vec::new();
    for id in bdd.shelling_from_below() {
        let seen = node_weights(bdd, id, limit)?;
        let set = &card1[id.index().unwrap()];
        if (0..=n).any(|i| seen[i] != set.contains(i)) {
            bad_nodes.push(bdd.name(id).to_string());
        }
    }
    r.check("card1 vs oracle", bad_nodes.is_empty(), || {
        format!("mismatch at {}", bad_nodes.join(","))
    });

    for k in 0..=kmax.min(n) {
        let want = oracle.models_of_weight(k);
        let nk = poly.coeff(k);

        let m1 = method1_sieve(bdd, k)?;
        r.check(format!("k={k} method1 models"), m1.expand() == want, || {
            format!("{} expanded models, oracle has {}", m1.expand().len(), want.len())
        });
        r.check(format!("k={k} method1 rows disjoint"), m1.pairwise_disjoint(), String::new);

        let m2: Vec<Vec<bool>> = method2_enumerate(bdd, k)?.collect();
        r.check(format!("k={k} method2 models"), sorted(m2.clone()) == want, || {
            format!("{} streamed, oracle has {}", m2.len(), want.len())
        });

        let run = method3_run(bdd, k, Method3Options::default())?;
        let m3 = &run.rows;
        r.check(format!("k={k} method3 models"), m3.expand() == want, || {
            format!("{} expanded models, oracle has {}", m3.expand().len(), want.len())
        });
        r.check(format!("k={k} method3 rows disjoint"), m3.pairwise_disjoint(), String::new);
        r.check(
            format!("k={k} method3 rows fixed-weight"),
            m3.rows().iter().all(|row| row.weight() == Some(k)),
            String::new,
        );
        r.check(format!("k={k} method3 total"), m3.total() == nk, || {
            format!("rows cover {} models, N_k={nk}", m3.total())
        });
        let dead = run
            .consumed
            .iter()
            .zip(&run.schedule.card2)
            .any(|(used, planned)| used != planned);
        r.check(
            format!("k={k} schedule exact"),
            !dead && run.missing.is_empty(),
            || format!("missing={:?}", run.missing),
        );
    }
    Ok(r.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PSI;

    #[test]
    fn psi_passes_everything() {
        let bdd: Bdd = PSI.parse().unwrap();
        let expect = Expectations {
            models: Some(576u32.into()),
            per_weight: Some(GenPoly::from_coeffs([1u32, 8, 30, 70, 113, 132, 113, 70, 30, 8, 1])),
        };
        let results = run_checks(&bdd, 10, 20, &expect).unwrap();
        for r in &results {
            assert!(r.passed(), "{r}");
        }
        assert_eq!(results.len(), 6 + 11 * 8);
    }

    #[test]
    fn swapped_sons_caught_by_expectation() {
        let swapped = PSI.replace("node e 3 a b", "node e 3 b a");
        let bdd: Bdd = swapped.parse().unwrap();
        let expect = Expectations {
            models: None,
            per_weight: Some(gen_poly(&PSI.parse().unwrap())),
        };
        let results = run_checks(&bdd, 10, 20, &expect).unwrap();
        let failed: Vec<_> = results.iter().filter(|r| !r.passed()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "per-weight counts vs expected");
    }
}
