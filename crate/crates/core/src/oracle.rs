//! Brute-force reference results and random test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bdd::{Bdd, Node, NodeId};
use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub n: usize,
    pub total_models: u64,
    pub per_weight: Vec<u64>,
    /// Every model in lexicographic order, when requested.
    pub models: Option<Vec<Vec<bool>>>,
}

impl OracleReport {
    /// The weight-`k` models, in lexicographic order. Requires `models`.
    pub fn models_of_weight(&self, k: usize) -> Vec<Vec<bool>> {
        self.models
            .as_ref()
            .expect("report built without models")
            .iter()
            .filter(|u| weight(u) == k)
            .cloned()
            .collect()
    }
}

fn weight(u: &[bool]) -> usize {
    u.iter().filter(|&&b| b).count()
}

/// Writes the `width`-bit big-endian expansion of `mask` into `out`, so that
/// increasing masks visit bitstrings in lexicographic order.
fn fill_bits(mask: u64, out: &mut [bool]) {
    let width = out.len();
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = mask >> (width - 1 - i) & 1 == 1;
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit || n >= 64 {
        Err(Error::OracleLimit { n, limit })
    } else {
        Ok(())
    }
}

/// Evaluates the diagram on all `2^n` bitstrings.
pub fn brute_force(bdd: &Bdd, limit: usize) -> Result<OracleReport> {
    sweep(bdd, limit, false)
}

/// As [`brute_force`], also collecting the model list.
pub fn brute_force_models(bdd: &Bdd, limit: usize) -> Result<OracleReport> {
    sweep(bdd, limit, true)
}

fn sweep(bdd: &Bdd, limit: usize, keep: bool) -> Result<OracleReport> {
    let n = bdd.nvars();
    check_limit(n, limit)?;
    let mut per_weight = vec![0u64; n + 1];
    let mut models = keep.then(Vec::new);
    let mut u = vec![false; n];
    for mask in 0..1u64 << n {
        fill_bits(mask, &mut u);
        if bdd.evaluate(&u)? {
            per_weight[mask.count_ones() as usize] += 1;
            if let Some(m) = models.as_mut() {
                m.push(u.clone());
            }
        }
    }
    Ok(OracleReport {
        n,
        total_models: per_weight.iter().sum(),
        per_weight,
        models,
    })
}

/// Weights `i` for which `φ_α` (over `var(α)..=n`) has a weight-`i` model,
/// found by sweeping the sub-diagram's own variables.
pub fn node_weights(bdd: &Bdd, id: NodeId, limit: usize) -> Result<Vec<bool>> {
    let n = bdd.nvars();
    let start = bdd.var(id);
    let width = n + 1 - start;
    check_limit(width, limit)?;
    let sub = bdd.rerooted(id);
    let mut seen = vec![false; n + 1];
    let mut u = vec![false; n];
    for mask in 0..1u64 << width {
        fill_bits(mask, &mut u[start - 1..]);
        if sub.evaluate(&u)? {
            seen[mask.count_ones() as usize] = true;
        }
    }
    Ok(seen)
}

/// A reproducible random ordered diagram with at most `nodes` branching nodes.
///
/// Levels are drawn at random and nodes created bottom-up; each new node
/// prefers sons that nothing references yet so that most nodes stay reachable,
/// and otherwise leans toward recently created (nearby) nodes. Unreachable
/// leftovers are dropped.
pub fn random_bdd(n: usize, nodes: usize, seed: u64) -> Bdd {
    assert!(n >= 1, "need at least one variable");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if nodes == 0 {
        return Bdd::constant(n, rng.gen_bool(0.5));
    }
    let mut vars: Vec<usize> = (0..nodes).map(|_| rng.gen_range(1..=n)).collect();
    vars.sort_unstable_by(|a, b| b.cmp(a));

    let mut out: Vec<Node> = Vec::with_capacity(nodes);
    let mut has_parent = vec![false; nodes];
    for (i, &var) in vars.iter().enumerate() {
        // candidates for sons: the prefix of nodes on strictly deeper levels
        let below = vars[..i].iter().take_while(|&&v| v > var).count();
        let pick = |rng: &mut ChaCha8Rng, has_parent: &[bool]| -> NodeId {
            if below == 0 || rng.gen_bool(0.2) {
                return if rng.gen_bool(0.55) { NodeId::Top } else { NodeId::Bot };
            }
            if let Some(j) = (0..below).rev().find(|&j| !has_parent[j]) {
                if rng.gen_bool(0.7) {
                    return NodeId::Node(j);
                }
            }
            // geometric lean toward the nearest levels
            let mut j = below - 1;
            while j > 0 && rng.gen_bool(0.5) {
                j -= 1;
            }
            NodeId::Node(rng.gen_range(j..below))
        };
        let lo = pick(&mut rng, &has_parent);
        if let NodeId::Node(j) = lo {
            has_parent[j] = true;
        }
        let mut hi = pick(&mut rng, &has_parent);
        if hi == lo {
            hi = if lo == NodeId::Top { NodeId::Bot } else { NodeId::Top };
        }
        if let NodeId::Node(j) = hi {
            has_parent[j] = true;
        }
        out.push(Node { var, lo, hi });
    }
    let root = NodeId::Node(nodes - 1);
    let full = Bdd::new(n, out, root).expect("generated nodes are ordered");
    let pruned = full.pruned();
    Bdd::new(n, pruned.nodes().to_vec(), pruned.root()).expect("pruning keeps the order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PSI;

    #[test]
    fn psi_sweep() {
        let bdd: Bdd = PSI.parse().unwrap();
        let r = brute_force(&bdd, DEFAULT_LIMIT).unwrap();
        assert_eq!(r.total_models, 576);
        assert_eq!(r.per_weight, [1, 8, 30, 70, 113, 132, 113, 70, 30, 8, 1]);
    }

    #[test]
    fn constant_sweeps() {
        let r = brute_force(&Bdd::constant(5, false), 20).unwrap();
        assert_eq!(r.per_weight, [0; 6]);
        let r = brute_force_models(&Bdd::constant(3, true), 20).unwrap();
        assert_eq!(r.per_weight, [1, 3, 3, 1]);
        let models = r.models.unwrap();
        assert_eq!(models.len(), 8);
        assert!(models.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn limit_enforced() {
        let bdd = Bdd::constant(21, true);
        assert_eq!(
            brute_force(&bdd, DEFAULT_LIMIT),
            Err(Error::OracleLimit { n: 21, limit: 20 })
        );
    }

    #[test]
    fn random_is_deterministic_and_round_trips() {
        let a = random_bdd(10, 6, 7);
        let b = random_bdd(10, 6, 7);
        assert_eq!(a, b);
        assert!(a.len() <= 6);
        let again: Bdd = a.to_string().parse().unwrap();
        assert_eq!(again, a);
        assert_ne!(random_bdd(12, 30, 1), random_bdd(12, 30, 2));
    }

    #[test]
    fn random_produces_wide_gaps() {
        let mut wide = 0;
        for seed in 0..50 {
            let bdd = random_bdd(14, 12, seed);
            for id in bdd.shelling_from_below() {
                for branch in [crate::bdd::Branch::Lo, crate::bdd::Branch::Hi] {
                    if !bdd.node(id).son(branch).is_terminal() && bdd.gap(id, branch) >= 2 {
                        wide += 1;
                    }
                }
            }
        }
        assert!(wide > 50, "only {wide} internal edges with gap >= 2");
    }
}
