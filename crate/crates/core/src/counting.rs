//! Exact model counts.
//!
//! Counts are propagated bottom-up over the shelling with integer weights: a
//! node at level `v` whose son sits at level `v'` sees `2^(v' - v - 1)` free
//! completions of the skipped variables. The per-weight counts `N_k` come from
//! the generating function recurrence
//!
//! ```text
//! G_α(z) = (1+z)^(var β − var α − 1) G_β(z) + z (1+z)^(var γ − var α − 1) G_γ(z)
//! ```
//!
//! with `G_⊥ = 0`, `G_⊤ = 1` and terminals at level `n + 1`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bdd::{Bdd, Branch, NodeId};
use crate::error::{Error, Result};

/// Polynomial with nonnegative integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    coeffs: Vec<BigUint>,
}

impl GenPoly {
    pub fn zero(len: usize) -> GenPoly {
        GenPoly {
            coeffs: vec![BigUint::zero(); len],
        }
    }

    pub fn from_coeffs<T: Into<BigUint>>(coeffs: impl IntoIterator<Item = T>) -> GenPoly {
        GenPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `z^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Value at `z = 1`.
    pub fn sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// `self += z^shift (1+z)^power · other`, truncated to `self.len()`.
    fn add_scaled(&mut self, other: &GenPoly, shift: usize, power: usize) {
        let mut term = other.coeffs.clone();
        for _ in 0..power {
            term.push(BigUint::zero());
            for i in (1..term.len()).rev() {
                let prev = term[i - 1].clone();
                term[i] += prev;
            }
        }
        for (i, c) in term.into_iter().enumerate() {
            if let Some(slot) = self.coeffs.get_mut(i + shift) {
                *slot += c;
            } else {
                debug_assert!(c.is_zero(), "coefficient beyond the variable count");
            }
        }
    }
}

impl fmt::Display for GenPoly {
    /// `N_0 N_1 ... N_n` on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn terminal_count(id: NodeId) -> BigUint {
    if id == NodeId::Top {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

/// `|Mod(φ_α)|` over the variables `var(α)..=n`, per branching node.
pub fn node_counts(bdd: &Bdd) -> Vec<BigUint> {
    let mut counts: Vec<BigUint> = Vec::with_capacity(bdd.len());
    for id in bdd.shelling_from_below() {
        let node = bdd.node(id);
        let mut total = BigUint::zero();
        for branch in [Branch::Lo, Branch::Hi] {
            let son = node.son(branch);
            let c = match son {
                NodeId::Node(j) => counts[j].clone(),
                t => terminal_count(t),
            };
            if !c.is_zero() {
                total += c << bdd.gap(id, branch);
            }
        }
        counts.push(total);
    }
    counts
}

/// `|Mod(φ)|`.
pub fn count_models(bdd: &Bdd) -> BigUint {
    let counts = node_counts(bdd);
    let prefix = bdd.var(bdd.root()) - 1;
    match bdd.root() {
        NodeId::Node(r) => counts[r].clone() << prefix,
        t => terminal_count(t) << prefix,
    }
}

/// Probability that a uniform random assignment of `var(α)..=n` is accepted
/// from `α`, per branching node.
pub fn node_probabilities(bdd: &Bdd) -> Vec<BigRational> {
    node_counts(bdd)
        .into_iter()
        .zip(bdd.nodes())
        .map(|(c, node)| {
            let free = bdd.nvars() - node.var + 1;
            BigRational::new(c.into(), (BigUint::one() << free).into())
        })
        .collect()
}

/// `|Mod(φ)| / 2^n` in lowest terms.
pub fn acceptance_probability(bdd: &Bdd) -> BigRational {
    BigRational::new(
        count_models(bdd).into(),
        (BigUint::one() << bdd.nvars()).into(),
    )
}

/// `G_α` for every branching node; entry `α` has `n - var(α) + 2`
/// coefficients, one per possible weight of an assignment to `var(α)..=n`.
pub fn node_gen_polys(bdd: &Bdd) -> Vec<GenPoly> {
    let n = bdd.nvars();
    let mut polys: Vec<GenPoly> = Vec::with_capacity(bdd.len());
    let top = GenPoly::from_coeffs([1u32]);
    for id in bdd.shelling_from_below() {
        let node = bdd.node(id);
        let mut g = GenPoly::zero(n - node.var + 2);
        for branch in [Branch::Lo, Branch::Hi] {
            let son = match node.son(branch) {
                NodeId::Bot => continue,
                NodeId::Top => &top,
                NodeId::Node(j) => &polys[j],
            };
            g.add_scaled(son, branch.weight(), bdd.gap(id, branch));
        }
        polys.push(g);
    }
    polys
}

/// `G(z, φ)` with `n + 1` coefficients, `N_k` at index `k`.
pub fn gen_poly(bdd: &Bdd) -> GenPoly {
    let n = bdd.nvars();
    let prefix = bdd.var(bdd.root()) - 1;
    let mut g = GenPoly::zero(n + 1);
    match bdd.root() {
        NodeId::Bot => {}
        NodeId::Top => g.add_scaled(&GenPoly::from_coeffs([1u32]), 0, prefix),
        NodeId::Node(r) => g.add_scaled(&node_gen_polys(bdd)[r], 0, prefix),
    }
    g
}

/// `N_k = |Mod(φ, k)|`.
pub fn count_k(bdd: &Bdd, k: usize) -> Result<BigUint> {
    if k > bdd.nvars() {
        return Err(Error::WeightOutOfRange { k, n: bdd.nvars() });
    }
    Ok(gen_poly(bdd).coeff(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PSI;
    use num_bigint::BigInt;

    fn psi() -> Bdd {
        PSI.parse().unwrap()
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn psi_node_probabilities() {
        let bdd = psi();
        let p = node_probabilities(&bdd);
        let at = |s| p[bdd.find(s).unwrap().index().unwrap()].clone();
        assert_eq!(at("a"), ratio(1, 2));
        assert_eq!(at("b"), ratio(1, 2));
        assert_eq!(at("c"), ratio(1, 4));
        assert_eq!(at("d"), ratio(5, 8));
        assert_eq!(at("e"), ratio(1, 2));
        assert_eq!(at("f"), ratio(9, 16));
        assert_eq!(acceptance_probability(&bdd), ratio(9, 16));
    }

    #[test]
    fn psi_counts() {
        let bdd = psi();
        assert_eq!(count_models(&bdd), BigUint::from(576u32));
        assert_eq!(count_models(&Bdd::constant(10, true)), BigUint::from(1024u32));
        assert_eq!(count_models(&Bdd::constant(7, false)), BigUint::zero());
        assert_eq!(acceptance_probability(&Bdd::constant(3, true)), ratio(1, 1));
    }

    #[test]
    fn psi_gen_poly() {
        let bdd = psi();
        let g = gen_poly(&bdd);
        let want = GenPoly::from_coeffs([1u32, 8, 30, 70, 113, 132, 113, 70, 30, 8, 1]);
        assert_eq!(g, want);
        assert_eq!(g.sum(), BigUint::from(576u32));
        assert_eq!(g.to_string(), "1 8 30 70 113 132 113 70 30 8 1");

        let polys = node_gen_polys(&bdd);
        let at = |s| polys[bdd.find(s).unwrap().index().unwrap()].clone();
        assert_eq!(at("a"), GenPoly::from_coeffs([1u32, 3, 3, 1, 0]));
        assert_eq!(at("b"), GenPoly::from_coeffs([0u32, 1, 2, 1]));
        assert_eq!(count_k(&bdd, 4).unwrap(), BigUint::from(113u32));
        assert_eq!(count_k(&bdd, 0).unwrap(), BigUint::one());
        assert!(count_k(&bdd, 11).is_err());
        assert_eq!(count_k(&Bdd::constant(5, false), 2).unwrap(), BigUint::zero());
    }

    #[test]
    fn free_prefix_above_root() {
        // x3 alone over 4 variables: 8 models, G = z(1+z)^3
        let bdd: Bdd = "nvars 4\nnode x 3 F T\nroot x\n".parse().unwrap();
        assert_eq!(count_models(&bdd), BigUint::from(8u32));
        assert_eq!(gen_poly(&bdd), GenPoly::from_coeffs([0u32, 1, 3, 3, 1]));
        assert_eq!(gen_poly(&Bdd::constant(3, true)), GenPoly::from_coeffs([1u32, 3, 3, 1]));
    }
}
