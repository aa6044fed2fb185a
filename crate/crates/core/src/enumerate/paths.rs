//! Root-to-⊤ paths: the orthogonal DNF, the sieve, and one-by-one enumeration.

use std::borrow::Borrow;

use crate::bdd::{Bdd, NodeId};
use crate::enumerate::apply::{apply_and, exactly_k_bdd};
use crate::error::{Error, Result};
use crate::row::{Row, RowSet, Token};

/// Lazily walks the root-to-⊤ paths, 0-branch first, yielding one 012-row per
/// path. Untested variables are `*`.
pub struct PathRows<B> {
    bdd: B,
    stack: Vec<(NodeId, Vec<Token>)>,
}

impl<B: Borrow<Bdd>> PathRows<B> {
    pub fn new(bdd: B) -> PathRows<B> {
        let b = bdd.borrow();
        let stack = vec![(b.root(), vec![Token::DontCare; b.nvars()])];
        PathRows { bdd, stack }
    }
}

impl<B: Borrow<Bdd>> Iterator for PathRows<B> {
    type Item = Row;

    fn next(&mut self) -> Option<Row> {
        while let Some((id, tokens)) = self.stack.pop() {
            match id {
                NodeId::Top => {
                    return Some(Row::new(tokens, Vec::new()).expect("012-row"));
                }
                NodeId::Bot => {}
                NodeId::Node(_) => {
                    let node = *self.bdd.borrow().node(id);
                    let mut hi = tokens.clone();
                    hi[node.var - 1] = Token::One;
                    let mut lo = tokens;
                    lo[node.var - 1] = Token::Zero;
                    self.stack.push((node.hi, hi));
                    self.stack.push((node.lo, lo));
                }
            }
        }
        None
    }
}

/// One 012-row per root-to-⊤ path; the rows are pairwise disjoint and cover
/// `Mod(φ)`.
pub fn path_dnf(bdd: &Bdd) -> RowSet {
    RowSet::from_rows(bdd.nvars(), PathRows::new(bdd).collect())
}

/// Restricts a 012-row to its weight-`k` members: the `*` positions must carry
/// exactly `k - fixed ones` ones. `None` if impossible.
pub fn sieve_row(row: &Row, k: usize) -> Option<Row> {
    let fixed = row.fixed_ones();
    let free = row.dont_cares();
    if k < fixed || k - fixed > free {
        return None;
    }
    let need = k - fixed;
    let fill = if need == 0 {
        Token::Zero
    } else if need == free {
        Token::One
    } else {
        Token::Group(0)
    };
    let tokens = row
        .tokens()
        .iter()
        .map(|&t| if t == Token::DontCare { fill } else { t })
        .collect();
    let ones = if fill == Token::Group(0) { vec![need] } else { Vec::new() };
    Some(Row::new(tokens, ones).expect("sieved row is valid"))
}

/// First method: sieve each path row down to weight `k`.
pub fn method1_sieve(bdd: &Bdd, k: usize) -> Result<RowSet> {
    check_k(bdd, k)?;
    Ok(RowSet::from_rows(
        bdd.nvars(),
        PathRows::new(bdd).filter_map(|r| sieve_row(&r, k)).collect(),
    ))
}

pub(crate) fn check_k(bdd: &Bdd, k: usize) -> Result<()> {
    if k > bdd.nvars() {
        Err(Error::WeightOutOfRange { k, n: bdd.nvars() })
    } else {
        Ok(())
    }
}

/// Pull-based stream of the weight-`k` models, one bitstring at a time.
pub struct KModels {
    paths: PathRows<Bdd>,
    pending: std::vec::IntoIter<Vec<bool>>,
}

impl KModels {
    /// The conjunction `φ ∧ [exactly k ones]` being walked.
    pub fn diagram(&self) -> &Bdd {
        &self.paths.bdd
    }
}

impl Iterator for KModels {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        loop {
            if let Some(u) = self.pending.next() {
                return Some(u);
            }
            // Paths of the conjunction test every variable, so each row is a
            // single bitstring; expansion keeps this correct regardless.
            self.pending = self.paths.next()?.expand().into_iter();
        }
    }
}

/// Second method: conjoin with the exactly-`k` diagram and walk its paths.
pub fn method2_enumerate(bdd: &Bdd, k: usize) -> Result<KModels> {
    check_k(bdd, k)?;
    let b3 = apply_and(bdd, &exactly_k_bdd(bdd.nvars(), k)?)?;
    Ok(KModels {
        paths: PathRows::new(b3),
        pending: Vec::new().into_iter(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PSI;
    use num_bigint::BigUint;

    fn psi() -> Bdd {
        PSI.parse().unwrap()
    }

    fn rows(texts: &[&str]) -> Vec<Row> {
        let mut v: Vec<Row> = texts.iter().map(|t| t.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn psi_paths() {
        let mut got = path_dnf(&psi()).into_rows();
        got.sort();
        assert_eq!(
            got,
            rows(&[
                "0 2 0 2 2 2 0 2 2 2",
                "0 2 1 2 2 2 2 1 2 2",
                "1 2 2 0 2 2 2 2 2 2",
                "1 2 2 1 2 2 1 1 2 2",
            ])
        );
    }

    #[test]
    fn constant_paths() {
        let top = path_dnf(&Bdd::constant(3, true));
        assert_eq!(top.rows(), rows(&["* * *"]));
        assert!(path_dnf(&Bdd::constant(3, false)).is_empty());
    }

    #[test]
    fn psi_sieve_four() {
        let set = method1_sieve(&psi(), 4).unwrap();
        let mut got = set.rows().to_vec();
        got.sort();
        assert_eq!(
            got,
            rows(&[
                "0 a 0 a a a 0 a a a ; a=g(4)",
                "0 a 1 a a a a 1 a a ; a=g(2)",
                "1 a a 0 a a a a a a ; a=g(3)",
                "1 0 0 1 0 0 1 1 0 0",
            ])
        );
        let cards: Vec<BigUint> = set.rows().iter().map(Row::cardinality).collect();
        assert_eq!(cards, [35u32, 21, 56, 1].map(BigUint::from));
        assert_eq!(set.total(), BigUint::from(113u32));
    }

    #[test]
    fn psi_sieve_eight_drops_first_path() {
        let set = method1_sieve(&psi(), 8).unwrap();
        assert!(set.rows().iter().all(|r| r.tokens()[2] != crate::row::Token::Zero
            || r.tokens()[0] != crate::row::Token::Zero));
        assert_eq!(set.len(), 3);
        assert_eq!(set.total(), BigUint::from(30u32));
    }

    #[test]
    fn psi_method2() {
        let models: Vec<Vec<bool>> = method2_enumerate(&psi(), 4).unwrap().collect();
        assert_eq!(models.len(), 113);
        assert!(models.iter().all(|u| u.iter().filter(|&&b| b).count() == 4));
        let mut sorted = models.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 113);
        assert!(method2_enumerate(&psi(), 11).is_err());
        // weight-0 model of a function with none
        let x1: Bdd = "nvars 3\nnode a 1 F T\nroot a\n".parse().unwrap();
        let stream = method2_enumerate(&x1, 0).unwrap();
        assert_eq!(stream.diagram().root(), NodeId::Bot);
        assert_eq!(stream.count(), 0);
    }
}
