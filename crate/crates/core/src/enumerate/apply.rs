//! Hash-consed construction, conjunction, and the exactly-k diagram.

use std::collections::HashMap;

use crate::bdd::{Bdd, Node, NodeId};
use crate::error::{Error, Result};

/// Builds reduced diagrams bottom-up: `mk` never creates a redundant test and
/// never duplicates a `(var, lo, hi)` triple.
#[derive(Debug)]
pub struct Builder {
    nvars: usize,
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeId>,
}

impl Builder {
    pub fn new(nvars: usize) -> Builder {
        Builder {
            nvars,
            nodes: Vec::new(),
            unique: HashMap::new(),
        }
    }

    pub fn var(&self, id: NodeId) -> usize {
        match id {
            NodeId::Node(i) => self.nodes[i].var,
            _ => self.nvars + 1,
        }
    }

    pub fn mk(&mut self, var: usize, lo: NodeId, hi: NodeId) -> NodeId {
        debug_assert!(var >= 1 && var <= self.nvars);
        debug_assert!(self.var(lo) > var && self.var(hi) > var);
        if lo == hi {
            return lo;
        }
        let node = Node { var, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = NodeId::Node(self.nodes.len());
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Finishes with the given root, dropping nodes it does not reach.
    pub fn build(self, root: NodeId) -> Bdd {
        let pruned = Bdd::new(self.nvars, self.nodes, root)
            .expect("builder only creates ordered nodes")
            .pruned();
        Bdd::new(pruned.nvars(), pruned.nodes().to_vec(), pruned.root())
            .expect("pruning keeps the order")
    }
}

/// Conjunction by the recursive product construction, memoized on node pairs.
/// The result is reduced even if the inputs are not.
pub fn apply_and(left: &Bdd, right: &Bdd) -> Result<Bdd> {
    if left.nvars() != right.nvars() {
        return Err(Error::NvarsMismatch(left.nvars(), right.nvars()));
    }
    let mut run = AndRun {
        left,
        right,
        out: Builder::new(left.nvars()),
        memo: HashMap::new(),
    };
    let root = run.and(left.root(), right.root());
    Ok(run.out.build(root))
}

struct AndRun<'a> {
    left: &'a Bdd,
    right: &'a Bdd,
    out: Builder,
    memo: HashMap<(NodeId, NodeId), NodeId>,
}

impl AndRun<'_> {
    fn and(&mut self, x: NodeId, y: NodeId) -> NodeId {
        match (x, y) {
            (NodeId::Bot, _) | (_, NodeId::Bot) => return NodeId::Bot,
            (NodeId::Top, NodeId::Top) => return NodeId::Top,
            _ => {}
        }
        if let Some(&r) = self.memo.get(&(x, y)) {
            return r;
        }
        let (vx, vy) = (self.left.var(x), self.right.var(y));
        let v = vx.min(vy);
        let (x0, x1) = if vx == v {
            let n = self.left.node(x);
            (n.lo, n.hi)
        } else {
            (x, x)
        };
        let (y0, y1) = if vy == v {
            let n = self.right.node(y);
            (n.lo, n.hi)
        } else {
            (y, y)
        };
        let lo = self.and(x0, y0);
        let hi = self.and(x1, y1);
        let r = self.out.mk(v, lo, hi);
        self.memo.insert((x, y), r);
        r
    }
}

/// The diagram over `n` variables accepting exactly the bitstrings with `k`
/// ones: one node per feasible (position, ones-so-far) state.
pub fn exactly_k_bdd(n: usize, k: usize) -> Result<Bdd> {
    if k > n {
        return Err(Error::WeightOutOfRange { k, n });
    }
    let mut b = Builder::new(n);
    // next[c]: the node deciding positions i+1..=n given c ones so far.
    let mut next: Vec<NodeId> = (0..=k)
        .map(|c| if c == k { NodeId::Top } else { NodeId::Bot })
        .collect();
    for i in (1..=n).rev() {
        let remaining = n - i + 1;
        let mut layer = vec![NodeId::Bot; k + 1];
        let lowest = k.saturating_sub(remaining);
        for c in lowest..=k.min(i - 1) {
            let lo = next[c];
            let hi = if c < k { next[c + 1] } else { NodeId::Bot };
            layer[c] = b.mk(i, lo, hi);
        }
        next = layer;
    }
    Ok(b.build(next[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_models, gen_poly};
    use crate::fixtures::PSI;
    use crate::row::binomial;
    use num_bigint::BigUint;

    #[test]
    fn exactly_k_counts() {
        let b = exactly_k_bdd(7, 3).unwrap();
        assert_eq!(count_models(&b), BigUint::from(35u32));
        assert!(b.len() <= 4 * 5);
        for n in 1..=12 {
            for k in 0..=n {
                let b = exactly_k_bdd(n, k).unwrap();
                let g = gen_poly(&b);
                for i in 0..=n {
                    let want = if i == k { binomial(n, k) } else { BigUint::default() };
                    assert_eq!(g.coeff(i), want, "n={n} k={k} i={i}");
                }
                assert!(b.len() <= (k + 1) * (n - k + 1));
            }
        }
        assert!(exactly_k_bdd(3, 4).is_err());
    }

    #[test]
    fn weight_zero_is_single_chain() {
        let b = exactly_k_bdd(5, 0).unwrap();
        assert_eq!(count_models(&b), BigUint::from(1u32));
        assert!(b.evaluate(&[false; 5]).unwrap());
    }

    #[test]
    fn and_with_constants() {
        let psi: Bdd = PSI.parse().unwrap();
        let top = Bdd::constant(10, true);
        let bot = Bdd::constant(10, false);
        let same = apply_and(&psi, &top).unwrap();
        assert_eq!(count_models(&same), count_models(&psi));
        assert_eq!(apply_and(&psi, &bot).unwrap().root(), NodeId::Bot);
        assert!(apply_and(&psi, &Bdd::constant(9, true)).is_err());
    }

    #[test]
    fn psi_and_weight_four() {
        let psi: Bdd = PSI.parse().unwrap();
        let b3 = apply_and(&psi, &exactly_k_bdd(10, 4).unwrap()).unwrap();
        assert_eq!(count_models(&b3), BigUint::from(113u32));
    }

    #[test]
    fn builder_reduces() {
        let mut b = Builder::new(3);
        let x = b.mk(3, NodeId::Bot, NodeId::Top);
        assert_eq!(b.mk(2, x, x), x);
        let y = b.mk(3, NodeId::Bot, NodeId::Top);
        assert_eq!(x, y);
        assert_eq!(b.len(), 1);
    }
}
