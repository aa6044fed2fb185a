//! Cardinality sets driving the compressed enumeration.
//!
//! `card1(α)` holds every weight `i` for which `φ_α` has a model of weight `i`
//! (over the variables `var(α)..=n`). It is built from below: a son at gap `g`
//! contributes `⋃_{j=0}^{g} (j + card1(β))` on the 0-branch and
//! `⋃_{j=1}^{g+1} (j + card1(γ))` on the 1-branch.
//!
//! `card2(α)` is the subset of `card1(α)` actually needed to assemble
//! `Mod(φ, k)`. It is built from above: every upper cover `β` reached over
//! branch bit `b` and gap `g` asks for `⋃_{w=0}^{g} (card2(β) − b − w)`, and the
//! union of those requests is intersected with `card1(α)`. The variables above
//! the root behave like an upper cover with gap `var(root) − 1` and no branch bit.

use crate::bdd::{Bdd, Branch, NodeId};
use crate::cardset::CardSet;
use crate::error::{Error, Result};

/// `card1` of a son, at its own level.
fn son_card1<'a>(card1: &'a [CardSet], son: NodeId, top: &'a CardSet, bot: &'a CardSet) -> &'a CardSet {
    match son {
        NodeId::Top => top,
        NodeId::Bot => bot,
        NodeId::Node(j) => &card1[j],
    }
}

/// `card1(α)` for every branching node, indexed by storage position.
pub fn compute_card1(bdd: &Bdd) -> Vec<CardSet> {
    let n = bdd.nvars();
    let top = CardSet::singleton(n, 0);
    let bot = CardSet::empty(n);
    let mut card1: Vec<CardSet> = Vec::with_capacity(bdd.len());
    for id in bdd.shelling_from_below() {
        let node = bdd.node(id);
        let mut set = CardSet::empty(n);
        for branch in [Branch::Lo, Branch::Hi] {
            let son = son_card1(&card1, node.son(branch), &top, &bot);
            let b = branch.weight();
            set.or_window_up(son, b, b + bdd.gap(id, branch));
        }
        card1.push(set);
    }
    card1
}

/// Weights attained by models of the whole function, free prefix included.
pub fn function_card1(bdd: &Bdd, card1: &[CardSet]) -> CardSet {
    let n = bdd.nvars();
    let top = CardSet::singleton(n, 0);
    let bot = CardSet::empty(n);
    let mut set = CardSet::empty(n);
    let root = son_card1(card1, bdd.root(), &top, &bot);
    set.or_window_up(root, 0, bdd.var(bdd.root()) - 1);
    set
}

/// `card2(α)` for every branching node, given `card1`.
pub fn compute_card2(bdd: &Bdd, k: usize, card1: &[CardSet]) -> Result<Vec<CardSet>> {
    let n = bdd.nvars();
    if k > n {
        return Err(Error::WeightOutOfRange { k, n });
    }
    let mut requested = vec![CardSet::empty(n); bdd.len()];
    if let NodeId::Node(r) = bdd.root() {
        requested[r].or_window_down(&CardSet::singleton(n, k), 0, bdd.var(bdd.root()) - 1);
    }
    let mut card2 = vec![CardSet::empty(n); bdd.len()];
    for id in bdd.shelling_from_above() {
        let i = id.index().expect("branching node");
        let mut set = std::mem::replace(&mut requested[i], CardSet::empty(0));
        set.intersect_with(&card1[i]);
        if !set.is_empty() {
            let node = *bdd.node(id);
            for branch in [Branch::Lo, Branch::Hi] {
                if let NodeId::Node(j) = node.son(branch) {
                    let b = branch.weight();
                    requested[j].or_window_down(&set, b, b + bdd.gap(id, branch));
                }
            }
        }
        card2[i] = set;
    }
    Ok(card2)
}

/// The enumeration schedule for one target weight.
#[derive(Clone, Debug)]
pub struct Schedule {
    pub k: usize,
    pub card1: Vec<CardSet>,
    pub card2: Vec<CardSet>,
    /// Weights of models of the whole function.
    pub root_card1: CardSet,
}

impl Schedule {
    pub fn new(bdd: &Bdd, k: usize) -> Result<Schedule> {
        let card1 = compute_card1(bdd);
        let card2 = compute_card2(bdd, k, &card1)?;
        let root_card1 = function_card1(bdd, &card1);
        Ok(Schedule {
            k,
            card1,
            card2,
            root_card1,
        })
    }

    /// Whether `Mod(φ, k)` is nonempty.
    pub fn feasible(&self) -> bool {
        self.root_card1.contains(self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PSI;

    fn psi() -> Bdd {
        PSI.parse().unwrap()
    }

    fn show(bdd: &Bdd, sets: &[CardSet]) -> Vec<String> {
        bdd.shelling_from_below()
            .map(|id| format!("{}={}", bdd.name(id), sets[id.index().unwrap()]))
            .collect()
    }

    #[test]
    fn psi_card1() {
        let bdd = psi();
        let card1 = compute_card1(&bdd);
        assert_eq!(
            show(&bdd, &card1),
            ["a=[0,3]", "b=[1,3]", "c=[2,4]", "d=[0,7]", "e=[0,8]", "f=[0,10]"]
        );
        assert_eq!(function_card1(&bdd, &card1).to_string(), "[0,10]");
    }

    #[test]
    fn psi_card2_for_four() {
        let bdd = psi();
        let card1 = compute_card1(&bdd);
        let card2 = compute_card2(&bdd, 4, &card1).unwrap();
        assert_eq!(
            show(&bdd, &card2),
            ["a=[0,3]", "b=[1,3]", "c=[2,2]", "d=[1,3]", "e=[3,4]", "f=[4,4]"]
        );
    }

    #[test]
    fn psi_card2_for_zero() {
        let bdd = psi();
        let card1 = compute_card1(&bdd);
        let card2 = compute_card2(&bdd, 0, &card1).unwrap();
        // Only the all-zero path f -0-> e -0-> a -0-> T survives.
        assert_eq!(
            show(&bdd, &card2),
            ["a=[0,0]", "b=[]", "c=[]", "d=[]", "e=[0,0]", "f=[0,0]"]
        );
    }

    #[test]
    fn terminal_roots() {
        let top = Bdd::constant(6, true);
        let s = Schedule::new(&top, 3).unwrap();
        assert!(s.card1.is_empty());
        assert_eq!(s.root_card1.to_string(), "[0,6]");
        let bot = Bdd::constant(6, false);
        assert!(!Schedule::new(&bot, 3).unwrap().feasible());
        assert!(Schedule::new(&bot, 7).is_err());
    }

    #[test]
    fn unreachable_weight_empties_schedule() {
        // exactly x2 = 1 and x3 = 1 over 3 variables: weights {2, 3}
        let bdd: Bdd = "nvars 3\nnode b 3 F T\nnode a 2 F b\nroot a\n".parse().unwrap();
        let s = Schedule::new(&bdd, 1).unwrap();
        assert!(!s.feasible());
        assert!(s.card2.iter().all(CardSet::is_empty));
        let s = Schedule::new(&bdd, 3).unwrap();
        assert_eq!(s.card2[1].to_string(), "[2,2]");
        assert_eq!(s.card2[0].to_string(), "[1,1]");
    }
}
