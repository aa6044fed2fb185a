//! Third method: schedule-driven, bottom-up assembly of `Mod(φ, k)` as
//! fixed-weight 012g-rows.
//!
//! For a node `α` with 0-son `β` at gap `gβ` and 1-son `γ` at gap `gγ`, and a
//! scheduled weight `i ∈ card2(α)`:
//!
//! ```text
//! Mod(φ_α, i) = ⊎_{w=0}^{gβ} (0, w ones in gβ) × Mod(φ_β, i − w)
//!             ⊎ ⊎_{w=0}^{gγ} (1, w ones in gγ) × Mod(φ_γ, i − 1 − w)
//! ```
//!
//! Each `(node, weight)` row list is built once and reused by every upper cover.
//! A table is released as soon as its last upper cover has been assembled,
//! unless the caller asks to keep them.

use std::collections::BTreeMap;

use crate::bdd::{Bdd, Branch, NodeId};
use crate::cardset::CardSet;
use crate::enumerate::paths::check_k;
use crate::error::Result;
use crate::row::{Row, RowSet};
use crate::schedule::Schedule;

/// Rows of a single node grouped by their common weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRowSet {
    pub width: usize,
    pub entries: Vec<(Row, usize)>,
}

impl WeightedRowSet {
    pub fn total(&self) -> num_bigint::BigUint {
        self.entries.iter().map(|(r, _)| r.cardinality()).sum()
    }
}

/// Options for [`method3_run`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Method3Options {
    /// Keep every node's row table for inspection.
    pub keep_tables: bool,
}

/// Everything the third method produced, including instrumentation.
#[derive(Debug)]
pub struct Method3Run {
    pub schedule: Schedule,
    pub rows: RowSet,
    /// `(node, weight)` pairs whose row list was used by a parent or the root.
    pub consumed: Vec<CardSet>,
    /// `(node, weight)` pairs a parent needed but the schedule did not provide.
    /// Always empty for a correct schedule.
    pub missing: Vec<(NodeId, usize)>,
    tables: Vec<BTreeMap<usize, Vec<Row>>>,
}

impl Method3Run {
    /// Node `id`'s rows over its scheduled weights. Requires `keep_tables`.
    pub fn node_rows(&self, bdd: &Bdd, id: NodeId) -> WeightedRowSet {
        let i = id.index().expect("branching node");
        let width = bdd.nvars() - bdd.var(id) + 1;
        let entries = self.tables[i]
            .iter()
            .flat_map(|(&w, rows)| rows.iter().map(move |r| (r.clone(), w)))
            .collect();
        WeightedRowSet { width, entries }
    }
}

/// The compressed enumeration of `Mod(φ, k)`.
pub fn method3_enumerate(bdd: &Bdd, k: usize) -> Result<RowSet> {
    Ok(method3_run(bdd, k, Method3Options::default())?.rows)
}

pub fn method3_run(bdd: &Bdd, k: usize, opts: Method3Options) -> Result<Method3Run> {
    check_k(bdd, k)?;
    let n = bdd.nvars();
    let schedule = Schedule::new(bdd, k)?;
    let mut tables: Vec<BTreeMap<usize, Vec<Row>>> = vec![BTreeMap::new(); bdd.len()];
    let mut consumed = vec![CardSet::empty(n); bdd.len()];
    let mut missing = Vec::new();

    // Parents still to be assembled, per node; only scheduled parents count.
    let mut pending = vec![0usize; bdd.len()];
    for id in bdd.shelling_from_below() {
        let i = id.index().unwrap();
        if schedule.card2[i].is_empty() {
            continue;
        }
        let node = bdd.node(id);
        for son in [node.lo, node.hi] {
            if let NodeId::Node(j) = son {
                pending[j] += 1;
            }
        }
    }

    let top_rows = vec![Row::empty()];
    let mut ctx = Assembly {
        schedule: &schedule,
        consumed: &mut consumed,
        missing: &mut missing,
        top_rows: &top_rows,
    };

    for id in bdd.shelling_from_below() {
        let i = id.index().unwrap();
        if schedule.card2[i].is_empty() {
            continue;
        }
        let node = *bdd.node(id);
        let mut table = BTreeMap::new();
        for weight in schedule.card2[i].iter() {
            let mut rows = Vec::new();
            for branch in [Branch::Lo, Branch::Hi] {
                ctx.extend(
                    &mut rows,
                    &tables,
                    node.son(branch),
                    Some(branch.bit()),
                    bdd.gap(id, branch),
                    weight,
                );
            }
            table.insert(weight, rows);
        }
        tables[i] = table;
        if !opts.keep_tables {
            for son in [node.lo, node.hi] {
                if let NodeId::Node(j) = son {
                    pending[j] -= 1;
                    if pending[j] == 0 {
                        tables[j] = BTreeMap::new();
                    }
                }
            }
        }
    }

    let mut result = Vec::new();
    if schedule.feasible() {
        let root = bdd.root();
        ctx.extend(&mut result, &tables, root, None, bdd.var(root) - 1, k);
    }
    if !opts.keep_tables {
        tables.iter_mut().for_each(BTreeMap::clear);
    }

    Ok(Method3Run {
        rows: RowSet::from_rows(n, result),
        schedule,
        consumed,
        missing,
        tables,
    })
}

struct Assembly<'a> {
    schedule: &'a Schedule,
    consumed: &'a mut Vec<CardSet>,
    missing: &'a mut Vec<(NodeId, usize)>,
    top_rows: &'a [Row],
}

impl Assembly<'_> {
    /// Appends `gadget(bit, gap, w) × Mod(φ_son, weight − bit − w)` for every
    /// admissible `w`.
    fn extend(
        &mut self,
        out: &mut Vec<Row>,
        tables: &[BTreeMap<usize, Vec<Row>>],
        son: NodeId,
        bit: Option<bool>,
        gap: usize,
        weight: usize,
    ) {
        let lead = bit.map_or(0, |b| b as usize);
        for w in 0..=gap {
            let Some(rest) = weight.checked_sub(lead + w) else {
                break;
            };
            let son_rows: &[Row] = match son {
                NodeId::Bot => return,
                NodeId::Top if rest == 0 => self.top_rows,
                NodeId::Top => continue,
                NodeId::Node(j) => {
                    if !self.schedule.card1[j].contains(rest) {
                        continue;
                    }
                    self.consumed[j].insert(rest);
                    match tables[j].get(&rest) {
                        Some(rows) => rows,
                        None => {
                            self.missing.push((son, rest));
                            continue;
                        }
                    }
                }
            };
            let gadget = Row::gap_gadget(bit, gap, w).expect("w <= gap");
            out.extend(son_rows.iter().map(|r| gadget.concat(r)));
        }
    }
}
