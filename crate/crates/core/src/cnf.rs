//! DIMACS CNF ingestion.

use crate::bdd::{Bdd, NodeId};
use crate::enumerate::{apply_and, Builder};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub nvars: usize,
    /// Nonzero literals; `-v` is the negation of variable `v`.
    pub clauses: Vec<Vec<i64>>,
}

/// Parses `p cnf <vars> <clauses>` followed by zero-terminated clauses. `c`
/// lines are comments and a line starting with `%` ends the input.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let at = |msg: String| Error::Dimacs(msg).at_line(lineno + 1);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(at("duplicate problem line".into()));
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            let (v, c) = parsed.ok_or_else(|| at(format!("bad problem line `{trimmed}`")))?;
            if v == 0 {
                return Err(at("at least one variable is required".into()));
            }
            header = Some((v, c));
            continue;
        }
        let (nvars, _) = header.ok_or_else(|| at("clause before problem line".into()))?;
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| at(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > nvars {
                return Err(at(format!(
                    "literal {lit} exceeds the declared {nvars} variables"
                )));
            }
            current.push(lit);
        }
    }
    let (nvars, nclauses) = header.ok_or_else(|| Error::Dimacs("missing problem line".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != nclauses {
        return Err(Error::Dimacs(format!(
            "declared {nclauses} clauses, found {}",
            clauses.len()
        )));
    }
    Ok(Cnf { nvars, clauses })
}

/// The disjunction of `lits` as a chain of nodes, ⊤ for a tautology.
pub fn clause_bdd(nvars: usize, lits: &[i64]) -> Bdd {
    let mut sorted: Vec<i64> = lits.to_vec();
    sorted.sort_by_key(|l| std::cmp::Reverse((l.unsigned_abs(), *l)));
    sorted.dedup();
    if sorted.windows(2).any(|w| w[0] == -w[1]) {
        return Bdd::constant(nvars, true);
    }
    let mut b = Builder::new(nvars);
    let mut acc = NodeId::Bot;
    for &lit in &sorted {
        let var = lit.unsigned_abs() as usize;
        acc = if lit > 0 {
            b.mk(var, acc, NodeId::Top)
        } else {
            b.mk(var, NodeId::Top, acc)
        };
    }
    b.build(acc)
}

/// Conjoins the clause diagrams in input order, identity variable order.
pub fn cnf_to_bdd(cnf: &Cnf) -> Result<Bdd> {
    let mut acc = Bdd::constant(cnf.nvars, true);
    for clause in &cnf.clauses {
        acc = apply_and(&acc, &clause_bdd(cnf.nvars, clause))?;
        if acc.root() == NodeId::Bot {
            break;
        }
    }
    Ok(acc)
}
