//! Small reference diagrams.

/// The ten-variable running example `ψ`. Nodes are listed in the shelling
/// `a, b, c, d, e, f`; `f` tests `x1`, `e` tests `x3`, `d` tests `x4`, `a` and
/// `c` both test `x7`, and `b` tests `x8`.
pub const PSI: &str = include_str!("../fixtures/psi.bdd");
