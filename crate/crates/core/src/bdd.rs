//! Ordered binary decision diagrams.
//!
//! A [`Bdd`] is an immutable array of branching nodes stored sons-before-parents,
//! plus a root. Storage order is therefore a shelling from below, and reverse
//! storage order is a shelling from above. The diagram must be ordered (variable
//! indices strictly increase along every edge) but need not be reduced: distinct
//! nodes may carry identical `(var, lo, hi)` triples.
//!
//! Variables are numbered `1..=n`. Wherever a terminal needs a level, it sits at
//! `n + 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Handle to a node of a [`Bdd`]: one of the two sinks or a branching node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    Bot,
    Top,
    Node(usize),
}

impl NodeId {
    pub fn is_terminal(self) -> bool {
        !matches!(self, NodeId::Node(_))
    }

    pub fn index(self) -> Option<usize> {
        match self {
            NodeId::Node(i) => Some(i),
            _ => None,
        }
    }
}

/// Which son slot of a parent references a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Lo,
    Hi,
}

impl Branch {
    pub fn bit(self) -> bool {
        self == Branch::Hi
    }

    pub fn weight(self) -> usize {
        self.bit() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub var: usize,
    pub lo: NodeId,
    pub hi: NodeId,
}

impl Node {
    pub fn son(&self, branch: Branch) -> NodeId {
        match branch {
            Branch::Lo => self.lo,
            Branch::Hi => self.hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bdd {
    nvars: usize,
    nodes: Vec<Node>,
    names: Vec<String>,
    root: NodeId,
}

impl Bdd {
    /// Builds a diagram from nodes in sons-before-parents order, naming them
    /// `n0`, `n1`, ...
    pub fn new(nvars: usize, nodes: Vec<Node>, root: NodeId) -> Result<Bdd> {
        let names = (0..nodes.len()).map(|i| format!("n{i}")).collect();
        Bdd::with_names(nvars, nodes, names, root)
    }

    pub fn with_names(
        nvars: usize,
        nodes: Vec<Node>,
        names: Vec<String>,
        root: NodeId,
    ) -> Result<Bdd> {
        assert_eq!(nodes.len(), names.len(), "one name per node");
        let bdd = Bdd {
            nvars,
            nodes,
            names,
            root,
        };
        bdd.validate()?;
        Ok(bdd)
    }

    /// The constant function over `nvars` variables.
    pub fn constant(nvars: usize, value: bool) -> Bdd {
        Bdd {
            nvars,
            nodes: Vec::new(),
            names: Vec::new(),
            root: if value { NodeId::Top } else { NodeId::Bot },
        }
    }

    fn validate(&self) -> Result<()> {
        if self.nvars == 0 {
            return Err(Error::Syntax("nvars must be positive".into()));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.var == 0 || node.var > self.nvars {
                return Err(Error::VarOutOfRange {
                    var: node.var,
                    nvars: self.nvars,
                });
            }
            for son in [node.lo, node.hi] {
                if let NodeId::Node(j) = son {
                    if j >= i {
                        return Err(Error::UndeclaredNode(
                            self.names.get(j).cloned().unwrap_or_else(|| j.to_string()),
                        ));
                    }
                    if self.nodes[j].var <= node.var {
                        return Err(Error::Ordering {
                            node: self.names[i].clone(),
                            var: node.var,
                            son: self.names[j].clone(),
                            son_var: self.nodes[j].var,
                        });
                    }
                }
            }
        }
        if let NodeId::Node(r) = self.root {
            if r >= self.nodes.len() {
                return Err(Error::UndeclaredNode(r.to_string()));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Number of branching nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// # Panics
    /// If `id` is a terminal or out of range.
    pub fn node(&self, id: NodeId) -> &Node {
        match id {
            NodeId::Node(i) => &self.nodes[i],
            _ => panic!("terminal {id:?} has no node record"),
        }
    }

    pub fn name(&self, id: NodeId) -> &str {
        match id {
            NodeId::Top => "T",
            NodeId::Bot => "F",
            NodeId::Node(i) => &self.names[i],
        }
    }

    /// Looks a node up by its file identifier.
    pub fn find(&self, name: &str) -> Option<NodeId> {
        match name {
            "T" => Some(NodeId::Top),
            "F" => Some(NodeId::Bot),
            _ => self.names.iter().position(|n| n == name).map(NodeId::Node),
        }
    }

    /// Variable index of a node; terminals sit at `n + 1`.
    pub fn var(&self, id: NodeId) -> usize {
        match id {
            NodeId::Node(i) => self.nodes[i].var,
            _ => self.nvars + 1,
        }
    }

    /// Number of variables skipped on the edge from `parent` to its son on `branch`.
    pub fn gap(&self, parent: NodeId, branch: Branch) -> usize {
        let node = self.node(parent);
        self.var(node.son(branch)) - node.var - 1
    }

    /// Returns the same diagram with its root moved to `root`. Nodes that become
    /// unreachable are kept.
    pub fn rerooted(&self, root: NodeId) -> Bdd {
        if let NodeId::Node(i) = root {
            assert!(i < self.nodes.len());
        }
        Bdd {
            root,
            ..self.clone()
        }
    }

    /// Follows `u` from the root: lo on 0, hi on 1.
    pub fn evaluate(&self, u: &[bool]) -> Result<bool> {
        if u.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: u.len(),
            });
        }
        let mut cur = self.root;
        while let NodeId::Node(i) = cur {
            let node = &self.nodes[i];
            cur = if u[node.var - 1] { node.hi } else { node.lo };
        }
        Ok(cur == NodeId::Top)
    }

    /// Every branching node, each after both of its non-terminal sons.
    pub fn shelling_from_below(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.nodes.len()).map(NodeId::Node)
    }

    /// Every branching node, each before both of its non-terminal sons.
    pub fn shelling_from_above(&self) -> impl Iterator<Item = NodeId> {
        self.shelling_from_below().rev()
    }

    /// For each branching node (by storage index), the `(parent, branch)` pairs
    /// whose son slot references it, in storage order of the parent.
    pub fn upper_covers(&self) -> Vec<Vec<(NodeId, Branch)>> {
        let mut covers = vec![Vec::new(); self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for branch in [Branch::Lo, Branch::Hi] {
                if let NodeId::Node(j) = node.son(branch) {
                    covers[j].push((NodeId::Node(i), branch));
                }
            }
        }
        covers
    }

    /// Marks the branching nodes reachable from the root.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        if let NodeId::Node(r) = self.root {
            seen[r] = true;
        }
        for i in (0..self.nodes.len()).rev() {
            if seen[i] {
                let node = self.nodes[i];
                for son in [node.lo, node.hi] {
                    if let NodeId::Node(j) = son {
                        seen[j] = true;
                    }
                }
            }
        }
        seen
    }

    /// Drops unreachable nodes, keeping the relative order of the rest.
    pub fn pruned(&self) -> Bdd {
        let keep = self.reachable();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut names = Vec::new();
        let map = |id: NodeId, remap: &[usize]| match id {
            NodeId::Node(j) => NodeId::Node(remap[j]),
            t => t,
        };
        for (i, node) in self.nodes.iter().enumerate() {
            if keep[i] {
                remap[i] = nodes.len();
                nodes.push(Node {
                    var: node.var,
                    lo: map(node.lo, &remap),
                    hi: map(node.hi, &remap),
                });
                names.push(self.names[i].clone());
            }
        }
        Bdd {
            nvars: self.nvars,
            nodes,
            names,
            root: map(self.root, &remap),
        }
    }
}

impl fmt::Display for Bdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nvars {}", self.nvars)?;
        for (i, node) in self.nodes.iter().enumerate() {
            writeln!(
                f,
                "node {} {} {} {}",
                self.names[i],
                node.var,
                self.name(node.lo),
                self.name(node.hi)
            )?;
        }
        writeln!(f, "root {}", self.name(self.root))
    }
}

impl FromStr for Bdd {
    type Err = Error;

    fn from_str(text: &str) -> Result<Bdd> {
        parse_bdd(text)
    }
}

fn is_identifier(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the line-oriented BDD format:
///
/// ```text
/// nvars <n>
/// node <id> <var> <lo> <hi>
/// root <id|T|F>
/// ```
///
/// `#` starts a comment. Sons must be declared before their parents, and that
/// declaration order is kept as the shelling from below.
pub fn parse_bdd(text: &str) -> Result<Bdd> {
    let mut nvars: Option<usize> = None;
    let mut nodes: Vec<Node> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut root: Option<NodeId> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |e: Error| e.at_line(line);
        if root.is_some() {
            return Err(err(Error::Syntax("directive after root".into())));
        }
        let lookup = |tok: &str, index: &HashMap<String, usize>| -> Result<NodeId> {
            match tok {
                "T" => Ok(NodeId::Top),
                "F" => Ok(NodeId::Bot),
                _ => index
                    .get(tok)
                    .map(|&i| NodeId::Node(i))
                    .ok_or_else(|| Error::UndeclaredNode(tok.to_string())),
            }
        };
        match toks[0] {
            "nvars" => {
                if nvars.is_some() {
                    return Err(err(Error::Syntax("duplicate nvars".into())));
                }
                if toks.len() != 2 {
                    return Err(err(Error::Syntax("expected `nvars <n>`".into())));
                }
                let n: usize = toks[1]
                    .parse()
                    .map_err(|_| err(Error::Syntax(format!("bad variable count `{}`", toks[1]))))?;
                if n == 0 {
                    return Err(err(Error::Syntax("nvars must be positive".into())));
                }
                nvars = Some(n);
            }
            "node" => {
                let n = nvars.ok_or_else(|| err(Error::MissingNvars))?;
                if toks.len() != 5 {
                    return Err(err(Error::Syntax(
                        "expected `node <id> <var> <lo> <hi>`".into(),
                    )));
                }
                let id = toks[1];
                if !is_identifier(id) || id == "T" || id == "F" {
                    return Err(err(Error::Syntax(format!("bad node identifier `{id}`"))));
                }
                if index.contains_key(id) {
                    return Err(err(Error::DuplicateNode(id.to_string())));
                }
                let var: usize = toks[2]
                    .parse()
                    .map_err(|_| err(Error::Syntax(format!("bad variable `{}`", toks[2]))))?;
                if var == 0 || var > n {
                    return Err(err(Error::VarOutOfRange { var, nvars: n }));
                }
                let lo = lookup(toks[3], &index).map_err(err)?;
                let hi = lookup(toks[4], &index).map_err(err)?;
                for son in [lo, hi] {
                    if let NodeId::Node(j) = son {
                        if nodes[j].var <= var {
                            return Err(err(Error::Ordering {
                                node: id.to_string(),
                                var,
                                son: names[j].clone(),
                                son_var: nodes[j].var,
                            }));
                        }
                    }
                }
                index.insert(id.to_string(), nodes.len());
                names.push(id.to_string());
                nodes.push(Node { var, lo, hi });
            }
            "root" => {
                if nvars.is_none() {
                    return Err(err(Error::MissingNvars));
                }
                if toks.len() != 2 {
                    return Err(err(Error::Syntax("expected `root <id>`".into())));
                }
                root = Some(lookup(toks[1], &index).map_err(err)?);
            }
            other => {
                return Err(err(Error::Syntax(format!("unknown directive `{other}`"))));
            }
        }
    }

    let nvars = nvars.ok_or(Error::MissingNvars)?;
    let root = root.ok_or(Error::MissingRoot)?;
    Bdd::with_names(nvars, nodes, names, root)
}

/// Renders a bitstring as `0`/`1` characters.
pub fn bits_to_string(u: &[bool]) -> String {
    u.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
