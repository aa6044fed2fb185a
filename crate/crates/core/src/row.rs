//! 012g-rows: compressed sets of bitstrings.
//!
//! A [`Row`] has one [`Token`] per variable. `0`/`1` fix a bit, `*` leaves it
//! free, and a group label ties a set of positions to an "exactly `t` ones in
//! here" constraint. Groups never overlap (each position carries one token) and
//! always satisfy `1 <= t < size`; the degenerate cases are written as plain
//! zeros or ones instead.
//!
//! Text form, one row per line:
//!
//! ```text
//! 0 1 0 a a a 0 b b b ; a=g(1) b=g(2) # count=9
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Zero,
    One,
    DontCare,
    /// Member of the group with this row-local id.
    Group(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    tokens: Vec<Token>,
    /// Required number of ones, indexed by group id.
    ones: Vec<usize>,
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k.min(n - k)))
}

/// Label of a group id: `a`..`z`, then `aa`, `ab`, ...
pub fn group_label(mut gid: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (gid % 26) as u8);
        if gid < 26 {
            break;
        }
        gid = gid / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

fn parse_group_label(label: &str) -> Option<usize> {
    if label.is_empty() || !label.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    let mut gid = 0usize;
    for (i, b) in label.bytes().enumerate() {
        let digit = (b - b'a') as usize;
        gid = if i == 0 { digit } else { (gid + 1) * 26 + digit };
    }
    Some(gid)
}

impl Row {
    /// Validates and canonicalizes: group ids are renumbered in order of first
    /// appearance.
    pub fn new(tokens: Vec<Token>, ones: Vec<usize>) -> Result<Row> {
        let mut sizes = vec![0usize; ones.len()];
        for tok in &tokens {
            if let Token::Group(g) = *tok {
                if g >= ones.len() {
                    return Err(Error::InvalidRow(format!("group {g} has no constraint")));
                }
                sizes[g] += 1;
            }
        }
        for (g, (&t, &size)) in ones.iter().zip(&sizes).enumerate() {
            if size == 0 {
                return Err(Error::InvalidRow(format!("group {g} has no positions")));
            }
            if t == 0 || t >= size {
                return Err(Error::InvalidRow(format!(
                    "group {g} requires {t} ones among {size} positions"
                )));
            }
        }
        let mut row = Row { tokens, ones };
        row.canonicalize();
        Ok(row)
    }

    fn canonicalize(&mut self) {
        let mut relabel = vec![usize::MAX; self.ones.len()];
        let mut ones = Vec::with_capacity(self.ones.len());
        for tok in &mut self.tokens {
            if let Token::Group(g) = tok {
                if relabel[*g] == usize::MAX {
                    relabel[*g] = ones.len();
                    ones.push(self.ones[*g]);
                }
                *g = relabel[*g];
            }
        }
        self.ones = ones;
    }

    /// The width-0 row; neutral for [`Row::concat`].
    pub fn empty() -> Row {
        Row {
            tokens: Vec::new(),
            ones: Vec::new(),
        }
    }

    pub fn from_bits(bits: &[bool]) -> Row {
        Row {
            tokens: bits
                .iter()
                .map(|&b| if b { Token::One } else { Token::Zero })
                .collect(),
            ones: Vec::new(),
        }
    }

    /// The row fixing the first token to `bit` (if any), followed by `gap`
    /// positions carrying exactly `w` ones.
    pub fn gap_gadget(bit: Option<bool>, gap: usize, w: usize) -> Result<Row> {
        if w > gap {
            return Err(Error::InvalidRow(format!(
                "cannot place {w} ones in {gap} positions"
            )));
        }
        let mut tokens = Vec::with_capacity(gap + 1);
        if let Some(b) = bit {
            tokens.push(if b { Token::One } else { Token::Zero });
        }
        let mut ones = Vec::new();
        let fill = if w == 0 {
            Token::Zero
        } else if w == gap {
            Token::One
        } else {
            ones.push(w);
            Token::Group(0)
        };
        tokens.extend(std::iter::repeat_n(fill, gap));
        Ok(Row { tokens, ones })
    }

    pub fn width(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Number of groups.
    pub fn group_count(&self) -> usize {
        self.ones.len()
    }

    /// Required ones of group `gid`.
    pub fn group_ones(&self, gid: usize) -> usize {
        self.ones[gid]
    }

    pub fn group_size(&self, gid: usize) -> usize {
        self.tokens
            .iter()
            .filter(|&&t| t == Token::Group(gid))
            .count()
    }

    fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.ones.len()];
        for tok in &self.tokens {
            if let Token::Group(g) = *tok {
                sizes[g] += 1;
            }
        }
        sizes
    }

    pub fn dont_cares(&self) -> usize {
        self.tokens.iter().filter(|&&t| t == Token::DontCare).count()
    }

    pub fn fixed_ones(&self) -> usize {
        self.tokens.iter().filter(|&&t| t == Token::One).count()
    }

    /// The common number of ones of every member, if the row has no `*`.
    pub fn weight(&self) -> Option<usize> {
        if self.tokens.contains(&Token::DontCare) {
            None
        } else {
            Some(self.fixed_ones() + self.ones.iter().sum::<usize>())
        }
    }

    /// Number of bitstrings in the row.
    pub fn cardinality(&self) -> BigUint {
        let mut count = BigUint::one() << self.dont_cares();
        for (size, &t) in self.group_sizes().into_iter().zip(&self.ones) {
            count *= binomial(size, t);
        }
        count
    }

    pub fn contains(&self, u: &[bool]) -> Result<bool> {
        if u.len() != self.width() {
            return Err(Error::LengthMismatch {
                expected: self.width(),
                got: u.len(),
            });
        }
        let mut seen = vec![0usize; self.ones.len()];
        for (tok, &bit) in self.tokens.iter().zip(u) {
            match *tok {
                Token::Zero if bit => return Ok(false),
                Token::One if !bit => return Ok(false),
                Token::Group(g) if bit => seen[g] += 1,
                _ => {}
            }
        }
        Ok(seen == self.ones)
    }

    /// All members in lexicographic order (`0 < 1`, leftmost position most
    /// significant). The output has [`Row::cardinality`] entries.
    pub fn expand(&self) -> Vec<Vec<bool>> {
        let sizes = self.group_sizes();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.width());
        let mut need = self.ones.clone();
        let mut left = sizes;
        self.expand_from(0, &mut cur, &mut need, &mut left, &mut out);
        out
    }

    fn expand_from(
        &self,
        pos: usize,
        cur: &mut Vec<bool>,
        need: &mut [usize],
        left: &mut [usize],
        out: &mut Vec<Vec<bool>>,
    ) {
        if pos == self.tokens.len() {
            out.push(cur.clone());
            return;
        }
        let choices: &[bool] = match self.tokens[pos] {
            Token::Zero => &[false],
            Token::One => &[true],
            Token::DontCare => &[false, true],
            Token::Group(g) => {
                left[g] -= 1;
                let can_zero = need[g] <= left[g];
                let can_one = need[g] > 0;
                for bit in [false, true] {
                    if (bit && can_one) || (!bit && can_zero) {
                        need[g] -= bit as usize;
                        cur.push(bit);
                        self.expand_from(pos + 1, cur, need, left, out);
                        cur.pop();
                        need[g] += bit as usize;
                    }
                }
                left[g] += 1;
                return;
            }
        };
        for &bit in choices {
            cur.push(bit);
            self.expand_from(pos + 1, cur, need, left, out);
            cur.pop();
        }
    }

    /// `self × suffix`: tokens appended, suffix groups renumbered after ours.
    pub fn concat(&self, suffix: &Row) -> Row {
        let offset = self.ones.len();
        let mut tokens = Vec::with_capacity(self.width() + suffix.width());
        tokens.extend_from_slice(&self.tokens);
        tokens.extend(suffix.tokens.iter().map(|&t| match t {
            Token::Group(g) => Token::Group(g + offset),
            t => t,
        }));
        let mut ones = self.ones.clone();
        ones.extend_from_slice(&suffix.ones);
        Row { tokens, ones }
    }

    /// Whether no bitstring belongs to both rows. Exact.
    ///
    /// # Panics
    /// If the widths differ.
    pub fn is_disjoint(&self, other: &Row) -> bool {
        assert_eq!(self.width(), other.width(), "rows of different width");
        let pairs = || self.tokens.iter().zip(&other.tokens);
        if pairs().any(|(a, b)| {
            matches!(
                (a, b),
                (Token::Zero, Token::One) | (Token::One, Token::Zero)
            )
        }) {
            return true;
        }
        !Overlap::new(self, other).feasible()
    }
}

/// Feasibility of a common member of two rows without a fixed-bit conflict.
///
/// Positions where one side is fixed pin the bit and reduce the other side's
/// group demand. The remaining positions form cells `(x, y)`, with `x` a group
/// of the left row or `*` and `y` likewise for the right row; a common member
/// exists iff the left demands can be spread over cells so that every right
/// demand is met, the `*`-to-group cells topping up the right side.
struct Overlap {
    need_left: Vec<usize>,
    need_right: Vec<usize>,
    /// `cells[x][y]`, last index of each dimension is `*`.
    cells: Vec<Vec<usize>>,
    ok: bool,
}

impl Overlap {
    fn new(left: &Row, right: &Row) -> Overlap {
        let (gl, gr) = (left.ones.len(), right.ones.len());
        let mut need_left: Vec<isize> = left.ones.iter().map(|&t| t as isize).collect();
        let mut need_right: Vec<isize> = right.ones.iter().map(|&t| t as isize).collect();
        let mut free_left = vec![0isize; gl];
        let mut free_right = vec![0isize; gr];
        let mut cells = vec![vec![0usize; gr + 1]; gl + 1];
        let slot = |t: Token, star: usize| match t {
            Token::Group(g) => Some(g),
            Token::DontCare => Some(star),
            _ => None,
        };
        for (&a, &b) in left.tokens.iter().zip(&right.tokens) {
            match (slot(a, gl), slot(b, gr)) {
                (Some(x), Some(y)) => {
                    cells[x][y] += 1;
                    if x < gl {
                        free_left[x] += 1;
                    }
                    if y < gr {
                        free_right[y] += 1;
                    }
                }
                (Some(x), None) => {
                    if x < gl && b == Token::One {
                        need_left[x] -= 1;
                    }
                }
                (None, Some(y)) => {
                    if y < gr && a == Token::One {
                        need_right[y] -= 1;
                    }
                }
                (None, None) => {}
            }
        }
        let fits = |need: &[isize], free: &[isize]| {
            need.iter().zip(free).all(|(&n, &f)| n >= 0 && n <= f)
        };
        let ok = fits(&need_left, &free_left) && fits(&need_right, &free_right);
        Overlap {
            need_left: need_left.iter().map(|&n| n.max(0) as usize).collect(),
            need_right: need_right.iter().map(|&n| n.max(0) as usize).collect(),
            cells,
            ok,
        }
    }

    fn feasible(&self) -> bool {
        if !self.ok {
            return false;
        }
        let mut rem = self.need_right.clone();
        self.assign(0, 0, self.need_left.first().copied().unwrap_or(0), &mut rem)
    }

    /// Places `left` remaining ones of left group `x` into cells `y..`.
    fn assign(&self, x: usize, y: usize, left: usize, rem: &mut Vec<usize>) -> bool {
        let gl = self.need_left.len();
        let gr = self.need_right.len();
        if x == gl {
            return rem
                .iter()
                .enumerate()
                .all(|(h, &r)| r <= self.cells[gl][h]);
        }
        if y == gr {
            // Whatever is left goes to the right row's `*` positions.
            if left > self.cells[x][gr] {
                return false;
            }
            let next = self.need_left.get(x + 1).copied().unwrap_or(0);
            return self.assign(x + 1, 0, next, rem);
        }
        let cap = self.cells[x][y].min(rem[y]).min(left);
        for take in (0..=cap).rev() {
            rem[y] -= take;
            let found = self.assign(x, y + 1, left - take, rem);
            rem[y] += take;
            if found {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for tok in &self.tokens {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match tok {
                Token::Zero => f.write_str("0")?,
                Token::One => f.write_str("1")?,
                Token::DontCare => f.write_str("*")?,
                Token::Group(g) => f.write_str(&group_label(*g))?,
            }
        }
        if !self.ones.is_empty() {
            f.write_str(" ;")?;
            for (g, t) in self.ones.iter().enumerate() {
                write!(f, " {}=g({t})", group_label(g))?;
            }
        }
        write!(f, " # count={}", self.cardinality())
    }
}

impl FromStr for Row {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form. A trailing `# count=` is
    /// checked against the computed cardinality.
    fn from_str(s: &str) -> Result<Row> {
        let (body, count) = match s.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (s, None),
        };
        let (toks, legend) = match body.split_once(';') {
            Some((t, l)) => (t, l),
            None => (body, ""),
        };
        let mut ones: Vec<Option<usize>> = Vec::new();
        for entry in legend.split_whitespace() {
            let bad = || Error::InvalidRow(format!("bad legend entry `{entry}`"));
            let (label, rest) = entry.split_once('=').ok_or_else(bad)?;
            let t: usize = rest
                .strip_prefix("g(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(bad)?;
            let g = parse_group_label(label).ok_or_else(bad)?;
            if ones.len() <= g {
                ones.resize(g + 1, None);
            }
            if ones[g].replace(t).is_some() {
                return Err(bad());
            }
        }
        let mut tokens = Vec::new();
        for tok in toks.split_whitespace() {
            tokens.push(match tok {
                "0" => Token::Zero,
                "1" => Token::One,
                "*" | "2" => Token::DontCare,
                label => Token::Group(
                    parse_group_label(label)
                        .ok_or_else(|| Error::InvalidRow(format!("bad token `{label}`")))?,
                ),
            });
        }
        let ones = ones
            .into_iter()
            .enumerate()
            .map(|(g, t)| {
                t.ok_or_else(|| Error::InvalidRow(format!("group {} undefined", group_label(g))))
            })
            .collect::<Result<Vec<_>>>()?;
        let row = Row::new(tokens, ones)?;
        if let Some(c) = count {
            let declared = c
                .strip_prefix("count=")
                .and_then(|c| c.parse::<BigUint>().ok())
                .ok_or_else(|| Error::InvalidRow(format!("bad count `{c}`")))?;
            if declared != row.cardinality() {
                return Err(Error::InvalidRow(format!(
                    "declared count {declared} but row has {}",
                    row.cardinality()
                )));
            }
        }
        Ok(row)
    }
}

/// A sequence of equal-width rows meant to be pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSet {
    width: usize,
    rows: Vec<Row>,
}

impl RowSet {
    pub fn new(width: usize) -> RowSet {
        RowSet {
            width,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<Row>) -> RowSet {
        let mut set = RowSet::new(width);
        for r in rows {
            set.push(r);
        }
        set
    }

    /// # Panics
    /// If the row has the wrong width.
    pub fn push(&mut self, row: Row) {
        assert_eq!(row.width(), self.width, "row width mismatch");
        self.rows.push(row);
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Sum of row cardinalities; the model count when rows are disjoint.
    pub fn total(&self) -> BigUint {
        self.rows.iter().map(Row::cardinality).sum()
    }

    /// All members of all rows, sorted, duplicates kept.
    pub fn expand(&self) -> Vec<Vec<bool>> {
        let mut all: Vec<Vec<bool>> = self.rows.iter().flat_map(Row::expand).collect();
        all.sort();
        all
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| self.rows[i + 1..].iter().all(|s| r.is_disjoint(s)))
    }

    /// Header line `k=<k> rows=<count> models=<total>` followed by one row per line.
    pub fn render(&self, k: usize) -> String {
        let mut out = format!("k={k} rows={} models={}\n", self.len(), self.total());
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}
