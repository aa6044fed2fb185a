use std::fmt;

/// A subset of `[0, n]` stored as a bitset of `n + 1` bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CardSet {
    n: usize,
    words: Vec<u64>,
}

impl CardSet {
    pub fn empty(n: usize) -> CardSet {
        CardSet {
            n,
            words: vec![0; n / 64 + 1],
        }
    }

    pub fn singleton(n: usize, i: usize) -> CardSet {
        let mut s = CardSet::empty(n);
        s.insert(i);
        s
    }

    /// `[lo, hi]` clipped to the universe.
    pub fn interval(n: usize, lo: usize, hi: usize) -> CardSet {
        let mut s = CardSet::empty(n);
        for i in lo..=hi.min(n) {
            s.insert(i);
        }
        s
    }

    /// Largest element of the universe.
    pub fn universe_max(&self) -> usize {
        self.n
    }

    /// # Panics
    /// If `i > n`.
    pub fn insert(&mut self, i: usize) {
        assert!(i <= self.n, "{i} outside [0, {}]", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i <= self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &CardSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &CardSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &CardSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn clear_above_n(&mut self) {
        let last = self.words.len() - 1;
        let keep = self.n % 64 + 1;
        if keep < 64 {
            self.words[last] &= (1u64 << keep) - 1;
        }
    }

    /// `self |= j + other`, dropping elements above `n`.
    pub fn or_shifted_up(&mut self, other: &CardSet, j: usize) {
        let (ws, bs) = (j / 64, j % 64);
        for i in (0..self.words.len()).rev() {
            if i < ws {
                break;
            }
            let src = i - ws;
            let mut w = other.words[src] << bs;
            if bs > 0 && src > 0 {
                w |= other.words[src - 1] >> (64 - bs);
            }
            self.words[i] |= w;
        }
        self.clear_above_n();
    }

    /// `self |= (other - j) ∩ [0, n]`.
    pub fn or_shifted_down(&mut self, other: &CardSet, j: usize) {
        let (ws, bs) = (j / 64, j % 64);
        let len = self.words.len();
        for i in 0..len {
            let src = i + ws;
            if src >= len {
                break;
            }
            let mut w = other.words[src] >> bs;
            if bs > 0 && src + 1 < len {
                w |= other.words[src + 1] << (64 - bs);
            }
            self.words[i] |= w;
        }
    }

    /// `self |= ⋃_{j=from}^{to} (j + other)`.
    pub fn or_window_up(&mut self, other: &CardSet, from: usize, to: usize) {
        for j in from..=to.min(self.n) {
            self.or_shifted_up(other, j);
        }
    }

    /// `self |= ⋃_{j=from}^{to} (other - j)`, clipped to `[0, n]`.
    pub fn or_window_down(&mut self, other: &CardSet, from: usize, to: usize) {
        for j in from..=to.min(self.n) {
            self.or_shifted_down(other, j);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.n).filter(move |&i| self.contains(i))
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        (0..=self.n).rev().find(|&i| self.contains(i))
    }

    /// Maximal runs `[lo, hi]` in increasing order.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for i in self.iter() {
            match out.last_mut() {
                Some((_, hi)) if *hi + 1 == i => *hi = i,
                _ => out.push((i, i)),
            }
        }
        out
    }
}

impl fmt::Display for CardSet {
    /// Interval list such as `[0,3]` or `[0,1],[4,4]`; `[]` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs = self.intervals();
        if runs.is_empty() {
            return f.write_str("[]");
        }
        for (i, (lo, hi)) in runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{lo},{hi}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CardSet({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn display_and_intervals() {
        let mut s = CardSet::interval(10, 0, 3);
        assert_eq!(s.to_string(), "[0,3]");
        s.insert(7);
        assert_eq!(s.to_string(), "[0,3],[7,7]");
        assert_eq!(CardSet::empty(4).to_string(), "[]");
        assert_eq!(CardSet::singleton(4, 2).to_string(), "[2,2]");
    }

    #[test]
    fn shifts_clip_to_universe() {
        let s = CardSet::interval(5, 2, 4);
        let mut up = CardSet::empty(5);
        up.or_shifted_up(&s, 2);
        assert_eq!(up.iter().collect::<Vec<_>>(), [4, 5]);
        let mut down = CardSet::empty(5);
        down.or_shifted_down(&s, 3);
        assert_eq!(down.iter().collect::<Vec<_>>(), [0, 1]);
    }

    fn model(n: usize) -> impl Strategy<Value = (usize, BTreeSet<usize>)> {
        (1..n).prop_flat_map(|n| (Just(n), proptest::collection::btree_set(0..=n, 0..20)))
    }

    proptest! {
        #[test]
        fn window_shifts_match_sets((n, elems) in model(200), from in 0usize..80, len in 0usize..80) {
            let mut s = CardSet::empty(n);
            for &e in &elems { s.insert(e); }
            let to = from + len;

            let mut up = CardSet::empty(n);
            up.or_window_up(&s, from, to);
            let want_up: BTreeSet<usize> = elems.iter()
                .flat_map(|&e| (from..=to).map(move |j| e + j))
                .filter(|&x| x <= n).collect();
            prop_assert_eq!(up.iter().collect::<BTreeSet<_>>(), want_up);

            let mut down = CardSet::empty(n);
            down.or_window_down(&s, from, to);
            let want_down: BTreeSet<usize> = elems.iter()
                .flat_map(|&e| (from..=to).filter_map(move |j| e.checked_sub(j)))
                .collect();
            prop_assert_eq!(down.iter().collect::<BTreeSet<_>>(), want_down);
        }
    }
}
