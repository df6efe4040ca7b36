//! CI couples, relations and the action of index permutations on them.
//!
//! Indices are stored zero-based and printed one-based. Couples are laid out
//! in slots ordered lexicographically by `(i, j, C)`, where `C` is compared as
//! the binary number of its characteristic vector. For `m = 4` this gives the
//! 24 slots `12, 12|3, 12|4, 12|34, 13, 13|2, ...`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 6;
const WORDS: usize = 4;

pub fn check_ground(m: usize) -> Result<()> {
    if (2..=MAX_GROUND).contains(&m) {
        Ok(())
    } else {
        Err(Error::GroundSize(m))
    }
}

/// Number of couples `binom(m, 2) * 2^(m-2)` over `[m]`.
pub fn slot_count(m: usize) -> usize {
    (m * (m - 1) / 2) << (m - 2)
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    (0..i).map(|a| m - 1 - a).sum::<usize>() + (j - i - 1)
}

fn pair_from_index(m: usize, mut p: usize) -> (usize, usize) {
    for i in 0..m {
        let row = m - 1 - i;
        if p < row {
            return (i, i + 1 + p);
        }
        p -= row;
    }
    unreachable!("pair index out of range")
}

/// Rank of `cond` among the subsets of `[m] \ {i, j}` ordered as binary numbers.
fn cond_rank(m: usize, i: usize, j: usize, cond: u8) -> usize {
    let mut rank = 0;
    let mut bit = 0;
    for k in 0..m {
        if k == i || k == j {
            continue;
        }
        if cond & (1 << k) != 0 {
            rank |= 1 << bit;
        }
        bit += 1;
    }
    rank
}

fn cond_from_rank(m: usize, i: usize, j: usize, rank: usize) -> u8 {
    let mut cond = 0u8;
    let mut bit = 0;
    for k in 0..m {
        if k == i || k == j {
            continue;
        }
        if rank & (1 << bit) != 0 {
            cond |= 1 << k;
        }
        bit += 1;
    }
    cond
}

/// A pairwise statement `ij|C` over the ground set `[m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Couple {
    i: u8,
    j: u8,
    cond: u8,
    ground: u8,
}

impl Couple {
    /// Zero-based constructor; `cond` is a bitmask over `0..m`.
    pub fn new(ground: usize, i: usize, j: usize, cond: u8) -> Result<Self> {
        check_ground(ground)?;
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == j || j >= ground {
            return Err(Error::InvalidCouple(format!(
                "pair ({}, {}) invalid for m = {ground}",
                i + 1,
                j + 1
            )));
        }
        if cond >> ground != 0 || cond & ((1 << i) | (1 << j)) != 0 {
            return Err(Error::InvalidCouple(format!(
                "conditioning set {} not disjoint from {}{} or outside [{ground}]",
                format_set(cond),
                i + 1,
                j + 1
            )));
        }
        Ok(Couple {
            i: i as u8,
            j: j as u8,
            cond,
            ground: ground as u8,
        })
    }

    /// One-based constructor, e.g. `Couple::labeled(4, 1, 2, &[3])` is `12|3`.
    pub fn labeled(ground: usize, i: usize, j: usize, cond: &[usize]) -> Result<Self> {
        if i == 0 || j == 0 || cond.iter().any(|&c| c == 0 || c > ground) {
            return Err(Error::InvalidCouple("indices are one-based".into()));
        }
        let mask = cond.iter().fold(0u8, |acc, &c| acc | 1 << (c - 1));
        Couple::new(ground, i - 1, j - 1, mask)
    }

    pub fn from_slot(ground: usize, slot: usize) -> Self {
        let per_pair = 1usize << (ground - 2);
        let (i, j) = pair_from_index(ground, slot / per_pair);
        let cond = cond_from_rank(ground, i, j, slot % per_pair);
        Couple {
            i: i as u8,
            j: j as u8,
            cond,
            ground: ground as u8,
        }
    }

    pub fn slot(&self) -> usize {
        let m = self.ground();
        let (i, j) = self.pair();
        (pair_index(m, i, j) << (m - 2)) + cond_rank(m, i, j, self.cond)
    }

    /// Zero-based pair with `i < j`.
    pub fn pair(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    pub fn cond(&self) -> u8 {
        self.cond
    }

    pub fn cond_indices(&self) -> Vec<usize> {
        (0..self.ground()).filter(|&k| self.cond & (1 << k) != 0).collect()
    }

    pub fn ground(&self) -> usize {
        self.ground as usize
    }

    /// Size of the conditioning set (a `t`-couple has `|C| = t`).
    pub fn order(&self) -> usize {
        self.cond.count_ones() as usize
    }

    pub fn dual(&self) -> Couple {
        let full = ((1u16 << self.ground) - 1) as u8;
        Couple {
            cond: full & !self.cond & !(1 << self.i) & !(1 << self.j),
            ..*self
        }
    }

    pub fn permuted(&self, perm: &Permutation) -> Result<Couple> {
        if perm.len() != self.ground() {
            return Err(Error::GroundMismatch(self.ground(), perm.len()));
        }
        let cond = (0..self.ground())
            .filter(|&k| self.cond & (1 << k) != 0)
            .fold(0u8, |acc, k| acc | 1 << perm.apply(k));
        Couple::new(
            self.ground(),
            perm.apply(self.i as usize),
            perm.apply(self.j as usize),
            cond,
        )
    }

    fn display_key(&self) -> (usize, usize, usize, u8) {
        (self.order(), self.i as usize, self.j as usize, self.cond)
    }
}

impl fmt::Display for Couple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i + 1, self.j + 1)?;
        if self.cond != 0 {
            write!(f, "|{}", format_set(self.cond))?;
        }
        Ok(())
    }
}

fn format_set(mask: u8) -> String {
    (0..8)
        .filter(|k| mask & (1 << k) != 0)
        .map(|k| char::from(b'1' + k as u8))
        .collect()
}

/// A set of couples over `[m]`, stored as a bitset over slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    ground: u8,
    bits: [u64; WORDS],
}

impl Relation {
    pub fn empty(ground: usize) -> Result<Self> {
        check_ground(ground)?;
        Ok(Relation {
            ground: ground as u8,
            bits: [0; WORDS],
        })
    }

    /// The saturated relation `R(m)`.
    pub fn full(ground: usize) -> Result<Self> {
        let mut rel = Relation::empty(ground)?;
        for slot in 0..slot_count(ground) {
            rel.bits[slot / 64] |= 1 << (slot % 64);
        }
        Ok(rel)
    }

    pub fn from_couples<I: IntoIterator<Item = Couple>>(ground: usize, couples: I) -> Result<Self> {
        let mut rel = Relation::empty(ground)?;
        for c in couples {
            rel.insert(c)?;
        }
        Ok(rel)
    }

    /// Builds a relation from a slot mask; only valid for `m <= 4`.
    pub fn from_mask(ground: usize, mask: u32) -> Result<Self> {
        check_ground(ground)?;
        let n = slot_count(ground);
        if n > 32 || (n < 32 && mask >> n != 0) {
            return Err(Error::InvalidCouple(format!(
                "mask {mask:#x} does not fit m = {ground}"
            )));
        }
        let mut rel = Relation::empty(ground)?;
        rel.bits[0] = mask as u64;
        Ok(rel)
    }

    /// Slot mask for `m <= 4`.
    pub fn mask(&self) -> u32 {
        assert!(
            slot_count(self.ground()) <= 32,
            "mask() is only available for m <= 4"
        );
        self.bits[0] as u32
    }

    pub fn ground(&self) -> usize {
        self.ground as usize
    }

    pub fn insert(&mut self, c: Couple) -> Result<bool> {
        if c.ground() != self.ground() {
            return Err(Error::GroundMismatch(self.ground(), c.ground()));
        }
        let s = c.slot();
        let fresh = self.bits[s / 64] & (1 << (s % 64)) == 0;
        self.bits[s / 64] |= 1 << (s % 64);
        Ok(fresh)
    }

    pub fn remove(&mut self, c: Couple) -> bool {
        if c.ground() != self.ground() {
            return false;
        }
        let s = c.slot();
        let present = self.bits[s / 64] & (1 << (s % 64)) != 0;
        self.bits[s / 64] &= !(1 << (s % 64));
        present
    }

    pub fn contains(&self, c: &Couple) -> bool {
        if c.ground() != self.ground() {
            return false;
        }
        let s = c.slot();
        self.bits[s / 64] & (1 << (s % 64)) != 0
    }

    pub fn contains_slot(&self, slot: usize) -> bool {
        self.bits[slot / 64] & (1 << (slot % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Couples in slot order.
    pub fn iter(&self) -> impl Iterator<Item = Couple> + '_ {
        let m = self.ground();
        (0..slot_count(m))
            .filter(move |&s| self.contains_slot(s))
            .map(move |s| Couple::from_slot(m, s))
    }

    /// Number of couples with `|C| = t`.
    pub fn count_order(&self, t: usize) -> usize {
        self.iter().filter(|c| c.order() == t).count()
    }

    fn same_ground(&self, other: &Relation) -> Result<()> {
        if self.ground != other.ground {
            Err(Error::GroundMismatch(self.ground(), other.ground()))
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_ground(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_ground(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.same_ground(other)?;
        Ok(self.zip(other, |a, b| a & !b))
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0))
    }

    /// Subset test for relations already known to share a ground set.
    pub(crate) fn subset_of(&self, other: &Relation) -> bool {
        debug_assert_eq!(self.ground, other.ground);
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn or_assign(&mut self, other: &Relation) {
        for (a, b) in self.bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
    }

    fn zip(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Relation {
        let mut bits = [0u64; WORDS];
        for (k, w) in bits.iter_mut().enumerate() {
            *w = f(self.bits[k], other.bits[k]);
        }
        Relation {
            ground: self.ground,
            bits,
        }
    }

    /// The relation made of the dual couples `ij|([m] \ ijC)`.
    pub fn dual(&self) -> Relation {
        if self.ground == 4 {
            return Relation::from_mask(4, crate::fast4::dual(self.mask())).expect("24-bit mask");
        }
        let mut out = Relation {
            ground: self.ground,
            bits: [0; WORDS],
        };
        for c in self.iter() {
            let s = c.dual().slot();
            out.bits[s / 64] |= 1 << (s % 64);
        }
        out
    }

    /// Relabels `ij|C` as `π(i)π(j)|π(C)`.
    pub fn permuted(&self, perm: &Permutation) -> Result<Relation> {
        if perm.len() != self.ground() {
            return Err(Error::GroundMismatch(self.ground(), perm.len()));
        }
        let mut out = Relation {
            ground: self.ground,
            bits: [0; WORDS],
        };
        for c in self.iter() {
            let s = c.permuted(perm)?.slot();
            out.bits[s / 64] |= 1 << (s % 64);
        }
        Ok(out)
    }

    /// Parses the comma separated couple grammar, e.g. `"12|34,23,14|2"`.
    ///
    /// `ij|*` expands to every conditioning set; `{}`, `∅` and the empty
    /// string denote the empty relation.
    pub fn parse(text: &str, ground: usize) -> Result<Relation> {
        check_ground(ground)?;
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = cleaned
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(&cleaned);
        let mut rel = Relation::empty(ground)?;
        if body.is_empty() || body == "∅" {
            return Ok(rel);
        }
        for token in body.split(',') {
            for c in parse_couple_token(token, ground)? {
                rel.insert(c)?;
            }
        }
        Ok(rel)
    }
}

fn parse_digit(ch: char, ground: usize, token: &str) -> Result<usize> {
    match ch.to_digit(10) {
        Some(d) if d >= 1 && (d as usize) <= ground => Ok(d as usize - 1),
        _ => Err(Error::Parse(format!(
            "`{token}`: `{ch}` is not an index in [{ground}]"
        ))),
    }
}

fn parse_couple_token(token: &str, ground: usize) -> Result<Vec<Couple>> {
    let (pair, cond) = match token.split_once('|') {
        Some((p, c)) => (p, Some(c)),
        None => (token, None),
    };
    let digits: Vec<char> = pair.chars().collect();
    if digits.len() != 2 {
        return Err(Error::Parse(format!(
            "`{token}`: a couple starts with exactly two indices"
        )));
    }
    let i = parse_digit(digits[0], ground, token)?;
    let j = parse_digit(digits[1], ground, token)?;
    if i == j {
        return Err(Error::Parse(format!("`{token}`: repeated index")));
    }
    match cond {
        Some("*") => {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            let per_pair = 1usize << (ground - 2);
            Ok((0..per_pair)
                .map(|r| Couple {
                    i: a as u8,
                    j: b as u8,
                    cond: cond_from_rank(ground, a, b, r),
                    ground: ground as u8,
                })
                .collect())
        }
        Some(cs) => {
            let mut mask = 0u8;
            for ch in cs.chars() {
                let k = parse_digit(ch, ground, token)?;
                if mask & (1 << k) != 0 {
                    return Err(Error::Parse(format!("`{token}`: repeated index")));
                }
                mask |= 1 << k;
            }
            Couple::new(ground, i, j, mask)
                .map(|c| vec![c])
                .map_err(|e| Error::Parse(format!("`{token}`: {e}")))
        }
        None => Ok(vec![Couple::new(ground, i, j, 0)?]),
    }
}

impl Ord for Relation {
    /// Ground set first, then the slot bitmask read as a binary number.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Relation {
    /// Couples ordered by conditioning-set size, then pair, e.g. `12,13,12|3,13|2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let mut couples: Vec<Couple> = self.iter().collect();
        couples.sort_by_key(|c| c.display_key());
        for (k, c) in couples.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(m={}, {{{}}})", self.ground, self)
    }
}

/// A bijection of `[m]`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    /// `self ∘ inner`, i.e. apply `inner` first.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.len() != inner.len() {
            return Err(Error::GroundMismatch(self.len(), inner.len()));
        }
        Ok(Permutation {
            images: inner.images.iter().map(|&x| self.images[x as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize] = k as u8;
        }
        Permutation { images: inv }
    }

    /// All `m!` permutations in lexicographic order of their image vectors.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..m as u8).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(k) = (0..m.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..m).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    /// Parses cycle notation over `[m]`: `"(14)(23)"`, `"(1243)"`, `"()"` or `""`.
    pub fn parse_cycles(text: &str, m: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..m).collect();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        let mut touched = vec![false; m];
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("bad cycle notation `{text}`")));
            };
            let Some(end) = inner.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in `{text}`")));
            };
            let cycle: Vec<usize> = inner[..end]
                .chars()
                .map(|ch| parse_digit(ch, m, text))
                .collect::<Result<_>>()?;
            for (k, &x) in cycle.iter().enumerate() {
                if touched[x] {
                    return Err(Error::Parse(format!("index repeated in `{text}`")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
            rest = &inner[end + 1..];
        }
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut any = false;
        for start in 0..m {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                write!(f, "{}", x + 1)?;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Orbit-minimal representative together with a permutation reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub representative: Relation,
    pub witness_perm: Permutation,
}

/// Minimal relation (under [`Relation`]'s `Ord`) over the orbit of `rel`.
///
/// Brute force over all `m!` permutations; the witness is the first
/// permutation, in lexicographic order, attaining the minimum.
pub fn canonical_class(rel: &Relation) -> CanonicalForm {
    let m = rel.ground();
    if m == 4 {
        let (mask, p) = crate::fast4::canonical(rel.mask());
        return CanonicalForm {
            representative: Relation::from_mask(4, mask).expect("valid mask"),
            witness_perm: crate::fast4::permutation(p),
        };
    }
    let mut best: Option<(Relation, Permutation)> = None;
    for perm in Permutation::all(m) {
        let image = rel.permuted(&perm).expect("same ground set");
        if best.as_ref().is_none_or(|(b, _)| image < *b) {
            best = Some((image, perm));
        }
    }
    let (representative, witness_perm) = best.expect("at least the identity");
    CanonicalForm {
        representative,
        witness_perm,
    }
}

/// Orbit of `rel` under all index permutations, deduplicated and sorted.
pub fn orbit(rel: &Relation) -> Vec<Relation> {
    let mut out: Vec<Relation> = Permutation::all(rel.ground())
        .iter()
        .map(|p| rel.permuted(p).expect("same ground set"))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(s: &str) -> Relation {
        Relation::parse(s, 4).unwrap()
    }

    #[test]
    fn slot_layout() {
        assert_eq!(slot_count(3), 6);
        assert_eq!(slot_count(4), 24);
        assert_eq!(slot_count(5), 80);
        assert_eq!(slot_count(6), 240);
        let order: Vec<String> = (0..8).map(|s| Couple::from_slot(4, s).to_string()).collect();
        assert_eq!(order, ["12", "12|3", "12|4", "12|34", "13", "13|2", "13|4", "13|24"]);
        for m in 2..=6 {
            for s in 0..slot_count(m) {
                assert_eq!(Couple::from_slot(m, s).slot(), s);
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(rel("12,13|2").dual(), rel("12|34,13|4"));
        assert_eq!(rel("23|14").dual(), rel("23"));
        let l = rel("14|*,23|1,23|14,24|*,34|*");
        assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn permute_examples() {
        let p = Permutation::parse_cycles("(23)", 4).unwrap();
        assert_eq!(rel("13|2").permuted(&p).unwrap(), rel("12|3"));
        let id = Permutation::identity(4);
        let l = rel("12,23|14");
        assert_eq!(l.permuted(&id).unwrap(), l);
        let l10 = rel("12,12|3,23,23|1,23|14,34|1,34|12");
        let p = Permutation::parse_cycles("(14)(23)", 4).unwrap();
        assert_eq!(l10.dual().permuted(&p).unwrap(), l10);
    }

    #[test]
    fn canonical_examples() {
        let m3 = Relation::parse("13|2", 3).unwrap();
        let cf = canonical_class(&m3);
        assert_eq!(cf.representative, Relation::parse("12|3", 3).unwrap());
        assert_eq!(m3.permuted(&cf.witness_perm).unwrap(), cf.representative);
        assert_eq!(canonical_class(&rel("")).representative, rel(""));
        let l = rel("13|2,14");
        let cf = canonical_class(&l);
        assert_eq!(l.permuted(&cf.witness_perm).unwrap(), cf.representative);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(rel("12|*").len(), 4);
        assert_eq!(rel("{12, 13|2}").to_string(), "12,13|2");
        assert_eq!(rel("13|2,12,12|3,13").to_string(), "12,13,12|3,13|2");
        assert_eq!(rel("∅"), rel(""));
        assert!(Relation::parse("15", 4).is_err());
        assert!(Relation::parse("12|1", 4).is_err());
        assert!(Relation::parse("11", 4).is_err());
        assert!(Relation::parse("1", 4).is_err());
        assert!(Relation::parse("12", 7).is_err());
    }

    #[test]
    fn cycles() {
        let p = Permutation::parse_cycles("(1243)", 4).unwrap();
        assert_eq!(p.images(), vec![1, 3, 0, 2]);
        assert_eq!(p.to_string(), "(1243)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(Permutation::parse_cycles("", 4).unwrap(), Permutation::identity(4));
        assert!(Permutation::parse_cycles("(11)", 4).is_err());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn ground_mismatch_is_an_error() {
        let a = Relation::parse("12", 3).unwrap();
        let b = rel("12");
        assert_eq!(a.union(&b), Err(Error::GroundMismatch(3, 4)));
        assert!(a.permuted(&Permutation::identity(4)).is_err());
    }
}
