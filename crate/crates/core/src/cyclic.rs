//! Cyclic index arithmetic on `Z/n`, k-element subsets, weak separation and
//! maximal weakly separated collections.
//!
//! Residues are written `1..=n`. A [`KSubset`] stores its elements as a bit
//! mask (bit `a - 1` for residue `a`), so `n` is limited to 64.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_N: usize = 64;

/// A k-element subset of `Z/n`, canonically the increasing list of residues in `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    mask: u64,
    n: u8,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl KSubset {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidSubset(format!("modulus {n} out of range 1..={MAX_N}")));
        }
        let mut mask = 0u64;
        for a in elems {
            if a == 0 || a > n {
                return Err(Error::InvalidSubset(format!("residue {a} not in 1..={n}")));
            }
            let bit = 1u64 << (a - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidSubset(format!("residue {a} repeated")));
            }
            mask |= bit;
        }
        Ok(KSubset { mask, n: n as u8 })
    }

    /// Builds a subset from arbitrary integers, reducing them modulo `n`.
    pub fn from_residues<I: IntoIterator<Item = i64>>(n: usize, elems: I) -> Result<Self> {
        let reduced: Vec<usize> = elems.into_iter().map(|a| residue(a, n)).collect();
        Self::new(n, reduced)
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(mask & !full_mask(n) == 0);
        KSubset { mask, n: n as u8 }
    }

    /// The cyclic interval `{start+1, ..., start+k}`.
    pub fn interval(n: usize, k: usize, start: i64) -> Self {
        let mask = (1..=k as i64).fold(0u64, |m, j| m | 1u64 << (residue(start + j, n) - 1));
        KSubset { mask, n: n as u8 }
    }

    /// Parses `"134"` (single digits, only when `n <= 9`), `"1,3,4"` or `"1 3 4"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        let elems: Vec<usize> = if parts.len() == 1 && n <= 9 && parts[0].len() > 1 {
            parts[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Malformed(format!("bad label {text:?}")))?
        } else {
            parts
                .iter()
                .map(|p| p.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::Malformed(format!("bad label {text:?}")))?
        };
        KSubset::new(n, elems)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, a: usize) -> bool {
        a >= 1 && a <= self.n() && self.mask & (1u64 << (a - 1)) != 0
    }

    pub fn elems(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (1..=self.n()).filter(move |a| mask & (1u64 << (a - 1)) != 0)
    }

    /// `I + s`, every element shifted by `s` modulo `n`.
    pub fn shift(&self, s: i64) -> Self {
        let n = self.n();
        let s = s.rem_euclid(n as i64) as u32;
        if s == 0 {
            return *self;
        }
        let full = full_mask(n);
        let mask = ((self.mask << s) | (self.mask >> (n as u32 - s))) & full;
        KSubset { mask, n: self.n }
    }

    /// Image under the reflection `i -> -i` of `Z/n`.
    pub fn reflect(&self) -> Self {
        let n = self.n();
        let mask = self.iter().fold(0u64, |m, a| m | 1u64 << (residue(-(a as i64), n) - 1));
        KSubset { mask, n: self.n }
    }

    pub fn is_interval(&self) -> bool {
        let k = self.k();
        (0..self.n() as i64).any(|s| KSubset::interval(self.n(), k, s) == *self)
    }

    pub fn intersection(&self, other: &KSubset) -> KSubset {
        KSubset::from_mask(self.n(), self.mask & other.mask)
    }

    pub fn union(&self, other: &KSubset) -> KSubset {
        KSubset::from_mask(self.n(), self.mask | other.mask)
    }

    pub fn difference(&self, other: &KSubset) -> KSubset {
        KSubset::from_mask(self.n(), self.mask & !other.mask)
    }

    pub fn with(&self, a: usize) -> KSubset {
        KSubset::from_mask(self.n(), self.mask | 1u64 << (a - 1))
    }

    pub fn without(&self, a: usize) -> KSubset {
        KSubset::from_mask(self.n(), self.mask & !(1u64 << (a - 1)))
    }

    pub fn same_shape(&self, other: &KSubset) -> Result<()> {
        if self.n != other.n || self.k() != other.k() {
            return Err(Error::ParameterMismatch(format!(
                "{self} is a ({},{})-subset but {other} is a ({},{})-subset",
                self.k(),
                self.n,
                other.k(),
                other.n
            )));
        }
        Ok(())
    }
}

/// Reduces an integer to its representative in `1..=n`.
pub fn residue(a: i64, n: usize) -> usize {
    ((a - 1).rem_euclid(n as i64) + 1) as usize
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of the rotation `I -> I + k` on `Z/n`.
pub fn rotation_order(k: usize, n: usize) -> usize {
    n / gcd(k, n)
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for a in self.iter() {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|a| a.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSubset({self}; n={})", self.n)
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems().serialize(s)
    }
}

/// Weak separation: no cyclically ordered `a, b, c, d` with `a, c` in `I \ J`
/// and `b, d` in `J \ I`.
///
/// Walks the circle once and counts the maximal runs of `I \ J` and `J \ I`
/// elements; the pair is weakly separated iff there are at most two runs.
pub fn weakly_separated(i: &KSubset, j: &KSubset) -> Result<bool> {
    i.same_shape(j)?;
    Ok(weakly_separated_unchecked(i, j))
}

pub(crate) fn weakly_separated_unchecked(i: &KSubset, j: &KSubset) -> bool {
    let only_i = i.mask & !j.mask;
    let only_j = j.mask & !i.mask;
    if only_i == 0 || only_j == 0 {
        return true;
    }
    let n = i.n();
    let mut changes = 0;
    let mut first: Option<bool> = None;
    let mut last: Option<bool> = None;
    for a in 0..n {
        let bit = 1u64 << a;
        let side = if only_i & bit != 0 {
            true
        } else if only_j & bit != 0 {
            false
        } else {
            continue;
        };
        if first.is_none() {
            first = Some(side);
        }
        if let Some(prev) = last {
            if prev != side {
                changes += 1;
            }
        }
        last = Some(side);
    }
    if first != last {
        changes += 1;
    }
    changes <= 2
}

/// A pairwise weakly separated family of k-subsets of `Z/n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Collection {
    k: usize,
    n: usize,
    members: Vec<KSubset>,
    maximal: bool,
}

/// Number of members of a maximal weakly separated collection.
pub fn maximal_size(k: usize, n: usize) -> usize {
    k * (n - k) + 1
}

/// The `n` cyclic intervals of length `k`, the frozen labels.
pub fn intervals(k: usize, n: usize) -> Vec<KSubset> {
    let mut out: Vec<KSubset> = (0..n as i64).map(|s| KSubset::interval(n, k, s)).collect();
    out.sort();
    out.dedup();
    out
}

impl Collection {
    /// Members already known to be pairwise weakly separated.
    pub(crate) fn from_trusted(k: usize, n: usize, mut members: Vec<KSubset>) -> Collection {
        members.sort();
        members.dedup();
        let maximal =
            members.len() == maximal_size(k, n) && intervals(k, n).iter().all(|iv| members.binary_search(iv).is_ok());
        Collection { k, n, members, maximal }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn contains(&self, label: &KSubset) -> bool {
        self.members.binary_search(label).is_ok()
    }

    pub fn index_of(&self, label: &KSubset) -> Option<usize> {
        self.members.binary_search(label).ok()
    }

    /// Members that are not cyclic intervals.
    pub fn internal(&self) -> Vec<KSubset> {
        self.members.iter().filter(|m| !m.is_interval()).copied().collect()
    }

    /// `{I + k : I in members} == members`.
    pub fn is_symmetric(&self) -> bool {
        self.members.iter().all(|m| self.contains(&m.shift(self.k as i64)))
    }

    pub fn shifted(&self, s: i64) -> Collection {
        let mut members: Vec<KSubset> = self.members.iter().map(|m| m.shift(s)).collect();
        members.sort();
        Collection { members, ..self.clone() }
    }

    pub fn reflected(&self) -> Collection {
        let mut members: Vec<KSubset> = self.members.iter().map(|m| m.reflect()).collect();
        members.sort();
        Collection { members, ..self.clone() }
    }

    /// Replaces `old` by `new`, re-validating the result.
    pub fn exchanged(&self, old: &KSubset, new: KSubset) -> Result<Collection> {
        let members: Vec<KSubset> =
            self.members.iter().filter(|m| *m != old).copied().chain(std::iter::once(new)).collect();
        validate_collection(members, self.k, self.n)
    }

    pub fn to_json(&self) -> CollectionJson {
        CollectionJson { k: self.k, n: self.n, labels: self.members.iter().map(|m| m.elems()).collect() }
    }

    pub fn from_json(json: &CollectionJson) -> Result<Collection> {
        let members =
            json.labels.iter().map(|l| KSubset::new(json.n, l.iter().copied())).collect::<Result<Vec<_>>>()?;
        validate_collection(members, json.k, json.n)
    }
}

impl fmt::Debug for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "Collection(({},{}) [{}])", self.k, self.n, labels.join(" "))
    }
}

impl PartialOrd for Collection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Collection {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.n, &self.members).cmp(&(other.k, other.n, &other.members))
    }
}

/// JSON form `{"k":3,"n":9,"labels":[[1,3,4],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CollectionJson {
    pub k: usize,
    pub n: usize,
    pub labels: Vec<Vec<usize>>,
}

impl Serialize for Collection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Collection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = CollectionJson::deserialize(d)?;
        Collection::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Checks pairwise weak separation and sets the maximal flag.
///
/// The flag is set iff the family has `k(n-k)+1` members and contains all `n`
/// cyclic intervals.
pub fn validate_collection<I: IntoIterator<Item = KSubset>>(members: I, k: usize, n: usize) -> Result<Collection> {
    if k == 0 || k >= n || n > MAX_N {
        return Err(Error::ParameterMismatch(format!("({k},{n}) needs 0 < k < n <= {MAX_N}")));
    }
    let set: BTreeSet<KSubset> = members.into_iter().collect();
    for m in &set {
        if m.n() != n || m.k() != k {
            return Err(Error::ParameterMismatch(format!("label {m} is not a {k}-subset of Z/{n}")));
        }
    }
    let members: Vec<KSubset> = set.into_iter().collect();
    for (a, i) in members.iter().enumerate() {
        for j in &members[a + 1..] {
            if !weakly_separated_unchecked(i, j) {
                return Err(Error::CrossingPair(*i, *j));
            }
        }
    }
    let maximal =
        members.len() == maximal_size(k, n) && intervals(k, n).iter().all(|iv| members.binary_search(iv).is_ok());
    Ok(Collection { k, n, members, maximal })
}

/// All k-subsets of `Z/n` in lexicographic order.
pub fn all_subsets(k: usize, n: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<KSubset>) {
        if current.len() == k {
            out.push(KSubset::new(n, current.iter().copied()).expect("valid subset"));
            return;
        }
        for a in start..=n {
            if n - a + 1 < k - current.len() {
                break;
            }
            current.push(a);
            rec(a + 1, k, n, current, out);
            current.pop();
        }
    }
    rec(1, k, n, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s(9, &[1, 7, 9]).shift(3), s(9, &[1, 3, 4]));
        assert_eq!(s(9, &[1, 4, 7]).shift(3), s(9, &[1, 4, 7]));
        assert_eq!(s(9, &[4, 5, 7]).shift(3), s(9, &[1, 7, 8]));
        assert_eq!(s(9, &[4, 5, 7]).shift(0), s(9, &[4, 5, 7]));
        assert_eq!(s(9, &[4, 5, 7]).shift(-9), s(9, &[4, 5, 7]));
    }

    #[test]
    fn weak_separation_examples() {
        assert!(weakly_separated(&s(4, &[1, 2]), &s(4, &[2, 3])).unwrap());
        assert!(!weakly_separated(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap());
        assert!(!weakly_separated(&s(9, &[1, 3, 4]), &s(9, &[2, 4, 5])).unwrap());
        assert!(matches!(weakly_separated(&s(4, &[1, 3]), &s(5, &[2, 4])), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(KSubset::parse(9, "134").unwrap(), s(9, &[1, 3, 4]));
        assert_eq!(KSubset::parse(12, "1,3,10").unwrap(), s(12, &[1, 3, 10]));
        assert_eq!(s(9, &[9, 1, 8]).to_string(), "189");
        assert_eq!(s(12, &[1, 3, 10]).to_string(), "{1,3,10}");
        assert!(KSubset::parse(9, "1a4").is_err());
        assert!(KSubset::new(4, [1, 1]).is_err());
        assert!(KSubset::new(4, [5]).is_err());
    }

    #[test]
    fn small_collections() {
        let fan = [[1, 2], [2, 3], [3, 4], [1, 4], [1, 3]].map(|e| s(4, &e));
        let c = validate_collection(fan, 2, 4).unwrap();
        assert!(c.is_maximal());
        assert_eq!(c.len(), 5);
        assert!(c.is_symmetric());

        let mut bad = fan.to_vec();
        bad.push(s(4, &[2, 4]));
        match validate_collection(bad, 2, 4) {
            Err(Error::CrossingPair(a, b)) => {
                assert_eq!((a, b), (s(4, &[1, 3]), s(4, &[2, 4])));
            }
            other => panic!("expected crossing pair, got {other:?}"),
        }

        let partial = validate_collection([s(4, &[1, 2]), s(4, &[1, 3])], 2, 4).unwrap();
        assert!(!partial.is_maximal());
    }

    #[test]
    fn interval_helpers() {
        assert_eq!(KSubset::interval(9, 3, 8), s(9, &[9, 1, 2]));
        assert!(s(9, &[8, 9, 1]).is_interval());
        assert!(!s(9, &[1, 3, 4]).is_interval());
        assert_eq!(intervals(2, 4).len(), 4);
        assert_eq!(all_subsets(3, 6).len(), 20);
        assert_eq!(s(9, &[1, 3, 4]).reflect(), s(9, &[8, 6, 5]));
    }
}
