//! Partitions in ascending order, the sets `X_N`, defects and the pair cases
//! used by the restriction arguments for `Spin_N` and `SL_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as ascending positive parts `λ_1 ≤ λ_2 ≤ … ≤ λ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Accepts parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        Partition { parts }
    }

    /// Strict constructor: parts must already be ascending and positive.
    pub fn from_ascending(parts: Vec<u32>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not ascending")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// 1-based part `λ_j`; `λ_0 = 0`.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 {
            0
        } else {
            self.parts[j - 1]
        }
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Distinct part values with multiplicities, ascending.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate partition, also ascending.
    pub fn conjugate(&self) -> Partition {
        let max = self.parts.last().copied().unwrap_or(0);
        Partition::new(
            (1..=max)
                .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// Parts in descending order, the usual Young-diagram row order.
    pub fn descending(&self) -> Vec<u32> {
        self.parts.iter().rev().copied().collect()
    }

    /// `1,2,2` style label.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim().trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n`, ascending parts, in lexicographic order of the part lists.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in min..=remaining {
            if p == remaining || remaining - p >= p {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

/// Every even part has even multiplicity (the Jordan types of nilpotent `so_N`).
pub fn is_in_tilde_xn(lambda: &Partition) -> bool {
    lambda
        .multiplicities()
        .iter()
        .all(|&(v, m)| v % 2 == 1 || m % 2 == 0)
}

/// `X̃_N` membership plus odd parts of multiplicity at most one.
pub fn is_in_xn(lambda: &Partition) -> bool {
    lambda.multiplicities().iter().all(|&(v, m)| {
        if v % 2 == 0 {
            m % 2 == 0
        } else {
            m <= 1
        }
    })
}

fn sort_reverse_lex(mut v: Vec<Partition>) -> Vec<Partition> {
    v.sort_by(|a, b| b.parts.cmp(&a.parts));
    v
}

/// `X_N`, ordered by descending lexicographic order of the ascending part lists
/// (so `X_5 = [(5), (1,2,2)]`).
#[allow(non_snake_case)]
pub fn enumerate_XN(n: u32) -> Vec<Partition> {
    sort_reverse_lex(partitions_of(n).into_iter().filter(is_in_xn).collect())
}

/// `X̃_N` in the same order as [`enumerate_XN`].
#[allow(non_snake_case)]
pub fn enumerate_tilde_XN(n: u32) -> Vec<Partition> {
    sort_reverse_lex(partitions_of(n).into_iter().filter(is_in_tilde_xn).collect())
}

fn part_defect(m: u32) -> i32 {
    match m % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

pub fn defect(lambda: &Partition) -> i32 {
    lambda.parts().iter().map(|&m| part_defect(m)).sum()
}

/// `δ_j = (λ_j - 1)/2 + j` for 1-based `j` with `λ_j` odd.
pub fn delta_index(lambda: &Partition, j: usize) -> Result<i64> {
    if j == 0 || j > lambda.len() {
        return Err(Error::InvalidPartition(format!(
            "index {j} out of range for {lambda}"
        )));
    }
    let part = lambda.part(j);
    if part % 2 == 0 {
        return Err(Error::EvenPart { index: j, part });
    }
    Ok(((part - 1) / 2) as i64 + j as i64)
}

pub fn divide(lambda: &Partition, d: u32) -> Result<Partition> {
    if d == 0 || lambda.parts().iter().any(|&p| p % d != 0) {
        return Err(Error::NotDivisible {
            parts: lambda.parts().to_vec(),
            divisor: d,
        });
    }
    Ok(Partition {
        parts: lambda.parts().iter().map(|&p| p / d).collect(),
    })
}

pub fn multiply(mu: &Partition, d: u32) -> Partition {
    Partition {
        parts: mu.parts().iter().map(|&p| p * d).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpinCase {
    I,
    II,
    III,
    IV,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SlCase {
    I,
    II,
    III,
}

/// Case tag and 1-based pivot; `tag = None` when no case applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCaseSpin {
    pub tag: Option<SpinCase>,
    pub pivot: usize,
}

impl PairCaseSpin {
    /// Case (III) is recognized but no construction is provided for it.
    pub fn is_supported(&self) -> bool {
        !matches!(self.tag, Some(SpinCase::III) | None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCaseSL {
    pub tag: Option<SlCase>,
    pub i: usize,
    /// Second row for case (III); equals `i` otherwise.
    pub j: usize,
}

/// `λ′` padded with leading zeros to `len` entries, or `None` if it is longer.
fn padded(lambda_p: &Partition, len: usize) -> Option<Vec<u32>> {
    if lambda_p.len() > len {
        return None;
    }
    let mut v = vec![0; len - lambda_p.len()];
    v.extend_from_slice(lambda_p.parts());
    Some(v)
}

/// Applies per-row decrements to `λ`; `None` if some part would go negative
/// or the result is not ascending.
fn lowered(lambda: &Partition, drops: &[(usize, u32)]) -> Option<Vec<u32>> {
    let mut v = lambda.parts().to_vec();
    for &(j, by) in drops {
        let slot = v.get_mut(j - 1)?;
        *slot = slot.checked_sub(by)?;
    }
    v.windows(2).all(|w| w[0] <= w[1]).then_some(v)
}

fn spin_candidate(lambda: &Partition, tag: SpinCase, i: usize) -> Option<Vec<u32>> {
    let l = |j: usize| -> Option<u32> {
        if j == 0 {
            Some(0)
        } else if j <= lambda.len() {
            Some(lambda.part(j))
        } else {
            None
        }
    };
    let li = l(i)?;
    let prev = l(i - 1)?;
    match tag {
        SpinCase::I => (li % 2 == 1 && li > prev + 4).then(|| lowered(lambda, &[(i, 4)]))?,
        SpinCase::II => {
            (l(i + 1)? == li && li >= prev + 2).then(|| lowered(lambda, &[(i, 2), (i + 1, 2)]))?
        }
        SpinCase::III => {
            (l(i + 1)? == li && li >= prev + 4).then(|| lowered(lambda, &[(i, 3), (i + 1, 1)]))?
        }
        SpinCase::IV => (l(i + 1)? == li + 2 && li >= prev + 1)
            .then(|| lowered(lambda, &[(i, 1), (i + 1, 3)]))?,
        SpinCase::V => (l(i + 2)? == li + 1 && l(i + 1)? == li + 1)
            .then(|| lowered(lambda, &[(i, 1), (i + 1, 2), (i + 2, 1)]))?,
    }
}

const SPIN_CASES: [SpinCase; 5] = [SpinCase::I, SpinCase::II, SpinCase::III, SpinCase::IV, SpinCase::V];

/// Classifies `(λ, λ′)` with `|λ′| = |λ| - 4` into the spin cases (I)–(V).
/// `λ_0` is taken to be `0`; zero parts of the lowered partition are dropped.
pub fn classify_pair_spin(lambda: &Partition, lambda_p: &Partition) -> Result<PairCaseSpin> {
    if lambda_p.size() + 4 != lambda.size() {
        return Err(Error::InvalidPartition(format!(
            "{lambda_p} is not of size |{lambda}| - 4"
        )));
    }
    let Some(target) = padded(lambda_p, lambda.len()) else {
        return Ok(PairCaseSpin { tag: None, pivot: 0 });
    };
    let mut hits: Vec<(SpinCase, usize)> = Vec::new();
    for tag in SPIN_CASES {
        if let Some(i) = (1..=lambda.len()).find(|&i| spin_candidate(lambda, tag, i).as_ref() == Some(&target)) {
            hits.push((tag, i));
        }
    }
    match hits.as_slice() {
        [] => Ok(PairCaseSpin { tag: None, pivot: 0 }),
        [(tag, i)] => Ok(PairCaseSpin { tag: Some(*tag), pivot: *i }),
        _ => Err(Error::AmbiguousCase(format!("{lambda} -> {lambda_p}: {hits:?}"))),
    }
}

fn sl_removable(mu: &Partition, i: usize, by: u32) -> bool {
    i >= 1 && i <= mu.len() && mu.part(i - 1) + by <= mu.part(i)
}

/// Classifies `(μ, μ′)` with `|μ′| = |μ| - 2` into the cases (I)–(III) for `SL_n`.
pub fn classify_pair_sl(mu: &Partition, mu_p: &Partition) -> Result<PairCaseSL> {
    if mu_p.size() + 2 != mu.size() {
        return Err(Error::InvalidPartition(format!(
            "{mu_p} is not of size |{mu}| - 2"
        )));
    }
    let none = PairCaseSL { tag: None, i: 0, j: 0 };
    let Some(target) = padded(mu_p, mu.len()) else {
        return Ok(none);
    };
    let k = mu.len();
    let mut hits: Vec<PairCaseSL> = Vec::new();
    if let Some(i) = (1..=k).find(|&i| sl_removable(mu, i, 2) && lowered(mu, &[(i, 2)]).as_ref() == Some(&target)) {
        hits.push(PairCaseSL { tag: Some(SlCase::I), i, j: i });
    }
    if let Some(i) = (1..k).find(|&i| {
        sl_removable(mu, i, 1)
            && mu.part(i) == mu.part(i + 1)
            && lowered(mu, &[(i, 1), (i + 1, 1)]).as_ref() == Some(&target)
    }) {
        hits.push(PairCaseSL { tag: Some(SlCase::II), i, j: i + 1 });
    }
    let iii = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).find(|&(i, j)| {
        sl_removable(mu, i, 1)
            && sl_removable(mu, j, 1)
            && lowered(mu, &[(i, 1), (j, 1)]).as_ref() == Some(&target)
    });
    if let Some((i, j)) = iii {
        hits.push(PairCaseSL { tag: Some(SlCase::III), i, j });
    }
    match hits.as_slice() {
        [] => Ok(none),
        [c] => Ok(*c),
        _ => Err(Error::AmbiguousCase(format!("{mu} -> {mu_p}: {hits:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SL,
    SO,
    Sp,
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupKind> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupKind::GL),
            "sl" => Ok(GroupKind::SL),
            "so" => Ok(GroupKind::SO),
            "sp" => Ok(GroupKind::Sp),
            other => Err(Error::Inconsistent(format!("unknown group kind {other}"))),
        }
    }
}

pub fn group_dimension(kind: GroupKind, n: u32) -> i64 {
    let n = n as i64;
    match kind {
        GroupKind::GL => n * n,
        GroupKind::SL => n * n - 1,
        GroupKind::SO => n * (n - 1) / 2,
        GroupKind::Sp => n * (n + 1) / 2,
    }
}

/// Dimension of the unipotent class of Jordan type `λ` in the given group.
pub fn class_dimension(lambda: &Partition, kind: GroupKind) -> Result<i64> {
    let n = lambda.size();
    let sq: i64 = lambda
        .conjugate()
        .parts()
        .iter()
        .map(|&c| (c as i64) * (c as i64))
        .sum();
    let odd_parts = lambda.parts().iter().filter(|&&p| p % 2 == 1).count() as i64;
    let centralizer = match kind {
        GroupKind::GL => sq,
        GroupKind::SL => sq - 1,
        GroupKind::SO => {
            if !is_in_tilde_xn(lambda) {
                return Err(Error::Inconsistent(format!(
                    "{lambda} has an even part of odd multiplicity"
                )));
            }
            (sq - odd_parts) / 2
        }
        GroupKind::Sp => {
            let ok = lambda
                .multiplicities()
                .iter()
                .all(|&(v, m)| v % 2 == 0 || m % 2 == 0);
            if !ok || n % 2 == 1 {
                return Err(Error::Inconsistent(format!(
                    "{lambda} has an odd part of odd multiplicity"
                )));
            }
            (sq + odd_parts) / 2
        }
    };
    Ok(group_dimension(kind, n) - centralizer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn xn_small() {
        assert_eq!(enumerate_XN(5), vec![p(&[5]), p(&[1, 2, 2])]);
        assert_eq!(enumerate_XN(4), vec![p(&[2, 2]), p(&[1, 3])]);
        assert_eq!(enumerate_XN(1), vec![p(&[1])]);
        assert!(enumerate_XN(2).is_empty());
        assert!(!is_in_xn(&p(&[1, 1, 3])));
    }

    #[test]
    fn defects_and_deltas() {
        assert_eq!(defect(&p(&[5])), 1);
        assert_eq!(defect(&p(&[3])), -1);
        assert_eq!(defect(&p(&[1, 2, 2])), 1);
        assert_eq!(delta_index(&p(&[1, 2, 2]), 1).unwrap(), 1);
        assert_eq!(delta_index(&p(&[5]), 1).unwrap(), 3);
        assert_eq!(delta_index(&p(&[1, 3]), 2).unwrap(), 3);
        assert!(delta_index(&p(&[1, 2, 2]), 2).is_err());
    }

    #[test]
    fn spin_examples() {
        let c = classify_pair_spin(&p(&[9]), &p(&[5])).unwrap();
        assert_eq!((c.tag, c.pivot), (Some(SpinCase::I), 1));
        let c = classify_pair_spin(&p(&[3, 3]), &p(&[1, 1])).unwrap();
        assert_eq!((c.tag, c.pivot), (Some(SpinCase::II), 1));
        let c = classify_pair_spin(&p(&[1, 2, 2]), &p(&[1])).unwrap();
        assert_eq!((c.tag, c.pivot), (Some(SpinCase::V), 1));
        let c = classify_pair_spin(&p(&[1, 3]), &p(&[])).unwrap();
        assert_eq!((c.tag, c.pivot), (Some(SpinCase::IV), 1));
        let c = classify_pair_spin(&p(&[1, 2, 2]), &p(&[1])).unwrap();
        assert!(c.is_supported());
        let c = classify_pair_spin(&p(&[9]), &p(&[1, 2, 2])).unwrap();
        assert_eq!(c.tag, None);
    }

    #[test]
    fn sl_examples() {
        let c = classify_pair_sl(&p(&[1, 3]), &p(&[1, 1])).unwrap();
        assert_eq!((c.tag, c.i), (Some(SlCase::I), 2));
        let c = classify_pair_sl(&p(&[2, 2]), &p(&[1, 1])).unwrap();
        assert_eq!((c.tag, c.i), (Some(SlCase::II), 1));
        let c = classify_pair_sl(&p(&[1, 2]), &p(&[1])).unwrap();
        assert_eq!((c.tag, c.i, c.j), (Some(SlCase::III), 1, 2));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(divide(&p(&[2, 4]), 2).unwrap(), p(&[1, 2]));
        assert_eq!(divide(&p(&[3, 3]), 3).unwrap(), p(&[1, 1]));
        assert!(divide(&p(&[1, 5]), 2).is_err());
    }

    #[test]
    fn class_dimension_examples() {
        assert_eq!(class_dimension(&p(&[1, 1]), GroupKind::GL).unwrap(), 0);
        assert_eq!(class_dimension(&p(&[2]), GroupKind::SL).unwrap(), 2);
        assert_eq!(class_dimension(&p(&[1, 3]), GroupKind::SO).unwrap(), 4);
        assert!(class_dimension(&p(&[2]), GroupKind::SO).is_err());
    }

    #[test]
    fn partition_counts() {
        for n in 0..15 {
            assert_eq!(partitions_of(n).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn parse_roundtrip() {
        let l: Partition = "2,1,2".parse().unwrap();
        assert_eq!(l, p(&[1, 2, 2]));
        assert_eq!(l.label(), "1,2,2");
        assert_eq!(serde_json::to_string(&l).unwrap(), "[1,2,2]");
    }
}
