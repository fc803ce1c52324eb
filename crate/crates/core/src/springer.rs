//! Generalized Springer series for `Spin_N` and `SL_n` at the level of
//! cuspidal data and the maps from classes to series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::prime_power;
use crate::partitions::{defect, divide, enumerate_XN, is_in_xn, partition_count, partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspidalDatumSpin {
    pub d: i32,
    pub levi_type: String,
    pub weyl_rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspidalDatumSL {
    pub d: u32,
    /// Number of `GL_d` factors.
    pub factors: u32,
    /// Degree of the relative Weyl group `S_{n/d}`.
    pub weyl_degree: u32,
    pub f_rational: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RepLabel {
    Bipartition { left: Partition, right: Partition },
    Partition { mu: Partition },
}

impl RepLabel {
    pub fn size(&self) -> u32 {
        match self {
            RepLabel::Bipartition { left, right } => left.size() + right.size(),
            RepLabel::Partition { mu } => mu.size(),
        }
    }
}

/// `M = d(2d-1)`, the dimension of the space carrying the cuspidal part.
fn cuspidal_dim(d: i32) -> i64 {
    d as i64 * (2 * d as i64 - 1)
}

fn levi_label(n: u32, d: i32, k: u32) -> String {
    let m = cuspidal_dim(d);
    let semisimple = if n % 2 == 1 {
        let r = (m - 1) / 2;
        (r > 0).then(|| format!("B{r}"))
    } else {
        let r = m / 2;
        (r > 0).then(|| format!("D{r}"))
    };
    let torus = (k > 0).then(|| if k == 1 { "A1".to_string() } else { format!("{k}A1") });
    match (semisimple, torus) {
        (Some(s), Some(t)) => format!("{s}+{t}"),
        (Some(s), None) => s,
        (None, Some(t)) => t,
        (None, None) => "T".to_string(),
    }
}

/// All `d ≡ N (mod 4)` with `d(2d-1) <= N`, sorted by `|d|`, positive first.
/// Equality is the cuspidal series `L = G`.
pub fn enumerate_spin_series(n: u32) -> Vec<CuspidalDatumSpin> {
    let mut out = Vec::new();
    let bound = (n as f64).sqrt() as i32 + 2;
    for d in -bound..=bound {
        let m = cuspidal_dim(d);
        if (d - n as i32).rem_euclid(4) != 0 || m > n as i64 {
            continue;
        }
        let k = ((n as i64 - m) / 4) as u32;
        out.push(CuspidalDatumSpin {
            d,
            levi_type: levi_label(n, d, k),
            weyl_rank: k,
        });
    }
    out.sort_by_key(|c| (c.d.abs(), -c.d));
    out
}

/// `(d(λ), (N - d(2d-1))/4)` for `λ ∈ X_N`.
pub fn spin_series_of(lambda: &Partition) -> Result<(i32, u32)> {
    if !is_in_xn(lambda) {
        return Err(Error::NotInXN(lambda.parts().to_vec(), lambda.size()));
    }
    let d = defect(lambda);
    let rest = lambda.size() as i64 - cuspidal_dim(d);
    if rest < 0 || rest % 4 != 0 {
        return Err(Error::Inconsistent(format!(
            "{lambda} has defect {d} but {rest} is not a non-negative multiple of 4"
        )));
    }
    Ok((d, (rest / 4) as u32))
}

/// `μ = λ/d` labelling a representation of `S_{n/d}`.
pub fn sl_springer_label(lambda: &Partition, d: u32) -> Result<RepLabel> {
    Ok(RepLabel::Partition { mu: divide(lambda, d)? })
}

pub fn count_bipartitions(m: u32) -> u64 {
    (0..=m).map(|a| partition_count(a) * partition_count(m - a)).sum()
}

/// All bipartitions of `m`, left part size ascending.
pub fn bipartitions(m: u32) -> Vec<RepLabel> {
    let mut out = Vec::new();
    for a in 0..=m {
        for left in partitions_of(a) {
            for right in partitions_of(m - a) {
                out.push(RepLabel::Bipartition {
                    left: left.clone(),
                    right,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesCount {
    pub d: i32,
    pub weyl_rank: u32,
    pub classes: u64,
    pub bipartitions: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesCardinalityReport {
    pub n: u32,
    pub series: Vec<SeriesCount>,
    /// Classes whose defect is not `≡ N (mod 4)` or matches no series.
    pub stray: Vec<Partition>,
}

impl SeriesCardinalityReport {
    pub fn passed(&self) -> bool {
        self.stray.is_empty() && self.series.iter().all(|s| s.ok)
    }
}

pub fn verify_series_cardinality(n: u32) -> SeriesCardinalityReport {
    let series = enumerate_spin_series(n);
    let xn = enumerate_XN(n);
    let mut stray = Vec::new();
    let mut counts = vec![0u64; series.len()];
    for lambda in &xn {
        let d = defect(lambda);
        match series.iter().position(|s| s.d == d) {
            Some(i) if (d - n as i32).rem_euclid(4) == 0 => counts[i] += 1,
            _ => stray.push(lambda.clone()),
        }
    }
    let series = series
        .iter()
        .zip(counts)
        .map(|(s, classes)| {
            let bip = count_bipartitions(s.weyl_rank);
            SeriesCount {
                d: s.d,
                weyl_rank: s.weyl_rank,
                classes,
                bipartitions: bip,
                ok: classes == bip,
            }
        })
        .collect();
    SeriesCardinalityReport { n, series, stray }
}

/// Is `ξ_j : a ↦ ζ_{n'}^{j a}` fixed by `ξ ↦ ξ^{-q}`?
pub fn xi_is_f_stable(n_prime: u32, index: u32, q: u32) -> bool {
    let n = n_prime as u64;
    let j = index as u64 % n;
    let moved = (n * q as u64 - (j * q as u64) % n) % n;
    moved == j
}

/// Series `d | n'` of `SL_n` over `F_q` with non-split Frobenius.
pub fn enumerate_sl_series(n: u32, q: u32) -> Result<Vec<CuspidalDatumSL>> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrime(q))?;
    let mut n_prime = n;
    while n_prime % p == 0 {
        n_prime /= p;
    }
    Ok((1..=n_prime)
        .filter(|d| n_prime % d == 0)
        .map(|d| CuspidalDatumSL {
            d,
            factors: n / d,
            weyl_degree: n / d,
            // the generator of the order-d subgroup of Z^
            f_rational: xi_is_f_stable(n_prime, n_prime / d, q),
        })
        .collect())
}

/// Round-trip check of `λ ↦ λ/d` against `μ ↦ dμ` on all `λ ⊢ n`.
pub fn sl_divide_bijection(n: u32, d: u32) -> bool {
    let fiber: Vec<Partition> = partitions_of(n)
        .into_iter()
        .filter(|l| l.parts().iter().all(|&x| x % d == 0))
        .collect();
    if n % d != 0 {
        return fiber.is_empty();
    }
    let mus = partitions_of(n / d);
    fiber.len() == mus.len()
        && fiber.iter().all(|l| match sl_springer_label(l, d) {
            Ok(RepLabel::Partition { mu }) => crate::partitions::multiply(&mu, d) == *l,
            _ => false,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_series_small() {
        let ds = |n| enumerate_spin_series(n).iter().map(|c| c.d).collect::<Vec<_>>();
        assert_eq!(ds(5), vec![1]);
        assert_eq!(ds(7), vec![-1]);
        assert_eq!(ds(14), vec![2, -2]);
        assert_eq!(enumerate_spin_series(5)[0].weyl_rank, 1);
        assert_eq!(enumerate_spin_series(14)[0].levi_type, "D3+2A1");
    }

    #[test]
    fn series_of_examples() {
        assert_eq!(spin_series_of(&Partition::new(vec![5])).unwrap(), (1, 1));
        assert_eq!(spin_series_of(&Partition::new(vec![1, 2, 2])).unwrap(), (1, 1));
        assert_eq!(spin_series_of(&Partition::new(vec![1, 3])).unwrap(), (0, 1));
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!((0..4).map(count_bipartitions).collect::<Vec<_>>(), vec![1, 2, 5, 10]);
        assert_eq!(bipartitions(3).len(), 10);
    }

    #[test]
    fn sl_labels() {
        let mu = sl_springer_label(&Partition::new(vec![2, 4]), 2).unwrap();
        assert_eq!(mu, RepLabel::Partition { mu: Partition::new(vec![1, 2]) });
        assert!(sl_springer_label(&Partition::new(vec![1, 5]), 2).is_err());
    }

    #[test]
    fn sl_rationality() {
        let s = enumerate_sl_series(6, 5).unwrap();
        let flags: Vec<(u32, bool)> = s.iter().map(|c| (c.d, c.f_rational)).collect();
        assert_eq!(flags, vec![(1, true), (2, true), (3, true), (6, true)]);
        let s = enumerate_sl_series(6, 7).unwrap();
        assert!(s.iter().all(|c| c.f_rational == (8 % c.d == 0)));
    }
}
