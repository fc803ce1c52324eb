//! Exponents `a_0`, `r` and the characteristic-function tables `Y^0`.

use serde::Serialize;

use crate::component_groups::{CentralCharacter, ComponentGroup, TwistedClass};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::prime_power;
use crate::partitions::{class_dimension, defect, enumerate_XN, group_dimension, partitions_of, GroupKind, Partition};
use crate::split::{frobenius_action_spin, FrobeniusAction};
use crate::springer::{enumerate_spin_series, spin_series_of, xi_is_f_stable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesGroup {
    Spin,
    Sl,
}

/// A cuspidal datum reduced to the dimensions the exponents need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesDims {
    pub group: SeriesGroup,
    pub rank: u32,
    pub d: i32,
    pub dim_g: i64,
    pub dim_l: i64,
    pub dim_c0: i64,
    pub dim_zl: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentData {
    pub a0: i64,
    pub r: i64,
    pub sum: i64,
    /// `(dim G - dim C) - (dim L - dim C_0)`, computed separately.
    pub expected_sum: i64,
    pub even: bool,
}

impl ExponentData {
    pub fn consistent(&self) -> bool {
        self.sum == self.expected_sum
    }
}

/// Cuspidal unipotent class of `Spin_M` for the series `d`, as a Jordan type.
pub fn spin_cuspidal_partition(d: i32) -> Partition {
    let parts = if d > 0 {
        (1..=d as u32).map(|k| 4 * k - 3).collect()
    } else {
        (1..=(-d) as u32).map(|k| 4 * k - 1).collect()
    };
    Partition::new(parts)
}

pub fn spin_series_dims(n: u32, d: i32) -> Result<SeriesDims> {
    let datum = enumerate_spin_series(n)
        .into_iter()
        .find(|c| c.d == d)
        .ok_or_else(|| Error::EmptyFiber(format!("no series d = {d} for N = {n}")))?;
    let k = datum.weyl_rank as i64;
    let m = d as i64 * (2 * d as i64 - 1);
    let cusp = spin_cuspidal_partition(d);
    // Levi: Spin_M times k factors GL_2; C_0 is regular in each GL_2
    Ok(SeriesDims {
        group: SeriesGroup::Spin,
        rank: n,
        d,
        dim_g: group_dimension(GroupKind::SO, n),
        dim_l: 4 * k + m * (m - 1) / 2,
        dim_c0: 2 * k + class_dimension(&cusp, GroupKind::SO)?,
        dim_zl: k,
    })
}

pub fn sl_series_dims(n: u32, d: u32) -> Result<SeriesDims> {
    if d == 0 || n % d != 0 {
        return Err(Error::EmptyFiber(format!("{d} does not divide {n}")));
    }
    let (n64, d64) = (n as i64, d as i64);
    let factors = n64 / d64;
    Ok(SeriesDims {
        group: SeriesGroup::Sl,
        rank: n,
        d: d as i32,
        dim_g: n64 * n64 - 1,
        dim_l: factors * d64 * d64 - 1,
        dim_c0: factors * (d64 * d64 - d64),
        dim_zl: factors - 1,
    })
}

/// `a_0 = -dim Z_L - dim C`, `r = dim G - dim L + dim C_0 + dim Z_L`.
pub fn exponents(series: &SeriesDims, lambda: &Partition) -> Result<ExponentData> {
    let dim_c = match series.group {
        SeriesGroup::Spin => {
            let (d, _) = spin_series_of(lambda)?;
            if d != series.d || lambda.size() != series.rank {
                return Err(Error::EmptyFiber(format!("{lambda} is not in the series d = {}", series.d)));
            }
            class_dimension(lambda, GroupKind::SO)?
        }
        SeriesGroup::Sl => {
            let d = series.d as u32;
            if lambda.size() != series.rank || lambda.parts().iter().any(|&x| x % d != 0) {
                return Err(Error::EmptyFiber(format!("{d} does not divide every part of {lambda}")));
            }
            class_dimension(lambda, GroupKind::SL)?
        }
    };
    let a0 = -series.dim_zl - dim_c;
    let r = series.dim_g - series.dim_l + series.dim_c0 + series.dim_zl;
    let expected_sum = (series.dim_g - dim_c) - (series.dim_l - series.dim_c0);
    Ok(ExponentData {
        a0,
        r,
        sum: a0 + r,
        expected_sum,
        even: (a0 + r) % 2 == 0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub rep: String,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreenBasisRow {
    pub lambda: Partition,
    pub rho: String,
    pub dimension: u32,
    pub tau_trivial: bool,
    pub classes: Vec<ClassInfo>,
    pub values: Vec<Cyclotomic>,
    pub exponents: ExponentData,
}

impl GreenBasisRow {
    /// Value on the class of `1·τ` (always the first class).
    pub fn identity_value(&self) -> &Cyclotomic {
        &self.values[0]
    }
}

fn rows_for_group(
    group: &ComponentGroup,
    xi: CentralCharacter,
    lambda: &Partition,
    exps: ExponentData,
) -> Result<Vec<GreenBasisRow>> {
    let chars = group.irreducibles_with_central_character(xi)?;
    if chars.is_empty() {
        return Err(Error::EmptyFiber(format!("no local system on {lambda} with central character {xi:?}")));
    }
    let table = group.twisted_classes();
    let classes: Vec<ClassInfo> = table
        .classes
        .iter()
        .map(|c: &TwistedClass| ClassInfo {
            rep: c.rep_label.clone(),
            size: c.size,
        })
        .collect();
    let tau_trivial = group.tau_is_trivial();
    let mut rows = Vec::new();
    for rho in &chars {
        // ρ moved by τ carries no F-stable local system
        let mut exts = match group.extend_character(rho) {
            Err(Error::NotTauStable) => continue,
            r => r?,
        };
        if tau_trivial {
            // the extension on which τ acts trivially
            exts.truncate(1);
        }
        for ext in exts {
            rows.push(GreenBasisRow {
                lambda: lambda.clone(),
                rho: ext.label.clone(),
                dimension: ext.dimension,
                tau_trivial,
                classes: classes.clone(),
                values: table.classes.iter().map(|c| ext.values[c.rep].normalized()).collect(),
                exponents: exps.clone(),
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::NotFStable(format!("τ moves every local system on {lambda}")));
    }
    Ok(rows)
}

/// `Y^0` rows of `SL_n` (non-split Frobenius over `F_q`) for `λ` and `ξ` of order `d`.
pub fn y0_table_sl(lambda: &Partition, d: u32, q: u32) -> Result<Vec<GreenBasisRow>> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrime(q))?;
    let n = lambda.size();
    let mut n_prime = n;
    while n_prime % p == 0 {
        n_prime /= p;
    }
    if d == 0 || n_prime % d != 0 {
        return Err(Error::BadCentralCharacter(format!("order {d} does not divide n' = {n_prime}")));
    }
    let index = n_prime / d % n_prime;
    if !xi_is_f_stable(n_prime, index, q) {
        return Err(Error::NotFStable(format!("ξ of order {d} is moved by ξ -> ξ^(-q) for q = {q}")));
    }
    let exps = exponents(&sl_series_dims(n, d)?, lambda)?;
    let group = ComponentGroup::sl_cyclic(lambda, q)?;
    rows_for_group(&group, CentralCharacter::Cyclic { index }, lambda, exps)
}

/// `Y^0` rows of `Spin_N` for `λ ∈ X_N` and `ξ(ε) = -1`; only split `F` carries such rows.
pub fn y0_table_spin(lambda: &Partition, q: u32, split: bool) -> Result<Vec<GreenBasisRow>> {
    if !split {
        return Err(Error::NotFStable("ξ(ε) = -1 has no F-stable pairs for non-split F".into()));
    }
    let (d, _) = spin_series_of(lambda)?;
    let exps = exponents(&spin_series_dims(lambda.size(), d)?, lambda)?;
    let signs = match frobenius_action_spin(lambda, q)? {
        FrobeniusAction::Spin { signs, .. } => signs,
        FrobeniusAction::Cyclic { .. } => unreachable!(),
    };
    let group = ComponentGroup::spin_gamma(lambda, Some(&signs))?;
    rows_for_group(&group, CentralCharacter::Spin { epsilon: -1 }, lambda, exps)
}

#[derive(Debug, Clone, Serialize)]
pub struct Y0Table {
    pub group: SeriesGroup,
    pub q: u32,
    pub series: i32,
    pub rows: Vec<GreenBasisRow>,
}

/// All rows of the `SL_n` series attached to `ξ` of order `d`.
pub fn sl_series_table(n: u32, d: u32, q: u32) -> Result<Y0Table> {
    let mut rows = Vec::new();
    for lambda in partitions_of(n) {
        if lambda.parts().iter().all(|&x| x % d == 0) {
            rows.extend(y0_table_sl(&lambda, d, q)?);
        }
    }
    Ok(Y0Table {
        group: SeriesGroup::Sl,
        q,
        series: d as i32,
        rows,
    })
}

/// All rows of the spin series `d` (every series when `d` is `None`).
pub fn spin_series_table(n: u32, d: Option<i32>, q: u32, split: bool) -> Result<Y0Table> {
    let mut rows = Vec::new();
    for lambda in enumerate_XN(n) {
        if d.is_none_or(|d| defect(&lambda) == d) {
            match y0_table_spin(&lambda, q, split) {
                Ok(r) => rows.extend(r),
                Err(Error::NotFStable(_)) if split => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Y0Table {
        group: SeriesGroup::Spin,
        q,
        series: d.unwrap_or(0),
        rows,
    })
}

/// `Σ_classes |class| · a · conj(b)`.
pub fn row_inner_product(a: &GreenBasisRow, b: &GreenBasisRow) -> Cyclotomic {
    a.classes
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .fold(Cyclotomic::zero(), |acc, (c, (x, y))| acc.add(&x.mul(&y.conj()).scale(c.size as i64)))
        .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn sl2_exponents() {
        let s = sl_series_dims(2, 1).unwrap();
        assert_eq!(exponents(&s, &p(&[2])).unwrap().sum, 0);
        assert_eq!(exponents(&s, &p(&[1, 1])).unwrap().sum, 2);
        let s = sl_series_dims(4, 4).unwrap();
        assert_eq!(exponents(&s, &p(&[4])).unwrap().sum, 0);
    }

    #[test]
    fn sl_rows() {
        let rows = y0_table_sl(&p(&[2, 4]), 2, 5).unwrap();
        assert_eq!(rows.len(), 1);
        let v: Vec<Option<i64>> = rows[0].values.iter().map(|c| c.as_int()).collect();
        assert_eq!(v, vec![Some(1), Some(-1)]);
        assert!(matches!(y0_table_sl(&p(&[1, 5]), 2, 5), Err(Error::EmptyFiber(_))));
        // 3 does not divide q + 1 = 8
        assert!(matches!(y0_table_sl(&p(&[3, 3]), 3, 7), Err(Error::NotFStable(_))));
    }

    #[test]
    fn spin_rows() {
        let rows = y0_table_spin(&p(&[1, 3, 5]), 5, true).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].identity_value().as_int(), Some(2));
        assert!(y0_table_spin(&p(&[1, 3, 5]), 5, false).is_err());
        assert_eq!(spin_cuspidal_partition(2), p(&[1, 5]));
        assert_eq!(spin_cuspidal_partition(-1), p(&[3]));
    }
}
