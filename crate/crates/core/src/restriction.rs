//! Two-step symmetric-group branching and its comparison with flag strata.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::field_of_order;
use crate::partitions::{classify_pair_sl, divide, partitions_of, Partition, SlCase};
use crate::varieties::{sl_flag_variety, strata};

#[derive(Debug, Clone, Serialize)]
pub struct BranchResult {
    pub multiplicity: u32,
    /// Intermediate shapes `μ''` of the removal paths `μ → μ'' → μ'`.
    pub witnesses: Vec<Partition>,
    pub case: Option<SlCase>,
    /// `1, 1, 2` for cases (I), (II), (III) and `0` otherwise.
    pub table_value: u32,
}

impl BranchResult {
    pub fn agrees(&self) -> bool {
        self.multiplicity == self.table_value
    }
}

/// Shapes obtained from `μ` by removing one removable box.
pub fn remove_one_box(mu: &Partition) -> Vec<Partition> {
    let p = mu.parts();
    let mut out = Vec::new();
    for i in 0..p.len() {
        // in ascending order a box can come off row i if the next row is longer
        // (or it is the last row) and the result stays ascending
        let ok = i == 0 || p[i - 1] < p[i];
        if ok {
            let mut v = p.to_vec();
            v[i] -= 1;
            out.push(Partition::new(v));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn case_table_value(case: Option<SlCase>) -> u32 {
    match case {
        Some(SlCase::I) | Some(SlCase::II) => 1,
        Some(SlCase::III) => 2,
        None => 0,
    }
}

/// `⟨E_μ|_{S_{m-2}}, E_{μ'}⟩` by counting box-removal paths.
pub fn branch_two_step(mu: &Partition, mu_p: &Partition) -> Result<BranchResult> {
    if mu.size() != mu_p.size() + 2 {
        return Err(Error::InvalidPartition(format!("|{mu}| != |{mu_p}| + 2")));
    }
    let witnesses: Vec<Partition> = remove_one_box(mu)
        .into_iter()
        .filter(|mid| remove_one_box(mid).contains(mu_p))
        .collect();
    let case = classify_pair_sl(mu, mu_p)?.tag;
    Ok(BranchResult {
        multiplicity: witnesses.len() as u32,
        witnesses,
        case,
        table_value: case_table_value(case),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionRow {
    pub lambda: Partition,
    pub lambda_p: Partition,
    pub mu: Partition,
    pub mu_p: Partition,
    pub case: Option<SlCase>,
    pub multiplicity: u32,
    pub table_value: u32,
}

/// All pairs `λ ⊢ n`, `λ' ⊢ n - 2d` with `d` dividing every part.
pub fn restriction_table(n: u32, d: u32) -> Result<Vec<RestrictionRow>> {
    if d == 0 || 2 * d > n {
        return Ok(Vec::new());
    }
    let divisible = |l: &Partition| l.parts().iter().all(|&x| x % d == 0);
    let mut rows = Vec::new();
    for lambda in partitions_of(n).into_iter().filter(divisible) {
        for lambda_p in partitions_of(n - 2 * d).into_iter().filter(divisible) {
            let mu = divide(&lambda, d)?;
            let mu_p = divide(&lambda_p, d)?;
            let b = branch_two_step(&mu, &mu_p)?;
            rows.push(RestrictionRow {
                lambda: lambda.clone(),
                lambda_p,
                mu,
                mu_p,
                case: b.case,
                multiplicity: b.multiplicity,
                table_value: b.table_value,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub lambda: Partition,
    pub lambda_p: Partition,
    pub d: u32,
    pub q: u32,
    pub flags: usize,
    /// Point count per Jordan type of `x|_{V/W}`.
    pub strata: Vec<(Partition, usize)>,
    pub lhs: u32,
    pub rhs: u32,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Number of nonempty strata of `SF_{u,λ'}(F_q)` against the branching multiplicity.
pub fn restriction_crosscheck_sl(
    lambda: &Partition,
    lambda_p: &Partition,
    d: u32,
    q: u32,
    budget: u128,
) -> Result<CrosscheckReport> {
    let f = field_of_order(q)?;
    let rhs = branch_two_step(&divide(lambda, d)?, &divide(lambda_p, d)?)?.multiplicity;
    let flags = sl_flag_variety(lambda, d as usize, lambda_p, &f, budget)?;
    let s: Vec<(Partition, usize)> = strata(&flags).into_iter().collect();
    Ok(CrosscheckReport {
        lambda: lambda.clone(),
        lambda_p: lambda_p.clone(),
        d,
        q,
        flags: flags.len(),
        lhs: s.len() as u32,
        strata: s,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(branch_two_step(&p(&[1, 3]), &p(&[1, 1])).unwrap().multiplicity, 1);
        let b = branch_two_step(&p(&[1, 2]), &p(&[1])).unwrap();
        assert_eq!((b.multiplicity, b.case), (2, Some(SlCase::III)));
        let b = branch_two_step(&p(&[2, 2]), &p(&[2])).unwrap();
        assert!(b.agrees());
        assert!(branch_two_step(&p(&[2]), &p(&[2])).is_err());
    }

    #[test]
    fn removable_boxes() {
        assert_eq!(remove_one_box(&p(&[1, 2])), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(remove_one_box(&p(&[2, 2])), vec![p(&[1, 2])]);
    }

    #[test]
    fn crosscheck_small() {
        let r = restriction_crosscheck_sl(&p(&[1, 3]), &p(&[1, 1]), 1, 3, 1_000_000).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        let r = restriction_crosscheck_sl(&p(&[1, 2]), &p(&[1]), 1, 3, 1_000_000).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 2));
        let r = restriction_crosscheck_sl(&p(&[3]), &p(&[1]), 1, 3, 1_000_000).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
    }
}
