//! Split unipotent elements: the orthogonal-side nilpotents with their
//! symmetric forms, and the `SL_n` unipotents with an invariant Hermitian form
//! over `F_{q^2}`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{field_of_order, Field, FieldElement};
use crate::matrix::Matrix;
use crate::partitions::{delta_index, is_in_tilde_xn, Partition};

/// One summand `V_j` of the orthogonal decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct SoBlock {
    /// 1-based index `j` of the (first) part.
    pub index: usize,
    /// Part size `h`.
    pub size: usize,
    /// Offset of `e^j_1` in the global basis.
    pub offset: usize,
    /// `true` for an odd part; otherwise a pair `λ_j = λ_{j+1}` of dimension `2h`.
    pub odd: bool,
}

#[derive(Debug, Clone)]
pub struct SoForm {
    pub gram: Matrix,
    pub nilpotent: Matrix,
    pub blocks: Vec<SoBlock>,
}

/// Assembles the symmetric form and the shift nilpotent for `λ ∈ X̃_N`.
/// Odd part: `f(e_{h-a+1}, e_a) = (-1)^{δ_j - a}`. Even pair `λ_j = λ_{j+1}`
/// (the first index of each pair is used): `f(e^j_{h-a+1}, e^{j+1}_a) = (-1)^{a-1}`.
pub fn so_split_form(f: &Field, lambda: &Partition) -> Result<SoForm> {
    if !is_in_tilde_xn(lambda) {
        return Err(Error::Inconsistent(format!(
            "{lambda} has an even part with odd multiplicity"
        )));
    }
    let n = lambda.size() as usize;
    let mut gram = Matrix::zeros(n, n);
    let mut nil = Matrix::zeros(n, n);
    let mut blocks = Vec::new();
    let mut offset = 0;
    let mut j = 1;
    let sign = |e: i64| f.from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    while j <= lambda.len() {
        let h = lambda.part(j) as usize;
        if h % 2 == 1 {
            let delta = delta_index(lambda, j)?;
            for a in 1..=h {
                let s = sign(delta - a as i64);
                gram[(offset + h - a, offset + a - 1)] = s;
                gram[(offset + a - 1, offset + h - a)] = s;
                if a > 1 {
                    nil[(offset + a - 2, offset + a - 1)] = f.one();
                }
            }
            blocks.push(SoBlock { index: j, size: h, offset, odd: true });
            offset += h;
            j += 1;
        } else {
            let second = offset + h;
            for a in 1..=h {
                let s = sign(a as i64 - 1);
                gram[(offset + h - a, second + a - 1)] = s;
                gram[(second + a - 1, offset + h - a)] = s;
                if a > 1 {
                    nil[(offset + a - 2, offset + a - 1)] = f.one();
                    nil[(second + a - 2, second + a - 1)] = f.one();
                }
            }
            blocks.push(SoBlock { index: j, size: h, offset, odd: false });
            offset += 2 * h;
            j += 2;
        }
    }
    Ok(SoForm { gram, nilpotent: nil, blocks })
}

#[derive(Debug, Clone, Serialize)]
pub struct SoChecks {
    pub symmetric: bool,
    pub nondegenerate: bool,
    pub skew_adjoint: bool,
    pub jordan_type_ok: bool,
}

impl SoChecks {
    pub fn all(&self) -> bool {
        self.symmetric && self.nondegenerate && self.skew_adjoint && self.jordan_type_ok
    }
}

#[derive(Debug, Clone)]
pub struct SplitSOData {
    pub lambda: Partition,
    pub field: Arc<Field>,
    pub form: SoForm,
    pub checks: SoChecks,
}

impl SplitSOData {
    pub fn gram(&self) -> &Matrix {
        &self.form.gram
    }

    pub fn nilpotent(&self) -> &Matrix {
        &self.form.nilpotent
    }

    /// Global index of `e^j_a` (block `index` is the 1-based part index; for
    /// even pairs `index + 1` names the second copy).
    pub fn basis_index(&self, index: usize, a: usize) -> Option<usize> {
        for b in &self.form.blocks {
            if b.index == index {
                return Some(b.offset + a - 1);
            }
            if !b.odd && b.index + 1 == index {
                return Some(b.offset + b.size + a - 1);
            }
        }
        None
    }
}

pub fn build_so_split(lambda: &Partition, q: u32) -> Result<SplitSOData> {
    let field = Arc::new(field_of_order(q)?);
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    build_so_split_over(lambda, field)
}

pub fn build_so_split_over(lambda: &Partition, field: Arc<Field>) -> Result<SplitSOData> {
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let f = &*field;
    let form = so_split_form(f, lambda)?;
    let (b, x) = (&form.gram, &form.nilpotent);
    let checks = SoChecks {
        symmetric: b.transpose() == *b,
        nondegenerate: !b.det(f).is_zero(),
        skew_adjoint: x.transpose().mul(f, b).add(f, &b.mul(f, x)).is_zero(),
        jordan_type_ok: jordan_type(f, x, JordanMode::Nilpotent)? == *lambda,
    };
    Ok(SplitSOData {
        lambda: lambda.clone(),
        field,
        form,
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanMode {
    Nilpotent,
    Unipotent,
}

/// Jordan type from the rank sequence of `m` (or `m - 1`).
pub fn jordan_type(f: &Field, m: &Matrix, mode: JordanMode) -> Result<Partition> {
    let n = m.rows();
    let x = match mode {
        JordanMode::Nilpotent => m.clone(),
        JordanMode::Unipotent => m.sub(f, &Matrix::identity(f, n)),
    };
    let mut ranks = vec![n];
    let mut p = Matrix::identity(f, n);
    for _ in 0..n {
        p = p.mul(f, &x);
        ranks.push(p.rank(f));
        if *ranks.last().unwrap() == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent(match mode {
            JordanMode::Nilpotent => "nilpotent",
            JordanMode::Unipotent => "unipotent",
        }));
    }
    Ok(partition_from_ranks(&ranks))
}

/// Jordan type from `rank(x^0), rank(x^1), …`, ending with a zero.
pub fn partition_from_ranks(ranks: &[usize]) -> Partition {
    // number of blocks of size >= k is rank(x^{k-1}) - rank(x^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            parts.push(k as u32 + 1);
        }
    }
    Partition::new(parts)
}

/// Least nonzero `κ` with `κ^q = -κ` (so `κ = 1` in characteristic 2).
fn imaginary_unit(big: &Field, q: u32) -> FieldElement {
    big.elements()
        .skip(1)
        .find(|&k| big.pow_char(k, q) == big.neg(k))
        .expect("F_{q^2} has elements with k^q = -k")
}

/// `M[k][l] = [x^k] (x*)^l` for `x* = (1+x)^{-1} - 1` in `Z[x]/x^h`.
fn star_matrix(h: usize) -> Vec<Vec<i64>> {
    let mut xstar = vec![0i64; h];
    for (k, c) in xstar.iter_mut().enumerate().skip(1) {
        *c = if k % 2 == 0 { 1 } else { -1 };
    }
    let mut cols = Vec::with_capacity(h);
    let mut pow = vec![0i64; h];
    pow[0] = 1;
    for _ in 0..h {
        cols.push(pow.clone());
        let mut next = vec![0i64; h];
        for (i, &a) in pow.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in xstar.iter().enumerate() {
                if i + j < h {
                    next[i + j] += a * b;
                }
            }
        }
        pow = next;
    }
    (0..h).map(|k| (0..h).map(|l| cols[l][k]).collect()).collect()
}

/// Gram matrix (basis `v_1, …, v_h`, `(u-1) v_j = v_{j-1}`) of a `u`-invariant
/// Hermitian form on one Jordan block whose antidiagonal is
/// `(v_j, v_{h+1-j}) = (-1)^{j + a} κ`, with `κ = 1` for odd `h`.
pub fn hermitian_block(big: &Field, q: u32, h: usize, a: i32) -> Matrix {
    let m = star_matrix(h);
    let kappa = if h % 2 == 1 { big.one() } else { imaginary_unit(big, q) };
    // functional φ with φ∘*∘conj = conj∘φ: c = w + M^t conj(w), w = θ e_{h-1}
    let conj = |x: FieldElement| big.pow_char(x, q);
    let sign = if h % 2 == 1 { big.one() } else { big.from_int(-1) };
    let theta = big
        .elements()
        .skip(1)
        .find(|&t| !big.add(t, big.mul(sign, conj(t))).is_zero())
        .expect("some theta gives a nondegenerate functional");
    let mut c = vec![big.zero(); h];
    c[h - 1] = theta;
    for (l, slot) in c.iter_mut().enumerate() {
        let t = big.mul(big.from_int(m[h - 1][l]), conj(theta));
        *slot = big.add(*slot, t);
    }
    // antidiagonal of the raw form is (-1)^{j-1} c_{h-1}; rescale by an F_q scalar
    let target = big.mul(big.from_int(if (1 + a).rem_euclid(2) == 0 { 1 } else { -1 }), kappa);
    let r = big.div(target, c[h - 1]).expect("nonzero top coefficient");
    debug_assert_eq!(conj(r), r);
    let c: Vec<FieldElement> = c.iter().map(|&x| big.mul(r, x)).collect();
    // A[j][j'] = φ(x^{h-j} (x*)^{h-j'})
    let mut g = Matrix::zeros(h, h);
    for j in 1..=h {
        for jp in 1..=h {
            let (d1, d2) = (h - j, h - jp);
            let mut val = big.zero();
            for k in 0..h {
                // coefficient of x^k in x^{d1} (x*)^{d2}
                if k >= d1 {
                    let coef = m[k - d1][d2];
                    if coef != 0 {
                        val = big.add(val, big.mul(big.from_int(coef), c[k]));
                    }
                }
            }
            g[(j - 1, jp - 1)] = val;
        }
    }
    g
}

#[derive(Debug, Clone, Serialize)]
pub struct SlChecks {
    pub hermitian: bool,
    pub nondegenerate: bool,
    pub invariant: bool,
    pub frobenius_fixed: bool,
    pub jordan_type_ok: bool,
    pub antidiagonal_signs: bool,
}

impl SlChecks {
    pub fn all(&self) -> bool {
        self.hermitian
            && self.nondegenerate
            && self.invariant
            && self.frobenius_fixed
            && self.jordan_type_ok
            && self.antidiagonal_signs
    }
}

#[derive(Debug, Clone)]
pub struct SplitSLData {
    pub lambda: Partition,
    pub q: u32,
    /// `F_{q^2}`.
    pub field: Arc<Field>,
    pub signs: Vec<i32>,
    /// Offset of `v_{k,1}` for each part `k`.
    pub offsets: Vec<usize>,
    pub unipotent: Matrix,
    pub form: Matrix,
    pub checks: SlChecks,
}

impl SplitSLData {
    pub fn n(&self) -> usize {
        self.lambda.size() as usize
    }

    /// Global index of `v_{k,j}` (both 1-based).
    pub fn index(&self, k: usize, j: usize) -> usize {
        self.offsets[k - 1] + j - 1
    }

    pub fn nilpotent(&self) -> Matrix {
        let f = &*self.field;
        self.unipotent.sub(f, &Matrix::identity(f, self.n()))
    }

    pub fn conj(&self, x: FieldElement) -> FieldElement {
        self.field.pow_char(x, self.q)
    }

    /// `Ψ(v, w) = v^t A w̄`.
    pub fn pair(&self, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        let wb: Vec<FieldElement> = w.iter().map(|&x| self.conj(x)).collect();
        self.form.pair(&self.field, v, &wb)
    }

    /// The twisted Frobenius `g -> Ā^{-1} ḡ^{-t} Ā` whose fixed points form the unitary group.
    pub fn frobenius(&self, g: &Matrix) -> Option<Matrix> {
        let f = &*self.field;
        let abar = self.form.map(|x| self.conj(x));
        let ginv_t = g.map(|x| self.conj(x)).inverse(f)?.transpose();
        Some(abar.inverse(f)?.mul(f, &ginv_t).mul(f, &abar))
    }
}

/// `u` in Jordan form for `λ` with a block-diagonal invariant Hermitian form;
/// `signs[k] = a_k` (default all `+1`).
pub fn build_sl_split(lambda: &Partition, q: u32, signs: Option<&[i32]>) -> Result<SplitSLData> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    field_of_order(q)?;
    let big = Arc::new(field_of_order(q.checked_mul(q).ok_or(Error::FieldTooLarge { p: q, k: 2 })?)?);
    let f = &*big;
    let signs: Vec<i32> = match signs {
        Some(s) if s.len() == lambda.len() => s.to_vec(),
        Some(s) => {
            return Err(Error::Inconsistent(format!(
                "{} signs for {} parts",
                s.len(),
                lambda.len()
            )))
        }
        None => vec![1; lambda.len()],
    };
    let mut offsets = Vec::new();
    let mut blocks = Vec::new();
    let mut shifts = Vec::new();
    let mut off = 0;
    for (k, &h) in lambda.parts().iter().enumerate() {
        offsets.push(off);
        blocks.push(hermitian_block(f, q, h as usize, signs[k]));
        shifts.push(Matrix::shift(f, h as usize));
        off += h as usize;
    }
    let n = off;
    let form = Matrix::block_diag(&blocks);
    let x = Matrix::block_diag(&shifts);
    let u = Matrix::identity(f, n).add(f, &x);
    let mut data = SplitSLData {
        lambda: lambda.clone(),
        q,
        field: Arc::clone(&big),
        signs,
        offsets,
        unipotent: u,
        form,
        checks: SlChecks {
            hermitian: false,
            nondegenerate: false,
            invariant: false,
            frobenius_fixed: false,
            jordan_type_ok: false,
            antidiagonal_signs: false,
        },
    };
    let a = &data.form;
    let abar = a.map(|x| data.conj(x));
    let ubar = data.unipotent.map(|x| data.conj(x));
    let kappa_even = imaginary_unit(f, q);
    let mut antidiag = true;
    for (k, &h) in lambda.parts().iter().enumerate() {
        let h = h as usize;
        let kappa = if h % 2 == 1 { f.one() } else { kappa_even };
        for j in 1..=h {
            let e = j as i32 + data.signs[k];
            let want = f.mul(f.from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 }), kappa);
            antidiag &= data.form[(data.index(k + 1, j), data.index(k + 1, h + 1 - j))] == want;
        }
    }
    data.checks = SlChecks {
        hermitian: a.transpose() == abar,
        nondegenerate: !a.det(f).is_zero(),
        invariant: data.unipotent.transpose().mul(f, a).mul(f, &ubar) == *a,
        frobenius_fixed: data.frobenius(&data.unipotent).as_ref() == Some(&data.unipotent),
        jordan_type_ok: jordan_type(f, &data.unipotent, JordanMode::Unipotent)? == *lambda,
        antidiagonal_signs: antidiag,
    };
    Ok(data)
}

/// `F` on the component group of a split element.
#[derive(Debug, Clone, Serialize)]
pub enum FrobeniusAction {
    /// Spin: `F(x_j) = sign_j x_j` for the odd parts, in order.
    Spin { odd_parts: Vec<u32>, signs: Vec<i8>, trivial: bool },
    /// `SL_n`: `a -> -q a` on `Z/order`, as an image table.
    Cyclic { order: u32, images: Vec<u32>, trivial: bool },
}

impl FrobeniusAction {
    pub fn is_trivial(&self) -> bool {
        match self {
            FrobeniusAction::Spin { trivial, .. } | FrobeniusAction::Cyclic { trivial, .. } => *trivial,
        }
    }

    /// `τ^2 = id`.
    pub fn is_involution(&self) -> bool {
        match self {
            FrobeniusAction::Spin { .. } => true,
            FrobeniusAction::Cyclic { images, .. } => {
                images.iter().enumerate().all(|(a, &b)| images[b as usize] as usize == a)
            }
        }
    }
}

/// Sign vector of `F` on the spin generators, computed in the Clifford algebra.
/// `F` is trivial on `Γ` exactly when every product of two generators is fixed.
pub fn frobenius_action_spin(lambda: &Partition, q: u32) -> Result<FrobeniusAction> {
    let report = crate::clifford::gamma_generators(lambda, q)?;
    let signs: Vec<i8> = report.generators.iter().map(|g| g.frobenius_sign).collect();
    let trivial = signs.windows(2).all(|w| w[0] == w[1]);
    Ok(FrobeniusAction::Spin {
        odd_parts: report.generators.iter().map(|g| g.part).collect(),
        signs,
        trivial,
    })
}

/// `τ(a) = -q a` on the cyclic group of order `order`.
pub fn frobenius_action_sl(order: u32, q: u32) -> FrobeniusAction {
    let images: Vec<u32> = (0..order)
        .map(|a| ((order as u64 * q as u64 - a as u64 * q as u64 % order as u64) % order as u64) as u32)
        .collect();
    let trivial = images.iter().enumerate().all(|(a, &b)| a as u32 == b);
    FrobeniusAction::Cyclic { order, images, trivial }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn so_block_three() {
        let d = build_so_split(&p(&[3]), 5).unwrap();
        assert!(d.checks.all());
        let f = &*d.field;
        // δ_1 = 2: f(e_3, e_1) = -1, f(e_2, e_2) = 1, f(e_1, e_3) = -1
        assert_eq!(d.gram()[(2, 0)], f.from_int(-1));
        assert_eq!(d.gram()[(1, 1)], f.one());
        assert_eq!(d.gram()[(0, 2)], f.from_int(-1));
    }

    #[test]
    fn so_pair_and_trivial() {
        let d = build_so_split(&p(&[2, 2]), 3).unwrap();
        assert!(d.checks.all());
        let f = &*d.field;
        // f(e^1_2, e^2_1) = 1, f(e^1_1, e^2_2) = -1
        assert_eq!(d.gram()[(1, 2)], f.one());
        assert_eq!(d.gram()[(0, 3)], f.from_int(-1));
        let d = build_so_split(&p(&[1]), 3).unwrap();
        assert!(d.checks.all() && d.nilpotent().is_zero());
        assert!(build_so_split(&p(&[2]), 3).is_err());
    }

    #[test]
    fn jordan_type_basics() {
        let f = field_of_order(3).unwrap();
        assert_eq!(jordan_type(&f, &Matrix::zeros(3, 3), JordanMode::Nilpotent).unwrap(), p(&[1, 1, 1]));
        assert_eq!(jordan_type(&f, &Matrix::shift(&f, 4), JordanMode::Nilpotent).unwrap(), p(&[4]));
        assert!(jordan_type(&f, &Matrix::identity(&f, 2), JordanMode::Nilpotent).is_err());
    }

    #[test]
    fn sl_small() {
        for q in [2u32, 3, 4, 5] {
            for lam in [p(&[1]), p(&[2]), p(&[1, 2]), p(&[3]), p(&[4]), p(&[2, 3])] {
                let d = build_sl_split(&lam, q, None).unwrap();
                assert!(d.checks.all(), "q={q} {lam}: {:?}", d.checks);
            }
        }
        let d = build_sl_split(&p(&[3, 2]), 3, Some(&[-1, 1])).unwrap();
        assert!(d.checks.all());
    }

    #[test]
    fn sl_tau() {
        let t = frobenius_action_sl(2, 7);
        assert!(t.is_trivial() && t.is_involution());
        let t = frobenius_action_sl(3, 5);
        // -5 = 1 mod 3
        assert!(t.is_trivial());
        let t = frobenius_action_sl(4, 5);
        assert!(!t.is_trivial() && t.is_involution());
    }

    #[test]
    fn spin_action_q1_trivial() {
        let a = frobenius_action_spin(&p(&[1, 2, 2]), 3).unwrap();
        match a {
            FrobeniusAction::Spin { signs, .. } => assert_eq!(signs, vec![1]),
            _ => unreachable!(),
        }
        assert!(frobenius_action_spin(&p(&[1, 3]), 5).unwrap().is_trivial());
    }
}
