//! Clifford algebras `C(V)` of small quadratic spaces over finite fields.
//!
//! Monomials `e_S` are bitmasks over the basis (bit `i` is `e_{i+1}`), with
//! factors in increasing index order. The product handles arbitrary symmetric
//! forms through `e_a e_b + e_b e_a = 2 (e_a, e_b)`; orthogonal bases take a
//! sign-only fast path.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{field_of_order, Field, FieldElement};
use crate::matrix::Matrix;
use crate::partitions::{delta_index, is_in_xn, Partition};
use crate::split::so_split_form;

/// Largest dimension supported by the bitmask representation.
pub const MAX_DIM: usize = 24;

/// Largest dimension for operations that touch every monomial.
pub const MAX_EXHAUSTIVE_DIM: usize = 13;

/// `(V, ( , ))` together with a Frobenius `F(Σ c_i e_i) = Σ c_i^s F(e_i)`.
#[derive(Debug, Clone)]
pub struct QuadSpace {
    field: Arc<Field>,
    gram: Matrix,
    /// `F(e_i)` as column `i`.
    twist: Matrix,
    /// `s` in `c -> c^s`.
    frob_power: u32,
    diagonal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    dim: usize,
    terms: BTreeMap<u32, FieldElement>,
}

impl QuadSpace {
    /// A space with `F`-fixed basis and coefficient Frobenius `c -> c^s`.
    pub fn new(field: Arc<Field>, gram: Matrix, frob_power: u32) -> Result<QuadSpace> {
        let n = gram.rows();
        let twist = Matrix::identity(&field, n);
        QuadSpace::with_twist(field, gram, twist, frob_power)
    }

    pub fn with_twist(field: Arc<Field>, gram: Matrix, twist: Matrix, frob_power: u32) -> Result<QuadSpace> {
        let n = gram.rows();
        if !gram.is_square() || n == 0 || n > MAX_DIM || twist.rows() != n || twist.cols() != n {
            return Err(Error::Inconsistent(format!("bad quadratic space of dimension {n}")));
        }
        if gram.transpose() != gram {
            return Err(Error::Inconsistent("form is not symmetric".into()));
        }
        if gram.det(&field).is_zero() {
            return Err(Error::Inconsistent("form is degenerate".into()));
        }
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || gram[(i, j)].is_zero()));
        let space = QuadSpace {
            field,
            gram,
            twist,
            frob_power,
            diagonal,
        };
        // F(v, w) = (Fv, Fw): T^t B T = B^(s)
        let f = space.field();
        let lhs = space.twist.transpose().mul(f, &space.gram).mul(f, &space.twist);
        let rhs = space.gram.map(|c| f.pow_char(c, frob_power));
        if lhs != rhs {
            return Err(Error::Inconsistent("Frobenius does not preserve the form".into()));
        }
        Ok(space)
    }

    /// Split (`diag(1,…,1)`) or non-split (`diag(1,…,1,δ)`, `δ` the least
    /// non-square of `F_q`) form of dimension `n`, over `F_{q^2}` with `F` the `q`-power.
    pub fn standard(n: usize, q: u32, split: bool) -> Result<QuadSpace> {
        let small = field_of_order(q)?;
        if small.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let big = Arc::new(field_of_order(q * q)?);
        let mut gram = Matrix::identity(&big, n);
        if !split {
            let delta = least_nonsquare(&big, q);
            gram[(n - 1, n - 1)] = delta;
        }
        QuadSpace::new(big, gram, q)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn frob_power(&self) -> u32 {
        self.frob_power
    }

    pub fn pair(&self, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        self.gram.pair(&self.field, v, w)
    }

    fn b(&self, i: usize, j: usize) -> FieldElement {
        self.gram[(i, j)]
    }

    pub fn zero(&self) -> CliffordElement {
        CliffordElement {
            dim: self.dim(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(&self, c: FieldElement) -> CliffordElement {
        self.monomial(0, c)
    }

    pub fn one(&self) -> CliffordElement {
        self.scalar(self.field.one())
    }

    /// `ε = -1`.
    pub fn epsilon(&self) -> CliffordElement {
        self.scalar(self.field.neg(self.field.one()))
    }

    pub fn monomial(&self, mask: u32, c: FieldElement) -> CliffordElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    /// Basis vector `e_{i+1}` (0-based `i`).
    pub fn basis_vector(&self, i: usize) -> CliffordElement {
        self.monomial(1 << i, self.field.one())
    }

    /// The grade-one element with the given coordinates.
    pub fn vector(&self, coords: &[FieldElement]) -> CliffordElement {
        let mut e = self.zero();
        for (i, &c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(1 << i, c);
            }
        }
        e
    }

    pub fn add(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        let mut out = a.clone();
        for (&m, &c) in &b.terms {
            out.add_term(&self.field, m, c);
        }
        out
    }

    pub fn scale(&self, a: &CliffordElement, c: FieldElement) -> CliffordElement {
        let mut out = self.zero();
        for (&m, &x) in &a.terms {
            out.add_term(&self.field, m, self.field.mul(c, x));
        }
        out
    }

    pub fn neg(&self, a: &CliffordElement) -> CliffordElement {
        self.scale(a, self.field.neg(self.field.one()))
    }

    /// `e_S · e_j` in normal order, as `(mask, coefficient)` pairs.
    fn mono_times_gen(&self, s: u32, j: usize, out: &mut Vec<(u32, FieldElement)>, coef: FieldElement) {
        let f = &*self.field;
        if coef.is_zero() {
            return;
        }
        let bit = 1u32 << j;
        if self.diagonal {
            let above = (s >> (j + 1)).count_ones();
            let c = if above % 2 == 1 { f.neg(coef) } else { coef };
            if s & bit == 0 {
                out.push((s | bit, c));
            } else {
                out.push((s & !bit, f.mul(c, self.b(j, j))));
            }
            return;
        }
        if s == 0 {
            out.push((bit, coef));
            return;
        }
        let top = 31 - s.leading_zeros() as usize;
        if top < j {
            out.push((s | bit, coef));
        } else if top == j {
            out.push((s & !bit, f.mul(coef, self.b(j, j))));
        } else {
            // e_{S'} e_t e_j = -(e_{S'} e_j) e_t + 2 (e_t, e_j) e_{S'}
            let rest = s & !(1u32 << top);
            let two_b = f.add(self.b(top, j), self.b(top, j));
            if !two_b.is_zero() {
                out.push((rest, f.mul(coef, two_b)));
            }
            let mut inner = Vec::new();
            self.mono_times_gen(rest, j, &mut inner, f.neg(coef));
            // every mask in `inner` lies below `top`
            for (m, c) in inner {
                out.push((m | (1u32 << top), c));
            }
        }
    }

    fn mono_mul(&self, a: u32, b: u32, coef: FieldElement, out: &mut CliffordElement) {
        let f = &*self.field;
        if self.diagonal {
            let mut sign = 0u32;
            let mut bb = b;
            while bb != 0 {
                let j = bb.trailing_zeros();
                sign += (a >> (j + 1)).count_ones();
                bb &= bb - 1;
            }
            let mut c = if sign % 2 == 1 { f.neg(coef) } else { coef };
            let mut common = a & b;
            while common != 0 {
                let j = common.trailing_zeros() as usize;
                c = f.mul(c, self.b(j, j));
                common &= common - 1;
            }
            out.add_term(f, a ^ b, c);
            return;
        }
        let mut cur = vec![(a, coef)];
        let mut bb = b;
        while bb != 0 {
            let j = bb.trailing_zeros() as usize;
            let mut next = Vec::new();
            for (m, c) in cur {
                self.mono_times_gen(m, j, &mut next, c);
            }
            cur = combine(f, next);
            bb &= bb - 1;
        }
        for (m, c) in cur {
            out.add_term(f, m, c);
        }
    }

    pub fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
        if a.dim != self.dim() || b.dim != self.dim() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.zero();
        for (&ma, &ca) in &a.terms {
            for (&mb, &cb) in &b.terms {
                self.mono_mul(ma, mb, self.field.mul(ca, cb), &mut out);
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[CliffordElement]) -> Result<CliffordElement> {
        factors.iter().try_fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// The reversal anti-automorphism `v_1 ⋯ v_k -> v_k ⋯ v_1`.
    pub fn reverse(&self, a: &CliffordElement) -> CliffordElement {
        let mut out = self.zero();
        for (&m, &c) in &a.terms {
            let idx: Vec<usize> = (0..self.dim()).rev().filter(|&i| m >> i & 1 == 1).collect();
            let mut cur = vec![(0u32, c)];
            for j in idx {
                let mut next = Vec::new();
                for (mm, cc) in cur {
                    self.mono_times_gen(mm, j, &mut next, cc);
                }
                cur = combine(&self.field, next);
            }
            for (mm, cc) in cur {
                out.add_term(&self.field, mm, cc);
            }
        }
        out
    }

    /// Inverse of a versor (product of anisotropic vectors), via `x^{-1} = rev(x) / (x rev(x))`.
    pub fn versor_inverse(&self, x: &CliffordElement) -> Result<CliffordElement> {
        let r = self.reverse(x);
        let n = self.mul(x, &r)?;
        let s = n.as_scalar().ok_or(Error::NotNormalizing)?;
        let inv = self.field.inv(s).ok_or(Error::NotNormalizing)?;
        Ok(self.scale(&r, inv))
    }

    /// Applies `F`: coefficients to the `s`-th power, basis vectors through the twist.
    pub fn frobenius(&self, a: &CliffordElement) -> Result<CliffordElement> {
        let f = &*self.field;
        let identity_twist = self.twist == Matrix::identity(f, self.dim());
        let mut out = self.zero();
        for (&m, &c) in &a.terms {
            let c = f.pow_char(c, self.frob_power);
            if identity_twist {
                out.add_term(f, m, c);
                continue;
            }
            let factors: Vec<CliffordElement> = (0..self.dim())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| self.vector(&self.twist.column(i)))
                .collect();
            let img = self.mul_all(&factors)?;
            out = self.add(&out, &self.scale(&img, c));
        }
        Ok(out)
    }

    /// Matrix of `v -> x v x^{-1}`, with determinant and form-preservation checks.
    pub fn beta_matrix(&self, x: &CliffordElement) -> Result<BetaReport> {
        let f = &*self.field;
        let inv = self.versor_inverse(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            let img = self.mul(&self.mul(x, &self.basis_vector(i))?, &inv)?;
            for (&mask, &c) in &img.terms {
                if mask.count_ones() != 1 {
                    return Err(Error::NotNormalizing);
                }
                m[(mask.trailing_zeros() as usize, i)] = c;
            }
        }
        let preserves_form = m.transpose().mul(f, &self.gram).mul(f, &m) == self.gram;
        let det = m.det(f);
        Ok(BetaReport {
            det_is_one: det == f.one(),
            det_is_minus_one: det == f.neg(f.one()),
            preserves_form,
            matrix: m,
        })
    }

    /// Orthonormal basis of `V` by a Gram–Schmidt search inside `F_{q^2}`.
    pub fn orthonormal_basis(&self) -> Result<Vec<Vec<FieldElement>>> {
        let f = &*self.field;
        let n = self.dim();
        let mut rest: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        let mut out = Vec::with_capacity(n);
        while !rest.is_empty() {
            let v = self.find_unit_vector(&rest).ok_or(Error::NoOrthonormalBasis)?;
            // project the remaining spanning vectors onto v^⊥ and drop one dependent vector
            let mut next: Vec<Vec<FieldElement>> = rest
                .iter()
                .map(|w| {
                    let c = self.pair(&v, w);
                    w.iter().zip(&v).map(|(&wi, &vi)| f.sub(wi, f.mul(c, vi))).collect()
                })
                .collect();
            let mut kept: Vec<Vec<FieldElement>> = Vec::new();
            for w in next.drain(..) {
                let mut trial = kept.clone();
                trial.push(w.clone());
                if crate::matrix::span_dim(f, &trial) == trial.len() {
                    kept.push(w);
                }
            }
            kept.truncate(rest.len() - 1);
            rest = kept;
            out.push(v);
        }
        Ok(out)
    }

    fn find_unit_vector(&self, span: &[Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
        let f = &*self.field;
        let try_vec = |v: Vec<FieldElement>| -> Option<Vec<FieldElement>> {
            let norm = self.pair(&v, &v);
            let root = f.sqrt(norm)?;
            let inv = f.inv(root)?;
            Some(v.iter().map(|&c| f.mul(c, inv)).collect())
        };
        for w in span {
            if let Some(v) = try_vec(w.clone()) {
                return Some(v);
            }
        }
        for (a, wa) in span.iter().enumerate() {
            for wb in span.iter().skip(a + 1) {
                for t in f.elements().skip(1) {
                    let v: Vec<FieldElement> = wa.iter().zip(wb).map(|(&x, &y)| f.add(x, f.mul(t, y))).collect();
                    if let Some(u) = try_vec(v) {
                        return Some(u);
                    }
                }
            }
        }
        None
    }

    /// `ε` and, for even `N`, `ω = v_1 ⋯ v_N` from an orthonormal basis.
    pub fn center(&self) -> Result<CenterData> {
        let n = self.dim();
        if n < 3 {
            return Err(Error::Inconsistent("center needs N >= 3".into()));
        }
        let basis = self.orthonormal_basis()?;
        self.center_from_basis(&basis)
    }

    fn center_from_basis(&self, basis: &[Vec<FieldElement>]) -> Result<CenterData> {
        let n = self.dim();
        let epsilon = self.epsilon();
        let (omega, group) = if n % 2 == 1 {
            (None, CenterType::Z2)
        } else {
            let vs: Vec<CliffordElement> = basis.iter().map(|v| self.vector(v)).collect();
            let omega = self.mul_all(&vs)?;
            let sq = self.mul(&omega, &omega)?;
            let expected = if (n / 2) % 2 == 1 { self.epsilon() } else { self.one() };
            if sq != expected {
                return Err(Error::Inconsistent("omega^2 != epsilon^{N/2}".into()));
            }
            let group = if n % 4 == 2 { CenterType::Z4 } else { CenterType::Z2xZ2 };
            (Some(omega), group)
        };
        Ok(CenterData { epsilon, omega, group })
    }

    /// `F(ε)` and `F(ω)`, the latter built from the `F`-adapted orthonormal basis of
    /// the standard forms: `v_i = e_i` and, for the non-split form, `v_N = δ^{-1/2} e_N`.
    pub fn frobenius_on_center(&self) -> Result<CenterFrobenius> {
        let f = &*self.field;
        let n = self.dim();
        let basis: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut v = vec![f.zero(); n];
                let norm = self.b(i, i);
                v[i] = f.inv(f.sqrt(norm).ok_or(Error::NoOrthonormalBasis)?).ok_or(Error::NoOrthonormalBasis)?;
                Ok(v)
            })
            .collect::<Result<_>>()?;
        if !self.diagonal {
            return Err(Error::Inconsistent("frobenius_on_center expects a diagonal form".into()));
        }
        let center = self.center_from_basis(&basis)?;
        let eps_fixed = self.frobenius(&center.epsilon)? == center.epsilon;
        let omega_sign = match &center.omega {
            None => None,
            Some(w) => {
                let fw = self.frobenius(w)?;
                if fw == *w {
                    Some(1)
                } else if fw == self.neg(w) {
                    Some(-1)
                } else {
                    return Err(Error::Inconsistent("F(omega) is not ±omega".into()));
                }
            }
        };
        Ok(CenterFrobenius {
            group: center.group,
            epsilon_fixed: eps_fixed,
            omega_sign,
        })
    }
}

fn combine(f: &Field, v: Vec<(u32, FieldElement)>) -> Vec<(u32, FieldElement)> {
    let mut map: BTreeMap<u32, FieldElement> = BTreeMap::new();
    for (m, c) in v {
        let e = map.entry(m).or_insert(FieldElement::ZERO);
        *e = f.add(*e, c);
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Least (by index) element of `F_q ⊂ F_{q^2}` that is not a square in `F_q`.
pub fn least_nonsquare(big: &Field, q: u32) -> FieldElement {
    let sub = big.subfield(q);
    sub.iter()
        .copied()
        .filter(|x| !x.is_zero())
        .find(|&x| !sub.iter().any(|&y| big.mul(y, y) == x))
        .expect("F_q has non-squares for odd q")
}

impl CliffordElement {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, FieldElement)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, f: &Field, m: u32, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(FieldElement::ZERO);
        *e = f.add(*e, c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn as_scalar(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::ZERO),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// `(mask, coefficient tuple)` pairs, mask little-endian over basis indices.
    pub fn to_pairs(&self, f: &Field) -> Vec<(u32, Vec<u32>)> {
        self.terms.iter().map(|(&m, &c)| (m, f.coeffs(c))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct BetaReport {
    pub matrix: Matrix,
    pub det_is_one: bool,
    pub det_is_minus_one: bool,
    pub preserves_form: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CenterType {
    Z2,
    Z4,
    Z2xZ2,
}

#[derive(Debug, Clone)]
pub struct CenterData {
    pub epsilon: CliffordElement,
    pub omega: Option<CliffordElement>,
    pub group: CenterType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CenterFrobenius {
    pub group: CenterType,
    pub epsilon_fixed: bool,
    /// `F(ω) = sign · ω`; absent for odd `N`.
    pub omega_sign: Option<i8>,
}

/// Orthonormal basis of one odd block, in block coordinates.
#[derive(Debug, Clone)]
pub struct BlockBasis {
    pub h: usize,
    pub c: i64,
    pub v_prime: Vec<Vec<FieldElement>>,
    pub v: Vec<Vec<FieldElement>>,
    /// Observed `F(v_a) = sign · v_a`.
    pub f_signs: Vec<i8>,
    /// Signs predicted by the block lemma for this `q`.
    pub expected_signs: Vec<i8>,
    pub orthonormal: bool,
    pub v_prime_norms_ok: bool,
}

fn sign_of(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Gram matrix of an odd block with `(e_a, e_{h-a+1}) = (-1)^{c+a}`.
pub fn block_gram(f: &Field, h: usize, c: i64) -> Matrix {
    let mut g = Matrix::zeros(h, h);
    for a in 1..=h {
        g[(a - 1, h - a)] = f.from_int(sign_of(c + a as i64) as i64);
    }
    g
}

/// Orthonormalizes an odd block over `big = F_{q^2}` with `F` the `q`-power map.
pub fn orthonormalize_block(big: &Field, q: u32, h: usize, c: i64) -> Result<BlockBasis> {
    if big.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if h % 2 == 0 {
        return Err(Error::Inconsistent(format!("block size {h} is even")));
    }
    let gram = block_gram(big, h, c);
    let m = (h - 1) / 2;
    let gamma = big.from_int(sign_of(c + 1) as i64);
    let half_gamma = big.mul(gamma, big.half().expect("odd characteristic"));
    let zeta = big.sqrt_minus_one().expect("F_{q^2} contains sqrt(-1)");
    let unit = |a: usize| -> Vec<FieldElement> {
        let mut v = vec![big.zero(); h];
        v[a - 1] = big.one();
        v
    };
    let mut v_prime = vec![Vec::new(); h];
    for a in 1..=m {
        let b = h - a + 1;
        let s = if a % 2 == 1 { half_gamma } else { big.neg(half_gamma) };
        let mut plus = unit(a);
        plus[b - 1] = s;
        let mut minus = unit(a);
        minus[b - 1] = big.neg(s);
        v_prime[a - 1] = plus;
        v_prime[b - 1] = minus;
    }
    v_prime[m] = unit(m + 1);
    let norm = |v: &[FieldElement]| gram.pair(big, v, v);
    let mut v_prime_norms_ok = true;
    for a in 1..=h {
        let expected = if a <= m {
            1
        } else if a == m + 1 {
            sign_of((m + 1) as i64 + c) as i64
        } else {
            -1
        };
        v_prime_norms_ok &= norm(&v_prime[a - 1]) == big.from_int(expected);
    }
    let middle_scaled = ((m + 1) as i64 + c) % 2 != 0;
    let v: Vec<Vec<FieldElement>> = (1..=h)
        .map(|a| {
            let scaled = a > m + 1 || (a == m + 1 && middle_scaled);
            if scaled {
                v_prime[a - 1].iter().map(|&x| big.mul(zeta, x)).collect()
            } else {
                v_prime[a - 1].clone()
            }
        })
        .collect();
    let mut orthonormal = true;
    for a in 0..h {
        for b in 0..h {
            let want = if a == b { big.one() } else { big.zero() };
            orthonormal &= gram.pair(big, &v[a], &v[b]) == want;
        }
    }
    let f_signs = v
        .iter()
        .map(|va| {
            let fv: Vec<FieldElement> = va.iter().map(|&x| big.pow_char(x, q)).collect();
            if fv == *va {
                Ok(1)
            } else if fv.iter().zip(va).all(|(&x, &y)| x == big.neg(y)) {
                Ok(-1)
            } else {
                Err(Error::Inconsistent("F(v_a) is not ±v_a".into()))
            }
        })
        .collect::<Result<Vec<i8>>>()?;
    let expected_signs = (1..=h)
        .map(|a| {
            if q % 4 == 1 || a <= m {
                1
            } else if a == m + 1 {
                sign_of((m + 1) as i64 + c)
            } else {
                -1
            }
        })
        .collect();
    Ok(BlockBasis {
        h,
        c,
        v_prime,
        v,
        f_signs,
        expected_signs,
        orthonormal,
        v_prime_norms_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaGenerator {
    /// 1-based index `j` of the odd part in `λ`.
    pub index: usize,
    pub part: u32,
    pub delta: i64,
    /// `x_j^2 = square_sign · 1`.
    pub square_sign: i8,
    pub square_ok: bool,
    pub orthonormal: bool,
    pub frobenius_sign: i8,
    pub expected_frobenius_sign: i8,
    pub terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaReport {
    pub lambda: Partition,
    pub q: u32,
    pub generators: Vec<GammaGenerator>,
    /// `x_i x_{i'} = ε x_{i'} x_i` for all `i ≠ i'`.
    pub anticommute: bool,
}

impl GammaReport {
    pub fn relations_hold(&self) -> bool {
        self.anticommute && self.generators.iter().all(|g| g.square_ok && g.orthonormal)
    }

    pub fn signs_match(&self) -> bool {
        self.generators.iter().all(|g| g.frobenius_sign == g.expected_frobenius_sign)
    }
}

/// The generators `x_j = v^j_1 ⋯ v^j_h` of `Γ`, computed inside `C(V)` for the
/// split form of `λ` with the orthonormal block bases, over `F_{q^2}`.
pub fn gamma_generators(lambda: &Partition, q: u32) -> Result<GammaReport> {
    let n = lambda.size() as usize;
    if !is_in_xn(lambda) {
        return Err(Error::NotInXN(lambda.parts().to_vec(), lambda.size()));
    }
    if n > MAX_DIM {
        return Err(Error::Inconsistent(format!("N = {n} exceeds {MAX_DIM}")));
    }
    let small = field_of_order(q)?;
    if small.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let big = Arc::new(field_of_order(q * q)?);
    let form = so_split_form(&big, lambda)?;
    let space = QuadSpace::new(Arc::clone(&big), form.gram.clone(), q)?;
    let mut gens = Vec::new();
    let mut elems = Vec::new();
    for blk in form.blocks.iter().filter(|b| b.odd) {
        let h = blk.size;
        let delta = delta_index(lambda, blk.index)?;
        let basis = orthonormalize_block(&big, q, h, delta)?;
        let embed = |v: &[FieldElement]| -> Vec<FieldElement> {
            let mut out = vec![big.zero(); n];
            out[blk.offset..blk.offset + h].copy_from_slice(v);
            out
        };
        let vs: Vec<Vec<FieldElement>> = basis.v.iter().map(|v| embed(v)).collect();
        let mut orthonormal = true;
        for (a, va) in vs.iter().enumerate() {
            for (b, vb) in vs.iter().enumerate() {
                let want = if a == b { big.one() } else { big.zero() };
                orthonormal &= space.pair(va, vb) == want;
            }
        }
        let factors: Vec<CliffordElement> = vs.iter().map(|v| space.vector(v)).collect();
        let x = space.mul_all(&factors)?;
        let sq = space.mul(&x, &x)?;
        let square_sign = sign_of((h * (h - 1) / 2) as i64);
        let expected_sq = if square_sign == 1 { space.one() } else { space.epsilon() };
        let fx = space.frobenius(&x)?;
        let frobenius_sign = if fx == x {
            1
        } else if fx == space.neg(&x) {
            -1
        } else {
            return Err(Error::Inconsistent("F(x_j) is not ±x_j".into()));
        };
        let expected_frobenius_sign = if q % 4 == 1 {
            1
        } else {
            sign_of(((h - 1) / 2) as i64 + 1 + blk.index as i64)
        };
        gens.push(GammaGenerator {
            index: blk.index,
            part: h as u32,
            delta,
            square_sign,
            square_ok: sq == expected_sq,
            orthonormal,
            frobenius_sign,
            expected_frobenius_sign,
            terms: x.len(),
        });
        elems.push(x);
    }
    let mut anticommute = true;
    for a in 0..elems.len() {
        for b in a + 1..elems.len() {
            let ab = space.mul(&elems[a], &elems[b])?;
            let ba = space.mul(&elems[b], &elems[a])?;
            anticommute &= ab == space.neg(&ba);
        }
    }
    Ok(GammaReport {
        lambda: lambda.clone(),
        q,
        generators: gens,
        anticommute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, q: u32) -> QuadSpace {
        QuadSpace::standard(n, q, true).unwrap()
    }

    #[test]
    fn vector_squares_to_norm() {
        let s = QuadSpace::standard(4, 3, false).unwrap();
        for i in 0..4 {
            let e = s.basis_vector(i);
            let sq = s.mul(&e, &e).unwrap();
            assert_eq!(sq.as_scalar(), Some(s.gram()[(i, i)]));
        }
    }

    #[test]
    fn bivector_square() {
        let s = space(3, 5);
        let e12 = s.mul(&s.basis_vector(0), &s.basis_vector(1)).unwrap();
        assert_eq!(s.mul(&e12, &e12).unwrap(), s.epsilon());
    }

    #[test]
    fn general_product_matches_anticommutator() {
        let f = Arc::new(field_of_order(25).unwrap());
        let g = block_gram(&f, 3, 2);
        let s = QuadSpace::new(Arc::clone(&f), g.clone(), 5).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let (ea, eb) = (s.basis_vector(a), s.basis_vector(b));
                let anti = s.add(&s.mul(&ea, &eb).unwrap(), &s.mul(&eb, &ea).unwrap());
                let two = f.add(g[(a, b)], g[(a, b)]);
                assert_eq!(anti, s.scalar(two), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn beta_of_unit_vector_is_negative_reflection() {
        let s = space(3, 3);
        let f = s.field();
        let v = s.basis_vector(0);
        let rep = s.beta_matrix(&v).unwrap();
        let want = Matrix::from_rows(vec![
            vec![f.one(), f.zero(), f.zero()],
            vec![f.zero(), f.from_int(-1), f.zero()],
            vec![f.zero(), f.zero(), f.from_int(-1)],
        ]);
        assert_eq!(rep.matrix, want);
        assert!(rep.preserves_form);
        let rep = s.beta_matrix(&s.epsilon()).unwrap();
        assert_eq!(rep.matrix, Matrix::identity(f, 3));
    }

    #[test]
    fn center_types() {
        assert_eq!(space(5, 3).center().unwrap().group, CenterType::Z2);
        assert_eq!(space(6, 3).center().unwrap().group, CenterType::Z4);
        assert_eq!(space(4, 3).center().unwrap().group, CenterType::Z2xZ2);
    }

    #[test]
    fn frobenius_on_center_small() {
        let split = QuadSpace::standard(4, 3, true).unwrap().frobenius_on_center().unwrap();
        assert_eq!(split.omega_sign, Some(1));
        let non = QuadSpace::standard(4, 3, false).unwrap().frobenius_on_center().unwrap();
        assert_eq!(non.omega_sign, Some(-1));
        let odd = QuadSpace::standard(5, 5, false).unwrap().frobenius_on_center().unwrap();
        assert!(odd.epsilon_fixed && odd.omega_sign.is_none());
    }

    #[test]
    fn block_basis_h1_and_h3() {
        for q in [3u32, 5] {
            let big = field_of_order(q * q).unwrap();
            for c in 0..4 {
                for h in [1usize, 3] {
                    let b = orthonormalize_block(&big, q, h, c).unwrap();
                    assert!(b.orthonormal && b.v_prime_norms_ok);
                    assert_eq!(b.f_signs, b.expected_signs);
                }
            }
        }
        let big = field_of_order(9).unwrap();
        let b = orthonormalize_block(&big, 3, 3, 2).unwrap();
        assert_eq!(b.f_signs[2], -1);
    }

    #[test]
    fn gamma_generators_small() {
        let lambda = Partition::new(vec![1, 3, 5]);
        for q in [3, 5] {
            let r = gamma_generators(&lambda, q).unwrap();
            assert!(r.relations_hold(), "q={q}: {r:?}");
            assert!(r.signs_match(), "q={q}: {r:?}");
        }
        let r = gamma_generators(&Partition::new(vec![3]), 3).unwrap();
        assert_eq!(r.generators[0].square_sign, -1);
        assert_eq!(r.generators[0].frobenius_sign, -1);
    }
}
