//! Brute-force flag varieties over small finite fields.
//!
//! `SL_n`: flags `W ⊂ W'` with `dim W = d`, `dim W' = n - d`, both `x`-stable,
//! `x` regular on `W` and `V/W'`, of type `λ'` on `W'/W`. `SO_N`: totally
//! isotropic `x`-stable planes `E` with `x|_E ≠ 0` and `x|_{E^⊥/E}` of type `λ'`.
//!
//! The enumerators compute Jordan types from rank sequences; [`check_flag`]
//! re-derives them from explicit block matrices in an adapted basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement};
use crate::matrix::{dot, span_dim, span_rref, Matrix};
use crate::partitions::{classify_pair_sl, classify_pair_spin, divide, Partition, SlCase, SpinCase};
use crate::split::{jordan_type, partition_from_ranks, JordanMode, SplitSLData, SplitSOData};

/// Default cap on enumerated candidates.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// `SPRINGER_BUDGET` if set and valid, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("SPRINGER_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b: &u128| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}

pub type Vector = Vec<FieldElement>;

/// A subspace stored by the nonzero rows of its reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(f: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        Subspace {
            ambient,
            basis: span_rref(f, ambient, vectors),
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn whole(f: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(f, ambient).row_vecs(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, f: &Field, v: &[FieldElement]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        span_dim(f, &rows) == self.dim()
    }

    pub fn is_within(&self, f: &Field, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }

    /// `{v : Σ v_i a_i = 0 for every a in self}`.
    pub fn annihilator(&self, f: &Field) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::whole(f, self.ambient);
        }
        let k = Matrix::from_rows(self.basis.clone()).kernel(f);
        Subspace::span(f, self.ambient, &k)
    }

    pub fn image(&self, f: &Field, g: &Matrix) -> Subspace {
        let v: Vec<Vector> = self.basis.iter().map(|b| g.apply(f, b)).collect();
        Subspace::span(f, self.ambient, &v)
    }

    pub fn is_stable(&self, f: &Field, x: &Matrix) -> bool {
        self.basis.iter().all(|b| self.contains(f, &x.apply(f, b)))
    }

    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        self.basis.iter().map(|v| v.iter().map(|e| e.index()).collect()).collect()
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_indices().serialize(s)
    }
}

/// Jordan type of `x` on `upper/lower` (`lower ⊆ upper`, both stable) from ranks.
pub fn subquotient_type(f: &Field, x: &Matrix, lower: &Subspace, upper: &Subspace) -> Partition {
    let base = lower.dim();
    let mut cur: Vec<Vector> = upper.basis().to_vec();
    let mut ranks = Vec::new();
    loop {
        let mut rows = lower.basis().to_vec();
        rows.extend(cur.iter().cloned());
        let r = span_dim(f, &rows) - base;
        ranks.push(r);
        if r == 0 || ranks.len() > upper.dim() + 1 {
            break;
        }
        cur = cur.iter().map(|v| x.apply(f, v)).collect();
    }
    partition_from_ranks(&ranks)
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Coefficient vectors with first nonzero entry `1`, i.e. one per projective point.
fn projective_points(f: &Field, k: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = f.order() as u64;
    (0..k).rev().flat_map(move |lead| {
        // `lead` = position of the leading 1; the tail after it is free
        let tail = k - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut code| {
            let mut c = vec![f.zero(); k];
            c[lead] = f.one();
            for slot in c.iter_mut().skip(lead + 1) {
                *slot = f.element((code % q) as u32);
                code /= q;
            }
            c
        })
    })
}

fn combine(f: &Field, basis: &[Vector], coeffs: &[FieldElement], n: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (slot, &bi) in v.iter_mut().zip(b) {
            *slot = f.add(*slot, f.mul(c, bi));
        }
    }
    v
}

/// All `d`-dimensional `x`-stable subspaces on which `x` is regular nilpotent,
/// i.e. the spans of `w, xw, …, x^{d-1}w` with `x^d w = 0 ≠ x^{d-1} w`.
pub fn cyclic_subspaces(f: &Field, x: &Matrix, d: usize, budget: u128) -> Result<Vec<Subspace>> {
    let n = x.rows();
    if d == 0 {
        return Ok(vec![Subspace::zero(n)]);
    }
    let kd = x.pow(f, d as u32).kernel(f);
    let q = f.order() as u128;
    let needed = (q.pow(kd.len() as u32) - 1) / (q - 1);
    check_budget(needed, budget)?;
    let xd1 = x.pow(f, d as u32 - 1);
    let mut found = BTreeSet::new();
    for c in projective_points(f, kd.len()) {
        let w = combine(f, &kd, &c, n);
        if xd1.apply(f, &w).iter().all(|e| e.is_zero()) {
            continue;
        }
        let mut gens = vec![w];
        for _ in 1..d {
            let next = x.apply(f, gens.last().unwrap());
            gens.push(next);
        }
        found.insert(Subspace::span(f, n, &gens));
    }
    Ok(found.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flag {
    pub w: Subspace,
    pub wp: Subspace,
    /// Jordan type of `x|_W`.
    pub type_w: Partition,
    /// Jordan type of `x|_{W'/W}`.
    pub type_middle: Partition,
    /// Jordan type of `x|_{V/W'}`.
    pub type_top: Partition,
    /// Jordan type of `x|_{V/W}`, the stratum invariant.
    pub type_quotient: Partition,
}

impl Flag {
    pub fn new(f: &Field, x: &Matrix, w: Subspace, wp: Subspace) -> Flag {
        let n = x.rows();
        let zero = Subspace::zero(n);
        let whole = Subspace::whole(f, n);
        Flag {
            type_w: subquotient_type(f, x, &zero, &w),
            type_middle: subquotient_type(f, x, &w, &wp),
            type_top: subquotient_type(f, x, &wp, &whole),
            type_quotient: subquotient_type(f, x, &w, &whole),
            w,
            wp,
        }
    }
}

/// Nilpotent shift of Jordan type `λ` (blocks in the order of the parts).
pub fn jordan_nilpotent(f: &Field, lambda: &Partition) -> Matrix {
    let blocks: Vec<Matrix> = lambda.parts().iter().map(|&h| Matrix::shift(f, h as usize)).collect();
    Matrix::block_diag(&blocks)
}

/// The `SL_n` flag set `SF_{u,λ'}` for the nilpotent `x`.
pub fn enumerate_flags_sl(
    f: &Field,
    x: &Matrix,
    d: usize,
    lambda_p: &Partition,
    budget: u128,
) -> Result<Vec<Flag>> {
    let n = x.rows();
    if 2 * d > n || lambda_p.size() as usize != n - 2 * d {
        return Ok(Vec::new());
    }
    let regular = Partition::new(if d == 0 { vec![] } else { vec![d as u32] });
    let lows = cyclic_subspaces(f, x, d, budget)?;
    // W' is the annihilator of a cyclic subspace for the transpose
    let highs: Vec<(Subspace, Subspace)> = cyclic_subspaces(f, &x.transpose(), d, budget)?
        .into_iter()
        .map(|dual| (dual.annihilator(f), dual))
        .collect();
    check_budget(lows.len() as u128 * highs.len() as u128, budget.saturating_mul(16))?;
    let mut out = Vec::new();
    for w in &lows {
        for (wp, dual) in &highs {
            // W ⊆ W' iff the dual subspace kills W
            if !dual.basis().iter().all(|a| w.basis().iter().all(|b| dot(f, a, b).is_zero())) {
                continue;
            }
            if subquotient_type(f, x, w, wp) != *lambda_p {
                continue;
            }
            let flag = Flag::new(f, x, w.clone(), wp.clone());
            debug_assert!(flag.type_w == regular && flag.type_top == regular);
            out.push(flag);
        }
    }
    out.sort();
    Ok(out)
}

/// `SF_{u,λ'}` over `F_q` for the standard nilpotent of type `λ`.
pub fn sl_flag_variety(lambda: &Partition, d: usize, lambda_p: &Partition, f: &Field, budget: u128) -> Result<Vec<Flag>> {
    enumerate_flags_sl(f, &jordan_nilpotent(f, lambda), d, lambda_p, budget)
}

/// Flag count per stratum (type of `x|_{V/W}`).
pub fn strata(flags: &[Flag]) -> BTreeMap<Partition, usize> {
    let mut m = BTreeMap::new();
    for fl in flags {
        *m.entry(fl.type_quotient.clone()).or_insert(0) += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagCheck {
    pub nested: bool,
    pub dims_ok: bool,
    pub stable: bool,
    pub bottom_ok: bool,
    pub middle_ok: bool,
    pub top_ok: bool,
}

impl FlagCheck {
    pub fn all(&self) -> bool {
        self.nested && self.dims_ok && self.stable && self.bottom_ok && self.middle_ok && self.top_ok
    }
}

/// Extends the rows of `sub` to a basis of `upper` using vectors of `upper`.
fn extend_basis(f: &Field, sub: &[Vector], upper: &[Vector]) -> Vec<Vector> {
    let mut basis = sub.to_vec();
    for v in upper {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if span_dim(f, &trial) > basis.len() {
            basis = trial;
        }
    }
    basis
}

/// Verifies the defining conditions of `SF_{u,λ'}` by writing `x` in a basis
/// adapted to `0 ⊂ W ⊂ W' ⊂ V` and reading off the diagonal blocks.
pub fn check_flag(f: &Field, x: &Matrix, w: &Subspace, wp: &Subspace, d: usize, lambda_p: &Partition) -> FlagCheck {
    let n = x.rows();
    let nested = w.is_within(f, wp);
    let dims_ok = w.dim() == d && wp.dim() + d == n;
    if !nested || !dims_ok {
        return FlagCheck {
            nested,
            dims_ok,
            stable: false,
            bottom_ok: false,
            middle_ok: false,
            top_ok: false,
        };
    }
    let b1 = w.basis().to_vec();
    let b2 = extend_basis(f, &b1, wp.basis());
    let b3 = extend_basis(f, &b2, &Matrix::identity(f, n).row_vecs());
    // columns of P are the adapted basis; M = P^{-1} x P
    let p = Matrix::from_rows(b3.clone()).transpose();
    let pinv = p.inverse(f).expect("adapted basis is a basis");
    let m = pinv.mul(f, x).mul(f, &p);
    let (k1, k2) = (b1.len(), b2.len());
    let mut stable = true;
    for col in 0..k2 {
        let limit = if col < k1 { k1 } else { k2 };
        for row in limit..n {
            stable &= m[(row, col)].is_zero();
        }
    }
    let block = |lo: usize, hi: usize| {
        let mut b = Matrix::zeros(hi - lo, hi - lo);
        for i in lo..hi {
            for j in lo..hi {
                b[(i - lo, j - lo)] = m[(i, j)];
            }
        }
        jordan_type(f, &b, JordanMode::Nilpotent).ok()
    };
    let regular = Partition::new(if d == 0 { vec![] } else { vec![d as u32] });
    FlagCheck {
        nested,
        dims_ok,
        stable,
        bottom_ok: block(0, k1) == Some(regular.clone()),
        middle_ok: block(k1, k2).as_ref() == Some(lambda_p),
        top_ok: block(k2, n) == Some(regular),
    }
}

/// `W^⊥` for the Hermitian form of a split element.
pub fn hermitian_perp(data: &SplitSLData, w: &Subspace) -> Subspace {
    let f = &*data.field;
    let n = data.n();
    if w.dim() == 0 {
        return Subspace::whole(f, n);
    }
    // v ⊥ w iff v^t (A w̄) = 0
    let rows: Vec<Vector> = w
        .basis()
        .iter()
        .map(|b| {
            let bb: Vector = b.iter().map(|&e| data.conj(e)).collect();
            data.form.apply(f, &bb)
        })
        .collect();
    Subspace::span(f, n, &Matrix::from_rows(rows).kernel(f))
}

/// A flag is fixed by the unitary Frobenius exactly when `W' = W^⊥`.
pub fn is_f_stable_sl(data: &SplitSLData, w: &Subspace, wp: &Subspace) -> bool {
    hermitian_perp(data, w) == *wp && w.is_within(&data.field, wp)
}

/// The `F`-stable points of `SF_{u,λ'}` for a split element over `F_{q^2}`.
pub fn rational_flags_sl(data: &SplitSLData, d: usize, lambda_p: &Partition, budget: u128) -> Result<Vec<Flag>> {
    let f = &*data.field;
    let x = data.nilpotent();
    let mut out = Vec::new();
    for w in cyclic_subspaces(f, &x, d, budget)? {
        let isotropic = w
            .basis()
            .iter()
            .all(|a| w.basis().iter().all(|b| data.pair(a, b).is_zero()));
        if !isotropic {
            continue;
        }
        let wp = hermitian_perp(data, &w);
        if check_flag(f, &x, &w, &wp, d, lambda_p).all() {
            out.push(Flag::new(f, &x, w, wp));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralizerUnits {
    pub algebra_basis: Vec<Matrix>,
    pub algebra_dim: usize,
    #[serde(skip)]
    pub units: Vec<Matrix>,
    pub unit_count: usize,
    pub det_one: bool,
}

/// `Σ_{i,j} min(λ_i, λ_j)`.
pub fn centralizer_dimension(lambda: &Partition) -> usize {
    let p = lambda.parts();
    p.iter().map(|&a| p.iter().map(|&b| a.min(b) as usize).sum::<usize>()).sum()
}

/// Invertible elements of the commutant of `x` (optionally with `det = 1`).
pub fn centralizer_units(f: &Field, x: &Matrix, det_one: bool, budget: u128) -> Result<CentralizerUnits> {
    let n = x.rows();
    // unknown m (row-major): (m x - x m)_{ij} = Σ_k m_ik x_kj - x_ik m_kj
    let mut eqs = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let a = x[(k, j)];
                eqs[(row, i * n + k)] = f.add(eqs[(row, i * n + k)], a);
                let b = x[(i, k)];
                eqs[(row, k * n + j)] = f.sub(eqs[(row, k * n + j)], b);
            }
        }
    }
    let basis: Vec<Matrix> = eqs
        .kernel(f)
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect()))
        .collect();
    let dim = basis.len();
    let q = f.order() as u128;
    check_budget(q.checked_pow(dim as u32).unwrap_or(u128::MAX), budget)?;
    let total = (f.order() as u64).pow(dim as u32);
    let mut units = Vec::new();
    for mut code in 0..total {
        let mut m = Matrix::zeros(n, n);
        for b in &basis {
            let c = f.element((code % f.order() as u64) as u32);
            code /= f.order() as u64;
            if !c.is_zero() {
                m = m.add(f, &b.scale(f, c));
            }
        }
        let det = m.det(f);
        if det.is_zero() || (det_one && det != f.one()) {
            continue;
        }
        units.push(m);
    }
    Ok(CentralizerUnits {
        algebra_dim: dim,
        algebra_basis: basis,
        unit_count: units.len(),
        units,
        det_one,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitDecomposition {
    /// Flag indices per orbit, each sorted, orbits ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Stratum invariant of each orbit (`None` if it varies inside the orbit).
    pub invariants: Vec<Option<Partition>>,
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = a;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

pub fn orbit_decomposition(f: &Field, flags: &[Flag], units: &CentralizerUnits) -> Result<OrbitDecomposition> {
    let index: HashMap<(&Subspace, &Subspace), usize> =
        flags.iter().enumerate().map(|(i, fl)| ((&fl.w, &fl.wp), i)).collect();
    let mut parent: Vec<usize> = (0..flags.len()).collect();
    for (i, fl) in flags.iter().enumerate() {
        for g in &units.units {
            let w = fl.w.image(f, g);
            let wp = fl.wp.image(f, g);
            let j = *index
                .get(&(&w, &wp))
                .ok_or_else(|| Error::Inconsistent("unit moved a flag outside the flag set".into()))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..flags.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let orbits: Vec<Vec<usize>> = groups.into_values().collect();
    let invariants = orbits
        .iter()
        .map(|o| {
            let t = &flags[o[0]].type_quotient;
            o.iter().all(|&i| flags[i].type_quotient == *t).then(|| t.clone())
        })
        .collect();
    Ok(OrbitDecomposition { orbits, invariants })
}

/// Replaces part `j` (1-based) of `λ` by `λ_j - by`.
pub fn lower_part(lambda: &Partition, j: usize, by: u32) -> Partition {
    let mut v = lambda.parts().to_vec();
    v[j - 1] -= by;
    Partition::new(v)
}

/// Expected strata of `SF_{u,λ'}`: one for cases (I)/(II), `ν` and `ν'` for (III).
pub fn expected_strata_sl(lambda: &Partition, lambda_p: &Partition, d: u32) -> Result<(Option<SlCase>, Vec<Partition>)> {
    let mu = divide(lambda, d)?;
    let mu_p = divide(lambda_p, d)?;
    let c = classify_pair_sl(&mu, &mu_p)?;
    Ok(match c.tag {
        None => (None, Vec::new()),
        Some(SlCase::I) | Some(SlCase::II) => (c.tag, vec![lower_part(lambda, c.j, d)]),
        Some(SlCase::III) => (c.tag, vec![lower_part(lambda, c.i, d), lower_part(lambda, c.j, d)]),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitFlag {
    pub label: String,
    pub w: Subspace,
    pub wp: Subspace,
    /// Stratum the construction is meant to land in.
    pub expected_stratum: Partition,
    pub check: FlagCheck,
    pub f_stable: bool,
    pub stratum: Partition,
}

impl SplitFlag {
    pub fn ok(&self) -> bool {
        self.check.all() && self.f_stable && self.stratum == self.expected_stratum
    }
}

fn unit_vector(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// The flags `(W_0 ⊂ W_0^⊥)` of the explicit constructions for a split `SL` element.
pub fn split_flag_sl(data: &SplitSLData, lambda_p: &Partition, d: u32) -> Result<Vec<SplitFlag>> {
    let f = &*data.field;
    let n = data.n();
    let lambda = &data.lambda;
    let (case, strata) = expected_strata_sl(lambda, lambda_p, d)?;
    let mu = divide(lambda, d)?;
    let c = classify_pair_sl(&mu, &divide(lambda_p, d)?)?;
    let du = d as usize;
    let x = data.nilpotent();
    let v = |k: usize, j: usize| unit_vector(f, n, data.index(k, j));
    let mut built: Vec<(String, Vec<Vector>, Partition)> = Vec::new();
    match case {
        None => return Err(Error::CaseMismatch(format!("{lambda} -> {lambda_p} fits no case"))),
        Some(SlCase::I) => {
            let gens = (1..=du).map(|a| v(c.i, a)).collect();
            built.push(("I".into(), gens, strata[0].clone()));
        }
        Some(SlCase::II) => {
            let h = lambda.part(c.i) as usize;
            let (top1, top2) = (v(c.i, h), v(c.i + 1, h));
            let xh1 = x.pow(f, h as u32 - 1);
            // isotropic vector of ⟨v, w⟩ = (v, x^{h-1} w) on ⟨v_{i,h}, v_{i+1,h}⟩
            let mut iso = None;
            'search: for a in f.elements() {
                for b in f.elements() {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let w: Vector = top1.iter().zip(&top2).map(|(&p, &r)| f.add(f.mul(a, p), f.mul(b, r))).collect();
                    if data.pair(&w, &xh1.apply(f, &w)).is_zero() {
                        iso = Some(w);
                        break 'search;
                    }
                }
            }
            let w0 = iso.ok_or_else(|| Error::Inconsistent("no isotropic vector".into()))?;
            let gens = (1..=du).map(|s| x.pow(f, (h - s) as u32).apply(f, &w0)).collect();
            built.push(("II".into(), gens, strata[0].clone()));
        }
        Some(SlCase::III) => {
            for (alpha, label, stratum) in [(f.one(), "III:alpha=1", &strata[0]), (f.zero(), "III:alpha=0", &strata[1])] {
                let gens = (1..=du)
                    .map(|a| {
                        let mut g = v(c.j, a);
                        let e = v(c.i, a);
                        for (slot, &ei) in g.iter_mut().zip(&e) {
                            *slot = f.add(*slot, f.mul(alpha, ei));
                        }
                        g
                    })
                    .collect();
                built.push((label.into(), gens, stratum.clone()));
            }
        }
    }
    Ok(built
        .into_iter()
        .map(|(label, gens, expected)| {
            let w = Subspace::span(f, n, &gens);
            let wp = hermitian_perp(data, &w);
            let check = check_flag(f, &x, &w, &wp, du, lambda_p);
            let whole = Subspace::whole(f, n);
            SplitFlag {
                label,
                f_stable: is_f_stable_sl(data, &w, &wp),
                stratum: subquotient_type(f, &x, &w, &whole),
                expected_stratum: expected,
                check,
                w,
                wp,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SoFlag {
    pub e: Subspace,
    pub e_perp: Subspace,
    pub type_middle: Partition,
}

fn so_perp(f: &Field, gram: &Matrix, e: &Subspace) -> Subspace {
    let rows: Vec<Vector> = e.basis().iter().map(|b| gram.apply(f, b)).collect();
    Subspace::span(f, gram.rows(), &Matrix::from_rows(rows).kernel(f))
}

/// All totally isotropic `x`-stable planes `E` with `x|_E ≠ 0` and
/// `x|_{E^⊥/E}` of type `λ'`.
pub fn enumerate_flags_so(data: &SplitSOData, lambda_p: &Partition, budget: u128) -> Result<Vec<SoFlag>> {
    let f = &*data.field;
    let x = data.nilpotent();
    let b = data.gram();
    let n = x.rows();
    if lambda_p.size() as usize + 4 != n {
        return Ok(Vec::new());
    }
    let mut out = BTreeSet::new();
    for e in cyclic_subspaces(f, x, 2, budget)? {
        let w = &e.basis()[0];
        let isotropic = e.basis().iter().all(|a| b.pair(f, a, w).is_zero())
            && e.basis().iter().all(|a| e.basis().iter().all(|c| b.pair(f, a, c).is_zero()));
        if !isotropic {
            continue;
        }
        let perp = so_perp(f, b, &e);
        let t = subquotient_type(f, x, &e, &perp);
        if t == *lambda_p {
            out.insert(SoFlag {
                e,
                e_perp: perp,
                type_middle: t,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// Independent re-check of an orthogonal flag.
pub fn check_so_flag(data: &SplitSOData, e: &Subspace, lambda_p: &Partition) -> bool {
    let f = &*data.field;
    let x = data.nilpotent();
    let b = data.gram();
    let isotropic = e.basis().iter().all(|a| e.basis().iter().all(|c| b.pair(f, a, c).is_zero()));
    let moved = e.basis().iter().any(|a| x.apply(f, a).iter().any(|t| !t.is_zero()));
    let perp = so_perp(f, b, e);
    e.dim() == 2
        && isotropic
        && moved
        && e.is_stable(f, x)
        && check_flag(f, x, e, &perp, 2, lambda_p).middle_ok
}

#[derive(Debug, Clone, Serialize)]
pub struct SoSplitFlags {
    pub case: SpinCase,
    pub pivot: usize,
    pub flags: Vec<(String, Subspace)>,
}

/// The explicit planes of the orthogonal constructions for cases (I), (II), (IV), (V).
/// For (V) this is the member `β = 0`; see [`case_v_family`] for the full family.
pub fn split_flag_so(data: &SplitSOData, lambda_p: &Partition) -> Result<SoSplitFlags> {
    let f = &*data.field;
    let n = data.gram().rows();
    let c = classify_pair_spin(&data.lambda, lambda_p)?;
    let tag = c.tag.ok_or_else(|| Error::CaseMismatch(format!("{} -> {lambda_p} fits no case", data.lambda)))?;
    let i = c.pivot;
    let e = |j: usize, a: usize| -> Result<Vector> {
        let k = data
            .basis_index(j, a)
            .ok_or_else(|| Error::Inconsistent(format!("no basis vector e^{j}_{a}")))?;
        Ok(unit_vector(f, n, k))
    };
    let add = |u: &Vector, v: &Vector, s: FieldElement| -> Vector { u.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(s, b))).collect() };
    let flags = match tag {
        SpinCase::I | SpinCase::II => vec![("E".to_string(), Subspace::span(f, n, &[e(i, 1)?, e(i, 2)?]))],
        SpinCase::IV => {
            let (e1, e2, ep1) = (e(i + 1, 1)?, e(i + 1, 2)?, e(i, 1)?);
            vec![
                ("E".to_string(), Subspace::span(f, n, &[e1.clone(), add(&e2, &ep1, f.one())])),
                ("E'".to_string(), Subspace::span(f, n, &[e1, add(&e2, &ep1, f.from_int(-1))])),
            ]
        }
        SpinCase::V => vec![("E".to_string(), Subspace::span(f, n, &[e(i + 1, 1)?, e(i + 1, 2)?]))],
        SpinCase::III => return Err(Error::CaseMismatch("no construction for case (III)".into())),
    };
    Ok(SoSplitFlags { case: tag, pivot: i, flags })
}

/// Case (V): `E_β = ⟨e_1, e_2 + α f_1 + β e'_1⟩` with `α = sign · β² (e'_1, e'_{h-1}) / 2`, one per `β`.
pub fn case_v_family(data: &SplitSOData, pivot: usize, sign: i64) -> Result<Vec<Subspace>> {
    let f = &*data.field;
    let n = data.gram().rows();
    let i = pivot;
    let idx = |j: usize, a: usize| {
        data.basis_index(j, a)
            .ok_or_else(|| Error::Inconsistent(format!("no basis vector e^{j}_{a}")))
    };
    let h = data.lambda.part(i + 1) as usize;
    let c = data.gram()[(idx(i, 1)?, idx(i, h - 1)?)];
    let half = f.half().ok_or(Error::EvenCharacteristic)?;
    let (e1, e2, f1, ep1) = (idx(i + 1, 1)?, idx(i + 1, 2)?, idx(i + 2, 1)?, idx(i, 1)?);
    let mut out = Vec::new();
    for beta in f.elements() {
        let alpha = f.mul(f.from_int(sign), f.mul(half, f.mul(c, f.mul(beta, beta))));
        let mut g = unit_vector(f, n, e2);
        g[f1] = f.add(g[f1], alpha);
        g[ep1] = f.add(g[ep1], beta);
        out.push(Subspace::span(f, n, &[unit_vector(f, n, e1), g]));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;
    use crate::split::{build_sl_split, build_so_split};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn projective_point_count() {
        let f = field_of_order(3).unwrap();
        assert_eq!(projective_points(&f, 3).count(), 13);
    }

    #[test]
    fn single_block_flag() {
        let f = field_of_order(9).unwrap();
        let flags = sl_flag_variety(&p(&[3]), 1, &p(&[1]), &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(flags.len(), 1);
        assert_eq!(flags[0].w.dim(), 1);
        // x = 0 on a line is regular, so every line W = W' qualifies
        let lines = sl_flag_variety(&p(&[1, 1]), 1, &p(&[]), &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(lines.len(), 10);
        assert_eq!(strata(&lines).len(), 1);
        assert!(sl_flag_variety(&p(&[1, 1]), 1, &p(&[1]), &f, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn case_three_strata() {
        let f = field_of_order(3).unwrap();
        let flags = sl_flag_variety(&p(&[1, 2]), 1, &p(&[1]), &f, DEFAULT_BUDGET).unwrap();
        let s = strata(&flags);
        assert_eq!(s.keys().cloned().collect::<Vec<_>>(), vec![p(&[1, 1]), p(&[2])]);
        let x = jordan_nilpotent(&f, &p(&[1, 2]));
        for fl in &flags {
            assert!(check_flag(&f, &x, &fl.w, &fl.wp, 1, &p(&[1])).all());
        }
    }

    #[test]
    fn centralizer_sizes() {
        let f = field_of_order(3).unwrap();
        let x = jordan_nilpotent(&f, &p(&[2]));
        let u = centralizer_units(&f, &x, false, DEFAULT_BUDGET).unwrap();
        assert_eq!((u.algebra_dim, u.unit_count), (2, 6));
        let x = jordan_nilpotent(&f, &p(&[1, 2]));
        assert_eq!(centralizer_units(&f, &x, false, DEFAULT_BUDGET).unwrap().algebra_dim, 5);
        let z = Matrix::zeros(2, 2);
        assert_eq!(centralizer_units(&f, &z, false, DEFAULT_BUDGET).unwrap().unit_count, 48);
    }

    #[test]
    fn so_case_one_singleton() {
        let d = build_so_split(&p(&[5]), 3).unwrap();
        let flags = enumerate_flags_so(&d, &p(&[1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(flags.len(), 1);
        let s = split_flag_so(&d, &p(&[1])).unwrap();
        assert_eq!(s.flags[0].1, flags[0].e);
    }

    #[test]
    fn sl_split_case_one() {
        let d = build_sl_split(&p(&[1, 3]), 3, None).unwrap();
        let fl = split_flag_sl(&d, &p(&[1, 1]), 1).unwrap();
        assert_eq!(fl.len(), 1);
        assert!(fl[0].ok(), "{:?}", fl[0]);
    }
}
