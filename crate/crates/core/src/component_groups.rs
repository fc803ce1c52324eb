//! Finite models of component groups `A_G(u)` with their Frobenius
//! automorphism `τ`, irreducible characters with a prescribed central
//! character, twisted classes, and extensions to `⟨τ⟩ ⋉ A`.

use std::collections::HashMap;

use serde::Serialize;

use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};
use crate::ffield::prime_power;
use crate::partitions::{is_in_xn, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GroupModel {
    /// Even words in `x_i` (`i ∈ I`, the odd parts) with `x_i^2 = ε^{e_i}` and
    /// `x_i x_j = ε x_j x_i`; `signs[i]` is `F(x_i) = signs[i] x_i`.
    SpinGamma {
        odd_parts: Vec<u32>,
        exponents: Vec<u8>,
        signs: Vec<i8>,
    },
    /// `Z/order` with `τ(a) = -q a`.
    Cyclic { order: u32, n_prime: u32, q: u32 },
    /// `(Z/2)^rank` with trivial `τ`.
    ElemAbelian2 { rank: u32 },
}

#[derive(Debug, Clone)]
pub struct ComponentGroup {
    pub model: GroupModel,
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    tau: Vec<usize>,
    /// Spin: `(ε bit, even subset mask)` per element.
    spin_elems: Vec<(bool, u32)>,
}

/// Characters of the central subgroup used to select representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CentralCharacter {
    /// Value of `ξ(ε)`.
    Spin { epsilon: i8 },
    /// `ξ(a) = ζ_{n'}^{index · a}` on `Z ≅ Z/n'`.
    Cyclic { index: u32 },
    /// Elementary abelian groups carry no central condition.
    Any,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrrChar {
    pub label: String,
    pub dimension: u32,
    /// Character value per group element (element order of the group).
    pub values: Vec<Cyclotomic>,
    #[serde(skip)]
    pub matrices: Vec<CycMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistedClass {
    /// Index of the least element of the class.
    pub rep: usize,
    pub rep_label: String,
    pub size: usize,
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistedClassTable {
    pub classes: Vec<TwistedClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtendedChar {
    pub label: String,
    pub dimension: u32,
    /// `Tr(aτ, ρ̃)` per group element `a`.
    pub values: Vec<Cyclotomic>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn p_prime_part(mut n: u32, p: u32) -> u32 {
    if p >= 2 {
        while n > 0 && n % p == 0 {
            n /= p;
        }
    }
    n
}

/// `n'_λ = gcd(λ_1, …, λ_r, n')`, `n'` the `p'`-part of `n`.
pub fn sl_component_order(lambda: &Partition, p: u32) -> u32 {
    let n_prime = p_prime_part(lambda.size(), p);
    lambda.parts().iter().fold(n_prime, |g, &x| gcd(g, x))
}

fn spin_word_label(odd_parts: &[usize], eps: bool, mask: u32) -> String {
    let mut s = String::new();
    if eps {
        s.push('e');
    }
    for (k, idx) in odd_parts.iter().enumerate() {
        if mask >> k & 1 == 1 {
            s.push_str(&format!("x{idx}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// `x_S x_T = ε^{k} x_{S Δ T}`; returns `k mod 2`.
fn spin_product_sign(a: u32, b: u32, exps: &[u8]) -> bool {
    let mut k = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        k += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    let mut common = a & b;
    while common != 0 {
        let j = common.trailing_zeros() as usize;
        k += exps[j] as u32;
        common &= common - 1;
    }
    k % 2 == 1
}

impl ComponentGroup {
    /// `Γ` for `λ ∈ X_N` with the given Frobenius sign vector (all `+1` when `None`).
    pub fn spin_gamma(lambda: &Partition, signs: Option<&[i8]>) -> Result<ComponentGroup> {
        if !is_in_xn(lambda) {
            return Err(Error::NotInXN(lambda.parts().to_vec(), lambda.size()));
        }
        let idx: Vec<usize> = (1..=lambda.len()).filter(|&j| lambda.part(j) % 2 == 1).collect();
        let odd_parts: Vec<u32> = idx.iter().map(|&j| lambda.part(j)).collect();
        let m = idx.len();
        if m > 20 {
            return Err(Error::Inconsistent(format!("{m} odd parts is too many")));
        }
        let exponents: Vec<u8> = odd_parts.iter().map(|&h| ((h * (h - 1) / 2) % 2) as u8).collect();
        let signs: Vec<i8> = match signs {
            Some(s) if s.len() == m => s.to_vec(),
            Some(_) => return Err(Error::Inconsistent("sign vector length".into())),
            None => vec![1; m],
        };
        let mut elems = Vec::new();
        for mask in 0u32..(1u32 << m) {
            if mask.count_ones() % 2 == 0 {
                elems.push((false, mask));
                elems.push((true, mask));
            }
        }
        elems.sort_by_key(|&(e, mk)| (mk.count_ones(), mk, e));
        let pos: HashMap<(bool, u32), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mul: Vec<Vec<usize>> = elems
            .iter()
            .map(|&(ea, ma)| {
                elems
                    .iter()
                    .map(|&(eb, mb)| {
                        let e = ea ^ eb ^ spin_product_sign(ma, mb, &exponents);
                        pos[&(e, ma ^ mb)]
                    })
                    .collect()
            })
            .collect();
        let tau: Vec<usize> = elems
            .iter()
            .map(|&(e, mk)| {
                let flip = (0..m).filter(|&k| mk >> k & 1 == 1 && signs[k] < 0).count() % 2 == 1;
                pos[&(e ^ flip, mk)]
            })
            .collect();
        let labels = elems.iter().map(|&(e, mk)| spin_word_label(&idx, e, mk)).collect();
        Ok(ComponentGroup::finish(
            GroupModel::SpinGamma { odd_parts, exponents, signs },
            labels,
            mul,
            tau,
            elems,
        ))
    }

    /// The cyclic group of order `n'_λ` for `SL_n` over `F_q`, with `τ(a) = -q a`.
    pub fn sl_cyclic(lambda: &Partition, q: u32) -> Result<ComponentGroup> {
        let (p, _) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let order = sl_component_order(lambda, p);
        let n_prime = p_prime_part(lambda.size(), p);
        Ok(ComponentGroup::cyclic(order, n_prime, q))
    }

    pub fn cyclic(order: u32, n_prime: u32, q: u32) -> ComponentGroup {
        let o = order as usize;
        let mul = (0..o).map(|a| (0..o).map(|b| (a + b) % o).collect()).collect();
        let tau = (0..o)
            .map(|a| ((o as u64 * q as u64 - (a as u64 * q as u64) % o as u64) % o as u64) as usize)
            .collect();
        let labels = (0..o).map(|a| a.to_string()).collect();
        ComponentGroup::finish(GroupModel::Cyclic { order, n_prime, q }, labels, mul, tau, Vec::new())
    }

    pub fn elem_abelian2(rank: u32) -> ComponentGroup {
        let o = 1usize << rank;
        let mul = (0..o).map(|a| (0..o).map(|b| a ^ b).collect()).collect();
        let tau = (0..o).collect();
        let labels = (0..o).map(|a| format!("{a:0width$b}", width = rank.max(1) as usize)).collect();
        ComponentGroup::finish(GroupModel::ElemAbelian2 { rank }, labels, mul, tau, Vec::new())
    }

    fn finish(
        model: GroupModel,
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
        tau: Vec<usize>,
        spin_elems: Vec<(bool, u32)>,
    ) -> ComponentGroup {
        let n = mul.len();
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a][b] == 0).expect("group element has an inverse"))
            .collect();
        ComponentGroup {
            model,
            labels,
            mul,
            inv,
            tau,
            spin_elems,
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn tau(&self, a: usize) -> usize {
        self.tau[a]
    }

    pub fn tau_is_trivial(&self) -> bool {
        self.tau.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn tau_order(&self) -> u32 {
        if self.tau_is_trivial() {
            1
        } else {
            2
        }
    }

    /// `ε` for spin groups.
    pub fn epsilon(&self) -> Option<usize> {
        self.spin_elems.iter().position(|&e| e == (true, 0))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// `τ` is a homomorphism, bijective, and `τ^2 = id`.
    pub fn tau_is_involutive_automorphism(&self) -> bool {
        let n = self.order();
        let hom = (0..n).all(|a| (0..n).all(|b| self.tau[self.mul[a][b]] == self.mul[self.tau[a]][self.tau[b]]));
        let inv = (0..n).all(|a| self.tau[self.tau[a]] == a);
        hom && inv
    }

    /// Ordinary conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|g| self.mul[self.mul[g][a]][self.inv[g]]).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    /// Orbits of `a -> b a τ(b)^{-1}`.
    pub fn twisted_classes(&self) -> TwistedClassTable {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut members: Vec<usize> = (0..n)
                .map(|b| self.mul[self.mul[b][a]][self.inv[self.tau[b]]])
                .collect();
            members.sort_unstable();
            members.dedup();
            for &c in &members {
                seen[c] = true;
            }
            classes.push(TwistedClass {
                rep: a,
                rep_label: self.labels[a].clone(),
                size: members.len(),
                members,
            });
        }
        TwistedClassTable { classes }
    }

    /// Irreducible characters whose restriction to the centre is `ξ`.
    pub fn irreducibles_with_central_character(&self, xi: CentralCharacter) -> Result<Vec<IrrChar>> {
        match (&self.model, xi) {
            (GroupModel::SpinGamma { exponents, .. }, CentralCharacter::Spin { epsilon: -1 }) => {
                self.spin_faithful(exponents)
            }
            (GroupModel::SpinGamma { .. }, CentralCharacter::Spin { epsilon: 1 }) => Ok(self.spin_linear()),
            (GroupModel::Cyclic { order, n_prime, .. }, CentralCharacter::Cyclic { index }) => {
                if index >= *n_prime {
                    return Err(Error::BadCentralCharacter(format!("index {index} mod {n_prime}")));
                }
                Ok(cyclic_characters(*order, *n_prime, index))
            }
            (GroupModel::ElemAbelian2 { rank }, CentralCharacter::Any) => Ok(elem_abelian_characters(*rank)),
            (m, x) => Err(Error::BadCentralCharacter(format!("{x:?} for {m:?}"))),
        }
    }

    fn spin_linear(&self) -> Vec<IrrChar> {
        let m = match &self.model {
            GroupModel::SpinGamma { odd_parts, .. } => odd_parts.len(),
            _ => unreachable!(),
        };
        // characters of Γ/⟨ε⟩: T ⊆ I up to complement, take T avoiding the last index
        let top = if m == 0 { 0 } else { 1u32 << (m - 1) };
        let count = if m == 0 { 1 } else { top };
        (0..count)
            .map(|t| {
                let values: Vec<Cyclotomic> = self
                    .spin_elems
                    .iter()
                    .map(|&(_, mk)| Cyclotomic::from_int(if (mk & t).count_ones() % 2 == 0 { 1 } else { -1 }))
                    .collect();
                let matrices = values
                    .iter()
                    .map(|v| {
                        let mut c = CycMatrix::zeros(1);
                        c.set(0, 0, v.clone());
                        c
                    })
                    .collect();
                IrrChar {
                    label: format!("lin{t}"),
                    dimension: 1,
                    values,
                    matrices,
                }
            })
            .collect()
    }

    fn spin_faithful(&self, exps: &[u8]) -> Result<Vec<IrrChar>> {
        let m = exps.len();
        let i = Cyclotomic::i();
        let scaled = |g: &CycMatrix, square_minus_one: bool| if square_minus_one { g.scale(&i) } else { g.clone() };
        // pair[a][b] = ρ(x_a x_b), a < b; every even word is a product of consecutive pairs
        type Pairs = Vec<Vec<Option<CycMatrix>>>;
        let mut variants: Vec<(String, Pairs)> = Vec::new();
        if m == 0 {
            variants.push(("sgn".into(), Vec::new()));
        } else if m % 2 == 1 {
            let gam = gamma_matrices(m);
            let xs: Vec<CycMatrix> = (0..m).map(|k| scaled(&gam[k], exps[k] == 1)).collect();
            let mut pairs: Pairs = vec![vec![None; m]; m];
            for a in 0..m {
                for b in a + 1..m {
                    pairs[a][b] = Some(xs[a].mul(&xs[b]));
                }
            }
            variants.push(("rho".into(), pairs));
        } else {
            // y_a = x_a x_m (a < m) anticommute with y_a^2 = -(-1)^{e_a + e_m};
            // the two irreducible representations are y -> ±Y
            let gam = gamma_matrices(m - 1);
            let last = m - 1;
            let em_sign = if exps[last] == 1 { -1 } else { 1 };
            for sgn in [1i64, -1] {
                let ys: Vec<CycMatrix> = (0..last)
                    .map(|a| {
                        let square = -(if exps[a] == 1 { -1 } else { 1 }) * em_sign;
                        scaled(&gam[a], square == -1).scale(&Cyclotomic::from_int(sgn))
                    })
                    .collect();
                let mut pairs: Pairs = vec![vec![None; m]; m];
                for a in 0..m {
                    for b in a + 1..m {
                        pairs[a][b] = Some(if b == last {
                            ys[a].clone()
                        } else {
                            // x_a x_b = -(-1)^{e_m} y_a y_b
                            ys[a].mul(&ys[b]).scale(&Cyclotomic::from_int(-em_sign))
                        });
                    }
                }
                variants.push((String::new(), pairs));
            }
        }
        let dim = if m == 0 { 1 } else { 1usize << ((m - 1) / 2) };
        let top_mask = if m == 0 { 0 } else { (1u32 << m) - 1 };
        let top = self.spin_elems.iter().position(|&e| e == (false, top_mask));
        let mut out = Vec::new();
        for (label, pairs) in variants {
            let matrices: Vec<CycMatrix> = self
                .spin_elems
                .iter()
                .map(|&(e, mk)| {
                    let bits: Vec<usize> = (0..m).filter(|&k| mk >> k & 1 == 1).collect();
                    let mut acc = CycMatrix::identity(dim);
                    for ch in bits.chunks(2) {
                        acc = acc.mul(pairs[ch[0]][ch[1]].as_ref().expect("pair matrix"));
                    }
                    if e {
                        acc.neg()
                    } else {
                        acc
                    }
                })
                .collect();
            self.check_representation(&matrices)?;
            let values: Vec<Cyclotomic> = matrices.iter().map(CycMatrix::trace).collect();
            let label = if label.is_empty() {
                // labelled by the value on x_I (all generators in increasing order)
                let v = &values[top.expect("x_I is an even word")];
                format!("rho[x_I={}]", v.normalized())
            } else {
                label
            };
            out.push(IrrChar {
                label,
                dimension: dim as u32,
                values,
                matrices,
            });
        }
        Ok(out)
    }

    fn check_representation(&self, mats: &[CycMatrix]) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                if mats[a].mul(&mats[b]) != mats[self.mul[a][b]] {
                    return Err(Error::Inconsistent(format!(
                        "representation fails on {} * {}",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `⟨χ, ψ⟩ · |A|` as an exact cyclotomic number.
    pub fn inner_product_scaled(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        chi.iter()
            .zip(psi)
            .fold(Cyclotomic::zero(), |acc, (a, b)| acc.add(&a.mul(&b.conj())))
    }

    /// Both (or the single trivial) extensions of `ρ` to `⟨τ⟩ ⋉ A`, as values on the coset `Aτ`.
    pub fn extend_character(&self, rho: &IrrChar) -> Result<Vec<ExtendedChar>> {
        let n = self.order();
        if (0..n).any(|a| rho.values[self.tau[a]] != rho.values[a]) {
            return Err(Error::NotTauStable);
        }
        let spin = matches!(self.model, GroupModel::SpinGamma { .. });
        if self.tau_is_trivial() || !spin {
            // abelian groups: ρ∘τ = ρ is one-dimensional, so the trivial extension is canonical
            let d = rho.dimension as usize;
            let exts = if spin && self.tau_is_trivial() {
                vec![(format!("{}+", rho.label), CycMatrix::identity(d)), (format!("{}-", rho.label), CycMatrix::identity(d).neg())]
            } else {
                vec![(rho.label.clone(), CycMatrix::identity(d))]
            };
            return Ok(exts
                .into_iter()
                .map(|(label, t)| ExtendedChar {
                    label,
                    dimension: rho.dimension,
                    values: rho.matrices.iter().map(|m| m.mul(&t).trace()).collect(),
                })
                .collect());
        }
        let t = self.intertwiner(rho)?;
        Ok([(format!("{}+", rho.label), t.clone()), (format!("{}-", rho.label), t.neg())]
            .into_iter()
            .map(|(label, t)| ExtendedChar {
                label,
                dimension: rho.dimension,
                values: rho.matrices.iter().map(|m| m.mul(&t).trace()).collect(),
            })
            .collect())
    }

    /// `T` with `T ρ(a) T^{-1} = ρ(τ a)` and `T^2 = 1`, found among the
    /// products of the representation matrices of the group elements.
    fn intertwiner(&self, rho: &IrrChar) -> Result<CycMatrix> {
        let n = self.order();
        let i = Cyclotomic::i();
        // ρ(τ a) = ± ρ(a) in the spin case, so T can be taken from the image of a
        // larger Clifford group: try ρ(g) and scalar multiples with T^2 = 1
        let candidates = self.clifford_candidates(rho);
        for t in candidates {
            let sq = t.mul(&t);
            let t = if sq.is_scalar(&Cyclotomic::one()) {
                t
            } else if sq.is_scalar(&Cyclotomic::from_int(-1)) {
                t.scale(&i)
            } else {
                continue;
            };
            let ok = (0..n).all(|a| t.mul(&rho.matrices[a]) == rho.matrices[self.tau[a]].mul(&t));
            if ok {
                return Ok(t);
            }
        }
        Err(Error::Inconsistent(format!("no intertwiner for {}", rho.label)))
    }

    /// Products `X_K` of the odd-word matrices, rebuilt from the pair matrices:
    /// `X_a` itself is not in `ρ(Γ)`, but `X_a X_b` is, and conjugation by `X_K`
    /// flips exactly the generators demanded by `τ`.
    fn clifford_candidates(&self, rho: &IrrChar) -> Vec<CycMatrix> {
        let GroupModel::SpinGamma { odd_parts, exponents, .. } = &self.model else {
            return vec![CycMatrix::identity(rho.dimension as usize)];
        };
        let m = odd_parts.len();
        let d = rho.dimension as usize;
        let mut out: Vec<CycMatrix> = rho.matrices.clone();
        if m % 2 == 1 {
            let gam = gamma_matrices(m);
            let i = Cyclotomic::i();
            let xs: Vec<CycMatrix> = (0..m).map(|k| if exponents[k] == 1 { gam[k].scale(&i) } else { gam[k].clone() }).collect();
            for mask in 0u32..(1u32 << m) {
                let mut acc = CycMatrix::identity(d);
                for (k, x) in xs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc = acc.mul(x);
                    }
                }
                out.push(acc);
            }
        } else if m > 0 {
            let gam = gamma_matrices(m - 1);
            for mask in 0u32..(1u32 << (m - 1)) {
                let mut acc = CycMatrix::identity(d);
                for (k, g) in gam.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc = acc.mul(g);
                    }
                }
                out.push(acc);
            }
        }
        out
    }
}

/// Anticommuting `Γ_1, …, Γ_{2r+1}` of size `2^r` with `Γ_k^2 = 1`, entries in `Z[i]`.
pub fn gamma_matrices(count: usize) -> Vec<CycMatrix> {
    assert!(count % 2 == 1, "odd number of gamma matrices");
    let r = (count - 1) / 2;
    let i = Cyclotomic::i();
    let id = CycMatrix::identity(2);
    let sx = CycMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let sz = CycMatrix::from_ints(&[&[1, 0], &[0, -1]]);
    let mut sy = CycMatrix::zeros(2);
    sy.set(0, 1, i.neg());
    sy.set(1, 0, i.clone());
    let tensor = |fs: Vec<CycMatrix>| fs.into_iter().fold(CycMatrix::identity(1), |acc, m| acc.kron(&m));
    let mut out = Vec::with_capacity(count);
    for k in 0..r {
        for mid in [&sx, &sy] {
            let mut fs = Vec::new();
            for _ in 0..k {
                fs.push(sz.clone());
            }
            fs.push(mid.clone());
            for _ in k + 1..r {
                fs.push(id.clone());
            }
            out.push(tensor(fs));
        }
    }
    out.push(tensor(vec![sz.clone(); r]));
    out
}

fn cyclic_characters(order: u32, n_prime: u32, index: u32) -> Vec<IrrChar> {
    // ρ_k(a) = ζ_order^{k a}; its central character is ξ_{k n'/order}
    let step = n_prime / order.max(1);
    (0..order)
        .filter(|&k| (k as u64 * step as u64 % n_prime as u64) as u32 == index)
        .map(|k| {
            let values: Vec<Cyclotomic> = (0..order).map(|a| Cyclotomic::zeta(order, (k as i64) * (a as i64)).normalized()).collect();
            let matrices = values
                .iter()
                .map(|v| {
                    let mut c = CycMatrix::zeros(1);
                    c.set(0, 0, v.clone());
                    c
                })
                .collect();
            IrrChar {
                label: format!("rho{k}"),
                dimension: 1,
                values,
                matrices,
            }
        })
        .collect()
}

fn elem_abelian_characters(rank: u32) -> Vec<IrrChar> {
    let o = 1u32 << rank;
    (0..o)
        .map(|t| {
            let values: Vec<Cyclotomic> = (0..o)
                .map(|a| Cyclotomic::from_int(if (a & t).count_ones() % 2 == 0 { 1 } else { -1 }))
                .collect();
            let matrices = values
                .iter()
                .map(|v| {
                    let mut c = CycMatrix::zeros(1);
                    c.set(0, 0, v.clone());
                    c
                })
                .collect();
            IrrChar {
                label: format!("lin{t}"),
                dimension: 1,
                values,
                matrices,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn gamma_orders() {
        assert_eq!(ComponentGroup::spin_gamma(&p(&[5]), None).unwrap().order(), 2);
        let g = ComponentGroup::spin_gamma(&p(&[1, 3]), None).unwrap();
        assert_eq!(g.order(), 4);
        let labels: Vec<&str> = (0..4).map(|a| g.label(a)).collect();
        assert_eq!(labels, vec!["1", "e", "x1x2", "ex1x2"]);
        let g = ComponentGroup::spin_gamma(&p(&[1, 3, 5]), None).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(ComponentGroup::spin_gamma(&p(&[2, 2]), None).unwrap().order(), 2);
    }

    #[test]
    fn gamma_matrices_anticommute() {
        for c in [1usize, 3, 5] {
            let g = gamma_matrices(c);
            for a in 0..c {
                assert!(g[a].mul(&g[a]).is_scalar(&Cyclotomic::one()));
                for b in a + 1..c {
                    assert_eq!(g[a].mul(&g[b]), g[b].mul(&g[a]).neg());
                }
            }
        }
    }

    #[test]
    fn spin_dimensions() {
        let eps = CentralCharacter::Spin { epsilon: -1 };
        let cases = [(&[1u32][..], 1, 1), (&[1, 3, 5][..], 1, 2), (&[1, 3][..], 2, 1), (&[1, 3, 5, 7][..], 2, 2)];
        for (parts, count, dim) in cases {
            let g = ComponentGroup::spin_gamma(&p(parts), None).unwrap();
            let chars = g.irreducibles_with_central_character(eps).unwrap();
            assert_eq!(chars.len(), count, "{parts:?}");
            assert!(chars.iter().all(|c| c.dimension == dim));
        }
    }

    #[test]
    fn sl_orders() {
        assert_eq!(sl_component_order(&p(&[6]), 5), 6);
        assert_eq!(sl_component_order(&p(&[2, 4]), 5), 2);
        assert_eq!(sl_component_order(&p(&[1, 4]), 5), 1);
        assert_eq!(sl_component_order(&p(&[3, 6]), 3), 1);
    }

    #[test]
    fn twisted_classes_trivial_tau() {
        let g = ComponentGroup::cyclic(2, 2, 3);
        assert!(g.tau_is_trivial());
        assert_eq!(g.twisted_classes().classes.len(), 2);
    }

    #[test]
    fn tau_moved_character_rejected() {
        let g = ComponentGroup::cyclic(4, 4, 5);
        let chars = g.irreducibles_with_central_character(CentralCharacter::Cyclic { index: 1 }).unwrap();
        assert_eq!(g.extend_character(&chars[0]).unwrap_err(), Error::NotTauStable);
    }

    #[test]
    fn spin_extension_with_nontrivial_tau() {
        // q = 3 signs for (1,3): x_1 -> +x_1, x_2 -> -x_2 after (−1)^{(λ_j-1)/2+1+j}
        let g = ComponentGroup::spin_gamma(&p(&[1, 3]), Some(&[1, -1])).unwrap();
        assert!(!g.tau_is_trivial() && g.tau_is_involutive_automorphism());
        let chars = g.irreducibles_with_central_character(CentralCharacter::Spin { epsilon: -1 }).unwrap();
        // τ swaps x1x2 and e x1x2, so it swaps the two characters
        for c in &chars {
            assert_eq!(g.extend_character(c).unwrap_err(), Error::NotTauStable);
        }
        let g = ComponentGroup::spin_gamma(&p(&[1, 3, 5]), Some(&[1, -1, 1])).unwrap();
        let chars = g.irreducibles_with_central_character(CentralCharacter::Spin { epsilon: -1 }).unwrap();
        let ext = g.extend_character(&chars[0]).unwrap();
        assert_eq!(ext.len(), 2);
    }
}
