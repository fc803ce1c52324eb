//! Small finite fields `F_p` and `F_{p^k}` with table-driven arithmetic.
//!
//! Elements are stored as their index `sum c_i p^i` in the power basis of
//! `F_p[t] / (modulus)`. Multiplication goes through discrete log tables,
//! addition through digit-wise arithmetic (or a full table for small fields).

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus, coefficients in ascending degree (length `k + 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^k}`. Without a seed the modulus is the monic irreducible
/// polynomial of least value `sum a_i p^i`, so constructions are reproducible.
pub fn make_field(p: u32, k: u32, seed_modulus: Option<&[u32]>) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || (p as u64).pow(k) > MAX_FIELD_ORDER as u64 {
        return Err(Error::FieldTooLarge { p, k });
    }
    let modulus = match seed_modulus {
        Some(m) => {
            let m: Vec<u32> = m.iter().map(|c| c % p).collect();
            if m.len() != k as usize + 1 || m[k as usize] != 1 || !poly_irreducible(&m, p) {
                return Err(Error::NotIrreducible(m));
            }
            m
        }
        None => least_irreducible(p, k).ok_or(Error::NotIrreducible(vec![]))?,
    };
    Ok(Field::from_spec(FieldSpec { p, k, modulus }))
}

/// Convenience for the prime field `F_p`.
pub fn prime_field(p: u32) -> Result<Field> {
    make_field(p, 1, None)
}

/// The field of order `q` (a prime power).
pub fn field_of_order(q: u32) -> Result<Field> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
    make_field(p, k, None)
}

/// Splits `q = p^k`, returning `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn least_irreducible(p: u32, k: u32) -> Option<Vec<u32>> {
    let count = p.pow(k);
    (0..count).find_map(|idx| {
        let mut m = digits(idx, p, k as usize);
        m.push(1);
        poly_irreducible(&m, p).then_some(m)
    })
}

fn digits(mut n: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(n % p);
        n /= p;
    }
    out
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn poly_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f = digits(idx, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    fn from_spec(spec: FieldSpec) -> Field {
        let (p, k) = (spec.p, spec.k as usize);
        let q = spec.order();
        let mul_raw = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, k), digits(b, p, k));
            let mut prod = vec![0u32; 2 * k];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let r = poly_rem(&prod, &spec.modulus, p);
            r.iter().rev().fold(0, |acc, &c| acc * p + c)
        };
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        for g in 2..q.max(3) {
            let g = if q == 2 { 1 } else { g };
            let mut x = 1u32;
            let mut ok = true;
            for e in 0..(q - 1) {
                if e > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[e as usize] = x;
                x = mul_raw(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        for (e, &x) in exp.iter().enumerate().take(q as usize - 1) {
            log[x as usize] = e as u32;
        }
        let mut field = Field {
            spec,
            q,
            exp,
            log,
            add: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.q, "index {index} out of range for F_{}", self.q);
        FieldElement(index)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0, self.p(), self.k() as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.p();
        FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c % p))
    }

    /// The element `t` (class of the polynomial variable), or `1` in a prime field.
    pub fn generator_t(&self) -> FieldElement {
        if self.k() == 1 {
            self.one()
        } else {
            FieldElement(self.p())
        }
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p();
        let (mut a, mut out, mut place) = (a.0, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a.0 as usize]) % (self.q - 1);
        Some(FieldElement(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let l = self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        FieldElement(self.exp[l as usize])
    }

    /// `x^(p^e)`; for `e = k` this is the identity.
    pub fn frobenius_pow(&self, x: FieldElement, e: u32) -> FieldElement {
        let e = e % self.k();
        let mut y = x;
        for _ in 0..e {
            y = self.pow(y, self.p() as u64);
        }
        y
    }

    /// `x^s` for a power `s` of the characteristic, used for `x -> x^q`.
    pub fn pow_char(&self, x: FieldElement, s: u32) -> FieldElement {
        self.pow(x, s as u64)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.0 == 0 || self.p() == 2 || self.log[a.0 as usize] % 2 == 0
    }

    /// Square root with the smaller index, if one exists.
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return Some(a);
        }
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Least element (by index) `z` with `z^2 = -1`.
    pub fn sqrt_minus_one(&self) -> Option<FieldElement> {
        self.sqrt(self.neg(self.one()))
    }

    pub fn half(&self) -> Option<FieldElement> {
        self.inv(self.from_int(2))
    }

    /// Elements fixed by `x -> x^s`, i.e. the subfield of order `s`.
    pub fn subfield(&self, s: u32) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.pow_char(x, s) == x).collect()
    }

    pub fn element_json(&self, x: FieldElement) -> Vec<u32> {
        self.coeffs(x)
    }
}

/// Serializes as a coefficient tuple; needs the field, so wrap the pair.
pub struct WithField<'a, T>(pub &'a Field, pub T);

impl Serialize for WithField<'_, FieldElement> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.coeffs(self.1).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1, None).unwrap();
        assert_eq!(f.spec().modulus, vec![0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        // -1 is a non-square mod 3, so t^2 + 1 is irreducible and is the least candidate
        assert!((0..3u32).all(|x| (x * x) % 3 != 2));
        let f = make_field(3, 2, None).unwrap();
        assert_eq!(f.spec().modulus, vec![1, 0, 1]);
        let t = f.generator_t();
        assert_eq!(f.mul(t, t), f.from_int(-1));
    }

    #[test]
    fn f25_modulus_is_least_irreducible_quadratic() {
        // exhaustive scan: x^2 + b x + c irreducible iff no root in F_5
        let mut least = None;
        'outer: for b in 0..5u32 {
            for c in 0..5u32 {
                if (0..5u32).all(|x| (x * x + b * x + c) % 5 != 0) {
                    least = Some(vec![c, b, 1]);
                    break 'outer;
                }
            }
        }
        let f = make_field(5, 2, None).unwrap();
        assert_eq!(Some(f.spec().modulus.clone()), least);
        assert_eq!(f.spec().modulus, vec![2, 0, 1]);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(make_field(9, 1, None).unwrap_err(), Error::NotPrime(9));
        assert!(make_field(3, 2, Some(&[2, 0, 1])).is_err());
    }

    #[test]
    fn frobenius_of_t_in_f9() {
        let f = make_field(3, 2, None).unwrap();
        let t = f.generator_t();
        assert_eq!(f.frobenius_pow(t, 1), f.neg(t));
        for x in f.elements() {
            assert_eq!(f.frobenius_pow(x, 2), x);
        }
        for a in 0..3 {
            assert_eq!(f.frobenius_pow(f.from_int(a), 1), f.from_int(a));
        }
    }

    #[test]
    fn zeta_fixed_iff_q_1_mod_4() {
        for q in [3u32, 5, 7, 9, 11, 13, 25, 27] {
            let big = field_of_order(q * q).unwrap();
            let z = big.sqrt_minus_one().expect("F_{q^2} contains i");
            let fixed = big.pow_char(z, q) == z;
            assert_eq!(fixed, q % 4 == 1, "q = {q}");
            let small = field_of_order(q).unwrap();
            assert_eq!(small.sqrt_minus_one().is_some(), q % 4 == 1, "q = {q}");
        }
    }

    #[test]
    fn frobenius_is_automorphism_exhaustive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25] {
            let f = field_of_order(q).unwrap();
            for e in 0..f.k() {
                for a in f.elements() {
                    for b in f.elements() {
                        let (fa, fb) = (f.frobenius_pow(a, e), f.frobenius_pow(b, e));
                        assert_eq!(f.frobenius_pow(f.add(a, b), e), f.add(fa, fb));
                        assert_eq!(f.frobenius_pow(f.mul(a, b), e), f.mul(fa, fb));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = field_of_order(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }
}
