//! Exact elements of cyclotomic rings `Z[ζ_n]`, stored as coefficient vectors in
//! the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dl = den.len();
    let mut q = vec![0i64; num.len() + 1 - dl];
    for k in (0..q.len()).rev() {
        let c = r[k + dl - 1] / den[dl - 1];
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            r[k + i] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, ascending.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn reduce(mut coeffs: Vec<i64>, n: u32) -> Vec<i64> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for k in (deg..coeffs.len()).rev() {
        let c = coeffs[k];
        if c != 0 {
            for (i, &p) in phi.iter().enumerate() {
                coeffs[k - deg + i] -= c * p;
            }
        }
    }
    coeffs.resize(deg, 0);
    coeffs
}

#[derive(Debug, Clone, Serialize)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn from_int(n: i64) -> Cyclotomic {
        Cyclotomic {
            order: 1,
            coeffs: vec![n],
        }
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic::from_int(0)
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_int(1)
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Cyclotomic {
        let mut c = vec![0i64; n as usize];
        c[k.rem_euclid(n as i64) as usize] = 1;
        Cyclotomic {
            order: n,
            coeffs: reduce(c, n),
        }
    }

    /// `i = ζ_4`.
    pub fn i() -> Cyclotomic {
        Cyclotomic::zeta(4, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Re-expresses in `Z[ζ_m]` for a multiple `m` of the current order.
    pub fn lift(&self, m: u32) -> Cyclotomic {
        assert_eq!(m % self.order, 0, "{m} is not a multiple of {}", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut c = vec![0i64; m as usize];
        for (k, &x) in self.coeffs.iter().enumerate() {
            c[k * step] += x;
        }
        Cyclotomic {
            order: m,
            coeffs: reduce(c, m),
        }
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm(self.order, other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let n = a.order;
        let mut c = vec![0i64; 2 * a.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Cyclotomic {
            order: n,
            coeffs: reduce(c, n),
        }
    }

    pub fn scale(&self, k: i64) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * k).collect(),
        }
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.order;
        let mut c = vec![0i64; n as usize];
        for (k, &x) in self.coeffs.iter().enumerate() {
            c[(n as usize - k) % n as usize] += x;
        }
        Cyclotomic {
            order: n,
            coeffs: reduce(c, n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }

    /// The rational integer value, if this is one.
    pub fn as_int(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&x| x == 0).then_some(self.coeffs[0])
    }

    /// Canonical form in the smallest order among divisors of the current one.
    pub fn normalized(&self) -> Cyclotomic {
        let n = self.order;
        for d in 1..=n {
            if n % d == 0 {
                if let Some(c) = self.descend(d) {
                    return c;
                }
            }
        }
        self.clone()
    }

    fn descend(&self, d: u32) -> Option<Cyclotomic> {
        // a candidate read off the monomials ζ_n^{k n/d}, accepted if it lifts back
        let n = self.order;
        let step = (n / d) as usize;
        let phi_d = cyclotomic_poly(d).len() - 1;
        let mut c = vec![0i64; phi_d];
        for (k, slot) in c.iter_mut().enumerate() {
            *slot = *self.coeffs.get(k * step).unwrap_or(&0);
        }
        let cand = Cyclotomic { order: d, coeffs: c };
        (cand.lift(n) == *self).then_some(cand)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.normalized();
        if let Some(v) = c.as_int() {
            return write!(f, "{v}");
        }
        let mut terms = Vec::new();
        for (k, &x) in c.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mono = match (k, c.order) {
                (0, _) => String::new(),
                (1, 4) => "i".to_string(),
                (1, n) => format!("z{n}"),
                (k, n) => format!("z{n}^{k}"),
            };
            terms.push(match (x, mono.is_empty()) {
                (x, true) => x.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                (x, false) => format!("{x}*{mono}"),
            });
        }
        write!(f, "{}", terms.join("+").replace("+-", "-"))
    }
}

/// Square matrices with cyclotomic entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zeros(n: usize) -> CycMatrix {
        CycMatrix {
            n,
            data: vec![Cyclotomic::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> CycMatrix {
        let mut m = CycMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> CycMatrix {
        let n = rows.len();
        let mut m = CycMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, Cyclotomic::from_int(x));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        let n = self.n;
        let mut out = CycMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> CycMatrix {
        CycMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> CycMatrix {
        self.scale(&Cyclotomic::from_int(-1))
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).fold(Cyclotomic::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let n = self.n * other.n;
        let mut out = CycMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        out.set(i * other.n + k, j * other.n + l, a.mul(other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn is_scalar(&self, c: &Cyclotomic) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v == c
                } else {
                    v.is_zero()
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let i = Cyclotomic::i();
        assert_eq!(i.mul(&i), Cyclotomic::from_int(-1));
        let z = Cyclotomic::zeta(6, 1);
        let mut acc = Cyclotomic::one();
        for _ in 0..6 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, Cyclotomic::one());
        assert_eq!(Cyclotomic::zeta(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(z.mul(&z.conj()), Cyclotomic::one());
        // sum of all n-th roots of unity is zero
        let s = (0..10).fold(Cyclotomic::zero(), |a, k| a.add(&Cyclotomic::zeta(10, k)));
        assert!(s.is_zero());
    }

    #[test]
    fn mixed_orders() {
        let a = Cyclotomic::zeta(4, 1).add(&Cyclotomic::zeta(3, 1));
        let b = Cyclotomic::zeta(12, 3).add(&Cyclotomic::zeta(12, 4));
        assert_eq!(a, b);
        assert_eq!(Cyclotomic::zeta(12, 6).as_int(), Some(-1));
        assert_eq!(Cyclotomic::zeta(12, 3).normalized().order(), 4);
        assert_eq!(format!("{}", Cyclotomic::i().scale(-2)), "-2*i");
    }
}
