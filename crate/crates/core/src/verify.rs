//! Verification suites: each one sweeps a range of instances and reports
//! every mismatch instead of stopping at the first.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::clifford::{gamma_generators, orthonormalize_block, QuadSpace};
use crate::component_groups::{CentralCharacter, ComponentGroup};
use crate::error::{Error, Result};
use crate::ffield::{field_of_order, prime_power};
use crate::partitions::{
    classify_pair_spin, enumerate_XN, enumerate_tilde_XN, partitions_of, Partition, SpinCase,
};
use crate::restriction::{branch_two_step, restriction_crosscheck_sl};
use crate::springer::{verify_series_cardinality, xi_is_f_stable};
use crate::tables::{exponents, row_inner_product, sl_series_dims, spin_series_table, y0_table_sl, Y0Table};
use crate::varieties::{
    case_v_family, enumerate_flags_so, expected_strata_sl, sl_flag_variety, split_flag_so, split_flag_sl, strata,
    Subspace,
};
use crate::split::{build_sl_split, build_so_split, SplitSOData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Xn,
    SpinSeries,
    Clifford,
    Center,
    Orthonormal,
    Characters,
    Split,
    Flags,
    Restriction,
    Tables,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Xn,
        Suite::SpinSeries,
        Suite::Clifford,
        Suite::Center,
        Suite::Orthonormal,
        Suite::Characters,
        Suite::Split,
        Suite::Flags,
        Suite::Restriction,
        Suite::Tables,
    ];

    pub fn number(self) -> u8 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Xn => "xn",
            Suite::SpinSeries => "spin-series",
            Suite::Clifford => "clifford",
            Suite::Center => "center",
            Suite::Orthonormal => "orthonormal",
            Suite::Characters => "characters",
            Suite::Split => "split",
            Suite::Flags => "flags",
            Suite::Restriction => "restriction",
            Suite::Tables => "tables",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Context that is not a failure (skipped instances, alternative readings).
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Ranges for the suites; the defaults are the full sweeps.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max_spin: u32,
    pub budget: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max_spin: 20,
            budget: crate::varieties::DEFAULT_BUDGET,
        }
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let mut t = Tally::new();
    match suite {
        Suite::Xn => xn_suite(&mut t),
        Suite::SpinSeries => spin_series_suite(&mut t, cfg.n_max_spin),
        Suite::Clifford => clifford_suite(&mut t),
        Suite::Center => center_suite(&mut t),
        Suite::Orthonormal => orthonormal_suite(&mut t),
        Suite::Characters => characters_suite(&mut t),
        Suite::Split => split_suite(&mut t),
        Suite::Flags => flags_suite(&mut t, cfg.budget),
        Suite::Restriction => restriction_suite(&mut t, cfg.budget),
        Suite::Tables => tables_suite(&mut t),
    }
    SuiteReport {
        suite,
        checked: t.checked,
        failures: t.failures,
        notes: t.notes,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn parts(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

fn xn_suite(t: &mut Tally) {
    let cases = [(5, vec![parts(&[5]), parts(&[1, 2, 2])]), (4, vec![parts(&[2, 2]), parts(&[1, 3])])];
    for (n, want) in cases {
        let got: BTreeSet<Partition> = enumerate_XN(n).into_iter().collect();
        let want: BTreeSet<Partition> = want.into_iter().collect();
        t.check(got == want, || format!("X_{n} = {got:?}"));
    }
}

fn spin_series_suite(t: &mut Tally, n_max: u32) {
    for n in 3..=n_max {
        let r = verify_series_cardinality(n);
        for s in &r.series {
            t.check(s.ok, || {
                format!("N={n} d={}: {} classes vs {} bipartitions", s.d, s.classes, s.bipartitions)
            });
        }
        t.check(r.stray.is_empty(), || format!("N={n}: classes outside every series {:?}", r.stray));
    }
}

fn clifford_suite(t: &mut Tally) {
    for q in [3, 5, 9] {
        for n in 1..=13 {
            for lambda in enumerate_XN(n) {
                if let Some(r) = t.result(gamma_generators(&lambda, q), || format!("{lambda} q={q}")) {
                    t.check(r.relations_hold(), || format!("relations fail for {lambda} q={q}"));
                }
            }
        }
    }
}

fn center_suite(t: &mut Tally) {
    for q in [3, 5] {
        for (n, split, want) in [(4, true, 1), (4, false, -1), (8, true, 1), (8, false, -1)] {
            let r = QuadSpace::standard(n, q, split).and_then(|s| s.frobenius_on_center());
            if let Some(c) = t.result(r, || format!("N={n} q={q}")) {
                t.check(c.epsilon_fixed && c.omega_sign == Some(want), || {
                    format!("N={n} q={q} split={split}: F(ω) sign {:?}", c.omega_sign)
                });
            }
        }
        for n in [5, 6, 7] {
            let r = QuadSpace::standard(n, q, true).and_then(|s| s.frobenius_on_center());
            if let Some(c) = t.result(r, || format!("N={n} q={q}")) {
                t.check(c.epsilon_fixed && c.omega_sign.unwrap_or(1) == 1, || {
                    format!("N={n} q={q}: F not trivial on the center ({c:?})")
                });
            }
        }
    }
}

fn orthonormal_suite(t: &mut Tally) {
    for q in [3u32, 5, 7, 9] {
        let big = match field_of_order(q * q) {
            Ok(f) => f,
            Err(e) => {
                t.result::<()>(Err(e), || format!("F_{}", q * q));
                continue;
            }
        };
        for h in [1, 3, 5, 7] {
            for c in 0..2 {
                if let Some(b) = t.result(orthonormalize_block(&big, q, h, c), || format!("h={h} c={c} q={q}")) {
                    t.check(b.orthonormal, || format!("h={h} c={c} q={q}: basis not orthonormal"));
                }
            }
        }
        for n in 1..=13 {
            for lambda in enumerate_XN(n) {
                let Some(r) = t.result(gamma_generators(&lambda, q), || format!("{lambda} q={q}")) else {
                    continue;
                };
                for g in &r.generators {
                    let e = (g.part as i64 - 1) / 2 + 1 + g.index as i64;
                    let want = if q % 4 == 1 || e % 2 == 0 { 1 } else { -1 };
                    t.check(g.frobenius_sign == want, || {
                        format!("{lambda} q={q} j={}: F-sign {} expected {want}", g.index, g.frobenius_sign)
                    });
                }
            }
        }
    }
}

/// `λ = (1, 3, 5, …)` with `m` odd parts.
fn odd_staircase(m: u32) -> Partition {
    Partition::new((0..m).map(|k| 2 * k + 1).collect())
}

fn characters_suite(t: &mut Tally) {
    for m in 0..=6u32 {
        let lambda = odd_staircase(m);
        let Some(g) = t.result(ComponentGroup::spin_gamma(&lambda, None), || format!("Γ for {lambda}")) else {
            continue;
        };
        let Some(chars) = t.result(
            g.irreducibles_with_central_character(CentralCharacter::Spin { epsilon: -1 }),
            || format!("characters of Γ for {lambda}"),
        ) else {
            continue;
        };
        let order = g.order();
        // G/⟨ε⟩ is abelian, so the ε ↦ -1 part has (#classes - |G|/2) members
        let brute_count = g.conjugacy_classes().len() - order / 2;
        let (want_count, want_dim) = if m % 2 == 1 {
            (1, 1u32 << ((m - 1) / 2))
        } else if m == 0 {
            (1, 1)
        } else {
            (2, 1u32 << ((m - 2) / 2))
        };
        if m == 0 {
            t.notes.push("|I| = 0: the trivial group has the single sign character".into());
        } else {
            t.check(brute_count == want_count, || format!("|I|={m}: brute-force count {brute_count}"));
        }
        t.check(chars.len() == want_count, || format!("|I|={m}: {} characters", chars.len()));
        for c in &chars {
            t.check(c.dimension == want_dim, || format!("|I|={m}: dimension {}", c.dimension));
            let norm = g.inner_product_scaled(&c.values, &c.values);
            t.check(norm.as_int() == Some(order as i64), || format!("|I|={m}: {} is not irreducible", c.label));
        }
        let squares: u64 = chars.iter().map(|c| (c.dimension as u64).pow(2)).sum();
        if m > 0 {
            t.check(squares == order as u64 / 2, || format!("|I|={m}: Σ dim² = {squares}"));
        }
    }
    for n in 1..=10u32 {
        for q in [11u32, 13] {
            let (p, _) = prime_power(q).unwrap();
            for d in (1..=n).filter(|d| n % d == 0) {
                for lambda in partitions_of(n) {
                    let Some(g) = t.result(ComponentGroup::sl_cyclic(&lambda, q), || format!("A for {lambda}")) else {
                        continue;
                    };
                    let n_prime = p_free(n, p);
                    if n_prime % d != 0 {
                        continue;
                    }
                    let index = n_prime / d % n_prime;
                    let got = g
                        .irreducibles_with_central_character(CentralCharacter::Cyclic { index })
                        .map(|c| c.len())
                        .unwrap_or(usize::MAX);
                    // exhaustive: characters k of Z/|A| whose pullback to Z/n' is ξ
                    let a = g.order() as u32;
                    let brute = (0..a)
                        .filter(|&k| (k * (n_prime / a)) % n_prime == index)
                        .count();
                    let closed = usize::from(lambda.parts().iter().all(|&x| x % d == 0));
                    t.check(got == brute && got == closed, || {
                        format!("{lambda} d={d} q={q}: {got} characters, search {brute}, closed form {closed}")
                    });
                }
            }
        }
    }
}

fn p_free(mut n: u32, p: u32) -> u32 {
    while n % p == 0 {
        n /= p;
    }
    n
}

fn split_suite(t: &mut Tally) {
    for q in [3u32, 4, 5, 9] {
        for n in 1..=10 {
            for lambda in partitions_of(n) {
                if let Some(d) = t.result(build_sl_split(&lambda, q, None), || format!("SL {lambda} q={q}")) {
                    t.check(d.checks.all(), || format!("SL {lambda} q={q}: {:?}", d.checks));
                }
            }
            if q % 2 == 0 {
                continue;
            }
            for lambda in enumerate_tilde_XN(n) {
                if let Some(d) = t.result(build_so_split(&lambda, q), || format!("SO {lambda} q={q}")) {
                    t.check(d.checks.all(), || format!("SO {lambda} q={q}: {:?}", d.checks));
                }
            }
        }
    }
    t.notes.push("orthogonal forms are skipped for q = 4 (characteristic 2)".into());
}

fn divisible(l: &Partition, d: u32) -> bool {
    l.parts().iter().all(|&x| x % d == 0)
}

/// The `SL_n` pairs `(λ, λ')` of the desk-scale sweeps that fall into some case.
pub fn sl_case_pairs(n_max: u32, d: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for n in (2 * d)..=n_max {
        for lambda in partitions_of(n).into_iter().filter(|l| divisible(l, d)) {
            for lambda_p in partitions_of(n - 2 * d).into_iter().filter(|l| divisible(l, d)) {
                if matches!(expected_strata_sl(&lambda, &lambda_p, d), Ok((Some(_), _))) {
                    out.push((lambda.clone(), lambda_p));
                }
            }
        }
    }
    out
}

fn flags_suite(t: &mut Tally, budget: u128) {
    for q in [3u32, 4] {
        let Some(f) = t.result(field_of_order(q), || format!("F_{q}")) else {
            continue;
        };
        for d in [1u32, 2] {
            for (lambda, lambda_p) in sl_case_pairs(6, d) {
                let tag = format!("SL {lambda} -> {lambda_p} d={d} q={q}");
                let Some((_, expected)) = t.result(expected_strata_sl(&lambda, &lambda_p, d), || tag.clone()) else {
                    continue;
                };
                let Some(flags) = t.result(sl_flag_variety(&lambda, d as usize, &lambda_p, &f, budget), || tag.clone())
                else {
                    continue;
                };
                let got: Vec<Partition> = strata(&flags).into_keys().collect();
                let mut want = expected.clone();
                want.sort();
                t.check(got == want, || format!("{tag}: strata {got:?}, expected {want:?}"));
                let Some(data) = t.result(build_sl_split(&lambda, q, None), || tag.clone()) else {
                    continue;
                };
                if let Some(split) = t.result(split_flag_sl(&data, &lambda_p, d), || tag.clone()) {
                    for s in split {
                        t.check(s.ok(), || {
                            format!(
                                "{tag}: split flag {} lands in {} (expected {}), F-stable {}, conditions {}",
                                s.label,
                                s.stratum,
                                s.expected_stratum,
                                s.f_stable,
                                s.check.all()
                            )
                        });
                    }
                }
            }
        }
    }
    for q in [3u32, 5] {
        for n in 5..=8 {
            for lambda in enumerate_XN(n) {
                for lambda_p in partitions_of(n - 4) {
                    let Ok(c) = classify_pair_spin(&lambda, &lambda_p) else {
                        continue;
                    };
                    if !matches!(c.tag, Some(SpinCase::I | SpinCase::IV | SpinCase::V)) {
                        continue;
                    }
                    so_closed_form(t, &lambda, &lambda_p, q, budget);
                }
            }
        }
    }
}

fn block_support(data: &SplitSOData, blocks: &[usize]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &j in blocks {
        let h = data.lambda.part(j) as usize;
        for a in 1..=h {
            if let Some(k) = data.basis_index(j, a) {
                out.insert(k);
            }
        }
    }
    out
}

fn supported_in(e: &Subspace, support: &BTreeSet<usize>) -> bool {
    e.basis()
        .iter()
        .all(|v| v.iter().enumerate().all(|(k, c)| c.is_zero() || support.contains(&k)))
}

fn so_closed_form(t: &mut Tally, lambda: &Partition, lambda_p: &Partition, q: u32, budget: u128) {
    let tag = format!("SO {lambda} -> {lambda_p} q={q}");
    let Some(data) = t.result(build_so_split(lambda, q), || tag.clone()) else {
        return;
    };
    let Some(flags) = t.result(enumerate_flags_so(&data, lambda_p, budget), || tag.clone()) else {
        return;
    };
    let Some(split) = t.result(split_flag_so(&data, lambda_p), || tag.clone()) else {
        return;
    };
    let enumerated: BTreeSet<Subspace> = flags.iter().map(|fl| fl.e.clone()).collect();
    match split.case {
        SpinCase::I | SpinCase::IV => {
            let closed: BTreeSet<Subspace> = split.flags.iter().map(|(_, e)| e.clone()).collect();
            t.check(enumerated == closed, || {
                format!("{tag} case {:?}: {} flags, closed form has {}", split.case, enumerated.len(), closed.len())
            });
        }
        SpinCase::V => {
            let i = split.pivot;
            let f = &*data.field;
            let e1 = data.basis_index(i + 1, 1).unwrap_or(0);
            let support = block_support(&data, &[i, i + 1, i + 2]);
            let through_e1: BTreeSet<Subspace> = enumerated
                .iter()
                .filter(|e| e.contains(f, &unit(f, data.gram().rows(), e1)) && supported_in(e, &support))
                .cloned()
                .collect();
            let family = |sign: i64| -> BTreeSet<Subspace> {
                case_v_family(&data, i, sign).map(|v| v.into_iter().collect()).unwrap_or_default()
            };
            let (plus, minus) = (family(1), family(-1));
            t.check(through_e1 == plus, || {
                format!(
                    "{tag} case V: the α = β²(e'_1, e'_(h-1))/2 family does not match the {} flags through e_1 (the α = -β²(e'_1, e'_(h-1))/2 family {})",
                    through_e1.len(),
                    if through_e1 == minus { "does" } else { "does not either" }
                )
            });
        }
        _ => {}
    }
}

fn unit(f: &crate::ffield::Field, n: usize, k: usize) -> Vec<crate::ffield::FieldElement> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

fn restriction_suite(t: &mut Tally, budget: u128) {
    for m in 2..=8 {
        for mu in partitions_of(m) {
            for mu_p in partitions_of(m - 2) {
                if let Some(b) = t.result(branch_two_step(&mu, &mu_p), || format!("{mu} -> {mu_p}")) {
                    t.check(b.agrees(), || {
                        format!("{mu} -> {mu_p}: {} paths, table value {} ({:?})", b.multiplicity, b.table_value, b.case)
                    });
                }
            }
        }
    }
    for q in [3u32, 4] {
        for d in [1u32, 2] {
            for n in (2 * d)..=6 {
                for lambda in partitions_of(n).into_iter().filter(|l| divisible(l, d)) {
                    for lambda_p in partitions_of(n - 2 * d).into_iter().filter(|l| divisible(l, d)) {
                        let tag = format!("{lambda} -> {lambda_p} d={d} q={q}");
                        if let Some(r) = t.result(restriction_crosscheck_sl(&lambda, &lambda_p, d, q, budget), || tag.clone()) {
                            t.check(r.passed(), || {
                                let s: Vec<String> = r.strata.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                                format!("{tag}: {} strata [{}] vs multiplicity {}", r.lhs, s.join(" "), r.rhs)
                            });
                        }
                    }
                }
            }
        }
    }
}

fn check_table(t: &mut Tally, table: &Y0Table, context: &str) {
    for row in &table.rows {
        let tag = format!("{context} {} {}", row.lambda, row.rho);
        t.check(row.identity_value().as_int() == Some(row.dimension as i64), || {
            format!("{tag}: identity value {}, dimension {}", row.identity_value(), row.dimension)
        });
        t.check(row.exponents.consistent() && row.exponents.even, || format!("{tag}: exponents {:?}", row.exponents));
    }
    for (k, a) in table.rows.iter().enumerate() {
        for b in &table.rows[k + 1..] {
            if a.lambda == b.lambda && a.tau_trivial {
                let ip = row_inner_product(a, b);
                t.check(ip.is_zero(), || format!("{context} {}: rows {} and {} not orthogonal", a.lambda, a.rho, b.rho));
            }
        }
    }
}

fn tables_suite(t: &mut Tally) {
    for q in [3u32, 4, 5, 7] {
        let (p, _) = prime_power(q).unwrap();
        for n in 2..=10u32 {
            let n_prime = p_free(n, p);
            for d in (1..=n_prime).filter(|d| n_prime % d == 0) {
                match crate::tables::sl_series_table(n, d, q) {
                    Ok(table) => {
                        check_table(t, &table, &format!("SL_{n} q={q} d={d}"));
                        if d == 1 {
                            for row in &table.rows {
                                t.check(row.values.iter().all(|v| v.as_int() == Some(1)), || {
                                    format!("SL_{n} q={q} {}: trivial row not all ones", row.lambda)
                                });
                            }
                        }
                    }
                    Err(Error::NotFStable(_)) => {
                        let stable = xi_is_f_stable(n_prime, n_prime / d, q);
                        t.check(!stable, || format!("SL_{n} q={q} d={d}: refused although ξ is F-stable"));
                    }
                    Err(e) => t.check(false, || format!("SL_{n} q={q} d={d}: {e}")),
                }
            }
        }
        // an order-3 character with 3 ∤ q + 1 must be refused
        if (q + 1) % 3 != 0 && q % 3 != 0 {
            let r = y0_table_sl(&parts(&[3, 3]), 3, q);
            t.check(matches!(r, Err(Error::NotFStable(_))), || format!("SL_6 d=3 q={q} not refused: {r:?}"));
        }
    }
    for q in [3u32, 5] {
        for n in 3..=13 {
            match spin_series_table(n, None, q, true) {
                Ok(table) => check_table(t, &table, &format!("Spin_{n} q={q}")),
                Err(e) => t.check(false, || format!("Spin_{n} q={q}: {e}")),
            }
        }
        let r = spin_series_table(5, None, q, false);
        t.check(matches!(r, Err(Error::NotFStable(_))), || format!("non-split Spin_5 q={q} not refused"));
    }
    let s = sl_series_dims(2, 1).expect("SL_2 series");
    for (l, want) in [(parts(&[2]), 0), (parts(&[1, 1]), 2)] {
        let got = exponents(&s, &l).map(|e| e.sum);
        t.check(got == Ok(want), || format!("SL_2 {l}: a0 + r = {got:?}, expected {want}"));
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, cfg)).collect()
}
