use springer_core::clifford::gamma_generators;
use springer_core::partitions::{enumerate_XN, enumerate_tilde_XN, partitions_of, Partition};
use springer_core::split::{build_sl_split, build_so_split};
use springer_core::springer::enumerate_spin_series;
use springer_core::tables::{sl_series_table, spin_series_table};
use springer_core::Error;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn sl_split_checks_hold() {
    for q in [2, 3, 4, 5] {
        for n in 1..=5 {
            for l in partitions_of(n) {
                let data = build_sl_split(&l, q, None).unwrap();
                assert!(data.checks.all(), "{l} q={q}: {:?}", data.checks);
            }
        }
    }
}

#[test]
fn so_split_checks_hold() {
    for q in [3, 5, 7] {
        for n in 1..=8 {
            for l in enumerate_tilde_XN(n) {
                let data = build_so_split(&l, q).unwrap();
                assert!(data.checks.all(), "{l} q={q}: {:?}", data.checks);
            }
        }
    }
}

#[test]
fn clifford_generators() {
    for n in 1..=9 {
        for l in enumerate_XN(n) {
            let g = gamma_generators(&l, 3).unwrap();
            assert!(g.relations_hold() && g.signs_match(), "{l}");
        }
    }
}

#[test]
fn series_cover_small_cases() {
    // N = 6: d = 2 is cuspidal (6 = 2*3); d = -2 would need 10 <= 6
    let s = enumerate_spin_series(6);
    assert_eq!(s.iter().map(|c| (c.d, c.weyl_rank)).collect::<Vec<_>>(), [(2, 0)]);
    let s = enumerate_spin_series(3);
    assert!(s.iter().any(|c| c.d == -1 && c.weyl_rank == 0));
}

#[test]
fn sl_table_values() {
    let t = sl_series_table(4, 2, 5).unwrap();
    assert_eq!(t.rows.len(), 2);
    for r in &t.rows {
        assert!(r.exponents.consistent());
        assert_eq!(r.identity_value().as_int(), Some(r.dimension as i64));
    }
    let (a, b) = (&t.rows[0], &t.rows[1]);
    assert_eq!(a.lambda, p("2,2"));
    assert_eq!(b.lambda, p("4"));
}

#[test]
fn refusals() {
    assert!(matches!(sl_series_table(3, 3, 4), Err(Error::NotFStable { .. })));
    assert!(spin_series_table(10, None, 3, false).is_err());
}
