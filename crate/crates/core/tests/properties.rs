use proptest::prelude::*;
use springer_core::cyclotomic::Cyclotomic;
use springer_core::ffield::field_of_order;
use springer_core::partitions::{
    enumerate_XN, enumerate_tilde_XN, is_in_tilde_xn, is_in_xn, partition_count, partitions_of, Partition,
};
use springer_core::restriction::{branch_two_step, remove_one_box};
use springer_core::Matrix;

const ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..8, 0..7).prop_map(Partition::new)
}

proptest! {
    #[test]
    fn conjugate_is_an_involution(l in partition()) {
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.len() as u32, l.parts().iter().copied().max().unwrap_or(0));
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn label_round_trips(l in partition()) {
        if !l.is_empty() {
            prop_assert_eq!(l.label().parse::<Partition>().unwrap(), l);
        }
    }

    #[test]
    fn removable_boxes_match_distinct_parts(l in partition()) {
        let smaller = remove_one_box(&l);
        let mut distinct = l.parts().to_vec();
        distinct.dedup();
        prop_assert_eq!(smaller.len(), distinct.len());
        for s in &smaller {
            prop_assert_eq!(s.size() + 1, l.size());
        }
    }

    #[test]
    fn xn_is_inside_tilde(l in partition()) {
        if is_in_xn(&l) {
            prop_assert!(is_in_tilde_xn(&l));
        }
    }

    #[test]
    fn branching_agrees_with_case_table(l in partition(), pick in 0usize..64) {
        if l.size() >= 2 {
            let targets = partitions_of(l.size() - 2);
            let lp = &targets[pick % targets.len()];
            let r = branch_two_step(&l, lp).unwrap();
            prop_assert!(r.agrees(), "{} -> {}: {} paths vs {}", l, lp, r.multiplicity, r.table_value);
        }
    }

    #[test]
    fn field_axioms(oi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = ORDERS[oi];
        let f = field_of_order(q).unwrap();
        let (a, b, c) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.frobenius_pow(a, f.k()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn determinant_is_multiplicative(oi in 0usize..4, xs in prop::collection::vec(any::<u32>(), 18)) {
        let q = ORDERS[oi];
        let f = field_of_order(q).unwrap();
        let m = |s: &[u32]| Matrix::from_rows(s.chunks(3).map(|r| r.iter().map(|&x| f.element(x % q)).collect()).collect());
        let (a, b) = (m(&xs[..9]), m(&xs[9..]));
        prop_assert_eq!(a.mul(&f, &b).det(&f), f.mul(a.det(&f), b.det(&f)));
        if let Some(inv) = a.inverse(&f) {
            prop_assert_eq!(a.mul(&f, &inv), Matrix::identity(&f, 3));
        } else {
            prop_assert!(a.det(&f).is_zero());
        }
    }

    #[test]
    fn roots_of_unity(n in 2u32..25, k in -50i64..50) {
        let z = Cyclotomic::zeta(n, k);
        prop_assert_eq!(z.mul(&Cyclotomic::zeta(n, -k)), Cyclotomic::one());
        prop_assert_eq!(z.conj(), Cyclotomic::zeta(n, -k));
        let total = (0..n as i64).fold(Cyclotomic::zero(), |s, j| s.add(&Cyclotomic::zeta(n, j)));
        prop_assert!(total.is_zero());
    }
}

#[test]
fn partition_counts() {
    let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    for (n, &p) in known.iter().enumerate() {
        assert_eq!(partition_count(n as u32), p);
        assert_eq!(partitions_of(n as u32).len() as u64, p);
    }
}

#[test]
fn small_xn() {
    let labels = |v: Vec<Partition>| v.iter().map(|l| l.label()).collect::<Vec<_>>();
    assert_eq!(labels(enumerate_XN(5)), ["5", "1,2,2"]);
    assert_eq!(labels(enumerate_XN(4)), ["2,2", "1,3"]);
    assert!(enumerate_XN(2).is_empty());
    assert_eq!(labels(enumerate_tilde_XN(2)), ["1,1"]);
}
