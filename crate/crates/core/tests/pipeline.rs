use num_bigint::BigInt;
use proptest::prelude::*;

use e10_core::borcherds::{multiplicity_table, PetersonSolver};
use e10_core::lattice::{delta, enumerate_positive_roots, to_fundamental_domain, LatticeVector, WeylWord, RANK};
use e10_core::qseries::{eisenstein, f_e10, CoeffTable};
use e10_core::{rank2, PowerSeries};

#[test]
fn coefficient_table_round_trip() {
    let f = f_e10(30);
    let t = CoeffTable::from_series("f", &f);
    let back = CoeffTable::from_json(&t.to_json()).unwrap().to_series().unwrap();
    assert_eq!(back, f);
    let mut stale = t.clone();
    stale.version += 1;
    assert!(stale.to_series().is_err());
}

#[test]
fn peterson_memo_transfers() {
    let mut a = PetersonSolver::new(6);
    let rows = multiplicity_table(6, &mut a, false).unwrap();
    let memo = a.export();
    let json = serde_json::to_string(&memo).unwrap();
    let mut b = PetersonSolver::new(6);
    b.import(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(b.memo_len(), a.memo_len());
    for r in &rows {
        assert_eq!(b.multiplicity(&r.root).unwrap(), r.peterson);
    }
}

#[test]
fn classical_identity() {
    let e4 = eisenstein(4, 30).unwrap();
    let e6 = eisenstein(6, 30).unwrap();
    let lhs = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap());
    let d = e10_core::qseries::delta12(30).scale(&BigInt::from(1728));
    assert_eq!(lhs, d);
}

#[test]
fn rank2_export_keys() {
    let p = rank2::product_side_rank2(6).unwrap();
    for ((x, y), _) in p.xy_terms() {
        let v = rank2::QSqrt5::from_frac(x, 10, y, 10);
        assert!(rank2::in_inverse_different(&v));
    }
    assert!(p.xy_terms().iter().any(|(k, v)| *k == (5, 1) && *v == BigInt::from(1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_preserves_norm(i in 0usize..200) {
        // the lowest imaginary root is delta, so shift real roots by it
        let roots: Vec<_> = enumerate_positive_roots(6).into_iter().map(|r| r.add(&delta())).filter(|r| r.qnorm() <= 0).collect();
        let r = roots[i % roots.len()];
        let (d, w) = to_fundamental_domain(&r).unwrap();
        prop_assert_eq!(d.qnorm(), r.qnorm());
        prop_assert_eq!(w.apply(&r), d);
        prop_assert!(d.in_fundamental_domain());
    }

    #[test]
    fn weyl_words_are_isometries(letters in proptest::collection::vec(-1i32..=8, 0..12), c in proptest::array::uniform10(-5i64..=5)) {
        let w = WeylWord::new(letters).unwrap();
        let v = LatticeVector(c);
        let u = LatticeVector([1, 0, 2, 0, 0, 1, 0, 0, 3, 0]);
        prop_assert_eq!(w.apply(&v).bilinear(&w.apply(&u)), v.bilinear(&u));
        prop_assert_eq!(RANK, 10);
    }

    #[test]
    fn series_ring_laws(a in proptest::collection::vec(-9i64..9, 1..8), b in proptest::collection::vec(-9i64..9, 1..8), c in proptest::collection::vec(-9i64..9, 1..8)) {
        let (a, b, c) = (PowerSeries::from_ints(0, &a, 8), PowerSeries::from_ints(1, &b, 8), PowerSeries::from_ints(-1, &c, 8));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}
