//! Property tests for algebraic invariants.

use std::sync::{Arc, OnceLock};

use lambdabench::bott_ring::{minimal_inverse, verify_bott_identities, verify_bott_multiplier, CyclicQuotientRing};
use lambdabench::characters::{adams, character_table, verify_periodicity, CharacterTable};
use lambdabench::exact::{det_bareiss, int_matrix, lattice_contains, valuation, CommRing, Cyclotomic, Rational};
use lambdabench::gamma_lattices::{multiset_count, preimage_lattice, sym_power_orbit_summary, verify_lattice_compatibility, GammaLattice};
use lambdabench::groups::{catalog_up_to, conjugacy_classes, cyclic};
use lambdabench::partitions::Partition;
use lambdabench::quad_fields::{verify_different_sequence, QuadraticField};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn tables() -> &'static Vec<CharacterTable> {
    static TABLES: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        catalog_up_to(12)
            .into_iter()
            .map(|g| character_table(&Arc::new(conjugacy_classes(&Arc::new(g)))).unwrap())
            .collect()
    })
}

fn cyclotomic(m: u32, coeffs: &[i64]) -> Cyclotomic {
    let raw: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
    Cyclotomic::normalize(&raw, m)
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 12, 15])
}

fn element(m: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-5i64..=5, m as usize).prop_map(move |c| cyclotomic(m, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bott_wraparound_and_augmentation(m in 1usize..30, k in 1u64..40) {
        let ring = CyclicQuotientRing::new(m).unwrap();
        let theta = ring.bott_element(k).unwrap();
        prop_assert_eq!(theta.augmentation(), k as i64);
        let wrapped = ring.bott_element(k + m as u64).unwrap();
        prop_assert_eq!(wrapped, ring.add(&theta, &ring.norm_element()));
        prop_assert!(verify_bott_multiplier(m, k).unwrap().passed);
    }

    #[test]
    fn bott_identities_hold_for_units(m in 1usize..40, k in 1u64..60) {
        if let Ok(kp) = minimal_inverse(k, m as u64) {
            prop_assert_eq!((k * kp) % m as u64, 1 % m as u64);
            prop_assert!(verify_bott_identities(m, k, kp).unwrap().passed);
            prop_assert!(verify_bott_identities(m, k, kp + m as u64).unwrap().passed);
        } else {
            prop_assert!(num_integer::gcd(k, m as u64) > 1);
        }
    }

    #[test]
    fn cyclotomic_ring_axioms((a, b, c) in conductor().prop_flat_map(|m| (element(m), element(m), element(m)))) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero_elem());
    }

    #[test]
    fn conjugation_is_a_ring_involution((a, b) in conductor().prop_flat_map(|m| (element(m), element(m)))) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.mul_ref(&b).conjugate(), a.conjugate().mul_ref(&b.conjugate()));
        prop_assert!(a.mul_ref(&a.conjugate()).conjugate() == a.mul_ref(&a.conjugate()));
    }

    #[test]
    fn embedding_is_a_ring_map((a, b) in conductor().prop_flat_map(|m| (element(m), element(m))), s in 1u32..4) {
        let target = a.conductor() * s;
        prop_assert_eq!(a.mul_ref(&b).embed(target), a.embed(target).mul_ref(&b.embed(target)));
        prop_assert_eq!(a.add_ref(&b).embed(target), a.embed(target).add_ref(&b.embed(target)));
    }

    #[test]
    fn pairing_is_hermitian(g in 0usize..28, i in 0usize..10, j in 0usize..10) {
        let t = &tables()[g % tables().len()];
        let (x, y) = (t.row(i % t.len()), t.row(j % t.len()));
        prop_assert_eq!(x.pairing(y).unwrap(), y.pairing(x).unwrap().conjugate());
        let expected = if i % t.len() == j % t.len() { BigInt::one() } else { BigInt::zero() };
        prop_assert_eq!(x.pairing_int(y).unwrap(), expected);
    }

    #[test]
    fn adams_is_periodic_in_the_exponent(g in 0usize..28, k in -30i64..30) {
        let t = &tables()[g % tables().len()];
        prop_assert!(verify_periodicity(t, k).passed);
        let e = t.classes().exponent() as i64;
        for chi in t.rows() {
            prop_assert_eq!(adams(chi, k), adams(chi, k + e));
            prop_assert_eq!(adams(chi, 1), chi.clone());
        }
    }

    #[test]
    fn orbit_sizes_sum_to_monomial_count(g in 0usize..28, n in 1usize..3, ks in prop::collection::vec(1usize..4, 1..3)) {
        let groups = catalog_up_to(8);
        let group = Arc::new(groups[g % groups.len()].clone());
        let s = sym_power_orbit_summary(&group, n, &ks).unwrap();
        let total: u128 = ks.iter().map(|&k| multiset_count(n * group.order(), k).unwrap()).product();
        prop_assert_eq!(s.orbit_sum(), total);
        prop_assert!(s.free_count() <= s.orbit_count());
        prop_assert_eq!(group.order() % s.max_stabilizer_order(), 0);
    }

    #[test]
    fn transpose_is_an_involution(mut parts in prop::collection::vec(1usize..7, 0..7)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        let t = lambda.transpose();
        prop_assert_eq!(t.weight(), lambda.weight());
        prop_assert_eq!(t.len(), lambda.parts().first().copied().unwrap_or(0));
        prop_assert_eq!(t.transpose(), lambda);
    }

    #[test]
    fn preimage_lattice_contains_image_and_has_p_power_index(
        entries in prop::collection::vec(-9i64..=9, 4),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let beta = int_matrix(&[entries[..2].to_vec(), entries[2..].to_vec()]);
        let det = det_bareiss(&beta);
        prop_assume!(!det.is_zero());
        let c = preimage_lattice(&beta, p).unwrap();
        prop_assert_eq!(c.index, num_traits::pow(BigInt::from(p), valuation(&det, p) as usize));
        for col in 0..2 {
            prop_assert!(lattice_contains(&c.basis, &beta.column(col)));
        }
    }

    #[test]
    fn lattice_compatibility_for_equivariant_maps(
        a in -6i64..=6,
        b in -6i64..=6,
        k in prop::sample::select(vec![1usize, 3]),
        p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        prop_assume!(a * a != b * b);
        let g = Arc::new(cyclic(2).unwrap());
        let f = GammaLattice::free(&g, 1);
        let beta = int_matrix(&[vec![a, b], vec![b, a]]);
        prop_assert!(verify_lattice_compatibility(&f, &[beta], &[k], p).unwrap().passed);
    }

    #[test]
    fn different_sequence_is_exact(d in -60i64..60) {
        if let Ok(q) = QuadraticField::new(d) {
            prop_assert!(verify_different_sequence(&q).passed);
            prop_assert_eq!(q.discriminant().rem_euclid(4) <= 1, true);
        }
    }
}

#[test]
fn normalize_accepts_exponents_past_the_conductor() {
    let z = cyclotomic(5, &[0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(z, Cyclotomic::root_of_unity(5, 1));
    assert_eq!(Cyclotomic::one(5).mul_int(&BigInt::from(3)), cyclotomic(5, &[3]));
}
