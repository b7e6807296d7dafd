//! Independent oracles and frozen values for derived quantities.

use std::sync::Arc;

use lambdabench::bott_ring::{minimal_inverse, CyclicQuotientRing};
use lambdabench::characters::{adams, character_table};
use lambdabench::exact::{det_bareiss, int_identity, int_matrix, lattice_index, lattice_sum, lattices_equal, valuation, IntMatrix};
use lambdabench::gamma_lattices::{preimage_lattice, sym_power_orbit_summary, verify_lattice_compatibility, GammaLattice};
use lambdabench::groups::{catalog_up_to, conjugacy_classes, cyclic, quaternion8, FiniteGroup};
use lambdabench::quad_fields::QuadraticField;
use lambdabench::symfunc::{cauchy_p, newton_poly, sym_cauchy_q, Basis};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficients of `Π (1 + v t)`, truncated to degree `n`.
fn elementary(values: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); n + 1];
    e[0] = BigInt::one();
    for v in values {
        for r in (1..=n).rev() {
            let prev = e[r - 1].clone();
            e[r] += prev * v;
        }
    }
    e
}

/// Coefficients of `Π 1/(1 − v t)`, truncated to degree `n`.
fn complete(values: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); n + 1];
    h[0] = BigInt::one();
    for v in values {
        for r in 1..=n {
            let prev = h[r - 1].clone();
            h[r] += prev * v;
        }
    }
    h
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn products(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

const POINTS: [(&[i64], &[i64]); 4] = [(&[1, 2], &[3, -1]), (&[2, -3, 1], &[1, 1]), (&[-2, 5, 1, 3], &[2, -1, 4]), (&[1, 1, 1, 1, 1], &[1, 1, 1])];

#[test]
fn cauchy_p_matches_elementary_functions_of_products() {
    for (x, y) in POINTS {
        let (x, y) = (ints(x), ints(y));
        for i in 1..=5 {
            let ex = elementary(&x, i);
            let ey = elementary(&y, i);
            let value = cauchy_p(i).evaluate(&[&ex[1..], &ey[1..]], &BigInt::one()).unwrap();
            assert_eq!(value, elementary(&products(&x, &y), i)[i], "i = {i}");
        }
    }
}

#[test]
fn cauchy_q_matches_complete_functions_of_products() {
    for (x, y) in POINTS {
        let (x, y) = (ints(x), ints(y));
        for j in 1..=5 {
            let hx = complete(&x, j);
            let hy = complete(&y, j);
            let value = sym_cauchy_q(j).evaluate(&[&hx[1..], &hy[1..]], &BigInt::one()).unwrap();
            assert_eq!(value, complete(&products(&x, &y), j)[j], "j = {j}");
        }
    }
}

#[test]
fn newton_polynomials_give_power_sums() {
    for (x, _) in POINTS {
        let x = ints(x);
        for i in 1..=7 {
            let power_sum: BigInt = x.iter().map(|v| num_traits::pow(v.clone(), i)).sum();
            let e = elementary(&x, i);
            let h = complete(&x, i);
            assert_eq!(newton_poly(i, Basis::Elementary).evaluate(&[&e[1..]], &BigInt::one()).unwrap(), power_sum);
            assert_eq!(newton_poly(i, Basis::Complete).evaluate(&[&h[1..]], &BigInt::one()).unwrap(), power_sum);
        }
    }
}

#[test]
fn small_cauchy_polynomials_frozen() {
    assert_eq!(cauchy_p(1).num_terms(), 1);
    // E1(X)^2 E2(Y) + E2(X) E1(Y)^2 - 2 E2(X) E2(Y)
    assert_eq!(cauchy_p(2).num_terms(), 3);
    // 2 H2 H2 + H1^2 H1^2 - H1^2 H2 - H2 H1^2
    assert_eq!(sym_cauchy_q(2).num_terms(), 4);
}

/// `βℤ^d + p^{v_p(det β)}ℤ^d`.
fn preimage_oracle(beta: &IntMatrix, p: u64) -> IntMatrix {
    let v = valuation(&det_bareiss(beta), p);
    let d = beta.rows();
    let pv = num_traits::pow(BigInt::from(p), v as usize);
    let scaled = int_identity(d).map(|x| x * &pv);
    lattice_sum(beta, &scaled)
}

#[test]
fn preimage_lattice_matches_sum_oracle() {
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2, 1], vec![1, 2]],
        vec![vec![3, 1], vec![1, 3]],
        vec![vec![1, 2], vec![2, 1]],
        vec![vec![4, 0], vec![0, 9]],
        vec![vec![6, 2, 0], vec![0, 6, 2], vec![2, 0, 6]],
        vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]],
        vec![vec![8, 3, 1], vec![2, 5, 7], vec![0, 4, 9]],
    ];
    for rows in &cases {
        let beta = int_matrix(rows);
        for p in [2u64, 3, 5, 7] {
            let c = preimage_lattice(&beta, p).unwrap();
            let oracle = preimage_oracle(&beta, p);
            assert!(lattices_equal(&c.basis, &oracle), "beta = {rows:?}, p = {p}");
            assert_eq!(c.index, lattice_index(&oracle).unwrap());
        }
    }
}

#[test]
fn lattice_index_frozen() {
    let g = Arc::new(cyclic(2).unwrap());
    let f = GammaLattice::free(&g, 1);
    let beta = int_matrix(&[vec![2, 1], vec![1, 2]]);
    let o = verify_lattice_compatibility(&f, &[beta], &[3], 3).unwrap();
    assert!(o.passed);
    assert_eq!(o.witness["index_of_preimage"], 729);
    assert_eq!(o.witness["c_beta_indices"][0], 3);
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Burnside count of orbits on monomials of `Sym^{k_1} ⊗ ⋯ ⊗ Sym^{k_r}` of `ℤ[G]^n`.
fn burnside_orbits(g: &FiniteGroup, n: usize, ks: &[usize]) -> u128 {
    let labels = (n * g.order()) as u128;
    let total: u128 = (0..g.order())
        .map(|x| {
            let o = g.element_order(x) as u128;
            let cycles = labels / o;
            ks.iter()
                .map(|&k| {
                    let k = k as u128;
                    if k % o == 0 {
                        binomial(cycles + k / o - 1, k / o)
                    } else {
                        0
                    }
                })
                .product::<u128>()
        })
        .sum();
    assert_eq!(total % g.order() as u128, 0);
    total / g.order() as u128
}

#[test]
fn orbit_counts_match_burnside() {
    for g in catalog_up_to(8) {
        let g = Arc::new(g);
        for (n, ks) in [(1, vec![1]), (1, vec![2]), (1, vec![3]), (2, vec![2]), (1, vec![2, 2]), (1, vec![4]), (2, vec![1, 3])] {
            let s = sym_power_orbit_summary(&g, n, &ks).unwrap();
            assert_eq!(s.orbit_count(), burnside_orbits(&g, n, &ks), "{} n = {n} ks = {ks:?}", g.name());
        }
    }
}

#[test]
fn orbit_count_frozen() {
    let g = Arc::new(cyclic(3).unwrap());
    assert_eq!(sym_power_orbit_summary(&g, 1, &[3]).unwrap().orbit_count(), 4);
    let g = Arc::new(cyclic(2).unwrap());
    assert_eq!(sym_power_orbit_summary(&g, 2, &[2]).unwrap().orbit_count(), 6);
}

#[test]
fn adams_matches_direct_powers() {
    for g in catalog_up_to(12) {
        let g = Arc::new(g);
        let cd = Arc::new(conjugacy_classes(&g));
        let table = character_table(&cd).unwrap();
        for chi in table.rows() {
            for k in [-3i64, -1, 0, 1, 2, 3, 5] {
                let psi = adams(chi, k);
                for c in 0..cd.num_classes() {
                    let rep = cd.representative(c);
                    let kk = k.rem_euclid(g.order() as i64) as u64;
                    let target = cd.class_of(g.pow(rep, kk));
                    assert_eq!(psi.value(c), chi.value(target), "{} k = {k}", g.name());
                }
            }
        }
    }
}

#[test]
fn quaternion_adams_square_frozen() {
    let g = Arc::new(quaternion8());
    let cd = Arc::new(conjugacy_classes(&g));
    let table = character_table(&cd).unwrap();
    let h = table.rows().iter().find(|r| r.degree_i64() == Some(2)).unwrap();
    let psi = adams(h, 2);
    let values: Vec<i64> = psi.values().iter().map(|v| v.to_i64().unwrap()).collect();
    let mut sorted = values.clone();
    sorted.sort();
    assert_eq!(sorted, vec![-2, -2, -2, 2, 2]);
    let coeffs = table.decompose(&psi).unwrap().coeffs;
    let by_degree: Vec<(i64, i64)> = table.degrees().into_iter().zip(coeffs.iter().map(|c| i64::try_from(c).unwrap())).collect();
    // three nontrivial linear characters minus the trivial one
    assert_eq!(by_degree.iter().filter(|&&(d, _)| d == 2).map(|&(_, c)| c).collect::<Vec<_>>(), vec![0]);
    assert_eq!(by_degree.iter().filter(|&&(d, _)| d == 1).map(|&(_, c)| c).sum::<i64>(), 2);
    assert_eq!(table.decompose(&psi).unwrap().coeffs[table.find_row(&table.trivial()).unwrap()], BigInt::from(-1));
}

#[test]
fn bott_element_frozen() {
    let ring = CyclicQuotientRing::new(3).unwrap();
    assert_eq!(ring.bott_element(4).unwrap().to_string(), "2 + x + x^2");
    let ring = CyclicQuotientRing::new(5).unwrap();
    assert_eq!(ring.bott_element(2).unwrap().to_string(), "1 + x");
    assert_eq!(minimal_inverse(2, 5).unwrap(), 3);
    assert_eq!(minimal_inverse(7, 12).unwrap(), 7);
    let theta = ring.bott_element(2).unwrap();
    let inv = ring.geometric(2, 3);
    assert_eq!(inv.to_string(), "1 + x^2 + x^4");
    // (kk' - 1)/m = 1
    assert_eq!(ring.mul(&theta, &inv).to_string(), "2 + x + x^2 + x^3 + x^4");
}

#[test]
fn quadratic_discriminants_frozen() {
    for (d, disc) in [(-5, -20), (-1, -4), (-3, -3), (2, 8), (3, 12), (5, 5), (-7, -7), (13, 13), (-2, -8)] {
        let q = QuadraticField::new(d).unwrap();
        assert_eq!(q.discriminant(), disc, "D = {d}");
        let delta = q.different_generator();
        assert_eq!(q.norm(&delta).abs(), BigInt::from(disc.abs()), "D = {d}");
    }
    assert_eq!(QuadraticField::new(-5).unwrap().ramified_primes(), vec![2, 5]);
    assert_eq!(QuadraticField::new(-3).unwrap().ramified_primes(), vec![3]);
}

#[test]
fn ramified_prime_squares_to_p() {
    for d in [-5i64, -3, -1, 2, 3, 5, 6, 7, -11, 13] {
        let q = QuadraticField::new(d).unwrap();
        for p in q.ramified_primes() {
            let prime = q.ramified_prime_ideal(p).unwrap();
            let square = q.ideal_mul(&prime, &prime);
            let p_ideal = q.principal_ideal(&lambdabench::quad_fields::QuadElement::new(p as i64, 0));
            assert!(lattices_equal(&square, &p_ideal), "D = {d}, p = {p}");
        }
    }
}
