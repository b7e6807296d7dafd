//! Quadratic fields over ℚ: rings of integers, differents, the module of
//! differentials with its Galois action, and the graded layers of Ω at a
//! ramified prime. Ideals are ℤ-lattices in `O_N = ℤ ⊕ ℤt` given by column bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{
    det_bareiss, int_identity, lattice_basis, lattice_contains, lattice_index, lattice_preimage, lattices_equal,
    p_part, valuation, IntMatrix, Matrix,
};
use crate::gamma_lattices::preimage_lattice;
use crate::report::{bigint_json, CheckOutcome};

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("D must differ from 0 and 1")]
    Degenerate,
    #[error("{0} is unramified")]
    Unramified(u64),
    #[error("extension is not tame: 2 ramifies")]
    NotTame,
}

/// Element `a + b·t` of `O_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadElement { a: a.into(), b: b.into() }
    }

    pub fn coords(&self) -> Vec<BigInt> {
        vec![self.a.clone(), self.b.clone()]
    }

    fn from_coords(v: &[BigInt]) -> Self {
        QuadElement { a: v[0].clone(), b: v[1].clone() }
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t_term = |b: &BigInt| if b.is_one() { "t".to_string() } else { format!("{b}*t") };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b == -BigInt::one() => write!(f, "-t"),
            (true, false) => write!(f, "{}", t_term(&self.b)),
            (false, false) if self.b.is_negative() => write!(f, "{} - {}", self.a, t_term(&-&self.b)),
            _ => write!(f, "{} + {}", self.a, t_term(&self.b)),
        }
    }
}

impl Serialize for QuadElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `O_N = ℤ[t]` for `N = ℚ(√D)`, with `t² = c1·t + c0`.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    d: i64,
    c1: BigInt,
    c0: BigInt,
}

fn is_squarefree(n: i64) -> bool {
    let m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Squarefree integers in `lo..=hi` other than 0 and 1.
pub fn squarefree_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| d != 0 && d != 1 && is_squarefree(d)).collect()
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn ideal_json(m: &IntMatrix) -> Value {
    serde_json::to_value(m).unwrap_or(Value::Null)
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d == 0 || d == 1 {
            return Err(QuadError::Degenerate);
        }
        if !is_squarefree(d) {
            return Err(QuadError::NotSquarefree(d));
        }
        let (c1, c0) = if d.rem_euclid(4) == 1 { (1, (d - 1) / 4) } else { (0, d) };
        Ok(QuadraticField { d, c1: BigInt::from(c1), c0: BigInt::from(c0) })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Whether `t = (1+√D)/2` rather than `√D`.
    pub fn half_integral(&self) -> bool {
        self.c1.is_one()
    }

    pub fn discriminant(&self) -> i64 {
        if self.half_integral() {
            self.d
        } else {
            4 * self.d
        }
    }

    /// Minimal polynomial of `t` as `[constant, linear, 1]`.
    pub fn min_poly(&self) -> [BigInt; 3] {
        [-&self.c0, -&self.c1, BigInt::one()]
    }

    pub fn min_poly_text(&self) -> String {
        let lin = if self.half_integral() { " - T" } else { "" };
        let c = -&self.c0;
        let cst = if c.is_negative() {
            format!(" - {}", -&c)
        } else if c.is_zero() {
            String::new()
        } else {
            format!(" + {c}")
        };
        format!("T^2{lin}{cst}")
    }

    pub fn order_text(&self) -> String {
        if self.half_integral() {
            format!("Z[(1+sqrt({}))/2]", self.d)
        } else {
            format!("Z[sqrt({})]", self.d)
        }
    }

    pub fn t(&self) -> QuadElement {
        QuadElement::new(0, 1)
    }

    /// `√D` as an element of `O_N`.
    pub fn sqrt_d(&self) -> QuadElement {
        if self.half_integral() {
            QuadElement::new(-1, 2)
        } else {
            QuadElement::new(0, 1)
        }
    }

    pub fn mul(&self, x: &QuadElement, y: &QuadElement) -> QuadElement {
        // (a + bt)(c + dt) = ac + bd·c0 + (ad + bc + bd·c1)t
        let bd = &x.b * &y.b;
        QuadElement { a: &x.a * &y.a + &bd * &self.c0, b: &x.a * &y.b + &x.b * &y.a + &bd * &self.c1 }
    }

    /// Galois conjugate: `t ↦ −t` or `t ↦ 1 − t`.
    pub fn sigma(&self, x: &QuadElement) -> QuadElement {
        QuadElement { a: &x.a + &x.b * &self.c1, b: -&x.b }
    }

    pub fn norm(&self, x: &QuadElement) -> BigInt {
        self.mul(x, &self.sigma(x)).a
    }

    /// Matrix of multiplication by `x` on the basis `(1, t)`.
    pub fn mul_matrix(&self, x: &QuadElement) -> IntMatrix {
        let xt = self.mul(x, &self.t());
        Matrix::from_columns(&[x.coords(), xt.coords()], 2)
    }

    /// Matrix of `σ` on the basis `(1, t)`.
    pub fn sigma_matrix(&self) -> IntMatrix {
        Matrix::from_columns(&[self.sigma(&QuadElement::new(1, 0)).coords(), self.sigma(&self.t()).coords()], 2)
    }

    /// `φ'(t) = 2t − c1`.
    pub fn different_generator(&self) -> QuadElement {
        QuadElement { a: -&self.c1, b: BigInt::from(2) }
    }

    /// HNF basis of the principal ideal `(x)`.
    pub fn principal_ideal(&self, x: &QuadElement) -> IntMatrix {
        lattice_basis(&self.mul_matrix(x))
    }

    /// HNF basis of the product of two ideals.
    pub fn ideal_mul(&self, i: &IntMatrix, j: &IntMatrix) -> IntMatrix {
        let mut cols = Vec::new();
        for a in 0..i.cols() {
            for b in 0..j.cols() {
                let x = QuadElement::from_coords(&i.column(a));
                let y = QuadElement::from_coords(&j.column(b));
                cols.push(self.mul(&x, &y).coords());
            }
        }
        lattice_basis(&Matrix::from_columns(&cols, 2))
    }

    pub fn ideal_pow(&self, i: &IntMatrix, k: u32) -> IntMatrix {
        (0..k).fold(int_identity(2), |acc, _| self.ideal_mul(&acc, i))
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        prime_factors(self.discriminant().unsigned_abs())
    }

    /// The prime above a ramified `p`: `(p, t − r)` with `r` the double root of `φ` mod `p`.
    pub fn ramified_prime_ideal(&self, p: u64) -> Result<IntMatrix, QuadError> {
        if self.discriminant().unsigned_abs() % p != 0 {
            return Err(QuadError::Unramified(p));
        }
        let pb = BigInt::from(p);
        let r = (0..p)
            .map(BigInt::from)
            .find(|r| (r * r - &self.c1 * r - &self.c0).mod_floor(&pb).is_zero())
            .ok_or(QuadError::Unramified(p))?;
        let gen = QuadElement { a: -r, b: BigInt::one() };
        let mut cols = vec![vec![pb.clone(), BigInt::zero()], vec![BigInt::zero(), pb]];
        cols.push(gen.coords());
        cols.push(self.mul(&gen, &self.t()).coords());
        Ok(lattice_basis(&Matrix::from_columns(&cols, 2)))
    }

    /// Largest `j` with `x ∈ P^j`, for nonzero `x`.
    pub fn valuation_at(&self, prime: &IntMatrix, x: &QuadElement) -> u32 {
        let cap = self.norm(x).abs().bits() as u32 + 1;
        let mut j = 0;
        let mut power = int_identity(2);
        while j < cap {
            power = self.ideal_mul(&power, prime);
            if !lattice_contains(&power, &x.coords()) {
                break;
            }
            j += 1;
        }
        j
    }

    /// Canonical uniformizer at the prime above `p`: `√D` when `p | D`, else the first `a + t` in `P ∖ P²`.
    pub fn uniformizer(&self, p: u64) -> Result<QuadElement, QuadError> {
        let prime = self.ramified_prime_ideal(p)?;
        let candidates = std::iter::once(self.sqrt_d())
            .filter(|_| self.d.unsigned_abs() % p == 0)
            .chain((0..p as i64).map(|a| QuadElement::new(a, 1)));
        for pi in candidates {
            if self.valuation_at(&prime, &pi) == 1 {
                return Ok(pi);
            }
        }
        unreachable!("a ramified prime has a uniformizer of the form a + t")
    }

    pub fn different(&self) -> DifferentData {
        let generator = self.different_generator();
        let norm = self.norm(&generator).abs();
        let primes = self
            .ramified_primes()
            .into_iter()
            .map(|p| {
                let prime = self.ramified_prime_ideal(p).expect("divides the discriminant");
                RamifiedPrime {
                    p,
                    ramification_index: 2,
                    exponent: self.valuation_at(&prime, &generator),
                    wild: p == 2,
                    ideal: prime,
                }
            })
            .collect();
        DifferentData { generator, norm, primes }
    }

    /// Ω presented as `O_N/(φ'(t))·dt`, with the annihilator recomputed from the presentation.
    pub fn omega(&self) -> OmegaPresentation {
        let delta = self.different_generator();
        let relations = self.principal_ideal(&delta);
        let order = lattice_index(&relations).expect("nonzero generator");
        // x kills Ω iff x·1 and x·t both lie in the relation lattice
        let columns: Vec<Vec<BigInt>> = [QuadElement::new(1, 0), self.t()]
            .iter()
            .map(|x| [x.coords(), self.mul(x, &self.t()).coords()].concat())
            .collect();
        let stacked = Matrix::from_columns(&columns, 4);
        let double = relations.direct_sum(&relations);
        let annihilator = lattice_preimage(&stacked, &double);
        let sigma_on_generator = -1;
        OmegaPresentation { relations, order, annihilator, sigma_on_generator }
    }

    pub fn report(&self) -> Value {
        let diff = self.different();
        let omega = self.omega();
        json!({
            "D": self.d,
            "order": self.order_text(),
            "min_poly": self.min_poly_text(),
            "disc": self.discriminant(),
            "different": { "generator": diff.generator, "norm": bigint_json(&diff.norm) },
            "omega_order": bigint_json(&omega.order),
            "tame": diff.primes.iter().all(|p| !p.wild),
            "ramified_primes": diff.primes.iter().map(RamifiedPrime::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RamifiedPrime {
    pub p: u64,
    pub ramification_index: u32,
    /// Exponent of this prime in the different.
    pub exponent: u32,
    pub wild: bool,
    pub ideal: IntMatrix,
}

impl RamifiedPrime {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "e": self.ramification_index,
            "different_exponent": self.exponent,
            "wild": self.wild,
            "ideal": ideal_json(&self.ideal),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DifferentData {
    pub generator: QuadElement,
    pub norm: BigInt,
    pub primes: Vec<RamifiedPrime>,
}

#[derive(Clone, Debug)]
pub struct OmegaPresentation {
    /// Relation lattice `(φ'(t))`, so Ω ≅ ℤ²/relations.
    pub relations: IntMatrix,
    pub order: BigInt,
    pub annihilator: IntMatrix,
    /// `σ(dt) = sigma_on_generator · dt`.
    pub sigma_on_generator: i64,
}

/// `D⁻¹/O_N ≅ Ω` via `a·φ'(t)⁻¹ ↦ a·dt`: well defined, surjective, kernel `O_N`, σ-equivariant.
///
/// `D⁻¹` is scaled by `n = |disc|` so all lattices are integral.
pub fn verify_different_sequence(q: &QuadraticField) -> CheckOutcome {
    let delta = q.different_generator();
    let n = q.norm(&delta).abs();
    let m_delta = q.mul_matrix(&delta);
    // n·δ⁻¹ = ±σ(δ), so n·D⁻¹ is the ideal (σ(δ))
    let scaled_inverse = q.principal_ideal(&q.sigma(&delta));
    let scaled_o = lattice_basis(&int_identity(2).map(|x| x * &n));
    let contains = lattices_equal(&scaled_inverse, &scaled_inverse.hstack(&scaled_o));
    let quotient_order = lattice_index(&scaled_o).unwrap() / lattice_index(&scaled_inverse).unwrap();
    let omega = q.omega();
    // coordinates: c ∈ ℤ² ↔ (c_0 + c_1 t)·δ⁻¹ ∈ D⁻¹; the map sends c to c mod (δ)
    let f = int_identity(2);
    let surjective = lattices_equal(&f.hstack(&omega.relations), &int_identity(2));
    let kernel = lattice_preimage(&f, &omega.relations);
    // kernel elements scaled by n: n·a·δ⁻¹ = a·(±σ(δ))
    let sigma_delta = q.mul_matrix(&q.sigma(&delta));
    let kernel_scaled = lattice_basis(&sigma_delta.mul(&kernel));
    let kernel_is_o = lattices_equal(&kernel_scaled, &scaled_o);
    let sigma_delta_is_neg = q.sigma(&delta) == QuadElement { a: -&delta.a, b: -&delta.b };
    // σ on coordinates: σ(a·δ⁻¹) = σ(a)·σ(δ)⁻¹ = −σ(a)·δ⁻¹
    let s = q.sigma_matrix();
    let on_inverse = s.neg();
    let on_omega = s.map(|x| x * BigInt::from(omega.sigma_on_generator));
    let diff = f.mul(&on_inverse).sub(&on_omega.mul(&f));
    let equivariant = (0..2).all(|c| lattice_contains(&omega.relations, &diff.column(c)));
    let omega_well_defined = (0..2).all(|c| lattice_contains(&omega.relations, &on_omega.mul(&m_delta).column(c)));
    let disc = BigInt::from(q.discriminant().abs());
    let annihilator_is_different = lattices_equal(&omega.annihilator, &q.principal_ideal(&delta));
    let passed = contains
        && annihilator_is_different
        && omega.order == disc
        && surjective
        && kernel_is_o
        && sigma_delta_is_neg
        && equivariant
        && omega_well_defined
        && quotient_order == omega.order
        && omega.order == n;
    CheckOutcome::new(
        "different-sequence",
        "0 -> O_N -> D^{-1} -> Omega -> 0, a/phi'(t) |-> a dt, is exact and Galois equivariant",
        json!({ "D": q.d() }),
        passed,
        json!({
            "different_generator": delta,
            "inverse_different_scaled": ideal_json(&scaled_inverse),
            "quotient_order": bigint_json(&quotient_order),
            "omega_order": bigint_json(&omega.order),
            "disc": bigint_json(&disc),
            "annihilator_is_different": annihilator_is_different,
            "annihilator": ideal_json(&omega.annihilator),
            "o_in_inverse_different": contains,
            "surjective": surjective,
            "kernel_is_o": kernel_is_o,
            "sigma_negates_generator": sigma_delta_is_neg,
            "equivariant": equivariant,
            "sigma_matrix_on_quotient": serde_json::to_value(&on_inverse).unwrap_or(Value::Null),
            "sigma_matrix_on_omega": serde_json::to_value(&on_omega).unwrap_or(Value::Null),
        }),
    )
}

/// Sweep of [`verify_different_sequence`] over a range of `D`.
pub fn verify_different_sequence_range(lo: i64, hi: i64) -> CheckOutcome {
    let ds = squarefree_range(lo, hi);
    let failures: Vec<i64> =
        ds.iter().copied().filter(|&d| !verify_different_sequence(&QuadraticField::new(d).unwrap()).passed).collect();
    CheckOutcome::new(
        "different-sequence",
        "0 -> O_N -> D^{-1} -> Omega -> 0 for every squarefree D in the range",
        json!({ "D_range": [lo, hi] }),
        failures.is_empty(),
        json!({ "fields": ds.len(), "failures": failures }),
    )
}

/// One graded layer `0 → P^{i+2} → P^{i+1} → P^iΩ/P^{i+1}Ω → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedLayer {
    pub i: u32,
    pub well_defined: bool,
    pub surjective: bool,
    pub kernel_exact: bool,
    pub equivariant: bool,
    #[serde(serialize_with = "serialize_big")]
    pub quotient_order: BigInt,
}

fn serialize_big<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    bigint_json(n).serialize(s)
}

impl GradedLayer {
    pub fn passed(&self) -> bool {
        self.well_defined && self.surjective && self.kernel_exact && self.equivariant
    }
}

/// Graded layers of Ω at the prime above `p`, localized at `p`.
///
/// With `π = u + v·t`, the map `a·π^{i+1} ↦ a·π^i dπ` is `x ↦ (x/π)·v·dt`. Since `x·σ(π)/p`
/// is integral and differs from `x/π` by a `p`-unit, the layer map is taken to be
/// `x ↦ (x·σ(π)/p)·v` into `O_N/(δ)` localized at `p`.
pub fn graded_layers(q: &QuadraticField, p: u64) -> Result<(Vec<GradedLayer>, Value), QuadError> {
    let prime = q.ramified_prime_ideal(p)?;
    let pi = q.uniformizer(p)?;
    let delta = q.different_generator();
    let l = q.valuation_at(&prime, &delta);
    let delta_ideal = q.principal_ideal(&delta);
    let localize = |m: &IntMatrix| preimage_lattice(m, p).expect("full rank").basis;
    let pb = BigInt::from(p);
    let sigma_pi = q.sigma(&pi);
    let v = pi.b.clone();
    let psi = |x: &QuadElement| -> Option<QuadElement> {
        let y = q.mul(x, &sigma_pi);
        if !(y.a.is_multiple_of(&pb) && y.b.is_multiple_of(&pb)) {
            return None;
        }
        Some(QuadElement { a: &y.a / &pb * &v, b: &y.b / &pb * &v })
    };
    let mut layers = Vec::new();
    for i in 0..l {
        let p_i = q.ideal_pow(&prime, i);
        let p_i1 = q.ideal_mul(&p_i, &prime);
        let p_i2 = q.ideal_mul(&p_i1, &prime);
        let upper = localize(&lattice_basis(&p_i.hstack(&delta_ideal)));
        let lower = localize(&lattice_basis(&p_i1.hstack(&delta_ideal)));
        let images: Vec<Option<QuadElement>> =
            (0..p_i1.cols()).map(|c| psi(&QuadElement::from_coords(&p_i1.column(c)))).collect();
        let integral = images.iter().all(Option::is_some);
        let image_cols: Vec<Vec<BigInt>> = images.iter().flatten().map(QuadElement::coords).collect();
        let psi_matrix = Matrix::from_columns(&image_cols, 2);
        let well_defined = integral && (0..psi_matrix.cols()).all(|c| lattice_contains(&upper, &psi_matrix.column(c)));
        let surjective = well_defined && lattices_equal(&psi_matrix.hstack(&lower), &upper);
        let kernel_exact = well_defined && {
            let coords = lattice_preimage(&psi_matrix, &lower);
            lattices_equal(&lattice_basis(&p_i1.mul(&coords)), &p_i2)
        };
        // ψ(σx) − σ_Ω(ψx) ∈ lower, with σ_Ω(a dt) = −σ(a) dt
        let equivariant = well_defined
            && (0..p_i1.cols()).all(|c| {
                let x = QuadElement::from_coords(&p_i1.column(c));
                match (psi(&q.sigma(&x)), psi(&x)) {
                    (Some(lhs), Some(rhs)) => {
                        let rhs = q.sigma(&rhs);
                        let d = vec![&lhs.a + &rhs.a, &lhs.b + &rhs.b];
                        lattice_contains(&lower, &d)
                    }
                    _ => false,
                }
            });
        let quotient_order = lattice_index(&lower).unwrap() / lattice_index(&upper).unwrap();
        layers.push(GradedLayer { i, well_defined, surjective, kernel_exact, equivariant, quotient_order });
    }
    let info = json!({
        "p": p,
        "prime": ideal_json(&prime),
        "uniformizer": pi,
        "different_exponent": l,
    });
    Ok((layers, info))
}

/// All graded layers at every ramified prime; layer orders multiply to the `p`-part of `|Ω|`.
pub fn verify_graded_layers(q: &QuadraticField) -> CheckOutcome {
    let omega = q.omega();
    let mut passed = true;
    let mut per_prime = Vec::new();
    for p in q.ramified_primes() {
        let (layers, info) = graded_layers(q, p).expect("ramified");
        let product: BigInt = layers.iter().map(|l| l.quotient_order.clone()).product();
        let local_omega = p_part(&omega.order, p);
        let ok = layers.iter().all(GradedLayer::passed) && product == local_omega;
        passed &= ok;
        per_prime.push(json!({
            "prime": info,
            "layers": layers,
            "product_of_layer_orders": bigint_json(&product),
            "local_omega_order": bigint_json(&local_omega),
            "passed": ok,
        }));
    }
    CheckOutcome::new(
        "graded-layers",
        "0 -> P^{i+2} -> P^{i+1} -> P^i Omega / P^{i+1} Omega -> 0 is exact and equivariant for i < l",
        json!({ "D": q.d() }),
        passed,
        json!({ "primes": per_prime }),
    )
}

/// Graded layers at one ramified prime.
pub fn verify_graded_layers_at(q: &QuadraticField, p: u64) -> Result<CheckOutcome, QuadError> {
    let (layers, info) = graded_layers(q, p)?;
    let product: BigInt = layers.iter().map(|l| l.quotient_order.clone()).product();
    let local_omega = p_part(&q.omega().order, p);
    let passed = layers.iter().all(GradedLayer::passed) && product == local_omega;
    Ok(CheckOutcome::new(
        "graded-layers",
        "0 -> P^{i+2} -> P^{i+1} -> P^i Omega / P^{i+1} Omega -> 0 is exact and equivariant for i < l",
        json!({ "D": q.d(), "p": p }),
        passed,
        json!({
            "prime": info,
            "layers": layers,
            "product_of_layer_orders": bigint_json(&product),
            "local_omega_order": bigint_json(&local_omega),
        }),
    ))
}

/// The pair `([D⁻¹], [O_N])` for a tame field, witnessed by the order of `D⁻¹/O_N ≅ Ω`.
#[derive(Clone, Debug, Serialize)]
pub struct CotangentElement {
    pub d: i64,
    pub positive: String,
    pub negative: String,
    #[serde(serialize_with = "serialize_big")]
    pub witness_order: BigInt,
    pub witness_passed: bool,
}

pub fn cotangent_element(q: &QuadraticField) -> Result<CotangentElement, QuadError> {
    if q.ramified_primes().contains(&2) {
        return Err(QuadError::NotTame);
    }
    let check = verify_different_sequence(q);
    let order = q.omega().order;
    Ok(CotangentElement {
        d: q.d(),
        positive: "[D^{-1}]".into(),
        negative: "[O_N]".into(),
        witness_order: order,
        witness_passed: check.passed,
    })
}

/// `p`-adic valuation of the discriminant, for reports.
pub fn disc_valuation(q: &QuadraticField, p: u64) -> u32 {
    valuation(&BigInt::from(q.discriminant()), p)
}

/// `|O_N/(x)|` from a determinant, independent of the HNF.
pub fn quotient_order(q: &QuadraticField, x: &QuadElement) -> BigInt {
    det_bareiss(&q.mul_matrix(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn build_examples() {
        let q = field(-1);
        assert_eq!((q.discriminant(), q.min_poly_text()), (-4, "T^2 + 1".to_string()));
        let q = field(5);
        assert_eq!((q.discriminant(), q.min_poly_text()), (5, "T^2 - T - 1".to_string()));
        let q = field(3);
        assert_eq!((q.discriminant(), q.min_poly_text()), (12, "T^2 - 3".to_string()));
        assert!(matches!(QuadraticField::new(12), Err(QuadError::NotSquarefree(12))));
        assert!(matches!(QuadraticField::new(1), Err(QuadError::Degenerate)));
        let t = q.t();
        assert_eq!(q.mul(&t, &t), QuadElement::new(3, 0));
        assert_eq!(q.sigma(&q.sigma(&QuadElement::new(2, 7))), QuadElement::new(2, 7));
    }

    #[test]
    fn different_examples() {
        let d = field(-1).different();
        assert_eq!((d.generator.to_string(), d.norm.clone()), ("2*t".to_string(), BigInt::from(4)));
        assert_eq!(d.primes.len(), 1);
        assert!(d.primes[0].wild);
        assert_eq!(d.primes[0].exponent, 2);
        let d = field(5).different();
        assert_eq!(d.generator.to_string(), "-1 + 2*t");
        assert_eq!(d.norm, BigInt::from(5));
        assert!(!d.primes[0].wild);
        assert_eq!(d.primes[0].exponent, 1);
        let d = field(3).different();
        assert_eq!(d.norm, BigInt::from(12));
        let exps: Vec<(u64, u32, bool)> = d.primes.iter().map(|p| (p.p, p.exponent, p.wild)).collect();
        assert_eq!(exps, vec![(2, 2, true), (3, 1, false)]);
    }

    #[test]
    fn omega_examples() {
        for (d, order) in [(-1, 4), (5, 5), (2, 8)] {
            let q = field(d);
            let o = q.omega();
            assert_eq!(o.order, BigInt::from(order));
            assert!(lattices_equal(&o.annihilator, &q.principal_ideal(&q.different_generator())));
        }
    }

    #[test]
    fn different_sequence_examples() {
        for (d, order) in [(-1, 4), (5, 5), (7, 28)] {
            let o = verify_different_sequence(&field(d));
            assert!(o.passed, "{}", o.witness);
            assert_eq!(o.witness["quotient_order"], order);
        }
    }

    #[test]
    fn graded_layer_examples() {
        let o = verify_graded_layers_at(&field(5), 5).unwrap();
        assert!(o.passed, "{}", o.witness);
        assert_eq!(o.witness["layers"].as_array().unwrap().len(), 1);
        let o = verify_graded_layers_at(&field(3), 2).unwrap();
        assert!(o.passed, "{}", o.witness);
        assert_eq!(o.witness["layers"].as_array().unwrap().len(), 2);
        let o = verify_graded_layers_at(&field(-1), 2).unwrap();
        assert!(o.passed, "{}", o.witness);
        assert_eq!(o.witness["prime"]["uniformizer"], "1 + t");
        assert!(matches!(verify_graded_layers_at(&field(5), 3), Err(QuadError::Unramified(3))));
    }

    #[test]
    fn cotangent_examples() {
        assert_eq!(cotangent_element(&field(5)).unwrap().witness_order, BigInt::from(5));
        assert_eq!(cotangent_element(&field(13)).unwrap().witness_order, BigInt::from(13));
        assert!(matches!(cotangent_element(&field(-1)), Err(QuadError::NotTame)));
    }

    #[test]
    fn sweep_small_fields() {
        assert!(verify_different_sequence_range(-50, 50).passed);
        for d in squarefree_range(-50, 50) {
            let q = field(d);
            let o = verify_graded_layers(&q);
            assert!(o.passed, "D = {d}: {}", o.witness);
            assert_eq!(quotient_order(&q, &q.different_generator()), BigInt::from(q.discriminant().abs()));
        }
    }
}
