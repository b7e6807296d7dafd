use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::matrix::Matrix;
use super::ring::{CommRing, Field};

/// Precomputed reduction data for the field of `m`-th roots of unity.
struct FieldData {
    phi: usize,
    /// `reduce[j]` holds the power-basis coordinates of `ζ^j` for `0 ≤ j < m`.
    reduce: Vec<Vec<i128>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field_data(m: u32) -> Arc<FieldData> {
    if let Some(d) = field_cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return d.clone();
    }
    let phi_poly = cyclotomic_polynomial(m as u64);
    let phi = phi_poly.len() - 1;
    let mut reduce = Vec::with_capacity(m as usize);
    let mut cur = vec![0i128; phi];
    cur[0] = 1;
    for _ in 0..m {
        reduce.push(cur.clone());
        // multiply by x and fold the overflow through Φ_m (monic)
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    let data = Arc::new(FieldData { phi, reduce });
    field_cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(m, data.clone());
    data
}

/// Integer coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i128> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of ℚ(ζ_m), stored in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let phi = field_data(m).phi;
        Cyclotomic { m, coeffs: vec![BigRational::zero(); phi] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_int(m: u32, n: impl Into<BigInt>) -> Self {
        Self::from_rational(m, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    /// `ζ_m^j` for any integer `j`.
    pub fn root_of_unity(m: u32, j: i64) -> Self {
        let data = field_data(m);
        let j = j.rem_euclid(m as i64) as usize;
        Cyclotomic {
            m,
            coeffs: data.reduce[j].iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    /// Reduce a raw coefficient vector `Σ raw[j] ζ_m^j` (any length) to canonical form.
    pub fn normalize(raw: &[BigRational], m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let data = field_data(m);
        let mut folded = vec![BigRational::zero(); m as usize];
        for (j, c) in raw.iter().enumerate() {
            if !Zero::is_zero(c) {
                folded[j % m as usize] += c;
            }
        }
        Self::from_folded(m, &data, folded)
    }

    fn from_folded(m: u32, data: &FieldData, folded: Vec<BigRational>) -> Self {
        let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); data.phi];
        for (j, c) in folded.into_iter().enumerate() {
            if Zero::is_zero(&c) {
                continue;
            }
            if j < data.phi {
                coeffs[j] += c;
            } else {
                for (i, &r) in data.reduce[j].iter().enumerate() {
                    if r != 0 {
                        coeffs[i] += &c * BigInt::from(r);
                    }
                }
            }
        }
        Cyclotomic { m, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// True when the value lies in ℤ[ζ_m] (the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-express in the field of conductor `target`, which must be a multiple of `m`.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.m {
            return self.clone();
        }
        assert!(target % self.m == 0, "conductor {} does not divide {}", self.m, target);
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        Self::normalize(&raw, target)
    }

    fn int_coeffs(&self) -> Option<Vec<i128>> {
        self.coeffs
            .iter()
            .map(|c| if c.denom().is_one() { c.numer().to_i128() } else { None })
            .collect()
    }

    fn from_ints(m: u32, coeffs: &[i128]) -> Self {
        Cyclotomic { m, coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    /// Folds exponents `0..m` into the power basis; `None` on overflow.
    fn fold_ints(data: &FieldData, folded: &[i128]) -> Option<Vec<i128>> {
        let mut coeffs = vec![0i128; data.phi];
        for (j, &c) in folded.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if j < data.phi {
                coeffs[j] = coeffs[j].checked_add(c)?;
            } else {
                for (i, &r) in data.reduce[j].iter().enumerate() {
                    if r != 0 {
                        coeffs[i] = coeffs[i].checked_add(c.checked_mul(r)?)?;
                    }
                }
            }
        }
        Some(coeffs)
    }

    fn mul_ints(&self, a: &[i128], b: &[i128]) -> Option<Self> {
        let data = field_data(self.m);
        let m = self.m as usize;
        let mut folded = vec![0i128; m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let d = (i + j) % m;
                    folded[d] = folded[d].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
        Some(Self::from_ints(self.m, &Self::fold_ints(&data, &folded)?))
    }

    /// `(1/divisor)·Σ w_c·x_c·conj(y_c)` in machine integers; `None` unless all inputs are integral over one conductor.
    pub fn hermitian_sum(xs: &[Cyclotomic], ys: &[Cyclotomic], weights: &[usize], divisor: usize) -> Option<Cyclotomic> {
        let m = xs.first()?.m;
        let mu = m as usize;
        let mut folded = vec![0i128; mu];
        for ((x, y), &w) in xs.iter().zip(ys).zip(weights) {
            if x.m != m || y.m != m {
                return None;
            }
            let (a, b) = (x.int_coeffs()?, y.int_coeffs()?);
            let w = w as i128;
            for (i, &u) in a.iter().enumerate() {
                if u == 0 {
                    continue;
                }
                let wu = u.checked_mul(w)?;
                for (j, &v) in b.iter().enumerate() {
                    if v != 0 {
                        let d = (i + mu - j) % mu;
                        folded[d] = folded[d].checked_add(wu.checked_mul(v)?)?;
                    }
                }
            }
        }
        let sum = Self::fold_ints(&field_data(m), &folded)?;
        let d = divisor as i128;
        if d != 0 && sum.iter().all(|c| c % d == 0) {
            let q: Vec<i128> = sum.iter().map(|c| c / d).collect();
            return Some(Self::from_ints(m, &q));
        }
        Some(Self::from_ints(m, &sum).scale(&BigRational::new(BigInt::one(), BigInt::from(divisor))))
    }

    fn aligned(&self, other: &Self) -> (std::borrow::Cow<'_, Self>, Option<Self>) {
        if self.m == other.m {
            (std::borrow::Cow::Borrowed(self), None)
        } else {
            let l = self.m.lcm(&other.m);
            (std::borrow::Cow::Owned(self.embed(l)), Some(other.embed(l)))
        }
    }

    /// Galois automorphism `ζ ↦ ζ^a`.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.m as i64;
        if let Some(ints) = self.int_coeffs() {
            let mut folded = vec![0i128; self.m as usize];
            for (j, &c) in ints.iter().enumerate() {
                folded[((j as i64) * a).rem_euclid(m) as usize] += c;
            }
            if let Some(out) = Self::fold_ints(&field_data(self.m), &folded) {
                return Self::from_ints(self.m, &out);
            }
        }
        let mut raw = vec![BigRational::zero(); self.m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                raw[((j as i64) * a).rem_euclid(m) as usize] += c;
            }
        }
        Self::normalize(&raw, self.m)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Division by a nonzero integer, returning `None` unless the quotient stays in ℤ[ζ_m].
    pub fn div_int_exact(&self, n: &BigInt) -> Option<Self> {
        if Zero::is_zero(n) {
            return None;
        }
        if let (Some(ints), Some(d)) = (self.int_coeffs(), n.to_i128()) {
            return ints
                .iter()
                .all(|c| c % d == 0)
                .then(|| Self::from_ints(self.m, &ints.iter().map(|c| c / d).collect::<Vec<_>>()));
        }
        let q = BigRational::from_integer(n.clone());
        let out = Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| c / &q).collect() };
        out.is_integral().then_some(out)
    }

    /// Multiplication-by-`self` matrix on the power basis.
    fn multiplication_matrix(&self) -> Matrix<BigRational> {
        let phi = self.coeffs.len();
        let mut mat = Matrix::filled(phi, phi, BigRational::zero());
        for i in 0..phi {
            let col = self.mul_ref(&Self::root_of_unity(self.m, i as i64));
            for r in 0..phi {
                mat[(r, i)] = col.coeffs[r].clone();
            }
        }
        mat
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> BigRational {
        self.multiplication_matrix().det_field()
    }

    /// Total order on representations, for deterministic sorting only.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Complex value as `(re, im)`, for display and diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = std::f64::consts::TAU * j as f64 / self.m as f64;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl CommRing for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.m)
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.m)
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let b = b.as_ref().unwrap_or(rhs);
        Cyclotomic { m: a.m, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let b = b.as_ref().unwrap_or(rhs);
        Cyclotomic { m: a.m, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.m != rhs.m {
            let (a, b) = self.aligned(rhs);
            return a.mul_ref(b.as_ref().expect("aligned"));
        }
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        if let (Some(a), Some(b)) = (self.int_coeffs(), rhs.int_coeffs()) {
            if let Some(out) = self.mul_ints(&a, &b) {
                return out;
            }
        }
        let data = field_data(self.m);
        let phi = data.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        let m = self.m as usize;
        let mut folded = vec![BigRational::zero(); m.max(prod.len())];
        for (d, c) in prod.into_iter().enumerate() {
            if !Zero::is_zero(&c) {
                folded[d % m] += c;
            }
        }
        folded.truncate(m);
        Self::from_folded(self.m, &data, folded)
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        if self.is_rational() {
            return Some(Cyclotomic::from_rational(self.m, self.coeffs[0].recip()));
        }
        let mat = self.multiplication_matrix();
        let mut rhs = vec![BigRational::zero(); self.coeffs.len()];
        rhs[0] = BigRational::one();
        let x = mat.solve(&rhs)?;
        Some(Cyclotomic { m: self.m, coeffs: x })
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match j {
                0 => String::new(),
                1 => format!("z{}", self.m),
                _ => format!("z{}^{}", self.m, j),
            };
            if j == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("conductor", &self.m)?;
        s.serialize_field("coeffs", &self.coeff_strings())?;
        s.end()
    }
}

/// Free-function form of [`Cyclotomic::normalize`].
pub fn cyc_normalize(raw: &[BigRational], m: u32) -> Cyclotomic {
    Cyclotomic::normalize(raw, m)
}

/// Free-function form of [`Cyclotomic::conjugate`].
pub fn cyc_conjugate(z: &Cyclotomic) -> Cyclotomic {
    z.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, totient(m));
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(cyc_normalize(&[q(1)], 1), Cyclotomic::one(1));
        assert_eq!(cyc_normalize(&[q(0), q(0), q(1)], 4), Cyclotomic::from_int(4, -1));
        assert_eq!(cyc_normalize(&[q(0), q(1), q(1)], 3), Cyclotomic::from_int(3, -1));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(cyc_conjugate(&Cyclotomic::one(7)), Cyclotomic::one(7));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(cyc_conjugate(&i), i.neg_ref());
        let s = Cyclotomic::root_of_unity(5, 1).add_ref(&Cyclotomic::root_of_unity(5, 4));
        assert_eq!(cyc_conjugate(&s), s);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in 2..30u32 {
            let mut acc = Cyclotomic::zero(m);
            for j in 0..m {
                acc = acc.add_ref(&Cyclotomic::root_of_unity(m, j as i64));
            }
            assert!(acc.is_zero_elem(), "m = {m}");
        }
    }

    #[test]
    fn roots_multiply_by_adding_exponents() {
        let m = 12;
        for a in 0..m as i64 {
            for b in 0..m as i64 {
                assert_eq!(
                    Cyclotomic::root_of_unity(m, a).mul_ref(&Cyclotomic::root_of_unity(m, b)),
                    Cyclotomic::root_of_unity(m, a + b)
                );
            }
        }
    }

    #[test]
    fn embedding_preserves_value() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let w = z.embed(12);
        assert_eq!(w, Cyclotomic::root_of_unity(12, 4));
        assert_eq!(z.add_ref(&Cyclotomic::root_of_unity(4, 1)).conductor(), 12);
    }

    #[test]
    fn inverse_and_norm() {
        let z = Cyclotomic::one(5).add_ref(&Cyclotomic::root_of_unity(5, 2));
        let inv = z.inv().unwrap();
        assert_eq!(z.mul_ref(&inv), Cyclotomic::one(5));
        // 1 + ζ_5^2 is a unit
        assert_eq!(z.norm().abs(), BigRational::one());
        let two_i = Cyclotomic::root_of_unity(4, 1).mul_int(&BigInt::from(2));
        assert_eq!(two_i.norm(), q(4));
    }

    #[test]
    fn display() {
        let z = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(z.to_string(), "-1 - z3");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
    }
}
