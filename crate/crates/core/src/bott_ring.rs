//! Bott elements and their multiplier identities in `ℤ[x]/(x^m − 1)`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::report::CheckOutcome;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BottError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("k must be positive")]
    ZeroK,
    #[error("k*k' = {product} is not 1 mod {m}")]
    NotInverse { product: u64, m: u64 },
    #[error("k = {k} is not invertible mod {m}")]
    NotCoprime { k: u64, m: u64 },
}

/// Element of `ℤ[x]/(x^m − 1)` on the basis `1, x, …, x^{m−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicElement {
    pub coeffs: Vec<i64>,
}

impl CyclicElement {
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at `x = 1`.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `ℤ[x]/(x^m − 1)`.
#[derive(Clone, Copy, Debug)]
pub struct CyclicQuotientRing {
    m: usize,
}

impl CyclicQuotientRing {
    pub fn new(m: usize) -> Result<Self, BottError> {
        if m == 0 {
            return Err(BottError::ZeroModulus);
        }
        Ok(CyclicQuotientRing { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> CyclicElement {
        CyclicElement { coeffs: vec![0; self.m] }
    }

    pub fn constant(&self, c: i64) -> CyclicElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn one(&self) -> CyclicElement {
        self.constant(1)
    }

    /// `x^j`, any integer `j`.
    pub fn x_pow(&self, j: i64) -> CyclicElement {
        let mut e = self.zero();
        e.coeffs[j.rem_euclid(self.m as i64) as usize] = 1;
        e
    }

    /// Norm element `1 + x + ⋯ + x^{m−1}`.
    pub fn norm_element(&self) -> CyclicElement {
        CyclicElement { coeffs: vec![1; self.m] }
    }

    pub fn add(&self, a: &CyclicElement, b: &CyclicElement) -> CyclicElement {
        CyclicElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &CyclicElement, b: &CyclicElement) -> CyclicElement {
        CyclicElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, a: &CyclicElement, c: i64) -> CyclicElement {
        CyclicElement { coeffs: a.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Cyclic convolution.
    pub fn mul(&self, a: &CyclicElement, b: &CyclicElement) -> CyclicElement {
        let mut out = self.zero();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out.coeffs[(i + j) % self.m] += x * y;
            }
        }
        out
    }

    /// `Σ_{i<count} x^{i·step}`.
    pub fn geometric(&self, step: u64, count: u64) -> CyclicElement {
        let mut out = self.zero();
        for i in 0..count {
            out.coeffs[((i * step) % self.m as u64) as usize] += 1;
        }
        out
    }

    /// Bott element `θ^k(x) = 1 + x + ⋯ + x^{k−1}`.
    pub fn bott_element(&self, k: u64) -> Result<CyclicElement, BottError> {
        if k == 0 {
            return Err(BottError::ZeroK);
        }
        Ok(self.geometric(1, k))
    }

    /// `c` with `a − 1 = c·ν`, if one exists.
    pub fn norm_multiple_of_unit_gap(&self, a: &CyclicElement) -> Option<i64> {
        let gap = self.sub(a, &self.one());
        let c = gap.coeffs[0];
        gap.coeffs.iter().all(|&v| v == c).then_some(c)
    }
}

/// Smallest `k' ≥ 1` with `k·k' ≡ 1 mod m`.
pub fn minimal_inverse(k: u64, m: u64) -> Result<u64, BottError> {
    if m == 0 {
        return Err(BottError::ZeroModulus);
    }
    if k.gcd(&m) != 1 {
        return Err(BottError::NotCoprime { k, m });
    }
    Ok((1..=m).find(|&kp| (k * kp) % m == 1 % m).expect("k is a unit mod m"))
}

/// Identities (i)–(iv) of the multiplier inversion:
/// (i) `θ^k(x)(x − 1) = x^k − 1`; (ii) `x^{kk'} = x`;
/// (iii) `(Σ_{i<k'} x^{ik})(x^k − 1) = x − 1`; (iv) `θ^k(x)·Σ_{i<k'} x^{ik} = 1 + ((kk'−1)/m)·ν`.
pub fn verify_bott_identities(m: usize, k: u64, kprime: u64) -> Result<CheckOutcome, BottError> {
    let ring = CyclicQuotientRing::new(m)?;
    if k == 0 || kprime == 0 {
        return Err(BottError::ZeroK);
    }
    let product = k * kprime;
    if product % m as u64 != 1 % m as u64 {
        return Err(BottError::NotInverse { product, m: m as u64 });
    }
    let theta = ring.bott_element(k)?;
    let x = ring.x_pow(1);
    let x_minus_one = ring.sub(&x, &ring.one());
    let xk_minus_one = ring.sub(&ring.x_pow(k as i64), &ring.one());
    let sigma = ring.geometric(k, kprime);
    let scalar = ((product - 1) / m as u64) as i64;

    let lhs1 = ring.mul(&theta, &x_minus_one);
    let ok1 = lhs1 == xk_minus_one;
    let lhs2 = ring.x_pow(product as i64);
    let ok2 = lhs2 == x;
    let lhs3 = ring.mul(&sigma, &xk_minus_one);
    let ok3 = lhs3 == x_minus_one;
    let lhs4 = ring.mul(&theta, &sigma);
    let rhs4 = ring.add(&ring.one(), &ring.scale(&ring.norm_element(), scalar));
    let ok4 = lhs4 == rhs4;
    Ok(CheckOutcome::new(
        "bott-identities",
        "theta^k(x) times sum_{i<k'} x^{ik} is 1 modulo the norm line, through identities (i)-(iv)",
        json!({ "m": m, "k": k, "kprime": kprime }),
        ok1 && ok2 && ok3 && ok4,
        json!({
            "theta": theta.to_string(),
            "inverse_candidate": sigma.to_string(),
            "i": { "lhs": lhs1.to_string(), "rhs": xk_minus_one.to_string(), "holds": ok1 },
            "ii": { "lhs": lhs2.to_string(), "rhs": x.to_string(), "holds": ok2 },
            "iii": { "lhs": lhs3.to_string(), "rhs": x_minus_one.to_string(), "holds": ok3 },
            "iv": { "lhs": lhs4.to_string(), "rhs": rhs4.to_string(), "norm_coefficient": scalar, "holds": ok4 },
            "augmentation_of_theta": theta.augmentation(),
        }),
    ))
}

/// `x^k − 1 = (x − 1)·θ^k(x)`, the augmentation `θ^k(1) = k`, and for `gcd(k, m) = 1`
/// a unit witness for `θ^k` modulo the norm line.
pub fn verify_bott_multiplier(m: usize, k: u64) -> Result<CheckOutcome, BottError> {
    let ring = CyclicQuotientRing::new(m)?;
    let theta = ring.bott_element(k)?;
    let lhs = ring.sub(&ring.x_pow(k as i64), &ring.one());
    let rhs = ring.mul(&ring.sub(&ring.x_pow(1), &ring.one()), &theta);
    let identity = lhs == rhs;
    let augmentation = theta.augmentation() == k as i64;
    let wrap = ring.bott_element(k + m as u64)? == ring.add(&theta, &ring.norm_element());
    let unit = match minimal_inverse(k, m as u64) {
        Ok(kp) => {
            let inverse = ring.geometric(k, kp);
            let c = ring.norm_multiple_of_unit_gap(&ring.mul(&theta, &inverse));
            Some(json!({ "kprime": kp, "inverse": inverse.to_string(), "norm_coefficient": c, "holds": c.is_some() }))
        }
        Err(_) => None,
    };
    let unit_ok = unit.as_ref().map_or(true, |u| u["holds"] == true);
    Ok(CheckOutcome::new(
        "bott-multiplier",
        "x^k - 1 = (x - 1) theta^k(x), theta^k(1) = k, and theta^k is a unit modulo the norm line when gcd(k, m) = 1",
        json!({ "m": m, "k": k }),
        identity && augmentation && wrap && unit_ok,
        json!({
            "theta": theta.to_string(),
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "augmentation": theta.augmentation(),
            "wraparound": wrap,
            "unit_witness": unit,
        }),
    ))
}

/// All `m ≤ max_m`, `k ≤ max_k` with `gcd(k, m) = 1`, using the minimal `k'`.
pub fn verify_bott_grid(max_m: usize, max_k: u64) -> CheckOutcome {
    let mut runs = 0;
    let mut failures = Vec::new();
    for m in 1..=max_m {
        for k in 1..=max_k {
            let Ok(kp) = minimal_inverse(k, m as u64) else { continue };
            runs += 1;
            let a = verify_bott_identities(m, k, kp).expect("k' is an inverse");
            let b = verify_bott_multiplier(m, k).expect("valid input");
            if !a.passed || !b.passed {
                failures.push(json!({ "m": m, "k": k, "kprime": kp }));
            }
        }
    }
    CheckOutcome::new(
        "bott-identities",
        "identities (i)-(iv) and the multiplier relation for every coprime (m, k) in the grid",
        json!({ "max_m": max_m, "max_k": max_k }),
        failures.is_empty(),
        json!({ "runs": runs, "failures": failures }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bott_element_examples() {
        let r3 = CyclicQuotientRing::new(3).unwrap();
        assert_eq!(r3.bott_element(1).unwrap(), r3.one());
        assert_eq!(r3.bott_element(2).unwrap().coeffs, vec![1, 1, 0]);
        assert_eq!(r3.bott_element(4).unwrap().coeffs, vec![2, 1, 1]);
        assert_eq!(r3.bott_element(4).unwrap().to_string(), "2 + x + x^2");
        assert_eq!(r3.bott_element(0), Err(BottError::ZeroK));
    }

    #[test]
    fn identity_examples() {
        let o = verify_bott_identities(3, 2, 2).unwrap();
        assert!(o.passed);
        assert_eq!(o.witness["iv"]["norm_coefficient"], 1);
        assert_eq!(o.witness["iv"]["lhs"], "2 + x + x^2");
        assert!(verify_bott_identities(4, 3, 3).unwrap().passed);
        for m in 1..6 {
            assert!(verify_bott_identities(m, 1, 1).unwrap().passed);
        }
        assert_eq!(verify_bott_identities(4, 2, 3).unwrap_err(), BottError::NotInverse { product: 6, m: 4 });
    }

    #[test]
    fn multiplier_examples() {
        assert!(verify_bott_multiplier(2, 3).unwrap().passed);
        let o = verify_bott_multiplier(5, 2).unwrap();
        assert!(o.passed);
        assert_eq!(o.witness["unit_witness"]["kprime"], 3);
        assert!(verify_bott_multiplier(4, 1).unwrap().passed);
        assert!(verify_bott_multiplier(4, 2).unwrap().witness["unit_witness"].is_null());
        assert_eq!(minimal_inverse(2, 4), Err(BottError::NotCoprime { k: 2, m: 4 }));
        assert!(verify_bott_grid(12, 12).passed);
    }
}
