//! Character-level identities for power operations, and real/complex/quaternionic types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::power_ops::{adams, adams_adjoint, newton_sigma, power_operations, virtual_sigma, virtual_sigma_newton, virtual_sigma_upto, compose_sigma_difference};
use super::{CharacterError, CharacterTable, ClassFunction, VirtualCharacter};
use crate::exact::CommRing;
use crate::groups::ConjugacyData;
use crate::report::CheckOutcome;

fn first_difference(a: &ClassFunction, b: &ClassFunction) -> Value {
    match (0..a.values().len()).find(|&c| a.value(c) != b.value(c)) {
        Some(c) => json!({
            "class": c,
            "representative": a.classes().group().label(a.classes().representative(c)),
            "left": a.value(c).to_string(),
            "right": b.value(c).to_string(),
        }),
        None => Value::Null,
    }
}

/// Checks `ψ^k(reg) = reg`; the statement needs `gcd(k, |Γ|) = 1`.
pub fn verify_regular_fixed(cd: &std::sync::Arc<ConjugacyData>, k: i64) -> CheckOutcome {
    let reg = ClassFunction::regular(cd);
    let image = adams(&reg, k);
    let gcd = k.gcd(&(cd.order() as i64));
    CheckOutcome::new(
        "regular-fixed",
        "psi^k fixes the regular character when k is prime to the group order",
        json!({ "group": cd.group().name(), "k": k, "gcd": gcd }),
        image == reg,
        json!({ "image": image.to_json(), "regular": reg.to_json(), "first_difference": first_difference(&image, &reg) }),
    )
    .with_hypothesis(gcd == 1)
}

/// Checks `ψ̂^k = ψ^{k'}` on every irreducible, given `gcd(k, |Γ|) = 1` and `kk' ≡ 1 mod e`.
pub fn verify_adjoint_is_inverse_adams(
    table: &CharacterTable,
    k: u64,
    k_inv: u64,
) -> Result<CheckOutcome, CharacterError> {
    let cd = table.classes();
    let (n, e) = (cd.order() as u64, cd.exponent() as u64);
    if k.gcd(&n) != 1 || (k * k_inv) % e != 1 % e {
        return Err(CharacterError::Precondition(format!(
            "need gcd(k,|G|)=1 and k*k' = 1 mod {e}; got k={k}, k'={k_inv}"
        )));
    }
    let mismatch = table.rows().iter().enumerate().find_map(|(i, chi)| {
        let (lhs, rhs) = (adams_adjoint(chi, k), adams(chi, k_inv as i64));
        (lhs != rhs).then(|| json!({ "irreducible": i, "difference": first_difference(&lhs, &rhs) }))
    });
    Ok(CheckOutcome::new(
        "adjoint-inverse-adams",
        "the adjoint Adams operation equals psi^{k'} when k is prime to |G| and kk' = 1 mod e",
        json!({ "group": cd.group().name(), "k": k, "k_prime": k_inv }),
        mismatch.is_none(),
        mismatch.unwrap_or(Value::Null),
    ))
}

/// Checks `⟨ψ̂^k χ, θ⟩ = ⟨χ, ψ^k θ⟩` for all pairs of irreducibles.
pub fn verify_adjoint_pairing(table: &CharacterTable, k: u64) -> CheckOutcome {
    let rows = table.rows();
    let adj: Vec<ClassFunction> = rows.iter().map(|chi| adams_adjoint(chi, k)).collect();
    let psi: Vec<ClassFunction> = rows.iter().map(|th| adams(th, k as i64)).collect();
    let mut witness = Value::Null;
    'outer: for a in 0..rows.len() {
        for b in 0..rows.len() {
            let lhs = adj[a].pairing(&rows[b]).expect("same group");
            let rhs = rows[a].pairing(&psi[b]).expect("same group");
            if lhs != rhs {
                witness = json!({ "chi": a, "theta": b, "left": lhs.to_string(), "right": rhs.to_string() });
                break 'outer;
            }
        }
    }
    CheckOutcome::new(
        "adjoint-pairing",
        "<adjoint psi^k chi, theta> = <chi, psi^k theta> for all irreducible pairs",
        json!({ "group": table.classes().group().name(), "k": k }),
        witness.is_null(),
        witness,
    )
}

/// Checks `ψ^k = ψ^{k+e}` on every irreducible.
pub fn verify_periodicity(table: &CharacterTable, k: i64) -> CheckOutcome {
    let e = table.classes().exponent() as i64;
    let mismatch = table.rows().iter().enumerate().find_map(|(i, chi)| {
        let (a, b) = (adams(chi, k), adams(chi, k + e));
        (a != b).then(|| json!({ "irreducible": i, "difference": first_difference(&a, &b) }))
    });
    CheckOutcome::new(
        "periodicity",
        "psi^k = psi^{k+e} where e is the group exponent",
        json!({ "group": table.classes().group().name(), "k": k, "exponent": e }),
        mismatch.is_none(),
        mismatch.unwrap_or(Value::Null),
    )
}

/// Checks `Σ_{j=0}^{i} (−1)^j λ^j(χ)·σ^{i−j}(χ) = 0` for a genuine character.
pub fn verify_koszul(table: &CharacterTable, chi: &ClassFunction, i: usize) -> Result<CheckOutcome, CharacterError> {
    let ops = power_operations(table, chi, i)?;
    let mut acc = chi.zero_like();
    for j in 0..=i {
        let term = ops.lambda[j].mul_ref(&ops.sigma[i - j]);
        acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    Ok(CheckOutcome::new(
        "koszul",
        "sum_j (-1)^j lambda^j(chi) sigma^{i-j}(chi) = 0",
        json!({ "group": table.classes().group().name(), "chi": chi.to_json(), "i": i }),
        acc.is_zero_elem(),
        json!({ "alternating_sum": acc.to_json() }),
    ))
}

/// [`verify_koszul`] for every `i` in `1..=max_i`, sharing one power computation.
pub fn verify_koszul_upto(table: &CharacterTable, chi: &ClassFunction, max_i: usize) -> Result<Vec<CheckOutcome>, CharacterError> {
    let ops = power_operations(table, chi, max_i)?;
    Ok((1..=max_i)
        .map(|i| {
            let mut acc = chi.zero_like();
            for j in 0..=i {
                let term = ops.lambda[j].mul_ref(&ops.sigma[i - j]);
                acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            CheckOutcome::new(
                "koszul",
                "sum_j (-1)^j lambda^j(chi) sigma^{i-j}(chi) = 0",
                json!({ "group": table.classes().group().name(), "chi": chi.to_json(), "i": i }),
                acc.is_zero_elem(),
                json!({ "alternating_sum": acc.to_json() }),
            )
        })
        .collect())
}

/// Checks `ψ^i(χθ) = ψ^i(χ)·ψ^i(θ)` classwise.
pub fn verify_multiplicativity(chi: &ClassFunction, theta: &ClassFunction, i: i64) -> Result<CheckOutcome, CharacterError> {
    if !chi.same_group(theta) {
        return Err(CharacterError::GroupMismatch);
    }
    let lhs = adams(&chi.mul_ref(theta), i);
    let rhs = adams(chi, i).mul_ref(&adams(theta, i));
    Ok(CheckOutcome::new(
        "multiplicativity",
        "psi^i(chi theta) = psi^i(chi) psi^i(theta)",
        json!({ "group": chi.classes().group().name(), "i": i }),
        lhs == rhs,
        json!({ "first_difference": first_difference(&lhs, &rhs) }),
    ))
}

/// Compares the composition-sum formula for `σ^i(M − N)` with the Newton recursion.
pub fn verify_virtual_sigma_paths(
    table: &CharacterTable,
    m: &VirtualCharacter,
    n: &VirtualCharacter,
    i: usize,
) -> Result<CheckOutcome, CharacterError> {
    let formula = virtual_sigma(table, m, n, i)?;
    let newton = virtual_sigma_newton(table, &m.sub(n), i)?;
    Ok(CheckOutcome::new(
        "virtual-sigma-paths",
        "sigma^i(M - N) by the composition sum agrees with the Newton recursion",
        json!({ "group": table.classes().group().name(), "m": m, "n": n, "i": i }),
        formula == newton,
        json!({ "formula": formula, "newton": newton }),
    ))
}

/// [`verify_virtual_sigma_paths`] for every `i` in `1..=max_i`; decompositions are attached on failure.
pub fn verify_virtual_sigma_paths_upto(
    table: &CharacterTable,
    m: &VirtualCharacter,
    n: &VirtualCharacter,
    max_i: usize,
) -> Result<Vec<CheckOutcome>, CharacterError> {
    let formula = virtual_sigma_upto(table, m, n, max_i)?;
    let newton = newton_sigma(&table.assemble(&m.sub(n)), max_i)?;
    (1..=max_i).map(|i| sigma_paths_outcome(table, m, n, i, &formula[i], &newton[i])).collect()
}

/// [`verify_virtual_sigma_paths_upto`] over all ordered pairs of irreducibles of degree at most `max_degree`.
pub fn verify_virtual_sigma_grid(
    table: &CharacterTable,
    max_degree: i64,
    max_i: usize,
) -> Result<Vec<CheckOutcome>, CharacterError> {
    let degrees = table.degrees();
    let small: Vec<usize> = (0..table.len()).filter(|&a| degrees[a] <= max_degree).collect();
    let sigmas = small
        .iter()
        .map(|&a| Ok(power_operations(table, table.row(a), max_i)?.sigma))
        .collect::<Result<Vec<_>, CharacterError>>()?;
    let mut out = Vec::new();
    for (x, &a) in small.iter().enumerate() {
        for (y, &b) in small.iter().enumerate() {
            let formula = compose_sigma_difference(&sigmas[x], &sigmas[y]);
            let newton = newton_sigma(&table.row(a).sub_ref(table.row(b)), max_i)?;
            let m = VirtualCharacter::basis(table.len(), a);
            let n = VirtualCharacter::basis(table.len(), b);
            for i in 1..=max_i {
                out.push(sigma_paths_outcome(table, &m, &n, i, &formula[i], &newton[i])?);
            }
        }
    }
    Ok(out)
}

fn sigma_paths_outcome(
    table: &CharacterTable,
    m: &VirtualCharacter,
    n: &VirtualCharacter,
    i: usize,
    formula: &ClassFunction,
    newton: &ClassFunction,
) -> Result<CheckOutcome, CharacterError> {
    let agree = formula == newton;
    let witness = if agree {
        Value::Null
    } else {
        json!({ "formula": table.decompose(formula)?, "newton": table.decompose(newton)? })
    };
    Ok(CheckOutcome::new(
        "virtual-sigma-paths",
        "sigma^i(M - N) by the composition sum agrees with the Newton recursion",
        json!({ "group": table.classes().group().name(), "m": m, "n": n, "i": i }),
        agree,
        witness,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FsType {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternionic,
}

/// Frobenius–Schur types of the irreducibles, with conjugate partners of complex rows.
#[derive(Clone, Debug, Serialize)]
pub struct FsClassification {
    pub types: Vec<FsType>,
    pub indicators: Vec<i64>,
    /// Index of the complex-conjugate row, for complex-type rows only.
    pub partner: Vec<Option<usize>>,
}

/// Indicator `⟨ψ²χ, 1⟩ ∈ {1, 0, −1}` for every irreducible.
pub fn fs_classify(table: &CharacterTable) -> Result<FsClassification, CharacterError> {
    let triv = table.trivial();
    let mut types = Vec::new();
    let mut indicators = Vec::new();
    let mut partner = Vec::new();
    for chi in table.rows() {
        let nu = adams(chi, 2).pairing(&triv)?;
        let v = nu.to_i64().ok_or_else(|| CharacterError::IndicatorOutOfRange(nu.to_string()))?;
        let t = match v {
            1 => FsType::Real,
            0 => FsType::Complex,
            -1 => FsType::Quaternionic,
            _ => return Err(CharacterError::IndicatorOutOfRange(v.to_string())),
        };
        let p = if t == FsType::Complex {
            let conj = chi.conjugate();
            Some(table.find_row(&conj).ok_or_else(|| CharacterError::Inconsistent("conjugate row missing".into()))?)
        } else {
            None
        };
        types.push(t);
        indicators.push(v);
        partner.push(p);
    }
    Ok(FsClassification { types, indicators, partner })
}

/// Membership in `2K^R ⊕ (1 + conj)K^C ⊕ K^H`, with the violating coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct SymplecticMembership {
    pub member: bool,
    pub violations: Vec<Value>,
}

pub fn in_symplectic_subgroup(fs: &FsClassification, x: &VirtualCharacter) -> SymplecticMembership {
    let two = BigInt::from(2);
    let mut violations = Vec::new();
    for (i, t) in fs.types.iter().enumerate() {
        let c = &x.coeffs[i];
        match t {
            FsType::Real if !(c % &two).is_zero() => {
                violations.push(json!({ "irreducible": i, "type": "R", "coefficient": c.to_string(), "reason": "odd" }))
            }
            FsType::Complex => {
                let j = fs.partner[i].expect("complex rows have partners");
                if i < j && x.coeffs[j] != *c {
                    violations.push(json!({
                        "irreducible": i, "partner": j, "type": "C",
                        "coefficient": c.to_string(), "partner_coefficient": x.coeffs[j].to_string(),
                        "reason": "conjugate coefficients differ",
                    }));
                }
            }
            _ => {}
        }
    }
    SymplecticMembership { member: violations.is_empty(), violations }
}

/// Checks that `ψ̂^k` sends every quaternionic irreducible into the symplectic subgroup for
/// `1 ≤ k ≤ max_k`; the witness also records whether `ψ²` does, which it need not.
pub fn verify_symplectic_adjoint(table: &CharacterTable, max_k: u64) -> Result<CheckOutcome, CharacterError> {
    let fs = fs_classify(table)?;
    let mut failures = Vec::new();
    let mut adams_contrast = Vec::new();
    for (i, chi) in table.rows().iter().enumerate() {
        if fs.types[i] != FsType::Quaternionic {
            continue;
        }
        for k in 1..=max_k {
            let x = table.decompose(&adams_adjoint(chi, k))?;
            let m = in_symplectic_subgroup(&fs, &x);
            if !m.member {
                failures.push(json!({ "irreducible": i, "k": k, "decomposition": x, "violations": m.violations }));
            }
        }
        let psi2 = table.decompose(&adams(chi, 2))?;
        let m = in_symplectic_subgroup(&fs, &psi2);
        adams_contrast.push(json!({ "irreducible": i, "psi2": psi2, "symplectic": m.member, "violations": m.violations }));
    }
    Ok(CheckOutcome::new(
        "symplectic-adjoint",
        "the adjoint Adams operations map quaternionic irreducibles into the symplectic subgroup",
        json!({ "group": table.classes().group().name(), "max_k": max_k }),
        failures.is_empty(),
        json!({ "types": fs.types, "failures": failures, "psi2_of_quaternionic": adams_contrast }),
    ))
}

/// Dixon's table against the closed form (when one exists), orthogonality, and `Σ deg² = |Γ|`.
pub fn verify_character_table(cd: &std::sync::Arc<ConjugacyData>) -> CheckOutcome {
    let params = json!({ "group": cd.group().name() });
    let statement = "modular and closed-form character tables agree, rows are orthonormal, degrees square-sum to |G|";
    let dixon = match super::dixon_table(cd) {
        Ok(t) => t,
        Err(e) => return CheckOutcome::new("character-table", statement, params, false, json!({ "dixon_error": e.to_string() })),
    };
    let closed = super::closed_form_table(cd);
    let (closed_match, closed_err) = match &closed {
        None => (None, None),
        Some(Ok(c)) => (Some(c.same_rows(&dixon)), None),
        Some(Err(e)) => (Some(false), Some(e.to_string())),
    };
    let orthogonal = dixon.check_orthogonality().is_ok();
    let degree_sum: i64 = dixon.degrees().iter().map(|d| d * d).sum();
    let passed = closed_match != Some(false) && orthogonal && degree_sum == cd.order() as i64;
    CheckOutcome::new(
        "character-table",
        statement,
        params,
        passed,
        json!({
            "classes": cd.num_classes(),
            "degrees": dixon.degrees(),
            "degree_square_sum": degree_sum,
            "closed_form_match": closed_match,
            "closed_form_error": closed_err,
            "orthogonal": orthogonal,
        }),
    )
}
