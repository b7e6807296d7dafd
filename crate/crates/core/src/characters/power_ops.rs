//! Adams operations, their adjoints, and exterior/symmetric powers of characters.

use num_bigint::BigInt;

use super::{CharacterError, CharacterTable, ClassFunction, VirtualCharacter};
use crate::exact::{CommRing, Cyclotomic};

/// `ψ^k(χ)(γ) = χ(γ^k)`; any integer `k` is accepted and read modulo the exponent.
pub fn adams(chi: &ClassFunction, k: i64) -> ClassFunction {
    let cd = chi.classes();
    let values = (0..cd.num_classes()).map(|c| chi.value(cd.power_class(c, k)).clone()).collect();
    ClassFunction::new(cd, values)
}

/// `ψ̂^k(χ)(γ) = Σ_{τ^k = γ} χ(τ)`.
pub fn adams_adjoint(chi: &ClassFunction, k: u64) -> ClassFunction {
    let cd = chi.classes();
    let e = super::conductor(cd);
    let values = (0..cd.num_classes())
        .map(|c| {
            cd.kth_root_counts(k, c).iter().fold(Cyclotomic::zero(e), |acc, (&root_class, &count)| {
                acc.add_ref(&chi.value(root_class).mul_int(&BigInt::from(count)))
            })
        })
        .collect();
    ClassFunction::new(cd, values)
}

/// Newton recursion `i·a_i = Σ_{r=1}^{i} s^{r-1} ψ^r(χ)·a_{i-r}` with `s = ±1`, dividing exactly.
fn newton_powers(chi: &ClassFunction, i: usize, alternating: bool) -> Result<Vec<ClassFunction>, CharacterError> {
    let adams_values: Vec<ClassFunction> = (0..=i).map(|r| adams(chi, r as i64)).collect();
    let mut out = vec![chi.one_like()];
    for step in 1..=i {
        let mut acc = chi.zero_like();
        for r in 1..=step {
            let term = adams_values[r].mul_ref(&out[step - r]);
            acc = if alternating && r % 2 == 0 { acc.sub_ref(&term) } else { acc.add_ref(&term) };
        }
        let divisor = BigInt::from(step);
        let values = acc
            .values()
            .iter()
            .enumerate()
            .map(|(c, v)| v.div_int_exact(&divisor).ok_or(CharacterError::DivisionNotExact { step, class: c }))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(ClassFunction::new(chi.classes(), values));
    }
    Ok(out)
}

/// `λ^0, …, λ^i` of a class function by the Newton recursion.
pub fn newton_lambda(chi: &ClassFunction, i: usize) -> Result<Vec<ClassFunction>, CharacterError> {
    newton_powers(chi, i, true)
}

/// `σ^0, …, σ^i` of a class function by the Newton recursion.
pub fn newton_sigma(chi: &ClassFunction, i: usize) -> Result<Vec<ClassFunction>, CharacterError> {
    newton_powers(chi, i, false)
}

/// Exterior and symmetric powers `0..=i` of a genuine character.
#[derive(Clone, Debug)]
pub struct PowerOperations {
    pub lambda: Vec<ClassFunction>,
    pub sigma: Vec<ClassFunction>,
}

/// Power operations of a genuine character; every output is checked to be genuine.
pub fn power_operations(table: &CharacterTable, chi: &ClassFunction, i: usize) -> Result<PowerOperations, CharacterError> {
    table.decompose_genuine(chi)?;
    let lambda = newton_lambda(chi, i)?;
    let sigma = newton_sigma(chi, i)?;
    for cf in lambda.iter().chain(&sigma) {
        table.decompose_genuine(cf)?;
    }
    Ok(PowerOperations { lambda, sigma })
}

/// Compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `σ^i(M − N) = Σ_{a + b_1 + … + b_u = i} (−1)^u σ^a(M)·σ^{b_1}(N)⋯σ^{b_u}(N)`, with `b_j ≥ 1`,
/// evaluated with symmetric powers of the genuine characters `M` and `N`.
pub fn virtual_sigma(
    table: &CharacterTable,
    m: &VirtualCharacter,
    n: &VirtualCharacter,
    i: usize,
) -> Result<VirtualCharacter, CharacterError> {
    let all = virtual_sigma_upto(table, m, n, i)?;
    table.decompose(&all[i])
}

/// Class functions of `σ^0(M − N), …, σ^max_i(M − N)` by the composition sum.
pub fn virtual_sigma_upto(
    table: &CharacterTable,
    m: &VirtualCharacter,
    n: &VirtualCharacter,
    max_i: usize,
) -> Result<Vec<ClassFunction>, CharacterError> {
    if !m.is_genuine() || !n.is_genuine() {
        return Err(CharacterError::Precondition("both parts of the difference must be genuine".into()));
    }
    let sm = power_operations(table, &table.assemble(m), max_i)?.sigma;
    let sn = power_operations(table, &table.assemble(n), max_i)?.sigma;
    Ok(compose_sigma_difference(&sm, &sn))
}

/// Composition sum for `σ^i(M − N)` from the symmetric powers `sm` of `M` and `sn` of `N`.
pub fn compose_sigma_difference(sm: &[ClassFunction], sn: &[ClassFunction]) -> Vec<ClassFunction> {
    let max_i = sm.len().min(sn.len()) - 1;
    let mut out = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        let mut acc = sm[0].zero_like();
        for a in 0..=i {
            for comp in compositions(i - a) {
                let mut term = sm[a].clone();
                for &b in &comp {
                    term = term.mul_ref(&sn[b]);
                }
                acc = if comp.len() % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
        }
        out.push(acc);
    }
    out
}

/// `σ^i` of a virtual character through the Newton recursion on its class function.
pub fn virtual_sigma_newton(
    table: &CharacterTable,
    x: &VirtualCharacter,
    i: usize,
) -> Result<VirtualCharacter, CharacterError> {
    let sigma = newton_sigma(&table.assemble(x), i)?;
    table.decompose(&sigma[i])
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::characters::character_table;
    use crate::groups::{conjugacy_classes, cyclic, quaternion8, symmetric};

    fn table(g: crate::groups::FiniteGroup) -> CharacterTable {
        character_table(&Arc::new(conjugacy_classes(&Arc::new(g)))).unwrap()
    }

    fn ints(cf: &ClassFunction) -> Vec<i64> {
        cf.values().iter().map(|v| v.to_i64().unwrap()).collect()
    }

    #[test]
    fn adams_examples() {
        let s3 = table(symmetric(3).unwrap());
        let std = s3.row(2);
        assert_eq!(adams(std, 1), *std);
        let psi2 = adams(std, 2);
        assert_eq!(ints(&psi2), vec![2, 2, -1]);
        assert_eq!(s3.decompose(&psi2).unwrap(), VirtualCharacter::from_i64(&[1, -1, 1]));
        let c2 = table(cyclic(2).unwrap());
        let reg = ClassFunction::regular(c2.classes());
        assert_eq!(adams(&reg, 3), reg);
    }

    #[test]
    fn adjoint_examples() {
        let q8 = table(quaternion8());
        let chi_h = q8.row(4);
        assert_eq!(adams_adjoint(chi_h, 1), *chi_h);
        assert!(adams_adjoint(chi_h, 2).is_zero_elem());
        let c3 = table(cyclic(3).unwrap());
        for chi in c3.rows() {
            assert_eq!(adams_adjoint(chi, 2), adams(chi, 2));
        }
    }

    #[test]
    fn power_operation_examples() {
        let c2 = table(cyclic(2).unwrap());
        let reg = ClassFunction::regular(c2.classes());
        let ops = power_operations(&c2, &reg, 2).unwrap();
        assert_eq!(ops.lambda[1], reg);
        assert_eq!(ops.sigma[1], reg);
        assert_eq!(ints(&ops.lambda[2]), vec![1, -1]);
        let s3 = table(symmetric(3).unwrap());
        let ops = power_operations(&s3, s3.row(2), 2).unwrap();
        assert_eq!(ints(&ops.sigma[2]), vec![3, 1, 0]);
        assert_eq!(s3.decompose(&ops.sigma[2]).unwrap(), VirtualCharacter::from_i64(&[1, 0, 1]));
        let virtual_input = s3.row(1).sub_ref(s3.row(0));
        assert!(matches!(power_operations(&s3, &virtual_input, 2), Err(CharacterError::NotGenuine(_))));
    }

    #[test]
    fn virtual_sigma_examples() {
        let s3 = table(symmetric(3).unwrap());
        let m = VirtualCharacter::from_i64(&[1, 0, 1]);
        for i in 1..=3 {
            assert!(virtual_sigma(&s3, &m, &m, i).unwrap().is_zero());
        }
        let n = VirtualCharacter::from_i64(&[0, 1, 0]);
        assert_eq!(virtual_sigma(&s3, &m, &n, 1).unwrap(), m.sub(&n));
        let c2 = table(cyclic(2).unwrap());
        let reg = VirtualCharacter::from_i64(&[1, 1]);
        let two = VirtualCharacter::from_i64(&[2, 0]);
        assert_eq!(
            virtual_sigma(&c2, &reg, &two, 2).unwrap(),
            virtual_sigma_newton(&c2, &reg.sub(&two), 2).unwrap()
        );
    }

    #[test]
    fn compositions_count() {
        for n in 1..=6 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }
}
