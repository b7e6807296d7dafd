//! Integral lattices with a group action: orbit decompositions of symmetric
//! powers of free group-ring modules, and the preimage lattices `C(β)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::characters::newton_sigma;
use crate::characters::ClassFunction;
use crate::exact::{
    det_bareiss, int_identity, lattice_basis, lattice_index, lattices_equal, p_part, smith_normal_form, valuation,
    CommRing, IntMatrix, Matrix,
};
use crate::groups::{ConjugacyData, FiniteGroup};
use crate::report::{bigint_json, CheckOutcome};
use crate::schur_modules::{multisets, symmetric_matrix};

/// Default cap on the number of multiset tuples enumerated.
pub const DEFAULT_ORBIT_BUDGET: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_ORBIT_BUDGET`].
pub const ORBIT_BUDGET_VAR: &str = "LAMBDABENCH_ORBIT_BUDGET";

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("enumeration needs {attempted} multiset tuples, budget is {budget}")]
    BudgetExceeded { attempted: u128, budget: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("matrix does not commute with the group action (element {element})")]
    NotEquivariant { element: String },
    #[error("matrix is singular")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Orbit budget from the environment, or the default.
pub fn orbit_budget() -> u128 {
    std::env::var(ORBIT_BUDGET_VAR).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_ORBIT_BUDGET)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of `k`-multisets over `labels` labels.
pub fn multiset_count(labels: usize, k: usize) -> Option<u128> {
    if labels == 0 {
        return Some(u128::from(k == 0));
    }
    binomial((labels + k - 1) as u128, k as u128)
}

/// One orbit of multiset tuples.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    /// Smallest tuple in the orbit; labels are `i·|Γ| + g` for basis vector `g·b_i`.
    pub representative: Vec<Vec<usize>>,
    /// Stabilizer elements, ascending.
    pub stabilizer: Vec<usize>,
    pub size: usize,
}

/// Orbits of `Γ` on tuples `(H^1, …, H^r)` of `k_i`-multisets over `Γ × {1..n}`.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub group: Arc<FiniteGroup>,
    pub rank: usize,
    pub powers: Vec<usize>,
    pub total: u128,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Number of orbits with trivial stabilizer.
    pub fn free_rank(&self) -> usize {
        self.orbits.iter().filter(|o| o.stabilizer.len() == 1).count()
    }

    pub fn is_free(&self) -> bool {
        self.free_rank() == self.orbits.len()
    }

    pub fn max_stabilizer_order(&self) -> usize {
        self.orbits.iter().map(|o| o.stabilizer.len()).max().unwrap_or(1)
    }

    /// Orbit count per stabilizer order.
    pub fn stabilizer_histogram(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for o in &self.orbits {
            *out.entry(o.stabilizer.len()).or_insert(0) += 1;
        }
        out
    }

    /// Sum of the orbit sizes.
    pub fn orbit_sum(&self) -> u128 {
        self.orbits.iter().map(|o| o.size as u128).sum()
    }

    fn label_text(&self, b: usize) -> String {
        let n = self.group.order();
        format!("{}*b{}", self.group.label(b % n), b / n + 1)
    }

    /// Summands `ℤ[Γ/Stab]`, written with the stabilizer elements.
    pub fn summands(&self) -> Vec<String> {
        self.orbits
            .iter()
            .map(|o| {
                if o.stabilizer.len() == 1 {
                    "Z[G]".to_string()
                } else {
                    let s: Vec<&str> = o.stabilizer.iter().map(|&x| self.group.label(x)).collect();
                    format!("Z[G/{{{}}}]", s.join(","))
                }
            })
            .collect()
    }

    /// Permutation character of the tuple set, computed orbit by orbit as induced trivial characters.
    pub fn permutation_character(&self, classes: &Arc<ConjugacyData>) -> ClassFunction {
        let g = &self.group;
        let values: Vec<i64> = (0..classes.num_classes())
            .map(|c| {
                let x = classes.representative(c);
                self.orbits
                    .iter()
                    .map(|o| {
                        let conj_in = (0..g.order()).filter(|&y| o.stabilizer.binary_search(&g.conjugate(x, y)).is_ok()).count();
                        (conj_in / o.stabilizer.len()) as i64
                    })
                    .sum()
            })
            .collect();
        ClassFunction::from_integers(classes, &values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orbits: Vec<_> = self
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "representative": o.representative.iter()
                        .map(|h| h.iter().map(|&b| self.label_text(b)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "stabilizer": o.stabilizer.iter().map(|&x| self.group.label(x)).collect::<Vec<_>>(),
                    "size": o.size,
                })
            })
            .collect();
        json!({
            "group": self.group.name(),
            "rank": self.rank,
            "powers": self.powers,
            "total": self.total.to_string(),
            "orbit_count": self.orbit_count(),
            "free_rank": self.free_rank(),
            "stabilizer_histogram": self.stabilizer_histogram(),
            "summands": self.summands(),
            "orbits": orbits,
        })
    }
}

/// Orbit counts per stabilizer subgroup, without listing representatives.
#[derive(Clone, Debug)]
pub struct OrbitSummary {
    pub group: Arc<FiniteGroup>,
    pub rank: usize,
    pub powers: Vec<usize>,
    pub total: u128,
    /// Stabilizer (ascending elements) to number of orbits with exactly that stabilizer.
    pub by_stabilizer: BTreeMap<Vec<usize>, u128>,
}

impl OrbitSummary {
    pub fn orbit_count(&self) -> u128 {
        self.by_stabilizer.values().sum()
    }

    pub fn free_count(&self) -> u128 {
        self.by_stabilizer.iter().filter(|(h, _)| h.len() == 1).map(|(_, c)| c).sum()
    }

    pub fn is_free(&self) -> bool {
        self.free_count() == self.orbit_count()
    }

    pub fn max_stabilizer_order(&self) -> usize {
        self.by_stabilizer.keys().map(Vec::len).max().unwrap_or(1)
    }

    /// Orbit count per stabilizer order.
    pub fn stabilizer_histogram(&self) -> BTreeMap<usize, u128> {
        let mut out = BTreeMap::new();
        for (h, c) in &self.by_stabilizer {
            *out.entry(h.len()).or_insert(0) += c;
        }
        out
    }

    pub fn orbit_sum(&self) -> u128 {
        let order = self.group.order() as u128;
        self.by_stabilizer.iter().map(|(h, c)| c * (order / h.len() as u128)).sum()
    }

    /// Permutation character as a sum of induced trivial characters, one per stabilizer.
    pub fn permutation_character(&self, classes: &Arc<ConjugacyData>) -> ClassFunction {
        let g = &self.group;
        let values: Vec<i64> = (0..classes.num_classes())
            .map(|c| {
                let x = classes.representative(c);
                self.by_stabilizer
                    .iter()
                    .map(|(h, count)| {
                        let conj_in = (0..g.order()).filter(|&y| h.binary_search(&g.conjugate(x, y)).is_ok()).count();
                        (conj_in / h.len()) as i64 * *count as i64
                    })
                    .sum()
            })
            .collect();
        ClassFunction::from_integers(classes, &values)
    }
}

/// Orbit summary by a stabilizer chain: the first factor runs over lexicographically least
/// orbit members, the rest over orbits of its stabilizer. Trivial stabilizers close the
/// remaining factors in one step, so the cost tracks the non-free part.
pub fn sym_power_orbit_summary(group: &Arc<FiniteGroup>, n: usize, ks: &[usize]) -> Result<OrbitSummary, LatticeError> {
    if n == 0 {
        return Err(LatticeError::Invalid("rank must be at least 1".into()));
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err(LatticeError::Invalid("powers must be a nonempty list of positive integers".into()));
    }
    let order = group.order();
    let labels = n * order;
    let counts: Vec<u128> = ks
        .iter()
        .map(|&k| multiset_count(labels, k).ok_or(LatticeError::BudgetExceeded { attempted: u128::MAX, budget: u128::MAX }))
        .collect::<Result<_, _>>()?;
    let overflow = || LatticeError::BudgetExceeded { attempted: u128::MAX, budget: u128::MAX };
    let total = counts.iter().try_fold(1u128, |acc, &c| acc.checked_mul(c)).ok_or_else(overflow)?;
    // suffix[i] = number of tuples of factors i..
    let mut suffix = vec![1u128; ks.len() + 1];
    for i in (0..ks.len()).rev() {
        suffix[i] = suffix[i + 1].checked_mul(counts[i]).ok_or_else(overflow)?;
    }
    let moves: Vec<Vec<usize>> =
        (0..order).map(|x| (0..labels).map(|b| (b / order) * order + group.mul(x, b % order)).collect()).collect();
    let factors: Vec<Vec<Vec<usize>>> = ks.iter().map(|&k| multisets(labels, k)).collect();

    fn rec(
        i: usize,
        h: &[usize],
        factors: &[Vec<Vec<usize>>],
        moves: &[Vec<usize>],
        suffix: &[u128],
        out: &mut BTreeMap<Vec<usize>, u128>,
    ) {
        if i == factors.len() {
            *out.entry(h.to_vec()).or_insert(0) += 1;
            return;
        }
        if h.len() == 1 {
            *out.entry(h.to_vec()).or_insert(0) += suffix[i];
            return;
        }
        let mut scratch = Vec::new();
        'multiset: for m in &factors[i] {
            let mut stab = Vec::new();
            for &x in h {
                scratch.clear();
                scratch.extend(m.iter().map(|&b| moves[x][b]));
                scratch.sort_unstable();
                match scratch.as_slice().cmp(m) {
                    std::cmp::Ordering::Less => continue 'multiset,
                    std::cmp::Ordering::Equal => stab.push(x),
                    std::cmp::Ordering::Greater => {}
                }
            }
            rec(i + 1, &stab, factors, moves, suffix, out);
        }
    }

    let all: Vec<usize> = (0..order).collect();
    let mut by_stabilizer = BTreeMap::new();
    rec(0, &all, &factors, &moves, &suffix, &mut by_stabilizer);
    Ok(OrbitSummary { group: Arc::clone(group), rank: n, powers: ks.to_vec(), total, by_stabilizer })
}

/// Orbit decomposition of `Sym^{k_1}(M) ⊗ ⋯ ⊗ Sym^{k_r}(M)` for `M = ℤΓ^n`, with the default budget.
pub fn sym_power_orbits(group: &Arc<FiniteGroup>, n: usize, ks: &[usize]) -> Result<OrbitDecomposition, LatticeError> {
    sym_power_orbits_with_budget(group, n, ks, orbit_budget())
}

pub fn sym_power_orbits_with_budget(
    group: &Arc<FiniteGroup>,
    n: usize,
    ks: &[usize],
    budget: u128,
) -> Result<OrbitDecomposition, LatticeError> {
    if n == 0 {
        return Err(LatticeError::Invalid("rank must be at least 1".into()));
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err(LatticeError::Invalid("powers must be a nonempty list of positive integers".into()));
    }
    let order = group.order();
    let labels = n * order;
    let mut total: u128 = 1;
    for &k in ks {
        total = multiset_count(labels, k)
            .and_then(|c| total.checked_mul(c))
            .ok_or(LatticeError::BudgetExceeded { attempted: u128::MAX, budget })?;
    }
    if total > budget {
        return Err(LatticeError::BudgetExceeded { attempted: total, budget });
    }
    let factors: Vec<Vec<Vec<usize>>> = ks.iter().map(|&k| multisets(labels, k)).collect();
    let radices: Vec<usize> = factors.iter().map(Vec::len).collect();
    // left multiplication on labels, one row per group element
    let moves: Vec<Vec<usize>> =
        (0..order).map(|x| (0..labels).map(|b| (b / order) * order + group.mul(x, b % order)).collect()).collect();
    let orbits: Vec<Orbit> = (0..total as usize)
        .into_par_iter()
        .filter_map(|flat| {
            let mut rem = flat;
            let mut tuple: Vec<&[usize]> = vec![&[]; radices.len()];
            for i in (0..radices.len()).rev() {
                tuple[i] = &factors[i][rem % radices[i]];
                rem /= radices[i];
            }
            // keep only the lexicographically least tuple of each orbit
            let mut stabilizer = Vec::new();
            let mut scratch = Vec::new();
            for (x, mv) in moves.iter().enumerate() {
                let mut cmp = std::cmp::Ordering::Equal;
                for h in &tuple {
                    scratch.clear();
                    scratch.extend(h.iter().map(|&b| mv[b]));
                    scratch.sort_unstable();
                    cmp = scratch.as_slice().cmp(h);
                    if cmp != std::cmp::Ordering::Equal {
                        break;
                    }
                }
                match cmp {
                    std::cmp::Ordering::Less => return None,
                    std::cmp::Ordering::Equal => stabilizer.push(x),
                    std::cmp::Ordering::Greater => {}
                }
            }
            let size = order / stabilizer.len();
            Some(Orbit { representative: tuple.iter().map(|h| h.to_vec()).collect(), stabilizer, size })
        })
        .collect();
    Ok(OrbitDecomposition { group: Arc::clone(group), rank: n, powers: ks.to_vec(), total, orbits })
}

/// `Π_i σ^{k_i}(n·reg)` from the Newton recursion on characters.
pub fn sigma_of_free_module(classes: &Arc<ConjugacyData>, n: usize, ks: &[usize]) -> ClassFunction {
    let free = ClassFunction::regular(classes).mul_int(&BigInt::from(n));
    let top = ks.iter().copied().max().unwrap_or(0);
    let sigma = newton_sigma(&free, top).expect("symmetric powers of a genuine character are integral");
    ks.iter().fold(ClassFunction::trivial(classes), |acc, &k| acc.mul_ref(&sigma[k]))
}

/// Stabilizer orders divide `gcd(k_1, …, k_r, |Γ|)`, orbit sizes add up, and the
/// permutation character from the orbits equals `Π σ^{k_i}(n·reg)`.
pub fn verify_orbit_stabilizer(
    classes: &Arc<ConjugacyData>,
    n: usize,
    ks: &[usize],
) -> Result<CheckOutcome, LatticeError> {
    let group = classes.group();
    let dec = sym_power_orbit_summary(group, n, ks)?;
    let order = group.order();
    let g = ks.iter().fold(order, |acc, &k| acc.gcd(&k));
    let bad: Vec<_> = dec
        .by_stabilizer
        .iter()
        .filter(|(h, _)| g % h.len() != 0)
        .take(5)
        .map(|(h, c)| json!({ "stabilizer": h.iter().map(|&x| group.label(x)).collect::<Vec<_>>(), "orbits": c.to_string() }))
        .collect();
    let sums_match = dec.orbit_sum() == dec.total;
    let free_consistent = g != 1 || (dec.is_free() && dec.orbit_count() * order as u128 == dec.total);
    let from_orbits = dec.permutation_character(classes);
    let from_sigma = sigma_of_free_module(classes, n, ks);
    let shadow = from_orbits == from_sigma;
    let extremal: Vec<_> = dec
        .by_stabilizer
        .keys()
        .filter(|h| h.len() == dec.max_stabilizer_order())
        .take(3)
        .map(|h| h.iter().map(|&x| group.label(x)).collect::<Vec<_>>())
        .collect();
    let histogram: BTreeMap<usize, String> =
        dec.stabilizer_histogram().into_iter().map(|(k, v)| (k, v.to_string())).collect();
    Ok(CheckOutcome::new(
        "orbit-stabilizer",
        "stabilizers of multiset tuples have order dividing gcd(k_1, ..., k_r, |G|); free when that gcd is 1",
        json!({ "group": group.name(), "rank": n, "powers": ks }),
        bad.is_empty() && sums_match && free_consistent && shadow,
        json!({
            "gcd": g,
            "total": dec.total.to_string(),
            "orbit_sum": dec.orbit_sum().to_string(),
            "orbit_count": dec.orbit_count().to_string(),
            "free": dec.is_free(),
            "max_stabilizer_order": dec.max_stabilizer_order(),
            "extremal_stabilizers": extremal,
            "stabilizer_histogram": histogram,
            "violations": bad,
            "permutation_character": from_orbits.to_json(),
            "sigma_character": from_sigma.to_json(),
        }),
    ))
}

/// Exhaustive sweep: ranks `1..=max_rank` and all power lists with `Σ k_i ≤ max_total`,
/// reported as one outcome. Lists whose tuple count overflows are listed as skipped.
pub fn verify_orbit_stabilizer_sweep(
    classes: &Arc<ConjugacyData>,
    max_rank: usize,
    max_total: usize,
) -> Result<CheckOutcome, LatticeError> {
    fn lists(max_total: usize) -> Vec<Vec<usize>> {
        // nonincreasing lists; order of factors does not affect stabilizers
        fn rec(left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            for k in (1..=left.min(cap)).rev() {
                cur.push(k);
                rec(left - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_total, max_total, &mut Vec::new(), &mut out);
        out
    }
    let mut runs = 0;
    let mut skipped = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=max_rank {
        for ks in lists(max_total) {
            match verify_orbit_stabilizer(classes, n, &ks) {
                Ok(o) => {
                    runs += 1;
                    if !o.passed {
                        failures.push(o.parameters.clone());
                    }
                }
                Err(LatticeError::BudgetExceeded { attempted, .. }) => {
                    skipped.push(json!({ "rank": n, "powers": ks, "attempted": attempted.to_string() }));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(CheckOutcome::new(
        "orbit-stabilizer",
        "stabilizer divisibility, orbit sums and permutation characters for all small power lists",
        json!({ "group": classes.group().name(), "max_rank": max_rank, "max_total": max_total }),
        failures.is_empty(),
        json!({ "runs": runs, "failures": failures, "skipped_overflow": skipped }),
    ))
}

/// A lattice `ℤ^rank` with a group acting by integral matrices.
#[derive(Clone, Debug)]
pub struct GammaLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntMatrix>,
    /// Permutation action on a free basis, when one is distinguished.
    free_basis: Option<Vec<Vec<usize>>>,
}

impl GammaLattice {
    /// `ℤΓ^n` with basis `g·b_i` at index `i·|Γ| + g`, acted on by left multiplication.
    pub fn free(group: &Arc<FiniteGroup>, n: usize) -> Self {
        let order = group.order();
        let rank = n * order;
        let perms: Vec<Vec<usize>> =
            (0..order).map(|x| (0..rank).map(|b| (b / order) * order + group.mul(x, b % order)).collect()).collect();
        let action = perms
            .iter()
            .map(|p| Matrix::from_fn(rank, rank, |r, c| BigInt::from(u8::from(p[c] == r))))
            .collect();
        GammaLattice { group: Arc::clone(group), rank, action, free_basis: Some(perms) }
    }

    /// Lattice from one matrix per element; checks unimodularity and the group law.
    pub fn from_matrices(group: &Arc<FiniteGroup>, action: Vec<IntMatrix>) -> Result<Self, LatticeError> {
        if action.len() != group.order() {
            return Err(LatticeError::Invalid(format!("{} matrices for {} elements", action.len(), group.order())));
        }
        let rank = action[0].rows();
        for (g, m) in action.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(LatticeError::Invalid("matrices must be square of equal size".into()));
            }
            if det_bareiss(m).abs() != BigInt::one() {
                return Err(LatticeError::Invalid(format!("matrix of {} is not invertible over Z", group.label(g))));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if action[a].mul(&action[b]) != action[group.mul(a, b)] {
                    return Err(LatticeError::Invalid(format!(
                        "rho({})rho({}) != rho({})",
                        group.label(a),
                        group.label(b),
                        group.label(group.mul(a, b))
                    )));
                }
            }
        }
        Ok(GammaLattice { group: Arc::clone(group), rank, action, free_basis: None })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn free_basis(&self) -> Option<&[Vec<usize>]> {
        self.free_basis.as_deref()
    }

    /// First element whose action does not commute with `beta`, if any.
    pub fn equivariance_failure(&self, beta: &IntMatrix) -> Option<usize> {
        (0..self.group.order()).find(|&g| self.action[g].mul(beta) != beta.mul(&self.action[g]))
    }
}

/// `C(β) = β(F ⊗ ℤ_(p)) ∩ F` with its index in `F`.
#[derive(Clone, Debug, Serialize)]
pub struct PreimageLattice {
    /// HNF basis as columns.
    pub basis: IntMatrix,
    #[serde(serialize_with = "serialize_big")]
    pub index: BigInt,
}

fn serialize_big<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    bigint_json(n).serialize(s)
}

/// `C(β)` for a square nonsingular integer matrix, without equivariance checks.
///
/// Computed from the Smith form of `β`.
pub fn preimage_lattice(beta: &IntMatrix, p: u64) -> Result<PreimageLattice, LatticeError> {
    if !beta.is_square() {
        return Err(LatticeError::Invalid("matrix must be square".into()));
    }
    if beta.rows() == 0 {
        return Ok(PreimageLattice { basis: beta.clone(), index: BigInt::one() });
    }
    if det_bareiss(beta).is_zero() {
        return Err(LatticeError::Singular);
    }
    // U·β·V = D, so β(ℤ_(p)^n) = U⁻¹·D(ℤ_(p)^n) and only the p-parts of D survive
    let (u, d, _) = smith_normal_form(beta);
    let n = beta.rows();
    let scale = Matrix::from_fn(n, n, |r, c| if r == c { p_part(&d[(r, r)].abs(), p) } else { BigInt::zero() });
    let u_inv = integer_inverse(&u).ok_or_else(|| LatticeError::Invalid("Smith transform not unimodular".into()))?;
    let basis = lattice_basis(&u_inv.mul(&scale));
    let index = lattice_index(&basis).ok_or(LatticeError::Singular)?;
    Ok(PreimageLattice { basis, index })
}

fn integer_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.rows();
    let (h, u) = crate::exact::hermite_normal_form(m);
    // m·u = h; for unimodular m the HNF is the identity
    if h != int_identity(n) {
        return None;
    }
    Some(u)
}

/// `C(β)` for an equivariant `β` on a lattice.
pub fn lattice_c_beta(f: &GammaLattice, beta: &IntMatrix, p: u64) -> Result<PreimageLattice, LatticeError> {
    if beta.rows() != f.rank() || beta.cols() != f.rank() {
        return Err(LatticeError::Invalid(format!("matrix must be {0}x{0}", f.rank())));
    }
    if let Some(g) = f.equivariance_failure(beta) {
        return Err(LatticeError::NotEquivariant { element: f.group().label(g).to_string() });
    }
    preimage_lattice(beta, p)
}

fn int_sym(m: &IntMatrix, k: usize) -> IntMatrix {
    symmetric_matrix(m, k, &BigInt::one())
}

fn kron_all(ms: &[IntMatrix]) -> IntMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kron(m))
}

/// Checks `Sym^{k_1}C(β_1) ⊗ ⋯ ⊗ Sym^{k_r}C(β_r) = C(Sym^{k_1}β_1 ⊗ ⋯ ⊗ Sym^{k_r}β_r)` inside
/// `Sym^{k_1}F ⊗ ⋯ ⊗ Sym^{k_r}F`, by HNF equality and by three index computations.
pub fn verify_lattice_compatibility(
    f: &GammaLattice,
    betas: &[IntMatrix],
    ks: &[usize],
    p: u64,
) -> Result<CheckOutcome, LatticeError> {
    if betas.is_empty() || betas.len() != ks.len() || ks.contains(&0) {
        return Err(LatticeError::Invalid("need one positive power per matrix".into()));
    }
    let order = f.group().order();
    let g = ks.iter().fold(order, |acc, &k| acc.gcd(&k));
    if g != 1 {
        return Err(LatticeError::Precondition(format!("gcd of powers and group order is {g}, not 1")));
    }
    let c_lattices = betas.iter().map(|b| lattice_c_beta(f, b, p)).collect::<Result<Vec<_>, _>>()?;
    let sym_c: Vec<IntMatrix> = c_lattices.iter().zip(ks).map(|(c, &k)| int_sym(&c.basis, k)).collect();
    let sym_beta: Vec<IntMatrix> = betas.iter().zip(ks).map(|(b, &k)| int_sym(b, k)).collect();
    let products = lattice_basis(&kron_all(&sym_c));
    let target = preimage_lattice(&kron_all(&sym_beta), p)?;
    let products_index = lattice_index(&products).ok_or(LatticeError::Singular)?;
    let det_part = p_part(&det_bareiss(&kron_all(&sym_beta)).abs(), p);
    // det(Sym^k C) = det(C)^{binom(d+k-1, k-1)}; det(A ⊗ B) = det(A)^{dim B} det(B)^{dim A}
    let d = f.rank();
    let dims: Vec<u128> = ks.iter().map(|&k| multiset_count(d, k).unwrap_or(0)).collect();
    let total_dim: u128 = dims.iter().product();
    let mut formula = BigInt::one();
    for (i, (c, &k)) in c_lattices.iter().zip(ks).enumerate() {
        let sym_exp = binomial((d + k - 1) as u128, (k - 1) as u128).unwrap_or(0);
        let exp = sym_exp * (total_dim / dims[i]);
        formula *= num_traits::pow(c.index.clone(), exp.to_usize().unwrap_or(0));
    }
    let equal = lattices_equal(&products, &target.basis);
    let passed = equal && products_index == target.index && target.index == det_part && det_part == formula;
    Ok(CheckOutcome::new(
        "lattice-compatibility",
        "tensor products of symmetric powers of C(beta_i) equal C of the tensor product of symmetric powers of beta_i",
        json!({
            "group": f.group().name(),
            "rank": d,
            "betas": betas.iter().map(|b| serde_json::to_value(b).unwrap_or_default()).collect::<Vec<_>>(),
            "powers": ks,
            "p": p,
        }),
        passed,
        json!({
            "lattices_equal": equal,
            "index_of_products": bigint_json(&products_index),
            "index_of_preimage": bigint_json(&target.index),
            "p_part_of_det": bigint_json(&det_part),
            "index_from_formula": bigint_json(&formula),
            "v_p_det": betas.iter().map(|b| valuation(&det_bareiss(b), p)).collect::<Vec<_>>(),
            "c_beta_indices": c_lattices.iter().map(|c| bigint_json(&c.index)).collect::<Vec<_>>(),
        }),
    ))
}

/// Integer matrix file: whitespace-separated rows, one row per line, `#` comments.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, LatticeError> {
    let rows: Vec<Vec<BigInt>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| LatticeError::Invalid(format!("bad entry {t:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(LatticeError::Invalid("rows have different lengths".into()));
    }
    Ok(Matrix::from_rows(rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_matrix;
    use crate::groups::{conjugacy_classes, cyclic, symmetric};

    fn classes(g: FiniteGroup) -> Arc<ConjugacyData> {
        Arc::new(conjugacy_classes(&Arc::new(g)))
    }

    #[test]
    fn c2_orbits() {
        let g = Arc::new(cyclic(2).unwrap());
        let d = sym_power_orbits(&g, 1, &[2]).unwrap();
        assert_eq!(d.total, 3);
        assert_eq!(d.orbit_count(), 2);
        assert_eq!(d.free_rank(), 1);
        assert_eq!(d.stabilizer_histogram(), BTreeMap::from([(1, 1), (2, 1)]));
        let d = sym_power_orbits(&g, 1, &[3]).unwrap();
        assert_eq!((d.total, d.orbit_count(), d.free_rank()), (4, 2, 2));
        let d = sym_power_orbits(&g, 1, &[1]).unwrap();
        assert_eq!((d.orbit_count(), d.free_rank()), (1, 1));
    }

    #[test]
    fn orbit_stabilizer_examples() {
        let c4 = classes(cyclic(4).unwrap());
        let o = verify_orbit_stabilizer(&c4, 1, &[2]).unwrap();
        assert!(o.passed);
        assert_eq!(o.witness["max_stabilizer_order"], 2);
        assert_eq!(o.witness["free"], false);
        let s3 = classes(symmetric(3).unwrap());
        let o = verify_orbit_stabilizer(&s3, 1, &[5]).unwrap();
        assert!(o.passed);
        assert_eq!(o.witness["orbit_count"], "42");
        assert_eq!(o.witness["free"], true);
        let c2 = classes(cyclic(2).unwrap());
        assert_eq!(verify_orbit_stabilizer(&c2, 2, &[1, 1]).unwrap().witness["free"], true);
    }

    #[test]
    fn summary_matches_listing() {
        for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), crate::groups::quaternion8()] {
            let g = Arc::new(g);
            for (n, ks) in [(1, vec![2]), (1, vec![2, 2]), (2, vec![2, 1]), (1, vec![4]), (1, vec![3, 1])] {
                let listed = sym_power_orbits(&g, n, &ks).unwrap();
                let summary = sym_power_orbit_summary(&g, n, &ks).unwrap();
                let mut by_stab: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
                for o in &listed.orbits {
                    *by_stab.entry(o.stabilizer.clone()).or_insert(0) += 1;
                }
                assert_eq!(summary.by_stabilizer, by_stab, "{} {n} {ks:?}", g.name());
                assert_eq!(summary.total, listed.total);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Arc::new(cyclic(6).unwrap());
        match sym_power_orbits_with_budget(&g, 2, &[4], 100) {
            Err(LatticeError::BudgetExceeded { attempted, budget }) => {
                assert_eq!(attempted, 1365);
                assert_eq!(budget, 100);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn c_beta_examples() {
        let g = Arc::new(cyclic(2).unwrap());
        let f = GammaLattice::free(&g, 1);
        let id = int_identity(2);
        assert_eq!(lattice_c_beta(&f, &id, 3).unwrap().index, BigInt::one());
        let three = int_matrix(&[vec![3, 0], vec![0, 3]]);
        let c = lattice_c_beta(&f, &three, 3).unwrap();
        assert_eq!(c.index, BigInt::from(9));
        assert!(lattices_equal(&c.basis, &three));
        let beta = int_matrix(&[vec![2, 1], vec![1, 2]]);
        let c = lattice_c_beta(&f, &beta, 3).unwrap();
        assert_eq!(c.index, BigInt::from(3));
        assert!(lattices_equal(&c.basis, &int_matrix(&[vec![1, 3], vec![-1, 0]])));
        let skew = int_matrix(&[vec![1, 0], vec![0, 2]]);
        assert!(matches!(lattice_c_beta(&f, &skew, 2), Err(LatticeError::NotEquivariant { .. })));
        let singular = int_matrix(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(lattice_c_beta(&f, &singular, 2), Err(LatticeError::Singular)));
    }

    #[test]
    fn compatibility_examples() {
        let g = Arc::new(cyclic(2).unwrap());
        let f = GammaLattice::free(&g, 1);
        let beta = int_matrix(&[vec![2, 1], vec![1, 2]]);
        let o = verify_lattice_compatibility(&f, std::slice::from_ref(&beta), &[3], 3).unwrap();
        assert!(o.passed, "{}", o.witness);
        assert_eq!(o.witness["index_of_preimage"], 729);
        assert!(o.witness["lattices_equal"].as_bool().unwrap());
        assert!(verify_lattice_compatibility(&f, std::slice::from_ref(&beta), &[1], 3).unwrap().passed);
        assert!(matches!(verify_lattice_compatibility(&f, &[beta], &[2], 3), Err(LatticeError::Precondition(_))));
        let g3 = Arc::new(cyclic(3).unwrap());
        let f3 = GammaLattice::free(&g3, 1);
        // 1 + g as a circulant, det 2
        let circ = f3.action(0).add(f3.action(1));
        let o = verify_lattice_compatibility(&f3, &[circ], &[2], 2).unwrap();
        assert!(o.passed, "{}", o.witness);
        assert_eq!(o.witness["index_of_preimage"], 16);
    }

    #[test]
    fn matrix_parsing() {
        let m = parse_int_matrix("# beta\n2 1\n1, 2\n").unwrap();
        assert_eq!(m, int_matrix(&[vec![2, 1], vec![1, 2]]));
        assert!(parse_int_matrix("1 2\n3\n").is_err());
    }
}
