//! Class functions, character tables and virtual characters.
//!
//! All values are stored in ℚ(ζ_e) with `e` the group exponent.

mod closed_form;
mod dixon;
mod power_ops;
mod verify;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{CommRing, Cyclotomic};
use crate::groups::ConjugacyData;

pub use closed_form::closed_form_table;
pub use dixon::dixon_table;
pub use power_ops::{
    adams, adams_adjoint, newton_lambda, newton_sigma, power_operations, virtual_sigma, virtual_sigma_newton, virtual_sigma_upto, compose_sigma_difference,
    PowerOperations,
};
pub use verify::{
    fs_classify, verify_character_table, in_symplectic_subgroup, verify_adjoint_is_inverse_adams, verify_adjoint_pairing, verify_koszul, verify_koszul_upto,
    verify_multiplicativity, verify_periodicity, verify_regular_fixed, verify_symplectic_adjoint, verify_virtual_sigma_paths, verify_virtual_sigma_paths_upto, verify_virtual_sigma_grid, FsClassification,
    FsType, SymplecticMembership,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("character table failed its consistency check: {0}")]
    Inconsistent(String),
    #[error("class function is not a virtual character: {0}")]
    NotVirtual(String),
    #[error("class function is not a genuine character; coefficients {0:?}")]
    NotGenuine(Vec<String>),
    #[error("Newton step {step} is not integral at class {class}")]
    DivisionNotExact { step: usize, class: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Frobenius-Schur indicator {0} out of range")]
    IndicatorOutOfRange(String),
}

/// A function on conjugacy classes with values in ℚ(ζ_e).
#[derive(Clone)]
pub struct ClassFunction {
    classes: Arc<ConjugacyData>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// Values are re-expressed at the group's conductor; their conductors must divide it.
    pub fn new(classes: &Arc<ConjugacyData>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), classes.num_classes(), "one value per class");
        let e = conductor(classes);
        let values = values.into_iter().map(|v| v.embed(e)).collect();
        ClassFunction { classes: Arc::clone(classes), values }
    }

    pub fn from_integers(classes: &Arc<ConjugacyData>, values: &[i64]) -> Self {
        let e = conductor(classes);
        Self::new(classes, values.iter().map(|&v| Cyclotomic::from_int(e, v)).collect())
    }

    pub fn constant(classes: &Arc<ConjugacyData>, c: i64) -> Self {
        Self::from_integers(classes, &vec![c; classes.num_classes()])
    }

    pub fn trivial(classes: &Arc<ConjugacyData>) -> Self {
        Self::constant(classes, 1)
    }

    /// Character of the regular representation.
    pub fn regular(classes: &Arc<ConjugacyData>) -> Self {
        let mut v = vec![0; classes.num_classes()];
        v[classes.class_of(classes.group().identity())] = classes.order() as i64;
        Self::from_integers(classes, &v)
    }

    /// Character of a permutation action given as images `perms[g][x]`.
    pub fn permutation(classes: &Arc<ConjugacyData>, perms: &[Vec<usize>]) -> Self {
        let v: Vec<i64> = (0..classes.num_classes())
            .map(|c| {
                let p = &perms[classes.representative(c)];
                p.iter().enumerate().filter(|(x, &y)| *x == y).count() as i64
            })
            .collect();
        Self::from_integers(classes, &v)
    }

    pub fn classes(&self) -> &Arc<ConjugacyData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[self.classes.class_of(self.classes.group().identity())]
    }

    pub fn degree_i64(&self) -> Option<i64> {
        self.degree().to_i64()
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        assert!(self.same_group(other), "class functions on different groups");
        ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction { classes: Arc::clone(&self.classes), values: self.values.iter().map(f).collect() }
    }

    pub fn conjugate(&self) -> Self {
        self.map(Cyclotomic::conjugate)
    }

    /// `(1/|Γ|) Σ_γ χ(γ)·conj(θ(γ))`.
    pub fn pairing(&self, other: &Self) -> Result<Cyclotomic, CharacterError> {
        if !self.same_group(other) {
            return Err(CharacterError::GroupMismatch);
        }
        let scale = num_rational::BigRational::new(BigInt::one(), BigInt::from(self.classes.order()));
        if let Some(sum) =
            Cyclotomic::hermitian_sum(&self.values, &other.values, &self.classes.class_sizes(), self.classes.order())
        {
            return Ok(sum);
        }
        let e = conductor(&self.classes);
        let mut acc = Cyclotomic::zero(e);
        for c in 0..self.values.len() {
            let term = self.values[c].mul_ref(&other.values[c].conjugate());
            acc = acc.add_ref(&term.mul_int(&BigInt::from(self.classes.class_size(c))));
        }
        Ok(acc.scale(&scale))
    }

    /// Integer pairing, failing when the pairing is not a rational integer.
    pub fn pairing_int(&self, other: &Self) -> Result<BigInt, CharacterError> {
        let p = self.pairing(other)?;
        p.to_integer().ok_or_else(|| CharacterError::NotVirtual(format!("pairing {p} is not an integer")))
    }

    pub fn to_json(&self) -> Value {
        json!(self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
    }

    fn cmp_values(&self, other: &Self) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

pub(crate) fn conductor(classes: &ConjugacyData) -> u32 {
    classes.exponent() as u32
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.values == other.values
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl CommRing for ClassFunction {
    fn zero_like(&self) -> Self {
        ClassFunction::constant(&self.classes, 0)
    }
    fn one_like(&self) -> Self {
        ClassFunction::constant(&self.classes, 1)
    }
    fn is_zero_elem(&self) -> bool {
        self.values.iter().all(CommRing::is_zero_elem)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.add_ref(b))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.sub_ref(b))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.mul_ref(b))
    }
    fn neg_ref(&self) -> Self {
        self.map(|a| a.neg_ref())
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self.map(|a| a.mul_int(c))
    }
}

/// Integer coordinates with respect to the irreducibles of a [`CharacterTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VirtualCharacter {
    #[serde(serialize_with = "crate::report::serialize_bigints")]
    pub coeffs: Vec<BigInt>,
}

impl VirtualCharacter {
    pub fn zero(n: usize) -> Self {
        VirtualCharacter { coeffs: vec![BigInt::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[i] = BigInt::one();
        v
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        VirtualCharacter { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: i64) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_genuine(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Splits into nonnegative parts `(M, N)` with `self = M − N`.
    pub fn positive_negative(&self) -> (Self, Self) {
        let pos = self.coeffs.iter().map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() }).collect();
        let neg = self.coeffs.iter().map(|c| if c.is_negative() { -c } else { BigInt::zero() }).collect();
        (VirtualCharacter { coeffs: pos }, VirtualCharacter { coeffs: neg })
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { format!("X{i}") } else { format!("{c}*X{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The irreducible characters of a group, in a canonical row order.
///
/// Rows are sorted by degree, trivial character first, then by a fixed total
/// order on value vectors.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Arc<ConjugacyData>,
    rows: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Sorts the rows canonically and checks orthogonality and the degree sum.
    pub fn from_rows(classes: &Arc<ConjugacyData>, mut rows: Vec<ClassFunction>) -> Result<Self, CharacterError> {
        if rows.len() != classes.num_classes() {
            return Err(CharacterError::Inconsistent(format!(
                "{} rows for {} classes",
                rows.len(),
                classes.num_classes()
            )));
        }
        let trivial = ClassFunction::trivial(classes);
        rows.sort_by(|a, b| {
            let da = a.degree().canonical_cmp(b.degree());
            da.then_with(|| (*b == trivial).cmp(&(*a == trivial))).then_with(|| a.cmp_values(b))
        });
        let table = CharacterTable { classes: Arc::clone(classes), rows };
        table.check_orthogonality()?;
        Ok(table)
    }

    pub fn classes(&self) -> &Arc<ConjugacyData> {
        &self.classes
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.degree_i64().expect("degrees are integers")).collect()
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction::trivial(&self.classes)
    }

    pub fn find_row(&self, chi: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == chi)
    }

    /// Row orthogonality, `Σ deg² = |Γ|` and integrality of values.
    pub fn check_orthogonality(&self) -> Result<(), CharacterError> {
        for (a, ra) in self.rows.iter().enumerate() {
            if ra.values.iter().any(|v| !v.is_integral()) {
                return Err(CharacterError::Inconsistent(format!("row {a} has non-integral values")));
            }
            for (b, rb) in self.rows.iter().enumerate().skip(a) {
                let p = ra.pairing(rb)?;
                let expected = if a == b { Cyclotomic::one(p.conductor()) } else { Cyclotomic::zero(p.conductor()) };
                if p != expected {
                    return Err(CharacterError::Inconsistent(format!("<X{a}, X{b}> = {p}")));
                }
            }
        }
        let sum: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sum != self.classes.order() as i64 {
            return Err(CharacterError::Inconsistent(format!("sum of squared degrees {sum} != |G|")));
        }
        Ok(())
    }

    /// Coordinates of a class function; fails unless every pairing is an integer.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<VirtualCharacter, CharacterError> {
        if !Arc::ptr_eq(&self.classes, &chi.classes) {
            return Err(CharacterError::GroupMismatch);
        }
        let coeffs = self.rows.iter().map(|r| chi.pairing_int(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(VirtualCharacter { coeffs })
    }

    /// Coordinates of a class function that must be a genuine character.
    pub fn decompose_genuine(&self, chi: &ClassFunction) -> Result<VirtualCharacter, CharacterError> {
        let v = self.decompose(chi)?;
        if !v.is_genuine() {
            return Err(CharacterError::NotGenuine(v.coeffs.iter().map(|c| c.to_string()).collect()));
        }
        Ok(v)
    }

    pub fn assemble(&self, x: &VirtualCharacter) -> ClassFunction {
        let mut acc = ClassFunction::constant(&self.classes, 0);
        for (c, row) in x.coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                acc = acc.add_ref(&row.mul_int(c));
            }
        }
        acc
    }

    /// Row-by-row equality of two tables of the same group.
    pub fn same_rows(&self, other: &CharacterTable) -> bool {
        self.rows.len() == other.rows.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.values == b.values)
    }

    pub fn to_json(&self) -> Value {
        let g = self.classes.group();
        json!({
            "group": g.summary(),
            "conductor": conductor(&self.classes),
            "classes": (0..self.classes.num_classes()).map(|c| json!({
                "representative": g.label(self.classes.representative(c)),
                "size": self.classes.class_size(c),
                "element_order": self.classes.element_order_of_class(c),
            })).collect::<Vec<_>>(),
            "degrees": self.degrees(),
            "rows": self.rows.iter().map(|r| r.values.iter().map(|v| json!({
                "text": v.to_string(),
                "coeffs": v.coeff_strings(),
            })).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.classes.group();
        let reps: Vec<&str> = (0..self.classes.num_classes()).map(|c| g.label(self.classes.representative(c))).collect();
        writeln!(f, "{} (order {}, {} classes)", g.name(), g.order(), reps.len())?;
        writeln!(f, "classes: {}", reps.join(" | "))?;
        writeln!(f, "sizes:   {:?}", self.classes.class_sizes())?;
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(f, "X{i}: {r}")?;
        }
        Ok(())
    }
}

/// Dixon table of the group, cross-checked against a closed form when one exists.
pub fn character_table(classes: &Arc<ConjugacyData>) -> Result<CharacterTable, CharacterError> {
    let table = dixon_table(classes)?;
    if let Some(closed) = closed_form_table(classes) {
        let closed = closed?;
        if !closed.same_rows(&table) {
            return Err(CharacterError::Inconsistent("modular and closed-form tables differ".into()));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{conjugacy_classes, cyclic, quaternion8, symmetric};

    fn cd(g: crate::groups::FiniteGroup) -> Arc<ConjugacyData> {
        Arc::new(conjugacy_classes(&Arc::new(g)))
    }

    fn ints(cf: &ClassFunction) -> Vec<i64> {
        cf.values().iter().map(|v| v.to_i64().unwrap()).collect()
    }

    #[test]
    fn table_examples() {
        let c2 = character_table(&cd(cyclic(2).unwrap())).unwrap();
        assert_eq!(c2.rows().iter().map(ints).collect::<Vec<_>>(), vec![vec![1, 1], vec![1, -1]]);
        let s3 = character_table(&cd(symmetric(3).unwrap())).unwrap();
        assert_eq!(s3.degrees(), vec![1, 1, 2]);
        assert_eq!(ints(s3.row(2)), vec![2, 0, -1]);
        let q8 = character_table(&cd(quaternion8())).unwrap();
        assert_eq!(q8.degrees(), vec![1, 1, 1, 1, 2]);
        assert_eq!(ints(q8.row(4)), vec![2, -2, 0, 0, 0]);
    }

    #[test]
    fn pairing_examples() {
        let s3 = character_table(&cd(symmetric(3).unwrap())).unwrap();
        let (triv, sgn, std) = (s3.row(0), s3.row(1), s3.row(2));
        assert_eq!(triv.pairing_int(triv).unwrap(), BigInt::one());
        assert_eq!(std.pairing_int(std).unwrap(), BigInt::one());
        assert_eq!(triv.pairing_int(sgn).unwrap(), BigInt::zero());
        let other = character_table(&cd(symmetric(3).unwrap())).unwrap();
        assert_eq!(triv.pairing(other.row(0)), Err(CharacterError::GroupMismatch));
    }

    #[test]
    fn decompose_round_trip() {
        let s3 = character_table(&cd(symmetric(3).unwrap())).unwrap();
        let reg = ClassFunction::regular(s3.classes());
        let v = s3.decompose(&reg).unwrap();
        assert_eq!(v, VirtualCharacter::from_i64(&[1, 1, 2]));
        assert_eq!(s3.assemble(&v), reg);
    }

    #[test]
    fn catalog_tables_agree_with_closed_forms() {
        for g in crate::groups::catalog_up_to(24) {
            let classes = cd(g.clone());
            let t = character_table(&classes).unwrap_or_else(|e| panic!("{}: {e}", g.name()));
            assert_eq!(t.len(), classes.num_classes());
        }
    }
}
