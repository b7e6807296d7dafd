//! Explicit equivariant modules over ℚ(ζ_e): tensor, exterior and symmetric
//! powers, and the Schur and coSchur modules of a shape.
//!
//! Modules are lazy trees; the matrix of an element is built on demand and
//! cached, so a character only touches one element per conjugacy class.
//!
//! Shape conventions: `schur_module(V, λ)` is the image of
//! `⊗_i Λ^{λ_i} V → ⊗_j Sym^{λ̃_j} V` (single row gives `Λ^k`, single column
//! gives `Sym^k`); `coschur_module(V, λ)` is the image of
//! `⊗_i Sym^{λ_i} V → ⊗_j Λ^{λ̃_j} V`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;
use thiserror::Error;

use crate::characters::ClassFunction;
use crate::exact::{CommRing, CycMatrix, Cyclotomic, Matrix, QMatrix};
use crate::groups::ConjugacyData;
use crate::partitions::{partitions_of, Partition};
use crate::report::CheckOutcome;
use crate::symfunc::{cauchy_p, schur_in_e, SymError};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("modules belong to different groups")]
    GroupMismatch,
    #[error("exterior power {i} exceeds dimension {dim}")]
    ExteriorOutOfRange { i: usize, dim: usize },
    #[error("matrices do not define a representation: {0}")]
    NotARepresentation(String),
    #[error("cannot parse module {0:?}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Symbolic(#[from] SymError),
}

#[derive(Debug)]
enum Node {
    Explicit(Vec<CycMatrix>),
    Tensor(Arc<EquivariantModule>, Arc<EquivariantModule>),
    DirectSum(Arc<EquivariantModule>, Arc<EquivariantModule>),
    Exterior(Arc<EquivariantModule>, usize),
    Symmetric(Arc<EquivariantModule>, usize),
    /// Submodule spanned by the columns of `basis` inside `ambient`; `pivot_rows`
    /// select an invertible square block whose inverse is `pivot_inverse`.
    Image { ambient: Arc<EquivariantModule>, basis: CycMatrix, pivot_rows: Vec<usize>, pivot_inverse: CycMatrix },
}

/// A finite-dimensional representation of a finite group.
#[derive(Debug)]
pub struct EquivariantModule {
    classes: Arc<ConjugacyData>,
    dim: usize,
    label: String,
    node: Node,
    cache: Vec<OnceLock<CycMatrix>>,
}

fn conductor(classes: &ConjugacyData) -> u32 {
    classes.exponent() as u32
}

fn cyc_int(e: u32, v: i64) -> Cyclotomic {
    Cyclotomic::from_int(e, v)
}

/// Strictly increasing `i`-tuples from `0..n`, lexicographically.
pub fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < left {
                break;
            }
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Weakly increasing `i`-tuples from `0..n`, lexicographically.
pub fn multisets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 || i == 0 {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

fn index_of(keys: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// Matrix of `Λ^i(A)` on the subset basis: entry `(S, T)` is the minor `det A[S, T]`.
pub fn exterior_matrix(a: &CycMatrix, i: usize, e: u32) -> CycMatrix {
    let keys = subsets(a.rows(), i);
    let one = Cyclotomic::one(e);
    Matrix::from_fn(keys.len(), keys.len(), |r, c| a.submatrix(&keys[r], &keys[c]).det_or(&one))
}

/// Matrix of `Sym^i(A)` on the multiset basis; column `t` expands `Π_j A e_{t_j}`.
pub fn symmetric_matrix<T: CommRing>(a: &Matrix<T>, i: usize, one: &T) -> Matrix<T> {
    let n = a.rows();
    let keys = multisets(n, i);
    let index = index_of(&keys);
    let mut out = Matrix::filled(keys.len(), keys.len(), one.zero_like());
    for (c, t) in keys.iter().enumerate() {
        let mut terms: HashMap<Vec<usize>, T> = HashMap::from([(Vec::new(), one.clone())]);
        for &tj in t {
            let mut next: HashMap<Vec<usize>, T> = HashMap::new();
            for (ms, coeff) in &terms {
                for r in 0..n {
                    let a_rt = &a[(r, tj)];
                    if a_rt.is_zero_elem() {
                        continue;
                    }
                    let mut key = ms.clone();
                    let pos = key.partition_point(|&x| x <= r);
                    key.insert(pos, r);
                    let v = coeff.mul_ref(a_rt);
                    match next.get_mut(&key) {
                        Some(x) => *x = x.add_ref(&v),
                        None => {
                            next.insert(key, v);
                        }
                    }
                }
            }
            terms = next;
        }
        for (ms, coeff) in terms {
            out[(index[&ms], c)] = coeff;
        }
    }
    out
}

/// `tr Λ^i(A)` as the sum of principal `i×i` minors.
pub fn exterior_trace(a: &CycMatrix, i: usize, e: u32) -> Cyclotomic {
    let one = Cyclotomic::one(e);
    subsets(a.rows(), i)
        .iter()
        .fold(Cyclotomic::zero(e), |acc, s| acc.add_ref(&a.submatrix(s, s).det_or(&one)))
}

impl EquivariantModule {
    fn make(classes: &Arc<ConjugacyData>, dim: usize, label: String, node: Node) -> Arc<Self> {
        let cache = (0..classes.order()).map(|_| OnceLock::new()).collect();
        Arc::new(EquivariantModule { classes: Arc::clone(classes), dim, label, node, cache })
    }

    /// One matrix per group element, trusted to be a representation.
    pub fn from_matrices(classes: &Arc<ConjugacyData>, matrices: Vec<CycMatrix>, label: &str) -> Arc<Self> {
        assert_eq!(matrices.len(), classes.order(), "one matrix per element");
        let dim = matrices.first().map_or(0, Matrix::rows);
        let e = conductor(classes);
        let matrices = matrices.into_iter().map(|m| m.map(|v| v.embed(e))).collect();
        Self::make(classes, dim, label.to_string(), Node::Explicit(matrices))
    }

    /// As [`Self::from_matrices`], after checking `ρ(g)ρ(h) = ρ(gh)` for all pairs.
    pub fn from_matrices_checked(
        classes: &Arc<ConjugacyData>,
        matrices: Vec<CycMatrix>,
        label: &str,
    ) -> Result<Arc<Self>, ModuleError> {
        let g = classes.group();
        if matrices.len() != g.order() {
            return Err(ModuleError::NotARepresentation(format!("{} matrices for {} elements", matrices.len(), g.order())));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(ModuleError::NotARepresentation("matrices must be square of equal size".into()));
        }
        let module = Self::from_matrices(classes, matrices, label);
        for a in 0..g.order() {
            for b in 0..g.order() {
                if module.matrix(a).mul(module.matrix(b)) != *module.matrix(g.mul(a, b)) {
                    return Err(ModuleError::NotARepresentation(format!(
                        "rho({})rho({}) != rho({})",
                        g.label(a),
                        g.label(b),
                        g.label(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(module)
    }

    /// One-dimensional module of a linear character.
    pub fn linear(chi: &ClassFunction, label: &str) -> Arc<Self> {
        let cd = chi.classes();
        let mats = (0..cd.order()).map(|g| Matrix::filled(1, 1, chi.value(cd.class_of(g)).clone())).collect();
        Self::from_matrices(cd, mats, label)
    }

    pub fn trivial(classes: &Arc<ConjugacyData>) -> Arc<Self> {
        Self::linear(&ClassFunction::trivial(classes), "triv")
    }

    /// Permutation module of an action `perms[g][x]`.
    pub fn permutation(classes: &Arc<ConjugacyData>, perms: &[Vec<usize>], label: &str) -> Arc<Self> {
        let e = conductor(classes);
        let mats = perms
            .iter()
            .map(|p| Matrix::from_fn(p.len(), p.len(), |r, c| cyc_int(e, i64::from(p[c] == r))))
            .collect();
        Self::from_matrices(classes, mats, label)
    }

    /// Left regular module.
    pub fn regular(classes: &Arc<ConjugacyData>) -> Arc<Self> {
        let g = classes.group();
        let perms: Vec<Vec<usize>> = (0..g.order()).map(|a| (0..g.order()).map(|x| g.mul(a, x)).collect()).collect();
        Self::permutation(classes, &perms, "reg")
    }

    /// Kernel of the augmentation of a permutation module, on the basis `e_i − e_{n−1}`.
    pub fn augmentation_kernel(classes: &Arc<ConjugacyData>, perms: &[Vec<usize>], label: &str) -> Arc<Self> {
        let e = conductor(classes);
        let mats = perms
            .iter()
            .map(|p| {
                let n = p.len();
                let last = n - 1;
                Matrix::from_fn(n - 1, n - 1, |r, c| {
                    // g(e_c − e_last) = (e_{p c} − e_last) − (e_{p last} − e_last)
                    let mut v = 0;
                    if p[c] == r {
                        v += 1;
                    }
                    if p[last] == r {
                        v -= 1;
                    }
                    cyc_int(e, v)
                })
            })
            .collect();
        Self::from_matrices(classes, mats, label)
    }

    /// Module induced from the character `h^a ↦ ζ_o^{ja}` of the cyclic subgroup `⟨h⟩`, `o = ord(h)`.
    pub fn induced_from_cyclic(classes: &Arc<ConjugacyData>, h: usize, j: i64) -> Arc<Self> {
        let g = classes.group();
        let e = conductor(classes);
        let o = g.element_order(h);
        let mut exp_of = HashMap::new();
        let mut x = g.identity();
        for a in 0..o {
            exp_of.insert(x, a as i64);
            x = g.mul(x, h);
        }
        // left coset representatives t_i of ⟨h⟩
        let mut reps: Vec<usize> = Vec::new();
        let mut covered = vec![false; g.order()];
        for t in 0..g.order() {
            if covered[t] {
                continue;
            }
            reps.push(t);
            for &y in exp_of.keys() {
                covered[g.mul(t, y)] = true;
            }
        }
        let m = reps.len();
        let step = (e as usize / o) as i64;
        let mats = (0..g.order())
            .map(|x| {
                let mut mat = Matrix::filled(m, m, Cyclotomic::zero(e));
                for (i, &t) in reps.iter().enumerate() {
                    let gt = g.mul(x, t);
                    // g t_i = t_k h^a
                    let (k, a) = reps
                        .iter()
                        .enumerate()
                        .find_map(|(k, &tk)| exp_of.get(&g.mul(g.inv(tk), gt)).map(|&a| (k, a)))
                        .expect("cosets cover the group");
                    mat[(k, i)] = Cyclotomic::root_of_unity(e, step * j * a);
                }
                mat
            })
            .collect();
        Self::from_matrices(classes, mats, &format!("ind({},{j})", g.label(h)))
    }

    pub fn tensor(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, ModuleError> {
        if !Arc::ptr_eq(&a.classes, &b.classes) {
            return Err(ModuleError::GroupMismatch);
        }
        let label = format!("tensor({},{})", a.label, b.label);
        Ok(Self::make(&a.classes, a.dim * b.dim, label, Node::Tensor(Arc::clone(a), Arc::clone(b))))
    }

    pub fn direct_sum(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, ModuleError> {
        if !Arc::ptr_eq(&a.classes, &b.classes) {
            return Err(ModuleError::GroupMismatch);
        }
        let label = format!("sum({},{})", a.label, b.label);
        Ok(Self::make(&a.classes, a.dim + b.dim, label, Node::DirectSum(Arc::clone(a), Arc::clone(b))))
    }

    pub fn exterior_power(v: &Arc<Self>, i: usize) -> Result<Arc<Self>, ModuleError> {
        if i > v.dim {
            return Err(ModuleError::ExteriorOutOfRange { i, dim: v.dim });
        }
        let dim = subsets(v.dim, i).len();
        Ok(Self::make(&v.classes, dim, format!("ext{i}({})", v.label), Node::Exterior(Arc::clone(v), i)))
    }

    pub fn symmetric_power(v: &Arc<Self>, i: usize) -> Arc<Self> {
        let dim = multisets(v.dim, i).len();
        Self::make(&v.classes, dim, format!("sym{i}({})", v.label), Node::Symmetric(Arc::clone(v), i))
    }

    /// Image of `d_λ(V)`; single row gives the exterior power.
    pub fn schur_module(v: &Arc<Self>, lambda: &Partition) -> Arc<Self> {
        Self::shape_image(v, lambda, true)
    }

    /// Image of the dual map `⊗ Sym^{λ_i} V → ⊗ Λ^{λ̃_j} V`; single row gives the symmetric power.
    pub fn coschur_module(v: &Arc<Self>, lambda: &Partition) -> Arc<Self> {
        Self::shape_image(v, lambda, false)
    }

    fn shape_image(v: &Arc<Self>, lambda: &Partition, exterior_rows: bool) -> Arc<Self> {
        let e = conductor(&v.classes);
        let cols = lambda.transpose();
        let mut factors: Vec<Arc<Self>> = Vec::new();
        for j in 0..cols.len() {
            let f = if exterior_rows {
                Self::symmetric_power(v, cols.part(j))
            } else {
                match Self::exterior_power(v, cols.part(j)) {
                    Ok(m) => m,
                    Err(_) => return Self::zero_module(v, lambda, exterior_rows),
                }
            };
            factors.push(f);
        }
        let mut ambient = match factors.first() {
            Some(f) => Arc::clone(f),
            None => return Self::trivial(&v.classes),
        };
        for f in &factors[1..] {
            ambient = Self::tensor(&ambient, f).expect("same group");
        }
        let d = shape_map(v.dim, lambda, exterior_rows);
        let name = if exterior_rows { "schur" } else { "coschur" };
        let label = format!("{name}{lambda}({})", v.label);
        let (_, pivots) = d.rref();
        if pivots.is_empty() {
            return Self::make(&v.classes, 0, label, Node::Explicit(Vec::new()));
        }
        let basis_q = d.select_columns(&pivots);
        let (_, pivot_rows) = basis_q.transpose().rref();
        let inverse_q = select_rows(&basis_q, &pivot_rows).inverse().expect("pivot block is invertible");
        let to_cyc = |m: &QMatrix| m.map(|q| Cyclotomic::from_rational(e, q.clone()));
        let node = Node::Image { ambient, basis: to_cyc(&basis_q), pivot_rows, pivot_inverse: to_cyc(&inverse_q) };
        Self::make(&v.classes, pivots.len(), label, node)
    }

    fn zero_module(v: &Arc<Self>, lambda: &Partition, exterior_rows: bool) -> Arc<Self> {
        let name = if exterior_rows { "schur" } else { "coschur" };
        Self::make(&v.classes, 0, format!("{name}{lambda}({})", v.label), Node::Explicit(Vec::new()))
    }

    pub fn classes(&self) -> &Arc<ConjugacyData> {
        &self.classes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Action matrix of group element `g`.
    pub fn matrix(&self, g: usize) -> &CycMatrix {
        self.cache[g].get_or_init(|| self.compute_matrix(g))
    }

    fn compute_matrix(&self, g: usize) -> CycMatrix {
        let e = conductor(&self.classes);
        match &self.node {
            Node::Explicit(mats) if mats.is_empty() => Matrix::filled(0, 0, Cyclotomic::zero(e)),
            Node::Explicit(mats) => mats[g].clone(),
            Node::Tensor(a, b) => a.matrix(g).kron(b.matrix(g)),
            Node::DirectSum(a, b) => {
                if a.dim == 0 {
                    b.matrix(g).clone()
                } else if b.dim == 0 {
                    a.matrix(g).clone()
                } else {
                    a.matrix(g).direct_sum(b.matrix(g))
                }
            }
            Node::Exterior(v, i) => exterior_matrix(v.matrix(g), *i, e),
            Node::Symmetric(v, i) => symmetric_matrix(v.matrix(g), *i, &Cyclotomic::one(e)),
            Node::Image { ambient, basis, pivot_rows, pivot_inverse } => {
                let moved = ambient.matrix(g).mul(basis);
                pivot_inverse.mul(&select_rows(&moved, pivot_rows))
            }
        }
    }

    /// Character from traces at class representatives.
    pub fn character(&self) -> ClassFunction {
        let e = conductor(&self.classes);
        let values = (0..self.classes.num_classes())
            .map(|c| {
                if self.dim == 0 {
                    Cyclotomic::zero(e)
                } else {
                    self.matrix(self.classes.representative(c)).trace().expect("nonempty")
                }
            })
            .collect();
        ClassFunction::new(&self.classes, values)
    }

    /// Character of `Λ^i` of this module, from principal minors.
    pub fn exterior_character(&self, i: usize) -> ClassFunction {
        let e = conductor(&self.classes);
        let values = (0..self.classes.num_classes())
            .map(|c| {
                if i > self.dim {
                    Cyclotomic::zero(e)
                } else if i == 0 {
                    Cyclotomic::one(e)
                } else {
                    exterior_trace(self.matrix(self.classes.representative(c)), i, e)
                }
            })
            .collect();
        ClassFunction::new(&self.classes, values)
    }

    /// Exterior characters `Λ^1, …, Λ^upto`.
    pub fn exterior_characters(&self, upto: usize) -> Vec<ClassFunction> {
        (1..=upto).map(|i| self.exterior_character(i)).collect()
    }
}

fn select_rows<T: Clone>(m: &Matrix<T>, rows: &[usize]) -> Matrix<T> {
    let cols: Vec<usize> = (0..m.cols()).collect();
    m.submatrix(rows, &cols)
}

fn sign_of_sort(word: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            } else if w[j] == w[j + 1] {
                return None;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

/// Words with their signs.
type SignedWords = Vec<(Vec<usize>, i64)>;

fn permutations_with_sign(items: &[usize]) -> SignedWords {
    if items.is_empty() {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (pos, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        for (mut p, s) in permutations_with_sign(&rest) {
            p.insert(0, x);
            out.push((p, s * sign));
        }
    }
    out
}

/// Integer matrix of `d_λ` (exterior rows, symmetric columns) or of its dual
/// (symmetric rows, exterior columns) on the standard bases, with `n = dim V`.
///
/// Rows comultiply into the cells of the diagram; columns multiply the cells
/// of each column of the diagram together.
pub fn shape_map(n: usize, lambda: &Partition, exterior_rows: bool) -> QMatrix {
    let cols = lambda.transpose();
    let row_keys: Vec<Vec<Vec<usize>>> = lambda
        .parts()
        .iter()
        .map(|&r| if exterior_rows { subsets(n, r) } else { multisets(n, r) })
        .collect();
    let col_keys: Vec<Vec<Vec<usize>>> = cols
        .parts()
        .iter()
        .map(|&c| if exterior_rows { multisets(n, c) } else { subsets(n, c) })
        .collect();
    let col_index: Vec<HashMap<Vec<usize>, usize>> = col_keys.iter().map(|k| index_of(k)).collect();
    let codomain_dims: Vec<usize> = col_keys.iter().map(Vec::len).collect();
    let domain_dims: Vec<usize> = row_keys.iter().map(Vec::len).collect();
    let codim: usize = codomain_dims.iter().product();
    let dom: usize = domain_dims.iter().product();
    let mut out = Matrix::filled(codim, dom, BigRational::zero());
    if codim == 0 || dom == 0 {
        return out;
    }
    let row_words: Vec<Vec<SignedWords>> = row_keys
        .iter()
        .map(|keys| {
            keys.iter()
                .map(|k| {
                    let perms = permutations_with_sign(k);
                    if exterior_rows {
                        perms
                    } else {
                        perms.into_iter().map(|(w, _)| (w, 1)).collect()
                    }
                })
                .collect()
        })
        .collect();
    for d in 0..dom {
        // mixed-radix decode, first row most significant
        let mut rem = d;
        let mut choice = vec![0; domain_dims.len()];
        for i in (0..domain_dims.len()).rev() {
            choice[i] = rem % domain_dims[i];
            rem /= domain_dims[i];
        }
        let mut acc: HashMap<usize, i64> = HashMap::new();
        let mut stack: Vec<(usize, Vec<Vec<usize>>, i64)> = vec![(0, Vec::new(), 1)];
        while let Some((row, grid, coeff)) = stack.pop() {
            if row == lambda.len() {
                let mut index = 0;
                let mut sign = coeff;
                let mut zero = false;
                for j in 0..cols.len() {
                    let cells: Vec<usize> = (0..cols.part(j)).map(|i| grid[i][j]).collect();
                    let key = if exterior_rows {
                        let mut c = cells;
                        c.sort_unstable();
                        c
                    } else {
                        match sign_of_sort(&cells) {
                            Some((c, s)) => {
                                sign *= s;
                                c
                            }
                            None => {
                                zero = true;
                                break;
                            }
                        }
                    };
                    index = index * codomain_dims[j] + col_index[j][&key];
                }
                if !zero {
                    *acc.entry(index).or_insert(0) += sign;
                }
                continue;
            }
            for (word, s) in &row_words[row][choice[row]] {
                let mut g = grid.clone();
                g.push(word.clone());
                stack.push((row + 1, g, coeff * s));
            }
        }
        for (r, v) in acc {
            if v != 0 {
                out[(r, d)] = BigRational::from_integer(BigInt::from(v));
            }
        }
    }
    out
}

/// Checks that the Schur and coSchur characters match the Schur polynomials
/// of the shape and of its transpose, evaluated at the exterior characters of `V`.
pub fn verify_schur_characters(v: &Arc<EquivariantModule>, lambda: &Partition) -> Result<CheckOutcome, ModuleError> {
    let w = lambda.weight().max(1);
    let ext = v.exterior_characters(w);
    let one = ClassFunction::trivial(v.classes());
    let expect_l = schur_in_e(lambda).evaluate(&[&ext], &one)?;
    let expect_k = schur_in_e(&lambda.transpose()).evaluate(&[&ext], &one)?;
    let l = EquivariantModule::schur_module(v, lambda);
    let k = EquivariantModule::coschur_module(v, lambda);
    let (char_l, char_k) = (l.character(), k.character());
    Ok(CheckOutcome::new(
        "schur-character",
        "char L_lambda(V) = s_lambda(exterior chars) and char K_lambda(V) = s_transpose(exterior chars)",
        json!({ "group": v.classes().group().name(), "module": v.label(), "lambda": lambda.to_string() }),
        char_l == expect_l && char_k == expect_k,
        json!({
            "schur": { "dim": l.dim(), "character": char_l.to_json(), "polynomial": expect_l.to_json() },
            "coschur": { "dim": k.dim(), "character": char_k.to_json(), "polynomial": expect_k.to_json() },
        }),
    ))
}

/// Checks `char Λ^i(V ⊗ W) = P_i(Λ^•V; Λ^•W)`.
pub fn verify_cauchy_modules(
    v: &Arc<EquivariantModule>,
    w: &Arc<EquivariantModule>,
    i: usize,
) -> Result<CheckOutcome, ModuleError> {
    let vw = EquivariantModule::tensor(v, w)?;
    let lhs = vw.exterior_character(i);
    let one = ClassFunction::trivial(v.classes());
    let rhs = cauchy_p(i).evaluate(&[&v.exterior_characters(i), &w.exterior_characters(i)], &one)?;
    Ok(CheckOutcome::new(
        "cauchy-modules",
        "char ext^i(V tensor W) = P_i(exterior chars of V; exterior chars of W)",
        json!({ "group": v.classes().group().name(), "v": v.label(), "w": w.label(), "i": i }),
        lhs == rhs,
        json!({ "exterior_of_tensor": lhs.to_json(), "polynomial": rhs.to_json() }),
    ))
}

/// Checks `Σ_{|λ|=i} dim L_λ(V)·dim K_λ(W) = dim Λ^i(V⊗W)`.
pub fn verify_cauchy_dimensions(v: &Arc<EquivariantModule>, w: &Arc<EquivariantModule>, i: usize) -> CheckOutcome {
    let mut total = BigInt::zero();
    let mut terms = Vec::new();
    for lambda in partitions_of(i) {
        let dl = EquivariantModule::schur_module(v, &lambda).dim();
        let dk = EquivariantModule::coschur_module(w, &lambda).dim();
        total += BigInt::from(dl * dk);
        terms.push(json!({ "lambda": lambda.to_string(), "dim_schur": dl, "dim_coschur": dk }));
    }
    let target = subsets(v.dim() * w.dim(), i).len();
    CheckOutcome::new(
        "cauchy-dimensions",
        "sum over |lambda| = i of dim L_lambda(V) dim K_lambda(W) = dim ext^i(V tensor W)",
        json!({ "v": v.label(), "w": w.label(), "i": i }),
        total == BigInt::from(target),
        json!({ "sum": total.to_string(), "expected": target, "terms": terms }),
    )
}

/// Module from a file: first line `d`, then one `d×d` block of rational entries per element.
pub fn read_matrix_module(classes: &Arc<ConjugacyData>, path: &Path) -> Result<Arc<EquivariantModule>, ModuleError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ModuleError::Io { path: path.display().to_string(), source })?;
    parse_matrix_module(classes, &text, &path.display().to_string())
}

pub fn parse_matrix_module(
    classes: &Arc<ConjugacyData>,
    text: &str,
    label: &str,
) -> Result<Arc<EquivariantModule>, ModuleError> {
    let e = conductor(classes);
    let bad = |m: &str| ModuleError::Parse(format!("{label}: {m}"));
    let mut tokens = text.lines().filter(|l| !l.trim_start().starts_with('#')).flat_map(str::split_whitespace);
    let d: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("missing dimension"))?;
    let mut mats = Vec::with_capacity(classes.order());
    for g in 0..classes.order() {
        let mut entries = Vec::with_capacity(d * d);
        for _ in 0..d * d {
            let t = tokens.next().ok_or_else(|| bad(&format!("matrix {g} is incomplete")))?;
            let q: BigRational = t.parse().map_err(|_| bad(&format!("bad entry {t:?}")))?;
            entries.push(Cyclotomic::from_rational(e, q));
        }
        mats.push(Matrix::from_rows(entries.chunks(d).map(<[_]>::to_vec).collect(), d));
    }
    if tokens.next().is_some() {
        return Err(bad("trailing entries"));
    }
    EquivariantModule::from_matrices_checked(classes, mats, label)
}

/// Splits `name(a,b)` into `name` and its top-level arguments.
fn split_call(spec: &str) -> Option<(&str, Vec<&str>)> {
    let open = spec.find('(')?;
    let inner = spec[open + 1..].strip_suffix(')')?;
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(inner[start..].trim());
    Some((&spec[..open], args))
}

fn element_by_name(classes: &ConjugacyData, name: &str) -> Option<usize> {
    let g = classes.group();
    g.labels().iter().position(|l| l == name).or_else(|| name.parse().ok().filter(|&i: &usize| i < g.order()))
}

/// Module from a name: `triv`, `reg`, `natural`, `std`, `lin<i>` (a degree-one row of `table`),
/// `ind(<element>,<j>)`, `sum(<a>,<b>)`, `tensor(<a>,<b>)`, or `file:<path>`.
pub fn module_from_spec(
    classes: &Arc<ConjugacyData>,
    table: &crate::characters::CharacterTable,
    spec: &str,
) -> Result<Arc<EquivariantModule>, ModuleError> {
    let spec = spec.trim();
    let bad = || ModuleError::Parse(spec.to_string());
    let perms = || classes.group().perms().map(<[_]>::to_vec).ok_or_else(bad);
    match spec {
        "triv" => return Ok(EquivariantModule::trivial(classes)),
        "reg" => return Ok(EquivariantModule::regular(classes)),
        "natural" => return Ok(EquivariantModule::permutation(classes, &perms()?, "natural")),
        "std" => return Ok(EquivariantModule::augmentation_kernel(classes, &perms()?, "std")),
        _ => {}
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return read_matrix_module(classes, Path::new(path));
    }
    if let Some(i) = spec.strip_prefix("lin").and_then(|r| r.parse::<usize>().ok()) {
        let row = table.rows().get(i).ok_or_else(bad)?;
        if row.degree_i64() != Some(1) {
            return Err(ModuleError::Parse(format!("{spec}: row {i} is not linear")));
        }
        return Ok(EquivariantModule::linear(row, spec));
    }
    let (name, args) = split_call(spec).ok_or_else(bad)?;
    match (name, args.as_slice()) {
        ("ind", [h, j]) => {
            let h = element_by_name(classes, h).ok_or_else(bad)?;
            let j: i64 = j.parse().map_err(|_| bad())?;
            Ok(EquivariantModule::induced_from_cyclic(classes, h, j))
        }
        ("sum", [a, b]) => {
            EquivariantModule::direct_sum(&module_from_spec(classes, table, a)?, &module_from_spec(classes, table, b)?)
        }
        ("tensor", [a, b]) => {
            EquivariantModule::tensor(&module_from_spec(classes, table, a)?, &module_from_spec(classes, table, b)?)
        }
        _ => Err(bad()),
    }
}
