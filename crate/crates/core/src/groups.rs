//! Finite groups given by multiplication tables, with conjugacy data.
//!
//! Element encodings used by the catalog:
//! - `C_n`: index `a` is `g^a`.
//! - `D_n` (order `2n`): index `a + n·b` is `r^a s^b`, with `s r s = r^{-1}`.
//! - `Q_8`: indices `0..8` are `1, -1, i, -i, j, -j, k, -k`.
//! - `S_n`, `A_4`: permutations in one-line notation, lexicographic order,
//!   composed right to left (`(στ)(x) = σ(τ(x))`).
//! - `prod(G,H)`: index `g + |G|·h`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("unsupported group kind: {0}")]
    UnsupportedKind(String),
    #[error("cannot parse group specification {0:?}")]
    Parse(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Which construction produced a group; closed-form character tables key off this.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Quaternion8,
    Symmetric { n: usize },
    Alternating4,
    Product { left: Box<GroupKind>, right: Box<GroupKind> },
    Table,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    kind: GroupKind,
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    /// Action on `{0, …, degree-1}` when the group comes with one.
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates a table (closure, identity, inverses, associativity) and builds the group.
    pub fn from_table(name: &str, rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for (x, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x * n + y] == identity && table[y * n + x] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {x} has no inverse")))?;
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let assoc = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(GroupError::InvalidTable(format!("{} labels for {} elements", l.len(), n))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { name: name.to_string(), kind: GroupKind::Table, n, table, identity, inverses, labels, perms: None })
    }

    fn with_kind(mut self, kind: GroupKind) -> Self {
        self.kind = kind;
        self
    }

    fn with_perms(mut self, perms: Vec<Vec<usize>>) -> Self {
        self.perms = Some(perms);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn perms(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    /// `x^{-1} g x`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut result = self.identity;
        let mut base = g;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn summary(&self) -> Value {
        json!({ "name": self.name, "order": self.n, "exponent": self.exponent(), "kind": self.kind })
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn build(name: String, n: usize, mul: impl Fn(usize, usize) -> usize, labels: Vec<String>) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(&name, rows, Some(labels)).expect("catalog construction yields a group")
}

fn power_label(base: &str, a: usize) -> String {
    match a {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{a}"),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::UnsupportedKind("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|a| if a == 0 { "1".into() } else { power_label("g", a) }).collect();
    let perms = (0..n).map(|a| (0..n).map(|x| (x + a) % n).collect()).collect();
    Ok(build(format!("C{n}"), n, |a, b| (a + b) % n, labels)
        .with_kind(GroupKind::Cyclic { n })
        .with_perms(perms))
}

/// Dihedral group of order `2n`, the symmetries of a regular `n`-gon.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::UnsupportedKind("dihedral group with n = 0".into()));
    }
    let mul = |x: usize, y: usize| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    };
    let labels = (0..2 * n)
        .map(|x| {
            let l = format!("{}{}", power_label("r", x % n), if x >= n { "s" } else { "" });
            if l.is_empty() {
                "1".into()
            } else {
                l
            }
        })
        .collect();
    // r^a s^b acts on vertices by x ↦ a + (-1)^b x
    let perms = (0..2 * n)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            (0..n).map(|v| if b == 0 { (a + v) % n } else { (a + n - v) % n }).collect()
        })
        .collect();
    Ok(build(format!("D{n}"), 2 * n, mul, labels)
        .with_kind(GroupKind::Dihedral { n })
        .with_perms(perms))
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion8() -> FiniteGroup {
    // unit part: 0 = 1, 1 = i, 2 = j, 3 = k; product of units as (sign, unit)
    let unit_mul = |u: usize, v: usize| -> (bool, usize) {
        match (u, v) {
            (0, w) | (w, 0) => (false, w),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mul = |x: usize, y: usize| {
        let (neg, u) = unit_mul(x / 2, y / 2);
        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
        2 * u + sign
    };
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    build("Q8".into(), 8, mul, labels).with_kind(GroupKind::Quaternion8)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Cycle notation with points `0..n`, e.g. `(0 1 2)`; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn permutation_group(name: String, perms: Vec<Vec<usize>>) -> FiniteGroup {
    let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mul = |a: usize, b: usize| {
        let composed: Vec<usize> = perms[b].iter().map(|&x| perms[a][x]).collect();
        index[&composed]
    };
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    build(name, perms.len(), mul, labels).with_perms(perms.clone())
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 5 {
        return Err(GroupError::UnsupportedKind(format!("symmetric group S{n} (supported: 1..=5)")));
    }
    Ok(permutation_group(format!("S{n}"), all_permutations(n)).with_kind(GroupKind::Symmetric { n }))
}

pub fn alternating4() -> FiniteGroup {
    let perms = all_permutations(4).into_iter().filter(|p| is_even(p)).collect();
    permutation_group("A4".into(), perms).with_kind(GroupKind::Alternating4)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let mul = |x: usize, y: usize| g.mul(x % ng, y % ng) + ng * h.mul(x / ng, y / ng);
    let labels = (0..ng * nh).map(|x| format!("({},{})", g.label(x % ng), h.label(x / ng))).collect();
    build(format!("prod({},{})", g.name, h.name), ng * nh, mul, labels).with_kind(GroupKind::Product {
        left: Box::new(g.kind.clone()),
        right: Box::new(h.kind.clone()),
    })
}

/// Catalog constructor; `parameter` is ignored by the parameterless kinds.
pub fn make_catalog(kind: &str, parameter: usize) -> Result<FiniteGroup, GroupError> {
    match kind {
        "cyclic" => cyclic(parameter),
        "dihedral" => dihedral(parameter),
        "quaternion8" => Ok(quaternion8()),
        "symmetric" => symmetric(parameter),
        "alternating" if parameter == 4 => Ok(alternating4()),
        other => Err(GroupError::UnsupportedKind(format!("{other} {parameter}"))),
    }
}

/// Parses `C<n>`, `D<n>`, `Q8`, `S<n>`, `A4`, `prod(<g>,<h>)` or `table:<path>`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let s = spec.trim();
    if let Some(path) = s.strip_prefix("table:") {
        return read_table_file(Path::new(path));
    }
    if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        let split = split_top_level(inner).ok_or_else(|| GroupError::Parse(spec.to_string()))?;
        return Ok(direct_product(&parse_group(split.0)?, &parse_group(split.1)?));
    }
    match s {
        "Q8" => return Ok(quaternion8()),
        "A4" => return Ok(alternating4()),
        _ => {}
    }
    let (head, num) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| GroupError::Parse(spec.into()))?);
    let n: usize = num.parse().map_err(|_| GroupError::Parse(spec.into()))?;
    match head {
        "C" => cyclic(n),
        "D" => dihedral(n),
        "S" => symmetric(n),
        "A" | "Q" => Err(GroupError::UnsupportedKind(s.into())),
        _ => Err(GroupError::Parse(spec.into())),
    }
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Table text: blank lines and `#` comments are skipped; first line `n`, then `n` rows of `n` indices; optionally a line
/// `labels` followed by `n` labels, one per line.
pub fn parse_table_text(name: &str, text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .and_then(|l| l.parse().ok())
        .ok_or_else(|| GroupError::InvalidTable("first line must be the group order".into()))?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines.next().ok_or_else(|| GroupError::InvalidTable(format!("missing row {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| GroupError::InvalidTable(format!("bad entry {t:?} in row {r}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let labels = match lines.next() {
        None => None,
        Some(l) if l.eq_ignore_ascii_case("labels") => {
            Some(lines.map(str::to_string).collect())
        }
        Some(l) => return Err(GroupError::InvalidTable(format!("unexpected trailing line {l:?}"))),
    };
    FiniteGroup::from_table(name, rows, labels)
}

pub fn read_table_file(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|source| GroupError::Io { path: path.display().to_string(), source })?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    parse_table_text(name, &text)
}

/// Serialises a group in the table text format.
pub fn table_text(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.table_rows() {
        out.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out.push_str("labels\n");
    for l in &g.labels {
        out.push_str(l);
        out.push('\n');
    }
    out
}

/// Catalog groups of order at most `max_order`.
pub fn catalog_up_to(max_order: usize) -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=max_order).map(|n| cyclic(n).expect("n ≥ 1")).collect();
    out.extend((2..=max_order / 2).map(|n| dihedral(n).expect("n ≥ 2")));
    if max_order >= 8 {
        out.push(quaternion8());
    }
    for n in 3..=5 {
        let s = symmetric(n).expect("n ≤ 5");
        if s.order() <= max_order {
            out.push(s);
        }
    }
    if max_order >= 12 {
        out.push(alternating4());
    }
    for (a, b) in [(2, 2), (2, 4), (3, 3), (2, 6)] {
        if a * b <= max_order {
            out.push(direct_product(&cyclic(a).expect("a ≥ 1"), &cyclic(b).expect("b ≥ 1")));
        }
    }
    if max_order >= 8 {
        let c2 = cyclic(2).expect("2 ≥ 1");
        out.push(direct_product(&direct_product(&c2, &c2), &c2));
    }
    if max_order >= 16 {
        out.push(direct_product(&cyclic(2).expect("2 ≥ 1"), &quaternion8()));
    }
    out
}

/// Conjugacy classes, element orders and class-level power maps.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    group: Arc<FiniteGroup>,
    exponent: usize,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// `power_map[k][c]` is the class of `γ^k` for `γ ∈ c`, `0 ≤ k < exponent`.
    power_map: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    orders: Vec<usize>,
}

impl ConjugacyData {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|x| group.conjugate(g, x)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect::<Vec<_>>());
        }
        let exponent = group.exponent();
        let power_map = (0..exponent)
            .map(|k| classes.iter().map(|c| class_of[group.pow(c[0], k as u64)]).collect())
            .collect();
        let inverse_class = classes.iter().map(|c| class_of[group.inv(c[0])]).collect();
        let orders = classes.iter().map(|c| group.element_order(c[0])).collect();
        ConjugacyData { group, exponent, class_of, classes, power_map, inverse_class, orders }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.class_size(c)
    }

    /// Class of `γ^k` for `γ` in class `c`; `k` is any integer.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let e = self.exponent as i64;
        self.power_map[k.rem_euclid(e) as usize][c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn element_order_of_class(&self, c: usize) -> usize {
        self.orders[c]
    }

    /// All `τ` with `τ^k` equal to the class representative of `c`.
    pub fn kth_roots(&self, k: u64, c: usize) -> Vec<usize> {
        let gamma = self.representative(c);
        (0..self.order()).filter(|&t| self.group.pow(t, k) == gamma).collect()
    }

    /// Multiset of classes of the `k`-th roots of the representative of `c`.
    pub fn kth_root_counts(&self, k: u64, c: usize) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for t in self.kth_roots(k, c) {
            *counts.entry(self.class_of(t)).or_insert(0) += 1;
        }
        counts
    }

    /// Checks that every member of every class maps into one class under each power.
    pub fn power_maps_well_defined(&self) -> bool {
        (0..self.exponent).all(|k| {
            self.classes.iter().enumerate().all(|(c, members)| {
                members.iter().all(|&g| self.class_of[self.group.pow(g, k as u64)] == self.power_map[k][c])
            })
        })
    }

    pub fn summary(&self) -> Value {
        json!({
            "group": self.group.summary(),
            "classes": self.classes.iter().map(|c| c.iter().map(|&g| self.group.label(g)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "sizes": self.class_sizes(),
            "element_orders": self.orders,
        })
    }
}

pub fn conjugacy_classes(group: &Arc<FiniteGroup>) -> ConjugacyData {
    ConjugacyData::new(Arc::clone(group))
}
