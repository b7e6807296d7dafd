//! Character tables written down from formulas on the catalog element encodings.

use std::sync::Arc;

use num_integer::Integer;

use super::{conductor, CharacterError, CharacterTable, ClassFunction};
use crate::exact::{CommRing, Cyclotomic};
use crate::groups::{alternating4, ConjugacyData, GroupKind};

/// Per-element values of every irreducible, at conductor `m`.
struct ElementTable {
    order: usize,
    m: u32,
    rows: Vec<Vec<Cyclotomic>>,
}

fn cyclic_table(n: usize) -> ElementTable {
    let m = n as u32;
    let rows = (0..n).map(|j| (0..n).map(|a| Cyclotomic::root_of_unity(m, (j * a) as i64)).collect()).collect();
    ElementTable { order: n, m, rows }
}

fn dihedral_table(n: usize) -> ElementTable {
    let m = n.lcm(&2) as u32;
    let int = |v: i64| Cyclotomic::from_int(m, v);
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let elems: Vec<(usize, usize)> = (0..2 * n).map(|x| (x % n, x / n)).collect();
    let mut rows: Vec<Vec<Cyclotomic>> = vec![
        elems.iter().map(|_| int(1)).collect(),
        elems.iter().map(|&(_, b)| int(sign(b))).collect(),
    ];
    if n % 2 == 0 {
        rows.push(elems.iter().map(|&(a, _)| int(sign(a))).collect());
        rows.push(elems.iter().map(|&(a, b)| int(sign(a + b))).collect());
    }
    let step = (m as usize / n) as i64;
    for h in 1..=(n - 1) / 2 {
        rows.push(
            elems
                .iter()
                .map(|&(a, b)| {
                    if b == 1 {
                        int(0)
                    } else {
                        let t = step * (h * a) as i64;
                        Cyclotomic::root_of_unity(m, t).add_ref(&Cyclotomic::root_of_unity(m, -t))
                    }
                })
                .collect(),
        );
    }
    ElementTable { order: 2 * n, m, rows }
}

fn quaternion_table() -> ElementTable {
    // element x has unit part x / 2 ∈ {1, i, j, k} and sign x % 2
    let int = |v: i64| Cyclotomic::from_int(4, v);
    let mut rows = vec![(0..8).map(|_| int(1)).collect::<Vec<_>>()];
    for kernel_unit in 1..=3usize {
        rows.push((0..8).map(|x| int(if x / 2 == 0 || x / 2 == kernel_unit { 1 } else { -1 })).collect());
    }
    rows.push((0..8).map(|x| int(if x / 2 == 0 { 2 - 4 * (x as i64 % 2) } else { 0 })).collect());
    ElementTable { order: 8, m: 4, rows }
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Murnaghan–Nakayama rule on bead configurations (first-column hook lengths).
fn murnaghan_nakayama(beads: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else { return 1 };
    let mut total = 0;
    for (idx, &b) in beads.iter().enumerate() {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > b - r && x < b).count();
        let mut moved = beads.to_vec();
        moved[idx] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&moved, rest);
    }
    total
}

fn symmetric_table(n: usize, perms: &[Vec<usize>], exponent: usize) -> ElementTable {
    let m = exponent as u32;
    let types: Vec<Vec<usize>> = perms.iter().map(|p| cycle_type(p)).collect();
    let rows = crate::partitions::partitions_of(n)
        .into_iter()
        .map(|lambda| {
            let l = lambda.len();
            let beads: Vec<usize> = (0..l).map(|i| lambda.part(i) + (l - 1 - i)).collect();
            types.iter().map(|t| Cyclotomic::from_int(m, murnaghan_nakayama(&beads, t))).collect()
        })
        .collect();
    ElementTable { order: perms.len(), m, rows }
}

fn alternating4_table() -> ElementTable {
    let g = alternating4();
    let perms = g.perms().expect("A4 carries its permutation action");
    let t = perms.iter().position(|p| p == &[1, 2, 0, 3]).expect("(0 1 2) is even");
    let t_inv = g.inv(t);
    let in_v4 = |x: usize| cycle_type(&perms[x]).iter().all(|&c| c <= 2);
    // coset index m with x ∈ V4·t^m
    let coset: Vec<i64> = (0..12)
        .map(|x| (0..3).find(|&m| in_v4(g.mul(x, g.pow(t_inv, m as u64)))).expect("V4 has index 3") as i64)
        .collect();
    let int = |v: i64| Cyclotomic::from_int(6, v);
    let mut rows: Vec<Vec<Cyclotomic>> =
        (0..3).map(|j| coset.iter().map(|&c| Cyclotomic::root_of_unity(6, 2 * j * c)).collect()).collect();
    rows.push(
        (0..12)
            .map(|x| {
                let ct = cycle_type(&perms[x]);
                int(match ct[0] {
                    1 => 3,
                    2 => -1,
                    _ => 0,
                })
            })
            .collect(),
    );
    ElementTable { order: 12, m: 6, rows }
}

fn product_table(a: &ElementTable, b: &ElementTable) -> ElementTable {
    let m = (a.m as usize).lcm(&(b.m as usize)) as u32;
    let order = a.order * b.order;
    let mut rows = Vec::new();
    for ra in &a.rows {
        for rb in &b.rows {
            rows.push((0..order).map(|x| ra[x % a.order].embed(m).mul_ref(&rb[x / a.order].embed(m))).collect());
        }
    }
    ElementTable { order, m, rows }
}

fn element_table(kind: &GroupKind, cd: Option<&ConjugacyData>) -> Option<ElementTable> {
    match kind {
        GroupKind::Cyclic { n } => Some(cyclic_table(*n)),
        GroupKind::Dihedral { n } => Some(dihedral_table(*n)),
        GroupKind::Quaternion8 => Some(quaternion_table()),
        GroupKind::Symmetric { n } => {
            let g = crate::groups::symmetric(*n).ok()?;
            let perms = g.perms()?.to_vec();
            let e = cd.map_or_else(|| g.exponent(), |c| c.exponent());
            Some(symmetric_table(*n, &perms, e))
        }
        GroupKind::Alternating4 => Some(alternating4_table()),
        GroupKind::Product { left, right } => {
            Some(product_table(&element_table(left, None)?, &element_table(right, None)?))
        }
        GroupKind::Table => None,
    }
}

/// The closed-form table for catalog groups, or `None` for groups read from tables.
pub fn closed_form_table(cd: &Arc<ConjugacyData>) -> Option<Result<CharacterTable, CharacterError>> {
    let et = element_table(cd.group().kind(), Some(cd))?;
    if et.order != cd.order() {
        return Some(Err(CharacterError::Inconsistent("closed form has the wrong order".into())));
    }
    let e = conductor(cd);
    let rows = et
        .rows
        .iter()
        .map(|r| {
            let vals = (0..cd.num_classes())
                .map(|c| {
                    let v = &r[cd.representative(c)];
                    if e % v.conductor() == 0 {
                        Ok(v.embed(e))
                    } else {
                        Err(CharacterError::Inconsistent(format!("value {v} stored above conductor {e}")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ClassFunction::new(cd, vals))
        })
        .collect::<Result<Vec<_>, CharacterError>>();
    Some(rows.and_then(|rows| CharacterTable::from_rows(cd, rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn murnaghan_nakayama_small() {
        // S3: χ^(2,1) on cycle types (1,1,1), (2,1), (3)
        let beads = [3, 1];
        assert_eq!(murnaghan_nakayama(&beads, &[1, 1, 1]), 2);
        assert_eq!(murnaghan_nakayama(&beads, &[2, 1]), 0);
        assert_eq!(murnaghan_nakayama(&beads, &[3]), -1);
        // sign character of S4 on a 4-cycle
        assert_eq!(murnaghan_nakayama(&[4, 3, 2, 1], &[4]), -1);
    }

    #[test]
    fn dihedral_row_count() {
        assert_eq!(dihedral_table(4).rows.len(), 5);
        assert_eq!(dihedral_table(5).rows.len(), 4);
    }
}
