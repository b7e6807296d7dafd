//! Character tables by simultaneous diagonalisation of class matrices modulo a prime.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{conductor, CharacterError, CharacterTable, ClassFunction};
use crate::exact::Cyclotomic;
use crate::groups::ConjugacyData;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Primes `p ≡ 1 (mod e)` with `p > 2·sqrt(n)`, in increasing order.
fn candidate_primes(n: usize, e: usize) -> impl Iterator<Item = u64> {
    let e = e as u64;
    let n = n as u64;
    (1..).map(move |t| t * e + 1).filter(move |&p| p * p > 4 * n && is_prime(p))
}

/// Reduced row echelon form mod `p`, in place; returns pivot columns.
fn rref_mod(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x : A x = 0}` mod `p` for a square matrix given by rows.
fn nullspace_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref_mod(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// A subspace of `F_p^r` spanned by the rows of an RREF matrix.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(mut rows: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = rref_mod(&mut rows, p);
        rows.truncate(pivots.len());
        Subspace { rows, pivots }
    }
}

/// `a[i][j][k] = #{x ∈ C_i : x^{-1} z_k ∈ C_j}` for fixed representatives `z_k`.
fn class_matrices(cd: &ConjugacyData) -> Vec<Vec<Vec<u64>>> {
    let g = cd.group();
    let r = cd.num_classes();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (i, ai) in a.iter_mut().enumerate() {
        for k in 0..r {
            let z = cd.representative(k);
            for &x in cd.class(i) {
                ai[cd.class_of(g.mul(g.inv(x), z))][k] += 1;
            }
        }
    }
    a
}

/// Splits `F_p^r` into common eigenspaces of the class matrices; `None` if some eigenspace stays degenerate.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], r: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![Subspace::new(identity, p)];
    for m in mats {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            let d = space.rows.len();
            if d == 1 {
                next.push(space);
                continue;
            }
            // images of basis vectors, in basis coordinates (read off at pivot columns)
            let images: Vec<Vec<u64>> = space
                .rows
                .iter()
                .map(|b| (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + m[j][k] * b[k]) % p)).collect())
                .collect();
            let restricted: Vec<Vec<u64>> =
                (0..d).map(|t| (0..d).map(|s| images[s][space.pivots[t]]).collect()).collect();
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|t| (0..d).map(|s| (restricted[t][s] + if s == t { p - lambda } else { 0 }) % p).collect())
                    .collect();
                let kernel = nullspace_mod(&shifted, p);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let vectors = kernel
                    .iter()
                    .map(|c| (0..r).map(|j| (0..d).fold(0, |acc, s| (acc + c[s] * space.rows[s][j]) % p)).collect())
                    .collect();
                next.push(Subspace::new(vectors, p));
                if found == d {
                    break;
                }
            }
            if found != d {
                return None;
            }
        }
        spaces = next;
    }
    spaces.iter().all(|s| s.rows.len() == 1).then(|| spaces.into_iter().map(|s| s.rows[0].clone()).collect())
}

fn table_mod_p(cd: &ConjugacyData, mats: &[Vec<Vec<u64>>], p: u64) -> Option<Vec<Vec<Cyclotomic>>> {
    let r = cd.num_classes();
    let n = cd.order() as u64;
    let e = cd.exponent() as u64;
    let id_class = cd.class_of(cd.group().identity());
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let vectors = common_eigenvectors(mats, r, p)?;
    let mut rows = Vec::with_capacity(r);
    for v in vectors {
        let scale = inv_mod(v[id_class], p);
        let w: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let s = (0..r).fold(0, |acc, k| {
            let term = w[k] * w[cd.inverse_class(k)] % p * inv_mod(cd.class_size(k) as u64 % p, p) % p;
            (acc + term) % p
        });
        if s == 0 {
            return None;
        }
        let d2 = n % p * inv_mod(s, p) % p;
        let d = (1..).take_while(|d| d * d <= n).find(|d| d * d % p == d2)?;
        let values: Vec<u64> =
            (0..r).map(|k| w[k] * d % p * inv_mod(cd.class_size(k) as u64 % p, p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = cd.element_order_of_class(k) as u64;
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut raw = vec![num_rational::BigRational::from_integer(BigInt::from(0)); e as usize];
            for j in 0..o {
                let mut sum = 0;
                for l in 0..o {
                    let chi = values[cd.power_class(k, l as i64)];
                    sum = (sum + chi * pow_mod(zo, (o - j) * l % o, p)) % p;
                }
                let mult = sum * inv_o % p;
                if mult > d {
                    return None;
                }
                raw[(j * (e / o)) as usize] = num_rational::BigRational::from_integer(BigInt::from(mult));
            }
            row.push(Cyclotomic::normalize(&raw, e as u32));
        }
        rows.push(row);
    }
    Some(rows)
}

/// Irreducible characters computed modulo a suitable prime and lifted to ℤ[ζ_e].
pub fn dixon_table(cd: &Arc<ConjugacyData>) -> Result<CharacterTable, CharacterError> {
    let mats = class_matrices(cd);
    let e = conductor(cd);
    let mut last_err = None;
    for p in candidate_primes(cd.order(), cd.exponent()).take(8) {
        let Some(rows) = table_mod_p(cd, &mats, p) else { continue };
        let rows = rows
            .into_iter()
            .map(|vals| ClassFunction::new(cd, vals.into_iter().map(|v| v.embed(e)).collect()))
            .collect();
        match CharacterTable::from_rows(cd, rows) {
            Ok(t) => return Ok(t),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or_else(|| CharacterError::Inconsistent("no prime split the class algebra".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{conjugacy_classes, symmetric};

    #[test]
    fn prime_choice() {
        assert_eq!(candidate_primes(24, 12).next(), Some(13));
        assert_eq!(candidate_primes(120, 60).next(), Some(61));
        assert_eq!(candidate_primes(1, 1).next(), Some(3));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 7), 5);
        let g = primitive_root(13);
        assert_eq!((1..12).filter(|&k| pow_mod(g, k, 13) == 1).count(), 0);
        let ns = nullspace_mod(&[vec![1, 2], vec![2, 4]], 7);
        assert_eq!(ns, vec![vec![5, 1]]);
    }

    #[test]
    fn symmetric_five() {
        let cd = Arc::new(conjugacy_classes(&Arc::new(symmetric(5).unwrap())));
        let t = dixon_table(&cd).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 4, 4, 5, 5, 6]);
    }
}
