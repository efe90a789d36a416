//! Dense linear algebra over `Z` and over the chain rings `Z/p^N`.
//!
//! Everything is reduced to a Smith normal form `U A V = D` with the
//! transforms tracked, from which kernels, particular solutions and the
//! isomorphism type of cokernels follow.

use serde::{Deserialize, Serialize};

use crate::arith::Coeffs;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix, k: &Coeffs) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for (l, &ail) in a[i].iter().enumerate() {
            if ail == 0 {
                continue;
            }
            for j in 0..m {
                if b[l][j] != 0 {
                    out[i][j] = k.add(out[i][j], k.mul(ail, b[l][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, x: &[i128], k: &Coeffs) -> Vec<i128> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&r, &v)| k.add(acc, k.mul(r, v)))
        })
        .collect()
}

/// Smith normal form `u * a * v = diag`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries, `min(rows, cols)` of them; zero entries come last.
    pub diag: Vec<i128>,
    pub u: Matrix,
    pub v: Matrix,
    pub rows: usize,
    pub cols: usize,
}

fn check_ring(k: &Coeffs) -> Result<()> {
    match (k.modulus(), k.prime()) {
        (None, _) | (Some(_), Some(_)) | (Some(1), None) => Ok(()),
        _ => Err(Error::Unsupported(format!(
            "linear algebra over Z/{} (not a prime power)",
            k.modulus().unwrap()
        ))),
    }
}

/// Pivot size used to pick the next pivot: valuation over `Z/p^N`,
/// absolute value over `Z`.
fn pivot_key(k: &Coeffs, x: i128) -> i128 {
    match k.modulus() {
        Some(_) => k.valuation(x).map_or(i128::MAX, |v| v as i128),
        None => {
            if x == 0 {
                i128::MAX
            } else {
                x.abs()
            }
        }
    }
}

pub fn smith(a: &Matrix, cols: usize, k: &Coeffs) -> Result<Smith> {
    smith_impl(a, cols, k, true)
}

fn smith_impl(a: &Matrix, cols: usize, k: &Coeffs, track: bool) -> Result<Smith> {
    check_ring(k)?;
    let rows = a.len();
    let mut m: Matrix = a
        .iter()
        .map(|r| r.iter().map(|&x| k.norm(x)).collect())
        .collect();
    let mut u = if track { identity(rows) } else { Vec::new() };
    let mut v = if track { identity(cols) } else { Vec::new() };
    let r = rows.min(cols);
    let mut diag = Vec::with_capacity(r);
    for t in 0..r {
        loop {
            // choose the smallest remaining entry
            let mut best: Option<(usize, usize, i128)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let key = pivot_key(k, x);
                        if best.is_none_or(|b| key < b.2) {
                            best = Some((i, j, key));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                // remaining block is zero
                diag.extend(std::iter::repeat_n(0, r - t));
                return Ok(Smith {
                    diag,
                    u,
                    v,
                    rows,
                    cols,
                });
            };
            m.swap(t, pi);
            if track {
                u.swap(t, pi);
            }
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            if track {
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let piv = m[t][t];
            let mut clean = true;
            // clear column t
            for i in t + 1..rows {
                if m[i][t] == 0 {
                    continue;
                }
                let q = quotient(k, m[i][t], piv);
                row_axpy(&mut m, i, t, k.neg(q), k);
                if track {
                    row_axpy(&mut u, i, t, k.neg(q), k);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if m[t][j] == 0 {
                    continue;
                }
                let q = quotient(k, m[t][j], piv);
                col_axpy(&mut m, j, t, k.neg(q), k);
                if track {
                    col_axpy(&mut v, j, t, k.neg(q), k);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            if k.modulus().is_none() {
                // over Z the pivot must divide the rest of the block
                let mut bad = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if m[i][j] % piv != 0 {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                if let Some(i) = bad {
                    row_axpy(&mut m, t, i, 1, k);
                    if track {
                        row_axpy(&mut u, t, i, 1, k);
                    }
                    continue;
                }
            }
            // normalise the pivot
            let (scale, d) = normalise(k, piv);
            if scale != 1 {
                for x in m[t].iter_mut() {
                    *x = k.mul(*x, scale);
                }
                if track {
                    for x in u[t].iter_mut() {
                        *x = k.mul(*x, scale);
                    }
                }
            }
            diag.push(d);
            break;
        }
    }
    Ok(Smith {
        diag,
        u,
        v,
        rows,
        cols,
    })
}

fn quotient(k: &Coeffs, a: i128, piv: i128) -> i128 {
    match k.modulus() {
        Some(_) => k
            .div_exact(a, piv)
            .expect("pivot of minimal valuation divides"),
        None => a.div_euclid(piv),
    }
}

/// Unit `s` with `s * piv` canonical: `p^v` over `Z/p^N`, positive over `Z`.
fn normalise(k: &Coeffs, piv: i128) -> (i128, i128) {
    match (k.modulus(), k.prime()) {
        (Some(_), Some(p)) => {
            let v = k.valuation(piv).unwrap();
            let d = k.norm(p.pow(v));
            let s = k.div_exact(d, piv).unwrap();
            (s, d)
        }
        (Some(_), None) => (1, 0),
        (None, _) => {
            if piv < 0 {
                (-1, -piv)
            } else {
                (1, piv)
            }
        }
    }
}

fn row_axpy(m: &mut Matrix, dst: usize, src: usize, s: i128, k: &Coeffs) {
    if s == 0 {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, &y) in a.iter_mut().zip(b.iter()) {
        if y != 0 {
            *x = k.add(*x, k.mul(s, y));
        }
    }
}

fn col_axpy(m: &mut Matrix, dst: usize, src: usize, s: i128, k: &Coeffs) {
    if s == 0 {
        return;
    }
    for row in m.iter_mut() {
        if row[src] != 0 {
            row[dst] = k.add(row[dst], k.mul(s, row[src]));
        }
    }
}

/// Rank over a field (`Z/p`) or over `Z` (number of non-zero invariant factors).
pub fn rank(a: &Matrix, cols: usize, k: &Coeffs) -> Result<usize> {
    let s = smith_impl(a, cols, k, false)?;
    Ok(s.diag.iter().filter(|&&d| d != 0).count())
}

/// Generators of `{x : a x = 0}`.
pub fn kernel(a: &Matrix, cols: usize, k: &Coeffs) -> Result<Vec<Vec<i128>>> {
    let s = smith(a, cols, k)?;
    let mut gens = Vec::new();
    for i in 0..cols {
        let d = s.diag.get(i).copied().unwrap_or(0);
        let scale = if d == 0 {
            1
        } else {
            match k.modulus() {
                None => continue,
                Some(m) => {
                    if k.is_unit(d) {
                        continue;
                    }
                    m / d
                }
            }
        };
        let col: Vec<i128> = (0..cols).map(|r| k.mul(s.v[r][i], scale)).collect();
        if col.iter().any(|&x| x != 0) {
            gens.push(col);
        }
    }
    Ok(gens)
}

/// Some `x` with `a x = b`, if one exists.
pub fn solve(a: &Matrix, cols: usize, b: &[i128], k: &Coeffs) -> Result<Option<Vec<i128>>> {
    let s = smith(a, cols, k)?;
    let c = mat_vec(&s.u, b, k);
    let mut y = vec![0; cols];
    for (i, &ci) in c.iter().enumerate() {
        let d = s.diag.get(i).copied().unwrap_or(0);
        if ci == 0 {
            continue;
        }
        match k.modulus() {
            None => {
                if d == 0 || ci % d != 0 {
                    return Ok(None);
                }
                y[i] = ci / d;
            }
            Some(_) => {
                if d == 0 {
                    return Ok(None);
                }
                match k.div_exact(ci, d) {
                    Some(q) => y[i] = q,
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(Some(mat_vec(&s.v, &y, k)))
}

/// Isomorphism type of a finitely generated module over `Z` or `Z/p^N`.
///
/// `free` counts summands `Z` (respectively `Z/p^N`, free at the working
/// precision); `torsion` lists the orders of the remaining cyclic summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModuleShape {
    pub free: usize,
    pub torsion: Vec<i128>,
}

impl ModuleShape {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(n: usize) -> Self {
        ModuleShape {
            free: n,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &ModuleShape) -> ModuleShape {
        let mut torsion = self.torsion.clone();
        torsion.extend(&other.torsion);
        torsion.sort();
        ModuleShape {
            free: self.free + other.free,
            torsion,
        }
    }

    /// Number of cyclic summands.
    pub fn generators(&self) -> usize {
        self.free + self.torsion.len()
    }
}

/// Cokernel of `rel : k^cols -> k^rows`, i.e. the module with `rows`
/// generators and the columns of `rel` as relations.
pub fn cokernel_shape(rel: &Matrix, rows: usize, cols: usize, k: &Coeffs) -> Result<ModuleShape> {
    debug_assert_eq!(rel.len(), rows);
    if rows == 0 {
        return Ok(ModuleShape::zero());
    }
    if k.is_trivial() {
        return Ok(ModuleShape::zero());
    }
    let s = smith_impl(rel, cols, k, false)?;
    let mut shape = ModuleShape::zero();
    for i in 0..rows {
        let d = s.diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            shape.free += 1;
        } else if !k.is_unit(d) {
            shape.torsion.push(d);
        }
    }
    shape.torsion.sort();
    Ok(shape)
}

/// Homology `ker(out) / im(inc)` at a free module of rank `n`, where `inc`
/// is `n x a` and `out` is `b x n`.
pub fn homology_shape(
    inc: &Matrix,
    inc_cols: usize,
    out: &Matrix,
    n: usize,
    k: &Coeffs,
) -> Result<ModuleShape> {
    // Z = ker(out), generated by columns z_1..z_r; present Z/B as the module
    // on generators z_j with relations syz(Z) and coordinates of im(inc).
    let z = if out.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect()
    } else {
        kernel(out, n, k)?
    };
    let r = z.len();
    if r == 0 {
        return Ok(ModuleShape::zero());
    }
    let zmat: Matrix = (0..n)
        .map(|row| z.iter().map(|c| c[row]).collect())
        .collect();
    let mut rel_cols: Vec<Vec<i128>> = kernel(&zmat, r, k)?;
    for j in 0..inc_cols {
        let b: Vec<i128> = (0..n).map(|i| inc[i][j]).collect();
        if b.iter().all(|&x| x == 0) {
            continue;
        }
        let coords = solve(&zmat, r, &b, k)?
            .ok_or_else(|| Error::Domain("boundary does not lie in the cycles (d∘d ≠ 0)".into()))?;
        rel_cols.push(coords);
    }
    let rel: Matrix = (0..r)
        .map(|i| rel_cols.iter().map(|c| c[i]).collect())
        .collect();
    cokernel_shape(&rel, r, rel_cols.len(), k)
}
