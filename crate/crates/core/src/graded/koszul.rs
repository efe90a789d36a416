use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::Poly;
use crate::error::{domain, Result};
use crate::linalg::{self, Matrix, ModuleShape};

use super::ring::{QuotientSpec, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    /// Internal degree.
    pub degree: i64,
}

/// A chain complex of free graded modules over a ring, with differentials
/// `d_k : C_k -> C_{k-1}` stored as matrices whose columns are the images
/// of the basis of `C_k`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ring: Ring,
    pub modules: Vec<Vec<BasisElement>>,
    /// `differentials[k - 1]` is `d_k`.
    pub differentials: Vec<Vec<Vec<Poly>>>,
}

impl ChainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.len()).collect()
    }

    pub fn differential(&self, k: usize) -> &[Vec<Poly>] {
        &self.differentials[k - 1]
    }

    /// Checks `d_{k-1} ∘ d_k = 0` exactly for every composable pair.
    pub fn d_squared_is_zero(&self) -> bool {
        (2..self.modules.len()).all(|k| {
            let a = self.differential(k - 1);
            let b = self.differential(k);
            let rows = self.modules[k - 2].len();
            let mid = self.modules[k - 1].len();
            let cols = self.modules[k].len();
            (0..rows).all(|i| {
                (0..cols).all(|j| {
                    let mut acc = Poly::zero(self.ring.nvars());
                    for l in 0..mid {
                        let prod = a[i][l].mul(&b[l][j], &self.ring.coeffs);
                        acc = acc.add(&prod, &self.ring.coeffs);
                    }
                    self.ring.reduce(&acc).is_zero()
                })
            })
        })
    }

    /// Matrix of `d_k` in internal degree `t` after base change to `over`,
    /// on monomial bases with exponents bounded by `window`.
    fn degree_matrix(&self, over: &Ring, k: usize, t: i64, window: i32) -> (Matrix, usize, usize) {
        let src = self.degree_basis(over, k, t, window);
        let dst = self.degree_basis(over, k - 1, t, window);
        let mut m = linalg::zeros(dst.len(), src.len());
        let d = self.differential(k);
        for (j, (sj, mono)) in src.iter().enumerate() {
            for (i, row) in d.iter().enumerate() {
                let entry = &row[*sj];
                if entry.is_zero() {
                    continue;
                }
                let img = over.reduce(&entry.shift(mono));
                for (e, c) in img.terms() {
                    if let Some(pos) = dst.iter().position(|(si, me)| *si == i && me == e) {
                        m[pos][j] = over.coeffs.add(m[pos][j], c);
                    }
                }
            }
        }
        (m, dst.len(), src.len())
    }

    fn degree_basis(&self, over: &Ring, k: usize, t: i64, window: i32) -> Vec<(usize, Vec<i32>)> {
        let mut out = Vec::new();
        for (s, b) in self.modules[k].iter().enumerate() {
            for mono in over.basis(t - b.degree, window) {
                out.push((s, mono));
            }
        }
        out
    }

    /// Homology in internal degree `t` of the complex tensored with `over`,
    /// one module per homological degree.
    ///
    /// Components are truncated to monomials with exponents in
    /// `[-window, window]`; near the edge of the window the answer can be
    /// spurious when the ring has non-trivial degree-zero monomials.
    pub fn homology(&self, over: &Ring, t: i64, window: i32) -> Result<Vec<ModuleShape>> {
        let top = self.modules.len() - 1;
        let mut out = Vec::new();
        for k in 0..=top {
            let n = self.degree_basis(over, k, t, window).len();
            if n == 0 {
                out.push(ModuleShape::zero());
                continue;
            }
            let (inc, inc_cols) = if k < top {
                let (m, _, c) = self.degree_matrix(over, k + 1, t, window);
                (m, c)
            } else {
                (linalg::zeros(n, 0), 0)
            };
            let out_m = if k > 0 {
                let (m, rows, _) = self.degree_matrix(over, k, t, window);
                if rows == 0 {
                    Vec::new()
                } else {
                    m
                }
            } else {
                Vec::new()
            };
            out.push(linalg::homology_shape(
                &inc,
                inc_cols,
                &out_m,
                n,
                &over.coeffs,
            )?);
        }
        Ok(out)
    }
}

impl Serialize for ChainComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let diffs: Vec<Vec<Vec<String>>> = self
            .differentials
            .iter()
            .map(|d| {
                d.iter()
                    .map(|row| row.iter().map(|p| self.ring.display(p)).collect())
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("ChainComplex", 3)?;
        st.serialize_field("ring", &self.ring.to_string())?;
        st.serialize_field("modules", &self.modules)?;
        st.serialize_field("differentials", &diffs)?;
        st.end()
    }
}

pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, m: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..m {
            acc.push(i);
            rec(i + 1, m, k, acc, out);
            acc.pop();
        }
    }
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn alpha_name(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter().map(|i| format!("α{}", i + 1)).collect()
}

/// The Koszul complex of the sequence: the exterior algebra on
/// `α_1,…,α_m` with `d(α_i) = x_i`.
pub fn koszul_complex(spec: &QuotientSpec) -> Result<ChainComplex> {
    if spec.sequence.is_empty() {
        return domain("the Koszul complex needs a non-empty sequence");
    }
    let tower = spec.quotient_tower()?;
    let ring = tower[0].clone();
    let xs = spec.elements()?;
    let m = xs.len();
    let mut modules = Vec::new();
    let mut index = Vec::new();
    for k in 0..=m {
        let subs = subsets(m, k);
        modules.push(
            subs.iter()
                .map(|s| BasisElement {
                    name: alpha_name(s),
                    degree: s.iter().map(|&i| xs[i].degree).sum(),
                })
                .collect::<Vec<_>>(),
        );
        index.push(subs);
    }
    let mut differentials = Vec::new();
    for k in 1..=m {
        let mut d = vec![vec![Poly::zero(ring.nvars()); index[k].len()]; index[k - 1].len()];
        for (col, s) in index[k].iter().enumerate() {
            for (j, &i) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(j);
                let row = index[k - 1].iter().position(|r| *r == rest).unwrap();
                let x = ring.reduce(&xs[i].poly);
                d[row][col] = if j % 2 == 0 { x } else { x.neg(&ring.coeffs) };
            }
        }
        differentials.push(d);
    }
    Ok(ChainComplex {
        ring,
        modules,
        differentials,
    })
}

/// Homology of `K(x) ⊗ A_*` in internal degree `t`.
pub fn koszul_tor(spec: &QuotientSpec, t: i64, window: i32) -> Result<Vec<ModuleShape>> {
    let k = koszul_complex(spec)?;
    let a = spec.quotient_ring()?;
    k.homology(&a, t, window)
}

/// Module shapes of `Λ_{A_*}(α_1,…,α_m)` in internal degree `t`, by
/// number of `α`'s.
pub fn exterior_shapes(spec: &QuotientSpec, t: i64, window: i32) -> Result<Vec<ModuleShape>> {
    let a = spec.quotient_ring()?;
    let d = spec.degrees()?;
    let m = d.len();
    (0..=m)
        .map(|k| {
            let n: usize = subsets(m, k)
                .iter()
                .map(|s| {
                    a.basis(t - s.iter().map(|&i| d[i]).sum::<i64>(), window)
                        .len()
                })
                .sum();
            Ok(if a.is_zero_ring() {
                ModuleShape::zero()
            } else {
                ModuleShape::free(n)
            })
        })
        .collect()
}
