use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Exponents, Poly};
use crate::error::Result;
use crate::linalg::{smith, solve, zeros, Matrix};

use super::chart::{gamma_name, indices_up_to, module_action, q_name};
use super::extension::ExtensionSystem;
use super::resolve::base_ring;

/// A `Z/p^∞` summand detected by an explicit divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub degree: i64,
    pub summand: String,
    pub generator: String,
    /// Number of successive divisions by a sequence element found in the
    /// truncated module.
    pub chain_length: u32,
}

/// Towers in one degree class modulo the period of the units of `A_*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerFamily {
    pub shift: i64,
    pub generator: String,
}

/// Summand orders (as `p`-adic valuations) of the truncated module in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeShape {
    pub degree: i64,
    pub orders: Vec<u32>,
    pub towers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedHomology {
    pub base: String,
    pub relations: Vec<String>,
    pub filtration: u32,
    pub degrees: Vec<DegreeShape>,
    pub towers: Vec<Tower>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<i64>,
    pub families: Vec<TowerFamily>,
    pub tags: Vec<String>,
}

/// The relation `x_i γ_I = Σ_J a_{iJ} γ_{I-J}` as a combination of divided
/// powers, obtained by capping `x_i - f_i` with `γ_I`.
pub fn pair_relation(ext: &ExtensionSystem, i: usize, idx: &[u32]) -> Vec<(Vec<u32>, Poly)> {
    let mut out = vec![(idx.to_vec(), ext.x[i].clone())];
    for (j, a) in ext.coefficients(i) {
        if let Some(rest) = module_action(&j, idx) {
            out.push((rest, a.neg(ext.coeffs())));
        }
    }
    out
}

fn relation_text(ext: &ExtensionSystem, i: usize) -> String {
    let names = ext.q_names();
    let m = ext.m();
    let lhs = format!("{}·γ_I", ext.display(&ext.x[i]));
    let terms: Vec<String> = ext
        .coefficients(i)
        .into_iter()
        .map(|(j, a)| {
            let shift = if m == 1 {
                j[0].to_string()
            } else {
                q_name(names, &j)
            };
            format!("({})·γ_(I-{shift})", ext.display(&a))
        })
        .collect();
    if terms.is_empty() {
        format!("{lhs} = 0")
    } else {
        format!("{lhs} = {}", terms.join(" + "))
    }
}

struct Truncated<'a> {
    ext: &'a ExtensionSystem,
    indices: Vec<Vec<u32>>,
    gamma_deg: Vec<i64>,
    window: i32,
}

struct Degree {
    gens: Vec<(usize, Exponents)>,
    lookup: HashMap<(usize, Exponents), usize>,
    rel: Matrix,
    ncols: usize,
}

impl<'a> Truncated<'a> {
    fn new(ext: &'a ExtensionSystem, filtration: u32) -> Self {
        let indices = indices_up_to(ext.m(), filtration);
        let gamma_deg = indices
            .iter()
            .map(|i| {
                i.iter()
                    .zip(&ext.d)
                    .map(|(&a, &d)| a as i64 * (d + 2))
                    .sum()
            })
            .collect();
        Truncated {
            ext,
            indices,
            gamma_deg,
            window: ext.precision as i32,
        }
    }

    fn base_basis(&self, t: i64) -> Vec<Exponents> {
        let nv = self.ext.nvars();
        base_ring(self.ext)
            .basis(t, self.window)
            .into_iter()
            .map(|mut e| {
                e.resize(nv, 0);
                e
            })
            .collect()
    }

    fn generators(&self, t: i64) -> Vec<(usize, Exponents)> {
        let mut gens = Vec::new();
        for (k, &g) in self.gamma_deg.iter().enumerate() {
            for e in self.base_basis(t - g) {
                gens.push((k, e));
            }
        }
        gens
    }

    fn index_of(&self, idx: &[u32]) -> Option<usize> {
        self.indices.iter().position(|i| i == idx)
    }

    /// Coordinates of `c · γ_k` in degree `deg`, dropping terms outside the window.
    fn add_product(&self, d: &Degree, col: &mut [i128], k: usize, c: &Poly) {
        let ext = self.ext;
        for (e, v) in ext.truncate(c).terms() {
            if let Some(&row) = d.lookup.get(&(k, e.clone())) {
                col[row] = ext.coeffs().add(col[row], v);
            }
        }
    }

    fn degree(&self, t: i64) -> Degree {
        let ext = self.ext;
        let gens = self.generators(t);
        let lookup: HashMap<_, _> = gens
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let mut d = Degree {
            gens,
            lookup,
            rel: Vec::new(),
            ncols: 0,
        };
        let mut cols = Vec::new();
        for i in 0..ext.m() {
            for (k, idx) in self.indices.iter().enumerate() {
                for mono in self.base_basis(t - ext.d[i] - self.gamma_deg[k]) {
                    let mono = Poly::monomial(mono, 1, ext.coeffs());
                    let mut col = vec![0i128; d.gens.len()];
                    for (target, c) in pair_relation(ext, i, idx) {
                        if let Some(kt) = self.index_of(&target) {
                            self.add_product(&d, &mut col, kt, &ext.mul(&mono, &c));
                        }
                    }
                    if col.iter().any(|&x| x != 0) {
                        cols.push(col);
                    }
                }
            }
        }
        d.ncols = cols.len();
        d.rel = zeros(d.gens.len(), d.ncols);
        for (j, col) in cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                d.rel[r][j] = v;
            }
        }
        d
    }

    fn orders(&self, t: i64) -> Result<Vec<u32>> {
        let d = self.degree(t);
        let k = self.ext.coeffs();
        let n = self.ext.precision;
        if d.gens.is_empty() {
            return Ok(Vec::new());
        }
        let s = smith(&d.rel, d.ncols, k)?;
        let mut out: Vec<u32> = (0..d.gens.len())
            .map(|i| match s.diag.get(i).copied().unwrap_or(0) {
                0 => n,
                x => k.valuation(x).unwrap_or(0),
            })
            .filter(|&v| v > 0)
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// Multiplication by `x_i` from degree `t - d_i` into degree `t`.
    fn times_x(&self, i: usize, src: &Degree, dst: &Degree) -> Matrix {
        let ext = self.ext;
        let mut m = zeros(dst.gens.len(), src.gens.len());
        for (c, (k, e)) in src.gens.iter().enumerate() {
            let mono = Poly::monomial(e.clone(), 1, ext.coeffs());
            let mut col = vec![0i128; dst.gens.len()];
            self.add_product(dst, &mut col, *k, &ext.mul(&mono, &ext.x[i]));
            for (r, v) in col.into_iter().enumerate() {
                m[r][c] = v;
            }
        }
        m
    }

    /// Length of the chain `y_0 = g`, `x_i y_{c+1} = y_c` in the truncated module.
    fn chain(&self, t: i64, g: usize, i: usize, cap: u32) -> Result<u32> {
        let k = self.ext.coeffs();
        let di = self.ext.d[i];
        let mut dst = self.degree(t);
        let mut y = vec![0i128; dst.gens.len()];
        y[g] = 1;
        let mut len = 0;
        while len < cap {
            let src = self.degree(t - (len as i64 + 1) * di);
            if src.gens.is_empty() {
                break;
            }
            let x = self.times_x(i, &src, &dst);
            let cols = src.gens.len() + dst.ncols;
            let a: Matrix = x
                .iter()
                .zip(&dst.rel)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect();
            match solve(&a, cols, &y, k)? {
                Some(z) => {
                    y = z[..src.gens.len()].to_vec();
                    len += 1;
                    dst = src;
                }
                None => break,
            }
        }
        Ok(len)
    }
}

fn period(ext: &ExtensionSystem) -> Option<i64> {
    let b = base_ring(ext);
    let a = (0..b.nvars())
        .filter(|&i| b.invertible[i] && !b.killed[i] && b.degrees[i] != 0)
        .fold(0i128, |acc, i| gcd(acc, b.degrees[i] as i128));
    (a != 0).then_some(a as i64)
}

/// `π_* THH_R(R/I)` from `Γ_R[q̄_1,…,q̄_m]` modulo
/// `x_i γ_I = Σ_J a_{iJ} γ_{I-J}`, truncated at the given filtration.
///
/// Towers are the summands whose order grows between the filtrations
/// `L - s` and `L`, where `s` is the largest `q`-degree in the extensions;
/// each is confirmed by a divisibility chain.
pub fn resolve_homology(
    ext: &ExtensionSystem,
    filtration: u32,
    degree_bound: i64,
) -> Result<ResolvedHomology> {
    ext.validate()?;
    let m = ext.m();
    let step = (0..m)
        .flat_map(|i| {
            ext.f[i]
                .terms()
                .map(|(e, _)| ext.q_degree(e))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(1)
        .max(1);
    let hi = Truncated::new(ext, filtration);
    let lo = Truncated::new(ext, filtration.saturating_sub(step));
    let p = ext
        .ring
        .coeffs
        .prime()
        .map(|p| p.to_string())
        .unwrap_or_else(|| "p".into());
    let names = ext.q_names().to_vec();
    let mut degrees = Vec::new();
    let mut towers = Vec::new();
    for t in 0..=degree_bound {
        let a = hi.orders(t)?;
        let b = lo.orders(t)?;
        let count = b.iter().zip(&a).filter(|(x, y)| y > x).count();
        degrees.push(DegreeShape {
            degree: t,
            orders: a,
            towers: count,
        });
        if count == 0 {
            continue;
        }
        let gens = hi.generators(t);
        let mut depths = Vec::new();
        for g in 0..gens.len() {
            let mut best = 0;
            for i in 0..m {
                best = best.max(hi.chain(t, g, i, filtration)?);
            }
            depths.push((best, g));
        }
        depths.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(len, g) in depths.iter().take(count) {
            if len < 2 {
                continue;
            }
            let (k, e) = &gens[g];
            let coeff = ext.display(&Poly::monomial(e.clone(), 1, ext.coeffs()));
            let gamma = gamma_name(&names, &hi.indices[*k]);
            let generator = if coeff == "1" {
                gamma
            } else {
                format!("{coeff}·{gamma}")
            };
            towers.push(Tower {
                degree: t,
                summand: format!("Z/{p}^∞"),
                generator,
                chain_length: len,
            });
        }
    }
    let period = period(ext);
    let families = match period {
        Some(per) => towers
            .iter()
            .filter(|t| t.degree < per)
            .map(|t| TowerFamily {
                shift: t.degree,
                generator: t.generator.clone(),
            })
            .collect(),
        None => towers
            .iter()
            .map(|t| TowerFamily {
                shift: t.degree,
                generator: t.generator.clone(),
            })
            .collect(),
    };
    Ok(ResolvedHomology {
        base: base_ring(ext).to_string(),
        relations: (0..m).map(|i| relation_text(ext, i)).collect(),
        filtration,
        degrees,
        towers,
        period,
        families,
        tags: ext.tags.iter().cloned().collect(),
    })
}

/// Default filtration for homology: below the precision so that tower
/// orders do not saturate.
pub fn default_filtration(ext: &ExtensionSystem) -> u32 {
    ext.precision.saturating_sub(2).min(ext.q_order).max(1)
}
