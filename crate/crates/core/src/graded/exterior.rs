use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Coeffs;
use crate::error::{domain, Error, Result};
use crate::linalg::{self, Matrix};

use super::koszul::{exterior_shapes, koszul_tor};
use super::ring::QuotientSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PresentationKind {
    Exterior,
    Polynomial,
    DividedPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresentationGenerator {
    pub name: String,
    pub s: i64,
    pub t: i64,
}

impl PresentationGenerator {
    pub fn total(&self) -> i64 {
        self.s + self.t
    }
}

/// A free graded-commutative algebra of one of three shapes over `A_*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub kind: PresentationKind,
    /// Human-readable description of the coefficient ring `A_*`.
    pub base: String,
    pub generators: Vec<PresentationGenerator>,
}

/// Ranks of a presentation indexed by bidegree `(s, t)`.
pub type RankTable = BTreeMap<(i64, i64), usize>;

impl AlgebraPresentation {
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            let odd = g.total().rem_euclid(2) == 1;
            let want_odd = self.kind == PresentationKind::Exterior;
            if odd != want_odd {
                return Err(Error::Evenness(format!(
                    "{:?} generator {} has total degree {}",
                    self.kind,
                    g.name,
                    g.total()
                )));
            }
        }
        Ok(())
    }

    /// Number of basis monomials in each bidegree with `s <= s_max`.
    pub fn ranks(&self, s_max: usize) -> RankTable {
        let m = self.generators.len();
        let cap = if self.kind == PresentationKind::Exterior {
            1
        } else {
            s_max
        };
        let mut table = RankTable::new();
        for mu in multi_indices(m, s_max, cap) {
            let s: i64 = mu
                .iter()
                .zip(&self.generators)
                .map(|(&k, g)| k as i64 * g.s)
                .sum();
            let t: i64 = mu
                .iter()
                .zip(&self.generators)
                .map(|(&k, g)| k as i64 * g.t)
                .sum();
            *table.entry((s, t)).or_default() += 1;
        }
        table
    }
}

/// Exponent vectors of length `m` with total at most `total` and entries at
/// most `cap`, ordered by total.
pub(crate) fn multi_indices(m: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(m: usize, left: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for k in 0..=left.min(cap) {
            acc.push(k);
            rec(m, left - k, cap, acc, out);
            acc.pop();
        }
    }
    rec(m, total, cap, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

/// Internal degrees at which the Koszul cross-check of [`tor_quotient`] runs.
const CROSS_CHECK_WINDOW: i32 = 2;

/// `Tor^{R_*}(A_*, A_*) = Λ_{A_*}(α_1,…,α_m)` with `α_i` in bidegree
/// `(1, d_i)`, cross-checked against the homology of the Koszul complex
/// tensored with `A_*` in the degrees of the `α` monomials.
pub fn tor_quotient(spec: &QuotientSpec) -> Result<AlgebraPresentation> {
    let a = spec.quotient_ring()?;
    let d = spec.degrees()?;
    let pres = AlgebraPresentation {
        kind: PresentationKind::Exterior,
        base: a.to_string(),
        generators: d
            .iter()
            .enumerate()
            .map(|(i, &di)| PresentationGenerator {
                name: format!("α{}", i + 1),
                s: 1,
                t: di,
            })
            .collect(),
    };
    if !d.is_empty() && linalg_supported(&a.coeffs) {
        let mut degrees: Vec<i64> = super::koszul::subsets(d.len(), 0)
            .into_iter()
            .chain((1..=d.len()).flat_map(|k| super::koszul::subsets(d.len(), k)))
            .map(|s| s.iter().map(|&i| d[i]).sum())
            .collect();
        degrees.sort();
        degrees.dedup();
        for t in degrees {
            let h = koszul_tor(spec, t, CROSS_CHECK_WINDOW)?;
            let e = exterior_shapes(spec, t, CROSS_CHECK_WINDOW)?;
            if h != e {
                return Err(Error::Domain(format!(
                    "Koszul homology in degree {t} is {h:?}, expected {e:?}; is the sequence regular?"
                )));
            }
        }
    }
    Ok(pres)
}

pub(crate) fn linalg_supported(k: &Coeffs) -> bool {
    k.modulus().is_none() || k.prime().is_some() || k.is_trivial()
}

fn require_exterior(pres: &AlgebraPresentation) -> Result<()> {
    if pres.kind != PresentationKind::Exterior {
        return domain(format!(
            "expected an exterior presentation, got {:?}",
            pres.kind
        ));
    }
    pres.validate()
}

/// Field over which the brute-force resolutions run; the ranks do not
/// depend on it, and an odd characteristic exercises the signs.
const ORACLE_PRIME: u64 = 3;

/// `Ext_Λ(A_*, A_*) = A_*[q_1,…,q_m]` with `q_i` in bidegree `(1, -d_i-1)`,
/// checked against a minimal free resolution through `degree_bound`.
pub fn ext_over_exterior(
    pres: &AlgebraPresentation,
    degree_bound: usize,
) -> Result<AlgebraPresentation> {
    require_exterior(pres)?;
    let out = AlgebraPresentation {
        kind: PresentationKind::Polynomial,
        base: pres.base.clone(),
        generators: pres
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| PresentationGenerator {
                name: format!("q{}", i + 1),
                s: 1,
                t: -g.t - 1,
            })
            .collect(),
    };
    let brute = ext_ranks_bruteforce(pres, degree_bound)?;
    compare(&out.ranks(degree_bound), &brute, "Ext")?;
    Ok(out)
}

/// `Tor^Λ(A_*, A_*) = Γ_{A_*}[q̄_1,…,q̄_m]` with `q̄_i` in bidegree
/// `(1, d_i+1)`, checked against bar complex homology through `degree_bound`.
pub fn tor_over_exterior(
    pres: &AlgebraPresentation,
    degree_bound: usize,
) -> Result<AlgebraPresentation> {
    require_exterior(pres)?;
    let out = AlgebraPresentation {
        kind: PresentationKind::DividedPower,
        base: pres.base.clone(),
        generators: pres
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| PresentationGenerator {
                name: format!("q̄{}", i + 1),
                s: 1,
                t: g.t + 1,
            })
            .collect(),
    };
    let brute = tor_ranks_bruteforce(pres, degree_bound)?;
    compare(&out.ranks(degree_bound), &brute, "Tor")?;
    Ok(out)
}

fn compare(closed: &RankTable, brute: &RankTable, what: &str) -> Result<()> {
    let nz = |t: &RankTable| -> RankTable {
        t.iter()
            .filter(|(_, &v)| v > 0)
            .map(|(k, v)| (*k, *v))
            .collect()
    };
    if nz(closed) != nz(brute) {
        return Err(Error::Domain(format!(
            "{what} ranks {:?} disagree with the brute-force computation {:?}",
            nz(closed),
            nz(brute)
        )));
    }
    Ok(())
}

/// Sign of `α_S · α_T` for disjoint index sets given as bitmasks.
fn wedge_sign(s: u32, t: u32) -> i128 {
    let mut inversions = 0;
    for i in 0..32 {
        if s & (1 << i) != 0 {
            inversions += (t & ((1u32 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn mask_of(mu: &[usize]) -> Option<u32> {
    let mut m = 0;
    for (i, &k) in mu.iter().enumerate() {
        match k {
            0 => {}
            1 => m |= 1 << i,
            _ => return None,
        }
    }
    Some(m)
}

fn sub(mu: &[usize], nu: &[usize]) -> Option<Vec<usize>> {
    mu.iter().zip(nu).map(|(&a, &b)| a.checked_sub(b)).collect()
}

/// Generator of a free `Λ`-module in a minimal resolution: its multidegree
/// and its image `Σ c · α_S g'` in the previous module.
struct ResGen {
    mu: Vec<usize>,
    image: Vec<(i128, u32, usize)>,
}

/// Ranks of `Ext_Λ(k, k)` from a minimal free resolution of `k` over the
/// exterior algebra `Λ = F_p⟨α_1,…,α_m⟩`, multigraded by `N^m`.
pub fn ext_ranks_bruteforce(pres: &AlgebraPresentation, degree_bound: usize) -> Result<RankTable> {
    let m = pres.generators.len();
    let k = Coeffs::prime_power(ORACLE_PRIME, 1);
    let big = degree_bound + 1;
    let mus = multi_indices(m, big, big);
    // basis of (F_s)_mu: generators g with mu - deg g a 0/1 vector
    let basis = |gens: &[ResGen], mu: &[usize]| -> Vec<(usize, u32)> {
        gens.iter()
            .enumerate()
            .filter_map(|(i, g)| sub(mu, &g.mu).and_then(|d| mask_of(&d)).map(|s| (i, s)))
            .collect()
    };
    let mut levels: Vec<Vec<ResGen>> = vec![vec![ResGen {
        mu: vec![0; m],
        image: Vec::new(),
    }]];
    let mut table = RankTable::new();
    table.insert((0, 0), 1);
    for s in 0..degree_bound {
        let cur = &levels[s];
        // kernels of d_s (the augmentation when s = 0) in each multidegree
        let mut kernels: BTreeMap<Vec<usize>, Vec<Vec<i128>>> = BTreeMap::new();
        let mut next = Vec::new();
        for mu in &mus {
            let src = basis(cur, mu);
            if src.is_empty() {
                continue;
            }
            let z: Vec<Vec<i128>> = if s == 0 {
                if mu.iter().all(|&x| x == 0) {
                    Vec::new()
                } else {
                    (0..src.len())
                        .map(|i| (0..src.len()).map(|j| i128::from(i == j)).collect())
                        .collect()
                }
            } else {
                let prev = &levels[s - 1];
                let dst = basis(prev, mu);
                let mut mat = linalg::zeros(dst.len(), src.len());
                for (col, &(g, sm)) in src.iter().enumerate() {
                    for &(c, t, h) in &cur[g].image {
                        if sm & t != 0 {
                            continue;
                        }
                        let coef = k.mul(c, wedge_sign(sm, t));
                        let row = dst
                            .iter()
                            .position(|&(hh, mm)| hh == h && mm == sm | t)
                            .unwrap();
                        mat[row][col] = k.add(mat[row][col], coef);
                    }
                }
                if dst.is_empty() {
                    (0..src.len())
                        .map(|i| (0..src.len()).map(|j| i128::from(i == j)).collect())
                        .collect()
                } else {
                    linalg::kernel(&mat, src.len(), &k)?
                }
            };
            // decomposables: α_i times kernel elements one step down
            let mut dec: Vec<Vec<i128>> = Vec::new();
            for i in 0..m {
                if mu[i] == 0 {
                    continue;
                }
                let mut lower = mu.clone();
                lower[i] -= 1;
                let Some(zl) = kernels.get(&lower) else {
                    continue;
                };
                let lb = basis(cur, &lower);
                for v in zl {
                    let mut w = vec![0i128; src.len()];
                    for (idx, &(g, sm)) in lb.iter().enumerate() {
                        if v[idx] == 0 || sm & (1 << i) != 0 {
                            continue;
                        }
                        let pos = src
                            .iter()
                            .position(|&(gg, mm)| gg == g && mm == sm | (1 << i))
                            .unwrap();
                        w[pos] = k.add(w[pos], k.mul(v[idx], wedge_sign(1 << i, sm)));
                    }
                    dec.push(w);
                }
            }
            let mut span = dec.clone();
            let mut r = rank_of(&span, src.len(), &k)?;
            for v in &z {
                span.push(v.clone());
                let r2 = rank_of(&span, src.len(), &k)?;
                if r2 > r {
                    r = r2;
                    let image = v
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(idx, &c)| (c, src[idx].1, src[idx].0))
                        .collect();
                    next.push(ResGen {
                        mu: mu.clone(),
                        image,
                    });
                } else {
                    span.pop();
                }
            }
            kernels.insert(mu.clone(), z);
        }
        for g in &next {
            let t: i64 =
                g.mu.iter()
                    .zip(&pres.generators)
                    .map(|(&c, gen)| -(c as i64) * (gen.t + 1))
                    .sum();
            *table.entry((s as i64 + 1, t)).or_default() += 1;
        }
        levels.push(next);
    }
    Ok(table)
}

fn rank_of(vectors: &[Vec<i128>], n: usize, k: &Coeffs) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let mat: Matrix = (0..n)
        .map(|i| vectors.iter().map(|v| v[i]).collect())
        .collect();
    linalg::rank(&mat, vectors.len(), k)
}

/// Ranks of `Tor^Λ(k, k)` from the normalised bar complex of the exterior
/// algebra over `F_p`, multigraded by `N^m`.
pub fn tor_ranks_bruteforce(pres: &AlgebraPresentation, degree_bound: usize) -> Result<RankTable> {
    let m = pres.generators.len();
    let k = Coeffs::prime_power(ORACLE_PRIME, 1);
    let big = degree_bound + 1;
    let mut table = RankTable::new();
    for mu in multi_indices(m, big, big) {
        let t: i64 = mu
            .iter()
            .zip(&pres.generators)
            .map(|(&c, g)| c as i64 * (g.t + 1))
            .sum();
        let total: usize = mu.iter().sum();
        let chains: Vec<Vec<Vec<u32>>> = (0..=total + 1).map(|s| bar_basis(&mu, s)).collect();
        let rank_d = |s: usize| -> Result<usize> {
            if s == 0 || s > total || chains[s].is_empty() || chains[s - 1].is_empty() {
                return Ok(0);
            }
            let mat = bar_differential(&chains[s], &chains[s - 1], &k);
            linalg::rank(&mat, chains[s].len(), &k)
        };
        for s in 0..=degree_bound.min(total) {
            let dim = chains[s].len();
            if dim == 0 {
                continue;
            }
            let h = dim - rank_d(s)? - rank_d(s + 1)?;
            if h > 0 {
                *table.entry((s as i64, t)).or_default() += h;
            }
        }
    }
    Ok(table)
}

/// Sequences of `s` non-empty subsets whose indicator vectors sum to `mu`.
fn bar_basis(mu: &[usize], s: usize) -> Vec<Vec<u32>> {
    let m = mu.len();
    let mut out = Vec::new();
    fn rec(rest: &mut Vec<usize>, s: usize, m: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == s {
            if rest.iter().all(|&x| x == 0) {
                out.push(acc.clone());
            }
            return;
        }
        for mask in 1u32..(1 << m) {
            if (0..m).any(|i| mask & (1 << i) != 0 && rest[i] == 0) {
                continue;
            }
            for i in 0..m {
                if mask & (1 << i) != 0 {
                    rest[i] -= 1;
                }
            }
            acc.push(mask);
            rec(rest, s, m, acc, out);
            acc.pop();
            for i in 0..m {
                if mask & (1 << i) != 0 {
                    rest[i] += 1;
                }
            }
        }
    }
    if s == 0 {
        if mu.iter().all(|&x| x == 0) {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut mu.to_vec(), s, m, &mut Vec::new(), &mut out);
    out
}

/// `d[a_1|…|a_s] = Σ_i (-1)^{ε_i} [a_1|…|a_i a_{i+1}|…|a_s]` with
/// `ε_i = Σ_{j≤i} (|a_j| + 1)`.
fn bar_differential(src: &[Vec<u32>], dst: &[Vec<u32>], k: &Coeffs) -> Matrix {
    let mut mat = linalg::zeros(dst.len(), src.len());
    for (col, chain) in src.iter().enumerate() {
        let mut eps = 0u32;
        for i in 0..chain.len() - 1 {
            eps += chain[i].count_ones() + 1;
            let (a, b) = (chain[i], chain[i + 1]);
            if a & b != 0 {
                continue;
            }
            let mut merged = chain.clone();
            merged[i] = a | b;
            merged.remove(i + 1);
            let sign = wedge_sign(a, b) * if eps.is_multiple_of(2) { 1 } else { -1 };
            let row = dst.iter().position(|c| *c == merged).unwrap();
            mat[row][col] = k.add(mat[row][col], sign);
        }
    }
    mat
}
