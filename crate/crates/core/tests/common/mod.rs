#![allow(dead_code)]

pub mod polytope;

use std::collections::BTreeMap;

use thh_core::arith::Coeffs;
use thh_core::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec};
use thh_core::linalg::{rank, zeros};
use thh_core::thh::{apply_structure_change, resolve_cohomology, ExtensionSystem};

/// Generator of the Bökstedt `E^2` page as seen by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Xi(u32),
    Tau(u32),
    SigmaXi(u32),
    SigmaTau(u32),
}

impl Kind {
    fn degree(self, p: i64) -> i64 {
        match self {
            Kind::Xi(k) => 2 * (p.pow(k) - 1),
            Kind::Tau(k) => 2 * p.pow(k) - 1,
            Kind::SigmaXi(k) => 2 * (p.pow(k) - 1) + 1,
            Kind::SigmaTau(k) => 2 * p.pow(k),
        }
    }

    fn exterior(self) -> bool {
        matches!(self, Kind::Tau(_) | Kind::SigmaXi(_))
    }

    fn in_h(self) -> bool {
        matches!(self, Kind::Xi(_) | Kind::Tau(_))
    }
}

/// Homology of `E^2` under `d(γ_j(στ̄_i)) = γ_{j-p}(στ̄_i) σξ̄_{i+1}`,
/// extended as an odd derivation, by dense matrix ranks over `F_p`.
/// Returns the rank in each total degree `0..=bound`.
pub fn bokstedt_oracle(n: u32, p: u64, bound: i64) -> Vec<u64> {
    let pi = p as i64;
    let top = bound + 1;
    let mut gens = Vec::new();
    for k in 0..8u32 {
        for g in [
            Kind::Xi(k),
            Kind::Tau(k),
            Kind::SigmaXi(k),
            Kind::SigmaTau(k),
        ] {
            let valid = match g {
                Kind::Xi(k) | Kind::SigmaXi(k) => k >= 1,
                Kind::Tau(k) | Kind::SigmaTau(k) => k != n,
            };
            if valid && g.degree(pi) <= top {
                gens.push(g);
            }
        }
    }
    let mut monos: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; gens.len()];
    fn rec(
        gens: &[Kind],
        p: i64,
        k: usize,
        rest: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == gens.len() {
            out.push(cur.clone());
            return;
        }
        let d = gens[k].degree(p);
        let cap = if gens[k].exterior() { 1 } else { rest / d };
        for e in 0..=cap.max(0) {
            if e * d > rest {
                break;
            }
            cur[k] = e as u32;
            rec(gens, p, k + 1, rest - e * d, cur, out);
        }
        cur[k] = 0;
    }
    rec(&gens, pi, 0, top, &mut cur, &mut monos);
    let degree = |m: &[u32]| -> i64 {
        m.iter()
            .zip(&gens)
            .map(|(&e, g)| e as i64 * g.degree(pi))
            .sum()
    };
    let h_part = |m: &[u32]| -> Vec<u32> {
        m.iter()
            .zip(&gens)
            .map(|(&e, g)| if g.in_h() { e } else { 0 })
            .collect()
    };
    let mut blocks: BTreeMap<(Vec<u32>, i64), Vec<Vec<u32>>> = BTreeMap::new();
    for m in monos {
        blocks.entry((h_part(&m), degree(&m))).or_default().push(m);
    }
    let k = Coeffs::prime_power(p, 1);
    let diff = |m: &[u32]| -> Vec<(Vec<u32>, i128)> {
        let mut out = Vec::new();
        let odd_h: u32 = m
            .iter()
            .zip(&gens)
            .filter(|(_, g)| matches!(g, Kind::Tau(_)))
            .map(|(&e, _)| e)
            .sum();
        let odd_e: u32 = m
            .iter()
            .zip(&gens)
            .filter(|(_, g)| matches!(g, Kind::SigmaXi(_)))
            .map(|(&e, _)| e)
            .sum();
        for (a, g) in gens.iter().enumerate() {
            let Kind::SigmaTau(i) = *g else { continue };
            if (m[a] as u64) < p {
                continue;
            }
            let Some(b) = gens.iter().position(|&h| h == Kind::SigmaXi(i + 1)) else {
                continue;
            };
            if m[b] == 1 {
                continue;
            }
            let later: u32 = gens
                .iter()
                .enumerate()
                .filter(|(c, h)| matches!(h, Kind::SigmaXi(j) if *j > i + 1) && m[*c] == 1)
                .count() as u32;
            let mut t = m.to_vec();
            t[a] -= p as u32;
            t[b] = 1;
            let sign = if (odd_h + odd_e + later).is_multiple_of(2) {
                1
            } else {
                -1
            };
            out.push((t, sign));
        }
        out
    };
    let mut ranks_out: BTreeMap<i64, usize> = BTreeMap::new();
    for ((h, t), src) in &blocks {
        let Some(dst) = blocks.get(&(h.clone(), t - 1)) else {
            continue;
        };
        let index: BTreeMap<&Vec<u32>, usize> =
            dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = zeros(dst.len(), src.len());
        for (c, m) in src.iter().enumerate() {
            for (tgt, s) in diff(m) {
                let r = index[&tgt];
                mat[r][c] = k.add(mat[r][c], s);
            }
        }
        *ranks_out.entry(*t).or_default() += rank(&mat, src.len(), &k).unwrap();
    }
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for ((_, t), src) in &blocks {
        *dims.entry(*t).or_default() += src.len();
    }
    (0..=bound)
        .map(|t| {
            let dim = dims.get(&t).copied().unwrap_or(0);
            let out = ranks_out.get(&t).copied().unwrap_or(0);
            let inc = ranks_out.get(&(t + 1)).copied().unwrap_or(0);
            (dim - out - inc) as u64
        })
        .collect()
}

/// Poincaré series of `H_*(k(n)) ⊗ E(σξ̄_{n+1}) ⊗ P_p(στ̄_i | i ≠ n)` through `bound`.
pub fn bokstedt_closed_form(n: u32, p: u64, bound: i64) -> Vec<u64> {
    let pi = p as i64;
    let len = bound as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    let mul = |s: &mut Vec<u64>, factor: &[(i64, u64)]| {
        let mut out = vec![0u64; len];
        for (i, &a) in s.iter().enumerate() {
            for &(d, c) in factor {
                let j = i as i64 + d;
                if j <= bound {
                    out[j as usize] += a * c;
                }
            }
        }
        *s = out;
    };
    for k in 0..8u32 {
        let pk = pi.pow(k);
        if k >= 1 && 2 * (pk - 1) <= bound {
            let d = 2 * (pk - 1);
            let factor: Vec<(i64, u64)> = (0..=bound / d).map(|e| (e * d, 1)).collect();
            mul(&mut series, &factor);
        }
        if k != n {
            mul(&mut series, &[(0, 1), (2 * pk - 1, 1)]);
            let factor: Vec<(i64, u64)> = (0..pi).map(|j| (j * 2 * pk, 1)).collect();
            mul(&mut series, &factor);
        }
    }
    mul(&mut series, &[(0, 1), (2 * pi.pow(n + 1) - 1, 1)]);
    series
}

/// `dim_F F_p[[q]]/(g)` computed from the rank of multiplication by `g` on
/// `F_p[q]/q^len`, or `None` when the quotient does not stabilise.
pub fn quotient_dimension(g: &[i128], p: u64, len: usize) -> Option<usize> {
    let k = Coeffs::prime_power(p, 1);
    let dim = |len: usize| -> usize {
        let mut mat = zeros(len, len);
        for c in 0..len {
            for (i, &a) in g.iter().enumerate() {
                if c + i < len {
                    mat[c + i][c] = k.norm(a);
                }
            }
        }
        len - rank(&mat, len, &k).unwrap()
    };
    let a = dim(len);
    let b = dim(len + 4);
    (a == b).then_some(a)
}

/// `Z_5[u^{±1}]/(5)` at the given p-adic precision.
pub fn f5_spec(precision: u32) -> QuotientSpec {
    QuotientSpec::new(
        GradedRingSpec::new(
            BaseRing::PAdicTruncated { p: 5, n: precision },
            vec![Generator::new("u", 2, true)],
        ),
        &["5"],
    )
}

/// Rank after applying `Σ a_k u^{k-1} q^k` (k = 2..=6) to the zero system, next to
/// the dimension of `F_5[[q]]/(f')` from [`quotient_dimension`].
pub fn lazarev_case(coeffs: &[i64]) -> (Option<u64>, Option<usize>) {
    let ext = ExtensionSystem::zero(&f5_spec(16), None, 12, 16).unwrap();
    let mut cur = ext.clone();
    for (k, &a) in coeffs.iter().enumerate() {
        let deg = k + 2;
        if a == 0 {
            continue;
        }
        let f = ext.parse(&format!("{a}*u^{}*q^{deg}", deg - 1)).unwrap();
        cur = apply_structure_change(&cur, &f).unwrap();
    }
    let r = resolve_cohomology(&cur).unwrap();
    let mut deriv = vec![0i128; 6];
    for (k, &a) in coeffs.iter().enumerate() {
        let deg = k + 2;
        deriv[deg - 1] = (deg as i128) * a as i128;
    }
    (r.rank, quotient_dimension(&deriv, 5, 12))
}
