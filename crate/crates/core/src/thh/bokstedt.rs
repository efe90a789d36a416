use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{domain, Error, Result};

/// Largest supported total degree.
pub const MAX_DEGREE: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Polynomial,
    Exterior,
    DividedPower,
}

/// `ξ̄_k`, `τ̄_k` in `H_*(k(n); F_p)`, and `σξ̄_k`, `στ̄_k` in filtration 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenName {
    Xi,
    Tau,
    SigmaXi,
    SigmaTau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BokstedtGenerator {
    pub name: GenName,
    pub index: u32,
    pub degree: i64,
    pub kind: GenKind,
}

impl BokstedtGenerator {
    pub fn label(&self) -> String {
        let k = self.index;
        match self.name {
            GenName::Xi => format!("ξ̄{k}"),
            GenName::Tau => format!("τ̄{k}"),
            GenName::SigmaXi => format!("σξ̄{k}"),
            GenName::SigmaTau => format!("στ̄{k}"),
        }
    }

    /// Bökstedt filtration carried by one unit of this generator.
    pub fn filtration(&self) -> i64 {
        match self.name {
            GenName::Xi | GenName::Tau => 0,
            GenName::SigmaXi | GenName::SigmaTau => 1,
        }
    }
}

/// A page of the Bökstedt spectral sequence for `THH_*(k(n); F_p)`,
/// truncated at total degree `bound`. Monomials are exponent vectors over
/// `generators`; for divided powers the entry `j` stands for `γ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BokstedtState {
    pub p: u64,
    pub n: u32,
    pub bound: i64,
    pub page: u32,
    pub generators: Vec<BokstedtGenerator>,
    pub basis: Vec<Vec<u32>>,
    /// No differentials beyond `d^{p-1}` can reach total degrees below this.
    pub collapse_bound: i64,
    /// The page is exact through this total degree.
    pub exact_through: i64,
}

fn generators(n: u32, p: u64, bound: i64) -> Vec<BokstedtGenerator> {
    let mut out = Vec::new();
    let pk = |k: u32| (p as i64).pow(k);
    let mut k = 0;
    while 2 * (pk(k) - 1) <= bound {
        if k >= 1 && 2 * (pk(k) - 1) <= bound {
            out.push(BokstedtGenerator {
                name: GenName::Xi,
                index: k,
                degree: 2 * (pk(k) - 1),
                kind: GenKind::Polynomial,
            });
        }
        if k != n && 2 * pk(k) - 1 <= bound {
            out.push(BokstedtGenerator {
                name: GenName::Tau,
                index: k,
                degree: 2 * pk(k) - 1,
                kind: GenKind::Exterior,
            });
        }
        if k >= 1 && 2 * pk(k) - 1 <= bound {
            out.push(BokstedtGenerator {
                name: GenName::SigmaXi,
                index: k,
                degree: 2 * pk(k) - 1,
                kind: GenKind::Exterior,
            });
        }
        if k != n && 2 * pk(k) <= bound {
            out.push(BokstedtGenerator {
                name: GenName::SigmaTau,
                index: k,
                degree: 2 * pk(k),
                kind: GenKind::DividedPower,
            });
        }
        k += 1;
    }
    out
}

fn enumerate(gens: &[BokstedtGenerator], bound: i64) -> Vec<Vec<u32>> {
    fn rec(
        gens: &[BokstedtGenerator],
        k: usize,
        rest: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == gens.len() {
            out.push(cur.clone());
            return;
        }
        let g = &gens[k];
        let cap = match g.kind {
            GenKind::Exterior => 1,
            _ => (rest / g.degree) as u32,
        };
        for e in 0..=cap {
            let used = e as i64 * g.degree;
            if used > rest {
                break;
            }
            cur[k] = e;
            rec(gens, k + 1, rest - used, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; gens.len()];
    rec(gens, 0, bound, &mut cur, &mut out);
    out
}

fn check(n: u32, p: u64, bound: i64) -> Result<()> {
    if p == 2 {
        return Err(Error::Unsupported(
            "the Bökstedt computation is implemented for odd primes only".into(),
        ));
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if n == 0 {
        return domain("height must be at least 1");
    }
    if !(0..=MAX_DEGREE).contains(&bound) {
        return domain(format!("degree bound must lie in 0..={MAX_DEGREE}"));
    }
    Ok(())
}

/// `E^2 = H_*(k(n)) ⊗ E(σξ̄_k | k ≥ 1) ⊗ Γ(στ̄_k | k ≠ n)` through total degree `bound`.
pub fn bokstedt_e2(n: u32, p: u64, bound: i64) -> Result<BokstedtState> {
    check(n, p, bound)?;
    let generators = generators(n, p, bound);
    let mut basis = enumerate(&generators, bound);
    let collapse_bound = 2 * (p as i64).pow(n + 1) - 1;
    let st = BokstedtState {
        p,
        n,
        bound,
        page: 2,
        generators,
        basis: Vec::new(),
        collapse_bound,
        exact_through: bound,
    };
    basis.sort_by_key(|m| (st.degree(m), st.filtration(m), m.clone()));
    Ok(BokstedtState { basis, ..st })
}

/// Applies `d^{p-1}(γ_j(στ̄_i)) = γ_{j-p}(στ̄_i) σξ̄_{i+1}`: the survivors are
/// `H_* ⊗ E(σξ̄_{n+1}) ⊗ P_p(στ̄_i | i ≠ n)`.
pub fn bokstedt_run(state: &BokstedtState) -> Result<BokstedtState> {
    if state.page != 2 {
        return domain(format!("expected the E^2 page, got E^{}", state.page));
    }
    let p = state.p as u32;
    let n = state.n;
    let basis = state
        .basis
        .iter()
        .filter(|m| {
            state
                .generators
                .iter()
                .zip(m.iter())
                .all(|(g, &e)| match g.name {
                    GenName::SigmaTau => e < p,
                    GenName::SigmaXi => e == 0 || g.index == n + 1,
                    _ => true,
                })
        })
        .cloned()
        .collect();
    Ok(BokstedtState {
        page: p,
        basis,
        exact_through: state.bound.min(state.collapse_bound - 1),
        ..state.clone()
    })
}

impl BokstedtState {
    pub fn degree(&self, m: &[u32]) -> i64 {
        self.generators
            .iter()
            .zip(m)
            .map(|(g, &e)| g.degree * e as i64)
            .sum()
    }

    pub fn filtration(&self, m: &[u32]) -> i64 {
        self.generators
            .iter()
            .zip(m)
            .map(|(g, &e)| g.filtration() * e as i64)
            .sum()
    }

    pub fn generator(&self, name: GenName, index: u32) -> Option<&BokstedtGenerator> {
        self.generators
            .iter()
            .find(|g| g.name == name && g.index == index)
    }

    pub fn name(&self, m: &[u32]) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(m)
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| match (g.kind, e) {
                (GenKind::DividedPower, 1) => g.label(),
                (GenKind::DividedPower, e) => format!("γ{e}({})", g.label()),
                (_, 1) => g.label(),
                (_, e) => format!("{}^{e}", g.label()),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    /// Whether the basis contains the named monomial, given as (generator, exponent) pairs.
    pub fn contains(&self, factors: &[(GenName, u32, u32)]) -> bool {
        let mut m = vec![0u32; self.generators.len()];
        for &(name, index, e) in factors {
            match self
                .generators
                .iter()
                .position(|g| g.name == name && g.index == index)
            {
                Some(k) => m[k] = e,
                None => return false,
            }
        }
        self.basis.contains(&m)
    }

    /// Number of basis elements in each total degree `0..=bound`.
    pub fn counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.bound as usize + 1];
        for m in &self.basis {
            out[self.degree(m) as usize] += 1;
        }
        out
    }

    /// Basis grouped by `(s, t)` with `t` the internal degree.
    pub fn entries(&self) -> Vec<BokstedtEntry> {
        let mut cells: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
        for m in &self.basis {
            let s = self.filtration(m);
            let t = self.degree(m) - s;
            cells.entry((s, t)).or_default().push(self.name(m));
        }
        cells
            .into_iter()
            .map(|((s, t), basis)| BokstedtEntry { s, t, basis })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "Bökstedt E^{} for THH(k({})) at p = {}, total degree <= {}",
            self.page, self.n, self.p, self.bound
        )
        .unwrap();
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{} ({})", g.label(), g.degree))
            .collect();
        writeln!(out, "generators: {}", gens.join(", ")).unwrap();
        if self.page > 2 {
            writeln!(
                out,
                "exact through degree {}; no further differentials below degree {}",
                self.exact_through, self.collapse_bound
            )
            .unwrap();
        }
        for (t, c) in self.counts().iter().enumerate() {
            if *c > 0 {
                writeln!(out, "{t:>4}: {c}").unwrap();
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BokstedtEntry {
    pub s: i64,
    pub t: i64,
    pub basis: Vec<String>,
}
