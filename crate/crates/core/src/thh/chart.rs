use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{QuotientSpec, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cohomology,
    Homology,
}

/// A generator with its bidegree `(s, t)` and total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bidegree {
    pub name: String,
    pub s: i64,
    pub t: i64,
    pub total: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub s: i64,
    pub t: i64,
    pub total: i64,
    pub basis: Vec<String>,
}

/// `E_2 = A_*[q_1,…,q_m]` or `Γ_{A_*}[q̄_1,…,q̄_m]` up to a filtration
/// bound, as an `A_*`-module basis per bidegree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub variant: Variant,
    pub base: String,
    pub bidegrees: Vec<Bidegree>,
    pub entries: Vec<ChartEntry>,
    pub filtration_bound: u32,
}

/// Cohomology monomial name, `q^2` or `q1^2*q2`.
pub fn q_name(names: &[String], j: &[u32]) -> String {
    let parts: Vec<String> = j
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(k, &x)| {
            if x == 1 {
                names[k].clone()
            } else {
                format!("{}^{x}", names[k])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Divided power name, `γ_3` for one variable and `γ_2(q̄2)γ_1(q̄3)` otherwise.
pub fn gamma_name(names: &[String], i: &[u32]) -> String {
    if i.len() == 1 {
        return format!("γ_{}", i[0]);
    }
    let parts: Vec<String> = i
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(k, &x)| format!("γ_{x}({}̄{})", &names[k][..1], &names[k][1..]))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

/// Multi-indices of `m` entries with total at most `bound`, graded lexicographically.
pub(crate) fn indices_up_to(m: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=bound {
        let mut cur = vec![0u32; m];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, k: usize, rest: u32, out: &mut Vec<Vec<u32>>) {
    if k + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = rest;
            out.push(cur.clone());
        } else if rest == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for x in (0..=rest).rev() {
        cur[k] = x;
        fill(cur, k + 1, rest - x, out);
    }
    cur[k] = 0;
}

fn check_even(a: &Ring, d: &[i64]) -> Result<()> {
    for i in a.live() {
        if a.degrees[i] % 2 != 0 {
            return Err(Error::Evenness(format!(
                "{} has odd degree {} in A_*",
                a.names[i], a.degrees[i]
            )));
        }
    }
    if let Some(x) = d.iter().find(|x| *x % 2 != 0) {
        return Err(Error::Evenness(format!(
            "sequence element of odd degree {x}"
        )));
    }
    Ok(())
}

fn chart(
    spec: &QuotientSpec,
    variant: Variant,
    bound: u32,
    names: Option<&[String]>,
) -> Result<Chart> {
    let a = spec.quotient_ring()?;
    let d = spec.degrees()?;
    check_even(&a, &d)?;
    let m = d.len();
    let names: Vec<String> = match names {
        Some(n) => n.to_vec(),
        None if m == 1 => vec!["q".into()],
        None => (1..=m).map(|i| format!("q{i}")).collect(),
    };
    let bidegrees: Vec<Bidegree> = names
        .iter()
        .zip(&d)
        .map(|(n, &di)| match variant {
            Variant::Cohomology => Bidegree {
                name: n.clone(),
                s: 1,
                t: -di - 1,
                total: -di - 2,
            },
            Variant::Homology => Bidegree {
                name: format!("{}̄{}", &n[..1], &n[1..]),
                s: 1,
                t: di + 1,
                total: di + 2,
            },
        })
        .collect();
    let mut cells: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    for idx in indices_up_to(m, bound) {
        let s: i64 = idx.iter().map(|&x| x as i64).sum();
        let t: i64 = idx
            .iter()
            .zip(&bidegrees)
            .map(|(&x, b)| x as i64 * b.t)
            .sum();
        let name = match variant {
            Variant::Cohomology => q_name(&names, &idx),
            Variant::Homology => gamma_name(&names, &idx),
        };
        cells.entry((s, t)).or_default().push(name);
    }
    let entries = cells
        .into_iter()
        .map(|((s, t), basis)| ChartEntry {
            s,
            t,
            total: match variant {
                Variant::Cohomology => t - s,
                Variant::Homology => t + s,
            },
            basis,
        })
        .collect();
    Ok(Chart {
        variant,
        base: a.to_string(),
        bidegrees,
        entries,
        filtration_bound: bound,
    })
}

/// `E_2 = A_*[q_1,…,q_m]` with `|q_i| = (1, -d_i - 1)`.
pub fn e2_cohomology(spec: &QuotientSpec, bound: u32) -> Result<Chart> {
    chart(spec, Variant::Cohomology, bound, None)
}

/// `E^2 = Γ_{A_*}[q̄_1,…,q̄_m]` with `|q̄_i| = (1, d_i + 1)`.
pub fn e2_homology(spec: &QuotientSpec, bound: u32) -> Result<Chart> {
    chart(spec, Variant::Homology, bound, None)
}

pub fn e2_chart_named(
    spec: &QuotientSpec,
    variant: Variant,
    bound: u32,
    names: &[String],
) -> Result<Chart> {
    chart(spec, variant, bound, Some(names))
}

/// Cap product `q^J · γ_I = γ_{I-J}`, zero when some entry goes negative.
pub fn module_action(j: &[u32], i: &[u32]) -> Option<Vec<u32>> {
    j.iter().zip(i).map(|(&a, &b)| b.checked_sub(a)).collect()
}

impl Chart {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let label = match self.variant {
            Variant::Cohomology => "cohomology",
            Variant::Homology => "homology",
        };
        writeln!(out, "E2 {label} over {}", self.base).unwrap();
        let gens: Vec<String> = self
            .bidegrees
            .iter()
            .map(|b| format!("{} ({}, {})", b.name, b.s, b.t))
            .collect();
        writeln!(out, "generators: {}", gens.join(", ")).unwrap();
        let mut totals: Vec<i64> = self.entries.iter().map(|e| e.total).collect();
        totals.sort();
        totals.dedup();
        let mut rows: BTreeMap<i64, BTreeMap<i64, Vec<String>>> = BTreeMap::new();
        for e in &self.entries {
            rows.entry(e.s)
                .or_default()
                .entry(e.total)
                .or_default()
                .extend(e.basis.iter().cloned());
        }
        let cell = |v: Option<&Vec<String>>| v.map(|b| b.join(" ")).unwrap_or_default();
        let widths: Vec<usize> = totals
            .iter()
            .map(|t| {
                rows.values()
                    .map(|r| cell(r.get(t)).chars().count())
                    .chain([t.to_string().len()])
                    .max()
                    .unwrap()
            })
            .collect();
        write!(out, "{:>4} |", "s").unwrap();
        for (t, w) in totals.iter().zip(&widths) {
            write!(out, " {:>w$}", t, w = w).unwrap();
        }
        out.push('\n');
        for (s, row) in &rows {
            write!(out, "{s:>4} |").unwrap();
            for (t, w) in totals.iter().zip(&widths) {
                let c = cell(row.get(t));
                let pad = w - c.chars().count();
                write!(out, " {}{}", " ".repeat(pad), c).unwrap();
            }
            out.push('\n');
        }
        out
    }
}
