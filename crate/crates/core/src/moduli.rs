//! Multiplications on `A = R/I` in the Künneth model.
//!
//! A multiplication is recorded by the element
//! `P = ∏ (1 + v_{IJ} Q_I ⊗ Q_J)` of `Λ_{A_*}(Q^1) ⊗ Λ_{A_*}(Q^2)`, where
//! `Q_i` is dual to `α_i`. The table of the multiplication on `α_S ⊗ α_T`
//! is the coefficient of `Q^1_S Q^2_T` in `P`; associativity is the identity
//! `Δ_12(P)·(P⊗1) = Δ_23(P)·(1⊗P)` in three tensor factors, where `Δ`
//! replaces each `Q_i` of the merged factor by `Q_i^a + Q_i^b`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Poly;
use crate::error::{domain, Error, Result};
use crate::graded::{QuotientSpec, Ring};

/// Element of an exterior algebra over `A_*` on at most 64 odd generators,
/// keyed by bitmask.
#[derive(Clone, Debug, Default, PartialEq)]
struct Ext {
    terms: BTreeMap<u64, Poly>,
}

fn wedge_sign(s: u64, t: u64) -> bool {
    let mut inv = 0u32;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inv += (t & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    inv % 2 == 1
}

impl Ext {
    fn one(ring: &Ring) -> Self {
        let mut e = Ext::default();
        e.terms.insert(0, ring.one());
        e
    }

    fn add_term(&mut self, mask: u64, c: Poly, ring: &Ring) {
        let entry = self
            .terms
            .entry(mask)
            .or_insert_with(|| Poly::zero(ring.nvars()));
        *entry = ring.reduce(&entry.add(&c, &ring.coeffs));
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn mul(&self, other: &Ext, ring: &Ring) -> Ext {
        let mut out = Ext::default();
        for (&s, a) in &self.terms {
            for (&t, b) in &other.terms {
                if s & t != 0 {
                    continue;
                }
                let mut c = a.mul(b, &ring.coeffs);
                if wedge_sign(s, t) {
                    c = c.neg(&ring.coeffs);
                }
                out.add_term(s | t, c, ring);
            }
        }
        out
    }

    fn coeff(&self, mask: u64, ring: &Ring) -> Poly {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Poly::zero(ring.nvars()))
    }
}

/// Ordered product of `Σ_{b ∈ choices_k} Q_b` over `k`, as an element.
fn product_of_sums(choices: &[Vec<u32>], ring: &Ring) -> Ext {
    let mut acc = Ext::one(ring);
    for c in choices {
        let mut factor = Ext::default();
        for &b in c {
            factor.add_term(1u64 << b, ring.one(), ring);
        }
        acc = acc.mul(&factor, ring);
    }
    acc
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |i| mask & (1u64 << i) != 0)
}

/// One factor `1 + v Q_I ⊗ Q_J`; indices are 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

/// The coefficients `v_{IJ}` deforming the reference multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    ring: Ring,
    degrees: Vec<i64>,
    terms: BTreeMap<TermKey, Poly>,
}

fn set_mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &i| m | (1u64 << i))
}

impl Perturbation {
    /// The zero perturbation over `A_* = R_*/I`.
    pub fn new(spec: &QuotientSpec) -> Result<Self> {
        Ok(Self::with_ring(spec.quotient_ring()?, spec.degrees()?))
    }

    /// The zero perturbation for `α_i` of internal degrees `d_i` over a given
    /// coefficient ring.
    pub fn with_ring(ring: Ring, degrees: Vec<i64>) -> Self {
        Perturbation {
            ring,
            degrees,
            terms: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Required degree of `v_{IJ}`: `Σ_{i∈I}(d_i+1) + Σ_{j∈J}(d_j+1)`.
    pub fn required_degree(&self, i: &[usize], j: &[usize]) -> i64 {
        i.iter().chain(j).map(|&k| self.degrees[k] + 1).sum()
    }

    fn key(&self, i: &[usize], j: &[usize]) -> Result<TermKey> {
        let m = self.m();
        let norm = |s: &[usize]| -> Result<Vec<usize>> {
            let mut v = Vec::new();
            for &x in s {
                if x == 0 || x > m {
                    return domain(format!("index {x} out of range 1..={m}"));
                }
                v.push(x - 1);
            }
            v.sort();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return domain("repeated index in a multi-index");
            }
            Ok(v)
        };
        let (i, j) = (norm(i)?, norm(j)?);
        if i.is_empty() || j.is_empty() {
            return domain("unitality requires non-empty I and J");
        }
        if (i.len() + j.len()) % 2 != 0 {
            return domain("|I| + |J| must be even");
        }
        Ok(TermKey { i, j })
    }

    /// Sets `v_{IJ}` for 1-based multi-indices `I`, `J`.
    pub fn set(&mut self, i: &[usize], j: &[usize], v: Poly) -> Result<()> {
        let key = self.key(i, j)?;
        let v = self.ring.reduce(&v);
        let want = self.required_degree(&key.i, &key.j);
        self.check_degree(&v, want, "v_IJ")?;
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn set_str(&mut self, i: &[usize], j: &[usize], v: &str) -> Result<()> {
        let p = crate::arith::parse_poly(v, &self.ring.names, &self.ring.coeffs)?;
        self.set(i, j, p)
    }

    /// `v_{IJ}` for 1-based multi-indices.
    pub fn get(&self, i: &[usize], j: &[usize]) -> Poly {
        match self.key(i, j) {
            Ok(k) => self.terms.get(&k).cloned().unwrap_or_else(|| self.zero()),
            Err(_) => self.zero(),
        }
    }

    fn zero(&self) -> Poly {
        Poly::zero(self.ring.nvars())
    }

    fn check_degree(&self, v: &Poly, want: i64, what: &str) -> Result<()> {
        match v.homogeneous_degree(&self.ring.degrees) {
            Ok(None) => Ok(()),
            Ok(Some(d)) if d == want => Ok(()),
            Ok(Some(d)) => Err(Error::Degree {
                expected: want,
                found: d,
                context: format!("{what} = {}", self.ring.display(v)),
            }),
            Err(()) => domain(format!(
                "{what} = {} is not homogeneous",
                self.ring.display(v)
            )),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Poly)> {
        self.terms.iter()
    }

    /// Whether every term has `|I| = |J| = 1`.
    pub fn is_quadratic(&self) -> bool {
        self.terms.keys().all(|k| k.i.len() == 1 && k.j.len() == 1)
    }

    /// `P` as an element of `Λ(Q^1) ⊗ Λ(Q^2)`.
    fn element(&self) -> Ext {
        let m = self.m() as u32;
        let mut p = Ext::one(&self.ring);
        for (k, v) in &self.terms {
            let mask = set_mask(&k.i) | (set_mask(&k.j) << m);
            let mut f = Ext::one(&self.ring);
            f.add_term(mask, v.clone(), &self.ring);
            p = p.mul(&f, &self.ring);
        }
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(k, v)| {
                serde_json::json!({
                    "I": k.i.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "J": k.j.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "v": self.ring.display(v),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Reads `{"terms": [{"I": [...], "J": [...], "v": "..."}]}`.
    pub fn from_json(ring: Ring, degrees: Vec<i64>, value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct TermJson {
            #[serde(rename = "I")]
            i: Vec<usize>,
            #[serde(rename = "J")]
            j: Vec<usize>,
            v: String,
        }
        #[derive(Deserialize)]
        struct PertJson {
            #[serde(default)]
            terms: Vec<TermJson>,
        }
        let parsed: PertJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Self::with_ring(ring, degrees);
        for t in parsed.terms {
            let prev = p.get(&t.i, &t.j);
            let v = crate::arith::parse_poly(&t.v, &p.ring.names, &p.ring.coeffs)?;
            p.set(&t.i, &t.j, prev.add(&v, &p.ring.coeffs))?;
        }
        Ok(p)
    }
}

/// Values of `ε ∘ φ` on the basis `α_S ⊗ α_T` of `Λ ⊗ Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationTable {
    ring: Ring,
    m: usize,
    /// Keyed by `(S, T)` bitmasks; missing entries are zero.
    values: BTreeMap<(u64, u64), Poly>,
}

impl MultiplicationTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Value on `α_S ⊗ α_T` for 1-based index sets.
    pub fn value(&self, s: &[usize], t: &[usize]) -> Poly {
        let sm = s.iter().fold(0u64, |a, &i| a | (1 << (i - 1)));
        let tm = t.iter().fold(0u64, |a, &i| a | (1 << (i - 1)));
        self.value_mask(sm, tm)
    }

    fn value_mask(&self, s: u64, t: u64) -> Poly {
        self.values
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ring.nvars()))
    }

    /// Whether the value on `1 ⊗ x` and `x ⊗ 1` is `ε(x)`.
    pub fn is_unital(&self) -> bool {
        let full = 1u64 << self.m;
        (0..full).all(|s| {
            let expect = if s == 0 {
                self.ring.one()
            } else {
                Poly::zero(self.ring.nvars())
            };
            self.value_mask(s, 0) == expect && self.value_mask(0, s) == expect
        })
    }

    fn element(&self) -> Ext {
        let mut p = Ext::default();
        for (&(s, t), v) in &self.values {
            p.add_term(s | (t << self.m), v.clone(), &self.ring);
        }
        p
    }

    pub fn entries(&self) -> impl Iterator<Item = (String, &Poly)> {
        self.values
            .iter()
            .map(|(&(s, t), v)| (format!("{} ⊗ {}", alpha(s), alpha(t)), v))
    }
}

fn alpha(mask: u64) -> String {
    if mask == 0 {
        return "1".into();
    }
    bits(mask).map(|i| format!("α{}", i + 1)).collect()
}

/// The reference multiplication `φ⁰`: `ε(1) = 1`, all other values zero.
pub fn reference_table(ring: &Ring, m: usize) -> MultiplicationTable {
    let mut values = BTreeMap::new();
    values.insert((0, 0), ring.one());
    MultiplicationTable {
        ring: ring.clone(),
        m,
        values,
    }
}

pub fn multiplication_from_perturbation(pert: &Perturbation) -> Result<MultiplicationTable> {
    for (k, v) in &pert.terms {
        pert.check_degree(v, pert.required_degree(&k.i, &k.j), "v_IJ")?;
    }
    let m = pert.m() as u32;
    let low = (1u64 << m) - 1;
    let values = pert
        .element()
        .terms
        .into_iter()
        .map(|(mask, v)| ((mask & low, mask >> m), v))
        .collect();
    Ok(MultiplicationTable {
        ring: pert.ring.clone(),
        m: pert.m(),
        values,
    })
}

/// Outcome of the associativity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Associativity {
    pub associative: bool,
    /// First basis triple on which the two composites differ.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// 1-based index sets of the three tensor factors.
    pub factors: [Vec<usize>; 3],
    /// Value of `φ ∘ (φ ⊗ 1)`.
    pub left: Poly,
    /// Value of `φ ∘ (1 ⊗ φ)`.
    pub right: Poly,
    pub text: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// The two composites `φ∘(φ⊗1)` and `φ∘(1⊗φ)` as elements of
/// `Λ(Q^1) ⊗ Λ(Q^2) ⊗ Λ(Q^3)`.
fn composites(table: &MultiplicationTable) -> (Ext, Ext) {
    let ring = &table.ring;
    let m = table.m as u32;
    let p = table.element();
    // substitute generator blocks: block b of P goes to a list of target blocks
    let subst = |targets: [&[u32]; 2]| -> Ext {
        let mut out = Ext::default();
        for (&mask, v) in &p.terms {
            let mut choices = Vec::new();
            for (block, tgt) in targets.iter().enumerate() {
                for i in bits((mask >> (block as u32 * m)) & ((1u64 << m) - 1)) {
                    choices.push(tgt.iter().map(|&b| b * m + i).collect::<Vec<_>>());
                }
            }
            let e = product_of_sums(&choices, ring);
            for (mm, c) in e.terms {
                out.add_term(mm, c.mul(v, &ring.coeffs), ring);
            }
        }
        out
    };
    let left = subst([&[0, 1], &[2]]).mul(&subst([&[0], &[1]]), ring);
    let right = subst([&[0], &[1, 2]]).mul(&subst([&[1], &[2]]), ring);
    (left, right)
}

/// Value of `φ∘(φ⊗1)` (`left = true`) or `φ∘(1⊗φ)` on `α_S1 ⊗ α_S2 ⊗ α_S3`.
pub fn triple_value(table: &MultiplicationTable, left: bool, s: [&[usize]; 3]) -> Poly {
    let (l, r) = composites(table);
    let m = table.m as u32;
    let mask = s.iter().enumerate().fold(0u64, |acc, (b, set)| {
        acc | (set_mask(&set.iter().map(|x| x - 1).collect::<Vec<_>>()) << (b as u32 * m))
    });
    if left { l } else { r }.coeff(mask, &table.ring)
}

pub fn is_associative(table: &MultiplicationTable) -> Associativity {
    let ring = &table.ring;
    let (l, r) = composites(table);
    let m = table.m as u32;
    let low = (1u64 << m) - 1;
    let mut bad: Vec<u64> = l
        .terms
        .keys()
        .chain(r.terms.keys())
        .copied()
        .filter(|&k| l.coeff(k, ring) != r.coeff(k, ring))
        .collect();
    bad.sort_by_key(|&k| {
        let (a, b, c) = (k & low, (k >> m) & low, k >> (2 * m));
        (k.count_ones(), std::cmp::Reverse(a.count_ones()), a, b, c)
    });
    bad.dedup();
    let witness = bad.first().map(|&k| {
        let blocks = [k & low, (k >> m) & low, k >> (2 * m)];
        let left = l.coeff(k, ring);
        let right = r.coeff(k, ring);
        let text = format!(
            "{} ⊗ {} ⊗ {}: φ(φ⊗1) = {}, φ(1⊗φ) = {}",
            alpha(blocks[0]),
            alpha(blocks[1]),
            alpha(blocks[2]),
            ring.display(&left),
            ring.display(&right)
        );
        Witness {
            factors: blocks.map(|b| bits(b).map(|i| i as usize + 1).collect()),
            left,
            right,
            text,
        }
    });
    Associativity {
        associative: witness.is_none(),
        witness,
    }
}

/// Reads `v_ij` off the table and returns the quadratic perturbation
/// reproducing it, or `None` when the table is not of that form.
pub fn decompose(table: &MultiplicationTable, degrees: &[i64]) -> Option<Perturbation> {
    let mut p = Perturbation::with_ring(table.ring.clone(), degrees.to_vec());
    for i in 0..table.m {
        for j in 0..table.m {
            let v = table.value_mask(1 << i, 1 << j);
            if !v.is_zero() {
                p.set(&[i + 1], &[j + 1], v).ok()?;
            }
        }
    }
    (multiplication_from_perturbation(&p).ok()? == *table).then_some(p)
}

/// The noncommutativity matrix `C(φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    ring: Ring,
    pub entries: Vec<Vec<Poly>>,
}

impl CMatrix {
    pub fn new(ring: Ring, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let m = entries.len();
        if entries.iter().any(|r| r.len() != m) {
            return domain("C must be square");
        }
        Ok(CMatrix { ring, entries })
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    /// Determinant by cofactor expansion.
    pub fn determinant(&self) -> Poly {
        let idx: Vec<usize> = (0..self.m()).collect();
        self.det_rec(0, &idx)
    }

    fn det_rec(&self, row: usize, cols: &[usize]) -> Poly {
        let ring = &self.ring;
        if cols.is_empty() {
            return ring.one();
        }
        let mut acc = Poly::zero(ring.nvars());
        for (k, &c) in cols.iter().enumerate() {
            if self.entries[row][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.entries[row][c].mul(&self.det_rec(row + 1, &rest), &ring.coeffs);
            acc = if k % 2 == 0 {
                acc.add(&term, &ring.coeffs)
            } else {
                acc.sub(&term, &ring.coeffs)
            };
        }
        ring.reduce(&acc)
    }

    /// Whether `C` is invertible over `A_*`, i.e. its determinant is a unit.
    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(&self.determinant())
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| self.ring.display(p)).collect())
            .collect()
    }
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `c_ij = -v_ij - v_ji`, with `c_ii` adding the supplied value of the
/// unperturbed diagonal.
pub fn c_matrix(pert: &Perturbation, diagonal: &[Poly]) -> Result<CMatrix> {
    if !pert.is_quadratic() {
        return domain("C is only defined for associative multiplications (|I| = |J| = 1 terms)");
    }
    let m = pert.m();
    if diagonal.len() != m {
        return domain(format!(
            "expected {m} diagonal entries, got {}",
            diagonal.len()
        ));
    }
    let ring = &pert.ring;
    let mut entries = vec![vec![Poly::zero(ring.nvars()); m]; m];
    for i in 0..m {
        for j in 0..m {
            let want = pert.degrees[i] + pert.degrees[j] + 2;
            let mut c = pert
                .get(&[i + 1], &[j + 1])
                .add(&pert.get(&[j + 1], &[i + 1]), &ring.coeffs)
                .neg(&ring.coeffs);
            if i == j {
                let d = ring.reduce(&diagonal[i]);
                pert.check_degree(&d, want, &format!("c_{}{}", i + 1, i + 1))?;
                c = c.add(&d, &ring.coeffs);
            }
            entries[i][j] = ring.reduce(&c);
        }
    }
    Ok(CMatrix {
        ring: ring.clone(),
        entries,
    })
}

/// `φ^e = φ (1 - v Q_i ⊗ Q_j)(1 + v Q_j ⊗ Q_i)` for 1-based `i`, `j`.
pub fn conjugate(pert: &Perturbation, i: usize, j: usize, v: &Poly) -> Result<Perturbation> {
    let m = pert.m();
    if i == 0 || j == 0 || i > m || j > m {
        return domain(format!("indices ({i},{j}) out of range 1..={m}"));
    }
    let ring = &pert.ring;
    let v = ring.reduce(v);
    pert.check_degree(
        &v,
        pert.degrees[i - 1] + pert.degrees[j - 1] + 2,
        "conjugating element",
    )?;
    let mut out = pert.clone();
    let a = out.get(&[i], &[j]).sub(&v, &ring.coeffs);
    out.set(&[i], &[j], a)?;
    let b = out.get(&[j], &[i]).add(&v, &ring.coeffs);
    out.set(&[j], &[i], b)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    AnStructure,
    Bimodule,
    Trace,
    Cotrace,
}

impl std::str::FromStr for ObstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "an" | "an-structure" | "A_n" => Ok(ObstructionKind::AnStructure),
            "bimodule" => Ok(ObstructionKind::Bimodule),
            "trace" => Ok(ObstructionKind::Trace),
            "cotrace" => Ok(ObstructionKind::Cotrace),
            _ => Err(Error::Parse(format!(
                "unknown obstruction kind '{s}' (expected an-structure, bimodule, trace or cotrace)"
            ))),
        }
    }
}

/// Whether the coefficient ring in which obstructions live is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    Even,
    /// The sphere spectrum, as for Moore spectra `S/p`.
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "reason")]
pub enum Verdict {
    VanishesForParity,
    Nonvanishing(String),
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionDegree {
    pub kind: ObstructionKind,
    pub d: i64,
    pub n: i64,
    pub degree: i64,
    /// Number of copies of the homotopy group in the torsor of choices.
    pub torsor_rank: Option<i64>,
    pub verdict: Verdict,
}

/// Degree of the obstruction at stage `n` for a quotient by an element of
/// degree `d`.
pub fn obstruction_degree(
    kind: ObstructionKind,
    d: i64,
    n: i64,
    ambient: Ambient,
) -> Result<ObstructionDegree> {
    if n < 2 {
        return domain(format!("stage must be at least 2, got {n}"));
    }
    let (degree, torsor_rank) = match kind {
        ObstructionKind::AnStructure => (n * (d + 1) + n - 3, None),
        ObstructionKind::Bimodule | ObstructionKind::Trace | ObstructionKind::Cotrace => {
            (n * (d + 2) - 2, Some(n))
        }
    };
    let verdict = match ambient {
        Ambient::Even if degree.rem_euclid(2) == 1 => Verdict::VanishesForParity,
        Ambient::Even => Verdict::Undetermined,
        Ambient::Sphere
            if kind == ObstructionKind::AnStructure
                && d == 0
                && n >= 2
                && crate::arith::is_prime(n as u64) =>
        {
            Verdict::Nonvanishing(format!("π_{degree} S/{n} ≅ Z/{n}"))
        }
        Ambient::Sphere => Verdict::Undetermined,
    };
    Ok(ObstructionDegree {
        kind,
        d,
        n,
        degree,
        torsor_rank,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicShift {
    pub value: Poly,
    /// `n` is invertible, so some `v` cancels `c_n`.
    pub cancellable: bool,
    pub cancelling_v: Option<Poly>,
}

fn same_degree(ring: &Ring, a: &Poly, b: &Poly) -> Result<()> {
    let da = a.homogeneous_degree(&ring.degrees);
    let db = b.homogeneous_degree(&ring.degrees);
    match (da, db) {
        (Ok(Some(x)), Ok(Some(y))) if x != y => Err(Error::Degree {
            expected: x,
            found: y,
            context: "shift element".into(),
        }),
        (Err(()), _) | (_, Err(())) => domain("inhomogeneous element"),
        _ => Ok(()),
    }
}

/// `c_n(φ'_n) = c_n(φ_n) + n v`.
pub fn cyclic_obstruction_shift(ring: &Ring, c: &Poly, v: &Poly, n: i64) -> Result<CyclicShift> {
    same_degree(ring, c, v)?;
    let k = &ring.coeffs;
    let value = ring.reduce(&c.add(&v.scale(n as i128, k), k));
    let n_inv = k.inv(n as i128);
    Ok(CyclicShift {
        value,
        cancellable: n_inv.is_some(),
        cancelling_v: n_inv.map(|u| ring.reduce(&c.scale(k.neg(u), k))),
    })
}

/// `c(φ') = c(φ) - 2v` for the `A_2` perturbation by `v`.
pub fn strickland_shift(ring: &Ring, c: &Poly, v: &Poly) -> Result<Poly> {
    same_degree(ring, c, v)?;
    Ok(ring.reduce(&c.sub(&v.scale(2, &ring.coeffs), &ring.coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{BaseRing, Generator, GradedRingSpec};

    fn spec(m: usize) -> QuotientSpec {
        let mut gens = vec![Generator::new("u", 2, true)];
        let mut seq = vec!["2".to_string()];
        for i in 1..m {
            gens.push(Generator::new(&format!("w{i}"), 0, false));
            seq.push(format!("w{i}"));
        }
        QuotientSpec {
            ring: GradedRingSpec::new(BaseRing::Integers, gens),
            sequence: seq,
        }
    }

    #[test]
    fn quadratic_is_associative() {
        let mut p = Perturbation::new(&spec(2)).unwrap();
        p.set_str(&[1], &[2], "u").unwrap();
        p.set_str(&[1], &[1], "u").unwrap();
        let t = multiplication_from_perturbation(&p).unwrap();
        assert!(t.is_unital());
        assert!(is_associative(&t).associative);
    }

    #[test]
    fn quartic_witness() {
        let mut p = Perturbation::new(&spec(4)).unwrap();
        p.set_str(&[1, 2], &[3, 4], "u^2").unwrap();
        let t = multiplication_from_perturbation(&p).unwrap();
        let a = is_associative(&t);
        let w = a.witness.unwrap();
        assert_eq!(w.factors, [vec![1, 2], vec![3], vec![4]]);
        assert!(w.left.is_zero());
        assert_eq!(t.ring().display(&w.right), "u^2");
    }
}
