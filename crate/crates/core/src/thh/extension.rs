use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{parse_poly, Coeffs, Poly};
use crate::error::{domain, Error, Result};
use crate::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec, Ring};
use crate::moduli::CMatrix;

/// Tag attached to results that depend on conjectured extension data.
pub const CONJECTURAL: &str = "conjectural-input";

/// Default q-order truncation for height `n` at the prime `p`.
pub fn default_q_order(p: u64, n: u32) -> u32 {
    (2 * (p as u32 - 1) * n + 2).max(12)
}

/// Power series `f_i ∈ R_*[[q_1,…,q_m]]` encoding the relations `x_i = f_i`.
///
/// Series are polynomials in the generators of `R_*` followed by the `q`
/// variables, truncated at total `q`-order `q_order` and at weight
/// `precision`, where the weight of a term is the `p`-adic valuation of its
/// coefficient plus its degree in the non-invertible generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionSystem {
    /// `R_*` extended by the `q` variables.
    pub ring: Ring,
    /// Number of generators of `R_*`; the `q` variables come after them.
    pub base_vars: usize,
    pub x: Vec<Poly>,
    pub d: Vec<i64>,
    pub f: Vec<Poly>,
    pub q_order: u32,
    pub precision: u32,
    pub tags: BTreeSet<String>,
}

/// Completion of the spec's ring at its prime: integer coefficients become
/// `p`-adic at the given precision.
pub fn completed_ring_spec(spec: &QuotientSpec, precision: u32) -> Result<GradedRingSpec> {
    let mut ring = spec.ring.clone();
    match ring.base {
        BaseRing::Integers => {
            if let Some(p) = spec.quotient_ring()?.prime {
                ring.base = BaseRing::PAdicTruncated { p, n: precision };
            }
        }
        BaseRing::PAdicTruncated { p, .. } => {
            ring.base = BaseRing::PAdicTruncated { p, n: precision };
        }
        BaseRing::IntegersModPPowN { .. } => {}
    }
    Ok(ring)
}

impl ExtensionSystem {
    /// The zero system `f_i = 0` for the given spec; `q_names` defaults to
    /// `q` for one variable and `q1, …, qm` otherwise.
    pub fn zero(
        spec: &QuotientSpec,
        q_names: Option<Vec<String>>,
        q_order: u32,
        precision: u32,
    ) -> Result<Self> {
        let d = spec.degrees()?;
        let m = d.len();
        let names = q_names.unwrap_or_else(|| {
            if m == 1 {
                vec!["q".into()]
            } else {
                (1..=m).map(|i| format!("q{i}")).collect()
            }
        });
        if names.len() != m {
            return domain(format!("{} q names for {m} sequence elements", names.len()));
        }
        let completed = QuotientSpec {
            ring: completed_ring_spec(spec, precision)?,
            sequence: spec.sequence.clone(),
        };
        completed.quotient_tower()?;
        let base = completed.ring.ring()?;
        let base_vars = base.nvars();
        let mut gens = completed.ring.generators.clone();
        for (name, &di) in names.iter().zip(&d) {
            if gens.iter().any(|g| &g.name == name) {
                return domain(format!("q name '{name}' clashes with a ring generator"));
            }
            gens.push(Generator::new(name, -di - 2, false));
        }
        let ext_spec = GradedRingSpec {
            base: completed.ring.base,
            generators: gens,
            relations: Vec::new(),
        };
        let mut ring = ext_spec.ring()?;
        ring.killed[..base_vars].copy_from_slice(&base.killed);
        ring.coeffs = base.coeffs;
        ring.padic = base.padic;
        ring.prime = base.prime.or(completed.quotient_ring()?.prime);
        let nv = ring.nvars();
        let x = completed
            .elements()?
            .into_iter()
            .map(|e| widen(&e.poly, nv))
            .collect();
        Ok(ExtensionSystem {
            ring,
            base_vars,
            x,
            d,
            f: vec![Poly::zero(nv); m],
            q_order,
            precision,
            tags: BTreeSet::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn q_var(&self, k: usize) -> usize {
        self.base_vars + k
    }

    pub fn q_names(&self) -> &[String] {
        &self.ring.names[self.base_vars..]
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.ring.coeffs
    }

    pub fn parse(&self, src: &str) -> Result<Poly> {
        let p = parse_poly(src, &self.ring.names, &self.ring.coeffs)?;
        for (e, _) in p.terms() {
            for (i, &x) in e.iter().enumerate() {
                if x < 0 && !self.ring.invertible[i] {
                    return domain(format!(
                        "negative power of {} in '{src}'",
                        self.ring.names[i]
                    ));
                }
            }
        }
        Ok(self.truncate(&p))
    }

    pub fn display(&self, p: &Poly) -> String {
        self.ring.display(p)
    }

    /// Total `q`-degree of a monomial.
    pub fn q_degree(&self, e: &[i32]) -> u32 {
        e[self.base_vars..].iter().map(|&x| x as u32).sum()
    }

    /// Weight of a term, see the type documentation.
    pub fn weight(&self, e: &[i32], c: i128) -> u32 {
        let v = self.ring.coeffs.valuation(c).unwrap_or(0);
        let w: u32 = (0..self.base_vars)
            .filter(|&i| !self.ring.invertible[i])
            .map(|i| e[i].max(0) as u32)
            .sum();
        v + w
    }

    pub fn truncate(&self, p: &Poly) -> Poly {
        let r = self.ring.reduce(p);
        r.filter(|e, c| self.q_degree(e) <= self.q_order && self.weight(e, c) < self.precision)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.truncate(&a.mul(b, self.coeffs()))
    }

    /// Sets `f_i` (0-based) from a string in the ring and `q` names.
    pub fn set(&mut self, i: usize, src: &str) -> Result<()> {
        if i >= self.m() {
            return domain(format!("index {i} out of range for {} relations", self.m()));
        }
        self.f[i] = self.parse(src)?;
        self.check(i)
    }

    pub fn add_to(&mut self, i: usize, p: &Poly) -> Result<()> {
        if i >= self.m() {
            return domain(format!("index {i} out of range for {} relations", self.m()));
        }
        self.f[i] = self.truncate(&self.f[i].add(p, self.coeffs()));
        self.check(i)
    }

    /// No constant term and every term of degree `d_i`.
    pub fn check(&self, i: usize) -> Result<()> {
        for (e, _) in self.f[i].terms() {
            if self.q_degree(e) == 0 {
                return domain(format!(
                    "f_{} = {} has a constant term",
                    i,
                    self.display(&self.f[i])
                ));
            }
            let deg = self.ring.element_degree(e);
            if deg != self.d[i] {
                return Err(Error::Degree {
                    expected: self.d[i],
                    found: deg,
                    context: format!("term of f for x = {}", self.display(&self.x[i])),
                });
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        (0..self.m()).try_for_each(|i| self.check(i))
    }

    /// Relation `x_i - f_i`.
    pub fn relation(&self, i: usize) -> Poly {
        self.truncate(&self.x[i].sub(&self.f[i], self.coeffs()))
    }

    /// Coefficients `a_{iJ}` of `f_i = Σ_J a_{iJ} q^J`.
    pub fn coefficients(&self, i: usize) -> Vec<(Vec<u32>, Poly)> {
        let mut by_j: std::collections::BTreeMap<Vec<u32>, Poly> = Default::default();
        let nv = self.nvars();
        for (e, c) in self.f[i].terms() {
            let j: Vec<u32> = e[self.base_vars..].iter().map(|&x| x as u32).collect();
            let mut base = e.clone();
            for x in &mut base[self.base_vars..] {
                *x = 0;
            }
            by_j.entry(j)
                .or_insert_with(|| Poly::zero(nv))
                .add_term(base, c, self.coeffs());
        }
        by_j.into_iter().collect()
    }

    pub fn tag(mut self, t: &str) -> Self {
        self.tags.insert(t.into());
        self
    }

    pub fn summary(&self) -> Vec<ExtensionJson> {
        (0..self.m())
            .map(|i| ExtensionJson {
                x: self.display(&self.x[i]),
                f: self.display(&self.f[i]),
            })
            .collect()
    }

    /// `q^J` as a series.
    pub fn q_monomial(&self, j: &[u32]) -> Poly {
        let mut e = vec![0i32; self.nvars()];
        for (k, &x) in j.iter().enumerate() {
            e[self.base_vars + k] = x as i32;
        }
        Poly::monomial(e, 1, self.coeffs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionJson {
    pub x: String,
    pub f: String,
}

fn widen(p: &Poly, nv: usize) -> Poly {
    let mut out = Poly::zero(nv);
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2.resize(nv, 0);
        out.add_term(e2, c, &Coeffs::integers());
    }
    out
}

/// `f_i = Σ_j c_ij q_j`, the extensions visible modulo filtration 2.
pub fn extension_from_height1(
    spec: &QuotientSpec,
    c: &CMatrix,
    q_order: u32,
    precision: u32,
) -> Result<ExtensionSystem> {
    let mut ext = ExtensionSystem::zero(spec, None, q_order, precision)?;
    let m = ext.m();
    if c.m() != m {
        return domain(format!(
            "C is {}x{} but the sequence has {m} elements",
            c.m(),
            c.m()
        ));
    }
    let nv = ext.nvars();
    for i in 0..m {
        let mut fi = Poly::zero(nv);
        for j in 0..m {
            let cij = widen(c.get(i, j), nv);
            let want = ext.d[i] + ext.d[j] + 2;
            match cij.homogeneous_degree(&ext.ring.degrees) {
                Ok(None) => continue,
                Ok(Some(deg)) if deg == want => {}
                Ok(Some(deg)) => {
                    return Err(Error::Degree {
                        expected: want,
                        found: deg,
                        context: format!("c_{}{}", i + 1, j + 1),
                    })
                }
                Err(()) => return domain(format!("c_{}{} is not homogeneous", i + 1, j + 1)),
            }
            let q = ext.q_monomial(&unit_vec(m, j));
            fi = fi.add(&ext.mul(&cij, &q), ext.coeffs());
        }
        ext.f[i] = ext.truncate(&fi);
        ext.check(i)?;
    }
    Ok(ext)
}

fn unit_vec(m: usize, j: usize) -> Vec<u32> {
    (0..m).map(|k| u32::from(k == j)).collect()
}

/// Determinant of the linear parts `∂f_i/∂q_j (0)` is a unit of `R_*`.
pub fn jacobian_invertible(ext: &ExtensionSystem) -> bool {
    let m = ext.m();
    let rows: Vec<Vec<Poly>> = (0..m)
        .map(|i| {
            let coeffs = ext.coefficients(i);
            (0..m)
                .map(|j| {
                    let u = unit_vec(m, j);
                    coeffs
                        .iter()
                        .find(|(jj, _)| *jj == u)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| Poly::zero(ext.nvars()))
                })
                .collect()
        })
        .collect();
    let det = det(&rows, 0, &(0..m).collect::<Vec<_>>(), ext);
    is_unit_mod_nilpotent(ext, &det)
}

fn det(rows: &[Vec<Poly>], r: usize, cols: &[usize], ext: &ExtensionSystem) -> Poly {
    if cols.is_empty() {
        return Poly::one(ext.nvars(), ext.coeffs());
    }
    let mut acc = Poly::zero(ext.nvars());
    for (k, &c) in cols.iter().enumerate() {
        if rows[r][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = ext.mul(&rows[r][c], &det(rows, r + 1, &rest, ext));
        acc = if k % 2 == 0 {
            acc.add(&t, ext.coeffs())
        } else {
            acc.sub(&t, ext.coeffs())
        };
    }
    ext.truncate(&acc)
}

/// Classification of an element of `R_*` by its weight-zero part.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitClass {
    /// All terms have positive weight.
    Nilpotent,
    /// A unit monomial plus terms of positive weight.
    Unit(Poly),
    /// The weight-zero part is not a single unit monomial.
    Undecided,
}

pub fn classify(ext: &ExtensionSystem, c: &Poly) -> UnitClass {
    let zero_part = c.filter(|e, k| ext.weight(e, k) == 0);
    if zero_part.is_zero() {
        return UnitClass::Nilpotent;
    }
    match zero_part.as_monomial() {
        Some((e, k))
            if ext.ring.coeffs.is_unit(k)
                && e.iter()
                    .enumerate()
                    .all(|(i, &x)| x == 0 || ext.ring.invertible[i]) =>
        {
            UnitClass::Unit(zero_part.clone())
        }
        _ => UnitClass::Undecided,
    }
}

fn is_unit_mod_nilpotent(ext: &ExtensionSystem, c: &Poly) -> bool {
    matches!(classify(ext, c), UnitClass::Unit(_))
}

/// `f_k ↦ f_k + ∂f/∂q_k` for a homogeneous `f` of `q`-degree at least 2 and
/// total degree `-2`.
pub fn apply_structure_change(ext: &ExtensionSystem, f: &Poly) -> Result<ExtensionSystem> {
    let f = ext.truncate(f);
    let mut out = ext.clone();
    if f.is_zero() {
        return Ok(out);
    }
    let mut qdeg = None;
    for (e, _) in f.terms() {
        let n = ext.q_degree(e);
        if n < 2 {
            return domain(format!("{} has q-degree {n} < 2", ext.display(&f)));
        }
        if qdeg.is_some_and(|m| m != n) {
            return domain(format!("{} is not homogeneous in q", ext.display(&f)));
        }
        qdeg = Some(n);
    }
    match f.homogeneous_degree(&ext.ring.degrees) {
        Ok(Some(-2)) => {}
        Ok(Some(d)) => {
            return Err(Error::Degree {
                expected: -2,
                found: d,
                context: format!("structure change {}", ext.display(&f)),
            })
        }
        _ => return domain(format!("{} is not homogeneous", ext.display(&f))),
    }
    for k in 0..ext.m() {
        let v = ext.q_var(k);
        let mut df = Poly::zero(ext.nvars());
        for (e, c) in f.terms() {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                df.add_term(e2, ext.coeffs().mul(c, e[v] as i128), ext.coeffs());
            }
        }
        out.add_to(k, &df)?;
    }
    Ok(out)
}

/// A term `v_{J,i}` of a bimodule perturbation at stage `|J|`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleTerm {
    /// 0-based indices into the `q` variables.
    pub j: Vec<usize>,
    /// 0-based position in `J`.
    pub i: usize,
    pub v: Poly,
}

/// For each term, `f_{j_i}` gains `v_{J,i} q^J / q_{j_i}`.
pub fn bimodule_extension_change(
    ext: &ExtensionSystem,
    terms: &[BimoduleTerm],
) -> Result<ExtensionSystem> {
    let mut out = ext.clone();
    let m = ext.m();
    for t in terms {
        if t.i >= t.j.len() {
            return domain(format!(
                "position {} out of range for J of length {}",
                t.i,
                t.j.len()
            ));
        }
        if let Some(&bad) = t.j.iter().find(|&&k| k >= m) {
            return domain(format!("index {bad} out of range for {m} variables"));
        }
        let k = t.j[t.i];
        let mut exps = vec![0u32; m];
        for &x in &t.j {
            exps[x] += 1;
        }
        exps[k] -= 1;
        let term = ext.mul(&t.v, &ext.q_monomial(&exps));
        out.add_to(k, &term)?;
    }
    Ok(out)
}

/// One additional term `c · q^J` of `f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HigherTerm {
    pub i: usize,
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

/// `E(n)_* = Z_p[v_1,…,v_{n-1}, v_n^{±1}]` with the sequence
/// `(p, v_1, …, v_{n-1})`.
pub fn kn_spec(n: u32, p: u64, precision: u32) -> QuotientSpec {
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(Generator::new(
            &format!("v{i}"),
            2 * (p.pow(i) as i64 - 1),
            i == n,
        ));
    }
    let mut seq = vec![p.to_string()];
    seq.extend((1..n).map(|i| format!("v{i}")));
    QuotientSpec {
        ring: GradedRingSpec::new(BaseRing::PAdicTruncated { p, n: precision }, gens),
        sequence: seq,
    }
}

/// `f_i = (-1)^{n-i} v_n q_i^{p-1} ⋯ q_{n-1}^{p-1}` plus the optional higher
/// terms; results built on higher terms carry the conjectural tag.
pub fn kn_extension_system(
    n: u32,
    p: u64,
    higher: &[HigherTerm],
    q_order: u32,
    precision: u32,
) -> Result<ExtensionSystem> {
    if n == 0 {
        return domain("height must be at least 1");
    }
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::Unsupported(format!(
            "the K(n) extensions need an odd prime, got {p}"
        )));
    }
    let spec = kn_spec(n, p, precision);
    let names = (0..n).map(|i| format!("q{i}")).collect();
    let mut ext = ExtensionSystem::zero(&spec, Some(names), q_order, precision)?;
    let vn = ext.parse(&format!("v{n}"))?;
    for i in 0..n as usize {
        let mut j = vec![0u32; n as usize];
        for x in j.iter_mut().skip(i) {
            *x = p as u32 - 1;
        }
        let sign = if (n as usize - i).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let term = ext.mul(&vn.scale(sign, ext.coeffs()), &ext.q_monomial(&j));
        ext.add_to(i, &term)?;
    }
    for h in higher {
        if h.exponents.len() != n as usize {
            return domain(format!("higher term needs {n} exponents"));
        }
        let c = ext.parse(&h.coefficient)?;
        let term = ext.mul(&c, &ext.q_monomial(&h.exponents));
        ext.add_to(h.i, &term)?;
    }
    if !higher.is_empty() {
        ext = ext.tag(CONJECTURAL);
    }
    Ok(ext)
}

/// `(E_1)_* = Z_p[u^{±1}]` with `|u| = 2` and the sequence `(p)`.
pub fn e1_spec(p: u64, precision: u32) -> QuotientSpec {
    QuotientSpec {
        ring: GradedRingSpec::new(
            BaseRing::PAdicTruncated { p, n: precision },
            vec![Generator::new("u", 2, true)],
        ),
        sequence: vec![p.to_string()],
    }
}

/// Height one Lubin–Tate extension `f = -(uq)^{p-1}`, with an optional
/// leading term `-a (uq)^n` in front of it.
pub fn e1_extension_system(
    p: u64,
    leading: Option<(i64, u32)>,
    q_order: u32,
    precision: u32,
) -> Result<ExtensionSystem> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::Unsupported(format!(
            "expected an odd prime, got {p}"
        )));
    }
    let mut ext = ExtensionSystem::zero(&e1_spec(p, precision), None, q_order, precision)?;
    let top = p - 1;
    let mut src = format!("-u^{top}*q^{top}");
    if let Some((a, n)) = leading {
        if n == 0 || n as u64 >= top {
            return domain(format!("leading power {n} must lie in 1..{top}"));
        }
        src = format!("{} - {a}*u^{n}*q^{n}", src);
    }
    ext.set(0, &src)?;
    Ok(ext)
}

/// The conjectured pure-power terms `(-1)^{n-i} v_n q_i^{p^{n-i}-1}` for `i < n-1`.
pub fn kn_conjectural_terms(n: u32, p: u64) -> Vec<HigherTerm> {
    (0..n.saturating_sub(1) as usize)
        .map(|i| {
            let mut exponents = vec![0u32; n as usize];
            exponents[i] = p.pow(n - i as u32) as u32 - 1;
            let sign = if (n as usize - i).is_multiple_of(2) {
                ""
            } else {
                "-"
            };
            HigherTerm {
                i,
                coefficient: format!("{sign}v{n}"),
                exponents,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{c_matrix, Perturbation};

    fn ku2() -> QuotientSpec {
        QuotientSpec::new(
            GradedRingSpec::new(BaseRing::Integers, vec![Generator::new("u", 2, true)]),
            &["2"],
        )
    }

    #[test]
    fn height_one_extension_of_ku() {
        let spec = ku2();
        let pert = Perturbation::new(&spec).unwrap();
        let ring = pert.ring().clone();
        let u = Poly::var(ring.nvars(), 0, &ring.coeffs);
        let c = c_matrix(&pert, &[u]).unwrap();
        let ext = extension_from_height1(&spec, &c, 12, 16).unwrap();
        assert_eq!(ext.display(&ext.f[0]), "u*q");
        assert_eq!(ext.ring.coeffs.modulus(), Some(1 << 16));
        assert!(jacobian_invertible(&ext));
    }

    #[test]
    fn kn_leading_terms() {
        let e1 = kn_extension_system(1, 3, &[], 12, 16).unwrap();
        assert_eq!(e1.display(&e1.f[0]), "-v1*q0^2");
        let e2 = kn_extension_system(2, 3, &[], 12, 16).unwrap();
        assert_eq!(e2.display(&e2.f[1]), "-v2*q1^2");
        assert_eq!(e2.display(&e2.f[0]), "v2*q0^2*q1^2");
        for i in 0..2 {
            let lead = e2.f[i].terms().map(|(e, _)| e2.q_degree(e)).min().unwrap();
            assert_eq!(lead, (2 - i as u32) * 2);
        }
        assert!(e2.tags.is_empty());
        let h = kn_extension_system(2, 3, &kn_conjectural_terms(2, 3), 12, 16).unwrap();
        assert!(h.tags.contains(CONJECTURAL));
        assert!(kn_extension_system(1, 2, &[], 12, 16).is_err());
    }

    #[test]
    fn structure_change_adds_gradient() {
        let spec = kn_spec(1, 3, 16);
        let ext = ExtensionSystem::zero(&spec, None, 12, 16).unwrap();
        let f = ext.parse("v1^-1*q^2").unwrap();
        let bad = apply_structure_change(&ext, &f);
        assert!(matches!(bad, Err(Error::Degree { .. })));
        let f = ext.parse("v1*q^3").unwrap();
        let out = apply_structure_change(&ext, &f).unwrap();
        assert_eq!(out.display(&out.f[0]), "3*v1*q^2");
        let lin = ext.parse("q").unwrap();
        assert!(apply_structure_change(&ext, &lin).is_err());
    }

    #[test]
    fn bimodule_terms() {
        let spec = QuotientSpec::new(
            GradedRingSpec::new(
                BaseRing::PAdicTruncated { p: 3, n: 8 },
                vec![Generator::new("u", 2, true), Generator::new("w", 0, false)],
            ),
            &["3", "w"],
        );
        let ext = ExtensionSystem::zero(&spec, None, 10, 8).unwrap();
        let v = ext.parse("u").unwrap();
        let out = bimodule_extension_change(
            &ext,
            &[BimoduleTerm {
                j: vec![0, 1],
                i: 0,
                v: v.clone(),
            }],
        )
        .unwrap();
        assert_eq!(out.display(&out.f[0]), "u*q2");
        assert!(out.f[1].is_zero());
        let v3 = ext.parse("u^2").unwrap();
        let terms: Vec<_> = (0..3)
            .map(|i| BimoduleTerm {
                j: vec![1, 1, 1],
                i,
                v: v3.clone(),
            })
            .collect();
        let out = bimodule_extension_change(&ext, &terms).unwrap();
        assert_eq!(out.display(&out.f[1]), "3*u^2*q2^2");
        let bad = BimoduleTerm {
            j: vec![0, 2],
            i: 0,
            v,
        };
        assert!(bimodule_extension_change(&ext, &[bad]).is_err());
    }
}
