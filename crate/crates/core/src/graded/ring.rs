use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, parse_poly, Coeffs, Exponents, Poly};
use crate::error::{domain, Error, Result};

/// Default `p`-adic precision.
pub const DEFAULT_PRECISION: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseRing {
    Integers,
    /// The finite ring `Z/p^n`.
    IntegersModPPowN {
        p: u64,
        n: u32,
    },
    /// The `p`-adic integers, stored modulo `p^n`.
    PAdicTruncated {
        p: u64,
        n: u32,
    },
}

impl BaseRing {
    pub fn coeffs(&self) -> Coeffs {
        match *self {
            BaseRing::Integers => Coeffs::integers(),
            BaseRing::IntegersModPPowN { p, n } | BaseRing::PAdicTruncated { p, n } => {
                Coeffs::prime_power(p, n)
            }
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            BaseRing::Integers => None,
            BaseRing::IntegersModPPowN { p, .. } | BaseRing::PAdicTruncated { p, .. } => Some(p),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            BaseRing::Integers => Ok(()),
            BaseRing::IntegersModPPowN { p, n } | BaseRing::PAdicTruncated { p, n } => {
                if !is_prime(p) {
                    return domain(format!("{p} is not prime"));
                }
                if n == 0 {
                    return domain("precision must be positive");
                }
                if (p as f64).log2() * n as f64 > 120.0 {
                    return domain(format!("{p}^{n} exceeds the supported coefficient size"));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub invertible: bool,
}

impl Generator {
    pub fn new(name: &str, degree: i64, invertible: bool) -> Self {
        Generator {
            name: name.into(),
            degree,
            invertible,
        }
    }
}

/// A presented even graded commutative ring `R_*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRingSpec {
    pub base: BaseRing,
    #[serde(default)]
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// A homogeneous element of a graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub poly: Poly,
    pub degree: i64,
}

impl GradedRingSpec {
    pub fn new(base: BaseRing, generators: Vec<Generator>) -> Self {
        GradedRingSpec {
            base,
            generators,
            relations: Vec::new(),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let mut seen = HashSet::new();
        for g in &self.generators {
            let ok = g
                .name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic())
                && g.name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse(format!("invalid generator name '{}'", g.name)));
            }
            if !seen.insert(&g.name) {
                return domain(format!("duplicate generator '{}'", g.name));
            }
            if g.degree % 2 != 0 {
                return Err(Error::Evenness(format!(
                    "generator {} has odd degree {}",
                    g.name, g.degree
                )));
            }
        }
        for r in &self.relations {
            self.parse(r)?;
        }
        Ok(())
    }

    /// Parses a homogeneous element.
    pub fn parse(&self, src: &str) -> Result<GradedElement> {
        let coeffs = self.base.coeffs();
        let poly = parse_poly(src, &self.names(), &coeffs)?;
        for (e, _) in poly.terms() {
            for (i, &x) in e.iter().enumerate() {
                if x < 0 && !self.generators[i].invertible {
                    return domain(format!(
                        "negative power of the non-invertible generator {} in '{src}'",
                        self.generators[i].name
                    ));
                }
            }
        }
        let degree = match poly.homogeneous_degree(&self.degrees()) {
            Ok(d) => d.unwrap_or(0),
            Err(()) => return domain(format!("'{src}' is not homogeneous")),
        };
        Ok(GradedElement { poly, degree })
    }

    /// The ring with its relations imposed.
    pub fn ring(&self) -> Result<Ring> {
        self.validate()?;
        let mut ring = Ring {
            names: self.names(),
            degrees: self.degrees(),
            invertible: self.generators.iter().map(|g| g.invertible).collect(),
            killed: vec![false; self.generators.len()],
            coeffs: self.base.coeffs(),
            padic: matches!(self.base, BaseRing::PAdicTruncated { .. }),
            prime: self.base.prime(),
        };
        for r in &self.relations {
            ring = ring.quotient(&self.parse(r)?, false)?;
        }
        Ok(ring)
    }

    /// Same ring at another `p`-adic precision.
    pub fn with_precision(&self, n: u32) -> Self {
        let mut s = self.clone();
        match &mut s.base {
            BaseRing::PAdicTruncated { n: m, .. } | BaseRing::IntegersModPPowN { n: m, .. } => {
                *m = n
            }
            BaseRing::Integers => {}
        }
        s
    }
}

/// `R_*` together with a sequence `(x_1, …, x_m)` assumed regular.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub ring: GradedRingSpec,
    #[serde(default)]
    pub sequence: Vec<String>,
}

impl QuotientSpec {
    pub fn new(ring: GradedRingSpec, sequence: &[&str]) -> Self {
        QuotientSpec {
            ring,
            sequence: sequence.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn elements(&self) -> Result<Vec<GradedElement>> {
        self.ring.validate()?;
        self.sequence.iter().map(|s| self.ring.parse(s)).collect()
    }

    /// Degrees `d_i` of the sequence.
    pub fn degrees(&self) -> Result<Vec<i64>> {
        Ok(self.elements()?.iter().map(|x| x.degree).collect())
    }

    pub fn validate(&self) -> Result<()> {
        self.quotient_ring().map(|_| ())
    }

    /// The rings `R/(x_1,…,x_i)` for `i = 0..=m`, checking that each `x_i`
    /// is a non-zero-divisor in its predecessor.
    pub fn quotient_tower(&self) -> Result<Vec<Ring>> {
        let mut rings = vec![self.ring.ring()?];
        for (i, x) in self.elements()?.iter().enumerate() {
            let next = rings[i].quotient(x, true).map_err(|e| match e {
                Error::Regularity(m) => {
                    Error::Regularity(format!("x_{} = {}: {m}", i + 1, self.sequence[i]))
                }
                other => other,
            })?;
            rings.push(next);
        }
        Ok(rings)
    }

    /// `A_* = R_*/I`.
    pub fn quotient_ring(&self) -> Result<Ring> {
        Ok(self.quotient_tower()?.pop().unwrap())
    }

    pub fn with_precision(&self, n: u32) -> Self {
        QuotientSpec {
            ring: self.ring.with_precision(n),
            sequence: self.sequence.clone(),
        }
    }
}

/// A graded ring in normal form: a coefficient ring, Laurent generators and
/// polynomial (or power series) generators, some of which have been set to
/// zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub invertible: Vec<bool>,
    pub killed: Vec<bool>,
    pub coeffs: Coeffs,
    /// Coefficients stand for the `p`-adic integers at finite precision.
    pub padic: bool,
    /// Prime of the ambient base, if any.
    pub prime: Option<u64>,
}

impl Ring {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.coeffs.is_trivial()
    }

    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nvars()).filter(|&i| !self.killed[i])
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.is_zero_ring() {
            return Poly::zero(p.nvars());
        }
        p.filter(|e, _| {
            e.iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || !self.killed[i])
        })
        .reduce(&self.coeffs)
    }

    /// Whether `p` is a unit: a single monomial in invertible generators
    /// with invertible coefficient.
    pub fn is_unit(&self, p: &Poly) -> bool {
        self.unit_inverse(p).is_some()
    }

    pub fn unit_inverse(&self, p: &Poly) -> Option<Poly> {
        let p = self.reduce(p);
        let (e, c) = p.as_monomial()?;
        if e.iter()
            .enumerate()
            .any(|(i, &x)| x != 0 && !self.invertible[i])
        {
            return None;
        }
        let ci = self.coeffs.inv(c)?;
        Some(Poly::monomial(
            e.iter().map(|x| -x).collect(),
            ci,
            &self.coeffs,
        ))
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), &self.coeffs)
    }

    pub fn element_degree(&self, e: &[i32]) -> i64 {
        e.iter()
            .zip(&self.degrees)
            .map(|(&a, &d)| a as i64 * d)
            .sum()
    }

    /// `R/(x)`, deciding regularity of `x` when `check` is set.
    ///
    /// Supported elements are constants, unit multiples of one polynomial
    /// generator, and unit monomials times a constant.
    pub fn quotient(&self, x: &GradedElement, check: bool) -> Result<Ring> {
        let xr = self.reduce(&x.poly);
        let shown = x.poly.display(&self.names);
        if xr.is_zero() {
            if check {
                if self.is_zero_ring() {
                    return Ok(self.clone());
                }
                return Err(Error::Regularity(format!(
                    "{shown} vanishes in the quotient so far and is a zero divisor"
                )));
            }
            return Ok(self.clone());
        }
        let Some((e, c)) = xr.as_monomial() else {
            return Err(Error::Unsupported(format!(
                "quotient by {shown}: only constants, unit multiples of a single generator and \
                 unit monomials are supported"
            )));
        };
        let poly_vars: Vec<usize> = (0..e.len())
            .filter(|&i| e[i] != 0 && !self.invertible[i])
            .collect();
        match poly_vars.as_slice() {
            [] => self.quotient_constant(c, check, &shown),
            [i] if e[*i] == 1 && self.coeffs.is_unit(c) => {
                let mut r = self.clone();
                r.killed[*i] = true;
                Ok(r)
            }
            _ => Err(Error::Unsupported(format!(
                "quotient by {shown}: not a unit multiple of a single generator"
            ))),
        }
    }

    fn quotient_constant(&self, c: i128, check: bool, shown: &str) -> Result<Ring> {
        let mut r = self.clone();
        let k = self.coeffs;
        match k.modulus() {
            None => {
                r.coeffs = Coeffs::modulo(c);
                if r.prime.is_none() {
                    r.prime = r.coeffs.prime().map(|p| p as u64);
                }
            }
            Some(m) if self.padic => {
                let v = k.valuation(c).unwrap_or(0);
                let p = k.prime().unwrap();
                r.coeffs = if v == 0 {
                    Coeffs::modulo(1)
                } else {
                    Coeffs::modulo(p.pow(v))
                };
                r.padic = false;
                let _ = m;
            }
            Some(m) => {
                if check && !k.is_unit(c) {
                    return Err(Error::Regularity(format!(
                        "{shown} is a zero divisor in Z/{m}"
                    )));
                }
                r.coeffs = Coeffs::modulo(gcd(m, c));
            }
        }
        Ok(r)
    }

    /// Monomials of degree `t` in the live generators, with every exponent
    /// in `[-window, window]` (non-negative for polynomial generators).
    pub fn basis(&self, t: i64, window: i32) -> Vec<Exponents> {
        if self.is_zero_ring() {
            return Vec::new();
        }
        let live: Vec<usize> = self.live().collect();
        let mut out = Vec::new();
        let mut e = vec![0i32; self.nvars()];
        self.basis_rec(&live, 0, t, window, &mut e, &mut out);
        out.sort();
        out
    }

    fn basis_rec(
        &self,
        live: &[usize],
        k: usize,
        rest: i64,
        w: i32,
        e: &mut Exponents,
        out: &mut Vec<Exponents>,
    ) {
        if k == live.len() {
            if rest == 0 {
                out.push(e.clone());
            }
            return;
        }
        let i = live[k];
        let lo = if self.invertible[i] { -w } else { 0 };
        for x in lo..=w {
            e[i] = x;
            self.basis_rec(live, k + 1, rest - x as i64 * self.degrees[i], w, e, out);
        }
        e[i] = 0;
    }

    pub fn display(&self, p: &Poly) -> String {
        p.symmetric(&self.coeffs).display(&self.names)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.coeffs.modulus(), self.coeffs.prime()) {
            (None, _) => "Z".to_string(),
            (Some(1), _) => return write!(f, "0"),
            (Some(_), Some(p)) if self.padic => format!("Z_{p}"),
            (Some(m), _) => format!("Z/{m}"),
        };
        let gens: Vec<String> = self
            .live()
            .map(|i| {
                if self.invertible[i] {
                    format!("{}^±1", self.names[i])
                } else {
                    self.names[i].clone()
                }
            })
            .collect();
        if gens.is_empty() {
            write!(f, "{base}")
        } else {
            write!(f, "{base}[{}]", gens.join(", "))
        }
    }
}
