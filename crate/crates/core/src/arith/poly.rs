use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write;

use super::Coeffs;

/// Exponent vector of a Laurent monomial, one slot per generator.
pub type Exponents = Vec<i32>;

/// Sparse Laurent polynomial with exact coefficients.
///
/// The coefficient ring is passed to each arithmetic operation rather than
/// stored, so the same polynomial can be reinterpreted at another precision.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, i128>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128, coeffs: &Coeffs) -> Self {
        Self::monomial(vec![0; nvars], c, coeffs)
    }

    pub fn one(nvars: usize, coeffs: &Coeffs) -> Self {
        Self::constant(nvars, 1, coeffs)
    }

    pub fn monomial(exps: Exponents, c: i128, coeffs: &Coeffs) -> Self {
        let nvars = exps.len();
        let mut p = Poly::zero(nvars);
        p.add_term(exps, c, coeffs);
        p
    }

    /// The generator with index `i`.
    pub fn var(nvars: usize, i: usize, coeffs: &Coeffs) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1, coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, i128)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coeff(&self, exps: &[i32]) -> i128 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// The only term, when the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(&Exponents, i128)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (e, *c))
        } else {
            None
        }
    }

    /// The constant, when the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&x| x == 0))
                .map(|(_, c)| *c),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exps: Exponents, c: i128, coeffs: &Coeffs) {
        debug_assert_eq!(exps.len(), self.nvars);
        let c = coeffs.norm(c);
        if c == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = coeffs.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, coeffs: &Coeffs) -> Poly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c, coeffs);
        }
        out
    }

    pub fn sub(&self, other: &Poly, coeffs: &Coeffs) -> Poly {
        self.add(&other.neg(coeffs), coeffs)
    }

    pub fn neg(&self, coeffs: &Coeffs) -> Poly {
        self.scale(-1, coeffs)
    }

    pub fn scale(&self, k: i128, coeffs: &Coeffs) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), coeffs.mul(c, k), coeffs);
        }
        out
    }

    pub fn mul(&self, other: &Poly, coeffs: &Coeffs) -> Poly {
        let mut out = Poly::zero(self.nvars.max(other.nvars));
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, coeffs.mul(c1, c2), coeffs);
            }
        }
        out
    }

    pub fn pow(&self, n: u32, coeffs: &Coeffs) -> Poly {
        let mut acc = Poly::one(self.nvars, coeffs);
        for _ in 0..n {
            acc = acc.mul(self, coeffs);
        }
        acc
    }

    /// Multiplies every exponent vector by the monomial `exps`.
    pub fn shift(&self, exps: &[i32]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), *c))
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Re-reduces every coefficient in a (possibly smaller) coefficient ring.
    pub fn reduce(&self, coeffs: &Coeffs) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c, coeffs);
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Exponents, i128) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, c)| keep(e, **c))
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Degree of every term, or `Err(())` when the terms disagree.
    /// `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, degrees: &[i64]) -> Result<Option<i64>, ()> {
        let mut deg = None;
        for (e, _) in self.terms() {
            let d: i64 = e.iter().zip(degrees).map(|(&a, &b)| a as i64 * b).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(()),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Coefficients moved to the symmetric range `(-m/2, m/2]`, for display.
    pub fn symmetric(&self, coeffs: &Coeffs) -> Poly {
        match coeffs.modulus() {
            None => self.clone(),
            Some(m) => {
                let mut out = Poly::zero(self.nvars);
                for (e, c) in self.terms() {
                    let c = coeffs.norm(c);
                    let c = if c > m / 2 { c - m } else { c };
                    out.add_term(e.clone(), c, &Coeffs::integers());
                }
                out
            }
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let c = *c;
            let mono = monomial_string(e, names);
            let (neg, mag) = if c < 0 { (true, -c) } else { (false, c) };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (mag, mono.is_empty()) {
                (m, true) => write!(s, "{m}").unwrap(),
                (1, false) => s.push_str(&mono),
                (m, false) => write!(s, "{m}*{mono}").unwrap(),
            }
        }
        s
    }
}

pub(crate) fn monomial_string(e: &[i32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(names[i].clone()),
            x => parts.push(format!("{}^{}", names[i], x)),
        }
    }
    parts.join("*")
}
