use serde::{Deserialize, Serialize};

use crate::arith::Poly;
use crate::error::{domain, Result};
use crate::graded::Ring;

use super::chart::q_name;
use super::extension::{classify, jacobian_invertible, ExtensionSystem, UnitClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionKind {
    Free,
    CompletedBase,
    Unresolved,
}

/// One Weierstrass step: `q_k^order` expressed in lower powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub variable: String,
    pub order: u32,
    pub relation: String,
}

/// `π_* THH_R(R/I)^∧` after resolving the extension problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedCohomology {
    pub kind: ResolutionKind,
    /// The completed base `R_*`.
    pub base: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    pub basis: Vec<String>,
    pub relations: Vec<String>,
    pub steps: Vec<EliminationStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub tags: Vec<String>,
    pub q_order: u32,
    pub precision: u32,
}

impl ResolvedCohomology {
    pub fn same_answer(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank && self.basis == other.basis
    }
}

pub(crate) fn base_ring(ext: &ExtensionSystem) -> Ring {
    let b = ext.base_vars;
    Ring {
        names: ext.ring.names[..b].to_vec(),
        degrees: ext.ring.degrees[..b].to_vec(),
        invertible: ext.ring.invertible[..b].to_vec(),
        killed: ext.ring.killed[..b].to_vec(),
        coeffs: ext.ring.coeffs,
        padic: ext.ring.padic,
        prime: ext.ring.prime,
    }
}

struct Eliminated {
    k: usize,
    order: u32,
    h: Poly,
}

/// Resolves `R_*[[q_1,…,q_m]]/(x_i - f_i)`.
///
/// An invertible linear part gives the completed base. Otherwise the
/// relations are eliminated in the order `q_m, …, q_1` by Weierstrass
/// preparation; each must have a unit coefficient on a pure power of its own
/// variable once the earlier eliminations are substituted.
pub fn resolve_cohomology(ext: &ExtensionSystem) -> Result<ResolvedCohomology> {
    ext.validate()?;
    let m = ext.m();
    let names = ext.q_names().to_vec();
    let mut out = ResolvedCohomology {
        kind: ResolutionKind::CompletedBase,
        base: base_ring(ext).to_string(),
        rank: Some(1),
        basis: vec!["1".into()],
        relations: Vec::new(),
        steps: Vec::new(),
        reason: None,
        tags: ext.tags.iter().cloned().collect(),
        q_order: ext.q_order,
        precision: ext.precision,
    };
    if m == 0 {
        return Ok(out);
    }
    let jac = jacobian_invertible(ext);
    let mut done: Vec<Eliminated> = Vec::new();
    for k in (0..m).rev() {
        let g = reduce_by(ext, &done, &ext.relation(k))?;
        let var = &names[k];
        if let Some(l) = (k + 1..m).find(|&l| g.terms().any(|(e, _)| e[ext.q_var(l)] != 0)) {
            return Ok(unresolved(
                out,
                format!(
                    "relation for x = {} still involves {} after elimination: {}",
                    ext.display(&ext.x[k]),
                    names[l],
                    ext.display(&g)
                ),
            ));
        }
        let mut found = None;
        for e in 0..=ext.q_order {
            let c = pure_coefficient(ext, &g, k, e);
            match classify(ext, &c) {
                UnitClass::Nilpotent => continue,
                UnitClass::Unit(u) => {
                    found = Some((e, u));
                    break;
                }
                UnitClass::Undecided => {
                    return Ok(unresolved(
                        out,
                        format!(
                            "cannot decide whether the coefficient {} of {var}^{e} is a unit",
                            ext.display(&c)
                        ),
                    ))
                }
            }
        }
        let Some((order, u)) = found else {
            return Ok(unresolved(
                out,
                format!(
                    "relation for x = {} reduces to {} with no unit coefficient on a power of {var} up to order {}",
                    ext.display(&ext.x[k]),
                    ext.display(&g),
                    ext.q_order
                ),
            ));
        };
        let h = weierstrass(ext, &g, k, order, &u)?;
        let lhs = q_name(&names, &unit_power(m, k, order));
        out.steps.push(EliminationStep {
            variable: var.clone(),
            order,
            relation: format!("{lhs} = {}", ext.display(&h)),
        });
        done.push(Eliminated { k, order, h });
    }
    let orders: Vec<u32> = (0..m)
        .map(|k| done.iter().find(|d| d.k == k).unwrap().order)
        .collect();
    let rank: u64 = orders.iter().map(|&e| e as u64).product();
    out.relations = out.steps.iter().map(|s| s.relation.clone()).collect();
    if rank == 1 || jac {
        out.kind = ResolutionKind::CompletedBase;
        out.rank = Some(1);
        out.basis = vec!["1".into()];
    } else {
        out.kind = ResolutionKind::Free;
        out.rank = Some(rank);
        out.basis = basis(&names, &orders);
    }
    Ok(out)
}

fn unresolved(mut out: ResolvedCohomology, reason: String) -> ResolvedCohomology {
    out.kind = ResolutionKind::Unresolved;
    out.rank = None;
    out.basis.clear();
    out.relations = out.steps.iter().map(|s| s.relation.clone()).collect();
    out.reason = Some(reason);
    out
}

fn unit_power(m: usize, k: usize, e: u32) -> Vec<u32> {
    (0..m).map(|i| if i == k { e } else { 0 }).collect()
}

fn basis(names: &[String], orders: &[u32]) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; orders.len()];
    loop {
        out.push(q_name(names, &cur));
        let mut i = 0;
        loop {
            if i == orders.len() {
                out.sort_by_key(|s| s.len());
                return out;
            }
            cur[i] += 1;
            if cur[i] < orders[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Coefficient of `q_k^e` with all lower `q` variables set to zero.
fn pure_coefficient(ext: &ExtensionSystem, g: &Poly, k: usize, e: u32) -> Poly {
    let mut c = Poly::zero(ext.nvars());
    for (x, v) in g.terms() {
        let ok = (0..ext.m()).all(|l| {
            let ex = x[ext.q_var(l)];
            if l == k {
                ex == e as i32
            } else {
                ex == 0
            }
        });
        if ok {
            let mut base = x.clone();
            base[ext.q_var(k)] = 0;
            c.add_term(base, v, ext.coeffs());
        }
    }
    c
}

fn split(ext: &ExtensionSystem, g: &Poly, k: usize, e: u32) -> (Poly, Poly) {
    let v = ext.q_var(k);
    let low = g.filter(|x, _| x[v] < e as i32);
    let mut high = Poly::zero(ext.nvars());
    for (x, c) in g.terms() {
        if x[v] >= e as i32 {
            let mut y = x.clone();
            y[v] -= e as i32;
            high.add_term(y, c, ext.coeffs());
        }
    }
    (low, high)
}

fn iteration_cap(ext: &ExtensionSystem) -> u32 {
    (ext.q_order + 2) * (ext.precision + 2)
}

/// `q_k^e = h` with `h` of `q_k`-degree below `e`, from `g = A + q_k^e B`
/// with `B` invertible: `q_k^e = -B^{-1} A`, reduced by repeated substitution.
fn weierstrass(ext: &ExtensionSystem, g: &Poly, k: usize, e: u32, u: &Poly) -> Result<Poly> {
    let (a, b) = split(ext, g, k, e);
    let u_inv = ext.ring.unit_inverse(u).expect("classified as a unit");
    let one = ext.ring.one();
    let t = ext.truncate(&one.sub(&ext.mul(&u_inv, &b), ext.coeffs()));
    let mut b_inv = one.clone();
    let mut power = one;
    let mut steps = 0;
    loop {
        power = ext.mul(&power, &t);
        if power.is_zero() {
            break;
        }
        b_inv = b_inv.add(&power, ext.coeffs());
        steps += 1;
        if steps > iteration_cap(ext) {
            return domain("inverse series did not converge within the truncation");
        }
    }
    let b_inv = ext.mul(&u_inv, &b_inv);
    let s = ext.mul(&b_inv, &a).neg(ext.coeffs());
    substitute(ext, &s, k, e, &s)
}

/// Replaces `q_k^{e+r}` by `q_k^r h` until every term has `q_k`-degree below `e`.
fn substitute(ext: &ExtensionSystem, g: &Poly, k: usize, e: u32, h: &Poly) -> Result<Poly> {
    let mut cur = ext.truncate(g);
    for _ in 0..=iteration_cap(ext) {
        let (low, high) = split(ext, &cur, k, e);
        if high.is_zero() {
            return Ok(low);
        }
        cur = ext.truncate(&low.add(&ext.mul(&high, h), ext.coeffs()));
    }
    domain("substitution did not converge within the truncation")
}

fn reduce_by(ext: &ExtensionSystem, done: &[Eliminated], g: &Poly) -> Result<Poly> {
    let mut cur = ext.truncate(g);
    for d in done {
        cur = substitute(ext, &cur, d.k, d.order, &d.h)?;
    }
    Ok(cur)
}

/// Resolves at the given truncation and again at `q_order + 2`,
/// `precision + 4`, reporting whether the answers agree.
pub fn resolve_with_stability(
    build: impl Fn(u32, u32) -> Result<ExtensionSystem>,
    q_order: u32,
    precision: u32,
) -> Result<(ResolvedCohomology, bool)> {
    let a = resolve_cohomology(&build(q_order, precision)?)?;
    let b = resolve_cohomology(&build(q_order + 2, precision + 4)?)?;
    let stable = a.same_answer(&b);
    Ok((a, stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec};
    use crate::thh::extension::{kn_conjectural_terms, kn_extension_system};

    #[test]
    fn k1_is_free_of_rank_p_minus_one() {
        for p in [3u64, 5] {
            let ext = kn_extension_system(1, p, &[], 12, 16).unwrap();
            let r = resolve_cohomology(&ext).unwrap();
            assert_eq!(r.kind, ResolutionKind::Free);
            assert_eq!(r.rank, Some(p - 1));
            assert_eq!(r.basis.len() as u64, p - 1);
            assert_eq!(r.base, format!("Z_{p}[v1^±1]"));
            assert_eq!(r.basis[1], "q0");
        }
    }

    #[test]
    fn k1_relation_solves_for_the_top_power() {
        let ext = kn_extension_system(1, 3, &[], 12, 16).unwrap();
        let r = resolve_cohomology(&ext).unwrap();
        assert_eq!(r.relations, vec!["q0^2 = -3*v1^-1"]);
    }

    #[test]
    fn ku2_is_the_completed_base() {
        let spec = QuotientSpec::new(
            GradedRingSpec::new(BaseRing::Integers, vec![Generator::new("u", 2, true)]),
            &["2"],
        );
        let mut ext = ExtensionSystem::zero(&spec, None, 12, 16).unwrap();
        ext.set(0, "u*q").unwrap();
        let r = resolve_cohomology(&ext).unwrap();
        assert_eq!(r.kind, ResolutionKind::CompletedBase);
        assert_eq!(r.base, "Z_2[u^±1]");
        assert_eq!(r.relations, vec!["q = 2*u^-1"]);
    }

    #[test]
    fn kn_leading_terms_stop_after_one_step() {
        let ext = kn_extension_system(2, 3, &[], 12, 16).unwrap();
        let r = resolve_cohomology(&ext).unwrap();
        assert_eq!(r.kind, ResolutionKind::Unresolved);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].order, 2);
        let reason = r.reason.unwrap();
        assert!(reason.contains("v1*q0^2"), "{reason}");
    }

    #[test]
    fn kn_with_pure_powers_is_triangular() {
        let build = |nq, n| kn_extension_system(2, 3, &kn_conjectural_terms(2, 3), nq, n);
        let (r, stable) = resolve_with_stability(build, 12, 16).unwrap();
        assert_eq!(r.kind, ResolutionKind::Free);
        assert_eq!(r.rank, Some(16));
        assert!(stable);
        assert_eq!(r.tags, vec![crate::thh::CONJECTURAL]);
    }
}
