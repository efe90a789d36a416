use crate::arith::{is_prime, Poly};
use crate::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec};
use crate::moduli::{c_matrix, Perturbation};
use crate::thh::{
    default_q_order, extension_from_height1, kn_conjectural_terms, kn_extension_system, kn_spec,
    ExtensionSystem,
};

use super::CliError;

pub const PRESETS: [&str; 6] = ["ku2", "kup", "k1", "kn", "moore", "bokstedt-kn"];

/// Spec and extension data for a named computation.
pub struct Problem {
    pub spec: QuotientSpec,
    pub ext: ExtensionSystem,
}

pub struct PresetOptions {
    pub prime: Option<u64>,
    pub height: Option<u32>,
    pub cmatrix: Option<i64>,
    pub conjectural: bool,
    pub q_order: Option<u32>,
    pub precision: u32,
}

pub fn check_prime(p: u64, odd: bool) -> Result<u64, CliError> {
    if !is_prime(p) {
        return Err(CliError::usage(format!("--prime: {p} is not prime")));
    }
    if odd && p == 2 {
        return Err(CliError::usage("--prime: this preset needs an odd prime"));
    }
    Ok(p)
}

fn ku_spec(p: u64) -> QuotientSpec {
    QuotientSpec {
        ring: GradedRingSpec::new(BaseRing::Integers, vec![Generator::new("u", 2, true)]),
        sequence: vec![p.to_string()],
    }
}

/// `KU/p` with `C = [c u]`.
fn ku_problem(p: u64, c: i64, q_order: u32, precision: u32) -> Result<Problem, CliError> {
    let spec = ku_spec(p);
    let pert = Perturbation::new(&spec)?;
    let ring = pert.ring().clone();
    let u = Poly::var(ring.nvars(), 0, &ring.coeffs).scale(c as i128, &ring.coeffs);
    let cm = c_matrix(&pert, &[u])?;
    let ext = extension_from_height1(&spec, &cm, q_order, precision)?;
    Ok(Problem { spec, ext })
}

pub fn preset_problem(name: &str, o: &PresetOptions) -> Result<Problem, CliError> {
    match name {
        "ku2" => {
            if o.prime.is_some_and(|p| p != 2) {
                return Err(CliError::usage("--prime: the ku2 preset is at p = 2"));
            }
            ku_problem(
                2,
                1,
                o.q_order.unwrap_or(default_q_order(2, 1)),
                o.precision,
            )
        }
        "kup" => {
            let p = check_prime(o.prime.unwrap_or(3), false)?;
            let c = o.cmatrix.ok_or_else(|| {
                CliError::usage("--cmatrix: the kup preset needs the 1x1 matrix entry c")
            })?;
            ku_problem(
                p,
                c,
                o.q_order.unwrap_or(default_q_order(p, 1)),
                o.precision,
            )
        }
        "k1" => {
            let p = check_prime(o.prime.unwrap_or(3), true)?;
            let nq = o.q_order.unwrap_or(default_q_order(p, 1));
            let ext = kn_extension_system(1, p, &[], nq, o.precision)?;
            Ok(Problem {
                spec: kn_spec(1, p, o.precision),
                ext,
            })
        }
        "kn" => {
            let p = check_prime(o.prime.unwrap_or(3), true)?;
            let n = o.height.unwrap_or(2);
            if n == 0 {
                return Err(CliError::usage("--height: must be at least 1"));
            }
            let nq = o.q_order.unwrap_or(default_q_order(p, n));
            let higher = if o.conjectural {
                kn_conjectural_terms(n, p)
            } else {
                Vec::new()
            };
            let ext = kn_extension_system(n, p, &higher, nq, o.precision)?;
            Ok(Problem {
                spec: kn_spec(n, p, o.precision),
                ext,
            })
        }
        "moore" | "bokstedt-kn" => Err(CliError::usage(format!(
            "--preset: {name} does not describe an extension problem (use the {} verb)",
            if name == "moore" {
                "obstruction"
            } else {
                "bokstedt"
            }
        ))),
        other => Err(CliError::usage(format!(
            "--preset: unknown preset '{other}' (expected one of {})",
            PRESETS.join(", ")
        ))),
    }
}
