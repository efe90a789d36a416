//! Perturbed multiplications on a quotient, their associativity and C-matrix.

use thh_core::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec};
use thh_core::moduli::*;

fn main() -> thh_core::Result<()> {
    let spec = QuotientSpec {
        ring: GradedRingSpec::new(
            BaseRing::Integers,
            vec![Generator::new("u", 2, true), Generator::new("w", 0, false)],
        ),
        sequence: vec!["3".into(), "w".into()],
    };
    let mut pert = Perturbation::new(&spec)?;
    pert.set_str(&[1], &[2], "u")?;
    let table = multiplication_from_perturbation(&pert)?;
    println!("associative: {}", is_associative(&table).associative);

    let zero = thh_core::arith::Poly::zero(pert.ring().nvars());
    let c = c_matrix(&pert, &[zero.clone(), zero])?;
    println!(
        "C = {:?}, invertible: {}",
        c.to_strings(),
        c.is_invertible()
    );

    pert.set_str(&[1, 2], &[1, 2], "u^2")?;
    let table = multiplication_from_perturbation(&pert)?;
    if let Some(w) = is_associative(&table).witness {
        println!("witness: {w}");
    }

    let o = obstruction_degree(ObstructionKind::AnStructure, 0, 3, Ambient::Sphere)?;
    println!(
        "Moore spectrum at p = 3: obstruction in degree {}",
        o.degree
    );
    Ok(())
}
