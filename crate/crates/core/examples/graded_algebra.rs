//! Koszul complexes, Tor over a regular quotient and Ext/Tor over an exterior algebra.

use thh_core::graded::*;

fn main() -> thh_core::Result<()> {
    let e2 = GradedRingSpec::new(
        BaseRing::PAdicTruncated {
            p: 3,
            n: DEFAULT_PRECISION,
        },
        vec![
            Generator::new("v1", 4, false),
            Generator::new("v2", 16, true),
        ],
    );
    let spec = QuotientSpec::new(e2, &["3", "v1"]);
    let k = koszul_complex(&spec)?;
    println!(
        "Koszul ranks {:?}, d^2 = 0: {}",
        k.ranks(),
        k.d_squared_is_zero()
    );

    let tor = tor_quotient(&spec)?;
    println!("Tor: {:?} over {}", tor.kind, tor.base);
    for g in &tor.generators {
        println!("  {} in bidegree ({}, {})", g.name, g.s, g.t);
    }

    let ext = ext_over_exterior(&tor, 3)?;
    let dual = tor_over_exterior(&tor, 3)?;
    println!("Ext ranks {:?}", ext.ranks(3));
    println!("Tor ranks {:?}", dual.ranks(3));
    Ok(())
}
