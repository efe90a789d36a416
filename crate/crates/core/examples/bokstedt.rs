//! The Bökstedt spectral sequence for THH(k(n)) in low degrees.

use thh_core::thh::{bokstedt_e2, bokstedt_run};

fn main() -> thh_core::Result<()> {
    let e2 = bokstedt_e2(1, 3, 16)?;
    let e3 = bokstedt_run(&e2)?;
    println!("{}", e3.to_text());
    println!("E2 counts {:?}", e2.counts());
    println!("E3 counts {:?}", e3.counts());
    Ok(())
}
