//! Hidden extensions in THH of K(1) and KU/2, in cohomology and homology.

use thh_core::thh::*;

fn main() -> thh_core::Result<()> {
    let ext = kn_extension_system(1, 3, &[], default_q_order(3, 1), 16)?;
    let chart = e2_chart_named(&kn_spec(1, 3, 16), Variant::Cohomology, 3, ext.q_names())?;
    println!("{}", chart.to_text());

    let r = resolve_cohomology(&ext)?;
    println!(
        "{:?} of rank {} over {}: {}",
        r.kind,
        r.rank.unwrap_or(0),
        r.base,
        r.relations.join(", ")
    );

    let h = resolve_homology(&ext, default_filtration(&ext), 12)?;
    for t in &h.towers {
        println!("  degree {}: {} on {}", t.degree, t.summand, t.generator);
    }

    // K(2) at p = 3 needs extra input beyond the leading terms
    let lead = resolve_cohomology(&kn_extension_system(2, 3, &[], default_q_order(3, 2), 16)?)?;
    println!("K(2), leading terms: {:?}", lead.kind);
    let full = kn_extension_system(2, 3, &kn_conjectural_terms(2, 3), default_q_order(3, 2), 16)?;
    let r = resolve_cohomology(&full)?;
    println!(
        "K(2), with conjectural terms: rank {:?}, tags {:?}",
        r.rank, r.tags
    );
    Ok(())
}
