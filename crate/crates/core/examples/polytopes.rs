//! Face lattices of the associahedra and cyclohedra.

use thh_core::polytopes::{
    cyclic_kn_copies, enumerate_faces, euler_char_boundary, f_vector, PolytopeKind,
};

fn main() -> thh_core::Result<()> {
    for n in 3..=6 {
        let k = f_vector(PolytopeKind::Associahedron, n)?;
        let w = f_vector(PolytopeKind::Cyclohedron, n)?;
        println!("n = {n}: f(K) = {k:?}, f(W) = {w:?}");
    }
    println!(
        "chi(dK_5) = {}",
        euler_char_boundary(PolytopeKind::Associahedron, 5)?
    );

    for face in enumerate_faces(PolytopeKind::Cyclohedron, 3, 1)? {
        println!("  {face}");
    }
    // the facets of W_4 that are copies of K_4
    for c in cyclic_kn_copies(4)? {
        println!("  K_4 copy: {c}");
    }
    Ok(())
}
