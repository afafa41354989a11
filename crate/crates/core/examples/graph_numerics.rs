//! Intersection numerics of dual graphs: Dynkin diagrams and the graphs of
//! the E7-case contractions.

use cdv::graph::{
    contract_numerics, intersection_matrix, multiplicity, theorem_graph, DualGraph, Dynkin,
};

fn main() -> cdv::Result<()> {
    for k in [
        Dynkin::A(4),
        Dynkin::D(6),
        Dynkin::E(6),
        Dynkin::E(7),
        Dynkin::E(8),
    ] {
        let g = DualGraph::dynkin(k)?;
        println!("{k:?}: det = {}", intersection_matrix(&g).matrix.det());
    }
    for h in ["E6", "D5", "D4"] {
        let g = theorem_graph(h)?;
        let n = contract_numerics(&g)?;
        println!(
            "H = {h}: C^2 = {}, K.C = {}, multiplicity {}, discrepancies {:?}",
            n.c_squared,
            n.k_dot_c,
            multiplicity(&g)?,
            n.discrepancies
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
