//! A free action: every stabilizer is trivial, the skew quiver has one
//! vertex per orbit and the basic algebra has dimension dim Λ / |G|.

use skewquiver::format::parse_input;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn main() -> anyhow::Result<()> {
    let text = std::fs::read_to_string(format!(
        "{}/data/free_action_a3.skw",
        env!("CARGO_MANIFEST_DIR")
    ))?;
    let doc = parse_input(&text)?;
    let alg = doc.algebra()?;
    let n = doc.action.group.order();
    let orbits = doc.action.orbits(alg.quiver(), alg.field());
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    println!(
        "stabilizer orders: {:?}",
        orbits.stabilizers.iter().map(Vec::len).collect::<Vec<_>>()
    );
    println!(
        "|Q_0| = {}, |Q_G0| = {}, |G| = {n}",
        alg.quiver().num_vertices(),
        pres.quiver.num_vertices()
    );
    println!(
        "dim Λ = {}, dim basic skew algebra = {}",
        alg.dim(),
        pres.algebra.dim()
    );
    Ok(())
}
