//! Skew by G, re-read the emitted presentation, skew again by the dual group
//! and recover the original quiver up to isomorphism.

use skewquiver::format::{emit_document, parse_input};
use skewquiver::skew::{quiver_isomorphism, SkewAlgebra, SkewPresentation};

fn main() -> anyhow::Result<()> {
    for file in ["fig1.skw", "fig5.skw", "fig2_dual.skw"] {
        let text = std::fs::read_to_string(format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR")))?;
        let doc = parse_input(&text)?;
        let alg = doc.algebra()?;
        let once = SkewPresentation::build(
            SkewAlgebra::new(alg.clone(), doc.action.clone())?,
            doc.length_bound,
        )?;
        let emitted = emit_document(
            once.field(),
            &once.quiver,
            &once.relations,
            Some(&once.dual_action()?),
            &[],
            &[],
        );
        let again = parse_input(&emitted)?;
        let twice = SkewPresentation::build(
            SkewAlgebra::new(again.algebra()?, again.action.clone())?,
            again.length_bound,
        )?;
        let iso = quiver_isomorphism(alg.quiver(), &twice.quiver);
        println!(
            "{file}: {} -> {} -> {} vertices, isomorphic: {}",
            alg.quiver().num_vertices(),
            once.quiver.num_vertices(),
            twice.quiver.num_vertices(),
            iso.is_some()
        );
    }
    Ok(())
}
