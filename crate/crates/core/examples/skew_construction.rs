//! Build the basic skew group algebra of the four-vertex algebra with its
//! Z2 action, print the quiver with relations, and confirm it agrees with
//! the hand-drawn five-vertex presentation under the declared matching.

use skewquiver::format::{check_matching, emit_document, parse_input, parse_matching};
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn data(name: &str) -> std::io::Result<String> {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR")))
}

fn main() -> anyhow::Result<()> {
    let doc = parse_input(&data("fig5.skw")?)?;
    let alg = doc.algebra()?;
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    println!(
        "dim Λ = {}, dim ΛG = {}, dim ē(ΛG)ē = {}",
        alg.dim(),
        pres.skew.dim(),
        pres.algebra.dim()
    );
    print!(
        "{}",
        emit_document(
            pres.field(),
            &pres.quiver,
            &pres.relations,
            Some(&pres.dual_action()?),
            &[],
            &[]
        )
    );

    let figure = parse_input(&data("fig6.skw")?)?.algebra()?;
    let report = check_matching(
        &figure,
        &pres.algebra,
        &parse_matching(&data("fig6.match")?)?,
    );
    println!("matches the five-vertex presentation: {}", report.holds());
    Ok(())
}
