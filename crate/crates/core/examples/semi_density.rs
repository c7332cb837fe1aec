//! Every module over the skew group algebra is a summand of a pushed-down
//! module: restrict, push down again and read off the complement.

use skewquiver::ar::{knit_ar_quiver, KnitCaps};
use skewquiver::format::parse_input;
use skewquiver::pushdown::semi_dense_witness;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn main() -> anyhow::Result<()> {
    let text = std::fs::read_to_string(format!("{}/data/fig5.skw", env!("CARGO_MANIFEST_DIR")))?;
    let doc = parse_input(&text)?;
    let alg = doc.algebra()?;
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    let skew = knit_ar_quiver(&pres.algebra, KnitCaps::default())?;
    for n in skew.modules.iter().take(8) {
        let w = semi_dense_witness(&pres, n)?;
        let rest: Vec<String> = w
            .complement
            .iter()
            .map(|c| c.label(&pres.algebra))
            .collect();
        println!(
            "{:<18} = summand of F({}), complement [{}]",
            n.label(&pres.algebra),
            w.preimage.label(&alg),
            rest.join(", ")
        );
    }
    Ok(())
}
