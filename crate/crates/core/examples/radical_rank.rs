//! Iterate radical powers of the module category on both sides of the skew
//! construction and print the rank of each.

use skewquiver::ar::{knit_ar_quiver, radical_filtration, KnitCaps};
use skewquiver::format::parse_input;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn main() -> anyhow::Result<()> {
    let text = std::fs::read_to_string(format!("{}/data/fig5.skw", env!("CARGO_MANIFEST_DIR")))?;
    let doc = parse_input(&text)?;
    let alg = doc.algebra()?;
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    for (name, a) in [("Λ", &alg), ("ΛG", &pres.algebra)] {
        let ar = knit_ar_quiver(a, KnitCaps::default())?;
        let filt = radical_filtration(a, &ar, 32)?;
        let dims: Vec<usize> = filt
            .levels
            .iter()
            .map(|l| l.iter().flatten().map(|s| s.dim()).sum())
            .collect();
        println!("{name}: rank {:?}, dim rad^k = {dims:?}", filt.rank().0);
    }
    Ok(())
}
