//! Push almost split sequences down to the skew group algebra and report
//! how many sequences each one becomes and which summands they share.

use skewquiver::ar::{knit_ar_quiver, pushdown_sequence, sequence_stabilizer, KnitCaps};
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
    let lam = knit_ar_quiver(&alg, KnitCaps::default())?;
    let skew = knit_ar_quiver(&pres.algebra, KnitCaps::default())?;
    for t in (0..lam.len()).filter(|&t| lam.meshes[t].is_some()) {
        let glued = pushdown_sequence(&pres, &lam, &skew, t)?;
        let stab = sequence_stabilizer(&pres, &lam, t)?;
        let z: Vec<&str> = glued
            .gluing
            .iter()
            .map(|&(i, _)| skew.vertices[i].label.as_str())
            .collect();
        println!(
            "{:<14} |G_E| = {}  sequences = {}  Z = [{}]  assembles = {}",
            lam.vertices[t].label,
            stab.group.len(),
            glued.sequences.len(),
            z.join(", "),
            glued.assembles
        );
    }
    Ok(())
}
