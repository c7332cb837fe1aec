//! Decompose pushed-down modules: a stable simple splits into one summand
//! per character, while an unstable module stays indecomposable.

use skewquiver::format::parse_input;
use skewquiver::pushdown::{decompose_pushdown, pushdown_module, stabilizer};
use skewquiver::rep::decompose_with_multiplicities;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn main() -> anyhow::Result<()> {
    let text = std::fs::read_to_string(format!("{}/data/fig5.skw", env!("CARGO_MANIFEST_DIR")))?;
    let doc = parse_input(&text)?;
    let alg = doc.algebra()?;
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    for name in ["S2", "M32", "M12", "M134_22"] {
        let m = doc.module(&alg, name)?;
        let stable = stabilizer(&pres, &m).len() == pres.skew.group_order();
        let pushed = pushdown_module(&pres, &m).module;
        let parts: Vec<String> = decompose_with_multiplicities(&pres.algebra, &pushed)
            .iter()
            .map(|(s, k)| format!("{} x{k}", s.label(&pres.algebra)))
            .collect();
        println!(
            "F({}) [{}]: {}",
            m.label(&alg),
            if stable { "stable" } else { "unstable" },
            parts.join(", ")
        );
        if stable {
            let split = decompose_pushdown(&pres, &m)?;
            for (chi, s) in &split.summands {
                println!("  character {}: {}", chi.label(), s.label(&pres.algebra));
            }
        }
    }
    Ok(())
}
