//! Check the Hom-space identities of the pushdown on every pair of
//! indecomposables, and print the block pattern of Hom(F S2, F P1) over the
//! Kronecker algebra with its Z3 action.

use skewquiver::ar::{knit_ar_quiver, KnitCaps};
use skewquiver::format::parse_input;
use skewquiver::pushdown::{hom_block_pattern, verify_semi_covering};
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
    let ar = knit_ar_quiver(&alg, KnitCaps::default())?;
    let mut by_case = std::collections::BTreeMap::new();
    for m in &ar.modules {
        for n in &ar.modules {
            let r = verify_semi_covering(&pres, m, n);
            let e = by_case.entry(r.case.clone()).or_insert((0, 0));
            e.0 += 1;
            e.1 += usize::from(r.holds());
        }
    }
    for (case, (total, ok)) in by_case {
        println!("{case}: {ok}/{total} pairs hold");
    }

    let kr = parse_input(&data("kronecker_z3.skw")?)?;
    let kalg = kr.algebra()?;
    let kpres = SkewPresentation::build(
        SkewAlgebra::new(kalg.clone(), kr.action.clone())?,
        kr.length_bound,
    )?;
    let pattern = hom_block_pattern(&kpres, &kr.module(&kalg, "S2")?, &kr.module(&kalg, "P1")?)?;
    println!("dim Hom blocks between character summands:");
    for row in pattern {
        println!("  {row:?}");
    }
    Ok(())
}
