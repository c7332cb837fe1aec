//! Push the representation `M_fig3` of the six-vertex algebra down to its
//! skew group algebra, print the block matrices with their fibers, and
//! compare with the printed module `F_fig4` after changing to its arrow basis.

use skewquiver::format::{module_block, parse_input, parse_matching, pull_back};
use skewquiver::pushdown::pushdown_module;
use skewquiver::rep::is_isomorphic;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

fn data(name: &str) -> std::io::Result<String> {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR")))
}

fn main() -> anyhow::Result<()> {
    let doc = parse_input(&data("fig1.skw")?)?;
    let alg = doc.algebra()?;
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    let m = doc.module(&alg, "M_fig3")?;
    let pushed = pushdown_module(&pres, &m);
    for (u, fiber) in pushed.fibers.iter().enumerate() {
        let names: Vec<&str> = fiber.iter().map(|&x| alg.quiver().vertex_name(x)).collect();
        println!("{} <- {}", pres.quiver.vertex_name(u), names.join(" + "));
    }
    print!("{}", module_block(&pres.quiver, "F_M", &pushed.module));

    let fig2 = parse_input(&data("fig2.skw")?)?;
    let figure = fig2.algebra()?;
    let matching = parse_matching(&data("fig2.match")?)?;
    let moved =
        pull_back(&figure, &pres.algebra, &matching, &pushed.module).map_err(anyhow::Error::msg)?;
    let printed = fig2.module(&figure, "F_fig4")?;
    println!("equal to the printed matrices: {}", moved == printed);
    println!(
        "isomorphic to the printed module: {}",
        is_isomorphic(&figure, &moved, &printed)
    );
    Ok(())
}
