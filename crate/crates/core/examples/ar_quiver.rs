//! Knit the AR quivers of both algebras, compare them with the transcribed
//! golden files and write the first one as a DOT graph to the temp directory.

use skewquiver::ar::{knit_ar_quiver, KnitCaps};
use skewquiver::dot::ar_quiver_dot;
use skewquiver::format::{compare_golden, parse_golden, parse_input};

fn data(name: &str) -> std::io::Result<String> {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR")))
}

fn main() -> anyhow::Result<()> {
    for (file, golden) in [("fig5.skw", "fig7.ar"), ("fig6.skw", "fig8.ar")] {
        let alg = parse_input(&data(file)?)?.algebra()?;
        let ar = knit_ar_quiver(&alg, KnitCaps::default())?;
        let report = compare_golden(&parse_golden(&data(golden)?)?, alg.quiver(), &ar, &|s| {
            s.to_string()
        });
        println!(
            "{file}: {} indecomposables, {} irreducible maps, golden {golden}: {}",
            ar.len(),
            ar.arrow_count(),
            report.holds()
        );
        for (i, v) in ar.vertices.iter().enumerate() {
            let tau = ar.tau[i]
                .map(|t| ar.vertices[t].label.clone())
                .unwrap_or_else(|| "-".into());
            println!("  {:<16} τ = {tau}", v.label);
        }
        if file == "fig5.skw" {
            let path = std::env::temp_dir().join("ar_fig5.dot");
            std::fs::write(&path, ar_quiver_dot(&ar, "fig5"))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
