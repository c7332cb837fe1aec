//! Run the gentle and skew-gentle recognizers on the bundled examples.

use skewquiver::format::parse_input;
use skewquiver::gentle::{is_gentle, is_skew_gentle};

fn main() -> anyhow::Result<()> {
    for file in ["gentle_a4.skw", "fig6.skw", "a2_specialloop.skw"] {
        let text = std::fs::read_to_string(format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR")))?;
        let doc = parse_input(&text)?;
        let report = if doc.special.is_empty() {
            is_gentle(&doc.quiver, doc.field, &doc.relations)
        } else {
            is_skew_gentle(&doc.quiver, doc.field, &doc.relations, &doc.special)
        };
        println!("{file}: {}", if report.holds { "passes" } else { "fails" });
        for v in &report.violations {
            println!("  {}: {}", v.clause, v.witness);
        }
    }
    Ok(())
}
