#![allow(dead_code)]

use skewquiver::format::{parse_input, parse_matching, InputDocument, Matching};
use skewquiver::quiver::BoundAlgebra;
use skewquiver::skew::{SkewAlgebra, SkewPresentation};

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn doc(name: &str) -> InputDocument {
    parse_input(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn matching(name: &str) -> Matching {
    parse_matching(&data(name)).unwrap()
}

pub fn presentation(d: &InputDocument) -> (BoundAlgebra, SkewPresentation) {
    let alg = d.algebra().unwrap();
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), d.action.clone()).unwrap(),
        d.length_bound,
    )
    .unwrap();
    (alg, pres)
}
