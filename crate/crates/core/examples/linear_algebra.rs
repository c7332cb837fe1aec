//! Exact linear algebra over F_p: row reduction, null spaces, inverses and
//! the Jacobson radical of a small algebra given by structure constants.

use skewquiver::field::{Fp, Matrix};
use skewquiver::quiver::{BoundAlgebra, Quiver};

fn main() -> anyhow::Result<()> {
    let f = Fp::new(1009)?;
    let m = Matrix::from_i64_rows(f, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, -1]], 3);
    println!("rank {} det {}", m.rank(), f.signed(m.det()));
    for v in m.nullspace() {
        let shown: Vec<i64> = v.iter().map(|&x| f.signed(x)).collect();
        println!("kernel vector {shown:?}");
    }
    let a = Matrix::from_i64_rows(f, &[vec![2, 1], vec![1, 1]], 2);
    let inv = a.inverse().expect("invertible");
    println!("inverse {:?}", inv.signed_rows());

    let mut q = Quiver::new();
    for v in ["1", "2", "3"] {
        q.add_vertex(v)?;
    }
    q.add_arrow_by_name("a", "1", "2")?;
    q.add_arrow_by_name("b", "2", "3")?;
    let alg = BoundAlgebra::build(f, q, vec![], 12)?;
    let rad = alg.structure().radical()?;
    println!(
        "path algebra of A3: dimension {}, radical dimension {}",
        alg.dim(),
        rad.dim()
    );
    Ok(())
}
