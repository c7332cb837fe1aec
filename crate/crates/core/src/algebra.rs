//! Finite-dimensional associative algebras given by structure constants.

use crate::field::{axpy, is_zero_vec, Fp, LinalgError, Matrix, Subspace};

/// Multiplication table `b_i * b_j = Σ_k table[i][j][k] b_k`, stored densely.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    f: Fp,
    dim: usize,
    table: Vec<u32>,
}

impl StructureConstants {
    /// `products[i * dim + j]` is the coordinate vector of `b_i * b_j`.
    pub fn new(f: Fp, dim: usize, products: Vec<Vec<u32>>) -> Self {
        assert_eq!(products.len(), dim * dim, "structure constant count");
        let mut table = Vec::with_capacity(dim * dim * dim);
        for v in products {
            assert_eq!(v.len(), dim, "product vector length");
            table.extend(v);
        }
        StructureConstants { f, dim, table }
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.f;
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                axpy(f, &mut out, f.mul(xi, yj), self.product_of_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `y ↦ x y` acting on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![0u32; self.dim];
                e[j] = 1;
                self.mul(x, &e)
            })
            .collect();
        Matrix::from_columns(self.f, self.dim, &cols)
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_of_basis(i, j).to_vec();
                for k in 0..d {
                    let mut ek = vec![0u32; d];
                    ek[k] = 1;
                    let left = self.mul(&ij, &ek);
                    let mut ei = vec![0u32; d];
                    ei[i] = 1;
                    let jk = self.product_of_basis(j, k).to_vec();
                    let right = self.mul(&ei, &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The unit element, if one exists.
    pub fn identity(&self) -> Option<Vec<u32>> {
        // Solve Σ_i x_i b_i b_j = b_j and b_j Σ_i x_i b_i = b_j for all j.
        let d = self.dim;
        let mut a = Matrix::zeros(self.f, 2 * d * d, d);
        let mut b = Matrix::zeros(self.f, 2 * d * d, 1);
        for j in 0..d {
            for i in 0..d {
                let l = self.product_of_basis(i, j);
                let r = self.product_of_basis(j, i);
                for k in 0..d {
                    a.set(j * d + k, i, l[k]);
                    a.set(d * d + j * d + k, i, r[k]);
                }
            }
            b.set(j * d + j, 0, 1);
            b.set(d * d + j * d + j, 0, 1);
        }
        a.solve(&b).ok().flatten().map(|x| x.column(0))
    }

    /// Jacobson radical as the kernel of the trace form `(x, y) ↦ tr(L_{xy})`.
    pub fn radical(&self) -> Result<Subspace, LinalgError> {
        let d = self.dim;
        if (self.f.p() as usize) <= d {
            return Err(LinalgError::FieldTooSmall {
                p: self.f.p(),
                dim: d,
            });
        }
        let f = self.f;
        let traces: Vec<u32> = (0..d)
            .map(|k| (0..d).fold(0, |acc, m| f.add(acc, self.product_of_basis(k, m)[m])))
            .collect();
        let mut form = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.product_of_basis(i, j);
                let t = prod
                    .iter()
                    .zip(&traces)
                    .fold(0, |acc, (a, b)| f.mul_add(acc, *a, *b));
                form.set(i, j, t);
            }
        }
        let ns = form.transpose().nullspace();
        Ok(Subspace::from_vectors(f, d, &ns))
    }

    /// Lift an idempotent of `A/rad A` (given by any representative) to `A`.
    pub fn lift_idempotent(&self, e_bar: &[u32]) -> Result<Vec<u32>, LinalgError> {
        let f = self.f;
        let rad = self.radical()?;
        let sq = self.mul(e_bar, e_bar);
        let defect: Vec<u32> = sq.iter().zip(e_bar).map(|(a, b)| f.sub(*a, *b)).collect();
        if !rad.contains(&defect) {
            return Err(LinalgError::NotIdempotent);
        }
        let mut e = e_bar.to_vec();
        for _ in 0..64 {
            let e2 = self.mul(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.mul(&e2, &e);
            e = e2
                .iter()
                .zip(&e3)
                .map(|(a, b)| f.sub(f.mul(3, *a), f.mul(2, *b)))
                .collect();
        }
        Err(LinalgError::LiftDiverged)
    }

    /// Smallest `k` with `J^k = 0` for the span `J`, or `None` if it never vanishes within `dim + 1` steps.
    pub fn nilpotency_index(&self, j: &Subspace) -> Option<usize> {
        let mut power = j.clone();
        for k in 1..=self.dim + 1 {
            if power.dim() == 0 {
                return Some(k);
            }
            if k == self.dim + 1 {
                break;
            }
            let mut next = Subspace::new(self.f, self.dim);
            for x in power.basis() {
                for y in j.basis() {
                    let z = self.mul(x, y);
                    if !is_zero_vec(&z) {
                        next.insert(&z);
                    }
                }
            }
            power = next;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Fp {
        Fp::new(101).unwrap()
    }

    fn basis(d: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    /// F_p x F_p with idempotent basis.
    fn split_pair() -> StructureConstants {
        let mut prods = vec![vec![0; 2]; 4];
        prods[0] = vec![1, 0];
        prods[3] = vec![0, 1];
        StructureConstants::new(f(), 2, prods)
    }

    /// F_p[t]/(t^2) on basis (1, t).
    fn dual_numbers() -> StructureConstants {
        let prods = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]];
        StructureConstants::new(f(), 2, prods)
    }

    /// Upper triangular 2x2 matrices on basis (E11, E12, E22).
    fn upper_triangular() -> StructureConstants {
        let mut prods = vec![vec![0; 3]; 9];
        prods[0] = vec![1, 0, 0]; // E11 E11
        prods[1] = vec![0, 1, 0]; // E11 E12
        prods[3 + 2] = vec![0, 1, 0]; // E12 E22
        prods[2 * 3 + 2] = vec![0, 0, 1]; // E22 E22
        StructureConstants::new(f(), 3, prods)
    }

    #[test]
    fn semisimple_has_zero_radical() {
        assert_eq!(split_pair().radical().unwrap().dim(), 0);
    }

    #[test]
    fn dual_numbers_radical() {
        let a = dual_numbers();
        let r = a.radical().unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&[0, 1]));
        assert_eq!(a.nilpotency_index(&r), Some(2));
    }

    #[test]
    fn field_too_small() {
        let g = Fp::new(2).unwrap();
        let a = StructureConstants::new(g, 2, vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]]);
        assert!(matches!(
            a.radical(),
            Err(LinalgError::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn lifts() {
        let a = dual_numbers();
        assert_eq!(a.lift_idempotent(&[0, 0]).unwrap(), vec![0, 0]);
        assert_eq!(a.lift_idempotent(&[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(a.lift_idempotent(&[1, 7]).unwrap(), vec![1, 0]);
        assert!(matches!(
            a.lift_idempotent(&[2, 0]),
            Err(LinalgError::NotIdempotent)
        ));
        let u = upper_triangular();
        let e = u.lift_idempotent(&basis(3, 0)).unwrap();
        assert_eq!(u.mul(&e, &e), e);
        assert_eq!(e, vec![1, 0, 0]);
        // E11 + E12 is idempotent too, and maps to the same class
        let e2 = u.lift_idempotent(&[1, 5, 0]).unwrap();
        assert_eq!(u.mul(&e2, &e2), e2);
        let diff: Vec<u32> = e2
            .iter()
            .zip(&e)
            .map(|(a, b)| u.field().sub(*a, *b))
            .collect();
        assert!(u.radical().unwrap().contains(&diff));
    }

    #[test]
    fn identity_and_associativity() {
        let u = upper_triangular();
        assert!(u.is_associative());
        assert_eq!(u.identity().unwrap(), vec![1, 0, 1]);
        let r = u.radical().unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&[0, 1, 0]));
    }
}
