//! Representations of bound quivers, morphism spaces, twists, submodules,
//! quotients and Krull-Schmidt decomposition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::StructureConstants;
use crate::field::{is_zero_vec, Fp, LinalgError, Matrix, Subspace};
use crate::group::ElementAction;
use crate::quiver::{BoundAlgebra, Path};

const SEED: u64 = 0x5eed_cafe;
const TRIALS: usize = 12;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("expected {expected} vertex spaces and {arrows} arrow maps")]
    WrongShape { expected: usize, arrows: usize },
    #[error("map of arrow `{arrow}` has shape {got:?}, expected {expected:?}")]
    BadMapShape {
        arrow: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("relation {0} does not vanish on the representation")]
    RelationFails(String),
    #[error("the zero module has no endomorphism ring to test")]
    ZeroModule,
    #[error("endomorphism ring is local over an extension field of F_p")]
    NonSplitEndomorphisms,
    #[error("subspace is not stable under the arrow maps")]
    NotSubmodule,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Vertex spaces `F_p^{dims[v]}` and arrow matrices `maps[a]: dims[s(a)] → dims[t(a)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    f: Fp,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, RepError> {
        let m = Representation::unchecked(alg, dims, maps)?;
        for r in alg.relations() {
            let mut acc = Matrix::zeros(m.f, m.dims[r.target()], m.dims[r.source()]);
            for (c, p) in &r.terms {
                acc.add_scaled(*c, &m.path_matrix(p));
            }
            if !acc.is_zero() {
                return Err(RepError::RelationFails(r.display(alg.quiver(), Some(m.f))));
            }
        }
        Ok(m)
    }

    /// Shape checks only.
    pub fn unchecked(
        alg: &BoundAlgebra,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(RepError::WrongShape {
                expected: q.num_vertices(),
                arrows: q.num_arrows(),
            });
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let expected = (dims[a.target], dims[a.source]);
            if (m.rows(), m.cols()) != expected {
                return Err(RepError::BadMapShape {
                    arrow: a.name.clone(),
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        Ok(Representation {
            f: alg.field(),
            dims,
            maps,
        })
    }

    pub fn zero(alg: &BoundAlgebra) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        Representation {
            f,
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    pub fn simple(alg: &BoundAlgebra, v: usize) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation { f, dims, maps }
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Offsets of the vertex spaces inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    /// `M(p)` for a path `p`, composed right to left.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.f, self.dims[p.source]);
        for &a in p.arrows.iter().rev() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of an element of Λ (in basis coordinates) on the total space.
    pub fn element_matrix(&self, alg: &BoundAlgebra, x: &[u32]) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut out = Matrix::zeros(self.f, n, n);
        for (b, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = &alg.basis()[b];
            let block = self.path_matrix(p).scale(c);
            let mut cur = out.submatrix(
                off[p.target],
                self.dims[p.target],
                off[p.source],
                self.dims[p.source],
            );
            cur.add_scaled(1, &block);
            out.set_block(off[p.target], off[p.source], &cur);
        }
        out
    }

    pub fn direct_sum(parts: &[&Representation]) -> Representation {
        assert!(!parts.is_empty(), "direct sum of no summands");
        let f = parts[0].f;
        let nv = parts[0].dims.len();
        let dims = (0..nv)
            .map(|v| parts.iter().map(|m| m.dims[v]).sum())
            .collect();
        let maps = (0..parts[0].maps.len())
            .map(|a| {
                Matrix::block_diag(
                    f,
                    &parts.iter().map(|m| m.maps[a].clone()).collect::<Vec<_>>(),
                )
            })
            .collect();
        Representation { f, dims, maps }
    }

    /// `^gM`: `^gM(x) = M(gx)`, and `^gM(a) = c·M(b)` where `g(a) = c·b`.
    pub fn twist(&self, act: &ElementAction) -> Representation {
        let dims = act.vertex_perm.iter().map(|&w| self.dims[w]).collect();
        let maps = act
            .arrow_map
            .iter()
            .map(|&(c, b)| self.maps[b].scale(c))
            .collect();
        Representation {
            f: self.f,
            dims,
            maps,
        }
    }

    /// Conjugate by invertible per-vertex matrices: `N(a) = P_t M(a) P_s⁻¹`.
    pub fn conjugate(&self, alg: &BoundAlgebra, p: &[Matrix]) -> Representation {
        let inv: Vec<Matrix> = p
            .iter()
            .map(|m| m.inverse().expect("invertible change of basis"))
            .collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| p[a.target].mul(m).mul(&inv[a.source]))
            .collect();
        Representation {
            f: self.f,
            dims: self.dims.clone(),
            maps,
        }
    }

    /// `DM` over the opposite algebra (arrow indices are shared).
    pub fn dual(&self) -> Representation {
        Representation {
            f: self.f,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `rad M = Σ_a Im M(a)`, as per-vertex column bases.
    pub fn radical_bases(&self, alg: &BoundAlgebra) -> Vec<Matrix> {
        self.image_of_arrows(alg, &self.full_bases())
    }

    fn full_bases(&self) -> Vec<Matrix> {
        self.dims
            .iter()
            .map(|&d| Matrix::identity(self.f, d))
            .collect()
    }

    /// `Σ_a M(a)(U_{s(a)})` for a family of per-vertex subspaces `U`.
    pub fn image_of_arrows(&self, alg: &BoundAlgebra, u: &[Matrix]) -> Vec<Matrix> {
        let f = self.f;
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::new(f, d)).collect();
        for (a, m) in alg.quiver().arrows().iter().zip(&self.maps) {
            let img = m.mul(&u[a.source]);
            for c in 0..img.cols() {
                spaces[a.target].insert(&img.column(c));
            }
        }
        spaces
            .iter()
            .zip(&self.dims)
            .map(|(s, &d)| columns(f, d, s.basis()))
            .collect()
    }

    /// Dimension vectors of the radical layers `rad^k M / rad^{k+1} M`.
    pub fn radical_layers(&self, alg: &BoundAlgebra) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut cur = self.full_bases();
        while cur.iter().any(|m| m.cols() > 0) {
            let next = self.image_of_arrows(alg, &cur);
            layers.push(
                cur.iter()
                    .zip(&next)
                    .map(|(a, b)| a.cols() - b.cols())
                    .collect(),
            );
            cur = next;
        }
        layers
    }

    /// Dimension vector of the socle `{m : M(a) m = 0 for all a}`.
    pub fn socle_dims(&self, alg: &BoundAlgebra) -> Vec<usize> {
        let q = alg.quiver();
        (0..self.dims.len())
            .map(|v| {
                let outs: Vec<usize> = q.arrows_from(v).collect();
                if outs.is_empty() {
                    return self.dims[v];
                }
                let mut stacked = Matrix::zeros(self.f, 0, self.dims[v]);
                for a in outs {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                self.dims[v] - stacked.rank()
            })
            .collect()
    }

    /// The composition-diagram label, e.g. `2/1 3 4/2 2`.
    pub fn label(&self, alg: &BoundAlgebra) -> String {
        let names = alg.quiver().vertex_names();
        self.radical_layers(alg)
            .iter()
            .map(|layer| {
                let mut parts = Vec::new();
                for (v, &k) in layer.iter().enumerate() {
                    for _ in 0..k {
                        parts.push(names[v].clone());
                    }
                }
                parts.join(" ")
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

pub(crate) fn columns(f: Fp, rows: usize, vs: &[Vec<u32>]) -> Matrix {
    if vs.is_empty() {
        Matrix::zeros(f, rows, 0)
    } else {
        Matrix::from_columns(f, rows, vs)
    }
}

/// Per-vertex matrices `f_v: M(v) → N(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub blocks: Vec<Matrix>,
}

impl RepMorphism {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        RepMorphism {
            blocks: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| Matrix::zeros(m.f, b, a))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        RepMorphism {
            blocks: m.dims.iter().map(|&d| Matrix::identity(m.f, d)).collect(),
        }
    }

    /// `self ∘ other`
    pub fn after(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> RepMorphism {
        RepMorphism {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.rows() == b.cols() && b.is_invertible())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                if b.rows() == 0 && b.cols() == 0 {
                    Some(b.clone())
                } else {
                    b.inverse()
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(RepMorphism { blocks })
    }

    /// Flattened coordinates, vertex by vertex, row-major.
    pub fn to_vec(&self) -> Vec<u32> {
        self.blocks
            .iter()
            .flat_map(|b| b.data().iter().copied())
            .collect()
    }

    pub fn from_vec(m: &Representation, n: &Representation, v: &[u32]) -> RepMorphism {
        let mut blocks = Vec::with_capacity(m.dims.len());
        let mut pos = 0;
        for (&a, &b) in m.dims.iter().zip(&n.dims) {
            blocks.push(Matrix::from_vec(m.f, b, a, v[pos..pos + a * b].to_vec()));
            pos += a * b;
        }
        RepMorphism { blocks }
    }

    pub fn is_valid(&self, alg: &BoundAlgebra, m: &Representation, n: &Representation) -> bool {
        alg.quiver().arrows().iter().enumerate().all(|(i, a)| {
            self.blocks[a.target].mul(&m.maps[i]) == n.maps[i].mul(&self.blocks[a.source])
        })
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total(&self, f: Fp) -> Matrix {
        Matrix::block_diag(f, &self.blocks)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Transport along a vertex permutation, as for twists.
    pub fn twist(&self, act: &ElementAction) -> RepMorphism {
        RepMorphism {
            blocks: act
                .vertex_perm
                .iter()
                .map(|&w| self.blocks[w].clone())
                .collect(),
        }
    }

    /// Transpose blocks, for the duality `D`.
    pub fn dual(&self) -> RepMorphism {
        RepMorphism {
            blocks: self.blocks.iter().map(Matrix::transpose).collect(),
        }
    }
}

/// Basis of `Hom(M, N)`: the nullspace of all commuting-square equations.
pub fn hom_basis(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> Vec<RepMorphism> {
    let f = alg.field();
    let mut var_off = Vec::with_capacity(m.dims.len());
    let mut nvars = 0;
    for (&a, &b) in m.dims.iter().zip(&n.dims) {
        var_off.push(nvars);
        nvars += a * b;
    }
    if nvars == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ai, arr) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ms, nt) = (m.dims[s], n.dims[t]);
        let (ns, mt) = (n.dims[s], m.dims[t]);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        for i in 0..nt {
            for j in 0..ms {
                let mut row = vec![0u32; nvars];
                // (N(a) f_s)[i][j] = Σ_k N(a)[i][k] f_s[k][j]
                for k in 0..ns {
                    let c = na.get(i, k);
                    if c != 0 {
                        let idx = var_off[s] + k * ms + j;
                        row[idx] = f.add(row[idx], c);
                    }
                }
                // (f_t M(a))[i][j] = Σ_k f_t[i][k] M(a)[k][j]
                for k in 0..mt {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let idx = var_off[t] + i * mt + k;
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = if rows.is_empty() {
        (0..nvars)
            .map(|i| {
                let mut v = vec![0u32; nvars];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, &rows, nvars).nullspace()
    };
    ns.iter().map(|v| RepMorphism::from_vec(m, n, v)).collect()
}

pub fn hom_dim(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> usize {
    hom_basis(alg, m, n).len()
}

fn random_combination(rng: &mut ChaCha8Rng, f: Fp, basis: &[RepMorphism]) -> Option<RepMorphism> {
    let mut acc: Option<RepMorphism> = None;
    for b in basis {
        let c = rng.gen_range(0..f.p());
        let term = b.scale(c);
        acc = Some(match acc {
            None => term,
            Some(x) => x.add(&term),
        });
    }
    acc
}

/// An isomorphism `M → N`, found as a random invertible element of `Hom(M, N)`.
pub fn find_iso(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> Option<RepMorphism> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(RepMorphism::zero(m, n));
    }
    let basis = hom_basis(alg, m, n);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..TRIALS {
        let phi = random_combination(&mut rng, alg.field(), &basis)?;
        if phi.is_iso() {
            return Some(phi);
        }
    }
    None
}

pub fn is_isomorphic(alg: &BoundAlgebra, m: &Representation, n: &Representation) -> bool {
    find_iso(alg, m, n).is_some()
}

/// Subrepresentation on per-vertex column bases, with its inclusion.
pub fn subrepresentation(
    alg: &BoundAlgebra,
    m: &Representation,
    bases: &[Matrix],
) -> Result<(Representation, RepMorphism), RepError> {
    let f = m.f;
    let mut maps = Vec::new();
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (bs, bt) = (&bases[a.source], &bases[a.target]);
        let img = m.maps[ai].mul(bs);
        if bs.cols() == 0 {
            maps.push(Matrix::zeros(f, bt.cols(), 0));
            continue;
        }
        if bt.cols() == 0 {
            if !img.is_zero() {
                return Err(RepError::NotSubmodule);
            }
            maps.push(Matrix::zeros(f, 0, bs.cols()));
            continue;
        }
        let x = bt.solve(&img)?.ok_or(RepError::NotSubmodule)?;
        maps.push(x);
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    Ok((
        Representation { f, dims, maps },
        RepMorphism {
            blocks: bases.to_vec(),
        },
    ))
}

/// Standard basis vectors completing the columns of `b` to a basis, with
/// the projection onto them killing the span of `b`.
pub(crate) fn complement(f: Fp, b: &Matrix) -> (Matrix, Matrix) {
    let d = b.rows();
    let mut sp = Subspace::new(f, d);
    for c in 0..b.cols() {
        sp.insert(&b.column(c));
    }
    let mut chosen = Vec::new();
    for i in 0..d {
        let mut e = vec![0u32; d];
        e[i] = 1;
        if sp.insert(&e) {
            chosen.push(e);
        }
    }
    let c = columns(f, d, &chosen);
    if d == 0 {
        return (c, Matrix::zeros(f, 0, 0));
    }
    let t = b.hstack(&c);
    let inv = t.inverse().expect("completed basis");
    let proj = inv.submatrix(b.cols(), chosen.len(), 0, d);
    (c, proj)
}

/// Quotient by a subrepresentation given by per-vertex column bases, with the projection.
pub fn quotient(
    alg: &BoundAlgebra,
    m: &Representation,
    bases: &[Matrix],
) -> (Representation, RepMorphism) {
    let f = m.f;
    let parts: Vec<(Matrix, Matrix)> = bases.iter().map(|b| complement(f, b)).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| parts[a.target].1.mul(&m.maps[ai]).mul(&parts[a.source].0))
        .collect();
    let dims = parts.iter().map(|(c, _)| c.cols()).collect();
    (
        Representation { f, dims, maps },
        RepMorphism {
            blocks: parts.into_iter().map(|(_, p)| p).collect(),
        },
    )
}

pub fn kernel(
    alg: &BoundAlgebra,
    m: &Representation,
    phi: &RepMorphism,
) -> (Representation, RepMorphism) {
    let bases: Vec<Matrix> = phi
        .blocks
        .iter()
        .zip(&m.dims)
        .map(|(b, &d)| columns(m.f, d, &b.nullspace()))
        .collect();
    subrepresentation(alg, m, &bases).expect("kernels are submodules")
}

pub fn image_bases(n: &Representation, phi: &RepMorphism) -> Vec<Matrix> {
    phi.blocks
        .iter()
        .zip(&n.dims)
        .map(|(b, &d)| columns(n.f, d, &b.column_space()))
        .collect()
}

pub fn cokernel(
    alg: &BoundAlgebra,
    n: &Representation,
    phi: &RepMorphism,
) -> (Representation, RepMorphism) {
    quotient(alg, n, &image_bases(n, phi))
}

/// A summand `S` of `M` with `π ∘ ι = id_S`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// Endomorphism ring on a hom basis, with structure constants for `φ_i ∘ φ_j`.
pub fn endomorphism_algebra(
    alg: &BoundAlgebra,
    m: &Representation,
) -> (Vec<RepMorphism>, StructureConstants) {
    let f = alg.field();
    let basis = hom_basis(alg, m, m);
    let d = basis.len();
    let coords = Matrix::from_columns(
        f,
        basis.first().map_or(0, |b| b.to_vec().len()),
        &basis.iter().map(RepMorphism::to_vec).collect::<Vec<_>>(),
    );
    let mut products = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            let z = x.after(y).to_vec();
            let sol = coords
                .solve(&Matrix::from_columns(f, z.len(), &[z]))
                .expect("shapes")
                .expect("End is closed under composition");
            products.push(sol.column(0));
        }
    }
    (basis, StructureConstants::new(f, d, products))
}

/// Local endomorphism ring test: `dim End(M)/rad End(M) = 1`.
pub fn is_indecomposable(alg: &BoundAlgebra, m: &Representation) -> Result<bool, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    let (_, st) = endomorphism_algebra(alg, m);
    let top = st.dim() - st.radical()?.dim();
    if top == 1 {
        return Ok(true);
    }
    if split_once(alg, m).is_none() {
        return Err(RepError::NonSplitEndomorphisms);
    }
    Ok(false)
}

fn split_by(alg: &BoundAlgebra, m: &Representation, psi: &RepMorphism) -> Option<[Summand; 2]> {
    let f = m.f;
    let n = m.total_dim() as u64;
    let power = RepMorphism {
        blocks: psi.blocks.iter().map(|b| b.pow(n)).collect(),
    };
    let ker: Vec<Matrix> = power
        .blocks
        .iter()
        .zip(&m.dims)
        .map(|(b, &d)| columns(f, d, &b.nullspace()))
        .collect();
    let img = image_bases(m, &power);
    let kd: usize = ker.iter().map(Matrix::cols).sum();
    let id: usize = img.iter().map(Matrix::cols).sum();
    if kd == 0 || id == 0 {
        return None;
    }
    let (k_mod, k_inc) = subrepresentation(alg, m, &ker).expect("Fitting kernel");
    let (i_mod, i_inc) = subrepresentation(alg, m, &img).expect("Fitting image");
    let mut k_proj = Vec::new();
    let mut i_proj = Vec::new();
    for v in 0..m.dims.len() {
        let t = ker[v].hstack(&img[v]);
        let (kc, ic) = (ker[v].cols(), img[v].cols());
        if kc + ic == 0 {
            k_proj.push(Matrix::zeros(f, 0, 0));
            i_proj.push(Matrix::zeros(f, 0, 0));
            continue;
        }
        let inv = t.inverse().expect("Fitting decomposition");
        k_proj.push(inv.submatrix(0, kc, 0, m.dims[v]));
        i_proj.push(inv.submatrix(kc, ic, 0, m.dims[v]));
    }
    Some([
        Summand {
            module: k_mod,
            inclusion: k_inc,
            projection: RepMorphism { blocks: k_proj },
        },
        Summand {
            module: i_mod,
            inclusion: i_inc,
            projection: RepMorphism { blocks: i_proj },
        },
    ])
}

/// One Fitting split `M = Ker ψ^N ⊕ Im ψ^N` for `ψ = φ - λ` with random `φ ∈ End(M)`.
fn split_once(alg: &BoundAlgebra, m: &Representation) -> Option<[Summand; 2]> {
    let f = m.f;
    let basis = hom_basis(alg, m, m);
    if basis.len() <= 1 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ m.total_dim() as u64);
    for _ in 0..TRIALS {
        let phi = random_combination(&mut rng, f, &basis)?;
        let total = phi.total(f);
        for lambda in total.eigenvalues() {
            let psi = phi.add(&RepMorphism::identity(m).scale(f.neg(lambda)));
            if let Some(parts) = split_by(alg, m, &psi) {
                return Some(parts);
            }
        }
    }
    None
}

/// Krull-Schmidt decomposition, summands ordered by dimension vector.
pub fn decompose(alg: &BoundAlgebra, m: &Representation) -> Vec<Summand> {
    if m.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![Summand {
        module: m.clone(),
        inclusion: RepMorphism::identity(m),
        projection: RepMorphism::identity(m),
    }];
    while let Some(s) = stack.pop() {
        match split_once(alg, &s.module) {
            None => out.push(s),
            Some(parts) => {
                for p in parts {
                    stack.push(Summand {
                        module: p.module,
                        inclusion: s.inclusion.after(&p.inclusion),
                        projection: p.projection.after(&s.projection),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.module
            .dims
            .cmp(&b.module.dims)
            .then_with(|| a.module.total_dim().cmp(&b.module.total_dim()))
    });
    out
}

/// Group summands into isomorphism classes with multiplicities.
pub fn decompose_with_multiplicities(
    alg: &BoundAlgebra,
    m: &Representation,
) -> Vec<(Representation, usize)> {
    let mut classes: Vec<(Representation, usize)> = Vec::new();
    for s in decompose(alg, m) {
        match classes
            .iter_mut()
            .find(|(r, _)| is_isomorphic(alg, r, &s.module))
        {
            Some(entry) => entry.1 += 1,
            None => classes.push((s.module, 1)),
        }
    }
    classes
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quiver::{Quiver, Relation};
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};

    pub(crate) fn fig5() -> BoundAlgebra {
        let f = Fp::new(1009).unwrap();
        let mut q = Quiver::new();
        for v in ["1", "2", "3", "4"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow_by_name("alpha", "1", "2").unwrap();
        q.add_arrow_by_name("beta", "2", "1").unwrap();
        q.add_arrow_by_name("gamma", "3", "2").unwrap();
        q.add_arrow_by_name("delta", "4", "2").unwrap();
        let rels = [
            "alpha.beta.alpha",
            "beta.alpha.beta",
            "beta.gamma",
            "beta.delta",
        ]
        .iter()
        .map(|p| Relation {
            terms: vec![(1, q.parse_path(p).unwrap())],
        })
        .collect();
        BoundAlgebra::build(f, q, rels, 12).unwrap()
    }

    fn mat(f: Fp, rows: &[Vec<i64>], cols: usize) -> Matrix {
        Matrix::from_i64_rows(f, rows, cols)
    }

    /// `[1 3 4 / 2 2]`
    pub(crate) fn mesh_end(alg: &BoundAlgebra) -> Representation {
        let f = alg.field();
        Representation::new(
            alg,
            vec![1, 2, 1, 1],
            vec![
                mat(f, &[vec![1], vec![0]], 1),
                Matrix::zeros(f, 1, 2),
                mat(f, &[vec![0], vec![1]], 1),
                mat(f, &[vec![-1], vec![-1]], 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn simples_and_homs() {
        let a = fig5();
        for i in 0..4 {
            let s = Representation::simple(&a, i);
            assert_eq!(hom_dim(&a, &s, &s), 1);
            assert!(is_indecomposable(&a, &s).unwrap());
            for j in 0..4 {
                if i != j {
                    assert_eq!(hom_dim(&a, &s, &Representation::simple(&a, j)), 0);
                }
            }
        }
    }

    #[test]
    fn relations_are_checked() {
        let a = fig5();
        let f = a.field();
        // alpha and beta both identity on 1-dimensional spaces violates αβα = 0
        let bad = Representation::new(
            &a,
            vec![1, 1, 0, 0],
            vec![
                mat(f, &[vec![1]], 1),
                mat(f, &[vec![1]], 1),
                Matrix::zeros(f, 1, 0),
                Matrix::zeros(f, 1, 0),
            ],
        );
        assert!(matches!(bad, Err(RepError::RelationFails(_))));
    }

    #[test]
    fn sum_of_simples_decomposes() {
        let a = fig5();
        let m = Representation::direct_sum(&[
            &Representation::simple(&a, 1),
            &Representation::simple(&a, 3),
        ]);
        assert!(!is_indecomposable(&a, &m).unwrap());
        let parts = decompose(&a, &m);
        assert_eq!(parts.len(), 2);
        let dims: Vec<_> = parts.iter().map(|s| s.module.dims.clone()).collect();
        assert_eq!(dims, vec![vec![0, 0, 0, 1], vec![0, 1, 0, 0]]);
        let mut sum = RepMorphism::zero(&m, &m);
        for s in &parts {
            assert_eq!(
                s.projection.after(&s.inclusion),
                RepMorphism::identity(&s.module)
            );
            sum = sum.add(&s.inclusion.after(&s.projection));
        }
        assert_eq!(sum, RepMorphism::identity(&m));
    }

    #[test]
    fn mesh_end_is_indecomposable_with_label() {
        let a = fig5();
        let m = mesh_end(&a);
        assert!(is_indecomposable(&a, &m).unwrap());
        assert_eq!(m.label(&a), "1 3 4/2 2");
        assert_eq!(m.socle_dims(&a), vec![0, 2, 0, 0]);
    }

    #[test]
    fn kernel_and_cokernel_of_projection() {
        let a = fig5();
        let m = mesh_end(&a);
        let top = Representation::direct_sum(&[
            &Representation::simple(&a, 0),
            &Representation::simple(&a, 2),
            &Representation::simple(&a, 3),
        ]);
        let (q, pi) = quotient(&a, &m, &m.radical_bases(&a));
        assert_eq!(q.dims, top.dims);
        assert!(pi.is_valid(&a, &m, &q));
        let (k, inc) = kernel(&a, &m, &pi);
        assert_eq!(k.dims, vec![0, 2, 0, 0]);
        assert!(inc.is_valid(&a, &k, &m));
        let (c, _) = cokernel(&a, &m, &inc);
        assert!(is_isomorphic(&a, &c, &q));
    }

    #[test]
    fn decompose_with_repeated_summand() {
        let a = fig5();
        let m = mesh_end(&a);
        let s = Representation::simple(&a, 1);
        let big = Representation::direct_sum(&[&m, &s, &m]);
        let classes = decompose_with_multiplicities(&a, &big);
        assert_eq!(classes.len(), 2);
        let mult: Vec<usize> = classes.iter().map(|c| c.1).collect();
        assert_eq!(mult.iter().sum::<usize>(), 3);
        assert!(classes
            .iter()
            .any(|(r, k)| *k == 2 && is_isomorphic(&a, r, &m)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn hom_dim_invariant_under_base_change(seed in 0u64..1000) {
            let a = fig5();
            let f = a.field();
            let m = mesh_end(&a);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p: Vec<Matrix> = m.dims.iter().map(|&d| loop {
                let data = (0..d * d).map(|_| rng.gen_range(0..f.p())).collect();
                let c = Matrix::from_vec(f, d, d, data);
                if d == 0 || c.is_invertible() { break c; }
            }).collect();
            let m2 = m.conjugate(&a, &p);
            prop_assert!(Representation::new(&a, m2.dims.clone(), m2.maps.clone()).is_ok());
            prop_assert_eq!(hom_dim(&a, &m, &m), hom_dim(&a, &m2, &m2));
            let iso = find_iso(&a, &m, &m2).expect("conjugates are isomorphic");
            prop_assert!(iso.is_valid(&a, &m, &m2));
        }
    }
}
