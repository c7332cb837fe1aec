//! The pushdown functor `F_λ: mod Λ → mod ΛG` (to the basic presentation),
//! its counterpart `G_λ`, and the decomposition and Hom-space checks built on them.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Fp, Matrix};
use crate::group::{Character, ElementAction};
use crate::rep::{
    decompose, find_iso, hom_dim, is_indecomposable, is_isomorphic, RepError, RepMorphism,
    Representation, Summand,
};
use crate::skew::{SkewError, SkewPresentation};

#[derive(Debug, Error)]
pub enum PushdownError {
    #[error("module is not stable under the group: twist by element {0} is not isomorphic")]
    NotStable(String),
    #[error("no G-linearization over F_p: {0}")]
    NotLinearizable(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("summand of the target was not found in the pushdown of its restriction")]
    MissingSummand,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

/// `F_λ M` with, for each `Q_G` vertex, the `Q` vertices whose spaces were summed.
#[derive(Clone, Debug)]
pub struct PushdownResult {
    pub module: Representation,
    pub fibers: Vec<Vec<usize>>,
}

/// Layout of `F_λ M(u)` inside `Ind M = ⊕_g (1⊗g) ⊗ M`.
struct IndLayout {
    n: usize,
    total: usize,
    /// Columns of `F_λ M(u)` as sparse vectors `(slot g, position in M, coefficient)`.
    embed: Vec<Vec<Vec<(usize, usize, u32)>>>,
    /// Readout of `F_λ M(u)` coordinates from an `Ind M` vector.
    readout: Vec<Vec<(usize, usize, u32)>>,
    fibers: Vec<Vec<usize>>,
}

fn ind_layout(pres: &SkewPresentation, m: &Representation) -> IndLayout {
    let s = &pres.skew;
    let f = s.field();
    let n = s.group_order();
    let grp = &s.action.group;
    let off = m.offsets();
    let inv_n = f.inv(n as u32 % f.p());
    let mut embed = Vec::new();
    let mut readout = Vec::new();
    let mut fibers = Vec::new();
    for v in &pres.ctx.vertices {
        let i0 = v.rep;
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        if v.fixed {
            for k in 0..m.dims[i0] {
                let col = (0..n)
                    .map(|g| {
                        (
                            g,
                            off[i0] + k,
                            f.mul(inv_n, s.table.eval(&v.chi, &grp.element(g))),
                        )
                    })
                    .collect();
                cols.push(col);
                rows.push((0, off[i0] + k, n as u32 % f.p()));
            }
            fibers.push(vec![i0]);
        } else {
            let mut fib = Vec::new();
            for h in 0..n {
                let x = s.acts[h].vertex_perm[i0];
                let slot = grp.inv_idx(h);
                for k in 0..m.dims[x] {
                    cols.push(vec![(slot, off[x] + k, 1)]);
                    rows.push((slot, off[x] + k, 1));
                }
                fib.push(x);
            }
            fibers.push(fib);
        }
        embed.push(cols);
        readout.push(rows);
    }
    IndLayout {
        n,
        total: m.total_dim(),
        embed,
        readout,
        fibers,
    }
}

/// `L[g][b]`: the action of `g(b)` on the total space of `M`.
fn twisted_basis_actions(pres: &SkewPresentation, m: &Representation) -> Vec<Vec<Matrix>> {
    let s = &pres.skew;
    let d = s.lambda_dim();
    (0..s.group_order())
        .map(|g| {
            (0..d)
                .map(|b| {
                    let mut e = vec![0u32; d];
                    e[b] = 1;
                    m.element_matrix(&s.lambda, &s.act(g, &e))
                })
                .collect()
        })
        .collect()
}

/// `F_λ M` on the fiber bases: free vertices list `(1⊗h⁻¹)⊗M(h i₀)` for `h` in
/// group order, fixed vertices `(i₀,ρ)` use `u_ρ(m) = (1⊗e_ρ)⊗m`.
pub fn pushdown_module(pres: &SkewPresentation, m: &Representation) -> PushdownResult {
    let s = &pres.skew;
    let f = s.field();
    let grp = &s.action.group;
    let lay = ind_layout(pres, m);
    let l = twisted_basis_actions(pres, m);
    let d = s.lambda_dim();
    let big = lay.n * lay.total;
    let dims: Vec<usize> = lay.embed.iter().map(Vec::len).collect();
    let mut maps = Vec::new();
    for ar in &pres.arrows {
        let (u, w) = (ar.source, ar.target);
        let mut out = Matrix::zeros(f, dims[w], dims[u]);
        for (c_idx, col) in lay.embed[u].iter().enumerate() {
            let mut acc = vec![0u32; big];
            for (idx, &c) in ar.element.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (k, b) = (idx / d, idx % d);
                for &(g, pos, x) in col {
                    let kg = grp.mul_idx(k, g);
                    let mat = &l[grp.inv_idx(kg)][b];
                    let coef = f.mul(c, x);
                    for r in 0..lay.total {
                        let v = mat.get(r, pos);
                        if v != 0 {
                            let t = kg * lay.total + r;
                            acc[t] = f.mul_add(acc[t], coef, v);
                        }
                    }
                }
            }
            for (r_idx, &(slot, pos, x)) in lay.readout[w].iter().enumerate() {
                out.set(r_idx, c_idx, f.mul(x, acc[slot * lay.total + pos]));
            }
        }
        maps.push(out);
    }
    let module = Representation::unchecked(&pres.algebra, dims, maps).expect("pushdown shapes");
    PushdownResult {
        module,
        fibers: lay.fibers,
    }
}

/// `F_λ f`: block-diagonal assembly over the fibers.
pub fn pushdown_morphism(pres: &SkewPresentation, f: &RepMorphism) -> RepMorphism {
    let s = &pres.skew;
    let fp = s.field();
    let blocks = pres
        .ctx
        .vertices
        .iter()
        .map(|v| {
            if v.fixed {
                f.blocks[v.rep].clone()
            } else {
                let parts: Vec<Matrix> = (0..s.group_order())
                    .map(|h| f.blocks[s.acts[h].vertex_perm[v.rep]].clone())
                    .collect();
                Matrix::block_diag(fp, &parts)
            }
        })
        .collect();
    RepMorphism { blocks }
}

/// Per-vertex data of `G_λ N`: the ambient `⊕_u (x⊗1)ΛG e_u ⊗ N(u)` and its quotient.
#[derive(Clone, Debug)]
struct VertexLayout {
    /// Column basis of `(x⊗1) ΛG e_u` for each `Q_G` vertex `u`.
    spaces: Vec<Matrix>,
    offsets: Vec<usize>,
    ambient: usize,
    complement: Matrix,
    projection: Matrix,
}

/// `G_λ N = ΛGē ⊗_B N` restricted along `λ ↦ λ⊗1`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub module: Representation,
    layouts: Vec<VertexLayout>,
}

fn columns(f: Fp, rows: usize, vs: &[Vec<u32>]) -> Matrix {
    if vs.is_empty() {
        Matrix::zeros(f, rows, 0)
    } else {
        Matrix::from_columns(f, rows, vs)
    }
}

fn coords(basis: &Matrix, v: &[u32]) -> Vec<u32> {
    if basis.cols() == 0 {
        return Vec::new();
    }
    let rhs = Matrix::from_columns(basis.field(), v.len(), &[v.to_vec()]);
    basis
        .solve(&rhs)
        .expect("shapes")
        .expect("element lies in the span")
        .column(0)
}

/// Standard vectors completing a subspace, and the projection killing it.
fn quotient_coordinates(f: Fp, ambient: usize, rel: &[Vec<u32>]) -> (Matrix, Matrix) {
    let mut sp = crate::field::Subspace::new(f, ambient);
    for r in rel {
        sp.insert(r);
    }
    let rel_basis: Vec<Vec<u32>> = sp.basis().to_vec();
    let mut chosen = Vec::new();
    for i in 0..ambient {
        let mut e = vec![0u32; ambient];
        e[i] = 1;
        if sp.insert(&e) {
            chosen.push(e);
        }
    }
    let comp = columns(f, ambient, &chosen);
    if ambient == 0 {
        return (comp, Matrix::zeros(f, 0, 0));
    }
    let t = columns(f, ambient, &rel_basis).hstack(&comp);
    let inv = t.inverse().expect("completed basis");
    (
        comp.clone(),
        inv.submatrix(rel_basis.len(), chosen.len(), 0, ambient),
    )
}

pub fn restrict(pres: &SkewPresentation, nmod: &Representation) -> Restriction {
    let s = &pres.skew;
    let f = s.field();
    let q = s.lambda.quiver();
    let big = s.dim();
    let nu = pres.ctx.vertices.len();
    let unit = |b: usize, g: usize| {
        let mut x = vec![0u32; big];
        x[s.index(b, g)] = 1;
        x
    };
    let vertex_elem = |x: usize| {
        let mut e = vec![0u32; s.lambda_dim()];
        e[x] = 1;
        s.tensor(&e, 0)
    };
    let mut layouts = Vec::new();
    for x in 0..q.num_vertices() {
        let ex = vertex_elem(x);
        let mut spaces = Vec::new();
        for u in 0..nu {
            let eu = &pres.ctx.vertex_elements[u];
            let mut sp = crate::field::Subspace::new(f, big);
            for g in 0..s.group_order() {
                for b in 0..s.lambda_dim() {
                    let y = s.mul(&s.mul(&ex, &unit(b, g)), eu);
                    sp.insert(&y);
                }
            }
            spaces.push(columns(f, big, sp.basis()));
        }
        let mut offsets = Vec::new();
        let mut ambient = 0;
        for (space, &d) in spaces.iter().zip(&nmod.dims).take(nu) {
            offsets.push(ambient);
            ambient += space.cols() * d;
        }
        let mut rels = Vec::new();
        for (yi, ar) in pres.arrows.iter().enumerate() {
            let (u, w) = (ar.source, ar.target);
            let ny = &nmod.maps[yi];
            for i in 0..spaces[w].cols() {
                let a = spaces[w].column(i);
                let ay = coords(&spaces[u], &s.mul(&a, &ar.element));
                for j in 0..nmod.dims[u] {
                    let mut r = vec![0u32; ambient];
                    for (ci, &c) in ay.iter().enumerate() {
                        if c != 0 {
                            let idx = offsets[u] + ci * nmod.dims[u] + j;
                            r[idx] = f.add(r[idx], c);
                        }
                    }
                    for k in 0..nmod.dims[w] {
                        let c = ny.get(k, j);
                        if c != 0 {
                            let idx = offsets[w] + i * nmod.dims[w] + k;
                            r[idx] = f.sub(r[idx], c);
                        }
                    }
                    rels.push(r);
                }
            }
        }
        let (complement, projection) = quotient_coordinates(f, ambient, &rels);
        layouts.push(VertexLayout {
            spaces,
            offsets,
            ambient,
            complement,
            projection,
        });
    }
    let mut maps = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (lx, ly) = (&layouts[a.source], &layouts[a.target]);
        let mut e = vec![0u32; s.lambda_dim()];
        e[s.lambda
            .nf_sparse(&crate::quiver::Path::new(q, vec![ai]).expect("arrow"))[0]
            .0] = 1;
        let alpha = s.tensor(&e, 0);
        let mut amb = Matrix::zeros(f, ly.ambient, lx.ambient);
        for u in 0..nu {
            let du = nmod.dims[u];
            for i in 0..lx.spaces[u].cols() {
                let img = coords(&ly.spaces[u], &s.mul(&alpha, &lx.spaces[u].column(i)));
                for (ci, &c) in img.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for j in 0..du {
                        amb.set(ly.offsets[u] + ci * du + j, lx.offsets[u] + i * du + j, c);
                    }
                }
            }
        }
        maps.push(ly.projection.mul(&amb).mul(&lx.complement));
    }
    let dims = layouts.iter().map(|l| l.complement.cols()).collect();
    let module = Representation::unchecked(&s.lambda, dims, maps).expect("restriction shapes");
    Restriction { module, layouts }
}

/// `G_λ φ` for `φ: N → N'`, on the quotient coordinates of both restrictions.
pub fn restrict_morphism(src: &Restriction, dst: &Restriction, phi: &RepMorphism) -> RepMorphism {
    let blocks = src
        .layouts
        .iter()
        .zip(&dst.layouts)
        .map(|(lx, ly)| {
            let f = lx.complement.field();
            let mut amb = Matrix::zeros(f, ly.ambient, lx.ambient);
            for (u, block) in phi.blocks.iter().enumerate() {
                let (du, du2) = (block.cols(), block.rows());
                for i in 0..lx.spaces[u].cols() {
                    for j in 0..du {
                        for k in 0..du2 {
                            let c = block.get(k, j);
                            if c != 0 {
                                amb.set(ly.offsets[u] + i * du2 + k, lx.offsets[u] + i * du + j, c);
                            }
                        }
                    }
                }
            }
            ly.projection.mul(&amb).mul(&lx.complement)
        })
        .collect();
    RepMorphism { blocks }
}

/// Group elements `g` with `^gM ≅ M`.
pub fn stabilizer(pres: &SkewPresentation, m: &Representation) -> Vec<usize> {
    let alg = &pres.skew.lambda;
    (0..pres.skew.group_order())
        .filter(|&g| is_isomorphic(alg, m, &m.twist(&pres.skew.acts[g])))
        .collect()
}

/// Dual-group elements stabilizing a module over the basic skew algebra.
pub fn dual_stabilizer(
    pres: &SkewPresentation,
    dual: &[ElementAction],
    m: &Representation,
) -> Vec<usize> {
    (0..dual.len())
        .filter(|&k| is_isomorphic(&pres.algebra, m, &m.twist(&dual[k])))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiCoveringReport {
    pub case: String,
    pub lhs: usize,
    pub rhs: usize,
    /// For unstable pairs: number of `g` with `Hom(^gM, N) ≠ 0`.
    pub nonzero_twists: usize,
}

impl SemiCoveringReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of the Hom-space identity for `F_λ`, with the applicable case.
pub fn verify_semi_covering(
    pres: &SkewPresentation,
    m: &Representation,
    n: &Representation,
) -> SemiCoveringReport {
    let s = &pres.skew;
    let alg = &s.lambda;
    let order = s.group_order();
    let fm = pushdown_module(pres, m).module;
    let fnn = pushdown_module(pres, n).module;
    let lhs = hom_dim(&pres.algebra, &fm, &fnn);
    let m_stable = stabilizer(pres, m).len() == order;
    let n_stable = stabilizer(pres, n).len() == order;
    let twisted: Vec<usize> = s
        .acts
        .iter()
        .map(|g| hom_dim(alg, &m.twist(g), n))
        .collect();
    let nonzero_twists = twisted.iter().filter(|&&d| d > 0).count();
    let (case, rhs) = if !m_stable {
        ("G_M != G", twisted.iter().sum())
    } else if !n_stable {
        (
            "G_N != G",
            s.acts.iter().map(|g| hom_dim(alg, m, &n.twist(g))).sum(),
        )
    } else {
        ("G_MN = G", order * hom_dim(alg, m, n))
    };
    SemiCoveringReport {
        case: case.to_string(),
        lhs,
        rhs,
        nonzero_twists,
    }
}

/// Result of splitting `F_λ M` for a stable `M` along a `G`-linearization.
#[derive(Clone, Debug)]
pub struct StableDecomposition {
    /// `M̄_χ` for each character, in character order.
    pub summands: Vec<(Character, Representation)>,
    /// Support vertices with free orbits (`S′`) and fixed vertices (`S″`).
    pub support_free: Vec<usize>,
    pub support_fixed: Vec<usize>,
    /// `T_g` on the total space of `M`, one per group element.
    pub linearization: Vec<Matrix>,
}

fn binomial_series_inverse_root(f: Fp, nil: &Matrix, n: u32) -> Matrix {
    // (1 + N)^{-1/n} = Σ_k binom(-1/n, k) N^k
    let dim = nil.rows();
    let r = f.neg(f.inv(n % f.p()));
    let mut out = Matrix::identity(f, dim);
    let mut power = Matrix::identity(f, dim);
    let mut coef = 1u32;
    for k in 1..=dim {
        power = power.mul(nil);
        if power.is_zero() {
            break;
        }
        let num = f.sub(r, (k as u32 - 1) % f.p());
        coef = f.div(f.mul(coef, num), k as u32 % f.p());
        out.add_scaled(coef, &power);
    }
    out
}

fn total_from_twist_iso(m: &Representation, perm: &[usize], psi: &RepMorphism) -> Matrix {
    let f = m.field();
    let off = m.offsets();
    let t = m.total_dim();
    let mut out = Matrix::zeros(f, t, t);
    for (x, block) in psi.blocks.iter().enumerate() {
        out.set_block(off[perm[x]], off[x], block);
    }
    out
}

/// `T: M → ^gM` for a generator `g` of order `n`, normalized to `T^n = 1`.
fn normalized_linearization(
    pres: &SkewPresentation,
    m: &Representation,
    g: usize,
    order: u32,
) -> Result<Matrix, PushdownError> {
    let s = &pres.skew;
    let f = s.field();
    let act = &s.acts[g];
    let psi = find_iso(&s.lambda, m, &m.twist(act)).ok_or_else(|| {
        PushdownError::NotStable(
            s.action
                .group
                .element(g)
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("_"),
        )
    })?;
    let mut t = total_from_twist_iso(m, &act.vertex_perm, &psi);
    let dim = m.total_dim();
    let q = t.pow(order as u64);
    let eig = q.eigenvalues();
    if eig.len() != 1 {
        return Err(PushdownError::NotLinearizable(format!(
            "T^n has eigenvalues {eig:?}"
        )));
    }
    let lambda = eig[0];
    let mu = f.nth_root(lambda, order).ok_or_else(|| {
        PushdownError::NotLinearizable(format!("{lambda} has no {order}-th root in F_p"))
    })?;
    t = t.scale(f.inv(mu));
    let q = t.pow(order as u64);
    let nil = q.sub(&Matrix::identity(f, dim));
    if !nil.is_nilpotent() {
        return Err(PushdownError::NotLinearizable(
            "T^n is not unipotent after scaling".into(),
        ));
    }
    t = t.mul(&binomial_series_inverse_root(f, &nil, order));
    if t.pow(order as u64) != Matrix::identity(f, dim) {
        return Err(PushdownError::NotLinearizable(
            "normalization did not reach T^n = 1".into(),
        ));
    }
    Ok(t)
}

/// `F_λ M = ⊕_χ M̄_χ` for `G_M = G`, built from a linearization `T_g` of `M`.
pub fn decompose_pushdown(
    pres: &SkewPresentation,
    m: &Representation,
) -> Result<StableDecomposition, PushdownError> {
    let s = &pres.skew;
    let f = s.field();
    let grp = &s.action.group;
    let n = s.group_order();
    let dim = m.total_dim();
    let mut gens = Vec::new();
    for k in 0..grp.rank() {
        let g = grp.index(&grp.generator(k));
        gens.push(normalized_linearization(pres, m, g, grp.orders()[k])?);
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].mul(&gens[j]) != gens[j].mul(&gens[i]) {
                return Err(PushdownError::NotLinearizable(
                    "generator linearizations do not commute".into(),
                ));
            }
        }
    }
    let linearization: Vec<Matrix> = (0..n)
        .map(|g| {
            let e = grp.element(g);
            let mut t = Matrix::identity(f, dim);
            for (k, &ek) in e.iter().enumerate() {
                t = t.mul(&gens[k].pow(ek as u64));
            }
            t
        })
        .collect();
    let d = s.lambda_dim();
    let l: Vec<Matrix> = (0..d)
        .map(|b| {
            let mut e = vec![0u32; d];
            e[b] = 1;
            m.element_matrix(&s.lambda, &e)
        })
        .collect();
    let mut summands = Vec::new();
    for chi in s.table.all() {
        let act = |x: &[u32]| {
            let mut out = Matrix::zeros(f, dim, dim);
            for (idx, &c) in x.iter().enumerate() {
                if c != 0 {
                    let (g, b) = (idx / d, idx % d);
                    let coef = f.mul(c, s.table.eval(&chi, &grp.element(g)));
                    out.add_scaled(coef, &l[b].mul(&linearization[g]));
                }
            }
            out
        };
        summands.push((chi.clone(), truncate(pres, dim, act)));
    }
    let support: Vec<usize> = (0..m.dims.len()).filter(|&v| m.dims[v] > 0).collect();
    let (support_fixed, support_free): (Vec<usize>, Vec<usize>) = support
        .into_iter()
        .partition(|&v| pres.ctx.orbits.is_fixed(v, n));
    Ok(StableDecomposition {
        summands,
        support_free,
        support_fixed,
        linearization,
    })
}

/// `ē V` as a module over the basic algebra, for a `ΛG`-module `V` given by its action.
pub fn truncate(
    pres: &SkewPresentation,
    dim: usize,
    act: impl Fn(&[u32]) -> Matrix,
) -> Representation {
    let f = pres.field();
    let bases: Vec<Matrix> = pres
        .ctx
        .vertex_elements
        .iter()
        .map(|e| columns(f, dim, &act(e).column_space()))
        .collect();
    let maps = pres
        .arrows
        .iter()
        .map(|ar| {
            let (cu, cw) = (&bases[ar.source], &bases[ar.target]);
            let img = act(&ar.element).mul(cu);
            if cw.cols() == 0 || cu.cols() == 0 {
                Matrix::zeros(f, cw.cols(), cu.cols())
            } else {
                cw.solve(&img)
                    .expect("shapes")
                    .expect("arrow image lies in the target vertex space")
            }
        })
        .collect();
    let dims = bases.iter().map(Matrix::cols).collect();
    Representation::unchecked(&pres.algebra, dims, maps).expect("truncation shapes")
}

/// `M = G_λ N` with `F_λ M ≅ N ⊕ Z`; `complement` lists the summands of `Z`.
#[derive(Clone, Debug)]
pub struct SemiDenseWitness {
    pub preimage: Representation,
    pub pushed: Representation,
    pub complement: Vec<Representation>,
}

pub fn semi_dense_witness(
    pres: &SkewPresentation,
    nmod: &Representation,
) -> Result<SemiDenseWitness, PushdownError> {
    let preimage = restrict(pres, nmod).module;
    let pushed = pushdown_module(pres, &preimage).module;
    let mut pool: Vec<Summand> = decompose(&pres.algebra, &pushed);
    for part in decompose(&pres.algebra, nmod) {
        let pos = pool
            .iter()
            .position(|s| is_isomorphic(&pres.algebra, &s.module, &part.module))
            .ok_or(PushdownError::MissingSummand)?;
        pool.remove(pos);
    }
    Ok(SemiDenseWitness {
        preimage,
        pushed,
        complement: pool.into_iter().map(|s| s.module).collect(),
    })
}

/// `f₁ = G_λ f` and the block form of `F_λ f₁` against the decompositions of both ends.
#[derive(Clone, Debug)]
pub struct RecoveredMorphism {
    pub source: Representation,
    pub target: Representation,
    pub morphism: RepMorphism,
    /// `(i, j)` with a nonzero block from source summand `j` to target summand `i`.
    pub nonzero_blocks: Vec<(usize, usize)>,
    /// The nonzero blocks themselves, in the order of `nonzero_blocks`.
    pub blocks: Vec<RepMorphism>,
    pub source_summands: Vec<Representation>,
    pub target_summands: Vec<Representation>,
    /// The block between the summands matching the original ends, transported back.
    pub original_block: RepMorphism,
}

impl RecoveredMorphism {
    /// Each summand meets at most one nonzero block. This depends on the
    /// chosen decompositions; see `ar::is_diagonal_modulo_rad2` for the
    /// invariant form.
    pub fn is_diagonal(&self) -> bool {
        let mut rows: Vec<usize> = self.nonzero_blocks.iter().map(|b| b.0).collect();
        let mut cols: Vec<usize> = self.nonzero_blocks.iter().map(|b| b.1).collect();
        let len = rows.len();
        rows.sort();
        rows.dedup();
        cols.sort();
        cols.dedup();
        rows.len() == len && cols.len() == len
    }
}

pub fn recover_irreducible(
    pres: &SkewPresentation,
    m: &Representation,
    n: &Representation,
    f: &RepMorphism,
) -> Result<RecoveredMorphism, PushdownError> {
    let b = &pres.algebra;
    let dual = pres
        .dual_action()?
        .element_actions(&pres.quiver, pres.field());
    let k = dual.len();
    if dual_stabilizer(pres, &dual, m).len() == k || dual_stabilizer(pres, &dual, n).len() == k {
        return Err(PushdownError::Hypothesis(
            "both ends must be unstable under the dual group".into(),
        ));
    }
    let rm = restrict(pres, m);
    let rn = restrict(pres, n);
    let f1 = restrict_morphism(&rm, &rn, f);
    let alg = &pres.skew.lambda;
    if !is_indecomposable(alg, &rm.module)? || !is_indecomposable(alg, &rn.module)? {
        return Err(PushdownError::Hypothesis(
            "restrictions are not indecomposable".into(),
        ));
    }
    let pm = pushdown_module(pres, &rm.module).module;
    let pn = pushdown_module(pres, &rn.module).module;
    let pf = pushdown_morphism(pres, &f1);
    let dm = decompose(b, &pm);
    let dn = decompose(b, &pn);
    let mut nonzero_blocks = Vec::new();
    let mut blocks = Vec::new();
    for (i, t) in dn.iter().enumerate() {
        for (j, s) in dm.iter().enumerate() {
            let block = t.projection.after(&pf).after(&s.inclusion);
            if !block.is_zero() {
                nonzero_blocks.push((i, j));
                blocks.push(block);
            }
        }
    }
    let js = dm
        .iter()
        .position(|s| is_isomorphic(b, &s.module, m))
        .ok_or(PushdownError::MissingSummand)?;
    let it = dn
        .iter()
        .position(|s| is_isomorphic(b, &s.module, n))
        .ok_or(PushdownError::MissingSummand)?;
    let into = find_iso(b, m, &dm[js].module).ok_or(PushdownError::MissingSummand)?;
    let out = find_iso(b, &dn[it].module, n).ok_or(PushdownError::MissingSummand)?;
    let original_block = out
        .after(&dn[it].projection)
        .after(&pf)
        .after(&dm[js].inclusion)
        .after(&into);
    Ok(RecoveredMorphism {
        source: rm.module,
        target: rn.module,
        morphism: f1,
        nonzero_blocks,
        blocks,
        source_summands: dm.into_iter().map(|s| s.module).collect(),
        target_summands: dn.into_iter().map(|s| s.module).collect(),
        original_block,
    })
}

/// `dim Hom(M̄_j, N̄_i)` between the character summands of two stable modules.
pub fn hom_block_pattern(
    pres: &SkewPresentation,
    m: &Representation,
    n: &Representation,
) -> Result<Vec<Vec<usize>>, PushdownError> {
    let dm = decompose_pushdown(pres, m)?;
    let dn = decompose_pushdown(pres, n)?;
    Ok(dn
        .summands
        .iter()
        .map(|(_, t)| {
            dm.summands
                .iter()
                .map(|(_, s)| hom_dim(&pres.algebra, s, t))
                .collect()
        })
        .collect())
}
