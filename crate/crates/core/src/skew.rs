//! The skew group algebra `ΛG`, its idempotents `e_{i₀ρ}`, the quiver `Q_G`
//! and the basic presentation `ē(ΛG)ē ≅ KQ_G/<ρ_G>`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::field::{axpy, is_zero_vec, Fp, Matrix, Subspace};
use crate::group::{
    arrow_character, Character, CharacterTable, ElementAction, GroupError, OrbitData, QuiverAction,
};
use crate::quiver::{BoundAlgebra, GradedQuotient, Path, Quiver, QuiverError, Relation, Sparse};

#[derive(Debug, Error)]
pub enum SkewError {
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("presentation check failed: {0}")]
    Inconsistent(String),
}

/// `ΛG` on the basis `b ⊗ g`, stored at index `g * dim Λ + b`.
#[derive(Clone, Debug)]
pub struct SkewAlgebra {
    pub lambda: BoundAlgebra,
    pub action: QuiverAction,
    pub table: CharacterTable,
    pub acts: Vec<ElementAction>,
    /// `gact[g][b]`: coordinates of `g(b)` in the basis of Λ.
    pub gact: Vec<Vec<Sparse>>,
}

impl SkewAlgebra {
    pub fn new(lambda: BoundAlgebra, action: QuiverAction) -> Result<Self, SkewError> {
        let rep = action.validate(&lambda);
        if !rep.is_valid() {
            let msg = rep
                .failures
                .iter()
                .map(|f| format!("{}: {}", f.check, f.witness))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(SkewError::InvalidAction(msg));
        }
        let f = lambda.field();
        let table = CharacterTable::new(f, action.group.clone())?;
        let acts = action.element_actions(lambda.quiver(), f);
        let gact = acts
            .iter()
            .map(|act| {
                lambda
                    .basis()
                    .iter()
                    .map(|p| {
                        let (c, gp) = act.act_on_path(p, f);
                        lambda
                            .nf_sparse(&gp)
                            .into_iter()
                            .map(|(i, x)| (i, f.mul(c, x)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SkewAlgebra {
            lambda,
            action,
            table,
            acts,
            gact,
        })
    }

    pub fn field(&self) -> Fp {
        self.lambda.field()
    }
    pub fn group_order(&self) -> usize {
        self.acts.len()
    }
    pub fn lambda_dim(&self) -> usize {
        self.lambda.dim()
    }
    pub fn dim(&self) -> usize {
        self.lambda.dim() * self.group_order()
    }

    pub fn index(&self, b: usize, g: usize) -> usize {
        g * self.lambda.dim() + b
    }

    /// `λ ⊗ g` for `λ` given in coordinates of Λ.
    pub fn tensor(&self, lambda: &[u32], g: usize) -> Vec<u32> {
        let mut x = vec![0u32; self.dim()];
        let d = self.lambda.dim();
        x[g * d..(g + 1) * d].copy_from_slice(lambda);
        x
    }

    /// Apply `g` to an element of Λ.
    pub fn act(&self, g: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0u32; self.lambda.dim()];
        for (b, &c) in v.iter().enumerate() {
            if c != 0 {
                for &(i, x) in &self.gact[g][b] {
                    out[i] = f.mul_add(out[i], c, x);
                }
            }
        }
        out
    }

    /// `(λ⊗g)(μ⊗h) = λ g(μ) ⊗ gh`
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let d = self.lambda.dim();
        let n = self.group_order();
        let grp = &self.action.group;
        let st = self.lambda.structure();
        let mut out = vec![0u32; self.dim()];
        for g in 0..n {
            let xg = &x[g * d..(g + 1) * d];
            if is_zero_vec(xg) {
                continue;
            }
            for h in 0..n {
                let yh = &y[h * d..(h + 1) * d];
                if is_zero_vec(yh) {
                    continue;
                }
                let gy = self.act(g, yh);
                let prod = st.mul(xg, &gy);
                let gh = grp.mul_idx(g, h);
                axpy(f, &mut out[gh * d..(gh + 1) * d], 1, &prod);
            }
        }
        out
    }

    /// The dual action `χ(λ⊗g) = χ(g) λ⊗g`.
    pub fn apply_character(&self, chi: &Character, x: &[u32]) -> Vec<u32> {
        let f = self.field();
        let d = self.lambda.dim();
        let mut out = x.to_vec();
        for g in 0..self.group_order() {
            let c = self.table.eval(chi, &self.action.group.element(g));
            for v in &mut out[g * d..(g + 1) * d] {
                *v = f.mul(*v, c);
            }
        }
        out
    }

    /// `e_ρ = (1/|H|) Σ_{g∈H} ρ(g) g` as an element of `KG`, embedded at the vertex `v`.
    pub fn vertex_idempotent(&self, v: usize, stabilizer: &[usize], rho: &Character) -> Vec<u32> {
        let f = self.field();
        let inv = f.inv(stabilizer.len() as u32 % f.p());
        let mut x = vec![0u32; self.dim()];
        for &g in stabilizer {
            let c = f.mul(inv, self.table.eval(rho, &self.action.group.element(g)));
            x[self.index(v, g)] = c;
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArrowCase {
    /// free source, free target
    FreeFree,
    /// free source, fixed target
    FreeFixed,
    /// fixed source, free target
    FixedFree,
    /// fixed source, fixed target
    FixedFixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewVertex {
    pub name: String,
    /// Representative `i₀ ∈ Ĩ`.
    pub rep: usize,
    pub chi: Character,
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewArrow {
    pub name: String,
    pub lambda_arrow: usize,
    /// `h_a` with `h_a(i₀) = s(a)`.
    pub h: usize,
    pub source: usize,
    pub target: usize,
    pub case: ArrowCase,
    #[serde(skip)]
    pub element: Vec<u32>,
}

/// Orbit data, representatives and idempotents.
#[derive(Clone, Debug)]
pub struct SkewContext {
    pub orbits: OrbitData,
    /// `Ĩ`, in vertex order.
    pub reps: Vec<usize>,
    pub vertices: Vec<SkewVertex>,
    pub vertex_elements: Vec<Vec<u32>>,
    pub e_bar: Vec<u32>,
    pub arrow_chars: Vec<Character>,
}

impl SkewContext {
    pub fn build(skew: &SkewAlgebra) -> Result<Self, SkewError> {
        let q = skew.lambda.quiver();
        let f = skew.field();
        let n = skew.group_order();
        let orbits = skew.action.orbits(q, f);
        let mut reps = orbits.representatives.clone();
        reps.sort();
        let chars = skew.table.all();
        let mut vertices = Vec::new();
        let mut vertex_elements = Vec::new();
        for &r in &reps {
            let fixed = orbits.is_fixed(r, n);
            let name = q.vertex_name(r);
            if fixed {
                for chi in &chars {
                    let vname = if n == 1 {
                        name.to_string()
                    } else {
                        format!("{name}#{}", chi.label())
                    };
                    vertex_elements.push(skew.vertex_idempotent(r, &orbits.stabilizers[r], chi));
                    vertices.push(SkewVertex {
                        name: vname,
                        rep: r,
                        chi: chi.clone(),
                        fixed,
                    });
                }
            } else {
                vertex_elements.push(skew.vertex_idempotent(r, &[0], &skew.table.trivial()));
                vertices.push(SkewVertex {
                    name: name.to_string(),
                    rep: r,
                    chi: skew.table.trivial(),
                    fixed,
                });
            }
        }
        let mut e_bar = vec![0u32; skew.dim()];
        for e in &vertex_elements {
            axpy(f, &mut e_bar, 1, e);
        }
        let mut arrow_chars = Vec::new();
        for a in 0..q.num_arrows() {
            arrow_chars.push(arrow_character(&skew.table, &skew.acts, &orbits, q, a)?);
        }
        Ok(SkewContext {
            orbits,
            reps,
            vertices,
            vertex_elements,
            e_bar,
            arrow_chars,
        })
    }

    /// `R_{i₀j₀}`: representatives of `O_{i₀}` under `G_{j₀}`.
    pub fn representatives_under(&self, i0: usize, j0: usize, n: usize) -> Vec<usize> {
        if self.orbits.is_fixed(j0, n) {
            vec![i0]
        } else {
            self.orbits.orbits[self.orbits.orbit_of[i0]].clone()
        }
    }

    /// `D(i₀,j₀)`: arrows from `R_{i₀j₀}` to `j₀`.
    pub fn arrow_set(&self, q: &Quiver, i0: usize, j0: usize, n: usize) -> Vec<usize> {
        let r = self.representatives_under(i0, j0, n);
        (0..q.num_arrows())
            .filter(|&a| q.arrow(a).target == j0 && r.contains(&q.arrow(a).source))
            .collect()
    }

    /// Vertices of `Q_G` over the representative `i₀`.
    pub fn vertices_over(&self, i0: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&u| self.vertices[u].rep == i0)
            .collect()
    }
}

/// `Q_G` with relations, its dictionary into `ē(ΛG)ē`, and the basic algebra.
#[derive(Clone, Debug)]
pub struct SkewPresentation {
    pub skew: SkewAlgebra,
    pub ctx: SkewContext,
    pub quiver: Quiver,
    pub arrows: Vec<SkewArrow>,
    pub relations: Vec<Relation>,
    pub algebra: BoundAlgebra,
    /// Image in `ΛG` of each basis path of the basic algebra built degree by degree.
    pub basis_images: Vec<Vec<u32>>,
}

fn char_restricted_eq(ctx: &SkewContext, i0: usize, j0: usize, n: usize) -> bool {
    ctx.orbits.is_fixed(i0, n) && ctx.orbits.is_fixed(j0, n)
}

impl SkewPresentation {
    pub fn build(skew: SkewAlgebra, length_bound: usize) -> Result<Self, SkewError> {
        let ctx = SkewContext::build(&skew)?;
        let f = skew.field();
        let n = skew.group_order();
        let lq = skew.lambda.quiver().clone();
        let mut quiver = Quiver::new();
        for v in &ctx.vertices {
            quiver.add_vertex(&v.name)?;
        }
        let mut arrows: Vec<SkewArrow> = Vec::new();
        for &i0 in &ctx.reps {
            for &j0 in &ctx.reps {
                let both_fixed = char_restricted_eq(&ctx, i0, j0, n);
                for a in ctx.arrow_set(&lq, i0, j0, n) {
                    let sa = lq.arrow(a).source;
                    let h = (0..n)
                        .find(|&g| skew.acts[g].vertex_perm[i0] == sa)
                        .expect("s(a) lies in the orbit of i0");
                    let chi_a = &ctx.arrow_chars[a];
                    for &u in &ctx.vertices_over(i0) {
                        for &w in &ctx.vertices_over(j0) {
                            let (rho, sigma) = (&ctx.vertices[u].chi, &ctx.vertices[w].chi);
                            if both_fixed && *rho != skew.table.mul(sigma, chi_a) {
                                continue;
                            }
                            let mut lam = vec![0u32; skew.lambda_dim()];
                            lam[skew
                                .lambda
                                .nf_sparse(&Path::new(&lq, vec![a]).expect("arrow"))[0]
                                .0] = 1;
                            let middle = skew.tensor(&lam, h);
                            let x = skew.mul(
                                &skew.mul(&ctx.vertex_elements[w], &middle),
                                &ctx.vertex_elements[u],
                            );
                            if is_zero_vec(&x) {
                                return Err(SkewError::Inconsistent(format!(
                                    "arrow element for `{}` vanished",
                                    lq.arrow(a).name
                                )));
                            }
                            let case = match (ctx.vertices[u].fixed, ctx.vertices[w].fixed) {
                                (false, false) => ArrowCase::FreeFree,
                                (false, true) => ArrowCase::FreeFixed,
                                (true, false) => ArrowCase::FixedFree,
                                (true, true) => ArrowCase::FixedFixed,
                            };
                            let aname = &lq.arrow(a).name;
                            let name = if n == 1 {
                                aname.clone()
                            } else {
                                format!("{aname}#{}#{}", rho.label(), sigma.label())
                            };
                            arrows.push(SkewArrow {
                                name,
                                lambda_arrow: a,
                                h,
                                source: u,
                                target: w,
                                case,
                                element: x,
                            });
                        }
                    }
                }
            }
        }
        for ar in &arrows {
            quiver.add_arrow(&ar.name, ar.source, ar.target)?;
        }

        // Kernel of KQ_G -> ΛG, degree by degree.
        let endpoints: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
        let mut g = GradedQuotient::new(f, quiver.num_vertices(), endpoints);
        let mut images: Vec<Vec<u32>> = ctx.vertex_elements.clone();
        let mut relations: Vec<Relation> = Vec::new();
        let mut d = 1;
        loop {
            let cands = g.candidates(d);
            let index: HashMap<(usize, usize), usize> =
                cands.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let cand_images: Vec<Vec<u32>> = cands
                .iter()
                .map(|&(a, b)| skew.mul(&arrows[a].element, &images[b]))
                .collect();
            let kernel = Matrix::from_columns(f, skew.dim(), &cand_images).nullspace();
            let mut cons = Subspace::new(f, cands.len());
            for row in g.relation_rows(&relations, d, &index) {
                cons.insert(&row);
            }
            for v in &kernel {
                if cons.insert(v) {
                    let terms: Vec<(u32, Path)> = v
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| {
                            let (a, b) = cands[i];
                            let base = &g.basis[b];
                            let mut w = vec![a];
                            w.extend_from_slice(&base.arrows);
                            (
                                c,
                                Path {
                                    source: base.source,
                                    target: arrows[a].target,
                                    arrows: w,
                                },
                            )
                        })
                        .collect();
                    relations.push(Relation { terms });
                }
            }
            let before = g.basis.len();
            let added = g.extend(d, &cands, &kernel);
            for idx in before..g.basis.len() {
                let p = &g.basis[idx];
                let b = cands
                    .iter()
                    .position(|&(a, b)| {
                        a == p.arrows[0]
                            && g.basis[b].arrows == p.arrows[1..]
                            && g.basis[b].source == p.source
                    })
                    .expect("new basis element comes from a candidate");
                images.push(cand_images[b].clone());
            }
            if added == 0 {
                break;
            }
            if d >= length_bound {
                return Err(SkewError::Quiver(QuiverError::NotAdmissible(length_bound)));
            }
            d += 1;
        }
        let algebra = BoundAlgebra::build(f, quiver.clone(), relations.clone(), length_bound)?;
        if algebra.dim() != images.len() {
            return Err(SkewError::Inconsistent(format!(
                "basic algebra has dimension {} but ē(ΛG)ē has dimension {}",
                algebra.dim(),
                images.len()
            )));
        }
        Ok(SkewPresentation {
            skew,
            ctx,
            quiver,
            arrows,
            relations,
            algebra,
            basis_images: images,
        })
    }

    pub fn field(&self) -> Fp {
        self.skew.field()
    }

    /// `dim ē(ΛG)ē`, computed directly from the idempotents.
    pub fn truncated_dim(&self) -> usize {
        let s = &self.skew;
        let mut total = 0;
        for eu in &self.ctx.vertex_elements {
            for ev in &self.ctx.vertex_elements {
                let mut sp = Subspace::new(s.field(), s.dim());
                for g in 0..s.group_order() {
                    for b in 0..s.lambda_dim() {
                        let mut x = vec![0u32; s.dim()];
                        x[s.index(b, g)] = 1;
                        let y = s.mul(&s.mul(ev, &x), eu);
                        if !is_zero_vec(&y) {
                            sp.insert(&y);
                        }
                    }
                }
                total += sp.dim();
            }
        }
        total
    }

    /// The dual group acting on `Q_G`, one generator per cyclic factor.
    pub fn dual_action(&self) -> Result<QuiverAction, SkewError> {
        let s = &self.skew;
        let f = s.field();
        let group = s.action.group.clone();
        let mut generators = Vec::new();
        for k in 0..group.rank() {
            let chi = Character {
                exps: group.generator(k),
            };
            let mut vertex_perm = Vec::new();
            for e in &self.ctx.vertex_elements {
                let img = s.apply_character(&chi, e);
                let w = self
                    .ctx
                    .vertex_elements
                    .iter()
                    .position(|x| *x == img)
                    .ok_or_else(|| {
                        SkewError::Inconsistent(
                            "dual action does not permute vertex idempotents".into(),
                        )
                    })?;
                vertex_perm.push(w);
            }
            let mut arrow_map = Vec::new();
            for ar in &self.arrows {
                let img = s.apply_character(&chi, &ar.element);
                let found = self.arrows.iter().enumerate().find_map(|(b, other)| {
                    if other.source != vertex_perm[ar.source]
                        || other.target != vertex_perm[ar.target]
                    {
                        return None;
                    }
                    proportional(f, &img, &other.element).map(|c| (c, b))
                });
                arrow_map.push(found.ok_or_else(|| {
                    SkewError::Inconsistent(format!(
                        "dual image of `{}` is not a multiple of an arrow",
                        ar.name
                    ))
                })?);
            }
            generators.push(ElementAction {
                vertex_perm,
                arrow_map,
            });
        }
        Ok(QuiverAction { group, generators })
    }

    /// `F(i) = ē_{i₀}` as the list of `Q_G` vertices over the representative of `i`.
    pub fn functor_vertex(&self, i: usize) -> Vec<usize> {
        self.ctx.vertices_over(self.ctx.orbits.representative_of(i))
    }

    /// `F(i) = i₀ ⊗ 1` as an element of `ΛG`.
    pub fn functor_vertex_element(&self, i: usize) -> Vec<u32> {
        let i0 = self.ctx.orbits.representative_of(i);
        let mut e = vec![0u32; self.skew.lambda_dim()];
        e[i0] = 1;
        self.skew.tensor(&e, 0)
    }

    /// `F(a) = κ_j(a) ⊗ κ_j κ_i⁻¹` for an arrow `a: i → j`.
    pub fn functor_arrow(&self, a: usize) -> Vec<u32> {
        let s = &self.skew;
        let q = s.lambda.quiver();
        let (i, j) = (q.arrow(a).source, q.arrow(a).target);
        let (ki, kj) = (self.ctx.orbits.kappa[i], self.ctx.orbits.kappa[j]);
        let grp = &s.action.group;
        let g = grp.mul_idx(kj, grp.inv_idx(ki));
        let mut lam = vec![0u32; s.lambda_dim()];
        let ai = s.lambda.nf_sparse(&Path::new(q, vec![a]).expect("arrow"))[0].0;
        lam[ai] = 1;
        s.tensor(&s.act(kj, &lam), g)
    }

    /// Both sides of the arrow-level semi-covering identity for `(i, j)`.
    pub fn arrow_space_dims(&self, i: usize, j: usize) -> ArrowSpaceCheck {
        let s = &self.skew;
        let f = s.field();
        let q = s.lambda.quiver();
        let n = s.group_order();
        let (ei, ej) = (
            self.functor_vertex_element(i),
            self.functor_vertex_element(j),
        );
        let mut sp = Subspace::new(f, s.dim());
        for a in 0..q.num_arrows() {
            let ai = s.lambda.nf_sparse(&Path::new(q, vec![a]).expect("arrow"))[0].0;
            for g in 0..n {
                let mut lam = vec![0u32; s.lambda_dim()];
                lam[ai] = 1;
                let y = s.mul(&s.mul(&ej, &s.tensor(&lam, g)), &ei);
                if !is_zero_vec(&y) {
                    sp.insert(&y);
                }
            }
        }
        let arrows_between = |x: usize, y: usize| {
            q.arrows()
                .iter()
                .filter(|a| a.source == x && a.target == y)
                .count()
        };
        let o = &self.ctx.orbits;
        let (case, rhs) = if !o.is_fixed(i, n) {
            (
                "G_i != G",
                (0..n)
                    .map(|g| arrows_between(s.acts[g].vertex_perm[i], j))
                    .sum(),
            )
        } else if !o.is_fixed(j, n) {
            (
                "G_j != G",
                (0..n)
                    .map(|g| arrows_between(i, s.acts[g].vertex_perm[j]))
                    .sum(),
            )
        } else {
            ("G_ij = G", n * arrows_between(i, j))
        };
        ArrowSpaceCheck {
            lhs: sp.dim(),
            rhs,
            case: case.to_string(),
        }
    }

    /// Number of `Q_G` arrows by (source, target) name pairs.
    pub fn arrow_multiset(&self) -> BTreeMap<(String, String), usize> {
        let mut m = BTreeMap::new();
        for a in self.quiver.arrows() {
            *m.entry((
                self.quiver.vertex_name(a.source).to_string(),
                self.quiver.vertex_name(a.target).to_string(),
            ))
            .or_insert(0) += 1;
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowSpaceCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub case: String,
}

/// `c` with `x = c·y`, if `y ≠ 0` and such a scalar exists.
pub fn proportional(f: Fp, x: &[u32], y: &[u32]) -> Option<u32> {
    let k = y.iter().position(|&v| v != 0)?;
    let c = f.div(x[k], y[k]);
    if c == 0 {
        return None;
    }
    x.iter()
        .zip(y)
        .all(|(&a, &b)| a == f.mul(c, b))
        .then_some(c)
}

/// Search for a vertex bijection `φ` with equal arrow multiplicities
/// between `φ(i)` and `φ(j)` for all `i, j`.
pub fn quiver_isomorphism(a: &Quiver, b: &Quiver) -> Option<Vec<usize>> {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.num_arrows() != b.num_arrows() {
        return None;
    }
    let mult = |q: &Quiver| {
        let mut m = vec![vec![0usize; n]; n];
        for ar in q.arrows() {
            m[ar.source][ar.target] += 1;
        }
        m
    };
    let (ma, mb) = (mult(a), mult(b));
    let degree = |m: &Vec<Vec<usize>>, v: usize| {
        let outd: usize = m[v].iter().sum();
        let ind: usize = (0..n).map(|u| m[u][v]).sum();
        (outd, ind, m[v][v])
    };
    let da: Vec<_> = (0..n).map(|v| degree(&ma, v)).collect();
    let db: Vec<_> = (0..n).map(|v| degree(&mb, v)).collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn search(
        v: usize,
        n: usize,
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        da: &[(usize, usize, usize)],
        db: &[(usize, usize, usize)],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || da[v] != db[w] {
                continue;
            }
            let ok = (0..v).all(|u| ma[u][v] == mb[phi[u]][w] && ma[v][u] == mb[w][phi[u]]);
            if !ok {
                continue;
            }
            phi[v] = w;
            used[w] = true;
            if search(v + 1, n, ma, mb, da, db, phi, used) {
                return true;
            }
            used[w] = false;
        }
        phi[v] = usize::MAX;
        false
    }
    search(0, n, &ma, &mb, &da, &db, &mut phi, &mut used).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn fig5() -> SkewAlgebra {
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
        let alg = BoundAlgebra::build(f, q, rels, 12).unwrap();
        let g = ElementAction {
            vertex_perm: vec![0, 1, 3, 2],
            arrow_map: vec![(1, 0), (1, 1), (1, 3), (1, 2)],
        };
        let action = QuiverAction {
            group: AbelianGroup::new(vec![2]).unwrap(),
            generators: vec![g],
        };
        SkewAlgebra::new(alg, action).unwrap()
    }

    #[test]
    fn skew_dimension_and_unit() {
        let s = fig5();
        assert_eq!(s.dim(), 20);
        let mut one = vec![0u32; s.dim()];
        for v in 0..4 {
            one[s.index(v, 0)] = 1;
        }
        for b in 0..s.lambda_dim() {
            for g in 0..2 {
                let mut x = vec![0u32; s.dim()];
                x[s.index(b, g)] = 1;
                assert_eq!(s.mul(&one, &x), x);
                assert_eq!(s.mul(&x, &one), x);
            }
        }
    }

    #[test]
    fn skew_associativity_exhaustive() {
        let s = fig5();
        let d = s.dim();
        let basis = |i: usize| {
            let mut x = vec![0u32; d];
            x[i] = 1;
            x
        };
        for i in 0..d {
            for j in 0..d {
                let ij = s.mul(&basis(i), &basis(j));
                for k in 0..d {
                    assert_eq!(
                        s.mul(&ij, &basis(k)),
                        s.mul(&basis(i), &s.mul(&basis(j), &basis(k)))
                    );
                }
            }
        }
    }

    #[test]
    fn beta_times_gamma_g() {
        // (β ⊗ e)(γ ⊗ g) = β g(γ) ⊗ g = β δ ⊗ g = 0, while (β ⊗ e)(α ⊗ g) = βα ⊗ g
        let s = fig5();
        let q = s.lambda.quiver().clone();
        let el = |p: &str| s.lambda.nf(&q.parse_path(p).unwrap());
        let prod = s.mul(&s.tensor(&el("beta"), 0), &s.tensor(&el("gamma"), 1));
        assert!(is_zero_vec(&prod));
        let prod = s.mul(&s.tensor(&el("beta"), 0), &s.tensor(&el("alpha"), 1));
        assert_eq!(prod, s.tensor(&el("beta.alpha"), 1));
    }

    #[test]
    fn example_3_5_presentation() {
        let p = SkewPresentation::build(fig5(), 12).unwrap();
        assert_eq!(p.quiver.num_vertices(), 5);
        assert_eq!(p.quiver.num_arrows(), 6);
        let names: Vec<&str> = p.quiver.vertex_names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["1#0", "1#1", "2#0", "2#1", "3"]);
        assert_eq!(p.algebra.dim(), p.truncated_dim());
        // idempotents are orthogonal and sum to ē
        let s = &p.skew;
        for (u, eu) in p.ctx.vertex_elements.iter().enumerate() {
            for (w, ew) in p.ctx.vertex_elements.iter().enumerate() {
                let prod = s.mul(eu, ew);
                if u == w {
                    assert_eq!(&prod, eu);
                } else {
                    assert!(is_zero_vec(&prod));
                }
            }
        }
        assert_eq!(s.mul(&p.ctx.e_bar, &p.ctx.e_bar), p.ctx.e_bar);
    }

    #[test]
    fn trivial_group_presentation_is_identity() {
        let s = fig5();
        let lambda = s.lambda.clone();
        let skew = SkewAlgebra::new(lambda.clone(), QuiverAction::trivial()).unwrap();
        let p = SkewPresentation::build(skew, 12).unwrap();
        assert_eq!(p.quiver.vertex_names(), lambda.quiver().vertex_names());
        assert_eq!(p.quiver.arrows(), lambda.quiver().arrows());
        assert!(p.algebra.same_ideal_as(&lambda));
        let dual = p.dual_action().unwrap();
        assert!(dual.generators.is_empty());
    }

    #[test]
    fn prop_2_12_dims_example_3_5() {
        let p = SkewPresentation::build(fig5(), 12).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let c = p.arrow_space_dims(i, j);
                assert_eq!(c.lhs, c.rhs, "pair ({i},{j}) case {}", c.case);
            }
        }
    }

    #[test]
    fn functor_on_vertices_3_and_4() {
        let p = SkewPresentation::build(fig5(), 12).unwrap();
        assert_eq!(p.functor_vertex(2), p.functor_vertex(3));
        assert_eq!(p.functor_vertex(2), vec![4]);
    }
}
