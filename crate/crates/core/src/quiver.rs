//! Quivers, paths, relations and bound quiver algebras `KQ/<ρ>`.
//!
//! Paths are written in functional order: `c.b.a` means `a` first, then `b`,
//! then `c`. Internally a [`Path`] stores its arrows in that written order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::StructureConstants;
use crate::field::{axpy, Fp, Matrix, Subspace};

pub const DEFAULT_LENGTH_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
    #[error("relation terms are not parallel: {0}")]
    NotParallel(String),
    #[error("relation term `{0}` has length below 2")]
    RelationTooShort(String),
    #[error("relation `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("empty relation")]
    EmptyRelation,
    #[error("not admissible within bound {0}: nonzero paths of length {0} remain")]
    NotAdmissible(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(skip)]
    vertex_index: HashMap<String, usize>,
    #[serde(skip)]
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(name) || self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateName(name.to_string()));
        }
        self.vertices.push(name.to_string());
        self.vertex_index
            .insert(name.to_string(), self.vertices.len() - 1);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
    ) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(name) || self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateName(name.to_string()));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index
            .insert(name.to_string(), self.arrows.len() - 1);
        Ok(self.arrows.len() - 1)
    }

    pub fn add_arrow_by_name(
        &mut self,
        name: &str,
        source: &str,
        target: &str,
    ) -> Result<usize, QuiverError> {
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        self.add_arrow(name, s, t)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Parse `c.b.a` (functional order). A vertex name denotes its trivial path.
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let text = text.trim();
        if let Ok(v) = self.vertex(text) {
            return Ok(Path::trivial(v));
        }
        let mut arrows = Vec::new();
        for part in text.split('.') {
            arrows.push(self.arrow_id(part.trim())?);
        }
        Path::new(self, arrows).ok_or_else(|| QuiverError::NotComposable(text.to_string()))
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.vertices[p.source].clone();
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A path in functional order: `arrows[0]` is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Checks composability; `arrows` is in written (functional) order.
    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = *arrows.last()?;
        let last = arrows[0];
        for w in arrows.windows(2) {
            // w[1] is applied before w[0]
            if q.arrow(w[1]).target != q.arrow(w[0]).source {
                return None;
            }
        }
        Some(Path {
            source: q.arrow(first).source,
            target: q.arrow(last).target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    /// Trivial paths have no arrows.
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ other` (other first), if composable.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }
    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }
    pub fn degree(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn check_parallel(&self, q: &Quiver) -> Result<(), QuiverError> {
        let Some((_, first)) = self.terms.first() else {
            return Err(QuiverError::EmptyRelation);
        };
        for (_, p) in &self.terms {
            if p.source != first.source || p.target != first.target {
                return Err(QuiverError::NotParallel(self.display(q, None)));
            }
        }
        Ok(())
    }

    /// Checks the conditions needed for the graded construction.
    pub fn check_admissible_homogeneous(&self, q: &Quiver) -> Result<(), QuiverError> {
        self.check_parallel(q)?;
        let d = self.degree();
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(QuiverError::RelationTooShort(q.path_name(p)));
            }
            if p.len() != d {
                return Err(QuiverError::NotHomogeneous(self.display(q, None)));
            }
        }
        Ok(())
    }

    pub fn display(&self, q: &Quiver, f: Option<Fp>) -> String {
        self.terms
            .iter()
            .map(|(c, p)| {
                let c = f.map(|f| f.signed(*c)).unwrap_or(*c as i64);
                format!("{}*{}", c, q.path_name(p))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sparse linear combination keyed by basis index.
pub type Sparse = Vec<(usize, u32)>;

fn accumulate(f: Fp, acc: &mut BTreeMap<usize, u32>, c: u32, v: &Sparse) {
    for &(i, x) in v {
        let e = acc.entry(i).or_insert(0);
        *e = f.mul_add(*e, c, x);
    }
}

fn finish(acc: BTreeMap<usize, u32>) -> Sparse {
    acc.into_iter().filter(|&(_, x)| x != 0).collect()
}

/// Degree-by-degree quotient of a path algebra, shared by relation-defined
/// algebras and by the basic presentation of skew group algebras.
#[derive(Clone, Debug)]
pub(crate) struct GradedQuotient {
    pub f: Fp,
    pub endpoints: Vec<(usize, usize)>,
    /// Basis paths, grouped by degree in construction order.
    pub basis: Vec<Path>,
    pub by_degree: Vec<Vec<usize>>,
    /// `lm[b][a]`: normal form of `a · b` (absent if not composable).
    pub lm: Vec<HashMap<usize, Sparse>>,
}

impl GradedQuotient {
    pub fn new(f: Fp, num_vertices: usize, endpoints: Vec<(usize, usize)>) -> Self {
        GradedQuotient {
            f,
            endpoints,
            basis: (0..num_vertices).map(Path::trivial).collect(),
            by_degree: vec![(0..num_vertices).collect()],
            lm: vec![HashMap::new(); num_vertices],
        }
    }

    /// Candidates of degree `d`: `(arrow, basis index of degree d-1)`.
    pub fn candidates(&self, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &b in &self.by_degree[d - 1] {
            let t = self.basis[b].target;
            for (a, &(s, _)) in self.endpoints.iter().enumerate() {
                if s == t {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Normal form of `word · b` where `word` is in written order.
    pub fn apply_word(&self, word: &[usize], b: usize) -> Sparse {
        let f = self.f;
        let mut v: Sparse = vec![(b, 1)];
        for &a in word.iter().rev() {
            let mut acc = BTreeMap::new();
            for &(j, c) in &v {
                if let Some(img) = self.lm[j].get(&a) {
                    accumulate(f, &mut acc, c, img);
                }
            }
            v = finish(acc);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    pub fn nf_path(&self, p: &Path) -> Sparse {
        self.apply_word(&p.arrows, p.source)
    }

    /// Rows (over the candidates of degree `d`) spanned by `r · b` for
    /// relations `r` and basis elements `b`.
    pub fn relation_rows(
        &self,
        relations: &[Relation],
        d: usize,
        cand_index: &HashMap<(usize, usize), usize>,
    ) -> Vec<Vec<u32>> {
        let f = self.f;
        let mut rows = Vec::new();
        for r in relations {
            let k = r.degree();
            if k > d || k == 0 {
                continue;
            }
            for &b in &self.by_degree[d - k] {
                if self.basis[b].target != r.source() {
                    continue;
                }
                let mut row = vec![0u32; cand_index.len()];
                for (c, p) in &r.terms {
                    let first = p.arrows[0];
                    for (j, x) in self.apply_word(&p.arrows[1..], b) {
                        let idx = cand_index[&(first, j)];
                        row[idx] = f.mul_add(row[idx], *c, x);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Add degree `d` given the kernel rows over its candidates. Earlier
    /// candidates are kept; later ones are rewritten in terms of them.
    pub fn extend(&mut self, d: usize, cands: &[(usize, usize)], kernel: &[Vec<u32>]) -> usize {
        debug_assert_eq!(self.by_degree.len(), d);
        let f = self.f;
        let m = cands.len();
        let rev: Vec<Vec<u32>> = kernel
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let rref = Matrix::from_rows(f, &rev, m).rref();
        let mut pivot_row: HashMap<usize, usize> = HashMap::new();
        for (r, &pc) in rref.pivots.iter().enumerate() {
            pivot_row.insert(m - 1 - pc, r);
        }
        let mut new_index = vec![usize::MAX; m];
        let mut added = Vec::new();
        for c in 0..m {
            if !pivot_row.contains_key(&c) {
                let (a, b) = cands[c];
                let p = Path {
                    source: self.basis[b].source,
                    target: self.endpoints[a].1,
                    arrows: {
                        let mut w = vec![a];
                        w.extend_from_slice(&self.basis[b].arrows);
                        w
                    },
                };
                self.basis.push(p);
                self.lm.push(HashMap::new());
                new_index[c] = self.basis.len() - 1;
                added.push(self.basis.len() - 1);
            }
        }
        for c in 0..m {
            let (a, b) = cands[c];
            let nf: Sparse = match pivot_row.get(&c) {
                None => vec![(new_index[c], 1)],
                Some(&r) => {
                    let row = rref.matrix.row(r);
                    let mut out = Vec::new();
                    for c2 in 0..m {
                        let x = row[m - 1 - c2];
                        if c2 != c && x != 0 {
                            debug_assert!(new_index[c2] != usize::MAX);
                            out.push((new_index[c2], f.neg(x)));
                        }
                    }
                    out.sort();
                    out
                }
            };
            self.lm[b].insert(a, nf);
        }
        self.by_degree.push(added.clone());
        added.len()
    }
}

/// `KQ/<ρ>` with a normal-form path basis.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    f: Fp,
    quiver: Quiver,
    relations: Vec<Relation>,
    length_bound: usize,
    graded: GradedQuotient,
    structure: StructureConstants,
}

impl BoundAlgebra {
    /// Degree-by-degree elimination. Relations must be homogeneous of length at least 2.
    pub fn build(
        f: Fp,
        quiver: Quiver,
        relations: Vec<Relation>,
        length_bound: usize,
    ) -> Result<Self, QuiverError> {
        for r in &relations {
            r.check_admissible_homogeneous(&quiver)?;
        }
        let endpoints = quiver
            .arrows()
            .iter()
            .map(|a| (a.source, a.target))
            .collect();
        let mut g = GradedQuotient::new(f, quiver.num_vertices(), endpoints);
        let mut d = 1;
        loop {
            let cands = g.candidates(d);
            let index: HashMap<(usize, usize), usize> =
                cands.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let rows = g.relation_rows(&relations, d, &index);
            let added = g.extend(d, &cands, &rows);
            if added == 0 {
                // record the empty products of the top degree
                break;
            }
            if d >= length_bound {
                return Err(QuiverError::NotAdmissible(length_bound));
            }
            d += 1;
        }
        Ok(Self::from_graded(f, quiver, relations, length_bound, g))
    }

    pub(crate) fn from_graded(
        f: Fp,
        quiver: Quiver,
        relations: Vec<Relation>,
        length_bound: usize,
        graded: GradedQuotient,
    ) -> Self {
        let dim = graded.basis.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = vec![0u32; dim];
                let (bi, bj) = (&graded.basis[i], &graded.basis[j]);
                if bi.source == bj.target {
                    for (k, c) in graded.apply_word(&bi.arrows, j) {
                        v[k] = c;
                    }
                }
                products.push(v);
            }
        }
        let structure = StructureConstants::new(f, dim, products);
        BoundAlgebra {
            f,
            quiver,
            relations,
            length_bound,
            graded,
            structure,
        }
    }

    pub fn field(&self) -> Fp {
        self.f
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn length_bound(&self) -> usize {
        self.length_bound
    }
    pub fn dim(&self) -> usize {
        self.graded.basis.len()
    }
    pub fn basis(&self) -> &[Path] {
        &self.graded.basis
    }
    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// Number of basis paths of each degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.graded.by_degree.iter().map(|d| d.len()).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Degree of the top nonzero component plus one: all paths this long vanish.
    pub fn loewy_bound(&self) -> usize {
        self.graded_dims().len()
    }

    pub fn basis_by_degree(&self, d: usize) -> &[usize] {
        self.graded
            .by_degree
            .get(d)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Basis indices of paths from `i` to `j`.
    pub fn paths_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.graded.basis[b].source == i && self.graded.basis[b].target == j)
            .collect()
    }

    pub fn vertex_element(&self, v: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.dim()];
        e[v] = 1;
        e
    }

    pub fn nf_sparse(&self, p: &Path) -> Sparse {
        self.graded.nf_path(p)
    }

    pub fn nf(&self, p: &Path) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (i, c) in self.graded.nf_path(p) {
            v[i] = c;
        }
        v
    }

    pub fn relation_element(&self, r: &Relation) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (c, p) in &r.terms {
            axpy(self.f, &mut v, *c, &self.nf(p));
        }
        v
    }

    /// Coordinates of `a · b_j` for an arrow `a`, or zero when not composable.
    pub fn arrow_times_basis(&self, a: usize, j: usize) -> &[(usize, u32)] {
        self.graded.lm[j]
            .get(&a)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.structure.mul(x, y)
    }

    pub fn basis_name(&self, b: usize) -> String {
        self.quiver.path_name(&self.graded.basis[b])
    }

    /// Equality of ideals with another algebra on the same quiver: each side's
    /// generators reduce to zero in the other and the graded dimensions agree.
    pub fn same_ideal_as(&self, other: &BoundAlgebra) -> bool {
        if self.quiver.num_vertices() != other.quiver.num_vertices()
            || self.quiver.arrows() != other.quiver.arrows()
        {
            return false;
        }
        let zero_in = |alg: &BoundAlgebra, rels: &[Relation]| {
            rels.iter()
                .all(|r| alg.relation_element(r).iter().all(|&x| x == 0))
        };
        zero_in(self, &other.relations)
            && zero_in(other, &self.relations)
            && self.graded_dims() == other.graded_dims()
    }

    /// Span check helper: dimension of `e_j Λ e_i`.
    pub fn dim_between(&self, i: usize, j: usize) -> usize {
        self.paths_between(i, j).len()
    }

    /// The opposite algebra: arrows reversed, words reversed, same basis order.
    pub fn opposite(&self) -> BoundAlgebra {
        let q = &self.quiver;
        let mut op = Quiver::new();
        for v in q.vertex_names() {
            op.add_vertex(v).expect("unique names");
        }
        for a in q.arrows() {
            op.add_arrow(&a.name, a.target, a.source)
                .expect("unique names");
        }
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        (
                            *c,
                            Path {
                                source: p.target,
                                target: p.source,
                                arrows: p.arrows.iter().rev().copied().collect(),
                            },
                        )
                    })
                    .collect(),
            })
            .collect();
        BoundAlgebra::build(self.f, op, relations, self.length_bound)
            .expect("opposite of an admissible algebra")
    }

    /// Subspace of elements of the radical power `rad^k Λ` (paths of length ≥ k).
    pub fn radical_power(&self, k: usize) -> Subspace {
        let mut s = Subspace::new(self.f, self.dim());
        for b in 0..self.dim() {
            if self.graded.basis[b].len() >= k {
                s.insert(&self.vertex_or_basis(b));
            }
        }
        s
    }

    fn vertex_or_basis(&self, b: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.dim()];
        e[b] = 1;
        e
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        let mut q = Quiver::new();
        for v in vs {
            q.add_vertex(v).unwrap();
        }
        for (n, s, t) in arrows {
            q.add_arrow_by_name(n, s, t).unwrap();
        }
        q
    }

    fn rel(q: &Quiver, terms: &[(i64, &str)], f: Fp) -> Relation {
        Relation {
            terms: terms
                .iter()
                .map(|(c, p)| (f.reduce(*c), q.parse_path(p).unwrap()))
                .collect(),
        }
    }

    fn f() -> Fp {
        Fp::new(1009).unwrap()
    }

    /// Brute-force oracle: enumerate all paths up to length `n`, and compute
    /// dim of KQ/I degreewise by spanning `u r w` for all paths u, w.
    fn brute_force_dim(q: &Quiver, rels: &[Relation], n: usize, f: Fp) -> usize {
        let mut paths_by_len: Vec<Vec<Path>> =
            vec![(0..q.num_vertices()).map(Path::trivial).collect()];
        for l in 1..=n {
            let mut next = Vec::new();
            for p in &paths_by_len[l - 1] {
                for a in q.arrows_from(p.target) {
                    let ap = Path::new(q, vec![a]).unwrap();
                    next.push(ap.after(p).unwrap());
                }
            }
            paths_by_len.push(next);
        }
        let mut total = 0;
        for l in 0..=n {
            let idx: HashMap<Path, usize> = paths_by_len[l]
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            let mut s = Subspace::new(f, idx.len());
            for r in rels {
                let k = r.degree();
                if k > l {
                    continue;
                }
                for i in 0..=(l - k) {
                    for u in &paths_by_len[i] {
                        for w in &paths_by_len[l - k - i] {
                            let mut v = vec![0u32; idx.len()];
                            let mut ok = false;
                            for (c, p) in &r.terms {
                                if let Some(x) = u.after(p).and_then(|x| x.after(w)) {
                                    let j = idx[&x];
                                    v[j] = f.add(v[j], *c);
                                    ok = true;
                                }
                            }
                            if ok {
                                s.insert(&v);
                            }
                        }
                    }
                }
            }
            total += idx.len() - s.dim();
        }
        total
    }

    #[test]
    fn single_vertex() {
        let q = quiver(&["1"], &[]);
        let a = BoundAlgebra::build(f(), q, vec![], 12).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn figure5_algebra_matches_oracle() {
        let fld = f();
        let q = quiver(
            &["1", "2", "3", "4"],
            &[
                ("alpha", "1", "2"),
                ("beta", "2", "1"),
                ("gamma", "3", "2"),
                ("delta", "4", "2"),
            ],
        );
        let rels = vec![
            rel(&q, &[(1, "alpha.beta.alpha")], fld),
            rel(&q, &[(1, "beta.alpha.beta")], fld),
            rel(&q, &[(1, "beta.gamma")], fld),
            rel(&q, &[(1, "beta.delta")], fld),
        ];
        let oracle = brute_force_dim(&q, &rels, 6, fld);
        let a = BoundAlgebra::build(fld, q.clone(), rels, 12).unwrap();
        assert_eq!(a.dim(), oracle);
        assert_eq!(a.dim(), 10);
        let aba = q.parse_path("alpha.beta.alpha").unwrap();
        assert!(a.nf(&aba).iter().all(|&x| x == 0));
        assert!(a.structure().is_associative());
    }

    #[test]
    fn figure1_algebra_matches_oracle() {
        let fld = f();
        let q = quiver(
            &["v1", "v2", "v1'", "v2'", "v3", "v4"],
            &[
                ("alpha", "v1", "v2"),
                ("beta", "v1", "v2'"),
                ("alpha'", "v1'", "v2'"),
                ("beta'", "v1'", "v2"),
                ("gamma", "v2", "v3"),
                ("gamma'", "v2'", "v3"),
                ("delta", "v3", "v4"),
            ],
        );
        let rels = vec![
            rel(&q, &[(1, "gamma.alpha"), (1, "gamma'.beta")], fld),
            rel(&q, &[(1, "gamma.beta'"), (1, "gamma'.alpha'")], fld),
        ];
        let oracle = brute_force_dim(&q, &rels, 5, fld);
        let a = BoundAlgebra::build(fld, q, rels, 12).unwrap();
        assert_eq!(a.dim(), oracle);
        assert!(a.structure().is_associative());
        let id = a.structure().identity().unwrap();
        let sum: Vec<u32> = (0..a.dim()).map(|i| if i < 6 { 1 } else { 0 }).collect();
        assert_eq!(id, sum);
    }

    #[test]
    fn not_admissible() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        assert_eq!(
            BoundAlgebra::build(f(), q, vec![], 5).unwrap_err(),
            QuiverError::NotAdmissible(5)
        );
    }

    #[test]
    fn rejects_inhomogeneous() {
        let fld = f();
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let r = rel(&q, &[(1, "x.x"), (-1, "x.x.x")], fld);
        assert!(matches!(
            BoundAlgebra::build(fld, q, vec![r], 5),
            Err(QuiverError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn normal_form_idempotent_and_opposite() {
        let fld = f();
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        let r = rel(&q, &[(1, "b.a")], fld);
        let a = BoundAlgebra::build(fld, q, vec![r], 12).unwrap();
        assert_eq!(a.dim(), 5);
        for (i, p) in a.basis().iter().enumerate() {
            let v = a.nf(p);
            assert_eq!(v.iter().filter(|&&x| x != 0).count(), 1);
            assert_eq!(v[i], 1);
        }
        let op = a.opposite();
        assert_eq!(op.dim(), 5);
        assert_eq!(op.quiver().arrow(0).source, 1);
    }
}
