//! Finite abelian groups, their characters over F_p, and actions on bound
//! quiver algebras by vertex permutations and arrow rescalings.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Fp, LinalgError};
use crate::quiver::{BoundAlgebra, Path, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor orders must be positive")]
    ZeroOrder,
    #[error("field F_{p} has no primitive roots of unity of order {n}")]
    FieldIncompatible { p: u32, n: u32 },
    #[error("arrow `{0}` is not an eigen-arrow of its endpoint stabilizer")]
    NotEigenArrow(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Z_{n1} x ... x Z_{nk}`; elements are exponent tuples, indexed in
/// lexicographic order with the first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

pub type GroupElem = Vec<u32>;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::ZeroOrder);
        }
        Ok(AbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &n| acc / gcd(acc, n) * n)
    }

    pub fn identity(&self) -> GroupElem {
        vec![0; self.orders.len()]
    }

    pub fn generator(&self, k: usize) -> GroupElem {
        let mut g = self.identity();
        g[k] = 1 % self.orders[k];
        g
    }

    pub fn index(&self, g: &[u32]) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> GroupElem {
        let mut g = vec![0; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            let n = self.orders[k] as usize;
            g[k] = (idx % n) as u32;
            idx /= n;
        }
        g
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn mul(&self, g: &[u32], h: &[u32]) -> GroupElem {
        g.iter()
            .zip(h)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn inv(&self, g: &[u32]) -> GroupElem {
        g.iter()
            .zip(&self.orders)
            .map(|(a, n)| (n - a) % n)
            .collect()
    }

    pub fn mul_idx(&self, g: usize, h: usize) -> usize {
        self.index(&self.mul(&self.element(g), &self.element(h)))
    }

    pub fn inv_idx(&self, g: usize) -> usize {
        self.index(&self.inv(&self.element(g)))
    }

    pub fn label(g: &[u32]) -> String {
        if g.is_empty() {
            "e".to_string()
        } else {
            g.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("_")
        }
    }
}

/// A character `g ↦ Π ζ_i^{c_i g_i}`, stored by its exponent tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character {
    pub exps: Vec<u32>,
}

impl Character {
    pub fn label(&self) -> String {
        if self.exps.is_empty() {
            "0".to_string()
        } else {
            self.exps
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("_")
        }
    }
}

/// Character values of a group over a fixed prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub f: Fp,
    pub group: AbelianGroup,
    /// The least primitive `n_i`-th root of unity per factor.
    pub zetas: Vec<u32>,
}

impl CharacterTable {
    pub fn new(f: Fp, group: AbelianGroup) -> Result<Self, GroupError> {
        let mut zetas = Vec::new();
        for &n in group.orders() {
            let z = f
                .primitive_root_of_unity(n)
                .map_err(|_| GroupError::FieldIncompatible { p: f.p(), n })?;
            zetas.push(z);
        }
        Ok(CharacterTable { f, group, zetas })
    }

    pub fn all(&self) -> Vec<Character> {
        self.group
            .elements()
            .into_iter()
            .map(|exps| Character { exps })
            .collect()
    }

    pub fn trivial(&self) -> Character {
        Character {
            exps: self.group.identity(),
        }
    }

    pub fn eval(&self, chi: &Character, g: &[u32]) -> u32 {
        let f = self.f;
        let mut v = 1;
        for (k, (&zeta, &gk)) in self.zetas.iter().zip(g).enumerate() {
            let e = (chi.exps[k] as u64 * gk as u64) % self.group.orders()[k] as u64;
            v = f.mul(v, f.pow(zeta, e));
        }
        v
    }

    pub fn mul(&self, a: &Character, b: &Character) -> Character {
        Character {
            exps: self.group.mul(&a.exps, &b.exps),
        }
    }

    pub fn inv(&self, a: &Character) -> Character {
        Character {
            exps: self.group.inv(&a.exps),
        }
    }

    /// The character with the given values on the generators, if any.
    pub fn from_generator_values(&self, values: &[u32]) -> Option<Character> {
        let mut exps = Vec::new();
        for (k, &v) in values.iter().enumerate() {
            let n = self.group.orders()[k];
            let e = (0..n).find(|&e| self.f.pow(self.zetas[k], e as u64) == v)?;
            exps.push(e);
        }
        Some(Character { exps })
    }
}

/// Action of one group element: vertex permutation and monomial arrow map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementAction {
    pub vertex_perm: Vec<usize>,
    /// `arrow a ↦ scalar * arrow`.
    pub arrow_map: Vec<(u32, usize)>,
}

impl ElementAction {
    pub fn identity(q: &Quiver) -> Self {
        ElementAction {
            vertex_perm: (0..q.num_vertices()).collect(),
            arrow_map: (0..q.num_arrows()).map(|a| (1, a)).collect(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ElementAction, f: Fp) -> ElementAction {
        ElementAction {
            vertex_perm: other
                .vertex_perm
                .iter()
                .map(|&v| self.vertex_perm[v])
                .collect(),
            arrow_map: other
                .arrow_map
                .iter()
                .map(|&(c, b)| {
                    let (d, b2) = self.arrow_map[b];
                    (f.mul(c, d), b2)
                })
                .collect(),
        }
    }

    pub fn act_on_path(&self, p: &Path, f: Fp) -> (u32, Path) {
        let mut c = 1;
        let arrows = p
            .arrows
            .iter()
            .map(|&a| {
                let (s, b) = self.arrow_map[a];
                c = f.mul(c, s);
                b
            })
            .collect();
        (
            c,
            Path {
                source: self.vertex_perm[p.source],
                target: self.vertex_perm[p.target],
                arrows,
            },
        )
    }
}

/// A group acting on a quiver through its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverAction {
    pub group: AbelianGroup,
    pub generators: Vec<ElementAction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: &str, witness: String) {
        self.failures.push(ValidationFailure {
            check: check.to_string(),
            witness,
        });
    }
}

/// Orbits, stabilizers and the chosen representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitData {
    /// Orbit id per vertex.
    pub orbit_of: Vec<usize>,
    /// Vertices of each orbit, in vertex order.
    pub orbits: Vec<Vec<usize>>,
    /// Representative per orbit: the lexicographically least vertex name.
    pub representatives: Vec<usize>,
    /// Stabilizer of each vertex as a list of group element indices.
    pub stabilizers: Vec<Vec<usize>>,
    /// `κ_i`: least group element index with `κ_i(i)` the representative.
    pub kappa: Vec<usize>,
}

impl OrbitData {
    pub fn is_fixed(&self, v: usize, n: usize) -> bool {
        self.stabilizers[v].len() == n
    }

    pub fn representative_of(&self, v: usize) -> usize {
        self.representatives[self.orbit_of[v]]
    }
}

impl QuiverAction {
    pub fn trivial() -> Self {
        QuiverAction {
            group: AbelianGroup::trivial(),
            generators: vec![],
        }
    }

    /// Actions of every group element, in element index order.
    pub fn element_actions(&self, q: &Quiver, f: Fp) -> Vec<ElementAction> {
        let n = self.group.order();
        let mut out = Vec::with_capacity(n);
        for idx in 0..n {
            let g = self.group.element(idx);
            let mut act = ElementAction::identity(q);
            for (k, &e) in g.iter().enumerate() {
                for _ in 0..e {
                    act = self.generators[k].compose(&act, f);
                }
            }
            out.push(act);
        }
        out
    }

    pub fn validate(&self, alg: &BoundAlgebra) -> ValidationReport {
        let q = alg.quiver();
        let f = alg.field();
        let mut rep = ValidationReport::default();
        if self.generators.len() != self.group.rank() {
            rep.fail(
                "generator count",
                format!(
                    "{} generators for {} cyclic factors",
                    self.generators.len(),
                    self.group.rank()
                ),
            );
            return rep;
        }
        for (k, g) in self.generators.iter().enumerate() {
            let gname = format!("g{}", k + 1);
            let mut seen = vec![false; q.num_vertices()];
            for &w in &g.vertex_perm {
                seen[w] = true;
            }
            if seen.iter().any(|s| !s) {
                rep.fail(
                    "vertex permutation",
                    format!("{gname} is not a bijection on vertices"),
                );
            }
            let mut seen_a = vec![false; q.num_arrows()];
            for (a, &(c, b)) in g.arrow_map.iter().enumerate() {
                seen_a[b] = true;
                let arr = q.arrow(a);
                let img = q.arrow(b);
                if c == 0 {
                    rep.fail(
                        "arrow scalar",
                        format!("{gname} sends `{}` to zero", arr.name),
                    );
                }
                if img.source != g.vertex_perm[arr.source]
                    || img.target != g.vertex_perm[arr.target]
                {
                    rep.fail(
                        "arrow endpoints",
                        format!(
                            "{gname}({}) = {} does not respect endpoints",
                            arr.name, img.name
                        ),
                    );
                }
            }
            if seen_a.iter().any(|s| !s) {
                rep.fail("arrow map", format!("{gname} is not a bijection on arrows"));
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        let id = ElementAction::identity(q);
        for (k, g) in self.generators.iter().enumerate() {
            let mut pow = ElementAction::identity(q);
            for _ in 0..self.group.orders()[k] {
                pow = g.compose(&pow, f);
            }
            if pow != id {
                rep.fail(
                    "generator order",
                    format!("g{}^{} is not the identity", k + 1, self.group.orders()[k]),
                );
            }
            for (l, h) in self.generators.iter().enumerate().skip(k + 1) {
                if g.compose(h, f) != h.compose(g, f) {
                    rep.fail(
                        "commutation",
                        format!("g{} and g{} do not commute", k + 1, l + 1),
                    );
                }
            }
        }
        for (k, g) in self.generators.iter().enumerate() {
            for r in alg.relations() {
                let mut v = vec![0u32; alg.dim()];
                for (c, p) in &r.terms {
                    let (s, gp) = g.act_on_path(p, f);
                    crate::field::axpy(f, &mut v, f.mul(*c, s), &alg.nf(&gp));
                }
                if v.iter().any(|&x| x != 0) {
                    rep.fail(
                        "ideal preserved",
                        format!("g{}({}) is not in the ideal", k + 1, r.display(q, Some(f))),
                    );
                }
            }
        }
        let n = self.group.order();
        let orbits = self.orbits(q, f);
        for v in 0..q.num_vertices() {
            let s = orbits.stabilizers[v].len();
            if s != 1 && s != n {
                rep.fail(
                    "stabilizer trivial or full",
                    format!(
                        "vertex `{}` has stabilizer of order {s} in a group of order {n}",
                        q.vertex_name(v)
                    ),
                );
            }
        }
        if rep.is_valid() {
            let acts = self.element_actions(q, f);
            for a in 0..q.num_arrows() {
                if let Err(e) = arrow_character_values(&acts, &orbits, q, a) {
                    rep.fail("eigen-arrow", e.to_string());
                }
            }
        }
        rep
    }

    pub fn orbits(&self, q: &Quiver, f: Fp) -> OrbitData {
        let acts = self.element_actions(q, f);
        let nv = q.num_vertices();
        let mut orbit_of = vec![usize::MAX; nv];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for v in 0..nv {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = acts.iter().map(|a| a.vertex_perm[v]).collect();
            members.sort();
            members.dedup();
            for &w in &members {
                orbit_of[w] = orbits.len();
            }
            orbits.push(members);
        }
        let representatives: Vec<usize> = orbits
            .iter()
            .map(|o| {
                *o.iter()
                    .min_by(|a, b| q.vertex_name(**a).cmp(q.vertex_name(**b)))
                    .expect("nonempty orbit")
            })
            .collect();
        let stabilizers = (0..nv)
            .map(|v| {
                (0..acts.len())
                    .filter(|&g| acts[g].vertex_perm[v] == v)
                    .collect()
            })
            .collect();
        let kappa = (0..nv)
            .map(|v| {
                let r = representatives[orbit_of[v]];
                (0..acts.len())
                    .find(|&g| acts[g].vertex_perm[v] == r)
                    .expect("orbit contains representative")
            })
            .collect();
        OrbitData {
            orbit_of,
            orbits,
            representatives,
            stabilizers,
            kappa,
        }
    }
}

/// Values `χ_a(g)` for `g` in the joint stabilizer of the endpoints of `a`.
pub fn arrow_character_values(
    acts: &[ElementAction],
    orbits: &OrbitData,
    q: &Quiver,
    a: usize,
) -> Result<Vec<(usize, u32)>, GroupError> {
    let arr = q.arrow(a);
    let mut out = Vec::new();
    for &g in &orbits.stabilizers[arr.source] {
        if !orbits.stabilizers[arr.target].contains(&g) {
            continue;
        }
        let (c, b) = acts[g].arrow_map[a];
        if b != a {
            return Err(GroupError::NotEigenArrow(arr.name.clone()));
        }
        out.push((g, c));
    }
    Ok(out)
}

/// The character `χ_a` of an arrow whose endpoints are both fixed by the
/// whole group; for other arrows the joint stabilizer is trivial and the
/// trivial character is returned.
pub fn arrow_character(
    table: &CharacterTable,
    acts: &[ElementAction],
    orbits: &OrbitData,
    q: &Quiver,
    a: usize,
) -> Result<Character, GroupError> {
    let vals = arrow_character_values(acts, orbits, q, a)?;
    if vals.len() < table.group.order() {
        return Ok(table.trivial());
    }
    let gens: Vec<u32> = (0..table.group.rank())
        .map(|k| {
            let gi = table.group.index(&table.group.generator(k));
            vals.iter()
                .find(|(g, _)| *g == gi)
                .map(|x| x.1)
                .expect("full stabilizer")
        })
        .collect();
    table
        .from_generator_values(&gens)
        .ok_or_else(|| GroupError::NotEigenArrow(q.arrow(a).name.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{BoundAlgebra, Relation};

    fn fig5() -> (BoundAlgebra, QuiverAction) {
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
        (alg, action)
    }

    #[test]
    fn group_indexing() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        for i in 0..6 {
            assert_eq!(g.index(&g.element(i)), i);
        }
        assert_eq!(g.elements()[1], vec![0, 1]);
        assert_eq!(g.mul(&[1, 2], &[1, 2]), vec![0, 1]);
        assert_eq!(g.inv(&[1, 2]), vec![1, 1]);
    }

    #[test]
    fn characters_z2() {
        let f = Fp::new(1009).unwrap();
        let t = CharacterTable::new(f, AbelianGroup::new(vec![2]).unwrap()).unwrap();
        let chars = t.all();
        assert_eq!(chars.len(), 2);
        assert_eq!(t.eval(&chars[1], &[1]), f.neg(1));
        assert_eq!(t.eval(&chars[0], &[1]), 1);
    }

    #[test]
    fn characters_z3_cube_roots() {
        let f = Fp::new(1009).unwrap();
        let t = CharacterTable::new(f, AbelianGroup::new(vec![3]).unwrap()).unwrap();
        for chi in t.all() {
            for g in t.group.elements() {
                assert_eq!(f.pow(t.eval(&chi, &g), 3), 1);
            }
        }
    }

    #[test]
    fn klein_four_character_table() {
        let f = Fp::new(1009).unwrap();
        let t = CharacterTable::new(f, AbelianGroup::new(vec![2, 2]).unwrap()).unwrap();
        let chars = t.all();
        assert_eq!(chars.len(), 4);
        for a in &chars {
            // every character squares to the trivial one
            assert_eq!(t.mul(a, a), t.trivial());
            for b in &chars {
                let ab = t.mul(a, b);
                for g in t.group.elements() {
                    assert_eq!(t.eval(&ab, &g), f.mul(t.eval(a, &g), t.eval(b, &g)));
                }
            }
        }
    }

    #[test]
    fn incompatible_field() {
        let f = Fp::new(1013).unwrap(); // 1012 = 4 * 253, no cube roots of unity
        assert!(matches!(
            CharacterTable::new(f, AbelianGroup::new(vec![3]).unwrap()),
            Err(GroupError::FieldIncompatible { .. })
        ));
    }

    #[test]
    fn example_3_5_action_is_valid() {
        let (alg, action) = fig5();
        let rep = action.validate(&alg);
        assert!(rep.is_valid(), "{:?}", rep);
        let o = action.orbits(alg.quiver(), alg.field());
        assert_eq!(o.orbits, vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(o.representatives, vec![0, 1, 2]);
        assert_eq!(o.stabilizers[0].len(), 2);
        assert_eq!(o.stabilizers[2].len(), 1);
        assert_eq!(o.kappa[3], 1);
    }

    #[test]
    fn swapping_2_and_3_is_invalid() {
        let (alg, mut action) = fig5();
        action.generators[0].vertex_perm = vec![0, 2, 1, 3];
        let rep = action.validate(&alg);
        assert!(!rep.is_valid());
        assert!(rep.failures.iter().any(|f| f.check == "arrow endpoints"));
    }

    #[test]
    fn negated_loop_has_sign_character() {
        let f = Fp::new(1009).unwrap();
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_arrow_by_name("x", "1", "1").unwrap();
        let r = Relation {
            terms: vec![(1, q.parse_path("x.x").unwrap())],
        };
        let alg = BoundAlgebra::build(f, q.clone(), vec![r], 12).unwrap();
        let action = QuiverAction {
            group: AbelianGroup::new(vec![2]).unwrap(),
            generators: vec![ElementAction {
                vertex_perm: vec![0],
                arrow_map: vec![(f.neg(1), 0)],
            }],
        };
        assert!(action.validate(&alg).is_valid());
        let table = CharacterTable::new(f, action.group.clone()).unwrap();
        let acts = action.element_actions(&q, f);
        let orbits = action.orbits(&q, f);
        let chi = arrow_character(&table, &acts, &orbits, &q, 0).unwrap();
        assert_eq!(chi.exps, vec![1]);
    }

    #[test]
    fn trivial_action() {
        let (alg, _) = fig5();
        let action = QuiverAction::trivial();
        assert!(action.validate(&alg).is_valid());
        let o = action.orbits(alg.quiver(), alg.field());
        assert_eq!(o.orbits.len(), 4);
        assert!(o.stabilizers.iter().all(|s| s.len() == 1));
    }
}
