//! Recognizers for gentle and skew-gentle bound quivers.
//!
//! Both checks work on the declared quiver and relation list, so the
//! idempotent relations `f.f - f` of special loops never need to be turned
//! into a graded algebra. Compositions are tested as functional paths:
//! "first `b`, then `c`" is the path `c.b`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::field::Fp;
use crate::quiver::{Path, Quiver, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GentleReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl GentleReport {
    fn push(&mut self, clause: &str, witness: String) {
        self.violations.push(Violation {
            clause: clause.to_string(),
            witness,
        });
    }

    fn finish(mut self) -> Self {
        self.holds = self.violations.is_empty();
        self
    }
}

/// Length-two zero relations as `(second, first)` arrow pairs.
fn monomial_pairs(
    q: &Quiver,
    f: Fp,
    relations: &[&Relation],
    report: &mut GentleReport,
) -> BTreeSet<(usize, usize)> {
    let mut zero = BTreeSet::new();
    for r in relations {
        let terms: Vec<&(u32, Path)> = r.terms.iter().filter(|(c, _)| *c % f.p() != 0).collect();
        match terms.as_slice() {
            [(_, p)] if p.len() == 2 => {
                zero.insert((p.arrows[0], p.arrows[1]));
            }
            _ => report.push(
                "monomial",
                format!(
                    "relation {} is not a monomial of length 2",
                    r.display(q, Some(f))
                ),
            ),
        }
    }
    zero
}

fn local_conditions(
    q: &Quiver,
    arrows: &[usize],
    zero: &BTreeSet<(usize, usize)>,
    report: &mut GentleReport,
) {
    let in_set = |a: usize| arrows.contains(&a);
    for v in 0..q.num_vertices() {
        let name = q.vertex_name(v);
        let out = q.arrows_from(v).filter(|&a| in_set(a)).count();
        let inc = q.arrows_into(v).filter(|&a| in_set(a)).count();
        if out > 2 {
            report.push("degree", format!("vertex {name} has {out} outgoing arrows"));
        }
        if inc > 2 {
            report.push("degree", format!("vertex {name} has {inc} incoming arrows"));
        }
    }
    for &b in arrows {
        let bn = &q.arrow(b).name;
        let after: Vec<usize> = q
            .arrows_from(q.arrow(b).target)
            .filter(|&a| in_set(a))
            .collect();
        let killed = after.iter().filter(|&&c| zero.contains(&(c, b))).count();
        if killed > 1 {
            report.push("after", format!("{killed} arrows c with c.{bn} a relation"));
        }
        if after.len() - killed > 1 {
            report.push(
                "after",
                format!(
                    "{} arrows c with c.{bn} not a relation",
                    after.len() - killed
                ),
            );
        }
        let before: Vec<usize> = q
            .arrows_into(q.arrow(b).source)
            .filter(|&a| in_set(a))
            .collect();
        let killed = before.iter().filter(|&&c| zero.contains(&(b, c))).count();
        if killed > 1 {
            report.push(
                "before",
                format!("{killed} arrows c with {bn}.c a relation"),
            );
        }
        if before.len() - killed > 1 {
            report.push(
                "before",
                format!(
                    "{} arrows c with {bn}.c not a relation",
                    before.len() - killed
                ),
            );
        }
    }
}

/// Finite dimensionality: no cycle of arrows whose consecutive composites avoid the relations.
fn find_unbounded_cycle(
    q: &Quiver,
    arrows: &[usize],
    zero: &BTreeSet<(usize, usize)>,
) -> Option<Vec<usize>> {
    let next = |b: usize| -> Vec<usize> {
        q.arrows_from(q.arrow(b).target)
            .filter(|&c| arrows.contains(&c) && !zero.contains(&(c, b)))
            .collect()
    };
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; q.num_arrows()];
    let mut stack_path = Vec::new();
    fn dfs(
        b: usize,
        next: &dyn Fn(usize) -> Vec<usize>,
        state: &mut [u8],
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[b] = 1;
        path.push(b);
        for c in next(b) {
            if state[c] == 1 {
                let start = path.iter().position(|&x| x == c).expect("on stack");
                return Some(path[start..].to_vec());
            }
            if state[c] == 0 {
                if let Some(cyc) = dfs(c, next, state, path) {
                    return Some(cyc);
                }
            }
        }
        path.pop();
        state[b] = 2;
        None
    }
    for &b in arrows {
        if state[b] == 0 {
            if let Some(c) = dfs(b, &next, &mut state, &mut stack_path) {
                return Some(c);
            }
        }
    }
    None
}

/// Gentleness of `(Q, ρ)` with every clause checked and every failure reported.
pub fn is_gentle(q: &Quiver, f: Fp, relations: &[Relation]) -> GentleReport {
    let mut report = GentleReport::default();
    let refs: Vec<&Relation> = relations.iter().collect();
    let zero = monomial_pairs(q, f, &refs, &mut report);
    let all: Vec<usize> = (0..q.num_arrows()).collect();
    local_conditions(q, &all, &zero, &mut report);
    if let Some(cycle) = find_unbounded_cycle(q, &all, &zero) {
        let names: Vec<&str> = cycle
            .iter()
            .rev()
            .map(|&a| q.arrow(a).name.as_str())
            .collect();
        report.push(
            "admissible",
            format!("cycle {} avoids every relation", names.join(".")),
        );
    }
    report.finish()
}

fn is_idempotent_relation(r: &Relation, f: Fp, loop_arrow: usize) -> bool {
    let mut sq = 0u32;
    let mut lin = 0u32;
    for (c, p) in &r.terms {
        if p.arrows == [loop_arrow, loop_arrow] {
            sq = f.add(sq, *c);
        } else if p.arrows == [loop_arrow] {
            lin = f.add(lin, *c);
        } else if *c % f.p() != 0 {
            return false;
        }
    }
    sq != 0 && f.add(sq, lin) == 0
}

/// Skew-gentleness of `(Q, ρ, S)` where `S` lists the special loops.
pub fn is_skew_gentle(
    q: &Quiver,
    f: Fp,
    relations: &[Relation],
    special: &[usize],
) -> GentleReport {
    let mut report = GentleReport::default();
    for &s in special {
        let a = q.arrow(s);
        if a.source != a.target {
            report.push("special-loops", format!("{} is not a loop", a.name));
        }
    }
    let mentions = |r: &Relation, s: usize| r.terms.iter().any(|(_, p)| p.arrows.contains(&s));
    let mut rest = Vec::new();
    for &s in special {
        let own: Vec<&Relation> = relations.iter().filter(|r| mentions(r, s)).collect();
        let good = own.len() == 1 && is_idempotent_relation(own[0], f, s);
        if !good {
            report.push(
                "idempotent",
                format!(
                    "special loop {} must carry exactly the relation {}.{} - {}",
                    q.arrow(s).name,
                    q.arrow(s).name,
                    q.arrow(s).name,
                    q.arrow(s).name
                ),
            );
        }
    }
    for r in relations {
        if !special.iter().any(|&s| mentions(r, s)) {
            rest.push(r);
        }
    }
    let ordinary: Vec<usize> = (0..q.num_arrows())
        .filter(|a| !special.contains(a))
        .collect();
    let zero = monomial_pairs(q, f, &rest, &mut report);
    local_conditions(q, &ordinary, &zero, &mut report);
    for &s in special {
        let x = q.arrow(s).source;
        let name = q.vertex_name(x);
        let inc: Vec<usize> = q.arrows_into(x).filter(|a| ordinary.contains(a)).collect();
        let out: Vec<usize> = q.arrows_from(x).filter(|a| ordinary.contains(a)).collect();
        let other_loops = q
            .arrows_from(x)
            .filter(|&a| a != s && q.arrow(a).target == x)
            .count();
        let single = inc.len() + out.len() == 1;
        let through = inc.len() == 1 && out.len() == 1 && zero.contains(&(out[0], inc[0]));
        if other_loops > 0 {
            report.push(
                "special-vertex",
                format!(
                    "vertex {name} carries another loop besides {}",
                    q.arrow(s).name
                ),
            );
        } else if !single && !through {
            report.push("special-vertex", format!("vertex {name} of special loop {} has {} incoming and {} outgoing ordinary arrows", q.arrow(s).name, inc.len(), out.len()));
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::quiver;

    fn rel(q: &Quiver, terms: &[(i64, &str)], f: Fp) -> Relation {
        Relation {
            terms: terms
                .iter()
                .map(|(c, p)| (f.reduce(*c), q.parse_path(p).unwrap()))
                .collect(),
        }
    }

    fn fp() -> Fp {
        Fp::new(1009).unwrap()
    }

    #[test]
    fn linear_a3_with_zero_relation_is_gentle() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        let r = vec![rel(&q, &[(1, "b.a")], fp())];
        assert!(is_gentle(&q, fp(), &r).holds);
        assert!(is_gentle(&q, fp(), &[]).holds);
    }

    #[test]
    fn binomial_relation_is_rejected() {
        let q = quiver(
            &["1", "2", "3", "4"],
            &[
                ("a", "1", "2"),
                ("b", "2", "4"),
                ("c", "1", "3"),
                ("d", "3", "4"),
            ],
        );
        let r = vec![rel(&q, &[(1, "b.a"), (-1, "d.c")], fp())];
        let rep = is_gentle(&q, fp(), &r);
        assert!(!rep.holds);
        assert_eq!(rep.violations[0].clause, "monomial");
    }

    #[test]
    fn three_outgoing_arrows_break_degree() {
        let q = quiver(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")],
        );
        let rep = is_gentle(&q, fp(), &[]);
        assert!(rep.violations.iter().any(|v| v.clause == "degree"));
    }

    #[test]
    fn loop_without_relation_is_not_admissible() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let rep = is_gentle(&q, fp(), &[]);
        assert!(rep.violations.iter().any(|v| v.clause == "admissible"));
        let r = vec![rel(&q, &[(1, "x.x")], fp())];
        assert!(is_gentle(&q, fp(), &r).holds);
    }

    #[test]
    fn special_loop_on_a2() {
        let q = quiver(&["1", "2"], &[("a", "1", "2"), ("f", "1", "1")]);
        let f = q.arrow_id("f").unwrap();
        let r = vec![rel(&q, &[(1, "f.f"), (-1, "f")], fp())];
        assert!(is_skew_gentle(&q, fp(), &r, &[f]).holds);
        let wrong = vec![rel(&q, &[(1, "f.f")], fp())];
        assert!(!is_skew_gentle(&q, fp(), &wrong, &[f]).holds);
    }

    #[test]
    fn two_loops_at_one_vertex_fail() {
        let q = quiver(
            &["1", "2"],
            &[("a", "1", "2"), ("f", "1", "1"), ("g", "1", "1")],
        );
        let f = q.arrow_id("f").unwrap();
        let g = q.arrow_id("g").unwrap();
        let r = vec![
            rel(&q, &[(1, "f.f"), (-1, "f")], fp()),
            rel(&q, &[(1, "g.g"), (-1, "g")], fp()),
        ];
        let rep = is_skew_gentle(&q, fp(), &r, &[f, g]);
        assert!(rep.violations.iter().any(|v| v.clause == "special-vertex"));
    }

    #[test]
    fn special_vertex_on_a_path_needs_the_zero_relation() {
        let q = quiver(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("f", "2", "2")],
        );
        let f = q.arrow_id("f").unwrap();
        let idem = rel(&q, &[(1, "f.f"), (-1, "f")], fp());
        assert!(!is_skew_gentle(&q, fp(), std::slice::from_ref(&idem), &[f]).holds);
        let r = vec![idem, rel(&q, &[(1, "b.a")], fp())];
        assert!(is_skew_gentle(&q, fp(), &r, &[f]).holds);
    }
}
