//! The line-oriented text format shared by inputs and skew outputs, plus
//! the auxiliary formats for vertex/arrow matchings and golden AR quivers.
//!
//! ```text
//! field p = 1009
//! vertex 1
//! arrow a: 1 -> 2
//! relation 1*b.a + -1*d.c
//! group Z2 x Z3
//! action g1: vertex 1 -> 2
//! action g1: arrow a -> zeta2^1*b
//! special f
//! module M { dim 1 = 1; dim 2 = 1; map a = [[1]] }
//! ```
//!
//! Lines whose first non-blank character is `#` are comments. Module blocks
//! may span several lines; items are separated by `;` or line breaks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ar::ArQuiver;
use crate::field::{Fp, LinalgError, Matrix};
use crate::group::{AbelianGroup, ElementAction, QuiverAction};
use crate::quiver::{BoundAlgebra, Path, Quiver, QuiverError, Relation, DEFAULT_LENGTH_BOUND};
use crate::rep::{RepError, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    At { line: usize, message: String },
    #[error("no quiver block")]
    NoQuiver,
    #[error("algebra: {0}")]
    Algebra(#[from] QuiverError),
    #[error("module `{name}` (line {line}): {source}")]
    Module {
        name: String,
        line: usize,
        source: RepError,
    },
    #[error("unknown module `{0}`")]
    UnknownModule(String),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::At {
        line,
        message: message.into(),
    }
}

/// Parsed module block with dimensions per vertex and matrices per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub line: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub field: Fp,
    /// Whether the prime was given explicitly.
    pub explicit_prime: bool,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub action: QuiverAction,
    pub special: Vec<usize>,
    pub modules: Vec<ModuleSpec>,
    pub length_bound: usize,
}

impl InputDocument {
    /// The bound quiver algebra. Fails for the non-homogeneous relations of special loops.
    pub fn algebra(&self) -> Result<BoundAlgebra, FormatError> {
        Ok(BoundAlgebra::build(
            self.field,
            self.quiver.clone(),
            self.relations.clone(),
            self.length_bound,
        )?)
    }

    pub fn module_spec(&self, name: &str) -> Result<&ModuleSpec, FormatError> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| FormatError::UnknownModule(name.to_string()))
    }

    /// The named module, checked against the relations of `alg`.
    pub fn module(&self, alg: &BoundAlgebra, name: &str) -> Result<Representation, FormatError> {
        let spec = self.module_spec(name)?;
        Representation::new(alg, spec.dims.clone(), spec.maps.clone()).map_err(|source| {
            FormatError::Module {
                name: spec.name.clone(),
                line: spec.line,
                source,
            }
        })
    }

    /// Parse further `module` blocks against this document's quiver.
    pub fn add_modules(&mut self, text: &str) -> Result<(), FormatError> {
        let lines = logical_lines(text);
        let mut i = 0;
        while i < lines.len() {
            let (ln, line) = &lines[i];
            if line.starts_with("module") {
                let (spec, next) = parse_module_block(&lines, i, &self.quiver, self.field)?;
                self.modules.push(spec);
                i = next;
            } else {
                return Err(at(*ln, format!("expected a module block, found `{line}`")));
            }
        }
        Ok(())
    }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// Integers, `zeta<n>^<k>`, `zeta<n>` and their negatives.
pub fn parse_scalar(text: &str, f: Fp) -> Result<u32, String> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let v = if let Some(z) = body.strip_prefix("zeta") {
        let (n, k) = match z.split_once('^') {
            Some((n, k)) => (n, k),
            None => (z, "1"),
        };
        let n: u32 = n.parse().map_err(|_| format!("bad root order in `{t}`"))?;
        let k: u64 = k.parse().map_err(|_| format!("bad exponent in `{t}`"))?;
        let z = f
            .primitive_root_of_unity(n)
            .map_err(|e: LinalgError| e.to_string())?;
        f.pow(z, k)
    } else {
        let v: i64 = body.parse().map_err(|_| format!("bad scalar `{t}`"))?;
        f.reduce(v)
    };
    Ok(if neg { f.neg(v) } else { v })
}

/// `c*x + c*y - z`: coefficient and operand text per term.
fn split_terms(text: &str) -> Vec<(String, String)> {
    let normalized = text.replace(" - ", " + -");
    normalized
        .split(" + ")
        .map(|t| {
            let t = t.trim();
            match t.rsplit_once('*') {
                Some((c, p)) => (c.trim().to_string(), p.trim().to_string()),
                None => match t.strip_prefix('-') {
                    Some(p) => ("-1".to_string(), p.trim().to_string()),
                    None => ("1".to_string(), t.to_string()),
                },
            }
        })
        .collect()
}

fn parse_relation(text: &str, q: &Quiver, f: Fp, line: usize) -> Result<Relation, FormatError> {
    let mut terms = Vec::new();
    for (c, p) in split_terms(text) {
        let c = parse_scalar(&c, f).map_err(|m| at(line, m))?;
        let p = q.parse_path(&p).map_err(|e| at(line, e.to_string()))?;
        terms.push((c, p));
    }
    let r = Relation { terms };
    r.check_parallel(q).map_err(|e| at(line, e.to_string()))?;
    Ok(r)
}

fn parse_group(text: &str, line: usize) -> Result<AbelianGroup, FormatError> {
    let t = text.trim();
    if t == "trivial" || t == "1" {
        return Ok(AbelianGroup::trivial());
    }
    let mut orders = Vec::new();
    for part in t.split('x') {
        let p = part.trim();
        let n = p
            .strip_prefix('Z')
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| at(line, format!("bad cyclic factor `{p}`")))?;
        orders.push(n);
    }
    AbelianGroup::new(orders).map_err(|e| at(line, e.to_string()))
}

fn generator_index(name: &str, rank: usize, line: usize) -> Result<usize, FormatError> {
    if name == "g" && rank == 1 {
        return Ok(0);
    }
    name.strip_prefix('g')
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k >= 1 && k <= rank)
        .map(|k| k - 1)
        .ok_or_else(|| at(line, format!("unknown generator `{name}`")))
}

fn parse_matrix(text: &str, f: Fp, line: usize) -> Result<Vec<Vec<u32>>, FormatError> {
    let t: String = text.split_whitespace().collect::<Vec<_>>().join(" ");
    let t = t.trim();
    if t.replace(' ', "") == "[]" {
        return Ok(Vec::new());
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .map(str::trim)
        .ok_or_else(|| at(line, format!("bad matrix `{t}`")))?;
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let r = rest
            .strip_prefix('[')
            .ok_or_else(|| at(line, format!("bad matrix `{t}`")))?;
        let end = r
            .find(']')
            .ok_or_else(|| at(line, format!("unclosed row in `{t}`")))?;
        let row = &r[..end];
        let mut vals = Vec::new();
        for x in row.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            vals.push(parse_scalar(x, f).map_err(|m| at(line, m))?);
        }
        rows.push(vals);
        rest = r[end + 1..]
            .trim_start()
            .trim_start_matches(',')
            .trim_start();
    }
    Ok(rows)
}

/// Parses the block starting at `lines[start]`; returns the index after it.
fn parse_module_block(
    lines: &[(usize, String)],
    start: usize,
    q: &Quiver,
    f: Fp,
) -> Result<(ModuleSpec, usize), FormatError> {
    let (ln0, first) = &lines[start];
    let head = first.strip_prefix("module").unwrap_or(first).trim();
    let (name, after) = head
        .split_once('{')
        .ok_or_else(|| at(*ln0, "module block needs `{`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(at(*ln0, "module block needs a name"));
    }
    let mut items: Vec<(usize, String)> = Vec::new();
    let mut closed = false;
    let mut idx = start;
    let mut chunk = after.to_string();
    loop {
        let ln = lines[idx].0;
        let body = match chunk.split_once('}') {
            Some((b, tail)) => {
                if !tail.trim().is_empty() {
                    return Err(at(ln, "text after `}`"));
                }
                closed = true;
                b.to_string()
            }
            None => chunk.clone(),
        };
        items.extend(
            body.split(';')
                .map(|s| (ln, s.trim().to_string()))
                .filter(|(_, s)| !s.is_empty()),
        );
        idx += 1;
        if closed || idx >= lines.len() {
            break;
        }
        chunk = lines[idx].1.clone();
    }
    if !closed {
        return Err(at(*ln0, format!("module `{name}` is not closed")));
    }
    let mut dims = vec![0usize; q.num_vertices()];
    let mut given: Vec<Option<(usize, Vec<Vec<u32>>)>> = vec![None; q.num_arrows()];
    for (ln, item) in items {
        if let Some(rest) = item.strip_prefix("dim ") {
            let (v, k) = rest
                .split_once('=')
                .ok_or_else(|| at(ln, "expected `dim <vertex> = <k>`"))?;
            let v = q.vertex(v.trim()).map_err(|e| at(ln, e.to_string()))?;
            dims[v] = k
                .trim()
                .parse()
                .map_err(|_| at(ln, format!("bad dimension `{}`", k.trim())))?;
        } else if let Some(rest) = item.strip_prefix("map ") {
            let (a, m) = rest
                .split_once('=')
                .ok_or_else(|| at(ln, "expected `map <arrow> = [[..]]`"))?;
            let a = q.arrow_id(a.trim()).map_err(|e| at(ln, e.to_string()))?;
            given[a] = Some((ln, parse_matrix(m, f, ln)?));
        } else {
            return Err(at(ln, format!("unexpected module item `{item}`")));
        }
    }
    let mut maps = Vec::new();
    for (a, g) in given.into_iter().enumerate() {
        let ar = q.arrow(a);
        let (r, c) = (dims[ar.target], dims[ar.source]);
        let m = match g {
            None => Matrix::zeros(f, r, c),
            Some((_, rows)) if rows.is_empty() => {
                if r * c != 0 {
                    return Err(at(*ln0, format!("map `{}` must be {r}x{c}", ar.name)));
                }
                Matrix::zeros(f, r, c)
            }
            Some((ln, rows)) => {
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(at(ln, format!("map `{}` must be {r}x{c}", ar.name)));
                }
                Matrix::from_rows(f, &rows, c)
            }
        };
        maps.push(m);
    }
    Ok((
        ModuleSpec {
            name: name.to_string(),
            line: *ln0,
            dims,
            maps,
        },
        idx,
    ))
}

/// Parse a document. Relations are kept as written; see [`InputDocument::algebra`].
pub fn parse_input(text: &str) -> Result<InputDocument, FormatError> {
    parse_input_with(text, None)
}

/// As [`parse_input`], with `prime` replacing any `field` line.
pub fn parse_input_with(
    text: &str,
    prime_override: Option<u32>,
) -> Result<InputDocument, FormatError> {
    let lines = logical_lines(text);
    let mut prime = None;
    let mut group = AbelianGroup::trivial();
    let mut group_line = None;
    for (ln, line) in &lines {
        if let Some(rest) = line.strip_prefix("field ") {
            let v = rest
                .trim()
                .strip_prefix('p')
                .and_then(|r| r.trim().strip_prefix('='))
                .ok_or_else(|| at(*ln, "expected `field p = <prime>`"))?;
            let p: u32 = v
                .trim()
                .parse()
                .map_err(|_| at(*ln, format!("bad prime `{}`", v.trim())))?;
            prime = Some((*ln, p));
        } else if let Some(rest) = line.strip_prefix("group ") {
            if group_line.is_some() {
                return Err(at(*ln, "second group declaration"));
            }
            group = parse_group(rest, *ln)?;
            group_line = Some(*ln);
        }
    }
    if let Some(p) = prime_override {
        prime = Some((0, p));
    }
    let explicit_prime = prime.is_some();
    let field = match prime {
        Some((ln, p)) => {
            let f = Fp::new(p).map_err(|e| at(ln, e.to_string()))?;
            if (p - 1) % group.exponent() != 0 {
                return Err(at(
                    ln,
                    format!(
                        "p = {p} has no primitive root of unity of order {}",
                        group.exponent()
                    ),
                ));
            }
            f
        }
        None => Fp::default_for_exponent(group.exponent()),
    };
    let mut quiver = Quiver::new();
    let mut relation_text: Vec<(usize, String)> = Vec::new();
    let mut action_lines: Vec<(usize, String)> = Vec::new();
    let mut special_names: Vec<(usize, String)> = Vec::new();
    let mut module_starts = Vec::new();
    let mut length_bound = DEFAULT_LENGTH_BOUND;
    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = &lines[i];
        let ln = *ln;
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .unwrap_or((line.as_str(), ""));
        let rest = rest.trim();
        match kw {
            "field" | "group" => {}
            "vertex" => {
                for name in rest.split_whitespace() {
                    quiver.add_vertex(name).map_err(|e| at(ln, e.to_string()))?;
                }
                if rest.is_empty() {
                    return Err(at(ln, "vertex needs a name"));
                }
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| at(ln, "expected `arrow <name>: <v> -> <w>`"))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| at(ln, "expected `arrow <name>: <v> -> <w>`"))?;
                quiver
                    .add_arrow_by_name(name.trim(), s.trim(), t.trim())
                    .map_err(|e| at(ln, e.to_string()))?;
            }
            "relation" => relation_text.push((ln, rest.to_string())),
            "action" => action_lines.push((ln, rest.to_string())),
            "special" => {
                for name in rest.split_whitespace() {
                    special_names.push((ln, name.to_string()));
                }
            }
            "bound" => {
                length_bound = rest
                    .parse()
                    .map_err(|_| at(ln, format!("bad length bound `{rest}`")))?;
            }
            "module" => {
                module_starts.push(i);
                i = skip_block(&lines, i);
                continue;
            }
            other => return Err(at(ln, format!("unknown keyword `{other}`"))),
        }
        i += 1;
    }
    if quiver.num_vertices() == 0 {
        return Err(FormatError::NoQuiver);
    }
    let mut relations = Vec::new();
    for (ln, t) in &relation_text {
        relations.push(parse_relation(t, &quiver, field, *ln)?);
    }
    let mut gens: Vec<ElementAction> = (0..group.rank())
        .map(|_| ElementAction::identity(&quiver))
        .collect();
    for (ln, t) in &action_lines {
        let ln = *ln;
        let (g, body) = t
            .split_once(':')
            .ok_or_else(|| at(ln, "expected `action <gen>: ...`"))?;
        if group_line.is_none() {
            return Err(at(ln, "action given without a group"));
        }
        let k = generator_index(g.trim(), group.rank(), ln)?;
        let body = body.trim();
        let (kind, map) = body
            .split_once(char::is_whitespace)
            .ok_or_else(|| at(ln, "expected `vertex` or `arrow`"))?;
        let (src, dst) = map
            .split_once("->")
            .ok_or_else(|| at(ln, "expected `->`"))?;
        match kind {
            "vertex" => {
                let v = quiver
                    .vertex(src.trim())
                    .map_err(|e| at(ln, e.to_string()))?;
                let w = quiver
                    .vertex(dst.trim())
                    .map_err(|e| at(ln, e.to_string()))?;
                gens[k].vertex_perm[v] = w;
            }
            "arrow" => {
                let a = quiver
                    .arrow_id(src.trim())
                    .map_err(|e| at(ln, e.to_string()))?;
                let terms = split_terms(dst.trim());
                let [(c, b)] = terms.as_slice() else {
                    return Err(at(ln, "an arrow maps to a scalar multiple of one arrow"));
                };
                let c = parse_scalar(c, field).map_err(|m| at(ln, m))?;
                let b = quiver.arrow_id(b).map_err(|e| at(ln, e.to_string()))?;
                gens[k].arrow_map[a] = (c, b);
            }
            other => {
                return Err(at(
                    ln,
                    format!("expected `vertex` or `arrow`, found `{other}`"),
                ))
            }
        }
    }
    let mut special = Vec::new();
    for (ln, s) in &special_names {
        special.push(quiver.arrow_id(s).map_err(|e| at(*ln, e.to_string()))?);
    }
    let mut modules: Vec<ModuleSpec> = Vec::new();
    for &s in &module_starts {
        let (spec, _) = parse_module_block(&lines, s, &quiver, field)?;
        if modules.iter().any(|m| m.name == spec.name) {
            return Err(at(spec.line, format!("duplicate module `{}`", spec.name)));
        }
        modules.push(spec);
    }
    Ok(InputDocument {
        field,
        explicit_prime,
        quiver,
        relations,
        action: QuiverAction {
            group,
            generators: gens,
        },
        special,
        modules,
        length_bound,
    })
}

fn skip_block(lines: &[(usize, String)], start: usize) -> usize {
    let mut i = start;
    while i < lines.len() {
        if lines[i].1.contains('}') {
            return i + 1;
        }
        i += 1;
    }
    i
}

fn generator_name(k: usize, rank: usize) -> String {
    if rank == 1 {
        "g".to_string()
    } else {
        format!("g{}", k + 1)
    }
}

fn matrix_text(m: &Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".to_string();
    }
    let rows: Vec<String> = m
        .signed_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Emit a document that [`parse_input`] reads back to the same data.
pub fn emit_document(
    f: Fp,
    q: &Quiver,
    relations: &[Relation],
    action: Option<&QuiverAction>,
    special: &[usize],
    modules: &[(&str, &Representation)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field p = {}", f.p());
    for v in q.vertex_names() {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "arrow {}: {} -> {}",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        );
    }
    for r in relations {
        let _ = writeln!(out, "relation {}", r.display(q, Some(f)));
    }
    if let Some(act) = action.filter(|a| a.group.rank() > 0) {
        let factors: Vec<String> = act.group.orders().iter().map(|n| format!("Z{n}")).collect();
        let _ = writeln!(out, "group {}", factors.join(" x "));
        for (k, g) in act.generators.iter().enumerate() {
            let name = generator_name(k, act.group.rank());
            for (v, &w) in g.vertex_perm.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "action {name}: vertex {} -> {}",
                    q.vertex_name(v),
                    q.vertex_name(w)
                );
            }
            for (a, &(c, b)) in g.arrow_map.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "action {name}: arrow {} -> {}*{}",
                    q.arrow(a).name,
                    f.signed(c),
                    q.arrow(b).name
                );
            }
        }
    }
    for &s in special {
        let _ = writeln!(out, "special {}", q.arrow(s).name);
    }
    for (name, m) in modules {
        out.push_str(&module_block(q, name, m));
    }
    out
}

/// A `module` block for `m`, omitting zero spaces and zero maps.
pub fn module_block(q: &Quiver, name: &str, m: &Representation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "module {name} {{");
    for (v, &d) in m.dims.iter().enumerate() {
        if d > 0 {
            let _ = writeln!(out, "  dim {} = {d}", q.vertex_name(v));
        }
    }
    for (a, mat) in m.maps.iter().enumerate() {
        if !mat.is_zero() {
            let _ = writeln!(out, "  map {} = {}", q.arrow(a).name, matrix_text(mat));
        }
    }
    let _ = writeln!(out, "}}");
    out
}

/// A declared identification of a figure's quiver with a computed one:
/// `vertex <figure> = <computed>` and `arrow <figure> = c*<computed> + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub vertices: Vec<(String, String)>,
    pub arrows: Vec<(String, Vec<(String, String)>)>,
}

pub fn parse_matching(text: &str) -> Result<Matching, FormatError> {
    let mut m = Matching {
        vertices: Vec::new(),
        arrows: Vec::new(),
    };
    for (ln, line) in logical_lines(text) {
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| at(ln, "expected `vertex` or `arrow`"))?;
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| at(ln, "expected `=`"))?;
        match kw {
            "vertex" => m
                .vertices
                .push((lhs.trim().to_string(), rhs.trim().to_string())),
            "arrow" => m
                .arrows
                .push((lhs.trim().to_string(), split_terms(rhs.trim()))),
            other => return Err(at(ln, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub vertex_bijection: bool,
    pub arrow_change_invertible: bool,
    pub relations_vanish: bool,
    pub graded_dims_equal: bool,
    pub failures: Vec<String>,
}

impl MatchReport {
    /// A graded surjection killing the figure relations with equal graded dimensions is an isomorphism.
    pub fn holds(&self) -> bool {
        self.vertex_bijection
            && self.arrow_change_invertible
            && self.relations_vanish
            && self.graded_dims_equal
    }
}

/// Images of the figure's arrows in the computed algebra, as algebra elements.
pub fn matched_arrow_elements(
    figure: &BoundAlgebra,
    computed: &BoundAlgebra,
    m: &Matching,
) -> Result<(Vec<usize>, Vec<Vec<u32>>), String> {
    let fq = figure.quiver();
    let cq = computed.quiver();
    let f = computed.field();
    let mut vmap = vec![usize::MAX; fq.num_vertices()];
    for (a, b) in &m.vertices {
        let v = fq.vertex(a).map_err(|e| e.to_string())?;
        let w = cq.vertex(b).map_err(|e| e.to_string())?;
        vmap[v] = w;
    }
    let mut images = vec![Vec::new(); fq.num_arrows()];
    for (name, terms) in &m.arrows {
        let a = fq.arrow_id(name).map_err(|e| e.to_string())?;
        let mut x = vec![0u32; computed.dim()];
        for (c, b) in terms {
            let c = parse_scalar(c, f)?;
            let b = cq.arrow_id(b).map_err(|e| e.to_string())?;
            let arr = cq.arrow(b);
            let fa = fq.arrow(a);
            if vmap[fa.source] != arr.source || vmap[fa.target] != arr.target {
                return Err(format!(
                    "arrow `{name}` is sent to `{}` with other endpoints",
                    arr.name
                ));
            }
            for (i, y) in computed.nf_sparse(&Path::new(cq, vec![b]).expect("arrow")) {
                x[i] = f.mul_add(x[i], c, y);
            }
        }
        images[a] = x;
    }
    Ok((vmap, images))
}

fn path_image(alg: &BoundAlgebra, images: &[Vec<u32>], vmap: &[usize], p: &Path) -> Vec<u32> {
    let mut x = alg.vertex_element(vmap[p.source]);
    for &a in p.arrows.iter().rev() {
        x = alg.mul(&images[a], &x);
    }
    x
}

pub fn check_matching(figure: &BoundAlgebra, computed: &BoundAlgebra, m: &Matching) -> MatchReport {
    let mut rep = MatchReport::default();
    let fq = figure.quiver();
    let cq = computed.quiver();
    let f = computed.field();
    let (vmap, images) = match matched_arrow_elements(figure, computed, m) {
        Ok(x) => x,
        Err(e) => {
            rep.failures.push(e);
            return rep;
        }
    };
    let mut hit = vmap.clone();
    hit.sort_unstable();
    hit.dedup();
    rep.vertex_bijection = fq.num_vertices() == cq.num_vertices()
        && !vmap.contains(&usize::MAX)
        && hit.len() == vmap.len();
    if !rep.vertex_bijection {
        rep.failures.push("vertex map is not a bijection".into());
        return rep;
    }
    let mut invertible = fq.num_arrows() == cq.num_arrows() && images.iter().all(|x| !x.is_empty());
    let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (a, ar) in fq.arrows().iter().enumerate() {
        blocks.entry((ar.source, ar.target)).or_default().push(a);
    }
    for ((s, t), fig_arrows) in &blocks {
        let targets: Vec<usize> = cq
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.source == vmap[*s] && b.target == vmap[*t])
            .map(|(b, _)| b)
            .collect();
        if targets.len() != fig_arrows.len() || images.iter().any(|x| x.is_empty()) {
            invertible = false;
            break;
        }
        let cols: Vec<usize> = targets
            .iter()
            .map(|&b| computed.nf_sparse(&Path::new(cq, vec![b]).expect("arrow"))[0].0)
            .collect();
        let rows: Vec<Vec<u32>> = fig_arrows
            .iter()
            .map(|&a| cols.iter().map(|&c| images[a][c]).collect())
            .collect();
        if !Matrix::from_rows(f, &rows, cols.len()).is_invertible() {
            invertible = false;
            rep.failures.push(format!(
                "arrow change between {} and {} is singular",
                fq.vertex_name(*s),
                fq.vertex_name(*t)
            ));
        }
    }
    rep.arrow_change_invertible = invertible;
    if !invertible {
        rep.failures.push("arrow change is not invertible".into());
        return rep;
    }
    rep.relations_vanish = true;
    for r in figure.relations() {
        let mut acc = vec![0u32; computed.dim()];
        for (c, p) in &r.terms {
            let x = path_image(computed, &images, &vmap, p);
            for (i, y) in x.iter().enumerate() {
                acc[i] = f.mul_add(acc[i], *c, *y);
            }
        }
        if acc.iter().any(|&x| x != 0) {
            rep.relations_vanish = false;
            rep.failures.push(format!(
                "relation {} does not vanish",
                r.display(fq, Some(figure.field()))
            ));
        }
    }
    rep.graded_dims_equal = figure.graded_dims() == computed.graded_dims();
    if !rep.graded_dims_equal {
        rep.failures.push(format!(
            "graded dimensions {:?} vs {:?}",
            figure.graded_dims(),
            computed.graded_dims()
        ));
    }
    rep
}

/// Transport a representation of the computed algebra to the figure's quiver along a matching.
pub fn pull_back(
    figure: &BoundAlgebra,
    computed: &BoundAlgebra,
    m: &Matching,
    module: &Representation,
) -> Result<Representation, String> {
    let (vmap, images) = matched_arrow_elements(figure, computed, m)?;
    let fq = figure.quiver();
    let dims: Vec<usize> = (0..fq.num_vertices())
        .map(|v| module.dims[vmap[v]])
        .collect();
    let maps: Vec<Matrix> = (0..fq.num_arrows())
        .map(|a| {
            let full = module.element_matrix(computed, &images[a]);
            let off = module.offsets();
            let ar = fq.arrow(a);
            let (s, t) = (vmap[ar.source], vmap[ar.target]);
            full.submatrix(off[t], module.dims[t], off[s], module.dims[s])
        })
        .collect();
    Representation::new(figure, dims, maps).map_err(|e| e.to_string())
}

/// A transcribed AR quiver: composition diagrams and arrows with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenAr {
    pub nodes: Vec<(String, Vec<Vec<String>>)>,
    pub arrows: Vec<(String, String, usize)>,
}

pub fn parse_golden(text: &str) -> Result<GoldenAr, FormatError> {
    let mut g = GoldenAr {
        nodes: Vec::new(),
        arrows: Vec::new(),
    };
    for (ln, line) in logical_lines(text) {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("node") => {
                let id = parts
                    .next()
                    .ok_or_else(|| at(ln, "node needs an id"))?
                    .to_string();
                let diagram: Vec<String> = parts.map(str::to_string).collect();
                let layers = diagram
                    .join(" ")
                    .split('/')
                    .map(|l| l.split_whitespace().map(str::to_string).collect())
                    .collect();
                if g.nodes.iter().any(|(n, _)| *n == id) {
                    return Err(at(ln, format!("duplicate node `{id}`")));
                }
                g.nodes.push((id, layers));
            }
            Some("arrow") => {
                let a = parts
                    .next()
                    .ok_or_else(|| at(ln, "arrow needs two ids"))?
                    .to_string();
                let b = parts
                    .next()
                    .ok_or_else(|| at(ln, "arrow needs two ids"))?
                    .to_string();
                let k = match parts.next() {
                    Some(k) => k
                        .parse()
                        .map_err(|_| at(ln, format!("bad multiplicity `{k}`")))?,
                    None => 1,
                };
                for id in [&a, &b] {
                    if !g.nodes.iter().any(|(n, _)| n == id) {
                        return Err(at(ln, format!("unknown node `{id}`")));
                    }
                }
                g.arrows.push((a, b, k));
            }
            _ => {
                return Err(at(
                    ln,
                    format!("expected `node` or `arrow`, found `{line}`"),
                ))
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub golden_nodes: usize,
    pub computed_nodes: usize,
    pub golden_arrows: usize,
    pub computed_arrows: usize,
    pub dims_multiset_equal: bool,
    /// Golden node id and computed vertex index, when an arrow-preserving bijection exists.
    pub bijection: Option<Vec<(String, usize)>>,
    pub failures: Vec<String>,
}

impl GoldenReport {
    pub fn holds(&self) -> bool {
        self.dims_multiset_equal && self.bijection.is_some()
    }
}

/// Compare a knitted quiver with a golden file. Diagram names are translated by
/// `rename` into vertex names of the knitted algebra; a diagram may list
/// radical layers or socle layers.
pub fn compare_golden(
    golden: &GoldenAr,
    q: &Quiver,
    ar: &ArQuiver,
    rename: &dyn Fn(&str) -> String,
) -> GoldenReport {
    let mut rep = GoldenReport {
        golden_nodes: golden.nodes.len(),
        computed_nodes: ar.len(),
        golden_arrows: golden.arrows.iter().map(|a| a.2).sum(),
        computed_arrows: ar.arrow_count(),
        ..Default::default()
    };
    let n = q.num_vertices();
    let mut layers = Vec::new();
    for (id, diagram) in &golden.nodes {
        let mut ls = Vec::new();
        for layer in diagram {
            let mut dv = vec![0usize; n];
            for name in layer {
                match q.vertex(&rename(name)) {
                    Ok(v) => dv[v] += 1,
                    Err(_) => {
                        rep.failures
                            .push(format!("node {id}: unknown vertex `{name}`"));
                        return rep;
                    }
                }
            }
            ls.push(dv);
        }
        layers.push(ls);
    }
    let dims_of = |ls: &Vec<Vec<usize>>| -> Vec<usize> {
        (0..n).map(|v| ls.iter().map(|l| l[v]).sum()).collect()
    };
    let mut gd: Vec<Vec<usize>> = layers.iter().map(dims_of).collect();
    let mut cd: Vec<Vec<usize>> = ar.vertices.iter().map(|v| v.dims.clone()).collect();
    gd.sort();
    cd.sort();
    rep.dims_multiset_equal = gd == cd;
    if !rep.dims_multiset_equal {
        rep.failures.push("dimension vectors differ".into());
        return rep;
    }
    let candidates: Vec<Vec<usize>> = layers
        .iter()
        .map(|ls| {
            (0..ar.len())
                .filter(|&c| {
                    let v = &ar.vertices[c];
                    v.dims == dims_of(ls) && (v.layers == *ls || v.socle_layers == *ls)
                })
                .collect()
        })
        .collect();
    for (k, c) in candidates.iter().enumerate() {
        if c.is_empty() {
            rep.failures.push(format!(
                "node {} matches no knitted module",
                golden.nodes[k].0
            ));
        }
    }
    if !rep.failures.is_empty() {
        return rep;
    }
    let index: HashMap<&str, usize> = golden
        .nodes
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (id.as_str(), i))
        .collect();
    let mut garrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b, k) in &golden.arrows {
        *garrows
            .entry((index[a.as_str()], index[b.as_str()]))
            .or_insert(0) += k;
    }
    let mut assign = vec![usize::MAX; golden.nodes.len()];
    let mut used = vec![false; ar.len()];
    if search_bijection(0, &candidates, &garrows, ar, &mut assign, &mut used) {
        rep.bijection = Some(
            golden
                .nodes
                .iter()
                .map(|(id, _)| id.clone())
                .zip(assign)
                .collect(),
        );
    } else {
        rep.failures
            .push("no bijection preserves arrows and multiplicities".into());
    }
    rep
}

fn search_bijection(
    k: usize,
    cands: &[Vec<usize>],
    garrows: &BTreeMap<(usize, usize), usize>,
    ar: &ArQuiver,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == cands.len() {
        return ar.arrows.len() == garrows.len();
    }
    for &c in &cands[k] {
        if used[c] {
            continue;
        }
        assign[k] = c;
        let consistent = (0..=k).all(|j| {
            let fwd = garrows.get(&(j, k)).copied().unwrap_or(0) == ar.irr_dim(assign[j], c);
            let back = garrows.get(&(k, j)).copied().unwrap_or(0) == ar.irr_dim(c, assign[j]);
            fwd && back
        });
        if consistent {
            used[c] = true;
            if search_bijection(k + 1, cands, garrows, ar, assign, used) {
                return true;
            }
            used[c] = false;
        }
    }
    assign[k] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "# A2 with a module\nvertex 1\nvertex 2\narrow a: 1 -> 2\nmodule P1 {\n  dim 1 = 1; dim 2 = 1\n  map a = [[1]]\n}\n";

    #[test]
    fn empty_file_has_no_quiver() {
        assert_eq!(parse_input("").unwrap_err(), FormatError::NoQuiver);
        assert_eq!(
            parse_input("# only a comment\n").unwrap_err().to_string(),
            "no quiver block"
        );
    }

    #[test]
    fn parses_a2_with_module() {
        let doc = parse_input(A2).unwrap();
        assert_eq!(doc.quiver.num_vertices(), 2);
        assert_eq!(doc.field.p(), 1009);
        let alg = doc.algebra().unwrap();
        let m = doc.module(&alg, "P1").unwrap();
        assert_eq!(m.dims, vec![1, 1]);
        assert!(matches!(
            doc.module(&alg, "Q"),
            Err(FormatError::UnknownModule(_))
        ));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_input("vertex 1\n\narrow a: 1 -> 3\n").unwrap_err();
        assert_eq!(err, at(3, "unknown vertex `3`"));
        let err = parse_input("vertex 1\nfrobnicate\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"));
        let err = parse_input("vertex 1\nvertex 2\narrow a: 1 -> 2\nmodule M { dim 1 = 1; dim 2 = 2; map a = [[1]] }\n").unwrap_err();
        assert!(err.to_string().starts_with("line 4:"), "{err}");
    }

    #[test]
    fn scalars() {
        let f = Fp::new(13).unwrap();
        assert_eq!(parse_scalar("-1", f).unwrap(), 12);
        let z = parse_scalar("zeta3", f).unwrap();
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
        assert_eq!(parse_scalar("zeta3^2", f).unwrap(), f.mul(z, z));
        assert_eq!(parse_scalar("-zeta2^1", f).unwrap(), 1);
        assert!(parse_scalar("zeta5", f).is_err());
    }

    #[test]
    fn group_and_action() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 3\narrow b: 2 -> 3\ngroup Z2\naction g: vertex 1 -> 2\naction g: vertex 2 -> 1\naction g: arrow a -> b\naction g: arrow b -> a\n";
        let doc = parse_input(text).unwrap();
        assert_eq!(doc.action.group.order(), 2);
        assert_eq!(doc.action.generators[0].vertex_perm, vec![1, 0, 2]);
        assert_eq!(doc.action.generators[0].arrow_map, vec![(1, 1), (1, 0)]);
        assert!(doc.action.validate(&doc.algebra().unwrap()).is_valid());
    }

    #[test]
    fn emitted_documents_read_back() {
        let text = "field p = 1009\nvertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation 1*b.a\ngroup Z2\naction g: arrow a -> -1*a\n";
        let doc = parse_input(text).unwrap();
        let alg = doc.algebra().unwrap();
        let m = Representation::simple(&alg, 1);
        let out = emit_document(
            doc.field,
            &doc.quiver,
            &doc.relations,
            Some(&doc.action),
            &[],
            &[("S2", &m)],
        );
        let back = parse_input(&out).unwrap();
        assert_eq!(back.quiver, doc.quiver);
        assert_eq!(back.relations, doc.relations);
        assert_eq!(back.action, doc.action);
        assert_eq!(back.module(&alg, "S2").unwrap(), m);
        assert_eq!(
            emit_document(
                back.field,
                &back.quiver,
                &back.relations,
                Some(&back.action),
                &[],
                &[("S2", &m)]
            ),
            out
        );
    }

    #[test]
    fn relation_with_subtraction() {
        let doc = parse_input("vertex 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation b.a - d.c\n").unwrap();
        let r = &doc.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[1].0, doc.field.p() - 1);
    }

    #[test]
    fn matching_identifies_an_arrow_change() {
        let fig = parse_input("vertex 1 2\narrow x: 1 -> 2\narrow y: 1 -> 2\n")
            .unwrap()
            .algebra()
            .unwrap();
        let comp = parse_input("vertex u v\narrow p: u -> v\narrow q: u -> v\n")
            .unwrap()
            .algebra()
            .unwrap();
        let good =
            parse_matching("vertex 1 = u\nvertex 2 = v\narrow x = 1*p + 1*q\narrow y = p - q\n")
                .unwrap();
        assert!(check_matching(&fig, &comp, &good).holds());
        let bad =
            parse_matching("vertex 1 = u\nvertex 2 = v\narrow x = p + q\narrow y = 2*p + 2*q\n")
                .unwrap();
        assert!(!check_matching(&fig, &comp, &bad).holds());
    }

    #[test]
    fn golden_parsing() {
        let g = parse_golden("node a 2/1 3 4/2 2\nnode b 2\narrow b a\narrow a b 2\n").unwrap();
        assert_eq!(
            g.nodes[0].1,
            vec![
                vec!["2".to_string()],
                vec!["1".into(), "3".into(), "4".into()],
                vec!["2".into(), "2".into()]
            ]
        );
        assert_eq!(g.arrows[1], ("a".to_string(), "b".to_string(), 2));
        assert!(parse_golden("arrow a b\n").is_err());
    }
}
