//! Command-line orchestration: argument parsing, command dispatch and
//! deterministic run reports.
//!
//! Exit codes: 0 when the command succeeds and every checked property holds,
//! 2 when a property check fails, 1 on input or computation errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::ar::{
    knit_ar_quiver, pushdown_sequence, radical_filtration, sequence_stabilizer, ArQuiver, KnitCaps,
    RankValue,
};
use crate::dot::ar_quiver_dot;
use crate::format::{
    compare_golden, emit_document, module_block, parse_golden, parse_input_with, InputDocument,
};
use crate::gentle::{is_gentle, is_skew_gentle};
use crate::pushdown::{pushdown_module, verify_semi_covering};
use crate::quiver::BoundAlgebra;
use crate::rep::decompose_with_multiplicities;
use crate::skew::{quiver_isomorphism, SkewAlgebra, SkewPresentation};

#[derive(Debug, Parser)]
#[command(
    name = "skewquiver",
    version,
    about = "Skew group algebras of bound quivers, pushdown functors and AR theory over F_p"
)]
pub struct Cli {
    /// Print the structured report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Work over F_p for this prime instead of the file's or the default one.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the quiver with relations of the basic skew group algebra, with the dual action.
    Skew { file: PathBuf },
    /// Push a named module down to the skew group algebra.
    Pushdown {
        file: PathBuf,
        #[arg(long)]
        module: String,
        /// Extra file with module blocks.
        #[arg(long)]
        modules: Option<PathBuf>,
    },
    /// Compare Hom dimensions on both sides of the pushdown for two named modules.
    Hom {
        file: PathBuf,
        m: String,
        n: String,
        #[arg(long)]
        modules: Option<PathBuf>,
    },
    /// Check the arrow-level covering identities, and optionally the Hom identities for all indecomposables.
    VerifyCovering {
        file: PathBuf,
        #[arg(long)]
        all_indecomposables: bool,
    },
    /// Knit the AR quiver.
    ArQuiver {
        file: PathBuf,
        /// Write the quiver as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Compare against a golden AR file.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, default_value_t = 500)]
        max_modules: usize,
        #[arg(long, default_value_t = 60)]
        max_dim: usize,
    },
    /// Rank and stable rank of the module category via radical powers.
    Rank {
        file: PathBuf,
        #[arg(long, default_value_t = 32)]
        cutoff: usize,
    },
    /// Push every almost split sequence down to the skew group algebra.
    TransportArs { file: PathBuf },
    /// Gentle check, or skew-gentle check when special loops are given.
    CheckGentle {
        file: PathBuf,
        #[arg(long, num_args = 1..)]
        special: Vec<String>,
    },
    /// Skew twice and compare with the original quiver.
    DoubleSkew { file: PathBuf },
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub prime: u32,
    pub passed: bool,
    pub results: Value,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub text: String,
    pub exit_code: i32,
}

impl RunOutcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
        } else {
            self.text.clone()
        }
    }
}

struct Ctx {
    digest: Sha256,
    prime: Option<u32>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.digest.update((text.len() as u64).to_le_bytes());
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn document(&mut self, path: &Path) -> Result<InputDocument> {
        let text = self.read(path)?;
        parse_input_with(&text, self.prime).with_context(|| format!("parsing {}", path.display()))
    }

    fn with_modules(&mut self, path: &Path, extra: &Option<PathBuf>) -> Result<InputDocument> {
        let mut doc = self.document(path)?;
        if let Some(p) = extra {
            let text = self.read(p)?;
            doc.add_modules(&text)
                .with_context(|| format!("parsing {}", p.display()))?;
        }
        Ok(doc)
    }
}

fn presentation(doc: &InputDocument) -> Result<(BoundAlgebra, SkewPresentation)> {
    let alg = doc.algebra()?;
    let report = doc.action.validate(&alg);
    if !report.is_valid() {
        let lines: Vec<String> = report
            .failures
            .iter()
            .map(|f| format!("{}: {}", f.check, f.witness))
            .collect();
        bail!("invalid group action:\n  {}", lines.join("\n  "));
    }
    let pres = SkewPresentation::build(
        SkewAlgebra::new(alg.clone(), doc.action.clone())?,
        doc.length_bound,
    )?;
    Ok((alg, pres))
}

fn knit(alg: &BoundAlgebra) -> Result<ArQuiver> {
    Ok(knit_ar_quiver(alg, KnitCaps::default())?)
}

fn rank_text(r: RankValue) -> String {
    match r {
        RankValue::Finite(k) => k.to_string(),
        RankValue::AtLeast(c) => format!(">= {c}"),
    }
}

fn labels(alg: &BoundAlgebra, ar: &ArQuiver, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| ar.modules[i].label(alg)).collect()
}

/// Run one command. Errors map to exit code 1 in the binary.
pub fn run(cli: &Cli) -> Result<RunOutcome> {
    let mut ctx = Ctx {
        digest: Sha256::new(),
        prime: cli.prime,
    };
    ctx.digest
        .update(concat!("skewquiver ", env!("CARGO_PKG_VERSION")).as_bytes());
    ctx.digest.update(format!("{:?}", cli.command).as_bytes());
    let mut text = String::new();
    let (name, prime, passed, results) = match &cli.command {
        Command::Skew { file } => {
            let doc = ctx.document(file)?;
            let (_, pres) = presentation(&doc)?;
            let dual = pres.dual_action()?;
            let out = emit_document(
                pres.field(),
                &pres.quiver,
                &pres.relations,
                Some(&dual),
                &[],
                &[],
            );
            let _ = writeln!(
                text,
                "# basic skew group algebra of {}: {} vertices, {} arrows, dimension {}",
                file.display(),
                pres.quiver.num_vertices(),
                pres.quiver.num_arrows(),
                pres.algebra.dim()
            );
            text.push_str(&out);
            let results = json!({
                "vertices": pres.quiver.vertex_names(),
                "arrows": pres.quiver.num_arrows(),
                "relations": pres.relations.iter().map(|r| r.display(&pres.quiver, Some(pres.field()))).collect::<Vec<_>>(),
                "dimension": pres.algebra.dim(),
                "document": out,
            });
            ("skew", doc.field.p(), true, results)
        }
        Command::Pushdown {
            file,
            module,
            modules,
        } => {
            let doc = ctx.with_modules(file, modules)?;
            let (alg, pres) = presentation(&doc)?;
            let m = doc.module(&alg, module)?;
            let pushed = pushdown_module(&pres, &m);
            let parts = decompose_with_multiplicities(&pres.algebra, &pushed.module);
            let block = module_block(&pres.quiver, &format!("F_{module}"), &pushed.module);
            let fibers: Vec<Value> = pushed
                .fibers
                .iter()
                .enumerate()
                .map(|(u, fib)| json!({"vertex": pres.quiver.vertex_name(u), "fiber": fib.iter().map(|&x| alg.quiver().vertex_name(x)).collect::<Vec<_>>()}))
                .collect();
            let summands: Vec<Value> = parts
                .iter()
                .map(|(s, k)| json!({"module": s.label(&pres.algebra), "multiplicity": k}))
                .collect();
            let _ = writeln!(
                text,
                "# pushdown of {module}; fibers list the summed vertex spaces in order"
            );
            for f in &fibers {
                let _ = writeln!(
                    text,
                    "# {} <- {}",
                    f["vertex"].as_str().unwrap_or(""),
                    f["fiber"]
                );
            }
            text.push_str(&block);
            for (s, k) in &parts {
                let _ = writeln!(text, "# summand {} x{k}", s.label(&pres.algebra));
            }
            (
                "pushdown",
                doc.field.p(),
                true,
                json!({"module": block, "fibers": fibers, "summands": summands}),
            )
        }
        Command::Hom {
            file,
            m,
            n,
            modules,
        } => {
            let doc = ctx.with_modules(file, modules)?;
            let (alg, pres) = presentation(&doc)?;
            let (mm, nn) = (doc.module(&alg, m)?, doc.module(&alg, n)?);
            let r = verify_semi_covering(&pres, &mm, &nn);
            let _ = writeln!(
                text,
                "case {}: dim Hom(F M, F N) = {}, expected {} -> {}",
                r.case,
                r.lhs,
                r.rhs,
                if r.holds() { "ok" } else { "FAILED" }
            );
            ("hom", doc.field.p(), r.holds(), serde_json::to_value(&r)?)
        }
        Command::VerifyCovering {
            file,
            all_indecomposables,
        } => {
            let doc = ctx.document(file)?;
            let (alg, pres) = presentation(&doc)?;
            let q = alg.quiver();
            let mut arrows = Vec::new();
            let mut ok = true;
            for i in 0..q.num_vertices() {
                for j in 0..q.num_vertices() {
                    let c = pres.arrow_space_dims(i, j);
                    ok &= c.lhs == c.rhs;
                    if c.lhs + c.rhs > 0 {
                        let _ = writeln!(
                            text,
                            "arrows {} -> {}: {} vs {} ({})",
                            q.vertex_name(i),
                            q.vertex_name(j),
                            c.lhs,
                            c.rhs,
                            c.case
                        );
                        arrows.push(json!({"source": q.vertex_name(i), "target": q.vertex_name(j), "check": c}));
                    }
                }
            }
            let mut pairs = Vec::new();
            if *all_indecomposables {
                let ar = knit(&alg)?;
                let mut failures = 0;
                for a in 0..ar.len() {
                    for b in 0..ar.len() {
                        let r = verify_semi_covering(&pres, &ar.modules[a], &ar.modules[b]);
                        if !r.holds() {
                            failures += 1;
                            let _ = writeln!(
                                text,
                                "Hom identity fails for {} -> {}",
                                ar.vertices[a].label, ar.vertices[b].label
                            );
                        }
                        pairs.push(json!({"m": ar.vertices[a].label, "n": ar.vertices[b].label, "check": r}));
                    }
                }
                ok &= failures == 0;
                let _ = writeln!(
                    text,
                    "Hom identities checked on {} pairs, {failures} failures",
                    pairs.len()
                );
            }
            let _ = writeln!(
                text,
                "{}",
                if ok {
                    "covering identities hold"
                } else {
                    "covering identities FAILED"
                }
            );
            (
                "verify-covering",
                doc.field.p(),
                ok,
                json!({"arrow_spaces": arrows, "hom_pairs": pairs}),
            )
        }
        Command::ArQuiver {
            file,
            dot,
            golden,
            max_modules,
            max_dim,
        } => {
            let doc = ctx.document(file)?;
            let alg = doc.algebra()?;
            let caps = KnitCaps {
                max_modules: *max_modules,
                max_dim: *max_dim,
            };
            let ar = knit_ar_quiver(&alg, caps)?;
            let consistent = ar.mesh_dimensions_hold() && ar.meshes_are_consistent();
            let mut ok = consistent;
            let _ = writeln!(
                text,
                "{} indecomposables, {} irreducible maps (with multiplicity)",
                ar.len(),
                ar.arrow_count()
            );
            for (i, v) in ar.vertices.iter().enumerate() {
                let flags = match (v.projective, v.injective) {
                    (true, true) => " [projective-injective]",
                    (true, false) => " [projective]",
                    (false, true) => " [injective]",
                    _ => "",
                };
                let _ = writeln!(text, "m{i}: {} dims {:?}{flags}", v.label, v.dims);
            }
            for (&(a, b), &k) in &ar.arrows {
                let _ = writeln!(text, "m{a} -> m{b} x{k}");
            }
            let mut golden_report = Value::Null;
            if let Some(g) = golden {
                let gtext = ctx.read(g)?;
                let gold = parse_golden(&gtext)?;
                let r = compare_golden(&gold, alg.quiver(), &ar, &|s| s.to_string());
                let _ = writeln!(
                    text,
                    "golden {}: {}",
                    g.display(),
                    if r.holds() {
                        "match".to_string()
                    } else {
                        r.failures.join("; ")
                    }
                );
                ok &= r.holds();
                golden_report = serde_json::to_value(&r)?;
            }
            if let Some(path) = dot {
                std::fs::write(path, ar_quiver_dot(&ar, "AR"))?;
            }
            let _ = writeln!(
                text,
                "mesh relations {}",
                if consistent { "hold" } else { "FAIL" }
            );
            let results = json!({
                "vertices": ar.vertices,
                "arrows": ar.arrows.iter().map(|(&(a, b), &k)| json!([a, b, k])).collect::<Vec<_>>(),
                "tau": ar.tau,
                "meshes_consistent": consistent,
                "golden": golden_report,
            });
            ("ar-quiver", doc.field.p(), ok, results)
        }
        Command::Rank { file, cutoff } => {
            let doc = ctx.document(file)?;
            let alg = doc.algebra()?;
            let ar = knit(&alg)?;
            let filt = radical_filtration(&alg, &ar, *cutoff)?;
            let (r, s) = filt.rank();
            let level_dims: Vec<usize> = filt
                .levels
                .iter()
                .map(|l| l.iter().flatten().map(|x| x.dim()).sum())
                .collect();
            let _ = writeln!(text, "rank {}", rank_text(r));
            let _ = writeln!(text, "stable rank {}", rank_text(s));
            let _ = writeln!(
                text,
                "dim rad^k over all indecomposable pairs: {level_dims:?}"
            );
            (
                "rank",
                doc.field.p(),
                true,
                json!({"rank": rank_text(r), "stable_rank": rank_text(s), "level_dims": level_dims, "indecomposables": ar.len()}),
            )
        }
        Command::TransportArs { file } => {
            let doc = ctx.document(file)?;
            let (alg, pres) = presentation(&doc)?;
            let lam = knit(&alg)?;
            let sk = knit(&pres.algebra)?;
            let order = pres.skew.group_order();
            let mut ok = true;
            let mut rows = Vec::new();
            for t in 0..lam.len() {
                if lam.meshes[t].is_none() {
                    continue;
                }
                let g = pushdown_sequence(&pres, &lam, &sk, t)?;
                let st = sequence_stabilizer(&pres, &lam, t)?;
                let count_ok = g.sequences.len() == if g.stable { order } else { 1 };
                let good = g.assembles && st.equivalences_hold() && count_ok;
                ok &= good;
                let gluing: Vec<usize> = g.gluing.iter().map(|e| e.0).collect();
                let right: Vec<usize> = g.sequences.iter().map(|s| s.right).collect();
                let _ = writeln!(
                    text,
                    "{}: {} sequence(s) ending at {:?}, glued via {:?}{}",
                    lam.vertices[t].label,
                    g.sequences.len(),
                    labels(&pres.algebra, &sk, &right),
                    labels(&pres.algebra, &sk, &gluing),
                    if good { "" } else { " FAILED" }
                );
                rows.push(json!({
                    "right": lam.vertices[t].label,
                    "stable": g.stable,
                    "stabilizer": st.group,
                    "sequences": right.len(),
                    "pushed_right": labels(&pres.algebra, &sk, &right),
                    "gluing": labels(&pres.algebra, &sk, &gluing),
                    "assembles": g.assembles,
                    "equivalences": st.equivalences_hold(),
                }));
            }
            (
                "transport-ars",
                doc.field.p(),
                ok,
                json!({"sequences": rows}),
            )
        }
        Command::CheckGentle { file, special } => {
            let doc = ctx.document(file)?;
            let mut sp = doc.special.clone();
            for s in special {
                let a = doc.quiver.arrow_id(s)?;
                if !sp.contains(&a) {
                    sp.push(a);
                }
            }
            let (kind, r) = if sp.is_empty() {
                ("gentle", is_gentle(&doc.quiver, doc.field, &doc.relations))
            } else {
                (
                    "skew-gentle",
                    is_skew_gentle(&doc.quiver, doc.field, &doc.relations, &sp),
                )
            };
            let _ = writeln!(text, "{kind}: {}", if r.holds { "yes" } else { "no" });
            for v in &r.violations {
                let _ = writeln!(text, "  {}: {}", v.clause, v.witness);
            }
            (
                "check-gentle",
                doc.field.p(),
                r.holds,
                json!({"kind": kind, "report": r}),
            )
        }
        Command::DoubleSkew { file } => {
            let doc = ctx.document(file)?;
            if doc.action.group.order() == 1 {
                bail!("double-skew needs a nontrivial group");
            }
            let (alg, pres) = presentation(&doc)?;
            let dual = pres.dual_action()?;
            let emitted = emit_document(
                pres.field(),
                &pres.quiver,
                &pres.relations,
                Some(&dual),
                &[],
                &[],
            );
            let again = parse_input_with(&emitted, None)?;
            let (_, back) = presentation(&again)?;
            let iso = quiver_isomorphism(alg.quiver(), &back.quiver);
            let _ = writeln!(
                text,
                "skew: {} vertices, {} arrows",
                pres.quiver.num_vertices(),
                pres.quiver.num_arrows()
            );
            let _ = writeln!(
                text,
                "double skew: {} vertices, {} arrows",
                back.quiver.num_vertices(),
                back.quiver.num_arrows()
            );
            let mapping: Vec<Value> = iso
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, &j)| json!([alg.quiver().vertex_name(i), back.quiver.vertex_name(j)]))
                .collect();
            for m in &mapping {
                let _ = writeln!(
                    text,
                    "  {} = {}",
                    m[0].as_str().unwrap_or(""),
                    m[1].as_str().unwrap_or("")
                );
            }
            let _ = writeln!(
                text,
                "{}",
                if iso.is_some() {
                    "quiver isomorphic to the input"
                } else {
                    "NOT isomorphic to the input"
                }
            );
            (
                "double-skew",
                doc.field.p(),
                iso.is_some(),
                json!({"isomorphism": mapping, "skew_document": emitted}),
            )
        }
    };
    let digest: String = ctx
        .digest
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let _ = writeln!(text, "# prime {prime}, inputs {}", &digest[..16]);
    Ok(RunOutcome {
        report: RunReport {
            command: name.to_string(),
            inputs_digest: digest,
            prime,
            passed,
            results,
        },
        text,
        exit_code: if passed { 0 } else { 2 },
    })
}
