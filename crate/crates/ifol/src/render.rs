//! Writes a loaded document back as workspace text.

use std::fmt::Write as _;

use ifol_core::kernel::{ExtentMember, BOTTOM, TOP, TRUTH_VALUES};
use ifol_core::sorting::PredicateKind;
use ifol_core::syntax::write_name;
use ifol_core::SortId;

use crate::load::{Document, Query};
use crate::report::lexeme;

fn name(s: &str) -> String {
    let mut out = String::new();
    let _ = write_name(&mut out, s);
    out
}

fn product(sorts: &[SortId]) -> String {
    sorts.iter().map(|s| name(s.as_str())).collect::<Vec<_>>().join(" x ")
}

/// Text that loads back into a document with the same declarations,
/// axioms and queries.
pub fn render_document(doc: &Document) -> String {
    let ws = &doc.workspace;
    let k = ws.kernel();
    let mut out = String::new();
    for c in k.concepts() {
        let id = c.id.as_str();
        if [TOP, BOTTOM, TRUTH_VALUES].contains(&id) {
            continue;
        }
        let predicate = ws.registry().predicate_of(&c.id);
        if predicate.is_none() && c.attribute_sorts == [c.id.clone()] {
            let _ = writeln!(out, "sort {}", name(id));
            continue;
        }
        let sorts: Vec<String> = c.attribute_sorts.iter().map(|s| name(s.as_str())).collect();
        let _ = write!(out, "concept {} arity {} sorts {}", name(id), c.arity(), sorts.join(" "));
        if let Some(p) = predicate {
            let _ = write!(out, " predicate {}", name(p));
        }
        out.push('\n');
    }
    for (sub, sup) in k.lattice().edges() {
        let _ = writeln!(out, "isa {} {}", name(sub.as_str()), name(sup.as_str()));
    }
    for (l, s) in k.declared_particulars() {
        let _ = writeln!(out, "particular {} : {}", name(l), name(s.as_str()));
    }
    for (s, members) in k.extent_declarations() {
        let items: Vec<String> = members
            .iter()
            .map(|m| match m {
                ExtentMember::Lexeme(l) => name(l),
                ExtentMember::Number(n) => n.to_string(),
            })
            .collect();
        let _ = writeln!(out, "extent {} = {{ {} }}", name(s.as_str()), items.join(", "));
    }
    for v in ws.vars() {
        let _ = writeln!(out, "var {} : {}", name(&v.name), name(v.sort.as_str()));
    }
    for f in ws.signature().functions() {
        let _ = write!(
            out,
            "function {} : {} -> {}",
            name(&format!("{}/{}", f.name, f.args.len())),
            product(&f.args),
            name(f.ret.as_str())
        );
        if let Some(e) = f.evaluator {
            let _ = write!(out, " = {}", e.name());
        }
        out.push('\n');
    }
    for p in ws.signature().predicates() {
        if let PredicateKind::Builtin(e) = p.kind {
            if &*p.name == ifol_core::syntax::TOP_PREDICATE {
                continue;
            }
            let _ = writeln!(
                out,
                "builtin predicate {} : {} = {}",
                name(&format!("{}/{}", p.name, p.sorts.len())),
                product(&p.sorts),
                e.name()
            );
        }
    }
    for a in &doc.axioms {
        let _ = writeln!(out, "axiom {}", a.item);
    }
    for q in &doc.queries {
        let _ = match &q.item {
            Query::Check => writeln!(out, "query check"),
            Query::Consequence(f) => writeln!(out, "query consequence {f}"),
            Query::Eval { formula, assignment } => {
                let _ = write!(out, "query eval {formula}");
                for (i, (v, e)) in assignment.iter().enumerate() {
                    out.push_str(if i == 0 { " with " } else { ", " });
                    let _ = write!(out, "{}={}", name(&v.name), lexeme(e));
                }
                writeln!(out)
            }
            Query::Intension(f) => writeln!(out, "query intension {f}"),
            Query::Concepts(p) => writeln!(out, "query concepts {}", name(p)),
            Query::BealerMontague(f) => writeln!(out, "query bealer-montague {f}"),
            Query::Term(t) => writeln!(out, "query term {t}"),
        };
    }
    out
}
