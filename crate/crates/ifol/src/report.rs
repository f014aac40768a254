//! Query execution and report text.
//!
//! Per-world work runs on a rayon pool; results are collected in world
//! order, so reports do not depend on the number of threads.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use ifol_core::concepts::subconcept_tree;
use ifol_core::kernel::display_tuple;
use ifol_core::semantics::{
    bealer_montague_check, counterexample_in, dynamic_soundness, enumerate_worlds, is_model, montague_intension,
    validate_world, Countermodel, KripkeModel, SemanticsError, World, DEFAULT_WORLD_CAP,
};
use ifol_core::sorting::static_sort;
use ifol_core::syntax::{ground_instance, write_name};
use ifol_core::{Assignment, Element, Formula, Term, Workspace};

use crate::load::{Document, Located, Query};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    pub max_worlds: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: None,
            max_worlds: DEFAULT_WORLD_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// Whether some query failed or could not be evaluated.
    pub failed: bool,
}

struct Block {
    lines: String,
    ok: bool,
}

impl Block {
    fn new() -> Self {
        Block {
            lines: String::new(),
            ok: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.lines.push_str(s.as_ref());
        self.lines.push('\n');
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.line(format!("ERROR {e}"));
        self.ok = false;
    }
}

struct Runner<'a> {
    doc: &'a Document,
    gamma: Vec<Formula>,
    max_worlds: u128,
    worlds: OnceCell<Result<Vec<World>, SemanticsError>>,
    models: OnceCell<Result<Vec<bool>, SemanticsError>>,
}

impl<'a> Runner<'a> {
    fn ws(&self) -> &'a Workspace {
        &self.doc.workspace
    }

    fn worlds(&self) -> Result<&[World], SemanticsError> {
        let all = self
            .worlds
            .get_or_init(|| enumerate_worlds(self.ws(), self.max_worlds).map(|e| e.collect()));
        match all {
            Ok(w) => Ok(w),
            Err(e) => Err(e.clone()),
        }
    }

    /// Which worlds are models of Γ.
    fn models(&self) -> Result<&[bool], SemanticsError> {
        let models = self.models.get_or_init(|| {
            let worlds = self.worlds()?;
            let model = KripkeModel::new(self.ws(), worlds);
            let gamma = &self.gamma;
            worlds.par_iter().map(|w| is_model(&model, w, gamma)).collect()
        });
        match models {
            Ok(m) => Ok(m),
            Err(e) => Err(e.clone()),
        }
    }

    fn run(&self, q: &Located<Query>, index: usize) -> Block {
        let mut b = Block::new();
        let header = match &q.item {
            Query::Check => "check".to_string(),
            Query::Consequence(f) => format!("consequence {f}"),
            Query::Eval { formula, assignment } => {
                let mut s = format!("eval {formula}");
                for (i, (v, e)) in assignment.iter().enumerate() {
                    s.push_str(if i == 0 { " with " } else { ", " });
                    let _ = write_name(&mut s, &v.name);
                    s.push('=');
                    s.push_str(&lexeme(e));
                }
                s
            }
            Query::Intension(f) => format!("intension {f}"),
            Query::Concepts(p) => format!("concepts {}", name(p)),
            Query::BealerMontague(f) => format!("bealer-montague {f}"),
            Query::Term(t) => format!("term {t}"),
        };
        b.line(format!("QUERY {index}: {header}"));
        let outcome = match &q.item {
            Query::Check => self.check(&mut b),
            Query::Consequence(f) => self.consequence(&mut b, f),
            Query::Eval { formula, assignment } => self.eval(&mut b, formula, assignment),
            Query::Intension(f) => self.intension(&mut b, f),
            Query::Concepts(p) => {
                match subconcept_tree(self.ws(), p) {
                    Ok(tree) => {
                        b.line(format!("CONCEPTS {} NODES {}", tree.distinct().len(), tree.len()));
                        b.lines.push_str(&tree.render());
                    }
                    Err(e) => b.error(e),
                }
                Ok(())
            }
            Query::BealerMontague(f) => self.bealer_montague(&mut b, f),
            Query::Term(t) => self.term(&mut b, t),
        };
        if let Err(e) = outcome {
            b.error(e);
        }
        b
    }

    fn check(&self, b: &mut Block) -> Result<(), SemanticsError> {
        let ws = self.ws();
        let worlds = self.worlds()?;
        let violations: Vec<(usize, String)> = worlds
            .par_iter()
            .filter_map(|w| validate_world(ws, w).err().map(|v| (w.id, v.to_string())))
            .collect();
        let models = self.models()?.iter().filter(|m| **m).count();
        let worlds = self.worlds()?.len();
        if violations.is_empty() {
            b.line("CHECK ok");
        } else {
            b.line("CHECK failed");
            b.ok = false;
        }
        b.line(format!("WORLDS {worlds}"));
        b.line(format!("MODELS {models}"));
        for (id, v) in violations {
            b.line(format!("VIOLATION world {id}: {v}"));
        }
        Ok(())
    }

    fn consequence(&self, b: &mut Block, phi: &Formula) -> Result<(), SemanticsError> {
        let models = self.models()?;
        let ws = self.ws();
        let worlds = self.worlds()?;
        let model = KripkeModel::new(ws, worlds);
        let found: Vec<Option<Countermodel>> = worlds
            .par_iter()
            .zip(models)
            .map(|(w, m)| {
                if !m {
                    return Ok(None);
                }
                Ok(counterexample_in(&model, w, phi)?.map(|assignment| Countermodel {
                    world: w.clone(),
                    assignment,
                }))
            })
            .collect::<Result<_, SemanticsError>>()?;
        let n_models = models.iter().filter(|m| **m).count();
        match found.into_iter().flatten().next() {
            None => {
                b.line("CONSEQUENCE yes");
                b.line(format!("MODELS {n_models} OF {}", worlds.len()));
            }
            Some(cm) => {
                b.line("CONSEQUENCE no");
                b.line(format!("MODELS {n_models} OF {}", worlds.len()));
                b.lines.push_str(&cm.render(ws));
                b.ok = false;
            }
        }
        Ok(())
    }

    fn eval(&self, b: &mut Block, phi: &Formula, pairs: &[(ifol_core::Variable, Element)]) -> Result<(), SemanticsError> {
        let mut g = Assignment::new();
        for (v, e) in pairs {
            g.set(v.clone(), e.clone());
        }
        let ground = ground_instance(phi, &g)?;
        let ws = self.ws();
        b.line(format!("GROUND {ground}"));
        let concept = ws.interpret(&ground);
        b.line(format!("PROPOSITION {}", concept.name()));
        let worlds = self.worlds()?;
        let model = KripkeModel::new(ws, worlds);
        let truth: Vec<bool> = worlds
            .par_iter()
            .map(|w| model.satisfies(w, &g, phi))
            .collect::<Result<_, _>>()?;
        let true_in: Vec<usize> = worlds.iter().zip(&truth).filter(|(_, t)| **t).map(|(w, _)| w.id).collect();
        b.line(format!("TRUE IN {} OF {} WORLDS", true_in.len(), worlds.len()));
        if !true_in.is_empty() && true_in.len() < worlds.len() {
            b.line(format!("TRUE WORLDS {}", id_ranges(&true_in)));
        }
        Ok(())
    }

    fn intension(&self, b: &mut Block, phi: &Formula) -> Result<(), SemanticsError> {
        let ws = self.ws();
        let concept = ws.interpret(phi);
        b.line(format!("INTENSION {concept}"));
        let free: Vec<String> = phi.free_vars().iter().map(|v| name(&v.name)).collect();
        b.line(format!("VARIABLES ({})", free.join(", ")));
        let worlds = self.worlds()?;
        let per_world: Vec<BTreeSet<Vec<Element>>> = worlds
            .par_iter()
            .map(|w| montague_intension(ws, std::slice::from_ref(w), phi).map(|mut v| v.remove(0)))
            .collect::<Result<_, _>>()?;
        let mut groups: Vec<(Vec<usize>, &BTreeSet<Vec<Element>>)> = Vec::new();
        for (w, rel) in worlds.iter().zip(&per_world) {
            match groups.iter_mut().find(|(_, r)| *r == rel) {
                Some((ids, _)) => ids.push(w.id),
                None => groups.push((vec![w.id], rel)),
            }
        }
        for (ids, rel) in groups {
            if phi.is_sentence() {
                let t = if rel.is_empty() { "f" } else { "t" };
                b.line(format!("WORLDS {}: {t}", id_ranges(&ids)));
                continue;
            }
            b.line(format!("WORLDS {}: {} TUPLES", id_ranges(&ids), rel.len()));
            for t in rel {
                b.line(display_tuple(t));
            }
        }
        Ok(())
    }

    fn bealer_montague(&self, b: &mut Block, phi: &Formula) -> Result<(), SemanticsError> {
        let ws = self.ws();
        let worlds = self.worlds()?;
        let mismatches: Vec<_> = worlds
            .par_iter()
            .map(|w| bealer_montague_check(ws, std::slice::from_ref(w), phi))
            .collect::<Result<_, _>>()?;
        b.line(format!("CONCEPT {}", ws.interpret(phi)));
        match mismatches.into_iter().flatten().next() {
            None => b.line(format!("BEALER-MONTAGUE ok IN {} WORLDS", worlds.len())),
            Some(m) => {
                b.line("BEALER-MONTAGUE mismatch");
                b.line(m.render());
                b.ok = false;
            }
        }
        Ok(())
    }

    fn term(&self, b: &mut Block, t: &Term) -> Result<(), SemanticsError> {
        let ws = self.ws();
        let stat = static_sort(ws, t).map_err(|e| SemanticsError::EvaluationFailure {
            symbol: t.to_string(),
            args: e.to_string(),
        })?;
        b.line(format!("STATIC {}", name(stat.as_str())));
        if let Some(v) = t.free_vars().first() {
            return Err(SemanticsError::UnboundVariable(v.name.to_string()));
        }
        let worlds = self.worlds()?;
        let g = Assignment::new();
        let values: Vec<_> = worlds
            .par_iter()
            .map(|w| dynamic_soundness(ws, w, t, &g))
            .collect::<Result<_, _>>()?;
        let mut groups: Vec<(Vec<usize>, String)> = Vec::new();
        for (w, v) in worlds.iter().zip(values) {
            let line = match v {
                Ok(e) => format!("VALUE {} DYNAMIC {} SOUND", e, name(ws.kernel().dynamic_sort(&e).as_str())),
                Err(viol) => {
                    b.ok = false;
                    format!(
                        "VALUE {} DYNAMIC {} UNSOUND (static {})",
                        viol.value,
                        name(viol.dynamic.as_str()),
                        name(viol.static_sort.as_str())
                    )
                }
            };
            match groups.iter_mut().find(|(_, l)| *l == line) {
                Some((ids, _)) => ids.push(w.id),
                None => groups.push((vec![w.id], line)),
            }
        }
        for (ids, line) in groups {
            b.line(format!("WORLDS {}: {line}", id_ranges(&ids)));
        }
        Ok(())
    }
}

fn name(s: &str) -> String {
    let mut out = String::new();
    let _ = write_name(&mut out, s);
    out
}

/// How an element is written in a workspace file.
pub fn lexeme(e: &Element) -> String {
    match e {
        Element::Number(n) => n.to_string(),
        other => name(&other.lexeme()),
    }
}

/// `0..3, 7, 9..10`
fn id_ranges(ids: &[usize]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < ids.len() {
        let mut j = i;
        while j + 1 < ids.len() && ids[j + 1] == ids[j] + 1 {
            j += 1;
        }
        if !out.is_empty() {
            out.push_str(", ");
        }
        if j > i {
            let _ = write!(out, "{}..{}", ids[i], ids[j]);
        } else {
            let _ = write!(out, "{}", ids[i]);
        }
        i = j + 1;
    }
    out
}

/// Runs every query in order. One block per query, separated by blank
/// lines; an error in one query does not stop the others.
pub fn run_queries(doc: &Document, opts: &RunOptions) -> Report {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().expect("thread pool");
    pool.install(|| {
        let runner = Runner {
            doc,
            gamma: doc.gamma(),
            max_worlds: opts.max_worlds,
            worlds: OnceCell::new(),
            models: OnceCell::new(),
        };
        let mut text = String::new();
        let mut failed = false;
        for (i, q) in doc.queries.iter().enumerate() {
            let block = runner.run(q, i + 1);
            if i > 0 {
                text.push('\n');
            }
            text.push_str(&block.lines);
            failed |= !block.ok;
        }
        Report { text, failed }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(id_ranges(&[0, 1, 2, 5, 7, 8]), "0..2, 5, 7..8");
        assert_eq!(id_ranges(&[]), "");
    }
}
