use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{KernelError, SortId, BOTTOM, NESTED_SENTENCE, TOP, TRUTH_VALUES};

/// Row of the reflexive-transitive closure, one bit per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn with_len(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    fn set(&mut self, i: usize) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &BitRow) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }
}

/// The finite IS-A order over sort names, with `empty set` at the bottom and
/// `everything` at the top.
#[derive(Clone, Debug)]
pub struct SortLattice {
    names: Vec<SortId>,
    index: BTreeMap<SortId, usize>,
    edges: BTreeSet<(usize, usize)>,
    /// `closure[i].get(j)` iff `names[i] ⊑ names[j]`.
    closure: Vec<BitRow>,
}

impl Default for SortLattice {
    fn default() -> Self {
        Self::new()
    }
}

impl SortLattice {
    /// A lattice holding only the reserved sorts.
    pub fn new() -> Self {
        let mut lattice = SortLattice {
            names: Vec::new(),
            index: BTreeMap::new(),
            edges: BTreeSet::new(),
            closure: Vec::new(),
        };
        for name in [TOP, BOTTOM, TRUTH_VALUES, NESTED_SENTENCE] {
            lattice
                .add_node(SortId::new(name))
                .expect("reserved names are distinct");
        }
        lattice
    }

    pub fn add_node(&mut self, name: SortId) -> Result<(), KernelError> {
        if self.index.contains_key(&name) {
            return Err(KernelError::DuplicateName(name));
        }
        self.index.insert(name.clone(), self.names.len());
        self.names.push(name);
        self.recompute();
        Ok(())
    }

    pub fn contains(&self, name: &SortId) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Nodes in insertion order.
    pub fn nodes(&self) -> impl Iterator<Item = &SortId> {
        self.names.iter()
    }

    /// Declared edges as `(sub, super)` pairs, sorted by name.
    pub fn edges(&self) -> Vec<(SortId, SortId)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        out.sort();
        out
    }

    fn idx(&self, name: &SortId) -> Result<usize, KernelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| KernelError::UnknownSort(name.clone()))
    }

    /// Records `sub ⊑ sup`, refusing edges that would make two distinct
    /// names mutually subsorts.
    pub fn add_edge(&mut self, sub: &SortId, sup: &SortId) -> Result<(), KernelError> {
        let a = self.idx(sub)?;
        let b = self.idx(sup)?;
        if a == b {
            return Ok(());
        }
        if self.closure[b].get(a) {
            return Err(KernelError::CycleDetected {
                sub: sub.clone(),
                sup: sup.clone(),
            });
        }
        self.edges.insert((a, b));
        self.recompute();
        Ok(())
    }

    fn recompute(&mut self) {
        let n = self.names.len();
        let top = self.index.get(&SortId::new(TOP)).copied();
        let bottom = self.index.get(&SortId::new(BOTTOM)).copied();
        let mut rows: Vec<BitRow> = (0..n)
            .map(|i| {
                let mut row = BitRow::with_len(n);
                row.set(i);
                if let Some(t) = top {
                    row.set(t);
                }
                row
            })
            .collect();
        for &(a, b) in &self.edges {
            rows[a].set(b);
        }
        if let Some(bot) = bottom {
            for j in 0..n {
                rows[bot].set(j);
            }
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = rows[k].clone();
            for row in rows.iter_mut() {
                if row.get(k) {
                    row.union_with(&row_k);
                }
            }
        }
        self.closure = rows;
    }

    pub fn is_subsort(&self, sub: &SortId, sup: &SortId) -> Result<bool, KernelError> {
        let a = self.idx(sub)?;
        let b = self.idx(sup)?;
        Ok(self.closure[a].get(b))
    }

    /// All `s` with `s ⊑ sup`, including `sup` itself, in insertion order.
    pub fn subsorts_of(&self, sup: &SortId) -> Result<Vec<SortId>, KernelError> {
        let b = self.idx(sup)?;
        Ok((0..self.names.len())
            .filter(|&a| self.closure[a].get(b))
            .map(|a| self.names[a].clone())
            .collect())
    }

    /// All `s` with `sub ⊑ s`, including `sub` itself, in insertion order.
    pub fn supersorts_of(&self, sub: &SortId) -> Result<Vec<SortId>, KernelError> {
        let a = self.idx(sub)?;
        Ok((0..self.names.len())
            .filter(|&b| self.closure[a].get(b))
            .map(|b| self.names[b].clone())
            .collect())
    }

    /// Least upper bound, when one exists.
    pub fn join(&self, a: &SortId, b: &SortId) -> Result<Option<SortId>, KernelError> {
        let upper: Vec<SortId> = self
            .supersorts_of(a)?
            .into_iter()
            .filter(|s| self.is_subsort(b, s).unwrap_or(false))
            .collect();
        Ok(self.least(&upper))
    }

    /// Greatest lower bound, when one exists.
    pub fn meet(&self, a: &SortId, b: &SortId) -> Result<Option<SortId>, KernelError> {
        let lower: Vec<SortId> = self
            .subsorts_of(a)?
            .into_iter()
            .filter(|s| self.is_subsort(s, b).unwrap_or(false))
            .collect();
        Ok(self.greatest(&lower))
    }

    /// The element of `set` below every other element of `set`.
    pub fn least(&self, set: &[SortId]) -> Option<SortId> {
        set.iter()
            .find(|c| set.iter().all(|o| self.is_subsort(c, o).unwrap_or(false)))
            .cloned()
    }

    fn greatest(&self, set: &[SortId]) -> Option<SortId> {
        set.iter()
            .find(|c| set.iter().all(|o| self.is_subsort(o, c).unwrap_or(false)))
            .cloned()
    }
}
