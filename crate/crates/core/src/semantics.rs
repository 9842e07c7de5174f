//! Kripke models, forcing, sequent falsification and a brute-force
//! countermodel oracle over small frames.

use crate::formula::Formula;
use crate::sequent::{formula_translation, LinearNestedSequent};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// How the relation is read when evaluating modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Frame {
    /// `□` looks at R-successors, `■` at R-predecessors.
    #[default]
    Directed,
    /// Both modalities look along the symmetric closure of R.
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("oracle enumeration needs {needed} evaluations, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("world bound {0} exceeds the supported maximum of 4")]
    WorldBoundTooLarge(usize),
}

/// Finite Kripke model with named worlds. Unlisted atoms are false.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
    true_atoms: Vec<BTreeSet<Arc<str>>>,
}

impl KripkeModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a world (no-op if present) and return its index.
    pub fn add_world(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.worlds.len();
        self.worlds.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.true_atoms.push(BTreeSet::new());
        i
    }

    /// Add `a R b`, creating either world as needed.
    pub fn add_edge(&mut self, a: &str, b: &str) {
        let (i, j) = (self.add_world(a), self.add_world(b));
        self.edges.insert((i, j));
    }

    pub fn set_atom(&mut self, world: &str, atom: &str, value: bool) {
        let i = self.add_world(world);
        if value {
            self.true_atoms[i].insert(Arc::from(atom));
        } else {
            self.true_atoms[i].remove(atom);
        }
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn contains_world(&self, w: &str) -> bool {
        self.index.contains_key(w)
    }

    /// Edges by world name, in insertion-index order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.worlds[a].as_str(), self.worlds[b].as_str()))
            .collect()
    }

    pub fn true_atoms(&self, w: &str) -> Option<&BTreeSet<Arc<str>>> {
        self.index.get(w).map(|&i| &self.true_atoms[i])
    }

    pub fn successors(&self, w: &str) -> Vec<&str> {
        self.edges()
            .into_iter()
            .filter(|(a, _)| *a == w)
            .map(|(_, b)| b)
            .collect()
    }

    pub fn predecessors(&self, w: &str) -> Vec<&str> {
        self.edges()
            .into_iter()
            .filter(|(_, b)| *b == w)
            .map(|(a, _)| a)
            .collect()
    }

    pub fn symmetric_closure(&self) -> KripkeModel {
        let mut out = self.clone();
        for &(a, b) in &self.edges {
            out.edges.insert((b, a));
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(a, b)| self.edges.contains(&(b, a)))
    }

    fn adjacency(&self, frame: Frame) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut succ = vec![Vec::new(); self.worlds.len()];
        let mut pred = vec![Vec::new(); self.worlds.len()];
        for &(a, b) in &self.edges {
            succ[a].push(b);
            pred[b].push(a);
            if frame == Frame::Symmetric {
                succ[b].push(a);
                pred[a].push(b);
            }
        }
        (succ, pred)
    }
}

struct Evaluator<'m> {
    model: &'m KripkeModel,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Evaluator<'_> {
    fn eval(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(p) => self.model.true_atoms[w].contains(p),
            Formula::Bottom => false,
            Formula::Implies(a, b) => !self.eval(w, a) || self.eval(w, b),
            Formula::Not(a) => !self.eval(w, a),
            Formula::And(a, b) => self.eval(w, a) && self.eval(w, b),
            Formula::Or(a, b) => self.eval(w, a) || self.eval(w, b),
            Formula::Box(a) => self.succ[w].iter().all(|&v| self.eval(v, a)),
            Formula::BlackBox(a) => self.pred[w].iter().all(|&v| self.eval(v, a)),
            Formula::Diamond(a) => self.succ[w].iter().any(|&v| self.eval(v, a)),
            Formula::BlackDiamond(a) => self.pred[w].iter().any(|&v| self.eval(v, a)),
        }
    }
}

/// `w ⊩ f` over the directed relation.
pub fn forces(m: &KripkeModel, w: &str, f: &Formula) -> Result<bool, SemanticsError> {
    forces_in(m, w, f, Frame::Directed)
}

pub fn forces_in(
    m: &KripkeModel,
    w: &str,
    f: &Formula,
    frame: Frame,
) -> Result<bool, SemanticsError> {
    let &i = m
        .index
        .get(w)
        .ok_or_else(|| SemanticsError::UnknownWorld(w.to_string()))?;
    let (succ, pred) = m.adjacency(frame);
    Ok(Evaluator { model: m, succ, pred }.eval(i, f))
}

/// `w ⊮ τ(s)`.
pub fn falsifies(m: &KripkeModel, w: &str, s: &LinearNestedSequent) -> Result<bool, SemanticsError> {
    falsifies_in(m, w, s, Frame::Directed)
}

pub fn falsifies_in(
    m: &KripkeModel,
    w: &str,
    s: &LinearNestedSequent,
    frame: Frame,
) -> Result<bool, SemanticsError> {
    Ok(!forces_in(m, w, &formula_translation(s), frame)?)
}

/// Default cap on `(relation, valuation)` evaluations for the oracle.
pub const DEFAULT_ORACLE_CAP: u128 = 50_000_000;

/// Exhaustive search for a countermodel with at most `max_worlds` worlds,
/// over directed frames and the default cap.
pub fn bounded_countermodel_search(
    f: &Formula,
    max_worlds: usize,
) -> Result<Option<(KripkeModel, String)>, SemanticsError> {
    bounded_countermodel_search_in(f, max_worlds, Frame::Directed, DEFAULT_ORACLE_CAP)
}

// Postfix program over world bitsets.
enum Op {
    Atom(usize),
    Bottom,
    Implies(usize, usize),
    Box(usize),
    BlackBox(usize),
}

fn compile(f: &Formula, atoms: &BTreeMap<Arc<str>, usize>, ops: &mut Vec<Op>, memo: &mut HashMap<Formula, usize>) -> usize {
    if let Some(&i) = memo.get(f) {
        return i;
    }
    let op = match f {
        Formula::Atom(p) => Op::Atom(atoms[p]),
        Formula::Bottom => Op::Bottom,
        Formula::Implies(a, b) => {
            let (x, y) = (compile(a, atoms, ops, memo), compile(b, atoms, ops, memo));
            Op::Implies(x, y)
        }
        Formula::Box(a) => Op::Box(compile(a, atoms, ops, memo)),
        Formula::BlackBox(a) => Op::BlackBox(compile(a, atoms, ops, memo)),
        _ => return compile(&f.desugar(), atoms, ops, memo),
    };
    ops.push(op);
    memo.insert(f.clone(), ops.len() - 1);
    ops.len() - 1
}

fn relation_count(k: usize, frame: Frame) -> u128 {
    match frame {
        Frame::Directed => 1u128 << (k * k),
        // loops plus unordered pairs
        Frame::Symmetric => 1u128 << (k + k * (k - 1) / 2),
    }
}

/// Relation bitmask `r` (bit `i*k+j` = `i R j`) from the `idx`-th
/// relation of the frame class.
fn relation_mask(k: usize, frame: Frame, idx: u64) -> u64 {
    match frame {
        Frame::Directed => idx,
        Frame::Symmetric => {
            let mut r = 0u64;
            let mut bit = 0;
            for i in 0..k {
                for j in i..k {
                    if idx >> bit & 1 == 1 {
                        r |= 1 << (i * k + j);
                        r |= 1 << (j * k + i);
                    }
                    bit += 1;
                }
            }
            r
        }
    }
}

/// Enumerate worlds `1..=max_worlds`, relations in ascending bitmask order
/// and valuations likewise; return the first falsifying `(model, world)`.
pub fn bounded_countermodel_search_in(
    f: &Formula,
    max_worlds: usize,
    frame: Frame,
    cap: u128,
) -> Result<Option<(KripkeModel, String)>, SemanticsError> {
    if max_worlds > 4 {
        return Err(SemanticsError::WorldBoundTooLarge(max_worlds));
    }
    let atoms: BTreeMap<Arc<str>, usize> = f
        .atoms()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let a = atoms.len();
    let needed: u128 = (1..=max_worlds)
        .map(|k| {
            if k * a >= 60 {
                u128::MAX / 8
            } else {
                relation_count(k, frame) << (k * a)
            }
        })
        .fold(0u128, u128::saturating_add);
    if needed > cap {
        return Err(SemanticsError::BudgetExceeded { needed, cap });
    }
    let mut ops = Vec::new();
    let root = compile(f, &atoms, &mut ops, &mut HashMap::new());

    for k in 1..=max_worlds {
        let full: u64 = (1 << k) - 1;
        let hit = (0..relation_count(k, frame) as u64)
            .into_par_iter()
            .find_map_first(|idx| {
                let r = relation_mask(k, frame, idx);
                let succ: Vec<u64> = (0..k).map(|i| (r >> (i * k)) & full).collect();
                let pred: Vec<u64> = (0..k)
                    .map(|j| (0..k).filter(|i| r >> (i * k + j) & 1 == 1).fold(0, |m, i| m | 1 << i))
                    .collect();
                let mut ext = vec![0u64; ops.len()];
                for v in 0..(1u64 << (k * a)) {
                    for (i, op) in ops.iter().enumerate() {
                        ext[i] = match *op {
                            Op::Atom(p) => (0..k).fold(0, |m, w| m | ((v >> (w * a + p)) & 1) << w),
                            Op::Bottom => 0,
                            Op::Implies(x, y) => (!ext[x] | ext[y]) & full,
                            Op::Box(x) => (0..k).fold(0, |m, w| {
                                m | u64::from(succ[w] & !ext[x] == 0) << w
                            }),
                            Op::BlackBox(x) => (0..k).fold(0, |m, w| {
                                m | u64::from(pred[w] & !ext[x] == 0) << w
                            }),
                        };
                    }
                    let bad = !ext[root] & full;
                    if bad != 0 {
                        return Some((r, v, bad.trailing_zeros() as usize));
                    }
                }
                None
            });
        if let Some((r, v, w)) = hit {
            let mut m = KripkeModel::new();
            for i in 0..k {
                m.add_world(&format!("w{i}"));
            }
            for i in 0..k {
                for j in 0..k {
                    if r >> (i * k + j) & 1 == 1 {
                        m.add_edge(&format!("w{i}"), &format!("w{j}"));
                    }
                }
                for (p, &pi) in &atoms {
                    if v >> (i * a + pi) & 1 == 1 {
                        m.set_atom(&format!("w{i}"), p, true);
                    }
                }
            }
            let world = format!("w{w}");
            assert!(
                !forces_in(&m, &world, f, frame)?,
                "oracle model does not falsify {f}"
            );
            return Ok(Some((m, world)));
        }
    }
    Ok(None)
}
