//! Formulas of tense logic: the surface language with diamonds and the
//! derived connectives, and the core language the calculus works on.

mod parse;
mod print;

pub use parse::{parse, ParseError};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A formula AST.
///
/// `Not`, `And`, `Or`, `Diamond` and `BlackDiamond` are surface-only; they
/// are removed by [`Formula::desugar`]. The derived `Ord` is the canonical
/// formula order used for deterministic rule enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Bottom,
    Implies(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    BlackBox(Arc<Formula>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Diamond(Arc<Formula>),
    BlackDiamond(Arc<Formula>),
}

/// Direction of a modality or of a structural link: `Forward` pairs with
/// `□`/`◇` and the relation R, `Backward` with `■`/`◆` and its converse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Forward,
    Backward,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Forward => Polarity::Backward,
            Polarity::Backward => Polarity::Forward,
        }
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn bottom() -> Formula {
        Formula::Bottom
    }

    /// `⊥ → ⊥`, the core encoding of truth.
    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    pub fn black_box(a: Formula) -> Formula {
        Formula::BlackBox(Arc::new(a))
    }

    pub fn modal_box(polarity: Polarity, a: Formula) -> Formula {
        match polarity {
            Polarity::Forward => Formula::boxed(a),
            Polarity::Backward => Formula::black_box(a),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn diamond(a: Formula) -> Formula {
        Formula::Diamond(Arc::new(a))
    }

    pub fn black_diamond(a: Formula) -> Formula {
        Formula::BlackDiamond(Arc::new(a))
    }

    /// Core negation `A → ⊥`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    /// If this is `□A` or `■A`, its polarity and body.
    pub fn as_box(&self) -> Option<(Polarity, &Formula)> {
        match self {
            Formula::Box(a) => Some((Polarity::Forward, a)),
            Formula::BlackBox(a) => Some((Polarity::Backward, a)),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// True when no surface-only node occurs.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Bottom => true,
            Formula::Implies(a, b) => a.is_core() && b.is_core(),
            Formula::Box(a) | Formula::BlackBox(a) => a.is_core(),
            _ => false,
        }
    }

    /// Rewrite every surface connective into `→`, `⊥`, `□`, `■`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Bottom => self.clone(),
            Formula::Implies(a, b) => Formula::implies(a.desugar(), b.desugar()),
            Formula::Box(a) => Formula::boxed(a.desugar()),
            Formula::BlackBox(a) => Formula::black_box(a.desugar()),
            Formula::Not(a) => Formula::neg(a.desugar()),
            // ¬(A → ¬B)
            Formula::And(a, b) => {
                Formula::neg(Formula::implies(a.desugar(), Formula::neg(b.desugar())))
            }
            // ¬A → B
            Formula::Or(a, b) => Formula::implies(Formula::neg(a.desugar()), b.desugar()),
            Formula::Diamond(a) => Formula::neg(Formula::boxed(Formula::neg(a.desugar()))),
            Formula::BlackDiamond(a) => {
                Formula::neg(Formula::black_box(Formula::neg(a.desugar())))
            }
        }
    }

    /// Replace every `■` by `□` (and `◆` by `◇`): the collapse used for KB.
    pub fn collapse_converse(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Bottom => self.clone(),
            Formula::Implies(a, b) => {
                Formula::implies(a.collapse_converse(), b.collapse_converse())
            }
            Formula::Box(a) | Formula::BlackBox(a) => Formula::boxed(a.collapse_converse()),
            Formula::Not(a) => Formula::not(a.collapse_converse()),
            Formula::And(a, b) => Formula::and(a.collapse_converse(), b.collapse_converse()),
            Formula::Or(a, b) => Formula::or(a.collapse_converse(), b.collapse_converse()),
            Formula::Diamond(a) | Formula::BlackDiamond(a) => {
                Formula::diamond(a.collapse_converse())
            }
        }
    }

    /// Nesting depth of modal operators.
    pub fn modal_degree(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.modal_degree().max(b.modal_degree())
            }
            Formula::Not(a) => a.modal_degree(),
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => 1 + a.modal_degree(),
        }
    }

    /// Number of connective nodes; atoms and `⊥` count zero.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.complexity() + b.complexity()
            }
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Not(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => 1 + a.complexity(),
        }
    }

    /// Number of AST nodes, atoms and `⊥` included.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Not(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => 1 + a.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Bottom => {}
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Not(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => a.collect_atoms(out),
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) | Formula::Bottom => {}
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Not(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => a.collect_subformulas(out),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Bottom => vec![],
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => vec![a, b],
            Formula::Box(a)
            | Formula::BlackBox(a)
            | Formula::Not(a)
            | Formula::Diamond(a)
            | Formula::BlackDiamond(a) => vec![a],
        }
    }

    /// ASCII rendering, re-parseable by [`parse`].
    pub fn to_ascii(&self) -> String {
        print::render(self, &print::ASCII)
    }

    /// Unicode rendering for documentation output.
    pub fn to_unicode(&self) -> String {
        print::render(self, &print::UNICODE)
    }

    /// Math-mode LaTeX; `■` and `◆` need `amssymb`.
    pub fn to_latex(&self) -> String {
        print::render(self, &print::LATEX)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p().modal_degree(), 0);
        assert_eq!(Formula::boxed(p()).modal_degree(), 1);
        let f = Formula::boxed(Formula::implies(p(), Formula::black_box(Formula::atom("q"))));
        assert_eq!(f.modal_degree(), 2);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(p().complexity(), 0);
        assert_eq!(Formula::boxed(p()).complexity(), 1);
        assert_eq!(Formula::neg(Formula::neg(p())).complexity(), 2);
    }

    #[test]
    fn complexity_decreases_to_children() {
        let f = parse("[F](p -> [P]q) -> ~<F>r").unwrap().desugar();
        for sub in f.subformulas() {
            for child in sub.children() {
                assert!(child.complexity() < sub.complexity());
            }
        }
    }

    #[test]
    fn desugar_diamond_black_box() {
        let f = Formula::diamond(Formula::black_box(p()));
        let expected = Formula::neg(Formula::boxed(Formula::neg(Formula::black_box(p()))));
        assert_eq!(f.desugar(), expected);
        assert!(expected.is_core());
    }

    #[test]
    fn desugar_fixes_core() {
        assert_eq!(p().desugar(), p());
        let k = parse("[F](p -> q) -> ([F]p -> [F]q)").unwrap();
        assert_eq!(k.desugar(), k);
    }

    #[test]
    fn collapse_maps_black_box() {
        let f = parse("[P]p -> <P>q").unwrap().collapse_converse();
        assert_eq!(f, parse("[F]p -> <F>q").unwrap());
    }
}
