//! Components, linear nested sequents, the formula translation and merge.

use crate::formula::{parse, Formula, ParseError, Polarity};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Finite multiset of formulas, stored as counts over the canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(BTreeMap<Formula, usize>);

impl Multiset {
    pub fn new() -> Self {
        Multiset(BTreeMap::new())
    }

    pub fn insert(&mut self, f: Formula) {
        *self.0.entry(f).or_insert(0) += 1;
    }

    pub fn insert_n(&mut self, f: Formula, n: usize) {
        if n > 0 {
            *self.0.entry(f).or_insert(0) += n;
        }
    }

    /// Remove one occurrence; false if there was none.
    pub fn remove_one(&mut self, f: &Formula) -> bool {
        match self.0.get_mut(f) {
            Some(n) if *n > 1 => {
                *n -= 1;
                true
            }
            Some(_) => {
                self.0.remove(f);
                true
            }
            None => false,
        }
    }

    pub fn with(&self, f: Formula) -> Self {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn without(&self, f: &Formula) -> Option<Self> {
        let mut out = self.clone();
        out.remove_one(f).then_some(out)
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.0.get(f).copied().unwrap_or(0)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains_key(f)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of occurrences.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    /// Distinct formulas in canonical order.
    pub fn distinct(&self) -> impl Iterator<Item = &Formula> {
        self.0.keys()
    }

    /// `(formula, multiplicity)` pairs in canonical order.
    pub fn counts(&self) -> impl Iterator<Item = (&Formula, usize)> {
        self.0.iter().map(|(f, n)| (f, *n))
    }

    /// Every occurrence, repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter().flat_map(|(f, n)| std::iter::repeat_n(f, *n))
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (f, n) in other.counts() {
            out.insert_n(f.clone(), n);
        }
        out
    }

    /// Multiplicity-wise inclusion.
    pub fn is_submultiset(&self, other: &Multiset) -> bool {
        self.counts().all(|(f, n)| other.count(f) >= n)
    }

    /// Multiplicity-wise `self - other`, saturating at zero.
    pub fn difference(&self, other: &Multiset) -> Multiset {
        let mut out = Multiset::new();
        for (f, n) in self.counts() {
            out.insert_n(f.clone(), n.saturating_sub(other.count(f)));
        }
        out
    }

    /// Largest modal degree of a member, 0 when empty.
    pub fn max_degree(&self) -> usize {
        self.distinct().map(Formula::modal_degree).max().unwrap_or(0)
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for f in iter {
            m.insert(f);
        }
        m
    }
}

/// Which side of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One two-sided sequent `Γ ⇒ Δ` inside a linear nested sequent.
///
/// `tag` and `restarts` track world identity during proof search. They do
/// not take part in equality or hashing.
#[derive(Clone, Debug, Default)]
pub struct Component {
    pub antecedent: Multiset,
    pub succedent: Multiset,
    pub tag: u32,
    pub restarts: u32,
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.antecedent == other.antecedent && self.succedent == other.succedent
    }
}

impl Eq for Component {}

impl Hash for Component {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.antecedent.hash(state);
        self.succedent.hash(state);
    }
}

impl Component {
    pub fn new(antecedent: Multiset, succedent: Multiset) -> Self {
        Component {
            antecedent,
            succedent,
            tag: 0,
            restarts: 0,
        }
    }

    pub fn from_formulas(
        antecedent: impl IntoIterator<Item = Formula>,
        succedent: impl IntoIterator<Item = Formula>,
    ) -> Self {
        Component::new(
            antecedent.into_iter().collect(),
            succedent.into_iter().collect(),
        )
    }

    pub fn empty() -> Self {
        Component::default()
    }

    pub fn side(&self, side: Side) -> &Multiset {
        match side {
            Side::Left => &self.antecedent,
            Side::Right => &self.succedent,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Multiset {
        match side {
            Side::Left => &mut self.antecedent,
            Side::Right => &mut self.succedent,
        }
    }

    pub fn union(&self, other: &Component) -> Component {
        Component {
            antecedent: self.antecedent.union(&other.antecedent),
            succedent: self.succedent.union(&other.succedent),
            tag: self.tag,
            restarts: self.restarts,
        }
    }

    pub fn is_subcomponent(&self, other: &Component) -> bool {
        self.antecedent.is_submultiset(&other.antecedent)
            && self.succedent.is_submultiset(&other.succedent)
    }

    pub fn max_degree(&self) -> usize {
        self.antecedent.max_degree().max(self.succedent.max_degree())
    }

    pub fn is_empty(&self) -> bool {
        self.antecedent.is_empty() && self.succedent.is_empty()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &Multiset| {
            m.iter()
                .map(Formula::to_ascii)
                .collect::<Vec<_>>()
                .join(", ")
        };
        let (l, r) = (side(&self.antecedent), side(&self.succedent));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {r}"),
            (false, true) => write!(f, "{l} =>"),
            (false, false) => write!(f, "{l} => {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequentError {
    #[error("merge undefined: sequents are not structurally equivalent")]
    MergeUndefined,
    #[error("malformed sequent text: {0}")]
    Syntax(String),
    #[error(transparent)]
    Formula(#[from] ParseError),
}

/// A nonempty list of components joined by directional links.
///
/// `links[i]` joins `components[i]` and `components[i + 1]`; `Forward`
/// renders as `/F/` (↗) and `Backward` as `\P\` (↘).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearNestedSequent {
    components: Vec<Component>,
    links: Vec<Polarity>,
}

impl LinearNestedSequent {
    pub fn single(c: Component) -> Self {
        LinearNestedSequent {
            components: vec![c],
            links: vec![],
        }
    }

    /// `ε ⇒ f`
    pub fn end_sequent(f: Formula) -> Self {
        Self::single(Component::from_formulas([], [f]))
    }

    /// Build from parts; `None` unless `links.len() + 1 == components.len()`.
    pub fn from_parts(components: Vec<Component>, links: Vec<Polarity>) -> Option<Self> {
        (!components.is_empty() && links.len() + 1 == components.len())
            .then_some(LinearNestedSequent { components, links })
    }

    pub fn extended(&self, link: Polarity, c: Component) -> Self {
        let mut out = self.clone();
        out.push(link, c);
        out
    }

    pub fn push(&mut self, link: Polarity, c: Component) {
        self.links.push(link);
        self.components.push(c);
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [Component] {
        &mut self.components
    }

    pub fn links(&self) -> &[Polarity] {
        &self.links
    }

    pub fn head(&self) -> &Component {
        &self.components[0]
    }

    pub fn last(&self) -> &Component {
        self.components.last().expect("nonempty")
    }

    pub fn last_mut(&mut self) -> &mut Component {
        self.components.last_mut().expect("nonempty")
    }

    pub fn last_index(&self) -> usize {
        self.components.len() - 1
    }

    /// Link between the last two components.
    pub fn last_link(&self) -> Option<Polarity> {
        self.links.last().copied()
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut Component {
        &mut self.components[i]
    }

    /// Drop the last component; `None` for a single component.
    pub fn without_last(&self) -> Option<Self> {
        if self.len() < 2 {
            return None;
        }
        let mut out = self.clone();
        out.components.pop();
        out.links.pop();
        Some(out)
    }

    /// Keep the first `k` components (`1 <= k`).
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.clamp(1, self.len());
        LinearNestedSequent {
            components: self.components[..k].to_vec(),
            links: self.links[..k - 1].to_vec(),
        }
    }

    /// Largest modal degree over all components.
    pub fn max_degree(&self) -> usize {
        self.components
            .iter()
            .map(Component::max_degree)
            .max()
            .unwrap_or(0)
    }

    /// All formulas occurring anywhere, with their subformulas.
    pub fn subformulas(&self) -> std::collections::BTreeSet<Formula> {
        let mut out = std::collections::BTreeSet::new();
        for c in &self.components {
            for f in c.antecedent.distinct().chain(c.succedent.distinct()) {
                out.extend(f.subformulas());
            }
        }
        out
    }

    /// Componentwise multiset inclusion with equal structure.
    pub fn is_subsequent(&self, other: &Self) -> bool {
        structurally_equivalent(self, other)
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.is_subcomponent(b))
    }

    pub fn is_core(&self) -> bool {
        self.components.iter().all(|c| {
            c.antecedent
                .distinct()
                .chain(c.succedent.distinct())
                .all(Formula::is_core)
        })
    }

    fn map_formulas(&self, f: impl Fn(&Formula) -> Formula) -> Vec<Component> {
        let side = |m: &Multiset| -> Multiset { m.iter().map(&f).collect() };
        self.components
            .iter()
            .map(|c| Component {
                antecedent: side(&c.antecedent),
                succedent: side(&c.succedent),
                ..c.clone()
            })
            .collect()
    }

    /// Replace `■` by `□` in every formula and every link by `Forward`.
    pub fn collapse_converse(&self) -> Self {
        LinearNestedSequent {
            components: self.map_formulas(Formula::collapse_converse),
            links: vec![Polarity::Forward; self.links.len()],
        }
    }

    /// Desugar every formula into the core language.
    pub fn desugared(&self) -> Self {
        LinearNestedSequent {
            components: self.map_formulas(Formula::desugar),
            links: self.links.clone(),
        }
    }

    /// Parse the text rendering, e.g. `p => q /F/ => r \P\ s =>`.
    pub fn parse(text: &str) -> Result<Self, SequentError> {
        let mut components = Vec::new();
        let mut links = Vec::new();
        let mut rest = text;
        loop {
            let next = [("/F/", Polarity::Forward), ("\\P\\", Polarity::Backward)]
                .iter()
                .filter_map(|(sep, pol)| rest.find(sep).map(|i| (i, sep.len(), *pol)))
                .min_by_key(|(i, _, _)| *i);
            match next {
                Some((i, n, pol)) => {
                    components.push(parse_component(&rest[..i])?);
                    links.push(pol);
                    rest = &rest[i + n..];
                }
                None => {
                    components.push(parse_component(rest)?);
                    break;
                }
            }
        }
        Ok(LinearNestedSequent { components, links })
    }
}

fn parse_component(text: &str) -> Result<Component, SequentError> {
    let (l, r) = text
        .split_once("=>")
        .ok_or_else(|| SequentError::Syntax(format!("missing `=>` in `{}`", text.trim())))?;
    Ok(Component::new(parse_side(l)?, parse_side(r)?))
}

fn parse_side(text: &str) -> Result<Multiset, SequentError> {
    let mut out = Multiset::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for (i, b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                out.insert(parse(&text[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    let tail = &text[start..];
    if !tail.trim().is_empty() {
        out.insert(parse(tail)?);
    } else if start > 0 {
        return Err(SequentError::Syntax(format!("dangling comma in `{}`", text.trim())));
    }
    Ok(out)
}

impl fmt::Display for LinearNestedSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components[0])?;
        for (link, c) in self.links.iter().zip(&self.components[1..]) {
            let sep = match link {
                Polarity::Forward => "/F/",
                Polarity::Backward => "\\P\\",
            };
            write!(f, " {sep} {c}")?;
        }
        Ok(())
    }
}

fn conjunction(m: &Multiset) -> Formula {
    let mut it = m.iter().cloned();
    match it.next() {
        None => Formula::top(),
        Some(first) => it.fold(first, Formula::and),
    }
}

fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => Formula::Bottom,
        Some(first) => it.fold(first, Formula::or),
    }
}

/// The formula a sequent stands for, in core syntax: links become `□`/`■`
/// over the translation of the rest of the sequent.
pub fn formula_translation(s: &LinearNestedSequent) -> Formula {
    translate_from(s, 0).desugar()
}

fn translate_from(s: &LinearNestedSequent, i: usize) -> Formula {
    let c = &s.components[i];
    let ant = conjunction(&c.antecedent);
    let suc = if i + 1 < s.len() {
        let inner = Formula::modal_box(s.links[i], translate_from(s, i + 1));
        Formula::or(disjunction(c.succedent.iter().cloned()), inner)
    } else {
        disjunction(c.succedent.iter().cloned())
    };
    Formula::implies(ant, suc)
}

/// Same length and pointwise-equal link polarities.
pub fn structurally_equivalent(a: &LinearNestedSequent, b: &LinearNestedSequent) -> bool {
    a.links == b.links
}

/// Componentwise union of two sequents. A single-component side merges
/// into the head of the other; otherwise the structures must coincide.
pub fn merge(
    a: &LinearNestedSequent,
    b: &LinearNestedSequent,
) -> Result<LinearNestedSequent, SequentError> {
    if structurally_equivalent(a, b) {
        return Ok(LinearNestedSequent {
            components: a
                .components
                .iter()
                .zip(&b.components)
                .map(|(x, y)| x.union(y))
                .collect(),
            links: a.links.clone(),
        });
    }
    let (short, long, short_first) = match (a.len(), b.len()) {
        (1, _) => (a, b, true),
        (_, 1) => (b, a, false),
        _ => return Err(SequentError::MergeUndefined),
    };
    let mut out = long.clone();
    out.components[0] = if short_first {
        short.components[0].union(&long.components[0])
    } else {
        long.components[0].union(&short.components[0])
    };
    Ok(out)
}
