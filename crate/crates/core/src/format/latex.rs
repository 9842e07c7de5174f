use crate::formula::{Formula, Polarity};
use crate::metatheory::Derivation;
use crate::sequent::{LinearNestedSequent, Multiset};

fn side(m: &Multiset) -> String {
    m.iter().map(Formula::to_latex).collect::<Vec<_>>().join(", ")
}

/// Math-mode sequent; `\epsilon` marks an empty side.
pub fn sequent_to_latex(s: &LinearNestedSequent) -> String {
    let component = |c: &crate::sequent::Component| {
        let show = |m: &Multiset| {
            if m.is_empty() {
                "\\epsilon".to_string()
            } else {
                side(m)
            }
        };
        format!("{} \\Rightarrow {}", show(&c.antecedent), show(&c.succedent))
    };
    let mut out = component(s.head());
    for (link, c) in s.links().iter().zip(&s.components()[1..]) {
        out.push_str(match link {
            Polarity::Forward => " \\nearrow ",
            Polarity::Backward => " \\searrow ",
        });
        out.push_str(&component(c));
    }
    out
}

/// A `bussproofs` proof tree. Rules with more than five premisses do not
/// occur in these calculi.
pub fn derivation_to_latex(d: &Derivation) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    emit(d, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

fn emit(d: &Derivation, out: &mut String) {
    for p in &d.premisses {
        emit(p, out);
    }
    if d.premisses.is_empty() {
        out.push_str("\\AxiomC{}\n");
    }
    let infer = match d.premisses.len() {
        0 | 1 => "UnaryInfC",
        2 => "BinaryInfC",
        3 => "TrinaryInfC",
        4 => "QuaternaryInfC",
        _ => "QuinaryInfC",
    };
    out.push_str(&format!("\\RightLabel{{{}}}\n", d.rule.latex()));
    out.push_str(&format!("\\{infer}{{${}$}}\n", sequent_to_latex(&d.conclusion)));
}
