use super::Formula;

pub(super) struct Symbols {
    bottom: &'static str,
    not: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    boxed: &'static str,
    diamond: &'static str,
    black_box: &'static str,
    black_diamond: &'static str,
}

pub(super) const ASCII: Symbols = Symbols {
    bottom: "false",
    not: "~",
    and: " & ",
    or: " | ",
    implies: " -> ",
    boxed: "[F]",
    diamond: "<F>",
    black_box: "[P]",
    black_diamond: "<P>",
};

pub(super) const UNICODE: Symbols = Symbols {
    bottom: "⊥",
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    implies: " → ",
    boxed: "□",
    diamond: "◇",
    black_box: "■",
    black_diamond: "◆",
};

pub(super) const LATEX: Symbols = Symbols {
    bottom: "\\bot",
    not: "\\lnot ",
    and: " \\land ",
    or: " \\lor ",
    implies: " \\to ",
    boxed: "\\Box ",
    diamond: "\\Diamond ",
    black_box: "\\blacksquare ",
    black_diamond: "\\blacklozenge ",
};

// Binding strength, loosest first.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

pub(super) fn render(f: &Formula, sym: &Symbols) -> String {
    let mut out = String::new();
    write(f, sym, 0, &mut out);
    out
}

fn write(f: &Formula, sym: &Symbols, min_prec: u8, out: &mut String) {
    let parens = precedence(f) < min_prec;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::Bottom => out.push_str(sym.bottom),
        // right-associative
        Formula::Implies(a, b) => {
            write(a, sym, IMPLIES + 1, out);
            out.push_str(sym.implies);
            write(b, sym, IMPLIES, out);
        }
        // left-associative
        Formula::Or(a, b) => {
            write(a, sym, OR, out);
            out.push_str(sym.or);
            write(b, sym, OR + 1, out);
        }
        Formula::And(a, b) => {
            write(a, sym, AND, out);
            out.push_str(sym.and);
            write(b, sym, AND + 1, out);
        }
        Formula::Not(a) => prefix(sym.not, a, sym, out),
        Formula::Box(a) => prefix(sym.boxed, a, sym, out),
        Formula::BlackBox(a) => prefix(sym.black_box, a, sym, out),
        Formula::Diamond(a) => prefix(sym.diamond, a, sym, out),
        Formula::BlackDiamond(a) => prefix(sym.black_diamond, a, sym, out),
    }
    if parens {
        out.push(')');
    }
}

fn prefix(op: &str, body: &Formula, sym: &Symbols, out: &mut String) {
    out.push_str(op);
    write(body, sym, UNARY, out);
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;

    #[test]
    fn minimal_parentheses() {
        for text in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p & q | r",
            "p & (q | r)",
            "~[F]p & <P>q",
            "[F](p -> q) -> [F]p -> [F]q",
            "p | q | r",
            "p | (q | r)",
        ] {
            assert_eq!(parse(text).unwrap().to_ascii(), text);
        }
    }

    #[test]
    fn unicode_rendering() {
        let f = parse("p -> [F]~[P]~p").unwrap();
        assert_eq!(f.to_unicode(), "p → □¬■¬p");
        assert_eq!(parse("false").unwrap().to_unicode(), "⊥");
    }
}
