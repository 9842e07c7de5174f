use super::{certify, Derivation, MetaError};
use crate::calculus::{CalculusVariant, RuleId};

/// Map a Kt derivation into Kt*: the two-premiss right box rules lose their
/// left premiss, and every right box rule becomes `boxR`/`bboxR`.
pub fn to_ktstar(d: &Derivation) -> Result<Derivation, MetaError> {
    if d.inferred_variant() == CalculusVariant::KB {
        return Err(MetaError::UnsupportedVariant(CalculusVariant::KB));
    }
    certify(map(d), CalculusVariant::KtStar, "Kt* translation")
}

fn map(d: &Derivation) -> Derivation {
    let (rule, keep): (RuleId, &[Derivation]) = match d.rule {
        RuleId::BoxR1 => (RuleId::BoxR, &d.premisses[1..]),
        RuleId::BlackBoxR1 => (RuleId::BlackBoxR, &d.premisses[1..]),
        RuleId::BoxR2 => (RuleId::BoxR, &d.premisses),
        RuleId::BlackBoxR2 => (RuleId::BlackBoxR, &d.premisses),
        r => (r, &d.premisses),
    };
    Derivation::new(d.conclusion.clone(), rule, keep.iter().map(map).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::metatheory::generalised_init;
    use crate::sequent::LinearNestedSequent;

    #[test]
    fn drops_left_premiss() {
        let s = LinearNestedSequent::parse("=> \\P\\ [F]p => [F]p").unwrap();
        let d = generalised_init(&s, &parse("[F]p").unwrap(), CalculusVariant::Kt).unwrap();
        let star = to_ktstar(&d).unwrap();
        assert_eq!(star.rule, RuleId::BoxR);
        assert_eq!(star.premisses.len(), 1);
        assert_eq!(star.conclusion, d.conclusion);
    }
}
