//! Seeded random core formulas for corpora and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;

/// Shape limits for generated formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Atoms are drawn from `p, q, r, s, ...`; at most 26.
    pub atoms: usize,
    /// Upper bound on [`Formula::size`].
    pub max_size: usize,
    pub max_degree: usize,
    /// Whether `■` may occur. Off for KB corpora.
    pub converse: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            atoms: 3,
            max_size: 12,
            max_degree: 2,
            converse: true,
        }
    }
}

impl GenConfig {
    pub fn modal_only() -> Self {
        GenConfig {
            converse: false,
            ..GenConfig::default()
        }
    }
}

fn atom_name(i: usize) -> String {
    let letters = "pqrstuvwxyzabcdefghijklmno";
    letters[i % 26..i % 26 + 1].to_string()
}

/// One formula within the limits of `cfg`.
pub fn random_formula(rng: &mut impl Rng, cfg: &GenConfig) -> Formula {
    let size = rng.gen_range(1..=cfg.max_size.max(1));
    build(rng, cfg, size, cfg.max_degree)
}

fn build(rng: &mut impl Rng, cfg: &GenConfig, size: usize, degree: usize) -> Formula {
    let modal = degree > 0 && size >= 2;
    if size >= 3 && (!modal || rng.gen_bool(0.6)) {
        let left = rng.gen_range(1..=size - 2);
        let a = build(rng, cfg, left, degree);
        let b = build(rng, cfg, size - 1 - left, degree);
        return Formula::implies(a, b);
    }
    if modal {
        let body = build(rng, cfg, size - 1, degree - 1);
        return if cfg.converse && rng.gen_bool(0.5) {
            Formula::black_box(body)
        } else {
            Formula::boxed(body)
        };
    }
    if rng.gen_ratio(1, 8) {
        Formula::bottom()
    } else {
        Formula::atom(&atom_name(rng.gen_range(0..cfg.atoms.clamp(1, 26))))
    }
}

/// `n` formulas from `seed`. The same seed always gives the same list.
pub fn corpus(seed: u64, n: usize, cfg: &GenConfig) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_formula(&mut rng, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn within_limits_and_deterministic() {
        let cfg = GenConfig::default();
        let a = corpus(7, 300, &cfg);
        assert_eq!(a, corpus(7, 300, &cfg));
        for f in &a {
            assert!(f.is_core());
            assert!(f.size() <= 12);
            assert!(f.modal_degree() <= 2);
            assert!(f.atoms().len() <= 3);
        }
        assert!(a.iter().any(|f| f.modal_degree() == 2));
    }

    #[test]
    fn modal_only_has_no_converse() {
        for f in corpus(1, 200, &GenConfig::modal_only()) {
            assert_eq!(f.collapse_converse(), f);
        }
    }
}
