//! Seeded random inputs for property checks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::envelope::{self, EnvPoly};
use crate::lie::{LieAlgebraSpec, LieElement};
use crate::loop_sym::{self, LoopGen, LoopPoly};
use crate::rational::Rational;

pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small nonzero rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let mut p = 0i64;
    while p == 0 {
        p = rng.random_range(-5..=5);
    }
    Rational::new(p.into(), rng.random_range(1i64..=3).into())
}

pub fn random_lie_element(spec: &LieAlgebraSpec, rng: &mut impl Rng) -> LieElement {
    let mut coeffs = Vec::new();
    for a in 0..spec.dim() as u16 {
        if rng.random_bool(0.6) {
            coeffs.push((a, random_rational(rng)));
        }
    }
    LieElement::from_coeffs(spec.id(), coeffs)
}

pub fn random_gen(spec: &LieAlgebraSpec, rng: &mut impl Rng, max_depth: u16) -> LoopGen {
    LoopGen::new(rng.random_range(0..spec.dim() as u16), rng.random_range(1..=max_depth))
}

fn random_word(spec: &LieAlgebraSpec, rng: &mut impl Rng, max_degree: usize, max_depth: u16) -> Vec<LoopGen> {
    let d = rng.random_range(0..=max_degree);
    (0..d).map(|_| random_gen(spec, rng, max_depth)).collect()
}

pub fn random_loop_poly(spec: &LieAlgebraSpec, rng: &mut impl Rng, terms: usize, max_degree: usize, max_depth: u16) -> LoopPoly {
    let mut p = LoopPoly::zero();
    for _ in 0..terms {
        let mut w = random_word(spec, rng, max_degree, max_depth);
        w.sort_unstable();
        p.add_term(w.into_iter().collect(), random_rational(rng));
    }
    p
}

/// Random element of `S_{d,w}` with up to `terms` monomials.
pub fn random_homogeneous(spec: &LieAlgebraSpec, rng: &mut impl Rng, degree: usize, weight: usize, terms: usize) -> LoopPoly {
    let basis = loop_sym::graded_basis(spec, degree, weight);
    let mut p = LoopPoly::zero();
    if basis.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = &basis[rng.random_range(0..basis.len())];
        p.add_term(m.clone(), random_rational(rng));
    }
    p
}

/// Random element of `U(g⁻)` built from ordered words (normal-ordered on construction).
pub fn random_env_poly(spec: &LieAlgebraSpec, rng: &mut impl Rng, terms: usize, max_degree: usize, max_depth: u16) -> EnvPoly {
    let mut p = EnvPoly::zero();
    for _ in 0..terms {
        let w = random_word(spec, rng, max_degree, max_depth);
        p = &p + &envelope::word(spec, &w, random_rational(rng));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieKind;

    #[test]
    fn same_seed_same_values() {
        let s = LieAlgebraSpec::build(LieKind::Gl, 2).unwrap();
        let a = random_env_poly(&s, &mut seeded_rng(7), 4, 3, 3);
        let b = random_env_poly(&s, &mut seeded_rng(7), 4, 3, 3);
        assert_eq!(a, b);
        let h = random_homogeneous(&s, &mut seeded_rng(1), 2, 5, 3);
        assert!(h.terms().all(|(m, _)| m.len() == 2 && loop_sym::weight(m) == 5));
    }
}
