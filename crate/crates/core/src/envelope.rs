//! `U(g⁻)` in PBW normal form over the loop generators.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::lie::{LieAlgebraSpec, LieElement};
use crate::loop_sym::{self, LoopBracket, LoopGen, LoopPoly};
use crate::pbw::{self, PbwPoly, RewriteStats};
use crate::poly::Mono;
use crate::rational::Rational;

pub type EnvPoly = PbwPoly<LoopGen>;

pub fn normal_product(spec: &LieAlgebraSpec, u: &EnvPoly, v: &EnvPoly) -> EnvPoly {
    pbw::normal_product(&LoopBracket(spec), u, v)
}

pub fn normal_product_with_stats(spec: &LieAlgebraSpec, u: &EnvPoly, v: &EnvPoly) -> (EnvPoly, RewriteStats) {
    pbw::normal_product_with_stats(&LoopBracket(spec), u, v)
}

pub fn commutator(spec: &LieAlgebraSpec, u: &EnvPoly, v: &EnvPoly) -> EnvPoly {
    pbw::commutator(&LoopBracket(spec), u, v)
}

pub fn symmetrize(spec: &LieAlgebraSpec, p: &LoopPoly) -> EnvPoly {
    pbw::symmetrize(&LoopBracket(spec), p)
}

pub fn gr_top(u: &EnvPoly) -> Result<LoopPoly> {
    u.gr_top()
}

/// Ordered word `g_1 g_2 … g_k` brought to normal form.
pub fn word(spec: &LieAlgebraSpec, gens: &[LoopGen], c: Rational) -> EnvPoly {
    PbwPoly::from_word(&LoopBracket(spec), gens, c)
}

/// `∂_t` on `U(g⁻)`. Raising the depth of one factor keeps the
/// generator order among factors of equal label only, so terms are renormalized.
pub fn d_t_env(spec: &LieAlgebraSpec, u: &EnvPoly) -> EnvPoly {
    pbw::derive_linear(&LoopBracket(spec), u, |g| {
        vec![(LoopGen::new(g.label, g.depth + 1), -Rational::from_integer(BigInt::from(g.depth)))]
    })
}

/// `x·(y[-m]) = [x, y][-m]`, extended to `U(g⁻)` as a derivation.
pub fn adjoint_action(spec: &LieAlgebraSpec, x: &LieElement, u: &EnvPoly) -> EnvPoly {
    let terms: Vec<(u16, Rational)> = x.terms().map(|(a, c)| (a, c.clone())).collect();
    pbw::derive_linear(&LoopBracket(spec), u, |g| {
        let mut out: Vec<(LoopGen, Rational)> = Vec::new();
        for (a, c) in &terms {
            for (b, v) in spec.structure(*a, g.label) {
                let gen = LoopGen::new(*b, g.depth);
                let val = c * v;
                match out.iter_mut().find(|(h, _)| *h == gen) {
                    Some(slot) => slot.1 += val,
                    None => out.push((gen, val)),
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    })
}

/// `S₁ = Σ_a x_a[-1] x^a[-1]`, the symmetrization of `S̄₁`.
pub fn s1_quantum(spec: &LieAlgebraSpec) -> EnvPoly {
    symmetrize(spec, &loop_sym::s1_bar(spec))
}

/// `Σ_a x_a[-1] x^a[-1]` as literally written, as an ordered product in `U(g⁻)`.
pub fn s1_dual_pairs(spec: &LieAlgebraSpec) -> EnvPoly {
    let mut out = EnvPoly::zero();
    for a in 0..spec.dim() as u16 {
        for (b, c) in spec.dual(a).terms() {
            out = &out + &word(spec, &[LoopGen::new(a, 1), LoopGen::new(b, 1)], c.clone());
        }
    }
    out
}

/// PBW monomials with `1 ≤ degree ≤ max_degree` and total depth `weight`.
/// The constant monomial is excluded (weight 0 only).
pub fn filtered_basis(spec: &LieAlgebraSpec, max_degree: usize, weight: usize) -> Vec<Mono<LoopGen>> {
    (1..=max_degree).flat_map(|d| loop_sym::graded_basis(spec, d, weight)).collect()
}
