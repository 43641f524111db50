//! The Poisson algebra `S(g⁻)` on generators `x_a[-m]`, `m ≥ 1`.
//!
//! Generators are ordered by depth, then basis label. Formal parameters
//! (`z` of the current `i(z)`, `s` of the shift `φ_s`) never enter the
//! polynomial ring; series in them are returned as coefficient lists.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lie::{LieAlgebraSpec, LieKind, PrincipalTriple};
use crate::poly::{self, BracketTable, Gen, Mono, SymPoly};
use crate::rational::Rational;

/// The loop generator `x_label[-depth]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopGen {
    pub depth: u16,
    pub label: u16,
}

impl LoopGen {
    pub fn new(label: u16, depth: u16) -> Self {
        assert!(depth >= 1, "loop generators have depth >= 1");
        Self { depth, label }
    }
}

/// Generator of `S(z_g(f)⁻)`: the `index`-th element of the slice basis at `depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SliceGen {
    pub depth: u16,
    pub index: u16,
}

/// Generators that carry a loop depth, so `∂_t` and the weight make sense.
pub trait Graded: Gen {
    fn depth(self) -> u16;
    fn with_depth(self, depth: u16) -> Self;
}

impl Graded for LoopGen {
    fn depth(self) -> u16 {
        self.depth
    }
    fn with_depth(self, depth: u16) -> Self {
        Self { depth, ..self }
    }
}

impl Graded for SliceGen {
    fn depth(self) -> u16 {
        self.depth
    }
    fn with_depth(self, depth: u16) -> Self {
        Self { depth, ..self }
    }
}

pub type LoopPoly = SymPoly<LoopGen>;

/// Commutative polynomial in the basis of `g` (an element of `S(g)`), keyed by label.
pub type LieSymbol = SymPoly<u16>;

/// `[x_a[-m], x_b[-l]] = [x_a, x_b][-(m+l)]`.
#[derive(Clone, Copy, Debug)]
pub struct LoopBracket<'a>(pub &'a LieAlgebraSpec);

impl BracketTable for LoopBracket<'_> {
    type G = LoopGen;
    fn bracket(&self, a: LoopGen, b: LoopGen) -> Vec<(LoopGen, Rational)> {
        let depth = a.depth + b.depth;
        self.0
            .structure(a.label, b.label)
            .iter()
            .map(|(c, v)| (LoopGen { depth, label: *c }, v.clone()))
            .collect()
    }
}

pub fn weight<G: Graded>(m: &[G]) -> usize {
    m.iter().map(|g| g.depth() as usize).sum()
}

/// Common weight of all terms, if weight-homogeneous (`None` for zero too).
pub fn homogeneous_weight<G: Graded>(p: &SymPoly<G>) -> Option<usize> {
    let mut it = p.terms().map(|(m, _)| weight(m));
    let w = it.next()?;
    it.all(|x| x == w).then_some(w)
}

pub fn poisson_bracket(spec: &LieAlgebraSpec, p: &LoopPoly, q: &LoopPoly) -> LoopPoly {
    poly::poisson_bracket(&LoopBracket(spec), p, q)
}

/// `∂_t(x[-m]) = -m x[-m-1]`, extended as a derivation.
pub fn d_t<G: Graded>(p: &SymPoly<G>) -> SymPoly<G> {
    p.derive(|g| {
        let m = g.depth();
        SymPoly::monomial(&[g.with_depth(m + 1)], -Rational::from_integer(BigInt::from(m)))
    })
}

/// The quadratic Casimir `Σ_a x_a x^a ∈ S(g)` for the trace form.
pub fn casimir(spec: &LieAlgebraSpec) -> LieSymbol {
    let mut out = LieSymbol::zero();
    for a in 0..spec.dim() as u16 {
        for (b, c) in spec.dual(a).terms() {
            out = &out + &SymPoly::monomial(&[a, b], c.clone());
        }
    }
    out
}

/// Coefficients of `z^0 … z^{cutoff-1}` of `i(z)(Φ)`, where
/// `i(z)(x) = Σ_{k≥1} z^{k-1} x[-k]`.
pub fn embed_iz(phi: &LieSymbol, cutoff: usize) -> Vec<LoopPoly> {
    let mut out = vec![LoopPoly::zero(); cutoff];
    for (m, c) in phi.terms() {
        let d = m.len();
        if d == 0 {
            out[0] = &out[0] + &LoopPoly::constant(c.clone());
            continue;
        }
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = LoopPoly::zero();
            for extra in compositions(n, d) {
                let factors: Vec<LoopGen> = m
                    .iter()
                    .zip(&extra)
                    .map(|(&a, &e)| LoopGen::new(a, (e + 1) as u16))
                    .collect();
                acc.add_term(sorted(factors), c.clone());
            }
            *slot = &*slot + &acc;
        }
    }
    out
}

/// `i_{-1}(Φ)`: every generator placed at depth 1.
pub fn i_minus_one(phi: &LieSymbol) -> LoopPoly {
    embed_iz(phi, 1).remove(0)
}

/// `S̄₁ = i_{-1}(Σ_a x_a x^a)`.
pub fn s1_bar(spec: &LieAlgebraSpec) -> LoopPoly {
    i_minus_one(&casimir(spec))
}

fn sorted(mut v: Vec<LoopGen>) -> Mono<LoopGen> {
    v.sort_unstable();
    v.into_iter().collect()
}

/// Weak compositions of `n` into `parts` nonnegative parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Entry of a matrix over `Q[u, z]/(z^cutoff) ⊗ S(g⁻)`: `(u-power, z-power) -> coefficient`.
type UzSeries = BTreeMap<(usize, usize), LoopPoly>;

fn uz_mul(a: &UzSeries, b: &UzSeries, cutoff: usize) -> UzSeries {
    let mut out = UzSeries::new();
    for ((ua, za), pa) in a {
        for ((ub, zb), pb) in b {
            if za + zb >= cutoff {
                continue;
            }
            let prod = pa * pb;
            if prod.is_zero() {
                continue;
            }
            let slot = out.entry((ua + ub, za + zb)).or_default();
            *slot = &*slot + &prod;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Coefficients of `det(u·Id - X(z))`, where `X(z) = Σ_b x_b(z) ⊗ M(x^b)` and
/// `x(z) = Σ_n z^{n-1} x[-n]` (for `gl_r`, `X(z)` is the transpose of the
/// matrix with entries `Σ_n z^{n-1} e_ij[-n]`).
///
/// Returns `(k, n) ↦` coefficient of `u^{r-k} z^{n-1}` for `n = 1..=cutoff`,
/// `k = 1..=r` (`k ≥ 2` for `sl_r`, where the trace family vanishes).
pub fn classical_generators(spec: &LieAlgebraSpec, cutoff: usize) -> BTreeMap<(usize, usize), LoopPoly> {
    let r = spec.rank();
    let mut x: Vec<Vec<UzSeries>> = vec![vec![UzSeries::new(); r]; r];
    for b in 0..spec.dim() as u16 {
        let m = spec.matrix_of(spec.dual(b));
        for i in 0..r {
            for j in 0..r {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for n in 1..=cutoff {
                    let slot = x[i][j].entry((0, n - 1)).or_default();
                    *slot = &*slot - &LoopPoly::monomial(&[LoopGen::new(b, n as u16)], c.clone());
                }
            }
        }
    }
    for (i, row) in x.iter_mut().enumerate() {
        row[i].insert((1, 0), LoopPoly::one());
        row.iter_mut().for_each(|e| e.retain(|_, p| !p.is_zero()));
    }
    let mut det = UzSeries::new();
    for perm in (0..r).permutations(r) {
        let sign = permutation_sign(&perm);
        let mut acc: UzSeries = [((0, 0), LoopPoly::constant(Rational::from_integer(sign.into())))].into();
        for (i, &j) in perm.iter().enumerate() {
            acc = uz_mul(&acc, &x[i][j], cutoff);
        }
        for (k, p) in acc {
            let slot = det.entry(k).or_default();
            *slot = &*slot + &p;
        }
    }
    let first_k = if spec.kind() == LieKind::Sl { 2 } else { 1 };
    let mut out = BTreeMap::new();
    for k in first_k..=r {
        for n in 1..=cutoff {
            let p = det.get(&(r - k, n - 1)).cloned().unwrap_or_default();
            out.insert((k, n), p);
        }
    }
    out
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `φ_s(x[-k]) = x[-k] + s δ_{1k} ⟨h, x⟩`. Returns the coefficients of
/// `s^0, s^1, …` of `φ_s(p)`.
pub fn apply_phi_s(spec: &LieAlgebraSpec, p: &LoopPoly, triple: &PrincipalTriple) -> Vec<LoopPoly> {
    let shift: Vec<Rational> = (0..spec.dim() as u16)
        .map(|a| spec.pairing(&triple.h, &spec.basis_element(a)))
        .collect();
    let mut out: Vec<LoopPoly> = Vec::new();
    for (m, c) in p.terms() {
        let mut acc: Vec<LoopPoly> = vec![LoopPoly::constant(c.clone())];
        for g in m.iter() {
            let lin = LoopPoly::gen(*g);
            let cst = if g.depth == 1 { shift[g.label as usize].clone() } else { Rational::zero() };
            let mut next = vec![LoopPoly::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = &next[i] + &(a * &lin);
                if !cst.is_zero() {
                    next[i + 1] = &next[i + 1] + &a.scale(&cst);
                }
            }
            acc = next;
        }
        if out.len() < acc.len() {
            out.resize(acc.len(), LoopPoly::zero());
        }
        for (i, a) in acc.into_iter().enumerate() {
            out[i] = &out[i] + &a;
        }
    }
    while out.last().is_some_and(|p| p.is_zero()) {
        out.pop();
    }
    out
}

/// `π(x[-m]) = x[-m]` on `z_g(f)`, `π(x[-m]) = δ_{1m} ⟨x, f⟩` on `V`,
/// extended as an algebra homomorphism `S(g⁻) → S(z_g(f)⁻)`.
pub fn project_pi(spec: &LieAlgebraSpec, p: &LoopPoly, triple: &PrincipalTriple) -> SymPoly<SliceGen> {
    let nz = triple.zf_basis.len();
    let v_pair: Vec<Rational> = triple.v_basis.iter().map(|v| spec.pairing(v, &triple.f)).collect();
    p.substitute(|g: LoopGen| {
        let coords = triple.decompose(g.label);
        let mut img = SymPoly::<SliceGen>::zero();
        for (j, a) in coords[..nz].iter().enumerate() {
            if !a.is_zero() {
                img = &img + &SymPoly::monomial(&[SliceGen { depth: g.depth, index: j as u16 }], a.clone());
            }
        }
        if g.depth == 1 {
            let c: Rational = coords[nz..].iter().zip(&v_pair).map(|(b, w)| b * w).sum();
            img = &img + &SymPoly::constant(c);
        }
        img
    })
}

/// `ψ`: kills root-vector generators and keeps Cartan generators.
pub fn project_psi(spec: &LieAlgebraSpec, p: &LoopPoly) -> LoopPoly {
    p.filter(|m| m.iter().all(|g| spec.is_cartan(g.label)))
}

/// Restriction of `Φ ∈ S(g)` to the Cartan subalgebra (root coordinates set to zero).
pub fn restrict_to_cartan(spec: &LieAlgebraSpec, phi: &LieSymbol) -> LieSymbol {
    phi.filter(|m| m.iter().all(|a| spec.is_cartan(*a)))
}

/// All monomials with exactly `degree` factors drawn from `labels` and total
/// depth `weight`, in increasing canonical order.
pub fn graded_basis_in(labels: &[u16], degree: usize, weight: usize) -> Vec<Mono<LoopGen>> {
    let mut labels = labels.to_vec();
    labels.sort_unstable();
    let mut out = Vec::new();
    let mut cur: Vec<LoopGen> = Vec::with_capacity(degree);
    fn rec(
        labels: &[u16],
        left: usize,
        budget: usize,
        cur: &mut Vec<LoopGen>,
        out: &mut Vec<Mono<LoopGen>>,
    ) {
        if left == 0 {
            if budget == 0 {
                out.push(cur.iter().copied().collect());
            }
            return;
        }
        let min_depth = cur.last().map_or(1, |g| g.depth as usize);
        for depth in min_depth..=budget {
            if depth * left > budget {
                break;
            }
            for &label in labels {
                let g = LoopGen::new(label, depth as u16);
                if cur.last().is_some_and(|p| *p > g) {
                    continue;
                }
                cur.push(g);
                rec(labels, left - 1, budget - depth, cur, out);
                cur.pop();
            }
        }
    }
    rec(&labels, degree, weight, &mut cur, &mut out);
    out
}

/// Basis of the graded component `S(g⁻)_{degree, weight}`.
pub fn graded_basis(spec: &LieAlgebraSpec, degree: usize, weight: usize) -> Vec<Mono<LoopGen>> {
    let labels: Vec<u16> = (0..spec.dim() as u16).collect();
    graded_basis_in(&labels, degree, weight)
}

/// Leading-order identity used for `φ_s`: `S̄₁ + 2s h[-1] + s² ⟨h,h⟩`.
pub fn expected_phi_s_of_s1(spec: &LieAlgebraSpec, triple: &PrincipalTriple) -> Vec<LoopPoly> {
    let two = Rational::from_integer(BigInt::from(2));
    let mut h1 = LoopPoly::zero();
    for (a, c) in triple.h.terms() {
        h1 = &h1 + &LoopPoly::monomial(&[LoopGen::new(a, 1)], c * &two);
    }
    vec![
        s1_bar(spec),
        h1,
        LoopPoly::constant(spec.pairing(&triple.h, &triple.h)),
    ]
}

/// Convenience: the single generator `x[-m]` as a polynomial.
pub fn loop_gen(label: u16, depth: u16) -> LoopPoly {
    LoopPoly::gen(LoopGen::new(label, depth))
}

/// `1 / n!` as a rational.
pub fn inv_factorial(n: u64) -> Rational {
    Rational::new(BigInt::one(), crate::rational::factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{BasisLabel, LieKind};
    use crate::rational::{int, rat};

    fn sl2() -> LieAlgebraSpec {
        LieAlgebraSpec::build(LieKind::Sl, 2).unwrap()
    }
    fn gl(r: usize) -> LieAlgebraSpec {
        LieAlgebraSpec::build(LieKind::Gl, r).unwrap()
    }

    struct Sl2 {
        s: LieAlgebraSpec,
        e: u16,
        f: u16,
        h: u16,
    }
    fn sl2_named() -> Sl2 {
        let s = sl2();
        let (e, f) = (s.e(1, 2), s.e(2, 1));
        let h = s.index_of(BasisLabel::H(1)).unwrap();
        Sl2 { s, e, f, h }
    }

    fn g(label: u16, depth: u16) -> LoopGen {
        LoopGen::new(label, depth)
    }

    #[test]
    fn bracket_of_generators() {
        let s = gl(2);
        let p = poisson_bracket(&s, &loop_gen(s.e(1, 2), 1), &loop_gen(s.e(2, 1), 2));
        let expect = &loop_gen(s.e(1, 1), 3) - &loop_gen(s.e(2, 2), 3);
        assert_eq!(p, expect);
    }

    #[test]
    fn d_t_examples() {
        let s = gl(2);
        let e12 = s.e(1, 2);
        assert_eq!(d_t(&loop_gen(e12, 2)), loop_gen(e12, 3).scale(&int(-2)));
        let sq = loop_gen(e12, 1).pow(2);
        assert_eq!(d_t(&sq), LoopPoly::monomial(&[g(e12, 1), g(e12, 2)], int(-2)));
    }

    #[test]
    fn casimir_sl2_trace_form() {
        let n = sl2_named();
        let c = casimir(&n.s);
        let expect = &SymPoly::monomial(&[n.e, n.f], int(2)) + &SymPoly::monomial(&[n.h, n.h], rat(1, 2));
        assert_eq!(c, expect);
    }

    #[test]
    fn embed_linear_and_quadratic() {
        let n = sl2_named();
        let lin = embed_iz(&SymPoly::gen(n.e), 3);
        for (k, p) in lin.iter().enumerate() {
            assert_eq!(*p, loop_gen(n.e, k as u16 + 1));
        }
        let coeffs = embed_iz(&casimir(&n.s), 2);
        let z0 = &LoopPoly::monomial(&[g(n.e, 1), g(n.f, 1)], int(2))
            + &LoopPoly::monomial(&[g(n.h, 1), g(n.h, 1)], rat(1, 2));
        assert_eq!(coeffs[0], z0);
        // oracle: expand (Σ z^{k-1} g[-k]) products to first order by hand
        let z1 = &(&LoopPoly::monomial(&[g(n.e, 1), g(n.f, 2)], int(2))
            + &LoopPoly::monomial(&[g(n.e, 2), g(n.f, 1)], int(2)))
            + &LoopPoly::monomial(&[g(n.h, 1), g(n.h, 2)], int(1));
        assert_eq!(coeffs[1], z1);
    }

    #[test]
    fn z_coefficients_are_scaled_derivatives() {
        let n = sl2_named();
        let coeffs = embed_iz(&casimir(&n.s), 5);
        let mut d = coeffs[0].clone();
        for (k, c) in coeffs.iter().enumerate() {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(*c, d.scale(&(sign * inv_factorial(k as u64))));
            d = d_t(&d);
        }
    }

    #[test]
    fn classical_generators_examples() {
        let g1 = gl(1);
        let fam = classical_generators(&g1, 3);
        for n in 1..=3 {
            assert_eq!(fam[&(1, n)], loop_gen(0, n as u16).scale(&int(-1)));
        }
        let g2 = gl(2);
        let fam = classical_generators(&g2, 2);
        let expect = &LoopPoly::monomial(&[g(g2.e(1, 1), 1), g(g2.e(2, 2), 1)], int(1))
            - &LoopPoly::monomial(&[g(g2.e(1, 2), 1), g(g2.e(2, 1), 1)], int(1));
        assert_eq!(fam[&(2, 1)], expect);
        for ((k, n), p) in &fam {
            assert_eq!(p.homogeneous_degree(), Some(*k));
            assert_eq!(homogeneous_weight(p), Some(n + k - 1));
        }
    }

    #[test]
    fn sl2_classical_family_is_proportional_to_casimir() {
        let n = sl2_named();
        let fam = classical_generators(&n.s, 3);
        let cas = embed_iz(&casimir(&n.s), 3);
        for k in 1..=3 {
            assert_eq!(fam[&(2, k)], cas[k - 1].scale(&rat(-1, 2)));
        }
    }

    #[test]
    fn phi_s_examples() {
        let n = sl2_named();
        let t = PrincipalTriple::new(&n.s).unwrap();
        assert_eq!(apply_phi_s(&n.s, &loop_gen(n.e, 2), &t), vec![loop_gen(n.e, 2)]);
        assert_eq!(
            apply_phi_s(&n.s, &loop_gen(n.h, 1), &t),
            vec![loop_gen(n.h, 1), LoopPoly::constant(int(2))]
        );
        let got = apply_phi_s(&n.s, &s1_bar(&n.s), &t);
        let expect = vec![s1_bar(&n.s), loop_gen(n.h, 1).scale(&int(2)), LoopPoly::constant(int(2))];
        assert_eq!(got, expect);
        assert_eq!(got, expected_phi_s_of_s1(&n.s, &t));
    }

    #[test]
    fn pi_examples() {
        let n = sl2_named();
        let t = PrincipalTriple::new(&n.s).unwrap();
        assert_eq!(project_pi(&n.s, &loop_gen(n.e, 1), &t), SymPoly::constant(int(1)));
        assert!(project_pi(&n.s, &loop_gen(n.h, 1), &t).is_zero());
        let f3 = SymPoly::gen(SliceGen { depth: 3, index: 0 });
        assert_eq!(project_pi(&n.s, &loop_gen(n.f, 3), &t), f3);
        let f1 = SymPoly::monomial(&[SliceGen { depth: 1, index: 0 }], int(2));
        assert_eq!(project_pi(&n.s, &s1_bar(&n.s), &t), f1);
    }

    #[test]
    fn pi_commutes_with_d_t_on_generators() {
        for r in [2, 3] {
            let s = LieAlgebraSpec::build(LieKind::Sl, r).unwrap();
            let t = PrincipalTriple::new(&s).unwrap();
            for a in 0..s.dim() as u16 {
                for m in 1..=5 {
                    let x = loop_gen(a, m);
                    assert_eq!(project_pi(&s, &d_t(&x), &t), d_t(&project_pi(&s, &x, &t)));
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let n = sl2_named();
        assert!(project_psi(&n.s, &loop_gen(n.e, 4)).is_zero());
        assert_eq!(project_psi(&n.s, &loop_gen(n.h, 4)), loop_gen(n.h, 4));
        let half_h2 = LoopPoly::monomial(&[g(n.h, 1), g(n.h, 1)], rat(1, 2));
        assert_eq!(project_psi(&n.s, &s1_bar(&n.s)), half_h2);
        let phi = casimir(&n.s);
        let lhs: Vec<_> = embed_iz(&phi, 4).iter().map(|p| project_psi(&n.s, p)).collect();
        assert_eq!(lhs, embed_iz(&restrict_to_cartan(&n.s, &phi), 4));
    }

    #[test]
    fn graded_basis_counts() {
        let s = sl2();
        assert_eq!(graded_basis(&s, 2, 2).len(), 6);
        let d1 = graded_basis(&s, 1, 3);
        assert_eq!(d1.len(), 3);
        assert!(d1.iter().all(|m| m[0].depth == 3));
        assert_eq!(graded_basis(&s, 2, 4).len(), 15);
        assert!(graded_basis(&s, 3, 2).is_empty());
        let b = graded_basis(&s, 3, 7);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(b.iter().all(|m| weight(m) == 7 && m.len() == 3));
    }
}
