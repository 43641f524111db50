//! Normal-ordered (PBW) polynomials in an enveloping algebra.
//!
//! Monomials are nondecreasing sequences of generators. Products are brought
//! to normal order by inserting each right factor into the sorted monomial:
//! passing a generator `g` leftwards over `t > g` uses `t g = g t + [t, g]`,
//! and the spill term `prefix · [t, g] · suffix` has one factor fewer, so the
//! recursion terminates.

use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{add_term, merge_terms, BracketTable, Gen, Mono, SymPoly, Terms};
use crate::rational::Rational;

/// Element of `U(g)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwPoly<G: Gen> {
    terms: Terms<G>,
}

impl<G: Gen> Default for PbwPoly<G> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Exchange counts of the rewriting engine. `top_level` counts exchanges of
/// the original factors (the inversion count of the concatenated word);
/// `spill` counts exchanges performed while normalising commutator terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub top_level: u64,
    pub spill: u64,
}

impl RewriteStats {
    pub fn total(&self) -> u64 {
        self.top_level + self.spill
    }

    pub fn absorb(&mut self, other: &RewriteStats) {
        self.top_level += other.top_level;
        self.spill += other.spill;
    }

    /// Upper bound on exchanges when normalising one word of length `len`
    /// whose generator brackets have at most `spill` terms:
    /// `f(L) = C(L,2) (1 + spill · f(L-1))`, `f(1) = 0`.
    pub fn word_bound(len: usize, spill: usize) -> BigInt {
        let mut f = BigInt::zero();
        for l in 2..=len {
            let pairs = BigInt::from(l * (l - 1) / 2);
            f = pairs * (BigInt::one() + BigInt::from(spill) * &f);
        }
        f
    }
}

fn mul_mono_gen<T: BracketTable>(
    table: &T,
    mono: &[T::G],
    g: T::G,
    coeff: &Rational,
    out: &mut Terms<T::G>,
    stats: &mut RewriteStats,
    top: bool,
) {
    let p = mono.partition_point(|x| *x <= g);
    let mut m = Mono::with_capacity(mono.len() + 1);
    m.extend_from_slice(&mono[..p]);
    m.push(g);
    m.extend_from_slice(&mono[p..]);
    add_term(out, m, coeff.clone());
    // g passes mono[k-1], …, mono[p] in turn; the spill for mono[j] is
    // mono[..j] · [mono[j], g] · mono[j+1..]
    for j in (p..mono.len()).rev() {
        if top {
            stats.top_level += 1;
        } else {
            stats.spill += 1;
        }
        for (h, c) in table.bracket(mono[j], g) {
            let cc = coeff * c;
            let mut acc = Terms::default();
            mul_mono_gen(table, &mono[..j], h, &cc, &mut acc, stats, false);
            for &s in &mono[j + 1..] {
                acc = mul_terms_gen(table, acc, s, stats, false);
            }
            merge_terms(out, acc);
        }
    }
}

fn mul_terms_gen<T: BracketTable>(
    table: &T,
    terms: Terms<T::G>,
    g: T::G,
    stats: &mut RewriteStats,
    top: bool,
) -> Terms<T::G> {
    let mut out = Terms::default();
    for (m, c) in terms {
        mul_mono_gen(table, &m, g, &c, &mut out, stats, top);
    }
    out
}

/// Normal form of `c · prefix · word`, where `prefix` is already sorted.
/// The full-length term is carried separately so that only its exchanges
/// count as top level.
fn normalize_after<T: BracketTable>(
    table: &T,
    prefix: &[T::G],
    word: &[T::G],
    c: Rational,
    stats: &mut RewriteStats,
) -> Terms<T::G> {
    let mut main: Mono<T::G> = prefix.iter().copied().collect();
    let mut rest = Terms::default();
    for &g in word {
        let mut out = Terms::default();
        mul_mono_gen(table, &main, g, &c, &mut out, stats, true);
        let p = main.partition_point(|x| *x <= g);
        main.insert(p, g);
        out.remove(&main);
        rest = mul_terms_gen(table, rest, g, stats, false);
        merge_terms(&mut rest, out);
    }
    add_term(&mut rest, main, c);
    rest
}

impl<G: Gen> PbwPoly<G> {
    pub fn zero() -> Self {
        Self {
            terms: Terms::default(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::new(), c);
        p
    }

    pub fn gen(g: G) -> Self {
        let mut p = Self::zero();
        p.add_term(std::iter::once(g).collect(), Rational::one());
        p
    }

    pub fn linear(comb: impl IntoIterator<Item = (G, Rational)>) -> Self {
        let mut p = Self::zero();
        for (g, c) in comb {
            p.add_term(std::iter::once(g).collect(), c);
        }
        p
    }

    /// Normal form of the ordered product `c · w_1 w_2 ⋯ w_k`.
    pub fn from_word<T: BracketTable<G = G>>(table: &T, word: &[G], c: Rational) -> Self {
        let mut stats = RewriteStats::default();
        Self {
            terms: normalize_after(table, &[], word, c, &mut stats),
        }
    }

    pub(crate) fn from_terms(terms: Terms<G>) -> Self {
        Self { terms }
    }

    /// Adds `c · m` for an already normal-ordered monomial `m`.
    pub fn add_term(&mut self, m: Mono<G>, c: Rational) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]), "monomial not normal-ordered");
        add_term(&mut self.terms, m, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[G]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono<G>, &Rational)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(&Mono<G>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Filtration degree (longest monomial); `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn filter(&self, keep: impl Fn(&Mono<G>) -> bool) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Top filtration component read as a commutative polynomial.
    pub fn gr_top(&self) -> Result<SymPoly<G>> {
        let d = self.degree().ok_or(Error::ZeroInput)?;
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            if m.len() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn coordinates(&self, index: &rustc_hash::FxHashMap<Mono<G>, usize>) -> Option<Vec<(usize, Rational)>> {
        let mut v = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            v.push((*index.get(m)?, c.clone()));
        }
        v.sort_by_key(|x| x.0);
        Some(v)
    }
}

/// Product `u · v` in normal form.
pub fn normal_product<T: BracketTable>(table: &T, u: &PbwPoly<T::G>, v: &PbwPoly<T::G>) -> PbwPoly<T::G> {
    normal_product_with_stats(table, u, v).0
}

pub fn normal_product_with_stats<T: BracketTable>(
    table: &T,
    u: &PbwPoly<T::G>,
    v: &PbwPoly<T::G>,
) -> (PbwPoly<T::G>, RewriteStats) {
    let left: Vec<_> = u.terms.iter().collect();
    let parts = par::map(&left, |(mu, cu)| {
        let mut stats = RewriteStats::default();
        let mut out = Terms::default();
        for (mv, cv) in &v.terms {
            let acc = normalize_after(table, mu, mv, *cu * cv, &mut stats);
            merge_terms(&mut out, acc);
        }
        (out, stats)
    });
    let mut out = Terms::default();
    let mut stats = RewriteStats::default();
    for (part, st) in parts {
        merge_terms(&mut out, part);
        stats.absorb(&st);
    }
    (PbwPoly::from_terms(out), stats)
}

/// `u v - v u`.
pub fn commutator<T: BracketTable>(table: &T, u: &PbwPoly<T::G>, v: &PbwPoly<T::G>) -> PbwPoly<T::G> {
    &normal_product(table, u, v) - &normal_product(table, v, u)
}

/// Symmetrisation map `x_1⋯x_d ↦ (1/d!) Σ_σ x_σ(1)⋯x_σ(d)`.
pub fn symmetrize<T: BracketTable>(table: &T, p: &SymPoly<T::G>) -> PbwPoly<T::G> {
    let terms: Vec<_> = p.terms().collect();
    let parts = par::map(&terms, |(m, c)| {
        let d = m.len();
        let mut stats = RewriteStats::default();
        let mut out = Terms::default();
        let nperm: usize = (1..=d).product();
        let w = *c / Rational::from_integer(BigInt::from(nperm));
        for perm in m.iter().copied().permutations(d) {
            merge_terms(&mut out, normalize_after(table, &[], &perm, w.clone(), &mut stats));
        }
        out
    });
    let mut out = Terms::default();
    for part in parts {
        merge_terms(&mut out, part);
    }
    PbwPoly::from_terms(out)
}

/// Applies the derivation determined by `d` on generators (each image a
/// linear combination of generators): `y_1⋯y_k ↦ Σ_j y_1⋯d(y_j)⋯y_k`.
pub fn derive_linear<T: BracketTable>(
    table: &T,
    u: &PbwPoly<T::G>,
    d: impl Fn(T::G) -> Vec<(T::G, Rational)> + Sync,
) -> PbwPoly<T::G> {
    let terms: Vec<_> = u.terms().collect();
    let parts = par::map(&terms, |(m, c)| {
        let mut stats = RewriteStats::default();
        let mut out = Terms::default();
        for j in 0..m.len() {
            for (h, k) in d(m[j]) {
                let mut acc = Terms::default();
                mul_mono_gen(table, &m[..j], h, &(*c * k), &mut acc, &mut stats, false);
                for &s in &m[j + 1..] {
                    acc = mul_terms_gen(table, acc, s, &mut stats, false);
                }
                merge_terms(&mut out, acc);
            }
        }
        out
    });
    let mut out = Terms::default();
    for part in parts {
        merge_terms(&mut out, part);
    }
    PbwPoly::from_terms(out)
}

impl<G: Gen> Add for &PbwPoly<G> {
    type Output = PbwPoly<G>;
    fn add(self, rhs: &PbwPoly<G>) -> PbwPoly<G> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl<G: Gen> Sub for &PbwPoly<G> {
    type Output = PbwPoly<G>;
    fn sub(self, rhs: &PbwPoly<G>) -> PbwPoly<G> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        out
    }
}

impl<G: Gen> Neg for &PbwPoly<G> {
    type Output = PbwPoly<G>;
    fn neg(self) -> PbwPoly<G> {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    /// Heisenberg-like table: [x, y] = z for generators 0 < 1, z = 2 central.
    struct Heis;
    impl BracketTable for Heis {
        type G = u8;
        fn bracket(&self, a: u8, b: u8) -> Vec<(u8, Rational)> {
            match (a, b) {
                (0, 1) => vec![(2, int(1))],
                (1, 0) => vec![(2, int(-1))],
                _ => vec![],
            }
        }
    }

    #[test]
    fn single_exchange() {
        let p = PbwPoly::from_word(&Heis, &[1, 0], int(1));
        // y x = x y - z
        assert_eq!(p.coeff(&[0, 1]), int(1));
        assert_eq!(p.coeff(&[2]), int(-1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn unit_and_idempotence() {
        let u = PbwPoly::from_word(&Heis, &[1, 1, 0, 2], int(3));
        assert_eq!(normal_product(&Heis, &u, &PbwPoly::one()), u);
        assert_eq!(normal_product(&Heis, &PbwPoly::one(), &u), u);
        for (m, c) in u.terms() {
            let again = PbwPoly::from_word(&Heis, m, c.clone());
            assert_eq!(again.len(), 1);
            assert_eq!(again.coeff(m), *c);
        }
    }

    #[test]
    fn top_level_exchanges_equal_inversions() {
        let u = PbwPoly::from_word(&Heis, &[1, 1], int(1));
        let v = PbwPoly::from_word(&Heis, &[0, 0], int(1));
        let (_, stats) = normal_product_with_stats(&Heis, &u, &v);
        assert_eq!(stats.top_level, 4);
        assert!(BigInt::from(stats.total()) <= RewriteStats::word_bound(4, 1));
    }

    #[test]
    fn symmetrize_has_symbol_identity() {
        let p = SymPoly::monomial(&[0u8, 1, 1], int(2));
        let s = symmetrize(&Heis, &p);
        assert_eq!(s.gr_top().unwrap(), p);
        assert!(PbwPoly::<u8>::zero().gr_top().is_err());
    }
}
