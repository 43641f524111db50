//! Sparse commutative polynomials over exact rationals.
//!
//! A monomial is a sorted multiset of generators. The Poisson bracket is
//! generic over a [`BracketTable`] giving the Lie bracket of two generators.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::par;
use crate::rational::Rational;

/// A polynomial generator: totally ordered, hashable, cheap to copy.
pub trait Gen: Copy + Ord + Eq + Hash + Debug + Send + Sync + 'static {}

impl<T: Copy + Ord + Eq + Hash + Debug + Send + Sync + 'static> Gen for T {}

pub type Mono<G> = SmallVec<[G; 8]>;

/// Lie bracket of generators, expanded as a linear combination of generators.
pub trait BracketTable: Sync {
    type G: Gen;
    fn bracket(&self, a: Self::G, b: Self::G) -> Vec<(Self::G, Rational)>;
}

pub(crate) type Terms<G> = FxHashMap<Mono<G>, Rational>;

pub(crate) fn add_term<G: Gen>(terms: &mut Terms<G>, m: Mono<G>, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match terms.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn merge_terms<G: Gen>(into: &mut Terms<G>, from: Terms<G>) {
    for (m, c) in from {
        add_term(into, m, c);
    }
}

/// Element of a symmetric algebra: finite sum of sorted monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly<G: Gen> {
    terms: Terms<G>,
}

impl<G: Gen> Default for SymPoly<G> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<G: Gen> SymPoly<G> {
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
        Self::monomial(&[g], Rational::one())
    }

    /// Monomial from an arbitrary (unsorted) list of factors.
    pub fn monomial(factors: &[G], c: Rational) -> Self {
        let mut m: Mono<G> = factors.iter().copied().collect();
        m.sort_unstable();
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub(crate) fn from_terms(terms: Terms<G>) -> Self {
        Self { terms }
    }

    /// Adds `c · m`; `m` must already be sorted.
    pub fn add_term(&mut self, m: Mono<G>, c: Rational) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
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

    /// Terms in canonical order: by degree, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Mono<G>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Maximal monomial degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    /// Common degree of all terms, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.len());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Mono<G>, &Rational) -> Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
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

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Algebra homomorphism defined on generators.
    pub fn substitute<H: Gen>(&self, image: impl Fn(G) -> SymPoly<H>) -> SymPoly<H> {
        let mut cache: FxHashMap<G, SymPoly<H>> = FxHashMap::default();
        let mut out = SymPoly::<H>::zero();
        for (m, c) in self.sorted_terms() {
            let mut acc = SymPoly::<H>::constant(c.clone());
            for g in m.iter() {
                let img = cache.entry(*g).or_insert_with(|| image(*g));
                acc = &acc * &*img;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Derivation defined on generators, extended by the Leibniz rule.
    pub fn derive(&self, d: impl Fn(G) -> SymPoly<G>) -> Self {
        let mut out = Terms::default();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                if i > 0 && m[i] == m[i - 1] {
                    continue;
                }
                let mult = m.iter().filter(|g| **g == m[i]).count();
                let mut rest = m.clone();
                rest.remove(i);
                let factor = c * Rational::from_integer(mult.into());
                for (dm, dc) in d(m[i]).terms() {
                    add_term(&mut out, merge_sorted(&rest, dm), &factor * dc);
                }
            }
        }
        Self::from_terms(out)
    }

    /// Dense coordinate column against a monomial index.
    pub fn coordinates(&self, index: &FxHashMap<Mono<G>, usize>) -> Option<Vec<(usize, Rational)>> {
        let mut v = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            v.push((*index.get(m)?, c.clone()));
        }
        v.sort_by_key(|x| x.0);
        Some(v)
    }
}

pub(crate) fn merge_sorted<G: Gen>(a: &[G], b: &[G]) -> Mono<G> {
    let mut out = Mono::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<G: Gen> Add for &SymPoly<G> {
    type Output = SymPoly<G>;
    fn add(self, rhs: &SymPoly<G>) -> SymPoly<G> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<G: Gen> Sub for &SymPoly<G> {
    type Output = SymPoly<G>;
    fn sub(self, rhs: &SymPoly<G>) -> SymPoly<G> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<G: Gen> Neg for &SymPoly<G> {
    type Output = SymPoly<G>;
    fn neg(self) -> SymPoly<G> {
        self.scale(&-Rational::one())
    }
}

impl<G: Gen> Mul for &SymPoly<G> {
    type Output = SymPoly<G>;
    fn mul(self, rhs: &SymPoly<G>) -> SymPoly<G> {
        let mut out = Terms::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                add_term(&mut out, merge_sorted(a, b), ca * cb);
            }
        }
        SymPoly::from_terms(out)
    }
}

/// Poisson bracket `{p, q}` induced by the Lie bracket on generators.
pub fn poisson_bracket<T: BracketTable>(table: &T, p: &SymPoly<T::G>, q: &SymPoly<T::G>) -> SymPoly<T::G> {
    let left: Vec<_> = p.terms().collect();
    let parts = par::map(&left, |(m1, c1)| {
        let mut out = Terms::default();
        for (m2, c2) in q.terms() {
            let c = *c1 * c2;
            for i in 0..m1.len() {
                if i > 0 && m1[i] == m1[i - 1] {
                    continue;
                }
                let mi = m1.iter().filter(|g| **g == m1[i]).count();
                let mut rest1 = (*m1).clone();
                rest1.remove(i);
                for j in 0..m2.len() {
                    if j > 0 && m2[j] == m2[j - 1] {
                        continue;
                    }
                    let br = table.bracket(m1[i], m2[j]);
                    if br.is_empty() {
                        continue;
                    }
                    let mj = m2.iter().filter(|g| **g == m2[j]).count();
                    let mut rest2 = m2.clone();
                    rest2.remove(j);
                    let base = merge_sorted(&rest1, &rest2);
                    let k = &c * Rational::from_integer((mi * mj).into());
                    for (g, v) in br {
                        add_term(&mut out, merge_sorted(&base, &[g]), &k * v);
                    }
                }
            }
        }
        out
    });
    let mut out = Terms::default();
    for part in parts {
        merge_terms(&mut out, part);
    }
    SymPoly::from_terms(out)
}
