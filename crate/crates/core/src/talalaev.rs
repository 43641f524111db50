//! Differential operators in `z` with coefficients in `U(g⁻) ⊗ End((C^r)^{⊗j})`,
//! and the determinant-type generating operator
//! `D = Tr A_r (L^{(1)}(z) - ∂_z) ⋯ (L^{(r)}(z) - ∂_z)` for `gl_r`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::envelope::{self, EnvPoly};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraSpec, LieKind};
use crate::loop_sym::{self, homogeneous_weight, permutation_sign, LoopGen, LoopPoly};
use crate::par;
use crate::rational::{binomial, falling, Rational};

/// `Σ z^n X_{p,n} ∂_z^p`, keyed by `(p, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<(u32, u32), EnvPoly>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, 0, EnvPoly::constant(c))
    }

    /// `∂_z^p`.
    pub fn d_z(p: u32) -> Self {
        Self::term(p, 0, EnvPoly::one())
    }

    /// `z^n x ∂_z^p`.
    pub fn term(p: u32, n: u32, x: EnvPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(p, n, x);
        out
    }

    pub fn add_term(&mut self, p: u32, n: u32, x: EnvPoly) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, n)).or_default();
        *slot = &*slot + &x;
        if slot.is_zero() {
            self.terms.remove(&(p, n));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^n ∂_z^p`.
    pub fn coeff(&self, p: u32, n: u32) -> EnvPoly {
        self.terms.get(&(p, n)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &EnvPoly)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn max_z(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((p, n), x) in &self.terms {
            out.add_term(*p, *n, x.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, n), x) in &other.terms {
            out.add_term(*p, *n, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product with `∂_z^p z^m = Σ_j C(p,j) m!/(m-j)! z^{m-j} ∂_z^{p-j}`.
    /// Terms with `z`-power `≥ cutoff` are dropped; the flag reports whether any were.
    pub fn mul(spec: &LieAlgebraSpec, a: &Self, b: &Self, cutoff: u32) -> (Self, bool) {
        let mut out = Self::zero();
        let mut truncated = false;
        for ((p, n), x) in &a.terms {
            for ((q, m), y) in &b.terms {
                if n + m.saturating_sub(*p) >= cutoff {
                    truncated = true;
                    continue;
                }
                let xy = envelope::normal_product(spec, x, y);
                if xy.is_zero() {
                    continue;
                }
                for j in 0..=(*p).min(*m) {
                    let z = n + m - j;
                    if z >= cutoff {
                        truncated = true;
                        continue;
                    }
                    let c = binomial(*p as u64, j as u64) * falling(*m as u64, j as u64);
                    out.add_term(p + q - j, z, xy.scale(&Rational::from_integer(c)));
                }
            }
        }
        (out, truncated)
    }
}

/// Square matrix over `DiffPoly` acting on `(C^r)^{⊗factors}`, stored sparsely.
/// Row and column indices encode tuples `(a_1, …, a_j)` with `a_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOperator {
    pub r: usize,
    pub factors: usize,
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), DiffPoly>,
    pub z_cutoff: u32,
    pub truncated: bool,
}

impl MatrixOperator {
    pub fn zero(r: usize, factors: usize, z_cutoff: u32) -> Self {
        Self {
            r,
            factors,
            dim: r.pow(factors as u32),
            entries: BTreeMap::new(),
            z_cutoff,
            truncated: false,
        }
    }

    /// `c · ∂_z^p · Id`.
    pub fn scalar_d(r: usize, factors: usize, z_cutoff: u32, c: Rational, p: u32) -> Self {
        let mut out = Self::zero(r, factors, z_cutoff);
        let entry = DiffPoly::d_z(p).scale(&c);
        for i in 0..out.dim {
            out.entries.insert((i, i), entry.clone());
        }
        out
    }

    pub fn identity(r: usize, factors: usize, z_cutoff: u32) -> Self {
        Self::scalar_d(r, factors, z_cutoff, Rational::one(), 0)
    }

    pub fn get(&self, i: usize, j: usize) -> DiffPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: DiffPoly) {
        assert!(i < self.dim && j < self.dim, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &a| acc * self.r + a)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors];
        for slot in out.iter_mut().rev() {
            *slot = index % self.r;
            index /= self.r;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((i, j), v) in &other.entries {
            let sum = out.get(*i, *j).add(v);
            out.set(*i, *j, sum);
        }
        out.truncated |= other.truncated;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut neg = other.clone();
        for v in neg.entries.values_mut() {
            *v = v.scale(&-Rational::one());
        }
        self.add(&neg)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.factors != other.factors || self.r != other.r {
            return Err(Error::FactorMismatch(self.factors, other.factors));
        }
        Ok(())
    }

    /// Places a one-factor operator into tensor slot `slot` (0-based) of `factors`.
    pub fn lift(&self, slot: usize, factors: usize) -> Result<Self> {
        if self.factors != 1 || slot >= factors {
            return Err(Error::FactorMismatch(self.factors, 1));
        }
        let mut out = Self::zero(self.r, factors, self.z_cutoff);
        for rest in 0..self.r.pow(factors as u32 - 1) {
            let mut tuple = Vec::with_capacity(factors);
            let mut x = rest;
            for _ in 0..factors - 1 {
                tuple.push(x % self.r);
                x /= self.r;
            }
            tuple.insert(slot, 0);
            for ((a, b), v) in &self.entries {
                let mut ta = tuple.clone();
                let mut tb = tuple.clone();
                ta[slot] = *a;
                tb[slot] = *b;
                out.entries.insert((out.encode(&ta), out.encode(&tb)), v.clone());
            }
        }
        Ok(out)
    }

    /// Rows kept by `keep`; every other row is dropped.
    pub fn restrict_rows(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        out.entries.retain(|(i, _), _| keep(*i));
        out
    }

    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        out.entries.retain(|(_, j), _| keep(*j));
        out
    }

    /// Trace of `self · other`.
    pub fn trace_product(&self, spec: &LieAlgebraSpec, other: &Self) -> Result<DiffPoly> {
        self.check_shape(other)?;
        let cutoff = self.z_cutoff.max(other.z_cutoff);
        let pairs: Vec<(&DiffPoly, DiffPoly)> = self
            .entries
            .iter()
            .filter_map(|((i, k), a)| other.entries.get(&(*k, *i)).map(|b| (a, b.clone())))
            .collect();
        let parts = par::map(&pairs, |(a, b)| DiffPoly::mul(spec, a, b, cutoff).0);
        Ok(parts.iter().fold(DiffPoly::zero(), |acc, p| acc.add(p)))
    }
}

/// `L(z)` for `gl_r`: entry `(j, i)` is `Σ_{n ≤ cutoff} z^{n-1} e_ij[-n]`.
pub fn build_l(spec: &LieAlgebraSpec, cutoff: u32) -> Result<MatrixOperator> {
    if spec.kind() != LieKind::Gl {
        return Err(Error::WrongKind {
            expected: "gl",
            found: spec.kind().name(),
        });
    }
    if cutoff == 0 {
        return Err(Error::CutoffTooSmall { cutoff: 0, order: 1 });
    }
    let r = spec.rank();
    let mut out = MatrixOperator::zero(r, 1, cutoff);
    for i in 0..r {
        for j in 0..r {
            let label = spec.e(i + 1, j + 1);
            let mut entry = DiffPoly::zero();
            for n in 1..=cutoff {
                entry.add_term(0, n - 1, EnvPoly::gen(LoopGen::new(label, n as u16)));
            }
            out.set(j, i, entry);
        }
    }
    Ok(out)
}

/// `A_r = (1/r!) Σ_σ sgn(σ) P_σ` on `(C^r)^{⊗r}`; only tuples with distinct
/// entries carry nonzero entries.
pub fn antisymmetrizer(r: usize) -> MatrixOperator {
    let mut out = MatrixOperator::zero(r, r, 1);
    let norm = Rational::new(BigInt::one(), crate::rational::factorial(r as u64));
    let perms: Vec<Vec<usize>> = (0..r).permutations(r).collect();
    for a in &perms {
        for b in &perms {
            let s = permutation_sign(a) * permutation_sign(b);
            let v = DiffPoly::constant(&norm * Rational::from_integer(s.into()));
            out.entries.insert((out.encode(a), out.encode(b)), v);
        }
    }
    out
}

/// Matrix product, with `∂_z` moved to the right through the Leibniz rule.
pub fn op_multiply(spec: &LieAlgebraSpec, a: &MatrixOperator, b: &MatrixOperator) -> Result<MatrixOperator> {
    a.check_shape(b)?;
    let cutoff = a.z_cutoff.max(b.z_cutoff);
    let mut b_rows: BTreeMap<usize, Vec<(usize, &DiffPoly)>> = BTreeMap::new();
    for ((k, j), v) in &b.entries {
        b_rows.entry(*k).or_default().push((*j, v));
    }
    let mut a_rows: BTreeMap<usize, Vec<(usize, &DiffPoly)>> = BTreeMap::new();
    for ((i, k), v) in &a.entries {
        a_rows.entry(*i).or_default().push((*k, v));
    }
    let rows: Vec<_> = a_rows.into_iter().collect();
    let parts = par::map(&rows, |(i, row)| {
        let mut acc: BTreeMap<usize, DiffPoly> = BTreeMap::new();
        let mut truncated = false;
        for (k, x) in row {
            for (j, y) in b_rows.get(k).map(Vec::as_slice).unwrap_or(&[]) {
                let (p, t) = DiffPoly::mul(spec, x, y, cutoff);
                truncated |= t;
                let slot = acc.entry(*j).or_default();
                *slot = slot.add(&p);
            }
        }
        (*i, acc, truncated)
    });
    let mut out = MatrixOperator::zero(a.r, a.factors, cutoff);
    out.truncated = a.truncated || b.truncated;
    for (i, acc, t) in parts {
        out.truncated |= t;
        for (j, v) in acc {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// `Q_{n,k}`: coefficient of `z^{n-1} ∂_z^{r-k}` in the monic-normalised `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFamily {
    pub rank: usize,
    pub z_order: usize,
    pub q: BTreeMap<(usize, usize), EnvPoly>,
    pub truncated: bool,
}

impl QFamily {
    pub fn get(&self, n: usize, k: usize) -> &EnvPoly {
        &self.q[&(n, k)]
    }

    pub fn keys(&self) -> Vec<(usize, usize)> {
        self.q.keys().copied().collect()
    }
}

pub fn compute_q(spec: &LieAlgebraSpec, z_order: usize) -> Result<QFamily> {
    compute_q_with(spec, z_order, spec.rank(), true)
}

/// `extra` is the cutoff margin (internal cutoff `z_order + extra`); `prune`
/// restricts rows and columns to tuples that can meet a nonzero entry of `A_r`.
pub fn compute_q_with(spec: &LieAlgebraSpec, z_order: usize, extra: usize, prune: bool) -> Result<QFamily> {
    let r = spec.rank();
    if z_order == 0 {
        return Err(Error::CutoffTooSmall { cutoff: 0, order: 1 });
    }
    let cutoff = (z_order + extra) as u32;
    let l = build_l(spec, cutoff)?;
    let d = MatrixOperator::scalar_d(r, r, cutoff, Rational::one(), 1);
    let mut prod = MatrixOperator::identity(r, r, cutoff);
    if prune {
        prod = prod.restrict_rows(|i| distinct_prefix(&prod.decode(i), r));
    }
    for slot in 0..r {
        let f = l.lift(slot, r)?.sub(&d)?;
        prod = op_multiply(spec, &prod, &f)?;
        if prune {
            let probe = prod.clone();
            prod = prod.restrict_columns(|j| distinct_prefix(&probe.decode(j), slot + 1));
        }
    }
    let sign = if r.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let dop = antisymmetrizer(r).trace_product(spec, &prod)?.scale(&sign);

    if dop.coeff(r as u32, 0) != EnvPoly::one() {
        return Err(Error::Invariant("leading ∂_z coefficient is not 1".into()));
    }
    for ((p, n), x) in dop.terms() {
        if p as usize > r || (p as usize == r && n > 0 && !x.is_zero()) {
            return Err(Error::Invariant(format!("unexpected term z^{n} ∂^{p}")));
        }
    }
    let mut q = BTreeMap::new();
    for n in 1..=z_order {
        for k in 1..=r {
            let x = dop.coeff((r - k) as u32, (n - 1) as u32);
            check_q_invariants(&x, n, k)?;
            q.insert((n, k), x);
        }
    }
    Ok(QFamily {
        rank: r,
        z_order,
        q,
        truncated: prod.truncated,
    })
}

fn distinct_prefix(tuple: &[usize], len: usize) -> bool {
    let head = &tuple[..len];
    head.iter().all_unique()
}

fn check_q_invariants(x: &EnvPoly, n: usize, k: usize) -> Result<()> {
    if x.degree().is_some_and(|d| d > k) {
        return Err(Error::Invariant(format!("Q_{{{n},{k}}} has degree above {k}")));
    }
    if x.terms().any(|(m, _)| loop_sym::weight(m) != n + k - 1) {
        return Err(Error::Invariant(format!("Q_{{{n},{k}}} is not of weight {}", n + k - 1)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub zero: bool,
    /// Monomial pairs multiplied (both orders).
    pub products: usize,
    pub result_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub pairs: Vec<PairVerdict>,
    pub all_zero: bool,
}

/// `[Q_a, Q_b]` for every unordered pair of keys (including `a = b`).
pub fn check_pairwise_commute(spec: &LieAlgebraSpec, q: &QFamily) -> CommuteReport {
    let keys = q.keys();
    let pairs: Vec<((usize, usize), (usize, usize))> = keys
        .iter()
        .enumerate()
        .flat_map(|(i, a)| keys[i..].iter().map(move |b| (*a, *b)))
        .collect();
    let verdicts = par::map(&pairs, |(a, b)| {
        let (x, y) = (q.get(a.0, a.1), q.get(b.0, b.1));
        let c = envelope::commutator(spec, x, y);
        PairVerdict {
            a: *a,
            b: *b,
            zero: c.is_zero(),
            products: 2 * x.len() * y.len(),
            result_terms: c.len(),
        }
    });
    let all_zero = verdicts.iter().all(|v| v.zero);
    CommuteReport {
        pairs: verdicts,
        all_zero,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolRow {
    pub n: usize,
    pub k: usize,
    /// `c` with `gr Q_{n,k} = c · S̄_{k,n}`, if proportional.
    pub ratio: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolReport {
    pub rows: Vec<SymbolRow>,
    /// Per `k`: the common ratio when it is the same `±1` for every `n`.
    pub signs: BTreeMap<usize, Option<i64>>,
    pub pass: bool,
}

/// Compares `gr Q_{n,k}` with the determinant generators of the classical family.
pub fn identify_symbols(spec: &LieAlgebraSpec, q: &QFamily) -> SymbolReport {
    let classical = loop_sym::classical_generators(spec, q.z_order);
    let mut rows = Vec::new();
    for (&(n, k), x) in &q.q {
        let ratio = x.gr_top().ok().and_then(|g| proportional(&g, &classical[&(k, n)]));
        rows.push(SymbolRow { n, k, ratio });
    }
    let mut signs = BTreeMap::new();
    for k in 1..=q.rank {
        let ratios: Vec<_> = rows.iter().filter(|r| r.k == k).map(|r| r.ratio.clone()).collect();
        let sign = match ratios.first() {
            Some(Some(c)) if ratios.iter().all(|x| x.as_ref() == Some(c)) => {
                if c.is_one() {
                    Some(1)
                } else if *c == -Rational::one() {
                    Some(-1)
                } else {
                    None
                }
            }
            _ => None,
        };
        signs.insert(k, sign);
    }
    let pass = signs.values().all(Option::is_some);
    SymbolReport { rows, signs, pass }
}

/// `c` with `a = c · b`, when `b ≠ 0` and such a `c` exists.
pub fn proportional(a: &LoopPoly, b: &LoopPoly) -> Option<Rational> {
    let (m, cb) = b.terms().next()?;
    let c = a.coeff(m) / cb;
    (a == &b.scale(&c)).then_some(c)
}

/// Weight of `Q_{n,k}` as asserted by the family invariants.
pub fn q_weight(x: &EnvPoly) -> Option<usize> {
    let sym: LoopPoly = LoopPoly::from_terms(x.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    homogeneous_weight(&sym)
}
