//! Centralizers, comparison dimensions, and invariant subspaces on finite
//! graded (`S(g⁻)`) and filtered (`U(g⁻)`) components.

use std::collections::BTreeMap;
use std::hash::Hash;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::envelope::{self, EnvPoly};
use crate::error::Result;
use crate::gaudin::Check;
use crate::lie::{LieAlgebraSpec, PrincipalTriple};
use crate::linalg::Eliminator;
use crate::loop_sym::{self, LieSymbol, LoopBracket, LoopGen, LoopPoly, SliceGen};
use crate::par;
use crate::poly::{self, Mono, SymPoly};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentIndex {
    pub degree: usize,
    pub weight: usize,
}

impl ComponentIndex {
    pub fn new(degree: usize, weight: usize) -> Self {
        Self { degree, weight }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub degree: usize,
    pub weight: usize,
    /// `degree` is an upper bound (filtered component of `U(g⁻)`).
    pub filtered: bool,
    pub columns: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub pass: bool,
    /// Kernel elements commute among themselves.
    pub commuting: Option<bool>,
    /// Kernel elements lie in the comparison algebra.
    pub in_span: Option<bool>,
}

impl ComponentReport {
    fn new(idx: ComponentIndex, filtered: bool, columns: usize, kernel_dim: usize, expected_dim: usize) -> Self {
        Self {
            degree: idx.degree,
            weight: idx.weight,
            filtered,
            columns,
            rank: columns - kernel_dim,
            kernel_dim,
            expected_dim,
            pass: kernel_dim == expected_dim,
            commuting: None,
            in_span: None,
        }
    }

    fn finish(&mut self) {
        self.pass = self.kernel_dim == self.expected_dim
            && self.rank + self.kernel_dim == self.columns
            && self.commuting != Some(false)
            && self.in_span != Some(false);
    }
}

/// Assigns dense indices to monomials (or any hashable keys) on first sight.
#[derive(Debug)]
struct Indexer<K> {
    map: FxHashMap<K, usize>,
}

impl<K: Hash + Eq> Indexer<K> {
    fn new() -> Self {
        Self { map: FxHashMap::default() }
    }

    fn column(&mut self, terms: impl IntoIterator<Item = (K, Rational)>) -> Vec<(usize, Rational)> {
        let mut col: Vec<(usize, Rational)> = terms
            .into_iter()
            .map(|(k, c)| {
                let n = self.map.len();
                (*self.map.entry(k).or_insert(n), c)
            })
            .collect();
        col.sort_by_key(|x| x.0);
        col
    }

    /// Coordinates without registering unseen keys; `None` if any key is new.
    fn lookup(&self, terms: impl IntoIterator<Item = (K, Rational)>) -> Option<Vec<(usize, Rational)>> {
        let mut col = Vec::new();
        for (k, c) in terms {
            col.push((*self.map.get(&k)?, c));
        }
        col.sort_by_key(|x| x.0);
        Some(col)
    }
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`:
/// returns `(rank, relations)` with each relation a coefficient list over the basis.
fn kernel_relations<K: Hash + Eq>(images: Vec<Vec<(K, Rational)>>) -> (usize, Vec<Vec<(usize, Rational)>>) {
    let mut idx = Indexer::new();
    let mut elim = Eliminator::new(true);
    let mut rels = Vec::new();
    for img in images {
        let col = idx.column(img);
        if let Some(rel) = elim.insert(&col) {
            rels.push(rel);
        }
    }
    (elim.rank(), rels)
}

fn sym_from_relation(basis: &[Mono<LoopGen>], rel: &[(usize, Rational)]) -> LoopPoly {
    let mut p = LoopPoly::zero();
    for (j, c) in rel {
        p.add_term(basis[*j].clone(), c.clone());
    }
    p
}

fn env_from_relation(basis: &[Mono<LoopGen>], rel: &[(usize, Rational)]) -> EnvPoly {
    let mut p = EnvPoly::zero();
    for (j, c) in rel {
        p.add_term(basis[*j].clone(), c.clone());
    }
    p
}

fn owned_terms<G: poly::Gen>(p: &SymPoly<G>) -> Vec<(Mono<G>, Rational)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn owned_env_terms(p: &EnvPoly) -> Vec<(Mono<LoopGen>, Rational)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[derive(Clone, Debug)]
pub struct ClassicalComponent {
    pub report: ComponentReport,
    pub kernel: Vec<LoopPoly>,
}

/// Kernel of `{b, ·}` on `S_{d,w}`.
pub fn ad_kernel_classical(spec: &LieAlgebraSpec, b: &LoopPoly, idx: ComponentIndex, expected: usize) -> ClassicalComponent {
    let basis = loop_sym::graded_basis(spec, idx.degree, idx.weight);
    let table = LoopBracket(spec);
    let images = par::map(&basis, |m| {
        let q = LoopPoly::monomial(m, Rational::one());
        owned_terms(&poly::poisson_bracket(&table, b, &q))
    });
    let (_, rels) = kernel_relations(images);
    let kernel: Vec<LoopPoly> = rels.iter().map(|r| sym_from_relation(&basis, r)).collect();
    let mut report = ComponentReport::new(idx, false, basis.len(), kernel.len(), expected);
    report.finish();
    ClassicalComponent { report, kernel }
}

/// A homogeneous generator with its grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub poly: LoopPoly,
    pub degree: usize,
    pub weight: usize,
}

/// Generators of `A` up to `max_weight`: the determinant coefficients
/// `(k, n)`, `k ≥ 2` for `sl_r` and `k ≥ 1` for `gl_r`.
pub fn a_generators(spec: &LieAlgebraSpec, max_weight: usize) -> Vec<Generator> {
    if max_weight == 0 {
        return Vec::new();
    }
    loop_sym::classical_generators(spec, max_weight)
        .into_iter()
        .filter(|((k, n), _)| n + k - 1 <= max_weight)
        .map(|((k, n), poly)| Generator {
            poly,
            degree: k,
            weight: n + k - 1,
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Span {
    pub dim: usize,
    /// Linearly independent products spanning the component.
    pub basis: Vec<LoopPoly>,
}

/// Multisets of generator indices whose degrees and weights sum to `idx`.
fn product_types(gens: &[Generator], idx: ComponentIndex) -> Vec<Vec<usize>> {
    fn rec(gens: &[Generator], start: usize, d: usize, w: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 0 && w == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            let g = &gens[i];
            if g.degree <= d && g.weight <= w && g.degree > 0 {
                cur.push(i);
                rec(gens, i, d - g.degree, w - g.weight, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, idx.degree, idx.weight, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the `(d, w)` component of the algebra generated by `gens`.
pub fn subalgebra_dim(gens: &[Generator], idx: ComponentIndex) -> Span {
    if idx.degree == 0 {
        let dim = usize::from(idx.weight == 0);
        return Span {
            dim,
            basis: if dim == 1 { vec![LoopPoly::one()] } else { Vec::new() },
        };
    }
    let types = product_types(gens, idx);
    let products = par::map(&types, |t| {
        t.iter().fold(LoopPoly::one(), |acc, &i| &acc * &gens[i].poly)
    });
    let mut indexer = Indexer::new();
    let mut elim = Eliminator::new(false);
    let mut basis = Vec::new();
    for p in products {
        let col = indexer.column(owned_terms(&p));
        if elim.insert(&col).is_none() {
            basis.push(p);
        }
    }
    Span { dim: basis.len(), basis }
}

/// `dim S(𝔥⁻)_{d,w}`.
pub fn cartan_dim(spec: &LieAlgebraSpec, idx: ComponentIndex) -> usize {
    loop_sym::graded_basis_in(&spec.cartan_labels(), idx.degree, idx.weight).len()
}

/// True when every element of `items` lies in the span of `span`.
fn all_in_span<G: poly::Gen>(span: &[SymPoly<G>], items: &[SymPoly<G>]) -> bool {
    let mut idx = Indexer::new();
    let mut elim = Eliminator::new(false);
    for p in span {
        elim.insert(&idx.column(owned_terms(p)));
    }
    items.iter().all(|p| match idx.lookup(owned_terms(p)) {
        Some(col) => elim.contains(&col),
        None => false,
    })
}

fn pairwise_poisson_commute(spec: &LieAlgebraSpec, items: &[LoopPoly]) -> bool {
    let pairs: Vec<(usize, usize)> = (0..items.len())
        .flat_map(|i| (i + 1..items.len()).map(move |j| (i, j)))
        .collect();
    par::map(&pairs, |(i, j)| loop_sym::poisson_bracket(spec, &items[*i], &items[*j]).is_zero())
        .into_iter()
        .all(|x| x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalTarget {
    /// `S̄₁`, compared against `A`.
    S1Bar,
    /// `h[-1]`, compared against `S(𝔥⁻)`.
    H1,
}

/// `h[-1]` for the principal triple.
pub fn h_minus_one(triple: &PrincipalTriple) -> LoopPoly {
    let mut p = LoopPoly::zero();
    for (a, c) in triple.h.terms() {
        p.add_term([LoopGen::new(a, 1)].into_iter().collect(), c.clone());
    }
    p
}

/// All components with `1 ≤ d ≤ max_degree`, `d ≤ w ≤ max_weight`.
pub fn graded_components(max_degree: usize, max_weight: usize) -> Vec<ComponentIndex> {
    (1..=max_degree)
        .flat_map(|d| (d..=max_weight).map(move |w| ComponentIndex::new(d, w)))
        .collect()
}

/// Centralizer of the target on every component of the range, with the
/// comparison dimension and the commutativity / membership cross-checks.
pub fn classical_sweep(
    spec: &LieAlgebraSpec,
    target: ClassicalTarget,
    components: &[ComponentIndex],
) -> Result<Vec<ClassicalComponent>> {
    let max_w = components.iter().map(|c| c.weight).max().unwrap_or(0);
    let (b, gens) = match target {
        ClassicalTarget::S1Bar => (loop_sym::s1_bar(spec), a_generators(spec, max_w)),
        ClassicalTarget::H1 => {
            let t = PrincipalTriple::new(spec)?;
            (h_minus_one(&t), Vec::new())
        }
    };
    let out = par::map(components, |&idx| {
        let (expected, span) = match target {
            ClassicalTarget::S1Bar => {
                let s = subalgebra_dim(&gens, idx);
                (s.dim, Some(s.basis))
            }
            ClassicalTarget::H1 => (cartan_dim(spec, idx), None),
        };
        let mut comp = ad_kernel_classical(spec, &b, idx, expected);
        comp.report.commuting = Some(pairwise_poisson_commute(spec, &comp.kernel));
        comp.report.in_span = Some(match &span {
            Some(basis) => all_in_span(basis, &comp.kernel),
            None => comp
                .kernel
                .iter()
                .all(|p| p.terms().all(|(m, _)| m.iter().all(|g| spec.is_cartan(g.label)))),
        });
        comp.report.finish();
        comp
    });
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct QuantumComponent {
    pub report: ComponentReport,
    pub kernel: Vec<EnvPoly>,
}

/// Kernel of `[b, ·]` on `U_{≤d, w}` (PBW monomials of degree `1..=d`, weight `w`).
pub fn ad_kernel_quantum(spec: &LieAlgebraSpec, b: &EnvPoly, idx: ComponentIndex, expected: usize) -> QuantumComponent {
    let basis = envelope::filtered_basis(spec, idx.degree, idx.weight);
    let images = par::map(&basis, |m| {
        let q = EnvPoly::from_terms(std::iter::once((m.clone(), Rational::one())).collect());
        owned_env_terms(&envelope::commutator(spec, b, &q))
    });
    let (_, rels) = kernel_relations(images);
    let kernel: Vec<EnvPoly> = rels.iter().map(|r| env_from_relation(&basis, r)).collect();
    let mut report = ComponentReport::new(idx, true, basis.len(), kernel.len(), expected);
    report.finish();
    QuantumComponent { report, kernel }
}

/// Centralizer of `S₁` on `U_{≤d,w}`, compared with `Σ_{d'≤d} dim A_{d',w}`.
pub fn quantum_sweep(spec: &LieAlgebraSpec, components: &[ComponentIndex]) -> Vec<QuantumComponent> {
    let max_w = components.iter().map(|c| c.weight).max().unwrap_or(0);
    let gens = a_generators(spec, max_w);
    let s1 = envelope::s1_quantum(spec);
    par::map(components, |&idx| {
        let expected: usize = (1..=idx.degree)
            .map(|d| subalgebra_dim(&gens, ComponentIndex::new(d, idx.weight)).dim)
            .sum();
        let mut comp = ad_kernel_quantum(spec, &s1, idx, expected);
        let pairs: Vec<(usize, usize)> = (0..comp.kernel.len())
            .flat_map(|i| (i + 1..comp.kernel.len()).map(move |j| (i, j)))
            .collect();
        comp.report.commuting = Some(
            pairs
                .iter()
                .all(|(i, j)| envelope::commutator(spec, &comp.kernel[*i], &comp.kernel[*j]).is_zero()),
        );
        comp.report.finish();
        comp
    })
}

/// All filtered components `(≤d, w)` with `1 ≤ d ≤ max_degree`, `1 ≤ w ≤ max_weight`.
pub fn filtered_components(max_degree: usize, max_weight: usize) -> Vec<ComponentIndex> {
    (1..=max_degree)
        .flat_map(|d| (1..=max_weight).map(move |w| ComponentIndex::new(d, w)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub index: ComponentIndex,
    pub columns: usize,
    pub dim: usize,
    pub basis: Vec<EnvPoly>,
}

/// Joint kernel of the adjoint action of every basis element on `U_{≤d,w}`.
pub fn invariant_subspace(spec: &LieAlgebraSpec, idx: ComponentIndex) -> InvariantReport {
    let basis = envelope::filtered_basis(spec, idx.degree, idx.weight);
    let elements: Vec<_> = (0..spec.dim() as u16).map(|a| spec.basis_element(a)).collect();
    let images = par::map(&basis, |m| {
        let q = EnvPoly::from_terms(std::iter::once((m.clone(), Rational::one())).collect());
        let mut img: Vec<((u16, Mono<LoopGen>), Rational)> = Vec::new();
        for (a, x) in elements.iter().enumerate() {
            for (mono, c) in envelope::adjoint_action(spec, x, &q).terms() {
                img.push(((a as u16, mono.clone()), c.clone()));
            }
        }
        img
    });
    let (_, rels) = kernel_relations(images);
    let kernel: Vec<EnvPoly> = rels.iter().map(|r| env_from_relation(&basis, r)).collect();
    InvariantReport {
        index: idx,
        columns: basis.len(),
        dim: kernel.len(),
        basis: kernel,
    }
}

/// True when `p` is a nonzero rational multiple of `q`.
pub fn is_multiple_env(p: &EnvPoly, q: &EnvPoly) -> bool {
    let Some((m, c)) = q.terms().next() else { return false };
    let k = p.coeff(m) / c;
    !k.is_zero() && *p == q.scale(&k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeRow {
    pub grade: usize,
    pub dim_a: usize,
    pub rank_pi: usize,
    pub dim_slice: usize,
    pub homogeneous: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub algebra: String,
    pub checks: Vec<Check>,
    pub grades: Vec<GradeRow>,
    pub pass: bool,
}

/// Grade of a slice generator: `depth + (j + 1)` for `f^{j+1}[-depth]`.
pub fn slice_grade(g: SliceGen) -> usize {
    g.depth as usize + g.index as usize + 1
}

/// `dim S(z_g(f)⁻)_g`: items of grade `t` number `#{j < rank-1 : t - j - 1 ≥ 1}`.
pub fn slice_dim(rank: usize, grade: usize) -> usize {
    let mut dp = vec![0usize; grade + 1];
    dp[0] = 1;
    for t in 1..=grade {
        let items = (0..rank - 1).filter(|j| t >= j + 2).count();
        for _ in 0..items {
            for s in t..=grade {
                dp[s] += dp[s - t];
            }
        }
    }
    dp[grade]
}

/// Invariant polynomials `Φ_k ∈ S(g)`: coefficients of `det(u - X)`.
pub fn invariant_polynomials(spec: &LieAlgebraSpec) -> BTreeMap<usize, LieSymbol> {
    loop_sym::classical_generators(spec, 1)
        .into_iter()
        .map(|((k, _), p)| (k, p.substitute(|g: LoopGen| SymPoly::gen(g.label))))
        .collect()
}

/// Exact identities for the principal-slice and Cartan projections.
pub fn verify_projections(spec: &LieAlgebraSpec, max_grade: usize) -> Result<ProjectionReport> {
    let t = PrincipalTriple::new(spec)?;
    let mut checks = Vec::new();
    let s1 = loop_sym::s1_bar(spec);

    let phi = loop_sym::apply_phi_s(spec, &s1, &t);
    checks.push(Check {
        name: "phi_s(S1bar) = S1bar + 2s h[-1] + s^2 <h,h>".into(),
        pass: phi == loop_sym::expected_phi_s_of_s1(spec, &t),
    });
    let gens: Vec<LoopPoly> = (0..spec.dim() as u16)
        .flat_map(|a| (1..=2u16).map(move |m| loop_sym::loop_gen(a, m)))
        .collect();
    let mut phi_ok = true;
    for p in &gens {
        for q in &gens {
            let lhs = loop_sym::apply_phi_s(spec, &loop_sym::poisson_bracket(spec, p, q), &t);
            let (fp, fq) = (loop_sym::apply_phi_s(spec, p, &t), loop_sym::apply_phi_s(spec, q, &t));
            let mut rhs: Vec<LoopPoly> = vec![LoopPoly::zero(); fp.len() + fq.len()];
            for (i, a) in fp.iter().enumerate() {
                for (j, b) in fq.iter().enumerate() {
                    rhs[i + j] = &rhs[i + j] + &loop_sym::poisson_bracket(spec, a, b);
                }
            }
            while rhs.last().is_some_and(|x| x.is_zero()) {
                rhs.pop();
            }
            phi_ok &= lhs == rhs;
        }
    }
    checks.push(Check {
        name: "phi_s preserves brackets of generators (depth <= 2)".into(),
        pass: phi_ok,
    });

    let mut dt_ok = true;
    for a in 0..spec.dim() as u16 {
        for m in 1..=5 {
            let x = loop_sym::loop_gen(a, m);
            dt_ok &= loop_sym::project_pi(spec, &loop_sym::d_t(&x), &t) == loop_sym::d_t(&loop_sym::project_pi(spec, &x, &t));
        }
    }
    checks.push(Check {
        name: "pi d_t = d_t pi on generators (depth <= 5)".into(),
        pass: dt_ok,
    });

    let all_gens = a_generators(spec, max_grade);
    let mut grades = Vec::new();
    for g in 1..=max_grade {
        let mut span = Vec::new();
        for d in 1..=g {
            span.extend(subalgebra_dim(&all_gens, ComponentIndex::new(d, g)).basis);
        }
        let images: Vec<SymPoly<SliceGen>> = span.iter().map(|p| loop_sym::project_pi(spec, p, &t)).collect();
        let homogeneous = images
            .iter()
            .all(|p| p.terms().all(|(m, _)| m.iter().map(|x| slice_grade(*x)).sum::<usize>() == g));
        let mut idx = Indexer::new();
        let mut elim = Eliminator::new(false);
        for p in &images {
            elim.insert(&idx.column(owned_terms(p)));
        }
        let row = GradeRow {
            grade: g,
            dim_a: span.len(),
            rank_pi: elim.rank(),
            dim_slice: slice_dim(spec.rank(), g),
            homogeneous,
            pass: false,
        };
        grades.push(GradeRow {
            pass: row.homogeneous && row.dim_a == row.rank_pi && row.rank_pi == row.dim_slice,
            ..row
        });
    }
    checks.push(Check {
        name: format!("pi maps A isomorphically onto S(z(f)-) in grades <= {max_grade}"),
        pass: grades.iter().all(|r| r.pass),
    });

    let order = 4;
    let mut psi_ok = true;
    let classical = loop_sym::classical_generators(spec, order);
    for (k, phi_k) in invariant_polynomials(spec) {
        let lhs: Vec<LoopPoly> = loop_sym::embed_iz(&phi_k, order)
            .iter()
            .map(|p| loop_sym::project_psi(spec, p))
            .collect();
        let rhs = loop_sym::embed_iz(&loop_sym::restrict_to_cartan(spec, &phi_k), order);
        psi_ok &= lhs == rhs;
        let series = loop_sym::embed_iz(&phi_k, order);
        for n in 1..=order {
            psi_ok &= classical[&(k, n)] == series[n - 1];
        }
    }
    let cas = loop_sym::casimir(spec);
    let lhs: Vec<LoopPoly> = loop_sym::embed_iz(&cas, order).iter().map(|p| loop_sym::project_psi(spec, p)).collect();
    psi_ok &= lhs == loop_sym::embed_iz(&loop_sym::restrict_to_cartan(spec, &cas), order);
    checks.push(Check {
        name: "psi i(z) = i(z) res_h on invariant polynomials (z-order 3)".into(),
        pass: psi_ok,
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(ProjectionReport {
        algebra: spec.id().to_string(),
        checks,
        grades,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{BasisLabel, LieKind};
    use crate::rational::int;

    fn sl2() -> LieAlgebraSpec {
        LieAlgebraSpec::build(LieKind::Sl, 2).unwrap()
    }

    #[test]
    fn s1bar_small_components() {
        let s = sl2();
        let b = loop_sym::s1_bar(&s);
        let c = ad_kernel_classical(&s, &b, ComponentIndex::new(1, 3), 0);
        assert_eq!(c.report.columns, 3);
        assert_eq!(c.report.kernel_dim, 0);
        let c = ad_kernel_classical(&s, &b, ComponentIndex::new(2, 2), 1);
        assert_eq!(c.report.columns, 6);
        assert_eq!(c.report.kernel_dim, 1);
        assert!(loop_sym::poisson_bracket(&s, &c.kernel[0], &b).is_zero());
        assert!(all_in_span(std::slice::from_ref(&b), &c.kernel));
    }

    #[test]
    fn h1_smallest_component() {
        let s = sl2();
        let t = PrincipalTriple::new(&s).unwrap();
        let h = s.index_of(BasisLabel::H(1)).unwrap();
        let c = ad_kernel_classical(&s, &h_minus_one(&t), ComponentIndex::new(1, 2), 1);
        assert_eq!(c.kernel.len(), 1);
        assert!(all_in_span(&[loop_sym::loop_gen(h, 2)], &c.kernel));
    }

    #[test]
    fn subalgebra_dims_sl2() {
        let s = sl2();
        let gens = a_generators(&s, 10);
        assert_eq!(subalgebra_dim(&gens, ComponentIndex::new(2, 3)).dim, 1);
        for w in 3..=10 {
            assert_eq!(subalgebra_dim(&gens, ComponentIndex::new(3, w)).dim, 0);
        }
        assert_eq!(subalgebra_dim(&gens, ComponentIndex::new(4, 4)).dim, 1);
        // oracle: products of two generators of weights (2,4),(3,3) -> 2
        assert_eq!(subalgebra_dim(&gens, ComponentIndex::new(4, 6)).dim, 2);
    }

    #[test]
    fn quantum_small_components() {
        let s = sl2();
        let s1 = envelope::s1_quantum(&s);
        let c = ad_kernel_quantum(&s, &s1, ComponentIndex::new(2, 2), 1);
        assert_eq!(c.report.columns, 9);
        assert_eq!(c.report.kernel_dim, 1);
        assert!(is_multiple_env(&c.kernel[0], &s1));
        let c = ad_kernel_quantum(&s, &s1, ComponentIndex::new(2, 3), 1);
        let ds1 = envelope::d_t_env(&s, &s1);
        let basis = envelope::filtered_basis(&s, 2, 3);
        let mut idx = Indexer::new();
        let mut elim = Eliminator::new(false);
        for k in &c.kernel {
            elim.insert(&idx.column(owned_env_terms(k)));
        }
        let col = idx.lookup(owned_env_terms(&ds1)).expect("monomials in component");
        assert!(elim.contains(&col));
        assert!(ds1.terms().all(|(m, _)| basis.contains(m)));
    }

    #[test]
    fn invariant_examples() {
        let s = sl2();
        let r = invariant_subspace(&s, ComponentIndex::new(2, 2));
        assert_eq!(r.dim, 1);
        assert!(is_multiple_env(&r.basis[0], &envelope::s1_quantum(&s)));
        assert_eq!(invariant_subspace(&s, ComponentIndex::new(1, 1)).dim, 0);
        let g = LieAlgebraSpec::build(LieKind::Gl, 2).unwrap();
        let r = invariant_subspace(&g, ComponentIndex::new(1, 1));
        assert_eq!(r.dim, 1);
        let trace = &EnvPoly::gen(LoopGen::new(g.e(1, 1), 1)) + &EnvPoly::gen(LoopGen::new(g.e(2, 2), 1));
        assert!(is_multiple_env(&r.basis[0], &trace));
    }

    #[test]
    fn slice_dims() {
        // sl₂: partitions of g into parts ≥ 2
        assert_eq!((1..=6).map(|g| slice_dim(2, g)).collect::<Vec<_>>(), vec![0, 1, 1, 2, 2, 4]);
        // sl₃: grade t items f[-(t-1)], f²[-(t-2)]
        assert_eq!(slice_dim(3, 2), 1);
        assert_eq!(slice_dim(3, 3), 2);
    }

    #[test]
    fn pi_of_derivatives_of_s1() {
        let s = sl2();
        let t = PrincipalTriple::new(&s).unwrap();
        let mut p = loop_sym::s1_bar(&s);
        let mut fact = int(1);
        for n in 0..5u16 {
            let expect = SymPoly::monomial(&[SliceGen { depth: n + 1, index: 0 }], int(2) * &fact);
            assert_eq!(loop_sym::project_pi(&s, &p, &t), expect);
            p = loop_sym::d_t(&p);
            fact *= int(-(n as i64 + 1));
        }
    }

    #[test]
    fn projection_identities_sl2_and_sl3() {
        let rep = verify_projections(&sl2(), 6).unwrap();
        assert!(rep.pass, "{rep:?}");
        let sl3 = LieAlgebraSpec::build(LieKind::Sl, 3).unwrap();
        let rep = verify_projections(&sl3, 5).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn sweep_sl2_small() {
        let s = sl2();
        let comps = graded_components(3, 6);
        for c in classical_sweep(&s, ClassicalTarget::S1Bar, &comps).unwrap() {
            assert!(c.report.pass, "{:?}", c.report);
        }
        for c in classical_sweep(&s, ClassicalTarget::H1, &comps).unwrap() {
            assert!(c.report.pass, "{:?}", c.report);
        }
        for c in quantum_sweep(&s, &filtered_components(2, 4)) {
            assert!(c.report.pass, "{:?}", c.report);
        }
    }
}
