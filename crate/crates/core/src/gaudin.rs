//! Specialization of `U(g⁻)` at site points, the quadratic Gaudin
//! Hamiltonians, their defining-representation matrices, and spectra.

use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::envelope::EnvPoly;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraSpec, LieElement};
use crate::linalg::{RatMatrix, UPoly};
use crate::loop_sym::LoopGen;
use crate::par;
use crate::pbw::{self, PbwPoly};
use crate::poly::BracketTable;
use crate::rational::{parse_rational, Rational};
use crate::talalaev::QFamily;

/// Largest representation dimension `r^n` that `rep_matrix` will build.
pub const MAX_REP_DIM: usize = 1024;

/// Nonzero, pairwise distinct rational site points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteConfig {
    points: Vec<Rational>,
}

impl SiteConfig {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSites("no sites".into()));
        }
        if points.iter().any(Zero::is_zero) {
            return Err(Error::InvalidSites("site points must be nonzero".into()));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(Error::InvalidSites(format!("repeated point {a}")));
            }
        }
        Ok(Self { points })
    }

    pub fn from_ints(points: &[i64]) -> Result<Self> {
        Self::new(points.iter().map(|&p| Rational::from_integer(p.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }
}

impl FromStr for SiteConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let pts = s
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }
}

/// `x_label^{(site)}`, site 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SiteGen {
    pub site: u16,
    pub label: u16,
}

/// `U(g)^{⊗n} ≅ U(g^{⊕n})`: brackets within a site, zero across sites.
#[derive(Clone, Copy, Debug)]
pub struct SiteBracket<'a>(pub &'a LieAlgebraSpec);

impl BracketTable for SiteBracket<'_> {
    type G = SiteGen;
    fn bracket(&self, a: SiteGen, b: SiteGen) -> Vec<(SiteGen, Rational)> {
        if a.site != b.site {
            return Vec::new();
        }
        self.0
            .structure(a.label, b.label)
            .iter()
            .map(|(c, v)| (SiteGen { site: a.site, label: *c }, v.clone()))
            .collect()
    }
}

pub type TensorPoly = PbwPoly<SiteGen>;

pub fn product(spec: &LieAlgebraSpec, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    pbw::normal_product(&SiteBracket(spec), a, b)
}

pub fn commutator(spec: &LieAlgebraSpec, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    pbw::commutator(&SiteBracket(spec), a, b)
}

/// `x[-m] ↦ Σ_i z_i^{-m} x^{(i)}`, extended multiplicatively.
pub fn evaluate(spec: &LieAlgebraSpec, u: &EnvPoly, cfg: &SiteConfig) -> TensorPoly {
    let table = SiteBracket(spec);
    let image = |g: LoopGen| -> TensorPoly {
        TensorPoly::linear(cfg.points.iter().enumerate().map(|(i, z)| {
            let w = Rational::one() / z.pow(g.depth as i32);
            (SiteGen { site: i as u16, label: g.label }, w)
        }))
    };
    let terms: Vec<_> = u.terms().collect();
    let parts = par::map(&terms, |(m, c)| {
        let mut memo: FxHashMap<LoopGen, TensorPoly> = FxHashMap::default();
        let mut acc = TensorPoly::constant((*c).clone());
        for g in m.iter() {
            let img = memo.entry(*g).or_insert_with(|| image(*g));
            acc = pbw::normal_product(&table, &acc, img);
        }
        acc
    });
    parts.iter().fold(TensorPoly::zero(), |a, b| &a + b)
}

/// `H_i = Σ_{k≠i} Σ_a x_a^{(i)} x^{a,(k)} / (z_i - z_k)`, with `i` 1-based.
pub fn quadratic_hamiltonian(spec: &LieAlgebraSpec, cfg: &SiteConfig, i: usize) -> Result<TensorPoly> {
    let n = cfg.n();
    if n < 2 {
        return Err(Error::TooFewSites);
    }
    if i == 0 || i > n {
        return Err(Error::SiteIndex { index: i, sites: n });
    }
    let si = i - 1;
    let mut out = TensorPoly::zero();
    for k in (0..n).filter(|&k| k != si) {
        let w = Rational::one() / (&cfg.points[si] - &cfg.points[k]);
        for a in 0..spec.dim() as u16 {
            for (b, c) in spec.dual(a).terms() {
                let word = [SiteGen { site: si as u16, label: a }, SiteGen { site: k as u16, label: b }];
                out = &out + &TensorPoly::from_word(&SiteBracket(spec), &word, c * &w);
            }
        }
    }
    Ok(out)
}

pub fn all_hamiltonians(spec: &LieAlgebraSpec, cfg: &SiteConfig) -> Result<Vec<TensorPoly>> {
    (1..=cfg.n()).map(|i| quadratic_hamiltonian(spec, cfg, i)).collect()
}

/// `Δ(x) = Σ_i x^{(i)}`.
pub fn delta(x: &LieElement, sites: usize) -> TensorPoly {
    TensorPoly::linear(
        (0..sites).flat_map(|i| x.terms().map(move |(a, c)| (SiteGen { site: i as u16, label: a }, c.clone()))),
    )
}

/// Image in `End((C^r)^{⊗n})` with the defining representation at each site.
pub fn rep_matrix(spec: &LieAlgebraSpec, t: &TensorPoly, sites: usize) -> Result<RatMatrix> {
    let r = spec.rank();
    let dim = (r as u128).checked_pow(sites as u32).unwrap_or(u128::MAX);
    if dim > MAX_REP_DIM as u128 {
        return Err(Error::SizeOverflow(dim.min(usize::MAX as u128) as usize, MAX_REP_DIM));
    }
    let dim = dim as usize;
    if let Some(g) = t.terms().flat_map(|(m, _)| m.iter()).find(|g| g.site as usize >= sites) {
        return Err(Error::SiteIndex {
            index: g.site as usize + 1,
            sites,
        });
    }
    let mut memo: FxHashMap<SiteGen, RatMatrix> = FxHashMap::default();
    let mut gen_matrix = |g: SiteGen| -> RatMatrix {
        memo.entry(g)
            .or_insert_with(|| {
                let mut m = RatMatrix::identity(1);
                for s in 0..sites {
                    let f = if s == g.site as usize {
                        spec.matrix(g.label).clone()
                    } else {
                        RatMatrix::identity(r)
                    };
                    m = m.kron(&f);
                }
                m
            })
            .clone()
    };
    let mut out = RatMatrix::zeros(dim, dim);
    for (m, c) in t.sorted_terms() {
        let mut acc = RatMatrix::identity(dim).scale(c);
        for g in m.iter() {
            acc = &acc * &gen_matrix(*g);
        }
        out = &out + &acc;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenValue {
    Exact { num: String, den: String, float: f64 },
    Approx { re: f64, im: f64 },
}

impl EigenValue {
    fn exact(q: &Rational) -> Self {
        EigenValue::Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
            float: crate::rational::to_f64(q),
        }
    }

    fn approx(z: Complex64) -> Self {
        let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
        EigenValue::Approx {
            re: clean(z.re),
            im: clean(z.im),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            EigenValue::Exact { num, den, .. } => Some(Rational::new(num.parse().ok()?, den.parse().ok()?)),
            EigenValue::Approx { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenEntry {
    pub value: EigenValue,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Coefficients of `det(x·I - M)`, low degree first, as `p/q` strings.
    pub charpoly: Vec<String>,
    pub eigenvalues: Vec<EigenEntry>,
    pub all_rational: bool,
    /// Minimal polynomial is squarefree.
    pub diagonalizable: bool,
}

pub fn spectrum(m: &RatMatrix) -> SpectrumReport {
    let cp = UPoly::charpoly(m);
    let mut eigenvalues = Vec::new();
    let mut all_rational = true;
    let mut radical = UPoly::constant(Rational::one());
    for (f, mult) in cp.squarefree() {
        radical = radical.mul(&f);
        let roots = f.rational_roots();
        let mut rest = f.clone();
        if let Some(roots) = &roots {
            for q in roots {
                eigenvalues.push(EigenEntry {
                    value: EigenValue::exact(q),
                    multiplicity: mult,
                });
                rest = rest.div_rem(&UPoly::linear_root(q)).0;
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            all_rational = false;
            for z in rest.numeric_roots() {
                eigenvalues.push(EigenEntry {
                    value: EigenValue::approx(z),
                    multiplicity: mult,
                });
            }
        }
    }
    eigenvalues.sort_by(|a, b| {
        let key = |e: &EigenEntry| match &e.value {
            EigenValue::Exact { float, .. } => (0, *float, 0.0),
            EigenValue::Approx { re, im } => (1, *re, *im),
        };
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    SpectrumReport {
        charpoly: cp.coeffs().iter().map(crate::rational::fmt_rational).collect(),
        eigenvalues,
        all_rational,
        diagonalizable: radical.eval_matrix(m).is_zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointReport {
    pub commuting: bool,
    pub each_diagonalizable: bool,
    pub all_rational: bool,
    /// Dimensions of the common eigenspaces when all eigenvalues are rational.
    pub common_eigenspaces: Option<Vec<(Vec<String>, usize)>>,
    pub jointly_diagonalizable: bool,
}

/// Common-eigenbasis check for a family of matrices.
pub fn joint_diagonalization(ms: &[RatMatrix]) -> JointReport {
    let n = ms.first().map_or(0, RatMatrix::rows);
    let commuting = ms
        .iter()
        .enumerate()
        .all(|(i, a)| ms[i + 1..].iter().all(|b| a.commutator(b).is_zero()));
    let specs: Vec<SpectrumReport> = ms.iter().map(spectrum).collect();
    let each_diagonalizable = specs.iter().all(|s| s.diagonalizable);
    let all_rational = specs.iter().all(|s| s.all_rational);
    let mut common = None;
    if commuting && all_rational {
        let mut spaces: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> = vec![(Vec::new(), identity_columns(n))];
        for (m, sp) in ms.iter().zip(&specs) {
            let mut next = Vec::new();
            for (tag, basis) in &spaces {
                for e in &sp.eigenvalues {
                    let lambda = e.value.as_rational().expect("rational spectrum");
                    let shifted = m - &RatMatrix::identity(n).scale(&lambda);
                    let images: Vec<Vec<Rational>> = basis.iter().map(|v| shifted.mul_vec(v)).collect();
                    let b = columns_matrix(n, &images);
                    let kernel = b.kernel();
                    if kernel.is_empty() {
                        continue;
                    }
                    let vecs: Vec<Vec<Rational>> = kernel
                        .iter()
                        .map(|c| {
                            (0..n)
                                .map(|row| c.iter().zip(basis).map(|(ci, v)| ci * &v[row]).sum())
                                .collect()
                        })
                        .collect();
                    let mut t = tag.clone();
                    t.push(lambda);
                    next.push((t, vecs));
                }
            }
            spaces = next;
        }
        common = Some(
            spaces
                .into_iter()
                .map(|(t, b)| (t.iter().map(crate::rational::fmt_rational).collect(), b.len()))
                .collect::<Vec<_>>(),
        );
    }
    let jointly_diagonalizable = commuting
        && each_diagonalizable
        && common
            .as_ref()
            .is_none_or(|c: &Vec<(Vec<String>, usize)>| c.iter().map(|x| x.1).sum::<usize>() == n);
    JointReport {
        commuting,
        each_diagonalizable,
        all_rational,
        common_eigenspaces: common,
        jointly_diagonalizable,
    }
}

fn identity_columns(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn columns_matrix(rows: usize, cols: &[Vec<Rational>]) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// Symbolic checks on the commuting family at `cfg`: pairwise `[H_i, H_j] = 0`,
/// `Σ H_i = 0`, `[H_i, Δ(x)] = 0`, and, when given, `[ev(Q_{n,k}), H_i] = 0`.
pub fn commute_checks(
    spec: &LieAlgebraSpec,
    cfg: &SiteConfig,
    q: Option<(&QFamily, usize)>,
) -> Result<Vec<Check>> {
    let hs = all_hamiltonians(spec, cfg)?;
    let mut checks = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            pairs.push((i, j));
        }
    }
    for ((i, j), zero) in pairs
        .iter()
        .zip(par::map(&pairs, |(i, j)| commutator(spec, &hs[*i], &hs[*j]).is_zero()))
    {
        checks.push(Check {
            name: format!("[H{}, H{}] = 0", i + 1, j + 1),
            pass: zero,
        });
    }
    let sum = hs.iter().fold(TensorPoly::zero(), |a, b| &a + b);
    checks.push(Check {
        name: "sum of H_i = 0".into(),
        pass: sum.is_zero(),
    });
    for a in 0..spec.dim() as u16 {
        let d = delta(&spec.basis_element(a), cfg.n());
        let ok = hs.iter().all(|h| commutator(spec, h, &d).is_zero());
        checks.push(Check {
            name: format!("[H_i, Delta({})] = 0", spec.label(a)),
            pass: ok,
        });
    }
    if let Some((q, max_n)) = q {
        let keys: Vec<(usize, usize)> = q.keys().into_iter().filter(|(n, _)| *n <= max_n).collect();
        let results = par::map(&keys, |(n, k)| {
            let ev = evaluate(spec, q.get(*n, *k), cfg);
            hs.iter().all(|h| commutator(spec, &ev, h).is_zero())
        });
        for ((n, k), ok) in keys.into_iter().zip(results) {
            checks.push(Check {
                name: format!("[ev(Q_{n},{k}), H_i] = 0"),
                pass: ok,
            });
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope;
    use crate::lie::LieKind;
    use crate::rational::{int, rat};
    use crate::talalaev::compute_q;

    fn gl2() -> LieAlgebraSpec {
        LieAlgebraSpec::build(LieKind::Gl, 2).unwrap()
    }

    fn sg(site: u16, label: u16) -> SiteGen {
        SiteGen { site, label }
    }

    #[test]
    fn site_config_validation() {
        assert!("1,2,4".parse::<SiteConfig>().is_ok());
        assert!("1/2,-3".parse::<SiteConfig>().is_ok());
        assert!(matches!("0,1".parse::<SiteConfig>(), Err(Error::InvalidSites(_))));
        assert!(matches!("1,1".parse::<SiteConfig>(), Err(Error::InvalidSites(_))));
        assert!("1,x".parse::<SiteConfig>().is_err());
    }

    #[test]
    fn evaluate_generator() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2]).unwrap();
        let e12 = s.e(1, 2);
        let got = evaluate(&s, &EnvPoly::gen(LoopGen::new(e12, 1)), &cfg);
        let expect = TensorPoly::linear([(sg(0, e12), int(1)), (sg(1, e12), rat(1, 2))]);
        assert_eq!(got, expect);
    }

    #[test]
    fn evaluate_is_homomorphism_on_pairs() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2]).unwrap();
        let gens: Vec<EnvPoly> = (0..4u16)
            .flat_map(|a| (1..=2u16).map(move |m| EnvPoly::gen(LoopGen::new(a, m))))
            .collect();
        for u in &gens {
            for v in &gens {
                let lhs = evaluate(&s, &envelope::commutator(&s, u, v), &cfg);
                let rhs = commutator(&s, &evaluate(&s, u, &cfg), &evaluate(&s, v, &cfg));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn two_site_hamiltonian() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2]).unwrap();
        let h1 = quadratic_hamiltonian(&s, &cfg, 1).unwrap();
        let h2 = quadratic_hamiltonian(&s, &cfg, 2).unwrap();
        let mut expect = TensorPoly::zero();
        for i in 1..=2 {
            for j in 1..=2 {
                expect = &expect - &TensorPoly::from_word(&SiteBracket(&s), &[sg(0, s.e(i, j)), sg(1, s.e(j, i))], int(1));
            }
        }
        assert_eq!(h1, expect);
        assert_eq!(h2, -&h1);
        assert!(matches!(
            quadratic_hamiltonian(&s, &SiteConfig::from_ints(&[1]).unwrap(), 1),
            Err(Error::TooFewSites)
        ));
        assert!(matches!(quadratic_hamiltonian(&s, &cfg, 3), Err(Error::SiteIndex { .. })));
    }

    #[test]
    fn three_sites_sum_to_zero() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2, 4]).unwrap();
        let hs = all_hamiltonians(&s, &cfg).unwrap();
        assert!(hs.iter().fold(TensorPoly::zero(), |a, b| &a + b).is_zero());
    }

    #[test]
    fn rep_matrix_examples() {
        let s = gl2();
        let e12 = TensorPoly::gen(sg(0, s.e(1, 2)));
        assert_eq!(rep_matrix(&s, &e12, 1).unwrap(), RatMatrix::unit(2, 0, 1));
        let mut cas = TensorPoly::zero();
        for i in 1..=2 {
            for j in 1..=2 {
                cas = &cas + &TensorPoly::from_word(&SiteBracket(&s), &[sg(0, s.e(i, j)), sg(0, s.e(j, i))], int(1));
            }
        }
        assert_eq!(rep_matrix(&s, &cas, 1).unwrap(), RatMatrix::identity(2).scale(&int(2)));
        assert!(matches!(rep_matrix(&s, &e12, 11), Err(Error::SizeOverflow(..))));
    }

    #[test]
    fn rep_is_multiplicative_on_hamiltonians() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2, 4]).unwrap();
        let hs = all_hamiltonians(&s, &cfg).unwrap();
        let ms: Vec<_> = hs.iter().map(|h| rep_matrix(&s, h, 3).unwrap()).collect();
        let prod = product(&s, &hs[0], &hs[1]);
        assert_eq!(rep_matrix(&s, &prod, 3).unwrap(), &ms[0] * &ms[1]);
        assert_eq!(&ms[0] * &ms[1], &ms[1] * &ms[0]);
    }

    #[test]
    fn spectrum_of_scalar() {
        let rep = spectrum(&RatMatrix::identity(4).scale(&int(2)));
        assert_eq!(rep.eigenvalues.len(), 1);
        assert_eq!(rep.eigenvalues[0].value.as_rational(), Some(int(2)));
        assert_eq!(rep.eigenvalues[0].multiplicity, 4);
        assert!(rep.diagonalizable);
    }

    fn two_site_spectrum(kind: LieKind) -> Vec<(Rational, usize)> {
        let s = LieAlgebraSpec::build(kind, 2).unwrap();
        let cfg = SiteConfig::from_ints(&[1, 2]).unwrap();
        let h1 = quadratic_hamiltonian(&s, &cfg, 1).unwrap();
        let m = rep_matrix(&s, &h1, 2).unwrap();
        spectrum(&m)
            .eigenvalues
            .iter()
            .map(|e| (e.value.as_rational().unwrap(), e.multiplicity))
            .collect()
    }

    #[test]
    fn two_site_spectra() {
        // oracle: Σ E_ij ⊗ E_ji is the flip P (eigenvalues 1 ×3, -1 ×1); the sl₂
        // split Casimir is P - 1/2.
        assert_eq!(two_site_spectrum(LieKind::Gl), vec![(int(-1), 3), (int(1), 1)]);
        assert_eq!(two_site_spectrum(LieKind::Sl), vec![(rat(-1, 2), 3), (rat(3, 2), 1)]);
    }

    #[test]
    fn three_site_joint_diagonalization() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2, 4]).unwrap();
        let ms: Vec<_> = all_hamiltonians(&s, &cfg)
            .unwrap()
            .iter()
            .map(|h| rep_matrix(&s, h, 3).unwrap())
            .collect();
        let rep = joint_diagonalization(&ms);
        assert!(rep.commuting);
        assert!(rep.jointly_diagonalizable, "{rep:?}");
    }

    #[test]
    fn non_diagonalizable_is_detected() {
        let j = RatMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        let rep = joint_diagonalization(&[j]);
        assert!(!rep.jointly_diagonalizable);
        let rot = RatMatrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let sp = spectrum(&rot);
        assert!(!sp.all_rational);
        assert_eq!(sp.eigenvalues.len(), 2);
    }

    #[test]
    fn q_images_commute_two_sites() {
        let s = gl2();
        let cfg = SiteConfig::from_ints(&[1, 2]).unwrap();
        let q = compute_q(&s, 2).unwrap();
        let a = evaluate(&s, q.get(2, 2), &cfg);
        let b = evaluate(&s, q.get(1, 2), &cfg);
        assert!(commutator(&s, &a, &b).is_zero());
        let checks = commute_checks(&s, &cfg, Some((&q, 2))).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
