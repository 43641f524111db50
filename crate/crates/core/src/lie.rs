//! Finite-dimensional Lie algebras `gl_r` and `sl_r`.
//!
//! Basis order is lexicographic on matrix-unit indices `(i, j)`. For `sl_r`
//! the diagonal slot `(i, i)`, `i < r`, holds the simple coroot
//! `H[i] = E[i,i] - E[i+1,i+1]` and the slot `(r, r)` is skipped.
//! The invariant form is the trace form `⟨x, y⟩ = Tr(xy)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{fmt_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LieKind {
    Gl,
    Sl,
}

impl LieKind {
    pub fn name(self) -> &'static str {
        match self {
            LieKind::Gl => "gl",
            LieKind::Sl => "sl",
        }
    }
}

/// Identifies an algebra by kind and rank, e.g. `sl2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraId {
    pub kind: LieKind,
    pub rank: usize,
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.name(), self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (kind, rest) = if let Some(r) = s.strip_prefix("gl") {
            (LieKind::Gl, r)
        } else if let Some(r) = s.strip_prefix("sl") {
            (LieKind::Sl, r)
        } else {
            return Err(Error::Parse(format!("unknown algebra {s:?}")));
        };
        let rank = rest
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        Ok(AlgebraId { kind, rank })
    }
}

/// Basis label with 1-based matrix indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    E(usize, usize),
    H(usize),
}

impl BasisLabel {
    /// Matrix-index pair used for ordering and JSON (`H[i]` maps to `(i, i)`).
    pub fn indices(self) -> (usize, usize) {
        match self {
            BasisLabel::E(i, j) => (i, j),
            BasisLabel::H(i) => (i, i),
        }
    }

    pub fn is_diagonal(self) -> bool {
        let (i, j) = self.indices();
        i == j
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::E(i, j) => write!(f, "E[{i},{j}]"),
            BasisLabel::H(i) => write!(f, "H[{i}]"),
        }
    }
}

/// Element of `g` in sparse coordinates on the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    algebra: AlgebraId,
    coeffs: BTreeMap<u16, Rational>,
}

impl LieElement {
    pub fn zero(algebra: AlgebraId) -> Self {
        Self {
            algebra,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(algebra: AlgebraId, coeffs: impl IntoIterator<Item = (u16, Rational)>) -> Self {
        let mut out = Self::zero(algebra);
        for (a, c) in coeffs {
            out.add_term(a, &c);
        }
        out
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn add_term(&mut self, label: u16, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(label).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&label);
        }
    }

    pub fn coeff(&self, label: u16) -> Rational {
        self.coeffs.get(&label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &Rational)> {
        self.coeffs.iter().map(|(a, c)| (*a, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.algebra, self.coeffs.iter().map(|(a, v)| (*a, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn to_text(&self, spec: &LieAlgebraSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(a, c)| format!("{} * {}", fmt_rational(c), spec.label(a)))
            .collect();
        parts.join(" + ")
    }
}

/// Structure constants, trace form and matrix realisation of `gl_r` or `sl_r`.
#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    id: AlgebraId,
    labels: Vec<BasisLabel>,
    matrices: Vec<RatMatrix>,
    structure: Vec<Vec<Vec<(u16, Rational)>>>,
    form: RatMatrix,
    dual: Vec<LieElement>,
}

impl LieAlgebraSpec {
    pub fn build(kind: LieKind, rank: usize) -> Result<Self> {
        if rank == 0 || (kind == LieKind::Sl && rank < 2) || rank > 16 {
            return Err(Error::InvalidRank {
                kind: kind.name(),
                rank,
            });
        }
        let id = AlgebraId { kind, rank };
        let mut labels = Vec::new();
        let mut matrices = Vec::new();
        for i in 1..=rank {
            for j in 1..=rank {
                match (kind, i == j) {
                    (LieKind::Gl, _) | (LieKind::Sl, false) => {
                        labels.push(BasisLabel::E(i, j));
                        matrices.push(RatMatrix::unit(rank, i - 1, j - 1));
                    }
                    (LieKind::Sl, true) if i < rank => {
                        labels.push(BasisLabel::H(i));
                        let mut m = RatMatrix::unit(rank, i - 1, i - 1);
                        m.set(i, i, -Rational::one());
                        matrices.push(m);
                    }
                    _ => {}
                }
            }
        }
        let dim = labels.len();
        let mut spec = LieAlgebraSpec {
            id,
            labels,
            matrices,
            structure: Vec::new(),
            form: RatMatrix::zeros(dim, dim),
            dual: Vec::new(),
        };
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let m = spec.matrices[a].commutator(&spec.matrices[b]);
                let el = spec.element_from_matrix(&m)?;
                structure[a][b] = el.terms().map(|(c, v)| (c, v.clone())).collect();
                let t = (&spec.matrices[a] * &spec.matrices[b]).trace();
                spec.form.set(a, b, t);
            }
        }
        spec.structure = structure;
        let inv = spec.form.inverse().ok_or(Error::DegenerateForm)?;
        spec.dual = (0..dim)
            .map(|a| LieElement::from_coeffs(id, (0..dim).map(|b| (b as u16, inv.get(b, a).clone()))))
            .collect();
        spec.verify()?;
        Ok(spec)
    }

    pub fn from_id(id: AlgebraId) -> Result<Self> {
        Self::build(id.kind, id.rank)
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn kind(&self) -> LieKind {
        self.id.kind
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: u16) -> BasisLabel {
        self.labels[a as usize]
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<u16> {
        self.labels.iter().position(|l| *l == label).map(|p| p as u16)
    }

    /// Index of the matrix unit `E[i,j]` (gl) or off-diagonal unit (sl).
    pub fn e(&self, i: usize, j: usize) -> u16 {
        self.index_of(BasisLabel::E(i, j))
            .unwrap_or_else(|| panic!("E[{i},{j}] is not a basis element of {}", self.id))
    }

    pub fn matrix(&self, a: u16) -> &RatMatrix {
        &self.matrices[a as usize]
    }

    /// `[x_a, x_b]` as a list of `(label, coefficient)`.
    pub fn structure(&self, a: u16, b: u16) -> &[(u16, Rational)] {
        &self.structure[a as usize][b as usize]
    }

    /// Largest number of terms in any basis bracket.
    pub fn max_bracket_terms(&self) -> usize {
        self.structure.iter().flatten().map(Vec::len).max().unwrap_or(0)
    }

    pub fn form(&self, a: u16, b: u16) -> &Rational {
        self.form.get(a as usize, b as usize)
    }

    pub fn form_matrix(&self) -> &RatMatrix {
        &self.form
    }

    /// Labels of the diagonal Cartan subalgebra.
    pub fn cartan_labels(&self) -> Vec<u16> {
        (0..self.dim() as u16).filter(|&a| self.label(a).is_diagonal()).collect()
    }

    pub fn is_cartan(&self, a: u16) -> bool {
        self.label(a).is_diagonal()
    }

    pub fn basis_element(&self, a: u16) -> LieElement {
        LieElement::from_coeffs(self.id, [(a, Rational::one())])
    }

    pub fn element_from_matrix(&self, m: &RatMatrix) -> Result<LieElement> {
        let r = self.rank();
        let mut out = LieElement::zero(self.id);
        for i in 0..r {
            for j in 0..r {
                if i != j && !m.get(i, j).is_zero() {
                    out.add_term(self.e(i + 1, j + 1), m.get(i, j));
                }
            }
        }
        match self.kind() {
            LieKind::Gl => {
                for i in 0..r {
                    out.add_term(self.e(i + 1, i + 1), m.get(i, i));
                }
            }
            LieKind::Sl => {
                if !m.trace().is_zero() {
                    return Err(Error::NotInAlgebra("nonzero trace in sl".into()));
                }
                let mut partial = Rational::zero();
                for i in 0..r - 1 {
                    partial += m.get(i, i);
                    let h = self.index_of(BasisLabel::H(i + 1)).unwrap();
                    out.add_term(h, &partial);
                }
            }
        }
        Ok(out)
    }

    pub fn matrix_of(&self, x: &LieElement) -> RatMatrix {
        let r = self.rank();
        let mut m = RatMatrix::zeros(r, r);
        for (a, c) in x.terms() {
            m = &m + &self.matrix(a).scale(c);
        }
        m
    }

    fn check(&self, x: &LieElement) -> Result<()> {
        if x.algebra() != self.id {
            return Err(Error::MismatchedSpec(x.algebra().to_string(), self.id.to_string()));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = LieElement::zero(self.id);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let cab = ca * cb;
                for (c, v) in self.structure(a, b) {
                    out.add_term(*c, &(&cab * v));
                }
            }
        }
        Ok(out)
    }

    pub fn pairing(&self, x: &LieElement, y: &LieElement) -> Rational {
        let mut acc = Rational::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                acc += ca * cb * self.form(a, b);
            }
        }
        acc
    }

    /// `x^a`, the dual of basis element `a` under the trace form.
    pub fn dual(&self, a: u16) -> &LieElement {
        &self.dual[a as usize]
    }

    /// Pairs `(x_a, x^a)` with `⟨x_a, x^b⟩ = δ_ab`.
    pub fn dual_basis(&self) -> Vec<(LieElement, LieElement)> {
        (0..self.dim() as u16)
            .map(|a| (self.basis_element(a), self.dual(a).clone()))
            .collect()
    }

    /// Antisymmetry, Jacobi identity, ad-invariance of the form.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim() as u16;
        let el = |v: &[(u16, Rational)]| LieElement::from_coeffs(self.id, v.iter().cloned());
        for a in 0..n {
            for b in 0..n {
                let ab = el(self.structure(a, b));
                let ba = el(self.structure(b, a));
                if !ab.add(&ba).is_zero() {
                    return Err(Error::Invariant(format!("antisymmetry fails at ({a},{b})")));
                }
                for c in 0..n {
                    let xc = self.basis_element(c);
                    let xa = self.basis_element(a);
                    let xb = self.basis_element(b);
                    let j = self
                        .bracket(&xa, &self.bracket(&xb, &xc)?)?
                        .add(&self.bracket(&xb, &self.bracket(&xc, &xa)?)?)
                        .add(&self.bracket(&xc, &self.bracket(&xa, &xb)?)?);
                    if !j.is_zero() {
                        return Err(Error::Invariant(format!("Jacobi fails at ({a},{b},{c})")));
                    }
                    let inv = self.pairing(&ab, &xc) + self.pairing(&xb, &self.bracket(&xa, &xc)?);
                    if !inv.is_zero() {
                        return Err(Error::Invariant(format!("form not invariant at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Principal sl₂-triple of `sl_r` together with the slice data used by the
/// projection onto `S(z_g(f)⁻)`.
#[derive(Clone, Debug)]
pub struct PrincipalTriple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
    /// `f, f², …, f^{r-1}`: a basis of the centralizer of `f`.
    pub zf_basis: Vec<LieElement>,
    /// ad_h-eigenvector basis elements completing `zf_basis`.
    pub v_basis: Vec<LieElement>,
    pub cartan_basis: Vec<LieElement>,
    /// Row `a`: coordinates of basis element `a` on `zf_basis ++ v_basis`.
    decomposition: Vec<Vec<Rational>>,
}

impl PrincipalTriple {
    pub fn new(spec: &LieAlgebraSpec) -> Result<Self> {
        if spec.kind() != LieKind::Sl {
            return Err(Error::WrongKind {
                expected: "sl",
                found: spec.kind().name(),
            });
        }
        let r = spec.rank();
        let n = RatMatrix::zeros(r, r);
        let (mut me, mut mh, mut mf) = (n.clone(), n.clone(), n);
        for i in 0..r {
            mh.set(i, i, Rational::from_integer(BigInt::from(r as i64 - 1 - 2 * i as i64)));
            if i + 1 < r {
                me.set(i, i + 1, Rational::one());
                let w = (i + 1) * (r - i - 1);
                mf.set(i + 1, i, Rational::from_integer(BigInt::from(w)));
            }
        }
        let e = spec.element_from_matrix(&me)?;
        let h = spec.element_from_matrix(&mh)?;
        let f = spec.element_from_matrix(&mf)?;
        let mut zf_basis = Vec::new();
        let mut power = mf.clone();
        for _ in 1..r {
            zf_basis.push(spec.element_from_matrix(&power)?);
            power = &power * &mf;
        }
        let dim = spec.dim();
        let coords = |x: &LieElement| -> Vec<Rational> { (0..dim as u16).map(|a| x.coeff(a)).collect() };
        let mut chosen: Vec<Vec<Rational>> = zf_basis.iter().map(coords).collect();
        let mut v_basis = Vec::new();
        for a in 0..dim as u16 {
            let x = spec.basis_element(a);
            let mut trial = chosen.clone();
            trial.push(coords(&x));
            if RatMatrix::from_rows(trial.clone()).rank() == trial.len() {
                chosen = trial;
                v_basis.push(x);
            }
        }
        // columns of `basis` are the chosen vectors
        let basis = RatMatrix::from_rows(chosen).transpose();
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Invariant("zf ∪ v is not a basis".into()))?;
        let decomposition = (0..dim).map(|a| inv.column(a)).collect();
        let cartan_basis = spec.cartan_labels().into_iter().map(|a| spec.basis_element(a)).collect();
        let triple = PrincipalTriple {
            e,
            h,
            f,
            zf_basis,
            v_basis,
            cartan_basis,
            decomposition,
        };
        triple.verify(spec)?;
        Ok(triple)
    }

    /// The sl₂ relations, `[zf, f] = 0`, full rank and h-invariance of `V`.
    pub fn verify(&self, spec: &LieAlgebraSpec) -> Result<()> {
        let two = Rational::from_integer(BigInt::from(2));
        let fail = |m: &str| Err(Error::Invariant(m.to_string()));
        if spec.bracket(&self.e, &self.f)? != self.h {
            return fail("[e,f] != h");
        }
        if spec.bracket(&self.h, &self.e)? != self.e.scale(&two) {
            return fail("[h,e] != 2e");
        }
        if spec.bracket(&self.h, &self.f)? != self.f.scale(&-two) {
            return fail("[h,f] != -2f");
        }
        for z in &self.zf_basis {
            if !spec.bracket(z, &self.f)?.is_zero() {
                return fail("zf element does not commute with f");
            }
        }
        if self.zf_basis.len() + self.v_basis.len() != spec.dim() {
            return fail("zf ∪ v does not have full rank");
        }
        for v in &self.v_basis {
            let hv = spec.bracket(&self.h, v)?;
            let (a, c) = v.terms().next().unwrap();
            let lambda = hv.coeff(a) / c;
            if hv != v.scale(&lambda) {
                return fail("v element is not an ad_h eigenvector");
            }
        }
        Ok(())
    }

    /// Coordinates of basis element `a` on `zf_basis` (first `r-1`) then `v_basis`.
    pub fn decompose(&self, a: u16) -> &[Rational] {
        &self.decomposition[a as usize]
    }

    /// ad_h eigenvalue of a basis element (all basis elements are eigenvectors).
    pub fn h_weight(&self, spec: &LieAlgebraSpec, a: u16) -> Rational {
        spec.bracket(&self.h, &spec.basis_element(a)).map(|x| x.coeff(a)).unwrap_or_default()
    }
}
