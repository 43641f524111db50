use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RatMatrix;
use crate::rational::{fmt_rational, to_f64, Rational};

/// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + Complex64::new(to_f64(c), 0.0))
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = &(&acc * m) + &RatMatrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let lead = d.lead();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition (Yun): monic factors `f_i` with
    /// `self = c · Π f_i^{m_i}`.
    pub fn squarefree(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Rational roots (without multiplicity) by the rational root theorem.
    /// Returns `None` when the integer coefficients are too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return Some(roots);
        }
        let mut p = self.clone();
        if p.0[0].is_zero() {
            roots.push(Rational::zero());
            let first = p.0.iter().position(|c| !c.is_zero()).unwrap();
            p = Self::new(p.0[first..].to_vec());
        }
        if p.degree() == Some(0) {
            return Some(roots);
        }
        let mut l = BigInt::one();
        for c in &p.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let a0 = ints[0].abs().to_u64()?;
        let an = ints.last().unwrap().abs().to_u64()?;
        const LIMIT: u64 = 1 << 40;
        if a0 > LIMIT || an > LIMIT {
            return None;
        }
        let mut cand = Vec::new();
        for num in divisors(a0) {
            for den in divisors(an) {
                let q = Rational::new(BigInt::from(num), BigInt::from(den));
                cand.push(q.clone());
                cand.push(-q);
            }
        }
        cand.sort();
        cand.dedup();
        for q in cand {
            if p.eval(&q).is_zero() {
                roots.push(q);
            }
        }
        roots.sort();
        Some(roots)
    }

    /// All complex roots of a squarefree polynomial (Durand–Kerner).
    pub fn numeric_roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else { return Vec::new() };
        if n == 0 {
            return Vec::new();
        }
        let m = self.monic();
        let radius = 1.0
            + m.0[..n]
                .iter()
                .map(|c| to_f64(c).abs())
                .fold(0.0f64, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (radius / 2.0)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = m.eval_complex(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 * radius {
                break;
            }
        }
        z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        z
    }

    /// Characteristic polynomial `det(x·I - m)` by Berkowitz's division-free algorithm.
    pub fn charpoly(m: &RatMatrix) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        // coefficients from highest degree down
        let mut v: Vec<Rational> = vec![Rational::one()];
        for r in 0..n {
            let a = m.get(r, r).clone();
            // column C = m[0..r, r], row R = m[r, 0..r]
            let mut col: Vec<Rational> = (0..r).map(|i| m.get(i, r).clone()).collect();
            let row: Vec<Rational> = (0..r).map(|j| m.get(r, j).clone()).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(Rational::one());
            t.push(-a);
            for _ in 0..r {
                let rc: Rational = row.iter().zip(&col).map(|(x, y)| x * y).sum();
                t.push(-rc);
                col = (0..r)
                    .map(|i| (0..r).map(|j| m.get(i, j) * &col[j]).sum())
                    .collect();
            }
            // lower-triangular Toeplitz (r+2)x(r+1) times v (length r+1)
            let mut nv = vec![Rational::zero(); r + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot += &t[i - j] * vj;
                    }
                }
            }
            v = nv;
        }
        v.reverse();
        Self::new(v)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_rational(c),
                1 => format!("{}*x", fmt_rational(c)),
                _ => format!("{}*x^{}", fmt_rational(c), i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    fn det_brute(m: &RatMatrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = RatMatrix::from_rows(
                (1..n)
                    .map(|i| (0..n).filter(|&k| k != j).map(|k| m.get(i, k).clone()).collect())
                    .collect(),
            );
            let s = if j % 2 == 0 { int(1) } else { int(-1) };
            acc += s * m.get(0, j) * det_brute(&minor);
        }
        acc
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        let m = RatMatrix::from_rows(vec![
            vec![int(2), int(-1), rat(1, 2), int(0)],
            vec![int(1), int(3), int(0), int(4)],
            vec![int(0), int(5), int(-2), int(1)],
            vec![rat(3, 2), int(0), int(1), int(1)],
        ]);
        let cp = UPoly::charpoly(&m);
        assert_eq!(cp.degree(), Some(4));
        for x in [-3i64, 0, 1, 2, 7] {
            let shifted = &RatMatrix::identity(4).scale(&int(x)) - &m;
            assert_eq!(cp.eval(&int(x)), det_brute(&shifted));
        }
        // Cayley–Hamilton
        assert!(cp.eval_matrix(&m).is_zero());
    }

    #[test]
    fn squarefree_and_roots() {
        // (x-1)^3 (x+2) (x^2 - 2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).mul(&p(&[-2, 0, 1]));
        let sf = f.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (p(&[2, 1]).mul(&p(&[-2, 0, 1])).monic(), 1));
        assert_eq!(sf[1], (p(&[-1, 1]), 3));
        assert_eq!(sf[0].0.rational_roots().unwrap(), vec![int(-2)]);
        let roots = p(&[-2, 0, 1]).numeric_roots();
        assert!((roots[0].re + 2f64.sqrt()).abs() < 1e-12);
        assert!((roots[1].re - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_roots_detected() {
        assert_eq!(p(&[0, 0, 1, 1]).rational_roots().unwrap(), vec![int(-1), int(0)]);
    }
}
