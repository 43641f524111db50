//! Text and JSON forms.
//!
//! Text: `3/2 * E[1,2][-1]*H[1][-3] + -1 * E[2,1][-2]`, monomials in canonical
//! order, factors in normal order.
//!
//! JSON: a list of `{"mon": [[i, j, m], …], "num": n, "den": d}`. A factor
//! `[i, j, m]` is `E[i,j][-m]`; for `sl_r` the diagonal triple `[i, i, m]`
//! stands for `H[i][-m]`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::envelope::EnvPoly;
use crate::error::{Error, Result};
use crate::gaudin::{SiteGen, TensorPoly};
use crate::lie::{BasisLabel, LieAlgebraSpec};
use crate::loop_sym::{LoopGen, LoopPoly};
use crate::poly::Mono;
use crate::rational::{bigint_json, fmt_rational, Rational};
use crate::talalaev::QFamily;

pub fn loop_gen_text(spec: &LieAlgebraSpec, g: LoopGen) -> String {
    format!("{}[-{}]", spec.label(g.label), g.depth)
}

pub fn site_gen_text(spec: &LieAlgebraSpec, g: SiteGen) -> String {
    format!("{}^({})", spec.label(g.label), g.site + 1)
}

fn terms_text<'a, G: Copy + 'a>(
    terms: impl IntoIterator<Item = (&'a Mono<G>, &'a Rational)>,
    factor: impl Fn(&G) -> String,
) -> String {
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(m, c)| {
            if m.is_empty() {
                return fmt_rational(c);
            }
            let word: Vec<String> = m.iter().map(&factor).collect();
            format!("{} * {}", fmt_rational(c), word.join("*"))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn loop_poly_text(spec: &LieAlgebraSpec, p: &LoopPoly) -> String {
    terms_text(p.sorted_terms(), |g| loop_gen_text(spec, *g))
}

pub fn env_poly_text(spec: &LieAlgebraSpec, p: &EnvPoly) -> String {
    terms_text(p.sorted_terms(), |g| loop_gen_text(spec, *g))
}

pub fn tensor_text(spec: &LieAlgebraSpec, p: &TensorPoly) -> String {
    terms_text(p.sorted_terms(), |g| site_gen_text(spec, *g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub mon: Vec<[u32; 3]>,
    pub num: Value,
    pub den: Value,
}

fn encode_gen(spec: &LieAlgebraSpec, g: LoopGen) -> [u32; 3] {
    let (i, j) = spec.label(g.label).indices();
    [i as u32, j as u32, g.depth as u32]
}

fn decode_gen(spec: &LieAlgebraSpec, f: [u32; 3]) -> Result<LoopGen> {
    let [i, j, m] = f;
    let (i, j) = (i as usize, j as usize);
    let label = if i == j && spec.kind() == crate::lie::LieKind::Sl {
        BasisLabel::H(i)
    } else {
        BasisLabel::E(i, j)
    };
    let a = spec
        .index_of(label)
        .ok_or_else(|| Error::Parse(format!("no basis element {label} in {}", spec.id())))?;
    if m == 0 || m > u16::MAX as u32 {
        return Err(Error::Parse(format!("invalid depth {m}")));
    }
    Ok(LoopGen::new(a, m as u16))
}

fn json_int(v: &Value) -> Result<num_bigint::BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Into::into)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

fn terms_json<'a>(spec: &LieAlgebraSpec, terms: impl IntoIterator<Item = (&'a Mono<LoopGen>, &'a Rational)>) -> Vec<JsonTerm> {
    terms
        .into_iter()
        .map(|(m, c)| JsonTerm {
            mon: m.iter().map(|g| encode_gen(spec, *g)).collect(),
            num: bigint_json(c.numer()),
            den: bigint_json(c.denom()),
        })
        .collect()
}

fn terms_from_json(spec: &LieAlgebraSpec, terms: &[JsonTerm]) -> Result<Vec<(Mono<LoopGen>, Rational)>> {
    terms
        .iter()
        .map(|t| {
            let mon = t.mon.iter().map(|f| decode_gen(spec, *f)).collect::<Result<Mono<LoopGen>>>()?;
            let den = json_int(&t.den)?;
            if num_traits::Zero::is_zero(&den) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok((mon, Rational::new(json_int(&t.num)?, den)))
        })
        .collect()
}

pub fn loop_poly_json(spec: &LieAlgebraSpec, p: &LoopPoly) -> Vec<JsonTerm> {
    terms_json(spec, p.sorted_terms())
}

pub fn env_poly_json(spec: &LieAlgebraSpec, p: &EnvPoly) -> Vec<JsonTerm> {
    terms_json(spec, p.sorted_terms())
}

pub fn loop_poly_from_json(spec: &LieAlgebraSpec, terms: &[JsonTerm]) -> Result<LoopPoly> {
    let mut p = LoopPoly::zero();
    for (mut m, c) in terms_from_json(spec, terms)? {
        m.sort_unstable();
        p.add_term(m, c);
    }
    Ok(p)
}

/// Reads a normal-ordered polynomial; words out of order are normalised.
pub fn env_poly_from_json(spec: &LieAlgebraSpec, terms: &[JsonTerm]) -> Result<EnvPoly> {
    let mut p = EnvPoly::zero();
    for (m, c) in terms_from_json(spec, terms)? {
        p = &p + &crate::envelope::word(spec, &m, c);
    }
    Ok(p)
}

pub fn q_family_json(spec: &LieAlgebraSpec, q: &QFamily) -> Value {
    let mut map = serde_json::Map::new();
    for ((n, k), x) in &q.q {
        map.insert(format!("{n},{k}"), json!(env_poly_json(spec, x)));
    }
    json!({ "rank": q.rank, "z_order": q.z_order, "Q": map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieKind;
    use crate::loop_sym::s1_bar;
    use crate::rational::{int, rat};

    #[test]
    fn text_forms() {
        let s = LieAlgebraSpec::build(LieKind::Sl, 2).unwrap();
        let h = s.index_of(BasisLabel::H(1)).unwrap();
        let p = LoopPoly::monomial(&[LoopGen::new(s.e(1, 2), 1), LoopGen::new(h, 3)], rat(3, 2));
        assert_eq!(loop_poly_text(&s, &p), "3/2 * E[1,2][-1]*H[1][-3]");
        assert_eq!(loop_poly_text(&s, &LoopPoly::zero()), "0");
        assert_eq!(loop_poly_text(&s, &LoopPoly::constant(int(-2))), "-2");
    }

    #[test]
    fn json_round_trip() {
        let s = LieAlgebraSpec::build(LieKind::Sl, 3).unwrap();
        let p = s1_bar(&s);
        let j = serde_json::to_string(&loop_poly_json(&s, &p)).unwrap();
        let back: Vec<JsonTerm> = serde_json::from_str(&j).unwrap();
        assert_eq!(loop_poly_from_json(&s, &back).unwrap(), p);
        let u = crate::envelope::s1_quantum(&s);
        assert_eq!(env_poly_from_json(&s, &env_poly_json(&s, &u)).unwrap(), u);
    }

    #[test]
    fn json_rejects_bad_input() {
        let s = LieAlgebraSpec::build(LieKind::Gl, 2).unwrap();
        let bad = vec![JsonTerm { mon: vec![[3, 1, 1]], num: json!(1), den: json!(1) }];
        assert!(loop_poly_from_json(&s, &bad).is_err());
        let bad = vec![JsonTerm { mon: vec![[1, 1, 0]], num: json!(1), den: json!(1) }];
        assert!(loop_poly_from_json(&s, &bad).is_err());
        let bad = vec![JsonTerm { mon: vec![], num: json!(1), den: json!(0) }];
        assert!(loop_poly_from_json(&s, &bad).is_err());
    }
}
