//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use bethe_core::centralizer::{self, ClassicalTarget, ComponentIndex};
use bethe_core::envelope::{self, EnvPoly};
use bethe_core::gaudin::{self, SiteConfig};
use bethe_core::linalg::{rational_kernel, RatMatrix, SparseRationalMatrix};
use bethe_core::loop_sym::{self, SliceGen};
use bethe_core::pbw::RewriteStats;
use bethe_core::poly::SymPoly;
use bethe_core::rational::int;
use bethe_core::sampling::{self, random_rational};
use bethe_core::talalaev::{self, compute_q};
use bethe_core::{LieAlgebraSpec, LieKind, LoopPoly, PrincipalTriple};
use num_bigint::BigInt;
use rand::Rng;

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spec(kind: LieKind, r: usize) -> LieAlgebraSpec {
    LieAlgebraSpec::build(kind, r).expect("supported algebra")
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (r, m) in [(2, 6), (3, 3)] {
        let s = spec(LieKind::Gl, r);
        let q = compute_q(&s, m).map_err(|e| e.to_string())?;
        let rep = talalaev::check_pairwise_commute(&s, &q);
        let bad: Vec<_> = rep.pairs.iter().filter(|p| !p.zero).map(|p| (p.a, p.b)).collect();
        ensure(bad.is_empty(), format!("gl{r}: nonzero commutators {bad:?}"))?;
        ensure(q.q.len() == m * r, format!("gl{r}: family size {}", q.q.len()))?;
        notes.push(format!("gl{r} n<={m}: {} pairs zero", rep.pairs.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for (r, m) in [(2, 4), (3, 2)] {
        let s = spec(LieKind::Gl, r);
        let q = compute_q(&s, m).map_err(|e| e.to_string())?;
        let rep = talalaev::identify_symbols(&s, &q);
        ensure(rep.pass, format!("gl{r}: symbols not identified {:?}", rep.rows))?;
        let signs: Vec<String> = rep
            .signs
            .iter()
            .map(|(k, v)| format!("k={k}:{:+}", v.expect("checked")))
            .collect();
        notes.push(format!("gl{r} signs {}", signs.join(",")));
    }
    Ok(notes.join("; "))
}

fn check_sweep(s: &LieAlgebraSpec, target: ClassicalTarget, comps: &[ComponentIndex]) -> Result<usize, String> {
    let out = centralizer::classical_sweep(s, target, comps).map_err(|e| e.to_string())?;
    for c in &out {
        ensure(c.report.pass, format!("{} {target:?}: {:?}", s.id(), c.report))?;
    }
    Ok(out.len())
}

fn criterion_3() -> Outcome {
    let sl2 = spec(LieKind::Sl, 2);
    let n2 = check_sweep(&sl2, ClassicalTarget::S1Bar, &centralizer::graded_components(4, 10))?;
    let sl3 = spec(LieKind::Sl, 3);
    let n3 = check_sweep(&sl3, ClassicalTarget::S1Bar, &centralizer::graded_components(3, 6))?;
    Ok(format!("sl2 {n2} components, sl3 {n3} components"))
}

fn criterion_4() -> Outcome {
    let sl2 = spec(LieKind::Sl, 2);
    let n = check_sweep(&sl2, ClassicalTarget::H1, &centralizer::graded_components(4, 10))?;
    Ok(format!("sl2 {n} components"))
}

fn criterion_5() -> Outcome {
    let sl2 = spec(LieKind::Sl, 2);
    let out = centralizer::quantum_sweep(&sl2, &centralizer::filtered_components(3, 6));
    for c in &out {
        ensure(c.report.pass, format!("{:?}", c.report))?;
    }
    Ok(format!("sl2 {} filtered components", out.len()))
}

fn criterion_6() -> Outcome {
    let sl2 = spec(LieKind::Sl, 2);
    let rep = centralizer::invariant_subspace(&sl2, ComponentIndex::new(2, 2));
    ensure(rep.dim == 1, format!("dimension {}", rep.dim))?;
    ensure(
        centralizer::is_multiple_env(&rep.basis[0], &envelope::s1_quantum(&sl2)),
        "invariant is not a multiple of S1",
    )?;
    Ok(format!("dim 1 of {} columns, spanned by S1", rep.columns))
}

fn criterion_7() -> Outcome {
    let s = spec(LieKind::Gl, 2);
    let cfg = SiteConfig::from_ints(&[1, 2, 4]).map_err(|e| e.to_string())?;
    let q = compute_q(&s, 3).map_err(|e| e.to_string())?;
    let checks = gaudin::commute_checks(&s, &cfg, Some((&q, 3))).map_err(|e| e.to_string())?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), format!("failed: {failed:?}"))?;
    Ok(format!("{} symbolic checks", checks.len()))
}

fn criterion_8() -> Outcome {
    let sl2 = spec(LieKind::Sl, 2);
    let t = PrincipalTriple::new(&sl2).map_err(|e| e.to_string())?;
    let pi = loop_sym::project_pi(&sl2, &loop_sym::s1_bar(&sl2), &t);
    ensure(
        pi == SymPoly::monomial(&[SliceGen { depth: 1, index: 0 }], int(2)),
        "pi(S1bar) != 2 f[-1]",
    )?;
    let phi = loop_sym::apply_phi_s(&sl2, &loop_sym::s1_bar(&sl2), &t);
    ensure(phi.len() == 3 && phi[2] == LoopPoly::constant(int(2)), "phi_s(S1bar) s^2 term")?;
    let mut notes = Vec::new();
    for (r, g) in [(2, 6), (3, 6)] {
        let s = spec(LieKind::Sl, r);
        let rep = centralizer::verify_projections(&s, g).map_err(|e| e.to_string())?;
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        ensure(rep.pass, format!("sl{r}: {failed:?}"))?;
        notes.push(format!("sl{r} {} checks", rep.checks.len()));
    }
    Ok(notes.join("; "))
}

fn inversions(w: &[bethe_core::LoopGen]) -> u64 {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

fn criterion_9() -> Outcome {
    let mut rng = sampling::seeded_rng(SEED);
    let gl2 = spec(LieKind::Gl, 2);
    let sl2 = spec(LieKind::Sl, 2);
    let mut counts = [0usize; 6];

    for _ in 0..50 {
        let [u, v, w] = [(); 3].map(|_| sampling::random_env_poly(&gl2, &mut rng, 3, 3, 3));
        let left = envelope::normal_product(&gl2, &envelope::normal_product(&gl2, &u, &v), &w);
        let right = envelope::normal_product(&gl2, &u, &envelope::normal_product(&gl2, &v, &w));
        ensure(left == right, "associativity")?;
        let c = |a: &EnvPoly, b: &EnvPoly| envelope::commutator(&gl2, a, b);
        let jac = &(&c(&u, &c(&v, &w)) + &c(&v, &c(&w, &u))) + &c(&w, &c(&u, &v));
        ensure(jac.is_zero(), "commutator Jacobi")?;
        counts[0] += 1;
    }

    for _ in 0..30 {
        let [p, q, r] = [(); 3].map(|_| sampling::random_loop_poly(&sl2, &mut rng, 3, 3, 3));
        let b = |a: &LoopPoly, c: &LoopPoly| loop_sym::poisson_bracket(&sl2, a, c);
        let jac = &(&b(&p, &b(&q, &r)) + &b(&q, &b(&r, &p))) + &b(&r, &b(&p, &q));
        ensure(jac.is_zero(), "Poisson Jacobi")?;
        let lhs = loop_sym::d_t(&b(&p, &q));
        let rhs = &b(&loop_sym::d_t(&p), &q) + &b(&p, &loop_sym::d_t(&q));
        ensure(lhs == rhs, "d_t is a Poisson derivation")?;
        counts[1] += 1;
    }

    for _ in 0..30 {
        let d1 = rng.random_range(1..=3);
        let d2 = rng.random_range(1..=3);
        let (w1, w2) = (d1 + rng.random_range(0..3), d2 + rng.random_range(0..3));
        let p = sampling::random_homogeneous(&gl2, &mut rng, d1, w1, 3);
        let q = sampling::random_homogeneous(&gl2, &mut rng, d2, w2, 3);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let (u, v) = (envelope::symmetrize(&gl2, &p), envelope::symmetrize(&gl2, &q));
        ensure(u.gr_top().ok().as_ref() == Some(&p), "gr(symmetrize(p)) = p")?;
        let prod = envelope::normal_product(&gl2, &u, &v);
        ensure(prod.gr_top().ok() == Some(&p * &q), "gr multiplicativity")?;
        ensure(
            prod.terms().all(|(m, _)| loop_sym::weight(m) == w1 + w2),
            "weight additivity",
        )?;
        counts[2] += 1;
    }

    let spill = gl2.max_bracket_terms();
    for _ in 0..40 {
        let w1: Vec<_> = (0..rng.random_range(1..=4)).map(|_| sampling::random_gen(&gl2, &mut rng, 3)).collect();
        let w2: Vec<_> = (0..rng.random_range(1..=4)).map(|_| sampling::random_gen(&gl2, &mut rng, 3)).collect();
        let (mut s1, mut s2) = (w1.clone(), w2.clone());
        s1.sort_unstable();
        s2.sort_unstable();
        let mut u = EnvPoly::zero();
        u.add_term(s1.iter().copied().collect(), int(1));
        let mut v = EnvPoly::zero();
        v.add_term(s2.iter().copied().collect(), int(1));
        let (prod, stats) = envelope::normal_product_with_stats(&gl2, &u, &v);
        let concat: Vec<_> = s1.iter().chain(&s2).copied().collect();
        ensure(stats.top_level == inversions(&concat), "top-level exchanges = inversions")?;
        ensure(
            BigInt::from(stats.total()) <= RewriteStats::word_bound(concat.len(), spill),
            "rewriting bound",
        )?;
        for (m, c) in prod.terms() {
            ensure(envelope::word(&gl2, m, c.clone()).len() == 1, "normal form idempotence")?;
        }
        counts[3] += 1;
    }

    for _ in 0..40 {
        let rows = rng.random_range(1..=7);
        let cols = rng.random_range(1..=7);
        let mut m = SparseRationalMatrix::new(rows, cols);
        let mut dense = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.random_bool(0.4) {
                    let v = random_rational(&mut rng);
                    m.add(i, j, &v);
                    dense.set(i, j, v);
                }
            }
        }
        // occasionally force dependent columns
        if cols >= 2 && rng.random_bool(0.5) {
            for i in 0..rows {
                let v = m.get(i, 0) * int(3);
                let w = m.get(i, 1);
                m.add(i, 1, &(&v - &w));
                dense.set(i, 1, v);
            }
        }
        let k = rational_kernel(&m);
        ensure(k.rank + k.nullity() == cols, "rank + nullity = columns")?;
        ensure(k.rank == dense.transpose().rank(), "row rank = column rank")?;
        for v in &k.basis {
            ensure(m.mul_vec(v).iter().all(num_traits::Zero::is_zero), "kernel vector")?;
        }
        counts[4] += 1;
    }

    for _ in 0..20 {
        let x = sampling::random_lie_element(&sl2, &mut rng);
        let u = sampling::random_env_poly(&sl2, &mut rng, 2, 3, 2);
        let v = sampling::random_env_poly(&sl2, &mut rng, 2, 3, 2);
        let lhs = envelope::adjoint_action(&sl2, &x, &envelope::normal_product(&sl2, &u, &v));
        let rhs = &envelope::normal_product(&sl2, &envelope::adjoint_action(&sl2, &x, &u), &v)
            + &envelope::normal_product(&sl2, &u, &envelope::adjoint_action(&sl2, &x, &v));
        ensure(lhs == rhs, "adjoint action is a derivation")?;
        counts[5] += 1;
    }

    Ok(format!(
        "seed {SEED}: assoc/Jacobi {}, Poisson {}, gr {}, rewriting {}, kernels {}, derivations {}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("commutativity of the determinant family (gl2 n<=6, gl3 n<=3)", criterion_1),
        ("symbols of the determinant family (gl2 n<=4, gl3 n<=2)", criterion_2),
        ("Poisson centralizer of S1bar (sl2 d<=4 w<=10, sl3 d<=3 w<=6)", criterion_3),
        ("Poisson centralizer of h[-1] (sl2 d<=4 w<=10)", criterion_4),
        ("centralizer of S1 in U (sl2 d<=3 w<=6)", criterion_5),
        ("unique invariant lifting in U(<=2,2) (sl2)", criterion_6),
        ("Gaudin Hamiltonians at z=(1,2,4) (gl2)", criterion_7),
        ("slice, shift and Cartan projection identities (sl2, sl3)", criterion_8),
        ("engine soundness suites", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{detail}] ({secs:.2}s)", i + 1),
            Err(err) => {
                failures += 1;
                println!("FAIL criterion {}: {name} [{err}] ({secs:.2}s)", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
