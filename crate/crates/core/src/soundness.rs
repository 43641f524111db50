//! Seeded randomized property checks of the polynomial engines.

use rand::Rng;

use crate::envelope::{self, EnvPoly};
use crate::gaudin::Check;
use crate::lie::{LieAlgebraSpec, PrincipalTriple};
use crate::loop_sym::{self, LoopPoly};
use crate::sampling;

fn check(name: &str, pass: bool) -> Check {
    Check {
        name: name.into(),
        pass,
    }
}

/// Runs `rounds` random cases of each property over `spec`.
pub fn run(spec: &LieAlgebraSpec, seed: u64, rounds: usize) -> Vec<Check> {
    let mut rng = sampling::seeded_rng(seed);
    let mut assoc = true;
    let mut jacobi = true;
    let mut poisson = true;
    let mut derivation = true;
    let mut symbol = true;
    for _ in 0..rounds {
        let [u, v, w] = [(); 3].map(|_| sampling::random_env_poly(spec, &mut rng, 3, 3, 3));
        let p = |a: &EnvPoly, b: &EnvPoly| envelope::normal_product(spec, a, b);
        assoc &= p(&p(&u, &v), &w) == p(&u, &p(&v, &w));
        let c = |a: &EnvPoly, b: &EnvPoly| envelope::commutator(spec, a, b);
        jacobi &= (&(&c(&u, &c(&v, &w)) + &c(&v, &c(&w, &u))) + &c(&w, &c(&u, &v))).is_zero();

        let [a, b, d] = [(); 3].map(|_| sampling::random_loop_poly(spec, &mut rng, 3, 3, 3));
        let br = |x: &LoopPoly, y: &LoopPoly| loop_sym::poisson_bracket(spec, x, y);
        poisson &= (&(&br(&a, &br(&b, &d)) + &br(&b, &br(&d, &a))) + &br(&d, &br(&a, &b))).is_zero();
        derivation &= loop_sym::d_t(&br(&a, &b)) == &br(&loop_sym::d_t(&a), &b) + &br(&a, &loop_sym::d_t(&b));

        let deg = rng.random_range(1..=3);
        let w = deg + rng.random_range(0..3);
        let h = sampling::random_homogeneous(spec, &mut rng, deg, w, 3);
        if !h.is_zero() {
            symbol &= envelope::symmetrize(spec, &h).gr_top().ok() == Some(h);
        }
    }
    let mut out = vec![
        check("U(g-) product is associative", assoc),
        check("commutator satisfies Jacobi", jacobi),
        check("Poisson bracket satisfies Jacobi", poisson),
        check("d_t is a Poisson derivation", derivation),
        check("gr(symmetrize(p)) = p", symbol),
    ];
    if let Ok(t) = PrincipalTriple::new(spec) {
        let mut phi = true;
        let mut hom = true;
        for _ in 0..rounds {
            let [a, b] = [(); 2].map(|_| sampling::random_loop_poly(spec, &mut rng, 2, 2, 2));
            let lhs = loop_sym::apply_phi_s(spec, &loop_sym::poisson_bracket(spec, &a, &b), &t);
            let (fa, fb) = (loop_sym::apply_phi_s(spec, &a, &t), loop_sym::apply_phi_s(spec, &b, &t));
            let mut rhs = vec![LoopPoly::zero(); fa.len() + fb.len()];
            for (i, x) in fa.iter().enumerate() {
                for (j, y) in fb.iter().enumerate() {
                    rhs[i + j] = &rhs[i + j] + &loop_sym::poisson_bracket(spec, x, y);
                }
            }
            while rhs.last().is_some_and(LoopPoly::is_zero) {
                rhs.pop();
            }
            phi &= lhs == rhs;
            let ab = &a * &b;
            hom &= loop_sym::project_pi(spec, &ab, &t)
                == &loop_sym::project_pi(spec, &a, &t) * &loop_sym::project_pi(spec, &b, &t);
            hom &= loop_sym::project_psi(spec, &ab) == &loop_sym::project_psi(spec, &a) * &loop_sym::project_psi(spec, &b);
        }
        out.push(check("phi_s preserves Poisson brackets", phi));
        out.push(check("pi and psi are algebra homomorphisms", hom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieKind;

    #[test]
    fn all_pass_on_sl2() {
        let s = LieAlgebraSpec::build(LieKind::Sl, 2).unwrap();
        let checks = run(&s, 3, 5);
        assert_eq!(checks.len(), 7);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
