use bethe_core::centralizer::{self, ClassicalTarget, ComponentIndex, ComponentReport};
use bethe_core::gaudin::{self, Check, EigenValue, SiteConfig};
use bethe_core::rational::fmt_rational;
use bethe_core::talalaev::{self, compute_q};
use bethe_core::{envelope, loop_sym, par, soundness, text, AlgebraId, LieAlgebraSpec, LieKind};
use clap::{Args, ValueEnum};
use serde_json::json;

use crate::report::{RunReport, Table};
use crate::CliError;

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check {
        name: name.into(),
        pass,
    }
}

fn build(id: AlgebraId) -> Result<LieAlgebraSpec, CliError> {
    Ok(LieAlgebraSpec::from_id(id)?)
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Config(format!("{name} must be at least 1")));
    }
    Ok(())
}

#[derive(Args, Debug, Clone)]
pub struct TalalaevArgs {
    /// Rank r of gl_r.
    #[arg(long)]
    pub rank: usize,
    /// Largest n of Q_{n,k}.
    #[arg(long)]
    pub z_order: usize,
    /// Check [Q_a, Q_b] = 0 for every pair.
    #[arg(long)]
    pub check_commute: bool,
    /// Compare gr Q_{n,k} with the classical determinant generators.
    #[arg(long)]
    pub symbols: bool,
}

pub fn talalaev(a: &TalalaevArgs) -> Result<RunReport, CliError> {
    positive("--z-order", a.z_order)?;
    let spec = build(AlgebraId {
        kind: LieKind::Gl,
        rank: a.rank,
    })?;
    let config = json!({
        "algebra": spec.id().to_string(),
        "rank": a.rank,
        "z_order": a.z_order,
        "check_commute": a.check_commute,
        "symbols": a.symbols,
    });
    let q = compute_q(&spec, a.z_order)?;
    let mut checks = vec![check(
        format!("{} coefficients Q_(n,k) with degree k and weight n+k-1", q.q.len()),
        q.q.len() == a.z_order * a.rank,
    )];
    let mut data = text::q_family_json(&spec, &q);
    let mut table = Table::new(&["n", "k", "terms", "weight", "Q"]);
    for (&(n, k), x) in &q.q {
        table.push(vec![
            n.to_string(),
            k.to_string(),
            x.len().to_string(),
            (n + k - 1).to_string(),
            text::env_poly_text(&spec, x),
        ]);
    }
    if a.check_commute {
        let rep = talalaev::check_pairwise_commute(&spec, &q);
        checks.push(check(format!("[Q_a, Q_b] = 0 for all {} pairs", rep.pairs.len()), rep.all_zero));
        table = Table::new(&["a", "b", "zero", "products", "result_terms"]);
        for p in &rep.pairs {
            table.push(vec![
                format!("{},{}", p.a.0, p.a.1),
                format!("{},{}", p.b.0, p.b.1),
                p.zero.to_string(),
                p.products.to_string(),
                p.result_terms.to_string(),
            ]);
        }
        data["commute_report"] = json!(rep.pairs);
    }
    if a.symbols {
        let rep = talalaev::identify_symbols(&spec, &q);
        for (k, sign) in &rep.signs {
            let name = match sign {
                Some(s) => format!("gr Q_(n,{k}) = {s:+} * classical generator (k={k})"),
                None => format!("gr Q_(n,{k}) is a common signed multiple of the classical generator"),
            };
            checks.push(check(name, sign.is_some()));
        }
        data["symbols"] = json!(rep
            .rows
            .iter()
            .map(|r| json!({"n": r.n, "k": r.k, "ratio": r.ratio.as_ref().map(fmt_rational)}))
            .collect::<Vec<_>>());
    }
    Ok(RunReport::new("talalaev", config, checks, data, Some(table)))
}

#[derive(Args, Debug, Clone)]
pub struct ClassicalArgs {
    /// Algebra, e.g. sl2 or gl3.
    #[arg(long)]
    pub algebra: AlgebraId,
    /// Largest weight index n of the generators.
    #[arg(long)]
    pub z_order: usize,
    /// Check that the generators Poisson-commute pairwise.
    #[arg(long)]
    pub check_commute: bool,
}

pub fn classical(a: &ClassicalArgs) -> Result<RunReport, CliError> {
    positive("--z-order", a.z_order)?;
    let spec = build(a.algebra)?;
    let config = json!({
        "algebra": spec.id().to_string(),
        "z_order": a.z_order,
        "check_commute": a.check_commute,
    });
    let gens = loop_sym::classical_generators(&spec, a.z_order);
    let mut table = Table::new(&["k", "n", "degree", "weight", "terms"]);
    let mut map = serde_json::Map::new();
    for (&(k, n), p) in &gens {
        table.push(vec![
            k.to_string(),
            n.to_string(),
            k.to_string(),
            (n + k - 1).to_string(),
            p.len().to_string(),
        ]);
        map.insert(format!("{k},{n}"), json!(text::loop_poly_json(&spec, p)));
    }
    let homogeneous = gens
        .iter()
        .all(|(&(k, n), p)| p.terms().all(|(m, _)| m.len() == k && loop_sym::weight(m) == n + k - 1));
    let mut checks = vec![check("generator (k,n) is homogeneous of degree k, weight n+k-1", homogeneous)];
    let mut data = json!({ "generators": map });
    if a.check_commute {
        let keys: Vec<(usize, usize)> = gens.keys().copied().collect();
        let pairs: Vec<((usize, usize), (usize, usize))> = keys
            .iter()
            .enumerate()
            .flat_map(|(i, x)| keys[i + 1..].iter().map(move |y| (*x, *y)))
            .collect();
        let zero = par::map(&pairs, |(x, y)| loop_sym::poisson_bracket(&spec, &gens[x], &gens[y]).is_zero());
        let failed: Vec<String> = pairs
            .iter()
            .zip(&zero)
            .filter(|(_, z)| !**z)
            .map(|((x, y), _)| format!("({},{})-({},{})", x.0, x.1, y.0, y.1))
            .collect();
        checks.push(check(format!("Poisson brackets vanish for all {} pairs", pairs.len()), failed.is_empty()));
        data["nonzero_pairs"] = json!(failed);
    }
    Ok(RunReport::new("classical", config, checks, data, Some(table)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Poisson centralizer of S1bar in S(g-).
    S1bar,
    /// Poisson centralizer of h[-1] in S(g-).
    H1,
    /// Centralizer of S1 in U(g-).
    #[value(name = "S1quantum", alias = "s1quantum")]
    S1quantum,
    /// Adjoint invariants in U(g-).
    Invariants,
}

#[derive(Args, Debug, Clone)]
pub struct CentralizerArgs {
    #[arg(long)]
    pub algebra: AlgebraId,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Largest degree d (default 4 for sl2, else 3).
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Largest weight w (default 10 for sl2, else 6).
    #[arg(long)]
    pub max_weight: Option<usize>,
}

fn component_row(r: &ComponentReport) -> Vec<String> {
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    vec![
        if r.filtered { format!("<={}", r.degree) } else { r.degree.to_string() },
        r.weight.to_string(),
        r.columns.to_string(),
        r.rank.to_string(),
        r.kernel_dim.to_string(),
        r.expected_dim.to_string(),
        opt(r.commuting),
        opt(r.in_span),
        r.pass.to_string(),
    ]
}

fn component_check(r: &ComponentReport) -> Check {
    let d = if r.filtered { format!("<={}", r.degree) } else { r.degree.to_string() };
    check(
        format!("component ({d},{}): kernel dim {} = expected {}", r.weight, r.kernel_dim, r.expected_dim),
        r.pass,
    )
}

pub fn centralizer(a: &CentralizerArgs) -> Result<RunReport, CliError> {
    let spec = build(a.algebra)?;
    let small = a.algebra == AlgebraId { kind: LieKind::Sl, rank: 2 } && matches!(a.target, Target::S1bar | Target::H1);
    let max_d = a.max_degree.unwrap_or(if small { 4 } else { 3 });
    let max_w = a.max_weight.unwrap_or(if small { 10 } else { 6 });
    positive("--max-degree", max_d)?;
    positive("--max-weight", max_w)?;
    let target = Target::to_possible_value(&a.target).expect("no skipped variants");
    let config = json!({
        "algebra": spec.id().to_string(),
        "target": target.get_name(),
        "max_degree": max_d,
        "max_weight": max_w,
    });
    let headers = [
        "degree",
        "weight",
        "columns",
        "rank",
        "kernel_dim",
        "expected_dim",
        "commuting",
        "in_span",
        "pass",
    ];
    let mut table = Table::new(&headers);
    let mut checks = Vec::new();
    let reports: Vec<ComponentReport> = match a.target {
        Target::S1bar | Target::H1 => {
            let t = if a.target == Target::S1bar {
                ClassicalTarget::S1Bar
            } else {
                ClassicalTarget::H1
            };
            centralizer::classical_sweep(&spec, t, &centralizer::graded_components(max_d, max_w))?
                .into_iter()
                .map(|c| c.report)
                .collect()
        }
        Target::S1quantum => centralizer::quantum_sweep(&spec, &centralizer::filtered_components(max_d, max_w))
            .into_iter()
            .map(|c| c.report)
            .collect(),
        Target::Invariants => {
            let comps = centralizer::filtered_components(max_d, max_w);
            let reps: Vec<_> = comps.iter().map(|&i| centralizer::invariant_subspace(&spec, i)).collect();
            let mut t = Table::new(&["degree", "weight", "columns", "invariant_dim"]);
            for r in &reps {
                t.push(vec![
                    format!("<={}", r.index.degree),
                    r.index.weight.to_string(),
                    r.columns.to_string(),
                    r.dim.to_string(),
                ]);
            }
            if let Some(r) = reps.iter().find(|r| r.index == ComponentIndex::new(2, 2)) {
                let s1 = envelope::s1_quantum(&spec);
                let ok = r.dim == 1 && centralizer::is_multiple_env(&r.basis[0], &s1);
                checks.push(check("invariants of filtered degree <=2, weight 2 are spanned by S1", ok));
            }
            let data = json!(reps
                .iter()
                .map(|r| json!({
                    "degree": r.index.degree,
                    "weight": r.index.weight,
                    "columns": r.columns,
                    "dim": r.dim,
                    "basis": r.basis.iter().map(|b| text::env_poly_json(&spec, b)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>());
            return Ok(RunReport::new("centralizer", config, checks, json!({ "components": data }), Some(t)));
        }
    };
    for r in &reports {
        table.push(component_row(r));
        checks.push(component_check(r));
    }
    let data = json!({ "components": reports });
    Ok(RunReport::new("centralizer", config, checks, data, Some(table)))
}

#[derive(Args, Debug, Clone)]
pub struct GaudinArgs {
    /// Rank r.
    #[arg(long)]
    pub rank: usize,
    /// gl or sl.
    #[arg(long, value_enum, default_value_t = Kind::Gl)]
    pub kind: Kind,
    /// Site points z_1,...,z_n (nonzero, distinct, rationals like 1/2 allowed).
    #[arg(long)]
    pub points: SiteConfig,
    /// Symbolic checks: [H_i, H_j] = 0, sum H_i = 0, global invariance.
    #[arg(long)]
    pub check_commute: bool,
    /// Also check [ev(Q_{n,k}), H_i] = 0 for n up to this order (gl only).
    #[arg(long, requires = "check_commute")]
    pub z_order: Option<usize>,
    /// Exact spectra of the H_i in the tensor power of the defining representation.
    #[arg(long)]
    pub spectrum: bool,
    /// Include the representation matrices (row-major rationals) in the JSON data.
    #[arg(long)]
    pub matrices: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gl,
    Sl,
}

impl From<Kind> for LieKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gl => LieKind::Gl,
            Kind::Sl => LieKind::Sl,
        }
    }
}

fn eigen_row(h: usize, e: &gaudin::EigenEntry) -> Vec<String> {
    let mut row = vec![format!("H{h}")];
    match &e.value {
        EigenValue::Exact { num, den, float } => {
            row.extend([num.clone(), den.clone(), float.to_string(), float.to_string(), "0".into()])
        }
        EigenValue::Approx { re, im } => {
            row.extend([String::new(), String::new(), String::new(), re.to_string(), im.to_string()])
        }
    }
    row.push(e.multiplicity.to_string());
    row
}

pub fn gaudin(a: &GaudinArgs) -> Result<RunReport, CliError> {
    let spec = build(AlgebraId {
        kind: a.kind.into(),
        rank: a.rank,
    })?;
    let config = json!({
        "algebra": spec.id().to_string(),
        "points": a.points.points().iter().map(fmt_rational).collect::<Vec<_>>(),
        "check_commute": a.check_commute,
        "z_order": a.z_order,
        "spectrum": a.spectrum,
        "matrices": a.matrices,
    });
    let hs = gaudin::all_hamiltonians(&spec, &a.points)?;
    let mut checks = Vec::new();
    let mut data = json!({
        "hamiltonians": hs.iter().map(|h| text::tensor_text(&spec, h)).collect::<Vec<_>>(),
    });
    if a.check_commute {
        let q = match a.z_order {
            Some(m) => {
                positive("--z-order", m)?;
                if spec.kind() != LieKind::Gl {
                    return Err(CliError::Config("--z-order requires --kind gl".into()));
                }
                Some(compute_q(&spec, m)?)
            }
            None => None,
        };
        checks.extend(gaudin::commute_checks(&spec, &a.points, q.as_ref().zip(a.z_order))?);
    }
    let mut table = None;
    if a.spectrum || a.matrices {
        let ms = hs
            .iter()
            .map(|h| gaudin::rep_matrix(&spec, h, a.points.n()))
            .collect::<bethe_core::Result<Vec<_>>>()?;
        if a.matrices {
            data["matrices"] = json!(ms
                .iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        if a.spectrum {
            let specs: Vec<_> = ms.iter().map(gaudin::spectrum).collect();
            let joint = gaudin::joint_diagonalization(&ms);
            let mut t = Table::new(&[
                "hamiltonian",
                "eigenvalue_num",
                "eigenvalue_den",
                "float",
                "re",
                "im",
                "multiplicity",
            ]);
            for (i, s) in specs.iter().enumerate() {
                for e in &s.eigenvalues {
                    t.push(eigen_row(i + 1, e));
                }
            }
            let sum_zero = ms.iter().skip(1).fold(ms[0].clone(), |acc, m| &acc + m).is_zero();
            checks.push(check("representation matrices commute pairwise", joint.commuting));
            checks.push(check("representation matrices sum to zero", sum_zero));
            checks.push(check("representation matrices are jointly diagonalizable", joint.jointly_diagonalizable));
            data["spectra"] = json!(specs);
            data["joint"] = json!(joint);
            table = Some(t);
        }
    }
    Ok(RunReport::new("gaudin", config, checks, data, table))
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value = "sl2")]
    pub algebra: AlgebraId,
    /// Largest grade for the slice isomorphism check.
    #[arg(long, default_value_t = 6)]
    pub max_grade: usize,
    /// Random cases per property.
    #[arg(long, default_value_t = 20)]
    pub rounds: usize,
}

pub fn verify_lemmas(a: &VerifyArgs, seed: u64) -> Result<RunReport, CliError> {
    positive("--max-grade", a.max_grade)?;
    let spec = build(a.algebra)?;
    let config = json!({
        "algebra": spec.id().to_string(),
        "max_grade": a.max_grade,
        "rounds": a.rounds,
        "seed": seed,
    });
    let rep = centralizer::verify_projections(&spec, a.max_grade)?;
    let mut checks = rep.checks.clone();
    for g in &rep.grades {
        checks.push(check(
            format!("grade {}: rank pi(A) {} = dim A {} = slice dim {}", g.grade, g.rank_pi, g.dim_a, g.dim_slice),
            g.pass,
        ));
    }
    let random = soundness::run(&spec, seed, a.rounds);
    checks.extend(random.iter().map(|c| check(format!("random ({} cases): {}", a.rounds, c.name), c.pass)));
    let mut table = Table::new(&["grade", "dim_a", "rank_pi", "dim_slice", "homogeneous", "pass"]);
    for g in &rep.grades {
        table.push(vec![
            g.grade.to_string(),
            g.dim_a.to_string(),
            g.rank_pi.to_string(),
            g.dim_slice.to_string(),
            g.homogeneous.to_string(),
            g.pass.to_string(),
        ]);
    }
    let data = json!({ "grades": rep.grades, "random": random });
    Ok(RunReport::new("verify-lemmas", config, checks, data, Some(table)))
}

