use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::Value;

use super::query::{GradingSel, QueryKind, QuerySpec, SweepFamily};
use super::{diag_or_matrix, ints, obj, q, qs, ReportDocument, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::exact_linalg::{rank, RatMatrix, Rational};
use crate::grading::{theta_labels, Grading};
use crate::matrix_lie::{
    build_classical, jm_complete_in, ClassicalFamily, GradedMatrixAlgebra, MatrixLieAlgebra, ZetaSpec,
};
use crate::orbit_theory::{
    h_eigenvalues, is_distinguished, is_even_orbit, jordan_representative, jordan_type, partition_valid,
    so_block_grading, so_orbit_representative, toledo_rank_sl, Partition, SOOrbitLabel,
};
use crate::root_system::{build_root_system, LieType};
use crate::toledo::{
    am_bounds, curvature_for, integer_spectrum, relative_invariant_data, toledo_invariant_so, toledo_rank,
    toledo_report, triple_data, ToledoReport,
};

const STABILIZER_CRITERION: &str = "form_nondegenerate_on_stabilizer";

pub fn run_query(spec: &QuerySpec) -> Result<ReportDocument> {
    let seed = spec.seed;
    match &spec.kind {
        QueryKind::Grade { lie_type, labels } => grade_report(*lie_type, labels, seed),
        QueryKind::Rank { family, n, grading, genus, lambda } => {
            rank_report(*family, *n, grading, *genus, lambda, seed)
        }
        QueryKind::Orbit { family, n, partition } => orbit_report(*family, *n, partition, seed),
        QueryKind::SoOrbit { label, genus } => so_orbit_report(label, *genus, seed),
        QueryKind::Sweep { family, max_rank } => sweep_report(*family, *max_rank, seed),
    }
}

fn algebra_name(family: ClassicalFamily, n: usize) -> String {
    format!("{family}{n}")
}

fn provenance(form: &str, scale: &Rational, seed: u64, certification: Value) -> Value {
    obj([
        ("form", Value::from(form)),
        ("form_scale", q(scale)),
        ("seed", Value::from(seed)),
        ("certification", certification),
    ])
}

fn dims_block(dims: &[(i64, usize)]) -> Value {
    Value::Array(dims.iter().map(|&(j, d)| obj([("degree", Value::from(j)), ("dim", Value::from(d))])).collect())
}

fn root_grading_block(g: &Grading) -> Value {
    let pd = g.parity_real_form_dims();
    let toledo = match &g.toledo {
        Some(t) => obj([
            ("gamma", ints(&t.gamma.coords)),
            ("b_gamma_gamma", q(&t.b_gamma_gamma)),
            ("b_zeta_zeta", q(&t.b_zeta_zeta)),
            ("b_zeta_zeta_times_bgg", q(&(&t.b_zeta_zeta * &t.b_gamma_gamma))),
        ]),
        None => Value::Null,
    };
    obj([
        ("lie_type", Value::from(g.rs.lie_type.to_string())),
        ("labels", ints(&g.labels)),
        ("zeta_coroot_coords", qs(&g.zeta)),
        ("dim_g", Value::from(g.rs.lie_type.dimension())),
        ("dims", dims_block(&g.dims())),
        (
            "real_form",
            obj([
                ("dim_h", Value::from(pd.dim_h)),
                ("dim_m", Value::from(pd.dim_m)),
                ("period_domain_dim", Value::from(pd.period_domain_dim)),
            ]),
        ),
        ("toledo", toledo),
    ])
}

fn grade_report(lie_type: LieType, labels: &[i64], seed: u64) -> Result<ReportDocument> {
    let rs = build_root_system(lie_type)?;
    let g = Grading::new(&rs, labels)?;
    let value = obj([
        ("schema_version", Value::from(SCHEMA_VERSION)),
        (
            "query",
            obj([
                ("kind", Value::from("grade")),
                ("lie_type", Value::from(lie_type.to_string())),
                ("labels", ints(labels)),
            ]),
        ),
        ("grading", root_grading_block(&g)),
        ("provenance", provenance("killing", &g.form_scale, seed, obj([]))),
    ]);
    Ok(ReportDocument { value, certified: true })
}

/// Nonzero entries as `[row, col, value]`, 1-based.
fn entries(m: &RatMatrix) -> Value {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                out.push(Value::Array(vec![Value::from(i + 1), Value::from(j + 1), q(&m[(i, j)])]));
            }
        }
    }
    Value::Array(out)
}

fn matrix_grading_block(ga: &GradedMatrixAlgebra) -> Value {
    let bgg = ga.b_gamma_gamma().map_or(Value::Null, q);
    let gamma = ga.gamma_vector().map_or(Value::Null, entries);
    obj([
        ("labels", qs(&ga.labels)),
        ("zeta", diag_or_matrix(&ga.zeta)),
        ("dim_g", Value::from(ga.alg.dim())),
        ("dims", dims_block(&ga.dims())),
        ("gamma_root_vector", gamma),
        ("b_gamma_gamma", bgg),
        ("b_zeta_zeta", q(&ga.form(&ga.zeta, &ga.zeta))),
        ("root_level", ga.root_grading.as_ref().map_or(Value::Null, root_grading_block)),
    ])
}

fn toledo_block(ga: &GradedMatrixAlgebra, e: &RatMatrix, r: &ToledoReport) -> Result<Value> {
    // B(h/2, h/2) depends on the form, so it sits outside ToledoReport.
    let degree = if e.is_zero() { Value::Null } else { q(&relative_invariant_data(ga, e)?.degree_over_q) };
    Ok(obj([
        ("rk_t_e", q(&r.rk_t_e)),
        ("rk_t_phvs", q(&r.rk_t_phvs)),
        ("b_zeta_zeta_times_bgg", q(&r.b_zeta_zeta_times_bgg)),
        ("jm_regular", Value::Bool(r.jm_regular)),
        ("s", diag_or_matrix(&r.s_vector)),
        ("dim_hat_g0", Value::from(r.hat_dims.0)),
        ("dim_hat_g1", Value::from(r.hat_dims.1)),
        ("parabolic_dim", Value::from(r.parabolic_dim)),
        ("c_hat_dim", Value::from(r.c_hat_dim)),
        ("phvs_regular", Value::Bool(r.phvs_regular)),
        ("phvs_regular_criterion", Value::from(STABILIZER_CRITERION)),
        (
            "relative_invariant",
            obj([("chi_vanishes_on_stabilizer", Value::Bool(r.chi_vanishes_on_stabilizer)), ("degree_over_q", degree)]),
        ),
        ("orbit_is_open", Value::Bool(r.orbit_is_open)),
        ("open_orbit_certified", Value::Bool(r.open_orbit_certified)),
        ("provisional", Value::Bool(!r.open_orbit_certified)),
    ]))
}

fn curvature_block(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<Value> {
    Ok(match curvature_for(ga, e)? {
        Some(c) => obj([("normalized", q(&c.normalized)), ("raw", q(&c.raw))]),
        None => Value::Null,
    })
}

fn rank_report(
    family: ClassicalFamily,
    n: usize,
    sel: &GradingSel,
    genus: Option<i64>,
    lambda: &Rational,
    seed: u64,
) -> Result<ReportDocument> {
    let alg = MatrixLieAlgebra::new(family, n)?;
    let (labels, theta) = match sel {
        GradingSel::Labels(l) => (l.clone(), Value::Null),
        GradingSel::Theta(t) => {
            (theta_labels(alg.rank, t)?, Value::Array(t.iter().map(|&i| Value::from(i + 1)).collect()))
        }
    };
    let ga = GradedMatrixAlgebra::new(alg, &ZetaSpec::Labels(labels.clone()))?;
    if ga.dim(1) == 0 {
        return Err(Error::EmptyG1(format!("labels {labels:?} give an empty g_1")));
    }
    let generic = ga.generic_g1_element(seed)?;
    let report = toledo_report(&ga, Some(&generic.e), seed)?;
    let am = match genus {
        Some(g) => {
            let b = am_bounds(&report.rk_t_e, &report.b_zeta_zeta_times_bgg, g, lambda, &report.rk_t_phvs)?;
            obj([
                ("genus", Value::from(b.genus)),
                ("lambda", q(&b.lambda)),
                ("lower", q(&b.lower)),
                ("upper", q(&b.upper)),
                ("maximal_toledo", q(&b.maximal_toledo)),
            ])
        }
        None => Value::Null,
    };
    let value = obj([
        ("schema_version", Value::from(SCHEMA_VERSION)),
        (
            "query",
            obj([
                ("kind", Value::from("rank")),
                ("algebra", Value::from(algebra_name(family, n))),
                ("labels", ints(&labels)),
                ("theta", theta),
                ("genus", genus.map_or(Value::Null, Value::from)),
                ("lambda", q(lambda)),
            ]),
        ),
        ("grading", matrix_grading_block(&ga)),
        (
            "generic_element",
            obj([
                ("entries", entries(&generic.e)),
                ("orbit_dim", Value::from(generic.orbit_dim)),
                ("attempt", Value::from(generic.attempt)),
            ]),
        ),
        ("toledo", toledo_block(&ga, &generic.e, &report)?),
        ("curvature", curvature_block(&ga, &generic.e)?),
        ("am_bounds", am),
        (
            "provenance",
            provenance(
                "trace",
                &ga.alg.form_scale,
                seed,
                obj([("open_orbit_certified", Value::Bool(report.open_orbit_certified))]),
            ),
        ),
    ]);
    Ok(ReportDocument { value, certified: report.open_orbit_certified })
}

fn orbit_report(family: ClassicalFamily, n: usize, lam: &Partition, seed: u64) -> Result<ReportDocument> {
    let query = obj([
        ("kind", Value::from("orbit")),
        ("algebra", Value::from(algebra_name(family, n))),
        ("partition", Value::from(lam.to_string())),
    ]);
    let valid = partition_valid(family, n, lam)?;
    let mut orbit = obj([("valid", Value::Bool(valid))]);
    if valid {
        let alg = MatrixLieAlgebra::new(family, n)?;
        let e = jordan_representative(family, n, lam)?;
        let jordan_ok = jordan_type(&e)? == *lam;
        let spectrum = if e.is_zero() {
            vec![(0, n)]
        } else {
            let t = jm_complete_in(&alg, &e)?;
            integer_spectrum(&t.h, n as i64)?
        };
        let predicted = h_eigenvalues(lam);
        let mut expected: Vec<(i64, usize)> = Vec::new();
        for &k in predicted.iter().rev() {
            match expected.last_mut() {
                Some((v, m)) if *v == k => *m += 1,
                _ => expected.push((k, 1)),
            }
        }
        let ad_e = alg.linear_map(alg.basis(), |x| alg.bracket(&e, x));
        let centralizer_dim = alg.dim() - rank(&ad_e);

        let principal = build_classical(family, n, None)?;
        let rk = if principal.in_piece(1, &e) { q(&toledo_rank(&principal, &e)?) } else { Value::Null };
        let formula = match family {
            ClassicalFamily::Sl => q(&toledo_rank_sl(lam)),
            _ => Value::Null,
        };
        let fields = [
            ("even", Value::Bool(is_even_orbit(lam))),
            ("distinguished", Value::Bool(is_distinguished(family, n, lam)?)),
            ("h_eigenvalues", ints(&predicted)),
            ("h_spectrum_matches", Value::Bool(spectrum == expected)),
            ("jordan_type_matches", Value::Bool(jordan_ok)),
            ("centralizer_dim", Value::from(centralizer_dim)),
            ("rk_t_principal", rk),
            ("rk_t_formula", formula),
        ];
        let map = orbit.as_object_mut().expect("object");
        for (k, v) in fields {
            map.insert(k.into(), v);
        }
    }
    let value = obj([
        ("schema_version", Value::from(SCHEMA_VERSION)),
        ("query", query),
        ("orbit", orbit),
        ("provenance", provenance("trace", &Rational::one(), seed, obj([]))),
    ]);
    Ok(ReportDocument { value, certified: true })
}

fn so_orbit_report(label: &SOOrbitLabel, genus: Option<i64>, seed: u64) -> Result<ReportDocument> {
    let ga = so_block_grading(label.p, label.q)?;
    let e = so_orbit_representative(label);
    let report = toledo_report(&ga, Some(&e), seed)?;
    let (h, h_ok) = if e.is_zero() {
        (Value::Null, Value::Null)
    } else {
        let td = triple_data(&ga, &e)?;
        (diag_or_matrix(&td.triple.h), Value::Bool(td.triple.h == label.expected_h()))
    };
    let am = match genus {
        Some(g) => {
            let lambda = Rational::zero();
            let b = am_bounds(&report.rk_t_e, &report.b_zeta_zeta_times_bgg, g, &lambda, &report.rk_t_phvs)?;
            let deg_v = match toledo_invariant_so(label.p, label.q, 1) {
                Ok(tau_per_degree) => q(&(&b.lower / &tau_per_degree)),
                Err(Error::Unsupported(_)) => Value::Null,
                Err(err) => return Err(err),
            };
            obj([
                ("genus", Value::from(g)),
                ("lambda", q(&lambda)),
                ("lower", q(&b.lower)),
                ("upper", q(&b.upper)),
                ("maximal_toledo", q(&b.maximal_toledo)),
                ("deg_v_lower_bound", deg_v),
            ])
        }
        None => Value::Null,
    };
    let value = obj([
        ("schema_version", Value::from(SCHEMA_VERSION)),
        (
            "query",
            obj([
                ("kind", Value::from("so-orbit")),
                ("p", Value::from(label.p)),
                ("q", Value::from(label.q)),
                ("r1", Value::from(label.r1)),
                ("r2", Value::from(label.r2)),
                ("genus", genus.map_or(Value::Null, Value::from)),
            ]),
        ),
        ("grading", matrix_grading_block(&ga)),
        (
            "orbit",
            obj([
                ("algebra", Value::from(algebra_name(ClassicalFamily::So, ga.alg.n))),
                ("expected_rk_t", q(&label.expected_rank())),
                ("matrix_rank", Value::from(rank(&e))),
                ("h", h),
                ("h_matches_normal_form", h_ok),
            ]),
        ),
        ("toledo", toledo_block(&ga, &e, &report)?),
        ("curvature", curvature_block(&ga, &e)?),
        ("am_bounds", am),
        (
            "provenance",
            provenance(
                "trace",
                &ga.alg.form_scale,
                seed,
                obj([("open_orbit_certified", Value::Bool(report.open_orbit_certified))]),
            ),
        ),
    ]);
    Ok(ReportDocument { value, certified: report.open_orbit_certified })
}

/// The `(family, n, labels)` items of a sweep, in output order.
pub fn sweep_items(family: SweepFamily, max_rank: usize) -> Vec<(ClassicalFamily, usize, Vec<i64>)> {
    let sizes: Vec<(ClassicalFamily, usize, usize)> = (1..=max_rank)
        .flat_map(|r| {
            let v: Vec<(ClassicalFamily, usize, usize)> = match family {
                SweepFamily::A => vec![(ClassicalFamily::Sl, r + 1, r)],
                SweepFamily::B => vec![(ClassicalFamily::So, 2 * r + 1, r)],
                SweepFamily::C => vec![(ClassicalFamily::Sp, 2 * r, r)],
                SweepFamily::D if r >= 2 => vec![(ClassicalFamily::So, 2 * r, r)],
                SweepFamily::So if r >= 2 => {
                    vec![(ClassicalFamily::So, 2 * r + 1, r), (ClassicalFamily::So, 2 * r, r)]
                }
                SweepFamily::So => vec![(ClassicalFamily::So, 2 * r + 1, r)],
                SweepFamily::D => vec![],
            };
            v
        })
        .collect();
    let mut out = Vec::new();
    for (fam, n, r) in sizes {
        for mask in 1u64..(1 << r) {
            let labels = (0..r).map(|i| ((mask >> (r - 1 - i)) & 1) as i64).collect();
            out.push((fam, n, labels));
        }
    }
    out
}

fn sweep_report(family: SweepFamily, max_rank: usize, seed: u64) -> Result<ReportDocument> {
    let items = sweep_items(family, max_rank);
    let results: Vec<(Value, bool)> = items
        .par_iter()
        .map(|(fam, n, labels)| {
            let zero = Rational::zero();
            let head = [("algebra", Value::from(algebra_name(*fam, *n))), ("labels", ints(labels))];
            match rank_report(*fam, *n, &GradingSel::Labels(labels.clone()), None, &zero, seed) {
                Ok(doc) => {
                    let [a, b] = head;
                    (obj([a, b, ("report", doc.value)]), doc.certified)
                }
                Err(err) => {
                    let [a, b] = head;
                    (obj([a, b, ("error", Value::from(err.to_string()))]), false)
                }
            }
        })
        .collect();
    let certified = results.iter().all(|(_, c)| *c);
    let fam_name = match family {
        SweepFamily::A => "A",
        SweepFamily::B => "B",
        SweepFamily::C => "C",
        SweepFamily::D => "D",
        SweepFamily::So => "so",
    };
    let value = obj([
        ("schema_version", Value::from(SCHEMA_VERSION)),
        (
            "query",
            obj([
                ("kind", Value::from("sweep")),
                ("family", Value::from(fam_name)),
                ("max_rank", Value::from(max_rank)),
            ]),
        ),
        ("count", Value::from(results.len())),
        ("items", Value::Array(results.into_iter().map(|(v, _)| v).collect())),
        (
            "provenance",
            provenance("trace", &Rational::one(), seed, obj([("all_open_orbits_certified", Value::Bool(certified))])),
        ),
    ]);
    Ok(ReportDocument { value, certified })
}
