//! Toledo ranks, JM-regularity, maximal JM-regular subspaces, relative
//! invariants, Arakelov–Milnor bounds and curvature.
//!
//! Every quantity uses the algebra's invariant form `B = c·tr` together with
//! `B(γ, γ)` computed for the same `B`, so results do not depend on `c`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{form_nondegenerate, kernel_vectors, rank, rat, RatMatrix, Rational};
use crate::matrix_lie::{jm_complete, ClassicalFamily, GradedMatrixAlgebra, Sl2Triple};

/// A triple through `e` with the quantities derived from it.
#[derive(Debug, Clone)]
pub struct TripleData {
    pub triple: Sl2Triple,
    /// `s = ζ − h/2`.
    pub s: RatMatrix,
    /// `B(h/2, h/2)·B(γ, γ)`.
    pub rk_t: Rational,
    /// `B(h/2, h/2)`.
    pub b_half_h: Rational,
    /// `B(ζ, h)`.
    pub b_zeta_h: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToledoReport {
    pub rk_t_e: Rational,
    pub rk_t_phvs: Rational,
    pub b_zeta_zeta_times_bgg: Rational,
    pub jm_regular: bool,
    pub s_vector: RatMatrix,
    /// `(dim ĝ_0, dim ĝ_1)`.
    pub hat_dims: (usize, usize),
    pub parabolic_dim: usize,
    pub c_hat_dim: usize,
    /// Nondegeneracy of `B` on the stabilizer `g_0^e`, a sufficient test
    /// for reductivity.
    pub phvs_regular: bool,
    pub chi_vanishes_on_stabilizer: bool,
    pub open_orbit_certified: bool,
    pub orbit_is_open: bool,
}

#[derive(Debug, Clone)]
pub struct MaximalJmSubspace {
    pub hat_g0: Vec<RatMatrix>,
    pub hat_g1: Vec<RatMatrix>,
    /// `dim p_{0,e}`: ad_s-eigenvalues `≤ 0` on `g_0`, i.e. `Ad(exp(ts))`
    /// bounded as `t → +∞`.
    pub parabolic_dim: usize,
    /// Dimension of the centralizer of the triple in `g_0`.
    pub c_hat_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeInvariantData {
    pub chi_vanishes_on_stabilizer: bool,
    pub degree_over_q: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AMBounds {
    pub genus: i64,
    pub lambda: Rational,
    pub lower: Rational,
    pub upper: Rational,
    pub maximal_toledo: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curvature {
    /// `−1/rk_T(e)`.
    pub normalized: Rational,
    /// `−2/B(ζ, h)` for the algebra's form.
    pub raw: Rational,
}

fn bgg(ga: &GradedMatrixAlgebra) -> Result<&Rational> {
    ga.b_gamma_gamma().ok_or_else(|| Error::EmptyG1("g_1 is zero".into()))
}

/// `χ_T(x) = B(ζ, x)·B(γ, γ)`.
pub fn toledo_character(ga: &GradedMatrixAlgebra, x: &RatMatrix) -> Result<Rational> {
    Ok(ga.form(&ga.zeta, x) * bgg(ga)?)
}

/// Completes `e` and checks `½χ_T(h) = B(h/2, h/2)·B(γ, γ)` and `B(h/2, s) = 0`.
pub fn triple_data(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<TripleData> {
    let b = bgg(ga)?.clone();
    let triple = jm_complete(ga, e)?;
    let half_h = triple.h.scale(&Rational::new(1.into(), 2.into()));
    let s = &ga.zeta - &half_h;
    let b_half_h = ga.form(&half_h, &half_h);
    let b_zeta_h = ga.form(&ga.zeta, &triple.h);
    let rk_t = &b_half_h * &b;
    let half_chi = toledo_character(ga, &half_h)?;
    if half_chi != rk_t {
        return Err(Error::internal("½χ_T(h) differs from B(h/2,h/2)B(γ,γ)"));
    }
    if !ga.form(&half_h, &s).is_zero() {
        return Err(Error::internal("B(h/2, s) ≠ 0"));
    }
    Ok(TripleData { triple, s, rk_t, b_half_h, b_zeta_h })
}

/// `rk_T(e)`; zero for `e = 0`.
pub fn toledo_rank(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<Rational> {
    if !ga.in_piece(1, e) {
        return Err(Error::input("e does not lie in g_1"));
    }
    if e.is_zero() {
        bgg(ga)?;
        return Ok(Rational::zero());
    }
    Ok(triple_data(ga, e)?.rk_t)
}

/// `rk_T` at the generic element, with its certification flag.
pub fn phvs_toledo_rank(ga: &GradedMatrixAlgebra, seed: u64) -> Result<(Rational, bool)> {
    let g = ga.generic_g1_element(seed)?;
    Ok((toledo_rank(ga, &g.e)?, g.certified))
}

/// `(s = 0, s)`.
pub fn jm_regularity(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<(bool, RatMatrix)> {
    let td = triple_data(ga, e)?;
    Ok((td.s.is_zero(), td.s))
}

fn kernel_in_piece(ga: &GradedMatrixAlgebra, j: i64, s: &RatMatrix) -> Vec<RatMatrix> {
    let basis = ga.piece_basis(j);
    let m = ga.map_into_piece(&basis, j, |x| s.bracket(x));
    kernel_vectors(&m).iter().map(|v| ga.alg.combine(&basis, v)).collect()
}

/// Eigenvalues with multiplicities of a map diagonalizable over ℤ, searched in `[−bound, bound]`.
pub fn integer_spectrum(a: &RatMatrix, bound: i64) -> Result<Vec<(i64, usize)>> {
    let n = a.rows();
    if a.is_diagonal() {
        let mut counts = std::collections::BTreeMap::new();
        for d in a.diag() {
            if !d.is_integer() {
                return Err(Error::internal("ad_h has a non-integer eigenvalue"));
            }
            let k = i64::try_from(d.to_integer()).map_err(|_| Error::internal("eigenvalue overflow"))?;
            *counts.entry(k).or_insert(0) += 1;
        }
        return Ok(counts.into_iter().collect());
    }
    let mut out = Vec::new();
    let mut total = 0;
    for k in -bound..=bound {
        let shifted = a - &RatMatrix::identity(n).scale(&rat(k));
        let m = n - rank(&shifted);
        if m > 0 {
            out.push((k, m));
            total += m;
        }
    }
    if total != n {
        return Err(Error::internal("ad_h is not diagonalizable with integer spectrum"));
    }
    Ok(out)
}

pub fn maximal_jm_subspace_of(ga: &GradedMatrixAlgebra, td: &TripleData) -> Result<MaximalJmSubspace> {
    let s = &td.s;
    let t = &td.triple;
    let hat_g0 = kernel_in_piece(ga, 0, s);
    let hat_g1 = kernel_in_piece(ga, 1, s);

    if !s.bracket(&t.e).is_zero() {
        return Err(Error::internal("e ∉ ĝ_1"));
    }
    let m = ga.map_into_piece(&hat_g0, 1, |x| x.bracket(&t.e));
    if rank(&m) != hat_g1.len() {
        return Err(Error::internal("Ĝ_0-orbit of e is not open in ĝ_1"));
    }

    // On g_0, ad_ζ = 0, so ad_s = −ad_h/2.
    let g0 = ga.piece_basis(0);
    let ad_h = ga.map_into_piece(&g0, 0, |x| t.h.bracket(x));
    let bound = 2 * (ga.alg.n as i64 - 1);
    let parabolic_dim = integer_spectrum(&ad_h, bound)?.into_iter().filter(|&(k, _)| k >= 0).map(|(_, m)| m).sum();

    let c_hat_dim = ga.centralizer_in(&[&t.e, &t.h, &t.f], &g0).len();
    Ok(MaximalJmSubspace { hat_g0, hat_g1, parabolic_dim, c_hat_dim })
}

pub fn maximal_jm_subspace(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<MaximalJmSubspace> {
    maximal_jm_subspace_of(ga, &triple_data(ga, e)?)
}

/// Nondegeneracy of `B` on `g_0^e`; refuses elements outside the open orbit.
pub fn phvs_regular(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<bool> {
    if !ga.orbit_is_open(e) {
        return Err(Error::NotCertified);
    }
    let stab = ga.centralizer_in(&[e], &ga.piece_basis(0));
    form_nondegenerate(&ga.alg.gram(&stab))
}

pub fn relative_invariant_data(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<RelativeInvariantData> {
    let td = triple_data(ga, e)?;
    Ok(relative_invariant_of(ga, &td))
}

fn relative_invariant_of(ga: &GradedMatrixAlgebra, td: &TripleData) -> RelativeInvariantData {
    let stab = ga.centralizer_in(&[&td.triple.e], &ga.piece_basis(0));
    let chi_vanishes_on_stabilizer = stab.iter().all(|x| ga.form(&ga.zeta, x).is_zero());
    RelativeInvariantData { chi_vanishes_on_stabilizer, degree_over_q: td.b_half_h.clone() }
}

/// Bounds `−rk(2g−2) + λ(B(γ,γ)B(ζ,ζ) − rk) ≤ τ ≤ λ·B(γ,γ)B(ζ,ζ)`, and
/// the extremal value `−rk_T(G_0, g_1)(2g−2)`.
pub fn am_bounds(
    rk_t_phi: &Rational,
    bgg_bzz: &Rational,
    genus: i64,
    lambda: &Rational,
    rk_t_phvs: &Rational,
) -> Result<AMBounds> {
    if genus < 2 {
        return Err(Error::input(format!("genus must be at least 2, got {genus}")));
    }
    if rk_t_phi.is_negative() {
        return Err(Error::input("Toledo rank must be nonnegative"));
    }
    let chi = rat(2 * genus - 2);
    let lower = -(rk_t_phi * &chi) + lambda * (bgg_bzz - rk_t_phi);
    let upper = lambda * bgg_bzz;
    let maximal_toledo = -(rk_t_phvs * &chi);
    Ok(AMBounds { genus, lambda: lambda.clone(), lower, upper, maximal_toledo })
}

/// `τ = 2 deg V` for `V ⊕ W ⊕ V*` in `so_{2p+q}`, `q > 1`.
pub fn toledo_invariant_so(p: usize, q: usize, deg_v: i64) -> Result<Rational> {
    if p == 0 {
        return Err(Error::input("p must be positive"));
    }
    if q <= 1 {
        return Err(Error::Unsupported("q ≤ 1 uses a different normalization".into()));
    }
    Ok(rat(2 * deg_v))
}

/// Curvature at the critical point through `e`.
pub fn curvature_at_triple(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<Curvature> {
    let td = triple_data(ga, e)?;
    curvature_of(ga, &td)
}

fn curvature_of(ga: &GradedMatrixAlgebra, td: &TripleData) -> Result<Curvature> {
    if td.rk_t.is_zero() {
        return Err(Error::UndefinedCurvature);
    }
    let normalized = -Rational::one() / &td.rk_t;
    let raw = rat(-2) / &td.b_zeta_h;
    if raw != &normalized * bgg(ga)? {
        return Err(Error::internal("K_raw ≠ B(γ,γ)·K_norm"));
    }
    Ok(Curvature { normalized, raw })
}

/// `K(x) = −|[x, xᵀ]|²/|x|⁴` with `|y|² = B(yᵀ, y)`, and `K/B(γ, γ)`.
pub fn curvature_raw_sl(ga: &GradedMatrixAlgebra, x: &RatMatrix) -> Result<Curvature> {
    if ga.family() != ClassicalFamily::Sl {
        return Err(Error::Unsupported("raw curvature is implemented for sl_n only".into()));
    }
    if !ga.in_piece(1, x) {
        return Err(Error::input("x does not lie in g_1"));
    }
    if x.is_zero() {
        return Err(Error::input("x must be nonzero"));
    }
    let xt = x.transpose();
    let c = x.bracket(&xt);
    let num = ga.form(&c.transpose(), &c);
    let den = ga.form(&xt, x);
    let raw = -num / (&den * &den);
    let normalized = &raw / bgg(ga)?;
    Ok(Curvature { normalized, raw })
}

/// Full report for `e`, or for the generic element when `e` is `None`.
pub fn toledo_report(ga: &GradedMatrixAlgebra, e: Option<&RatMatrix>, seed: u64) -> Result<ToledoReport> {
    let generic = ga.generic_g1_element(seed)?;
    let rk_t_phvs = toledo_rank(ga, &generic.e)?;
    let bzz_bgg = ga.form(&ga.zeta, &ga.zeta) * bgg(ga)?;
    let e = e.unwrap_or(&generic.e);
    let orbit_is_open = ga.orbit_is_open(e);
    let open_orbit_certified = generic.certified;

    if e.is_zero() {
        let g0 = ga.piece_basis(0);
        return Ok(ToledoReport {
            rk_t_e: Rational::zero(),
            rk_t_phvs,
            b_zeta_zeta_times_bgg: bzz_bgg,
            jm_regular: false,
            s_vector: ga.zeta.clone(),
            hat_dims: (ga.dim(0), 0),
            parabolic_dim: ga.dim(0),
            c_hat_dim: g0.len(),
            phvs_regular: false,
            chi_vanishes_on_stabilizer: g0.iter().all(|x| ga.form(&ga.zeta, x).is_zero()),
            open_orbit_certified,
            orbit_is_open,
        });
    }

    let td = triple_data(ga, e)?;
    let mx = maximal_jm_subspace_of(ga, &td)?;
    let ri = relative_invariant_of(ga, &td);
    let phvs_regular = if orbit_is_open { phvs_regular(ga, e)? } else { false };
    Ok(ToledoReport {
        rk_t_e: td.rk_t.clone(),
        rk_t_phvs,
        b_zeta_zeta_times_bgg: bzz_bgg,
        jm_regular: td.s.is_zero(),
        s_vector: td.s.clone(),
        hat_dims: (mx.hat_g0.len(), mx.hat_g1.len()),
        parabolic_dim: mx.parabolic_dim,
        c_hat_dim: mx.c_hat_dim,
        phvs_regular,
        chi_vanishes_on_stabilizer: ri.chi_vanishes_on_stabilizer,
        open_orbit_certified,
        orbit_is_open,
    })
}

/// Curvature block for a report: the value at `e`, if defined.
pub fn curvature_for(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<Option<Curvature>> {
    if e.is_zero() {
        return Ok(None);
    }
    let td = triple_data(ga, e)?;
    match curvature_of(ga, &td) {
        Ok(c) => Ok(Some(c)),
        Err(Error::UndefinedCurvature) => Ok(None),
        Err(err) => Err(err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ratio;
    use crate::matrix_lie::{build_classical, ZetaSpec};

    #[test]
    fn sl2_principal() {
        let ga = build_classical(ClassicalFamily::Sl, 2, None).unwrap();
        let e = ga.piece_basis(1)[0].clone();
        assert_eq!(toledo_rank(&ga, &e).unwrap(), rat(1));
        let ri = relative_invariant_data(&ga, &e).unwrap();
        assert!(ri.chi_vanishes_on_stabilizer);
        assert_eq!(ri.degree_over_q, ratio(1, 2));
        assert_eq!(curvature_at_triple(&ga, &e).unwrap().normalized, rat(-1));
        assert_eq!(curvature_raw_sl(&ga, &e).unwrap().normalized, rat(-1));
        assert!(jm_regularity(&ga, &e).unwrap().0);
    }

    #[test]
    fn sl3_principal_curvatures() {
        let ga = build_classical(ClassicalFamily::Sl, 3, None).unwrap();
        let b = ga.piece_basis(1);
        assert_eq!(curvature_raw_sl(&ga, &b[0]).unwrap().normalized, rat(-1));
        let x = &b[0] + &b[1];
        assert_eq!(curvature_raw_sl(&ga, &x).unwrap().normalized, ratio(-1, 4));
        assert_eq!(curvature_at_triple(&ga, &x).unwrap().normalized, ratio(-1, 4));
    }

    #[test]
    fn zero_element() {
        let ga = build_classical(ClassicalFamily::Sl, 3, None).unwrap();
        let z = RatMatrix::zeros(3, 3);
        assert_eq!(toledo_rank(&ga, &z).unwrap(), rat(0));
        assert!(matches!(jm_regularity(&ga, &z), Err(Error::Input(_))));
        assert!(matches!(curvature_raw_sl(&ga, &z), Err(Error::Input(_))));
    }

    #[test]
    fn bounds() {
        let b = am_bounds(&rat(4), &rat(4), 2, &rat(0), &rat(4)).unwrap();
        assert_eq!((b.lower, b.upper, b.maximal_toledo), (rat(-8), rat(0), rat(-8)));
        let b = am_bounds(&rat(0), &rat(4), 3, &rat(0), &rat(4)).unwrap();
        assert_eq!((b.lower, b.upper), (rat(0), rat(0)));
        assert!(am_bounds(&rat(1), &rat(1), 1, &rat(0), &rat(1)).is_err());
        assert!(am_bounds(&rat(-1), &rat(1), 2, &rat(0), &rat(1)).is_err());
    }

    #[test]
    fn so_invariant() {
        assert_eq!(toledo_invariant_so(2, 3, -3).unwrap(), rat(-6));
        assert_eq!(toledo_invariant_so(2, 3, 0).unwrap(), rat(0));
        assert!(matches!(toledo_invariant_so(2, 1, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn raw_curvature_needs_sl() {
        let ga = build_classical(ClassicalFamily::Sp, 4, None).unwrap();
        let e = ga.piece_basis(1)[0].clone();
        assert!(matches!(curvature_raw_sl(&ga, &e), Err(Error::Unsupported(_))));
    }

    #[test]
    fn phvs_regular_refuses_uncertified() {
        let ga = build_classical(ClassicalFamily::Sl, 3, Some(ZetaSpec::Labels(vec![1, 1]))).unwrap();
        let e = ga.piece_basis(1)[0].clone();
        assert_eq!(phvs_regular(&ga, &e), Err(Error::NotCertified));
    }
}
