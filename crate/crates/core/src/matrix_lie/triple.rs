//! Jacobson–Morozov completion by exact linear solves.

use super::classical::MatrixLieAlgebra;
use super::graded::GradedMatrixAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::{rat, solve_linear, RatMatrix, Rational};

/// `(f, h, e)` with `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: RatMatrix,
    pub h: RatMatrix,
    pub f: RatMatrix,
}

impl Sl2Triple {
    pub fn relations_hold(&self) -> bool {
        self.h.bracket(&self.e) == self.e.scale(&rat(2))
            && self.h.bracket(&self.f) == self.f.scale(&rat(-2))
            && self.e.bracket(&self.f) == self.h
    }
}

fn check_nilpotent(e: &RatMatrix) -> Result<()> {
    if e.is_zero() {
        return Err(Error::input("e must be nonzero"));
    }
    if !e.is_square() || !e.pow(e.rows() as u32)?.is_zero() {
        return Err(Error::input("e is not nilpotent"));
    }
    Ok(())
}

/// Some `h ∈ span(h_space)` with `[h, e] = 2e` and `h = [e, f′]`, `f′ ∈ span(f_space)`.
fn solve_h(
    alg: &MatrixLieAlgebra,
    e: &RatMatrix,
    h_space: &[RatMatrix],
    f_space: &[RatMatrix],
) -> Result<Option<RatMatrix>> {
    let (nh, nf, d) = (h_space.len(), f_space.len(), alg.dim());
    let mut a = RatMatrix::zeros(2 * d, nh + nf);
    let mut b = vec![Rational::from_integer(0.into()); 2 * d];
    for (k, hk) in h_space.iter().enumerate() {
        let top = alg.coords(&hk.bracket(e));
        let bottom = alg.coords(hk);
        for i in 0..d {
            a[(i, k)] = top[i].clone();
            a[(d + i, k)] = -bottom[i].clone();
        }
    }
    for (l, fl) in f_space.iter().enumerate() {
        let c = alg.coords(&e.bracket(fl));
        for i in 0..d {
            a[(d + i, nh + l)] = c[i].clone();
        }
    }
    for (i, v) in alg.coords(e).into_iter().enumerate() {
        b[i] = v * rat(2);
    }
    let Some(x) = solve_linear(&a, &RatMatrix::column(b))? else {
        return Ok(None);
    };
    Ok(Some(alg.combine(h_space, &x.entries()[..nh])))
}

/// Some `f ∈ span(f_space)` with `[e, f] = h` and `[h, f] = −2f`.
fn solve_f(alg: &MatrixLieAlgebra, e: &RatMatrix, h: &RatMatrix, f_space: &[RatMatrix]) -> Result<Option<RatMatrix>> {
    let d = alg.dim();
    let mut a = RatMatrix::zeros(2 * d, f_space.len());
    for (l, fl) in f_space.iter().enumerate() {
        let c1 = alg.coords(&e.bracket(fl));
        let c2 = alg.coords(&(&h.bracket(fl) + &fl.scale(&rat(2))));
        for i in 0..d {
            a[(i, l)] = c1[i].clone();
            a[(d + i, l)] = c2[i].clone();
        }
    }
    let mut b = alg.coords(h);
    b.resize(2 * d, Rational::from_integer(0.into()));
    Ok(solve_linear(&a, &RatMatrix::column(b))?.map(|x| alg.combine(f_space, x.entries())))
}

fn complete(
    alg: &MatrixLieAlgebra,
    e: &RatMatrix,
    h_spaces: &[&[RatMatrix]],
    f_space: &[RatMatrix],
) -> Result<Sl2Triple> {
    check_nilpotent(e)?;
    let mut h = None;
    for hs in h_spaces {
        if let Some(x) = solve_h(alg, e, hs, f_space)? {
            h = Some(x);
            break;
        }
    }
    let h = h.ok_or_else(|| Error::internal("no neutral element found for a nilpotent e"))?;
    let f = solve_f(alg, e, &h, f_space)?
        .ok_or_else(|| Error::internal("no nilnegative element found for the neutral element"))?;
    let t = Sl2Triple { e: e.clone(), h, f };
    if !t.relations_hold() {
        return Err(Error::internal("sl2 relations fail"));
    }
    Ok(t)
}

/// Graded completion: `h ∈ g_0`, `f ∈ g_{−1}`; a Cartan `h` is preferred.
pub fn jm_complete(ga: &GradedMatrixAlgebra, e: &RatMatrix) -> Result<Sl2Triple> {
    if !ga.in_piece(1, e) {
        return Err(Error::input("e does not lie in g_1"));
    }
    let g0 = ga.piece_basis(0);
    let fm = ga.piece_basis(-1);
    let t = complete(&ga.alg, e, &[ga.alg.cartan_basis(), &g0], &fm)?;
    if !ga.in_piece(0, &t.h) || !ga.in_piece(-1, &t.f) {
        return Err(Error::internal("triple not graded"));
    }
    Ok(t)
}

/// Ungraded completion inside the whole algebra; a Cartan `h` is preferred.
pub fn jm_complete_in(alg: &MatrixLieAlgebra, e: &RatMatrix) -> Result<Sl2Triple> {
    if !alg.contains(e) {
        return Err(Error::input("e does not lie in the algebra"));
    }
    complete(alg, e, &[alg.cartan_basis(), alg.basis()], alg.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_lie::{build_classical, ClassicalFamily};

    #[test]
    fn sl2_standard() {
        let ga = build_classical(ClassicalFamily::Sl, 2, None).unwrap();
        let e = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let t = jm_complete(&ga, &e).unwrap();
        assert_eq!(t.h, RatMatrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_eq!(t.f, RatMatrix::from_i64(&[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn regular_nilpotent_in_sl_n() {
        for n in 2..=6usize {
            let ga = build_classical(ClassicalFamily::Sl, n, None).unwrap();
            let mut e = RatMatrix::zeros(n, n);
            for i in 0..n - 1 {
                e[(i, i + 1)] = rat(1);
            }
            let t = jm_complete(&ga, &e).unwrap();
            let want: Vec<Rational> = (0..n).map(|i| rat(n as i64 - 1 - 2 * i as i64)).collect();
            assert_eq!(t.h, RatMatrix::diagonal(&want));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let ga = build_classical(ClassicalFamily::Sl, 3, None).unwrap();
        assert!(matches!(jm_complete(&ga, &RatMatrix::zeros(3, 3)), Err(Error::Input(_))));
        let mut x = RatMatrix::zeros(3, 3);
        x[(0, 2)] = rat(1);
        assert!(matches!(jm_complete(&ga, &x), Err(Error::Input(_))));
        let alg = MatrixLieAlgebra::new(ClassicalFamily::Sl, 2).unwrap();
        let h = RatMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(matches!(jm_complete_in(&alg, &h), Err(Error::Input(_))));
    }
}
