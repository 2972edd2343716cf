//! ℤ-gradings from nonnegative Dynkin labels, at the level of roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{rat, solve_linear, RatMatrix, Rational};
use crate::root_system::{bilinear, Root, RootSystem};

/// Normalization data of the Toledo character `χ_T(x) = B(ζ, x)·B(γ, γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToledoData {
    /// Lexicographically smallest degree-one root of maximal length.
    pub gamma: Root,
    pub b_gamma_gamma: Rational,
    pub b_zeta_zeta: Rational,
}

#[derive(Debug, Clone)]
pub struct Grading {
    pub rs: RootSystem,
    pub labels: Vec<i64>,
    /// Coordinates of `ζ` on the simple coroots.
    pub zeta: Vec<Rational>,
    /// Roots by degree; both signs are included.
    pub pieces: BTreeMap<i64, Vec<Root>>,
    /// Multiplier applied to the Killing form.
    pub form_scale: Rational,
    pub toledo: Option<ToledoData>,
}

/// Dimensions of the complexified Cartan decomposition attached to the grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityDims {
    pub dim_h: usize,
    pub dim_m: usize,
    /// `Σ_{j>0} dim g_j`.
    pub period_domain_dim: usize,
}

impl Grading {
    /// Builds the grading; Toledo data is `None` when `g_1` is empty.
    pub fn new(rs: &RootSystem, labels: &[i64]) -> Result<Self> {
        Self::with_form_scale(rs, labels, &Rational::one())
    }

    /// Same as [`Grading::new`] with the invariant form `scale · Killing`.
    pub fn with_form_scale(rs: &RootSystem, labels: &[i64], scale: &Rational) -> Result<Self> {
        let n = rs.rank();
        if labels.len() != n {
            return Err(Error::input(format!("expected {n} labels for {}, got {}", rs.lie_type, labels.len())));
        }
        if labels.iter().any(|&p| p < 0) {
            return Err(Error::input("labels must be nonnegative"));
        }
        if *scale <= Rational::zero() {
            return Err(Error::input("form scale must be positive"));
        }

        // α_i(ζ) = Σ_j z_j α_i(h_j) = Σ_j z_j C[j][i], so Cᵀ z = p.
        let ct = RatMatrix::from_rows((0..n).map(|i| (0..n).map(|j| rat(rs.cartan_matrix[j][i])).collect()).collect())?;
        let p = RatMatrix::column(labels.iter().map(|&x| rat(x)).collect());
        let zeta = solve_linear(&ct, &p)?.ok_or_else(|| Error::internal("Cartan matrix singular"))?.into_entries();

        let mut pieces: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
        for r in rs.all_roots() {
            let d: i64 = r.coords.iter().zip(labels).map(|(c, p)| c * p).sum();
            pieces.entry(d).or_default().push(r);
        }
        pieces.entry(0).or_default();

        let mut g =
            Grading { rs: rs.clone(), labels: labels.to_vec(), zeta, pieces, form_scale: scale.clone(), toledo: None };
        g.toledo = g.compute_toledo()?;
        Ok(g)
    }

    fn compute_toledo(&self) -> Result<Option<ToledoData>> {
        let Some(deg1) = self.pieces.get(&1) else {
            return Ok(None);
        };
        let mut best: Option<(Rational, &Root)> = None;
        for r in deg1 {
            let nr = self.rs.dual_norm_scaled(&r.as_rational(), &self.form_scale)?;
            best = match best {
                Some((bn, br)) if bn > nr || (bn == nr && br <= r) => Some((bn, br)),
                _ => Some((nr, r)),
            };
        }
        let Some((b_gamma_gamma, gamma)) = best else {
            return Ok(None);
        };
        let b_zeta_zeta = self.form(&self.zeta, &self.zeta);
        Ok(Some(ToledoData { gamma: gamma.clone(), b_gamma_gamma, b_zeta_zeta }))
    }

    /// `B(x, y)` for Cartan elements in coroot coordinates.
    pub fn form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        bilinear(self.rs.killing_on_cartan(), x, y) * &self.form_scale
    }

    pub fn dim(&self, j: i64) -> usize {
        let roots = self.pieces.get(&j).map_or(0, Vec::len);
        if j == 0 {
            roots + self.rs.rank()
        } else {
            roots
        }
    }

    /// `(degree, dim g_j)` for every nonzero piece, in increasing degree.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces.keys().map(|&j| (j, self.dim(j))).filter(|&(_, d)| d > 0).collect()
    }

    pub fn degree(&self, r: &Root) -> i64 {
        r.coords.iter().zip(&self.labels).map(|(c, p)| c * p).sum()
    }

    pub fn max_degree(&self) -> i64 {
        self.pieces.keys().copied().max().unwrap_or(0)
    }

    pub fn parity_real_form_dims(&self) -> ParityDims {
        let mut dim_h = 0;
        let mut dim_m = 0;
        let mut period_domain_dim = 0;
        for &j in self.pieces.keys() {
            let d = self.dim(j);
            if j % 2 == 0 {
                dim_h += d;
            } else {
                dim_m += d;
            }
            if j > 0 {
                period_domain_dim += d;
            }
        }
        ParityDims { dim_h, dim_m, period_domain_dim }
    }

    /// `χ_T(x) = B(ζ, x)·B(γ, γ)`; `None` without Toledo data.
    pub fn toledo_character_on(&self, x: &[Rational]) -> Option<Rational> {
        let t = self.toledo.as_ref()?;
        Some(self.form(&self.zeta, x) * &t.b_gamma_gamma)
    }

    /// `B(ζ, ζ)·B(γ, γ)`, the Toledo rank when the grading is JM-regular.
    pub fn b_zeta_zeta_times_bgg(&self) -> Option<Rational> {
        self.toledo.as_ref().map(|t| &t.b_zeta_zeta * &t.b_gamma_gamma)
    }
}

/// Like [`Grading::new`], but an empty `g_1` is an error.
pub fn make_grading(rs: &RootSystem, labels: &[i64]) -> Result<Grading> {
    let g = Grading::new(rs, labels)?;
    if g.toledo.is_none() {
        return Err(Error::EmptyG1(format!("{} with labels {:?}", rs.lie_type, labels)));
    }
    Ok(g)
}

/// Grading with label 0 on the nodes of `theta` (0-based) and 1 elsewhere.
pub fn canonical_parabolic_grading(rs: &RootSystem, theta: &[usize]) -> Result<Grading> {
    let labels = theta_labels(rs.rank(), theta)?;
    make_grading(rs, &labels)
}

pub fn theta_labels(rank: usize, theta: &[usize]) -> Result<Vec<i64>> {
    let mut labels = vec![1; rank];
    for &i in theta {
        if i >= rank {
            return Err(Error::input(format!("node {} out of range 1..={rank}", i + 1)));
        }
        labels[i] = 0;
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn b3_one_zero_one() {
        let g = make_grading(&rs("B3"), &[1, 0, 1]).unwrap();
        assert_eq!(g.dim(1), 4);
        assert_eq!(g.dim(0), 5);
    }

    #[test]
    fn a1_principal() {
        let g = make_grading(&rs("A1"), &[1]).unwrap();
        assert_eq!((g.dim(1), g.dim(0)), (1, 1));
        assert_eq!(g.toledo.as_ref().unwrap().gamma.coords, vec![1]);
        let pd = g.parity_real_form_dims();
        assert_eq!((pd.dim_h, pd.dim_m, pd.period_domain_dim), (1, 2, 1));
    }

    #[test]
    fn so_single_node() {
        // B_n with node p crossed realizes so_{2p+q} with q = 2(n − p) + 1.
        for n in 2..=5usize {
            for p in 1..n {
                let q = 2 * (n - p) + 1;
                let mut labels = vec![0; n];
                labels[p - 1] = 1;
                let g = make_grading(&rs(&format!("B{n}")), &labels).unwrap();
                assert_eq!(g.dim(1), p * q);
                assert_eq!(g.dim(0), p * p + q * (q - 1) / 2);
            }
        }
    }

    #[test]
    fn zeta_evaluates_to_labels() {
        let r = rs("F4");
        let g = Grading::new(&r, &[0, 2, 1, 0]).unwrap();
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            let vals: Rational =
                (0..4).map(|j| &g.zeta[j] * rat(r.coroot_pairing(&e, j))).fold(Rational::zero(), |a, b| a + b);
            assert_eq!(vals, rat(g.labels[i]));
        }
    }

    #[test]
    fn empty_g1() {
        assert!(matches!(make_grading(&rs("A2"), &[0, 0]), Err(Error::EmptyG1(_))));
        assert!(matches!(make_grading(&rs("A2"), &[2, 0]), Err(Error::EmptyG1(_))));
        assert!(Grading::new(&rs("A2"), &[2, 0]).unwrap().toledo.is_none());
        assert!(canonical_parabolic_grading(&rs("A2"), &[0, 1]).is_err());
        assert!(make_grading(&rs("A2"), &[1]).is_err());
        assert!(make_grading(&rs("A2"), &[1, -1]).is_err());
    }

    #[test]
    fn principal_and_three_term() {
        let g = canonical_parabolic_grading(&rs("A2"), &[]).unwrap();
        assert_eq!(g.dim(1), 2);
        // C3, node 3 has coefficient 1 in the highest root.
        let g = canonical_parabolic_grading(&rs("C3"), &[0, 1]).unwrap();
        assert_eq!(g.max_degree(), 1);
        assert_eq!(g.dim(1), 6);
    }

    #[test]
    fn character_basics() {
        let g = make_grading(&rs("A3"), &[1, 1, 1]).unwrap();
        let zero = vec![rat(0); 3];
        assert_eq!(g.toledo_character_on(&zero).unwrap(), rat(0));
        assert_eq!(g.toledo_character_on(&g.zeta).unwrap(), g.b_zeta_zeta_times_bgg().unwrap());
    }
}
