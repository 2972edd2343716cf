use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classical::{ClassicalFamily, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel_vectors, rank, rat, solve_linear, RatMatrix, Rational};
use crate::grading::Grading;
use crate::root_system::build_root_system;

/// How the grading element is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaSpec {
    /// Values `α_i(ζ)` on the simple roots.
    Labels(Vec<i64>),
    /// Torus coordinates: the full diagonal for sl, `t_1..t_r` for so/sp,
    /// giving `diag(t, [0], −reverse(t))`.
    Diagonal(Vec<Rational>),
}

#[derive(Debug, Clone)]
pub struct GradedMatrixAlgebra {
    pub alg: MatrixLieAlgebra,
    pub zeta: RatMatrix,
    /// `α_i(ζ)` on the simple roots.
    pub labels: Vec<Rational>,
    degrees: Vec<i64>,
    pieces: BTreeMap<i64, Vec<usize>>,
    /// `B*(γ, γ)` for the algebra's form; `None` when `g_1 = 0`.
    b_gamma_gamma: Option<Rational>,
    gamma_index: Option<usize>,
    /// Root-level grading for the same labels, when the labels are
    /// nonnegative integers and a root system is available.
    pub root_grading: Option<Grading>,
}

/// Generic element of `g_1` with the certification outcome.
#[derive(Debug, Clone)]
pub struct GenericElement {
    pub e: RatMatrix,
    pub orbit_dim: usize,
    pub certified: bool,
    /// 0 for the all-ones vector, otherwise the index of the seeded draw.
    pub attempt: usize,
}

const MAX_ATTEMPTS: usize = 64;
const SMALL_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// Graded classical algebra; `None` means the principal grading.
pub fn build_classical(family: ClassicalFamily, n: usize, zeta_spec: Option<ZetaSpec>) -> Result<GradedMatrixAlgebra> {
    let alg = MatrixLieAlgebra::new(family, n)?;
    let spec = zeta_spec.unwrap_or_else(|| ZetaSpec::Labels(vec![1; alg.rank]));
    GradedMatrixAlgebra::new(alg, &spec)
}

fn simple_root_values(alg: &MatrixLieAlgebra, d: &[Rational]) -> Vec<Rational> {
    alg.simple_pairs().iter().map(|&(a, b)| &d[a] - &d[b]).collect()
}

impl GradedMatrixAlgebra {
    pub fn new(alg: MatrixLieAlgebra, spec: &ZetaSpec) -> Result<Self> {
        let r = alg.rank;
        let zeta = match spec {
            ZetaSpec::Labels(p) => {
                if p.len() != r {
                    return Err(Error::input(format!(
                        "expected {r} labels for {}{}, got {}",
                        alg.family,
                        alg.n,
                        p.len()
                    )));
                }
                let cols: Vec<Vec<Rational>> =
                    alg.cartan_basis().iter().map(|h| simple_root_values(&alg, &h.diag())).collect();
                let m = RatMatrix::from_columns(r, &cols);
                let z = solve_linear(&m, &RatMatrix::column(p.iter().map(|&x| rat(x)).collect()))?
                    .ok_or_else(|| Error::internal("Cartan matrix singular"))?;
                alg.combine(alg.cartan_basis(), z.entries())
            }
            ZetaSpec::Diagonal(t) => {
                let want = if alg.family == ClassicalFamily::Sl { alg.n } else { r };
                if t.len() != want {
                    return Err(Error::input(format!("expected {want} diagonal entries, got {}", t.len())));
                }
                let d = RatMatrix::diagonal(&alg.torus_diagonal(t));
                if !d.trace().is_zero() {
                    return Err(Error::input("grading element must be traceless"));
                }
                d
            }
        };
        let d = zeta.diag();
        let labels = simple_root_values(&alg, &d);

        // ζ is diagonal, so the basis diagonalizes ad_ζ and the kernel of
        // ad_ζ − j is spanned by the basis vectors of eigenvalue j.
        let mut degrees = vec![0i64; alg.dim()];
        let mut pieces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, deg) in degrees.iter_mut().enumerate() {
            if let Some((i, j)) = alg.root_pair(k) {
                let v = &d[i] - &d[j];
                if !v.is_integer() {
                    return Err(Error::input(format!("ad_ζ has non-integer eigenvalue {v}")));
                }
                *deg = i64::try_from(v.to_integer()).map_err(|_| Error::input("eigenvalue too large"))?;
            }
            pieces.entry(*deg).or_default().push(k);
        }

        let mut ga = GradedMatrixAlgebra {
            alg,
            zeta,
            labels,
            degrees,
            pieces,
            b_gamma_gamma: None,
            gamma_index: None,
            root_grading: None,
        };
        ga.compute_gamma()?;
        ga.cross_check_root_level()?;
        Ok(ga)
    }

    /// Same grading with the invariant form multiplied by `scale`.
    pub fn with_form_scale(&self, scale: &Rational) -> Result<Self> {
        let alg = self.alg.with_form_scale(scale)?;
        let spec = ZetaSpec::Diagonal(self.torus_coords());
        GradedMatrixAlgebra::new(alg, &spec)
    }

    fn torus_coords(&self) -> Vec<Rational> {
        let d = self.zeta.diag();
        if self.alg.family == ClassicalFamily::Sl {
            d
        } else {
            d[..self.alg.rank].to_vec()
        }
    }

    /// For each degree-one root vector `b`, `H = [b, bᵀ]` is a multiple of
    /// the coroot; with `H_γ = 2H/γ(H)` the dual norm is `4/B(H_γ, H_γ)`.
    fn compute_gamma(&mut self) -> Result<()> {
        let mut best: Option<(Rational, usize)> = None;
        for &k in self.piece(1) {
            let b = &self.alg.basis()[k];
            let h = b.bracket(&b.transpose());
            let pos = self.alg.root_pair(k).expect("degree-one basis vectors are root vectors");
            let hb = h.bracket(b);
            let gh = hb[pos].clone();
            if gh.is_zero() || hb != b.scale(&gh) {
                return Err(Error::internal("[b, bᵀ] is not a coroot multiple"));
            }
            let hg = h.scale(&(rat(2) / &gh));
            let norm = rat(4) / self.alg.form(&hg, &hg);
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, k));
            }
        }
        if let Some((n, k)) = best {
            self.b_gamma_gamma = Some(n);
            self.gamma_index = Some(k);
        }
        Ok(())
    }

    fn cross_check_root_level(&mut self) -> Result<()> {
        let Some(t) = self.alg.lie_type() else {
            return Ok(());
        };
        let mut labels = Vec::with_capacity(self.labels.len());
        for l in &self.labels {
            if !l.is_integer() || l.is_negative() {
                return Ok(());
            }
            labels.push(i64::try_from(l.to_integer()).map_err(|_| Error::input("label too large"))?);
        }
        let rs = build_root_system(t)?;
        let g = Grading::new(&rs, &labels)?;
        for (j, d) in g.dims() {
            if self.dim(j) != d {
                return Err(Error::internal(format!("dim g_{j}: matrix {} vs roots {d}", self.dim(j))));
            }
        }
        if g.dims().iter().map(|(_, d)| d).sum::<usize>() != self.alg.dim() {
            return Err(Error::internal("piece dimensions do not sum to dim g"));
        }
        // B_K = c·B on the Cartan, hence B* = c·B_K* on roots.
        let h1 = &self.alg.cartan_basis()[0];
        let c = &rs.killing_on_cartan()[(0, 0)] / self.alg.form(h1, h1);
        match (&self.b_gamma_gamma, &g.toledo) {
            (Some(m), Some(td)) if *m == &c * &td.b_gamma_gamma => {}
            (None, None) => {}
            _ => return Err(Error::internal("B(γ,γ) disagrees with the root-level value")),
        }
        self.root_grading = Some(g);
        Ok(())
    }

    pub fn family(&self) -> ClassicalFamily {
        self.alg.family
    }

    pub fn piece(&self, j: i64) -> &[usize] {
        self.pieces.get(&j).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, j: i64) -> usize {
        self.piece(j).len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.keys().copied()
    }

    /// `(degree, dim g_j)` for every nonzero piece.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces.iter().map(|(&j, v)| (j, v.len())).collect()
    }

    pub fn piece_basis(&self, j: i64) -> Vec<RatMatrix> {
        self.piece(j).iter().map(|&k| self.alg.basis()[k].clone()).collect()
    }

    pub fn degree_of_basis(&self, k: usize) -> i64 {
        self.degrees[k]
    }

    pub fn b_gamma_gamma(&self) -> Option<&Rational> {
        self.b_gamma_gamma.as_ref()
    }

    /// Root vector spanning `g_γ`.
    pub fn gamma_vector(&self) -> Option<&RatMatrix> {
        self.gamma_index.map(|k| &self.alg.basis()[k])
    }

    pub fn form(&self, x: &RatMatrix, y: &RatMatrix) -> Rational {
        self.alg.form(x, y)
    }

    /// True when `x` lies in `g_j`.
    pub fn in_piece(&self, j: i64, x: &RatMatrix) -> bool {
        if !self.alg.contains(x) {
            return false;
        }
        self.alg.coords(x).iter().enumerate().all(|(k, c)| c.is_zero() || self.degrees[k] == j)
    }

    /// Coordinates of `x ∈ g_j` in the basis of `g_j`.
    pub fn piece_coords(&self, j: i64, x: &RatMatrix) -> Vec<Rational> {
        let c = self.alg.coords(x);
        self.piece(j).iter().map(|&k| c[k].clone()).collect()
    }

    /// Matrix of `x ↦ op(x)` from `domain` into `g_j` coordinates.
    pub fn map_into_piece(&self, domain: &[RatMatrix], j: i64, op: impl Fn(&RatMatrix) -> RatMatrix) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = domain.iter().map(|b| self.piece_coords(j, &op(b))).collect();
        RatMatrix::from_columns(self.dim(j), &cols)
    }

    /// Dimension of the `G_0`-orbit through `e ∈ g_1`.
    pub fn orbit_dim(&self, e: &RatMatrix) -> usize {
        let m = self.map_into_piece(&self.piece_basis(0), 1, |x| x.bracket(e));
        rank(&m)
    }

    /// `[g_0, e] = g_1`.
    pub fn orbit_is_open(&self, e: &RatMatrix) -> bool {
        self.orbit_dim(e) == self.dim(1)
    }

    /// Basis of `{x ∈ span(subspace) : [x, y] = 0 for all y ∈ elems}`.
    pub fn centralizer_in(&self, elems: &[&RatMatrix], subspace: &[RatMatrix]) -> Vec<RatMatrix> {
        centralizer_in(&self.alg, elems, subspace)
    }

    /// Deterministic search for a point of the open `G_0`-orbit in `g_1`.
    pub fn generic_g1_element(&self, seed: u64) -> Result<GenericElement> {
        let basis = self.piece_basis(1);
        if basis.is_empty() {
            return Err(Error::EmptyG1("no degree-one piece".into()));
        }
        let target = basis.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<GenericElement> = None;
        for attempt in 0..MAX_ATTEMPTS {
            let coeffs: Vec<Rational> = if attempt == 0 {
                vec![Rational::one(); target]
            } else {
                (0..target)
                    .map(|_| {
                        let p = SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())];
                        rat(if rng.gen_bool(0.5) { p } else { -p })
                    })
                    .collect()
            };
            let e = self.alg.combine(&basis, &coeffs);
            let orbit_dim = self.orbit_dim(&e);
            let certified = orbit_dim == target;
            if best.as_ref().is_none_or(|b| orbit_dim > b.orbit_dim) {
                best = Some(GenericElement { e, orbit_dim, certified, attempt });
            }
            if certified {
                break;
            }
        }
        Ok(best.expect("at least one attempt"))
    }
}

/// Basis of the common centralizer of `elems` inside `span(subspace)`.
pub fn centralizer_in(alg: &MatrixLieAlgebra, elems: &[&RatMatrix], subspace: &[RatMatrix]) -> Vec<RatMatrix> {
    if elems.is_empty() {
        return subspace.to_vec();
    }
    let blocks: Vec<RatMatrix> = elems.iter().map(|y| alg.linear_map(subspace, |x| x.bracket(y))).collect();
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    let m = RatMatrix::vstack(&refs).expect("equal column counts");
    kernel_vectors(&m).iter().map(|v| alg.combine(subspace, v)).collect()
}
