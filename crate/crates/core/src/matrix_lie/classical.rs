//! Matrix realizations of `sl_n`, `so_n` and `sp_n` over ℚ.
//!
//! `so_n` preserves the antidiagonal form `⟨e_i, e_{n+1−i}⟩ = 1`; `sp_n`
//! preserves `Ω = [[0, J], [−J, 0]]` with `J` antidiagonal. Both conditions
//! are stable under transpose, so `x ↦ xᵀ` is the compact conjugation on the
//! rational slice used throughout.
//!
//! The basis lists the simple coroots first, then one root vector per
//! canonical entry position `(i, j)`. The coordinate of a root vector is the
//! matrix entry at its canonical position.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{inverse, rat, RatMatrix, Rational};
use crate::root_system::{Family, LieType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalFamily {
    Sl,
    So,
    Sp,
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalFamily::Sl => "sl",
            ClassicalFamily::So => "so",
            ClassicalFamily::Sp => "sp",
        })
    }
}

impl FromStr for ClassicalFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(ClassicalFamily::Sl),
            "so" => Ok(ClassicalFamily::So),
            "sp" => Ok(ClassicalFamily::Sp),
            _ => Err(Error::input(format!("unknown classical family {s:?}"))),
        }
    }
}

/// Splits `"so7"` into `(So, 7)`.
pub fn parse_family_size(s: &str) -> Result<(ClassicalFamily, usize)> {
    let split = s
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::input(format!("expected <sl|so|sp><n>, got {s:?}")))?;
    let fam: ClassicalFamily = s[..split].to_ascii_lowercase().parse()?;
    let n: usize = s[split..].parse().map_err(|_| Error::input(format!("bad size in {s:?}")))?;
    Ok((fam, n))
}

#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra {
    pub family: ClassicalFamily,
    /// Size of the defining matrices.
    pub n: usize,
    pub rank: usize,
    /// The invariant form is `form_scale · tr(XY)`.
    pub form_scale: Rational,
    basis: Vec<RatMatrix>,
    /// Canonical 0-based entry of each root vector, in basis order after the coroots.
    root_pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    /// Inverse of `M[k][i] = (h_i)_{kk}`, `k < rank`.
    cartan_inv: RatMatrix,
    simple_pairs: Vec<(usize, usize)>,
}

impl MatrixLieAlgebra {
    pub fn new(family: ClassicalFamily, n: usize) -> Result<Self> {
        let rank = match family {
            ClassicalFamily::Sl if n >= 2 => n - 1,
            ClassicalFamily::So if n >= 3 => n / 2,
            ClassicalFamily::Sp if n >= 2 && n.is_multiple_of(2) => n / 2,
            _ => return Err(Error::input(format!("{family}{n} is not a simple classical algebra"))),
        };
        let mut alg = MatrixLieAlgebra {
            family,
            n,
            rank,
            form_scale: Rational::one(),
            basis: Vec::new(),
            root_pairs: Vec::new(),
            pair_index: HashMap::new(),
            cartan_inv: RatMatrix::zeros(0, 0),
            simple_pairs: Vec::new(),
        };

        for i in 0..rank {
            alg.basis.push(RatMatrix::diagonal(&alg.coroot_diagonal(i)));
        }
        let m = RatMatrix::from_rows(
            (0..rank).map(|k| (0..rank).map(|i| alg.basis[i][(k, k)].clone()).collect()).collect(),
        )?;
        alg.cartan_inv = inverse(&m)?.ok_or_else(|| Error::internal("coroot diagonals dependent"))?;

        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let Some((pos, sign)) = alg.partner(i, j) else {
                    continue;
                };
                if pos < (i, j) {
                    continue;
                }
                let mut b = RatMatrix::zeros(n, n);
                b[(i, j)] = Rational::one();
                if pos != (i, j) {
                    b[pos] = rat(sign);
                }
                alg.pair_index.insert((i, j), alg.basis.len());
                alg.root_pairs.push((i, j));
                alg.basis.push(b);
            }
        }

        alg.simple_pairs = (0..rank)
            .map(|i| {
                if i + 1 < rank || family == ClassicalFamily::Sl {
                    (i, i + 1)
                } else if family == ClassicalFamily::So && n.is_multiple_of(2) {
                    (rank - 2, rank)
                } else {
                    (rank - 1, rank)
                }
            })
            .collect();

        let expected = match family {
            ClassicalFamily::Sl => n * n - 1,
            ClassicalFamily::So => n * (n - 1) / 2,
            ClassicalFamily::Sp => n * (n + 1) / 2,
        };
        if alg.basis.len() != expected {
            return Err(Error::internal(format!(
                "{family}{n}: basis has {} elements, expected {expected}",
                alg.basis.len()
            )));
        }
        Ok(alg)
    }

    /// Copy of the algebra with invariant form `scale · tr`.
    pub fn with_form_scale(&self, scale: &Rational) -> Result<Self> {
        if *scale <= Rational::zero() {
            return Err(Error::input("form scale must be positive"));
        }
        let mut a = self.clone();
        a.form_scale = scale.clone();
        Ok(a)
    }

    fn prime(&self, a: usize) -> usize {
        self.n - 1 - a
    }

    /// The entry tied to `(i, j)` by the defining form and the sign relating
    /// them, or `None` when `(i, j)` is forced to vanish.
    fn partner(&self, i: usize, j: usize) -> Option<((usize, usize), i64)> {
        match self.family {
            ClassicalFamily::Sl => Some(((i, j), 1)),
            ClassicalFamily::So => {
                let pos = (self.prime(j), self.prime(i));
                if pos == (i, j) {
                    None
                } else {
                    Some((pos, -1))
                }
            }
            ClassicalFamily::Sp => {
                let eps = |a: usize| if a < self.n / 2 { 1 } else { -1 };
                Some(((self.prime(j), self.prime(i)), -eps(i) * eps(j)))
            }
        }
    }

    /// Diagonal of the `i`-th simple coroot.
    fn coroot_diagonal(&self, i: usize) -> Vec<Rational> {
        if self.family == ClassicalFamily::Sl {
            let mut d = vec![Rational::zero(); self.n];
            d[i] = rat(1);
            d[i + 1] = rat(-1);
            return d;
        }
        let r = self.rank;
        let mut t = vec![0i64; r];
        if i + 1 < r {
            t[i] = 1;
            t[i + 1] = -1;
        } else if self.family == ClassicalFamily::Sp {
            t[i] = 1;
        } else if self.n % 2 == 1 {
            t[i] = 2;
        } else {
            t[i - 1] = 1;
            t[i] = 1;
        }
        self.torus_diagonal(&t.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    /// `diag(t, [0], −reverse(t))` for so/sp; for sl, `t` is the full diagonal.
    pub fn torus_diagonal(&self, t: &[Rational]) -> Vec<Rational> {
        if self.family == ClassicalFamily::Sl {
            return t.to_vec();
        }
        let mut d = t.to_vec();
        if self.n % 2 == 1 {
            d.push(Rational::zero());
        }
        d.extend(t.iter().rev().map(|x| -x));
        d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn cartan_basis(&self) -> &[RatMatrix] {
        &self.basis[..self.rank]
    }

    /// Canonical entry of the root vector at basis index `k ≥ rank`.
    pub fn root_pair(&self, k: usize) -> Option<(usize, usize)> {
        k.checked_sub(self.rank).and_then(|i| self.root_pairs.get(i).copied())
    }

    pub fn index_of_pair(&self, pair: (usize, usize)) -> Option<usize> {
        self.pair_index.get(&pair).copied()
    }

    /// Canonical entries of the simple root vectors, 0-based.
    pub fn simple_pairs(&self) -> &[(usize, usize)] {
        &self.simple_pairs
    }

    pub fn simple_root_vector(&self, i: usize) -> &RatMatrix {
        &self.basis[self.pair_index[&self.simple_pairs[i]]]
    }

    /// Root-system type of the algebra; `so_4` has none in this library.
    pub fn lie_type(&self) -> Option<LieType> {
        let family = match self.family {
            ClassicalFamily::Sl => Family::A,
            ClassicalFamily::Sp => Family::C,
            ClassicalFamily::So if self.n % 2 == 1 => Family::B,
            ClassicalFamily::So => Family::D,
        };
        LieType::new(family, self.rank).ok()
    }

    /// The matrix of the defining bilinear form, `None` for sl.
    pub fn defining_form(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut m = RatMatrix::zeros(n, n);
        match self.family {
            ClassicalFamily::Sl => return None,
            ClassicalFamily::So => {
                for a in 0..n {
                    m[(a, self.prime(a))] = rat(1);
                }
            }
            ClassicalFamily::Sp => {
                for a in 0..n {
                    m[(a, self.prime(a))] = rat(if a < n / 2 { 1 } else { -1 });
                }
            }
        }
        Some(m)
    }

    /// Coordinates of `x` in the basis; `x` must lie in the algebra.
    pub fn coords(&self, x: &RatMatrix) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.dim());
        let d: Vec<Rational> = (0..self.rank).map(|k| x[(k, k)].clone()).collect();
        out.extend(self.cartan_inv.apply(&d));
        out.extend(self.root_pairs.iter().map(|&p| x[p].clone()));
        out
    }

    pub fn from_coords(&self, c: &[Rational]) -> RatMatrix {
        self.combine(&self.basis, c)
    }

    /// `Σ c_k b_k`.
    pub fn combine(&self, basis: &[RatMatrix], c: &[Rational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.n, self.n);
        for (b, ck) in basis.iter().zip(c) {
            if ck.is_zero() {
                continue;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    let v = &b[(i, j)];
                    if !v.is_zero() {
                        out[(i, j)] += ck * v;
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, x: &RatMatrix) -> bool {
        x.rows() == self.n && x.cols() == self.n && x.trace().is_zero() && self.from_coords(&self.coords(x)) == *x
    }

    pub fn bracket(&self, x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
        x.bracket(y)
    }

    /// `B(x, y) = form_scale · tr(xy)`.
    pub fn form(&self, x: &RatMatrix, y: &RatMatrix) -> Rational {
        x.trace_product(y) * &self.form_scale
    }

    /// Gram matrix of the invariant form on a list of elements.
    pub fn gram(&self, elems: &[RatMatrix]) -> RatMatrix {
        let k = elems.len();
        let mut g = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = self.form(&elems[i], &elems[j]);
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        g
    }

    /// Matrix of `x ↦ coords(op(x))` over `domain`.
    pub fn linear_map(&self, domain: &[RatMatrix], op: impl Fn(&RatMatrix) -> RatMatrix) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = domain.iter().map(|b| self.coords(&op(b))).collect();
        RatMatrix::from_columns(self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_algebras() -> Vec<MatrixLieAlgebra> {
        let mut v = Vec::new();
        for n in 2..=6 {
            v.push(MatrixLieAlgebra::new(ClassicalFamily::Sl, n).unwrap());
        }
        for n in 3..=8 {
            v.push(MatrixLieAlgebra::new(ClassicalFamily::So, n).unwrap());
        }
        for n in [2, 4, 6] {
            v.push(MatrixLieAlgebra::new(ClassicalFamily::Sp, n).unwrap());
        }
        v
    }

    #[test]
    fn invalid_sizes() {
        assert!(MatrixLieAlgebra::new(ClassicalFamily::Sl, 1).is_err());
        assert!(MatrixLieAlgebra::new(ClassicalFamily::So, 2).is_err());
        assert!(MatrixLieAlgebra::new(ClassicalFamily::Sp, 5).is_err());
    }

    #[test]
    fn basis_members_and_roundtrip() {
        for a in all_algebras() {
            let m = a.defining_form();
            for (k, b) in a.basis().iter().enumerate() {
                assert!(a.contains(b), "{}{} basis {k}", a.family, a.n);
                assert!(a.contains(&b.transpose()));
                if let Some(m) = &m {
                    let lhs = &(&b.transpose() * m) + &(m * b);
                    assert!(lhs.is_zero());
                }
                let mut e = vec![Rational::zero(); a.dim()];
                e[k] = Rational::one();
                assert_eq!(a.coords(b), e);
            }
        }
    }

    #[test]
    fn bracket_closure() {
        for a in all_algebras().into_iter().filter(|a| a.n <= 5) {
            for x in a.basis() {
                for y in a.basis() {
                    assert!(a.contains(&a.bracket(x, y)));
                }
            }
        }
    }

    #[test]
    fn simple_root_vectors_are_eigen() {
        for a in all_algebras() {
            for i in 0..a.rank {
                let x = a.simple_root_vector(i);
                for (k, h) in a.cartan_basis().iter().enumerate() {
                    let br = a.bracket(h, x);
                    let pos = a.simple_pairs()[i];
                    let c = br[pos].clone();
                    assert_eq!(br, x.scale(&c));
                    if k == i {
                        assert_eq!(c, rat(2));
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_matrix_matches_root_system() {
        use crate::root_system::build_root_system;
        for a in all_algebras() {
            let Some(t) = a.lie_type() else { continue };
            let rs = build_root_system(t).unwrap();
            for i in 0..a.rank {
                for j in 0..a.rank {
                    let x = a.simple_root_vector(j);
                    let br = a.bracket(&a.cartan_basis()[i], x);
                    let c = br[a.simple_pairs()[j]].clone();
                    assert_eq!(c, rat(rs.cartan_matrix[i][j]), "{t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(parse_family_size("so7").unwrap(), (ClassicalFamily::So, 7));
        assert!(parse_family_size("su3").is_err());
        assert!(parse_family_size("sl").is_err());
    }
}
