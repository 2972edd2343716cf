//! Root systems of types A through G in Bourbaki numbering.
//!
//! Roots are integer vectors in the simple-root basis. Inner products come
//! from a fixed symmetric matrix of simple-root products:
//!
//! * `A_n`: `α_i = ε_i − ε_{i+1}`.
//! * `B_n`: `α_i = ε_i − ε_{i+1}` for `i < n`, `α_n = ε_n` (short).
//! * `C_n`: `α_i = ε_i − ε_{i+1}` for `i < n`, `α_n = 2ε_n` (long).
//! * `D_n`: `α_i = ε_i − ε_{i+1}` for `i < n`, `α_n = ε_{n−1} + ε_n`.
//! * `E_6, E_7, E_8`: the chain 1–3–4–5–6–7–8 with node 2 attached to 4.
//! * `F_4`: `α_1, α_2` long, `α_3, α_4` short.
//! * `G_2`: `α_1` short, `α_2` long, length ratio 3.
//!
//! The Cartan matrix is `C[i][j] = α_j(h_i) = 2(α_i, α_j)/(α_i, α_i)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{rat, ratio, solve_linear, RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    /// Validates the (family, rank) pair. `B_1` and `C_1` are accepted as
    /// alternative normalizations of `A_1`; `D_n` needs `n ≥ 3`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::input(format!("invalid Lie type {family:?}{rank}")))
        }
    }

    /// Number of roots `|Δ|`.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::B | Family::C, _) => 2 * n * n,
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
            (Family::F, _) => 48,
            (Family::G, _) => 12,
        }
    }

    pub fn dimension(&self) -> usize {
        self.rank + self.root_count()
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::input(format!("unknown Lie type {s:?}"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::input(format!("missing or bad rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

/// A root as integer coefficients on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn as_rational(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| rat(c)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    /// `cartan[i][j] = α_j(h_i)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// `(α_i, α_i)/2`.
    pub symmetrizer: Vec<Rational>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    pub highest_root: Root,
    inner: RatMatrix,
    killing: RatMatrix,
}

/// Symmetric matrix of simple-root inner products in the normalization above.
fn simple_inner_products(t: LieType) -> RatMatrix {
    let n = t.rank;
    let mut m = RatMatrix::zeros(n, n);
    let link = |m: &mut RatMatrix, i: usize, j: usize, v: Rational| {
        m[(i, j)] = v.clone();
        m[(j, i)] = v;
    };
    match t.family {
        Family::A | Family::B | Family::C | Family::D => {
            for i in 0..n {
                m[(i, i)] = rat(2);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut m, i, i + 1, rat(-1));
            }
            match t.family {
                Family::B => m[(n - 1, n - 1)] = rat(1),
                Family::C => {
                    m[(n - 1, n - 1)] = rat(4);
                    if n > 1 {
                        link(&mut m, n - 2, n - 1, rat(-2));
                    }
                }
                Family::D => {
                    link(&mut m, n - 2, n - 1, rat(0));
                    link(&mut m, n - 3, n - 1, rat(-1));
                }
                _ => {}
            }
        }
        Family::E => {
            for i in 0..n {
                m[(i, i)] = rat(2);
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
            for (i, j) in edges {
                link(&mut m, i, j, rat(-1));
            }
        }
        Family::F => {
            m[(0, 0)] = rat(2);
            m[(1, 1)] = rat(2);
            m[(2, 2)] = rat(1);
            m[(3, 3)] = rat(1);
            link(&mut m, 0, 1, rat(-1));
            link(&mut m, 1, 2, rat(-1));
            link(&mut m, 2, 3, ratio(-1, 2));
        }
        Family::G => {
            m[(0, 0)] = rat(2);
            m[(1, 1)] = rat(6);
            link(&mut m, 0, 1, rat(-3));
        }
    }
    m
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    /// `⟨β, α_i^∨⟩ = β(h_i)`.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan_matrix[i]).map(|(b, c)| b * c).sum()
    }

    /// All roots, positive first, then their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(Root::neg));
        out
    }

    /// `(λ, μ)` in the normalization of [`simple_inner_products`].
    pub fn inner_product(&self, a: &[Rational], b: &[Rational]) -> Rational {
        bilinear(&self.inner, a, b)
    }

    /// Gram matrix `B(h_i, h_j)` of the Killing form on the simple coroots.
    pub fn killing_on_cartan(&self) -> &RatMatrix {
        &self.killing
    }

    /// `λ(h_j)` for each simple coroot, with `λ` in simple-root coordinates.
    pub fn values_on_coroots(&self, lambda: &[Rational]) -> Vec<Rational> {
        (0..self.rank())
            .map(|j| lambda.iter().zip(&self.cartan_matrix[j]).fold(Rational::zero(), |acc, (l, &c)| acc + l * rat(c)))
            .collect()
    }

    /// Norm of `λ` under the form dual to `scale · Killing`.
    pub fn dual_norm_scaled(&self, lambda: &[Rational], scale: &Rational) -> Result<Rational> {
        if lambda.len() != self.rank() {
            return Err(Error::input("dual_norm: wrong number of coordinates"));
        }
        let v = self.values_on_coroots(lambda);
        let g = self.killing.scale(scale);
        let c = solve_linear(&g, &RatMatrix::column(v.clone()))?
            .ok_or_else(|| Error::internal("Killing form singular on the Cartan"))?;
        Ok(c.entries().iter().zip(&v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// `B(λ, λ)` for the Killing form `B`.
    pub fn dual_norm(&self, lambda: &[Rational]) -> Result<Rational> {
        self.dual_norm_scaled(lambda, &Rational::one())
    }
}

/// `aᵀ G b`.
pub fn bilinear(g: &RatMatrix, a: &[Rational], b: &[Rational]) -> Rational {
    let gb = g.apply(b);
    a.iter().zip(&gb).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn build_root_system(t: LieType) -> Result<RootSystem> {
    let t = LieType::new(t.family, t.rank)?;
    let n = t.rank;
    let inner = simple_inner_products(t);
    let two = rat(2);
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            let v = &two * &inner[(i, j)] / &inner[(i, i)];
            if !v.is_integer() {
                return Err(Error::internal("non-integral Cartan entry"));
            }
            *c = i64::try_from(v.to_integer()).map_err(|_| Error::internal("Cartan overflow"))?;
        }
    }
    let symmetrizer = (0..n).map(|i| &inner[(i, i)] / &two).collect();

    let mut rs = RootSystem {
        lie_type: t,
        cartan_matrix: cartan,
        symmetrizer,
        positive_roots: Vec::new(),
        highest_root: Root { coords: vec![0; n] },
        inner,
        killing: RatMatrix::zeros(n, n),
    };

    // Root strings: β + α_i is a root iff q = p − ⟨β, α_i^∨⟩ > 0, where p is
    // the largest k with β − kα_i a root (or zero when β = α_i).
    let simple: Vec<Root> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            Root { coords: c }
        })
        .collect();
    let mut known: HashSet<Vec<i64>> = simple.iter().map(|r| r.coords.clone()).collect();
    let mut all = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.coords.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - rs.coroot_pairing(&beta.coords, i);
                if q > 0 {
                    let mut up = beta.coords.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(Root { coords: up });
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    if 2 * all.len() != t.root_count() {
        return Err(Error::internal(format!(
            "{t}: generated {} positive roots, expected {}",
            all.len(),
            t.root_count() / 2
        )));
    }
    let top = all.last().cloned().expect("nonempty root system");
    if all.iter().filter(|r| r.height() == top.height()).count() != 1 {
        return Err(Error::internal("highest root not unique"));
    }
    rs.highest_root = top;
    rs.positive_roots = all;

    let mut k = RatMatrix::zeros(n, n);
    for beta in &rs.positive_roots {
        let vals: Vec<i64> = (0..n).map(|i| rs.coroot_pairing(&beta.coords, i)).collect();
        for i in 0..n {
            if vals[i] == 0 {
                continue;
            }
            for j in 0..n {
                k[(i, j)] += rat(2 * vals[i] * vals[j]);
            }
        }
    }
    rs.killing = k;
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::determinant;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert!("D2".parse::<LieType>().is_err());
        assert!("E9".parse::<LieType>().is_err());
        assert!("F3".parse::<LieType>().is_err());
        assert!("X3".parse::<LieType>().is_err());
        assert_eq!("e7".parse::<LieType>().unwrap().to_string(), "E7");
    }

    #[test]
    fn small_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.highest_root.coords, vec![1, 1]);
        let b3 = rs("B3");
        assert_eq!(b3.positive_roots.len(), 9);
        assert_eq!(b3.highest_root.coords, vec![1, 2, 2]);
        assert_eq!(rs("G2").positive_roots.len(), 6);
    }

    #[test]
    fn highest_roots_of_exceptionals() {
        assert_eq!(rs("E6").highest_root.coords, vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("E7").highest_root.coords, vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rs("E8").highest_root.coords, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("F4").highest_root.coords, vec![2, 3, 4, 2]);
        assert_eq!(rs("G2").highest_root.coords, vec![3, 2]);
        assert_eq!(rs("C3").highest_root.coords, vec![2, 2, 1]);
        assert_eq!(rs("D5").highest_root.coords, vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn cartan_shape() {
        for s in ["A4", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(s);
            let n = r.rank();
            for i in 0..n {
                assert_eq!(r.cartan_matrix[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(r.cartan_matrix[i][j] <= 0);
                        assert_eq!(r.cartan_matrix[i][j] == 0, r.cartan_matrix[j][i] == 0);
                    }
                }
            }
            let k = r.killing_on_cartan();
            assert_eq!(k, &k.transpose());
            assert!(determinant(k).unwrap() > Rational::zero());
        }
    }

    #[test]
    fn killing_examples() {
        assert_eq!(rs("A1").killing_on_cartan()[(0, 0)], rat(8));
        assert!(rs("A2").killing_on_cartan()[(0, 1)] < Rational::zero());
        assert_eq!(rs("A1").dual_norm(&[rat(1)]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn b3_length_ratio() {
        let r = rs("B3");
        let long = r.dual_norm(&[rat(1), rat(0), rat(0)]).unwrap();
        let short = r.dual_norm(&[rat(0), rat(0), rat(1)]).unwrap();
        assert_eq!(long, short * rat(2));
    }

    #[test]
    fn dual_norm_scales_inversely() {
        let r = rs("C3");
        let l = r.highest_root.as_rational();
        let base = r.dual_norm(&l).unwrap();
        assert_eq!(r.dual_norm_scaled(&l, &rat(7)).unwrap() * rat(7), base);
    }
}
