//! Partition bookkeeping for classical nilpotent orbits and explicit
//! representatives, including the `(r₁, r₂)` family in `so_{2p+q}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{inverse, rank, rat, ratio, RatMatrix, Rational};
use crate::matrix_lie::{ClassicalFamily, GradedMatrixAlgebra, MatrixLieAlgebra, ZetaSpec};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::input("partition parts must be positive and nonempty"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Multiplicity of each part.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.parts {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Partition {
        let first = self.parts[0];
        let parts = (1..=first).map(|i| self.parts.iter().filter(|&&k| k >= i).count()).collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::input(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

fn check_total(family: ClassicalFamily, n: usize, lam: &Partition) -> Result<()> {
    if family == ClassicalFamily::Sp && n % 2 == 1 {
        return Err(Error::input(format!("sp{n}: size must be even")));
    }
    if lam.total() != n {
        return Err(Error::input(format!("partition {lam} does not sum to {n}")));
    }
    Ok(())
}

/// Classical parity constraints: in so every even part has even
/// multiplicity, in sp every odd part does. `n` is the matrix size.
pub fn partition_valid(family: ClassicalFamily, n: usize, lam: &Partition) -> Result<bool> {
    check_total(family, n, lam)?;
    let need_even = |k: usize| match family {
        ClassicalFamily::Sl => false,
        ClassicalFamily::So => k.is_multiple_of(2),
        ClassicalFamily::Sp => k % 2 == 1,
    };
    Ok(lam.multiplicities().iter().all(|(&k, &m)| !need_even(k) || m % 2 == 0))
}

/// Eigenvalues of `h` on the defining representation, in decreasing order.
pub fn h_eigenvalues(lam: &Partition) -> Vec<i64> {
    let mut v: Vec<i64> = lam
        .parts
        .iter()
        .flat_map(|&k| {
            let k = k as i64;
            (0..k).map(move |i| k - 1 - 2 * i)
        })
        .collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All parts share one parity.
pub fn is_even_orbit(lam: &Partition) -> bool {
    lam.parts.iter().all(|k| k % 2 == lam.parts[0] % 2)
}

pub fn is_distinguished(family: ClassicalFamily, n: usize, lam: &Partition) -> Result<bool> {
    if !partition_valid(family, n, lam)? {
        return Err(Error::input(format!("{lam} is not a {family}{n} orbit")));
    }
    let distinct = lam.multiplicities().values().all(|&m| m == 1);
    Ok(match family {
        ClassicalFamily::Sl => lam.parts.len() == 1,
        ClassicalFamily::So => distinct && lam.parts.iter().all(|k| k % 2 == 1),
        ClassicalFamily::Sp => distinct && lam.parts.iter().all(|k| k % 2 == 0),
    })
}

/// `(1/6) Σ k(k² − 1)`.
pub fn toledo_rank_sl(lam: &Partition) -> Rational {
    let s: i64 = lam
        .parts
        .iter()
        .map(|&k| {
            let k = k as i64;
            k * (k * k - 1)
        })
        .sum();
    ratio(s, 6)
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(e: &RatMatrix) -> Result<Partition> {
    let n = e.rows();
    let mut ranks = vec![n];
    let mut p = RatMatrix::identity(n);
    while *ranks.last().expect("nonempty") > 0 {
        p = p.matmul(e)?;
        let r = rank(&p);
        if r == *ranks.last().expect("nonempty") {
            return Err(Error::input("matrix is not nilpotent"));
        }
        ranks.push(r);
    }
    // at_least[k] = #parts ≥ k = ranks[k−1] − ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exact));
    }
    Partition::new(parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    /// One Jordan block of odd size (so) or even size (sp).
    Single(usize),
    /// Two blocks of the same size on a split space.
    Pair(usize),
}

fn blocks(family: ClassicalFamily, lam: &Partition) -> Vec<Block> {
    let mut out = Vec::new();
    for (&k, &m) in lam.multiplicities().iter().rev() {
        out.extend(std::iter::repeat_n(Block::Pair(k), m / 2));
        let single_ok = match family {
            ClassicalFamily::So => k % 2 == 1,
            _ => k % 2 == 0,
        };
        if m % 2 == 1 {
            debug_assert!(single_ok);
            out.push(Block::Single(k));
        }
    }
    out
}

/// Principal nilpotent of `so_k` or `sp_k` in its own antidiagonal basis.
fn local_principal(family: ClassicalFamily, k: usize) -> Result<RatMatrix> {
    if k == 1 {
        return Ok(RatMatrix::zeros(1, 1));
    }
    let alg = MatrixLieAlgebra::new(family, k)?;
    let mut e = RatMatrix::zeros(k, k);
    for idx in alg.rank..alg.dim() {
        let (i, j) = alg.root_pair(idx).expect("root vector");
        if j == i + 1 {
            e = &e + &alg.basis()[idx];
        }
    }
    Ok(e)
}

fn jordan_block(k: usize) -> RatMatrix {
    let mut a = RatMatrix::zeros(k, k);
    for i in 0..k.saturating_sub(1) {
        a[(i, i + 1)] = Rational::one();
    }
    a
}

fn antidiagonal(k: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(k, k);
    for i in 0..k {
        j[(i, k - 1 - i)] = Rational::one();
    }
    j
}

/// Nilpotent representative with Jordan type `lam` in the defining basis.
///
/// sl uses consecutive Jordan blocks. For so and sp, each block lives on a
/// nondegenerate local space; pairs carry `diag(A, −J Aᵀ J)`. The local
/// spaces are placed on successive hyperbolic pairs of the global basis.
/// Two odd so blocks share one hyperbolic pair through the anisotropic
/// vectors `e_F ± ½ e_{F'}`, the second with its form negated.
pub fn jordan_representative(family: ClassicalFamily, n: usize, lam: &Partition) -> Result<RatMatrix> {
    if !partition_valid(family, n, lam)? {
        return Err(Error::input(format!("{lam} is not a {family}{n} orbit")));
    }
    if family == ClassicalFamily::Sl {
        let mut e = RatMatrix::zeros(n, n);
        let mut start = 0;
        for &k in &lam.parts {
            for i in start..start + k - 1 {
                e[(i, i + 1)] = Rational::one();
            }
            start += k;
        }
        return Ok(e);
    }

    let bl = blocks(family, lam);
    let mut local = Vec::new();
    for b in &bl {
        local.push(match *b {
            Block::Single(k) => local_principal(family, k)?,
            Block::Pair(k) => {
                let a = jordan_block(k);
                let j = antidiagonal(k);
                let b = -&(&(&j * &a.transpose()) * &j);
                let mut m = RatMatrix::zeros(2 * k, 2 * k);
                for r in 0..k {
                    for c in 0..k {
                        m[(r, c)] = a[(r, c)].clone();
                        m[(k + r, k + c)] = b[(r, c)].clone();
                    }
                }
                m
            }
        });
    }

    let odd: Vec<usize> = (0..bl.len()).filter(|&i| local[i].rows() % 2 == 1).collect();
    let mut sign = vec![1i64; bl.len()];
    for pair in odd.chunks(2) {
        if pair.len() == 2 {
            sign[pair[1]] = -1;
        }
    }

    let prime = |a: usize| n - 1 - a;
    let mut phi = RatMatrix::zeros(n, n);
    let mut front = 0;
    let mut offset = 0;
    let mut offsets = Vec::new();
    for (b, m) in local.iter().enumerate() {
        let d = m.rows();
        offsets.push(offset);
        for i in 0..d / 2 {
            phi[(front + i, offset + i)] = Rational::one();
            phi[(prime(front + i), offset + d - 1 - i)] = rat(sign[b]);
        }
        front += d / 2;
        offset += d;
    }
    for pair in odd.chunks(2) {
        let mid = |b: usize| offsets[b] + local[b].rows() / 2;
        if let [a, b] = *pair {
            phi[(front, mid(a))] = Rational::one();
            phi[(prime(front), mid(a))] = ratio(1, 2);
            phi[(front, mid(b))] = Rational::one();
            phi[(prime(front), mid(b))] = ratio(-1, 2);
            front += 1;
        } else {
            phi[(n / 2, mid(pair[0]))] = Rational::one();
        }
    }

    let mut bd = RatMatrix::zeros(n, n);
    for (m, &o) in local.iter().zip(&offsets) {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                bd[(o + r, o + c)] = m[(r, c)].clone();
            }
        }
    }
    let phi_inv = inverse(&phi)?.ok_or_else(|| Error::internal("block embedding is singular"))?;
    let e = &(&phi * &bd) * &phi_inv;
    let alg = MatrixLieAlgebra::new(family, n)?;
    if !alg.contains(&e) {
        return Err(Error::internal(format!("representative of {lam} left {family}{n}")));
    }
    Ok(e)
}

/// Orbit of `e ∈ Hom(ℂ^p, ℂ^q) = g_1` in `so_{2p+q}`: the image of `u` is
/// an `r₁`-dimensional nondegenerate plus an `r₂`-dimensional isotropic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SOOrbitLabel {
    pub p: usize,
    pub q: usize,
    pub r1: usize,
    pub r2: usize,
}

impl SOOrbitLabel {
    pub fn new(p: usize, q: usize, r1: usize, r2: usize) -> Result<Self> {
        if p == 0 || q == 0 || 2 * p + q < 3 {
            return Err(Error::input(format!("so_{{2p+q}} needs p ≥ 1, q ≥ 1 (got p={p}, q={q})")));
        }
        if r1 + r2 > p.min(q) || r1 + 2 * r2 > q {
            return Err(Error::input(format!("(r1, r2) = ({r1}, {r2}) out of range for p={p}, q={q}")));
        }
        Ok(SOOrbitLabel { p, q, r1, r2 })
    }

    /// Every valid label for the given `(p, q)`.
    pub fn all(p: usize, q: usize) -> Vec<SOOrbitLabel> {
        let mut v = Vec::new();
        for r2 in 0..=q / 2 {
            for r1 in 0..=q {
                if let Ok(l) = SOOrbitLabel::new(p, q, r1, r2) {
                    v.push(l);
                }
            }
        }
        v
    }

    /// `2r₁ + r₂`.
    pub fn expected_rank(&self) -> Rational {
        rat((2 * self.r1 + self.r2) as i64)
    }

    /// Diagonal of the neutral element in the normal form.
    pub fn expected_h(&self) -> RatMatrix {
        let SOOrbitLabel { p, q, r1, r2 } = *self;
        let mut d: Vec<i64> = Vec::with_capacity(2 * p + q);
        d.extend(std::iter::repeat_n(0, p - r1 - r2));
        d.extend(std::iter::repeat_n(2, r1));
        d.extend(std::iter::repeat_n(1, r2));
        d.extend(std::iter::repeat_n(1, r2));
        d.extend(std::iter::repeat_n(0, q - 2 * r2));
        d.extend(std::iter::repeat_n(-1, r2));
        d.extend(std::iter::repeat_n(-1, r2));
        d.extend(std::iter::repeat_n(-2, r1));
        d.extend(std::iter::repeat_n(0, p - r1 - r2));
        RatMatrix::diagonal(&d.into_iter().map(rat).collect::<Vec<_>>())
    }

    /// The `q × p` matrix `u`.
    ///
    /// The first `r₂` columns are `e_1..e_{r₂}`. The next `r₁` columns take
    /// vectors in order from `v⁺_1..v⁺_P`, the middle vector when
    /// `q − 2r₂` is odd, then `v⁻_1..v⁻_P`, where
    /// `v^±_k = e_{r₂+k} ± e_{q−r₂+1−k}`. When `2(r₁ + r₂) ≤ q` only `v⁺`
    /// vectors are used, matching `(Id_{r₂}; Id_{r₁}; 0; J_{r₁}; 0)`.
    pub fn u_matrix(&self) -> RatMatrix {
        let SOOrbitLabel { p, q, r1, r2 } = *self;
        let mut u = RatMatrix::zeros(q, p);
        for b in 0..r2 {
            u[(b, b)] = Rational::one();
        }
        let m = q - 2 * r2;
        let half = m / 2;
        let mut cols: Vec<Vec<(usize, i64)>> = Vec::new();
        for k in 0..half {
            cols.push(vec![(r2 + k, 1), (q - r2 - 1 - k, 1)]);
        }
        if m % 2 == 1 {
            cols.push(vec![(r2 + half, 1)]);
        }
        for k in 0..half {
            cols.push(vec![(r2 + k, 1), (q - r2 - 1 - k, -1)]);
        }
        for (c, entries) in cols.iter().take(r1).enumerate() {
            for &(row, v) in entries {
                u[(row, r2 + c)] = rat(v);
            }
        }
        u
    }

    /// `e` with `u` in block (2,3) and the partner block fixed by the form:
    /// `e_{i, p+j} = −u_{q+1−j, p+1−i}` (1-based).
    pub fn representative(&self) -> RatMatrix {
        let SOOrbitLabel { p, q, .. } = *self;
        let n = 2 * p + q;
        let u = self.u_matrix();
        let mut e = RatMatrix::zeros(n, n);
        for a in 0..q {
            for b in 0..p {
                let v = &u[(a, b)];
                if v.is_zero() {
                    continue;
                }
                e[(p + a, p + q + b)] = v.clone();
                e[(p - 1 - b, p + q - 1 - a)] = -v.clone();
            }
        }
        e
    }
}

/// `so_{2p+q}` graded by `ζ = diag(Id_p, 0, −Id_p)`.
pub fn so_block_grading(p: usize, q: usize) -> Result<GradedMatrixAlgebra> {
    let n = 2 * p + q;
    let alg = MatrixLieAlgebra::new(ClassicalFamily::So, n)?;
    let t = (0..alg.rank).map(|i| if i < p { Rational::one() } else { Rational::zero() }).collect();
    GradedMatrixAlgebra::new(alg, &ZetaSpec::Diagonal(t))
}

pub fn so_orbit_representative(label: &SOOrbitLabel) -> RatMatrix {
    label.representative()
}
