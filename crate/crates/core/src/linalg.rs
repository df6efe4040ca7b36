//! Exact rational matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::relation::{slot_count, Couple, Relation};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
    }

    /// Unit-diagonal symmetric matrix with off-diagonal entries listed in
    /// the order `r12, r13, ..., r1m, r23, ...`.
    pub fn correlation(m: usize, upper: &[Rational]) -> Result<Self> {
        if upper.len() != m * (m - 1) / 2 {
            return Err(Error::Dimension(format!(
                "{} off-diagonal entries given for m = {m}",
                upper.len()
            )));
        }
        let mut out = Self::identity(m);
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                out.set_sym(i, j, upper[k].clone());
                k += 1;
            }
        }
        Ok(out)
    }

    /// Off-diagonal entries in the order `r12, r13, ...`.
    pub fn upper_entries(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                out.push(self[(i, j)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: Rational) {
        self.data[j * self.cols + i] = v.clone();
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self[(i, i)].is_one())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self[(i, j)].clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self[(i, j)].clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &out[(i, j)] + a * &other[(k, j)];
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)))
        }
    }

    fn require_symmetric(&self) -> Result<()> {
        self.require_square()?;
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::Dimension("matrix is not symmetric".into()))
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first cleared of denominators; the integer determinant is
    /// then divided by the product of the row multipliers.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        Ok(bareiss_det(self))
    }

    /// All leading principal minors positive.
    pub fn is_positive_definite(&self) -> Result<bool> {
        self.require_symmetric()?;
        for k in 1..=self.rows {
            let idx: Vec<usize> = (0..k).collect();
            if !bareiss_det(&self.submatrix(&idx, &idx)).is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            let pivot = a[rank * cols + col].clone();
            for r in rank + 1..rows {
                let f = &a[r * cols + col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let v = &a[r * cols + j] - &f * &a[rank * cols + j];
                    a[r * cols + j] = v;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let pivot = a[(col, col)].clone();
            for j in 0..n {
                let (x, y) = (&a[(col, j)] / &pivot, &inv[(col, j)] / &pivot);
                a.set(col, j, x);
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let x = &a[(r, j)] - &f * &a[(col, j)];
                    let y = &inv[(r, j)] - &f * &inv[(col, j)];
                    a.set(r, j, x);
                    inv.set(r, j, y);
                }
            }
        }
        Ok(inv)
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("hadamard operands differ in shape".into()));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    /// `D M D` for the diagonal matrix `D = diag(d)`.
    pub fn scaled(&self, d: &[Rational]) -> Result<Self> {
        self.require_square()?;
        if d.len() != self.rows {
            return Err(Error::Dimension("scaling vector length".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, &self[(i, j)] * &d[i] * &d[j]);
            }
        }
        Ok(out)
    }

    /// Simultaneous row and column permutation: entry `(i, j)` moves to `(π(i), π(j))`.
    pub fn permuted(&self, perm: &crate::relation::Permutation) -> Result<Self> {
        self.require_square()?;
        if perm.len() != self.rows {
            return Err(Error::GroundMismatch(self.rows, perm.len()));
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm.apply(i), perm.apply(j), self[(i, j)].clone());
            }
        }
        Ok(out)
    }

    /// Text form: `n=<k>` followed by `k` rows of entries (`a` or `p/q`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n=<k>` header".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row: Vec<Rational> = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!("row `{line}` does not have {n} entries")));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        Self::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.rows)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn bareiss_det(m: &RationalMatrix) -> Rational {
    let n = m.rows;
    if n == 0 {
        return Rational::one();
    }
    // clear denominators row by row
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m[(i, j)].denom()));
        scale *= &l;
        a.push(
            (0..n)
                .map(|j| m[(i, j)].numer() * (&l / m[(i, j)].denom()))
                .collect(),
        );
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Rational::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    BigRational::new(sign * &a[n - 1][n - 1], scale)
}

/// Sorted index list of `{i} ∪ C`.
fn with_cond(i: usize, cond: u8, m: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..m).filter(|&k| cond & (1 << k) != 0).collect();
    v.push(i);
    v.sort_unstable();
    v
}

/// `det(M_{iC, jC})` with rows and columns in increasing index order.
pub fn almost_principal_minor(m: &RationalMatrix, c: &Couple) -> Result<Rational> {
    m.require_square()?;
    if m.rows() != c.ground() {
        return Err(Error::GroundMismatch(m.rows(), c.ground()));
    }
    let (i, j) = c.pair();
    let rows = with_cond(i, c.cond(), m.rows());
    let cols = with_cond(j, c.cond(), m.rows());
    Ok(bareiss_det(&m.submatrix(&rows, &cols)))
}

/// All couples whose almost-principal minor vanishes.
pub fn relation_of_matrix(m: &RationalMatrix) -> Result<Relation> {
    m.require_symmetric()?;
    let n = m.rows();
    let mut rel = Relation::empty(n)?;
    if !m.is_positive_definite()? {
        return Err(Error::NotPositiveDefinite);
    }
    for s in 0..slot_count(n) {
        let c = Couple::from_slot(n, s);
        if almost_principal_minor(m, &c)?.is_zero() {
            rel.insert(c)?;
        }
    }
    Ok(rel)
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Rescales to unit diagonal; diagonal entries must be squares of rationals.
pub fn correlation_of(m: &RationalMatrix) -> Result<RationalMatrix> {
    m.require_symmetric()?;
    if !m.is_positive_definite()? {
        return Err(Error::NotPositiveDefinite);
    }
    let roots: Vec<Rational> = (0..m.rows())
        .map(|i| {
            rational_sqrt(&m[(i, i)]).ok_or_else(|| Error::NonSquareDiagonal {
                index: i + 1,
                value: m[(i, i)].to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let inv: Vec<Rational> = roots.iter().map(|r| r.recip()).collect();
    m.scaled(&inv)
}

/// Value of entry `(i, j)` (and `(j, i)`) making the minor of `c` vanish.
pub fn solve_couple_entry(m: &RationalMatrix, c: &Couple) -> Result<Rational> {
    let (i, j) = c.pair();
    let mut probe = m.clone();
    probe.set_sym(i, j, Rational::zero());
    let f0 = almost_principal_minor(&probe, c)?;
    probe.set_sym(i, j, Rational::one());
    let f1 = almost_principal_minor(&probe, c)?;
    let slope = &f1 - &f0;
    if slope.is_zero() {
        return Err(Error::DegenerateSolve {
            couple: c.to_string(),
        });
    }
    Ok(-f0 / slope)
}

/// Random correlation matrix: off-diagonal numerators uniform in `[-8, 8]`
/// over 16, halved until positive definite.
pub fn random_correlation<R: Rng>(m: usize, rng: &mut R) -> RationalMatrix {
    let upper: Vec<Rational> = (0..m * (m - 1) / 2)
        .map(|_| rat(rng.gen_range(-8..=8), 16))
        .collect();
    shrink_until_pd(RationalMatrix::correlation(m, &upper).expect("sizes match"))
}

/// Halves all off-diagonal entries until the matrix is positive definite.
pub fn shrink_until_pd(mut m: RationalMatrix) -> RationalMatrix {
    let half = rat(1, 2);
    while !m.is_positive_definite().expect("symmetric") {
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                let v = &m[(i, j)] * &half;
                m.set_sym(i, j, v);
            }
        }
    }
    m
}

/// Random positive definite matrix with diagonal entries that are squares
/// of rationals in `{1, 2, 3}/{1, 2}`.
pub fn random_square_diagonal_pd<R: Rng>(m: usize, rng: &mut R) -> RationalMatrix {
    let r = random_correlation(m, rng);
    let d: Vec<Rational> = (0..m)
        .map(|_| rat(rng.gen_range(1..=3), rng.gen_range(1..=2)))
        .collect();
    r.scaled(&d).expect("sizes match")
}
