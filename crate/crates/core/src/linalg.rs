//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{bit_size, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Smallest bit length among candidate entries in the column.
    MinimalSize,
    FirstNonzero,
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    /// Invertible T with reduced = T·M.
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// self − λ·I
    pub fn shift(&self, lambda: &Rational) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let x = m.get(i, i) - lambda;
            m.set(i, i, x);
        }
        m
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn rref(&self) -> Rref {
        self.rref_with(PivotStrategy::MinimalSize)
    }

    pub fn rref_with(&self, strategy: PivotStrategy) -> Rref {
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let candidates = (r..self.rows).filter(|&i| !a.get(i, col).is_zero());
            let chosen = match strategy {
                PivotStrategy::FirstNonzero => candidates.min(),
                PivotStrategy::MinimalSize => candidates.min_by_key(|&i| bit_size(a.get(i, col))),
            };
            let Some(p) = chosen else { continue };
            a.swap_rows(p, r);
            t.swap_rows(p, r);
            let inv = a.get(r, col).recip();
            a.scale_row(r, &inv);
            t.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r {
                    let f = a.get(i, col).clone();
                    if !f.is_zero() {
                        a.axpy_row(i, r, &f);
                        t.axpy_row(i, r, &f);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref {
            reduced: a,
            pivots,
            transform: t,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn scale_row(&mut self, i: usize, k: &Rational) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            if !x.is_zero() {
                *x *= k;
            }
        }
    }

    /// row_i −= f · row_r
    fn axpy_row(&mut self, i: usize, r: usize, f: &Rational) {
        for k in 0..self.cols {
            let b = self.data[r * self.cols + k].clone();
            if !b.is_zero() {
                self.data[i * self.cols + k] -= f * b;
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new(self.cols);
        for i in 0..self.rows {
            e.insert_dense(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Basis of {x : M x = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some x with M x = b, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, rhs) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs.clone());
        }
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n)
                .filter(|&i| !a.get(i, col).is_zero())
                .min_by_key(|&i| bit_size(a.get(i, col)))
            else {
                return Rational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let piv = a.get(col, col).clone();
            det *= &piv;
            for i in col + 1..n {
                let f = a.get(i, col) / &piv;
                if !f.is_zero() {
                    a.axpy_row(i, col, &f);
                }
            }
        }
        det
    }

    /// dim ker (M − λ)^dim.
    pub fn generalized_eigenspace_dim(&self, lambda: &Rational) -> usize {
        self.generalized_eigenspace(lambda).len()
    }

    pub fn generalized_eigenspace(&self, lambda: &Rational) -> Vec<Vec<Rational>> {
        kernel_of_power(&self.shift(lambda), self.rows)
    }

    pub fn eigenspace_dim(&self, lambda: &Rational) -> usize {
        self.shift(lambda).kernel_basis().len()
    }

    /// Matrix of M on the span of `basis` (columns), in that basis.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<Matrix> {
        let k = basis.len();
        if k == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        let b = Matrix::from_columns(self.rows, basis);
        let mut out = Matrix::zeros(k, k);
        for (j, v) in basis.iter().enumerate() {
            let image = self.mul_vec(v);
            let coords = b
                .solve(&image)
                .ok_or_else(|| Error::Linalg("basis is not invariant".into()))?;
            for (i, x) in coords.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows).is_zero()
    }

    pub fn is_nilpotent_on(&self, basis: &[Vec<Rational>]) -> Result<bool> {
        Ok(self.restrict(basis)?.is_nilpotent())
    }

    /// Characteristic polynomial det(xI − M), coefficients from constant
    /// term upward, via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<Vec<Rational>> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Linalg("char_poly needs a square matrix".into()));
        }
        if n > 60 {
            return Err(Error::Linalg("char_poly limited to dimension 60".into()));
        }
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I
            let mut mk = self.mul(&m);
            for i in 0..n {
                let x = mk.get(i, i) + &coeffs[n - k + 1];
                mk.set(i, i, x);
            }
            let am = self.mul(&mk);
            let trace: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
            coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
            m = mk;
        }
        Ok(coeffs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kernel of A^k, computed by iterating kernels until they stabilize.
fn kernel_of_power(a: &Matrix, k: usize) -> Vec<Vec<Rational>> {
    let n = a.rows;
    if n == 0 {
        return Vec::new();
    }
    let mut power = a.clone();
    let mut prev = power.kernel_basis();
    for _ in 1..k {
        if prev.len() == n {
            break;
        }
        power = power.mul(a);
        let next = power.kernel_basis();
        if next.len() == prev.len() {
            break;
        }
        prev = next;
    }
    prev
}

/// Row-echelon accumulator for large, mostly sparse systems. Rows are kept
/// normalized with leading coefficient 1 and entries only at columns at or
/// after their pivot.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    rows: BTreeMap<usize, Vec<(usize, Rational)>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&[(usize, Rational)]> {
        self.rows.get(&col).map(Vec::as_slice)
    }

    /// Reduces a dense vector against every pivot row; afterwards it is zero
    /// at all pivot columns.
    pub fn reduce_dense(&self, acc: &mut [Rational]) {
        assert_eq!(acc.len(), self.ncols);
        for (&p, row) in &self.rows {
            if acc[p].is_zero() {
                continue;
            }
            let f = acc[p].clone();
            for (c, x) in row {
                acc[*c] -= &f * x;
            }
        }
    }

    /// Adds a row; returns true if it was independent of the existing ones.
    pub fn insert_dense(&mut self, mut acc: Vec<Rational>) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce_dense(&mut acc);
        self.insert_reduced(acc)
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, Rational)]) -> bool {
        if self.is_full() || entries.is_empty() {
            return false;
        }
        let mut acc = vec![Rational::zero(); self.ncols];
        for (c, x) in entries {
            acc[*c] += x;
        }
        self.insert_dense(acc)
    }

    fn insert_reduced(&mut self, acc: Vec<Rational>) -> bool {
        let Some(p) = acc.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        debug_assert!(!self.rows.contains_key(&p));
        let inv = acc[p].recip();
        let row: Vec<(usize, Rational)> = acc
            .into_iter()
            .enumerate()
            .skip(p)
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, normalize_small(x * &inv)))
            .collect();
        self.rows.insert(p, row);
        true
    }
}

fn normalize_small(x: Rational) -> Rational {
    x
}

/// Distinct rational roots of a polynomial given by coefficients from the
/// constant term upward.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let p = trim(coeffs.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let sf = squarefree_part(&p);
    let mut roots = Vec::new();
    let mut q = sf;
    // zero roots
    if q[0].is_zero() {
        roots.push(Rational::zero());
        q.remove(0);
        q = trim(q);
    }
    if q.len() <= 1 {
        return roots;
    }
    let ints = to_primitive_integers(&q);
    let lead = ints.last().unwrap().abs();
    let konst = ints[0].abs();
    for num in divisors(&konst) {
        for den in divisors(&lead) {
            for sign in [1, -1] {
                let cand = Rational::new(BigInt::from(sign) * num.clone(), den.clone());
                if !roots.contains(&cand) && eval_poly(&q, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, x) in b.iter().enumerate() {
            r[i + shift] -= &f * x;
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(Rational::zero());
        }
    }
    r
}

fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    if b.len() > r.len() {
        return vec![Rational::zero()];
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.iter().all(Zero::is_zero) {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, x) in b.iter().enumerate() {
            r[i + shift] -= &f * x;
        }
        q[shift] = f;
        r.pop();
    }
    trim(q)
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn squarefree_part(p: &[Rational]) -> Vec<Rational> {
    let deriv: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    if deriv.is_empty() {
        return p.to_vec();
    }
    let g = poly_gcd(p, &deriv);
    if g.len() == 1 {
        return p.to_vec();
    }
    poly_div_exact(p, &g)
}

fn to_primitive_integers(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

/// Positive divisors by trial division; intended for the small constants that
/// arise from square-free characteristic polynomials.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn identity_and_rank_one() {
        let i3 = Matrix::identity(3);
        assert_eq!(i3.rank(), 3);
        assert!(i3.kernel_basis().is_empty());
        let m = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis(), vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn jordan_and_diagonal() {
        let j = Matrix::from_ints(&[&[2, 1], &[0, 2]]);
        assert_eq!(j.generalized_eigenspace_dim(&rat(2)), 2);
        assert_eq!(j.eigenspace_dim(&rat(2)), 1);
        let n = Matrix::from_ints(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]);
        assert!(n.is_nilpotent());
        let d = Matrix::from_ints(&[&[1, 0], &[0, -3]]);
        assert_eq!(d.generalized_eigenspace_dim(&rat(1)), 1);
        assert_eq!(d.generalized_eigenspace_dim(&rat(-3)), 1);
        assert_eq!(d.generalized_eigenspace_dim(&rat(2)), 0);
    }

    #[test]
    fn restriction_checks_invariance() {
        let d = Matrix::from_ints(&[&[1, 1], &[0, 2]]);
        let inv = vec![vec![rat(1), rat(0)]];
        assert_eq!(d.restrict(&inv).unwrap(), Matrix::from_ints(&[&[1]]));
        let not_inv = vec![vec![rat(0), rat(1)]];
        assert!(d.restrict(&not_inv).is_err());
    }

    #[test]
    fn char_poly_and_roots() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
        // (x-2)^2 (x+3) = x^3 - x^2 - 8x + 12
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, vec![rat(12), rat(-8), rat(-1), rat(1)]);
        assert_eq!(rational_roots(&cp), vec![rat(-3), rat(2)]);
        // 4x^2 - 1 has roots ±1/2; x^2 - 2 has none
        assert_eq!(rational_roots(&[rat(-1), rat(0), rat(4)]), vec![frac(-1, 2), frac(1, 2)]);
        assert!(rational_roots(&[rat(-2), rat(0), rat(1)]).is_empty());
        assert_eq!(rational_roots(&[rat(0), rat(0), rat(1)]), vec![rat(0)]);
    }

    #[test]
    fn determinant_matches_elimination() {
        let m = Matrix::from_ints(&[&[2, 3], &[1, 4]]);
        assert_eq!(m.determinant(), rat(5));
        let s = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), rat(0));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec((-4i64..5, 1i64..4), n * n).prop_map(move |v| {
            let rows = v
                .chunks(n)
                .map(|c| c.iter().map(|&(p, q)| frac(p, q)).collect())
                .collect();
            Matrix::from_rows(rows)
        })
    }

    fn arb_low_rank(n: usize) -> impl Strategy<Value = Matrix> {
        (arb_matrix(n), 0usize..n).prop_map(move |(m, k)| {
            // zero out some rows and mix to get rank deficiency
            let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
            for i in 0..k {
                rows[i] = rows[n - 1].iter().map(|x| x * rat(i as i64 + 1)).collect();
            }
            Matrix::from_rows(rows)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn rank_nullity(m in arb_low_rank(20)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), 20);
            for v in m.kernel_basis() {
                prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rref_is_strategy_independent(m in arb_low_rank(6)) {
            let a = m.rref_with(PivotStrategy::MinimalSize);
            let b = m.rref_with(PivotStrategy::FirstNonzero);
            prop_assert_eq!(&a.reduced, &b.reduced);
            prop_assert_eq!(&a.pivots, &b.pivots);
            prop_assert_eq!(a.transform.mul(&m), a.reduced.clone());
            prop_assert!(a.pivots.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn generalized_kernels_nest(m in arb_low_rank(5), l in -2i64..3) {
            let a = m.shift(&rat(l));
            let mut last = 0;
            for k in 1..=6 {
                let d = a.pow(k).kernel_basis().len();
                prop_assert!(d >= last);
                last = d;
            }
            prop_assert_eq!(a.pow(5).kernel_basis().len(), a.pow(6).kernel_basis().len());
        }
    }
}
