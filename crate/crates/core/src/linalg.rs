//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is exact: no floating point, no tolerance. Subspaces are
//! kept in reduced row echelon form so that equality of representations is
//! equality of subspaces.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = BigRational;

/// Parse a rational literal `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let mut parts = t.split('/');
    let numer = parts.next().unwrap_or("");
    let numer = BigInt::from_str(numer).map_err(|_| Error::BadRational(s.to_string()))?;
    let denom = match parts.next() {
        None => BigInt::one(),
        Some(d) => BigInt::from_str(d).map_err(|_| Error::BadRational(s.to_string()))?,
    };
    if parts.next().is_some() {
        return Err(Error::BadRational(s.to_string()));
    }
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from rows; the column count must be given so that the matrix may
    /// have zero rows.
    pub fn from_rows_in(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
        }
        let n = rows.len();
        Ok(RationalMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::DimensionMismatch("empty row list needs a column count".into()))?;
        Self::from_rows_in(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition shape".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = &*e + o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j) / &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one row per basis vector.
    pub fn kernel(&self) -> Self {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(i, f).clone();
            }
            rows.push(v);
        }
        RationalMatrix::from_rows_in(self.cols, rows).expect("kernel rows well-shaped")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        let mut inv = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m.get(c, c);
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / m.get(c, c);
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Linear subspace of `Q^n`, canonicalized: the stored basis is the reduced
/// row echelon form of any spanning set, so two equal subspaces have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::zero(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::identity(ambient) }
    }

    /// Span of the given row vectors, canonicalized.
    pub fn span(ambient: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let m = RationalMatrix::from_rows_in(ambient, rows.to_vec())?;
        Ok(Self::row_space(&m))
    }

    /// Row space of a matrix, canonicalized.
    pub fn row_space(m: &RationalMatrix) -> Self {
        let (red, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        let basis = RationalMatrix::from_rows_in(m.cols(), rows).expect("echelon rows well-shaped");
        Subspace { ambient: m.cols(), basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    fn pivot_cols(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| (0..self.ambient).find(|&j| !self.basis.get(i, j).is_zero()).unwrap())
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector/ambient dimension mismatch");
        let mut w = v.to_vec();
        for (i, p) in self.pivot_cols().into_iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for j in 0..self.ambient {
                w[j] = &w[j] - &f * self.basis.get(i, j);
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace sum across ambient spaces".into()));
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::span(self.ambient, &rows)
    }

    /// Intersection by the Zassenhaus block construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(
                "subspace intersection across ambient spaces".into(),
            ));
        }
        let n = self.ambient;
        let mut rows = Vec::new();
        for r in self.basis.row_vecs() {
            let mut row = r.clone();
            row.extend(r);
            rows.push(row);
        }
        for r in other.basis.row_vecs() {
            let mut row = r;
            row.extend(vec![Rational::zero(); n]);
            rows.push(row);
        }
        let m = RationalMatrix::from_rows_in(2 * n, rows)?;
        let (red, pivots) = m.rref();
        let mut inter = Vec::new();
        for i in 0..pivots.len() {
            if pivots[i] >= n {
                inter.push(red.row(i)[n..].to_vec());
            }
        }
        Subspace::span(n, &inter)
    }

    /// Deterministic complement of `self` inside `larger`: extend the echelon
    /// basis of `self` greedily by rows of `larger`'s echelon basis, taken in
    /// order, so the first basis extension in that ordering wins.
    pub fn complement_within(&self, larger: &Subspace) -> Result<Subspace> {
        if self.ambient != larger.ambient {
            return Err(Error::DimensionMismatch("complement across ambient spaces".into()));
        }
        if !self.is_subspace_of(larger) {
            return Err(Error::DimensionMismatch(
                "complement_within of a non-subspace".into(),
            ));
        }
        let mut cur = self.basis.row_vecs();
        let mut rank = self.dim();
        let mut added = Vec::new();
        for r in larger.basis.row_vecs() {
            let mut probe = cur.clone();
            probe.push(r.clone());
            let m = RationalMatrix::from_rows_in(self.ambient, probe.clone())
                .expect("probe rows well-shaped");
            if m.rank() > rank {
                rank += 1;
                cur = probe;
                added.push(r);
            }
        }
        Subspace::span(self.ambient, &added)
    }

    /// Image of `self` under the linear map with matrix `m` (column-vector
    /// convention, so vectors map by `v -> m v`).
    pub fn apply(&self, m: &RationalMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map/subspace dimension mismatch".into()));
        }
        let img = self.basis.mul(&m.transpose())?;
        Ok(Subspace::row_space(&img))
    }

    /// Tensor product inside `Q^(n*m)` with basis vectors ordered pairwise
    /// lexicographically: `(i, j) -> i*m + j`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let m = other.ambient;
        let mut rows = Vec::new();
        for a in self.basis.row_vecs() {
            for b in other.basis.row_vecs() {
                let mut row = Vec::with_capacity(n * m);
                for x in &a {
                    for y in &b {
                        row.push(x * y);
                    }
                }
                rows.push(row);
            }
        }
        Subspace::span(n * m, &rows).expect("tensor rows well-shaped")
    }
}

/// Solution space of `a x = 0` as a subspace of `Q^cols`.
pub fn solve_linear(a: &RationalMatrix) -> Subspace {
    Subspace::row_space(&a.kernel())
}

/// Dense matrix over the integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_in(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
        }
        let n = rows.len();
        Ok(IntegerMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::DimensionMismatch("empty row list needs a column count".into()))?;
        Self::from_rows_in(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, Rational::from(self.get(i, j).clone()));
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_dst += c * row_src
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + c * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col_dst += c * col_src
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }
}

/// Smith normal form `a = u * d * v` with `u`, `v` unimodular and `d`
/// diagonal, non-negative, each entry dividing the next.
pub struct SmithNormalForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, in order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithNormalForm {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    // Row ops on d are compensated on u, column ops on v, preserving a = u d v.
    let pick_pivot = |d: &IntegerMatrix, t: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < d.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = pick_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_rows(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t) / d.get(t, t);
                if !q.is_zero() {
                    d.row_add(i, t, &-q.clone());
                    u.col_add(t, i, &q);
                }
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_cols(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j) / d.get(t, t);
                if !q.is_zero() {
                    d.col_add(j, t, &-q.clone());
                    v.row_add(t, j, &q);
                }
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_rows(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility chain: the pivot must divide the rest
            let p = d.get(t, t).clone();
            let mut bad = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !(d.get(i, j) % &p).is_zero() {
                        bad = Some(i);
                        break 'search;
                    }
                }
            }
            match bad {
                Some(i) => {
                    d.row_add(t, i, &BigInt::one());
                    u.col_add(i, t, &-BigInt::one());
                }
                None => break,
            }
        }
        t += 1;
    }

    for k in 0..m.min(n) {
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_col(k);
        }
    }

    SmithNormalForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn q(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    pub(crate) fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    pub(crate) fn rmat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| qv(r)).collect()).unwrap()
    }

    pub(crate) fn sub(ambient: usize, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| qv(r)).collect();
        Subspace::span(ambient, &rows).unwrap()
    }

    #[test]
    fn rational_parsing_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
        assert!(matches!(parse_rational("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse_rational("a/b"), Err(Error::BadRational(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(Error::BadRational(_))));
    }

    #[test]
    fn canonical_representation_is_basis_independent() {
        let a = sub(2, &[&[1, 1], &[1, -1]]);
        let b = sub(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(a, b);
        assert!(a.is_full());
    }

    #[test]
    fn sum_and_intersection_match_the_worked_example() {
        let plane = sub(2, &[&[1, 0], &[0, 1]]);
        let diag = sub(2, &[&[1, 1]]);
        assert_eq!(plane.intersect(&diag).unwrap(), diag);
        assert_eq!(diag.sum(&plane).unwrap(), plane);
    }

    #[test]
    fn kernel_of_singular_map() {
        // [[1,1],[1,1]] kills the antidiagonal line
        let m = rmat(&[&[1, 1], &[1, 1]]);
        let k = solve_linear(&m);
        assert_eq!(k, sub(2, &[&[1, -1]]));
    }

    #[test]
    fn complement_is_deterministic_and_complements() {
        let inside = Subspace::full(3);
        let s = sub(3, &[&[0, 1, 0]]);
        let c = s.complement_within(&inside).unwrap();
        // greedy over the identity basis picks e1 then e3
        assert_eq!(c, sub(3, &[&[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(s.sum(&c).unwrap(), inside);
        assert_eq!(s.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn apply_maps_subspaces_forward() {
        // rotation-ish map e1 -> e2, e2 -> e1
        let swap = rmat(&[&[0, 1], &[1, 0]]);
        let l = sub(2, &[&[1, 0]]);
        assert_eq!(l.apply(&swap).unwrap(), sub(2, &[&[0, 1]]));
    }

    #[test]
    fn tensor_of_lines_is_a_line() {
        let a = sub(2, &[&[1, 2]]);
        let b = sub(2, &[&[3, 0]]);
        let t = a.tensor(&b);
        assert_eq!(t.ambient_dim(), 4);
        assert_eq!(t, sub(4, &[&[3, 0, 6, 0]]));
    }

    #[test]
    fn snf_of_the_worked_two_by_two() {
        let a = IntegerMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let snf = smith_normal_form(&a);
        let divisors: Vec<i64> = snf
            .elementary_divisors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(divisors, vec![2, 4]);
        let back = snf.u.mul(&snf.d).unwrap().mul(&snf.v).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn snf_handles_zero_and_empty_shapes() {
        let z = IntegerMatrix::zero(2, 3);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.d, z);
        assert!(snf.elementary_divisors().is_empty());

        let e = IntegerMatrix::zero(0, 4);
        let snf = smith_normal_form(&e);
        assert_eq!(snf.d.rows(), 0);
        assert_eq!(snf.v, IntegerMatrix::identity(4));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let m = rmat(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn determinant_of_known_matrices() {
        assert_eq!(rmat(&[&[2, 0], &[0, 3]]).determinant().unwrap(), q(6));
        assert_eq!(rmat(&[&[0, 1], &[1, 0]]).determinant().unwrap(), q(-1));
        assert_eq!(rmat(&[&[1, 2], &[2, 4]]).determinant().unwrap(), q(0));
    }

    #[test]
    fn zero_dimensional_spaces_are_legal() {
        let z = Subspace::zero(0);
        let f = Subspace::full(0);
        assert_eq!(z, f);
        assert_eq!(z.sum(&f).unwrap(), z);
        assert_eq!(z.intersect(&f).unwrap(), z);
    }

    fn arb_subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-4i64..5, ambient), 0..=ambient)
            .prop_map(move |rows| {
                let rows: Vec<Vec<Rational>> = rows.iter().map(|r| qv(r)).collect();
                Subspace::span(ambient, &rows).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dim_formula(a in arb_subspace(4), b in arb_subspace(4)) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
            prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        }

        #[test]
        fn modular_law(b in arb_subspace(4), c in arb_subspace(4), picks in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..4)) {
            // a is a random subspace of c
            let rows: Vec<Vec<Rational>> = picks.iter().map(|coeffs| {
                let mut v = vec![Rational::zero(); 4];
                for (k, row) in c.basis().row_vecs().iter().enumerate() {
                    if k < coeffs.len() {
                        for j in 0..4 {
                            v[j] = &v[j] + &q(coeffs[k]) * &row[j];
                        }
                    }
                }
                v
            }).collect();
            let a = Subspace::span(4, &rows).unwrap();
            prop_assert!(a.is_subspace_of(&c));
            let lhs = a.sum(&b.intersect(&c).unwrap()).unwrap();
            let rhs = a.sum(&b).unwrap().intersect(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn snf_contract(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            use num::Integer;
            let mut entries = Vec::new();
            let mut state = seed;
            for _ in 0..rows {
                let mut r = Vec::new();
                for _ in 0..cols {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    r.push(((state >> 33) % 19) as i64 - 9);
                }
                entries.push(r);
            }
            let a = IntegerMatrix::from_i64_rows(&entries).unwrap();
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.u.mul(&snf.d).unwrap().mul(&snf.v).unwrap(), a);
            prop_assert_eq!(snf.u.to_rational().determinant().unwrap().abs(), q(1));
            prop_assert_eq!(snf.v.to_rational().determinant().unwrap().abs(), q(1));
            let diag = snf.d.diagonal();
            for w in diag.windows(2) {
                if !w[0].is_zero() {
                    prop_assert!(w[1].mod_floor(&w[0]).is_zero());
                } else {
                    prop_assert!(w[1].is_zero());
                }
            }
            for x in &diag {
                prop_assert!(!x.is_negative());
            }
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert!(snf.d.get(i, j).is_zero());
                    }
                }
            }
        }
    }
}
