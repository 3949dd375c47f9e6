//! Exact linear algebra over the prime field `F_p`.
//!
//! Elimination is deterministic: pivots are the first nonzero entry in
//! column order, so echelon bases are reproducible bit for bit.

use std::fmt;

use crate::error::LinalgError;

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat; p is prime
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, entries: impl IntoIterator<Item = u32>) -> Self {
        Self { p, entries: entries.into_iter().map(|e| e % p).collect() }
    }

    pub fn zero(p: u32, len: usize) -> Self {
        Self { p, entries: vec![0; len] }
    }

    pub fn unit(p: u32, len: usize, k: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[k] = 1;
        v
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self::new(self.p, self.entries.iter().zip(&other.entries).map(|(a, b)| a + b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self::new(self.p, self.entries.iter().zip(&other.entries).map(|(a, b)| a + self.p - b))
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(self.p, self.entries.iter().map(|&a| (a as u64 * (c % self.p) as u64 % self.p as u64) as u32))
    }

    pub fn concat(parts: &[FpVector]) -> Self {
        let p = parts.first().map_or(2, |v| v.p);
        Self { p, entries: parts.iter().flat_map(|v| v.entries.iter().copied()).collect() }
    }

    /// Split into `k` consecutive blocks of equal length.
    pub fn blocks(&self, k: usize) -> Vec<FpVector> {
        if k == 0 {
            return Vec::new();
        }
        let w = self.len() / k;
        self.entries.chunks(w.max(1)).take(k).map(|c| Self { p: self.p, entries: c.to_vec() }).collect()
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction: the reduced row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &e) in row.iter().enumerate() {
                m.set(r, c, e % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, cols: &[FpVector]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for r in 0..rows {
                m.set(r, c, v.entries[r]);
            }
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector::new(self.p, (0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        let p = self.p as u64;
        Ok(FpVector::new(
            self.p,
            (0..self.rows).map(|r| {
                (self.row(r).iter().zip(&v.entries).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            }),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u64 = (0..self.cols).map(|k| self.get(r, k) as u64 * other.get(k, c) as u64).sum();
                out.set(r, c, (s % p) as u32);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = (*o + b) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = (*o + self.p - b) % self.p;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn echelon(&self) -> Echelon {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            if r != prow {
                for k in 0..m.cols {
                    m.data.swap(r * m.cols + k, prow * m.cols + k);
                }
            }
            let inv = inv_mod(m.get(prow, c), self.p) as u64;
            for k in c..m.cols {
                let v = (m.get(prow, k) as u64 * inv % p) as u32;
                m.set(prow, k, v);
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let f = m.get(r2, c) as u64;
                if f == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let v = (m.get(r2, k) as u64 + p * p - f * m.get(prow, k) as u64) % p;
                    m.set(r2, k, v as u32);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// `{v : M v = 0}` as a subspace of `F_p^cols`.
    pub fn nullspace(&self) -> FpSubspace {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (self.p - reduced.get(r, f)) % self.p;
            }
            FpVector::new(self.p, v)
        });
        FpSubspace::span(self.p, self.cols, vectors)
    }

    /// Some `x` with `M x = v`, if one exists.
    pub fn solve(&self, v: &FpVector) -> Result<Option<FpVector>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "system has {} rows, right-hand side has length {}",
                self.rows,
                v.len()
            )));
        }
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, v.entries[r]);
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(Some(FpVector::new(self.p, x)))
    }
}

/// A subspace of `F_p^ambient`, stored as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpSubspace {
    p: u32,
    ambient: usize,
    basis: Vec<FpVector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpSubspace(dim {} in F_{}^{}: {:?})", self.dim(), self.p, self.ambient, self.basis)
    }
}

impl FpSubspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Self { p, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::span(p, ambient, (0..ambient).map(|k| FpVector::unit(p, ambient, k)))
    }

    pub fn span(p: u32, ambient: usize, vectors: impl IntoIterator<Item = FpVector>) -> Self {
        let rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
                v.entries
            })
            .collect();
        if rows.is_empty() {
            return Self::zero(p, ambient);
        }
        let Echelon { reduced, pivots } = FpMatrix::from_rows(p, ambient, &rows).echelon();
        let basis = (0..pivots.len()).map(|r| FpVector::new(p, reduced.row(r).iter().copied())).collect();
        Self { p, ambient, basis, pivots }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpVector] {
        &self.basis
    }

    fn compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch(self.p, other.p));
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &FpVector) -> Option<FpVector> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v.entries[c]).collect();
        let mut residual = v.clone();
        for (b, &c) in self.basis.iter().zip(&coeffs) {
            residual = residual.sub(&b.scale(c));
        }
        residual.is_zero().then(|| FpVector::new(self.p, coeffs))
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        Ok(Self::span(self.p, self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.p, self.ambient));
        }
        // x = Σ a_i u_i = Σ b_j v_j  <=>  [U | -V] (a, b) = 0
        let mut cols: Vec<FpVector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.scale(self.p - 1)));
        let null = FpMatrix::from_columns(self.p, self.ambient, &cols).nullspace();
        let k = self.dim();
        let vectors = null.basis.iter().map(|sol| {
            self.basis
                .iter()
                .zip(&sol.entries[..k])
                .fold(FpVector::zero(self.p, self.ambient), |acc, (u, &a)| acc.add(&u.scale(a)))
        });
        Ok(Self::span(self.p, self.ambient, vectors))
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image(&self, m: &FpMatrix) -> Result<Self, LinalgError> {
        let vs = self.basis.iter().map(|b| m.mul_vec(b)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::span(self.p, m.rows(), vs))
    }

    /// Every vector in the subspace, in a fixed order (`p^dim` of them).
    pub fn vectors(&self) -> Vec<FpVector> {
        let total = (self.p as usize).pow(self.dim() as u32);
        (0..total)
            .map(|mut code| {
                let mut v = FpVector::zero(self.p, self.ambient);
                for b in self.basis.iter().rev() {
                    let c = (code % self.p as usize) as u32;
                    code /= self.p as usize;
                    v = v.add(&b.scale(c));
                }
                v
            })
            .collect()
    }
}

/// Kernel of `m` intersected with a subspace `u` of its domain.
pub fn kernel_within(m: &FpMatrix, u: &FpSubspace) -> FpSubspace {
    if u.dim() == 0 {
        return u.clone();
    }
    // m (Σ c_i u_i) = 0  <=>  (m U) c = 0
    let mu: Vec<FpVector> = u.basis().iter().map(|b| m.mul_vec(b).expect("dims")).collect();
    let null = FpMatrix::from_columns(m.modulus(), m.rows(), &mu).nullspace();
    FpSubspace::span(
        m.modulus(),
        u.ambient(),
        null.basis().iter().map(|c| {
            u.basis()
                .iter()
                .zip(c.entries())
                .fold(FpVector::zero(m.modulus(), u.ambient()), |acc, (b, &a)| acc.add(&b.scale(a)))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nullspace(m: &FpMatrix) -> Vec<FpVector> {
        let p = m.modulus();
        let all = FpSubspace::full(p, m.cols()).vectors();
        all.into_iter().filter(|v| m.mul_vec(v).unwrap().is_zero()).collect()
    }

    #[test]
    fn zero_and_identity() {
        let z = FpMatrix::zeros(5, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().dim(), 4);
        let i = FpMatrix::identity(7, 5);
        assert_eq!(i.rank(), 5);
        assert_eq!(i.nullspace().dim(), 0);
    }

    #[test]
    fn small_nullspace_matches_enumeration() {
        let m = FpMatrix::from_rows(3, 2, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        // oracle: all 9 vectors with Mv = 0
        let brute = brute_nullspace(&m);
        assert_eq!(brute.len(), 3);
        assert!(brute.contains(&FpVector::new(3, [1, 1])));
        let mut from_space = ns.vectors();
        from_space.sort();
        let mut b = brute;
        b.sort();
        assert_eq!(from_space, b);
    }

    #[test]
    fn intersection_example() {
        let u = FpSubspace::span(2, 3, [FpVector::new(2, [1, 0, 0]), FpVector::new(2, [0, 1, 0])]);
        let v = FpSubspace::span(2, 3, [FpVector::new(2, [1, 1, 0]), FpVector::new(2, [0, 0, 1])]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, FpSubspace::span(2, 3, [FpVector::new(2, [1, 1, 0])]));
        // enumerate all 8 vectors
        let brute: Vec<_> =
            FpSubspace::full(2, 3).vectors().into_iter().filter(|x| u.contains(x) && v.contains(x)).collect();
        assert_eq!(brute.len(), 2);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.intersect(&FpSubspace::zero(2, 3)).unwrap().dim(), 0);
    }

    #[test]
    fn ambient_mismatch() {
        let u = FpSubspace::full(2, 3);
        let v = FpSubspace::full(2, 4);
        assert!(u.intersect(&v).is_err());
        assert!(u.sum(&FpSubspace::full(3, 3)).is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = FpMatrix::from_rows(5, 3, &[vec![1, 2, 0], vec![0, 1, 4]]);
        let v = FpVector::new(5, [3, 1]);
        let x = m.solve(&v).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), v);
        let singular = FpMatrix::from_rows(5, 2, &[vec![1, 1], vec![2, 2]]);
        assert_eq!(singular.solve(&FpVector::new(5, [1, 0])).unwrap(), None);
        assert!(singular.solve(&FpVector::new(5, [1, 0, 0])).is_err());
    }

    #[test]
    fn kernel_within_subspace() {
        let m = FpMatrix::from_rows(3, 3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let u = FpSubspace::span(3, 3, [FpVector::new(3, [1, 1, 0]), FpVector::new(3, [0, 0, 1])]);
        let k = kernel_within(&m, &u);
        assert_eq!(k, FpSubspace::span(3, 3, [FpVector::new(3, [0, 0, 1])]));
    }
}
