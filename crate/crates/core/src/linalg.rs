//! Exact linear algebra over a prime field F_p.
//!
//! Matrices are dense and row-major. A matrix `M` with `rows × cols` entries
//! represents a linear map `F_p^cols → F_p^rows`, so composition `g ∘ f` is the
//! product `g.mul(&f)`. Zero-sized shapes (`0×n`, `n×0`, `0×0`) are legal and
//! stand for maps into or out of the zero space.
//!
//! All bases returned here are canonical: kernels come from the reduced row
//! echelon form (one basis vector per free column), images are the columns of
//! the reduced column echelon form. Identical inputs therefore produce
//! identical outputs, which lets callers compare subspaces by matrix equality.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    prime: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix[F_{}; {}x{}]", self.prime, self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl FpMatrix {
    pub fn new(rows: usize, cols: usize, prime: u32, data: Vec<u32>) -> Result<Self> {
        check_prime(prime)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&value) = data.iter().find(|&&e| e >= prime) {
            return Err(Error::EntryOutOfRange { value, prime });
        }
        Ok(Self {
            rows,
            cols,
            prime,
            data,
        })
    }

    /// Builds a matrix from rows. `cols` is needed because an empty row list
    /// does not determine the column count.
    pub fn from_rows(prime: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, prime, data)
    }

    /// Reduces arbitrary integers modulo `prime`.
    pub fn from_i64_rows(prime: u32, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let p = prime as i64;
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&e| e.rem_euclid(p) as u32).collect())
            .collect();
        Self::from_rows(prime, cols, &reduced)
    }

    pub fn zeros(rows: usize, cols: usize, prime: u32) -> Self {
        assert!(is_prime(prime), "{prime} is not prime");
        Self {
            rows,
            cols,
            prime,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, prime: u32) -> Self {
        let mut m = Self::zeros(n, n, prime);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn column_vector(prime: u32, entries: &[u32]) -> Result<Self> {
        Self::new(entries.len(), 1, prime, entries.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        assert!(value < self.prime);
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch {
                left: self.prime,
                right: other.prime,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.prime);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product `self · rhs` (the composite "first `rhs`, then `self`").
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.prime as u64;
        let mut out = Self::zeros(self.rows, rhs.cols, self.prime);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, c) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| add_mod(a, b, self.prime))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| neg_mod(a, self.prime)).collect();
        Self { data, ..*self }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut out = Self::zeros(self.rows, cols, self.prime);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            out.data[r * cols + self.cols..(r + 1) * cols]
                .copy_from_slice(&rhs.data[r * rhs.cols..(r + 1) * rhs.cols]);
        }
        Ok(out)
    }

    /// `[self; rhs]`
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Self {
            rows: self.rows + rhs.rows,
            data,
            ..*self
        })
    }

    pub fn row_block(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.rows);
        Self {
            rows: end - start,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
            ..*self
        }
    }

    pub fn column_block(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.cols);
        self.select_columns(&(start..end).collect::<Vec<_>>())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len(), self.prime);
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.prime;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(sel) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), p);
            for c in col..m.cols {
                let v = mul_mod(m.get(row, c), inv, p);
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let sub = mul_mod(factor, m.get(row, c), p);
                    let v = add_mod(m.get(r, c), neg_mod(sub, p), p);
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && rank(self) == self.rows
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    m.rref().1.len()
}

/// Columns form a basis of `{v : Mv = 0}`.
pub fn kernel_basis(m: &FpMatrix) -> FpMatrix {
    let p = m.prime;
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = FpMatrix::zeros(m.cols, free.len(), p);
    for (j, &f) in free.iter().enumerate() {
        basis.data[f * free.len() + j] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            basis.data[pc * free.len() + j] = neg_mod(r.get(pr, f), p);
        }
    }
    basis
}

/// Columns form a basis of the column space, in reduced column echelon form.
pub fn image_basis(m: &FpMatrix) -> FpMatrix {
    let (r, pivots) = m.transpose().rref();
    r.row_block(0, pivots.len()).transpose()
}

/// Returns some `v` with `Mv = b`, or `None` when `b` is outside the image.
pub fn solve_preimage(m: &FpMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            m.rows
        )));
    }
    let rhs = FpMatrix::column_vector(m.prime, b)?;
    let (r, pivots) = m.hstack(&rhs)?.rref();
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut v = vec![0; m.cols];
    for (pr, &pc) in pivots.iter().enumerate() {
        v[pc] = r.get(pr, m.cols);
    }
    debug_assert_eq!(
        m.mul(&FpMatrix::column_vector(m.prime, &v)?)?.entries(),
        b,
        "preimage failed substitution"
    );
    Ok(Some(v))
}

/// Solves `M X = B` column by column; `None` if any column is unreachable.
pub fn solve_matrix(m: &FpMatrix, b: &FpMatrix) -> Result<Option<FpMatrix>> {
    m.same_field(b)?;
    let mut out = FpMatrix::zeros(m.cols, b.cols, m.prime);
    for c in 0..b.cols {
        match solve_preimage(m, &b.column(c))? {
            Some(v) => {
                for (r, e) in v.into_iter().enumerate() {
                    out.set(r, c, e);
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// A subspace of a direct sum, with the restriction maps to each summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceRealization {
    pub ambient_dim: usize,
    /// Columns are a basis of the subspace (`ambient_dim` rows).
    pub basis: FpMatrix,
    /// `(summand, map)`: the map sends subspace coordinates to the summand.
    pub projections: Vec<(String, FpMatrix)>,
}

impl SubspaceRealization {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn projection(&self, name: &str) -> Option<&FpMatrix> {
        self.projections.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// A quotient of a direct sum, with the induced maps from each summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRealization {
    pub ambient_dim: usize,
    /// Columns span the subspace that is quotiented out.
    pub kernel_basis: FpMatrix,
    /// `ambient_dim → dim`, full row rank, annihilates `kernel_basis`.
    pub quotient_map: FpMatrix,
    /// `(summand, map)`: the map sends the summand into the quotient.
    pub injections: Vec<(String, FpMatrix)>,
}

impl QuotientRealization {
    pub fn dim(&self) -> usize {
        self.quotient_map.rows()
    }

    pub fn injection(&self, name: &str) -> Option<&FpMatrix> {
        self.injections.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// Splits a subspace of `A ⊕ B` into its two coordinate projections.
pub(crate) fn subspace_with_projections(
    basis: FpMatrix,
    names: [(&str, usize); 2],
) -> SubspaceRealization {
    let [(a_name, a), (b_name, b)] = names;
    debug_assert_eq!(basis.rows(), a + b);
    SubspaceRealization {
        ambient_dim: a + b,
        projections: vec![
            (a_name.to_string(), basis.row_block(0, a)),
            (b_name.to_string(), basis.row_block(a, a + b)),
        ],
        basis,
    }
}

/// Quotient of `A ⊕ B` by the span of the columns of `relations`.
pub(crate) fn quotient_with_injections(
    relations: &FpMatrix,
    names: [(&str, usize); 2],
) -> QuotientRealization {
    let [(a_name, a), (b_name, b)] = names;
    debug_assert_eq!(relations.rows(), a + b);
    let kernel = image_basis(relations);
    // Rows of the quotient map span the annihilator of the relations.
    let quotient_map = kernel_basis(&kernel.transpose()).transpose();
    QuotientRealization {
        ambient_dim: a + b,
        injections: vec![
            (a_name.to_string(), quotient_map.column_block(0, a)),
            (b_name.to_string(), quotient_map.column_block(a, a + b)),
        ],
        kernel_basis: kernel,
        quotient_map,
    }
}

/// `{(a, b) ∈ A ⊕ B : f(a) = g(b)}` for `f: A → C`, `g: B → C`.
pub fn pullback(f: &FpMatrix, g: &FpMatrix) -> Result<SubspaceRealization> {
    f.same_field(g)?;
    if f.rows != g.rows {
        return Err(Error::DimensionMismatch(format!(
            "pullback legs land in spaces of dimension {} and {}",
            f.rows, g.rows
        )));
    }
    let k = kernel_basis(&f.hstack(&g.neg())?);
    Ok(subspace_with_projections(k, [("left", f.cols), ("right", g.cols)]))
}

/// `(A ⊕ B) / im(c ↦ (f(c), −g(c)))` for `f: C → A`, `g: C → B`.
pub fn pushout(f: &FpMatrix, g: &FpMatrix) -> Result<QuotientRealization> {
    f.same_field(g)?;
    if f.cols != g.cols {
        return Err(Error::DimensionMismatch(format!(
            "pushout legs start in spaces of dimension {} and {}",
            f.cols, g.cols
        )));
    }
    let relations = f.vstack(&g.neg())?;
    Ok(quotient_with_injections(
        &relations,
        [("left", f.rows), ("right", g.rows)],
    ))
}

/// Block-diagonal sum. The empty sum is the `0×0` matrix.
pub fn direct_sum(prime: u32, ms: &[FpMatrix]) -> Result<FpMatrix> {
    check_prime(prime)?;
    for m in ms {
        if m.prime != prime {
            return Err(Error::PrimeMismatch {
                left: prime,
                right: m.prime,
            });
        }
    }
    let rows = ms.iter().map(FpMatrix::rows).sum();
    let cols = ms.iter().map(FpMatrix::cols).sum();
    let mut out = FpMatrix::zeros(rows, cols, prime);
    let (mut r0, mut c0) = (0, 0);
    for m in ms {
        for r in 0..m.rows {
            for c in 0..m.cols {
                out.set(r0 + r, c0 + c, m.get(r, c));
            }
        }
        r0 += m.rows;
        c0 += m.cols;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: &[Vec<u32>], cols: usize) -> FpMatrix {
        FpMatrix::from_rows(2, cols, rows).unwrap()
    }

    /// Every vector of F_p^n, for brute-force checks.
    fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..p).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn apply(m: &FpMatrix, v: &[u32]) -> Vec<u32> {
        m.mul(&FpMatrix::column_vector(m.prime(), v).unwrap())
            .unwrap()
            .entries()
            .to_vec()
    }

    #[test]
    fn rejects_non_prime_and_unreduced_entries() {
        assert_eq!(FpMatrix::new(1, 1, 4, vec![0]), Err(Error::NotPrime(4)));
        assert_eq!(
            FpMatrix::new(1, 1, 3, vec![3]),
            Err(Error::EntryOutOfRange { value: 3, prime: 3 })
        );
        assert!(FpMatrix::new(2, 2, 2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&FpMatrix::identity(2, 2)), 2);
        assert_eq!(rank(&FpMatrix::zeros(3, 4, 3)), 0);
        // Hand reduction: R2 <- R2 + R1 leaves one nonzero row.
        assert_eq!(rank(&m2(&[vec![1, 1], vec![1, 1]], 2)), 1);
        assert_eq!(rank(&FpMatrix::zeros(0, 0, 2)), 0);
        assert_eq!(rank(&FpMatrix::zeros(0, 5, 2)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&FpMatrix::identity(3, 2)).cols(), 0);
        assert_eq!(kernel_basis(&FpMatrix::identity(3, 2)).rows(), 3);

        // Enumerating F_2^2: only (0,0) and (1,1) satisfy v1 + v2 = 0.
        let k = kernel_basis(&m2(&[vec![1, 1]], 2));
        assert_eq!(k.to_rows(), vec![vec![1], vec![1]]);

        let z = FpMatrix::zeros(2, 2, 2);
        let k = kernel_basis(&z);
        assert_eq!(rank(&k), 2);
        assert!(z.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn kernel_matches_enumeration_over_f3() {
        let m = FpMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let null_count = all_vectors(3, 3)
            .iter()
            .filter(|v| apply(&m, v).iter().all(|&e| e == 0))
            .count();
        let k = kernel_basis(&m);
        assert_eq!(3usize.pow(k.cols() as u32), null_count);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&FpMatrix::identity(2, 2)).cols(), 2);
        let im = image_basis(&m2(&[vec![1, 1], vec![1, 1]], 2));
        assert_eq!(im.to_rows(), vec![vec![1], vec![1]]);
        let im = image_basis(&FpMatrix::zeros(3, 2, 5));
        assert_eq!((im.rows(), im.cols()), (3, 0));
    }

    #[test]
    fn preimage_examples() {
        let id = FpMatrix::identity(3, 5);
        assert_eq!(solve_preimage(&id, &[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        let z = FpMatrix::zeros(2, 2, 2);
        assert_eq!(solve_preimage(&z, &[1, 0]).unwrap(), None);
        // Of the four vectors in F_2^2 only (1,1) maps to (0,1).
        let m = m2(&[vec![1, 1], vec![0, 1]], 2);
        let hits: Vec<_> = all_vectors(2, 2)
            .into_iter()
            .filter(|v| apply(&m, v) == vec![0, 1])
            .collect();
        assert_eq!(hits, vec![vec![1, 1]]);
        assert_eq!(solve_preimage(&m, &[0, 1]).unwrap(), Some(vec![1, 1]));
    }

    #[test]
    fn pullback_examples() {
        let id = FpMatrix::identity(2, 2);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.dim(), 2);
        assert_eq!(pb.projection("left"), pb.projection("right"));

        let zero_space = FpMatrix::zeros(1, 0, 2);
        let pb = pullback(&FpMatrix::identity(1, 2), &zero_space).unwrap();
        assert_eq!(pb.dim(), 0);

        // All 8 vectors (a1, a2, b) of F_2^3 with a1 = b: four of them.
        let f = m2(&[vec![1, 0]], 2);
        let g = m2(&[vec![1]], 1);
        let count = all_vectors(2, 3)
            .iter()
            .filter(|v| v[0] == v[2])
            .count();
        assert_eq!(count, 4);
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.dim(), 2);
        assert_eq!(pb.ambient_dim, 3);
    }

    #[test]
    fn pushout_examples() {
        let id = FpMatrix::identity(1, 2);
        assert_eq!(pushout(&id, &id).unwrap().dim(), 1);

        let f = FpMatrix::zeros(2, 0, 2);
        let g = FpMatrix::zeros(3, 0, 2);
        assert_eq!(pushout(&f, &g).unwrap().dim(), 5);

        let zero = FpMatrix::zeros(1, 1, 2);
        let po = pushout(&id, &zero).unwrap();
        assert_eq!(po.dim(), 1);
        assert!(po.quotient_map.mul(&po.kernel_basis).unwrap().is_zero());
    }

    #[test]
    fn pushout_identifies_images() {
        let f = FpMatrix::from_rows(3, 1, &[vec![1], vec![2]]).unwrap();
        let g = FpMatrix::from_rows(3, 1, &[vec![1]]).unwrap();
        let po = pushout(&f, &g).unwrap();
        let left = po.injection("left").unwrap().mul(&f).unwrap();
        let right = po.injection("right").unwrap().mul(&g).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let a = FpMatrix::identity(2, 2);
        let b = FpMatrix::identity(3, 2);
        assert!(matches!(pullback(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(pushout(&a, &b), Err(Error::DimensionMismatch(_))));
        let c = FpMatrix::identity(2, 3);
        assert!(matches!(pullback(&a, &c), Err(Error::PrimeMismatch { .. })));
        assert!(matches!(
            direct_sum(2, &[a, c]),
            Err(Error::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let one = FpMatrix::identity(1, 2);
        assert_eq!(
            direct_sum(2, &[one.clone(), one]).unwrap(),
            FpMatrix::identity(2, 2)
        );
        let empty = direct_sum(2, &[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));

        let tall = m2(&[vec![1], vec![1]], 1);
        let wide = m2(&[vec![1, 1]], 2);
        let s = direct_sum(2, &[tall, wide]).unwrap();
        assert_eq!(
            s.to_rows(),
            vec![vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 1]]
        );
    }

    #[test]
    fn inverses_mod_p() {
        for p in [2u32, 3, 5, 7, 11, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn outputs_are_deterministic() {
        let m = FpMatrix::from_rows(5, 3, &[vec![1, 2, 3], vec![2, 4, 1], vec![0, 0, 4]]).unwrap();
        assert_eq!(kernel_basis(&m), kernel_basis(&m.clone()));
        assert_eq!(image_basis(&m), image_basis(&m.clone()));
    }
}
