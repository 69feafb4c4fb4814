//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Matrices act on column vectors: column `j` of a map's matrix is the image
//! of the `j`-th standard basis vector. Subspaces are stored by the reduced
//! row-echelon form of a basis, which makes set equality structural equality.

use std::fmt;

use crate::arith::{FieldScalar, FieldSpec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<FieldScalar>,
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<FieldScalar>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::field_mismatch(field, bad.field()));
        }
        Ok(Vector { field, entries })
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        Vector {
            field,
            entries: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn zeros(field: FieldSpec, n: usize) -> Self {
        Vector {
            field,
            entries: vec![field.zero(); n],
        }
    }

    pub fn unit(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut v = Vector::zeros(field, n);
        v.entries[i] = field.one();
        v
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldScalar::is_zero)
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::field_mismatch(self.field, other.field));
        }
        if self.len() != other.len() {
            return Err(Error::dims(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<Vector> {
        if c.field() != self.field {
            return Err(Error::field_mismatch(self.field, c.field()));
        }
        Ok(Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        })
    }

    /// `Σ coeffs[i] · vectors[i]` in `field^n`.
    pub fn combination(
        field: FieldSpec,
        n: usize,
        coeffs: &[FieldScalar],
        vectors: &[Vector],
    ) -> Result<Vector> {
        if coeffs.len() != vectors.len() {
            return Err(Error::dims(vectors.len(), coeffs.len()));
        }
        let mut acc = Vector::zeros(field, n);
        for (c, v) in coeffs.iter().zip(vectors) {
            acc = acc.add(&v.scale(c)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

/// Output of [`rref`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<FieldScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(rows * cols, data.len()));
        }
        if let Some(bad) = data.iter().find(|e| e.field() != field) {
            return Err(Error::field_mismatch(field, bad.field()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dims(cols, bad.len()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Stacks `rows` (each of length `cols`) into a matrix.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.field != field {
                return Err(Error::field_mismatch(field, r.field));
            }
            if r.len() != cols {
                return Err(Error::dims(cols, r.len()));
            }
            data.extend(r.entries.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are `cols` (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vector]) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            field: self.field,
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if x.field != self.field {
            return Err(Error::field_mismatch(self.field, x.field));
        }
        if x.len() != self.cols {
            return Err(Error::dims(self.cols, x.len()));
        }
        let entries = (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, xc) in x.entries.iter().enumerate() {
                    if !xc.is_zero() {
                        acc = &acc + &(self.get(r, c) * xc);
                    }
                }
                acc
            })
            .collect();
        Ok(Vector {
            field: self.field,
            entries,
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if rhs.field != self.field {
            return Err(Error::field_mismatch(self.field, rhs.field));
        }
        if rhs.rows != self.cols {
            return Err(Error::dims(self.cols, rhs.rows));
        }
        let cols: Vec<Vector> = (0..rhs.cols)
            .map(|c| self.mul_vec(&rhs.column(c)))
            .collect::<Result<_>>()?;
        Matrix::from_columns(self.field, self.rows, &cols)
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse of a square full-rank matrix, by reducing `[M | I]`.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            aug.extend(self.data[r * n..(r + 1) * n].iter().cloned());
            aug.extend((0..n).map(|c| {
                if c == r {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            }));
        }
        let red = rref(&Matrix {
            field: self.field,
            rows: n,
            cols: 2 * n,
            data: aug,
        });
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            data.extend((n..2 * n).map(|c| red.matrix.get(r, c).clone()));
        }
        Some(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vector> {
        let red = rref(self);
        let mut pivot_row = vec![None; self.cols];
        for (i, &p) in red.pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| pivot_row[c].is_none())
            .map(|free| {
                let mut v = Vector::unit(self.field, self.cols, free);
                for (i, &p) in red.pivots.iter().enumerate() {
                    v.entries[p] = -red.matrix.get(i, free);
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    /// One line per row, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination. Zero rows are kept at the bottom of the result.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<FieldScalar>> = (0..rows)
        .map(|r| m.data[r * cols..(r + 1) * cols].to_vec())
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows {
            break;
        }
        let Some(src) = (lead..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(lead, src);
        let inv = a[lead][c].inv().expect("pivot is nonzero");
        for x in a[lead].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[lead].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == lead || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    Rref {
        matrix: Matrix {
            field: m.field,
            rows,
            cols,
            data: a.into_iter().flatten().collect(),
        },
        rank: pivots.len(),
        pivots,
    }
}

/// A subspace of `field^ambient`, held as the reduced row-echelon form of a
/// basis with zero rows removed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_rref(rref(&m)))
    }

    fn from_rref(red: Rref) -> Self {
        let Rref {
            matrix,
            rank,
            pivots,
        } = red;
        let cols = matrix.cols;
        let mut data = matrix.data;
        data.truncate(rank * cols);
        Subspace {
            ambient: cols,
            basis: Matrix {
                field: matrix.field,
                rows: rank,
                cols,
                data,
            },
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.field != self.field() {
            return Err(Error::field_mismatch(self.field(), x.field));
        }
        if x.len() != self.ambient {
            return Err(Error::dims(self.ambient, x.len()));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if other.field() != self.field() {
            return Err(Error::field_mismatch(self.field(), other.field()));
        }
        if other.ambient != self.ambient {
            return Err(Error::dims(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Residue of `x` after eliminating against the echelon basis.
    fn reduce(&self, x: &Vector) -> Vector {
        let mut r = x.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r.entries[p].is_zero() {
                continue;
            }
            let c = r.entries[p].clone();
            for (j, e) in r.entries.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *e = &*e - &(&c * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        self.check_vector(x)?;
        Ok(self.reduce(x).is_zero())
    }

    pub fn is_subset(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self
            .basis
            .row_vectors()
            .iter()
            .all(|r| other.reduce(r).is_zero()))
    }

    /// Coordinates of `x` relative to the canonical basis rows, if `x` lies
    /// in the subspace. In echelon form they are `x`'s pivot entries.
    pub fn coordinates(&self, x: &Vector) -> Result<Option<Vector>> {
        if !self.contains(x)? {
            return Ok(None);
        }
        Ok(Some(Vector {
            field: self.field(),
            entries: self.pivots.iter().map(|&p| x.entries[p].clone()).collect(),
        }))
    }

    /// Inverse of [`Subspace::coordinates`]: `Σ c_i · basis_i`.
    pub fn from_coordinates(&self, c: &Vector) -> Result<Vector> {
        Vector::combination(self.field(), self.ambient, &c.entries, &self.basis_vectors())
    }

    /// `sub` (a subspace of this one) rewritten in this subspace's
    /// coordinates, as a subspace of `field^dim`.
    pub fn relative(&self, sub: &Subspace) -> Result<Subspace> {
        self.check_compatible(sub)?;
        let coords = sub
            .basis_vectors()
            .iter()
            .map(|v| self.coordinates(v)?.ok_or(Error::NotNested))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), self.dim(), &coords)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let field = self.field();
        // other = {x : N x = 0} with N spanning the annihilator of other.
        let annihilator = other.basis.null_space();
        if annihilator.is_empty() {
            return Ok(self.clone());
        }
        let n = Matrix::from_rows(field, self.ambient, &annihilator)?;
        let k = n.mul(&self.basis.transpose())?;
        let coords = k.null_space();
        let vectors = coords
            .iter()
            .map(|c| self.from_coordinates(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, self.ambient, &vectors)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// Image under the linear map with matrix `f`.
    pub fn apply(&self, f: &Matrix) -> Result<Subspace> {
        apply_to_subspace(f, self)
    }

    /// Number of vectors in the subspace over GF(p), if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        self.field()
            .prime()
            .and_then(|p| p.checked_pow(self.dim() as u32))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis_vectors().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({v})")?;
        }
        write!(f, "}} in {}^{}", self.field(), self.ambient)
    }
}

/// Smallest subspace of `field^ambient` containing `vectors`.
pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Result<Subspace> {
    Subspace::span(field, ambient, vectors)
}

/// Vectors completing `inner`'s canonical basis to a basis of `outer`:
/// `outer`'s canonical rows in pivot order, greedily keeping those outside the
/// span built so far.
pub fn extend_basis(inner: &Subspace, outer: &Subspace) -> Result<Vec<Vector>> {
    extend_basis_preferring(inner, outer, &[])
}

/// Like [`extend_basis`], but scans `preferred` (skipping vectors outside
/// `outer`) before falling back to `outer`'s canonical rows.
pub fn extend_basis_preferring(
    inner: &Subspace,
    outer: &Subspace,
    preferred: &[Vector],
) -> Result<Vec<Vector>> {
    if !inner.is_subset(outer)? {
        return Err(Error::NotNested);
    }
    let mut current = inner.clone();
    let mut kept = Vec::new();
    let canonical = outer.basis_vectors();
    for candidate in preferred.iter().chain(&canonical) {
        if current.dim() == outer.dim() {
            break;
        }
        if !outer.contains(candidate)? || current.contains(candidate)? {
            continue;
        }
        current = current.sum(&Subspace::span(
            current.field(),
            current.ambient,
            std::slice::from_ref(candidate),
        )?)?;
        kept.push(candidate.clone());
    }
    debug_assert_eq!(current, *outer);
    Ok(kept)
}

/// Canonical image `f(s)`, a subspace of `field^{f.rows}`.
pub fn apply_to_subspace(f: &Matrix, s: &Subspace) -> Result<Subspace> {
    if f.field != s.field() {
        return Err(Error::field_mismatch(f.field, s.field()));
    }
    if f.cols != s.ambient {
        return Err(Error::dims(f.cols, s.ambient));
    }
    let images = s
        .basis_vectors()
        .iter()
        .map(|v| f.mul_vec(v))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(f.field, f.rows, &images)
}
