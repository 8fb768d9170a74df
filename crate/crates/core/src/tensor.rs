//! Dense vectors and tensors over an exact field, stored in row-major
//! (lexicographic index) order.

use std::fmt;

use crate::error::{dim_mismatch, Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A vector in a space with a fixed basis `e_0, …, e_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(field: FieldSpec, dim: usize) -> Vector {
        Vector {
            field,
            entries: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(field, dim);
        v.entries[i] = field.one();
        v
    }

    pub fn from_entries(field: FieldSpec, entries: Vec<Scalar>) -> Result<Vector> {
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Vector { field, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, entries: &[i64]) -> Vector {
        Vector {
            field,
            entries: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Indices with nonzero coefficient, paired with the coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().enumerate().filter(|(_, s)| !s.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        Vector {
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Scalar, other: &Vector) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_product(s, b);
        }
    }

    pub(crate) fn entry_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.entries[i]
    }

    pub(crate) fn check(&self, field: FieldSpec, dim: usize) -> Result<()> {
        if self.field != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: self.field,
            });
        }
        if self.dim() != dim {
            return Err(dim_mismatch(dim, self.dim()));
        }
        Ok(())
    }
}

impl fmt::Display for Vector {
    /// Writes the vector as a combination of basis elements, e.g. `e0 + 2e1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mag.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{mag}e{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn row_major_offset(dims: &[usize], idx: &[usize]) -> Option<usize> {
    if dims.len() != idx.len() {
        return None;
    }
    let mut off = 0;
    for (&d, &i) in dims.iter().zip(idx) {
        if i >= d {
            return None;
        }
        off = off * d + i;
    }
    Some(off)
}

/// Iterates all multi-indices of `dims` in lexicographic order.
pub fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |flat| unflatten(dims, flat))
}

pub(crate) fn unflatten(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for (slot, &d) in idx.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    idx
}

/// Rank-4 dense tensor; houses both product constants `c^l_{ijk}` and
/// coproduct constants `a^{rst}_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseTensor4 {
    dims: [usize; 4],
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl DenseTensor4 {
    pub fn zeros(field: FieldSpec, dims: [usize; 4]) -> DenseTensor4 {
        DenseTensor4 {
            dims,
            field,
            entries: vec![field.zero(); dims.iter().product()],
        }
    }

    pub fn from_entries(field: FieldSpec, dims: [usize; 4], entries: Vec<Scalar>) -> Result<DenseTensor4> {
        let n: usize = dims.iter().product();
        if entries.len() != n {
            return Err(dim_mismatch(format!("{n} entries"), entries.len()));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(DenseTensor4 { dims, field, entries })
    }

    /// Densifies sparse `(index, value)` records; unlisted entries are zero.
    pub fn from_sparse<'a>(
        field: FieldSpec,
        dims: [usize; 4],
        records: impl IntoIterator<Item = ([usize; 4], &'a Scalar)>,
    ) -> Result<DenseTensor4> {
        let mut t = DenseTensor4::zeros(field, dims);
        for (idx, v) in records {
            t.set(idx, v.clone())?;
        }
        Ok(t)
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    fn offset(&self, idx: [usize; 4]) -> Result<usize> {
        row_major_offset(&self.dims, &idx).ok_or_else(|| Error::IndexOutOfRange {
            index: idx.to_vec(),
            dims: self.dims.to_vec(),
        })
    }

    pub fn get(&self, idx: [usize; 4]) -> Result<&Scalar> {
        Ok(&self.entries[self.offset(idx)?])
    }

    pub fn set(&mut self, idx: [usize; 4], value: Scalar) -> Result<()> {
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: value.field(),
            });
        }
        let off = self.offset(idx)?;
        self.entries[off] = value;
        Ok(())
    }

    /// Unchecked-by-`Result` access for inner loops; panics when out of range.
    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let [_, d1, d2, d3] = self.dims;
        debug_assert!(i < self.dims[0] && j < d1 && k < d2 && l < d3);
        &self.entries[((i * d1 + j) * d2 + k) * d3 + l]
    }

    /// The contiguous run of entries along the last axis.
    #[inline]
    pub fn fiber(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let [_, d1, d2, d3] = self.dims;
        let start = ((i * d1 + j) * d2 + k) * d3;
        &self.entries[start..start + d3]
    }

    /// Reorders axes: entry `idx` of the result is entry
    /// `(idx[inv[0]], …)` of `self`, where axis `a` of the result is axis
    /// `perm[a]` of the source.
    pub fn permute_axes(&self, perm: [usize; 4]) -> DenseTensor4 {
        let dims = perm.map(|a| self.dims[a]);
        let mut out = DenseTensor4::zeros(self.field, dims);
        for (flat, slot) in out.entries.iter_mut().enumerate() {
            let idx = unflatten(&dims, flat);
            let mut src = [0; 4];
            for a in 0..4 {
                src[perm[a]] = idx[a];
            }
            *slot = self.at(src[0], src[1], src[2], src[3]).clone();
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> DenseTensor4 {
        DenseTensor4 {
            dims: self.dims,
            field: self.field,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn negated(&self) -> DenseTensor4 {
        self.map(|s| -s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzeros(&self) -> impl Iterator<Item = ([usize; 4], &Scalar)> {
        let dims = self.dims;
        self.entries.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(move |(flat, s)| {
            let v = unflatten(&dims, flat);
            ([v[0], v[1], v[2], v[3]], s)
        })
    }
}

/// Dense tensor of arbitrary rank; used for elements of `A⊗A⊗A` and the
/// five-fold tensor powers the coproduct composites live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    dims: Vec<usize>,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(field: FieldSpec, dims: &[usize]) -> Tensor {
        Tensor {
            dims: dims.to_vec(),
            field,
            entries: vec![field.zero(); dims.iter().product()],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, idx: &[usize]) -> Result<&Scalar> {
        let off = row_major_offset(&self.dims, idx).ok_or_else(|| Error::IndexOutOfRange {
            index: idx.to_vec(),
            dims: self.dims.clone(),
        })?;
        Ok(&self.entries[off])
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut Scalar {
        let off = row_major_offset(&self.dims, idx).expect("tensor index out of range");
        &mut self.entries[off]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(flat, s)| (unflatten(&self.dims, flat), s))
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        assert_eq!(self.dims, other.dims, "tensor shapes differ");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = &*a + b;
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dims, other.dims, "tensor shapes differ");
        Tensor {
            dims: self.dims.clone(),
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Swaps two axes.
    pub fn swap_axes(&self, a: usize, b: usize) -> Tensor {
        let mut dims = self.dims.clone();
        dims.swap(a, b);
        let mut out = Tensor::zeros(self.field, &dims);
        for (idx, s) in self.nonzeros() {
            let mut to = idx;
            to.swap(a, b);
            *out.get_mut(&to) = s.clone();
        }
        out
    }

    /// Simple tensor `v_0 ⊗ v_1 ⊗ …`.
    pub fn outer(vectors: &[&Vector]) -> Tensor {
        let field = vectors.first().map(|v| v.field()).unwrap_or(FieldSpec::Rational);
        let dims: Vec<usize> = vectors.iter().map(|v| v.dim()).collect();
        let mut out = Tensor::zeros(field, &dims);
        for (flat, slot) in out.entries.iter_mut().enumerate() {
            let idx = unflatten(&dims, flat);
            let mut acc = field.one();
            for (v, &i) in vectors.iter().zip(&idx) {
                acc = &acc * v.get(i);
                if acc.is_zero() {
                    break;
                }
            }
            *slot = acc;
        }
        out
    }
}

impl fmt::Display for Tensor {
    /// Sum of basis tensors, e.g. `e0⊗e1⊗e1 + 2e1⊗e1⊗e1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.nonzeros() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            let names: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
            write!(f, "{}", names.join("⊗"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
