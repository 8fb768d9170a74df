//! Linear maps, morphism checks, dual maps and exhaustive isomorphism search.

use std::fmt;

use crate::algebra::TernaryAlgebra;
use crate::coalgebra::TernaryCoalgebra;
use crate::error::{dim_mismatch, Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::report::{sweep, Relation, VerificationReport, Witness};
use crate::tensor::{DenseTensor4, Vector};

/// Default bound on the number of candidate maps `iso_search` will scan.
pub const ISO_SEARCH_GUARD: u128 = 10_000_000;

/// A linear map `K^source -> K^target` stored as a `target × source` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<LinearMap> {
        if entries.len() != rows * cols {
            return Err(dim_mismatch(format!("{} entries", rows * cols), entries.len()));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(LinearMap {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> LinearMap {
        LinearMap {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> LinearMap {
        let mut m = LinearMap::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows.
    pub fn from_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<LinearMap> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(dim_mismatch(format!("rows of length {cols}"), "ragged rows"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        LinearMap::new(field, rows.len(), cols, entries)
    }

    /// The map sending `e_c` to `columns[c]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> LinearMap {
        let mut m = LinearMap::zero(field, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            for r in 0..rows {
                m.entries[r * columns.len() + c] = v.get(r).clone();
            }
        }
        m
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(field: FieldSpec, perm: &[usize]) -> LinearMap {
        let n = perm.len();
        let mut m = LinearMap::zero(field, n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.entries[p * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Target dimension.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Source dimension.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: vec![r, c],
                dims: vec![self.rows, self.cols],
            });
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: v.field(),
            });
        }
        self.entries[r * self.cols + c] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, c: usize) -> Vector {
        let col = (0..self.rows).map(|r| self.get(r, c).clone()).collect();
        Vector::from_entries(self.field, col).expect("same field")
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        v.check(self.field, self.cols)?;
        let mut out = Vector::zeros(self.field, self.rows);
        for (c, x) in v.support() {
            for r in 0..self.rows {
                out.entry_mut(r).add_product(self.get(r, c), x);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(dim_mismatch(self.cols, other.rows));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let mut out = LinearMap::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.entries[r * other.cols + c].add_product(a, other.get(k, c));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Exact determinant: fraction-free (Bareiss) elimination over the
    /// rationals, ordinary elimination over `F_p`.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(dim_mismatch(format!("square matrix, {} rows", self.rows), self.cols));
        }
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(f.one());
        }
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut sign_flip = false;
        match f {
            FieldSpec::Rational => {
                let mut prev = f.one();
                for k in 0..n - 1 {
                    let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                        return Ok(f.zero());
                    };
                    if p != k {
                        m.swap(p, k);
                        sign_flip = !sign_flip;
                    }
                    for i in k + 1..n {
                        for j in k + 1..n {
                            let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                            m[i][j] = num.checked_div(&prev)?;
                        }
                    }
                    prev = m[k][k].clone();
                }
                let det = m[n - 1][n - 1].clone();
                Ok(if sign_flip { -det } else { det })
            }
            FieldSpec::Prime(_) => {
                let mut det = f.one();
                for k in 0..n {
                    let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                        return Ok(f.zero());
                    };
                    if p != k {
                        m.swap(p, k);
                        sign_flip = !sign_flip;
                    }
                    det = &det * &m[k][k];
                    let inv = m[k][k].inverse()?;
                    for i in k + 1..n {
                        let factor = &m[i][k] * &inv;
                        if factor.is_zero() {
                            continue;
                        }
                        for j in k..n {
                            let sub = &factor * &m[k][j];
                            m[i][j] = &m[i][j] - &sub;
                        }
                    }
                }
                Ok(if sign_flip { -det } else { det })
            }
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.determinant().is_ok_and(|d| !d.is_zero())
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<LinearMap> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let f = self.field;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row: Vec<Scalar> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.extend((0..n).map(|c| if c == r { f.one() } else { f.zero() }));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::NotInvertible)?;
            a.swap(p, k);
            let inv = a[k][k].inverse()?;
            for x in a[k].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].clone();
                for j in 0..2 * n {
                    let sub = &factor * &a[k][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
        }
        let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        LinearMap::new(f, n, n, entries)
    }
}

impl fmt::Display for LinearMap {
    /// Rows as `[a, b; c, d]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// The dual map `f*` with `<f*(ξ), v> = <ξ, f(v)>`, i.e. the transpose.
pub fn dual_map(f: &LinearMap) -> LinearMap {
    f.transpose()
}

fn check_shape(f: &LinearMap, field1: FieldSpec, n1: usize, field2: FieldSpec, n2: usize) -> Result<()> {
    for field in [field1, field2] {
        if field != f.field() {
            return Err(Error::FieldMismatch {
                left: f.field(),
                right: field,
            });
        }
    }
    if f.cols() != n1 || f.rows() != n2 {
        return Err(dim_mismatch(format!("{n2}x{n1} map"), format!("{}x{}", f.rows(), f.cols())));
    }
    Ok(())
}

/// First basis triple where `f(μ1(e_i,e_j,e_k)) ≠ μ2(f e_i, f e_j, f e_k)`.
fn algebra_morphism_failure(f: &LinearMap, a1: &TernaryAlgebra, a2: &TernaryAlgebra, idx: &[usize]) -> Option<Witness> {
    let (i, j, k) = (idx[0], idx[1], idx[2]);
    let lhs = f.apply(&a1.basis_product(i, j, k)).expect("shape checked");
    let rhs = a2.evaluate(&f.column(i), &f.column(j), &f.column(k)).expect("shape checked");
    (lhs != rhs).then(|| {
        let l = (0..lhs.dim()).find(|&l| lhs.get(l) != rhs.get(l)).unwrap_or(0);
        Witness::new("algebra morphism", vec![i, j, k, l], Relation::Equal)
            .term("f(mu1)", &lhs)
            .term("mu2(f,f,f)", &rhs)
    })
}

/// Checks `f μ1(x, y, z) = μ2(f x, f y, f z)` on all basis triples.
pub fn is_algebra_morphism(f: &LinearMap, a1: &TernaryAlgebra, a2: &TernaryAlgebra) -> Result<VerificationReport> {
    check_shape(f, a1.field(), a1.dim(), a2.field(), a2.dim())?;
    let out = sweep(&[a1.dim(); 3], |idx| algebra_morphism_failure(f, a1, a2, idx));
    Ok(VerificationReport::from_outcome("algebra morphism", out))
}

/// Checks `(f⊗f⊗f) Δ1(e) = Δ2(f e)` on all basis vectors.
pub fn is_coalgebra_morphism(f: &LinearMap, c1: &TernaryCoalgebra, c2: &TernaryCoalgebra) -> Result<VerificationReport> {
    check_shape(f, c1.field(), c1.dim(), c2.field(), c2.dim())?;
    let n2 = c2.dim();
    let out = sweep(&[c1.dim()], |idx| {
        let l = idx[0];
        let pushed = push_forward(f, &c1.coproduct_of_basis(l));
        let direct = c2.apply(&f.column(l)).expect("shape checked");
        if pushed == direct {
            return None;
        }
        let at = crate::tensor::multi_indices(&[n2; 3])
            .find(|t| pushed.get(t).ok() != direct.get(t).ok())
            .unwrap_or_default();
        let mut index = vec![l];
        index.extend(at);
        Some(
            Witness::new("coalgebra morphism", index, Relation::Equal)
                .term("(f⊗f⊗f)Δ1", &pushed)
                .term("Δ2(f)", &direct),
        )
    });
    Ok(VerificationReport::from_outcome("coalgebra morphism", out))
}

/// `(f⊗f⊗f) T` for a rank-3 tensor `T`.
pub(crate) fn push_forward(f: &LinearMap, t: &crate::tensor::Tensor) -> crate::tensor::Tensor {
    let m = f.rows();
    let mut out = crate::tensor::Tensor::zeros(f.field(), &[m; 3]);
    for (idx, w) in t.nonzeros() {
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        for r in 0..m {
            let fr = f.get(r, a);
            if fr.is_zero() {
                continue;
            }
            let wr = w * fr;
            for s in 0..m {
                let fs = f.get(s, b);
                if fs.is_zero() {
                    continue;
                }
                let wrs = &wr * fs;
                for t in 0..m {
                    out.get_mut(&[r, s, t]).add_product(&wrs, f.get(t, c));
                }
            }
        }
    }
    out
}

/// The product `μ'(x,y,z) = g μ(g⁻¹x, g⁻¹y, g⁻¹z)`, making `g` an
/// isomorphism from `A` onto the result.
pub fn transport_algebra(a: &TernaryAlgebra, g: &LinearMap) -> Result<TernaryAlgebra> {
    check_shape(g, a.field(), a.dim(), a.field(), a.dim())?;
    let h = g.inverse()?;
    let n = a.dim();
    let f = a.field();
    let mut c = DenseTensor4::zeros(f, [n; 4]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = a.evaluate(&h.column(i), &h.column(j), &h.column(k))?;
                let w = g.apply(&v)?;
                for l in 0..n {
                    c.set([i, j, k, l], w.get(l).clone())?;
                }
            }
        }
    }
    TernaryAlgebra::new(c)
}

/// Number of candidate maps for an `n`-dimensional search over `F_p`.
pub fn iso_search_space(p: u32, n: usize) -> u128 {
    (p as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX)
}

/// Scans all `n × n` matrices over `F_p` in lexicographic order of their
/// row-major entry tuple and returns the first invertible algebra morphism.
pub fn iso_search(a1: &TernaryAlgebra, a2: &TernaryAlgebra) -> Result<Option<LinearMap>> {
    iso_search_with_guard(a1, a2, ISO_SEARCH_GUARD)
}

pub fn iso_search_with_guard(a1: &TernaryAlgebra, a2: &TernaryAlgebra, guard: u128) -> Result<Option<LinearMap>> {
    let field = a1.field();
    if field != a2.field() {
        return Err(Error::FieldMismatch {
            left: field,
            right: a2.field(),
        });
    }
    let FieldSpec::Prime(p) = field else {
        return Err(Error::UnsupportedVariant("isomorphism search over Q".into()));
    };
    let n = a1.dim();
    if a2.dim() != n {
        return Err(dim_mismatch(n, a2.dim()));
    }
    let size = iso_search_space(p, n);
    if size > guard {
        return Err(Error::SearchSpaceTooLarge {
            size: if size == u128::MAX { format!("more than {}", u128::MAX) } else { size.to_string() },
            guard,
        });
    }
    let build = |idx: &[usize]| {
        let entries = idx.iter().map(|&v| field.element(v as u64)).collect();
        LinearMap::new(field, n, n, entries).expect("sized")
    };
    let out = sweep(&vec![p as usize; n * n], |idx| {
        let f = build(idx);
        let hit = f.is_invertible()
            && crate::tensor::multi_indices(&[n; 3]).all(|t| algebra_morphism_failure(&f, a1, a2, &t).is_none());
        hit.then(|| Witness::new("isomorphism", idx.to_vec(), Relation::Equal))
    });
    Ok(out.witness.map(|w| build(&w.index)))
}
