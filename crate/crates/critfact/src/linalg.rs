//! Exact linear algebra: reduced echelon kernels over a field and over the
//! prime subfield, subspace intersection, and integer Hermite normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};

/// A subspace of `F^s` given by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldCtx,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
}

/// Rows of a matrix over a field.
pub type Matrix = Vec<Vec<Elem>>;

/// Reduces `rows` in place to reduced row echelon form; returns pivot columns.
pub fn rref(f: &FieldCtx, rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    if f.is_rationals() {
        return rref_bareiss(f, rows, ncols);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !f.is_zero(&rows[k][c])) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(&rows[r][c]).unwrap();
        for v in rows[r].iter_mut().skip(c) {
            *v = f.mul(v, &inv);
        }
        let piv = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || f.is_zero(&row[c]) {
                continue;
            }
            let m = row[c].clone();
            for j in c..ncols {
                if !f.is_zero(&piv[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&m, &piv[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Fraction-free forward elimination over `Z` followed by rational back substitution.
fn rref_bareiss(f: &FieldCtx, rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let qs: Vec<BigRational> = row.iter().map(|e| f.to_rational(e).unwrap()).collect();
            let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        for k in r + 1..m.len() {
            let a = m[r][c].clone();
            let b = m[k][c].clone();
            for j in 0..ncols {
                let v = (&a * &m[k][j] - &b * &m[r][j]) / &prev;
                m[k][j] = v;
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let mut q: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (i, &c) in pivots.iter().enumerate().rev() {
        let p = q[i][c].clone();
        for v in q[i].iter_mut() {
            *v = &*v / &p;
        }
        for k in 0..i {
            let mlt = q[k][c].clone();
            if mlt.is_zero() {
                continue;
            }
            for j in c..ncols {
                let t = &mlt * &q[i][j];
                q[k][j] = &q[k][j] - t;
            }
        }
    }
    *rows = q
        .into_iter()
        .map(|row| row.into_iter().map(|v| f.from_rational(&v).unwrap()).collect())
        .collect();
    pivots
}

/// Reduced echelon basis of the right kernel of `m` (`ncols` unknowns).
pub fn kernel_reb(f: &FieldCtx, m: &Matrix, ncols: usize) -> SubspaceBasis {
    let mut rows: Matrix = m.iter().filter(|r| r.iter().any(|e| !f.is_zero(e))).cloned().collect();
    let pivots = rref(f, &mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&rows[i][free]);
        }
        basis.push(v);
    }
    SubspaceBasis::from_rows(f, ncols, basis)
}

/// Kernel over the prime field of a matrix with entries in an extension.
pub fn kernel_over_prime_field(f: &FieldCtx, m: &Matrix, ncols: usize) -> Result<SubspaceBasis> {
    if f.characteristic() == 0 {
        return Err(Error::NotApplicable("prime-field kernel in characteristic 0".into()));
    }
    let fp = f.prime_field();
    let k = f.prime_degree();
    let mut rows: Matrix = Vec::with_capacity(m.len() * k);
    for row in m {
        let coords: Vec<Vec<u64>> = row.iter().map(|e| f.prime_coords(e)).collect::<Result<_>>()?;
        for t in 0..k {
            rows.push(coords.iter().map(|c| Elem::P(c[t])).collect());
        }
    }
    Ok(kernel_reb(&fp, &rows, ncols))
}

impl SubspaceBasis {
    /// The row space of `rows`, echelonized.
    pub fn from_rows(f: &FieldCtx, ambient: usize, rows: Matrix) -> Self {
        let mut rows: Matrix = rows.into_iter().filter(|r| r.iter().any(|e| !f.is_zero(e))).collect();
        rref(f, &mut rows, ambient);
        SubspaceBasis {
            field: f.clone(),
            ambient,
            rows,
        }
    }

    pub fn full(f: &FieldCtx, s: usize) -> Self {
        let rows = (0..s)
            .map(|i| (0..s).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        SubspaceBasis {
            field: f.clone(),
            ambient: s,
            rows,
        }
    }

    pub fn zero(f: &FieldCtx, s: usize) -> Self {
        SubspaceBasis {
            field: f.clone(),
            ambient: s,
            rows: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn complement(&self) -> SubspaceBasis {
        kernel_reb(&self.field, &self.rows, self.ambient)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        let mut r = rows;
        rref(&self.field, &mut r, self.ambient);
        r.len() == self.rows.len()
    }

    /// `A ∩ B` via the stacked constraints of both complements.
    pub fn intersect(&self, o: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch(self.ambient, o.ambient));
        }
        if self.field != o.field {
            return Err(Error::ContextMismatch);
        }
        let mut cons = self.complement().rows;
        cons.extend(o.complement().rows);
        Ok(kernel_reb(&self.field, &cons, self.ambient))
    }

    /// Coordinates `i` with `v_i = 0` for every `v` in the subspace.
    pub fn null_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&i| self.rows.iter().all(|r| self.field.is_zero(&r[i])))
            .collect()
    }

    /// Image under the projection onto the coordinates `idx`.
    pub fn project(&self, idx: &[usize]) -> SubspaceBasis {
        let rows = self
            .rows
            .iter()
            .map(|r| idx.iter().map(|&i| r[i].clone()).collect())
            .collect();
        SubspaceBasis::from_rows(&self.field, idx.len(), rows)
    }

    /// When the basis vectors have entries in `{0, 1}` with disjoint supports
    /// covering every coordinate, returns those supports.
    pub fn partition(&self) -> Option<Vec<Vec<usize>>> {
        let f = &self.field;
        let mut seen = vec![false; self.ambient];
        let mut out = Vec::new();
        for r in &self.rows {
            let mut part = Vec::new();
            for (i, e) in r.iter().enumerate() {
                if f.is_zero(e) {
                    continue;
                }
                if !f.is_one(e) || seen[i] {
                    return None;
                }
                seen[i] = true;
                part.push(i);
            }
            out.push(part);
        }
        if seen.iter().all(|&b| b) {
            Some(out)
        } else {
            None
        }
    }

    /// Same subspace with coordinates mapped into a larger field.
    pub fn embed(&self, to: &FieldCtx) -> SubspaceBasis {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| to.embed_from(&self.field, e)).collect())
            .collect();
        SubspaceBasis::from_rows(to, self.ambient, rows)
    }
}

/// Row Hermite normal form over `Z`: positive pivots moving strictly right,
/// entries above a pivot in `[0, pivot)`, zero rows last.
pub fn hnf_rows(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pr = 0;
    for c in 0..ncols {
        if pr == nrows {
            break;
        }
        loop {
            let best = (pr..nrows)
                .filter(|&k| !a[k][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(k) = best else { break };
            a.swap(pr, k);
            let mut done = true;
            for k in pr + 1..nrows {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = a[k][c].div_floor(&a[pr][c]);
                let piv = a[pr].clone();
                for j in 0..ncols {
                    a[k][j] -= &q * &piv[j];
                }
                if !a[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pr][c].is_zero() {
            continue;
        }
        if a[pr][c].is_negative() {
            for v in a[pr].iter_mut() {
                *v = -&*v;
            }
        }
        let piv = a[pr].clone();
        for k in 0..pr {
            let q = a[k][c].div_floor(&piv[c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..ncols {
                a[k][j] -= &q * &piv[j];
            }
        }
        pr += 1;
    }
    a
}

/// A `Z`-basis of `span_Q(rows) ∩ Z^s`.
pub fn saturated_lattice(rows: &[Vec<BigRational>], s: usize) -> Vec<Vec<BigInt>> {
    let q = FieldCtx::rationals();
    let mat: Matrix = rows.iter().map(|r| r.iter().map(|v| Elem::Q(v.clone())).collect()).collect();
    let perp = kernel_reb(&q, &mat, s);
    let cons: Vec<Vec<BigInt>> = perp
        .rows()
        .iter()
        .map(|r| {
            let qs: Vec<BigRational> = r.iter().map(|e| q.to_rational(e).unwrap()).collect();
            let l = qs.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            qs.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let m = cons.len();
    let aug: Vec<Vec<BigInt>> = (0..s)
        .map(|i| {
            let mut row: Vec<BigInt> = cons.iter().map(|c| c[i].clone()).collect();
            row.extend((0..s).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = hnf_rows(&aug);
    h.into_iter()
        .filter(|r| r[..m].iter().all(|v| v.is_zero()) && r[m..].iter().any(|v| !v.is_zero()))
        .map(|r| r[m..].to_vec())
        .collect()
}

/// Characteristic polynomial `det(y·I - M)` over a commutative ring by
/// Berkowitz's division-free algorithm; coefficients lowest degree first.
pub fn charpoly_berkowitz<T: Clone>(
    m: &[Vec<T>],
    zero: &T,
    one: &T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
) -> Vec<T> {
    let n = m.len();
    // highest degree first
    let mut p = vec![one.clone()];
    for k in 0..n {
        let mut t = Vec::with_capacity(k + 2);
        t.push(one.clone());
        t.push(neg(&m[k][k]));
        let mut v: Vec<T> = (0..k).map(|i| m[i][k].clone()).collect();
        for _ in 0..k {
            let mut rc = zero.clone();
            for (i, vi) in v.iter().enumerate() {
                rc = add(&rc, &mul(&m[k][i], vi));
            }
            t.push(neg(&rc));
            v = (0..k)
                .map(|i| {
                    let mut s = zero.clone();
                    for (j, vj) in v.iter().enumerate() {
                        s = add(&s, &mul(&m[i][j], vj));
                    }
                    s
                })
                .collect();
        }
        let q: Vec<T> = (0..k + 2)
            .map(|i| {
                let mut s = zero.clone();
                for j in 0..=i.min(k) {
                    s = add(&s, &mul(&t[i - j], &p[j]));
                }
                s
            })
            .collect();
        p = q;
    }
    p.reverse();
    p
}

/// Solves `A·X = B` for square invertible `A` given by its columns; returns
/// the solution column for each target, or `None` when `A` is singular.
pub fn solve_columns(f: &FieldCtx, cols: &[Vec<Elem>], targets: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = cols.len();
    let width = n + targets.len();
    let mut rows: Matrix = (0..n)
        .map(|r| cols.iter().chain(targets.iter()).map(|c| c[r].clone()).collect())
        .collect();
    let pivots = rref(f, &mut rows, width);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(
        (0..targets.len())
            .map(|t| (0..n).map(|r| rows[r][n + t].clone()).collect())
            .collect(),
    )
}
