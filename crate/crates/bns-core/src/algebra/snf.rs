//! Sparse integer matrices and Smith normal form with transform tracking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::GroupDescriptor;

/// Sparse matrix over Z; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            m[r][c] = v.clone();
        }
        m
    }

    pub fn from_dense(m: &[Vec<BigInt>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut s = SparseIntMatrix::new(rows, cols);
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    s.entries.insert((r, c), v.clone());
                }
            }
        }
        s
    }
}

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for (i, arow) in a.iter().enumerate() {
        for (k, av) in arow.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            debug_assert!(k < inner);
            for (j, bv) in b[k].iter().enumerate() {
                if !bv.is_zero() {
                    out[i][j] += av * bv;
                }
            }
        }
    }
    out
}

/// Smith decomposition U·M·V = S. Transform factors are tracked only on
/// request; absent ones are empty matrices.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
}

pub struct SmithOpts {
    pub want_u: bool,
    pub want_u_inv: bool,
    pub want_v: bool,
}

impl SmithOpts {
    pub fn none() -> Self {
        SmithOpts {
            want_u: false,
            want_u_inv: false,
            want_v: false,
        }
    }
    pub fn all() -> Self {
        SmithOpts {
            want_u: true,
            want_u_inv: true,
            want_v: true,
        }
    }
}

pub fn smith(input: &Mat, opts: &SmithOpts) -> Smith {
    let rows = input.len();
    let cols = input.first().map_or(0, |r| r.len());
    let mut a = input.clone();
    let mut u = if opts.want_u { identity(rows) } else { Vec::new() };
    let mut u_inv = if opts.want_u_inv {
        identity(rows)
    } else {
        Vec::new()
    };
    let mut v = if opts.want_v { identity(cols) } else { Vec::new() };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Pick the smallest-magnitude nonzero entry in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        'clear: loop {
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                row_sub(&mut a, &mut u, &mut u_inv, i, t, &q);
                if !r.is_zero() {
                    swap_rows(&mut a, &mut u, &mut u_inv, t, i);
                    continue 'clear;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                col_sub(&mut a, &mut v, j, t, &q);
                if !r.is_zero() {
                    swap_cols(&mut a, &mut v, t, j);
                    continue 'clear;
                }
            }
            break;
        }

        // Restore divisibility into earlier diagonal entries if broken.
        if t > 0 && !(&a[t][t] % &a[t - 1][t - 1]).is_zero() {
            // Fold a[t][t] into the previous pivot's column and redo it.
            col_add(&mut a, &mut v, t - 1, t);
            t -= 1;
            continue;
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, &mut u, &mut u_inv, t);
        }
        t += 1;
    }

    let rank = t;
    let diag: Vec<BigInt> = (0..n).map(|i| a[i][i].clone()).collect();
    Smith {
        diag,
        rank,
        u,
        u_inv,
        v,
    }
}

fn swap_rows(a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    if !u.is_empty() {
        u.swap(i, j);
    }
    if !u_inv.is_empty() {
        for row in u_inv.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut Mat, v: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    if !v.is_empty() {
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_i -= q * row_t.
fn row_sub(a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (rt, ri) = two_rows(a, t, i);
    for (x, y) in rt.iter().zip(ri.iter_mut()) {
        if !x.is_zero() {
            *y -= q * x;
        }
    }
    if !u.is_empty() {
        let (rt, ri) = two_rows(u, t, i);
        for (x, y) in rt.iter().zip(ri.iter_mut()) {
            if !x.is_zero() {
                *y -= q * x;
            }
        }
    }
    if !u_inv.is_empty() {
        // Right-multiplying by the inverse op adds q times column i to
        // column t.
        for row in u_inv.iter_mut() {
            let add = &row[i] * q;
            row[t] += add;
        }
    }
}

/// col_j -= q * col_t.
fn col_sub(a: &mut Mat, v: &mut Mat, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let sub = &row[t] * q;
        row[j] -= sub;
    }
    if !v.is_empty() {
        for row in v.iter_mut() {
            let sub = &row[t] * q;
            row[j] -= sub;
        }
    }
}

/// col_i += col_j.
fn col_add(a: &mut Mat, v: &mut Mat, i: usize, j: usize) {
    for row in a.iter_mut() {
        let add = row[j].clone();
        row[i] += add;
    }
    if !v.is_empty() {
        for row in v.iter_mut() {
            let add = row[j].clone();
            row[i] += add;
        }
    }
}

fn negate_row(a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize) {
    for x in a[i].iter_mut() {
        *x = -&*x;
    }
    if !u.is_empty() {
        for x in u[i].iter_mut() {
            *x = -&*x;
        }
    }
    if !u_inv.is_empty() {
        for row in u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

/// Split borrows of two distinct rows.
fn two_rows(a: &mut Mat, t: usize, i: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(t, i);
    if t < i {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[t], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(t);
        (&hi[0], &mut lo[i])
    }
}

/// Public SNF on sparse matrices, returning (U, S, V) with U·M·V = S.
pub fn smith_normal_form(
    m: &SparseIntMatrix,
) -> (SparseIntMatrix, SparseIntMatrix, SparseIntMatrix) {
    let dense = m.to_dense();
    let s = smith(
        &dense,
        &SmithOpts {
            want_u: true,
            want_u_inv: false,
            want_v: true,
        },
    );
    let mut sm = SparseIntMatrix::new(m.rows, m.cols);
    for (i, d) in s.diag.iter().enumerate() {
        if !d.is_zero() {
            sm.set(i, i, d.clone());
        }
    }
    debug_assert_eq!(
        SparseIntMatrix::from_dense(&mat_mul(&mat_mul(&s.u, &dense), &s.v)),
        sm,
        "SNF postcondition U*M*V = S failed"
    );
    (
        SparseIntMatrix::from_dense(&s.u),
        sm,
        SparseIntMatrix::from_dense(&s.v),
    )
}

/// Basis of the (saturated) integer kernel of M, as vectors of length
/// `cols`.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.is_empty() || cols == 0 {
        // No constraints: the kernel is everything.
        return (0..cols)
            .map(|j| {
                let mut e = vec![BigInt::zero(); cols];
                e[j] = BigInt::from(1);
                e
            })
            .collect();
    }
    let s = smith(
        m,
        &SmithOpts {
            want_u: false,
            want_u_inv: false,
            want_v: true,
        },
    );
    (s.rank..cols)
        .map(|j| s.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Lattice spanned by the given vectors (as columns), returned as a basis
/// whose Z-span is the *saturation-free* integer span (not saturated).
/// Also returns, for each input vector of `express`, its coordinates in that
/// basis. Panics if an `express` vector lies outside the span.
fn span_basis_and_coords(
    dim: usize,
    gens: &[Vec<BigInt>],
    express: &[Vec<BigInt>],
) -> (usize, Vec<Vec<BigInt>>) {
    // Column matrix of the generators.
    let a: Mat = (0..dim)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    let s = smith(
        &a,
        &SmithOpts {
            want_u: true,
            want_u_inv: false,
            want_v: false,
        },
    );
    let r = s.rank;
    // U·A·V = S means the lattice has basis (U^{-1} s_i e_i); a vector w is
    // in the lattice iff (U w)_i is divisible by s_i and zero past the rank.
    let mut coords = Vec::with_capacity(express.len());
    for w in express {
        let uw: Vec<BigInt> = s
            .u
            .iter()
            .map(|row| row.iter().zip(w).map(|(x, y)| x * y).sum())
            .collect();
        let mut c = Vec::with_capacity(r);
        for i in 0..dim {
            if i < r {
                let (q, rem) = uw[i].div_rem(&s.diag[i]);
                assert!(rem.is_zero(), "vector not in lattice span");
                c.push(q);
            } else {
                assert!(uw[i].is_zero(), "vector not in lattice span");
            }
        }
        coords.push(c);
    }
    (r, coords)
}

/// The quotient span(l1) / span(l2) of lattices in Z^dim; requires
/// span(l2) ⊆ span(l1).
pub fn lattice_quotient(dim: usize, l1: &[Vec<BigInt>], l2: &[Vec<BigInt>]) -> GroupDescriptor {
    let (r, coords) = span_basis_and_coords(dim, l1, l2);
    if r == 0 {
        return GroupDescriptor::zero();
    }
    // Coordinates of l2 in a basis of l1 form an r × |l2| matrix; its
    // invariant factors present the quotient.
    let x: Mat = (0..r)
        .map(|i| coords.iter().map(|c| c[i].clone()).collect())
        .collect();
    let s = smith(&x, &SmithOpts::none());
    let mut torsion: Vec<BigInt> = s.diag[..s.rank]
        .iter()
        .filter(|d| d.abs() > BigInt::from(1))
        .cloned()
        .collect();
    torsion.sort();
    GroupDescriptor {
        free_rank: r - s.rank,
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn dense(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&v| big(v)).collect())
            .collect()
    }

    #[test]
    fn snf_identity() {
        let m = SparseIntMatrix::from_dense(&identity(3));
        let (_, s, _) = smith_normal_form(&m);
        assert_eq!(s, m);
    }

    #[test]
    fn snf_small() {
        let m = SparseIntMatrix::from_dense(&dense(&[&[2, 4], &[6, 8]]));
        let (_, s, _) = smith_normal_form(&m);
        assert_eq!(s.get(0, 0), big(2));
        assert_eq!(s.get(1, 1), big(4));
    }

    #[test]
    fn snf_zero() {
        let m = SparseIntMatrix::new(2, 3);
        let (_, s, _) = smith_normal_form(&m);
        assert_eq!(s.entry_count(), 0);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = SparseIntMatrix::from_dense(&dense(&[&[2, 0], &[0, 3]]));
        let (_, s, _) = smith_normal_form(&m);
        assert_eq!(s.get(0, 0), big(1));
        assert_eq!(s.get(1, 1), big(6));
    }

    #[test]
    fn kernel_of_projection() {
        let m = dense(&[&[1, 0, 1], &[0, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v[0] == -&v[2] && v[1] == -&v[2] && !v[2].is_zero());
    }

    #[test]
    fn quotient_index_two() {
        // Z^2 / <(2,0), (0,1)> = Z/2.
        let l1 = vec![vec![big(1), big(0)], vec![big(0), big(1)]];
        let l2 = vec![vec![big(2), big(0)], vec![big(0), big(1)]];
        let g = lattice_quotient(2, &l1, &l2);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, vec![big(2)]);
    }

    #[test]
    fn quotient_free() {
        let l1 = vec![vec![big(1), big(0)], vec![big(0), big(1)]];
        let l2 = vec![vec![big(3), big(0)]];
        let g = lattice_quotient(2, &l1, &l2);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion, vec![big(3)]);
    }

    #[test]
    fn quotient_of_sublattice() {
        // <(2,0),(0,2)> / <(2,0),(0,4)> = Z/2.
        let l1 = vec![vec![big(2), big(0)], vec![big(0), big(2)]];
        let l2 = vec![vec![big(2), big(0)], vec![big(0), big(4)]];
        let g = lattice_quotient(2, &l1, &l2);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, vec![big(2)]);
    }
}
