//! Hermite and Smith normal forms, determinants, ranks, kernels and solves.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{IMat, QMat};

/// `u * a * v = d` with `d` diagonal, nonnegative, and each diagonal entry
/// dividing the next.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
    /// Inverse of `v`.
    pub v_inv: IMat,
}

impl SnfResult {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Int> {
        diagonal_nonzero(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal_nonzero(d: &IMat) -> Vec<Int> {
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Row-style Hermite normal form together with a unimodular `u` such that
/// `u * a = h`. Zero rows of `h` sit at the bottom.
pub fn hnf_with_transform(a: &IMat) -> (IMat, IMat) {
    let mut h = a.clone();
    let mut u = IMat::identity(a.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(a: &IMat) -> IMat {
    let mut h = a.clone();
    hnf_in_place(&mut h, None);
    h
}

/// Hermite form with the zero rows dropped.
pub fn hnf_basis(a: &IMat) -> IMat {
    let h = hnf(a);
    let r = (0..h.rows())
        .take_while(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count();
    h.submatrix(0, r, 0, h.cols())
}

/// Pivot column of each nonzero row of a matrix in row echelon form.
pub fn pivot_columns(h: &IMat) -> Vec<usize> {
    (0..h.rows())
        .filter_map(|i| h.row(i).iter().position(|x| !x.is_zero()))
        .collect()
}

fn hnf_in_place(h: &mut IMat, mut u: Option<&mut IMat>) -> Vec<usize> {
    let (m, n) = (h.rows(), h.cols());
    let mut pr = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if pr == m {
            break;
        }
        let mut found = false;
        loop {
            let best = (pr..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            found = true;
            h.swap_rows(best, pr);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(best, pr);
            }
            let mut clean = true;
            for k in pr + 1..m {
                if h[(k, col)].is_zero() {
                    continue;
                }
                let q = -h[(k, col)].div_floor(&h[(pr, col)]);
                h.add_row_multiple(k, pr, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(k, pr, &q);
                }
                if !h[(k, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(pr);
            }
        }
        for k in 0..pr {
            if h[(k, col)].is_zero() {
                continue;
            }
            let q = -h[(k, col)].div_floor(&h[(pr, col)]);
            h.add_row_multiple(k, pr, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(k, pr, &q);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Smith normal form with transforms.
pub fn snf(a: &IMat) -> SnfResult {
    let mut d = a.clone();
    let mut u = IMat::identity(a.rows());
    let mut v = IMat::identity(a.cols());
    let mut v_inv = IMat::identity(a.cols());
    snf_in_place(&mut d, Some((&mut u, &mut v, &mut v_inv)));
    SnfResult { u, d, v, v_inv }
}

/// Invariant factors only (nonzero diagonal of the Smith form).
pub fn invariant_factors(a: &IMat) -> Vec<Int> {
    let mut d = a.clone();
    snf_in_place(&mut d, None);
    diagonal_nonzero(&d)
}

type Transforms<'a> = Option<(&'a mut IMat, &'a mut IMat, &'a mut IMat)>;

fn snf_in_place(d: &mut IMat, mut uv: Transforms<'_>) {
    let (m, n) = (d.rows(), d.cols());
    let row_op = |d: &mut IMat, uv: &mut Transforms<'_>, dst: usize, src: usize, k: &Int| {
        d.add_row_multiple(dst, src, k);
        if let Some((u, _, _)) = uv.as_mut() {
            u.add_row_multiple(dst, src, k);
        }
    };
    let col_op = |d: &mut IMat, uv: &mut Transforms<'_>, dst: usize, src: usize, k: &Int| {
        d.add_col_multiple(dst, src, k);
        if let Some((_, v, vi)) = uv.as_mut() {
            v.add_col_multiple(dst, src, k);
            vi.add_row_multiple(src, dst, &-k);
        }
    };
    for t in 0..m.min(n) {
        // Minimal-magnitude pivot in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| d[(bi, bj)].abs().is_one()) {
                break;
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        d.swap_cols(t, bj);
        if let Some((u, v, vi)) = uv.as_mut() {
            u.swap_rows(t, bi);
            v.swap_cols(t, bj);
            vi.swap_rows(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                row_op(d, &mut uv, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                col_op(d, &mut uv, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Bring the smallest leftover in row/column t to the pivot.
                let mut bi = None;
                let mut bj = None;
                let mut best = d[(t, t)].abs();
                for i in t + 1..m {
                    let x = d[(i, t)].abs();
                    if !x.is_zero() && x < best {
                        best = x;
                        bi = Some(i);
                        bj = None;
                    }
                }
                for j in t + 1..n {
                    let x = d[(t, j)].abs();
                    if !x.is_zero() && x < best {
                        best = x;
                        bj = Some(j);
                        bi = None;
                    }
                }
                if let Some(i) = bi {
                    d.swap_rows(t, i);
                    if let Some((u, _, _)) = uv.as_mut() {
                        u.swap_rows(t, i);
                    }
                }
                if let Some(j) = bj {
                    d.swap_cols(t, j);
                    if let Some((_, v, vi)) = uv.as_mut() {
                        v.swap_cols(t, j);
                        vi.swap_rows(t, j);
                    }
                }
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let p = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(&d[(i, j)])));
            match offender {
                Some(i) => row_op(d, &mut uv, t, i, &Int::ONE),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some((u, _, _)) = uv.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_int(a: &IMat) -> Result<Int> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Int::ONE);
    }
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev = Int::ONE;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return Ok(Int::ZERO);
        };
        if p != k {
            m.swap_rows(p, k);
            sign = -sign;
        }
        let piv = m[(k, k)].clone();
        for i in k + 1..n {
            let lead = m[(i, k)].clone();
            for j in k + 1..n {
                let v = &(&piv * &m[(i, j)]) - &(&lead * &m[(k, j)]);
                m[(i, j)] = v.div_exact(&prev);
            }
            m[(i, k)] = Int::ZERO;
        }
        prev = piv;
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Exact determinant of a square rational matrix.
pub fn det_exact(a: &QMat) -> Result<Rat> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let mut scale = Int::ONE;
    let mut ints = IMat::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        let d = a.row(i).iter().fold(Int::ONE, |acc, x| acc.lcm(x.denom()));
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            ints[(i, j)] = x.numer() * &d.div_exact(x.denom());
        }
        scale = &scale * &d;
    }
    Ok(Rat::new(det_int(&ints)?, scale))
}

/// Rank over the rationals via fraction-free elimination.
pub fn rank_int(a: &IMat) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut prev = Int::ONE;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..cols {
                let v = &(&piv * &m[(i, j)]) - &(&lead * &m[(r, j)]);
                m[(i, j)] = v.div_exact(&prev);
            }
            m[(i, c)] = Int::ZERO;
        }
        prev = piv;
        r += 1;
    }
    r
}

pub fn rank_rat(a: &QMat) -> usize {
    rank_int(&a.integral_rows())
}

/// Saturated basis (as rows) of `{x : x a = 0}` over the integers, in Hermite form.
pub fn left_kernel(a: &IMat) -> IMat {
    let (h, u) = hnf_with_transform(a);
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(|x| x.is_zero()))
        .collect();
    hnf_basis(&u.select_rows(&zero_rows))
}

/// Saturated basis (as rows) of `{x : a x = 0}` over the integers.
pub fn kernel_basis(a: &IMat) -> IMat {
    left_kernel(&a.transpose())
}

/// Rational coordinates of `v` with respect to the rows of an echelon matrix
/// with independent rows; `None` if `v` is outside their span.
pub fn echelon_coords(h: &IMat, v: &[Rat]) -> Option<Vec<Rat>> {
    let piv = pivot_columns(h);
    let mut rest = v.to_vec();
    let mut out = vec![Rat::zero(); h.rows()];
    for (i, &c) in piv.iter().enumerate() {
        if rest[c].is_zero() {
            continue;
        }
        let k = &rest[c] / &Rat::from_int(h[(i, c)].clone());
        for (j, b) in h.row(i).iter().enumerate() {
            if !b.is_zero() {
                rest[j] = &rest[j] - &(&k * &Rat::from_int(b.clone()));
            }
        }
        out[i] = k;
    }
    rest.iter().all(|x| x.is_zero()).then_some(out)
}

/// Integer coordinates of `v` in the lattice spanned by the rows of an echelon
/// matrix; `None` if `v` is not in that lattice.
pub fn echelon_coords_int(h: &IMat, v: &[Int]) -> Option<Vec<Int>> {
    let piv = pivot_columns(h);
    let mut rest = v.to_vec();
    let mut out = vec![Int::ZERO; h.rows()];
    for (i, &c) in piv.iter().enumerate() {
        if rest[c].is_zero() {
            continue;
        }
        let p = &h[(i, c)];
        if !p.divides(&rest[c]) {
            return None;
        }
        let k = rest[c].div_exact(p);
        for (j, b) in h.row(i).iter().enumerate() {
            if !b.is_zero() {
                rest[j] = &rest[j] - &(&k * b);
            }
        }
        out[i] = k;
    }
    rest.iter().all(|x| x.is_zero()).then_some(out)
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub fn rref(a: &mut QMat) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].recip();
        for x in a.row_mut(r) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let k = -a[(i, c)].clone();
                a.add_row_multiple(i, r, &k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `x a = b` for `x` over the rationals; `None` if inconsistent.
/// Free variables are set to zero.
pub fn solve_left(a: &QMat, b: &QMat) -> Result<Option<QMat>> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "solve x*A=B with A {}x{}, B {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    // Columns of x^T solve a^T y = b^T.
    let n = a.rows();
    let mut aug = a.transpose().hstack(&b.transpose());
    let pivots = rref(&mut aug);
    if pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut x = QMat::zeros(b.rows(), n);
    for (r, &c) in pivots.iter().enumerate() {
        for k in 0..b.rows() {
            x[(k, c)] = aug[(r, n + k)].clone();
        }
    }
    Ok(Some(x))
}

/// Solves `a x = b` for `x` over the rationals.
pub fn solve_right(a: &QMat, b: &QMat) -> Result<Option<QMat>> {
    Ok(solve_left(&a.transpose(), &b.transpose())?.map(|x| x.transpose()))
}

pub fn inverse(a: &QMat) -> Result<QMat> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut aug = a.hstack(&QMat::identity(n));
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(aug.submatrix(0, n, n, 2 * n))
}

/// Integer solve of `x a = b`, failing if the rational solution is not integral.
pub fn solve_left_int(a: &IMat, b: &IMat) -> Result<IMat> {
    let x = solve_left(&a.to_qmat(), &b.to_qmat())?.ok_or(Error::SpanMismatch)?;
    x.to_imat()
        .ok_or_else(|| Error::NonIntegral("left solve".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(r: usize, c: usize, v: &[i64]) -> IMat {
        IMat::from_i64(r, c, v)
    }

    fn is_snf(d: &IMat) -> bool {
        let f = diagonal_nonzero(d);
        let off = (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)].is_zero()));
        off && f.iter().all(|x| x.signum() > 0)
            && f.windows(2).all(|w| w[0].divides(&w[1]))
            && (f.len()..d.rows().min(d.cols())).all(|i| d[(i, i)].is_zero())
    }

    #[test]
    fn snf_examples() {
        let r = snf(&im(2, 2, &[2, 0, 0, 3]));
        assert_eq!(r.d, im(2, 2, &[1, 0, 0, 6]));
        let r = snf(&IMat::zeros(2, 2));
        assert!(r.d.is_zero() && r.u.is_identity() && r.v.is_identity());
        let a = im(2, 2, &[2, 4, 1, 1]);
        let r = snf(&a);
        assert_eq!(r.d, im(2, 2, &[1, 0, 0, 2]));
        assert_eq!(r.u.mul(&a).mul(&r.v), r.d);
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&im(2, 2, &[2, 4, 1, 1])), im(2, 2, &[1, 1, 0, 2]));
        assert!(hnf(&IMat::identity(3)).is_identity());
        assert_eq!(hnf(&im(1, 2, &[0, 3])), im(1, 2, &[0, 3]));
        assert_eq!(
            hnf(&im(3, 2, &[0, 0, 4, 6, 2, 2])),
            im(3, 2, &[2, 0, 0, 2, 0, 0])
        );
    }

    #[test]
    fn determinants() {
        assert_eq!(
            det_exact(&QMat::from_i64(2, 2, &[1, 2, 3, 4])).unwrap(),
            Rat::from(-2)
        );
        assert_eq!(det_exact(&QMat::identity(5)).unwrap(), Rat::one());
        assert!(det_exact(&QMat::zeros(2, 3)).is_err());
        assert_eq!(det_int(&IMat::zeros(0, 0)).unwrap(), Int::ONE);
    }

    #[test]
    fn swap_kernel() {
        // 1 + c on Z[J] with c swapping the coordinates.
        let k = kernel_basis(&im(2, 2, &[1, 1, 1, 1]));
        assert_eq!(k, im(1, 2, &[1, -1]));
    }

    #[test]
    fn solves() {
        let a = QMat::from_i64(2, 3, &[1, 0, 1, 0, 2, 0]);
        let b = QMat::from_i64(1, 3, &[3, 4, 3]);
        let x = solve_left(&a, &b).unwrap().unwrap();
        assert_eq!(x, QMat::from_i64(1, 2, &[3, 2]));
        let bad = QMat::from_i64(1, 3, &[1, 0, 0]);
        assert!(solve_left(&a, &bad).unwrap().is_none());
        let inv = inverse(&QMat::from_i64(2, 2, &[2, 1, 1, 1])).unwrap();
        assert_eq!(inv, QMat::from_i64(2, 2, &[1, -1, -1, 2]));
    }

    fn small_matrix() -> impl Strategy<Value = IMat> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| im(r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn snf_contract(a in small_matrix()) {
            let r = snf(&a);
            prop_assert_eq!(r.u.mul(&a).mul(&r.v), r.d.clone());
            prop_assert!(r.v.mul(&r.v_inv).is_identity());
            prop_assert!(is_snf(&r.d));
            prop_assert!(det_int(&r.u).unwrap().abs().is_one());
            prop_assert!(det_int(&r.v).unwrap().abs().is_one());
            prop_assert_eq!(r.rank(), rank_int(&a));
            if a.is_square() {
                let prod: Int = r.invariant_factors().into_iter().product();
                let det = det_int(&a).unwrap().abs();
                if r.rank() == a.rows() {
                    prop_assert_eq!(prod, det);
                } else {
                    prop_assert!(det.is_zero());
                }
            }
        }

        #[test]
        fn hnf_contract(a in small_matrix()) {
            let (h, u) = hnf_with_transform(&a);
            prop_assert_eq!(u.mul(&a), h.clone());
            prop_assert!(det_int(&u).unwrap().abs().is_one());
            let piv = pivot_columns(&h);
            prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
            for (i, &c) in piv.iter().enumerate() {
                prop_assert!(h[(i, c)].signum() > 0);
                for k in 0..i {
                    prop_assert!(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)]);
                }
            }
        }

        #[test]
        fn kernel_is_saturated(a in small_matrix()) {
            let k = kernel_basis(&a);
            prop_assert_eq!(k.rows(), a.cols() - rank_int(&a));
            prop_assert!(a.mul(&k.transpose()).is_zero());
            prop_assert!(invariant_factors(&k).iter().all(|x| x.is_one()));
        }
    }
}
