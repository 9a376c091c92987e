use crate::abgroup::{BoundedComplex, FgAbGroup};
use crate::arith::{Int, Rat};
use crate::check::CheckRecord;
use crate::error::{Error, Result};
use crate::linalg::{det_exact, det_int, invariant_factors, IMat, QMat};

/// Regulator of a real isomorphism `lambda: R A -> R B`, given as a matrix on
/// the canonical free coordinates (column convention).
///
/// Uses the free parts of the canonical decompositions as the finite-index
/// free subgroups, so the value is `|det lambda| * #tor B / #tor A`.
pub fn regulator(a: &FgAbGroup, b: &FgAbGroup, lambda: &QMat) -> Result<Rat> {
    check_shape(a, b, lambda)?;
    let det = det_exact(lambda)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok(det.abs() * Rat::new(b.torsion_order(), a.torsion_order()))
}

fn check_shape(a: &FgAbGroup, b: &FgAbGroup, lambda: &QMat) -> Result<()> {
    if a.free_rank() != b.free_rank() {
        return Err(Error::RankMismatch(a.free_rank(), b.free_rank()));
    }
    if lambda.rows() != b.free_rank() || lambda.cols() != a.free_rank() {
        return Err(Error::DimensionMismatch("regulator map shape".into()));
    }
    Ok(())
}

/// Order of `G / H` where `H` is generated by the rows of `sub`, written in the
/// canonical generators of `G` (free coordinates first, then torsion).
/// `None` if the quotient is infinite.
pub fn quotient_order(g: &FgAbGroup, sub: &IMat) -> Option<Int> {
    let f = g.free_rank();
    let n = f + g.torsion().len();
    let mut rel = sub.clone();
    for (k, d) in g.torsion().iter().enumerate() {
        let mut row = IMat::zeros(1, n);
        row[(0, f + k)] = d.clone();
        rel = rel.vstack(&row);
    }
    let inv = invariant_factors(&rel);
    (inv.len() == n).then(|| inv.into_iter().product())
}

/// Regulator evaluated with explicitly chosen free subgroups `A' <= A`, `B' <= B`
/// of finite index (rows in canonical generators), and the isomorphism
/// `B' -> A'` sending the i-th generator to the i-th generator.
pub fn regulator_with_subgroups(
    a: &FgAbGroup,
    b: &FgAbGroup,
    lambda: &QMat,
    a_sub: &IMat,
    b_sub: &IMat,
) -> Result<Rat> {
    check_shape(a, b, lambda)?;
    let f = a.free_rank();
    if a_sub.rows() != f || b_sub.rows() != f {
        return Err(Error::RankMismatch(a_sub.rows(), b_sub.rows()));
    }
    let ia = quotient_order(a, a_sub).ok_or_else(|| Error::InfiniteGroup("A/A'".into()))?;
    let ib = quotient_order(b, b_sub).ok_or_else(|| Error::InfiniteGroup("B/B'".into()))?;
    let pa = det_int(&a_sub.submatrix(0, f, 0, f))?;
    let pb = det_int(&b_sub.submatrix(0, f, 0, f))?;
    let det = det_exact(lambda)?;
    if det.is_zero() || pa.is_zero() || pb.is_zero() {
        return Err(Error::Singular);
    }
    // phi = P_A^T (P_B^T)^{-1} on the free coordinates.
    let phi_det = Rat::new(pa, pb);
    Ok((det * phi_det).abs() * Rat::new(ib, ia))
}

/// Multiplicativity of regulators along `A -> B -> C`.
pub fn regulator_chain(
    a: &FgAbGroup,
    b: &FgAbGroup,
    c: &FgAbGroup,
    lambda: &QMat,
    mu: &QMat,
) -> Result<CheckRecord> {
    let composite = regulator(a, c, &mu.mul(lambda))?;
    let product = regulator(a, b, lambda)? * regulator(b, c, mu)?;
    Ok(CheckRecord::new(
        "regulator_chain",
        None,
        format!("A={a}, B={b}, C={c}"),
        &product,
        &composite,
    ))
}

/// Checks that the alternating product of chain-level regulators equals the
/// alternating product of regulators induced on cohomology.
pub fn euler_regulator_check(
    a: &BoundedComplex,
    b: &BoundedComplex,
    lambda: &[QMat],
) -> Result<CheckRecord> {
    let (lhs, rhs) = euler_regulator_sides(a, b, lambda)?;
    Ok(CheckRecord::new(
        "euler_regulator",
        None,
        format!("ranks A={:?}, B={:?}", ranks(a), ranks(b)),
        &rhs,
        &lhs,
    ))
}

fn ranks(c: &BoundedComplex) -> Vec<usize> {
    c.degrees().map(|i| c.rank(i)).collect()
}

/// Both sides of the Euler-characteristic identity for regulators:
/// `(prod_i reg(lambda^i)^{(-1)^i}, prod_i reg(H^i(lambda))^{(-1)^i})`.
pub fn euler_regulator_sides(
    a: &BoundedComplex,
    b: &BoundedComplex,
    lambda: &[QMat],
) -> Result<(Rat, Rat)> {
    if a.lo() != b.lo() || lambda.len() != (1 - a.lo()) as usize {
        return Err(Error::DimensionMismatch("complex map degrees".into()));
    }
    let lam = |i: i32| &lambda[(i - a.lo()) as usize];
    for i in a.degrees() {
        let l = lam(i);
        if l.rows() != b.rank(i) || l.cols() != a.rank(i) {
            return Err(Error::DimensionMismatch(format!("lambda at degree {i}")));
        }
        if i < 0 {
            let left = lam(i + 1).mul(&a.diff(i).to_qmat());
            let right = b.diff(i).to_qmat().mul(l);
            if left != right {
                return Err(Error::HypothesisFailed(format!(
                    "lambda does not commute with d at degree {i}"
                )));
            }
        }
    }
    let mut lhs = Rat::one();
    let mut rhs = Rat::one();
    for i in a.degrees() {
        let chain = regulator(
            &FgAbGroup::free(a.rank(i)),
            &FgAbGroup::free(b.rank(i)),
            lam(i),
        )?;
        let ha = a.cohomology_coords(i)?;
        let hb = b.cohomology_coords(i)?;
        let hl = ha.induced_free_map(&hb, lam(i))?;
        let coh = regulator(ha.group(), hb.group(), &hl)?;
        let e = if i % 2 == 0 { 1 } else { -1 };
        lhs = lhs * chain.pow(e);
        rhs = rhs * coh.pow(e);
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Lattice, QMat};

    #[test]
    fn finite_groups() {
        let a = FgAbGroup::from_orders(0, &[2, 3]);
        let b = FgAbGroup::from_orders(0, &[4, 5]);
        assert_eq!(
            regulator(&a, &b, &QMat::zeros(0, 0)).unwrap(),
            Rat::new(20, 6)
        );
    }

    #[test]
    fn free_plus_torsion() {
        let a = FgAbGroup::from_orders(1, &[2]);
        let b = FgAbGroup::free(1);
        assert_eq!(
            regulator(&a, &b, &QMat::from_i64(1, 1, &[3])).unwrap(),
            Rat::new(3, 2)
        );
        // Same value with A' = <(1, 1)> (index 2) and B' = <3> (index 3).
        let a_sub = IMat::from_i64(1, 2, &[1, 1]);
        let b_sub = IMat::from_i64(1, 1, &[3]);
        let v =
            regulator_with_subgroups(&a, &b, &QMat::from_i64(1, 1, &[3]), &a_sub, &b_sub).unwrap();
        assert_eq!(v, Rat::new(3, 2));
    }

    #[test]
    fn homomorphism_with_finite_kernel_and_cokernel() {
        // f: Z^2 + Z/2 -> Z^2 + Z/3; column j is the image of generator j.
        let a = FgAbGroup::from_orders(2, &[2]);
        let b = FgAbGroup::from_orders(2, &[3]);
        let f = IMat::from_i64(3, 3, &[2, 1, 0, 0, 3, 0, 1, 0, 0]);
        let reg = regulator(&a, &b, &f.submatrix(0, 2, 0, 2).to_qmat()).unwrap();
        let rel_b = IMat::from_i64(1, 3, &[0, 0, 3]);
        let coker: Int = invariant_factors(&f.transpose().vstack(&rel_b))
            .into_iter()
            .product();
        // ker f = {x : f x in relations of B} / relations of A.
        let pre = crate::linalg::left_kernel(&f.transpose().vstack(&rel_b));
        let pre = Lattice::from_int_rows(&pre.submatrix(0, pre.rows(), 0, 3));
        let rel_a = Lattice::from_int_rows(&IMat::from_i64(1, 3, &[0, 0, 2]));
        let ker = pre.index(&rel_a).unwrap();
        assert_eq!(coker, Int::from(18));
        assert_eq!(ker, Rat::from(2));
        assert_eq!(reg, Rat::from_int(coker) / ker);
    }
}
