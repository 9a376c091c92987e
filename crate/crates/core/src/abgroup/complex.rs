use crate::abgroup::{FgAbGroup, Quotient};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{echelon_coords, invariant_factors, kernel_basis, rank_int, IMat, QMat};

/// Bounded cochain complex of free abelian groups in degrees `[lo, 0]`.
///
/// `d^i` is an `n_{i+1} x n_i` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<IMat>,
}

impl BoundedComplex {
    /// `diffs[k]` is `d^{lo + k}` for `lo + k` in `[lo, -1]`.
    pub fn new(lo: i32, ranks: Vec<usize>, diffs: Vec<IMat>) -> Result<Self> {
        if lo > 0 || ranks.len() != (1 - lo) as usize || diffs.len() != ranks.len() - 1 {
            return Err(Error::DimensionMismatch("complex degree layout".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::DimensionMismatch(format!(
                    "differential at degree {}",
                    lo + k as i32
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(Error::NotAComplex(lo + k as i32 - 1));
            }
        }
        Ok(BoundedComplex { lo, ranks, diffs })
    }

    /// Single group in degree 0.
    pub fn concentrated(rank: usize) -> Self {
        BoundedComplex {
            lo: 0,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=0
    }

    pub fn rank(&self, i: i32) -> usize {
        if i < self.lo || i > 0 {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// `d^i`, with zero maps outside the stored range.
    pub fn diff(&self, i: i32) -> IMat {
        if i >= self.lo && i < 0 {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            IMat::zeros(self.rank(i + 1), self.rank(i))
        }
    }

    fn check_degree(&self, i: i32) -> Result<()> {
        if i < self.lo || i > 0 {
            return Err(Error::DegreeOutOfRange(i, self.lo));
        }
        Ok(())
    }

    /// `H^i = ker d^i / im d^{i-1}`.
    ///
    /// The kernel is saturated, so the torsion of `H^i` equals the torsion of
    /// `coker d^{i-1}` and only ranks and one Smith form are needed.
    pub fn cohomology(&self, i: i32) -> Result<FgAbGroup> {
        self.check_degree(i)?;
        let n = self.rank(i);
        let out_rank = rank_int(&self.diff(i));
        let inv = invariant_factors(&self.diff(i - 1));
        let tors: Vec<Int> = inv.iter().filter(|x| !x.is_one()).cloned().collect();
        Ok(FgAbGroup::new(n - out_rank - inv.len(), &tors))
    }

    /// Cohomology with explicit coordinates.
    pub fn cohomology_coords(&self, i: i32) -> Result<CohomologyCoords> {
        self.check_degree(i)?;
        let kernel = kernel_basis(&self.diff(i));
        let im = self.diff(i - 1).transpose();
        let mut rel = IMat::zeros(im.rows(), kernel.rows());
        for r in 0..im.rows() {
            let v: Vec<Rat> = im.row(r).iter().map(|x| Rat::from_int(x.clone())).collect();
            let c = echelon_coords(&kernel, &v).ok_or(Error::NotAComplex(i - 1))?;
            for (j, x) in c.into_iter().enumerate() {
                rel[(r, j)] = x
                    .to_int()
                    .ok_or_else(|| Error::NonIntegral("cocycle coordinates".into()))?;
            }
        }
        Ok(CohomologyCoords {
            quotient: Quotient::new(&rel),
            kernel,
        })
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * self.rank(i) as i64)
            .sum()
    }
}

/// `H^i` of a complex together with a saturated cocycle basis and quotient
/// coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyCoords {
    kernel: IMat,
    quotient: Quotient,
}

impl CohomologyCoords {
    pub fn group(&self) -> &FgAbGroup {
        self.quotient.group()
    }

    /// Cocycle basis as rows.
    pub fn cocycles(&self) -> &IMat {
        &self.kernel
    }

    /// Cocycles representing the free generators (rows of length `n_i`).
    pub fn free_representatives(&self) -> IMat {
        self.quotient.free_lifts().mul(&self.kernel)
    }

    /// Free coordinates of a rational cocycle, or `None` if it is not a cocycle.
    pub fn free_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let x = echelon_coords(&self.kernel, v)?;
        let p = self.quotient.free_projection().to_qmat();
        Some(p.apply_left(&x))
    }

    /// Matrix (column convention) induced on free parts by a chain-level map
    /// `lambda` from the complex of `self` to that of `target`.
    pub fn induced_free_map(&self, target: &CohomologyCoords, lambda: &QMat) -> Result<QMat> {
        let reps = self.free_representatives();
        let f_src = reps.rows();
        let f_dst = target.group().free_rank();
        let mut out = QMat::zeros(f_dst, f_src);
        for j in 0..f_src {
            let v: Vec<Rat> = reps
                .row(j)
                .iter()
                .map(|x| Rat::from_int(x.clone()))
                .collect();
            let w = lambda.apply(&v);
            let c = target.free_coords(&w).ok_or_else(|| {
                Error::HypothesisFailed("map does not send cocycles to cocycles".into())
            })?;
            for (i, x) in c.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_by_two() {
        let c = BoundedComplex::new(-1, vec![1, 1], vec![IMat::from_i64(1, 1, &[2])]).unwrap();
        assert_eq!(c.cohomology(0).unwrap(), FgAbGroup::from_orders(0, &[2]));
        assert!(c.cohomology(-1).unwrap().is_trivial());
        assert!(c.cohomology(1).is_err());
    }

    #[test]
    fn zero_differentials() {
        let c = BoundedComplex::new(
            -2,
            vec![3, 1, 2],
            vec![IMat::zeros(1, 3), IMat::zeros(2, 1)],
        )
        .unwrap();
        assert_eq!(c.cohomology(-2).unwrap(), FgAbGroup::free(3));
        assert_eq!(c.cohomology(-1).unwrap(), FgAbGroup::free(1));
        assert_eq!(c.cohomology(0).unwrap(), FgAbGroup::free(2));
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IMat::from_i64(1, 1, &[1]);
        let d2 = IMat::from_i64(1, 1, &[1]);
        assert_eq!(
            BoundedComplex::new(-2, vec![1, 1, 1], vec![d1, d2]),
            Err(Error::NotAComplex(-2))
        );
    }

    #[test]
    fn coordinates_agree_with_group() {
        // Z^2 -> Z^2 with d = [[2,0],[0,0]] then Z^2 -> Z via [0,1]... degree layout -2..0.
        let d2 = IMat::from_i64(2, 2, &[2, 0, 0, 0]);
        let d1 = IMat::from_i64(1, 2, &[0, 1]);
        let c = BoundedComplex::new(-2, vec![2, 2, 1], vec![d2, d1]).unwrap();
        for i in -2..=0 {
            let h = c.cohomology(i).unwrap();
            let hc = c.cohomology_coords(i).unwrap();
            assert_eq!(&h, hc.group(), "degree {i}");
        }
        assert_eq!(c.cohomology(-1).unwrap(), FgAbGroup::from_orders(0, &[2]));
    }
}
