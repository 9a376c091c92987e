use std::fmt;

use crate::arith::Int;
use crate::linalg::{invariant_factors, snf, IMat};

/// Finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Canonical form from a free rank and arbitrary cyclic orders.
    pub fn new(free_rank: usize, cyclic: &[Int]) -> Self {
        let d = IMat::diagonal(cyclic);
        let mut g = FgAbGroup::from_presentation(cyclic.len(), &d);
        g.free_rank += free_rank;
        g
    }

    pub fn from_orders(free_rank: usize, cyclic: &[i64]) -> Self {
        let v: Vec<Int> = cyclic.iter().map(|&x| Int::from(x)).collect();
        FgAbGroup::new(free_rank, &v)
    }

    /// `Z^gens / (row span of relations)`.
    pub fn from_presentation(gens: usize, relations: &IMat) -> Self {
        assert_eq!(relations.cols(), gens, "relation width");
        let f = invariant_factors(relations);
        FgAbGroup::from_factors(gens, &f)
    }

    /// From the nonzero Smith invariants of a relation matrix on `gens` generators.
    pub fn from_factors(gens: usize, factors: &[Int]) -> Self {
        FgAbGroup {
            free_rank: gens - factors.len(),
            torsion: factors.iter().filter(|x| !x.is_one()).cloned().collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().cloned().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Whether the group is `(Z/2)^k` for some `k` (including the trivial group).
    pub fn is_elementary_two(&self) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|d| *d == Int::from(2))
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut cyc = self.torsion.clone();
        cyc.extend_from_slice(&other.torsion);
        FgAbGroup::new(self.free_rank + other.free_rank, &cyc)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 {
                format!("Z/{d}")
            } else {
                format!("(Z/{d})^{run}")
            });
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Explicit coordinates on a quotient `Z^n / (row span of R)`.
///
/// A row vector `x` maps to `x * proj`; the first `torsion().len()` coordinates
/// are read modulo the torsion orders, the remaining ones are free.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FgAbGroup,
    proj: IMat,
    lift: IMat,
}

impl Quotient {
    pub fn new(relations: &IMat) -> Quotient {
        let n = relations.cols();
        let s = snf(relations);
        let factors = s.invariant_factors();
        let keep: Vec<usize> = (0..n)
            .filter(|&j| j >= factors.len() || !factors[j].is_one())
            .collect();
        Quotient {
            group: FgAbGroup::from_factors(n, &factors),
            proj: s.v.select_cols(&keep),
            lift: s.v_inv.select_rows(&keep),
        }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.proj.rows()
    }

    /// `n x (t + f)` projection matrix acting on row vectors.
    pub fn projection(&self) -> &IMat {
        &self.proj
    }

    /// Projection onto the free coordinates only (`n x f`).
    pub fn free_projection(&self) -> IMat {
        let t = self.group.torsion().len();
        self.proj
            .submatrix(0, self.proj.rows(), t, self.proj.cols())
    }

    /// Representatives in `Z^n` of the free generators (`f x n`).
    pub fn free_lifts(&self) -> IMat {
        let t = self.group.torsion().len();
        self.lift
            .submatrix(t, self.lift.rows(), 0, self.lift.cols())
    }

    /// Canonical coordinates of a vector, torsion parts reduced.
    pub fn coords(&self, x: &[Int]) -> Vec<Int> {
        let mut y = self.proj.apply_left(x);
        for (yi, d) in y.iter_mut().zip(self.group.torsion()) {
            *yi = yi.mod_floor(d);
        }
        y
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        self.coords(x).iter().all(|v| v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let g = FgAbGroup::from_orders(1, &[2, 3, 4]);
        assert_eq!(g.torsion(), &[Int::from(2), Int::from(12)]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(FgAbGroup::from_orders(0, &[2, 2, 1]).to_string(), "(Z/2)^2");
        assert!(FgAbGroup::from_orders(0, &[1]).is_trivial());
    }

    #[test]
    fn quotient_coordinates() {
        // Z^3 / <(2,0,0), (0,1,1)>: Z/2 + Z.
        let r = IMat::from_i64(2, 3, &[2, 0, 0, 0, 1, 1]);
        let q = Quotient::new(&r);
        assert_eq!(q.group(), &FgAbGroup::from_orders(1, &[2]));
        for row in r.row_vecs() {
            assert!(q.is_zero(&row));
        }
        let e1 = [Int::ONE, Int::ZERO, Int::ZERO];
        assert!(!q.is_zero(&e1));
        let lifts = q.free_lifts();
        let back = q.free_projection();
        assert!(lifts.mul(&back).is_identity());
    }
}
