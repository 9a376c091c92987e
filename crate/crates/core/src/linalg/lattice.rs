use std::fmt;

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::normal_form::{det_int, hnf_basis, left_kernel, pivot_columns};
use crate::linalg::{IMat, QMat};

/// A lattice in `Q^n`, stored canonically as `basis / den` with `basis` an
/// integer Hermite basis and `den` positive and coprime to the content of `basis`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IMat,
    den: Int,
}

impl Lattice {
    /// Lattice spanned by the rows of a rational matrix.
    pub fn from_rows(gens: &QMat) -> Lattice {
        let (den, ints) = gens.clear_denominators();
        Lattice::from_scaled(hnf_basis(&ints), den)
    }

    pub fn from_int_rows(gens: &IMat) -> Lattice {
        Lattice::from_scaled(hnf_basis(gens), Int::ONE)
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Lattice {
        Lattice {
            basis: IMat::identity(n),
            den: Int::ONE,
        }
    }

    pub fn zero(n: usize) -> Lattice {
        Lattice {
            basis: IMat::zeros(0, n),
            den: Int::ONE,
        }
    }

    fn from_scaled(h: IMat, den: Int) -> Lattice {
        let content = h.entries().iter().fold(den.clone(), |g, x| g.gcd(x));
        if content.is_one() || h.rows() == 0 {
            let den = if h.rows() == 0 { Int::ONE } else { den };
            return Lattice { basis: h, den };
        }
        Lattice {
            basis: h.map(|x| x.div_exact(&content)),
            den: den.div_exact(&content),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    /// Integer numerator of the canonical basis.
    pub fn int_basis(&self) -> &IMat {
        &self.basis
    }

    /// Canonical rational basis (rows).
    pub fn gens(&self) -> QMat {
        self.basis.map(|x| Rat::new(x.clone(), self.den.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn check_dim(&self, other: &Lattice) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Basis numerators of both lattices over a common denominator.
    fn common_scale(&self, other: &Lattice) -> (Int, IMat, IMat) {
        let d = self.den.lcm(&other.den);
        let a = self.basis.scale(&d.div_exact(&self.den));
        let b = other.basis.scale(&d.div_exact(&other.den));
        (d, a, b)
    }

    /// Whether the rational vector lies in the rational span of the lattice.
    pub fn spans(&self, v: &[Rat]) -> bool {
        let piv = pivot_columns(&self.basis);
        let d = v.iter().fold(Int::ONE, |acc, x| acc.lcm(x.denom()));
        let mut w: Vec<Int> = v
            .iter()
            .map(|x| x.numer() * &d.div_exact(x.denom()))
            .collect();
        for (i, &c) in piv.iter().enumerate() {
            if w[c].is_zero() {
                continue;
            }
            let h = self.basis.row(i);
            let (hc, wc) = (h[c].clone(), w[c].clone());
            for j in 0..w.len() {
                w[j] = &(&w[j] * &hc) - &(&wc * &h[j]);
            }
            let g = w.iter().fold(Int::ZERO, |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in w.iter_mut() {
                    *x = x.div_exact(&g);
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn same_span(&self, other: &Lattice) -> bool {
        self.rank() == other.rank() && other.gens().row_vecs().iter().all(|r| self.spans(r))
    }

    /// Whether `v` is an element of the lattice.
    pub fn contains(&self, v: &[Rat]) -> bool {
        if !self.spans(v) {
            return false;
        }
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Rational coordinates of a vector in the span, relative to the canonical basis.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.spans(v) {
            return None;
        }
        let piv = pivot_columns(&self.basis);
        let mut rest: Vec<Rat> = v.to_vec();
        let mut coords = vec![Rat::zero(); self.rank()];
        let den = Rat::from_int(self.den.clone());
        for (i, &c) in piv.iter().enumerate() {
            if rest[c].is_zero() {
                continue;
            }
            let k = &(&rest[c] * &den) / &Rat::from_int(self.basis[(i, c)].clone());
            for j in 0..rest.len() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    rest[j] = &rest[j] - &(&k * &Rat::new(b.clone(), self.den.clone()));
                }
            }
            coords[i] = k;
        }
        Some(coords)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.gens().row_vecs().iter().all(|r| self.contains(r))
    }

    /// Lattice index `(self : other)`: `|det M|` where `other = M * self` on bases.
    pub fn index(&self, other: &Lattice) -> Result<Rat> {
        self.check_dim(other)?;
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        if !self.same_span(other) {
            return Err(Error::SpanMismatch);
        }
        let piv = pivot_columns(&self.basis);
        // Both bases restricted to the pivot columns of self are square, and
        // other|_P = M * self|_P.
        let a = self.basis.select_cols(&piv);
        let b = other.basis.select_cols(&piv);
        let da = det_int(&a)?;
        let db = det_int(&b)?;
        let k = self.rank() as u32;
        let num = db.abs() * self.den.pow(k);
        let den = da.abs() * other.den.pow(k);
        Ok(Rat::new(num, den))
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(Lattice::zero(self.ambient_dim()));
        }
        let (d, a, b) = self.common_scale(other);
        let stacked = a.vstack(&b.neg());
        let ker = left_kernel(&stacked);
        let xs = ker.submatrix(0, ker.rows(), 0, a.rows());
        let pts = xs.mul(&a);
        Ok(Lattice::from_scaled(hnf_basis(&pts), d))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        let (d, a, b) = self.common_scale(other);
        Ok(Lattice::from_scaled(hnf_basis(&a.vstack(&b)), d))
    }

    /// Elements `v` of the lattice with `v * n = 0`.
    pub fn intersect_kernel(&self, n: &QMat) -> Result<Lattice> {
        if n.rows() != self.ambient_dim() {
            return Err(Error::DimensionMismatch("kernel map rows".into()));
        }
        let img = self.basis.to_qmat().mul(n);
        let (_, ints) = img.clear_denominators();
        let ker = left_kernel(&ints);
        Ok(Lattice::from_scaled(
            hnf_basis(&ker.mul(&self.basis)),
            self.den.clone(),
        ))
    }

    /// Image of the lattice under `v -> v * n`.
    pub fn image(&self, n: &QMat) -> Lattice {
        Lattice::from_rows(&self.gens().mul(n))
    }

    pub fn scale(&self, k: &Rat) -> Lattice {
        Lattice::from_rows(&self.gens().scale(k))
    }
}

/// Lattice spanned by the rows of a rational matrix.
pub fn image_lattice(a: &QMat) -> Lattice {
    Lattice::from_rows(a)
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(1/{} * {})", self.den, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(r: usize, c: usize, v: &[i64]) -> Lattice {
        Lattice::from_int_rows(&IMat::from_i64(r, c, v))
    }

    #[test]
    fn index_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.index(&lat(2, 2, &[2, 0, 0, 2])).unwrap(), Rat::from(4));
        assert_eq!(z2.index(&lat(2, 2, &[1, 1, 1, -1])).unwrap(), Rat::from(2));
        assert_eq!(lat(2, 2, &[2, 0, 0, 2]).index(&z2).unwrap(), Rat::new(1, 4));
        assert_eq!(
            z2.index(&lat(1, 2, &[1, 0])),
            Err(Error::RankMismatch(2, 1))
        );
        assert_eq!(
            lat(1, 2, &[0, 1]).index(&lat(1, 2, &[1, 0])),
            Err(Error::SpanMismatch)
        );
    }

    #[test]
    fn intersections() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.intersect(&z2).unwrap(), z2);
        let a = lat(2, 2, &[2, 0, 0, 1]);
        let b = lat(2, 2, &[3, 0, 0, 1]);
        assert_eq!(a.intersect(&b).unwrap(), lat(2, 2, &[6, 0, 0, 1]));
        let half = Lattice::from_rows(&QMat::from_fn(2, 2, |i, j| {
            if i != j {
                Rat::zero()
            } else if i == 0 {
                Rat::new(1, 2)
            } else {
                Rat::one()
            }
        }));
        assert_eq!(z2.intersect(&half).unwrap(), z2);
        assert_eq!(z2.sum(&half).unwrap(), half);
        let swap_ker = z2
            .intersect_kernel(&QMat::from_i64(2, 2, &[1, 1, 1, 1]))
            .unwrap();
        assert_eq!(swap_ker, lat(1, 2, &[1, -1]));
    }

    #[test]
    fn canonical_denominator() {
        let l = Lattice::from_rows(&QMat::from_fn(1, 2, |_, _| Rat::new(2, 4)));
        assert_eq!(l.denominator(), &Int::from(2));
        assert!(l.contains(&[Rat::new(1, 2), Rat::new(1, 2)]));
        assert!(!l.contains(&[Rat::new(1, 4), Rat::new(1, 4)]));
        assert!(!l.contains(&[Rat::new(1, 2), Rat::zero()]));
    }

    fn full_rank(n: usize) -> impl Strategy<Value = Lattice> {
        (proptest::collection::vec(-5i64..6, n * n), 1i64..4).prop_filter_map(
            "singular",
            move |(v, d)| {
                let m = IMat::from_i64(n, n, &v);
                (det_int(&m).unwrap() != Int::ZERO)
                    .then(|| Lattice::from_rows(&m.to_qmat().scale(&Rat::new(1, d))))
            },
        )
    }

    proptest! {
        #[test]
        fn index_multiplicative(a in full_rank(3), b in full_rank(3), c in full_rank(3)) {
            let ab = a.index(&b).unwrap();
            let bc = b.index(&c).unwrap();
            prop_assert_eq!(&ab * &bc, a.index(&c).unwrap());
            prop_assert_eq!(&ab * &b.index(&a).unwrap(), Rat::one());
        }

        #[test]
        fn index_of_sublattice_is_quotient_order(a in full_rank(3), v in proptest::collection::vec(-4i64..5, 9)) {
            let t = IMat::from_i64(3, 3, &v);
            let det = det_int(&t).unwrap();
            prop_assume!(!det.is_zero());
            let sub = Lattice::from_rows(&t.to_qmat().mul(&a.gens()));
            prop_assert!(a.contains_lattice(&sub));
            let order: Int = crate::linalg::invariant_factors(&t).into_iter().product();
            prop_assert_eq!(a.index(&sub).unwrap(), Rat::from_int(order));
        }

        #[test]
        fn intersection_is_largest_common(a in full_rank(2), b in full_rank(2)) {
            let i = a.intersect(&b).unwrap();
            prop_assert!(a.contains_lattice(&i) && b.contains_lattice(&i));
            let s = a.sum(&b).unwrap();
            // (s:a)(s:b) = (s:i)(s:s) for full-rank lattices: #(a+b)/a = b/(a cap b).
            prop_assert_eq!(s.index(&a).unwrap() * s.index(&b).unwrap(), s.index(&i).unwrap());
        }
    }
}
