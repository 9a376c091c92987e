//! The graded module `L_m` on symbols `[x, g]`, its two differentials, the
//! conjugation, the extended map `phi_m`, and the homotopy operators built on
//! the `X_n` / `Y_n` bases.

use std::collections::HashMap;

use crate::abgroup::{abstract_index_check, det_on_theta, BoundedComplex, JComplex};
use crate::arith::{Int, Rat};
use crate::check::CheckRecord;
use crate::cyclotomic::{a_pf, b_pf};
use crate::distribution::{
    build_om, build_um, distribution_relations, euler_operator, predistribution_relations,
    r0_member, y_expansion, QZElem,
};
use crate::error::{Error, Result};
use crate::linalg::{det_exact, det_int, hnf_basis, inverse, solve_left, IMat, QMat};
use crate::ntheory::{divisors, gcd, omega, p_part, primes_dividing, squarefree_divisors};

/// `(-1)^i` when `p` is the `i`-th smallest prime factor of `g`, else 0.
pub fn epsilon(g: u64, p: u64) -> i64 {
    match primes_dividing(g).iter().position(|&q| q == p) {
        Some(i) if i % 2 == 0 => -1,
        Some(_) => 1,
        None => 0,
    }
}

/// Generator `[x, g]` of `L_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LSymbol {
    pub x: QZElem,
    pub g: u64,
}

/// Which differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Differential {
    D1,
    D2,
}

impl Differential {
    pub fn name(self) -> &'static str {
        match self {
            Differential::D1 => "d1",
            Differential::D2 => "d2",
        }
    }
}

/// Ordered symbols of `L_m` in each degree `-#Supp(g)`: by `g`, then by the
/// numerator `j` of `x = j g / m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    m: u64,
    r: usize,
    by_degree: Vec<Vec<u64>>,
    offsets: HashMap<u64, usize>,
}

impl GradedBasis {
    pub fn new(m: u64) -> GradedBasis {
        let r = omega(m) as usize;
        let mut by_degree = vec![Vec::new(); r + 1];
        for g in squarefree_divisors(m) {
            by_degree[r - omega(g) as usize].push(g);
        }
        let mut offsets = HashMap::new();
        for gs in &by_degree {
            let mut off = 0;
            for &g in gs {
                offsets.insert(g, off);
                off += (m / g) as usize;
            }
        }
        GradedBasis {
            m,
            r,
            by_degree,
            offsets,
        }
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn lo(&self) -> i32 {
        -(self.r as i32)
    }

    /// Squarefree `g` in degree `i`, ascending.
    pub fn gs(&self, i: i32) -> &[u64] {
        &self.by_degree[(i - self.lo()) as usize]
    }

    pub fn rank(&self, i: i32) -> usize {
        self.gs(i).iter().map(|&g| (self.m / g) as usize).sum()
    }

    /// Coordinate of `[j g/m, g]` within its degree.
    pub fn index(&self, g: u64, j: u64) -> usize {
        self.offsets[&g] + (j % (self.m / g)) as usize
    }

    pub fn symbols(&self, i: i32) -> Vec<LSymbol> {
        self.gs(i)
            .iter()
            .flat_map(|&g| {
                (0..self.m / g).map(move |j| LSymbol {
                    x: QZElem::new((j * g) as i64, self.m),
                    g,
                })
            })
            .collect()
    }

    /// Block-diagonal matrix over the `g`-blocks of degree `i`.
    fn block_diag<F: Fn(u64) -> QMat>(&self, i: i32, block: F) -> QMat {
        self.gs(i)
            .iter()
            .fold(QMat::zeros(0, 0), |acc, &g| acc.direct_sum(&block(g)))
    }
}

fn check_level(m: u64) -> Result<()> {
    if m == 0 || m % 4 == 2 {
        return Err(Error::InvalidLevel(m));
    }
    Ok(())
}

/// `(L_m, d)` with the conjugation `[x, g] -> [-x, g]`.
#[derive(Clone, Debug)]
pub struct LComplex {
    basis: GradedBasis,
    which: Differential,
    jc: JComplex,
}

impl LComplex {
    pub fn level(&self) -> u64 {
        self.basis.m
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn which(&self) -> Differential {
        self.which
    }

    pub fn complex(&self) -> &BoundedComplex {
        self.jc.complex()
    }

    pub fn jcomplex(&self) -> &JComplex {
        &self.jc
    }
}

/// Matrix of `d^i: L^i -> L^{i+1}`.
pub fn differential(basis: &GradedBasis, which: Differential, i: i32) -> IMat {
    let m = basis.m;
    let mut d = IMat::zeros(basis.rank(i + 1), basis.rank(i));
    for &g in basis.gs(i) {
        let h = m / g;
        for j in 0..h {
            let col = basis.index(g, j);
            for p in primes_dividing(g) {
                let e = Int::from(epsilon(g, p));
                let g2 = g / p;
                if which == Differential::D1 {
                    let row = basis.index(g2, j * p);
                    d[(row, col)] = &d[(row, col)] + &e;
                }
                for t in 0..p {
                    let row = basis.index(g2, j + t * h);
                    d[(row, col)] = &d[(row, col)] - &e;
                }
            }
        }
    }
    d
}

/// Conjugation on degree `i`.
pub fn conjugation(basis: &GradedBasis, i: i32) -> IMat {
    let n = basis.rank(i);
    let mut c = IMat::zeros(n, n);
    for &g in basis.gs(i) {
        let h = basis.m / g;
        for j in 0..h {
            c[(basis.index(g, (h - j) % h), basis.index(g, j))] = Int::ONE;
        }
    }
    c
}

/// `S_p: [x, g] -> [p x, g]` on degree `i`.
pub fn multiplication_operator(basis: &GradedBasis, p: u64, i: i32) -> IMat {
    let n = basis.rank(i);
    let mut s = IMat::zeros(n, n);
    for &g in basis.gs(i) {
        let h = basis.m / g;
        for j in 0..h {
            s[(basis.index(g, p * j), basis.index(g, j))] = Int::ONE;
        }
    }
    s
}

pub fn build_l(m: u64, which: Differential) -> Result<LComplex> {
    check_level(m)?;
    let basis = GradedBasis::new(m);
    let lo = basis.lo();
    let ranks = (lo..=0).map(|i| basis.rank(i)).collect();
    let diffs = (lo..0).map(|i| differential(&basis, which, i)).collect();
    let complex = BoundedComplex::new(lo, ranks, diffs)?;
    let c = (lo..=0).map(|i| conjugation(&basis, i)).collect();
    let jc = JComplex::new(complex, c)?;
    Ok(LComplex { basis, which, jc })
}

fn primes_off(m: u64, g: u64) -> Vec<u64> {
    primes_dividing(m)
        .into_iter()
        .filter(|p| !g.is_multiple_of(*p))
        .collect()
}

/// `phi_m` on the `g`-block: `prod_{p | m, p !| g} (I - S_p/p)^{-1}`.
pub fn phi_block(m: u64, g: u64) -> QMat {
    inverse(&euler_operator(&primes_off(m, g), m / g)).expect("resolvent is invertible")
}

/// `phi_m` in every degree `lo..=0`.
pub fn phi_l(m: u64) -> Result<Vec<QMat>> {
    check_level(m)?;
    let basis = GradedBasis::new(m);
    Ok((basis.lo()..=0)
        .map(|i| basis.block_diag(i, |g| phi_block(m, g)))
        .collect())
}

/// `d2 phi = phi d1` in every degree.
pub fn phi_intertwining_check(m: u64) -> CheckRecord {
    let run = || -> Result<usize> {
        let basis = GradedBasis::new(m);
        let phi = phi_l(m)?;
        let lo = basis.lo();
        let mut bad = 0;
        for i in lo..0 {
            let d1 = differential(&basis, Differential::D1, i).to_qmat();
            let d2 = differential(&basis, Differential::D2, i).to_qmat();
            let k = (i - lo) as usize;
            if d2.mul(&phi[k]) != phi[k + 1].mul(&d1) {
                bad += 1;
            }
        }
        Ok(bad)
    };
    match run() {
        Ok(bad) => CheckRecord::new(
            "phi_intertwining",
            Some(m),
            "degrees with d2 phi != phi d1",
            &0usize,
            &bad,
        ),
        Err(e) => CheckRecord::error("phi_intertwining", Some(m), "", &e),
    }
}

/// `H^i = 0` for `i < 0`, and `H^0` equals `U_m` (d1) or `O_m` (d2), with the
/// image of `d^{-1}` equal to the defining relation lattice.
pub fn acyclicity_and_h0(m: u64, which: Differential) -> CheckRecord {
    let name = format!("acyclicity_h0_{}", which.name());
    let run = || -> Result<(bool, String)> {
        let l = build_l(m, which)?;
        let cx = l.complex();
        let mut notes = Vec::new();
        for i in cx.lo()..0 {
            let h = cx.cohomology(i)?;
            if !h.is_trivial() {
                notes.push(format!("H^{i} = {h}"));
            }
        }
        let (expected, rel) = match which {
            Differential::D1 => (build_um(m), distribution_relations(m)),
            Differential::D2 => (build_om(m), predistribution_relations(m)),
        };
        let h0 = cx.cohomology(0)?;
        if h0 != expected {
            notes.push(format!("H^0 = {h0}, expected {expected}"));
        }
        if hnf_basis(&cx.diff(-1).transpose()) != hnf_basis(&rel) {
            notes.push("image of d^-1 differs from the relation lattice".into());
        }
        Ok((
            notes.is_empty(),
            if notes.is_empty() {
                format!("H^0 = {h0}")
            } else {
                notes.join("; ")
            },
        ))
    };
    match run() {
        Ok((pass, computed)) => CheckRecord::with_flag(
            &name,
            Some(m),
            "",
            "acyclic, H^0 lattice-exact",
            computed,
            pass,
        ),
        Err(e) => CheckRecord::error(&name, Some(m), "", &e),
    }
}

/// `prod_{p | m} a_{p, m_p}`, `m_p` the prime-to-`p` part of `m`.
pub fn a_product(m: u64) -> Result<Rat> {
    primes_dividing(m)
        .into_iter()
        .map(|p| a_pf(p, m / p_part(m, p)))
        .product()
}

/// `prod_{p | m} b_{p, m_p}`.
pub fn b_product(m: u64) -> Result<Rat> {
    primes_dividing(m)
        .into_iter()
        .map(|p| b_pf(p, m / p_part(m, p)))
        .product()
}

fn alternate(acc: Rat, d: Rat, i: i32) -> Rat {
    acc * d.pow(if i % 2 == 0 { 1 } else { -1 })
}

/// `prod_i det(phi_m on V^i)^{(-1)^i}`, evaluated block by block.
pub fn det_phi_product(m: u64) -> Result<Rat> {
    check_level(m)?;
    let basis = GradedBasis::new(m);
    let mut acc = Rat::one();
    for i in basis.lo()..=0 {
        for &g in basis.gs(i) {
            let d = det_exact(&euler_operator(&primes_off(m, g), m / g))?.recip();
            acc = alternate(acc, d, i);
        }
    }
    Ok(acc)
}

/// Rows `[j/h] - [-j/h]` for `0 < j < h/2`: the minus space of `Z^h` under `j -> -j`.
pub fn minus_basis(h: u64) -> IMat {
    let rows: Vec<Vec<Int>> = (1..h)
        .filter(|&j| 2 * j < h)
        .map(|j| {
            let mut v = vec![Int::ZERO; h as usize];
            v[j as usize] = Int::ONE;
            v[(h - j) as usize] = Int::from(-1);
            v
        })
        .collect();
    IMat::from_rows(h as usize, rows)
}

/// Determinant of `phi` (column convention) on the span of the rows of `k`,
/// assumed `phi`-stable.
fn det_on_rows(phi: &QMat, k: &IMat) -> Result<Rat> {
    if k.rows() == 0 {
        return Ok(Rat::one());
    }
    let kq = k.to_qmat();
    let mt = solve_left(&kq, &kq.mul(&phi.transpose()))?
        .ok_or_else(|| Error::HypothesisFailed("minus space not preserved".into()))?;
    det_exact(&mt)
}

/// `prod_i det(phi_m on the minus part of V^i)^{(-1)^i}`.
pub fn det_phi_theta_product(m: u64) -> Result<Rat> {
    check_level(m)?;
    let basis = GradedBasis::new(m);
    let mut acc = Rat::one();
    for i in basis.lo()..=0 {
        for &g in basis.gs(i) {
            let d = det_on_rows(&phi_block(m, g), &minus_basis(m / g))?;
            acc = alternate(acc, d, i);
        }
    }
    Ok(acc)
}

pub fn det_phi_check(m: u64) -> CheckRecord {
    match det_phi_product(m).and_then(|l| Ok((l, a_product(m)?))) {
        Ok((lhs, rhs)) => CheckRecord::new("det_phi", Some(m), "prod_p a_{p,m_p}", &rhs, &lhs),
        Err(e) => CheckRecord::error("det_phi", Some(m), "", &e),
    }
}

pub fn det_phi_theta_check(m: u64) -> CheckRecord {
    match det_phi_theta_product(m).and_then(|l| Ok((l, b_product(m)?))) {
        Ok((lhs, rhs)) => {
            CheckRecord::new("det_phi_theta", Some(m), "prod_p b_{p,m_p}", &rhs, &lhs)
        }
        Err(e) => CheckRecord::error("det_phi_theta", Some(m), "", &e),
    }
}

/// Full graded determinants, without the block decomposition.
pub fn det_phi_graded(m: u64) -> Result<(Rat, Rat)> {
    let phi = phi_l(m)?;
    let basis = GradedBasis::new(m);
    let (mut full, mut minus) = (Rat::one(), Rat::one());
    for (k, i) in (basis.lo()..=0).enumerate() {
        full = alternate(full, det_exact(&phi[k])?, i);
        minus = alternate(minus, det_on_theta(&phi[k], &conjugation(&basis, i))?, i);
    }
    Ok((full, minus))
}

/// Both determinant products from the full graded matrices.
pub fn det_phi_graded_check(m: u64) -> Vec<CheckRecord> {
    match det_phi_graded(m).and_then(|d| Ok((d, a_product(m)?, b_product(m)?))) {
        Ok(((full, minus), a, b)) => vec![
            CheckRecord::new("det_phi_graded", Some(m), "prod_p a_{p,m_p}", &a, &full),
            CheckRecord::new(
                "det_phi_theta_graded",
                Some(m),
                "prod_p b_{p,m_p}",
                &b,
                &minus,
            ),
        ],
        Err(e) => vec![CheckRecord::error("det_phi_graded", Some(m), "", &e)],
    }
}

/// Abstract index formula for `phi_m: L(d1) -> L(d2)`.
pub fn abstract_index_l_check(m: u64) -> CheckRecord {
    let run = || -> Result<CheckRecord> {
        let (l1, l2) = (build_l(m, Differential::D1)?, build_l(m, Differential::D2)?);
        Ok(abstract_index_check(
            Some(m),
            l1.jcomplex(),
            l2.jcomplex(),
            &phi_l(m)?,
        ))
    };
    run().unwrap_or_else(|e| CheckRecord::error("abstract_index_formula", Some(m), "", &e))
}

/// Label `X_n[a, g]` (or `Y_n[a, g]`) of the adapted basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub g: u64,
    pub n: u64,
    pub a: QZElem,
}

/// Sparse integer operator on the total graded space; column `k` lists its
/// nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp {
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> SparseOp {
        SparseOp {
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> SparseOp {
        SparseOp {
            cols: (0..dim).map(|k| vec![(k, 1)]).collect(),
        }
    }

    fn push(&mut self, row: usize, col: usize, v: i64) {
        self.cols[col].push((row, v));
    }

    fn normalize(mut self) -> SparseOp {
        for col in &mut self.cols {
            col.sort_unstable();
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
        self
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseOp) -> SparseOp {
        let mut out = SparseOp::zero(self.cols.len());
        for (k, col) in other.cols.iter().enumerate() {
            for &(mid, v) in col {
                for &(r, w) in &self.cols[mid] {
                    out.push(r, k, v * w);
                }
            }
        }
        out.normalize()
    }

    pub fn add(&self, other: &SparseOp) -> SparseOp {
        let mut out = self.clone();
        for (k, col) in other.cols.iter().enumerate() {
            out.cols[k].extend_from_slice(col);
        }
        out.normalize()
    }

    pub fn sub(&self, other: &SparseOp) -> SparseOp {
        let neg = SparseOp {
            cols: other
                .cols
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, -v)).collect())
                .collect(),
        };
        self.add(&neg)
    }
}

/// The adapted basis of `L_m` built from `X_n` (paired with `d2`) or `Y_n`
/// (paired with `d1`), and the per-prime operators `d^p`, `T^p`, `pi^p` on it.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    m: u64,
    which: Differential,
    graded: GradedBasis,
    labels: Vec<Vec<BasisLabel>>,
    index: HashMap<BasisLabel, usize>,
}

impl AdaptedBasis {
    pub fn new(m: u64, which: Differential) -> Result<AdaptedBasis> {
        check_level(m)?;
        let graded = GradedBasis::new(m);
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut total = 0;
        for i in graded.lo()..=0 {
            let mut deg = Vec::new();
            for &g in graded.gs(i) {
                for n in divisors(m / g) {
                    for k in 0..m / (n * g) {
                        let a = QZElem::new((k * n * g) as i64, m);
                        if r0_member(a) {
                            deg.push(BasisLabel { g, n, a });
                        }
                    }
                }
            }
            for l in &deg {
                index.insert(*l, total);
                total += 1;
            }
            labels.push(deg);
        }
        Ok(AdaptedBasis {
            m,
            which,
            graded,
            labels,
            index,
        })
    }

    pub fn labels(&self, i: i32) -> &[BasisLabel] {
        &self.labels[(i - self.graded.lo()) as usize]
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn offset(&self, i: i32) -> usize {
        (self.graded.lo()..i).map(|k| self.labels(k).len()).sum()
    }

    /// Columns are the basis vectors of degree `i` in symbol coordinates.
    pub fn matrix(&self, i: i32) -> IMat {
        let labels = self.labels(i);
        let mut b = IMat::zeros(self.graded.rank(i), labels.len());
        for (col, l) in labels.iter().enumerate() {
            let h = self.m / l.g;
            let k = l.a.at_level(h).expect("label inside its block");
            let terms = match self.which {
                Differential::D2 => vec![(l.n, 1i64)],
                Differential::D1 => y_expansion(l.n),
            };
            for (ell, c) in terms {
                // X_ell[a] with a = k/h: preimages j = k/ell + t h/ell.
                let base = k / ell;
                for t in 0..ell {
                    let row = self.graded.index(l.g, base + t * (h / ell));
                    b[(row, col)] = &b[(row, col)] + &Int::from(c);
                }
            }
        }
        b
    }

    fn sign(&self) -> i64 {
        match self.which {
            Differential::D1 => 1,
            Differential::D2 => -1,
        }
    }

    pub fn d_p(&self, p: u64) -> SparseOp {
        let mut op = SparseOp::zero(self.dim());
        for (l, &k) in &self.index {
            if l.g % p == 0 {
                let t = BasisLabel {
                    g: l.g / p,
                    n: l.n * p,
                    a: l.a,
                };
                op.push(self.index[&t], k, self.sign() * epsilon(l.g, p));
            }
        }
        op.normalize()
    }

    pub fn t_p(&self, p: u64) -> SparseOp {
        let mut op = SparseOp::zero(self.dim());
        for (l, &k) in &self.index {
            if l.g % p != 0 && l.n % p == 0 {
                let t = BasisLabel {
                    g: l.g * p,
                    n: l.n / p,
                    a: l.a,
                };
                op.push(self.index[&t], k, self.sign() * epsilon(l.g * p, p));
            }
        }
        op.normalize()
    }

    pub fn pi_p(&self, p: u64) -> SparseOp {
        let mut op = SparseOp::zero(self.dim());
        for (l, &k) in &self.index {
            if gcd(p, l.n * l.g) == 1 {
                op.push(k, k, 1);
            }
        }
        op.normalize()
    }

    /// `d_m = sum_p d^p`.
    pub fn d_m(&self) -> SparseOp {
        primes_dividing(self.m)
            .iter()
            .fold(SparseOp::zero(self.dim()), |acc, &p| acc.add(&self.d_p(p)))
    }

    /// `T_m = sum_p (prod_{q < p} pi^q) T^p`.
    pub fn t_m(&self) -> SparseOp {
        let mut acc = SparseOp::zero(self.dim());
        let mut prefix = SparseOp::identity(self.dim());
        for p in primes_dividing(self.m) {
            acc = acc.add(&prefix.compose(&self.t_p(p)));
            prefix = prefix.compose(&self.pi_p(p));
        }
        acc
    }

    /// `pi_m = prod_p pi^p`.
    pub fn pi_m(&self) -> SparseOp {
        primes_dividing(self.m)
            .iter()
            .fold(SparseOp::identity(self.dim()), |acc, &p| {
                acc.compose(&self.pi_p(p))
            })
    }

    /// `d` of the complex written in this basis, degree `i` block.
    fn d_block(&self, d: &SparseOp, i: i32) -> IMat {
        let (src, dst) = (self.offset(i), self.offset(i + 1));
        let mut out = IMat::zeros(self.labels(i + 1).len(), self.labels(i).len());
        for c in 0..self.labels(i).len() {
            for &(r, v) in &d.cols[src + c] {
                out[(r - dst, c)] = Int::from(v);
            }
        }
        out
    }
}

/// Failures of the homotopy identities, as readable strings.
pub fn homotopy_failures(m: u64, which: Differential) -> Result<Vec<String>> {
    let ab = AdaptedBasis::new(m, which)?;
    let basis = &ab.graded;
    let mut bad = Vec::new();
    for i in basis.lo()..=0 {
        let b = ab.matrix(i);
        if !b.is_square() || det_int(&b)?.abs() != Int::ONE {
            bad.push(format!("basis of degree {i} not unimodular"));
        }
    }
    let d = ab.d_m();
    for i in basis.lo()..0 {
        let std = differential(basis, which, i);
        if std.mul(&ab.matrix(i)) != ab.matrix(i + 1).mul(&ab.d_block(&d, i)) {
            bad.push(format!(
                "differential differs from its adapted form at degree {i}"
            ));
        }
    }
    let primes = primes_dividing(m);
    let id = SparseOp::identity(ab.dim());
    for &p in &primes {
        let (dp, pp) = (ab.d_p(p), ab.pi_p(p));
        if pp.compose(&pp) != pp {
            bad.push(format!("pi^{p} not idempotent"));
        }
        for &q in &primes {
            let tq = ab.t_p(q);
            let anti = dp.compose(&tq).add(&tq.compose(&dp));
            let want = if p == q {
                id.sub(&pp)
            } else {
                SparseOp::zero(ab.dim())
            };
            if anti != want {
                bad.push(format!("d^{p} T^{q} + T^{q} d^{p}"));
            }
            let pq = ab.pi_p(q);
            if pp.compose(&pq) != pq.compose(&pp) {
                bad.push(format!("pi^{p} pi^{q} do not commute"));
            }
        }
    }
    let (t, pi) = (ab.t_m(), ab.pi_m());
    if d.compose(&t).add(&t.compose(&d)) != id.sub(&pi) {
        bad.push("dT + Td != 1 - pi".into());
    }
    let mut expect_pi = SparseOp::zero(ab.dim());
    for (l, &k) in &ab.index {
        if l.n == 1 && l.g == 1 {
            expect_pi.push(k, k, 1);
        }
    }
    if pi != expect_pi.normalize() {
        bad.push("pi_m is not the projection onto n = g = 1".into());
    }
    Ok(bad)
}

pub fn homotopy_check(m: u64, which: Differential) -> CheckRecord {
    let name = format!("homotopy_{}", which.name());
    match homotopy_failures(m, which) {
        Ok(bad) => CheckRecord::with_flag(
            &name,
            Some(m),
            "",
            "all identities hold",
            if bad.is_empty() {
                "all identities hold".to_string()
            } else {
                bad.join("; ")
            },
            bad.is_empty(),
        ),
        Err(e) => CheckRecord::error(&name, Some(m), "", &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(epsilon(6, 2), -1);
        assert_eq!(epsilon(6, 3), 1);
        assert_eq!(epsilon(5, 3), 0);
        assert_eq!(epsilon(30, 5), -1);
    }

    #[test]
    fn prime_level_differential() {
        let l = build_l(5, Differential::D1).unwrap();
        assert_eq!(l.complex().lo(), -1);
        let d = l.complex().diff(-1);
        // [x, 5] has x = 0 only; its image is eps(5,5) ([0] - sum_b [b]).
        let col: Vec<i64> = d.col(0).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(col, vec![0, 1, 1, 1, 1]);
        let d2 = build_l(5, Differential::D2).unwrap().complex().diff(-1);
        assert_eq!(d2.col(0).iter().filter(|x| x.is_one()).count(), 5);
    }

    #[test]
    fn dimensions() {
        for m in [12u64, 60] {
            let b = GradedBasis::new(m);
            assert_eq!(b.rank(0), m as usize);
            let expect: u64 = primes_dividing(m).iter().map(|p| m / p).sum();
            assert_eq!(b.rank(-1), expect as usize);
            for w in [Differential::D1, Differential::D2] {
                assert!(build_l(m, w).is_ok());
            }
        }
        assert!(matches!(
            build_l(6, Differential::D1),
            Err(Error::InvalidLevel(6))
        ));
    }

    #[test]
    fn phi_blocks() {
        let phi = phi_l(12).unwrap();
        assert_eq!(phi[2], crate::distribution::phi_matrix(12));
        assert!(phi[0].is_identity());
        assert!(phi_intertwining_check(12).pass);
        assert!(phi_intertwining_check(60).pass);
    }

    #[test]
    fn cohomology_small() {
        for m in [1u64, 4, 5, 12] {
            assert!(acyclicity_and_h0(m, Differential::D1).pass, "{m}");
            assert!(acyclicity_and_h0(m, Differential::D2).pass, "{m}");
        }
    }

    #[test]
    fn homotopies() {
        for m in [1u64, 3, 4, 12, 60] {
            for w in [Differential::D1, Differential::D2] {
                let r = homotopy_check(m, w);
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(det_phi_product(4).unwrap(), Rat::from(2));
        assert_eq!(det_phi_product(7).unwrap(), Rat::new(7, 6));
        for m in [4u64, 5, 7, 12, 15, 20] {
            assert!(det_phi_check(m).pass, "{m}");
            assert!(det_phi_theta_check(m).pass, "{m}");
        }
    }

    #[test]
    fn blockwise_equals_graded() {
        for m in [4u64, 12, 15] {
            let (full, minus) = det_phi_graded(m).unwrap();
            assert_eq!(full, det_phi_product(m).unwrap());
            assert_eq!(minus, det_phi_theta_product(m).unwrap());
        }
    }

    #[test]
    fn minus_basis_is_saturated_kernel() {
        for h in [1u64, 2, 4, 5, 6] {
            let mut c = IMat::zeros(h as usize, h as usize);
            for j in 0..h {
                c[(((h - j) % h) as usize, j as usize)] = Int::ONE;
            }
            let k = crate::abgroup::theta_fixed_basis(&c).unwrap();
            assert_eq!(hnf_basis(&minus_basis(h)), k);
        }
    }
}
