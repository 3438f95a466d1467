//! The standard integral symplectic lattice `(Z^{2g}, ω)` with
//! `ω = Σ dx_{2i} ∧ dx_{2i+1}`.
//!
//! Sublattices are stored as lists of basis vectors; their canonical
//! representative is the Hermite normal form of that list. All arithmetic is
//! exact.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{bezout, gcd_all, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::{self, echelon, hnf_basis, integer_kernel, mul_int, mul_vec_int, pfaffian, Matrix};

/// `ω(u, v) = Σ_i u_{2i} v_{2i+1} - u_{2i+1} v_{2i}` for any ring of coefficients.
pub fn pairing<T>(u: &[T], v: &[T]) -> T
where
    T: Zero + Add<Output = T> + Sub<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let mut acc = T::zero();
    for i in 0..u.len() / 2 {
        acc = acc + &u[2 * i] * &v[2 * i + 1] - &u[2 * i + 1] * &v[2 * i];
    }
    acc
}

pub fn standard_gram(genus: usize) -> Result<Matrix<Int>> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let n = 2 * genus;
    let mut j = vec![vec![Int::zero(); n]; n];
    for i in 0..genus {
        j[2 * i][2 * i + 1] = Int::one();
        j[2 * i + 1][2 * i] = -Int::one();
    }
    Ok(j)
}

/// Ambient lattice together with its alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    genus: usize,
    gram: Matrix<Int>,
}

impl SymplecticSpace {
    pub fn standard(genus: usize) -> Result<Self> {
        Ok(SymplecticSpace { genus, gram: standard_gram(genus)? })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn gram(&self) -> &Matrix<Int> {
        &self.gram
    }

    pub fn form(&self, u: &[Int], v: &[Int]) -> Int {
        u.iter().zip(mul_vec_int(&self.gram, v)).fold(Int::zero(), |a, (x, y)| a + x * y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn content(&self) -> Int {
        gcd_all(&self.0)
    }

    pub fn is_indivisible(&self) -> Result<bool> {
        if self.0.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(self.content().is_one())
    }
}

pub fn basis_vector(dim: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); dim];
    v[i] = Int::one();
    v
}

/// A full-rank finitely generated subgroup of `Z^{2g}`.
#[derive(Clone, Debug)]
pub struct Sublattice {
    genus: usize,
    basis: Matrix<Int>,
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus && self.hnf() == other.hnf()
    }
}

impl Eq for Sublattice {}

impl Sublattice {
    /// Validates lengths and linear independence of `basis`.
    pub fn new(genus: usize, basis: Matrix<Int>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        for v in &basis {
            if v.len() != 2 * genus {
                return Err(Error::DimensionMismatch { expected: 2 * genus, found: v.len() });
            }
        }
        if echelon(&basis).rank != basis.len() {
            return Err(Error::RankDeficient);
        }
        Ok(Sublattice { genus, basis })
    }

    /// Infers the genus from the vector length.
    pub fn from_vectors(basis: Matrix<Int>) -> Result<Self> {
        let len = basis.first().map(Vec::len).ok_or(Error::RankDeficient)?;
        if len == 0 || len % 2 == 1 {
            return Err(Error::DimensionMismatch { expected: len + len % 2, found: len });
        }
        Sublattice::new(len / 2, basis)
    }

    pub fn full(genus: usize) -> Result<Self> {
        Sublattice::new(genus, matrix::identity_int(2 * genus))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix<Int> {
        &self.basis
    }

    /// Canonical representative: Hermite normal form of the basis list.
    pub fn hnf(&self) -> Matrix<Int> {
        hnf_basis(&self.basis)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        hnf_basis(&rows) == self.hnf()
    }

    /// Intersection of the rational span with `Z^{2g}`.
    pub fn saturate(&self) -> Sublattice {
        let n = 2 * self.genus;
        let annihilator = integer_kernel(&self.basis, n);
        let sat = integer_kernel(&annihilator, n);
        Sublattice { genus: self.genus, basis: sat }
    }

    pub fn is_complete(&self) -> bool {
        self.saturate().hnf() == self.hnf()
    }

    /// Gram matrix `ω(b_i, b_j)` of the restricted form.
    pub fn gram(&self) -> Matrix<Int> {
        self.basis
            .iter()
            .map(|u| self.basis.iter().map(|v| pairing(u, v)).collect())
            .collect()
    }

    /// `|Pf|` of the restricted form; basis independent.
    pub fn determinant(&self) -> Result<Int> {
        if self.rank() % 2 == 1 {
            return Err(Error::NotSymplectic);
        }
        let pf = pfaffian(&matrix::to_rat(&self.gram()));
        if pf.is_zero() {
            return Err(Error::NotSymplectic);
        }
        Ok(pf.to_integer().abs())
    }

    pub fn alternating_normal_form(&self) -> Result<AlternatingNormalForm> {
        AlternatingNormalForm::compute(self)
    }

    pub fn transformed(&self, a: &SpMatrix) -> Sublattice {
        Sublattice {
            genus: self.genus,
            basis: self.basis.iter().map(|v| a.apply(v)).collect(),
        }
    }
}

/// Integral basis change bringing the restricted form to blocks `d_i J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingNormalForm {
    /// `d_1 | d_2 | ... | d_k`, all positive.
    pub divisors: Vec<Int>,
    /// New basis `(x_1, y_1, ..., x_k, y_k)` with `ω(x_i, y_i) = d_i`, in ambient coordinates.
    pub basis: Matrix<Int>,
    /// Unimodular `P` with `basis = P * old_basis`.
    pub change: Matrix<Int>,
}

impl AlternatingNormalForm {
    fn compute(s: &Sublattice) -> Result<Self> {
        let r = s.rank();
        if r % 2 == 1 {
            return Err(Error::NotSymplectic);
        }
        let mut red = CongruenceReducer { gram: s.gram(), change: matrix::identity_int(r) };
        let mut divisors = Vec::with_capacity(r / 2);
        let mut k = 0;
        while k < r {
            divisors.push(red.reduce_block(k)?);
            k += 2;
        }
        let basis = mul_int(&red.change, &s.basis);
        Ok(AlternatingNormalForm { divisors, basis, change: red.change })
    }

    pub fn determinant(&self) -> Int {
        self.divisors.iter().fold(Int::one(), |a, d| a * d)
    }
}

/// Simultaneous row/column operations on an alternating integer Gram matrix.
struct CongruenceReducer {
    gram: Matrix<Int>,
    change: Matrix<Int>,
}

impl CongruenceReducer {
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.gram.swap(i, j);
        for row in self.gram.iter_mut() {
            row.swap(i, j);
        }
        self.change.swap(i, j);
    }

    /// `b_i += c b_j`.
    fn add(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let n = self.gram.len();
        for col in 0..n {
            let t = &self.gram[j][col] * c;
            self.gram[i][col] += t;
        }
        for row in self.gram.iter_mut() {
            let t = &row[j] * c;
            row[i] += t;
        }
        let src = self.change[j].clone();
        for (x, y) in self.change[i].iter_mut().zip(&src) {
            *x += c * y;
        }
    }

    /// Clears rows `k`, `k+1` outside the pivot block and returns the block divisor.
    fn reduce_block(&mut self, k: usize) -> Result<Int> {
        let n = self.gram.len();
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in i + 1..n {
                    let x = &self.gram[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(a, b)| x.abs() < self.gram[a][b].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (i, j) = best.ok_or(Error::NotSymplectic)?;
            self.swap(k, i);
            let j = if j == k { i } else { j };
            self.swap(k + 1, j);

            let p = self.gram[k][k + 1].clone();
            let mut clean = true;
            for m in k + 2..n {
                let q = self.gram[k][m].div_floor(&p);
                self.add(m, k + 1, &-q);
                let q = self.gram[k + 1][m].div_floor(&p);
                self.add(m, k, &q);
                if !self.gram[k][m].is_zero() || !self.gram[k + 1][m].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (k + 2..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .find(|&(a, b)| !self.gram[a][b].is_multiple_of(&p));
            if let Some((a, _)) = offending {
                self.add(k, a, &Int::one());
                continue;
            }
            if p.is_negative() {
                self.swap(k, k + 1);
            }
            return Ok(self.gram[k][k + 1].clone());
        }
    }
}

/// Integral `2g x 2g` matrix with `AᵀJA = J`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix {
    entries: Matrix<Int>,
}

impl SpMatrix {
    pub fn new(entries: Matrix<Int>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::DimensionMismatch { expected: n + n % 2, found: n });
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: entries[0].len() });
        }
        if !is_symplectic(&entries) {
            return Err(Error::NotSymplectic);
        }
        Ok(SpMatrix { entries })
    }

    pub fn identity(genus: usize) -> Self {
        SpMatrix { entries: matrix::identity_int(2 * genus) }
    }

    /// Matrix whose columns are the given vectors; checks the symplectic relation.
    pub fn from_columns(cols: &[Vec<Int>]) -> Result<Self> {
        SpMatrix::new(matrix::transpose(cols))
    }

    pub fn genus(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &Matrix<Int> {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix<Int> {
        self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        mul_vec_int(&self.entries, v)
    }

    pub fn compose(&self, other: &SpMatrix) -> SpMatrix {
        SpMatrix { entries: mul_int(&self.entries, &other.entries) }
    }

    /// `A^{-1} = -J Aᵀ J`.
    pub fn inverse(&self) -> SpMatrix {
        let n = self.entries.len();
        let mut inv = vec![vec![Int::zero(); n]; n];
        let partner = |i: usize| if i.is_multiple_of(2) { (i + 1, Int::one()) } else { (i - 1, -Int::one()) };
        for (i, row) in inv.iter_mut().enumerate() {
            let (pi, si) = partner(i);
            for (j, x) in row.iter_mut().enumerate() {
                let (pj, sj) = partner(j);
                // (J Aᵀ J)_{ij} = J_{i,pi} A_{pj,pi} J_{pj,j}
                let jpj = -sj.clone();
                *x = -(&si * &self.entries[pj][pi] * &jpj);
            }
        }
        SpMatrix { entries: inv }
    }

    /// Embeds a matrix on the last `2h` coordinates, identity on the first `2(g-h)`.
    pub fn embed(&self, genus: usize) -> SpMatrix {
        let n = 2 * genus;
        let m = self.entries.len();
        let off = n - m;
        let mut e = matrix::identity_int(n);
        for i in 0..m {
            for j in 0..m {
                e[off + i][off + j] = self.entries[i][j].clone();
            }
        }
        SpMatrix { entries: e }
    }
}

pub fn is_symplectic(a: &[Vec<Int>]) -> bool {
    let n = a.len();
    let cols = matrix::transpose(a);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if i % 2 == 0 && j == i + 1 {
                Int::one()
            } else if i % 2 == 1 && j + 1 == i {
                -Int::one()
            } else {
                Int::zero()
            };
            pairing(&cols[i], &cols[j]) == expected
        })
    })
}

/// Symplectic basis `(x, w, ...)` of a lattice on which `ω` is unimodular,
/// starting from `first` when given.
fn unimodular_symplectic_basis(mut lattice: Matrix<Int>, mut first: Option<Vec<Int>>) -> Result<Matrix<Int>> {
    let mut out = Vec::with_capacity(lattice.len());
    while !lattice.is_empty() {
        let x = first.take().unwrap_or_else(|| lattice[0].clone());
        let coeffs: Vec<Int> = lattice.iter().map(|z| pairing(&x, z)).collect();
        let (g, y) = bezout(&coeffs);
        if !g.is_one() {
            return Err(Error::NotPrimitive);
        }
        let mut w = vec![Int::zero(); x.len()];
        for (z, c) in lattice.iter().zip(&y) {
            for (wi, zi) in w.iter_mut().zip(z) {
                *wi += c * zi;
            }
        }
        // z -> z - ω(x,z) w + ω(w,z) x lands in the ω-complement of span{x, w}
        let projected: Matrix<Int> = lattice
            .iter()
            .map(|z| {
                let a = pairing(&x, z);
                let b = pairing(&w, z);
                z.iter().zip(&w).zip(&x).map(|((zi, wi), xi)| zi - &a * wi + &b * xi).collect()
            })
            .collect();
        out.push(x);
        out.push(w);
        lattice = hnf_basis(&projected);
    }
    Ok(out)
}

/// `A ∈ Sp(2g, Z)` with `A e_0 = v`.
pub fn extend_to_symplectic_basis(v: &LatticeVector) -> Result<SpMatrix> {
    let n = v.0.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::DimensionMismatch { expected: n + n % 2, found: n });
    }
    if !v.is_indivisible()? {
        return Err(Error::NotPrimitive);
    }
    let cols = unimodular_symplectic_basis(matrix::identity_int(n), Some(v.0.clone()))?;
    SpMatrix::from_columns(&cols)
}

/// `e_0, f_0` when `d = 1`, otherwise `e_0, d f_0 + e_1`, in genus `g`.
pub fn canonical_rank2(genus: usize, d: &Int) -> Result<Sublattice> {
    let n = 2 * genus;
    let e0 = basis_vector(n, 0);
    let mut y = vec![Int::zero(); n];
    y[1] = d.clone();
    if !d.is_one() {
        if genus < 2 {
            return Err(Error::NotComplete);
        }
        y[2] = Int::one();
    }
    Sublattice::new(genus, vec![e0, y])
}

/// `e_0, f_0, e_1, f_1` when `d = 1`, otherwise `e_0, f_0, e_1, d f_1 + e_2`.
pub fn canonical_rank4(genus: usize, d: &Int) -> Result<Sublattice> {
    if genus < 2 {
        return Err(Error::UnsupportedRank(4));
    }
    let n = 2 * genus;
    let mut y = vec![Int::zero(); n];
    y[3] = d.clone();
    if !d.is_one() {
        if genus < 3 {
            return Err(Error::NotComplete);
        }
        y[4] = Int::one();
    }
    Sublattice::new(genus, vec![basis_vector(n, 0), basis_vector(n, 1), basis_vector(n, 2), y])
}

/// Transvection-like element fixing `e_0`, sending `f_0 -> f_0 + x` and
/// `w -> w + ω(x, w) e_0` on the complement; `x` must vanish on the first block.
fn shear_first_block(genus: usize, x: &[Int]) -> SpMatrix {
    let n = 2 * genus;
    let mut e = matrix::identity_int(n);
    for i in 2..n {
        e[i][1] = x[i].clone();
    }
    for j in 2..n {
        // ω(x, e_j)
        let w = if j % 2 == 1 { x[j - 1].clone() } else { -x[j + 1].clone() };
        e[0][j] = w;
    }
    SpMatrix { entries: e }
}

/// Shifts `u` by a multiple of `d` to a primitive vector; requires
/// `gcd(content(u), d) = 1` and at least two coordinates.
fn primitive_lift(u: &[Int], d: &Int) -> Result<Vec<Int>> {
    if u.len() < 2 {
        return Err(Error::Internal("primitive lift needs two coordinates"));
    }
    if !gcd_all(u).gcd(d).is_one() {
        return Err(Error::NotComplete);
    }
    let mut z = u.to_vec();
    if z[1..].iter().all(Zero::is_zero) {
        z[1] += d;
    }
    let b = gcd_all(&z[1..]);
    let a = z[0].clone();
    // largest divisor of b sharing no prime with a
    let mut c = b;
    loop {
        let h = c.gcd(&a);
        if h.is_one() {
            break;
        }
        c /= h;
    }
    z[0] = &a + d * &c;
    debug_assert!(gcd_all(&z).is_one());
    Ok(z)
}

/// `A ∈ Sp(2g, Z)` with `A · canonical_rank2(g, d) = span{x, y}`, where
/// `ω(x, y) = d > 0` and the span is complete.
fn normalize_rank2(genus: usize, x: &[Int], y: &[Int]) -> Result<SpMatrix> {
    let d = pairing(x, y);
    if !d.is_positive() {
        return Err(Error::Internal("normal-form basis must pair positively"));
    }
    let a1 = extend_to_symplectic_basis(&LatticeVector(x.to_vec()))?;
    let y1 = a1.inverse().apply(y);
    debug_assert_eq!(y1[1], d);
    let mut u = y1.clone();
    u[0] = Int::zero();
    u[1] = Int::zero();
    let b = if d.is_one() {
        shear_first_block(genus, &u)
    } else {
        if genus < 2 {
            return Err(Error::NotComplete);
        }
        let z = primitive_lift(&u[2..], &d)?;
        let mut shift = vec![Int::zero(); 2 * genus];
        for (i, (ui, zi)) in u[2..].iter().zip(&z).enumerate() {
            shift[i + 2] = (ui - zi) / &d;
        }
        let inner = extend_to_symplectic_basis(&LatticeVector(z))?.embed(genus);
        shear_first_block(genus, &shift).compose(&inner)
    };
    Ok(a1.compose(&b))
}

fn check_pair(u: &Sublattice, u2: &Sublattice, rank: usize) -> Result<Int> {
    if u.genus() != u2.genus() {
        return Err(Error::DimensionMismatch { expected: 2 * u.genus(), found: 2 * u2.genus() });
    }
    for s in [u, u2] {
        if s.rank() != rank {
            return Err(Error::UnsupportedRank(s.rank()));
        }
    }
    let d = u.determinant()?;
    let d2 = u2.determinant()?;
    if !u.is_complete() || !u2.is_complete() {
        return Err(Error::NotComplete);
    }
    if d != d2 {
        return Err(Error::UnequalDeterminants);
    }
    Ok(d)
}

fn verify_image(a: &SpMatrix, from: &Sublattice, to: &Sublattice) -> Result<()> {
    if !is_symplectic(a.entries()) || from.transformed(a) != *to {
        return Err(Error::Internal("constructed matrix fails its post-condition"));
    }
    Ok(())
}

fn normalizer_rank2(u: &Sublattice) -> Result<SpMatrix> {
    let nf = u.alternating_normal_form()?;
    normalize_rank2(u.genus(), &nf.basis[0], &nf.basis[1])
}

/// `δ ∈ Sp(2g, Z)` with `δ U = U2` for complete rank-2 symplectic sublattices
/// of equal determinant.
pub fn map_rank2_sublattice(u: &Sublattice, u2: &Sublattice) -> Result<SpMatrix> {
    check_pair(u, u2, 2)?;
    let a = normalizer_rank2(u)?;
    let b = normalizer_rank2(u2)?;
    let delta = b.compose(&a.inverse());
    verify_image(&delta, u, u2)?;
    Ok(delta)
}

fn normalizer_rank4(u: &Sublattice) -> Result<SpMatrix> {
    let g = u.genus();
    let nf = u.alternating_normal_form()?;
    if !nf.divisors[0].is_one() {
        return Err(Error::RestrictionDivisible);
    }
    let a1 = normalize_rank2(g, &nf.basis[0], &nf.basis[1])?;
    let inv = a1.inverse();
    let x2 = inv.apply(&nf.basis[2]);
    let y2 = inv.apply(&nf.basis[3]);
    if [&x2, &y2].iter().any(|v| !v[0].is_zero() || !v[1].is_zero()) {
        return Err(Error::Internal("second block not orthogonal to the unimodular factor"));
    }
    let inner = normalize_rank2(g - 1, &x2[2..], &y2[2..])?;
    Ok(a1.compose(&inner.embed(g)))
}

/// `A ∈ Sp(2g, Z)` with `A U = U2` for complete rank-4 symplectic sublattices
/// of equal determinant whose restricted forms have divisors `(1, d)`.
pub fn map_rank4_sublattice(u: &Sublattice, u2: &Sublattice) -> Result<SpMatrix> {
    check_pair(u, u2, 4)?;
    let a = normalizer_rank4(u)?;
    let b = normalizer_rank4(u2)?;
    let delta = b.compose(&a.inverse());
    verify_image(&delta, u, u2)?;
    Ok(delta)
}

/// Saturated integral lattice of the real span of rational vectors.
pub fn saturated_span(genus: usize, vectors: &[Vec<Rat>]) -> Result<Sublattice> {
    let ints: Matrix<Int> = vectors.iter().map(|v| crate::arith::clear_denominators(v)).collect();
    let e = echelon(&ints);
    let rows: Matrix<Int> = e.hermite.into_iter().take(e.rank).collect();
    if rows.is_empty() {
        return Err(Error::RankDeficient);
    }
    Ok(Sublattice::new(genus, rows)?.saturate())
}
