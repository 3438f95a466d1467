//! Hyperelliptic curves `y^2 = f(x)`.
//!
//! `H^0(K)` is spanned by `x^i dx/y` with `i <= g - 1`, and `H^0(K^2)` by the
//! invariant part `x^j dx^2/y^2` (`j <= 2g - 2`) together with the
//! anti-invariant part `x^k y dx^2/y^2` (`k <= g - 3`).

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{rat_sqrt, Rat};
use crate::curve::poly::Poly;
use crate::curve::roots::complex_roots;
use crate::curve::{Curve, Differential, TauSubspace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    f: Poly,
    genus: usize,
}

impl HyperellipticCurve {
    pub fn new(f: Poly) -> Result<Self> {
        let d = f.degree().unwrap_or(0);
        if d < 5 {
            return Err(Error::InvalidCurveDegree(d));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperellipticCurve { f, genus: (d - 1) / 2 })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of points over `x = ∞`.
    pub fn points_at_infinity(&self) -> usize {
        if self.f.degree() == Some(2 * self.genus + 2) {
            2
        } else {
            1
        }
    }

    /// `p(x) dx/y`, requiring `deg p <= g - 1`.
    pub fn differential(&self, p: Poly) -> Result<Differential> {
        if p.degree().is_some_and(|d| d + 1 > self.genus) {
            return Err(Error::DegreeBoundExceeded);
        }
        Ok(Differential { coeffs: p.padded(self.genus) })
    }

    /// `(q + r y) dx^2/y^2`, requiring `deg q <= 2g - 2` and `deg r <= g - 3`.
    pub fn quad_differential(&self, q: Poly, r: Poly) -> Result<QuadDifferential> {
        let g = self.genus;
        if q.degree().is_some_and(|d| d > 2 * g - 2) || r.degree().is_some_and(|d| d + 3 > g) {
            return Err(Error::DegreeBoundExceeded);
        }
        Ok(QuadDifferential { q, r })
    }

    pub fn product(&self, a: &Differential, b: &Differential) -> QuadDifferential {
        QuadDifferential { q: &a.poly() * &b.poly(), r: Poly::zero() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadDifferential {
    q: Poly,
    r: Poly,
}

impl QuadDifferential {
    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn r(&self) -> &Poly {
        &self.r
    }

    /// Invariant coefficients (`2g - 1`) followed by anti-invariant ones (`g - 2`).
    pub fn coordinates(&self, genus: usize) -> Vec<Rat> {
        let mut c = self.q.padded(2 * genus - 1);
        c.extend(self.r.padded(genus - 2));
        c
    }
}

fn check_nonzero(d: &Differential) -> Result<()> {
    if d.is_zero() {
        Err(Error::ZeroDifferential)
    } else {
        Ok(())
    }
}

/// Degree of `Σ min(ord_z α, ord_z β)`.
///
/// Over an affine root of multiplicity `m` of `p` the form vanishes to order
/// `m` at both points above it, or to order `2m` at a Weierstrass point. At
/// infinity the total order is `2(g - 1 - deg p)`, split evenly between the two
/// points when `deg f` is even. Either way the affine part contributes
/// `2 deg gcd(p_α, p_β)`.
pub fn overlap_degree(curve: &HyperellipticCurve, a: &Differential, b: &Differential) -> Result<usize> {
    check_nonzero(a)?;
    check_nonzero(b)?;
    let (pa, pb) = (a.poly(), b.poly());
    let common = pa.gcd(&pb).degree().expect("nonzero");
    let top = pa.degree().expect("nonzero").max(pb.degree().expect("nonzero"));
    Ok(2 * common + 2 * (curve.genus - 1 - top))
}

/// `⟨(x-a)(x-b) dx/y, (x-a)(x-d) dx/y⟩` on a genus-3 curve.
pub fn veronese_linked_pair(curve: &HyperellipticCurve, a: &Rat, b: &Rat, d: &Rat) -> Result<TauSubspace> {
    if curve.genus != 3 {
        return Err(Error::InvalidGenus(curve.genus));
    }
    if a == b || a == d || b == d {
        return Err(Error::CoincidentParameters);
    }
    if [a, b, d].iter().any(|t| curve.f.eval(t).is_zero()) {
        return Err(Error::ParameterIsBranchPoint);
    }
    let w1 = curve.differential(Poly::from_roots(&[a.clone(), b.clone()]))?;
    let w2 = curve.differential(Poly::from_roots(&[a.clone(), d.clone()]))?;
    TauSubspace::new(&Curve::Hyperelliptic(curve.clone()), alloc::vec![w1, w2])
}

/// Sheet `+1` is the point `(x, +√f(x))`, sheet `-1` its conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPoint {
    pub x: Rat,
    pub sheet: i8,
}

/// Ascending rational `x`-coordinates of the zeroes of `α`, checking that all
/// `2g - 2` of them are affine, simple, rational and off the branch locus.
fn simple_affine_zeroes(curve: &HyperellipticCurve, alpha: &Differential, non_simple: Error) -> Result<Vec<Rat>> {
    check_nonzero(alpha)?;
    let p = alpha.poly();
    if p.degree() != Some(curve.genus - 1) {
        return Err(Error::ZeroAtInfinity);
    }
    if !p.is_squarefree() {
        return Err(non_simple);
    }
    let xs = p.splits_over_q().ok_or(Error::IrrationalZeroes)?;
    if xs.iter().any(|x| curve.f.eval(x).is_zero()) {
        return Err(Error::ZeroAtBranchPoint);
    }
    Ok(xs)
}

fn zero_points(xs: &[Rat]) -> Vec<ZeroPoint> {
    xs.iter().flat_map(|x| [1i8, -1].map(|s| ZeroPoint { x: x.clone(), sheet: s })).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionValue {
    pub point: ZeroPoint,
    pub value: Rat,
}

/// `γ(z_i)/β(z_i)` over the zeroes of `α`, conjugate points adjacent.
pub fn section_values(
    curve: &HyperellipticCurve,
    gamma: &Differential,
    beta: &Differential,
    alpha: &Differential,
) -> Result<Vec<SectionValue>> {
    check_nonzero(beta)?;
    let xs = simple_affine_zeroes(curve, alpha, Error::NonSimpleZeroes)?;
    let (pg, pb) = (gamma.poly(), beta.poly());
    let mut out = Vec::with_capacity(2 * xs.len());
    for z in zero_points(&xs) {
        let den = pb.eval(&z.x);
        if den.is_zero() {
            return Err(Error::SharedZero);
        }
        // both forms change sign under the involution, so the ratio is pg/pb at either point
        let value = pg.eval(&z.x) / den;
        out.push(SectionValue { point: z, value });
    }
    Ok(out)
}

/// Floating-point variant for zeroes with irrational coordinates.
pub fn section_values_approx(
    curve: &HyperellipticCurve,
    gamma: &Differential,
    beta: &Differential,
    alpha: &Differential,
    tolerance: f64,
) -> Result<Vec<(Complex64, i8, Complex64)>> {
    check_nonzero(alpha)?;
    check_nonzero(beta)?;
    let p = alpha.poly();
    if p.degree() != Some(curve.genus - 1) {
        return Err(Error::ZeroAtInfinity);
    }
    if !p.is_squarefree() {
        return Err(Error::NonSimpleZeroes);
    }
    let (pg, pb) = (gamma.poly(), beta.poly());
    let mut out = Vec::new();
    for x in complex_roots(&p.to_f64()) {
        let den = pb.eval_complex(x);
        if den.norm() <= tolerance {
            return Err(Error::SharedZero);
        }
        let v = pg.eval_complex(x) / den;
        out.push((x, 1, v));
        out.push((x, -1, v));
    }
    Ok(out)
}

/// Constant `c` with `s(z_{2i}) + c = -(s(z_{2i+1}) + c)` for every pair, if any.
pub fn skew_couplet_shift(values: &[Rat]) -> Option<Rat> {
    if !values.len().is_multiple_of(2) || values.is_empty() {
        return None;
    }
    let sum = &values[0] + &values[1];
    if values.chunks(2).all(|p| &p[0] + &p[1] == sum) {
        Some(-sum / Rat::from_integer(2.into()))
    } else {
        None
    }
}

/// `rational + coefficient · √radicand`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticValue {
    pub rational: Rat,
    pub coefficient: Rat,
    pub radicand: Rat,
}

impl QuadraticValue {
    pub fn scaled(&self, c: &Rat) -> Self {
        QuadraticValue { rational: &self.rational * c, coefficient: &self.coefficient * c, radicand: self.radicand.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let c = self.coefficient.to_f64().unwrap_or(f64::NAN);
        r + c * libm::sqrt(self.radicand.to_f64().unwrap_or(f64::NAN))
    }
}

/// Exact element of `Q(√r_1, √r_2, ...)`, with radicands in distinct square classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalSum {
    pub rational: Rat,
    pub terms: Vec<(Rat, Rat)>,
}

impl RadicalSum {
    pub fn add(&mut self, v: &QuadraticValue) {
        self.rational += &v.rational;
        if v.coefficient.is_zero() {
            return;
        }
        if let Some(s) = rat_sqrt(&v.radicand) {
            self.rational += &v.coefficient * s;
            return;
        }
        for (c, r) in self.terms.iter_mut() {
            // √v = √(v/r) √r when v/r is a square
            if let Some(s) = rat_sqrt(&(&v.radicand / &*r)) {
                *c += &v.coefficient * s;
                return;
            }
        }
        self.terms.push((v.coefficient.clone(), v.radicand.clone()));
    }

    /// Square roots of rationals in distinct square classes are linearly
    /// independent over `Q`, so this is an exact zero test.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.iter().all(|(c, _)| c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub point: ZeroPoint,
    pub value: QuadraticValue,
}

/// `Res_{z_i}(ω/α)` at every zero of `α`.
///
/// At `(x_i, ε√f_i)` the residue of `(q + r y) dx / (p y)` is
/// `r(x_i)/p'(x_i) + ε q(x_i) √f_i / (p'(x_i) f_i)`.
pub fn residues_of_quotient(curve: &HyperellipticCurve, omega: &QuadDifferential, alpha: &Differential) -> Result<Vec<Residue>> {
    let xs = simple_affine_zeroes(curve, alpha, Error::HigherOrderZero)?;
    let dp = alpha.poly().derivative();
    Ok(zero_points(&xs)
        .into_iter()
        .map(|z| {
            let d = dp.eval(&z.x);
            let fx = curve.f.eval(&z.x);
            let sign = Rat::from_integer(z.sheet.into());
            let value = QuadraticValue {
                rational: omega.r.eval(&z.x) / &d,
                coefficient: sign * omega.q.eval(&z.x) / (&d * &fx),
                radicand: fx,
            };
            Residue { point: z, value }
        })
        .collect())
}

/// Per-`x` sums of the two conjugate residues, which are rational.
pub fn paired_residue_sums(residues: &[Residue]) -> Vec<(Rat, Rat)> {
    residues
        .chunks(2)
        .map(|p| (p[0].point.x.clone(), &p[0].value.rational + &p[1].value.rational))
        .collect()
}

pub fn residue_sum(residues: &[Residue]) -> RadicalSum {
    let mut s = RadicalSum::default();
    for r in residues {
        s.add(&r.value);
    }
    s
}

/// `Σ s_i Res_i`, the pairing of a section with a quadratic differential.
pub fn weighted_residue_sum(weights: &[Rat], residues: &[Residue]) -> Result<RadicalSum> {
    if weights.len() != residues.len() {
        return Err(Error::DimensionMismatch { expected: residues.len(), found: weights.len() });
    }
    let mut s = RadicalSum::default();
    for (w, r) in weights.iter().zip(residues) {
        s.add(&r.value.scaled(w));
    }
    Ok(s)
}

/// Floating-point residues for zeroes with irrational coordinates.
pub fn residues_of_quotient_approx(
    curve: &HyperellipticCurve,
    omega: &QuadDifferential,
    alpha: &Differential,
) -> Result<Vec<(Complex64, i8, Complex64)>> {
    check_nonzero(alpha)?;
    let p = alpha.poly();
    if p.degree() != Some(curve.genus - 1) {
        return Err(Error::ZeroAtInfinity);
    }
    if !p.is_squarefree() {
        return Err(Error::HigherOrderZero);
    }
    let dp = p.derivative();
    let mut out = Vec::new();
    for x in complex_roots(&p.to_f64()) {
        let y = curve.f.eval_complex(x).sqrt();
        for s in [1i8, -1] {
            let ys = y * f64::from(s);
            let v = (omega.q.eval_complex(x) + omega.r.eval_complex(x) * ys) / (dp.eval_complex(x) * ys);
            out.push((x, s, v));
        }
    }
    Ok(out)
}

/// The canonical product `α ⊗ β`.
pub fn quadratic_product(curve: &HyperellipticCurve, a: &Differential, b: &Differential) -> QuadDifferential {
    curve.product(a, b)
}

/// Whether `ω` lies in `α ⊗ H^0(K)`.
pub fn is_divisible_by(omega: &QuadDifferential, alpha: &Differential) -> bool {
    omega.r.is_zero() && {
        let p = alpha.poly();
        !p.is_zero() && omega.q.div_rem(&p).1.is_zero()
    }
}
