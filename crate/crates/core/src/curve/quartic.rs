//! Smooth plane quartics, the canonical model of a non-hyperelliptic genus-3
//! curve. Differentials are linear forms `a x + b y + c z`, and the ratio of
//! two differentials at a point is the ratio of their linear forms there.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{Int, Rat};
use crate::curve::poly::Poly;
use crate::curve::roots::complex_roots;
use crate::curve::Differential;
use crate::error::{Error, Result};
use crate::matrix;

/// Exponents of the degree-`d` monomials in `x, y, z`, ordered by descending
/// power of `x`, then of `y`.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn monomial_index(e: [u32; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    // monomials with x-power > e[0] come first
    let before: u32 = (e[0] + 1..=d).map(|a| d - a + 1).sum();
    (before + (d - e[0] - e[1])) as usize
}

/// Coefficients of `l1 l2` on `x^2, xy, xz, y^2, yz, z^2`.
pub fn conic_product(l1: &[Rat], l2: &[Rat]) -> [Rat; 6] {
    let mut out: [Rat; 6] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            out[monomial_index(e)] += &l1[i] * &l2[j];
        }
    }
    out
}

fn rank_mod_p(rows: &[Vec<Int>], p: u64) -> usize {
    let pi = Int::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = x % &pi;
                    let v = if v < Int::zero() { v + &pi } else { v };
                    v.to_u64().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let ip = inv(m[rank][c]);
        for i in rank + 1..m.len() {
            let f = m[i][c] * ip % p;
            if f != 0 {
                for j in c..cols {
                    m[i][j] = (m[i][j] + (p - f) * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneQuartic {
    coeffs: Vec<Rat>,
}

impl PlaneQuartic {
    /// Coefficients on `monomials(4)`: `x^4, x^3y, x^3z, x^2y^2, ..., z^4`.
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != 15 {
            return Err(Error::DimensionMismatch { expected: 15, found: coeffs.len() });
        }
        let q = PlaneQuartic { coeffs };
        if !q.is_smooth() {
            return Err(Error::SingularQuartic);
        }
        Ok(q)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn partial(&self, var: usize) -> Vec<(Rat, [u32; 3])> {
        monomials(4)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(e, c)| e[var] > 0 && !c.is_zero())
            .map(|(mut e, c)| {
                let k = Rat::from_integer(Int::from(e[var]));
                e[var] -= 1;
                (c * k, e)
            })
            .collect()
    }

    /// The partials have no common projective zero iff they generate every
    /// form of degree 7 (three cubics form a regular sequence exactly when
    /// their quotient vanishes in degree `3 * 2 + 1`).
    pub fn is_smooth(&self) -> bool {
        let partials: Vec<_> = (0..3).map(|v| self.partial(v)).collect();
        let shifts = monomials(4);
        let mut rows = Vec::with_capacity(45);
        for p in &partials {
            for s in &shifts {
                let mut row = vec![Rat::zero(); 36];
                for (c, e) in p {
                    row[monomial_index([e[0] + s[0], e[1] + s[1], e[2] + s[2]])] += c;
                }
                rows.push(row);
            }
        }
        // full rank modulo a prime certifies full rank over Q
        let ints: Vec<Vec<Int>> = rows.iter().map(|r| crate::arith::clear_denominators(r)).collect();
        if rank_mod_p(&ints, 2_147_483_647) == 36 {
            return true;
        }
        matrix::rank(&rows) == 36
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        monomials(4)
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| c * pow(&p[0], e[0]) * pow(&p[1], e[1]) * pow(&p[2], e[2]))
            .sum()
    }

    /// `F(u P + Q)` as a polynomial in `u`.
    fn restrict(&self, p: &[Rat; 3], q: &[Rat; 3]) -> Poly {
        let lin: Vec<Poly> = (0..3).map(|i| Poly::new(vec![q[i].clone(), p[i].clone()])).collect();
        let mut out = Poly::zero();
        for (e, c) in monomials(4).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = Poly::constant(c.clone());
            for v in 0..3 {
                for _ in 0..e[v] {
                    term = &term * &lin[v];
                }
            }
            out = &out + &term;
        }
        out
    }
}

fn pow(x: &Rat, k: u32) -> Rat {
    (0..k).fold(Rat::from_integer(Int::from(1)), |acc, _| acc * x)
}

fn linear(l: &[Rat], p: &[Rat; 3]) -> Rat {
    &l[0] * &p[0] + &l[1] * &p[1] + &l[2] * &p[2]
}

fn linear_c(l: &[Rat], p: &[Complex64; 3]) -> Complex64 {
    (0..3).map(|i| p[i] * l[i].to_f64().unwrap_or(f64::NAN)).sum()
}

/// `((a - c)(b - d)) / ((b - c)(a - d))`.
pub fn cross_ratio(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    ((a - c) * (b - d)) / ((b - c) * (a - d))
}

/// `{λ, 1-λ, 1/λ, 1/(1-λ), λ/(λ-1), (λ-1)/λ}`.
pub fn anharmonic_orbit(l: Complex64) -> [Complex64; 6] {
    let one = Complex64::new(1.0, 0.0);
    [l, one - l, l.inv(), (one - l).inv(), l / (l - one), (l - one) / l]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossRatioReport {
    /// Intersection points of the `α` line with the quartic.
    pub points: Vec<[Complex64; 3]>,
    /// `γ(z_i)/β(z_i)`.
    pub values: Vec<Complex64>,
    pub b_forms: Complex64,
    pub b_points: Complex64,
    pub matches: bool,
}

/// Two rational points spanning the line `l = 0`, the first off the quartic.
fn parametrize(f: &PlaneQuartic, l: &[Rat]) -> ([Rat; 3], [Rat; 3]) {
    let k = matrix::kernel(&[l.to_vec()], 3);
    let to3 = |v: &Vec<Rat>| [v[0].clone(), v[1].clone(), v[2].clone()];
    let (p0, q) = (to3(&k[0]), to3(&k[1]));
    // the quartic is irreducible, so it vanishes at finitely many points of the line
    let mut t = 0i64;
    loop {
        let tr = Rat::from_integer(Int::from(t));
        let p = [&p0[0] + &tr * &q[0], &p0[1] + &tr * &q[1], &p0[2] + &tr * &q[2]];
        if !f.eval(&p).is_zero() {
            return (p, q);
        }
        t += 1;
    }
}

/// Cross-ratio of `γ/β` over the four zeroes of `α`, compared with the
/// cross-ratio of those zeroes as points of the line `α = 0`.
pub fn quartic_cross_ratio(
    f: &PlaneQuartic,
    alpha: &Differential,
    beta: &Differential,
    gamma: &Differential,
    tolerance: f64,
) -> Result<CrossRatioReport> {
    for d in [alpha, beta, gamma] {
        if d.coeffs().len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: d.coeffs().len() });
        }
        if d.is_zero() {
            return Err(Error::ZeroDifferential);
        }
    }
    let (a, b, c) = (alpha.coeffs(), beta.coeffs(), gamma.coeffs());
    let (p, q) = parametrize(f, a);
    let h = f.restrict(&p, &q);
    if h.degree() != Some(4) {
        return Err(Error::Internal("restriction to a line is not quartic"));
    }
    if !h.is_squarefree() {
        return Err(Error::NonSimpleZeroes);
    }
    let beta_on_line = Poly::new(vec![linear(b, &q), linear(b, &p)]);
    if beta_on_line.is_zero() || h.gcd(&beta_on_line).degree() != Some(0) {
        return Err(Error::SharedZero);
    }
    // γ/β restricted to the line is a Möbius function of u; it is constant
    // exactly when α, β, γ fail to span H^0(K)
    let det = linear(b, &p) * linear(c, &q) - linear(b, &q) * linear(c, &p);
    if det.is_zero() {
        return Err(Error::DegenerateQuadruple);
    }

    let us = complex_roots(&h.to_f64());
    let scale = h.to_f64().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for &u in &us {
        if h.eval_complex(u).norm() > 1e-6 * scale * libm::pow(1.0 + u.norm(), 4.0) {
            return Err(Error::NumericFailure);
        }
    }
    let pf = p.each_ref().map(|x| x.to_f64().unwrap_or(f64::NAN));
    let qf = q.each_ref().map(|x| x.to_f64().unwrap_or(f64::NAN));
    let points: Vec<[Complex64; 3]> = us.iter().map(|&u| [0, 1, 2].map(|i| u * pf[i] + qf[i])).collect();

    let values: Vec<Complex64> = points
        .iter()
        .map(|z| {
            let den = linear_c(b, z);
            if den.norm() <= tolerance {
                return Err(Error::SharedZero);
            }
            Ok(linear_c(c, z) / den)
        })
        .collect::<Result<_>>()?;
    let b_forms = cross_ratio(values[0], values[1], values[2], values[3]);

    // brackets [z_i z_j] = (z_i × z_j)·n / |n|^2 are the 2x2 minors in line coordinates
    let n: [f64; 3] = [0, 1, 2].map(|i| a[i].to_f64().unwrap_or(f64::NAN));
    let nn: f64 = n.iter().map(|x| x * x).sum();
    let bracket = |i: usize, j: usize| -> Complex64 {
        let (u, v) = (&points[i], &points[j]);
        let cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
        (cross[0] * n[0] + cross[1] * n[1] + cross[2] * n[2]) / nn
    };
    let b_points = (bracket(0, 2) * bracket(1, 3)) / (bracket(1, 2) * bracket(0, 3));

    let matches = anharmonic_orbit(b_points)
        .iter()
        .any(|&m| (b_forms - m).norm() <= tolerance * (1.0 + m.norm()));
    Ok(CrossRatioReport { points, values, b_forms, b_points, matches })
}
