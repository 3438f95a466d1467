//! Multiplication maps `H^0(K) x H^0(K) -> H^0(K^2)` on explicit canonical
//! models: hyperelliptic curves `y^2 = f(x)` and smooth plane quartics.
//!
//! A differential is stored by its coordinates in the model's basis of
//! `H^0(K)`: `x^i dx/y` for `i < g` on a hyperelliptic curve, and the linear
//! forms `x, y, z` on a quartic.

pub mod hyperelliptic;
pub mod poly;
pub mod quartic;
pub mod roots;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};

pub use hyperelliptic::HyperellipticCurve;
pub use poly::Poly;
pub use quartic::PlaneQuartic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curve {
    Hyperelliptic(HyperellipticCurve),
    Quartic(PlaneQuartic),
}

impl Curve {
    pub fn genus(&self) -> usize {
        match self {
            Curve::Hyperelliptic(c) => c.genus(),
            Curve::Quartic(_) => 3,
        }
    }

    /// `dim H^0(K^2) = 3g - 3`.
    pub fn quadratic_dim(&self) -> usize {
        3 * self.genus() - 3
    }

    /// Validates coordinates of a holomorphic differential.
    pub fn differential(&self, coeffs: Vec<Rat>) -> Result<Differential> {
        let g = self.genus();
        match self {
            Curve::Hyperelliptic(c) => c.differential(Poly::new(coeffs)),
            Curve::Quartic(_) => {
                if coeffs.len() != g {
                    return Err(Error::DimensionMismatch { expected: g, found: coeffs.len() });
                }
                Ok(Differential { coeffs })
            }
        }
    }

    /// Coordinates of `a ⊗ b` in the model's basis of `H^0(K^2)`.
    pub fn product(&self, a: &Differential, b: &Differential) -> Vec<Rat> {
        match self {
            Curve::Hyperelliptic(c) => c.product(a, b).coordinates(c.genus()),
            Curve::Quartic(_) => quartic::conic_product(&a.coeffs, &b.coeffs).to_vec(),
        }
    }

    /// The monomial basis of `H^0(K)`.
    pub fn canonical_basis(&self) -> Vec<Differential> {
        let g = self.genus();
        (0..g)
            .map(|i| {
                let mut c = vec![Rat::zero(); g];
                c[i] = Rat::from_integer(1.into());
                Differential { coeffs: c }
            })
            .collect()
    }
}

/// Holomorphic differential, by coordinates in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Differential {
    coeffs: Vec<Rat>,
}

impl Differential {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The polynomial `p` of `p(x) dx/y`.
    pub fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn combination(terms: &[(Rat, &Differential)]) -> Differential {
        let n = terms.iter().map(|(_, d)| d.coeffs.len()).max().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); n];
        for (c, d) in terms {
            for (k, a) in d.coeffs.iter().enumerate() {
                coeffs[k] += c * a;
            }
        }
        Differential { coeffs }
    }
}

/// A 2- or 3-dimensional subspace of `H^0(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSubspace {
    curve: Curve,
    basis: Vec<Differential>,
}

impl TauSubspace {
    pub fn new(curve: &Curve, basis: Vec<Differential>) -> Result<Self> {
        if basis.len() != 2 && basis.len() != 3 {
            return Err(Error::UnsupportedTauDimension(basis.len()));
        }
        let g = curve.genus();
        for d in &basis {
            if d.is_zero() {
                return Err(Error::ZeroDifferential);
            }
            if d.coeffs.len() != g {
                return Err(Error::DimensionMismatch { expected: g, found: d.coeffs.len() });
            }
        }
        let rows: Matrix<Rat> = basis.iter().map(|d| d.coeffs.clone()).collect();
        if matrix::rank(&rows) != basis.len() {
            return Err(Error::DependentDifferentials);
        }
        Ok(TauSubspace { curve: curve.clone(), basis })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn basis(&self) -> &[Differential] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Same subspace in the basis `m · basis`; `m` must be invertible.
    pub fn rebased(&self, m: &[Vec<Rat>]) -> Result<Self> {
        let basis = m
            .iter()
            .map(|row| {
                let terms: Vec<(Rat, &Differential)> = row.iter().cloned().zip(self.basis.iter()).collect();
                Differential::combination(&terms)
            })
            .collect();
        TauSubspace::new(&self.curve, basis)
    }
}

/// Row `(j, i)`: the product of `τ_j` with the `i`-th basis differential.
pub fn multiplication_matrix(tau: &TauSubspace) -> Matrix<Rat> {
    let basis = tau.curve.canonical_basis();
    tau.basis
        .iter()
        .flat_map(|t| basis.iter().map(|e| tau.curve.product(t, e)).collect::<Vec<_>>())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObscurantReport {
    /// `dim ker(τ ⊗ H^0(K) -> H^0(K^2))`.
    pub dim: usize,
    /// Rank of the multiplication map.
    pub image_dim: usize,
    /// Kernel basis; entry `j*g + i` is the coefficient of `τ_j ⊗ e_i`.
    pub kernel: Matrix<Rat>,
}

pub fn obscurant(tau: &TauSubspace) -> ObscurantReport {
    let m = multiplication_matrix(tau);
    let t = matrix::transpose(&m);
    let kernel = matrix::kernel(&t, m.len());
    ObscurantReport { dim: kernel.len(), image_dim: m.len() - kernel.len(), kernel }
}

pub fn obscurant_dim(tau: &TauSubspace) -> usize {
    obscurant(tau).dim
}

/// `dim α ⊗ H^0(K)`, always `g`.
pub fn dividend_dim(curve: &Curve, alpha: &Differential) -> Result<usize> {
    if alpha.is_zero() {
        return Err(Error::ZeroDifferential);
    }
    if alpha.coeffs.len() != curve.genus() {
        return Err(Error::DimensionMismatch { expected: curve.genus(), found: alpha.coeffs.len() });
    }
    let rows: Matrix<Rat> = curve.canonical_basis().iter().map(|e| curve.product(alpha, e)).collect();
    Ok(matrix::rank(&rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linkage {
    Coprime,
    Linked,
}

impl Linkage {
    pub fn tag(self) -> &'static str {
        match self {
            Linkage::Coprime => "coprime",
            Linkage::Linked => "linked",
        }
    }
}

pub fn classify(tau: &TauSubspace) -> Linkage {
    let r = obscurant(tau);
    let coprime = match tau.dim() {
        2 => r.dim == 1,
        _ => r.dim == 3 && r.image_dim == tau.curve.quadratic_dim(),
    };
    if coprime {
        Linkage::Coprime
    } else {
        Linkage::Linked
    }
}

/// `(3g - 3) - (k g - dim obscurant)`.
pub fn isoperiodic_deformation_dim(tau: &TauSubspace) -> usize {
    tau.curve.quadratic_dim() - obscurant(tau).image_dim
}

/// Rank of `Sym^2 H^0(K) -> H^0(K^2)`.
pub fn noether_image_dim(curve: &Curve) -> usize {
    let basis = curve.canonical_basis();
    let mut rows = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            rows.push(curve.product(&basis[i], &basis[j]));
        }
    }
    matrix::rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    pub(crate) fn genus3() -> Curve {
        // f = prod_{k=3}^{10} (x - k), degree 8, nonzero at 0, 1, 2, -1, -2
        let roots: Vec<Rat> = (3..=10).map(|k| rat(k, 1)).collect();
        Curve::Hyperelliptic(HyperellipticCurve::new(Poly::from_roots(&roots)).unwrap())
    }

    fn hyper(g: usize) -> Curve {
        let roots: Vec<Rat> = (1..=(2 * g as i64 + 2)).map(|k| rat(k, 1)).collect();
        Curve::Hyperelliptic(HyperellipticCurve::new(Poly::from_roots(&roots)).unwrap())
    }

    fn diff(c: &Curve, p: &[i64]) -> Differential {
        c.differential(Poly::from_i64(p).padded(c.genus())).unwrap()
    }

    fn fermat() -> Curve {
        let mut c = vec![rat(0, 1); 15];
        c[0] = rat(1, 1);
        c[10] = rat(1, 1);
        c[14] = rat(1, 1);
        Curve::Quartic(PlaneQuartic::new(c).unwrap())
    }

    fn line(c: &Curve, l: [i64; 3]) -> Differential {
        c.differential(l.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    #[test]
    fn dividend_examples() {
        let c = hyper(2);
        assert_eq!(dividend_dim(&c, &diff(&c, &[3, -1])).unwrap(), 2);
        let c = genus3();
        assert_eq!(dividend_dim(&c, &diff(&c, &[1])).unwrap(), 3);
        assert_eq!(dividend_dim(&c, &diff(&c, &[0, 0, 1])).unwrap(), 3);
        assert_eq!(dividend_dim(&c, &diff(&c, &[0])).unwrap_err(), Error::ZeroDifferential);
    }

    #[test]
    fn obscurant_examples() {
        let c = genus3();
        let tau = TauSubspace::new(&c, vec![diff(&c, &[0, -1, 1]), diff(&c, &[0, -2, 1])]).unwrap();
        assert_eq!(obscurant_dim(&tau), 2);
        assert_eq!(classify(&tau), Linkage::Linked);
        let tau = TauSubspace::new(&c, vec![diff(&c, &[-1, 0, 1]), diff(&c, &[-4, 0, 1])]).unwrap();
        assert_eq!(obscurant_dim(&tau), 1);
        assert_eq!(classify(&tau), Linkage::Coprime);
        assert_eq!(isoperiodic_deformation_dim(&tau), 1);

        let q = fermat();
        let tau = TauSubspace::new(&q, vec![line(&q, [1, 0, 0]), line(&q, [1, 2, 3])]).unwrap();
        assert_eq!(obscurant_dim(&tau), 1);
        assert_eq!(classify(&tau), Linkage::Coprime);
        assert_eq!(isoperiodic_deformation_dim(&tau), 1);
        let tau = TauSubspace::new(&q, vec![line(&q, [1, 0, 0]), line(&q, [0, 1, 0]), line(&q, [0, 0, 1])]).unwrap();
        assert_eq!(obscurant_dim(&tau), 3);
        assert_eq!(classify(&tau), Linkage::Coprime);
        assert_eq!(isoperiodic_deformation_dim(&tau), 0);
    }

    #[test]
    fn triples_on_hyperelliptic_curves_are_linked() {
        let c = genus3();
        let tau = TauSubspace::new(&c, c.canonical_basis()).unwrap();
        assert_eq!(obscurant_dim(&tau), 4);
        assert_eq!(classify(&tau), Linkage::Linked);
        let c = hyper(4);
        let tau = TauSubspace::new(&c, vec![diff(&c, &[1]), diff(&c, &[0, 1]), diff(&c, &[0, 0, 0, 1])]).unwrap();
        assert!(obscurant_dim(&tau) >= 5);
        assert!(isoperiodic_deformation_dim(&tau) >= 2);
    }

    #[test]
    fn tau_validation() {
        let c = genus3();
        assert_eq!(
            TauSubspace::new(&c, vec![diff(&c, &[1, 1]), diff(&c, &[2, 2])]).unwrap_err(),
            Error::DependentDifferentials
        );
        assert_eq!(TauSubspace::new(&c, vec![diff(&c, &[1])]).unwrap_err(), Error::UnsupportedTauDimension(1));
        assert_eq!(c.differential(Poly::from_i64(&[0, 0, 0, 1]).coeffs().to_vec()).unwrap_err(), Error::DegreeBoundExceeded);
    }

    #[test]
    fn noether_examples() {
        assert_eq!(noether_image_dim(&genus3()), 5);
        assert_eq!(noether_image_dim(&hyper(4)), 7);
        assert_eq!(noether_image_dim(&hyper(2)), 3);
        assert_eq!(noether_image_dim(&fermat()), 6);
    }

    #[test]
    fn classification_ignores_basis_choice() {
        let c = genus3();
        let tau = TauSubspace::new(&c, vec![diff(&c, &[0, -1, 1]), diff(&c, &[0, -2, 1])]).unwrap();
        let m = vec![vec![rat(2, 3), rat(-1, 1)], vec![rat(5, 1), rat(1, 7)]];
        let t2 = tau.rebased(&m).unwrap();
        assert_eq!(classify(&t2), classify(&tau));
        assert_eq!(obscurant_dim(&t2), obscurant_dim(&tau));
    }
}
