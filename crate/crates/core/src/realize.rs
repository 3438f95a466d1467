//! Realizability of cohomology classes (and elliptic pairs) by abelian
//! differentials.
//!
//! A class is given by its periods on the standard symplectic basis, as
//! Gaussian rationals. With exact input the period group is always a
//! subgroup of `Q^2`, hence discrete, so the decision for a single class
//! reduces to comparing the area with the covolume of the period lattice,
//! equivalently to `det >= 2` for the saturated lattice of the real part.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{lcm_of_denominators, GaussRat, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{pairing, saturated_span, SpMatrix, Sublattice};
use crate::matrix::{self, hnf_basis, Matrix};

/// Periods of a class in `H^1(S, C)` on the standard symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    genus: usize,
    periods: Vec<GaussRat>,
}

impl CohomologyClass {
    pub fn new(genus: usize, periods: Vec<GaussRat>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        if periods.len() != 2 * genus {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: periods.len() });
        }
        Ok(CohomologyClass { genus, periods })
    }

    /// Convenience constructor from integer `(re, im)` pairs.
    pub fn from_ints(genus: usize, periods: &[(i64, i64)]) -> Result<Self> {
        CohomologyClass::new(genus, periods.iter().map(|&(a, b)| GaussRat::from_ints(a, b)).collect())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn periods(&self) -> &[GaussRat] {
        &self.periods
    }

    pub fn is_zero(&self) -> bool {
        self.periods.iter().all(Zero::is_zero)
    }

    pub fn real_part(&self) -> Vec<Rat> {
        self.periods.iter().map(|z| z.re.clone()).collect()
    }

    pub fn imag_part(&self) -> Vec<Rat> {
        self.periods.iter().map(|z| z.im.clone()).collect()
    }

    pub fn conj(&self) -> Self {
        CohomologyClass { genus: self.genus, periods: self.periods.iter().map(GaussRat::conj).collect() }
    }

    pub fn scaled(&self, lambda: &GaussRat) -> Self {
        CohomologyClass { genus: self.genus, periods: self.periods.iter().map(|z| lambda * z).collect() }
    }

    /// Ambient action `c -> A c` of an integral symplectic matrix.
    pub fn transformed(&self, a: &SpMatrix) -> Result<Self> {
        if a.genus() != self.genus {
            return Err(Error::DimensionMismatch { expected: 2 * self.genus, found: 2 * a.genus() });
        }
        let periods = a
            .entries()
            .iter()
            .map(|row| {
                row.iter().zip(&self.periods).fold(GaussRat::zero(), |acc, (x, z)| {
                    &acc + &GaussRat::new(z.re.clone() * x, z.im.clone() * x)
                })
            })
            .collect();
        Ok(CohomologyClass { genus: self.genus, periods })
    }
}

/// Complex-bilinear extension of `ω`.
pub fn complex_pairing(a: &CohomologyClass, b: &CohomologyClass) -> Result<GaussRat> {
    same_genus(a, b)?;
    Ok(pairing(&a.periods, &b.periods))
}

fn same_genus(a: &CohomologyClass, b: &CohomologyClass) -> Result<()> {
    if a.genus != b.genus {
        return Err(Error::DimensionMismatch { expected: 2 * a.genus, found: 2 * b.genus });
    }
    Ok(())
}

/// `ω(Re α, Im α)`, i.e. `(i/2) ω(α, ᾱ)`.
pub fn area(c: &CohomologyClass) -> Rat {
    pairing(&c.real_part(), &c.imag_part())
}

/// Subgroup of the plane generated by finitely many Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarLattice {
    basis: Vec<GaussRat>,
}

impl PlanarLattice {
    /// Reduced basis: Hermite form of the generators as rational plane vectors.
    pub fn from_generators(points: &[GaussRat]) -> Self {
        let denom = lcm_of_denominators(points.iter().flat_map(|z| [&z.re, &z.im]));
        let d = Rat::from_integer(denom.clone());
        let rows: Matrix<Int> = points
            .iter()
            .map(|z| vec![(&z.re * &d).to_integer(), (&z.im * &d).to_integer()])
            .collect();
        let basis = hnf_basis(&rows)
            .into_iter()
            .map(|r| GaussRat::new(Rat::new(r[0].clone(), denom.clone()), Rat::new(r[1].clone(), denom.clone())))
            .collect();
        PlanarLattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GaussRat] {
        &self.basis
    }

    /// `|Im(z̄_1 z_2)|`.
    pub fn covolume(&self) -> Result<Rat> {
        if self.rank() < 2 {
            return Err(Error::DegeneratePeriodGroup);
        }
        let (z1, z2) = (&self.basis[0], &self.basis[1]);
        Ok((&z1.re * &z2.im - &z1.im * &z2.re).abs())
    }
}

pub fn period_group(c: &CohomologyClass) -> PlanarLattice {
    PlanarLattice::from_generators(&c.periods)
}

pub fn covolume(l: &PlanarLattice) -> Result<Rat> {
    l.covolume()
}

/// Saturated integral lattice `U_Z` of the real span of the given classes.
pub fn real_lattice(classes: &[&CohomologyClass]) -> Result<Sublattice> {
    let g = classes.first().ok_or(Error::InvalidArgument("no classes"))?.genus;
    let mut vectors = Vec::with_capacity(2 * classes.len());
    for c in classes {
        if c.genus != g {
            return Err(Error::DimensionMismatch { expected: 2 * g, found: 2 * c.genus });
        }
        vectors.push(c.real_part());
        vectors.push(c.imag_part());
    }
    if matrix::rank(&vectors) != vectors.len() {
        return Err(Error::RealPartRankDeficient);
    }
    saturated_span(g, &vectors)
}

/// Determinant of the saturated lattice of `span{Re α, Im α}`.
pub fn line_determinant(c: &CohomologyClass) -> Result<Int> {
    real_lattice(&[c])?.determinant()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// `area > covolume`, equivalently `det >= 2`.
    Realizable,
    /// `area <= 0`; includes degenerate (rank < 2) period groups.
    AreaNonPositive,
    /// `area == covolume`, i.e. `det == 1`.
    AreaNotAboveCovolume,
    /// Float input without a rational reconstruction: presumed dense periods.
    PresumedDense,
}

impl Reason {
    pub fn tag(self) -> &'static str {
        match self {
            Reason::Realizable => "area > covolume",
            Reason::AreaNonPositive => "area <= 0",
            Reason::AreaNotAboveCovolume => "area = covolume",
            Reason::PresumedDense => "presumed dense => realizable (heuristic)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub area: Rat,
    /// `None` when the period group has rank < 2.
    pub covolume: Option<Rat>,
    /// `None` when the real part is degenerate.
    pub det: Option<Int>,
    pub reason: Reason,
    /// True only for the float-input heuristic.
    pub heuristic: bool,
}

pub fn is_realizable_line(c: &CohomologyClass) -> Result<RealizabilityVerdict> {
    if c.genus < 2 {
        return Err(Error::InvalidGenus(c.genus));
    }
    if c.is_zero() {
        return Err(Error::ZeroClass);
    }
    let a = area(c);
    let covol = period_group(c).covolume().ok();
    let det = line_determinant(c).ok();
    if !a.is_positive() {
        return Ok(RealizabilityVerdict {
            realizable: false,
            area: a,
            covolume: covol,
            det,
            reason: Reason::AreaNonPositive,
            heuristic: false,
        });
    }
    let (Some(covol), Some(det)) = (covol, det) else {
        return Err(Error::Internal("positive area with degenerate period data"));
    };
    if a != &covol * Rat::from_integer(det.clone()) {
        return Err(Error::Internal("area differs from det x covolume"));
    }
    let realizable = a > covol;
    Ok(RealizabilityVerdict {
        realizable,
        area: a,
        covolume: Some(covol),
        det: Some(det),
        reason: if realizable { Reason::Realizable } else { Reason::AreaNotAboveCovolume },
        heuristic: false,
    })
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
fn reconstruct(x: f64, tolerance: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = libm::floor(r);
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if ((p1 as f64) / (q1 as f64) - x).abs() <= tolerance {
            return Some(Rat::new(Int::from(p1), Int::from(q1)));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Float-input front end: reconstructs rational periods within `tolerance`
/// and decides exactly; otherwise reports the heuristic dense verdict.
pub fn is_realizable_line_approx(
    genus: usize,
    periods: &[(f64, f64)],
    tolerance: f64,
    max_denominator: i64,
) -> Result<RealizabilityVerdict> {
    if periods.len() != 2 * genus {
        return Err(Error::DimensionMismatch { expected: 2 * genus, found: periods.len() });
    }
    let exact: Option<Vec<GaussRat>> = periods
        .iter()
        .map(|&(re, im)| {
            Some(GaussRat::new(reconstruct(re, tolerance, max_denominator)?, reconstruct(im, tolerance, max_denominator)?))
        })
        .collect();
    if let Some(p) = exact {
        return is_realizable_line(&CohomologyClass::new(genus, p)?);
    }
    let a: f64 = (0..genus)
        .map(|i| periods[2 * i].0 * periods[2 * i + 1].1 - periods[2 * i + 1].0 * periods[2 * i].1)
        .sum();
    let area_rat = reconstruct(a, f64::MAX, 1 << 20).unwrap_or_else(Rat::zero);
    Ok(RealizabilityVerdict {
        realizable: a > 0.0,
        area: area_rat,
        covolume: None,
        det: None,
        reason: if a > 0.0 { Reason::PresumedDense } else { Reason::AreaNonPositive },
        heuristic: true,
    })
}

fn hermitian_form(taus: &[&CohomologyClass]) -> Result<Matrix<GaussRat>> {
    let i = GaussRat::i();
    taus.iter()
        .map(|a| taus.iter().map(|b| Ok(&i * &complex_pairing(a, &b.conj())?)).collect())
        .collect()
}

/// Positive definiteness of `h_{jk} = i ω(τ_j, τ̄_k)`.
pub fn hodge_riemann_check(taus: &[&CohomologyClass]) -> Result<bool> {
    if taus.is_empty() || taus.len() > 3 {
        return Err(Error::InvalidArgument("expected one to three classes"));
    }
    let rows: Matrix<GaussRat> = taus.iter().map(|t| t.periods.clone()).collect();
    for t in taus {
        same_genus(taus[0], t)?;
    }
    if matrix::rank(&rows) != taus.len() {
        return Err(Error::DependentClasses);
    }
    let h = hermitian_form(taus)?;
    for k in 1..=taus.len() {
        let minor: Matrix<GaussRat> = h[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = matrix::det(&minor);
        if !d.im.is_zero() {
            return Err(Error::Internal("hermitian minor is not real"));
        }
        if !d.re.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn isotropy_check(a: &CohomologyClass, b: &CohomologyClass) -> Result<bool> {
    Ok(complex_pairing(a, b)?.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairReason {
    Realizable,
    OddDeterminant,
    BelowBound,
    /// A rank-2 integral symplectic sublattice meeting the pair was found, so the
    /// pair is not simple and the criterion does not apply.
    CriterionNotApplicable,
}

impl PairReason {
    pub fn tag(self) -> &'static str {
        match self {
            PairReason::Realizable => "even determinant >= 2g-2",
            PairReason::OddDeterminant => "odd determinant",
            PairReason::BelowBound => "det < 2g-2",
            PairReason::CriterionNotApplicable => "criterion not applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub realizable: bool,
    pub genus: usize,
    /// `|Pf|` of `ω` on the saturated lattice of the real part.
    pub pfaffian: Int,
    /// `ω∧ω` on the positive generator of `Λ^4 U_Z`, i.e. `2 |Pf|`.
    pub det: Int,
    pub bound: Int,
    pub det_even: bool,
    pub det_at_least_bound: bool,
    pub reason: PairReason,
    /// Basis of a rank-2 sublattice refuting simplicity, when one was found.
    pub simplicity_witness: Option<Matrix<Int>>,
}

/// `(even, >= 2g-2, accepted)` for a determinant value.
pub fn elliptic_pair_criterion(genus: usize, det: &Int) -> (bool, bool, bool) {
    let even = det.is_even();
    let bound = Int::from(2 * genus as i64 - 2);
    let meets = det >= &bound;
    (even, meets, even && meets)
}

/// Searches `c = λa + μb` with Gaussian-integer coefficients of height at most
/// `height` for a class whose real span is an integral symplectic plane `L`
/// with `c ∈ L ⊗ C`.
pub fn find_elliptic_factor(a: &CohomologyClass, b: &CohomologyClass, height: u32) -> Result<Option<Sublattice>> {
    same_genus(a, b)?;
    let h = height as i64;
    for level in 1..=h {
        for lr in -level..=level {
            for li in -level..=level {
                for mr in -level..=level {
                    for mi in -level..=level {
                        let m = lr.abs().max(li.abs()).max(mr.abs()).max(mi.abs());
                        if m != level {
                            continue;
                        }
                        let lambda = GaussRat::from_ints(lr, li);
                        let mu = GaussRat::from_ints(mr, mi);
                        let c = CohomologyClass {
                            genus: a.genus,
                            periods: a.periods.iter().zip(&b.periods).map(|(x, y)| &(&lambda * x) + &(&mu * y)).collect(),
                        };
                        if let Some(l) = elliptic_plane_through(&c)? {
                            return Ok(Some(l));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn elliptic_plane_through(c: &CohomologyClass) -> Result<Option<Sublattice>> {
    if area(c).is_zero() {
        return Ok(None);
    }
    let l = match real_lattice(&[c]) {
        Ok(l) => l,
        Err(Error::RealPartRankDeficient) => return Ok(None),
        Err(e) => return Err(e),
    };
    // c lies in L ⊗ C iff its real and imaginary parts lie in the rational span of L
    let mut rows = matrix::to_rat(l.basis());
    rows.push(c.real_part());
    rows.push(c.imag_part());
    if matrix::rank(&rows) == 2 && l.determinant().is_ok() {
        Ok(Some(l))
    } else {
        Ok(None)
    }
}

pub fn is_realizable_elliptic_pair(
    a: &CohomologyClass,
    b: &CohomologyClass,
    assume_simple: bool,
    height: u32,
) -> Result<PairVerdict> {
    same_genus(a, b)?;
    let g = a.genus;
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    if !isotropy_check(a, b)? {
        return Err(Error::NotIsotropic);
    }
    if !hodge_riemann_check(&[a, b])? {
        return Err(Error::NotHodgeRiemann);
    }
    let u = real_lattice(&[a, b])?;
    let pf = u.determinant()?;
    let det = &pf * Int::from(2);
    let (det_even, det_at_least_bound, accepted) = elliptic_pair_criterion(g, &det);
    let witness = if assume_simple { None } else { find_elliptic_factor(a, b, height)? };
    let reason = if witness.is_some() {
        PairReason::CriterionNotApplicable
    } else if !det_even {
        PairReason::OddDeterminant
    } else if !det_at_least_bound {
        PairReason::BelowBound
    } else {
        PairReason::Realizable
    };
    Ok(PairVerdict {
        realizable: witness.is_none() && accepted,
        genus: g,
        pfaffian: pf,
        det,
        bound: Int::from(2 * g as i64 - 2),
        det_even,
        det_at_least_bound,
        reason,
        simplicity_witness: witness.map(|l| l.basis().clone()),
    })
}

/// All `(genus, nodes)` with `2 <= genus <= n + 1` and `nodes = n + 1 - genus`, for `det = 2n`.
pub fn severi_range(det: u64) -> Result<Vec<(u64, u64)>> {
    if det == 0 {
        return Err(Error::InvalidArgument("determinant must be positive"));
    }
    if det % 2 == 1 {
        return Err(Error::OddDeterminant);
    }
    let n = det / 2;
    Ok((2..=n + 1).map(|g| (g, n + 1 - g)).collect())
}

/// Rational `SL(2)` action on the real and imaginary parts.
pub fn sl2_act(m: &[[Rat; 2]; 2], c: &CohomologyClass) -> Result<CohomologyClass> {
    if &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] != Rat::one() {
        return Err(Error::DeterminantNotOne);
    }
    let periods = c
        .periods
        .iter()
        .map(|z| {
            GaussRat::new(&m[0][0] * &z.re + &m[0][1] * &z.im, &m[1][0] * &z.re + &m[1][1] * &z.im)
        })
        .collect();
    Ok(CohomologyClass { genus: c.genus, periods })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusData {
    /// `U_Z`, saturated, rank `2k`.
    pub lattice: Sublattice,
    /// Row `j`: coefficients of `τ_j` in the basis of `U_Z`.
    pub coordinates: Matrix<GaussRat>,
}

pub fn torus_data(taus: &[&CohomologyClass]) -> Result<TorusData> {
    if taus.is_empty() || taus.len() > 2 {
        return Err(Error::InvalidArgument("expected one or two classes"));
    }
    if !hodge_riemann_check(taus)? {
        return Err(Error::NotHodgeRiemann);
    }
    let lattice = real_lattice(taus)?;
    let basis: Matrix<GaussRat> = lattice
        .basis()
        .iter()
        .map(|v| v.iter().map(|x| GaussRat::real(Rat::from_integer(x.clone()))).collect())
        .collect();
    let coordinates: Matrix<GaussRat> = taus
        .iter()
        .map(|t| matrix::solve_combination(&basis, &t.periods).ok_or(Error::Internal("class outside its real lattice")))
        .collect::<Result<_>>()?;
    let mut both = coordinates.clone();
    both.extend(coordinates.iter().map(|r| r.iter().map(GaussRat::conj).collect::<Vec<_>>()));
    if matrix::rank(&both) != 2 * taus.len() {
        return Err(Error::Internal("period matrix meets its conjugate"));
    }
    Ok(TorusData { lattice, coordinates })
}

/// `dim Gris(k, 2g) - dim Gr(k, Ω T)`; positive values certify that the
/// polyperiod derivative is not surjective.
pub fn polyperiod_dimension_gap(genus: i64, k: i64) -> Result<i64> {
    if k < 1 || k > genus {
        return Err(Error::InvalidArgument("need 1 <= k <= g"));
    }
    let isotropic_grassmannian = 2 * genus * k - (3 * k * k - k) / 2;
    let target = 3 * genus - 3 + k * (genus - k);
    Ok(isotropic_grassmannian - target)
}
