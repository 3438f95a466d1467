//! JSON encodings of the core types.
//!
//! Rationals travel as strings (`"3"`, `"-2/5"`); integers are accepted as
//! strings or JSON numbers. Gaussian rationals are `[re, im]` pairs.

use std::fmt;

use isoperiod_core::arith::{format_rat, parse_rat, GaussRat, Int, Rat};
use isoperiod_core::covers::{BranchedTorusCover, Origami, Permutation};
use isoperiod_core::curve::{Curve, Differential, HyperellipticCurve, PlaneQuartic, Poly};
use isoperiod_core::lattice::Sublattice;
use isoperiod_core::realize::CohomologyClass;
use isoperiod_core::Result;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct RatIn(pub Rat);

impl<'de> Deserialize<'de> for RatIn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RatIn;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<RatIn, E> {
                parse_rat(s).map(RatIn).ok_or_else(|| E::custom(format!("invalid rational {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatIn, E> {
                Ok(RatIn(Rat::from_integer(Int::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatIn, E> {
                Ok(RatIn(Rat::from_integer(Int::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug)]
pub struct IntIn(pub Int);

impl<'de> Deserialize<'de> for IntIn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntIn;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<IntIn, E> {
                s.trim().parse().map(IntIn).map_err(|_| E::custom(format!("invalid integer {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<IntIn, E> {
                Ok(IntIn(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<IntIn, E> {
                Ok(IntIn(Int::from(v)))
            }
        }
        d.deserialize_any(V)
    }
}

/// A period: exact `["re", "im"]` strings, or floats for the numeric path.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PeriodIn {
    Exact(RatIn, RatIn),
    Float(f64, f64),
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassIn {
    pub genus: usize,
    pub periods: Vec<PeriodIn>,
}

pub enum ClassData {
    Exact(CohomologyClass),
    Float(usize, Vec<(f64, f64)>),
}

impl ClassIn {
    /// Exact when every entry is a string or an integer, otherwise all entries as floats.
    pub fn decode(&self) -> Result<ClassData> {
        let exact: Option<Vec<GaussRat>> = self
            .periods
            .iter()
            .map(|p| match p {
                PeriodIn::Exact(a, b) => Some(GaussRat::new(a.0.clone(), b.0.clone())),
                _ => None,
            })
            .collect();
        match exact {
            Some(p) => Ok(ClassData::Exact(CohomologyClass::new(self.genus, p)?)),
            None => Ok(ClassData::Float(self.genus, self.periods.iter().map(PeriodIn::to_f64).collect())),
        }
    }

    pub fn exact(&self) -> Result<CohomologyClass> {
        match self.decode()? {
            ClassData::Exact(c) => Ok(c),
            ClassData::Float(..) => Err(isoperiod_core::Error::InvalidArgument("pair input must be exact")),
        }
    }
}

impl PeriodIn {
    fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        match self {
            PeriodIn::Exact(a, b) => (a.0.to_f64().unwrap_or(f64::NAN), b.0.to_f64().unwrap_or(f64::NAN)),
            PeriodIn::Float(a, b) => (*a, *b),
        }
    }
}

pub fn ints(v: &[IntIn]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn rats(v: &[RatIn]) -> Vec<Rat> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn lattice(rows: &[Vec<IntIn>]) -> Result<Sublattice> {
    Sublattice::from_vectors(rows.iter().map(|r| ints(r)).collect())
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoverIn {
    pub degree: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    #[serde(default)]
    pub branch: Vec<Vec<usize>>,
}

fn permutation(degree: usize, images: &[usize]) -> Result<Permutation> {
    if images.len() != degree {
        return Err(isoperiod_core::Error::DegreeMismatch);
    }
    Permutation::new(images.to_vec())
}

impl CoverIn {
    pub fn decode(&self) -> Result<BranchedTorusCover> {
        let branch = self.branch.iter().map(|p| permutation(self.degree, p)).collect::<Result<_>>()?;
        BranchedTorusCover::new(permutation(self.degree, &self.a)?, permutation(self.degree, &self.b)?, branch)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct OrigamiIn {
    pub degree: usize,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
}

impl OrigamiIn {
    pub fn decode(&self) -> Result<Origami> {
        Origami::new(permutation(self.degree, &self.h)?, permutation(self.degree, &self.v)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CurveIn {
    Hyperelliptic { f: Vec<RatIn> },
    Quartic { coefficients: Vec<RatIn> },
}

impl CurveIn {
    pub fn decode(&self) -> Result<Curve> {
        match self {
            CurveIn::Hyperelliptic { f } => Ok(Curve::Hyperelliptic(HyperellipticCurve::new(Poly::new(rats(f)))?)),
            CurveIn::Quartic { coefficients } => Ok(Curve::Quartic(PlaneQuartic::new(rats(coefficients))?)),
        }
    }
}

pub fn differential(curve: &Curve, coeffs: &[RatIn]) -> Result<Differential> {
    let mut v = rats(coeffs);
    // hyperelliptic differentials may be given as a polynomial of lower degree
    if matches!(curve, Curve::Hyperelliptic(_)) && v.len() < curve.genus() {
        v.resize(curve.genus(), Rat::from_integer(Int::from(0)));
    }
    curve.differential(v)
}

pub fn rat_out(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn int_out(n: &Int) -> Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn rats_out(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_out).collect())
}

pub fn gauss_out(z: &GaussRat) -> Value {
    json!([format_rat(&z.re), format_rat(&z.im)])
}

pub fn int_matrix_out(m: &[Vec<Int>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(int_out).collect())).collect())
}

pub fn rat_matrix_out(m: &[Vec<Rat>]) -> Value {
    Value::Array(m.iter().map(|r| rats_out(r)).collect())
}

pub fn cover_out(c: &BranchedTorusCover) -> Value {
    json!({
        "degree": c.degree(),
        "a": c.a().images(),
        "b": c.b().images(),
        "branch": c.branch().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
    })
}

pub fn complex_out(re: f64, im: f64) -> Value {
    json!([re, im])
}
