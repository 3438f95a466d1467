use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoperiod_core::arith::{format_rat, Rat};
use isoperiod_core::covers::{construct_cover, cover_class_invariants, genus_of_origami, period_lattice_of_cover};
use isoperiod_core::curve::hyperelliptic::{
    is_divisible_by, overlap_degree, residue_sum, residues_of_quotient, residues_of_quotient_approx, section_values,
    section_values_approx, skew_couplet_shift, weighted_residue_sum, QuadDifferential,
};
use isoperiod_core::curve::quartic::quartic_cross_ratio;
use isoperiod_core::curve::{
    classify, isoperiodic_deformation_dim, noether_image_dim, obscurant, Curve, Differential, HyperellipticCurve, Poly,
    TauSubspace,
};
use isoperiod_core::lattice::{extend_to_symplectic_basis, map_rank2_sublattice, map_rank4_sublattice, LatticeVector};
use isoperiod_core::realize::{
    is_realizable_elliptic_pair, is_realizable_line, is_realizable_line_approx, polyperiod_dimension_gap, severi_range,
    RealizabilityVerdict,
};
use isoperiod_core::Error;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::format::*;
use crate::Failure;

type Out = Result<Value, Failure>;

#[derive(Parser, Debug)]
#[command(name = "isoperiod", version, about = "Realizability of cohomology classes by abelian differentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Inline JSON; overrides `--input`.
    pub json: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Numeric {
    /// Tolerance for floating-point paths.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Realizability of a class or an elliptic pair.
    #[command(subcommand)]
    Realizable(RealizableCmd),
    /// Integral symplectic lattice operations.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Branched torus covers and origamis.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Multiplication of differentials on explicit curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Dimension counts.
    #[command(subcommand)]
    Dims(DimsCmd),
    /// Genera and node counts of curves on an abelian surface of determinant `det`.
    Severi {
        #[arg(long)]
        det: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum RealizableCmd {
    /// `{"genus", "periods": [[re, im], ...]}`; float periods use the numeric path.
    Line {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
        /// Largest denominator tried when reconstructing float periods.
        #[arg(long, default_value_t = 1_000_000)]
        max_denominator: i64,
    },
    /// `{"a": class, "b": class}`.
    Pair {
        #[command(flatten)]
        input: Input,
        /// Coefficient height for the simplicity refuter.
        #[arg(long, default_value_t = 2)]
        height: u32,
        /// Skip the simplicity refuter.
        #[arg(long)]
        assume_simple: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Determinant of a sublattice given as an array of basis vectors.
    Det(Input),
    /// Saturation of a sublattice.
    Saturate(Input),
    /// Alternating normal form of the restricted form.
    NormalForm(Input),
    /// `{"source", "target"}` rank-2 sublattices; prints `A` with `A(source) = target`.
    Map2(Input),
    /// Same for rank-4 sublattices.
    Map4(Input),
    /// `{"vector"}` primitive; prints `A` with first column `vector`.
    Extend(Input),
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Certificate of a degree-`d` torus cover of genus `g`.
    Build {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        degree: usize,
    },
    /// `{"degree", "a", "b", "branch"}`; checks the certificate.
    Analyze(Input),
    /// `{"degree", "h", "v"}`.
    OrigamiGenus(Input),
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// `{"curve", "tau"}`: coprime or linked.
    Classify(Input),
    /// `{"curve", "tau"}`: kernel of the multiplication map.
    Obscurant(Input),
    /// `{"curve", "a", "b"}` on a hyperelliptic curve.
    Overlap(Input),
    /// `{"curve"}`: rank of the symmetric multiplication map.
    Noether(Input),
    /// `{"curve", "alpha", "omega"}` with optional `"section": {"gamma", "beta"}`.
    Residues {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// `{"curve", "alpha", "beta", "gamma"}` on a quartic.
    CrossRatio {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
    },
    /// `{"curve", "alpha", "beta", "gamma"}`: values of `gamma/beta` at the zeroes of `alpha`.
    Sections {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
    },
}

#[derive(Subcommand, Debug)]
pub enum DimsCmd {
    /// Dimension gap of the polyperiod map for `k` classes in genus `g`.
    Gap {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
    },
}

fn read<T: DeserializeOwned>(input: &Input) -> Result<T, Failure> {
    let text = match (&input.json, input.input.as_str()) {
        (Some(j), _) => j.clone(),
        (None, "-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
            s
        }
        (None, path) => std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))?,
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn execute(cli: &Cli) -> Out {
    match &cli.command {
        Command::Realizable(c) => realizable(c),
        Command::Lattice(c) => lattice_cmd(c),
        Command::Cover(c) => cover(c),
        Command::Curve(c) => curve(c),
        Command::Dims(DimsCmd::Gap { g, k }) => Ok(json!(polyperiod_dimension_gap(*g, *k)?)),
        Command::Severi { det } => {
            let rows: Vec<Value> = severi_range(*det)?.into_iter().map(|(g, n)| json!({"genus": g, "nodes": n})).collect();
            Ok(json!({"det": det, "curves": rows}))
        }
    }
}

fn verdict_out(v: &RealizabilityVerdict) -> Value {
    json!({
        "realizable": v.realizable,
        "area": rat_out(&v.area),
        "covolume": v.covolume.as_ref().map(rat_out),
        "det": v.det.as_ref().map(int_out),
        "reason": v.reason.tag(),
        "heuristic": v.heuristic,
    })
}

#[derive(Deserialize)]
struct PairIn {
    a: ClassIn,
    b: ClassIn,
}

fn realizable(c: &RealizableCmd) -> Out {
    match c {
        RealizableCmd::Line { input, numeric, max_denominator } => {
            let class: ClassIn = read(input)?;
            let v = match class.decode()? {
                ClassData::Exact(c) => is_realizable_line(&c)?,
                ClassData::Float(g, p) => is_realizable_line_approx(g, &p, numeric.tolerance, *max_denominator)?,
            };
            Ok(verdict_out(&v))
        }
        RealizableCmd::Pair { input, height, assume_simple } => {
            let p: PairIn = read(input)?;
            let v = is_realizable_elliptic_pair(&p.a.exact()?, &p.b.exact()?, *assume_simple, *height)?;
            Ok(json!({
                "realizable": v.realizable,
                "genus": v.genus,
                "pfaffian": int_out(&v.pfaffian),
                "det": int_out(&v.det),
                "bound": int_out(&v.bound),
                "det_even": v.det_even,
                "det_at_least_bound": v.det_at_least_bound,
                "reason": v.reason.tag(),
                "simplicity_witness": v.simplicity_witness.as_deref().map(int_matrix_out),
            }))
        }
    }
}

#[derive(Deserialize)]
struct MapIn {
    source: Vec<Vec<IntIn>>,
    target: Vec<Vec<IntIn>>,
}

#[derive(Deserialize)]
struct VectorIn {
    vector: Vec<IntIn>,
}

fn lattice_cmd(c: &LatticeCmd) -> Out {
    match c {
        LatticeCmd::Det(i) => {
            let u = lattice(&read::<Vec<Vec<IntIn>>>(i)?)?;
            Ok(json!({
                "genus": u.genus(),
                "rank": u.rank(),
                "determinant": int_out(&u.determinant()?),
                "complete": u.is_complete(),
            }))
        }
        LatticeCmd::Saturate(i) => {
            let u = lattice(&read::<Vec<Vec<IntIn>>>(i)?)?;
            let s = u.saturate();
            Ok(json!({"basis": int_matrix_out(s.basis()), "was_complete": u.is_complete()}))
        }
        LatticeCmd::NormalForm(i) => {
            let n = lattice(&read::<Vec<Vec<IntIn>>>(i)?)?.alternating_normal_form()?;
            Ok(json!({
                "divisors": n.divisors.iter().map(int_out).collect::<Vec<_>>(),
                "determinant": int_out(&n.determinant()),
                "basis": int_matrix_out(&n.basis),
                "change": int_matrix_out(&n.change),
            }))
        }
        LatticeCmd::Map2(i) | LatticeCmd::Map4(i) => {
            let m: MapIn = read(i)?;
            let (u, v) = (lattice(&m.source)?, lattice(&m.target)?);
            let a = if matches!(c, LatticeCmd::Map2(_)) { map_rank2_sublattice(&u, &v)? } else { map_rank4_sublattice(&u, &v)? };
            Ok(json!({"matrix": int_matrix_out(a.entries())}))
        }
        LatticeCmd::Extend(i) => {
            let v: VectorIn = read(i)?;
            let a = extend_to_symplectic_basis(&LatticeVector(ints(&v.vector)))?;
            Ok(json!({"matrix": int_matrix_out(a.entries())}))
        }
    }
}

fn cover(c: &CoverCmd) -> Out {
    match c {
        CoverCmd::Build { genus, degree } => Ok(cover_out(&construct_cover(*genus, *degree)?)),
        CoverCmd::Analyze(i) => {
            let c = read::<CoverIn>(i)?.decode()?;
            let inv = cover_class_invariants(&c)?;
            let lattice = period_lattice_of_cover(&c);
            Ok(json!({
                "degree": c.degree(),
                "connected": true,
                "genus": inv.genus,
                "area": int_out(&inv.area),
                "covolume": int_out(&inv.covolume),
                "det": int_out(&inv.det),
                "period_lattice": lattice.basis().iter().map(gauss_out).collect::<Vec<_>>(),
            }))
        }
        CoverCmd::OrigamiGenus(i) => {
            let o = read::<OrigamiIn>(i)?.decode()?;
            Ok(json!({"degree": o.degree(), "genus": genus_of_origami(&o)}))
        }
    }
}

#[derive(Deserialize)]
struct TauIn {
    curve: CurveIn,
    tau: Vec<Vec<RatIn>>,
}

#[derive(Deserialize)]
struct CurveOnly {
    curve: CurveIn,
}

#[derive(Deserialize)]
struct TwoIn {
    curve: CurveIn,
    a: Vec<RatIn>,
    b: Vec<RatIn>,
}

#[derive(Deserialize)]
struct TripleIn {
    curve: CurveIn,
    alpha: Vec<RatIn>,
    beta: Vec<RatIn>,
    gamma: Vec<RatIn>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OmegaIn {
    Product { product: (Vec<RatIn>, Vec<RatIn>) },
    Explicit { q: Vec<RatIn>, #[serde(default)] r: Vec<RatIn> },
}

#[derive(Deserialize)]
struct SectionIn {
    gamma: Vec<RatIn>,
    beta: Vec<RatIn>,
}

#[derive(Deserialize)]
struct ResidueIn {
    curve: CurveIn,
    alpha: Vec<RatIn>,
    omega: OmegaIn,
    section: Option<SectionIn>,
}

fn tau_subspace(t: &TauIn) -> Result<TauSubspace, Failure> {
    let c = t.curve.decode()?;
    let basis = t.tau.iter().map(|d| differential(&c, d)).collect::<Result<Vec<_>, _>>()?;
    Ok(TauSubspace::new(&c, basis)?)
}

fn hyperelliptic(c: &CurveIn) -> Result<HyperellipticCurve, Failure> {
    match c.decode()? {
        Curve::Hyperelliptic(h) => Ok(h),
        Curve::Quartic(_) => Err(Error::CurveMismatch.into()),
    }
}

fn hyper_differentials(h: &HyperellipticCurve, ds: &[&[RatIn]]) -> Result<Vec<Differential>, Failure> {
    let c = Curve::Hyperelliptic(h.clone());
    Ok(ds.iter().map(|d| differential(&c, d)).collect::<Result<Vec<_>, _>>()?)
}

fn curve(c: &CurveCmd) -> Out {
    match c {
        CurveCmd::Classify(i) => {
            let t = tau_subspace(&read(i)?)?;
            let o = obscurant(&t);
            Ok(json!({
                "classification": classify(&t).tag(),
                "genus": t.curve().genus(),
                "dim": t.dim(),
                "obscurant_dim": o.dim,
                "image_dim": o.image_dim,
                "isoperiodic_deformation_dim": isoperiodic_deformation_dim(&t),
            }))
        }
        CurveCmd::Obscurant(i) => {
            let o = obscurant(&tau_subspace(&read(i)?)?);
            Ok(json!({"dim": o.dim, "image_dim": o.image_dim, "kernel": rat_matrix_out(&o.kernel)}))
        }
        CurveCmd::Overlap(i) => {
            let p: TwoIn = read(i)?;
            let h = hyperelliptic(&p.curve)?;
            let d = hyper_differentials(&h, &[&p.a, &p.b])?;
            Ok(json!({"overlap_degree": overlap_degree(&h, &d[0], &d[1])?}))
        }
        CurveCmd::Noether(i) => {
            let c = read::<CurveOnly>(i)?.curve.decode()?;
            Ok(json!({
                "genus": c.genus(),
                "quadratic_dim": c.quadratic_dim(),
                "noether_image_dim": noether_image_dim(&c),
            }))
        }
        CurveCmd::Residues { input, numeric } => residues(&read(input)?, numeric.tolerance),
        CurveCmd::CrossRatio { input, numeric } => {
            let t: TripleIn = read(input)?;
            let c = t.curve.decode()?;
            let Curve::Quartic(f) = &c else { return Err(Error::CurveMismatch.into()) };
            let d = [&t.alpha, &t.beta, &t.gamma].map(|v| differential(&c, v));
            let [a, b, g] = d;
            let r = quartic_cross_ratio(f, &a?, &b?, &g?, numeric.tolerance)?;
            Ok(json!({
                "points": r.points.iter().map(|p| p.iter().map(|z| complex_out(z.re, z.im)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "values": r.values.iter().map(|z| complex_out(z.re, z.im)).collect::<Vec<_>>(),
                "b_forms": complex_out(r.b_forms.re, r.b_forms.im),
                "b_points": complex_out(r.b_points.re, r.b_points.im),
                "matches": r.matches,
            }))
        }
        CurveCmd::Sections { input, numeric } => {
            let t: TripleIn = read(input)?;
            let h = hyperelliptic(&t.curve)?;
            let d = hyper_differentials(&h, &[&t.alpha, &t.beta, &t.gamma])?;
            match section_values(&h, &d[2], &d[1], &d[0]) {
                Ok(vals) => {
                    let raw: Vec<Rat> = vals.iter().map(|v| v.value.clone()).collect();
                    Ok(json!({
                        "exact": true,
                        "values": vals.iter().map(|v| json!({"x": rat_out(&v.point.x), "sheet": v.point.sheet, "value": rat_out(&v.value)})).collect::<Vec<_>>(),
                        "skew_shift": skew_couplet_shift(&raw).as_ref().map(rat_out),
                    }))
                }
                Err(Error::IrrationalZeroes) => {
                    let vals = section_values_approx(&h, &d[2], &d[1], &d[0], numeric.tolerance)?;
                    Ok(json!({
                        "exact": false,
                        "values": vals.iter().map(|(x, s, v)| json!({"x": complex_out(x.re, x.im), "sheet": s, "value": complex_out(v.re, v.im)})).collect::<Vec<_>>(),
                    }))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn residues(r: &ResidueIn, tolerance: f64) -> Out {
    let h = hyperelliptic(&r.curve)?;
    let alpha = hyper_differentials(&h, &[&r.alpha])?.remove(0);
    let omega: QuadDifferential = match &r.omega {
        OmegaIn::Product { product: (b, d) } => {
            let d = hyper_differentials(&h, &[b, d])?;
            h.product(&d[0], &d[1])
        }
        OmegaIn::Explicit { q, r } => h.quad_differential(Poly::new(rats(q)), Poly::new(rats(r)))?,
    };
    match residues_of_quotient(&h, &omega, &alpha) {
        Ok(res) => {
            let mut out = json!({
                "exact": true,
                "divisible": is_divisible_by(&omega, &alpha),
                "residues": res.iter().map(|x| json!({
                    "x": rat_out(&x.point.x),
                    "sheet": x.point.sheet,
                    "rational": rat_out(&x.value.rational),
                    "coefficient": rat_out(&x.value.coefficient),
                    "radicand": rat_out(&x.value.radicand),
                })).collect::<Vec<_>>(),
                "sum_is_zero": residue_sum(&res).is_zero(),
            });
            if let Some(s) = &r.section {
                let d = hyper_differentials(&h, &[&s.gamma, &s.beta])?;
                let w: Vec<Rat> = section_values(&h, &d[0], &d[1], &alpha)?.into_iter().map(|v| v.value).collect();
                let sum = weighted_residue_sum(&w, &res)?;
                out["weighted_sum_is_zero"] = json!(sum.is_zero());
                out["weighted_sum_rational"] = json!(format_rat(&sum.rational));
            }
            Ok(out)
        }
        Err(Error::IrrationalZeroes) => {
            let res = residues_of_quotient_approx(&h, &omega, &alpha)?;
            let total = res.iter().fold((0.0, 0.0), |acc, (_, _, v)| (acc.0 + v.re, acc.1 + v.im));
            let scale = 1.0 + res.iter().map(|(_, _, v)| v.norm()).fold(0.0, f64::max);
            Ok(json!({
                "exact": false,
                "residues": res.iter().map(|(x, s, v)| json!({"x": complex_out(x.re, x.im), "sheet": s, "value": complex_out(v.re, v.im)})).collect::<Vec<_>>(),
                "sum": complex_out(total.0, total.1),
                "sum_is_zero": total.0.hypot(total.1) <= tolerance * scale,
            }))
        }
        Err(e) => Err(e.into()),
    }
}

/// JSON pretty-printed, or `key  value` lines for objects.
pub fn render(v: &Value, format: OutputFormat) -> String {
    match (format, v) {
        (OutputFormat::Table, Value::Object(m)) => {
            let w = m.keys().map(|k| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in m {
                let cell = match v {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                s.push_str(&format!("{k:<w$}  {cell}\n"));
            }
            s
        }
        (OutputFormat::Table, Value::String(t)) => format!("{t}\n"),
        _ => format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")),
    }
}
