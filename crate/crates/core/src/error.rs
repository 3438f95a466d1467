use core::fmt;

/// Every failure the library can report.
///
/// Each variant carries a stable snake-case tag (see [`Error::tag`]) that the
/// command-line front end prints next to the human-readable message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidGenus(usize),
    ZeroVector,
    DimensionMismatch { expected: usize, found: usize },
    RankDeficient,
    NotSymplectic,
    NotPrimitive,
    NotComplete,
    UnequalDeterminants,
    RestrictionDivisible,
    UnsupportedRank(usize),
    DegeneratePeriodGroup,
    RealPartRankDeficient,
    NotHodgeRiemann,
    NotIsotropic,
    DependentClasses,
    ZeroClass,
    OddDeterminant,
    DeterminantNotOne,
    InvalidArgument(&'static str),

    InvalidPermutation,
    DegreeMismatch,
    Intransitive,
    MonodromyRelationViolated,
    NoDegreeOneCover,
    InvalidDegree,

    NotSquarefree,
    InvalidCurveDegree(usize),
    ZeroDifferential,
    DegreeBoundExceeded,
    DependentDifferentials,
    UnsupportedTauDimension(usize),
    CoincidentParameters,
    ParameterIsBranchPoint,
    SharedZero,
    IrrationalZeroes,
    HigherOrderZero,
    ZeroAtInfinity,
    ZeroAtBranchPoint,
    CurveMismatch,
    SingularQuartic,
    NonSimpleZeroes,
    DegenerateQuadruple,
    NumericFailure,

    Internal(&'static str),
}

impl Error {
    pub fn tag(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidGenus(_) => "invalid_genus",
            ZeroVector => "zero_vector",
            DimensionMismatch { .. } => "dimension_mismatch",
            RankDeficient => "rank_deficient",
            NotSymplectic => "not_symplectic_sublattice",
            NotPrimitive => "vector_not_primitive",
            NotComplete => "incomplete_sublattice",
            UnequalDeterminants => "unequal_determinants",
            RestrictionDivisible => "restriction_not_indivisible",
            UnsupportedRank(_) => "unsupported_rank",
            DegeneratePeriodGroup => "degenerate_period_group",
            RealPartRankDeficient => "real_part_rank_deficient",
            NotHodgeRiemann => "not_hodge_riemann",
            NotIsotropic => "not_isotropic",
            DependentClasses => "dependent_classes",
            ZeroClass => "zero_class",
            OddDeterminant => "odd_determinant",
            DeterminantNotOne => "determinant_not_one",
            InvalidArgument(_) => "invalid_argument",
            InvalidPermutation => "invalid_permutation",
            DegreeMismatch => "degree_mismatch",
            Intransitive => "intransitive",
            MonodromyRelationViolated => "monodromy_relation_violated",
            NoDegreeOneCover => "no_degree_one_cover",
            InvalidDegree => "invalid_degree",
            NotSquarefree => "not_squarefree",
            InvalidCurveDegree(_) => "invalid_curve_degree",
            ZeroDifferential => "zero_differential",
            DegreeBoundExceeded => "degree_bound_exceeded",
            DependentDifferentials => "dependent_differentials",
            UnsupportedTauDimension(_) => "unsupported_tau_dimension",
            CoincidentParameters => "coincident_parameters",
            ParameterIsBranchPoint => "parameter_is_branch_point",
            SharedZero => "shared_zero",
            IrrationalZeroes => "irrational_zeroes",
            HigherOrderZero => "higher_order_zero",
            ZeroAtInfinity => "zero_at_infinity",
            ZeroAtBranchPoint => "zero_at_branch_point",
            CurveMismatch => "curve_mismatch",
            SingularQuartic => "singular_quartic",
            NonSimpleZeroes => "non_simple_zeroes",
            DegenerateQuadruple => "degenerate_quadruple",
            NumericFailure => "numeric_failure",
            Internal(_) => "internal",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            InvalidGenus(g) => write!(f, "invalid genus {g}"),
            ZeroVector => f.write_str("zero vector"),
            DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            RankDeficient => f.write_str("basis is rank deficient"),
            NotSymplectic => f.write_str("not symplectic sublattice"),
            NotPrimitive => f.write_str("vector not primitive"),
            NotComplete => f.write_str("sublattice is not complete"),
            UnequalDeterminants => f.write_str("unequal determinants"),
            RestrictionDivisible => f.write_str("restriction not indivisible"),
            UnsupportedRank(r) => write!(f, "unsupported sublattice rank {r}"),
            DegeneratePeriodGroup => f.write_str("degenerate period group"),
            RealPartRankDeficient => f.write_str("real part has deficient rank"),
            NotHodgeRiemann => f.write_str("classes are not Hodge-Riemann positive"),
            NotIsotropic => f.write_str("classes are not isotropic"),
            DependentClasses => f.write_str("classes are linearly dependent"),
            ZeroClass => f.write_str("zero class"),
            OddDeterminant => f.write_str("odd determinant"),
            DeterminantNotOne => f.write_str("matrix determinant is not 1"),
            InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            InvalidPermutation => f.write_str("not a permutation"),
            DegreeMismatch => f.write_str("permutation degrees differ"),
            Intransitive => f.write_str("monodromy group is not transitive"),
            MonodromyRelationViolated => f.write_str("monodromy relation violated"),
            NoDegreeOneCover => f.write_str("no degree-1 cover of higher genus"),
            InvalidDegree => f.write_str("degree must be positive"),
            NotSquarefree => f.write_str("polynomial is not squarefree"),
            InvalidCurveDegree(d) => write!(f, "hyperelliptic polynomial degree {d} gives genus < 2"),
            ZeroDifferential => f.write_str("zero differential"),
            DegreeBoundExceeded => f.write_str("polynomial exceeds the degree bound"),
            DependentDifferentials => f.write_str("differentials are linearly dependent"),
            UnsupportedTauDimension(k) => write!(f, "unsupported subspace dimension {k}"),
            CoincidentParameters => f.write_str("coincident parameters"),
            ParameterIsBranchPoint => f.write_str("parameter is a root of f"),
            SharedZero => f.write_str("beta vanishes at a zero of alpha"),
            IrrationalZeroes => f.write_str("zeroes are not rational"),
            HigherOrderZero => f.write_str("higher-order zero unsupported in residue mode"),
            ZeroAtInfinity => f.write_str("differential vanishes at infinity"),
            ZeroAtBranchPoint => f.write_str("differential vanishes at a Weierstrass point"),
            CurveMismatch => f.write_str("objects live on different curves"),
            SingularQuartic => f.write_str("quartic is singular"),
            NonSimpleZeroes => f.write_str("non-simple zeroes"),
            DegenerateQuadruple => f.write_str("degenerate quadruple"),
            NumericFailure => f.write_str("root finding did not converge"),
            Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
