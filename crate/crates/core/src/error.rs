use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant: both polynomials are zero")]
    UndefinedResultant,
    #[error("branch mismatch: y0^2 differs from the series constant term")]
    BranchMismatch,
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("singular model: defining polynomial is not squarefree")]
    SingularModel,
    #[error("defining polynomial must have degree at least 5")]
    DegreeTooSmall,
    #[error("even model required: all Weierstrass points must be affine")]
    EvenModelRequired,
    #[error("leading coefficient is not a square in the working field")]
    LeadingNotSquare,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("divisor support is not rational over the working field")]
    SupportNotRational,
    #[error("mismatched bundles: fields are defined over different data")]
    MismatchedBundles,
    #[error("non-reduced spectral curve: discriminant vanishes identically")]
    NonReducedSpectralCurve,
    #[error("not involution-invariant: odd characteristic-polynomial coefficient is nonzero")]
    NotInvolutionInvariant,
    #[error("even characteristic required")]
    EvenCharacteristicRequired,
    #[error("odd characteristic required")]
    OddCharacteristicRequired,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("incomplete sign table: missing entry for pair ({0}, {1})")]
    IncompleteSignTable(usize, usize),
    #[error("sign table entry ({0}, {1}) fails the degeneracy identity")]
    InadmissibleSignTable(usize, usize),
    #[error("section fails its divisor bound")]
    SectionBoundViolated,
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
