use core::fmt;

/// Errors raised by the core library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    NonPrimeP(u32),
    ReducibleModulus,
    NotAUnit,
    RingMismatch,
    ValuationOfZero,
    NotAUnitSeries,
    CompositionDiverges,
    NotReversible,
    RootDegreeDivisibleByP,
    NotAOnePlusSeries,
    ReductionIsZero,
    DependentCharacter,
    ConductorNotPrimeToP,
    DependentMu,
    ReductionMismatch,
    NoSolution,
    EmptyClass,
    TooLarge,
    PoleOrderExceeded,
    PrecisionTooLow,
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeP(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => f.write_str("modulus is not a monic irreducible polynomial of the requested degree"),
            Error::NotAUnit => f.write_str("element is not a unit"),
            Error::RingMismatch => f.write_str("operands live over different coefficient rings"),
            Error::ValuationOfZero => f.write_str("valuation of a series that vanishes to its precision"),
            Error::NotAUnitSeries => f.write_str("series has no unit coefficient below its precision"),
            Error::CompositionDiverges => f.write_str("inner series must have positive valuation"),
            Error::NotReversible => f.write_str("series is not of the form c·t + higher with c a unit"),
            Error::RootDegreeDivisibleByP => f.write_str("root degree is divisible by the characteristic"),
            Error::NotAOnePlusSeries => f.write_str("series is not congruent to 1"),
            Error::ReductionIsZero => f.write_str("series vanishes modulo the maximal ideal"),
            Error::DependentCharacter => f.write_str("character values are linearly dependent over F_p"),
            Error::ConductorNotPrimeToP => f.write_str("conductor must be prime to p (and > 1 when s ≥ 2)"),
            Error::DependentMu => f.write_str("mu is not an F_p-basis of F_{p^s}"),
            Error::ReductionMismatch => f.write_str("data does not reduce to the expected residue"),
            Error::NoSolution => f.write_str("lifting equation has no solution"),
            Error::EmptyClass => f.write_str("class is zero"),
            Error::TooLarge => f.write_str("problem size exceeds supported bounds"),
            Error::PoleOrderExceeded => f.write_str("pole order exceeds m+1"),
            Error::PrecisionTooLow => f.write_str("precision too low for the requested computation"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
