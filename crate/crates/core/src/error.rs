use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A letter index or token outside the declared alphabet.
    UnknownLetter(String),
    DuplicateLetter(String),
    EmptyImage(String),
    EmptyAlphabet,
    /// An expansion would exceed the configured word cap.
    Budget {
        needed: u128,
        cap: usize,
    },
    /// The simplifiability search visited more candidates than allowed.
    SearchBudget {
        visited: u64,
    },
    /// The orbit enumeration would scan more digit words than allowed.
    EnumerationBudget {
        words: u64,
        cap: u64,
    },
    NotConstantLength,
    LengthTooShort(usize),
    NotPrimitive,
    NotOneToOne,
    FiniteSubshift,
    /// Prefix/center/suffix chain broken at the given level.
    ChainViolation {
        level: usize,
    },
    BadEntryLength {
        level: usize,
    },
    MissingSeed(&'static str),
    ForbiddenSeed(&'static str),
    /// No power `τ^r` with `r ≤ |A|` fixes the seed on the required side.
    NoFixingPower(String),
    /// A seed letter is not adjacent to the centers in the language.
    InadmissibleSeed(String),
    EmptyPeriod,
    DigitOutOfRange {
        digit: u32,
        base: u32,
    },
    MismatchedSystems,
    /// A window does not cover the coordinates a computation reads.
    InsufficientWindow {
        needed: i64,
    },
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownLetter(l) => write!(f, "unknown letter `{l}`"),
            Error::DuplicateLetter(l) => write!(f, "letter `{l}` defined twice"),
            Error::EmptyImage(l) => write!(f, "letter `{l}` has an empty image"),
            Error::EmptyAlphabet => f.write_str("alphabet is empty"),
            Error::Budget { needed, cap } => {
                write!(
                    f,
                    "word of length {needed} exceeds the cap of {cap} symbols"
                )
            }
            Error::SearchBudget { visited } => {
                write!(
                    f,
                    "simplification search budget exhausted after {visited} candidates"
                )
            }
            Error::EnumerationBudget { words, cap } => {
                write!(
                    f,
                    "orbit enumeration needs {words} digit words, above the budget of {cap}"
                )
            }
            Error::NotConstantLength => f.write_str("substitution is not of constant length"),
            Error::LengthTooShort(p) => write!(f, "constant length {p} is below 2"),
            Error::NotPrimitive => f.write_str("substitution is not primitive"),
            Error::NotOneToOne => f.write_str("substitution is not one-to-one"),
            Error::FiniteSubshift => f.write_str("the generated subshift is finite"),
            Error::ChainViolation { level } => {
                write!(f, "image of the next center does not split as prefix·center·suffix at level {level}")
            }
            Error::BadEntryLength { level } => {
                write!(f, "entry at level {level} does not have total length p")
            }
            Error::MissingSeed(side) => write!(f, "{side} seed required but absent"),
            Error::ForbiddenSeed(side) => {
                write!(f, "{side} seed given but the tail is already determined")
            }
            Error::NoFixingPower(l) => write!(f, "no power r <= |A| fixes seed `{l}`"),
            Error::InadmissibleSeed(l) => {
                write!(f, "seed `{l}` is not admissible next to the centers")
            }
            Error::EmptyPeriod => f.write_str("period must be nonempty"),
            Error::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} out of range for base {base}")
            }
            Error::MismatchedSystems => f.write_str("points belong to different substitutions"),
            Error::InsufficientWindow { needed } => {
                write!(f, "window does not cover coordinate {needed}")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
