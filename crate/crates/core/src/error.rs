use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// `e(0)` is undefined: `B_0` is the zero polynomial.
    #[error("degree of B_0 is undefined")]
    ZeroDegree,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not admissible here (need a prime > 3)")]
    SmallModulus(u64),
    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },
    #[error("{0} is not one of the admissible roots 0, -1, -1/2, -1/3")]
    NotAdmissibleRoot(String),
    #[error("residues have different moduli ({0} and {1})")]
    ModulusMismatch(u64, u64),
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("cannot parse {0:?} as a binary word")]
    ParseWord(String),
    #[error("parameter out of range: {0}")]
    Range(String),
}
