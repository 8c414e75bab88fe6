pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod io;
pub mod liaison;
pub mod linalg;
pub mod monomial;
pub mod pfaffian;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod scenarios;
pub mod suite;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME, SECONDARY_PRIME};
pub use hilbert::HVector;
pub use ideal::Ideal;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::RingContext;
pub use resolution::{BettiTable, DeficiencyProfile, FreeResolution, GradedFreeModule, GradedMap};
