//! Exact computational commutative algebra over QQ or GF(p): polynomial
//! arithmetic, Groebner bases, ideal operations, Hilbert series, graded free
//! resolutions and linkage.

pub mod budget;
pub mod error;
pub mod field;
mod geobucket;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod linkage;
pub mod modules;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec, DEFAULT_PRIME};
pub use groebner::{buchberger, is_groebner, lead_ideal, normal_form, BuchbergerOpts, GroebnerBasis};
pub use hilbert::HilbertSeries;
pub use ideal::{CompleteIntersectionWitness, Ideal};
pub use linkage::{find_ci, link, verify_link_properties, LinkRecord, LinkReport};
pub use monomial::{monomials_of_degree, Monomial};
pub use order::MonomialOrder;
pub use parse::{format, parse};
pub use poly::{Polynomial, Term};
pub use resolution::{free_resolution, BettiTable, FreeComplex};
pub use ring::PolyRing;
