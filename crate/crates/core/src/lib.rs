//! Exact invariants of the quotient category QGr for path algebras of
//! quivers and for finitely presented monomial algebras.

pub mod error;
pub mod extquiver;
pub mod growth;
pub mod k0;
pub mod linalg;
pub mod matricial;
pub mod matrix;
pub mod monomial;
pub mod oracles;
pub mod points;
pub mod poset;
pub mod quiver;

pub use error::{QgrError, Result};
pub use num_bigint::{BigInt, BigUint};
pub use growth::{gk_dimension, growth_oracle, GrowthReport, SimpleCycle};
pub use matrix::IntMatrix;
pub use poset::Poset;
pub use quiver::{parse_quiver, parse_quiver_json, serialize, Format, Path, Quiver};

/// JSON number when the value fits in 64 bits, decimal string otherwise.
pub fn big_json<T: std::fmt::Display + num_traits::ToPrimitive>(x: &T) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => match x.to_u64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(x.to_string()),
        },
    }
}
