//! Cubic extensions of finite fields and of rational function fields `F_q(x)`.
//!
//! The pipeline reduces a monic cubic to a canonical generator, decides how it
//! splits over finite fields, and computes place splitting, ramification and
//! genus for cubic function fields.
//!
//! ```
//! use cubic_ext::arith::{genus, Extension};
//! use cubic_ext::canon::Cubic;
//! use cubic_ext::cli::parse_cubic;
//! use cubic_ext::ffield::Field;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let f = Field::from_spec("5")?;
//! let [e, g1, g0] = parse_cubic("X^3-3*X-x", f, true)?;
//! let (l, _) = Extension::from_cubic(&Cubic::new(e, g1, g0))?;
//! assert_eq!(genus(&l)?, 0);
//! # Ok(())
//! # }
//! ```

pub mod ffield;
pub mod polyring;
pub mod places;
pub mod canon;
pub mod ffcubic;
pub mod arith;
pub mod cli;
