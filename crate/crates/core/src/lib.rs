//! Exact computation in Ore extensions of `K[x]` and `K[x, x^-1]` together
//! with their two-dimensional integrable differential calculi.
//!
//! The layers build on each other:
//!
//! - [`scalar`]: exact rationals, the coefficient field at concrete parameters.
//! - [`basering`]: `K[x]`, `K[x, x^-1]`, automorphisms `sigma` and `sigma`-derivations.
//! - [`ore`]: normal-form arithmetic for `yx = sigma(x) y + p(x)` and algebra maps.
//! - [`morphisms`]: the automorphisms twisting the first-order calculus and the
//!   classification of presentations on which they exist.
//! - [`calculus`]: one- and two-forms, `d`, the wedge product, volume forms,
//!   dual-basis integrability checks, divergence and its preimages.
//! - [`hopf`]: the three Hopf families, coproducts on tensor powers and the
//!   end-to-end smoothness pipeline.
//!
//! Every identity is checked with exact arithmetic; parameters such as `q`
//! and `r` are concrete rationals.

pub mod basering;
pub mod calculus;
pub mod error;
pub mod hopf;
mod linalg;
pub mod morphisms;
pub mod ore;
pub mod report;
pub mod sample;
pub mod scalar;
mod text;

pub use basering::{BaseKind, BasePoly, SigmaSpec};
pub use calculus::{Calculus, DualBasis, IntegralForm1, OneForm, TwoForm, VolumeForm};
pub use error::{Error, Result};
pub use hopf::{Bialgebra, HopfFamily, Tensor};
pub use morphisms::{Admissibility, NuPair, Verdict};
pub use ore::{Algebra, AlgebraSpec, Endomorphism, OreElement};
pub use report::Report;
pub use scalar::Scalar;
