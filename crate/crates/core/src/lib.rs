//! Canonical forms for the action of PGL2(F_q[t]) on ordered triples of
//! boundary points of the Bruhat-Tits tree of PGL2(F_q((1/t))).
//!
//! Modules, bottom-up:
//!
//! * [`algebra`]: F_q, F_q[t], Laurent polynomials and expansions.
//! * [`projective`]: points of P^1(F_q(t)), triples, continued fractions.
//! * [`group`]: matrices, generators, words, the triple/group bijection.
//! * [`domain`]: the fundamental domain and reduction into it.
//! * [`tree`]: vertices, distances, tripod centers, geodesics, orbit classes.
//! * [`dynamics`]: the maps `varphi_h` and `psi_h`.
//! * [`oracle`]: brute-force cross-checks and random sampling.
//! * [`text`]: printers and parsers; [`cli`]: the command-line front end.

pub mod algebra;
pub mod cli;
pub mod domain;
pub mod dynamics;
pub mod error;
pub mod group;
pub mod oracle;
pub mod projective;
pub mod text;
pub mod tree;

pub use algebra::{Degree, Field, FieldElem, LaurentPoly, Poly};
pub use domain::{membership, orbit_equivalent, reduce, MembershipMask, ReductionResult};
pub use dynamics::{flow_orbit, psi_h, varphi_h, FlowStep};
pub use error::{Error, Result};
pub use group::{GammaElem, Generator, Word};
pub use projective::{ContinuedFraction, ProjPoint, Triple};
pub use tree::{ParamGeodesic, Vertex};
