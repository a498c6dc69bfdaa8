//! Combinatorial model of the exceptional tubes of the cluster category of
//! affine type `D_n`.
//!
//! The tube of rank `n - 2` is realised on peripheral arcs of the
//! twice-punctured disk ([`surface`]), the two tubes of rank 2 on interior
//! arcs between the punctures ([`interior`]). [`tubes`] builds truncated
//! windows of all three as translation quivers and [`quiver`] verifies them.
//! [`notation`] and [`emit`] handle text input and output.

pub mod emit;
pub mod interior;
pub mod notation;
pub mod quiver;
pub mod surface;
pub mod tubes;

pub use interior::{normalize, Component, CylEnd, InteriorArc, InteriorError, RawInteriorArc};
pub use notation::{parse_arc, Notation, NotationError, ParsedArc};
pub use quiver::{Quiver, TranslationQuiver, Triangulation};
pub use surface::{PeripheralArc, Puncture, SurfaceError, Tag};
pub use tubes::{build_gamma, build_t1, verify_theorem, TubeKind, TubeWindow};
