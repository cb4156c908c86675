//! Plane-graph combinatorics for planar Turán problems on friendship graphs
//! and fans.
//!
//! The crate is organised bottom-up:
//!
//! * [`plane`]: rotation-system plane graphs, face tracing and face statistics.
//! * [`detect`]: `H_k` (friendship) and `F_k` (fan) subgraph detection.
//! * [`blocks`]: triangular-blocks, their C-faces and improvement-blocks.
//! * [`canon`] and [`enumerate`]: canonical codes and isomorph-free generation
//!   of plane triangulations.
//! * [`construct`]: named graphs and the extremal families.
//! * [`verify`]: certificates for the exact values, lemmas and bounds.
//! * [`io`]: planar_code, rotation text and DOT formats.

pub mod blocks;
pub mod canon;
pub mod construct;
pub mod detect;
pub mod enumerate;
mod error;
pub mod io;
pub mod par;
pub mod plane;
pub mod verify;

pub use error::{Error, Result};
pub use plane::{Dart, Face, FaceId, FaceProfile, PlaneGraph, SubgraphView, Vertex};
