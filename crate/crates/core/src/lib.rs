//! Legendrian contact homology of knots given as plat fronts.
//!
//! A front is resolved to a Lagrangian projection ([`diagram`]), its Reeb
//! chords are graded ([`grading`]), immersed disks are counted ([`disks`]),
//! and the resulting differential graded algebra ([`algebra`]) is studied
//! through augmentations and linearized homology ([`augment`], [`homology`]).

pub mod algebra;
pub mod augment;
pub mod bounds;
pub mod diagram;
pub mod disks;
pub mod error;
pub mod front;
pub mod grading;
pub mod homology;
pub mod laurent;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod svg;

pub use error::{Error, Result};
pub use front::{parse_front, FrontEvent, FrontWord};
pub use scalar::{EuclideanInt, Field, Ring, Zp};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;
pub type Z2 = Zp<2>;
pub type Z3 = Zp<3>;
pub type Z5 = Zp<5>;
pub type Z7 = Zp<7>;
