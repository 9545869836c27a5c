pub mod affine;
pub mod check;
pub mod cli;
pub mod dimension;
pub mod farkas;
pub mod format;
pub mod error;
pub mod llrf;
pub mod lp;
pub mod mlc;
pub mod polyhedra;
pub mod polyhedron;
pub mod rational;
pub mod reductions;
pub mod synth;
pub mod witness;

pub use affine::AffineFunction;
pub use error::{Error, Result};
pub use llrf::{LexRankingFunction, RankingClass};
pub use mlc::{Domain, MlcLoop};
pub use polyhedron::{Constraint, GeneratorRep, Polyhedron, Relation};
pub use rational::Rational;
