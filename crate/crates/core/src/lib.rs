//! Skip-gram negative-sampling word embeddings with synonym augmentation,
//! plus intrinsic and extrinsic (Word Mover's Distance) evaluation.

pub mod augment;
pub mod config;
pub mod corpus;
pub mod embed_io;
pub mod error;
pub mod eval_extrinsic;
pub mod eval_intrinsic;
pub mod lexicon;
pub mod pairgen;
pub mod par;
pub mod pipeline;
pub mod seed;
pub mod sgns;
pub mod synthetic;
pub mod transport;

pub use error::{Error, Result};
