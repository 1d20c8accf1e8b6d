//! Analytic construction of feedforward ReLU memorization networks.
//!
//! Everything in this workspace builds networks with pencil-and-paper
//! formulas instead of training: a width-6 memorizer with roughly sqrt(N)
//! scaling built from a random projection and digit-packing gadgets, a
//! polynomial-time convex-cell memorizer that generalizes when samples cover
//! the distribution's nearby set, a constant-parameter cover variant, and an
//! adversarial memorizer engineered to be wrong off-sample. Surrounding
//! machinery: labeled datasets (incl. MNIST IDX ingestion), sampleable data
//! distributions, width-characterization gadgets, and an experiment harness.

pub mod bad_mem;
pub mod cell_mem;
pub mod dataset;
pub mod distribution;
pub mod gadgets;
pub mod harness;
pub mod relu_net;
pub mod scalar;
pub mod simplex;
pub mod sqrt_mem;

pub use dataset::LabeledDataset;
pub use relu_net::{Backend, Net, NetError, NetMetrics, Passthrough, ReluNetwork};
pub use distribution::{DataDistribution, NearbySet};
pub use scalar::Rat;
