//! Exact-arithmetic verification kernel for the odd GSpin / GSp dual pair:
//! root data and torus embeddings, Bessel-cell combinatorics for GL_n, the
//! explicit SO(2n+1) matrix model, skew-orbit reduction with its invariant
//! measure, the closed-form big-cell Bruhat decomposition, and the exponent
//! ledger of the local-coefficient integrand. Every identity is checked over
//! Q, at desk scale (n = 2..8), with no floating point anywhere.

pub mod exact;

pub mod root_data;

pub mod weyl_cells;

pub mod so_realization;

pub mod dual_side;

pub mod orbit_measure;

pub mod bruhat_engine;

pub mod mellin_ledger;

pub mod harness;
