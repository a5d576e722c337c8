//! Biaxial weaves on the torus: crossing matrices, isotopy classes,
//! hyperbolicity tests and enumeration.
//!
//! A weave with `m` warps and `n` wefts is stored as a [`CrossingMatrix`]
//! where entry `(i, j)` is 1 when warp `i` passes over weft `j`.
//!
//! ```
//! use weaves::{parse_matrix, is_hyperbolic, canonical_form};
//!
//! let plain = parse_matrix("01/10").unwrap();
//! assert!(is_hyperbolic(&plain).is_hyperbolic());
//! assert_eq!(canonical_form(&plain).unwrap().orbit_size, 2);
//! ```

pub mod census;
pub mod diagram;
pub mod error;
pub mod hyperbolicity;
pub mod io;
pub mod isotopy;
mod scc;

pub use census::{
    census, census_with, count_hyperbolic, enumerate, lower_bound, proportion_trend,
    upper_bound, write_csv, CensusConfig, CensusRow, TrendRow,
};
pub use diagram::{
    comparable, ComponentId, CrossingMatrix, Fingerprint, Kind, Move, MoveSequence, MAX_DIM,
};
pub use error::{Result, WeaveError};
pub use hyperbolicity::{
    has_reachable_parallel_pair, hyperbolic_flag, is_hyperbolic, is_layered,
    is_pi_hyperbolic, jsj_report, layer_digraph, no_adjacent_comparable,
    parallel_pair_oracle, parallel_pair_reachable, volume_bound, volume_upper_bound,
    HyperbolicityVerdict, JsjPiece, JsjReport, LayerDigraph, LayerVerdict, ParallelWitness,
    Strand, V_OCT,
};
pub use io::{
    parse_matrix, parse_text, plain, render, satin, serialize_text, twill, RenderStyle,
    WeaveDocument,
};
pub use isotopy::{
    canonical_form, homeo_canonical_form, is_isotopic, isotopy_witness, orbit, CanonicalForm,
    Orbit,
};
