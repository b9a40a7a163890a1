//! Chaos game trajectories, grid cells, FCGR matrices and square symmetries.

mod cell;
mod dyadic;
mod fcgr;
mod symmetry;
mod trajectory;

pub use cell::{
    cell_center, cell_indices_to_kmer, grid_cell_box, kmer_cell_box, kmer_cell_indices, CellBox, CellIndices,
};
pub use dyadic::{Dyadic, MAX_EXPONENT};
pub use fcgr::{
    fcgr_count, fcgr_from_counts, fcgr_grid, fcgr_kronecker, fcgr_to_frequency_vector, kronecker_kmer, FcgrMatrix,
};
pub use symmetry::{avoided_kmer_image, symmetry_apply_trajectory, symmetry_for_permutation, Matrix2, Symmetry};
pub use trajectory::{cgr_trajectory, label, last_point, CgrPoint, CgrTrajectory, DEFAULT_DEPTH_CAP};
