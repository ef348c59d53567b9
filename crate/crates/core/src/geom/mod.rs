//! Exact polytope geometry over the rationals: points, hulls, facet
//! descriptions, triangulations, volumes, and polytope arithmetic.

pub mod dd;
pub mod ops;
pub mod point;
pub mod polytope;
pub mod volume;

pub use ops::{
    join, minkowski_sum, mixed_volume_oracle, mixed_volume_pair, mixed_volume_pair_all, polar,
    project_embed, project_frame, section_frame,
};
pub use point::{pt, ptq, Point};
pub use polytope::{brute_force_facets, Facet, Polytope};
pub use volume::{simplex_volume, triangulate, volume, Triangulation};
