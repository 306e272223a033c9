//! K-orbits on the flag variety of so(n) for K = SO(n−1), the θ-stable
//! parabolics attached to them, and samplers for the sets they cut out.

mod orbits;
mod parabolic;
mod samplers;
mod weyl;

pub use orbits::{
    borel_plus, classify_root_type, closed_orbit_cosets, closed_orbit_count, closed_orbits, conjugacy_witness,
    describe, enumerate_orbits, in_k, k_intersection_dim, monoid_action, orbit_graph_json, orbit_graph_text,
    simple_roots, word_representative, Base, OrbitDescriptor, OrbitEdge, OrbitMerge, OrbitTable, RootType, ThetaRecord,
};
pub use parabolic::{
    borel_parabolic, parabolic_for_codim, simple_coefficients, stable_parabolic, standard_parabolic, verify_parabolic,
    ParabolicChecks, ParabolicData,
};
pub use samplers::{
    conjugate, degenerate_to_levi, flip_element, flipped_diagonal, is_in_group, nilradical, sample_k, sample_nilfibre,
    sample_xi, sample_yq, xi_coordinates, xi_element, xi_max, xi_slots, xi_vectors, Slot, XiCoords, XiPattern,
    XiSample,
};
pub use weyl::{closure, elements_with_words, fixed_cosets, CosetData, SignedPerm};
