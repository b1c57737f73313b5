//! Affine monoids: membership, saturation, seminormalization and the
//! extraction of finite generating sets from membership oracles.

mod affine;
mod extract;
pub(crate) mod frame;
mod ops;
mod oracle;

pub use affine::AffineMonoid;
pub use ops::{
    cone_translate, face_restrict, hilbert_basis, interior_member, is_saturated, is_semisaturated, m_group,
    make_monoid, monoid_equal, monoid_from_oracle, monoid_member, relation_lattice, relation_lattice_of, saturation,
    seminormal_oracle, seminormalize, semisaturation_witness, sum_with_group, Seminormalization,
};
pub use oracle::{MembershipOracle, Provenance};
