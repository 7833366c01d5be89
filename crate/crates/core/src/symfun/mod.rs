//! Symmetric-group characters, Jack polynomials in the power-sum basis,
//! principal specializations and (twisted) zonal spherical functions.

mod character;
mod jack;
mod specialization;
mod spherical;

pub use character::{character, character_table, dimension, hook_product, CharacterTable};
pub use jack::{jack_in_powersums, monomial_in_powersums, PowerSumExpansion};
pub use specialization::{principal_specialization, schur_at_one};
pub(crate) use spherical::seed_spherical_table;
pub use spherical::{
    hyperoctahedral_elements, spherical_table, spherical_value, spherical_value_direct, Alpha, SphericalTable,
};
