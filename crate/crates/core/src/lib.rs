//! Non-abelian tensor products of finite groups acting compatibly on each
//! other, with the surrounding machinery: permutation groups, coset
//! enumeration, Smith normal form, crossed modules, and Schur multipliers.

pub mod actions;
pub mod coset;
pub mod corpus;
pub mod error;
pub mod fp;
pub mod group;
pub mod hom;
pub mod homology;
pub mod named;
pub mod perm;
pub mod snf;
pub mod tensor;
pub mod verify;

pub use coset::{enumerate_group, order_of_fp, perm_rep, todd_coxeter, CosetTable, EnumLimits, FpOrder};
pub use error::{GroupError, Result};
pub use fp::{FpGroup, Letter, Word};
pub use group::{commutator_subgroup, ElementTable, Fingerprint, PermGroup, Subgroup};
pub use hom::{hom, GroupHom, PresentationHom};
pub use perm::Perm;
pub use snf::{smith_normal_form, AbelianInvariants, IntMatrix, SmithForm};
pub use actions::{
    check_compatible, circ_product, conjugation_mutual, conjugation_square, derivative, semidirect_product, Action,
    Compatibility, MutualActions,
};
pub use homology::{h2_bar_resolution, module_tensor_aug_ideal, trivial_action_tensor, ActedModule};
pub use tensor::{
    exterior_square, schur_multiplier, tensor_presentation, tensor_product, tensor_square, ExteriorSquare,
    SchurMultiplier, TensorGroup,
};
pub use verify::{run_corpus, run_suite, CorpusReport, Suite, VerificationReport, VerifyConfig};
