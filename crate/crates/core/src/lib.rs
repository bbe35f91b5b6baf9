//! Additive structure of finitely presented abelian p-groups.
//!
//! A presentation `Σ a_j c_j = 0` is turned into a lattice binomial ideal,
//! a permuted lexicographic Gröbner basis of a specific shape is searched
//! for, and the p-basis with its Ulm invariants is read off the basis.
//! An independent Smith normal form route cross-checks every result, and
//! builders for indecomposable modules over `ZC_p` and the p-pullback of
//! `Z ⊕ Z` produce presentations to feed the pipeline.
//!
//! All algorithms are generic over an integer [`Scalar`]; the `Big*`
//! aliases below fix it to [`BigInt`], which is what the CLI uses.

pub mod dedekind;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod pbasis;
pub mod poly;
pub mod scalar;
pub mod snf;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use num_bigint::BigInt;

pub type BigMonomial = lattice::ExponentVector<BigInt>;
pub type BigBinomial = lattice::LatticeBinomial<BigInt>;
pub type BigGroebnerBasis = groebner::GroebnerBasis<BigInt>;
pub type BigPresentation = pbasis::Presentation<BigInt>;
pub type BigPBasisElement = pbasis::PBasisElement<BigInt>;
pub type BigStructure = pbasis::Structure<BigInt>;
pub type BigMatrix = snf::IntMatrix<BigInt>;
pub type BigSnf = snf::SnfResult<BigInt>;
pub type BigRingModel = dedekind::RingModel<BigInt>;
pub type BigModuleSpec = dedekind::ModuleSpec<BigInt>;
