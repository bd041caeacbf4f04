pub mod bm;
pub mod error;
pub mod galois;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod poly;
pub mod scalar;

pub use bm::{bm_solve, cycle_table, enumerate_types, reduce_mod_l_rep, sigma_of_tau, types_congruent, BmSolution, Cycle, Point, RepKind, RepLabel, TypeKind, TypeLabel};
pub use error::{Error, Result};
pub use galois::{charpoly_power, relation_ideal, verify_presentation, CaseId, CaseSpec, Catalogue, CatalogueEntry, MatrixPoly, VerificationReport};
pub use groebner::{buchberger, is_dgroebner, normal_form, s_polynomial, GroebnerBasis};
pub use hilbert::{hilbert_function, hilbert_polynomial, reduce_mod_l, HilbertData};
pub use ideal::{FlatnessCertificate, FlatnessVerdict, Ideal};
pub use poly::{Ctx, Monomial, MonomialOrder, Poly, VarContext};
pub use scalar::{DvrScalar, Fp, Scalar};

pub type Z3 = DvrScalar<3>;
pub type Z5 = DvrScalar<5>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
