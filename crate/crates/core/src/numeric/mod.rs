//! Dense complex linear algebra for small matrices, word evaluation and the
//! counterexample search.

mod eigen;
mod haar;
mod hpd;
mod matrix;
mod pair;
pub mod refute;

pub use eigen::{
    characteristic_polynomial, eig_general, horner, scaled_residuals, MAX_EIG_DIM, RESIDUAL_TOL,
};
pub use haar::{haar_unitary, haar_unitary_with, random_pd};
pub use hpd::{hermitian_eigen, primary_power, HermitianPD, HERMITIAN_TOL, PD_TOL};
pub use matrix::CMatrix;
pub use pair::{build_pair, evaluate_word, spectrum_check, DiagonalValues, SpectrumReport};
pub use refute::{refute, Construction, Counterexample, Evidence, RefuteConfig, Strategy};
