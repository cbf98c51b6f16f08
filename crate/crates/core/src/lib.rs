//! Exact HOMFLY–PT polynomials of braid closures via character expansion,
//! the Harer–Zagier transform, factorisability certificates and
//! factorised-form decompositions.

pub mod braid;
pub mod decomp;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod homfly;
pub mod hz;
pub mod qring;
pub mod rmatrix;
pub mod young;

pub use braid::{BraidWord, FamilyIndex};
pub use decomp::{decompose, decompose3, expand, Bracket, Decomposition};
pub use error::{HzError, Result};
pub use families::{
    predict_family, pretzel_braid, quiver_poly, verify_family, FamilyPrediction, FamilyReport, QuiverPoly, QuiverSeries,
};
pub use fixtures::{run_all, Fixture, FixtureOutcome, FixtureSet};
pub use hz::{
    check_fact_conditions, factorise, hz_char, hz_summation_oracle, hz_transform, hz_via_characters, inverse_hz,
    FactorCert, HZFunction,
};
pub use qring::{mirror_q, qbracket, qint, ExtScalar, LaurentPoly, LaurentPolyA, RatFuncA, RatFuncQ};
pub use young::YoungDiagram;
