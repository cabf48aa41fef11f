//! Harish-Chandra c-functions, the intertwining C-functions on K-types and
//! closed-form spherical functions of non-trivial K-type for Riemannian
//! symmetric spaces of the noncompact type, with quadrature models for
//! cross-checking.

pub mod complexmath;
pub mod rootdata;
pub mod cfun;
pub mod rankone;
pub mod models;
pub mod higherrank;
