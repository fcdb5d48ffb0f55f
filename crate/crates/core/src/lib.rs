pub mod analytic;
pub mod cli;
pub mod error;
pub mod fock;
pub mod model;
pub mod oracle;
pub mod params;
pub mod qubit;
pub mod transfer;
pub mod validate;
