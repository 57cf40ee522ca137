pub mod linalg;
pub mod mixed_hodge;
pub mod period;
pub mod reduction;
pub mod acceptance;
pub mod asymptotics;
pub mod locus;
pub mod datasets;
pub mod orbit_file;
pub mod random;
