pub mod diagram;
pub mod linalg;
pub mod complex;
pub mod homology;
pub mod reduction;
pub mod generate;
pub mod tables;
