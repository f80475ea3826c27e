pub mod algebra;
pub mod catalog;
pub mod classifier;
pub mod dynamics;
pub mod error;
pub mod gentrig;
pub mod monodromy;
pub mod numeric;
pub mod parallel;
pub mod sampling;
pub mod series;
pub mod sweep;
pub mod weights;
