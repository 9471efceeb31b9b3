pub mod error;
pub mod gaf;
pub mod geometry;
pub mod noise;
pub mod orthopoly;
pub mod quadrature;
pub mod special;
pub mod stats;
pub mod transforms;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use geometry::{Curve, Window};
pub use num_complex::{self, Complex64};
