//! Quotients of exact categories by (pseudo-)cluster-tilting subcategories,
//! computed over representations of finite quivers over small prime fields.

pub mod approx;
pub mod category;
pub mod classes;
pub mod conflcat;
pub mod enumerate;
pub mod error;
pub mod fflinalg;
pub mod instances;
pub mod quotient;
pub mod repcat;

pub use category::{Biproduct, ExactCategory, Ses, Side, Subcategory};
pub use error::{Condition, Error, Result};
pub use fflinalg::{Field, FpMatrix, FpScalar};
pub use repcat::{Quiver, RepCategory, RepMor, RepObj, SES};
