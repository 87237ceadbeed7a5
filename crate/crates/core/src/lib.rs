pub mod bisections;
pub mod catalog;
pub mod codes;
pub mod element;
pub mod error;
pub mod geometry;
pub mod grade;
pub mod group;
pub mod presentation;
pub mod random;
pub mod tilings;

pub use bisections::PartialTable;
pub use catalog::catalog;
pub use codes::PrefixCode;
pub use element::Element;
pub use error::{Error, Result};
pub use grade::Grade;
pub use group::GroupElement;
pub use presentation::{Effectiveness, Letter, Presentation};
pub use tilings::{Report, TilingPrefix};
