//! Exact one-variable q-series: Eisenstein series, `Delta12`, the E10 input
//! form, eta quotients, multipartitions and the imaginary-root recursion.

mod forms;
mod series;
mod table;

pub use forms::*;
pub use series::*;
pub use table::*;
