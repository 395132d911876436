pub mod complex;
pub mod homotopy;
pub mod io;
pub mod search;
pub mod space;
