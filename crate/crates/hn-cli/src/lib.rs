pub mod acceptance;
pub mod io;
pub mod numeric;
pub mod parse;
