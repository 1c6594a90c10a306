pub mod eval;
pub mod identity;
pub mod mandel;
pub mod squeeze;
pub mod table;
