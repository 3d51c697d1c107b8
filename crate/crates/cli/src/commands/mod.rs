pub mod eval;
pub mod fuse;
pub mod index;
pub mod maxp;
pub mod radar;
pub mod search;
pub mod segment;
pub mod serve;
pub mod submit;
