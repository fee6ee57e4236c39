pub mod asym;
pub mod bounds;
pub mod code;
pub mod construct;
pub mod dist;
pub mod omega;
