pub mod action;
pub mod arith;
pub mod benson;
pub mod casework;
pub mod data;
pub mod dec;
pub mod gq;
pub mod graph;
pub mod incidence;
pub mod perm;
pub mod screen;
pub mod verify;
