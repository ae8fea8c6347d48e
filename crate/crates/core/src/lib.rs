pub mod construct;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod identities;
pub mod marking;
pub mod moves;
pub mod partition;
pub mod path;
pub mod render;
pub mod series;
pub mod verify;
