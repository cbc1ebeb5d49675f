pub mod analysis;
pub mod codec;
pub mod simulate;
