pub mod audit;
pub mod convert;
pub mod disagg;
pub mod elo;
pub mod score;
pub mod stats;
