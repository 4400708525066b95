pub mod bits;
pub mod busy_beaver;
pub mod cli;
pub mod coefficient;
pub mod compressor;
pub mod eca;
pub mod enumeration;
pub mod experiments;
pub mod turing;
