// SPDX-License-Identifier: Apache-2.0
pub mod arith;
pub mod error;
pub mod poly;

pub use arith::Rational;
pub use error::{Error, Result};
pub mod elliptic;
pub mod hlp;
pub mod x1ten;
pub mod genus2;
pub mod search;
pub mod classgroup;
pub mod cli;
