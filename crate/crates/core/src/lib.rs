//! Bivariate means, sharp bounds on the Seiffert mean, and the exact series
//! and verification machinery behind them.
//!
//! ```
//! use seiffert_core::means::{seiffert_t, PositivePair};
//!
//! let pair = PositivePair::new(1.0, 3.0).unwrap();
//! assert!((seiffert_t(pair) - 2.156_810_4).abs() < 1e-7);
//! ```

pub mod bernoulli;
pub mod error;
pub mod means;
pub mod oracle;
pub mod proof;
pub mod roots;
pub mod series;
pub mod sharp;

pub use error::{Error, Result};
pub use means::{MeanKind, PositivePair};
pub use oracle::{HpValue, Oracle};
pub use series::{SeriesKind, TruncatedSeries};
