//! Reed–Solomon codes under insertion and deletion errors.
//!
//! The crate measures how many insdel errors an RS code corrects, classifies
//! the full-length 2-dimensional codes that fail to correct even one, checks
//! the counting bounds behind those results, and constructs rate-1/2 codes
//! that correct a single insdel.
//!
//! ```
//! use std::sync::Arc;
//! use rs_insdel::{analyze, gf::Field, rscode::{EvaluationVector, RsCode}};
//!
//! let f7 = Arc::new(Field::new(7, 1).unwrap());
//! let alpha = EvaluationVector::from_indices(f7, &[0, 1, 2, 5]).unwrap();
//! let code = RsCode::new(alpha, 2).unwrap();
//! let report = analyze::lcs_code_bruteforce(&code, &Default::default()).unwrap();
//! assert_eq!(report.lcs_of_code, 2);
//! assert!(report.optimal);
//! ```

pub mod analyze;
pub mod bounds;
pub mod cli;
pub mod construct;
pub mod gf;
pub mod insdel;
pub mod poly;
pub mod rscode;
