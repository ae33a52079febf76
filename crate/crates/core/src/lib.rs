//! Exact unpopularity factor and unpopularity margin of a matching in
//! roommates and marriage instances, with ties and integer voter weights.
//!
//! The central question, "is there a rival matching that beats `M` by more
//! than a factor `k`?", reduces to finding a positive-weight perfect
//! matching in a doubled auxiliary graph ([`aux_graph`]). That is decided by
//! a general maximum-weight perfect matching solver ([`mwpm`]) or, for
//! bipartite instances, by a positive-cycle search ([`fastpath`]). The exact
//! factor then follows from a search over the finitely many fractions it
//! can take ([`search`], [`factor`]).
//!
//! ```
//! use popfactor::{io, unpopularity_factor, FastPath, Factor};
//!
//! let inst = io::parse_instance("RP 4\na1: a4 a2 a3\na2: (a1 a4) a3\na3: (a1 a4) a2\na4: (a2 a3) a1\n")?;
//! let m = io::parse_matching("a1 a4\na2 a3\n", &inst)?;
//! let report = unpopularity_factor(&inst, &m, FastPath::Auto)?;
//! assert_eq!(report.factor, Factor::from_ratio(3, 1));
//! assert_eq!(report.margin, 2);
//! # Ok::<(), popfactor::Error>(())
//! ```

pub mod aux_graph;
pub mod error;
pub mod factor;
pub mod fastpath;
#[doc(hidden)]
pub mod fixtures;
pub mod gen;
pub mod instance;
pub mod io;
pub mod mwpm;
pub mod oracle;
pub mod ratio;
pub mod search;
pub mod stable;

pub use error::{Error, Result, Violation};
pub use factor::{is_popular, predicate_gt, unpopularity_factor, unpopularity_margin, FactorReport, FastPath, MarginReport};
pub use instance::{Gender, Instance, Kind, Matching, PersonId, PreferenceList};
pub use ratio::{Factor, Rational};
