//! Exact symbolic computation for Weyl preseeds and their categorical
//! counterparts.
//!
//! * [`ground`]: rational-function coefficients and coefficient automorphisms.
//! * [`preseed`]: cluster triples, right/left mutation, cluster sets, exchange graphs.
//! * [`oracle`]: skew Laurent polynomials used to evaluate and check identities.
//! * [`catword`]: categorical morphism words and categorical mutation.
//! * [`zigzag`]: divisibility, initial objects, zigzag presentations, cluster classes.
//! * [`bridge`]: the step-back map and the object-to-algebra map.
//! * [`cli`]: spec-file parsing, reports and the command-line front end.

pub mod ground;
pub mod preseed;
pub mod oracle;
pub mod catword;
pub mod zigzag;
pub mod bridge;
pub mod cli;
