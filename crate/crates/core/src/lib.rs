//! A laboratory for finite bounded posets with a unary operation:
//! orthoposet and orthomodularity axioms, cone-valued residuation,
//! assigned directoids, congruence analysis, Dedekind-MacNeille
//! completions, and isomorph-free enumeration with counterexample
//! search.
//!
//! Everything operates on explicit finite structures and every check
//! returns either a pass or a concrete, re-checkable witness.
//!
//! ```
//! use ortholab::{fixtures, gomp};
//!
//! // The benzene ring is an ortholattice but not orthomodular.
//! let benzene = fixtures::o6();
//! assert!(benzene.is_orthoposet().passed());
//!
//! let verdict = gomp::is_gomp(&benzene);
//! assert!(!verdict.passed());
//! assert_eq!(verdict.witness_elements(), &[1, 4]); // the pair (a, b')
//! ```

// Index loops over id-addressed tables are the house style here.
#![allow(clippy::needless_range_loop)]

pub mod canon;
pub mod check;
pub mod completion;
pub mod congruence;
pub mod directoid;
pub mod enumerate;
pub mod fixtures;
pub mod gomp;
pub mod io;
pub mod poset;
pub mod residuation;
pub mod search;
pub mod set;
pub mod suite;

pub use check::{CheckResult, Violation};
pub use poset::{OrthoPoset, StructureError};
pub use set::ElementSet;

// The guide chapters double as doctests so the book can never drift from
// the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(posets_and_cones, "../../../book/src/posets-and-cones.md");
    chapter!(orthomodularity, "../../../book/src/orthomodularity.md");
    chapter!(residuation, "../../../book/src/residuation.md");
    chapter!(directoids, "../../../book/src/directoids.md");
    chapter!(congruences, "../../../book/src/congruences.md");
    chapter!(completion, "../../../book/src/completion.md");
    chapter!(enumeration, "../../../book/src/enumeration.md");
    chapter!(file_format, "../../../book/src/file-format.md");
    chapter!(cli, "../../../book/src/cli.md");
}
