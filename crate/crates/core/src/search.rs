//! Named class predicates and counterexample search over the enumerated
//! structures.

use crate::completion::{dm_completion, is_nearly_oml, is_orthomodular_lattice};
use crate::directoid::{assign_canonical_directoid, in_class_a, in_variety_w};
use crate::enumerate::{orthoposets, EnumerateError};
use crate::gomp::{is_gomp, is_strong_gomp};
use crate::poset::OrthoPoset;
use crate::set::ElementSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("unknown class predicate '{0}'")]
    UnknownPredicate(String),
    #[error("empty predicate")]
    EmptyPredicate,
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// The registered structure classes a search can reference by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassPredicate {
    Orthoposet,
    Lattice,
    Ortholattice,
    Gomp,
    StrongGomp,
    /// An orthomodular lattice: an ortholattice satisfying the
    /// orthomodular law directly.
    Oml,
    /// The canonical assigned directoid satisfies the four
    /// characterization conditions.
    ClassA,
    /// The canonical assigned directoid satisfies the variety identities.
    VarietyW,
    /// The completion is an orthomodular lattice.
    DmOml,
    /// The completion is nearly an orthomodular lattice.
    DmNearlyOml,
}

impl ClassPredicate {
    pub const ALL: [(&'static str, ClassPredicate); 10] = [
        ("orthoposet", ClassPredicate::Orthoposet),
        ("lattice", ClassPredicate::Lattice),
        ("ortholattice", ClassPredicate::Ortholattice),
        ("gomp", ClassPredicate::Gomp),
        ("strong-gomp", ClassPredicate::StrongGomp),
        ("oml", ClassPredicate::Oml),
        ("class-a", ClassPredicate::ClassA),
        ("variety-w", ClassPredicate::VarietyW),
        ("dm-oml", ClassPredicate::DmOml),
        ("dm-nearly-oml", ClassPredicate::DmNearlyOml),
    ];

    pub fn parse(name: &str) -> Result<Self, SearchError> {
        let normalized = name.trim().replace('_', "-");
        Self::ALL
            .iter()
            .find(|(n, _)| *n == normalized)
            .map(|&(_, p)| p)
            .ok_or_else(|| SearchError::UnknownPredicate(name.trim().to_string()))
    }

    pub fn name(self) -> &'static str {
        Self::ALL
            .iter()
            .find(|&&(_, p)| p == self)
            .map(|&(n, _)| n)
            .unwrap()
    }

    pub fn eval(self, p: &OrthoPoset) -> bool {
        match self {
            ClassPredicate::Orthoposet => p.is_orthoposet().passed(),
            ClassPredicate::Lattice => p.is_lattice(),
            ClassPredicate::Ortholattice => p.is_lattice() && p.is_orthoposet().passed(),
            ClassPredicate::Gomp => is_gomp(p).passed(),
            ClassPredicate::StrongGomp => is_strong_gomp(p).passed(),
            ClassPredicate::Oml => {
                p.is_lattice() && p.is_orthoposet().passed() && orthomodular_law(p)
            }
            ClassPredicate::ClassA => in_class_a(&assign_canonical_directoid(p)).passed(),
            ClassPredicate::VarietyW => in_variety_w(&assign_canonical_directoid(p)).passed(),
            ClassPredicate::DmOml => is_orthomodular_lattice(&dm_completion(p)).passed(),
            ClassPredicate::DmNearlyOml => is_nearly_oml(&dm_completion(p)).passed(),
        }
    }
}

/// The classical orthomodular law on a lattice, evaluated directly:
/// x ≤ y implies y = x ∨ (x' ∧ y).
fn orthomodular_law(p: &OrthoPoset) -> bool {
    for x in p.elements() {
        for y in p.elements() {
            if !p.leq(x, y) {
                continue;
            }
            let meet = p.infimum(ElementSet::of(p.n(), &[p.comp(x), y]));
            let Some(meet) = meet else { return false };
            if p.supremum(ElementSet::of(p.n(), &[x, meet])) != Some(y) {
                return false;
            }
        }
    }
    true
}

/// A conjunction of possibly negated class predicates, e.g.
/// `"gomp & !strong-gomp"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    literals: Vec<(bool, ClassPredicate)>,
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut literals = Vec::new();
        for raw in text.split('&') {
            let mut token = raw.trim();
            if token.is_empty() {
                return Err(SearchError::EmptyPredicate);
            }
            let mut negated = false;
            while let Some(rest) = token.strip_prefix('!') {
                negated = !negated;
                token = rest.trim();
            }
            literals.push((negated, ClassPredicate::parse(token)?));
        }
        if literals.is_empty() {
            return Err(SearchError::EmptyPredicate);
        }
        Ok(Predicate { literals })
    }

    pub fn eval(&self, p: &OrthoPoset) -> bool {
        self.literals.iter().all(|&(neg, pred)| pred.eval(p) != neg)
    }

    pub fn literals(&self) -> &[(bool, ClassPredicate)] {
        &self.literals
    }
}

impl std::fmt::Display for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, (neg, pred)) in self.literals.iter().enumerate() {
            if k > 0 {
                write!(f, " & ")?;
            }
            if *neg {
                write!(f, "!")?;
            }
            write!(f, "{}", pred.name())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    FirstWitness,
    CountAll,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub max_n: usize,
    pub predicate: Predicate,
    pub mode: SearchMode,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Witness(OrthoPoset),
    NotFound { max_n: usize },
}

/// First enumerated structure satisfying the predicate, scanning sizes in
/// ascending order and structures in canonical order within each size.
pub fn find_witness(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    for n in crate::enumerate::MIN_N..=spec.max_n {
        for p in orthoposets(n)? {
            if spec.predicate.eval(&p) {
                return Ok(SearchOutcome::Witness(p));
            }
        }
    }
    Ok(SearchOutcome::NotFound { max_n: spec.max_n })
}

/// Matching-structure counts per size, `(n, count)` for n = 2..=max_n.
pub fn count_by_size(
    max_n: usize,
    predicate: &Predicate,
) -> Result<Vec<(usize, usize)>, SearchError> {
    let mut out = Vec::new();
    for n in crate::enumerate::MIN_N..=max_n {
        let count = orthoposets(n)?.iter().filter(|p| predicate.eval(p)).count();
        out.push((n, count));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::fixtures;

    #[test]
    fn predicate_parsing() {
        let p = Predicate::parse("gomp & !strong-gomp").unwrap();
        assert_eq!(p.to_string(), "gomp & !strong-gomp");
        let p = Predicate::parse(" strong_gomp ").unwrap();
        assert_eq!(p.to_string(), "strong-gomp");
        assert_eq!(
            Predicate::parse("no-such-class").unwrap_err(),
            SearchError::UnknownPredicate("no-such-class".into())
        );
        assert_eq!(
            Predicate::parse("  ").unwrap_err(),
            SearchError::EmptyPredicate
        );
    }

    #[test]
    fn first_non_orthomodular_orthoposet_is_the_benzene_ring() {
        let spec = SearchSpec {
            max_n: 6,
            predicate: Predicate::parse("orthoposet & !gomp").unwrap(),
            mode: SearchMode::FirstWitness,
        };
        match find_witness(&spec).unwrap() {
            SearchOutcome::Witness(p) => assert!(are_isomorphic(&p, &fixtures::o6())),
            SearchOutcome::NotFound { .. } => panic!("expected the benzene ring"),
        }
    }

    #[test]
    fn contradictory_predicate_is_not_found() {
        let spec = SearchSpec {
            max_n: 5,
            predicate: Predicate::parse("gomp & !orthoposet").unwrap(),
            mode: SearchMode::FirstWitness,
        };
        match find_witness(&spec).unwrap() {
            SearchOutcome::NotFound { max_n } => assert_eq!(max_n, 5),
            SearchOutcome::Witness(_) => panic!("a gomp is an orthoposet by definition"),
        }
    }

    #[test]
    fn gomp_versus_strong_gomp_up_to_eight() {
        // Recorded search outcome, not a theorem: no generalized
        // orthomodular poset on at most eight elements separates the two
        // classes.
        let spec = SearchSpec {
            max_n: 8,
            predicate: Predicate::parse("gomp & !strong-gomp").unwrap(),
            mode: SearchMode::FirstWitness,
        };
        assert!(matches!(
            find_witness(&spec).unwrap(),
            SearchOutcome::NotFound { .. }
        ));
    }

    #[test]
    fn counts_by_size() {
        let counts = count_by_size(6, &Predicate::parse("orthoposet").unwrap()).unwrap();
        assert_eq!(counts, vec![(2, 1), (3, 0), (4, 1), (5, 0), (6, 2)]);
        let gomps = count_by_size(6, &Predicate::parse("gomp").unwrap()).unwrap();
        assert_eq!(gomps, vec![(2, 1), (3, 0), (4, 1), (5, 0), (6, 1)]);
    }

    #[test]
    fn oml_predicate_on_anchors() {
        assert!(ClassPredicate::Oml.eval(&fixtures::b4()));
        assert!(ClassPredicate::Oml.eval(&fixtures::mo2()));
        assert!(!ClassPredicate::Oml.eval(&fixtures::o6()));
        // The orthomodular law on a lattice coincides with the
        // generalized condition.
        for p in fixtures::anchors() {
            if p.is_lattice() {
                assert_eq!(ClassPredicate::Oml.eval(&p), is_gomp(&p).passed());
            }
        }
    }
}
