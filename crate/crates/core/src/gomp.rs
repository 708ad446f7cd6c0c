//! The generalized orthomodular conditions and their strong variants.

use crate::check::CheckResult;
use crate::poset::OrthoPoset;
use crate::set::ElementSet;

/// The orthomodular condition in upper-cone form:
/// x ≤ y implies U(y) = U(x, L(x', y)).
pub fn gomp_condition_upper(p: &OrthoPoset) -> CheckResult {
    for x in p.elements() {
        for y in p.elements() {
            if !p.leq(x, y) {
                continue;
            }
            let inner = p.lower_cone_of(&[p.comp(x), y]);
            let rhs = p.upper_cone(inner.with(x));
            let lhs = p.up_set(y);
            if lhs != rhs {
                return CheckResult::fail("orthomodular-upper", vec![x, y], vec![lhs, rhs]);
            }
        }
    }
    CheckResult::pass()
}

/// The dual form: x ≤ y implies L(x) = L(y, U(x, y')).
pub fn gomp_condition_lower(p: &OrthoPoset) -> CheckResult {
    for x in p.elements() {
        for y in p.elements() {
            if !p.leq(x, y) {
                continue;
            }
            let inner = p.upper_cone_of(&[x, p.comp(y)]);
            let rhs = p.lower_cone(inner.with(y));
            let lhs = p.down_set(x);
            if lhs != rhs {
                return CheckResult::fail("orthomodular-lower", vec![x, y], vec![lhs, rhs]);
            }
        }
    }
    CheckResult::pass()
}

/// Decides whether `p` is a generalized orthomodular poset: an orthoposet
/// in which x ≤ y forces U(y) = U(x, L(x', y)).
///
/// A structure failing the orthoposet axioms fails here with that witness.
/// Both the upper- and the lower-cone form of the condition are evaluated;
/// they are equivalent by De Morgan, and the two verdicts are asserted to
/// agree.
pub fn is_gomp(p: &OrthoPoset) -> CheckResult {
    let ortho = p.is_orthoposet();
    if !ortho.passed() {
        return ortho;
    }
    let upper = gomp_condition_upper(p);
    let lower = gomp_condition_lower(p);
    assert_eq!(
        upper.passed(),
        lower.passed(),
        "the two orthomodular condition forms must agree on an orthoposet"
    );
    upper
}

/// All distinct upper cones { U(B) : B ⊆ P }, without enumerating 2^n
/// subsets: the closure of the principal up-sets under pairwise
/// intersection, together with U(∅) = P. Sorted by bit pattern.
pub fn distinct_upper_cones(p: &OrthoPoset) -> Vec<ElementSet> {
    let generators: Vec<ElementSet> = p.elements().map(|x| p.up_set(x)).collect();
    cone_closure(p.universe(), &generators)
}

/// Dual of [`distinct_upper_cones`]: all { L(A) : A ⊆ P }.
pub fn distinct_lower_cones(p: &OrthoPoset) -> Vec<ElementSet> {
    let generators: Vec<ElementSet> = p.elements().map(|x| p.down_set(x)).collect();
    cone_closure(p.universe(), &generators)
}

fn cone_closure(universe: ElementSet, generators: &[ElementSet]) -> Vec<ElementSet> {
    let mut found: Vec<ElementSet> = vec![universe];
    for &g in generators {
        if !found.contains(&g) {
            found.push(g);
        }
    }
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for &g in generators {
                let meet = a.intersection(g);
                if !found.contains(&meet) {
                    found.push(meet);
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }
    found.sort();
    found
}

/// Brute-force oracle for [`distinct_upper_cones`]: enumerates every one
/// of the 2^n subsets. Intended for cross-validation at small sizes only.
pub fn upper_cones_exhaustive(p: &OrthoPoset) -> Vec<ElementSet> {
    let mut found = Vec::new();
    for bits in 0..1u64 << p.n() {
        let cone = p.upper_cone(ElementSet::from_bits(p.n(), bits));
        if !found.contains(&cone) {
            found.push(cone);
        }
    }
    found.sort();
    found
}

/// Brute-force oracle for [`distinct_lower_cones`].
pub fn lower_cones_exhaustive(p: &OrthoPoset) -> Vec<ElementSet> {
    let mut found = Vec::new();
    for bits in 0..1u64 << p.n() {
        let cone = p.lower_cone(ElementSet::from_bits(p.n(), bits));
        if !found.contains(&cone) {
            found.push(cone);
        }
    }
    found.sort();
    found
}

/// The strong orthomodular condition evaluated over an explicit list of
/// upper cones: for every x and every cone C with x below all of C,
/// C = U(x, L(x', C)).
pub fn strong_condition_upper_over(p: &OrthoPoset, cones: &[ElementSet]) -> CheckResult {
    for x in p.elements() {
        for &cone in cones {
            if !p.lower_cone(cone).contains(x) {
                continue;
            }
            let inner = p.lower_cone(cone.with(p.comp(x)));
            let rhs = p.upper_cone(inner.with(x));
            if rhs != cone {
                return CheckResult::fail("strong-orthomodular-upper", vec![x], vec![cone, rhs]);
            }
        }
    }
    CheckResult::pass()
}

/// Upper form of the strong condition, quantified over the distinct
/// upper cones (the condition depends on a subset B only through U(B)).
pub fn strong_condition_upper(p: &OrthoPoset) -> CheckResult {
    strong_condition_upper_over(p, &distinct_upper_cones(p))
}

/// Dual strong condition over an explicit list of lower cones: for every
/// y and every cone D with y above all of D, D = L(y, U(D, y')).
pub fn strong_condition_lower_over(p: &OrthoPoset, cones: &[ElementSet]) -> CheckResult {
    for y in p.elements() {
        for &cone in cones {
            if !p.upper_cone(cone).contains(y) {
                continue;
            }
            let inner = p.upper_cone(cone.with(p.comp(y)));
            let rhs = p.lower_cone(inner.with(y));
            if rhs != cone {
                return CheckResult::fail("strong-orthomodular-lower", vec![y], vec![cone, rhs]);
            }
        }
    }
    CheckResult::pass()
}

pub fn strong_condition_lower(p: &OrthoPoset) -> CheckResult {
    strong_condition_lower_over(p, &distinct_lower_cones(p))
}

/// Decides whether `p` is a strong generalized orthomodular poset: an
/// orthoposet in which the orthomodular condition holds with y replaced
/// by an arbitrary upper cone U(B).
///
/// The dual lower-cone form is evaluated as well and the verdicts are
/// asserted to agree.
pub fn is_strong_gomp(p: &OrthoPoset) -> CheckResult {
    let ortho = p.is_orthoposet();
    if !ortho.passed() {
        return ortho;
    }
    let upper = strong_condition_upper(p);
    let lower = strong_condition_lower(p);
    assert_eq!(
        upper.passed(),
        lower.passed(),
        "the two strong condition forms must agree on an orthoposet"
    );
    upper
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn b4_is_gomp() {
        assert!(is_gomp(&fixtures::b4()).passed());
    }

    #[test]
    fn c2_is_gomp() {
        assert!(is_gomp(&fixtures::c2()).passed());
    }

    #[test]
    fn o6_fails_with_minimal_witness() {
        let r = is_gomp(&fixtures::o6());
        assert_eq!(r.condition(), Some("orthomodular-upper"));
        // (a, b') in element ids.
        assert_eq!(r.witness_elements(), &[1, 4]);
        // Re-evaluate: U(b') = {b',1} but U(a, L(a',b')) = {a,b',1}.
        let p = fixtures::o6();
        assert_eq!(r.witness_sets()[0], p.up_set(4));
        assert_eq!(
            r.witness_sets()[1],
            p.upper_cone(p.lower_cone_of(&[3, 4]).with(1))
        );
        assert_ne!(r.witness_sets()[0], r.witness_sets()[1]);
    }

    #[test]
    fn broken_structures_fail_with_orthoposet_witness() {
        let r = is_gomp(&fixtures::c2_identity_comp());
        assert_eq!(r.condition(), Some("complement-upper"));
        let r = is_strong_gomp(&fixtures::c4());
        assert_eq!(r.condition(), Some("complement-lower"));
    }

    #[test]
    fn upper_cone_families() {
        let p = fixtures::c2();
        let cones = distinct_upper_cones(&p);
        assert_eq!(
            cones,
            vec![ElementSet::singleton(2, 1), ElementSet::universe(2)]
        );

        let p = fixtures::b4();
        let cones = distinct_upper_cones(&p);
        assert_eq!(cones.len(), 4);
        assert!(cones.contains(&p.universe()));
        assert!(cones.contains(&ElementSet::of(4, &[1, 3])));
        assert!(cones.contains(&ElementSet::of(4, &[2, 3])));
        assert!(cones.contains(&ElementSet::singleton(4, 3)));

        assert_eq!(distinct_upper_cones(&fixtures::o6()).len(), 6);
    }

    #[test]
    fn cone_closure_matches_exhaustive_oracle() {
        for p in fixtures::all() {
            if p.n() > 10 {
                continue;
            }
            assert_eq!(distinct_upper_cones(&p), upper_cones_exhaustive(&p));
            assert_eq!(distinct_lower_cones(&p), lower_cones_exhaustive(&p));
        }
    }

    #[test]
    fn anchors_pass_strong_except_o6() {
        assert!(is_strong_gomp(&fixtures::c2()).passed());
        assert!(is_strong_gomp(&fixtures::b4()).passed());
        assert!(is_strong_gomp(&fixtures::mo2()).passed());
        let r = is_strong_gomp(&fixtures::o6());
        assert_eq!(r.condition(), Some("strong-orthomodular-upper"));
        // Witness: x = a with the cone U(b') = {b', 1}.
        assert_eq!(r.witness_elements(), &[1]);
        assert_eq!(r.witness_sets()[0], fixtures::o6().up_set(4));
    }

    #[test]
    fn strong_implies_gomp_on_fixtures() {
        for p in fixtures::all() {
            if is_strong_gomp(&p).passed() {
                assert!(is_gomp(&p).passed());
            }
        }
    }

    #[test]
    fn strong_check_agrees_with_subset_quantification() {
        for p in fixtures::all() {
            if p.n() > 8 || !p.is_orthoposet().passed() {
                continue;
            }
            let reduced = strong_condition_upper(&p);
            let brute = strong_condition_upper_over(&p, &upper_cones_exhaustive(&p));
            assert_eq!(reduced.passed(), brute.passed());
        }
    }
}
