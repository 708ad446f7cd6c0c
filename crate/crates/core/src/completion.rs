//! The Dedekind-MacNeille completion and its lattice classification.

use crate::check::CheckResult;
use crate::gomp::is_strong_gomp;
use crate::poset::OrthoPoset;
use crate::set::ElementSet;

/// The complete lattice of all lower cones L(A), A ⊆ P, ordered by
/// inclusion, with A ∨ B = LU(A,B), A ∧ B = A ∩ B and A* = L(A').
///
/// Elements are kept sorted by bit pattern, so indices are deterministic.
#[derive(Clone, Debug)]
pub struct DmLattice {
    base: OrthoPoset,
    elements: Vec<ElementSet>,
    star: Vec<usize>,
    /// embed[x] = index of L(x)
    embed: Vec<usize>,
}

impl DmLattice {
    pub fn base(&self) -> &OrthoPoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementSet] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> ElementSet {
        self.elements[i]
    }

    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.elements.binary_search(&set).ok()
    }

    /// Index of the image L(x) of a base element.
    pub fn embed(&self, x: usize) -> usize {
        self.embed[x]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_subset_of(&self.elements[j])
    }

    /// Meet: literal intersection.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index_of(self.elements[i].intersection(self.elements[j]))
            .expect("the completion is closed under intersection")
    }

    /// Join: recomputed as LU(A, B) following the defining formula.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let union = self.elements[i].union(self.elements[j]);
        self.index_of(self.base.lower_cone(self.base.upper_cone(union)))
            .expect("the completion is closed under LU")
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// The least upper bound in the inclusion order, found by scanning;
    /// exists for every pair because the completion is a complete lattice.
    pub fn least_upper_bound(&self, i: usize, j: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq(i, k) && self.leq(j, k))
            .collect();
        ubs.iter()
            .copied()
            .find(|&m| ubs.iter().all(|&k| self.leq(m, k)))
    }
}

/// Builds the completion without enumerating 2^n subsets: every L(A) is
/// an intersection of principal down-sets, so the family is the closure
/// of { L(x) : x } ∪ { P } under pairwise intersection.
pub fn dm_completion(p: &OrthoPoset) -> DmLattice {
    let mut elements: Vec<ElementSet> = vec![p.universe()];
    for x in p.elements() {
        let d = p.down_set(x);
        if !elements.contains(&d) {
            elements.push(d);
        }
    }
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for x in p.elements() {
                let meet = a.intersection(p.down_set(x));
                if !elements.contains(&meet) {
                    elements.push(meet);
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }
    elements.sort();

    let star = elements
        .iter()
        .map(|&a| {
            let image = p.lower_cone(p.comp_image(a));
            elements
                .binary_search(&image)
                .expect("star lands in the completion")
        })
        .collect();
    let embed = p
        .elements()
        .map(|x| {
            elements
                .binary_search(&p.down_set(x))
                .expect("principal cones are elements")
        })
        .collect();
    DmLattice {
        base: p.clone(),
        elements,
        star,
        embed,
    }
}

/// Brute-force oracle for the element family: { L(A) : A ⊆ P } by
/// enumerating every subset. For cross-validation at small sizes.
pub fn dm_elements_exhaustive(p: &OrthoPoset) -> Vec<ElementSet> {
    let mut out = Vec::new();
    for bits in 0..1u64 << p.n() {
        let l = p.lower_cone(ElementSet::from_bits(p.n(), bits));
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out.sort();
    out
}

/// Star is an antitone involution and a complementation on the
/// completion: A** = A, A ∧ A* = {0}, A ∨ A* = P, and A ⊆ B implies
/// B* ⊆ A*.
pub fn is_ortholattice(lt: &DmLattice) -> CheckResult {
    for i in 0..lt.len() {
        if lt.star(lt.star(i)) != i {
            return CheckResult::fail("star-involution", vec![i], vec![lt.element(i)]);
        }
    }
    for i in 0..lt.len() {
        let s = lt.star(i);
        if lt.meet(i, s) != lt.bottom() {
            return CheckResult::fail("star-complement-meet", vec![i], vec![lt.element(i)]);
        }
        if lt.join(i, s) != lt.top() {
            return CheckResult::fail("star-complement-join", vec![i], vec![lt.element(i)]);
        }
    }
    for i in 0..lt.len() {
        for j in 0..lt.len() {
            if lt.leq(i, j) && !lt.leq(lt.star(j), lt.star(i)) {
                return CheckResult::fail(
                    "star-antitone",
                    vec![i, j],
                    vec![lt.element(i), lt.element(j)],
                );
            }
        }
    }
    CheckResult::pass()
}

/// The orthomodular law over all comparable pairs of the completion:
/// A ⊆ B implies B = A ∨ (A* ∧ B). Reports the ortholattice witness
/// first when the completion is not even an ortholattice.
pub fn is_orthomodular_lattice(lt: &DmLattice) -> CheckResult {
    let ortho = is_ortholattice(lt);
    if !ortho.passed() {
        return ortho;
    }
    for i in 0..lt.len() {
        for j in 0..lt.len() {
            if !lt.leq(i, j) {
                continue;
            }
            if lt.join(i, lt.meet(lt.star(i), j)) != j {
                return CheckResult::fail(
                    "orthomodular-law",
                    vec![i, j],
                    vec![lt.element(i), lt.element(j)],
                );
            }
        }
    }
    CheckResult::pass()
}

/// The weaker law quantified over principal elements only: for every base
/// element a and every completion element B, L(a) ⊆ B implies
/// B = L(a) ∨ (B ∧ (L(a))*).
pub fn is_nearly_oml(lt: &DmLattice) -> CheckResult {
    let ortho = is_ortholattice(lt);
    if !ortho.passed() {
        return ortho;
    }
    for a in lt.base().elements() {
        let i = lt.embed(a);
        for j in 0..lt.len() {
            if !lt.leq(i, j) {
                continue;
            }
            if lt.join(i, lt.meet(j, lt.star(i))) != j {
                return CheckResult::fail("nearly-orthomodular-law", vec![a], vec![lt.element(j)]);
            }
        }
    }
    CheckResult::pass()
}

/// Cross-checks, on one structure, that being a strong generalized
/// orthomodular poset is equivalent to the completion being nearly an
/// orthomodular lattice, and that an orthomodular completion forces the
/// strong condition.
pub fn verify_completion_correspondence(p: &OrthoPoset) -> CheckResult {
    let strong = is_strong_gomp(p).passed();
    let lt = dm_completion(p);
    let nearly = is_nearly_oml(&lt).passed();
    if strong && !nearly {
        return CheckResult::fail("strong-gomp-without-nearly-oml", vec![], vec![]);
    }
    if nearly && !strong {
        return CheckResult::fail("nearly-oml-without-strong-gomp", vec![], vec![]);
    }
    if is_orthomodular_lattice(&lt).passed() && !strong {
        return CheckResult::fail("oml-completion-without-strong-gomp", vec![], vec![]);
    }
    CheckResult::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn completion_sizes() {
        assert_eq!(dm_completion(&fixtures::c2()).len(), 2);
        assert_eq!(dm_completion(&fixtures::b4()).len(), 4);
        assert_eq!(dm_completion(&fixtures::o6()).len(), 6);
        // The double bowtie is not a lattice, so its completion grows.
        assert!(dm_completion(&fixtures::double_bowtie()).len() > 10);
    }

    #[test]
    fn completion_matches_exhaustive_oracle() {
        for p in fixtures::all() {
            if p.n() > 10 {
                continue;
            }
            assert_eq!(
                dm_completion(&p).elements().to_vec(),
                dm_elements_exhaustive(&p)
            );
        }
    }

    #[test]
    fn elements_are_cone_closed() {
        for p in fixtures::all() {
            let lt = dm_completion(&p);
            for &a in lt.elements() {
                assert_eq!(p.lower_cone(p.upper_cone(a)), a);
            }
        }
    }

    #[test]
    fn embedding_is_an_order_embedding() {
        for p in fixtures::all() {
            let lt = dm_completion(&p);
            let ortho = p.is_orthoposet().passed();
            for x in p.elements() {
                assert_eq!(lt.element(lt.embed(x)), p.down_set(x));
                // star(L(x)) = L(x') needs the antitone involution.
                if ortho {
                    assert_eq!(lt.star(lt.embed(x)), lt.embed(p.comp(x)));
                }
                for y in p.elements() {
                    assert_eq!(p.leq(x, y), lt.leq(lt.embed(x), lt.embed(y)));
                }
            }
        }
    }

    #[test]
    fn join_agrees_with_least_upper_bound() {
        for p in fixtures::all() {
            let lt = dm_completion(&p);
            for i in 0..lt.len() {
                for j in 0..lt.len() {
                    assert_eq!(Some(lt.join(i, j)), lt.least_upper_bound(i, j));
                }
            }
        }
    }

    #[test]
    fn classification_of_anchors() {
        assert!(is_ortholattice(&dm_completion(&fixtures::b4())).passed());
        assert!(is_ortholattice(&dm_completion(&fixtures::o6())).passed());
        assert!(!is_ortholattice(&dm_completion(&fixtures::c2_identity_comp())).passed());

        assert!(is_orthomodular_lattice(&dm_completion(&fixtures::b4())).passed());
        assert!(is_orthomodular_lattice(&dm_completion(&fixtures::c2())).passed());
        assert!(is_orthomodular_lattice(&dm_completion(&fixtures::mo2())).passed());
    }

    #[test]
    fn o6_completion_fails_orthomodularity_with_minimal_witness() {
        let p = fixtures::o6();
        let lt = dm_completion(&p);
        let r = is_orthomodular_lattice(&lt);
        assert_eq!(r.condition(), Some("orthomodular-law"));
        // Witness (L(a), L(b')).
        assert_eq!(r.witness_sets(), &[p.down_set(1), p.down_set(4)]);
    }

    #[test]
    fn o6_completion_is_not_nearly_oml() {
        let p = fixtures::o6();
        let r = is_nearly_oml(&dm_completion(&p));
        assert_eq!(r.condition(), Some("nearly-orthomodular-law"));
        // Witness a = a with B = L(b').
        assert_eq!(r.witness_elements(), &[1]);
        assert_eq!(r.witness_sets(), &[p.down_set(4)]);
    }

    #[test]
    fn nearly_oml_on_strong_anchors() {
        assert!(is_nearly_oml(&dm_completion(&fixtures::mo2())).passed());
        assert!(is_nearly_oml(&dm_completion(&fixtures::c2())).passed());
    }

    #[test]
    fn oml_implies_nearly_oml() {
        for p in fixtures::all() {
            let lt = dm_completion(&p);
            if is_orthomodular_lattice(&lt).passed() {
                assert!(is_nearly_oml(&lt).passed());
            }
        }
    }

    #[test]
    fn correspondence_on_fixtures() {
        for p in fixtures::all() {
            assert!(verify_completion_correspondence(&p).passed());
        }
    }
}
