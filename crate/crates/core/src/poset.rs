//! Finite bounded posets with a unary operation, and their cone operators.

use crate::check::CheckResult;
use crate::set::{ElementSet, MAX_UNIVERSE};
use thiserror::Error;

/// Construction failures for [`OrthoPoset`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("universe must have at least one element")]
    EmptyUniverse,
    #[error("universe of {n} elements exceeds the supported maximum of {max}")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("{what} id {id} is outside the universe of {n} elements")]
    ElementOutOfRange {
        what: &'static str,
        id: usize,
        n: usize,
    },
    #[error("relation is not antisymmetric: {a} and {b} lie on a cycle")]
    NotAntisymmetric { a: usize, b: usize },
    #[error("bottom is not below element {x}")]
    BottomNotLeast { x: usize },
    #[error("top is not above element {x}")]
    TopNotGreatest { x: usize },
    #[error("unary operation table has {got} entries, expected {expected}")]
    CompWrongLength { got: usize, expected: usize },
    #[error("expected {expected} element names, got {got}")]
    NamesWrongLength { got: usize, expected: usize },
    #[error("duplicate element name '{0}'")]
    DuplicateName(String),
}

/// A finite bounded poset `(P, ≤, ', 0, 1)` with a total unary operation.
///
/// Elements are dense ids `0..n`. The order is kept as one up-set and one
/// down-set bitmask row per element. Construction verifies only that `≤`
/// is a partial order and that `bottom`/`top` really bound the universe;
/// involution, antitonicity and complementation are decided by checks,
/// never presumed.
///
/// Values are immutable after construction, so they can be shared freely
/// across threads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthoPoset {
    n: usize,
    /// up[i] = { j : i ≤ j }
    up: Vec<u64>,
    /// down[i] = { j : j ≤ i }
    down: Vec<u64>,
    comp: Vec<usize>,
    bottom: usize,
    top: usize,
    names: Option<Vec<String>>,
}

impl OrthoPoset {
    /// Builds a poset from any generating relation: the input may be the
    /// full order, the covering relation, or anything in between. The
    /// reflexive-transitive closure is computed and cyclic inputs are
    /// rejected.
    pub fn new(
        n: usize,
        relation: &[(usize, usize)],
        comp: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        if n > MAX_UNIVERSE {
            return Err(StructureError::UniverseTooLarge {
                n,
                max: MAX_UNIVERSE,
            });
        }
        for &(a, b) in relation {
            for (what, id) in [("relation source", a), ("relation target", b)] {
                if id >= n {
                    return Err(StructureError::ElementOutOfRange { what, id, n });
                }
            }
        }
        if comp.len() != n {
            return Err(StructureError::CompWrongLength {
                got: comp.len(),
                expected: n,
            });
        }
        for &c in &comp {
            if c >= n {
                return Err(StructureError::ElementOutOfRange {
                    what: "unary image",
                    id: c,
                    n,
                });
            }
        }
        for (what, id) in [("bottom", bottom), ("top", top)] {
            if id >= n {
                return Err(StructureError::ElementOutOfRange { what, id, n });
            }
        }

        let mut up = vec![0u64; n];
        for i in 0..n {
            up[i] |= 1 << i;
        }
        for &(a, b) in relation {
            up[a] |= 1 << b;
        }
        // Warshall closure on bitmask rows.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                    return Err(StructureError::NotAntisymmetric {
                        a: i.min(j),
                        b: i.max(j),
                    });
                }
            }
        }
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if up[i] >> j & 1 == 1 {
                    down[j] |= 1 << i;
                }
            }
        }
        for x in 0..n {
            if up[bottom] >> x & 1 == 0 {
                return Err(StructureError::BottomNotLeast { x });
            }
            if down[top] >> x & 1 == 0 {
                return Err(StructureError::TopNotGreatest { x });
            }
        }

        Ok(OrthoPoset {
            n,
            up,
            down,
            comp,
            bottom,
            top,
            names: None,
        })
    }

    /// Attaches display names, one per element.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.n {
            return Err(StructureError::NamesWrongLength {
                got: names.len(),
                expected: self.n,
            });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(StructureError::DuplicateName(a.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn comp(&self, x: usize) -> usize {
        self.comp[x]
    }

    /// Image of a subset under the unary operation (not set complement).
    pub fn comp_image(&self, set: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        for x in set.iter() {
            out.insert(self.comp[x]);
        }
        out
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn set_to_string(&self, set: ElementSet) -> String {
        let mut out = String::from("{");
        for (k, x) in set.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.name(x));
        }
        out.push('}');
        out
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::universe(self.n)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Principal down-set { y : y ≤ x }.
    pub fn down_set(&self, x: usize) -> ElementSet {
        ElementSet::from_bits(self.n, self.down[x])
    }

    /// Principal up-set { y : x ≤ y }.
    pub fn up_set(&self, x: usize) -> ElementSet {
        ElementSet::from_bits(self.n, self.up[x])
    }

    /// Lower cone L(A) = { x : x ≤ a for all a in A }; L(∅) is the universe.
    pub fn lower_cone(&self, set: ElementSet) -> ElementSet {
        let mut bits = ElementSet::universe(self.n).bits();
        for a in set.iter() {
            bits &= self.down[a];
        }
        ElementSet::from_bits(self.n, bits)
    }

    /// Upper cone U(A) = { x : a ≤ x for all a in A }; U(∅) is the universe.
    pub fn upper_cone(&self, set: ElementSet) -> ElementSet {
        let mut bits = ElementSet::universe(self.n).bits();
        for a in set.iter() {
            bits &= self.up[a];
        }
        ElementSet::from_bits(self.n, bits)
    }

    pub fn lower_cone_of(&self, xs: &[usize]) -> ElementSet {
        self.lower_cone(ElementSet::of(self.n, xs))
    }

    pub fn upper_cone_of(&self, xs: &[usize]) -> ElementSet {
        self.upper_cone(ElementSet::of(self.n, xs))
    }

    /// Members of `set` with no strictly smaller member inside `set`.
    pub fn minimal_elements(&self, set: ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&x| set.iter().all(|y| y == x || !self.leq(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self, set: ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&x| set.iter().all(|y| y == x || !self.leq(x, y)))
            .collect()
    }

    /// The least member of `set`, when one exists.
    pub fn least_of(&self, set: ElementSet) -> Option<usize> {
        set.iter().find(|&m| set.iter().all(|x| self.leq(m, x)))
    }

    pub fn greatest_of(&self, set: ElementSet) -> Option<usize> {
        set.iter().find(|&m| set.iter().all(|x| self.leq(x, m)))
    }

    /// Supremum of a subset: the least element of its upper cone, if any.
    pub fn supremum(&self, set: ElementSet) -> Option<usize> {
        self.least_of(self.upper_cone(set))
    }

    pub fn infimum(&self, set: ElementSet) -> Option<usize> {
        self.greatest_of(self.lower_cone(set))
    }

    /// True when every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        for x in 0..self.n {
            for y in x + 1..self.n {
                let pair = ElementSet::of(self.n, &[x, y]);
                if self.supremum(pair).is_none() || self.infimum(pair).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Covering relation: pairs (a, b) with a < b and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self.up[a] & self.down[b] & !(1 << a) & !(1 << b);
                if between == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Decides whether the unary operation is an antitone involution that
    /// complements every element: x'' = x, complementation
    /// (L(x,x') = {0} and U(x,x') = {1}), and x ≤ y implies y' ≤ x'.
    ///
    /// Clauses are checked in that order and the first violation, scanned
    /// in ascending element order, is reported.
    pub fn is_orthoposet(&self) -> CheckResult {
        for x in 0..self.n {
            if self.comp[self.comp[x]] != x {
                return CheckResult::fail("involution", vec![x], vec![]);
            }
        }
        let zero = ElementSet::singleton(self.n, self.bottom);
        let one = ElementSet::singleton(self.n, self.top);
        for x in 0..self.n {
            let pair = ElementSet::singleton(self.n, x).with(self.comp[x]);
            let lower = self.lower_cone(pair);
            if lower != zero {
                return CheckResult::fail("complement-lower", vec![x], vec![lower]);
            }
            let upper = self.upper_cone(pair);
            if upper != one {
                return CheckResult::fail("complement-upper", vec![x], vec![upper]);
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if self.leq(x, y) && !self.leq(self.comp[y], self.comp[x]) {
                    return CheckResult::fail("antitone", vec![x, y], vec![]);
                }
            }
        }
        CheckResult::pass()
    }

    /// Verifies both De Morgan laws, (L(x,y))' = U(x',y') and
    /// (U(x,y))' = L(x',y'), over all pairs, and their subset forms
    /// (L(A))' = U(A') and (U(A))' = L(A') over all subsets of universes
    /// of at most 16 elements. (For larger universes the subset form
    /// follows from the pair form and an antitone involution.)
    pub fn check_de_morgan(&self) -> CheckResult {
        for x in 0..self.n {
            for y in 0..self.n {
                let pair = ElementSet::of(self.n, &[x, y]);
                let comp_pair = ElementSet::of(self.n, &[self.comp[x], self.comp[y]]);
                let lhs = self.comp_image(self.lower_cone(pair));
                let rhs = self.upper_cone(comp_pair);
                if lhs != rhs {
                    return CheckResult::fail("de-morgan-pair-lower", vec![x, y], vec![lhs, rhs]);
                }
                let lhs = self.comp_image(self.upper_cone(pair));
                let rhs = self.lower_cone(comp_pair);
                if lhs != rhs {
                    return CheckResult::fail("de-morgan-pair-upper", vec![x, y], vec![lhs, rhs]);
                }
            }
        }
        if self.n <= 16 {
            for bits in 0..1u64 << self.n {
                let set = ElementSet::from_bits(self.n, bits);
                let image = self.comp_image(set);
                let lhs = self.comp_image(self.lower_cone(set));
                let rhs = self.upper_cone(image);
                if lhs != rhs {
                    return CheckResult::fail(
                        "de-morgan-subset-lower",
                        vec![],
                        vec![set, lhs, rhs],
                    );
                }
                let lhs = self.comp_image(self.upper_cone(set));
                let rhs = self.lower_cone(image);
                if lhs != rhs {
                    return CheckResult::fail(
                        "de-morgan-subset-upper",
                        vec![],
                        vec![set, lhs, rhs],
                    );
                }
            }
        }
        CheckResult::pass()
    }
}
