//! Everywhere-defined algebras (directoids) assigned to posets.

use crate::check::CheckResult;
use crate::poset::{OrthoPoset, StructureError};
use crate::set::ElementSet;

/// An algebra (P, ⊔, ', 0, 1) of type (2,1,0,0) given by operation tables.
///
/// The derived meet x ⊓ y is always computed as (x' ⊔ y')' and never
/// stored separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Directoid {
    n: usize,
    /// join_table[x * n + y] = x ⊔ y
    join_table: Vec<usize>,
    comp: Vec<usize>,
    bottom: usize,
    top: usize,
    names: Option<Vec<String>>,
}

impl Directoid {
    pub fn new(
        n: usize,
        join_table: Vec<usize>,
        comp: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        if join_table.len() != n * n {
            return Err(StructureError::CompWrongLength {
                got: join_table.len(),
                expected: n * n,
            });
        }
        if comp.len() != n {
            return Err(StructureError::CompWrongLength {
                got: comp.len(),
                expected: n,
            });
        }
        for &v in join_table.iter().chain(comp.iter()) {
            if v >= n {
                return Err(StructureError::ElementOutOfRange {
                    what: "table entry",
                    id: v,
                    n,
                });
            }
        }
        for (what, id) in [("bottom", bottom), ("top", top)] {
            if id >= n {
                return Err(StructureError::ElementOutOfRange { what, id, n });
            }
        }
        Ok(Directoid {
            n,
            join_table,
            comp,
            bottom,
            top,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.n {
            return Err(StructureError::NamesWrongLength {
                got: names.len(),
                expected: self.n,
            });
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

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join_table[x * self.n + y]
    }

    /// Derived meet: x ⊓ y = (x' ⊔ y')'.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.comp[self.join(self.comp[x], self.comp[y])]
    }

    pub fn comp(&self, x: usize) -> usize {
        self.comp[x]
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join_table
    }

    pub fn comp_table(&self) -> &[usize] {
        &self.comp
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }
}

/// The deterministic assignment: comparable pairs join to the larger
/// element; an incomparable pair joins to the least-id minimal element of
/// its upper cone. The table is symmetric by construction.
pub fn assign_canonical_directoid(p: &OrthoPoset) -> Directoid {
    let n = p.n();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        for y in x..n {
            let value = if p.leq(x, y) {
                y
            } else if p.leq(y, x) {
                x
            } else {
                let cone = p.upper_cone_of(&[x, y]);
                // 1 ∈ U(x,y), so a minimal element always exists.
                *p.minimal_elements(cone)
                    .iter()
                    .min()
                    .expect("upper cone is nonempty")
            };
            table[x * n + y] = value;
            table[y * n + x] = value;
        }
    }
    let mut d = Directoid {
        n,
        join_table: table,
        comp: (0..n).map(|x| p.comp(x)).collect(),
        bottom: p.bottom(),
        top: p.top(),
        names: None,
    };
    if let Some(names) = p.names() {
        d.names = Some(names.to_vec());
    }
    d
}

/// Number of distinct directoids assignable to `p`: the product over
/// incomparable pairs of |U(x,y)|.
pub fn assignment_count(p: &OrthoPoset) -> u128 {
    let mut count: u128 = 1;
    for x in 0..p.n() {
        for y in x + 1..p.n() {
            if !p.leq(x, y) && !p.leq(y, x) {
                count = count.saturating_mul(p.upper_cone_of(&[x, y]).len() as u128);
            }
        }
    }
    count
}

/// Streams distinct assigned directoids deterministically, the canonical
/// one first, up to `budget` tables. Choice points are the incomparable
/// pairs ordered by (min id, max id); each point ranges over U(x,y) with
/// the canonical choice first and the remaining candidates in ascending
/// id order, advanced odometer-style. When the total assignment count is
/// at most `budget` the stream is exhaustive.
pub fn enumerate_assignments(p: &OrthoPoset, budget: usize) -> Vec<Directoid> {
    assert!(budget >= 1, "assignment budget must be at least 1");
    let n = p.n();
    let canonical = assign_canonical_directoid(p);
    let mut points: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if p.leq(x, y) || p.leq(y, x) {
                continue;
            }
            let preferred = canonical.join(x, y);
            let mut candidates = vec![preferred];
            candidates.extend(p.upper_cone_of(&[x, y]).iter().filter(|&c| c != preferred));
            points.push((x, y, candidates));
        }
    }

    let mut out = Vec::new();
    let mut odometer = vec![0usize; points.len()];
    loop {
        let mut table = canonical.join_table.clone();
        for (k, &(x, y, ref candidates)) in points.iter().enumerate() {
            let value = candidates[odometer[k]];
            table[x * n + y] = value;
            table[y * n + x] = value;
        }
        out.push(Directoid {
            join_table: table,
            ..canonical.clone()
        });
        if out.len() == budget {
            break;
        }
        // Advance the odometer, least significant point last.
        let mut k = points.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            odometer[k] += 1;
            if odometer[k] < points[k].2.len() {
                break;
            }
            odometer[k] = 0;
        }
    }
    out
}

/// The directoid axioms: idempotency, commutativity and weak
/// associativity x ⊔ ((x⊔y) ⊔ z) = (x⊔y) ⊔ z.
pub fn is_directoid(d: &Directoid) -> CheckResult {
    for x in d.elements() {
        if d.join(x, x) != x {
            return CheckResult::fail("idempotency", vec![x], vec![]);
        }
    }
    for x in d.elements() {
        for y in d.elements() {
            if d.join(x, y) != d.join(y, x) {
                return CheckResult::fail("commutativity", vec![x, y], vec![]);
            }
        }
    }
    for x in d.elements() {
        for y in d.elements() {
            let xy = d.join(x, y);
            for z in d.elements() {
                let right = d.join(xy, z);
                if d.join(x, right) != right {
                    return CheckResult::fail("weak-associativity", vec![x, y, z], vec![]);
                }
            }
        }
    }
    CheckResult::pass()
}

/// The relation x ≤ y iff x ⊔ y = y, together with whether it is a
/// partial order.
#[derive(Clone, Debug)]
pub struct InducedOrderReport {
    n: usize,
    rows: Vec<u64>,
    is_poset: bool,
}

impl InducedOrderReport {
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn is_poset(&self) -> bool {
        self.is_poset
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the induced relation coincides with the order of `p`.
    pub fn matches(&self, p: &OrthoPoset) -> bool {
        self.n == p.n() && (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) == p.leq(x, y)))
    }
}

pub fn induced_order(d: &Directoid) -> InducedOrderReport {
    let n = d.n();
    let mut rows = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            if d.join(x, y) == y {
                rows[x] |= 1 << y;
            }
        }
    }
    let mut is_poset = true;
    'check: for x in 0..n {
        if rows[x] >> x & 1 == 0 {
            is_poset = false;
            break;
        }
        for y in 0..n {
            if x != y && rows[x] >> y & 1 == 1 && rows[y] >> x & 1 == 1 {
                is_poset = false;
                break 'check;
            }
            if rows[x] >> y & 1 == 1 {
                for z in 0..n {
                    if rows[y] >> z & 1 == 1 && rows[x] >> z & 1 == 0 {
                        is_poset = false;
                        break 'check;
                    }
                }
            }
        }
    }
    InducedOrderReport { n, rows, is_poset }
}

/// Per-condition verdicts for the four conditions that characterize, over
/// algebras assigned to bounded posets, when the base poset satisfies the
/// generalized orthomodular law:
///
///   (i)   if (x⊔z) ⊔ (((x'⊓w) ⊓ ((x⊔y)⊓w)) ⊔ z) = z for all w,
///         then (x⊔y) ⊔ z = z,
///   (ii)  (x⊓y) ⊔ x = x,
///   (iii) (x⊔y) ⊔ (x'⊔y) = 1,
///   (iv)  x'' = x.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub quasi_identity: CheckResult,
    pub absorption: CheckResult,
    pub complement_join: CheckResult,
    pub involution: CheckResult,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        self.quasi_identity.passed()
            && self.absorption.passed()
            && self.complement_join.passed()
            && self.involution.passed()
    }

    /// The first failing condition in the order (i), (ii), (iii), (iv).
    pub fn first_failure(&self) -> Option<&CheckResult> {
        [
            &self.quasi_identity,
            &self.absorption,
            &self.complement_join,
            &self.involution,
        ]
        .into_iter()
        .find(|r| !r.passed())
    }
}

fn quasi_identity_condition(d: &Directoid) -> CheckResult {
    for x in d.elements() {
        let xc = d.comp(x);
        for y in d.elements() {
            let xy = d.join(x, y);
            for z in d.elements() {
                if d.join(xy, z) == z {
                    continue;
                }
                // The conclusion fails; the hypothesis must fail for some w.
                let xz = d.join(x, z);
                let hypothesis_holds = d.elements().all(|w| {
                    let inner = d.meet(d.meet(xc, w), d.meet(xy, w));
                    d.join(xz, d.join(inner, z)) == z
                });
                if hypothesis_holds {
                    return CheckResult::fail("upper-bound-quasi-identity", vec![x, y, z], vec![]);
                }
            }
        }
    }
    CheckResult::pass()
}

fn absorption_identity(d: &Directoid) -> CheckResult {
    for x in d.elements() {
        for y in d.elements() {
            if d.join(d.meet(x, y), x) != x {
                return CheckResult::fail("absorption", vec![x, y], vec![]);
            }
        }
    }
    CheckResult::pass()
}

fn complement_join_identity(d: &Directoid) -> CheckResult {
    for x in d.elements() {
        for y in d.elements() {
            if d.join(d.join(x, y), d.join(d.comp(x), y)) != d.top() {
                return CheckResult::fail("complement-join", vec![x, y], vec![]);
            }
        }
    }
    CheckResult::pass()
}

fn involution_identity(d: &Directoid) -> CheckResult {
    for x in d.elements() {
        if d.comp(d.comp(x)) != x {
            return CheckResult::fail("involution", vec![x], vec![]);
        }
    }
    CheckResult::pass()
}

pub fn characterization_report(d: &Directoid) -> ConditionReport {
    ConditionReport {
        quasi_identity: quasi_identity_condition(d),
        absorption: absorption_identity(d),
        complement_join: complement_join_identity(d),
        involution: involution_identity(d),
    }
}

/// Membership in the class of algebras satisfying conditions (i)-(iv).
pub fn in_class_a(d: &Directoid) -> CheckResult {
    let report = characterization_report(d);
    match report.first_failure() {
        None => CheckResult::pass(),
        Some(failure) => failure.clone(),
    }
}

/// Membership in the variety cut out by identities (ii)-(iv) together
/// with the orthomodular identity
///   (i') x⊔y ≤ (x⊔z) ⊔ ((x' ⊓ (x⊔y)) ⊔ z),
/// where p ≤ q abbreviates the equation p ⊔ q = q.
pub fn in_variety_w(d: &Directoid) -> CheckResult {
    let absorption = absorption_identity(d);
    if !absorption.passed() {
        return absorption;
    }
    let complement_join = complement_join_identity(d);
    if !complement_join.passed() {
        return complement_join;
    }
    let involution = involution_identity(d);
    if !involution.passed() {
        return involution;
    }
    for x in d.elements() {
        for y in d.elements() {
            let lhs = d.join(x, y);
            for z in d.elements() {
                let rhs = d.join(d.join(x, z), d.join(d.meet(d.comp(x), lhs), z));
                if d.join(lhs, rhs) != rhs {
                    return CheckResult::fail("orthomodular-identity", vec![x, y, z], vec![]);
                }
            }
        }
    }
    CheckResult::pass()
}

/// Verifies the cone characterizations through the assigned operations,
/// in both image and fixed-point form, for every pair (a, b):
///   L(a,b) = { (a⊓x) ⊓ (b⊓x) : x } = { x : (a⊓x) ⊓ (b⊓x) = x },
///   U(a,b) = { (a⊔x) ⊔ (b⊔x) : x } = { x : (a⊔x) ⊔ (b⊔x) = x }.
pub fn cone_characterization_check(p: &OrthoPoset, d: &Directoid) -> CheckResult {
    let n = p.n();
    for a in 0..n {
        for b in 0..n {
            let lower = p.lower_cone_of(&[a, b]);
            let mut image = ElementSet::empty(n);
            let mut fixed = ElementSet::empty(n);
            for x in 0..n {
                let value = d.meet(d.meet(a, x), d.meet(b, x));
                image.insert(value);
                if value == x {
                    fixed.insert(x);
                }
            }
            if image != lower {
                return CheckResult::fail("lower-cone-image", vec![a, b], vec![lower, image]);
            }
            if fixed != lower {
                return CheckResult::fail("lower-cone-fixed-point", vec![a, b], vec![lower, fixed]);
            }

            let upper = p.upper_cone_of(&[a, b]);
            let mut image = ElementSet::empty(n);
            let mut fixed = ElementSet::empty(n);
            for x in 0..n {
                let value = d.join(d.join(a, x), d.join(b, x));
                image.insert(value);
                if value == x {
                    fixed.insert(x);
                }
            }
            if image != upper {
                return CheckResult::fail("upper-cone-image", vec![a, b], vec![upper, image]);
            }
            if fixed != upper {
                return CheckResult::fail("upper-cone-fixed-point", vec![a, b], vec![upper, fixed]);
            }
        }
    }
    CheckResult::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical_assignment_values() {
        let d = assign_canonical_directoid(&fixtures::b4());
        assert_eq!(d.join(1, 2), 3); // a ⊔ a' = 1
        let d = assign_canonical_directoid(&fixtures::o6());
        assert_eq!(d.join(1, 2), 5); // a ⊔ b = 1
        for p in fixtures::all() {
            let d = assign_canonical_directoid(&p);
            for x in p.elements() {
                assert_eq!(d.join(x, p.bottom()), x);
                assert_eq!(d.join(x, p.top()), p.top());
            }
        }
    }

    #[test]
    fn canonical_assignment_is_a_directoid() {
        for p in fixtures::all() {
            assert!(is_directoid(&assign_canonical_directoid(&p)).passed());
        }
    }

    #[test]
    fn broken_table_fails_commutativity() {
        let mut table = assign_canonical_directoid(&fixtures::b4())
            .join_table()
            .to_vec();
        table[6] = 1; // entry (a, a'): a ⊔ a' := a, but a' ⊔ a stays 1
        let d = Directoid::new(4, table, vec![3, 2, 1, 0], 0, 3).unwrap();
        assert_eq!(is_directoid(&d).condition(), Some("commutativity"));
    }

    #[test]
    fn induced_order_recovers_the_poset() {
        for p in fixtures::all() {
            let d = assign_canonical_directoid(&p);
            let report = induced_order(&d);
            assert!(report.is_poset());
            assert!(report.matches(&p));
        }
    }

    #[test]
    fn constant_top_table_is_not_a_poset() {
        let d = Directoid::new(2, vec![1, 1, 1, 1], vec![1, 0], 0, 1).unwrap();
        let report = induced_order(&d);
        assert!(!report.is_poset());
    }

    #[test]
    fn assignment_counts() {
        assert_eq!(assignment_count(&fixtures::c2()), 1);
        assert_eq!(assignment_count(&fixtures::b4()), 1);
        assert_eq!(assignment_count(&fixtures::mo2()), 1);
        assert_eq!(assignment_count(&fixtures::o6()), 1);
        assert_eq!(enumerate_assignments(&fixtures::mo2(), 10).len(), 1);
        // Two incomparable pairs with three upper bounds each.
        assert_eq!(assignment_count(&fixtures::double_bowtie()), 9);
        let all = enumerate_assignments(&fixtures::double_bowtie(), 100);
        assert_eq!(all.len(), 9);
        assert_eq!(
            all[0],
            assign_canonical_directoid(&fixtures::double_bowtie())
        );
        for d in &all {
            assert!(is_directoid(d).passed());
            assert!(induced_order(d).matches(&fixtures::double_bowtie()));
        }
        // Budgeted streaming returns a prefix of the same sequence.
        let some = enumerate_assignments(&fixtures::double_bowtie(), 4);
        assert_eq!(some, all[..4]);
    }

    #[test]
    fn characterization_on_anchors() {
        assert!(in_class_a(&assign_canonical_directoid(&fixtures::c2())).passed());
        assert!(in_class_a(&assign_canonical_directoid(&fixtures::b4())).passed());
        let r = in_class_a(&assign_canonical_directoid(&fixtures::o6()));
        assert_eq!(r.condition(), Some("upper-bound-quasi-identity"));
        let report = characterization_report(&assign_canonical_directoid(&fixtures::o6()));
        assert!(!report.quasi_identity.passed());
        assert!(report.absorption.passed());
        assert!(report.complement_join.passed());
        assert!(report.involution.passed());
    }

    #[test]
    fn variety_membership_on_anchors() {
        assert!(in_variety_w(&assign_canonical_directoid(&fixtures::b4())).passed());
        assert!(in_variety_w(&assign_canonical_directoid(&fixtures::mo2())).passed());
        assert!(!in_variety_w(&assign_canonical_directoid(&fixtures::o6())).passed());
    }

    #[test]
    fn variety_members_are_in_the_class() {
        for p in fixtures::all() {
            let d = assign_canonical_directoid(&p);
            if in_variety_w(&d).passed() {
                assert!(in_class_a(&d).passed());
            }
        }
    }

    #[test]
    fn cone_characterization_on_gomps() {
        assert!(cone_characterization_check(
            &fixtures::b4(),
            &assign_canonical_directoid(&fixtures::b4())
        )
        .passed());
        assert!(cone_characterization_check(
            &fixtures::mo2(),
            &assign_canonical_directoid(&fixtures::mo2())
        )
        .passed());
    }

    #[test]
    fn meet_is_derived() {
        let p = fixtures::b4();
        let d = assign_canonical_directoid(&p);
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(d.meet(x, y), d.comp(d.join(d.comp(x), d.comp(y))));
            }
        }
        // Absorption laws for the derived meet on an orthomodular anchor.
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(d.meet(d.join(x, y), x), x);
                assert_eq!(d.join(d.meet(x, y), x), x);
            }
        }
    }
}
