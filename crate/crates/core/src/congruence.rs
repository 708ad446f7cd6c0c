//! Congruences of algebras of type (2,1,0,0), decided both directly and
//! through the majority, Maltsev and regularity terms.

use crate::check::CheckResult;
use crate::directoid::Directoid;
use crate::poset::OrthoPoset;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("universe of {n} elements exceeds the congruence-lattice guard of {max}")]
    UniverseTooLarge { n: usize, max: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("variable {index} has no assigned value")]
    UnassignedVariable { index: usize },
}

/// A term over the signature { ⊔, ⊓, ', 0, 1 } and numbered variables.
/// The meet is syntax only; evaluation always expands it to (x' ⊔ y')'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Comp(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn comp(t: Term) -> Term {
        Term::Comp(Box::new(t))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    /// Bottom-up evaluation in `d` under the given variable assignment.
    pub fn eval(&self, d: &Directoid, env: &[usize]) -> Result<usize, TermError> {
        match self {
            Term::Var(i) => env
                .get(*i)
                .copied()
                .ok_or(TermError::UnassignedVariable { index: *i }),
            Term::Zero => Ok(d.bottom()),
            Term::One => Ok(d.top()),
            Term::Comp(t) => Ok(d.comp(t.eval(d, env)?)),
            Term::Join(a, b) => Ok(d.join(a.eval(d, env)?, b.eval(d, env)?)),
            Term::Meet(a, b) => Ok(d.meet(a.eval(d, env)?, b.eval(d, env)?)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => match i {
                0 => write!(f, "x"),
                1 => write!(f, "y"),
                2 => write!(f, "z"),
                i => write!(f, "v{}", i),
            },
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Comp(t) => write!(f, "{}'", t),
            Term::Join(a, b) => write!(f, "({} v {})", a, b),
            Term::Meet(a, b) => write!(f, "({} ^ {})", a, b),
        }
    }
}

fn x() -> Term {
    Term::var(0)
}
fn y() -> Term {
    Term::var(1)
}
fn z() -> Term {
    Term::var(2)
}

/// m(x,y,z) = (x⊔y) ⊓ (y⊔z) ⊓ (z⊔x), associated to the left.
pub fn majority_term() -> Term {
    Term::meet(
        Term::meet(Term::join(x(), y()), Term::join(y(), z())),
        Term::join(z(), x()),
    )
}

/// p(x,y,z) = (x ⊔ (y' ⊓ (y⊔z))) ⊓ (z ⊔ (y' ⊓ (y⊔x))).
pub fn maltsev_term() -> Term {
    Term::meet(
        Term::join(x(), Term::meet(Term::comp(y()), Term::join(y(), z()))),
        Term::join(z(), Term::meet(Term::comp(y()), Term::join(y(), x()))),
    )
}

/// t(x,y) = (x' ⊓ (x⊔y)) ⊔ (y' ⊓ (x⊔y)).
pub fn regularity_base_term() -> Term {
    let xy = Term::join(x(), y());
    Term::join(
        Term::meet(Term::comp(x()), xy.clone()),
        Term::meet(Term::comp(y()), xy),
    )
}

/// The pair t1(x,y,z) = t(x,y) ⊔ z and t2(x,y,z) = (t(x,y))' ⊓ z.
pub fn regularity_terms() -> (Term, Term) {
    let t = regularity_base_term();
    (Term::join(t.clone(), z()), Term::meet(Term::comp(t), z()))
}

/// Checks the three majority identities m(x,x,y) = m(x,y,x) = m(y,x,x) = x.
pub fn verify_majority(d: &Directoid) -> CheckResult {
    let m = majority_term();
    for a in d.elements() {
        for b in d.elements() {
            if m.eval(d, &[a, a, b]).unwrap() != a {
                return CheckResult::fail("majority-left", vec![a, b], vec![]);
            }
            if m.eval(d, &[a, b, a]).unwrap() != a {
                return CheckResult::fail("majority-middle", vec![a, b], vec![]);
            }
            if m.eval(d, &[b, a, a]).unwrap() != a {
                return CheckResult::fail("majority-right", vec![a, b], vec![]);
            }
        }
    }
    CheckResult::pass()
}

/// Checks both Maltsev identities p(x,x,y) = p(y,x,x) = y.
pub fn verify_maltsev(d: &Directoid) -> CheckResult {
    let p = maltsev_term();
    for a in d.elements() {
        for b in d.elements() {
            if p.eval(d, &[a, a, b]).unwrap() != b {
                return CheckResult::fail("maltsev-left", vec![a, b], vec![]);
            }
            if p.eval(d, &[b, a, a]).unwrap() != b {
                return CheckResult::fail("maltsev-right", vec![a, b], vec![]);
            }
        }
    }
    CheckResult::pass()
}

/// Checks the regularity scheme: t1(x,x,z) = t2(x,x,z) = z, and
/// t1(x,y,z) = t2(x,y,z) = z only when x = y.
pub fn verify_regularity_terms(d: &Directoid) -> CheckResult {
    let (t1, t2) = regularity_terms();
    for a in d.elements() {
        for c in d.elements() {
            if t1.eval(d, &[a, a, c]).unwrap() != c {
                return CheckResult::fail("regularity-unit-join", vec![a, c], vec![]);
            }
            if t2.eval(d, &[a, a, c]).unwrap() != c {
                return CheckResult::fail("regularity-unit-meet", vec![a, c], vec![]);
            }
        }
    }
    for a in d.elements() {
        for b in d.elements() {
            if a == b {
                continue;
            }
            for c in d.elements() {
                if t1.eval(d, &[a, b, c]).unwrap() == c && t2.eval(d, &[a, b, c]).unwrap() == c {
                    return CheckResult::fail("regularity-separation", vec![a, b, c], vec![]);
                }
            }
        }
    }
    CheckResult::pass()
}

/// A partition of the universe, normalized so that block ids appear in
/// first-occurrence order; equality of the underlying vectors is then
/// equality of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    pub fn identity(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
        }
    }

    pub fn full(n: usize) -> Partition {
        Partition {
            block_of: vec![0; n],
        }
    }

    fn from_labels(labels: &[usize]) -> Partition {
        let mut map = vec![usize::MAX; labels.len()];
        let mut next = 0;
        let mut block_of = Vec::with_capacity(labels.len());
        for &l in labels {
            if map[l] == usize::MAX {
                map[l] = next;
                next += 1;
            }
            block_of.push(map[l]);
        }
        Partition { block_of }
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn block_id(&self, a: usize) -> usize {
        self.block_of[a]
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Join in the partition lattice: the equivalence closure of the
    /// union. For congruences of one algebra this is again a congruence.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if self.related(a, b) || other.related(a, b) {
                    uf.union(a, b);
                }
            }
        }
        uf.into_partition()
    }

    /// Meet: the intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if self.related(a, b) && other.related(a, b) {
                    uf.union(a, b);
                }
            }
        }
        uf.into_partition()
    }

    pub fn refines(&self, other: &Partition) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    /// Compatibility with the operations of `d`: related pairs stay
    /// related under joining with any element (on either side) and under
    /// the unary operation. The constants need no extra clause.
    pub fn is_congruence(&self, d: &Directoid) -> bool {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                if !self.related(a, b) {
                    continue;
                }
                if !self.related(d.comp(a), d.comp(b)) {
                    return false;
                }
                for c in 0..n {
                    if !self.related(d.join(a, c), d.join(b, c))
                        || !self.related(d.join(c, a), d.join(c, b))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// Smallest congruence relating `a` and `b`: the seeded pair closed under
/// all unary polynomial translations (joining a constant on either side
/// and the unary operation) until fixpoint.
pub fn principal_congruence(d: &Directoid, a: usize, b: usize) -> Partition {
    let n = d.n();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..n {
            for v in u + 1..n {
                if uf.find(u) != uf.find(v) {
                    continue;
                }
                if uf.union(d.comp(u), d.comp(v)) {
                    changed = true;
                }
                for c in 0..n {
                    if uf.union(d.join(u, c), d.join(v, c)) {
                        changed = true;
                    }
                    if uf.union(d.join(c, u), d.join(c, v)) {
                        changed = true;
                    }
                }
            }
        }
    }
    uf.into_partition()
}

const CON_GUARD: usize = 12;
const CON_ORACLE_GUARD: usize = 10;

/// All congruences of `d`: the principal congruences closed under
/// pairwise join, together with the identity. Sorted coarsest-last by
/// (descending block count, block vector), so the identity comes first
/// and everything is deterministic.
pub fn congruence_lattice(d: &Directoid) -> Result<Vec<Partition>, CongruenceError> {
    let n = d.n();
    if n > CON_GUARD {
        return Err(CongruenceError::UniverseTooLarge { n, max: CON_GUARD });
    }
    let mut found: Vec<Partition> = vec![Partition::identity(n)];
    for a in 0..n {
        for b in a + 1..n {
            let p = principal_congruence(d, a, b);
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }
    let mut frontier: Vec<Partition> = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &found.clone() {
                let j = f.join(g);
                if !found.contains(&j) {
                    found.push(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    sort_congruences(&mut found);
    Ok(found)
}

/// Brute-force oracle: every set partition of the universe, filtered for
/// compatibility. Exponential (Bell numbers), for cross-validation only.
pub fn congruence_lattice_exhaustive(d: &Directoid) -> Result<Vec<Partition>, CongruenceError> {
    let n = d.n();
    if n > CON_ORACLE_GUARD {
        return Err(CongruenceError::UniverseTooLarge {
            n,
            max: CON_ORACLE_GUARD,
        });
    }
    let mut found = Vec::new();
    // Restricted growth strings enumerate set partitions exactly once.
    let mut rgs = vec![0usize; n];
    loop {
        let p = Partition {
            block_of: rgs.clone(),
        };
        if p.is_congruence(d) {
            found.push(p);
        }
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i <= 1 {
                sort_congruences(&mut found);
                return Ok(found);
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
            rgs[i] = 0;
        }
    }
}

fn sort_congruences(cons: &mut [Partition]) {
    cons.sort_by(|a, b| {
        b.block_count()
            .cmp(&a.block_count())
            .then_with(|| a.block_of.cmp(&b.block_of))
    });
}

/// Direct verdicts on the congruence lattice of one algebra.
#[derive(Clone, Debug)]
pub struct CongruenceProperties {
    pub permutable: CheckResult,
    pub distributive: CheckResult,
    pub regular: CheckResult,
}

impl CongruenceProperties {
    pub fn all_hold(&self) -> bool {
        self.permutable.passed() && self.distributive.passed() && self.regular.passed()
    }
}

fn compose(theta: &Partition, phi: &Partition, a: usize, c: usize) -> bool {
    (0..theta.n()).any(|b| theta.related(a, b) && phi.related(b, c))
}

/// Decides permutability (Θ∘Φ = Φ∘Θ), distributivity
/// ((Θ∨Φ)∧Ψ = (Θ∧Ψ)∨(Φ∧Ψ)) and regularity (congruences sharing one
/// class are equal) by direct computation over the whole lattice.
pub fn direct_congruence_properties(
    d: &Directoid,
) -> Result<CongruenceProperties, CongruenceError> {
    let cons = congruence_lattice(d)?;
    let n = d.n();

    let mut permutable = CheckResult::pass();
    'perm: for t in &cons {
        for f in &cons {
            for a in 0..n {
                for c in 0..n {
                    if compose(t, f, a, c) != compose(f, t, a, c) {
                        permutable = CheckResult::fail("permutability", vec![a, c], vec![]);
                        break 'perm;
                    }
                }
            }
        }
    }

    let mut distributive = CheckResult::pass();
    'dist: for t in &cons {
        for f in &cons {
            let join_tf = t.join(f);
            for s in &cons {
                let lhs = join_tf.meet(s);
                let rhs = t.meet(s).join(&f.meet(s));
                if lhs != rhs {
                    distributive = CheckResult::fail("distributivity", vec![], vec![]);
                    break 'dist;
                }
            }
        }
    }

    let mut regular = CheckResult::pass();
    'reg: for (i, t) in cons.iter().enumerate() {
        for f in &cons[i + 1..] {
            for a in 0..n {
                let same_class = (0..n).all(|b| t.related(a, b) == f.related(a, b));
                if same_class {
                    regular = CheckResult::fail("regularity", vec![a], vec![]);
                    break 'reg;
                }
            }
        }
    }

    Ok(CongruenceProperties {
        permutable,
        distributive,
        regular,
    })
}

/// The partial ternary operation
/// p(x,y,z) = (x ∨ L(y', y⊔z)) ⊓ (z ∨ L(y', x⊔y)),
/// where ∨ takes the supremum in the base poset and ⊓ is the derived
/// directoid meet. Returns `None` when either supremum does not exist.
pub fn partial_maltsev_eval(
    p: &OrthoPoset,
    d: &Directoid,
    x: usize,
    y: usize,
    z: usize,
) -> Option<usize> {
    let yc = p.comp(y);
    let first_set = p.lower_cone_of(&[yc, d.join(y, z)]).with(x);
    let first = p.least_of(p.upper_cone(first_set))?;
    let second_set = p.lower_cone_of(&[yc, d.join(x, y)]).with(z);
    let second = p.least_of(p.upper_cone(second_set))?;
    Some(d.meet(first, second))
}
