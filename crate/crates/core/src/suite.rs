//! The exhaustive verification suite: every theorem-level correspondence
//! the crate claims, checked over all enumerated structures at desk
//! scale. The front-end `verify-all` verb and the acceptance tests both
//! run these criteria.

use crate::canon::canonical_key;
use crate::completion::{
    dm_completion, dm_elements_exhaustive, is_nearly_oml, is_orthomodular_lattice,
};
use crate::congruence::{
    congruence_lattice, congruence_lattice_exhaustive, direct_congruence_properties,
    verify_majority, verify_maltsev, verify_regularity_terms,
};
use crate::directoid::{
    assign_canonical_directoid, assignment_count, enumerate_assignments, in_class_a, in_variety_w,
    Directoid,
};
use crate::enumerate::{orthoposets, EXPECTED_ORTHOPOSET_COUNTS};
use crate::fixtures;
use crate::gomp::{distinct_upper_cones, is_gomp, is_strong_gomp, upper_cones_exhaustive};
use crate::poset::OrthoPoset;
use crate::residuation::{
    build_mr_strong, build_r_gomp, is_conditionally_operator_residuated, is_operator_residuated,
    satisfies_operator_divisibility,
};
use rayon::prelude::*;

/// One verdict line of the suite.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        CriterionOutcome {
            name,
            passed: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CriterionOutcome {
            name,
            passed: false,
            detail,
        }
    }
}

fn corpus(max_n: usize) -> Vec<OrthoPoset> {
    (2..=max_n)
        .flat_map(|n| orthoposets(n).expect("sizes are within the guard"))
        .collect()
}

/// For every orthoposet, the generalized orthomodular condition holds
/// exactly when R = LU(x',y) is conditionally operator residuated and
/// operator divisible.
pub fn conditional_residuation_equivalence(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(8);
    let structures = corpus(max_n);
    let failures: Vec<String> = structures
        .par_iter()
        .filter_map(|p| {
            let gomp = is_gomp(p).passed();
            let ops = build_r_gomp(p);
            let residuated = is_conditionally_operator_residuated(&ops).passed()
                && satisfies_operator_divisibility(&ops).passed()
                && ops.r_matches_gomp_formula();
            (gomp != residuated).then(|| describe(p))
        })
        .collect();
    report(
        "conditional-residuation-equivalence",
        failures,
        format!("{} structures with n <= {}", structures.len(), max_n),
    )
}

/// Strong structures yield an operator residuated, divisible pair
/// M = L(U(x,y'),y), R = LU(x',L(x,y)); conversely that pair being
/// residuated and divisible forces the generalized orthomodular law.
pub fn strong_operator_residuation(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(8);
    let structures = corpus(max_n);
    let failures: Vec<String> = structures
        .par_iter()
        .filter_map(|p| {
            let strong = is_strong_gomp(p).passed();
            let ops = build_mr_strong(p);
            let residuated = is_operator_residuated(&ops).passed()
                && satisfies_operator_divisibility(&ops).passed()
                && ops.matches_strong_formulas();
            if strong && !residuated {
                return Some(format!(
                    "{}: strong but not operator residuated",
                    describe(p)
                ));
            }
            if residuated && !is_gomp(p).passed() {
                return Some(format!("{}: residuated but not orthomodular", describe(p)));
            }
            None
        })
        .collect();
    report(
        "strong-operator-residuation",
        failures,
        format!("{} structures with n <= {}", structures.len(), max_n),
    )
}

/// The generalized orthomodular law holds in the base poset exactly when
/// every assigned directoid satisfies the four characterization
/// conditions. Assignments are exhausted when at most 1000 exist,
/// otherwise the first 100 of the deterministic stream are sampled.
pub fn directoid_characterization(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(7);
    let structures = corpus(max_n);
    let mut assignments_checked = 0usize;
    let mut failures = Vec::new();
    for p in &structures {
        let gomp = is_gomp(p).passed();
        let count = assignment_count(p);
        let budget = if count <= 1000 { count as usize } else { 100 };
        for d in enumerate_assignments(p, budget) {
            assignments_checked += 1;
            if in_class_a(&d).passed() != gomp {
                failures.push(describe(p));
            }
        }
    }
    report(
        "directoid-characterization",
        failures,
        format!(
            "{} assignments over {} structures with n <= {}",
            assignments_checked,
            structures.len(),
            max_n
        ),
    )
}

fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(sigma: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = sigma.len();
        let Some(x) = (0..n).find(|&x| sigma[x] == usize::MAX) else {
            out.push(sigma.clone());
            return;
        };
        sigma[x] = x;
        go(sigma, out);
        sigma[x] = usize::MAX;
        for c in x + 1..n {
            if sigma[c] == usize::MAX {
                sigma[x] = c;
                sigma[c] = x;
                go(sigma, out);
                sigma[x] = usize::MAX;
                sigma[c] = usize::MAX;
            }
        }
    }
    let mut sigma = vec![usize::MAX; n];
    let mut out = Vec::new();
    go(&mut sigma, &mut out);
    out
}

/// Exhaustive check over small raw algebras of type (2,1,0,0): every
/// idempotent commutative table whose unary operation is an involution
/// and which satisfies the variety identities also satisfies the
/// quasi-identity (membership in the variety forces membership in the
/// class).
pub fn variety_inside_class(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(4);
    let mut members = 0usize;
    let mut candidates = 0usize;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let tables = n.pow(free.len() as u32);
        let sigmas = involutions(n);
        let results: Vec<(usize, usize, Vec<String>)> = (0..tables)
            .into_par_iter()
            .map(|code| {
                let mut table = vec![0usize; n * n];
                for i in 0..n {
                    table[i * n + i] = i;
                }
                let mut c = code;
                for &(i, j) in &free {
                    let v = c % n;
                    c /= n;
                    table[i * n + j] = v;
                    table[j * n + i] = v;
                }
                let mut members = 0usize;
                let mut candidates = 0usize;
                let mut failures = Vec::new();
                for sigma in &sigmas {
                    for zero in 0..n {
                        for one in 0..n {
                            candidates += 1;
                            let d = Directoid::new(n, table.clone(), sigma.clone(), zero, one)
                                .expect("tables are in range");
                            if !in_variety_w(&d).passed() {
                                continue;
                            }
                            members += 1;
                            if !in_class_a(&d).passed() {
                                failures.push(format!(
                                    "n={} table={:?} sigma={:?} zero={} one={}",
                                    n, table, sigma, zero, one
                                ));
                            }
                        }
                    }
                }
                (members, candidates, failures)
            })
            .collect();
        for (m, c, f) in results {
            members += m;
            candidates += c;
            failures.extend(f);
        }
    }
    report(
        "variety-inside-class",
        failures,
        format!(
            "{} variety members among {} candidate algebras with n <= {}",
            members, candidates, max_n
        ),
    )
}

/// Canonical directoids of generalized orthomodular posets have a working
/// majority term and a distributive congruence lattice; members of the
/// variety additionally have working Maltsev and regularity terms
/// together with direct permutability, distributivity and regularity.
/// Term verdicts must never contradict the direct computations.
pub fn congruence_theorem(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(6);
    let structures = corpus(max_n);
    let mut gomps = 0usize;
    let mut failures = Vec::new();
    for p in &structures {
        if !is_gomp(p).passed() {
            continue;
        }
        gomps += 1;
        let d = assign_canonical_directoid(p);
        let majority = verify_majority(&d).passed();
        let maltsev = verify_maltsev(&d).passed();
        let regularity = verify_regularity_terms(&d).passed();
        let props = direct_congruence_properties(&d).expect("sizes are within the guard");
        if !majority {
            failures.push(format!("{}: majority term fails", describe(p)));
        }
        if !props.distributive.passed() {
            failures.push(format!(
                "{}: congruence lattice not distributive",
                describe(p)
            ));
        }
        if in_variety_w(&d).passed() && !(maltsev && regularity && props.all_hold()) {
            failures.push(format!(
                "{}: variety member without full congruence properties",
                describe(p)
            ));
        }
        // Term soundness: a working term may never coincide with the
        // direct property failing.
        if majority && !props.distributive.passed()
            || maltsev && !props.permutable.passed()
            || regularity && !props.regular.passed()
        {
            failures.push(format!(
                "{}: term and direct verdicts disagree",
                describe(p)
            ));
        }
    }
    report(
        "congruence-theorem",
        failures,
        format!("{} orthomodular structures with n <= {}", gomps, max_n),
    )
}

/// The strong condition holds exactly when the completion is nearly an
/// orthomodular lattice, and an orthomodular completion forces it.
pub fn completion_correspondence(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(8);
    let structures = corpus(max_n);
    let failures: Vec<String> = structures
        .par_iter()
        .filter_map(|p| {
            let strong = is_strong_gomp(p).passed();
            let lt = dm_completion(p);
            if strong != is_nearly_oml(&lt).passed() {
                return Some(format!("{}: strong/nearly-oml mismatch", describe(p)));
            }
            if is_orthomodular_lattice(&lt).passed() && !strong {
                return Some(format!(
                    "{}: orthomodular completion of a non-strong poset",
                    describe(p)
                ));
            }
            None
        })
        .collect();
    report(
        "completion-correspondence",
        failures,
        format!("{} structures with n <= {}", structures.len(), max_n),
    )
}

/// Exact witnesses on the shipped fixtures.
pub fn fixture_regressions() -> CriterionOutcome {
    let mut failures = Vec::new();

    let o6 = fixtures::o6();
    let r = is_gomp(&o6);
    if r.condition() != Some("orthomodular-upper") || r.witness_elements() != [1, 4] {
        failures.push(format!("o6 witness: {}", r));
    }
    if o6.name(1) != "a" || o6.name(4) != "b'" {
        failures.push("o6 witness names drifted".into());
    }

    for (name, p) in [
        ("b4", fixtures::b4()),
        ("mo2", fixtures::mo2()),
        ("c2", fixtures::c2()),
    ] {
        if !is_strong_gomp(&p).passed() {
            failures.push(format!("{} no longer passes the strong condition", name));
        }
    }

    let r = is_orthomodular_lattice(&dm_completion(&o6));
    if r.condition() != Some("orthomodular-law")
        || r.witness_sets() != [o6.down_set(1), o6.down_set(4)]
    {
        failures.push(format!("o6 completion witness: {}", r));
    }

    report("fixture-regressions", failures, "4 anchor fixtures".into())
}

/// The closure-based cone family, completion and congruence lattice each
/// agree exactly with their exponential brute-force oracles on every
/// structure with at most five elements (enumerated and fixture alike).
pub fn oracle_cross_validation(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(5);
    let mut structures = corpus(max_n);
    structures.extend(fixtures::all().into_iter().filter(|p| p.n() <= max_n));
    let mut failures = Vec::new();
    for p in &structures {
        if distinct_upper_cones(p) != upper_cones_exhaustive(p) {
            failures.push(format!("{}: cone family mismatch", describe(p)));
        }
        if dm_completion(p).elements().to_vec() != dm_elements_exhaustive(p) {
            failures.push(format!("{}: completion mismatch", describe(p)));
        }
        let d = assign_canonical_directoid(p);
        if congruence_lattice(&d).expect("guard")
            != congruence_lattice_exhaustive(&d).expect("guard")
        {
            failures.push(format!("{}: congruence lattice mismatch", describe(p)));
        }
    }
    report(
        "oracle-cross-validation",
        failures,
        format!("{} structures with n <= {}", structures.len(), max_n),
    )
}

/// Enumeration counts: the hand-verified values at sizes 2..4, the frozen
/// regression values up to 8, and stability across a fresh run on a
/// single-threaded pool.
pub fn enumeration_counts(max_n: usize) -> CriterionOutcome {
    let max_n = max_n.min(8);
    let mut failures = Vec::new();
    let counts: Vec<usize> = (2..=max_n)
        .map(|n| orthoposets(n).expect("within guard").len())
        .collect();
    for (k, &count) in counts.iter().enumerate() {
        let n = k + 2;
        let expected = EXPECTED_ORTHOPOSET_COUNTS[k];
        if count != expected {
            failures.push(format!(
                "count at n={} is {}, expected {}",
                n, count, expected
            ));
        }
    }
    let single: Vec<Vec<u8>> = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool")
        .install(|| {
            (2..=max_n)
                .flat_map(|n| orthoposets(n).expect("within guard"))
                .map(|p| canonical_key(&p))
                .collect()
        });
    let parallel: Vec<Vec<u8>> = (2..=max_n)
        .flat_map(|n| orthoposets(n).expect("within guard"))
        .map(|p| canonical_key(&p))
        .collect();
    if single != parallel {
        failures.push("stream differs across worker counts".into());
    }
    report(
        "enumeration-counts",
        failures,
        format!("counts {:?} for n = 2..={}", counts, max_n),
    )
}

fn describe(p: &OrthoPoset) -> String {
    format!("n={} key={:?}", p.n(), canonical_key(p))
}

fn report(name: &'static str, failures: Vec<String>, detail: String) -> CriterionOutcome {
    if failures.is_empty() {
        CriterionOutcome::pass(name, detail)
    } else {
        CriterionOutcome::fail(
            name,
            format!("{}; FAILURES: {}", detail, failures.join("; ")),
        )
    }
}

/// Runs the whole suite, each criterion at the smaller of its native
/// bound and `max_n`.
pub fn run_all(max_n: usize) -> Vec<CriterionOutcome> {
    vec![
        conditional_residuation_equivalence(max_n),
        strong_operator_residuation(max_n),
        directoid_characterization(max_n),
        variety_inside_class(max_n),
        congruence_theorem(max_n),
        completion_correspondence(max_n),
        fixture_regressions(),
        oracle_cross_validation(max_n),
        enumeration_counts(max_n),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_at_small_sizes() {
        for outcome in run_all(5) {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involutions(1).len(), 1);
        assert_eq!(involutions(2).len(), 2);
        assert_eq!(involutions(3).len(), 4);
        assert_eq!(involutions(4).len(), 10);
    }
}
