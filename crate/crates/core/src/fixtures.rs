//! Canonical small structures used as test anchors across the crate.
//!
//! Every fixture is produced by the ordinary constructor from its covering
//! relation; no order table is hand-copied.

use crate::poset::OrthoPoset;

fn named(p: OrthoPoset, names: &[&str]) -> OrthoPoset {
    p.with_names(names.iter().map(|s| s.to_string()).collect())
        .expect("fixture names are valid")
}

/// The two-element chain 0 < 1 with 0' = 1.
pub fn c2() -> OrthoPoset {
    let p = OrthoPoset::new(2, &[(0, 1)], vec![1, 0], 0, 1).expect("c2 is well formed");
    named(p, &["0", "1"])
}

/// The two-element chain with the identity as unary operation; fails
/// complementation.
pub fn c2_identity_comp() -> OrthoPoset {
    let p = OrthoPoset::new(2, &[(0, 1)], vec![0, 1], 0, 1).expect("chain is well formed");
    named(p, &["0", "1"])
}

/// The four-element Boolean algebra 0 < a, a' < 1. Ids: 0, a=1, a'=2, 1=3.
pub fn b4() -> OrthoPoset {
    let p = OrthoPoset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], vec![3, 2, 1, 0], 0, 3)
        .expect("b4 is well formed");
    named(p, &["0", "a", "a'", "1"])
}

/// The four-element chain 0 < a < b < 1 with the order-reversing pairing;
/// an antitone involution that is not a complementation.
pub fn c4() -> OrthoPoset {
    let p = OrthoPoset::new(4, &[(0, 1), (1, 2), (2, 3)], vec![3, 2, 1, 0], 0, 3)
        .expect("c4 is well formed");
    named(p, &["0", "a", "b", "1"])
}

/// The horizontal sum of two four-element Boolean blocks: six elements,
/// four pairwise-incomparable atoms. Ids: 0, a=1, a'=2, b=3, b'=4, 1=5.
pub fn mo2() -> OrthoPoset {
    let covers = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 5),
        (2, 5),
        (3, 5),
        (4, 5),
    ];
    let p = OrthoPoset::new(6, &covers, vec![5, 2, 1, 4, 3, 0], 0, 5).expect("mo2 is well formed");
    named(p, &["0", "a", "a'", "b", "b'", "1"])
}

/// The benzene ring: 0 < a < b' < 1 and 0 < b < a' < 1.
/// Ids: 0, a=1, b=2, a'=3, b'=4, 1=5.
pub fn o6() -> OrthoPoset {
    let covers = [(0, 1), (0, 2), (1, 4), (2, 3), (3, 5), (4, 5)];
    let p = OrthoPoset::new(6, &covers, vec![5, 3, 4, 1, 2, 0], 0, 5).expect("o6 is well formed");
    named(p, &["0", "a", "b", "a'", "b'", "1"])
}

/// A ten-element orthoposet that is not a lattice: a bowtie
/// x, y < u, v together with its order dual u*, v* < x*, y* and the
/// pairing x↔x*, y↔y*, u↔u*, v↔v*. U(x,y) = {u, v, 1} has two minimal
/// elements and no least one.
///
/// Ids: 0, x=1, y=2, u=3, v=4, u*=5, v*=6, x*=7, y*=8, 1=9.
pub fn double_bowtie() -> OrthoPoset {
    let covers = [
        (0, 1),
        (0, 2),
        (0, 5),
        (0, 6),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (5, 7),
        (5, 8),
        (6, 7),
        (6, 8),
        (3, 9),
        (4, 9),
        (7, 9),
        (8, 9),
    ];
    let p = OrthoPoset::new(10, &covers, vec![9, 7, 8, 5, 6, 3, 4, 1, 2, 0], 0, 9)
        .expect("double bowtie is well formed");
    named(p, &["0", "x", "y", "u", "v", "u*", "v*", "x*", "y*", "1"])
}

/// The four structures used as cross-module test anchors.
pub fn anchors() -> Vec<OrthoPoset> {
    vec![c2(), b4(), mo2(), o6()]
}

/// All shipped fixtures, including the deliberately broken ones.
pub fn all() -> Vec<OrthoPoset> {
    vec![
        c2(),
        c2_identity_comp(),
        b4(),
        c4(),
        mo2(),
        o6(),
        double_bowtie(),
    ]
}
