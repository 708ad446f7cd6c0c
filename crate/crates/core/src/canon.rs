//! Canonical labelings of finite relational structures.
//!
//! The canonical form of a structure is the lexicographically least
//! encoding of its (order relation, unary table) over all relabelings
//! that fix bottom at id 0 and top at the last id. Backtracking over
//! label positions is pruned by encoding-prefix comparison and by
//! skipping candidates that differ from an already-tried one by a
//! transposition automorphism.

use crate::poset::OrthoPoset;

/// Entries are 2-bit pair codes for positions (i, k), i < k, in the order
/// (0,1), (0,2), (1,2), (0,3), …, followed by the relabeled unary table
/// when one is present.
pub type CanonKey = Vec<u8>;

struct Search<'a> {
    n: usize,
    up: &'a [u64],
    comp: Option<&'a [usize]>,
    fixed_first: Option<usize>,
    fixed_last: Option<usize>,
    assign: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    /// Whether swapping a and b is an automorphism of the structure.
    fn transposition_is_automorphism(&self, a: usize, b: usize) -> bool {
        let swap = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        for u in 0..self.n {
            for v in 0..self.n {
                if self.leq(u, v) != self.leq(swap(u), swap(v)) {
                    return false;
                }
            }
        }
        if let Some(comp) = self.comp {
            for u in 0..self.n {
                if swap(comp[u]) != comp[swap(u)] {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self, pos: usize) -> Vec<usize> {
        if pos == 0 {
            if let Some(f) = self.fixed_first {
                return vec![f];
            }
        }
        if pos == self.n - 1 {
            if let Some(l) = self.fixed_last {
                return if self.used[l] { vec![] } else { vec![l] };
            }
        }
        let mut out = Vec::new();
        for o in 0..self.n {
            if self.used[o] || Some(o) == self.fixed_last && pos != self.n - 1 {
                continue;
            }
            if out
                .iter()
                .any(|&prev| self.transposition_is_automorphism(prev, o))
            {
                continue;
            }
            out.push(o);
        }
        out
    }

    fn descend(&mut self, pos: usize) {
        if pos == self.n {
            let mut full = self.current.clone();
            if let Some(comp) = self.comp {
                let mut position_of = vec![0usize; self.n];
                for (p, &o) in self.assign.iter().enumerate() {
                    position_of[o] = p;
                }
                for &o in &self.assign {
                    full.push(position_of[comp[o]] as u8);
                }
            }
            let replace = match &self.best {
                None => true,
                Some(best) => full < *best,
            };
            if replace {
                self.best = Some(full);
            }
            return;
        }
        let chunk_start = self.current.len();
        for o in self.candidates(pos) {
            for i in 0..pos {
                let e =
                    (self.leq(self.assign[i], o) as u8) << 1 | self.leq(o, self.assign[i]) as u8;
                self.current.push(e);
            }
            // Prune only when the prefix so far coincides with the best
            // encoding; after a smaller prefix replaces the best at the
            // first leaf below it, the comparison becomes live again.
            let prune = match &self.best {
                Some(best) if best[..chunk_start] == self.current[..chunk_start] => {
                    self.current[chunk_start..] > best[chunk_start..self.current.len()]
                }
                _ => false,
            };
            if !prune {
                self.assign.push(o);
                self.used[o] = true;
                self.descend(pos + 1);
                self.used[o] = false;
                self.assign.pop();
            }
            self.current.truncate(chunk_start);
        }
    }
}

/// Least encoding of (up-rows, optional unary table) over relabelings
/// with the stated fixed endpoints.
pub fn canonical_encoding(
    n: usize,
    up: &[u64],
    comp: Option<&[usize]>,
    fixed_first: Option<usize>,
    fixed_last: Option<usize>,
) -> CanonKey {
    let mut search = Search {
        n,
        up,
        comp,
        fixed_first,
        fixed_last,
        assign: Vec::with_capacity(n),
        used: vec![false; n],
        current: Vec::with_capacity(n * (n - 1) / 2 + n),
        best: None,
    };
    search.descend(0);
    search.best.expect("at least one labeling exists")
}

/// Reconstructs up-rows from a pair-code prefix produced by
/// [`canonical_encoding`].
pub fn decode_up_rows(n: usize, key: &[u8]) -> Vec<u64> {
    let mut up = vec![0u64; n];
    for i in 0..n {
        up[i] |= 1 << i;
    }
    let mut idx = 0;
    for k in 1..n {
        for i in 0..k {
            let e = key[idx];
            idx += 1;
            if e >> 1 & 1 == 1 {
                up[i] |= 1 << k;
            }
            if e & 1 == 1 {
                up[k] |= 1 << i;
            }
        }
    }
    up
}

/// Reconstructs the unary table suffix.
pub fn decode_comp(n: usize, key: &[u8]) -> Vec<usize> {
    let pairs = n * (n - 1) / 2;
    key[pairs..pairs + n].iter().map(|&b| b as usize).collect()
}

/// Canonical key of an orthoposet: bottom goes to 0, top to the last id,
/// and the unary table is part of the encoding.
pub fn canonical_key(p: &OrthoPoset) -> CanonKey {
    let up: Vec<u64> = (0..p.n()).map(|x| p.up_set(x).bits()).collect();
    let comp: Vec<usize> = (0..p.n()).map(|x| p.comp(x)).collect();
    canonical_encoding(p.n(), &up, Some(&comp), Some(p.bottom()), Some(p.top()))
}

/// The canonically relabeled copy of `p` (names are dropped).
pub fn canonical_form(p: &OrthoPoset) -> OrthoPoset {
    let key = canonical_key(p);
    let n = p.n();
    let up = decode_up_rows(n, &key);
    let comp = decode_comp(n, &key);
    let mut relation = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if up[i] >> j & 1 == 1 {
                relation.push((i, j));
            }
        }
    }
    OrthoPoset::new(n, &relation, comp, 0, n - 1).expect("canonical relabeling is well formed")
}

/// Isomorphism test by direct backtracking, independent of the canonical
/// form (used to cross-validate it).
pub fn are_isomorphic(p: &OrthoPoset, q: &OrthoPoset) -> bool {
    if p.n() != q.n() {
        return false;
    }
    let n = p.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        p: &OrthoPoset,
        q: &OrthoPoset,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        let n = p.n();
        if x == n {
            // Orders were checked incrementally; confirm the unary tables.
            return (0..n).all(|u| map[p.comp(u)] == q.comp(map[u]));
        }
        for img in 0..n {
            if used[img] {
                continue;
            }
            let ok = (0..x)
                .all(|u| p.leq(u, x) == q.leq(map[u], img) && p.leq(x, u) == q.leq(img, map[u]));
            if !ok {
                continue;
            }
            map[x] = img;
            used[img] = true;
            if extend(p, q, map, used, x + 1) {
                return true;
            }
            used[img] = false;
            map[x] = usize::MAX;
        }
        false
    }

    extend(p, q, &mut map, &mut used, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let p = fixtures::o6();
        // Relabel O6 by swapping the roles of the two chains: a↔b ids
        // exchanged, a'↔b' ids exchanged.
        let relation = [(0, 2), (0, 1), (2, 3), (1, 4), (4, 5), (3, 5)];
        let q = OrthoPoset::new(6, &relation, vec![5, 3, 4, 1, 2, 0], 0, 5).unwrap();
        assert!(are_isomorphic(&p, &q));
        assert_eq!(canonical_key(&p), canonical_key(&q));
    }

    #[test]
    fn canonical_form_round_trips() {
        for p in fixtures::all() {
            let c = canonical_form(&p);
            assert!(are_isomorphic(&p, &c));
            assert_eq!(canonical_key(&p), canonical_key(&c));
            assert_eq!(c.bottom(), 0);
            assert_eq!(c.top(), c.n() - 1);
        }
    }

    #[test]
    fn distinct_fixtures_have_distinct_keys() {
        assert_ne!(
            canonical_key(&fixtures::mo2()),
            canonical_key(&fixtures::o6())
        );
        assert!(!are_isomorphic(&fixtures::mo2(), &fixtures::o6()));
    }

    #[test]
    fn decode_inverts_encode() {
        for p in fixtures::all() {
            let key = canonical_key(&p);
            let up = decode_up_rows(p.n(), &key);
            let comp = decode_comp(p.n(), &key);
            let again = canonical_encoding(p.n(), &up, Some(&comp), Some(0), Some(p.n() - 1));
            assert_eq!(key, again);
        }
    }
}
