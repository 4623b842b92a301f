//! Exact isomorphism testing for translation quivers: iterated degree
//! refinement to cut the search space, then backtracking. Quivers in this
//! crate have at most a few hundred vertices, so exactness wins over
//! asymptotics.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::quiver::{TranslationQuiver, VertexId};

/// A witness isomorphism `q1 -> q2`: a bijection on vertices carrying
/// arrows to arrows with equal multiplicity, and commuting with the
/// translations when `respects_translation` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverIsomorphism {
    /// `vertex_map[v]` is the image in `q2` of vertex `v` of `q1`.
    pub vertex_map: Vec<VertexId>,
    pub respects_translation: bool,
}

impl QuiverIsomorphism {
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    /// Composes `self: q1 -> q2` with `other: q2 -> q3`.
    pub fn then(&self, other: &QuiverIsomorphism) -> QuiverIsomorphism {
        QuiverIsomorphism {
            vertex_map: self
                .vertex_map
                .iter()
                .map(|&v| other.vertex_map[v.index()])
                .collect(),
            respects_translation: self.respects_translation && other.respects_translation,
        }
    }

    pub fn inverse(&self) -> QuiverIsomorphism {
        let mut inv = vec![VertexId(0); self.vertex_map.len()];
        for (v, &img) in self.vertex_map.iter().enumerate() {
            inv[img.index()] = VertexId(v as u32);
        }
        QuiverIsomorphism {
            vertex_map: inv,
            respects_translation: self.respects_translation,
        }
    }

    /// Full check that the map is an isomorphism between the two quivers.
    pub fn verify(&self, q1: &TranslationQuiver, q2: &TranslationQuiver) -> bool {
        if q1.vertex_count() != q2.vertex_count() || self.vertex_map.len() != q1.vertex_count() {
            return false;
        }
        let mut seen = vec![false; q2.vertex_count()];
        for &img in &self.vertex_map {
            if seen[img.index()] {
                return false;
            }
            seen[img.index()] = true;
        }
        if q1.arrow_count() != q2.arrow_count() {
            return false;
        }
        for u in q1.vertices() {
            for v in q1.vertices() {
                if q1.arrow_multiplicity(u, v) != q2.arrow_multiplicity(self.apply(u), self.apply(v))
                {
                    return false;
                }
            }
        }
        if self.respects_translation {
            for v in q1.vertices() {
                let lhs = q1.tau(v).map(|t| self.apply(t));
                let rhs = q2.tau(self.apply(v));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Length of the tau-orbit through `v`: the number of applications of tau
/// until the start repeats, or the length of the maximal backward-forward
/// chain when tau is partial.
fn tau_orbit_length(q: &TranslationQuiver, v: VertexId) -> usize {
    let mut cur = v;
    let mut len = 1;
    loop {
        match q.tau(cur) {
            Some(next) if next == v => return len,
            Some(next) => {
                cur = next;
                len += 1;
                if len > q.vertex_count() {
                    return len;
                }
            }
            None => break,
        }
    }
    // Partial translation: walk backwards too and report the chain length.
    let mut cur = v;
    loop {
        match q.tau_inv(cur) {
            Some(prev) => {
                cur = prev;
                len += 1;
            }
            None => return len,
        }
    }
}

type Signature = (usize, usize, usize, bool, bool);

fn initial_signature(q: &TranslationQuiver, v: VertexId) -> Signature {
    (
        q.in_degree(v),
        q.out_degree(v),
        tau_orbit_length(q, v),
        q.tau(v).is_some(),
        q.tau_inv(v).is_some(),
    )
}

/// Iteratively refine vertex colours by in/out/tau neighbour colours until
/// stable (1-dimensional Weisfeiler-Leman on the coloured structure).
fn refine_colors(q: &TranslationQuiver, initial: &[u32]) -> Vec<u32> {
    let mut colors = initial.to_vec();
    loop {
        let mut keys: Vec<(u32, Vec<u32>, Vec<u32>, i64, i64)> = Vec::new();
        for v in q.vertices() {
            let mut ins: Vec<u32> = q.in_arrows(v).map(|a| colors[a.source.index()]).collect();
            ins.sort_unstable();
            let mut outs: Vec<u32> = q.out_arrows(v).map(|a| colors[a.target.index()]).collect();
            outs.sort_unstable();
            let t = q.tau(v).map(|t| colors[t.index()] as i64).unwrap_or(-1);
            let ti = q.tau_inv(v).map(|t| colors[t.index()] as i64).unwrap_or(-1);
            keys.push((colors[v.index()], ins, outs, t, ti));
        }
        let mut sorted: Vec<&(u32, Vec<u32>, Vec<u32>, i64, i64)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let index: BTreeMap<_, u32> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        let next: Vec<u32> = keys.iter().map(|k| index[k]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

struct Search<'a> {
    q1: &'a TranslationQuiver,
    q2: &'a TranslationQuiver,
    respect_translation: bool,
    colors1: Vec<u32>,
    colors2: Vec<u32>,
    mapping: Vec<Option<VertexId>>,
    used: Vec<bool>,
    order: Vec<VertexId>,
}

impl<'a> Search<'a> {
    fn consistent(&self, v: VertexId, w: VertexId) -> bool {
        if self.colors1[v.index()] != self.colors2[w.index()] {
            return false;
        }
        // Arrow counts against every already-assigned vertex.
        for u in self.q1.vertices() {
            if let Some(img) = self.mapping[u.index()] {
                if self.q1.arrow_multiplicity(u, v) != self.q2.arrow_multiplicity(img, w) {
                    return false;
                }
                if self.q1.arrow_multiplicity(v, u) != self.q2.arrow_multiplicity(w, img) {
                    return false;
                }
            }
        }
        if self.respect_translation {
            match (self.q1.tau(v), self.q2.tau(w)) {
                (Some(t1), Some(t2)) => {
                    if let Some(img) = self.mapping[t1.index()] {
                        if img != t2 {
                            return false;
                        }
                    }
                }
                (None, None) => {}
                _ => return false,
            }
            match (self.q1.tau_inv(v), self.q2.tau_inv(w)) {
                (Some(t1), Some(t2)) => {
                    if let Some(img) = self.mapping[t1.index()] {
                        if img != t2 {
                            return false;
                        }
                    }
                }
                (None, None) => {}
                _ => return false,
            }
        }
        true
    }

    fn solve(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in self.q2.vertices() {
            if self.used[w.index()] {
                continue;
            }
            if self.consistent(v, w) {
                self.mapping[v.index()] = Some(w);
                self.used[w.index()] = true;
                if self.solve(depth + 1) {
                    return true;
                }
                self.mapping[v.index()] = None;
                self.used[w.index()] = false;
            }
        }
        false
    }
}

/// Searches for an isomorphism `q1 -> q2`. Returns a verified witness or
/// `None` when the quivers are certifiably non-isomorphic. With
/// `respect_translation` the witness must also commute with the two
/// translations on their domains.
pub fn find_isomorphism(
    q1: &TranslationQuiver,
    q2: &TranslationQuiver,
    respect_translation: bool,
) -> Option<QuiverIsomorphism> {
    if q1.vertex_count() != q2.vertex_count() || q1.arrow_count() != q2.arrow_count() {
        return None;
    }
    // Joint colour refinement: initial colours from degree/orbit data,
    // refined on each quiver separately with a shared palette.
    let sigs1: Vec<Signature> = q1.vertices().map(|v| initial_signature(q1, v)).collect();
    let sigs2: Vec<Signature> = q2.vertices().map(|v| initial_signature(q2, v)).collect();
    let mut palette: Vec<&Signature> = sigs1.iter().chain(sigs2.iter()).collect();
    palette.sort();
    palette.dedup();
    let index: BTreeMap<&Signature, u32> = palette
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    let init1: Vec<u32> = sigs1.iter().map(|s| index[s]).collect();
    let init2: Vec<u32> = sigs2.iter().map(|s| index[s]).collect();

    // Refine jointly: run rounds on the disjoint union so colour classes
    // stay comparable across the two quivers.
    let (colors1, colors2) = joint_refine(q1, q2, &init1, &init2);

    // Colour class sizes must agree.
    let mut count1: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colors1 {
        *count1.entry(c).or_default() += 1;
    }
    let mut count2: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colors2 {
        *count2.entry(c).or_default() += 1;
    }
    if count1 != count2 {
        return None;
    }

    // Assign rare colours first.
    let mut order: Vec<VertexId> = q1.vertices().collect();
    order.sort_by_key(|v| (count1[&colors1[v.index()]], colors1[v.index()], v.0));

    let mut search = Search {
        q1,
        q2,
        respect_translation,
        colors1,
        colors2,
        mapping: vec![None; q1.vertex_count()],
        used: vec![false; q2.vertex_count()],
        order,
    };
    if !search.solve(0) {
        return None;
    }
    let iso = QuiverIsomorphism {
        vertex_map: search.mapping.iter().map(|m| m.unwrap()).collect(),
        respects_translation: respect_translation,
    };
    debug_assert!(iso.verify(q1, q2));
    Some(iso)
}

fn joint_refine(
    q1: &TranslationQuiver,
    q2: &TranslationQuiver,
    init1: &[u32],
    init2: &[u32],
) -> (Vec<u32>, Vec<u32>) {
    let mut c1 = init1.to_vec();
    let mut c2 = init2.to_vec();
    loop {
        let k1 = color_keys(q1, &c1);
        let k2 = color_keys(q2, &c2);
        let mut palette: Vec<&ColorKey> = k1.iter().chain(k2.iter()).collect();
        palette.sort();
        palette.dedup();
        let index: BTreeMap<&ColorKey, u32> = palette
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        let n1: Vec<u32> = k1.iter().map(|k| index[k]).collect();
        let n2: Vec<u32> = k2.iter().map(|k| index[k]).collect();
        if n1 == c1 && n2 == c2 {
            return (c1, c2);
        }
        c1 = n1;
        c2 = n2;
    }
}

type ColorKey = (u32, Vec<u32>, Vec<u32>, i64, i64);

fn color_keys(q: &TranslationQuiver, colors: &[u32]) -> Vec<ColorKey> {
    q.vertices()
        .map(|v| {
            let mut ins: Vec<u32> = q.in_arrows(v).map(|a| colors[a.source.index()]).collect();
            ins.sort_unstable();
            let mut outs: Vec<u32> = q.out_arrows(v).map(|a| colors[a.target.index()]).collect();
            outs.sort_unstable();
            let t = q.tau(v).map(|t| colors[t.index()] as i64).unwrap_or(-1);
            let ti = q.tau_inv(v).map(|t| colors[t.index()] as i64).unwrap_or(-1);
            (colors[v.index()], ins, outs, t, ti)
        })
        .collect()
}
