//! Generic stable translation quivers: construction, stability checking,
//! mesh relations, quiver powers and Hom dimensions in the mesh category.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of a vertex inside one [`TranslationQuiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Optional structured payload carried by a vertex. The same container
/// serves polygon diagonals, universal-cover coordinates and ad-hoc test
/// quivers, so labels are a closed enum rather than a type parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexLabel {
    /// A diagonal `(i, j)` of region `k` of a repetitive polygon.
    Diagonal { i: u32, j: u32, region: u32 },
    /// A diagonal of the infinite-polygon window model; regions may be
    /// negative there.
    WindowDiagonal { i: u32, j: u32, region: i32 },
    /// A vertex `(col, row)` of the translation quiver ZA_n.
    Cover { col: i64, row: u32 },
    /// Free-form name, used by hand-built quivers in tests.
    Name(String),
}

/// Classification of an arrow of a diagonal quiver. Plain arrows carry no
/// geometric meaning; the other kinds record which rotation produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowKind {
    Plain,
    /// Rotation about one endpoint inside a single region.
    IrrRot,
    /// Rotation whose result is read in the next region.
    IrrRhoRot,
    /// Arrow between consecutive regions of the infinite-polygon model.
    Connecting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub source: VertexId,
    pub target: VertexId,
    pub kind: ArrowKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    /// A vertex id passed to the builder does not exist.
    UnknownVertex(u32),
    /// Two vertices were declared with the same non-trivial label.
    DuplicateLabel,
    /// The translation map sends two vertices to the same image.
    NonInjectiveTranslation(u32),
    /// `power` requires a positive exponent.
    ZeroPower,
    /// Mesh relations require matching arrow counts around every mesh;
    /// the named vertex violates this.
    UnstableMesh(u32),
    /// The knitting front failed to die out within the iteration cap.
    NonTerminatingHammock,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::UnknownVertex(v) => write!(f, "unknown vertex id {v}"),
            QuiverError::DuplicateLabel => write!(f, "duplicate vertex label"),
            QuiverError::NonInjectiveTranslation(v) => {
                write!(f, "translation is not injective at image {v}")
            }
            QuiverError::ZeroPower => write!(f, "quiver power requires exponent >= 1"),
            QuiverError::UnstableMesh(v) => {
                write!(f, "mesh at vertex {v} has no stability pairing")
            }
            QuiverError::NonTerminatingHammock => {
                write!(f, "hammock computation did not terminate")
            }
        }
    }
}

impl core::error::Error for QuiverError {}

/// Incremental constructor for [`TranslationQuiver`].
#[derive(Debug, Default, Clone)]
pub struct QuiverBuilder {
    labels: Vec<Option<VertexLabel>>,
    arrows: Vec<Arrow>,
    tau: BTreeMap<u32, u32>,
}

impl QuiverBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: Option<VertexLabel>) -> VertexId {
        self.labels.push(label);
        VertexId(self.labels.len() as u32 - 1)
    }

    pub fn add_arrow(&mut self, source: VertexId, target: VertexId, kind: ArrowKind) {
        self.arrows.push(Arrow {
            source,
            target,
            kind,
        });
    }

    pub fn set_translation(&mut self, v: VertexId, tv: VertexId) {
        self.tau.insert(v.0, tv.0);
    }

    pub fn build(self) -> Result<TranslationQuiver, QuiverError> {
        let n = self.labels.len() as u32;
        for a in &self.arrows {
            if a.source.0 >= n {
                return Err(QuiverError::UnknownVertex(a.source.0));
            }
            if a.target.0 >= n {
                return Err(QuiverError::UnknownVertex(a.target.0));
            }
        }
        let mut tau = vec![None; n as usize];
        let mut tau_inv = vec![None; n as usize];
        for (&v, &tv) in &self.tau {
            if v >= n {
                return Err(QuiverError::UnknownVertex(v));
            }
            if tv >= n {
                return Err(QuiverError::UnknownVertex(tv));
            }
            if tau_inv[tv as usize].is_some() {
                return Err(QuiverError::NonInjectiveTranslation(tv));
            }
            tau[v as usize] = Some(tv);
            tau_inv[tv as usize] = Some(v);
        }
        let mut label_index = BTreeMap::new();
        for (idx, label) in self.labels.iter().enumerate() {
            if let Some(l) = label {
                if label_index.insert(l.clone(), idx as u32).is_some() {
                    return Err(QuiverError::DuplicateLabel);
                }
            }
        }
        let mut out_adj = vec![Vec::new(); n as usize];
        let mut in_adj = vec![Vec::new(); n as usize];
        for (idx, a) in self.arrows.iter().enumerate() {
            out_adj[a.source.index()].push(idx as u32);
            in_adj[a.target.index()].push(idx as u32);
        }
        Ok(TranslationQuiver {
            labels: self.labels,
            arrows: self.arrows,
            out_adj,
            in_adj,
            tau,
            tau_inv,
            label_index,
        })
    }
}

/// A finite quiver with an arrow multiset and a partial injective
/// translation map. Immutable once built; every operation below is a pure
/// function of the data.
#[derive(Debug, Clone)]
pub struct TranslationQuiver {
    labels: Vec<Option<VertexLabel>>,
    arrows: Vec<Arrow>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    tau: Vec<Option<u32>>,
    tau_inv: Vec<Option<u32>>,
    label_index: BTreeMap<VertexLabel, u32>,
}

/// Outcome of the stability check. Violations are data, not failures: a
/// quiver that is not stable still produces a report describing exactly
/// which meshes are broken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub translation_total: bool,
    pub translation_bijective: bool,
    /// Ordered pairs `(u, v)` where `#arrows(u -> v) != #arrows(tau v -> u)`,
    /// with the two counts. A single missing arrow breaks the condition in
    /// two mirrored ways; the mirror image of an already-reported pair is
    /// merged into it, so one deleted arrow yields one reported pair.
    pub mismatched_pairs: Vec<(VertexId, VertexId, usize, usize)>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.translation_total && self.translation_bijective && self.mismatched_pairs.is_empty()
    }
}

/// One mesh relation: for the target vertex `v`, the list of composable
/// pairs `(sigma(alpha), alpha)` over all arrows `alpha` ending in `v`.
/// Entries are indices into the arrow list of the owning quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshRelation {
    pub target: VertexId,
    /// Pairs `(sigma_arrow, arrow)`: `sigma_arrow` runs `tau(target) -> u`,
    /// `arrow` runs `u -> target`.
    pub terms: Vec<(u32, u32)>,
}

impl TranslationQuiver {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len() as u32).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> Option<&VertexLabel> {
        self.labels[v.index()].as_ref()
    }

    pub fn vertex_by_label(&self, label: &VertexLabel) -> Option<VertexId> {
        self.label_index.get(label).copied().map(VertexId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = &Arrow> + '_ {
        self.out_adj[v.index()].iter().map(|&i| &self.arrows[i as usize])
    }

    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = &Arrow> + '_ {
        self.in_adj[v.index()].iter().map(|&i| &self.arrows[i as usize])
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v.index()].len()
    }

    pub fn tau(&self, v: VertexId) -> Option<VertexId> {
        self.tau[v.index()].map(VertexId)
    }

    pub fn tau_inv(&self, v: VertexId) -> Option<VertexId> {
        self.tau_inv[v.index()].map(VertexId)
    }

    pub fn arrow_multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.out_adj[u.index()]
            .iter()
            .filter(|&&i| self.arrows[i as usize].target == v)
            .count()
    }

    /// Checks the two conditions for a stable translation quiver: the
    /// translation is total and bijective, and for every ordered pair
    /// `(u, v)` the arrows `u -> v` match the arrows `tau v -> u` in number.
    pub fn verify_stable(&self) -> StabilityReport {
        let translation_total = self.tau.iter().all(|t| t.is_some());
        let translation_bijective =
            translation_total && self.tau_inv.iter().all(|t| t.is_some());

        let mut violated: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut counts: BTreeMap<(u32, u32), (usize, usize)> = BTreeMap::new();
        for v in self.vertices() {
            let tv = match self.tau(v) {
                Some(tv) => tv,
                None => continue,
            };
            // Candidate sources: anything with an arrow into v or out of tau v.
            let mut sources = BTreeSet::new();
            for a in self.in_arrows(v) {
                sources.insert(a.source.0);
            }
            for a in self.out_arrows(tv) {
                sources.insert(a.target.0);
            }
            for u in sources {
                let forward = self.arrow_multiplicity(VertexId(u), v);
                let mesh = self.arrow_multiplicity(tv, VertexId(u));
                if forward != mesh {
                    violated.insert((u, v.0));
                    counts.insert((u, v.0), (forward, mesh));
                }
            }
        }
        // Merge each violation with its mirror image (v, tau^-1 u): both
        // describe the same broken mesh pairing.
        let mut mismatched_pairs = Vec::new();
        let mut reported: BTreeSet<(u32, u32)> = BTreeSet::new();
        for &(u, v) in &violated {
            if reported.contains(&(u, v)) {
                continue;
            }
            reported.insert((u, v));
            if let Some(tu_inv) = self.tau_inv(VertexId(u)) {
                let mirror = (v, tu_inv.0);
                if violated.contains(&mirror) {
                    reported.insert(mirror);
                }
            }
            let (a, b) = counts[&(u, v)];
            mismatched_pairs.push((VertexId(u), VertexId(v), a, b));
        }
        StabilityReport {
            translation_total,
            translation_bijective,
            mismatched_pairs,
        }
    }

    /// One mesh relation per vertex with defined translation. Arrows are
    /// paired with their sigma-partners by stored index order; vertices
    /// where the counts do not match are rejected.
    pub fn mesh_relations(&self) -> Result<Vec<MeshRelation>, QuiverError> {
        let mut relations = Vec::new();
        for v in self.vertices() {
            let tv = match self.tau(v) {
                Some(tv) => tv,
                None => continue,
            };
            // Group incoming arrows of v and outgoing arrows of tau v by the
            // intermediate vertex, then zip the groups in index order.
            let mut incoming: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &i in &self.in_adj[v.index()] {
                incoming
                    .entry(self.arrows[i as usize].source.0)
                    .or_default()
                    .push(i);
            }
            let mut outgoing: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &i in &self.out_adj[tv.index()] {
                outgoing
                    .entry(self.arrows[i as usize].target.0)
                    .or_default()
                    .push(i);
            }
            let mut terms = Vec::new();
            for (u, arrs) in &incoming {
                let sigmas = outgoing.get(u).ok_or(QuiverError::UnstableMesh(v.0))?;
                if sigmas.len() != arrs.len() {
                    return Err(QuiverError::UnstableMesh(v.0));
                }
                for (&s, &a) in sigmas.iter().zip(arrs.iter()) {
                    terms.push((s, a));
                }
            }
            // Every sigma-side group must be used up by some incoming group.
            for (u, sigmas) in &outgoing {
                if !sigmas.is_empty() && !incoming.contains_key(u) {
                    let _ = u;
                    return Err(QuiverError::UnstableMesh(v.0));
                }
            }
            relations.push(MeshRelation {
                target: v,
                terms,
            });
        }
        Ok(relations)
    }

    /// The m-th power: same vertices, arrows are the length-m paths
    /// `x_0 -> ... -> x_m` avoiding meshes (`tau x_{i+1} != x_{i-1}` whenever
    /// defined, for the interior indices), translation composed m times.
    pub fn power(&self, m: u32) -> Result<TranslationQuiver, QuiverError> {
        if m == 0 {
            return Err(QuiverError::ZeroPower);
        }
        let mut builder = QuiverBuilder::new();
        for l in &self.labels {
            builder.add_vertex(l.clone());
        }
        for start in self.vertices() {
            // DFS over paths of length m from `start`.
            let mut stack: Vec<Vec<VertexId>> = vec![vec![start]];
            while let Some(path) = stack.pop() {
                if path.len() == m as usize + 1 {
                    builder.add_arrow(path[0], *path.last().unwrap(), ArrowKind::Plain);
                    continue;
                }
                let last = *path.last().unwrap();
                for a in self.out_arrows(last) {
                    let next = a.target;
                    // Mesh avoidance: extending x_{i-1} -> x_i by x_i -> x_{i+1}
                    // is forbidden when tau x_{i+1} = x_{i-1}.
                    if path.len() >= 2 {
                        let before = path[path.len() - 2];
                        if self.tau(next) == Some(before) {
                            continue;
                        }
                    }
                    let mut ext = path.clone();
                    ext.push(next);
                    stack.push(ext);
                }
            }
        }
        for v in self.vertices() {
            let mut cur = Some(v);
            for _ in 0..m {
                cur = cur.and_then(|w| self.tau(w));
            }
            if let Some(img) = cur {
                builder.set_translation(v, img);
            }
        }
        builder.build()
    }

    /// Dimension of `Hom(x, -)` in the mesh category, for every vertex at
    /// once. Computed by knitting the hammock through the path-length
    /// grading: mesh relations are homogeneous, so
    /// `dim Hom(x, v) = sum_t f_t(v)` with
    /// `f_t(v) = max(0, sum_{u -> v} f_{t-1}(u) - f_{t-2}(tau v))` and
    /// `f_0 = indicator(x)`. The front provably dies out on the quivers in
    /// this crate; a cap guards against runaway input.
    pub fn hammock_from(&self, x: VertexId) -> Result<Vec<u64>, QuiverError> {
        let n = self.vertex_count();
        let mut totals = vec![0u64; n];
        totals[x.index()] = 1;
        let mut prev2 = vec![0u64; n];
        let mut prev1 = vec![0u64; n];
        prev1[x.index()] = 1;
        let cap = 4 * n + 16;
        for _ in 0..cap {
            let mut cur = vec![0u64; n];
            let mut alive = false;
            for v in 0..n {
                let mut s: i64 = 0;
                for &i in &self.in_adj[v] {
                    s += prev1[self.arrows[i as usize].source.index()] as i64;
                }
                if let Some(tv) = self.tau[v] {
                    s -= prev2[tv as usize] as i64;
                }
                if s > 0 {
                    cur[v] = s as u64;
                    totals[v] += s as u64;
                    alive = true;
                }
            }
            if !alive && prev1.iter().all(|&f| f == 0) {
                return Ok(totals);
            }
            prev2 = prev1;
            prev1 = cur;
        }
        Err(QuiverError::NonTerminatingHammock)
    }

    /// Hom dimension between two vertices in the mesh category of the
    /// quiver (the backwards hammock evaluated at `y`).
    pub fn hammock_hom(&self, x: VertexId, y: VertexId) -> Result<u64, QuiverError> {
        Ok(self.hammock_from(x)?[y.index()])
    }

    /// Weakly connected components with respect to arrows alone (the
    /// translation is ignored). Components are sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(VertexId(v as u32));
                for &i in &self.out_adj[v] {
                    let w = self.arrows[i as usize].target.index();
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
                for &i in &self.in_adj[v] {
                    let w = self.arrows[i as usize].source.index();
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Full subquiver on a vertex set, with arrows and translation
    /// restricted to pairs inside the set. Returns the subquiver and the
    /// map from new vertex ids to old ones.
    pub fn induced_subquiver(&self, keep: &BTreeSet<VertexId>) -> (TranslationQuiver, Vec<VertexId>) {
        let mut old_of_new = Vec::new();
        let mut new_of_old: BTreeMap<u32, u32> = BTreeMap::new();
        let mut builder = QuiverBuilder::new();
        for &v in keep {
            let nv = builder.add_vertex(self.labels[v.index()].clone());
            new_of_old.insert(v.0, nv.0);
            old_of_new.push(v);
        }
        for a in &self.arrows {
            if let (Some(&s), Some(&t)) = (new_of_old.get(&a.source.0), new_of_old.get(&a.target.0))
            {
                builder.add_arrow(VertexId(s), VertexId(t), a.kind);
            }
        }
        for &v in keep {
            if let Some(tv) = self.tau(v) {
                if let Some(&ntv) = new_of_old.get(&tv.0) {
                    builder.set_translation(VertexId(new_of_old[&v.0]), VertexId(ntv));
                }
            }
        }
        (
            builder.build().expect("subquiver of a valid quiver is valid"),
            old_of_new,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> TranslationQuiver {
        // u -> v -> u with tau = id is a stable translation quiver.
        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(Some(VertexLabel::Name("u".into())));
        let v = b.add_vertex(Some(VertexLabel::Name("v".into())));
        b.add_arrow(u, v, ArrowKind::Plain);
        b.add_arrow(v, u, ArrowKind::Plain);
        b.set_translation(u, u);
        b.set_translation(v, v);
        b.build().unwrap()
    }

    #[test]
    fn single_vertex_identity_translation_is_stable() {
        let mut b = QuiverBuilder::new();
        let v = b.add_vertex(None);
        b.set_translation(v, v);
        let q = b.build().unwrap();
        assert!(q.verify_stable().pass());
    }

    #[test]
    fn two_cycle_is_stable_and_meshes_have_one_term() {
        let q = two_cycle();
        assert!(q.verify_stable().pass());
        let relations = q.mesh_relations().unwrap();
        assert_eq!(relations.len(), 2);
        assert!(relations.iter().all(|r| r.terms.len() == 1));
    }

    #[test]
    fn two_cycle_hammock_dimensions() {
        let q = two_cycle();
        let h = q.hammock_from(VertexId(0)).unwrap();
        // id survives, the single arrow survives, longer composites are
        // killed by the mesh relations.
        assert_eq!(h, vec![1, 1]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut b = QuiverBuilder::new();
        b.add_vertex(Some(VertexLabel::Name("x".into())));
        b.add_vertex(Some(VertexLabel::Name("x".into())));
        assert_eq!(b.build().unwrap_err(), QuiverError::DuplicateLabel);
    }

    #[test]
    fn non_injective_translation_rejected() {
        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(None);
        let v = b.add_vertex(None);
        b.set_translation(u, u);
        b.set_translation(v, u);
        assert!(matches!(
            b.build().unwrap_err(),
            QuiverError::NonInjectiveTranslation(_)
        ));
    }

    #[test]
    fn power_zero_rejected() {
        let q = two_cycle();
        assert_eq!(q.power(0).unwrap_err(), QuiverError::ZeroPower);
    }

    #[test]
    fn power_one_is_identity() {
        let q = two_cycle();
        let p = q.power(1).unwrap();
        assert_eq!(p.vertex_count(), q.vertex_count());
        assert_eq!(p.arrow_count(), q.arrow_count());
        for v in q.vertices() {
            assert_eq!(p.tau(v), q.tau(v));
        }
    }

    #[test]
    fn power_two_mesh_avoidance() {
        // u -> v with tau(v) = u: no length-2 paths exist at all.
        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(None);
        let v = b.add_vertex(None);
        b.add_arrow(u, v, ArrowKind::Plain);
        b.set_translation(v, u);
        let q = b.build().unwrap();
        assert_eq!(q.power(2).unwrap().arrow_count(), 0);

        // u -> v -> w: the path survives iff tau(w) != u.
        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(None);
        let v = b.add_vertex(None);
        let w = b.add_vertex(None);
        b.add_arrow(u, v, ArrowKind::Plain);
        b.add_arrow(v, w, ArrowKind::Plain);
        b.set_translation(w, u);
        let q = b.build().unwrap();
        assert_eq!(q.power(2).unwrap().arrow_count(), 0);

        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(None);
        let v = b.add_vertex(None);
        let w = b.add_vertex(None);
        b.add_arrow(u, v, ArrowKind::Plain);
        b.add_arrow(v, w, ArrowKind::Plain);
        b.set_translation(w, w);
        let q = b.build().unwrap();
        assert_eq!(q.power(2).unwrap().arrow_count(), 1);
    }

    #[test]
    fn deleting_one_arrow_reports_one_pair() {
        // Rebuild the two-cycle without the v -> u arrow.
        let mut b = QuiverBuilder::new();
        let u = b.add_vertex(None);
        let v = b.add_vertex(None);
        b.add_arrow(u, v, ArrowKind::Plain);
        b.set_translation(u, u);
        b.set_translation(v, v);
        let q = b.build().unwrap();
        let report = q.verify_stable();
        assert!(!report.pass());
        assert_eq!(report.mismatched_pairs.len(), 1);
    }
}
