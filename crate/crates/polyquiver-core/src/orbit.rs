//! The translation quiver of m-diagonals of the repetitive polygon, with
//! rotation arrows, the translation, fundamental-domain labels and the
//! band topology classifier.
//!
//! Arrows and translation are clockwise (resp. anticlockwise) rotations of
//! a diagonal about one endpoint by m polygon steps. Index arithmetic is
//! performed modulo the region size N; when the moving endpoint passes the
//! inner boundary arc the indices wrap, and the result is read in the
//! neighbouring region exactly when the rotation lands on (for arrows) or
//! leaves (for the translation) the shared seam vertex 1.

use alloc::collections::BTreeMap;

use crate::polygon::{Diagonal, ModelParams};
use crate::quiver::{ArrowKind, QuiverBuilder, TranslationQuiver, VertexId, VertexLabel};

fn label_of(d: Diagonal) -> VertexLabel {
    VertexLabel::Diagonal {
        i: d.i,
        j: d.j,
        region: d.region,
    }
}

/// Diagonal stored at a vertex of a quiver built by [`build_gamma`].
pub fn diagonal_of_label(label: &VertexLabel) -> Option<Diagonal> {
    match label {
        VertexLabel::Diagonal { i, j, region } => Some(Diagonal::new(*i, *j, *region)),
        _ => None,
    }
}

/// Rotation of `d` about its endpoint `i`, moving `j` clockwise by m steps.
/// Returns the target diagonal and whether the rotation wrapped past the
/// inner boundary (an index wrap, not necessarily a region change).
pub(crate) fn up_target(params: &ModelParams, d: Diagonal) -> Option<(Diagonal, bool)> {
    let n_gon = params.region_size();
    let m = params.m();
    let raw = d.j + m;
    if raw <= n_gon {
        if params.is_m_diagonal(d.i, raw) {
            return Some((Diagonal::new(d.i, raw, d.region), false));
        }
        return None;
    }
    // The moving endpoint passed the seam; it lands on `raw - N` of the
    // same region, which is read in region k+1 exactly when it is the
    // seam vertex itself.
    let landed = raw - n_gon;
    let (lo, hi) = if landed < d.i { (landed, d.i) } else { (d.i, landed) };
    if !params.is_m_diagonal(lo, hi) {
        return None;
    }
    let region = if landed == 1 {
        params.reduce_region(d.region as i64 + 1)
    } else {
        d.region
    };
    Some((Diagonal::new(lo, hi, region), true))
}

/// Rotation of `d` about its endpoint `j`, moving `i` clockwise by m steps.
/// This never wraps: the moving endpoint would hit `j` first.
pub(crate) fn down_target(params: &ModelParams, d: Diagonal) -> Option<Diagonal> {
    let raw = d.i + params.m();
    if raw < d.j && params.is_m_diagonal(raw, d.j) {
        Some(Diagonal::new(raw, d.j, d.region))
    } else {
        None
    }
}

/// The translation: anticlockwise rotation of both endpoints by m steps,
/// composed with the inverse region rotation exactly when the diagonal
/// leaves the seam vertex 1. Total and bijective on valid diagonals.
/// The boolean records whether the indices wrapped.
pub fn tau_diagonal(params: &ModelParams, d: Diagonal) -> (Diagonal, bool) {
    let n_gon = params.region_size();
    let m = params.m();
    if d.i > m {
        return (Diagonal::new(d.i - m, d.j - m, d.region), false);
    }
    let wrapped_i = d.i + n_gon - m;
    let new_j = d.j - m;
    let region = if d.i == 1 {
        params.reduce_region(d.region as i64 - 1)
    } else {
        d.region
    };
    // new_j >= 2 always, and new_j < wrapped_i.
    (Diagonal::new(new_j, wrapped_i, region), true)
}

/// Inverse of [`tau_diagonal`].
pub fn tau_inv_diagonal(params: &ModelParams, d: Diagonal) -> (Diagonal, bool) {
    let n_gon = params.region_size();
    let m = params.m();
    if d.j + m <= n_gon {
        return (Diagonal::new(d.i + m, d.j + m, d.region), false);
    }
    let wrapped_j = d.j + m - n_gon;
    let new_i = d.i + m;
    let region = if wrapped_j == 1 {
        params.reduce_region(d.region as i64 + 1)
    } else {
        d.region
    };
    (Diagonal::new(wrapped_j, new_i, region), true)
}

/// Builds the quiver of m-diagonals of the repetitive polygon. Vertices
/// are all m-diagonals of all p regions; each vertex carries its diagonal
/// as label.
pub fn build_gamma(params: &ModelParams) -> TranslationQuiver {
    let diagonals = params.diagonals();
    let mut builder = QuiverBuilder::new();
    let mut ids: BTreeMap<Diagonal, VertexId> = BTreeMap::new();
    for &d in &diagonals {
        let v = builder.add_vertex(Some(label_of(d)));
        ids.insert(d, v);
    }
    for &d in &diagonals {
        let v = ids[&d];
        if let Some((target, wrapped)) = up_target(params, d) {
            // Only the rotation landing on the seam vertex composes with
            // the region rotation.
            let kind = if wrapped && target.i == 1 {
                ArrowKind::IrrRhoRot
            } else {
                ArrowKind::IrrRot
            };
            builder.add_arrow(v, ids[&target], kind);
        }
        if let Some(target) = down_target(params, d) {
            builder.add_arrow(v, ids[&target], ArrowKind::IrrRot);
        }
        let (img, _) = tau_diagonal(params, d);
        builder.set_translation(v, ids[&img]);
    }
    builder.build().expect("diagonal quiver construction is internally consistent")
}

/// Labels every vertex of a diagonal quiver with the index of the region
/// its diagonal lives in; the classes partition the quiver into p copies
/// of the fundamental domain.
pub fn fundamental_domain_labels(q: &TranslationQuiver) -> BTreeMap<VertexId, u32> {
    q.vertices()
        .filter_map(|v| {
            q.label(v)
                .and_then(diagonal_of_label)
                .map(|d| (v, d.region))
        })
        .collect()
}

/// Surface the band of a diagonal quiver lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandShape {
    Moebius,
    Cylinder,
    /// The classification is only meaningful for m = 1.
    Inconclusive,
}

/// Classifies the band carrying the m = 1 quiver by transporting a
/// transverse orientation along one full translation period. Interior
/// translation steps preserve the diagonal length class `d = j - i`; a
/// seam step sends `d` to `N - d`, reversing the length axis. The band is
/// a Moebius strip iff the composite of one full period (p seam
/// crossings) is orientation-reversing.
pub fn band_topology(params: &ModelParams, q: &TranslationQuiver) -> BandShape {
    if params.m() != 1 {
        return BandShape::Inconclusive;
    }
    let n_gon = params.region_size();
    let start = q
        .vertices()
        .find_map(|v| q.label(v).and_then(diagonal_of_label))
        .expect("diagonal quiver has vertices");
    let mut current = start;
    let mut sign = 1i32;
    let mut crossings = 0u32;
    loop {
        let (next, wrapped) = tau_diagonal(params, current);
        if wrapped {
            // Check the recorded flip of the length class.
            let d_old = current.j - current.i;
            let d_new = next.j - next.i;
            debug_assert_eq!(d_new, n_gon - d_old);
            sign = -sign;
            crossings += 1;
        } else {
            debug_assert_eq!(next.j - next.i, current.j - current.i);
        }
        current = next;
        if crossings == params.p() {
            break;
        }
    }
    if sign < 0 {
        BandShape::Moebius
    } else {
        BandShape::Cylinder
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn diag(i: u32, j: u32, k: u32) -> Diagonal {
        Diagonal::new(i, j, k)
    }

    fn targets(q: &TranslationQuiver, d: Diagonal) -> Vec<Diagonal> {
        let v = q.vertex_by_label(&label_of(d)).unwrap();
        let mut out: Vec<Diagonal> = q
            .out_arrows(v)
            .map(|a| diagonal_of_label(q.label(a.target).unwrap()).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn gamma_3_1_3_arrows_match_rotation_rules() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        let q = build_gamma(&params);
        assert_eq!(q.vertex_count(), 27);
        // (2,4,1) -> (2,5,1); the other rotation hits a side.
        assert_eq!(targets(&q, diag(2, 4, 1)), vec![diag(2, 5, 1)]);
        assert_eq!(targets(&q, diag(1, 4, 1)), vec![diag(1, 5, 1), diag(2, 4, 1)]);
        // Seam vertex: one in-region rotation, one rotation composed with rho.
        assert_eq!(targets(&q, diag(3, 6, 1)), vec![diag(1, 3, 2), diag(4, 6, 1)]);
    }

    #[test]
    fn gamma_3_1_3_translation_examples() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        assert_eq!(tau_diagonal(&params, diag(2, 4, 1)).0, diag(1, 3, 1));
        assert_eq!(tau_diagonal(&params, diag(1, 4, 2)).0, diag(3, 6, 1));
    }

    #[test]
    fn tau_is_inverse_of_tau_inv_on_the_grid() {
        for n in 1..=4 {
            for m in 1..=3 {
                for p in 1..=3 {
                    let params = ModelParams::new(n, m, p).unwrap();
                    for d in params.diagonals() {
                        let (img, _) = tau_diagonal(&params, d);
                        assert!(params.is_valid_diagonal(img), "tau image invalid: {d} -> {img}");
                        assert_eq!(tau_inv_diagonal(&params, img).0, d);
                    }
                }
            }
        }
    }

    #[test]
    fn stability_on_small_grid() {
        for n in 1..=4 {
            for m in 1..=3 {
                for p in 1..=3 {
                    let params = ModelParams::new(n, m, p).unwrap();
                    let q = build_gamma(&params);
                    let report = q.verify_stable();
                    assert!(
                        report.pass(),
                        "gamma({n},{m},{p}) unstable: {:?}",
                        report.mismatched_pairs
                    );
                }
            }
        }
    }

    #[test]
    fn degrees_are_at_most_two() {
        let params = ModelParams::new(4, 2, 3).unwrap();
        let q = build_gamma(&params);
        for v in q.vertices() {
            assert!(q.out_degree(v) <= 2);
            assert!(q.in_degree(v) <= 2);
        }
    }

    #[test]
    fn rho_rot_arrows_cross_regions_single_step() {
        for (n, m, p) in [(3, 1, 3), (2, 2, 2), (2, 3, 2)] {
            let params = ModelParams::new(n, m, p).unwrap();
            let q = build_gamma(&params);
            for a in q.arrows() {
                let s = diagonal_of_label(q.label(a.source).unwrap()).unwrap();
                let t = diagonal_of_label(q.label(a.target).unwrap()).unwrap();
                match a.kind {
                    ArrowKind::IrrRhoRot => {
                        assert_eq!(t.region, params.reduce_region(s.region as i64 + 1));
                        assert_eq!(t.i, 1);
                        assert_eq!(s.j, params.region_size() - (params.m() - 1));
                    }
                    _ => {
                        if p > 1 {
                            assert_eq!(t.region, s.region, "{s} -> {t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rho_induces_quiver_automorphism_preserving_tau_orbits() {
        let params = ModelParams::new(2, 2, 3).unwrap();
        let q = build_gamma(&params);
        // rho commutes with tau, so it permutes tau-orbits.
        for d in params.diagonals() {
            let (td, _) = tau_diagonal(&params, d);
            assert_eq!(tau_diagonal(&params, params.rho(d)).0, params.rho(td));
        }
        // rho maps arrows to arrows.
        for a in q.arrows() {
            let s = diagonal_of_label(q.label(a.source).unwrap()).unwrap();
            let t = diagonal_of_label(q.label(a.target).unwrap()).unwrap();
            let rs = q.vertex_by_label(&label_of(params.rho(s))).unwrap();
            let rt = q.vertex_by_label(&label_of(params.rho(t))).unwrap();
            assert!(q.arrow_multiplicity(rs, rt) >= 1);
        }
    }

    #[test]
    fn fundamental_domain_classes_have_equal_sizes() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        let q = build_gamma(&params);
        let labels = fundamental_domain_labels(&q);
        for k in 1..=3 {
            assert_eq!(labels.values().filter(|&&l| l == k).count(), 9);
        }
        let params = ModelParams::new(2, 1, 4).unwrap();
        let labels = fundamental_domain_labels(&build_gamma(&params));
        for k in 1..=4 {
            assert_eq!(labels.values().filter(|&&l| l == k).count(), 5);
        }
        let params = ModelParams::new(2, 2, 1).unwrap();
        let labels = fundamental_domain_labels(&build_gamma(&params));
        assert!(labels.values().all(|&l| l == 1));
    }

    #[test]
    fn band_shape_matches_parity_of_p() {
        for (n, p) in [(3, 3), (3, 4), (2, 1), (1, 2), (1, 3), (2, 2)] {
            let params = ModelParams::new(n, 1, p).unwrap();
            let q = build_gamma(&params);
            let expected = if p % 2 == 1 {
                BandShape::Moebius
            } else {
                BandShape::Cylinder
            };
            assert_eq!(band_topology(&params, &q), expected, "n={n} p={p}");
        }
        let params = ModelParams::new(2, 2, 2).unwrap();
        let q = build_gamma(&params);
        assert_eq!(band_topology(&params, &q), BandShape::Inconclusive);
    }

    #[test]
    fn hexagon_cluster_quiver_matches_hand_enumeration() {
        // The 9 diagonals of a hexagon with rotation arrows, frozen by hand.
        let params = ModelParams::new(3, 1, 1).unwrap();
        let q = build_gamma(&params);
        assert_eq!(q.vertex_count(), 9);
        let expected_arrows = [
            ((1, 3), (1, 4)),
            ((2, 4), (2, 5)),
            ((3, 5), (3, 6)),
            ((4, 6), (1, 4)),
            ((1, 4), (1, 5)),
            ((1, 4), (2, 4)),
            ((2, 5), (2, 6)),
            ((2, 5), (3, 5)),
            ((3, 6), (4, 6)),
            ((3, 6), (1, 3)),
            ((1, 5), (2, 5)),
            ((2, 6), (3, 6)),
        ];
        assert_eq!(q.arrow_count(), expected_arrows.len());
        for ((si, sj), (ti, tj)) in expected_arrows {
            let s = q.vertex_by_label(&label_of(diag(si, sj, 1))).unwrap();
            let t = q.vertex_by_label(&label_of(diag(ti, tj, 1))).unwrap();
            assert_eq!(q.arrow_multiplicity(s, t), 1, "missing ({si},{sj}) -> ({ti},{tj})");
        }
    }

    #[test]
    fn tau_orbit_lengths_follow_the_gluing() {
        // For n=2, m=2, p=2 the two rows close up after 4p steps each.
        let params = ModelParams::new(2, 2, 2).unwrap();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut lens = vec![];
        for d in params.diagonals() {
            if seen.contains(&d) {
                continue;
            }
            let mut len = 0;
            let mut x = d;
            loop {
                seen.insert(x);
                x = tau_diagonal(&params, x).0;
                len += 1;
                if x == d {
                    break;
                }
            }
            lens.push(len);
        }
        lens.sort();
        assert_eq!(lens, vec![8, 8]);
    }
}
