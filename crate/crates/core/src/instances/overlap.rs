//! K = max over e ∈ E_W of |{q ∈ Q : e ∈ E±_q}|.

use std::collections::HashMap;
use std::ops::Range;

use super::SwapFamily;
use crate::access::AccessModel;
use crate::graph::{Graph, Vertex};

/// Largest |Q| the brute-force count will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 100_000;

/// V_W as a membership mask: every vertex under JUMP, otherwise the
/// components of G that contain a vertex of W (or the family's override).
fn vw_mask(fam: &SwapFamily, model: AccessModel) -> Vec<bool> {
    let g = &fam.graph;
    let mut mask = vec![false; g.n()];
    if let Some(parts) = &fam.vw_override {
        for r in parts {
            for v in r.clone() {
                mask[v] = true;
            }
        }
    } else if model.jump {
        mask.fill(true);
    } else {
        let labels = g.component_labels();
        let q0 = fam.quads.nth(0).expect("nonempty Q");
        let wanted: Vec<usize> = fam.w.iter().map(|e| labels[e.resolve(&q0)]).collect();
        for v in 0..g.n() {
            mask[v] = wanted.contains(&labels[v]);
        }
    }
    if let Some(res) = fam.reserved {
        // reaching a reserved vertex costs Ω(n) JUMPs
        for w in res {
            mask[w] = false;
        }
    }
    mask
}

/// Closed form for product-structured Q. Each pair type of each product
/// block contributes a rectangle of pairs, all with the same count (the
/// product of the two other range sizes). Blocks of one family only ever
/// produce equal or disjoint rectangles, so counts add per rectangle.
pub fn overlap_k_closed(fam: &SwapFamily, model: AccessModel) -> u64 {
    let mask = vw_mask(fam, model);
    let cross_pairs_visible = model.adj && !fam.subdivided();
    let mut rects: HashMap<(Range<Vertex>, Range<Vertex>), u64> = HashMap::new();
    for b in &fam.quads.blocks {
        let sz = |k: usize| b[k].len() as u64;
        // (first, second, weight, is an edge of G)
        let types = [
            (0, 1, sz(2) * sz(3), true),
            (2, 3, sz(0) * sz(1), true),
            (0, 2, sz(1) * sz(3), false),
            (1, 3, sz(0) * sz(2), false),
        ];
        for (i, j, w, is_edge) in types {
            if !is_edge && !cross_pairs_visible {
                continue;
            }
            // parts lie inside single components, so one vertex decides
            if !mask[b[i].start] || !mask[b[j].start] {
                continue;
            }
            let key =
                if b[i].start <= b[j].start { (b[i].clone(), b[j].clone()) } else { (b[j].clone(), b[i].clone()) };
            *rects.entry(key).or_insert(0) += w;
        }
    }
    rects.values().copied().max().unwrap_or(0)
}

/// Direct count over every q ∈ Q. `None` when |Q| exceeds the limit.
pub fn overlap_k_brute(fam: &SwapFamily, model: AccessModel) -> Option<u64> {
    if fam.quads.len() > BRUTE_FORCE_LIMIT {
        return None;
    }
    let mask = vw_mask(fam, model);
    let g: &Graph = &fam.graph;
    let eligible = |u: Vertex, v: Vertex| mask[u] && mask[v] && (g.has_edge(u, v) || (model.adj && !fam.subdivided()));
    let mut counts: HashMap<(Vertex, Vertex), u64> = HashMap::new();
    for q in fam.quads.iter() {
        let mut pairs = q.pairs().to_vec();
        pairs.sort_unstable();
        pairs.dedup();
        for (u, v) in pairs {
            if eligible(u, v) {
                *counts.entry((u, v)).or_insert(0) += 1;
            }
        }
    }
    Some(counts.values().copied().max().unwrap_or(0))
}

impl SwapFamily {
    /// K under `model`, closed form.
    pub fn overlap_k(&self, model: AccessModel) -> u64 {
        overlap_k_closed(self, model)
    }

    /// K under the family's own model.
    pub fn native_k(&self) -> u64 {
        overlap_k_closed(self, self.model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EstimatorConfig;
    use crate::instances::{gen_family, FamilyId};

    #[test]
    fn paper_values() {
        let cfg = EstimatorConfig::default();
        let f = gen_family(FamilyId::SpWorst, 10, 20, 0.2, &cfg).unwrap();
        let (x, y) = (f.param("x").unwrap() as u64, f.param("y").unwrap() as u64);
        assert_eq!(f.native_k(), x * y);
        let f = gen_family(FamilyId::StWcA, 10, 30, 0.2, &cfg).unwrap();
        assert_eq!(f.native_k(), 1);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        let cfg = EstimatorConfig::default();
        for id in FamilyId::ALL {
            for &(n, m, delta) in &[(8, 16, 0.3), (12, 40, 0.1), (10, 100, 0.02), (16, 16, 1.0)] {
                let f = gen_family(id, n, m, delta, &cfg).unwrap();
                for model in [
                    f.model,
                    AccessModel::BASE,
                    AccessModel::ALL,
                    AccessModel::new(false, false, true),
                    AccessModel::new(true, false, false),
                ] {
                    let brute = overlap_k_brute(&f, model).expect("small Q");
                    assert_eq!(overlap_k_closed(&f, model), brute, "{id} {model} n={n} m={m}");
                }
            }
        }
    }
}
