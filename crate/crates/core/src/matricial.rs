//! Dimension data of the ultramatricial algebras attached to a quiver, and
//! the GK-dimension one and Noetherian reports.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::big_json;
use crate::error::Result;
use crate::growth::{cyclic_vertex_mask, gk_dimension, require_finite};
use crate::quiver::Quiver;

/// `p_0 = (1, ..., 1)`, `p_{m+1} = M^T p_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliSequence {
    pub vectors: Vec<Vec<BigUint>>,
}

impl BratteliSequence {
    pub fn sums(&self) -> Vec<BigUint> {
        self.vectors.iter().map(|p| p.iter().sum()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.vectors
                .iter()
                .map(|p| serde_json::Value::Array(p.iter().map(big_json).collect()))
                .collect(),
        )
    }
}

pub fn bratteli(q: &Quiver, n_max: usize) -> BratteliSequence {
    let m = q.incidence_matrix();
    let n = q.vertex_count();
    let mut p = vec![BigUint::from(1u32); n];
    let mut vectors = Vec::with_capacity(n_max + 1);
    for step in 0..=n_max {
        vectors.push(p.clone());
        if step == n_max {
            break;
        }
        let mut next = vec![BigUint::zero(); n];
        for (j, out) in next.iter_mut().enumerate() {
            for (i, pi) in p.iter().enumerate() {
                let mij = m.get(i, j);
                if !mij.is_zero() {
                    *out += pi * mij.magnitude();
                }
            }
        }
        p = next;
    }
    BratteliSequence { vectors }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoBlocks {
    pub degree: usize,
    /// Nonzero block sizes keyed by vertex name.
    pub blocks: BTreeMap<String, BigUint>,
}

/// Vertices from which some cycle can be reached.
pub fn live_vertices(q: &Quiver) -> Vec<bool> {
    let cyclic = cyclic_vertex_mask(q);
    let reach = q.reachability();
    (0..q.vertex_count())
        .map(|v| cyclic[v] || (0..q.vertex_count()).any(|w| cyclic[w] && reach[v][w]))
        .collect()
}

/// For each degree, the number of paths of that length from a cyclic vertex
/// to each live vertex: the block sizes of `End(P'_n)`.
pub fn endo_block_dims(q: &Quiver, n_max: usize) -> Result<Vec<EndoBlocks>> {
    require_finite(q)?;
    let cyclic = cyclic_vertex_mask(q);
    let live = live_vertices(q);
    let n = q.vertex_count();
    let mut counts: Vec<BigUint> = cyclic.iter().map(|&c| BigUint::from(u32::from(c))).collect();
    let mut out = Vec::with_capacity(n_max + 1);
    for degree in 0..=n_max {
        let blocks = (0..n)
            .filter(|&v| live[v] && !counts[v].is_zero())
            .map(|v| (q.vertex_name(v).to_string(), counts[v].clone()))
            .collect();
        out.push(EndoBlocks { degree, blocks });
        let mut next = vec![BigUint::zero(); n];
        for a in q.arrows() {
            if !counts[a.src].is_zero() {
                next[a.tgt] += &counts[a.src];
            }
        }
        counts = next;
    }
    Ok(out)
}

pub fn endo_blocks_json(blocks: &[EndoBlocks]) -> serde_json::Value {
    serde_json::Value::Array(
        blocks
            .iter()
            .map(|b| {
                let map: serde_json::Map<String, serde_json::Value> =
                    b.blocks.iter().map(|(k, v)| (k.clone(), big_json(v))).collect();
                serde_json::json!({ "degree": b.degree, "blocks": map })
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Noetherian {
    pub left: bool,
    pub right: bool,
}

/// Right Noetherian iff every cyclic vertex has exactly one outgoing arrow;
/// left iff exactly one incoming arrow.
pub fn noetherian_check(q: &Quiver) -> Noetherian {
    let cyclic = cyclic_vertex_mask(q);
    let mut out_deg = vec![0usize; q.vertex_count()];
    let mut in_deg = vec![0usize; q.vertex_count()];
    for a in q.arrows() {
        out_deg[a.src] += 1;
        in_deg[a.tgt] += 1;
    }
    let vs = || (0..q.vertex_count()).filter(|&v| cyclic[v]);
    Noetherian {
        left: vs().all(|v| in_deg[v] == 1),
        right: vs().all(|v| out_deg[v] == 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gk1Report {
    /// QGr kQ is equivalent to Mod k^n.
    Semisimple { n: usize, noetherian: Noetherian },
    NotApplicable { gk: Option<usize> },
}

pub fn gk1_report(q: &Quiver) -> Gk1Report {
    let g = gk_dimension(q);
    if g.gk != Some(1) {
        return Gk1Report::NotApplicable { gk: g.gk };
    }
    let n = cyclic_vertex_mask(q).iter().filter(|&&c| c).count();
    Gk1Report::Semisimple {
        n,
        noetherian: noetherian_check(q),
    }
}

/// Combined report: `{"bratteli", "endo_blocks", "noetherian"}`. The block
/// data is `null` for infinite GK-dimension.
pub fn matricial_report(q: &Quiver, n_max: usize) -> serde_json::Value {
    let endo = endo_block_dims(q, n_max).ok();
    let noeth = noetherian_check(q);
    serde_json::json!({
        "bratteli": bratteli(q, n_max).to_json(),
        "endo_blocks": endo.as_deref().map(endo_blocks_json),
        "noetherian": { "left": noeth.left, "right": noeth.right },
    })
}

/// Rank of `M^|Q0|`, where the rank of the powers of `M` has stabilized.
/// For finite GK-dimension this is the number of cyclic vertices.
pub fn eventual_rank(q: &Quiver) -> usize {
    q.incidence_matrix().pow(q.vertex_count() as u64).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

    fn q(s: &str) -> Quiver {
        parse_quiver(s).unwrap()
    }

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn bratteli_examples() {
        let lp = bratteli(&q("vertex a\narrow x: a -> a"), 5);
        assert!(lp.vectors.iter().all(|p| *p == u(&[1])));
        let ex = bratteli(&q(EX8), 6);
        for (m, p) in ex.vectors.iter().enumerate() {
            assert_eq!(*p, u(&[1, m as u64 + 1]));
        }
        let dbl = bratteli(&q("vertex a\narrow x: a -> a\narrow y: a -> a"), 6);
        for (m, p) in dbl.vectors.iter().enumerate() {
            assert_eq!(*p, u(&[1 << m]));
        }
    }

    #[test]
    fn endo_blocks_examples() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        for b in endo_block_dims(&tri, 6).unwrap() {
            assert_eq!(b.blocks.len(), 3);
            assert!(b.blocks.values().all(|x| *x == BigUint::from(1u32)));
        }
        let ex = endo_block_dims(&q(EX8), 5).unwrap();
        for b in &ex {
            assert_eq!(b.blocks["a"], BigUint::from(1u32));
            assert_eq!(b.blocks["b"], BigUint::from(b.degree as u64 + 1));
        }
        // A dead end is not live and contributes no block.
        let dead = q("vertex a\nvertex z\narrow p: a -> a\narrow f: a -> z");
        let blocks = endo_block_dims(&dead, 3).unwrap();
        assert!(blocks.iter().all(|b| b.blocks.len() == 1));
    }

    #[test]
    fn noetherian_examples() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        assert_eq!(noetherian_check(&tri), Noetherian { left: true, right: true });
        let uf = q("vertex x\nvertex y\narrow xx: x -> x\narrow yx: y -> x\narrow yy: y -> y");
        assert_eq!(noetherian_check(&uf), Noetherian { left: false, right: false });
        let acyclic = q("vertex a\nvertex b\narrow f: a -> b");
        assert_eq!(noetherian_check(&acyclic), Noetherian { left: true, right: true });
    }

    #[test]
    fn gk1_examples() {
        let four = q("vertex a\nvertex b\nvertex c\nvertex d\n\
                      arrow w: a -> b\narrow x: b -> c\narrow y: c -> d\narrow z: d -> a");
        assert!(matches!(gk1_report(&four), Gk1Report::Semisimple { n: 4, .. }));
        let three = q("vertex a\nvertex b\nvertex c\narrow x: a -> a\narrow y: b -> b\narrow z: c -> c");
        assert!(matches!(gk1_report(&three), Gk1Report::Semisimple { n: 3, .. }));
        assert_eq!(gk1_report(&q(EX8)), Gk1Report::NotApplicable { gk: Some(2) });
    }

    #[test]
    fn eventual_rank_counts_cyclic_vertices() {
        assert_eq!(eventual_rank(&q(EX8)), 2);
        let tail = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> c");
        assert_eq!(eventual_rank(&tail), 1);
    }

    #[test]
    fn report_shape() {
        let r = matricial_report(&q(EX8), 2);
        assert_eq!(r["bratteli"][2], serde_json::json!([1, 3]));
        assert_eq!(r["endo_blocks"][1]["blocks"]["b"], 2);
        assert_eq!(r["noetherian"]["right"], false);
    }
}
