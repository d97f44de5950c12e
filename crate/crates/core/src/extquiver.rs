//! The Ext-quiver E_Q, the canonical quiver Γ(P) of a poset, and
//! QGr-equivalence as poset isomorphism of Ext-quivers.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};
use crate::growth::require_finite;
use crate::poset::{Poset, PosetDoc};
use crate::quiver::Quiver;

/// Cyclic vertices paired with the length of their simple cycle, in
/// declaration order.
pub fn cyclic_vertices(q: &Quiver) -> Result<Vec<(usize, usize)>> {
    let d = require_finite(q)?;
    let mut out: Vec<(usize, usize)> = d
        .cycles
        .iter()
        .flat_map(|c| c.vertices.iter().map(move |&v| (v, c.len())))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Is there a path `v -> w` of positive length divisible by `k`?
/// Breadth-first search over pairs (vertex, length mod k).
pub fn has_path_multiple(q: &Quiver, v: usize, w: usize, k: usize) -> bool {
    assert!(k > 0, "modulus must be positive");
    let n = q.vertex_count();
    let adj = q.successors();
    let mut seen = vec![false; n * k];
    let mut queue = VecDeque::new();
    for &t in &adj[v] {
        let state = t * k + 1 % k;
        if !seen[state] {
            seen[state] = true;
            queue.push_back((t, 1 % k));
        }
    }
    while let Some((x, r)) = queue.pop_front() {
        if x == w && r == 0 {
            return true;
        }
        let r2 = (r + 1) % k;
        for &t in &adj[x] {
            let state = t * k + r2;
            if !seen[state] {
                seen[state] = true;
                queue.push_back((t, r2));
            }
        }
    }
    false
}

#[derive(Debug, Clone)]
pub struct ExtQuiver {
    /// Quiver vertex index of each Ext-quiver vertex.
    pub vertices: Vec<usize>,
    pub names: Vec<String>,
    pub cycle_lengths: Vec<usize>,
    /// Arrows as pairs of Ext-quiver vertex positions.
    pub arrows: Vec<(usize, usize)>,
    pub poset: Poset,
}

impl ExtQuiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.poset.lt(i, j)
    }

    pub fn to_quiver(&self, name: &str) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(i, j)| {
                (
                    format!("{}__{}__0", self.names[i], self.names[j]),
                    self.names[i].clone(),
                    self.names[j].clone(),
                )
            })
            .collect();
        Quiver::new(name, self.names.clone(), arrows).expect("ext-quiver is well formed")
    }

    pub fn poset_doc(&self) -> PosetDoc {
        self.poset.to_doc()
    }
}

pub fn ext_quiver(q: &Quiver) -> Result<ExtQuiver> {
    let cyc = cyclic_vertices(q)?;
    let p = cyc.len();
    let mut arrows = Vec::new();
    let mut less = vec![vec![false; p]; p];
    for (i, &(v, nv)) in cyc.iter().enumerate() {
        for (j, &(w, nw)) in cyc.iter().enumerate() {
            if v != w && has_path_multiple(q, v, w, nv * nw) {
                arrows.push((i, j));
                less[i][j] = true;
            }
        }
    }
    let names: Vec<String> = cyc.iter().map(|&(v, _)| q.vertex_name(v).to_string()).collect();
    let poset = Poset::new(names.clone(), less)
        .map_err(|e| QgrError::AssertionFailure(format!("ext-quiver is not a poset: {e}")))?;
    Ok(ExtQuiver {
        vertices: cyc.iter().map(|&(v, _)| v).collect(),
        names,
        cycle_lengths: cyc.iter().map(|&(_, n)| n).collect(),
        arrows,
        poset,
    })
}

/// Γ(P): a loop at every element and one arrow per strict relation.
pub fn gamma(p: &Poset) -> Quiver {
    let names = p.names().to_vec();
    let mut arrows = Vec::new();
    for (i, x) in names.iter().enumerate() {
        arrows.push((format!("{x}__{x}__0"), x.clone(), x.clone()));
        for (j, y) in names.iter().enumerate() {
            if p.lt(i, j) {
                arrows.push((format!("{x}__{y}__0"), x.clone(), y.clone()));
            }
        }
    }
    Quiver::new("gamma", names, arrows).expect("poset element names are distinct")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Equivalence {
    Equivalent { bijection: Vec<(String, String)> },
    Inequivalent { reason: String },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Decides `QGr kQ ≡ QGr kQ'` by comparing Ext-quivers up to isomorphism.
pub fn qgr_equivalent(q1: &Quiver, q2: &Quiver) -> Result<Equivalence> {
    let e1 = ext_quiver(q1)?;
    let e2 = ext_quiver(q2)?;
    Ok(compare_posets(&e1.poset, &e2.poset))
}

pub fn compare_posets(p1: &Poset, p2: &Poset) -> Equivalence {
    if p1.len() != p2.len() {
        return Equivalence::Inequivalent {
            reason: format!("{} vs {} simple objects", p1.len(), p2.len()),
        };
    }
    if p1.relation_count() != p2.relation_count() {
        return Equivalence::Inequivalent {
            reason: format!(
                "{} vs {} Ext-quiver arrows",
                p1.relation_count(),
                p2.relation_count()
            ),
        };
    }
    match p1.isomorphism(p2) {
        Some(sigma) => Equivalence::Equivalent {
            bijection: sigma
                .iter()
                .enumerate()
                .map(|(i, &j)| (p1.names()[i].clone(), p2.names()[j].clone()))
                .collect(),
        },
        None => Equivalence::Inequivalent {
            reason: "no isomorphism of Ext-quivers (degree profiles or exhausted search)".into(),
        },
    }
}

pub fn gk_from_ext_quiver(e: &ExtQuiver) -> usize {
    e.poset.height()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

    fn cycle(n: usize) -> Quiver {
        let mut s = String::new();
        for i in 0..n {
            s += &format!("vertex v{i}\n");
        }
        for i in 0..n {
            s += &format!("arrow a{i}: v{i} -> v{}\n", (i + 1) % n);
        }
        parse_quiver(&s).unwrap()
    }

    #[test]
    fn cyclic_vertex_lists() {
        assert_eq!(cyclic_vertices(&cycle(3)).unwrap(), [(0, 3), (1, 3), (2, 3)]);
        assert_eq!(cyclic_vertices(&parse_quiver(EX8).unwrap()).unwrap(), [(0, 1), (1, 1)]);
        assert!(cyclic_vertices(&parse_quiver("vertex a\nvertex b\narrow f: a -> b").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn path_multiples() {
        assert!(has_path_multiple(&parse_quiver(EX8).unwrap(), 0, 1, 1));
        let c = cycle(3);
        assert!(!has_path_multiple(&c, 0, 1, 9));
        assert!(has_path_multiple(&c, 0, 0, 9));
    }

    #[test]
    fn ext_quiver_is_not_reachability() {
        // 2-cycle {a,b} -> b->c -> 2-cycle {c,d}: only odd lengths reach d from a.
        let q = parse_quiver(
            "vertex a\nvertex b\nvertex c\nvertex d\n\
             arrow x: a -> b\narrow y: b -> a\narrow z: b -> c\narrow u: c -> d\narrow w: d -> c",
        )
        .unwrap();
        let e = ext_quiver(&q).unwrap();
        assert!(e.has_arrow(0, 2));
        assert!(!e.has_arrow(0, 3));
        assert!(e.has_arrow(1, 3));
        assert!(!e.has_arrow(0, 1));
    }

    #[test]
    fn examples() {
        let e = ext_quiver(&parse_quiver(EX8).unwrap()).unwrap();
        assert_eq!(e.arrows, [(0, 1)]);
        assert_eq!(gk_from_ext_quiver(&e), 2);
        let c = ext_quiver(&cycle(4)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.arrows.is_empty());
        assert_eq!(gk_from_ext_quiver(&c), 1);
        let g = gamma(&Poset::chain(2));
        assert_eq!(g.incidence_matrix(), parse_quiver(EX8).unwrap().incidence_matrix());
        let back = ext_quiver(&g).unwrap();
        assert!(back.poset.isomorphism(&Poset::chain(2)).is_some());
        assert_eq!(gamma(&Poset::antichain(3)).arrow_count(), 3);
    }

    #[test]
    fn equivalences() {
        let two_loops = parse_quiver("vertex a\nvertex b\narrow x: a -> a\narrow y: b -> b").unwrap();
        assert!(qgr_equivalent(&cycle(2), &two_loops).unwrap().is_equivalent());
        assert!(!qgr_equivalent(&cycle(1), &cycle(2)).unwrap().is_equivalent());
        let dbl = parse_quiver("vertex a\narrow x: a -> a\narrow y: a -> a").unwrap();
        assert!(matches!(qgr_equivalent(&dbl, &cycle(1)), Err(QgrError::NotFiniteGk(_))));
    }
}
