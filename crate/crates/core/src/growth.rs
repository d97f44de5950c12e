//! Growth of path algebras: doubly cyclic vertices, the cycle poset and
//! GK-dimension as the longest chain of simple cycles.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};
use crate::poset::Poset;
use crate::quiver::Quiver;

/// Strongly connected components in topological order (sources first).
#[derive(Debug, Clone)]
pub struct Condensation {
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// A component is nontrivial when it contains an arrow (a loop or a cycle).
    pub nontrivial: Vec<bool>,
    /// Arrow indices internal to each component.
    pub internal_arrows: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn new(q: &Quiver) -> Self {
        let comps = tarjan(q);
        let mut component_of = vec![0; q.vertex_count()];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                component_of[v] = c;
            }
        }
        let mut internal_arrows = vec![Vec::new(); comps.len()];
        for (i, a) in q.arrows().iter().enumerate() {
            if component_of[a.src] == component_of[a.tgt] {
                internal_arrows[component_of[a.src]].push(i);
            }
        }
        let nontrivial = internal_arrows.iter().map(|a| !a.is_empty()).collect();
        Condensation {
            components: comps,
            component_of,
            nontrivial,
            internal_arrows,
        }
    }

    /// A nontrivial strongly connected component is a simple cycle exactly
    /// when it has as many arrows as vertices.
    pub fn is_simple_cycle(&self, c: usize) -> bool {
        self.nontrivial[c] && self.internal_arrows[c].len() == self.components[c].len()
    }

    /// `dag[c]` lists components directly reachable from `c`.
    pub fn dag(&self, q: &Quiver) -> Vec<Vec<usize>> {
        let mut dag = vec![Vec::new(); self.components.len()];
        for a in q.arrows() {
            let (s, t) = (self.component_of[a.src], self.component_of[a.tgt]);
            if s != t && !dag[s].contains(&t) {
                dag[s].push(t);
            }
        }
        dag
    }
}

// Iterative Tarjan. Emits components in reverse topological order; reversed on return.
fn tarjan(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    let adj = q.successors();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, next)) = call.last() {
            if next < adj[v].len() {
                let w = adj[v][next];
                call.last_mut().expect("nonempty").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

/// A simple cycle, stored from its base vertex (smallest declaration index)
/// in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleCycle {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl SimpleCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn base(&self) -> usize {
        self.vertices[0]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Position of `v` along the cycle, counted from the base.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// The unique cycle arrow leaving `v`.
    pub fn arrow_from(&self, v: usize) -> Option<usize> {
        self.position(v).map(|i| self.arrows[i])
    }

    /// Traces the cycle through the given internal arrows.
    fn trace(q: &Quiver, comp: &[usize], arrows: &[usize]) -> SimpleCycle {
        let base = comp[0];
        let mut vertices = vec![base];
        let mut out = Vec::with_capacity(arrows.len());
        let mut cur = base;
        loop {
            let a = *arrows
                .iter()
                .find(|&&a| q.arrows()[a].src == cur)
                .expect("each cycle vertex has an outgoing cycle arrow");
            out.push(a);
            cur = q.arrows()[a].tgt;
            if cur == base {
                break;
            }
            vertices.push(cur);
        }
        SimpleCycle {
            vertices,
            arrows: out,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CycleDecomposition {
    pub cycles: Vec<SimpleCycle>,
    /// Vertices of nontrivial components that are not simple cycles.
    pub doubly_cyclic: Vec<usize>,
    pub condensation: Condensation,
}

impl CycleDecomposition {
    pub fn finite(&self) -> bool {
        self.doubly_cyclic.is_empty()
    }

    /// Simple cycle through `v`, if `v` is cyclic and not doubly cyclic.
    pub fn cycle_of(&self, v: usize) -> Option<&SimpleCycle> {
        self.cycles.iter().find(|c| c.contains(v))
    }
}

pub fn strongly_connected_cycles(q: &Quiver) -> CycleDecomposition {
    let cond = Condensation::new(q);
    let mut cycles = Vec::new();
    let mut doubly = Vec::new();
    for (c, comp) in cond.components.iter().enumerate() {
        if !cond.nontrivial[c] {
            continue;
        }
        if cond.is_simple_cycle(c) {
            cycles.push(SimpleCycle::trace(q, comp, &cond.internal_arrows[c]));
        } else {
            doubly.extend(comp.iter().copied());
        }
    }
    doubly.sort_unstable();
    CycleDecomposition {
        cycles,
        doubly_cyclic: doubly,
        condensation: cond,
    }
}

/// Vertices lying in a nontrivial strongly connected component.
pub fn cyclic_vertex_mask(q: &Quiver) -> Vec<bool> {
    let cond = Condensation::new(q);
    (0..q.vertex_count())
        .map(|v| cond.nontrivial[cond.component_of[v]])
        .collect()
}

fn not_finite(q: &Quiver, doubly: &[usize]) -> QgrError {
    QgrError::NotFiniteGk(doubly.iter().map(|&v| q.vertex_name(v).to_string()).collect())
}

pub(crate) fn require_finite(q: &Quiver) -> Result<CycleDecomposition> {
    let d = strongly_connected_cycles(q);
    if d.finite() {
        Ok(d)
    } else {
        Err(not_finite(q, &d.doubly_cyclic))
    }
}

#[derive(Debug, Clone)]
pub struct CyclePoset {
    pub cycles: Vec<SimpleCycle>,
    /// `le[i][j]` iff cycle `i` precedes or equals cycle `j`.
    pub le: Vec<Vec<bool>>,
}

impl CyclePoset {
    pub fn to_poset(&self, q: &Quiver) -> Poset {
        let n = self.cycles.len();
        let names = self
            .cycles
            .iter()
            .map(|c| q.vertex_name(c.base()).to_string())
            .collect();
        let less = (0..n)
            .map(|i| (0..n).map(|j| i != j && self.le[i][j]).collect())
            .collect();
        Poset::new(names, less).expect("cycle order is a poset in the finite case")
    }
}

pub fn cycle_poset(q: &Quiver) -> Result<CyclePoset> {
    let d = require_finite(q)?;
    let reach = q.reachability();
    let n = d.cycles.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = i == j || reach[d.cycles[i].base()][d.cycles[j].base()];
        }
    }
    Ok(CyclePoset {
        cycles: d.cycles,
        le,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub finite: bool,
    pub gk: Option<usize>,
    pub doubly_cyclic: Vec<String>,
    pub max_chain: Vec<Vec<String>>,
}

/// GK-dimension: the longest chain of cyclic components in the condensation.
pub fn gk_dimension(q: &Quiver) -> GrowthReport {
    let d = strongly_connected_cycles(q);
    if !d.finite() {
        return GrowthReport {
            finite: false,
            gk: None,
            doubly_cyclic: d
                .doubly_cyclic
                .iter()
                .map(|&v| q.vertex_name(v).to_string())
                .collect(),
            max_chain: Vec::new(),
        };
    }
    let cond = &d.condensation;
    let dag = cond.dag(q);
    let k = cond.components.len();
    // Components are topologically sorted, so a reverse sweep suffices.
    let mut best = vec![0usize; k];
    let mut next = vec![usize::MAX; k];
    for c in (0..k).rev() {
        let own = usize::from(cond.nontrivial[c]);
        let mut tail = 0;
        for &t in &dag[c] {
            if best[t] > tail {
                tail = best[t];
                next[c] = t;
            }
        }
        best[c] = own + tail;
    }
    let gk = best.iter().copied().max().unwrap_or(0);
    let mut chain = Vec::new();
    if gk > 0 {
        let mut c = (0..k).find(|&c| best[c] == gk).expect("maximum attained");
        loop {
            if cond.nontrivial[c] {
                chain.push(q.vertex_name(cond.components[c][0]).to_string());
            }
            if next[c] == usize::MAX {
                break;
            }
            c = next[c];
        }
    }
    GrowthReport {
        finite: true,
        gk: Some(gk),
        doubly_cyclic: Vec::new(),
        max_chain: if chain.is_empty() { Vec::new() } else { vec![chain] },
    }
}

/// `r_0..=r_{n_max}`: total number of paths of each length, by pushing
/// counts along arrows from every vertex.
pub fn growth_oracle(q: &Quiver, n_max: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::one(); q.vertex_count()];
    let mut out = Vec::with_capacity(n_max + 1);
    for step in 0..=n_max {
        out.push(counts.iter().sum());
        if step == n_max {
            break;
        }
        let mut next = vec![BigUint::zero(); q.vertex_count()];
        for a in q.arrows() {
            if !counts[a.src].is_zero() {
                next[a.tgt] += &counts[a.src];
            }
        }
        counts = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn q(text: &str) -> Quiver {
        parse_quiver(text).unwrap()
    }

    const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

    #[test]
    fn two_loops_are_doubly_cyclic() {
        let d = strongly_connected_cycles(&q("vertex a\narrow x: a -> a\narrow y: a -> a"));
        assert_eq!(d.doubly_cyclic, [0]);
        assert!(d.cycles.is_empty());
    }

    #[test]
    fn example_has_two_cycles_in_a_chain() {
        let g = q(EX8);
        let d = strongly_connected_cycles(&g);
        assert_eq!(d.cycles.len(), 2);
        assert!(d.finite());
        let p = cycle_poset(&g).unwrap();
        assert!(p.le[0][1] && !p.le[1][0]);
        let r = gk_dimension(&g);
        assert_eq!(r.gk, Some(2));
        assert_eq!(r.max_chain, vec![vec!["a".to_string(), "b".to_string()]]);
    }

    #[test]
    fn antichains_and_singletons() {
        let two = cycle_poset(&q("vertex a\nvertex b\narrow x: a -> a\narrow y: b -> b")).unwrap();
        assert!(!two.le[0][1] && !two.le[1][0]);
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let p = cycle_poset(&tri).unwrap();
        assert_eq!(p.cycles.len(), 1);
        assert_eq!(p.cycles[0].vertices, [0, 1, 2]);
        assert!(matches!(
            cycle_poset(&q("vertex a\narrow x: a -> a\narrow y: a -> a")),
            Err(QgrError::NotFiniteGk(_))
        ));
    }

    #[test]
    fn gk_values() {
        assert_eq!(gk_dimension(&q("vertex a\nvertex b\narrow f: a -> b")).gk, Some(0));
        // Ufnarovskii graph of k<x,y>/(xy).
        let uf = q("vertex x\nvertex y\narrow xx: x -> x\narrow yx: y -> x\narrow yy: y -> y");
        assert_eq!(gk_dimension(&uf).gk, Some(2));
        assert!(!gk_dimension(&q("vertex a\narrow x: a -> a\narrow y: a -> a")).finite);
    }

    #[test]
    fn growth_oracle_examples() {
        let to_u = |v: Vec<u64>| v.into_iter().map(BigUint::from).collect::<Vec<_>>();
        assert_eq!(growth_oracle(&q("vertex a\narrow x: a -> a"), 4), to_u(vec![1; 5]));
        assert_eq!(
            growth_oracle(&q(EX8), 5),
            to_u((0..=5).map(|n| n + 2).collect())
        );
        assert_eq!(
            growth_oracle(&q("vertex a\narrow x: a -> a\narrow y: a -> a"), 6),
            to_u((0..=6).map(|n| 1 << n).collect())
        );
    }

    #[test]
    fn parallel_arrows_on_a_cycle_are_doubly_cyclic() {
        let g = q("vertex a\nvertex b\narrow f: a -> b\narrow g: a -> b\narrow h: b -> a");
        assert_eq!(strongly_connected_cycles(&g).doubly_cyclic, [0, 1]);
    }
}
