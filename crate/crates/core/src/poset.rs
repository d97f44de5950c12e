//! Finite posets stored as strict-order matrices.

use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    // less[i][j] <=> i < j
    less: Vec<Vec<bool>>,
}

/// Cover-relation document used by the JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Poset {
    /// Validates a strict order: irreflexive, antisymmetric, transitive.
    pub fn new(names: Vec<String>, less: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if less.len() != n || less.iter().any(|r| r.len() != n) {
            return Err(QgrError::InvalidPoset(format!(
                "relation matrix does not match {n} elements"
            )));
        }
        for i in 0..n {
            if less[i][i] {
                return Err(QgrError::InvalidPoset(format!("{} < {}", names[i], names[i])));
            }
            for j in 0..n {
                if less[i][j] && less[j][i] {
                    return Err(QgrError::InvalidPoset(format!(
                        "{} and {} precede each other",
                        names[i], names[j]
                    )));
                }
                if !less[i][j] {
                    continue;
                }
                for k in 0..n {
                    if less[j][k] && !less[i][k] {
                        return Err(QgrError::InvalidPoset(format!(
                            "not transitive at {} < {} < {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        Ok(Poset { names, less })
    }

    /// Poset generated by the given strict relations (transitive closure taken).
    pub fn from_relations(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(QgrError::InvalidPoset(format!("relation ({a},{b}) out of range")));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(names, less)
    }

    /// Elements named `1..=n`.
    pub fn numbered(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Poset::from_relations((1..=n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::numbered(n, &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::numbered(n, &[]).expect("antichain is a poset")
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let idx = |s: &str| {
            doc.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| QgrError::InvalidPoset(format!("unknown element `{s}`")))
        };
        let pairs = doc
            .covers
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_relations(doc.elements.clone(), &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.less[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    pub fn relation_count(&self) -> usize {
        self.less.iter().flatten().filter(|&&b| b).count()
    }

    /// `j` covers `i`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.less[i][j] && !(0..self.len()).any(|k| self.less[i][k] && self.less[k][j])
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.covers(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            elements: self.names.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
                .collect(),
        }
    }

    /// True iff `i < j` implies `i` precedes `j` in index order.
    pub fn is_naturally_labeled(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..i).all(|j| !self.less[i][j]))
    }

    /// Minimal elements of a subset given as a membership mask.
    pub fn minimal_in(&self, mask: &[bool]) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| mask[j] && !(0..self.len()).any(|k| mask[k] && self.less[k][j]))
            .collect()
    }

    /// One longest chain, bottom first.
    pub fn longest_chain(&self) -> Vec<usize> {
        let n = self.len();
        let order = self.linear_extension();
        // best[i] = longest chain ending at i; prev for reconstruction
        let mut best = vec![1usize; n];
        let mut prev = vec![usize::MAX; n];
        for (pos, &j) in order.iter().enumerate() {
            for &i in &order[..pos] {
                if self.less[i][j] && best[i] + 1 > best[j] {
                    best[j] = best[i] + 1;
                    prev[j] = i;
                }
            }
        }
        let Some(mut end) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
            return Vec::new();
        };
        let mut chain = vec![end];
        while prev[end] != usize::MAX {
            end = prev[end];
            chain.push(end);
        }
        chain.reverse();
        chain
    }

    pub fn height(&self) -> usize {
        self.longest_chain().len()
    }

    /// Linear extension with ties broken by smallest index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&j| !placed[j] && (0..n).all(|i| placed[i] || !self.less[i][j]))
                .expect("strict order has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Poset whose element `k` is this poset's element `perm[k]`.
    pub fn reindexed(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let less = (0..n)
            .map(|i| (0..n).map(|j| self.less[perm[i]][perm[j]]).collect())
            .collect();
        Poset { names, less }
    }

    pub fn with_names(&self, names: Vec<String>) -> Poset {
        assert_eq!(names.len(), self.len());
        Poset {
            names,
            less: self.less.clone(),
        }
    }

    fn signature(&self, i: usize) -> (usize, usize, usize, usize) {
        let n = self.len();
        let down = (0..n).filter(|&k| self.less[k][i]).count();
        let up = (0..n).filter(|&k| self.less[i][k]).count();
        let lower_covers = (0..n).filter(|&k| self.covers(k, i)).count();
        let upper_covers = (0..n).filter(|&k| self.covers(i, k)).count();
        (down, up, lower_covers, upper_covers)
    }

    /// Finds an isomorphism `self -> other` as a map `i -> sigma[i]`, by
    /// signature refinement and backtracking.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.relation_count() != other.relation_count() {
            return None;
        }
        let sig_a: Vec<_> = (0..n).map(|i| self.signature(i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| other.signature(i)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| sig_b[j] == sig_a[i]).collect())
            .collect();
        // Most constrained elements first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (candidates[i].len(), i));

        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &order, 0, &candidates, &mut sigma, &mut used) {
            Some(sigma)
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        sigma: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for &c in &candidates[i] {
            if used[c] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&k| {
                self.less[i][k] == other.less[c][sigma[k]] && self.less[k][i] == other.less[sigma[k]][c]
            });
            if !consistent {
                continue;
            }
            sigma[i] = c;
            used[c] = true;
            if self.extend_iso(other, order, depth + 1, candidates, sigma, used) {
                return true;
            }
            used[c] = false;
            sigma[i] = usize::MAX;
        }
        false
    }

    /// Checks that `sigma` is an isomorphism `self -> other`.
    pub fn is_isomorphism(&self, other: &Poset, sigma: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || sigma.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || seen[s] {
                return false;
            }
            seen[s] = true;
        }
        (0..n).all(|i| (0..n).all(|j| self.less[i][j] == other.less[sigma[i]][sigma[j]]))
    }
}

/// All posets on `n` elements up to isomorphism, each naturally labeled.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut reps: Vec<Poset> = Vec::new();
    // Natural labelings: every poset has one, so subsets of the upper
    // triangle that are transitive cover all isomorphism classes.
    let total = 1u64 << slots.len();
    for mask in 0..total {
        let mut less = vec![vec![false; n]; n];
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                less[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !less[i][j] || (0..n).all(|k| !less[j][k] || less[i][k]))
        });
        if !transitive {
            continue;
        }
        let p = Poset {
            names: (1..=n).map(|i| i.to_string()).collect(),
            less,
        };
        if !reps.iter().any(|r| r.isomorphism(&p).is_some()) {
            reps.push(p);
        }
    }
    reps
}
