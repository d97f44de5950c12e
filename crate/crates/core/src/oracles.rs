//! Brute-force reference implementations and a seeded random corpus.
//!
//! Nothing here is fast. Every cap is a hard error.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QgrError, Result};
use crate::growth::gk_dimension;
use crate::monomial::MonomialPresentation;
use crate::poset::Poset;
use crate::quiver::{Path, Quiver};

pub const PATH_CAP: usize = 200_000;
pub const WORD_CAP: usize = 2_000_000;
pub const ISO_CAP: usize = 8;
pub const CYCLE_CAP: usize = 100_000;

/// Every path of length at most `max_len`, keyed by `(source, target, length)`.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Result<BTreeMap<(usize, usize, usize), Vec<Path>>> {
    let mut out: BTreeMap<(usize, usize, usize), Vec<Path>> = BTreeMap::new();
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut total = layer.len();
    for len in 0..=max_len {
        for p in &layer {
            out.entry((p.source(), p.target(), len)).or_default().push(p.clone());
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            for a in q.out_arrows(p.target()) {
                next.push(p.extended(q, a).expect("arrow leaves the target"));
            }
        }
        total += next.len();
        if total > PATH_CAP {
            return Err(QgrError::ExplosionCap(PATH_CAP));
        }
        layer = next;
    }
    Ok(out)
}

/// Counts of words of each length `0..=max_len` with no relation as a
/// subword, by checking every word.
pub fn enumerate_normal_words(a: &MonomialPresentation, max_len: usize) -> Result<Vec<usize>> {
    let g = a.generators().len();
    let mut counts = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let total = g
            .checked_pow(len as u32)
            .filter(|&t| t <= WORD_CAP)
            .ok_or(QgrError::ExplosionCap(WORD_CAP))?;
        let mut word = vec![0usize; len];
        let mut count = 0;
        for mut code in 0..total {
            for slot in word.iter_mut().rev() {
                *slot = code % g;
                code /= g;
            }
            if a.relations().iter().all(|r| !word.windows(r.len()).any(|w| w == r.as_slice())) {
                count += 1;
            }
        }
        counts.push(count);
    }
    Ok(counts)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Tries every bijection. Returns `sigma` with `a[i] < a[j] <=> b[sigma i] < b[sigma j]`.
pub fn poset_iso_bruteforce(a: &Poset, b: &Poset) -> Result<Option<Vec<usize>>> {
    if a.len() > ISO_CAP || b.len() > ISO_CAP {
        return Err(QgrError::SizeCap(format!("brute-force isomorphism is limited to {ISO_CAP} elements")));
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let mut sigma: Vec<usize> = (0..a.len()).collect();
    loop {
        let ok = (0..a.len()).all(|i| (0..a.len()).all(|j| a.lt(i, j) == b.lt(sigma[i], sigma[j])));
        if ok {
            return Ok(Some(sigma));
        }
        if !next_permutation(&mut sigma) {
            return Ok(None);
        }
    }
}

/// All simple cycles as arrow lists, each starting at its smallest vertex.
pub fn simple_cycles(q: &Quiver) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for s in 0..q.vertex_count() {
        let mut on_path = vec![false; q.vertex_count()];
        let mut arrows = Vec::new();
        cycle_dfs(q, s, s, &mut on_path, &mut arrows, &mut out)?;
    }
    Ok(out)
}

fn cycle_dfs(
    q: &Quiver,
    start: usize,
    v: usize,
    on_path: &mut [bool],
    arrows: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    on_path[v] = true;
    for a in q.out_arrows(v) {
        let t = q.arrows()[a].tgt;
        if t == start {
            arrows.push(a);
            out.push(arrows.clone());
            arrows.pop();
            if out.len() > CYCLE_CAP {
                return Err(QgrError::ExplosionCap(CYCLE_CAP));
            }
        } else if t > start && !on_path[t] {
            arrows.push(a);
            cycle_dfs(q, start, t, on_path, arrows, out)?;
            arrows.pop();
        }
    }
    on_path[v] = false;
    Ok(())
}

/// Vertices lying on at least two distinct simple cycles.
pub fn doubly_cyclic_oracle(q: &Quiver) -> Result<Vec<bool>> {
    let mut hits = vec![0usize; q.vertex_count()];
    for c in simple_cycles(q)? {
        for a in c {
            hits[q.arrows()[a].src] += 1;
        }
    }
    Ok(hits.into_iter().map(|h| h >= 2).collect())
}

/// Lengths over which growth signatures are read.
pub const SIGNATURE_RANGE: (usize, usize) = (10, 40);
/// Bound on `max / min` of `r_n / n^(d-1)` for polynomial growth of degree `d`.
pub const POLY_RATIO_BOUND: f64 = 8.0;
/// Successive-ratio floor for exponential growth, applied over windows of
/// `GEOMETRIC_WINDOW` lengths to smooth out periodicity.
pub const GEOMETRIC_FLOOR: f64 = 1.1;
pub const GEOMETRIC_WINDOW: usize = 6;

fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// `r_n / n^(d-1)` stays within a bounded ratio over the signature range.
/// For `d = 0` the counts must vanish there.
pub fn polynomial_signature(r: &[BigUint], d: usize) -> bool {
    let (lo, hi) = SIGNATURE_RANGE;
    if d == 0 {
        return r[lo..=hi].iter().all(|x| x.bits() == 0);
    }
    let vals: Vec<f64> = (lo..=hi)
        .map(|n| to_f64(&r[n]) / (n as f64).powi(d as i32 - 1))
        .collect();
    let max = vals.iter().cloned().fold(f64::MIN, f64::max);
    let min = vals.iter().cloned().fold(f64::MAX, f64::min);
    min > 0.0 && max / min <= POLY_RATIO_BOUND
}

/// `r_{n+w} >= 1.1^w r_n` throughout the signature range.
pub fn geometric_signature(r: &[BigUint]) -> bool {
    let (lo, hi) = SIGNATURE_RANGE;
    let w = GEOMETRIC_WINDOW;
    let factor = GEOMETRIC_FLOOR.powi(w as i32);
    (lo..=hi - w).all(|n| to_f64(&r[n + w]) >= factor * to_f64(&r[n]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub seed: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_vertices: 6,
            max_arrows: 10,
            seed: 20_240_917,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub params: CorpusParams,
    pub quivers: Vec<Quiver>,
    pub finite: Vec<usize>,
    pub infinite: Vec<usize>,
}

impl Corpus {
    fn from_quivers(params: CorpusParams, quivers: Vec<Quiver>) -> Corpus {
        let (finite, infinite): (Vec<usize>, Vec<usize>) =
            (0..quivers.len()).partition(|&i| gk_dimension(&quivers[i]).finite);
        Corpus {
            params,
            quivers,
            finite,
            infinite,
        }
    }

    /// Quivers of finite GK-dimension only.
    pub fn finite_gk(params: CorpusParams, count: usize) -> Corpus {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let quivers = (0..count)
            .map(|k| random_finite_quiver(&mut rng, &params, &format!("f{k}")))
            .collect();
        Corpus::from_quivers(params, quivers)
    }

    /// Half structured finite-GK quivers, half uniformly random arrows.
    pub fn mixed(params: CorpusParams, count: usize) -> Corpus {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x9e37_79b9_7f4a_7c15);
        let quivers = (0..count)
            .map(|k| {
                let name = format!("m{k}");
                if rng.gen_bool(0.5) {
                    random_finite_quiver(&mut rng, &params, &name)
                } else {
                    random_quiver(&mut rng, &params, &name)
                }
            })
            .collect();
        Corpus::from_quivers(params, quivers)
    }

    pub fn finite_quivers(&self) -> impl Iterator<Item = &Quiver> {
        self.finite.iter().map(|&i| &self.quivers[i])
    }

    pub fn infinite_quivers(&self) -> impl Iterator<Item = &Quiver> {
        self.infinite.iter().map(|&i| &self.quivers[i])
    }
}

/// Shuffles declaration order of vertices and arrows and builds the quiver.
fn assemble(rng: &mut ChaCha8Rng, name: &str, n: usize, mut arrows: Vec<(usize, usize)>) -> Quiver {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{}", perm[i])).collect();
    arrows.shuffle(rng);
    let arrows = arrows
        .into_iter()
        .enumerate()
        .map(|(k, (s, t))| (format!("e{k}"), s, t))
        .collect();
    Quiver::from_indices(name, vertices, arrows).expect("generated quiver is well formed")
}

/// Disjoint simple cycles and single vertices in a random linear order, with
/// extra arrows only from earlier blocks to later ones.
pub fn random_finite_quiver(rng: &mut ChaCha8Rng, params: &CorpusParams, name: &str) -> Quiver {
    let n = rng.gen_range(1..=params.max_vertices);
    let mut blocks: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut next = 0;
    let mut budget = params.max_arrows;
    while next < n {
        let remaining = n - next;
        let len = rng.gen_range(1..=remaining);
        let cyclic = rng.gen_bool(0.6) && len <= budget;
        let len = if cyclic { len } else { 1 };
        if cyclic {
            budget -= len;
        }
        blocks.push(((next..next + len).collect(), cyclic));
        next += len;
    }
    let mut arrows = Vec::new();
    for (vs, cyclic) in &blocks {
        if *cyclic {
            for k in 0..vs.len() {
                arrows.push((vs[k], vs[(k + 1) % vs.len()]));
            }
        }
    }
    if blocks.len() > 1 && budget > 0 {
        let extra = rng.gen_range(0..=budget.min(2 * blocks.len()));
        for _ in 0..extra {
            let i = rng.gen_range(0..blocks.len() - 1);
            let j = rng.gen_range(i + 1..blocks.len());
            let s = *blocks[i].0.choose(rng).expect("nonempty block");
            let t = *blocks[j].0.choose(rng).expect("nonempty block");
            arrows.push((s, t));
        }
    }
    assemble(rng, name, n, arrows)
}

/// Uniformly random arrows, loops and parallel arrows allowed.
pub fn random_quiver(rng: &mut ChaCha8Rng, params: &CorpusParams, name: &str) -> Quiver {
    let n = rng.gen_range(1..=params.max_vertices);
    let m = rng.gen_range(0..=params.max_arrows);
    let arrows = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    assemble(rng, name, n, arrows)
}
