//! The ordered Grothendieck group of QGr kQ: normalization of the incidence
//! matrix, the cyclic-row basis R, the unipotent matrix N with NR = RM, the
//! polynomial entries of N^z and the cone Δ(P).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};
use crate::extquiver::ext_quiver;
use crate::growth::require_finite;
use crate::linalg::{Rat, RatMatrix};
use crate::matrix::IntMatrix;
use crate::poset::{Poset, PosetDoc};
use crate::quiver::Quiver;

/// `M^{Ln}` (or `M^L`) in a topological vertex order.
#[derive(Debug, Clone)]
pub struct Normalization {
    /// Least common multiple of the simple-cycle lengths.
    pub l: u64,
    /// Second Veronese degree: the vertex count, or 1 when `M^L` already
    /// has rank `p` and an arrow wherever a path joins two cyclic vertices.
    pub n: u64,
    /// Position `k` of the normalized order holds original vertex `perm[k]`.
    pub perm: Vec<usize>,
    /// Normalized incidence matrix, indexed by normalized positions.
    pub matrix: IntMatrix,
    /// Positions `ν_1 < ... < ν_p` of the cyclic vertices.
    pub cyclic: Vec<usize>,
    pub vertex_names: Vec<String>,
}

impl Normalization {
    pub fn rank(&self) -> usize {
        self.cyclic.len()
    }

    /// The normalized quiver. Arrow counts can be very large; callers
    /// usually want [`Normalization::matrix`] instead.
    pub fn to_quiver(&self) -> Result<Quiver> {
        Quiver::from_incidence("normalized", self.vertex_names.clone(), &self.matrix)
    }

    /// Permutes an original-order vector into normalized order.
    pub fn to_normalized<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.perm.iter().map(|&p| x[p].clone()).collect()
    }

    pub fn to_original<T: Clone + Default>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); x.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            out[p] = x[k].clone();
        }
        out
    }
}

fn lcm_of(lengths: impl Iterator<Item = usize>) -> u64 {
    lengths.fold(1u64, |acc, l| acc.lcm(&(l as u64)))
}

/// Kahn's algorithm on the support of `m`, ignoring the diagonal, with ties
/// broken by smallest index.
fn topological_order(m: &IntMatrix) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.get(i, j).is_zero() {
                indeg[j] += 1;
            }
        }
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&j| !done[j] && indeg[j] == 0)?;
        done[next] = true;
        order.push(next);
        for j in 0..n {
            if j != next && !m.get(next, j).is_zero() {
                indeg[j] -= 1;
            }
        }
    }
    Some(order)
}

fn assertion(msg: impl Into<String>) -> QgrError {
    QgrError::AssertionFailure(msg.into())
}

pub fn normalize_for_k0(q: &Quiver) -> Result<Normalization> {
    let d = require_finite(q)?;
    let l = lcm_of(d.cycles.iter().map(|c| c.len()));
    let ml = q.incidence_matrix().pow(l);
    let perm = topological_order(&ml).ok_or_else(|| assertion("Veronese quiver has a cycle of length > 1"))?;
    let p: usize = d.cycles.iter().map(|c| c.len()).sum();
    let names: Vec<String> = perm.iter().map(|&i| q.vertex_name(i).to_string()).collect();
    // M^L is used as is when it already has rank p and arrows between
    // cyclic vertices wherever paths run; otherwise M^{Ln}.
    let base = ml.permuted(&perm);
    if let Ok(norm) = check_normalized(base.clone(), l, 1, &perm, &names, p) {
        return Ok(norm);
    }
    let n = q.vertex_count() as u64;
    check_normalized(base.pow(n.max(1)), l, n, &perm, &names, p)
}

fn check_normalized(
    matrix: IntMatrix,
    l: u64,
    n: u64,
    perm: &[usize],
    names: &[String],
    p: usize,
) -> Result<Normalization> {
    let size = matrix.rows();
    if !matrix.is_upper_triangular() {
        return Err(assertion("normalized matrix is not upper triangular"));
    }
    let mut cyclic = Vec::new();
    for k in 0..size {
        let x = matrix.get(k, k);
        if x.is_one() {
            cyclic.push(k);
        } else if !x.is_zero() {
            return Err(assertion(format!("diagonal entry {x} at position {k}")));
        }
    }
    if cyclic.len() != p {
        return Err(assertion(format!("{} loops for {p} cyclic vertices", cyclic.len())));
    }
    if matrix.rank() != p {
        return Err(assertion(format!("rank {} differs from {p}", matrix.rank())));
    }
    let support = Quiver::from_indices(
        "support",
        names.to_vec(),
        (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .filter(|&(i, j)| !matrix.get(i, j).is_zero())
            .map(|(i, j)| (format!("{i}_{j}"), i, j))
            .collect(),
    )?;
    let reach = support.reachability();
    for &i in &cyclic {
        for &j in &cyclic {
            if reach[i][j] != !matrix.get(i, j).is_zero() {
                return Err(assertion(format!("path without arrow between positions {i} and {j}")));
            }
        }
    }
    Ok(Normalization {
        l,
        n,
        perm: perm.to_vec(),
        matrix,
        cyclic,
        vertex_names: names.to_vec(),
    })
}

/// Rows of the normalized matrix at the cyclic positions, checked to be a
/// Z-basis of `Z^n M` via their leading ones.
pub fn cyclic_row_basis(norm: &Normalization) -> Result<IntMatrix> {
    let m = &norm.matrix;
    let rows: Vec<Vec<BigInt>> = norm.cyclic.iter().map(|&k| m.row(k).to_vec()).collect();
    let size = m.cols();
    let r = if rows.is_empty() {
        IntMatrix::zeros(0, size)
    } else {
        IntMatrix::from_rows(&rows)
    };
    for (i, &k) in norm.cyclic.iter().enumerate() {
        let lead = (0..size).find(|&c| !r.get(i, c).is_zero());
        if lead != Some(k) || !r.get(i, k).is_one() {
            return Err(assertion(format!("row {k} does not lead with 1 at column {k}")));
        }
    }
    if r.rank() != norm.cyclic.len() {
        return Err(assertion("cyclic rows are linearly dependent"));
    }
    Ok(r)
}

fn to_rat(m: &IntMatrix) -> RatMatrix {
    RatMatrix::from_rows(
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect(),
    )
}

/// Expresses the rows of `x` (a matrix over Z whose rows lie in the span of
/// R) in the R basis.
fn coordinates(r: &IntMatrix, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let rt = to_rat(&r.transpose());
    let b: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
    let sol = rt.solve(&b).ok_or_else(|| assertion("vector outside the row span of R"))?;
    sol.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(assertion(format!("non-integral coordinate {c}")))
            }
        })
        .collect()
}

/// N with NR = RM by exact linear solve, verified unipotent upper triangular.
pub fn solve_n(norm: &Normalization, r: &IntMatrix) -> Result<IntMatrix> {
    let p = r.rows();
    let rm = r * &norm.matrix;
    let mut n = IntMatrix::zeros(p, p);
    for i in 0..p {
        let c = coordinates(r, rm.row(i))?;
        for (j, x) in c.into_iter().enumerate() {
            n.set(i, j, x);
        }
    }
    if &n * r != rm {
        return Err(assertion("NR != RM"));
    }
    if n.unitriangular_inverse().is_none() {
        return Err(assertion("N is not unipotent upper triangular"));
    }
    Ok(n)
}

// a_{ij} and a_{ij}(2) restricted to cyclic positions.
fn cyclic_entries(norm: &Normalization) -> (IntMatrix, IntMatrix) {
    let m2 = &norm.matrix * &norm.matrix;
    let p = norm.rank();
    let mut a = IntMatrix::zeros(p, p);
    let mut a2 = IntMatrix::zeros(p, p);
    for (i, &vi) in norm.cyclic.iter().enumerate() {
        for (j, &vj) in norm.cyclic.iter().enumerate() {
            a.set(i, j, norm.matrix.get(vi, vj).clone());
            a2.set(i, j, m2.get(vi, vj).clone());
        }
    }
    (a, a2)
}

/// `b_{i,i+l} = a(2) - a - sum_{j<l} b_{i,i+j} a_{i+j,i+l}`.
pub fn n_recursive(norm: &Normalization) -> IntMatrix {
    let (a, a2) = cyclic_entries(norm);
    let p = norm.rank();
    let mut b = IntMatrix::identity(p);
    for i in 0..p {
        for l in 1..p - i {
            let mut v = a2.get(i, i + l) - a.get(i, i + l);
            for j in 1..l {
                v -= b.get(i, i + j) * a.get(i + j, i + l);
            }
            b.set(i, i + l, v);
        }
    }
    b
}

/// The closed formula: an alternating sum over increasing index chains
/// `0 < j_1 < ... < j_d < l`.
pub fn n_closed_form(norm: &Normalization) -> IntMatrix {
    let (a, a2) = cyclic_entries(norm);
    let p = norm.rank();
    let c = |i: usize, j: usize| a2.get(i, j) - a.get(i, j);
    let mut b = IntMatrix::identity(p);
    for i in 0..p {
        for l in 1..p - i {
            let mut total = c(i, i + l);
            // Subsets of {1..l-1} as bitmasks, taken in increasing order.
            for mask in 1u64..(1u64 << (l - 1)) {
                let js: Vec<usize> = (1..l).filter(|&j| mask >> (j - 1) & 1 == 1).collect();
                let mut term = c(i, i + js[0]);
                for w in js.windows(2) {
                    term *= a.get(i + w[0], i + w[1]);
                }
                term *= a.get(i + js[js.len() - 1], i + l);
                if js.len() % 2 == 1 {
                    total -= term;
                } else {
                    total += term;
                }
            }
            b.set(i, i + l, total);
        }
    }
    b
}

/// A polynomial in the binomial basis: `sum_l coeffs[l] * C(z, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPolynomial {
    pub coeffs: Vec<BigInt>,
}

/// `C(z, l)` for any integer `z`.
pub fn binomial(z: i64, l: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..l {
        num *= BigInt::from(z) - BigInt::from(k);
        den *= BigInt::from(k + 1);
    }
    num / den
}

impl BinomialPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, z: i64) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| c * binomial(z, l))
            .sum()
    }

    /// Leading coefficient sign, i.e. the sign for all large arguments.
    pub fn eventual_sign(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) if self.coeffs[d].is_positive() => 1,
            Some(_) => -1,
        }
    }
}

/// Entries of `N^z` as polynomials: `b_ij(z) = sum_l C(z, l) (U^l)_ij`, `U = N - I`.
pub fn n_power_polynomial(n: &IntMatrix) -> Vec<Vec<BinomialPolynomial>> {
    let p = n.rows();
    let mut u = n.clone();
    for i in 0..p {
        let d = u.get(i, i) - 1;
        u.set(i, i, d);
    }
    let mut powers = vec![IntMatrix::identity(p)];
    for l in 1..p.max(1) {
        let next = &powers[l - 1] * &u;
        powers.push(next);
    }
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| BinomialPolynomial {
                    coeffs: powers.iter().map(|m| m.get(i, j).clone()).collect(),
                })
                .collect()
        })
        .collect()
}

/// `N^z` for any integer `z`, by repeated multiplication or inversion.
pub fn exact_power(n: &IntMatrix, z: i64) -> Result<IntMatrix> {
    if z >= 0 {
        Ok(n.pow(z as u64))
    } else {
        let inv = n
            .unitriangular_inverse()
            .ok_or_else(|| assertion("N is not unipotent"))?;
        Ok(inv.pow(z.unsigned_abs()))
    }
}

/// Lemma-style membership: zero, or every minimal element of the support
/// has a positive coordinate.
pub fn delta_contains(p: &Poset, v: &[BigInt]) -> Result<bool> {
    if v.len() != p.len() {
        return Err(QgrError::DimensionMismatch(format!(
            "vector of length {} for a poset of {} elements",
            v.len(),
            p.len()
        )));
    }
    let support: Vec<bool> = v.iter().map(|x| !x.is_zero()).collect();
    Ok(p.minimal_in(&support).iter().all(|&j| v[j].is_positive()))
}

pub fn delta_contains_i64(p: &Poset, v: &[i64]) -> Result<bool> {
    delta_contains(p, &v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

/// Searches for `v = sum_{i in A} (n_i e_i + sum_{i < k} z_{ik} e_k)` with
/// `1 <= n_i <= bound` and `|z_{ik}| <= bound`, over all generator sets `A`.
/// Given `A` the coordinates decouple, so each is checked on its own.
pub fn delta_generator_oracle(p: &Poset, v: &[i64], bound: i64) -> Result<bool> {
    let k = p.len();
    if v.len() != k {
        return Err(QgrError::DimensionMismatch(format!(
            "vector of length {} for a poset of {k} elements",
            v.len()
        )));
    }
    if k > 20 {
        return Err(QgrError::SizeCap(format!("{k} elements")));
    }
    if v.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    'subsets: for mask in 1u32..(1u32 << k) {
        let active = |i: usize| mask >> i & 1 == 1;
        for j in 0..k {
            let below = (0..k).filter(|&i| active(i) && p.lt(i, j)).count() as i64;
            let own: Vec<i64> = if active(j) { (1..=bound).collect() } else { vec![0] };
            let ok = own.iter().any(|&nj| {
                let rest = v[j] - nj;
                if below == 0 {
                    rest == 0
                } else {
                    rest.abs() <= below * bound
                }
            });
            if !ok {
                continue 'subsets;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[derive(Debug, Clone)]
pub struct OrderedK0 {
    pub rank: usize,
    /// Δ(E_Q) on positions `1..=p` in normalized order, named by vertex.
    pub poset: Poset,
    pub order_unit: Vec<BigInt>,
    pub normalization: Normalization,
    pub r: IntMatrix,
    pub n: IntMatrix,
}

#[derive(Serialize)]
struct NormalizationDoc {
    #[serde(rename = "L")]
    l: u64,
    n: u64,
    perm: Vec<String>,
}

#[derive(Serialize)]
struct K0Doc {
    rank: usize,
    poset: PosetDoc,
    order_unit: Vec<serde_json::Value>,
    normalization: NormalizationDoc,
}

impl OrderedK0 {
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        delta_contains(&self.poset, v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(K0Doc {
            rank: self.rank,
            poset: self.poset.to_doc(),
            order_unit: self.order_unit.iter().map(crate::big_json).collect(),
            normalization: NormalizationDoc {
                l: self.normalization.l,
                n: self.normalization.n,
                perm: self.normalization.vertex_names.clone(),
            },
        })
        .expect("k0 report serializes")
    }

    /// `v R`, the image of `v` in `Z^n` in normalized vertex order.
    pub fn embed(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.r.left_mul_vec(v)
    }
}

pub fn k0(q: &Quiver) -> Result<OrderedK0> {
    let norm = normalize_for_k0(q)?;
    let r = cyclic_row_basis(&norm)?;
    let n = solve_n(&norm, &r)?;
    let p = norm.rank();
    // Order read off the normalized matrix, cross-checked with E_Q.
    let names: Vec<String> = norm.cyclic.iter().map(|&k| norm.vertex_names[k].clone()).collect();
    let less: Vec<Vec<bool>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| i != j && !norm.matrix.get(norm.cyclic[i], norm.cyclic[j]).is_zero())
                .collect()
        })
        .collect();
    let poset = Poset::new(names.clone(), less).map_err(|e| assertion(e.to_string()))?;
    let e = ext_quiver(q)?;
    for i in 0..p {
        for j in 0..p {
            let (ei, ej) = (
                e.names.iter().position(|x| *x == names[i]).expect("same cyclic vertices"),
                e.names.iter().position(|x| *x == names[j]).expect("same cyclic vertices"),
            );
            if poset.lt(i, j) != e.poset.lt(ei, ej) {
                return Err(assertion(format!(
                    "normalized order and E_Q disagree on {} < {}",
                    names[i], names[j]
                )));
            }
        }
    }
    Ok(OrderedK0 {
        rank: p,
        poset,
        order_unit: vec![BigInt::one(); p],
        normalization: norm,
        r,
        n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeVerdict {
    Member,
    Nonmember,
    /// Not produced by the direct-limit test, whose polynomial certificate
    /// always decides; part of the verdict type for callers and the CLI.
    Inconclusive,
}

/// Positivity of `x` (normalized order) in the direct limit of `Z^n` under
/// right multiplication by the normalized matrix.
pub fn positive_cone_oracle_normalized(k: &OrderedK0, x: &[BigInt], cap: usize) -> Result<ConeVerdict> {
    let m = &k.normalization.matrix;
    if x.len() != m.rows() {
        return Err(QgrError::DimensionMismatch(format!(
            "vector of length {} for {} vertices",
            x.len(),
            m.rows()
        )));
    }
    let mut cur = x.to_vec();
    for _ in 0..=cap {
        if cur.iter().all(|c| !c.is_negative()) {
            return Ok(ConeVerdict::Member);
        }
        cur = m.left_mul_vec(&cur);
    }
    // x M^{m+1} = w N^m R; coordinate k is sum_l C(m, l) (w U^l R)_k.
    let w = coordinates(&k.r, &m.left_mul_vec(x))?;
    let p = k.rank;
    let size = m.cols();
    let mut u = k.n.clone();
    for i in 0..p {
        let d = u.get(i, i) - 1;
        u.set(i, i, d);
    }
    let mut wl = w;
    let mut layers: Vec<Vec<BigInt>> = Vec::new();
    for _ in 0..p.max(1) {
        layers.push(if p == 0 { vec![BigInt::zero(); size] } else { k.r.left_mul_vec(&wl) });
        if p == 0 {
            break;
        }
        wl = u.left_mul_vec(&wl);
    }
    // Each coordinate is a polynomial in m; their eventual signs decide.
    let mut signs = (0..size).map(|coord| {
        BinomialPolynomial {
            coeffs: layers.iter().map(|row| row[coord].clone()).collect(),
        }
        .eventual_sign()
    });
    if signs.any(|s| s < 0) {
        Ok(ConeVerdict::Nonmember)
    } else {
        Ok(ConeVerdict::Member)
    }
}

/// As [`positive_cone_oracle_normalized`], for `x` in the quiver's original vertex order.
pub fn positive_cone_oracle(k: &OrderedK0, x: &[BigInt], cap: usize) -> Result<ConeVerdict> {
    if x.len() != k.normalization.perm.len() {
        return Err(QgrError::DimensionMismatch(format!(
            "vector of length {} for {} vertices",
            x.len(),
            k.normalization.perm.len()
        )));
    }
    positive_cone_oracle_normalized(k, &k.normalization.to_normalized(x), cap)
}

/// Small helper for reports: entries as `i64` when they fit.
pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

    fn q(s: &str) -> Quiver {
        parse_quiver(s).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn example_normalization() {
        let norm = normalize_for_k0(&q(EX8)).unwrap();
        assert_eq!(norm.l, 1);
        assert_eq!(norm.n, 1);
        assert_eq!(norm.matrix, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(norm.perm, [0, 1]);
    }

    #[test]
    fn cycles_collapse_to_loops() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let norm = normalize_for_k0(&tri).unwrap();
        assert_eq!(norm.l, 3);
        assert_eq!(norm.matrix, IntMatrix::identity(3));
        assert_eq!(cyclic_row_basis(&norm).unwrap(), IntMatrix::identity(3));

        let two_three = q("vertex a\nvertex b\nvertex c\nvertex d\nvertex e\n\
             arrow x: a -> b\narrow y: b -> a\narrow u: c -> d\narrow v: d -> e\narrow w: e -> c");
        let norm = normalize_for_k0(&two_three).unwrap();
        assert_eq!(norm.l, 6);
        assert_eq!(norm.matrix, IntMatrix::identity(5));
    }

    #[test]
    fn example_n_and_polynomials() {
        let k = k0(&q(EX8)).unwrap();
        assert_eq!(k.rank, 2);
        assert_eq!(k.n, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(n_recursive(&k.normalization), k.n);
        assert_eq!(n_closed_form(&k.normalization), k.n);
        let polys = n_power_polynomial(&k.n);
        assert_eq!(polys[0][1].coeffs, big(&[0, 1]));
        for z in -6..=6 {
            assert_eq!(polys[0][1].eval(z), BigInt::from(z));
        }
    }

    #[test]
    fn rank_deficient_veronese_takes_the_vertex_power() {
        // a -> z -> b through an acyclic vertex: M has rank 3 but p = 2.
        let g = q("vertex a\nvertex z\nvertex b\narrow p: a -> a\narrow f: a -> z\narrow g: z -> b\narrow q: b -> b");
        let norm = normalize_for_k0(&g).unwrap();
        assert_eq!(norm.n, 3);
        assert_eq!(norm.matrix.rank(), 2);
        let k = k0(&g).unwrap();
        assert_eq!(n_recursive(&k.normalization), k.n);
        assert_eq!(n_closed_form(&k.normalization), k.n);
    }

    #[test]
    fn delta_examples() {
        let chain = Poset::chain(2);
        assert!(delta_contains_i64(&chain, &[1, -5]).unwrap());
        assert!(delta_contains_i64(&chain, &[0, 3]).unwrap());
        assert!(!delta_contains_i64(&chain, &[-1, 100]).unwrap());
        assert!(delta_contains_i64(&Poset::antichain(3), &[0, 0, 0]).unwrap());
        assert!(delta_contains_i64(&chain, &[1]).is_err());

        assert!(delta_generator_oracle(&chain, &[1, -5], 10).unwrap());
        assert!(delta_generator_oracle(&Poset::antichain(2), &[2, 1], 3).unwrap());
        for b in [1, 5, 50] {
            assert!(!delta_generator_oracle(&chain, &[-1, 0], b).unwrap());
        }
    }

    #[test]
    fn cone_oracle_examples() {
        let k = k0(&q(EX8)).unwrap();
        let image = k.embed(&big(&[1, -5]));
        assert_eq!(image, big(&[1, -4]));
        assert_eq!(positive_cone_oracle(&k, &image, 50).unwrap(), ConeVerdict::Member);
        assert_eq!(positive_cone_oracle(&k, &big(&[0, 0]), 0).unwrap(), ConeVerdict::Member);
        let neg = k.embed(&big(&[-1, 100]));
        assert_eq!(positive_cone_oracle(&k, &neg, 50).unwrap(), ConeVerdict::Nonmember);
    }

    #[test]
    fn trivial_groups() {
        let k = k0(&q("vertex a\nvertex b\narrow f: a -> b")).unwrap();
        assert_eq!(k.rank, 0);
        let k = k0(&q("vertex a\narrow x: a -> a")).unwrap();
        assert_eq!(k.rank, 1);
        assert!(k.contains(&big(&[3])).unwrap());
        assert!(!k.contains(&big(&[-1])).unwrap());
        let json = k.to_json();
        assert_eq!(json["rank"], 1);
        assert_eq!(json["normalization"]["L"], 1);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(-3, 3), BigInt::from(-10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }
}
