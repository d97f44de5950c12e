//! Truncated graded representations: a graded representation of a quiver
//! known in degrees `0..=D`. Cyclic point modules, truncated projectives,
//! torsion certificates, graded Hom spaces and the extensions N(ν).

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};
use crate::growth::{require_finite, SimpleCycle};
use crate::linalg::{format_rat, parse_rat, rat, Rat, RatMatrix};
use crate::quiver::{quiver_json_value, Quiver};

pub const DEFAULT_CAP: usize = 15;

// Limit on the basis size of a truncated projective.
const PROJECTIVE_BASIS_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedGradedRep {
    quiver: Quiver,
    cap: usize,
    dims: Vec<Vec<usize>>,
    labels: Vec<Vec<Vec<String>>>,
    // maps[a][i]: (t(a), i + 1) x (s(a), i), acting on column vectors
    maps: Vec<Vec<RatMatrix>>,
}

impl TruncatedGradedRep {
    /// Validates the shapes of all action matrices. Labels default to `v.i.k`.
    pub fn new(
        quiver: Quiver,
        cap: usize,
        dims: Vec<Vec<usize>>,
        labels: Option<Vec<Vec<Vec<String>>>>,
        maps: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        let nv = quiver.vertex_count();
        if dims.len() != cap + 1 || dims.iter().any(|d| d.len() != nv) {
            return Err(QgrError::DimensionMismatch(format!(
                "expected {} degrees of {nv} vertex dimensions",
                cap + 1
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(QgrError::DimensionMismatch(format!(
                "{} arrow actions for {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            if maps[a].len() != cap {
                return Err(QgrError::DimensionMismatch(format!(
                    "arrow {} has {} degree maps, expected {cap}",
                    arrow.id,
                    maps[a].len()
                )));
            }
            for (i, m) in maps[a].iter().enumerate() {
                let want = (dims[i + 1][arrow.tgt], dims[i][arrow.src]);
                if (m.rows(), m.cols()) != want {
                    return Err(QgrError::DimensionMismatch(format!(
                        "arrow {} degree {i}: {}x{} matrix, expected {}x{}",
                        arrow.id,
                        m.rows(),
                        m.cols(),
                        want.0,
                        want.1
                    )));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                let ok = l.len() == cap + 1
                    && l.iter()
                        .zip(&dims)
                        .all(|(ld, dd)| ld.len() == nv && ld.iter().zip(dd).all(|(x, &d)| x.len() == d));
                if !ok {
                    return Err(QgrError::DimensionMismatch("basis labels do not match dimensions".into()));
                }
                l
            }
            None => dims
                .iter()
                .enumerate()
                .map(|(i, dd)| {
                    dd.iter()
                        .enumerate()
                        .map(|(v, &d)| (0..d).map(|k| format!("{}.{i}.{k}", quiver.vertex_name(v))).collect())
                        .collect()
                })
                .collect(),
        };
        Ok(TruncatedGradedRep {
            quiver,
            cap,
            dims,
            labels,
            maps,
        })
    }

    pub fn zero(quiver: &Quiver, cap: usize) -> Self {
        let nv = quiver.vertex_count();
        let maps = (0..quiver.arrow_count())
            .map(|_| (0..cap).map(|_| RatMatrix::zeros(0, 0)).collect())
            .collect();
        TruncatedGradedRep::new(quiver.clone(), cap, vec![vec![0; nv]; cap + 1], None, maps)
            .expect("zero representation is well formed")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self, degree: usize, v: usize) -> usize {
        self.dims[degree][v]
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn total_dim(&self, degree: usize) -> usize {
        self.dims[degree].iter().sum()
    }

    pub fn labels(&self, degree: usize, v: usize) -> &[String] {
        &self.labels[degree][v]
    }

    pub fn action(&self, arrow: usize, degree: usize) -> &RatMatrix {
        &self.maps[arrow][degree]
    }

    /// `M(s)` truncated to nonnegative degrees: degree `i` holds `M_{i+s}`.
    pub fn shift(&self, s: usize) -> Result<Self> {
        if s > self.cap {
            return Err(QgrError::DimensionMismatch(format!(
                "shift {s} exceeds cap {}",
                self.cap
            )));
        }
        TruncatedGradedRep::new(
            self.quiver.clone(),
            self.cap - s,
            self.dims[s..].to_vec(),
            Some(self.labels[s..].to_vec()),
            self.maps.iter().map(|m| m[s..].to_vec()).collect(),
        )
    }

    /// Forgets degrees above `cap`.
    pub fn truncate(&self, cap: usize) -> Result<Self> {
        if cap > self.cap {
            return Err(QgrError::DimensionMismatch(format!(
                "cannot extend cap {} to {cap}",
                self.cap
            )));
        }
        TruncatedGradedRep::new(
            self.quiver.clone(),
            cap,
            self.dims[..=cap].to_vec(),
            Some(self.labels[..=cap].to_vec()),
            self.maps.iter().map(|m| m[..cap].to_vec()).collect(),
        )
    }

    /// The vertex carrying each degree, if every degree is one-dimensional.
    pub fn support_sequence(&self) -> Option<Vec<usize>> {
        self.dims
            .iter()
            .map(|d| {
                if d.iter().sum::<usize>() != 1 {
                    return None;
                }
                d.iter().position(|&x| x == 1)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = RepDoc {
            quiver: quiver_json_value(&self.quiver),
            cap: self.cap,
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            maps: self
                .quiver
                .arrows()
                .iter()
                .enumerate()
                .flat_map(|(a, arrow)| {
                    self.maps[a].iter().enumerate().filter(|(_, m)| !m.is_zero()).map(move |(i, m)| MapDoc {
                        arrow: arrow.id.clone(),
                        degree: i,
                        matrix: (0..m.rows())
                            .map(|r| m.row(r).iter().map(format_rat).collect())
                            .collect(),
                    })
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("representation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RepDoc = serde_json::from_str(text).map_err(|e| QgrError::Json(e.to_string()))?;
        let quiver = crate::quiver::parse_quiver_json(&doc.quiver.to_string())?;
        if doc.dims.len() != doc.cap + 1 || doc.dims.iter().any(|d| d.len() != quiver.vertex_count()) {
            return Err(QgrError::DimensionMismatch("dims do not match cap and vertices".into()));
        }
        let mut maps: Vec<Vec<RatMatrix>> = quiver
            .arrows()
            .iter()
            .map(|a| {
                (0..doc.cap)
                    .map(|i| RatMatrix::zeros(doc.dims[i + 1][a.tgt], doc.dims[i][a.src]))
                    .collect()
            })
            .collect();
        for m in doc.maps {
            let a = quiver.arrow(&m.arrow)?;
            if m.degree >= doc.cap {
                return Err(QgrError::DimensionMismatch(format!("degree {} beyond cap", m.degree)));
            }
            let rows = m
                .matrix
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rat(s).ok_or_else(|| QgrError::Json(format!("bad rational `{s}`"))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let cols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != cols) {
                return Err(QgrError::DimensionMismatch("ragged matrix".into()));
            }
            let mat = if rows.is_empty() {
                RatMatrix::zeros(0, 0)
            } else {
                RatMatrix::from_rows(rows)
            };
            maps[a][m.degree] = mat;
        }
        let labels = if doc.labels.is_empty() { None } else { Some(doc.labels) };
        TruncatedGradedRep::new(quiver, doc.cap, doc.dims, labels, maps)
    }
}

#[derive(Serialize, Deserialize)]
struct MapDoc {
    arrow: String,
    degree: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    quiver: serde_json::Value,
    cap: usize,
    dims: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    maps: Vec<MapDoc>,
}

fn one_by_one(x: Rat) -> RatMatrix {
    RatMatrix::from_rows(vec![vec![x]])
}

/// Builds a representation with one-dimensional components along a vertex
/// sequence; `acts(a, i)` gives the scalar by which arrow `a` maps degree
/// `i` to degree `i + 1` (only consulted when the endpoints match).
fn line_rep(
    q: &Quiver,
    support: &[usize],
    acts: impl Fn(usize, usize) -> Rat,
    labels: impl Fn(usize) -> String,
) -> TruncatedGradedRep {
    let cap = support.len() - 1;
    let nv = q.vertex_count();
    let mut dims = vec![vec![0; nv]; cap + 1];
    let mut names = vec![vec![Vec::new(); nv]; cap + 1];
    for (i, &v) in support.iter().enumerate() {
        dims[i][v] = 1;
        names[i][v].push(labels(i));
    }
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            (0..cap)
                .map(|i| {
                    let (r, c) = (dims[i + 1][arrow.tgt], dims[i][arrow.src]);
                    if r == 1 && c == 1 {
                        one_by_one(acts(a, i))
                    } else {
                        RatMatrix::zeros(r, c)
                    }
                })
                .collect()
        })
        .collect();
    TruncatedGradedRep::new(q.clone(), cap, dims, Some(names), maps).expect("line representation is well formed")
}

fn cycle_through(q: &Quiver, v: usize) -> Result<SimpleCycle> {
    let d = require_finite(q)?;
    d.cycle_of(v)
        .cloned()
        .ok_or_else(|| QgrError::NotCyclicVertex(q.vertex_name(v).to_string()))
}

/// O_v: degree `j` is spanned by the path of length `j` from `v` around
/// its cycle; only the next cycle arrow acts, by 1.
pub fn cyclic_point_module(q: &Quiver, v: usize, cap: usize) -> Result<TruncatedGradedRep> {
    let cycle = cycle_through(q, v)?;
    let n = cycle.len();
    let start = cycle.position(v).expect("v lies on its cycle");
    let support: Vec<usize> = (0..=cap).map(|j| cycle.vertices[(start + j) % n]).collect();
    let cycle_arrows: Vec<usize> = (0..cap).map(|j| cycle.arrows[(start + j) % n]).collect();
    Ok(line_rep(
        q,
        &support,
        |a, i| if cycle_arrows[i] == a { Rat::one() } else { Rat::zero() },
        |i| format!("{}p^{i}", q.vertex_name(v)),
    ))
}

/// `e_v kQ` truncated at degree `cap`: basis of degree `j` = paths of
/// length `j` from `v`, arrows act by right concatenation.
pub fn truncate_projective(q: &Quiver, v: usize, cap: usize) -> Result<TruncatedGradedRep> {
    let nv = q.vertex_count();
    // paths[i][w] = arrow sequences of length i from v ending at w
    let mut paths: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); nv]];
    paths[0][v].push(Vec::new());
    let mut total = 1usize;
    for i in 0..cap {
        let mut next = vec![Vec::new(); nv];
        for (w, ps) in paths[i].iter().enumerate() {
            for p in ps {
                for a in q.out_arrows(w) {
                    let mut ext = p.clone();
                    ext.push(a);
                    next[q.arrows()[a].tgt].push(ext);
                    total += 1;
                    if total > PROJECTIVE_BASIS_CAP {
                        return Err(QgrError::ExplosionCap(PROJECTIVE_BASIS_CAP));
                    }
                }
            }
        }
        paths.push(next);
    }
    let dims: Vec<Vec<usize>> = paths.iter().map(|d| d.iter().map(Vec::len).collect()).collect();
    let labels = paths
        .iter()
        .map(|d| {
            d.iter()
                .map(|ps| {
                    ps.iter()
                        .map(|p| {
                            let mut s = format!("e_{}", q.vertex_name(v));
                            for &a in p {
                                s.push('.');
                                s.push_str(&q.arrows()[a].id);
                            }
                            s
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            (0..cap)
                .map(|i| {
                    let src = &paths[i][arrow.src];
                    let tgt = &paths[i + 1][arrow.tgt];
                    let mut m = RatMatrix::zeros(tgt.len(), src.len());
                    for (c, p) in src.iter().enumerate() {
                        let mut ext = p.clone();
                        ext.push(a);
                        let r = tgt.iter().position(|t| *t == ext).expect("extended path is listed");
                        m.set(r, c, Rat::one());
                    }
                    m
                })
                .collect()
        })
        .collect();
    TruncatedGradedRep::new(q.clone(), cap, dims, Some(labels), maps)
}

/// Per-degree dimensions of elements certified torsion: `x` in degree `i`
/// is counted when every path of length `D - i` kills it. A lower bound,
/// since degrees at the cap cannot be certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub dims: Vec<usize>,
    pub lower_bound: bool,
}

pub fn torsion_elements(m: &TruncatedGradedRep) -> TorsionCertificate {
    let q = m.quiver();
    let nv = q.vertex_count();
    let cap = m.cap();
    // constraint[v]: rows whose common kernel is the torsion part at degree i
    let mut constraint: Vec<RatMatrix> = (0..nv).map(|v| RatMatrix::identity(m.dim(cap, v))).collect();
    let mut dims = vec![0; cap + 1];
    for i in (0..cap).rev() {
        let mut next = Vec::with_capacity(nv);
        for v in 0..nv {
            let d = m.dim(i, v);
            let mut stacked = RatMatrix::zeros(0, d);
            for a in q.out_arrows(v) {
                let t = q.arrows()[a].tgt;
                if constraint[t].rows() == 0 {
                    continue;
                }
                stacked = stacked.vstack(&constraint[t].mul(m.action(a, i)));
            }
            let basis = stacked.row_basis();
            dims[i] += d - basis.rows();
            next.push(if basis.rows() == 0 { RatMatrix::zeros(0, d) } else { basis });
        }
        constraint = next;
    }
    TorsionCertificate { dims, lower_bound: true }
}

/// A degree-0 graded map defined on degrees `start..=D`: `blocks[i - start][v]`
/// is a `dim N_{i,v} x dim M_{i,v}` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HomMap {
    pub start: usize,
    pub blocks: Vec<Vec<RatMatrix>>,
}

impl HomMap {
    pub fn block(&self, degree: usize, v: usize) -> &RatMatrix {
        &self.blocks[degree - self.start][v]
    }

    fn combine(maps: &[HomMap], coeffs: &[Rat]) -> HomMap {
        let first = &maps[0];
        let blocks = first
            .blocks
            .iter()
            .enumerate()
            .map(|(di, row)| {
                row.iter()
                    .enumerate()
                    .map(|(v, b)| {
                        let mut acc = RatMatrix::zeros(b.rows(), b.cols());
                        for (m, c) in maps.iter().zip(coeffs) {
                            let s = m.blocks[di][v].scale(c);
                            for r in 0..b.rows() {
                                for k in 0..b.cols() {
                                    let x = acc.get(r, k) + s.get(r, k);
                                    acc.set(r, k, x);
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        HomMap {
            start: first.start,
            blocks,
        }
    }

    /// Every block square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().flatten().all(|b| b.rows() == b.cols() && (b.rows() == 0 || b.is_invertible()))
    }
}

fn check_compatible(m: &TruncatedGradedRep, n: &TruncatedGradedRep, start: usize) -> Result<()> {
    if m.quiver().incidence_matrix() != n.quiver().incidence_matrix()
        || m.quiver().arrow_count() != n.quiver().arrow_count()
    {
        return Err(QgrError::DimensionMismatch("representations of different quivers".into()));
    }
    if m.cap() != n.cap() {
        return Err(QgrError::DimensionMismatch(format!(
            "caps differ: {} vs {}",
            m.cap(),
            n.cap()
        )));
    }
    if start > m.cap() {
        return Err(QgrError::DimensionMismatch(format!(
            "start degree {start} beyond cap {}",
            m.cap()
        )));
    }
    Ok(())
}

/// Basis of graded maps `M_{>=start} -> N` on degrees `start..=D`: solutions
/// of `phi_{t(a), i+1} M_a = N_a phi_{s(a), i}` for every arrow and degree.
pub fn hom_space(m: &TruncatedGradedRep, n: &TruncatedGradedRep, start: usize) -> Result<Vec<HomMap>> {
    check_compatible(m, n, start)?;
    let q = m.quiver();
    let nv = q.vertex_count();
    let cap = m.cap();
    // Variable offsets for each (degree, vertex) block, row-major.
    let mut offset = vec![vec![0usize; nv]; cap + 1];
    let mut nvars = 0;
    for i in start..=cap {
        for v in 0..nv {
            offset[i][v] = nvars;
            nvars += n.dim(i, v) * m.dim(i, v);
        }
    }
    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.src, arrow.tgt);
        for i in start..cap {
            let na = n.action(a, i);
            let ma = m.action(a, i);
            let (ms, mt) = (m.dim(i, s), m.dim(i + 1, t));
            let (ns, nt) = (n.dim(i, s), n.dim(i + 1, t));
            for r in 0..nt {
                for c in 0..ms {
                    let mut eq = Vec::new();
                    for k in 0..ns {
                        let x = na.get(r, k);
                        if !x.is_zero() {
                            eq.push((offset[i][s] + k * ms + c, x.clone()));
                        }
                    }
                    for k in 0..mt {
                        let x = ma.get(k, c);
                        if !x.is_zero() {
                            eq.push((offset[i + 1][t] + r * mt + k, -x.clone()));
                        }
                    }
                    if !eq.is_empty() {
                        rows.push(eq);
                    }
                }
            }
        }
    }
    let mut system = RatMatrix::zeros(rows.len(), nvars);
    for (r, eq) in rows.iter().enumerate() {
        for (c, x) in eq {
            let v = system.get(r, *c) + x;
            system.set(r, *c, v);
        }
    }
    let basis = if nvars == 0 { Vec::new() } else { system.nullspace() };
    Ok(basis
        .into_iter()
        .map(|x| {
            let blocks = (start..=cap)
                .map(|i| {
                    (0..nv)
                        .map(|v| {
                            let (rr, cc) = (n.dim(i, v), m.dim(i, v));
                            let mut b = RatMatrix::zeros(rr, cc);
                            for r in 0..rr {
                                for c in 0..cc {
                                    b.set(r, c, x[offset[i][v] + r * cc + c].clone());
                                }
                            }
                            b
                        })
                        .collect()
                })
                .collect();
            HomMap { start, blocks }
        })
        .collect())
}

pub fn hom_dim(m: &TruncatedGradedRep, n: &TruncatedGradedRep, start: usize) -> Result<usize> {
    Ok(hom_space(m, n, start)?.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableHom {
    pub dim: usize,
    pub stabilized: bool,
    /// `hom_dim` for start degrees `0..=D-2`.
    pub sequence: Vec<usize>,
}

/// Hom in QGr approximated by tails: `hom_dim` for `n = 0..=D-2`, reported
/// stabilized when the last three values agree.
pub fn qgr_hom_dim(m: &TruncatedGradedRep, n: &TruncatedGradedRep) -> Result<StableHom> {
    check_compatible(m, n, 0)?;
    let cap = m.cap();
    if cap < 2 {
        return Err(QgrError::DimensionMismatch("cap must be at least 2".into()));
    }
    let sequence = (0..=cap - 2).map(|s| hom_dim(m, n, s)).collect::<Result<Vec<_>>>()?;
    let k = sequence.len();
    let stabilized = k >= 3 && sequence[k - 1] == sequence[k - 2] && sequence[k - 2] == sequence[k - 3];
    Ok(StableHom {
        dim: sequence[k - 1],
        stabilized,
        sequence,
    })
}

/// An invertible graded map `M -> N` on all degrees, if a generic
/// combination of the Hom basis yields one.
pub fn find_isomorphism(m: &TruncatedGradedRep, n: &TruncatedGradedRep) -> Result<Option<HomMap>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let basis = hom_space(m, n, 0)?;
    if basis.is_empty() {
        return Ok(if m.dims().iter().flatten().all(|&d| d == 0) {
            Some(HomMap {
                start: 0,
                blocks: m.dims().iter().map(|d| d.iter().map(|_| RatMatrix::zeros(0, 0)).collect()).collect(),
            })
        } else {
            None
        });
    }
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    for trial in 0..4i64 {
        let coeffs: Vec<Rat> = (0..basis.len())
            .map(|k| rat(PRIMES[k % PRIMES.len()].pow(trial as u32 + 1) + k as i64))
            .collect();
        let phi = HomMap::combine(&basis, &coeffs);
        if phi.is_isomorphism() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// N(ν) over a quiver where `v` and `w` carry loops and `r: v -> w`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub rep: TruncatedGradedRep,
    pub v: usize,
    pub w: usize,
    pub r: usize,
    pub nu: Vec<Rat>,
}

fn unique_loop(q: &Quiver, v: usize) -> Result<usize> {
    let loops: Vec<usize> = q.out_arrows(v).filter(|&a| q.arrows()[a].is_loop()).collect();
    match loops.as_slice() {
        [a] => Ok(*a),
        [] => Err(QgrError::NotCyclicVertex(format!("{} carries no loop", q.vertex_name(v)))),
        _ => Err(QgrError::NotFiniteGk(vec![q.vertex_name(v).to_string()])),
    }
}

/// Two lanes `k[t]` at `v` and `w`; loops act by 1, `r` sends lane `v` in
/// degree `i` to `ν_i` times lane `w` in degree `i + 1`, other arrows act by 0.
pub fn build_extension(q: &Quiver, v: usize, w: usize, r: usize, nu: &[Rat], cap: usize) -> Result<Extension> {
    if v == w {
        return Err(QgrError::DimensionMismatch("extension lanes must sit at distinct vertices".into()));
    }
    let arrow = q
        .arrows()
        .get(r)
        .ok_or_else(|| QgrError::UnknownArrow(r.to_string()))?;
    if arrow.src != v || arrow.tgt != w {
        return Err(QgrError::DimensionMismatch(format!(
            "arrow {} does not run {} -> {}",
            arrow.id,
            q.vertex_name(v),
            q.vertex_name(w)
        )));
    }
    if nu.len() < cap {
        return Err(QgrError::DimensionMismatch(format!(
            "{} coefficients for cap {cap}",
            nu.len()
        )));
    }
    let p = unique_loop(q, v)?;
    let lq = unique_loop(q, w)?;
    let nv = q.vertex_count();
    let mut dims = vec![vec![0; nv]; cap + 1];
    let mut labels = vec![vec![Vec::new(); nv]; cap + 1];
    for i in 0..=cap {
        dims[i][v] = 1;
        dims[i][w] = 1;
        labels[i][v].push(format!("{}t^{i}", q.vertex_name(v)));
        labels[i][w].push(format!("{}t^{i}", q.vertex_name(w)));
    }
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            (0..cap)
                .map(|i| {
                    let (rr, cc) = (dims[i + 1][ar.tgt], dims[i][ar.src]);
                    if a == p || a == lq {
                        one_by_one(Rat::one())
                    } else if a == r {
                        one_by_one(nu[i].clone())
                    } else {
                        RatMatrix::zeros(rr, cc)
                    }
                })
                .collect()
        })
        .collect();
    let rep = TruncatedGradedRep::new(q.clone(), cap, dims, Some(labels), maps)?;
    Ok(Extension {
        rep,
        v,
        w,
        r,
        nu: nu[..cap].to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SplitVerdict {
    /// A section `(O_v)_{>=n} -> N(ν)` exists.
    Split { witness: usize },
    /// End stabilized at dimension 1: no nontrivial idempotents.
    Nonsplit { end_dims: Vec<usize> },
    Inconclusive { end_dims: Vec<usize> },
}

/// Section search for `n <= D - 3`, then the End-dimension certificate.
/// A section found only in the last two degrees is not accepted.
pub fn is_split_extension(e: &Extension) -> Result<SplitVerdict> {
    let cap = e.rep.cap();
    if cap < 4 {
        return Err(QgrError::DimensionMismatch("extension test needs cap at least 4".into()));
    }
    let ov = cyclic_point_module(e.rep.quiver(), e.v, cap)?;
    for start in 0..=cap - 3 {
        let basis = hom_space(&ov, &e.rep, start)?;
        if basis.is_empty() {
            continue;
        }
        // Projection onto the v lane: need sum_k c_k phi_k[v, i] = 1 for all i.
        let rows = cap + 1 - start;
        let mut sys = RatMatrix::zeros(rows, basis.len());
        for (k, phi) in basis.iter().enumerate() {
            for i in start..=cap {
                sys.set(i - start, k, phi.block(i, e.v).get(0, 0).clone());
            }
        }
        if sys.solve(&vec![Rat::one(); rows]).is_some() {
            return Ok(SplitVerdict::Split { witness: start });
        }
    }
    let end = qgr_hom_dim(&e.rep, &e.rep)?;
    if end.stabilized && end.dim == 1 {
        Ok(SplitVerdict::Nonsplit { end_dims: end.sequence })
    } else {
        Ok(SplitVerdict::Inconclusive { end_dims: end.sequence })
    }
}

/// Veronese set-up for N(ν): the least `l` with a path `v -> w` of length
/// `l * n_v * n_w`, the Veronese of that degree, and its first arrow `v -> w`.
#[derive(Debug, Clone)]
pub struct ExtensionSetup {
    pub quiver: Quiver,
    pub degree: u64,
    pub r: usize,
}

pub fn normalize_for_extension(q: &Quiver, v: usize, w: usize) -> Result<Option<ExtensionSetup>> {
    let nv = cycle_through(q, v)?.len();
    let nw = cycle_through(q, w)?.len();
    if v == w || !crate::extquiver::has_path_multiple(q, v, w, nv * nw) {
        return Ok(None);
    }
    let k = (nv * nw) as u64;
    let m = q.incidence_matrix();
    let step = m.pow(k);
    let mut power = step.clone();
    // A witnessing length is at most k times the number of (vertex, residue) states.
    let bound = q.vertex_count() as u64 * k + 1;
    for l in 1..=bound {
        if !power.get(v, w).is_zero() {
            let degree = l * k;
            let vq = q.veronese(degree)?;
            let r = vq
                .out_arrows(v)
                .find(|&a| vq.arrows()[a].tgt == w)
                .expect("nonzero entry yields an arrow");
            return Ok(Some(ExtensionSetup { quiver: vq, degree, r }));
        }
        power = &power * &step;
    }
    Err(QgrError::AssertionFailure("path multiple found but no Veronese arrow".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointModuleDescriptor {
    /// Vertex `w` with `π*M ≅ π*O_w`.
    pub vertex: String,
    pub cycle_length: usize,
    /// The repeating vertex sequence of O_w, one period.
    pub period: Vec<String>,
    /// First degree from which the support runs around the cycle.
    pub entry_degree: usize,
}

/// Reads off the cycle a point module eventually runs around, and the
/// cyclic vertex whose point module agrees with it in high degrees.
pub fn classify_point_module(m: &TruncatedGradedRep) -> Result<PointModuleDescriptor> {
    let q = m.quiver();
    let cap = m.cap();
    let support = m
        .support_sequence()
        .ok_or_else(|| QgrError::NotEventuallyPeriodic("some degree is not one-dimensional".into()))?;
    if cap < 2 * q.vertex_count() + 2 {
        return Err(QgrError::NotEventuallyPeriodic(format!(
            "cap {cap} below 2|Q0| + 2 = {}",
            2 * q.vertex_count() + 2
        )));
    }
    let d = require_finite(q)?;
    let last = support[cap];
    let cycle = d.cycle_of(last).ok_or_else(|| {
        QgrError::NotEventuallyPeriodic(format!("degree {cap} sits at acyclic vertex {}", q.vertex_name(last)))
    })?;
    let n = cycle.len();
    // Walk back while the support follows the cycle arrow with a nonzero action.
    let mut entry = cap;
    while entry > 0 {
        let prev = support[entry - 1];
        let Some(a) = cycle.arrow_from(prev) else { break };
        if q.arrows()[a].tgt != support[entry] || m.action(a, entry - 1).get(0, 0).is_zero() {
            break;
        }
        entry -= 1;
    }
    if cap - entry < n {
        return Err(QgrError::NotEventuallyPeriodic(format!(
            "support follows the cycle for only {} steps",
            cap - entry
        )));
    }
    let pos = cycle.position(last).expect("last vertex on cycle");
    let wpos = (pos + n - cap % n) % n;
    let period = (0..n)
        .map(|j| q.vertex_name(cycle.vertices[(wpos + j) % n]).to_string())
        .collect();
    Ok(PointModuleDescriptor {
        vertex: q.vertex_name(cycle.vertices[wpos]).to_string(),
        cycle_length: n,
        period,
        entry_degree: entry,
    })
}

/// A point module entering a cycle along a fixed arrow path: the first
/// `prefix` arrows are traversed once, then the cycle repeats.
pub fn point_module_along(q: &Quiver, start: usize, prefix: &[usize], cap: usize) -> Result<TruncatedGradedRep> {
    let mut support = vec![start];
    let mut used = Vec::new();
    let mut cur = start;
    for &a in prefix.iter().take(cap) {
        let arrow = q
            .arrows()
            .get(a)
            .ok_or_else(|| QgrError::UnknownArrow(a.to_string()))?;
        if arrow.src != cur {
            return Err(QgrError::DimensionMismatch(format!("arrow {} does not continue the path", arrow.id)));
        }
        used.push(a);
        cur = arrow.tgt;
        support.push(cur);
    }
    if support.len() <= cap {
        let cycle = cycle_through(q, cur)?;
        let n = cycle.len();
        let mut pos = cycle.position(cur).expect("on cycle");
        while support.len() <= cap {
            used.push(cycle.arrows[pos]);
            pos = (pos + 1) % n;
            support.push(cycle.vertices[pos]);
        }
    }
    support.truncate(cap + 1);
    Ok(line_rep(
        q,
        &support,
        |a, i| if used[i] == a { Rat::one() } else { Rat::zero() },
        |i| format!("m{i}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

    fn q(s: &str) -> Quiver {
        parse_quiver(s).unwrap()
    }

    #[test]
    fn point_module_supports() {
        let lp = q("vertex a\narrow x: a -> a");
        let o = cyclic_point_module(&lp, 0, 5).unwrap();
        assert_eq!(o.support_sequence().unwrap(), [0; 6]);
        assert_eq!(o.action(0, 3).get(0, 0), &rat(1));

        let two = q("vertex a\nvertex b\narrow x: a -> b\narrow y: b -> a");
        let o = cyclic_point_module(&two, 0, 4).unwrap();
        assert_eq!(o.support_sequence().unwrap(), [0, 1, 0, 1, 0]);

        let ex = q(EX8);
        let o = cyclic_point_module(&ex, 0, 3).unwrap();
        assert_eq!(o.support_sequence().unwrap(), [0, 0, 0, 0]);
        assert_eq!((o.action(0, 0).rows(), o.action(0, 0).cols()), (0, 1));
        assert!(matches!(
            cyclic_point_module(&q("vertex a\nvertex b\narrow f: a -> b"), 0, 3),
            Err(QgrError::NotCyclicVertex(_))
        ));
    }

    #[test]
    fn projective_dimensions() {
        let dbl = q("vertex a\narrow x: a -> a\narrow y: a -> a");
        let p = truncate_projective(&dbl, 0, 3).unwrap();
        assert_eq!((0..=3).map(|i| p.total_dim(i)).collect::<Vec<_>>(), [1, 2, 4, 8]);
        let p = truncate_projective(&q(EX8), 0, 3).unwrap();
        assert_eq!((0..=3).map(|i| p.total_dim(i)).collect::<Vec<_>>(), [1, 2, 3, 4]);
    }

    #[test]
    fn torsion_certificates() {
        let ex = q(EX8);
        let o = cyclic_point_module(&ex, 0, 6).unwrap();
        assert!(torsion_elements(&o).dims.iter().all(|&d| d == 0));

        // Dead branch: loop at a, arrow a -> b with b a sink.
        let dead = q("vertex a\nvertex b\narrow p: a -> a\narrow f: a -> b");
        let p = truncate_projective(&dead, 0, 5).unwrap();
        assert_eq!(torsion_elements(&p).dims, [0, 1, 1, 1, 1, 0]);

        let sink = q("vertex a\nvertex b\narrow f: a -> b");
        let s = line_rep(&sink, &[1, 1, 1], |_, _| Rat::zero(), |i| i.to_string());
        assert_eq!(torsion_elements(&s).dims, [1, 1, 0]);
    }

    #[test]
    fn homs_between_point_modules() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let oa = cyclic_point_module(&tri, 0, 15).unwrap();
        let ob = cyclic_point_module(&tri, 1, 15).unwrap();
        for n in 0..=13 {
            assert_eq!(hom_dim(&oa, &oa, n).unwrap(), 1);
            assert_eq!(hom_dim(&oa, &ob, n).unwrap(), 0);
        }
        let s = qgr_hom_dim(&oa, &oa).unwrap();
        assert!(s.stabilized && s.dim == 1);
        let z = TruncatedGradedRep::zero(&tri, 15);
        assert_eq!(hom_dim(&z, &oa, 0).unwrap(), 0);
    }

    #[test]
    fn shift_gives_next_point_module() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let shifted = cyclic_point_module(&tri, 0, 16).unwrap().shift(1).unwrap();
        let ob = cyclic_point_module(&tri, 1, 15).unwrap();
        let s = qgr_hom_dim(&shifted, &ob).unwrap();
        assert_eq!(s.dim, 1);
        assert!(find_isomorphism(&shifted, &ob).unwrap().is_some());
        let oc = cyclic_point_module(&tri, 2, 15).unwrap();
        assert!(find_isomorphism(&shifted, &oc).unwrap().is_none());
    }

    #[test]
    fn extension_verdicts() {
        let ex = q(EX8);
        let cap = 15;
        let ones = vec![rat(1); cap];
        let e = build_extension(&ex, 0, 1, 0, &ones, cap).unwrap();
        assert!(matches!(is_split_extension(&e).unwrap(), SplitVerdict::Nonsplit { .. }));
        assert_eq!(qgr_hom_dim(&e.rep, &e.rep).unwrap().dim, 1);

        let mut first = vec![rat(0); cap];
        first[0] = rat(1);
        let e = build_extension(&ex, 0, 1, 0, &first, cap).unwrap();
        assert_eq!(is_split_extension(&e).unwrap(), SplitVerdict::Split { witness: 1 });

        let zero = vec![rat(0); cap];
        let e = build_extension(&ex, 0, 1, 0, &zero, cap).unwrap();
        assert_eq!(is_split_extension(&e).unwrap(), SplitVerdict::Split { witness: 0 });
        assert_eq!(qgr_hom_dim(&e.rep, &e.rep).unwrap().dim, 2);

        // Nonzero up to D-3, then zero in the last two degrees.
        let mut tail = vec![rat(1); cap];
        tail[cap - 1] = rat(0);
        tail[cap - 2] = rat(0);
        let e = build_extension(&ex, 0, 1, 0, &tail, cap).unwrap();
        assert!(matches!(is_split_extension(&e).unwrap(), SplitVerdict::Inconclusive { .. }));
    }

    #[test]
    fn veronese_setup_for_cycles() {
        let g = q("vertex a\nvertex b\nvertex c\n\
                   arrow x: a -> b\narrow y: b -> a\narrow z: b -> c\narrow u: c -> c");
        let s = normalize_for_extension(&g, 0, 2).unwrap().unwrap();
        assert_eq!(s.degree, 2);
        assert!(normalize_for_extension(&g, 2, 0).unwrap().is_none());
    }

    #[test]
    fn classify_examples() {
        let tri = q("vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let o = cyclic_point_module(&tri, 1, 10).unwrap();
        assert_eq!(classify_point_module(&o).unwrap().vertex, "b");
        let shifted = cyclic_point_module(&tri, 1, 13).unwrap().shift(3).unwrap();
        assert_eq!(classify_point_module(&shifted).unwrap().vertex, "b");

        // s -> a enters the cycle: degree j >= 1 sits at position j - 1.
        let tail = q("vertex s\nvertex a\nvertex b\nvertex c\n\
                      arrow e: s -> a\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a");
        let m = point_module_along(&tail, 0, &[0], 12).unwrap();
        let d = classify_point_module(&m).unwrap();
        assert_eq!(d.entry_degree, 1);
        // u_j = cycle[(j - 1) mod 3], so w = cycle[-1] = c.
        assert_eq!(d.vertex, "c");
    }

    #[test]
    fn json_round_trip() {
        let ex = q(EX8);
        let p = truncate_projective(&ex, 0, 4).unwrap();
        let back = TruncatedGradedRep::from_json(&p.to_json().to_string()).unwrap();
        assert_eq!(back, p);
    }
}
