//! Quivers: finite directed multigraphs with named vertices and arrows.
//!
//! Vertex order is declaration order and every matrix in the crate is
//! indexed by it. Entry `(i, j)` of an incidence matrix counts arrows `i -> j`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QgrError, Result};
use crate::matrix::IntMatrix;

/// Largest quiver `from_incidence` and `veronese` will materialize.
pub const ARROW_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

#[derive(Debug, Clone)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

/// A path `v_0 a_1 v_1 ... a_m v_m`; length zero is the trivial path at `v_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<usize>,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            vertices: vec![v],
            arrows: Vec::new(),
        }
    }

    /// Builds a path from an arrow sequence starting at `start`, checking
    /// source/target compatibility.
    pub fn from_arrows(q: &Quiver, start: usize, arrows: &[usize]) -> Option<Self> {
        let mut vertices = vec![start];
        let mut cur = start;
        for &a in arrows {
            let arrow = q.arrows.get(a)?;
            if arrow.src != cur {
                return None;
            }
            cur = arrow.tgt;
            vertices.push(cur);
        }
        Some(Path {
            vertices,
            arrows: arrows.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Appends an arrow; the caller guarantees it starts at the target.
    pub fn extended(&self, q: &Quiver, a: usize) -> Option<Path> {
        let arrow = &q.arrows[a];
        if arrow.src != self.target() {
            return None;
        }
        let mut p = self.clone();
        p.arrows.push(a);
        p.vertices.push(arrow.tgt);
        Some(p)
    }
}

fn validate_identifier(id: &str, line: usize) -> Result<()> {
    let bad = id.is_empty()
        || id.chars().any(|c| c.is_whitespace() || c == ':' || c == '#' || c == '"')
        || id.contains("->");
    if bad {
        return Err(QgrError::Syntax {
            line,
            message: format!("invalid identifier `{id}`"),
        });
    }
    Ok(())
}

impl Quiver {
    /// Builds a quiver from names, validating uniqueness and endpoints.
    pub fn new<S: Into<String>>(
        name: S,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QgrError::DuplicateIdentifier(v.clone()));
            }
        }
        let mut seen = HashMap::with_capacity(arrows.len());
        let mut out = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if seen.insert(id.clone(), ()).is_some() {
                return Err(QgrError::DuplicateIdentifier(id));
            }
            let src = *vertex_index
                .get(&s)
                .ok_or_else(|| QgrError::DanglingEndpoint {
                    arrow: id.clone(),
                    vertex: s.clone(),
                })?;
            let tgt = *vertex_index
                .get(&t)
                .ok_or_else(|| QgrError::DanglingEndpoint {
                    arrow: id.clone(),
                    vertex: t.clone(),
                })?;
            out.push(Arrow { id, src, tgt });
        }
        Ok(Quiver {
            name: name.into(),
            vertices,
            arrows: out,
            vertex_index,
        })
    }

    /// Builds a quiver directly from index data. Arrow ids must be unique.
    pub fn from_indices<S: Into<String>>(
        name: S,
        vertices: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
    ) -> Result<Self> {
        let named = arrows
            .into_iter()
            .map(|(id, s, t)| {
                let sv = vertices.get(s).cloned().unwrap_or_else(|| s.to_string());
                let tv = vertices.get(t).cloned().unwrap_or_else(|| t.to_string());
                (id, sv, tv)
            })
            .collect();
        Quiver::new(name, vertices, named)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name<S: Into<String>>(mut self, name: S) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| QgrError::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| QgrError::UnknownArrow(id.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.src == v)
            .map(|(i, _)| i)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tgt == v)
            .map(|(i, _)| i)
    }

    /// Successor lists (with multiplicity) indexed by vertex.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
        }
        adj
    }

    /// `reach[u][v]` is true iff a path of length >= 1 runs from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let adj = self.successors();
        let mut reach = vec![vec![false; n]; n];
        for (u, row) in reach.iter_mut().enumerate() {
            let mut stack: Vec<usize> = adj[u].clone();
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend(adj[x].iter().copied());
                }
            }
        }
        reach
    }

    /// Incidence matrix in declaration order: entry `(i, j)` counts arrows `i -> j`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for a in &self.arrows {
            let v = m.get(a.src, a.tgt) + 1u32;
            m.set(a.src, a.tgt, v);
        }
        m
    }

    /// Builds the quiver of a nonnegative square matrix over the given vertex
    /// names. Arrow ids are `src__tgt__k` with `k` the 0-based ordinal.
    /// Fails with `ExplosionCap` above `ARROW_CAP` arrows.
    pub fn from_incidence<S: Into<String>>(
        name: S,
        vertices: Vec<String>,
        m: &IntMatrix,
    ) -> Result<Self> {
        let n = vertices.len();
        if m.rows() != n || m.cols() != n {
            return Err(QgrError::DimensionMismatch(format!(
                "{}x{} matrix for {n} vertices",
                m.rows(),
                m.cols()
            )));
        }
        let mut arrows = Vec::new();
        let mut total = 0u64;
        for i in 0..n {
            for j in 0..n {
                let count = m.get(i, j).to_u64().ok_or_else(|| {
                    QgrError::SizeCap(format!("entry ({i},{j}) does not fit an arrow count"))
                })?;
                total = total.saturating_add(count);
                if total > ARROW_CAP as u64 {
                    return Err(QgrError::ExplosionCap(ARROW_CAP));
                }
                for k in 0..count {
                    arrows.push((
                        format!("{}__{}__{}", vertices[i], vertices[j], k),
                        vertices[i].clone(),
                        vertices[j].clone(),
                    ));
                }
            }
        }
        Quiver::new(name, vertices, arrows)
    }

    /// Veronese quiver: same vertices, `(M^d)_{ij}` arrows `i -> j`.
    pub fn veronese(&self, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(QgrError::DimensionMismatch(
                "Veronese degree must be positive".into(),
            ));
        }
        let m = self.incidence_matrix().pow(d);
        let name = if self.name.is_empty() {
            String::new()
        } else {
            format!("{}^({d})", self.name)
        };
        Quiver::from_incidence(name, self.vertices.clone(), &m)
    }

    /// Number of paths of length `len` from `u` to `v`, counted by pushing
    /// path counts along the arrow list one step at a time.
    pub fn count_paths(&self, u: usize, v: usize, len: usize) -> BigUint {
        let mut counts = vec![BigUint::zero(); self.vertex_count()];
        counts[u] = BigUint::from(1u32);
        for _ in 0..len {
            let mut next = vec![BigUint::zero(); self.vertex_count()];
            for a in &self.arrows {
                if !counts[a.src].is_zero() {
                    next[a.tgt] += &counts[a.src];
                }
            }
            counts = next;
        }
        counts.swap_remove(v)
    }

    /// Induced subquiver on a vertex subset, keeping declaration order.
    pub fn induced(&self, keep: &[usize]) -> Result<Quiver> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let vertices: Vec<String> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| keep.binary_search(&a.src).is_ok() && keep.binary_search(&a.tgt).is_ok())
            .map(|a| {
                (
                    a.id.clone(),
                    self.vertices[a.src].clone(),
                    self.vertices[a.tgt].clone(),
                )
            })
            .collect();
        Quiver::new(self.name.clone(), vertices, arrows)
    }

    /// Renames vertices and arrows with the given functions.
    pub fn relabeled(
        &self,
        vertex: impl Fn(usize, &str) -> String,
        arrow: impl Fn(usize, &str) -> String,
    ) -> Result<Quiver> {
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| vertex(i, v))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (
                    arrow(i, &a.id),
                    vertices[a.src].clone(),
                    vertices[a.tgt].clone(),
                )
            })
            .collect();
        Quiver::new(self.name.clone(), vertices, arrows)
    }

    /// Reorders the vertex declarations: new position `i` holds old vertex `perm[i]`.
    pub fn reorder_vertices(&self, perm: &[usize]) -> Result<Quiver> {
        let vertices: Vec<String> = perm.iter().map(|&i| self.vertices[i].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                (
                    a.id.clone(),
                    self.vertices[a.src].clone(),
                    self.vertices[a.tgt].clone(),
                )
            })
            .collect();
        Quiver::new(self.name.clone(), vertices, arrows)
    }
}

/// Quiver text format.
///
/// ```text
/// # comment
/// quiver example8
/// vertex a
/// vertex b
/// arrow f: a -> b
/// ```
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut name = String::new();
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "quiver" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(QgrError::Syntax {
                        line: line_no,
                        message: "expected `quiver <name>`".into(),
                    });
                }
                name = rest.to_string();
            }
            "vertex" => {
                validate_identifier(rest, line_no)?;
                vertices.push(rest.to_string());
            }
            "arrow" => {
                let (id, ends) = rest.split_once(':').ok_or_else(|| QgrError::Syntax {
                    line: line_no,
                    message: "expected `arrow <id>: <src> -> <tgt>`".into(),
                })?;
                let (src, tgt) = ends.split_once("->").ok_or_else(|| QgrError::Syntax {
                    line: line_no,
                    message: "expected `->` between arrow endpoints".into(),
                })?;
                let (id, src, tgt) = (id.trim(), src.trim(), tgt.trim());
                validate_identifier(id, line_no)?;
                validate_identifier(src, line_no)?;
                validate_identifier(tgt, line_no)?;
                arrows.push((id.to_string(), src.to_string(), tgt.to_string()));
            }
            other => {
                return Err(QgrError::Syntax {
                    line: line_no,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    Quiver::new(name, vertices, arrows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    #[serde(default)]
    name: String,
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
}

pub fn parse_quiver_json(text: &str) -> Result<Quiver> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| QgrError::Json(e.to_string()))?;
    Quiver::new(
        doc.name,
        doc.vertices,
        doc.arrows
            .into_iter()
            .map(|a| (a.id, a.src, a.tgt))
            .collect(),
    )
}

/// JSON value for a quiver, in the `{"name","vertices","arrows"}` schema.
pub fn quiver_json_value(q: &Quiver) -> serde_json::Value {
    let doc = QuiverDoc {
        name: q.name.clone(),
        vertices: q.vertices.clone(),
        arrows: q
            .arrows
            .iter()
            .map(|a| ArrowDoc {
                id: a.id.clone(),
                src: q.vertices[a.src].clone(),
                tgt: q.vertices[a.tgt].clone(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("quiver document serializes")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn serialize(q: &Quiver, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            if !q.name.is_empty() {
                let _ = writeln!(out, "quiver {}", q.name);
            }
            for v in &q.vertices {
                let _ = writeln!(out, "vertex {v}");
            }
            for a in &q.arrows {
                let _ = writeln!(
                    out,
                    "arrow {}: {} -> {}",
                    a.id, q.vertices[a.src], q.vertices[a.tgt]
                );
            }
            out
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&quiver_json_value(q))
                .expect("quiver document serializes");
            s.push('\n');
            s
        }
        Format::Dot => {
            let mut out = String::new();
            let name = if q.name.is_empty() { "Q" } else { &q.name };
            let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
            for v in &q.vertices {
                let _ = writeln!(out, "  \"{}\";", dot_escape(v));
            }
            for a in &q.arrows {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    dot_escape(&q.vertices[a.src]),
                    dot_escape(&q.vertices[a.tgt]),
                    dot_escape(&a.id)
                );
            }
            out.push_str("}\n");
            out
        }
    }
}

/// Entry of `M^len` read off the incidence matrix, for comparison with
/// [`Quiver::count_paths`].
pub fn matrix_path_count(q: &Quiver, u: usize, v: usize, len: u64) -> BigInt {
    q.incidence_matrix().pow(len).get(u, v).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE8: &str =
        "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b\n";

    #[test]
    fn parses_smallest_loop_quiver() {
        let q = parse_quiver("vertex a\narrow f: a -> a").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 1);
        assert!(q.arrows()[0].is_loop());
    }

    #[test]
    fn parses_example_with_comments_and_header() {
        let text = format!("# the worked example\nquiver ex8\n{EXAMPLE8}");
        let q = parse_quiver(&text).unwrap();
        assert_eq!(q.name(), "ex8");
        assert_eq!(q.vertices(), &["a".to_string(), "b".to_string()]);
        assert_eq!(
            q.incidence_matrix(),
            IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])
        );
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let err = parse_quiver("arrow f: a -> b").unwrap_err();
        assert!(matches!(err, QgrError::DanglingEndpoint { .. }));
    }

    #[test]
    fn duplicates_and_syntax_errors_report() {
        assert!(matches!(
            parse_quiver("vertex a\nvertex a").unwrap_err(),
            QgrError::DuplicateIdentifier(_)
        ));
        assert!(matches!(
            parse_quiver("vertex a\narrow f: a -> a\narrow f: a -> a").unwrap_err(),
            QgrError::DuplicateIdentifier(_)
        ));
        match parse_quiver("vertex a\narrow f a -> a").unwrap_err() {
            QgrError::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_quiver("vertx a").unwrap_err(),
            QgrError::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn single_vertex_no_arrows_has_zero_matrix() {
        let q = parse_quiver("vertex a").unwrap();
        assert_eq!(q.incidence_matrix(), IntMatrix::from_rows(&[vec![0]]));
    }

    #[test]
    fn three_cycle_cubes_to_identity() {
        let q = parse_quiver(
            "vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\narrow z: c -> a",
        )
        .unwrap();
        let m = q.incidence_matrix();
        assert_eq!(m.pow(3), IntMatrix::identity(3));
        // Brute-force path counts of length 3 agree with the cube.
        for u in 0..3 {
            for v in 0..3 {
                let expected = if u == v { 1u32 } else { 0 };
                assert_eq!(q.count_paths(u, v, 3), BigUint::from(expected));
            }
        }
        assert_eq!(q.count_paths(0, 0, 4), BigUint::zero());
    }

    #[test]
    fn example_path_counts() {
        let q = parse_quiver(EXAMPLE8).unwrap();
        assert_eq!(q.count_paths(0, 1, 3), BigUint::from(3u32));
        assert_eq!(q.count_paths(1, 1, 0), BigUint::from(1u32));
    }

    #[test]
    fn veronese_examples() {
        let one_loop = parse_quiver("vertex a\narrow f: a -> a").unwrap();
        for d in 1..5 {
            let v = one_loop.veronese(d).unwrap();
            assert_eq!(v.arrow_count(), 1);
            assert!(v.arrows()[0].is_loop());
        }
        let two_cycle = parse_quiver("vertex a\nvertex b\narrow f: a -> b\narrow g: b -> a").unwrap();
        let v = two_cycle.veronese(2).unwrap();
        assert_eq!(v.arrow_count(), 2);
        assert!(v.arrows().iter().all(Arrow::is_loop));

        let ex = parse_quiver(EXAMPLE8).unwrap().veronese(2).unwrap();
        assert_eq!(
            ex.incidence_matrix(),
            IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]])
        );
        let ids: Vec<&str> = ex.arrows().iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, ["a__a__0", "a__b__0", "a__b__1", "b__b__0"]);
        assert!(one_loop.veronese(0).is_err());
        let ten = parse_quiver(&format!(
            "vertex a\n{}",
            (0..10).map(|i| format!("arrow x{i}: a -> a\n")).collect::<String>()
        ))
        .unwrap();
        assert_eq!(ten.veronese(6).unwrap().arrow_count(), 1_000_000);
        assert!(matches!(ten.veronese(7), Err(QgrError::ExplosionCap(_))));
    }

    #[test]
    fn serializations() {
        let q = parse_quiver(EXAMPLE8).unwrap();
        assert_eq!(parse_quiver(&serialize(&q, Format::Text)).unwrap(), q);
        assert_eq!(parse_quiver_json(&serialize(&q, Format::Json)).unwrap(), q);
        let dot = serialize(&q, Format::Dot);
        assert_eq!(dot.matches("->").count(), 3);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 2);

        let empty = parse_quiver("").unwrap();
        assert_eq!(serialize(&empty, Format::Text), "");
        assert_eq!(parse_quiver_json(&serialize(&empty, Format::Json)).unwrap(), empty);
        assert!(serialize(&empty, Format::Dot).starts_with("digraph"));
    }

    #[test]
    fn path_validation() {
        let q = parse_quiver(EXAMPLE8).unwrap();
        let p = Path::from_arrows(&q, 0, &[1, 0, 2]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.target(), 1);
        assert!(Path::from_arrows(&q, 1, &[0]).is_none());
        assert_eq!(Path::trivial(1).len(), 0);
    }
}
