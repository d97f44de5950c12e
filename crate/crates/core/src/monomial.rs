//! Finitely presented monomial algebras and their Ufnarovskii graphs.

use crate::error::{QgrError, Result};
use crate::extquiver::{ext_quiver, ExtQuiver};
use crate::quiver::Quiver;

// Limit on normal words of length d - 1 and d.
const WORD_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPresentation {
    gens: Vec<String>,
    relations: Vec<Vec<usize>>,
    warnings: Vec<String>,
}

fn contains_subword(word: &[usize], sub: &[usize]) -> bool {
    sub.len() <= word.len() && word.windows(sub.len()).any(|w| w == sub)
}

fn valid_generator(g: &str) -> bool {
    !g.is_empty()
        && !g.chars().any(|c| c.is_whitespace() || matches!(c, ':' | '#' | '"' | '*' | '+' | '-' | '^'))
}

impl MonomialPresentation {
    /// Validates the generators and reduces the relations so that none is a
    /// subword of another. Dropped relations are recorded as warnings.
    pub fn new(gens: Vec<String>, relations: Vec<Vec<usize>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(QgrError::InvalidPresentation("no generators".into()));
        }
        for (i, g) in gens.iter().enumerate() {
            if !valid_generator(g) {
                return Err(QgrError::InvalidPresentation(format!("invalid generator `{g}`")));
            }
            if gens[..i].contains(g) {
                return Err(QgrError::DuplicateIdentifier(g.clone()));
            }
        }
        for r in &relations {
            if r.len() < 2 {
                return Err(QgrError::InvalidPresentation("relations must have length at least 2".into()));
            }
            if r.iter().any(|&x| x >= gens.len()) {
                return Err(QgrError::InvalidPresentation("relation uses an unknown generator".into()));
            }
        }
        let mut p = MonomialPresentation {
            gens,
            relations: Vec::new(),
            warnings: Vec::new(),
        };
        let mut sorted = relations;
        sorted.sort_by_key(Vec::len);
        for r in sorted {
            if let Some(s) = p.relations.iter().find(|s| contains_subword(&r, s)) {
                let msg = if *s == r {
                    format!("duplicate relation {} dropped", p.word(&r))
                } else {
                    format!("relation {} contains {} and was dropped", p.word(&r), p.word(s))
                };
                p.warnings.push(msg);
            } else {
                p.relations.push(r);
            }
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Maximum relation length, or 1 when there are no relations.
    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(1)
    }

    fn single_char(&self) -> bool {
        self.gens.iter().all(|g| g.chars().count() == 1)
    }

    /// Spells a word: concatenated for one-character generators, `*`-joined otherwise.
    pub fn word(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&i| self.gens[i].as_str()).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join("*")
        }
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        !self.relations.iter().any(|r| contains_subword(w, r))
    }

    fn parse_word(&self, text: &str, line: usize) -> Result<Vec<usize>> {
        let lookup = |g: &str| {
            self.gens.iter().position(|x| x == g).ok_or_else(|| QgrError::Syntax {
                line,
                message: format!("unknown generator `{g}`"),
            })
        };
        if text.contains('*') {
            text.split('*').map(|g| lookup(g.trim())).collect()
        } else if let Ok(i) = lookup(text) {
            Ok(vec![i])
        } else {
            text.chars().map(|c| lookup(&c.to_string())).collect()
        }
    }

    /// Normal words of length `len`, in lexicographic generator order.
    pub fn normal_words(&self, len: usize) -> Result<Vec<Vec<usize>>> {
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &words {
                for g in 0..self.gens.len() {
                    let mut e = w.clone();
                    e.push(g);
                    // Only suffixes of the extension can be new relation occurrences.
                    if !self.relations.iter().any(|r| e.ends_with(r)) {
                        next.push(e);
                        if next.len() > WORD_CAP {
                            return Err(QgrError::ExplosionCap(WORD_CAP));
                        }
                    }
                }
            }
            words = next;
        }
        Ok(words)
    }
}

/// Algebra file: `gens <id> <id> ...` then `rel <word>` lines, `#` comments.
pub fn parse_algebra(text: &str) -> Result<MonomialPresentation> {
    let mut gens: Option<Vec<String>> = None;
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
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
            "gens" => {
                if gens.is_some() {
                    return Err(QgrError::Syntax {
                        line: line_no,
                        message: "generators declared twice".into(),
                    });
                }
                gens = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "rel" => {
                if rest.is_empty() {
                    return Err(QgrError::Syntax {
                        line: line_no,
                        message: "empty relation".into(),
                    });
                }
                if rest.contains(char::is_whitespace) || rest.contains(['+', '-', '=']) {
                    return Err(QgrError::InvalidPresentation(format!(
                        "line {line_no}: `{rest}` is not a monomial"
                    )));
                }
                rel_lines.push((line_no, rest.to_string()));
            }
            other => {
                return Err(QgrError::Syntax {
                    line: line_no,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    let gens = gens.ok_or_else(|| QgrError::InvalidPresentation("missing `gens` line".into()))?;
    let shell = MonomialPresentation::new(gens.clone(), Vec::new())?;
    let relations = rel_lines
        .iter()
        .map(|(line, w)| shell.parse_word(w, *line))
        .collect::<Result<Vec<_>>>()?;
    MonomialPresentation::new(gens, relations)
}

pub fn serialize_algebra(a: &MonomialPresentation) -> String {
    let mut s = format!("gens {}\n", a.gens.join(" "));
    for r in &a.relations {
        s.push_str(&format!("rel {}\n", a.word(r)));
    }
    s
}

/// Vertices are the normal words of length `d - 1`, arrows the normal words
/// of length `d` from their prefix to their suffix. Without relations: one
/// vertex `1` with a loop per generator.
pub fn ufnarovskii_graph(a: &MonomialPresentation) -> Result<Quiver> {
    if a.relations.is_empty() {
        let arrows = a
            .gens
            .iter()
            .map(|g| (g.clone(), "1".to_string(), "1".to_string()))
            .collect();
        return Quiver::new("ufnarovskii", vec!["1".to_string()], arrows);
    }
    let d = a.max_relation_len();
    let verts = a.normal_words(d - 1)?;
    let edges = a.normal_words(d)?;
    let names: Vec<String> = verts.iter().map(|w| a.word(w)).collect();
    let index = |w: &[usize]| {
        verts
            .binary_search_by(|v| v.as_slice().cmp(w))
            .expect("prefix and suffix of a normal word are normal")
    };
    let arrows = edges
        .iter()
        .map(|e| {
            (
                a.word(e),
                names[index(&e[..d - 1])].clone(),
                names[index(&e[1..])].clone(),
            )
        })
        .collect();
    Quiver::new("ufnarovskii", names, arrows)
}

pub fn ext_quiver_of_algebra(a: &MonomialPresentation) -> Result<ExtQuiver> {
    ext_quiver(&ufnarovskii_graph(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::{gk_dimension, growth_oracle};
    use num_bigint::BigUint;

    #[test]
    fn parse_examples() {
        let a = parse_algebra("gens x y\nrel xy").unwrap();
        assert_eq!(a.relations(), &[vec![0, 1]]);
        let s = parse_algebra("gens u v w\nrel uv\nrel vw\nrel wu").unwrap();
        assert_eq!(s.relations().len(), 3);
        assert!(parse_algebra("rel xy").is_err());
        assert!(parse_algebra("gens x y\nrel x").is_err());
        assert!(matches!(
            parse_algebra("gens x y\nrel xy-yx"),
            Err(QgrError::InvalidPresentation(_))
        ));
        let multi = parse_algebra("gens x1 x2\nrel x1*x2*x1").unwrap();
        assert_eq!(multi.relations(), &[vec![0, 1, 0]]);
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let a = parse_algebra("gens x y\nrel xyx\nrel xy\nrel xy").unwrap();
        assert_eq!(a.relations(), &[vec![0, 1]]);
        assert_eq!(a.warnings().len(), 2);
    }

    #[test]
    fn graph_of_xy() {
        let a = parse_algebra("gens x y\nrel xy").unwrap();
        let g = ufnarovskii_graph(&a).unwrap();
        assert_eq!(g.vertices(), &["x".to_string(), "y".to_string()]);
        let mut arrows: Vec<(String, &str, &str)> = g
            .arrows()
            .iter()
            .map(|ar| (ar.id.clone(), g.vertex_name(ar.src), g.vertex_name(ar.tgt)))
            .collect();
        arrows.sort();
        assert_eq!(arrows, [("xx".to_string(), "x", "x"), ("yx".into(), "y", "x"), ("yy".into(), "y", "y")]);
        assert_eq!(gk_dimension(&g).gk, Some(2));
        let e = ext_quiver_of_algebra(&a).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.arrows, [(1, 0)]);
    }

    #[test]
    fn sklyanin_degenerations_have_infinite_growth() {
        let a = parse_algebra("gens u v w\nrel uv\nrel vw\nrel wu").unwrap();
        let g = ufnarovskii_graph(&a).unwrap();
        assert_eq!((g.vertex_count(), g.arrow_count()), (3, 6));
        assert!(matches!(ext_quiver_of_algebra(&a), Err(QgrError::NotFiniteGk(_))));
        let b = parse_algebra("gens u v w\nrel uu\nrel vv\nrel ww").unwrap();
        assert!(matches!(ext_quiver_of_algebra(&b), Err(QgrError::NotFiniteGk(_))));
    }

    #[test]
    fn free_algebra_graph() {
        let a = parse_algebra("gens x").unwrap();
        let g = ufnarovskii_graph(&a).unwrap();
        assert_eq!((g.vertex_count(), g.arrow_count()), (1, 1));
        let e = ext_quiver_of_algebra(&a).unwrap();
        assert_eq!((e.len(), e.arrows.len()), (1, 0));
    }

    #[test]
    fn normal_words_match_paths() {
        let a = parse_algebra("gens x y z\nrel xyz\nrel zz").unwrap();
        let g = ufnarovskii_graph(&a).unwrap();
        let d = a.max_relation_len();
        let r = growth_oracle(&g, 10);
        for n in d - 1..=d + 9 {
            let words = a.normal_words(n).unwrap().len();
            assert_eq!(BigUint::from(words), r[n - (d - 1)]);
        }
    }
}
