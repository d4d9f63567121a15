//! Finite quivers (directed multigraphs) and their derived matrices.

use crate::{Error, Result};
use std::collections::HashMap;

/// An arrow of a quiver, identified by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    /// Index of the source vertex.
    pub src: usize,
    /// Index of the target vertex.
    pub dst: usize,
}

/// A finite quiver. Vertices and arrows keep their declaration order,
/// which fixes all matrix row/column indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds and validates a quiver from vertex names and
    /// (name, src, dst) arrow triples. Rejects empty vertex sets,
    /// duplicate names and dangling endpoints.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        if vertices.is_empty() {
            return Err(Error::MalformedQuiver("no vertices".into()));
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (i, (name, src, dst)) in arrows.into_iter().enumerate() {
            if arrow_index.insert(name.clone(), i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate arrow {name:?}")));
            }
            let src = *vertex_index
                .get(&src)
                .ok_or_else(|| Error::MalformedQuiver(format!("arrow {name:?}: unknown vertex {src:?}")))?;
            let dst = *vertex_index
                .get(&dst)
                .ok_or_else(|| Error::MalformedQuiver(format!("arrow {name:?}: unknown vertex {dst:?}")))?;
            built.push(Arrow { name, src, dst });
        }
        Ok(Quiver { vertices, arrows: built, vertex_index, arrow_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    /// Vertices emitting no arrow, in vertex order.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.arrows.iter().all(|a| a.src != v))
            .collect()
    }

    /// Vertices receiving no arrow, in vertex order.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.arrows.iter().all(|a| a.dst != v))
            .collect()
    }

    /// Adjacency matrix: entry (i, j) counts arrows i -> j.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let d = self.vertices.len();
        let mut m = vec![vec![0i64; d]; d];
        for a in &self.arrows {
            m[a.src][a.dst] += 1;
        }
        m
    }

    /// The incidence matrix N (transposed adjacency with sink columns
    /// removed) together with the identity restricted the same way.
    /// Both are d x (d - #sinks), columns following vertex order.
    pub fn incidence_n(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let d = self.vertices.len();
        let adj = self.adjacency();
        let sinks = self.sinks();
        let keep: Vec<usize> = (0..d).filter(|v| !sinks.contains(v)).collect();
        let n = (0..d)
            .map(|i| keep.iter().map(|&j| adj[j][i]).collect())
            .collect();
        let one = (0..d)
            .map(|i| keep.iter().map(|&j| i64::from(i == j)).collect())
            .collect();
        (n, one)
    }

    /// The quiver with all arrows reversed. Arrow names get a `_bar`
    /// suffix, which is stripped again on a second reversal.
    pub fn inverse_quiver(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let name = match a.name.strip_suffix("_bar") {
                    Some(stem) => stem.to_string(),
                    None => format!("{}_bar", a.name),
                };
                (name, self.vertices[a.dst].clone(), self.vertices[a.src].clone())
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("reversal preserves validity")
    }

    /// Arrows leaving vertex `v`, in declaration order.
    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].src == v).collect()
    }

    /// True when no directed cycle is reachable from `i`.
    pub fn is_forward_acyclic(&self, i: usize) -> bool {
        // colors: 0 unseen, 1 on stack, 2 done
        fn dfs(q: &Quiver, v: usize, color: &mut [u8]) -> bool {
            color[v] = 1;
            for e in q.arrows_from(v) {
                let w = q.arrows[e].dst;
                match color[w] {
                    1 => return false,
                    0 => {
                        if !dfs(q, w, color) {
                            return false;
                        }
                    }
                    _ => {}
                }
            }
            color[v] = 2;
            true
        }
        let mut color = vec![0u8; self.vertices.len()];
        dfs(self, i, &mut color)
    }

    /// True when the quiver has no directed cycle at all.
    pub fn is_acyclic(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.is_forward_acyclic(v))
    }

    /// Number of paths with source `i` (including the trivial one), or
    /// `None` when a cycle is reachable and the count is infinite.
    pub fn count_paths_from(&self, i: usize) -> Option<u64> {
        if !self.is_forward_acyclic(i) {
            return None;
        }
        fn count(q: &Quiver, v: usize, memo: &mut [Option<u64>]) -> u64 {
            if let Some(c) = memo[v] {
                return c;
            }
            let mut c = 1u64;
            for e in q.arrows_from(v) {
                c += count(q, q.arrows[e].dst, memo);
            }
            memo[v] = Some(c);
            c
        }
        let mut memo = vec![None; self.vertices.len()];
        Some(count(self, i, &mut memo))
    }

    /// All paths of length at most `n`, ordered by length, then
    /// lexicographically by arrow indices (trivial paths first, in
    /// vertex order).
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut layer: Vec<Path> = out.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                let end = p.range(self);
                for e in self.arrows_from(end) {
                    let mut q = p.clone();
                    q.arrows.push(e);
                    next.push(q);
                }
            }
            // extension order is already length-lexicographic within a layer
            out.extend(next.iter().cloned());
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        out
    }
}

/// A path in a quiver: a base vertex for trivial paths, plus a
/// composable sequence of arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub base: usize,
    pub arrows: Vec<usize>,
}

impl Quiver {
    /// All paths of exactly the given length ranging at `v`, built by
    /// prepending arrows; sorted in the canonical term order.
    pub fn paths_into(&self, v: usize, len: usize) -> Vec<Path> {
        let mut cur = vec![Path::trivial(v)];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &cur {
                let src = match p.arrows.first() {
                    Some(&a) => self.arrow(a).src,
                    None => p.base,
                };
                for (i, arr) in self.arrows().iter().enumerate() {
                    if arr.dst == src {
                        let mut arrows = vec![i];
                        arrows.extend_from_slice(&p.arrows);
                        next.push(Path { base: arr.src, arrows });
                    }
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }
}

// length-lexicographic: shorter paths first, then by base vertex, then
// by arrow indices; this is the canonical term order everywhere
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), self.base, &self.arrows).cmp(&(
            other.arrows.len(),
            other.base,
            &other.arrows,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { base: v, arrows: Vec::new() }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::Invalid("empty arrow list; use Path::trivial".into()));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).dst != q.arrow(w[1]).src {
                return Err(Error::Invalid(format!(
                    "arrows {:?} and {:?} do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        let base = q.arrow(arrows[0]).src;
        Ok(Path { base, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self, q: &Quiver) -> usize {
        match self.arrows.first() {
            Some(&e) => q.arrow(e).src,
            None => self.base,
        }
    }

    pub fn range(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&e) => q.arrow(e).dst,
            None => self.base,
        }
    }

    /// Concatenation `self` then `other`; `None` when not composable.
    pub fn compose(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.range(q) != other.source(q) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { base: self.source(q), arrows })
    }

    /// Checks validity against a quiver: endpoints in range, arrows
    /// composable, base consistent with the first arrow.
    pub fn is_valid(&self, q: &Quiver) -> bool {
        if self.arrows.iter().any(|&e| e >= q.arrow_count()) {
            return false;
        }
        match self.arrows.first() {
            None => self.base < q.vertex_count(),
            Some(&first) => {
                self.base == q.arrow(first).src
                    && self
                        .arrows
                        .windows(2)
                        .all(|w| q.arrow(w[0]).dst == q.arrow(w[1]).src)
            }
        }
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path, q: &Quiver) -> Option<Path> {
        if prefix.len() > self.len() || self.arrows[..prefix.len()] != prefix.arrows[..] {
            return None;
        }
        if self.source(q) != prefix.source(q) {
            return None;
        }
        let rest = self.arrows[prefix.len()..].to_vec();
        let base = match rest.first() {
            Some(&e) => q.arrow(e).src,
            None => self.range(q),
        };
        Some(Path { base, arrows: rest })
    }

    /// If `self = rest · suffix`, returns `rest`.
    pub fn strip_suffix(&self, suffix: &Path, q: &Quiver) -> Option<Path> {
        if suffix.len() > self.len()
            || self.arrows[self.len() - suffix.len()..] != suffix.arrows[..]
        {
            return None;
        }
        if self.range(q) != suffix.range(q) {
            return None;
        }
        let rest = self.arrows[..self.len() - suffix.len()].to_vec();
        let base = match rest.first() {
            Some(&e) => q.arrow(e).src,
            None => self.source(q),
        };
        Some(Path { base, arrows: rest })
    }

    /// Display form like `v1` or `e.f.g`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            q.vertex_name(self.base).to_string()
        } else {
            self.arrows
                .iter()
                .map(|&e| q.arrow(e).name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Convenience constructors for the quivers used across the test suite.
pub mod samples {
    use super::Quiver;

    /// One vertex, one loop.
    pub fn loop1() -> Quiver {
        Quiver::new(
            vec!["v1".into()],
            vec![("e".into(), "v1".into(), "v1".into())],
        )
        .unwrap()
    }

    /// One vertex, `n` loops named x1..xn (rose).
    pub fn rose(n: usize) -> Quiver {
        let arrows = (1..=n)
            .map(|i| (format!("x{i}"), "v1".into(), "v1".into()))
            .collect();
        Quiver::new(vec!["v1".into()], arrows).unwrap()
    }

    /// Two vertices, one arrow v1 -> v2.
    pub fn a2() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![("a".into(), "v1".into(), "v2".into())],
        )
        .unwrap()
    }

    /// Toeplitz quiver: loop e at v1 and an arrow f: v1 -> v2.
    pub fn toeplitz() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![
                ("e".into(), "v1".into(), "v1".into()),
                ("f".into(), "v1".into(), "v2".into()),
            ],
        )
        .unwrap()
    }
}
