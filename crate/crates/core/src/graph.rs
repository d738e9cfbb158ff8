//! Finite unit-distance graphs and their structural analysis.
//!
//! A [`UdGraph`] either carries exact vertex positions, in which case its edge
//! set is forced by geometry (an edge for every exact unit-distance pair), or
//! is abstract, which the solver tests use freely.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::geometry::{is_unit, EPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list does not match the unit-distance pairs of the points")]
    GeometryMismatch,
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::DuplicatePoint(..) => "E_DUPLICATE_POINT",
            GraphError::VertexOutOfRange { .. } => "E_VERTEX_OUT_OF_RANGE",
            GraphError::SelfLoop(_) => "E_SELF_LOOP",
            GraphError::Parse { .. } => "E_PARSE",
            GraphError::GeometryMismatch => "E_GEOMETRY_MISMATCH",
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Simple undirected graph with optional exact geometry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UdGraph {
    points: Option<Vec<EPoint>>,
    adj: Vec<BitSet>,
}

impl UdGraph {
    /// Geometric graph on `points` with every exact unit-distance pair as an edge.
    pub fn from_points(points: Vec<EPoint>) -> Result<Self, GraphError> {
        let n = points.len();
        let mut adj = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(GraphError::DuplicatePoint(i, j));
                }
                if is_unit(&points[i], &points[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Ok(UdGraph {
            points: Some(points),
            adj,
        })
    }

    /// Abstract graph; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(UdGraph { points: None, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn points(&self) -> Option<&[EPoint]> {
        self.points.as_deref()
    }

    pub fn is_geometric(&self) -> bool {
        self.points.is_some()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Rebuilds the edge set from the points and compares. Abstract graphs pass.
    pub fn geometry_forced(&self) -> bool {
        match &self.points {
            None => true,
            Some(pts) => match UdGraph::from_points(pts.clone()) {
                Ok(g) => g.adj == self.adj,
                Err(_) => false,
            },
        }
    }
}

/// Result of repeatedly deleting a minimum-degree vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub degeneracy: usize,
    pub elimination_order: Vec<usize>,
    pub min_degree: usize,
}

/// Min-degree elimination; ties go to the smallest vertex id.
pub fn degeneracy(g: &UdGraph) -> DegeneracyReport {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex remains");
        d = d.max(deg[v]);
        alive[v] = false;
        order.push(v);
        for w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    DegeneracyReport {
        degeneracy: d,
        elimination_order: order,
        min_degree: g.min_degree(),
    }
}

/// Largest remaining-neighbour count met while replaying `order`.
pub fn elimination_width(g: &UdGraph, order: &[usize]) -> usize {
    let mut gone = BitSet::new(g.n());
    let mut width = 0;
    for &v in order {
        let remaining = g.neighbors(v).filter(|&w| !gone.contains(w)).count();
        width = width.max(remaining);
        gone.insert(v);
    }
    width
}

/// Vertices of a maximum clique, the first one met in index order.
pub fn max_clique_vertices(g: &UdGraph) -> Vec<usize> {
    fn expand(g: &UdGraph, current: &mut Vec<usize>, cand: BitSet, best: &mut Vec<usize>) {
        if cand.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let mut cand = cand;
        let members: Vec<usize> = cand.iter().collect();
        for (i, v) in members.iter().copied().enumerate() {
            if current.len() + (members.len() - i) <= best.len() {
                return;
            }
            current.push(v);
            expand(g, current, cand.intersection(g.neighbor_set(v)), best);
            current.pop();
            cand.remove(v);
        }
    }
    let mut best = Vec::new();
    expand(g, &mut Vec::new(), BitSet::full(g.n()), &mut best);
    best
}

pub fn max_clique(g: &UdGraph) -> usize {
    max_clique_vertices(g).len()
}

/// DIMACS `col` text: `p edge n m` then sorted 1-based `e u v` lines.
pub fn to_dimacs(g: &UdGraph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn from_dimacs(text: &str) -> Result<UdGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let nums = |fields: std::str::SplitWhitespace<'_>| -> Result<Vec<usize>, GraphError> {
            fields
                .map(|f| f.parse::<usize>().map_err(|_| parse_err(line, format!("bad number {f:?}"))))
                .collect()
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                match fields.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(parse_err(line, "expected `p edge <n> <m>`")),
                }
                let v = nums(fields)?;
                let [n, m] = v[..] else {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                };
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line, "edge before problem line"));
                };
                let v = nums(fields)?;
                let [a, b] = v[..] else {
                    return Err(parse_err(line, "expected `e <u> <v>`"));
                };
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(parse_err(line, format!("vertex out of range 1..={n}")));
                }
                if a == b {
                    return Err(parse_err(line, "self-loop"));
                }
                edges.push((a - 1, b - 1));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(text.lines().count().max(1), "missing problem line"))?;
    let g = UdGraph::from_edges(n, &edges)?;
    if g.edge_count() != m || edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
    edges: Vec<[usize; 2]>,
}

/// `{"n":…,"points":["(x; y)",…],"edges":[[u,v],…]}` followed by a newline.
pub fn to_json(g: &UdGraph) -> String {
    let file = GraphFile {
        n: g.n(),
        points: g
            .points()
            .map(|pts| pts.iter().map(ToString::to_string).collect()),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<UdGraph, GraphError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    let abstract_graph = UdGraph::from_edges(file.n, &edges)?;
    let Some(pts) = file.points else {
        return Ok(abstract_graph);
    };
    if pts.len() != file.n {
        return Err(parse_err(1, format!("{} points for n = {}", pts.len(), file.n)));
    }
    let points = pts
        .iter()
        .map(|s| s.parse::<EPoint>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| parse_err(1, e.to_string()))?;
    let g = UdGraph::from_points(points)?;
    if g.adj != abstract_graph.adj {
        return Err(GraphError::GeometryMismatch);
    }
    Ok(g)
}
