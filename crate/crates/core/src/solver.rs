//! Exact k-colorability by DSATUR branch and bound, plus certificates.
//!
//! The search precolors the first maximum clique (colors `0..ω`), then
//! repeatedly branches on the uncolored vertex of highest saturation, ties
//! broken by higher degree and then lower id. Colors are tried in increasing
//! order. A vertex whose saturation reaches `k` closes the branch.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{degeneracy, max_clique_vertices, UdGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("assignment leaves vertex {0} without a color")]
    UncoloredVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl SolverError {
    pub fn code(&self) -> &'static str {
        match self {
            SolverError::BudgetExceeded { .. } => "E_BUDGET_EXCEEDED",
            SolverError::SizeMismatch { .. } => "E_SIZE_MISMATCH",
            SolverError::UncoloredVertex(_) => "E_UNCOLORED_VERTEX",
            SolverError::Parse { .. } => "E_PARSE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub k: usize,
}

impl Coloring {
    /// Uses the smallest `k` covering every color present.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().map(|c| c + 1).max().unwrap_or(0);
        Coloring { colors, k }
    }

    /// Number of distinct colors actually used.
    pub fn used(&self) -> usize {
        let mut seen = vec![false; self.k];
        for &c in &self.colors {
            if c < self.k {
                seen[c] = true;
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorabilityAnswer {
    pub colorable: bool,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
    /// False when the witness came from the parallel search, whose choice
    /// among valid witnesses depends on scheduling.
    pub canonical: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub node_limit: Option<u64>,
    /// `None` or `Some(1)` runs the deterministic sequential search.
    pub threads: Option<usize>,
}

struct Search<'g> {
    g: &'g UdGraph,
    k: usize,
    color: Vec<usize>,
    // per (vertex, color): number of colored neighbours using that color
    nb_count: Vec<u32>,
    saturation: Vec<usize>,
    degree: Vec<usize>,
    uncolored: usize,
    nodes: u64,
    limit: Option<u64>,
}

const NONE: usize = usize::MAX;

impl<'g> Search<'g> {
    fn new(g: &'g UdGraph, k: usize, limit: Option<u64>) -> Self {
        let n = g.n();
        Search {
            g,
            k,
            color: vec![NONE; n],
            nb_count: vec![0; n * k],
            saturation: vec![0; n],
            degree: g.degrees(),
            uncolored: n,
            nodes: 0,
            limit,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.uncolored -= 1;
        for w in self.g.neighbors(v) {
            let slot = &mut self.nb_count[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        self.uncolored += 1;
        for w in self.g.neighbors(v) {
            let slot = &mut self.nb_count[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            best = match best {
                Some(b)
                    if (self.saturation[b], self.degree[b])
                        >= (self.saturation[v], self.degree[v]) =>
                {
                    Some(b)
                }
                _ => Some(v),
            };
        }
        best
    }

    fn free_colors(&self, v: usize) -> Vec<usize> {
        (0..self.k)
            .filter(|&c| self.nb_count[v * self.k + c] == 0)
            .collect()
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        match self.limit {
            Some(limit) if self.nodes > limit => Err(SolverError::BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }

    fn run(&mut self) -> Result<bool, SolverError> {
        let Some(v) = self.select() else {
            return Ok(true);
        };
        if self.saturation[v] >= self.k {
            return Ok(false);
        }
        for c in self.free_colors(v) {
            self.tick()?;
            self.assign(v, c);
            if self.run()? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }

    fn witness(&self) -> Coloring {
        Coloring {
            colors: self.color.clone(),
            k: self.k,
        }
    }

    fn clone_state(&self) -> Search<'g> {
        Search {
            g: self.g,
            k: self.k,
            color: self.color.clone(),
            nb_count: self.nb_count.clone(),
            saturation: self.saturation.clone(),
            degree: self.degree.clone(),
            uncolored: self.uncolored,
            nodes: 0,
            limit: self.limit,
        }
    }
}

/// Decides whether `g` has a proper coloring with `k` colors.
pub fn is_k_colorable(g: &UdGraph, k: usize) -> ColorabilityAnswer {
    solve(g, k, &SolveOptions::default()).expect("unbounded search cannot exceed its budget")
}

pub fn solve(g: &UdGraph, k: usize, opts: &SolveOptions) -> Result<ColorabilityAnswer, SolverError> {
    let n = g.n();
    if n == 0 {
        return Ok(ColorabilityAnswer {
            colorable: true,
            witness: Some(Coloring { colors: vec![], k }),
            nodes_explored: 0,
            canonical: true,
        });
    }
    let clique = max_clique_vertices(g);
    if clique.len() > k {
        return Ok(ColorabilityAnswer {
            colorable: false,
            witness: None,
            nodes_explored: 0,
            canonical: true,
        });
    }
    let mut search = Search::new(g, k, opts.node_limit);
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    match opts.threads {
        Some(t) if t > 1 => solve_parallel(search, t),
        _ => {
            let colorable = search.run()?;
            Ok(ColorabilityAnswer {
                colorable,
                witness: colorable.then(|| search.witness()),
                nodes_explored: search.nodes,
                canonical: true,
            })
        }
    }
}

/// Splits the first branching vertex's colors across a thread pool. Each
/// branch keeps its own node budget.
fn solve_parallel(root: Search<'_>, threads: usize) -> Result<ColorabilityAnswer, SolverError> {
    let Some(v) = root.select() else {
        return Ok(ColorabilityAnswer {
            colorable: true,
            witness: Some(root.witness()),
            nodes_explored: 0,
            canonical: true,
        });
    };
    if root.saturation[v] >= root.k {
        return Ok(ColorabilityAnswer {
            colorable: false,
            witness: None,
            nodes_explored: 0,
            canonical: true,
        });
    }
    let branches = root.free_colors(v);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    type Branch = Result<(bool, u64, Option<Coloring>), SolverError>;
    let results: Vec<Branch> = pool.install(|| {
        branches
            .par_iter()
            .map(|&c| {
                let mut s = root.clone_state();
                s.tick()?;
                s.assign(v, c);
                let ok = s.run()?;
                Ok((ok, s.nodes, ok.then(|| s.witness())))
            })
            .collect()
    });
    let mut nodes = 0;
    let mut witness = None;
    for r in results {
        let (ok, n, w) = r?;
        nodes += n;
        if ok && witness.is_none() {
            witness = w;
        }
    }
    Ok(ColorabilityAnswer {
        colorable: witness.is_some(),
        witness,
        nodes_explored: nodes,
        canonical: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticResult {
    pub chromatic_number: usize,
    pub witness: Coloring,
    /// The exhausted search for `chromatic_number − 1` colors, absent when
    /// the chromatic number is 0.
    pub infeasibility: Option<ColorabilityAnswer>,
    pub nodes_explored: u64,
}

/// Smallest `k` for which [`is_k_colorable`] succeeds.
pub fn chromatic_number(g: &UdGraph) -> ChromaticResult {
    chromatic_number_with(g, &SolveOptions::default())
        .expect("unbounded search cannot exceed its budget")
}

/// [`chromatic_number`] under a node budget and optional parallel search;
/// the value is the same in every mode.
pub fn chromatic_number_with(
    g: &UdGraph,
    opts: &SolveOptions,
) -> Result<ChromaticResult, SolverError> {
    let mut previous: Option<ColorabilityAnswer> = None;
    let mut total = 0;
    for k in 0..=g.n() {
        let ans = solve(g, k, opts)?;
        total += ans.nodes_explored;
        if ans.colorable {
            return Ok(ChromaticResult {
                chromatic_number: k,
                witness: ans.witness.expect("colorable answers carry a witness"),
                infeasibility: previous,
                nodes_explored: total,
            });
        }
        previous = Some(ans);
    }
    unreachable!("every graph on n vertices is n-colorable")
}

/// Colors vertices in reverse degeneracy order with the smallest free color;
/// uses at most `degeneracy + 1` colors.
pub fn greedy_degeneracy_coloring(g: &UdGraph) -> Coloring {
    let order = degeneracy(g).elimination_order;
    let mut colors = vec![NONE; g.n()];
    for &v in order.iter().rev() {
        let taken: Vec<usize> = g
            .neighbors(v)
            .map(|w| colors[w])
            .filter(|&c| c != NONE)
            .collect();
        colors[v] = (0..).find(|c| !taken.contains(c)).expect("a free color exists");
    }
    Coloring::from_colors(colors)
}

/// True iff every color is below `k` and no edge is monochromatic.
pub fn verify_coloring(g: &UdGraph, c: &Coloring) -> Result<bool, SolverError> {
    if c.colors.len() != g.n() {
        return Err(SolverError::SizeMismatch {
            expected: g.n(),
            got: c.colors.len(),
        });
    }
    if c.colors.iter().any(|&x| x >= c.k) {
        return Ok(false);
    }
    Ok(g.edges().into_iter().all(|(u, v)| c.colors[u] != c.colors[v]))
}

/// DIMACS variable for "vertex `v` has color `c`".
pub fn cnf_var(v: usize, c: usize, k: usize) -> usize {
    v * k + c + 1
}

/// `(variables, clauses)` of the k-colorability CNF.
pub fn cnf_counts(g: &UdGraph, k: usize) -> (usize, usize) {
    (g.n() * k, g.n() + g.edge_count() * k)
}

/// k-colorability as DIMACS CNF: one at-least-one clause per vertex, then
/// `¬x(u,c) ∨ ¬x(v,c)` for every edge and color. At-most-one clauses are
/// omitted; [`decode_assignment`] picks the lowest true color.
pub fn to_cnf(g: &UdGraph, k: usize) -> String {
    let (vars, clauses) = cnf_counts(g, k);
    let mut out = format!("p cnf {vars} {clauses}\n");
    for v in 0..g.n() {
        for c in 0..k {
            out.push_str(&format!("{} ", cnf_var(v, c, k)));
        }
        out.push_str("0\n");
    }
    for (u, v) in g.edges() {
        for c in 0..k {
            out.push_str(&format!("-{} -{} 0\n", cnf_var(u, c, k), cnf_var(v, c, k)));
        }
    }
    out
}

/// Reads a solver model: `v`-lines of signed literals (an optional `s`
/// status line and `c` comments are skipped). Unmentioned variables are false.
pub fn parse_sat_model(text: &str, vars: usize) -> Result<Vec<bool>, SolverError> {
    let mut model = vec![false; vars];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace().peekable();
        match fields.peek().copied() {
            None | Some("c") | Some("s") => continue,
            Some("v") => {
                fields.next();
            }
            _ => {}
        }
        for f in fields {
            let lit: i64 = f.parse().map_err(|_| SolverError::Parse {
                line,
                message: format!("bad literal {f:?}"),
            })?;
            if lit == 0 {
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(SolverError::Parse {
                    line,
                    message: format!("variable {var} exceeds {vars}"),
                });
            }
            model[var - 1] = lit > 0;
        }
    }
    Ok(model)
}

pub fn decode_assignment(g: &UdGraph, k: usize, model: &[bool]) -> Result<Coloring, SolverError> {
    if model.len() != g.n() * k {
        return Err(SolverError::SizeMismatch {
            expected: g.n() * k,
            got: model.len(),
        });
    }
    let colors = (0..g.n())
        .map(|v| {
            (0..k)
                .find(|&c| model[cnf_var(v, c, k) - 1])
                .ok_or(SolverError::UncoloredVertex(v))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Coloring { colors, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_needs_three() {
        let c5 = UdGraph::cycle(5);
        assert!(!is_k_colorable(&c5, 2).colorable);
        let ans = is_k_colorable(&c5, 3);
        assert!(ans.colorable);
        assert!(verify_coloring(&c5, ans.witness.as_ref().unwrap()).unwrap());
        assert_eq!(chromatic_number(&c5).chromatic_number, 3);
    }

    #[test]
    fn trivial_graphs() {
        let k1 = UdGraph::from_edges(1, &[]).unwrap();
        let r = chromatic_number(&k1);
        assert_eq!(r.chromatic_number, 1);
        assert_eq!(r.witness.colors, vec![0]);
        assert!(!r.infeasibility.unwrap().colorable);
        let empty = UdGraph::from_edges(0, &[]).unwrap();
        assert_eq!(chromatic_number(&empty).chromatic_number, 0);
        assert!(!is_k_colorable(&k1, 0).colorable);
    }

    #[test]
    fn clique_precolor_short_circuits() {
        let ans = is_k_colorable(&UdGraph::complete(4), 3);
        assert!(!ans.colorable);
        assert_eq!(ans.nodes_explored, 0);
    }

    #[test]
    fn budget_is_reported() {
        let g = UdGraph::cycle(9);
        let opts = SolveOptions {
            node_limit: Some(1),
            threads: None,
        };
        assert_eq!(solve(&g, 2, &opts), Err(SolverError::BudgetExceeded { limit: 1 }));
    }

    #[test]
    fn parallel_matches_sequential_answer() {
        let g = UdGraph::cycle(7);
        let opts = SolveOptions {
            node_limit: None,
            threads: Some(3),
        };
        for k in 1..4 {
            let par = solve(&g, k, &opts).unwrap();
            assert_eq!(par.colorable, is_k_colorable(&g, k).colorable);
            if let Some(w) = par.witness {
                assert!(verify_coloring(&g, &w).unwrap());
            }
        }
    }

    #[test]
    fn verify_cases() {
        let c3 = UdGraph::complete(3);
        assert!(verify_coloring(&c3, &Coloring { colors: vec![0, 1, 2], k: 3 }).unwrap());
        assert!(!verify_coloring(&c3, &Coloring { colors: vec![0, 0, 1], k: 3 }).unwrap());
        assert!(!verify_coloring(&c3, &Coloring { colors: vec![0, 1, 3], k: 3 }).unwrap());
        assert_eq!(
            verify_coloring(&c3, &Coloring { colors: vec![0, 1], k: 3 }),
            Err(SolverError::SizeMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn greedy_on_path() {
        let p3 = UdGraph::path(3);
        let c = greedy_degeneracy_coloring(&p3);
        assert!(c.k <= 2);
        assert!(verify_coloring(&p3, &c).unwrap());
    }

    #[test]
    fn cnf_text() {
        let g = UdGraph::path(2);
        assert_eq!(
            to_cnf(&g, 2),
            "p cnf 4 4\n1 2 0\n3 4 0\n-1 -3 0\n-2 -4 0\n"
        );
        let model = parse_sat_model("s SATISFIABLE\nv 1 -2 -3\nv 4 0\n", 4).unwrap();
        assert_eq!(model, vec![true, false, false, true]);
        let c = decode_assignment(&g, 2, &model).unwrap();
        assert_eq!(c.colors, vec![0, 1]);
        assert_eq!(
            decode_assignment(&g, 2, &[false; 4]),
            Err(SolverError::UncoloredVertex(0))
        );
        assert!(parse_sat_model("v 9 0\n", 4).is_err());
        assert!(parse_sat_model("v x 0\n", 4).is_err());
    }
}
