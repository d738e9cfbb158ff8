//! Oracles shared by the integration tests. None of these call into the
//! solver or the exact distance code they are used to check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unitdist::plane::RatPoint;
use unitdist::{pyth_unit_vector, rat, rat_int, UdGraph};

/// Unit pairs by floating-point distance with a tolerance far below the gap
/// between distinct algebraic distances in the catalog.
pub fn float_unit_pairs(points: &[(f64, f64)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            if (dx * dx + dy * dy - 1.0).abs() < 1e-9 {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn approx_points(g: &UdGraph) -> Vec<(f64, f64)> {
    g.points().expect("geometric").iter().map(|p| p.approx()).collect()
}

/// Enumerates all `k^n` assignments.
pub fn brute_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colors = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn brute_chromatic(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..=n).find(|&k| brute_colorable(n, edges, k)).unwrap()
}

/// Degeneracy as the maximum over nonempty vertex subsets of the minimum
/// induced degree.
pub fn brute_degeneracy(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= 20);
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let min_deg = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| {
                edges
                    .iter()
                    .filter(|&&(a, b)| {
                        (a == v && mask >> b & 1 == 1) || (b == v && mask >> a & 1 == 1)
                    })
                    .count()
            })
            .min()
            .unwrap();
        best = best.max(min_deg);
    }
    best
}

pub fn brute_clique(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= 20);
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    (0u32..(1 << n))
        .filter(|&mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (n, edges)
}

/// BFS 2-coloring; `None` if some component has an odd cycle.
pub fn bfs_two_coloring(n: usize, adj: &[Vec<usize>]) -> Option<Vec<u8>> {
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// Vertices reachable from `start`.
pub fn component(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort();
    out
}

/// Small DPLL over DIMACS text, randomized branching so repeated calls find
/// different models. Returns `None` when unsatisfiable.
pub fn dpll_model<R: Rng>(cnf: &str, rng: &mut R) -> Option<Vec<bool>> {
    let mut vars = 0;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for line in cnf.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.first() == Some(&"p") {
            vars = f[2].parse().unwrap();
            continue;
        }
        let lits: Vec<i64> = f.iter().map(|x| x.parse().unwrap()).filter(|&x| x != 0).collect();
        clauses.push(lits);
    }
    fn value(assign: &[Option<bool>], lit: i64) -> Option<bool> {
        assign[lit.unsigned_abs() as usize - 1].map(|b| b == (lit > 0))
    }
    fn go<R: Rng>(clauses: &[Vec<i64>], assign: &mut Vec<Option<bool>>, rng: &mut R) -> bool {
        // unit propagation
        let mut trail = Vec::new();
        loop {
            let mut changed = false;
            for c in clauses {
                if c.iter().any(|&l| value(assign, l) == Some(true)) {
                    continue;
                }
                let open: Vec<i64> = c.iter().copied().filter(|&l| value(assign, l).is_none()).collect();
                match open.len() {
                    0 => {
                        for v in trail {
                            assign[v] = None;
                        }
                        return false;
                    }
                    1 => {
                        let l = open[0];
                        let v = l.unsigned_abs() as usize - 1;
                        assign[v] = Some(l > 0);
                        trail.push(v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let Some(v) = (0..assign.len()).find(|&v| assign[v].is_none()) else {
            return true;
        };
        let first: bool = rng.gen();
        for b in [first, !first] {
            assign[v] = Some(b);
            if go(clauses, assign, rng) {
                return true;
            }
        }
        assign[v] = None;
        for t in trail {
            assign[t] = None;
        }
        false
    }
    let mut assign = vec![None; vars];
    if go(&clauses, &mut assign, rng) {
        Some(assign.into_iter().map(|a| a.unwrap_or(false)).collect())
    } else {
        None
    }
}

/// Checks every clause of a DIMACS CNF against a model.
pub fn satisfies(cnf: &str, model: &[bool]) -> bool {
    cnf.lines()
        .filter(|l| !l.starts_with('p') && !l.starts_with('c'))
        .all(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<i64>().unwrap())
                .filter(|&x| x != 0)
                .any(|lit| model[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
}

/// Random rational point set grown by unit steps from the origin, plus noise
/// points, with its exact unit-distance adjacency.
pub fn random_rational_graph(seed: u64, n: usize) -> (Vec<RatPoint>, Vec<Vec<usize>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![RatPoint::new(rat_int(0), rat_int(0))];
    while pts.len() < n {
        let p = if rng.gen_bool(0.85) {
            let base = pts[rng.gen_range(0..pts.len())].clone();
            let u = pyth_unit_vector(&rat(rng.gen_range(-6..=6), rng.gen_range(1..=6)));
            let (ux, uy) = (u.ux.as_rat().unwrap(), u.uy.as_rat().unwrap());
            let sx = if rng.gen_bool(0.5) { -ux } else { ux };
            RatPoint::new(base.x + sx, base.y + uy)
        } else {
            RatPoint::new(
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=8)),
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=8)),
            )
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut adj = vec![Vec::new(); pts.len()];
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].is_unit(&pts[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    (pts, adj)
}

