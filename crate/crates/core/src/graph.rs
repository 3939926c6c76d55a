//! Simple k-regular graphs with prescribed girth, used as pasting schemes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Half-edge label at `u`, in `1..=k`.
    pub lu: usize,
    /// Half-edge label at `v`, in `1..=k`.
    pub lv: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    pub k: usize,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no graph found within the iteration budget ({0} iterations)")]
    BudgetExhausted(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl RegularGraph {
    /// Labels each vertex's incident edges `1..=k` in list order.
    pub fn from_pairs(k: usize, vertex_count: usize, pairs: &[(usize, usize)]) -> RegularGraph {
        let mut next = vec![0usize; vertex_count];
        let edges = pairs
            .iter()
            .map(|&(u, v)| {
                next[u] += 1;
                next[v] += 1;
                Edge { u, v, lu: next[u], lv: next[v] }
            })
            .collect();
        RegularGraph { k, vertex_count, edges }
    }

    pub fn complete(n: usize) -> RegularGraph {
        let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        RegularGraph::from_pairs(n - 1, n, &pairs)
    }

    pub fn complete_bipartite(k: usize) -> RegularGraph {
        let pairs: Vec<_> = (0..k).flat_map(|u| (0..k).map(move |v| (u, k + v))).collect();
        RegularGraph::from_pairs(k, 2 * k, &pairs)
    }

    pub fn cycle(n: usize) -> RegularGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        RegularGraph::from_pairs(2, n, &pairs)
    }

    pub fn petersen() -> RegularGraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((i + 5, (i + 2) % 5 + 5));
        }
        RegularGraph::from_pairs(3, 10, &pairs)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::Malformed(m));
        let mut labels = vec![BTreeSet::new(); self.vertex_count];
        let mut seen = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= self.vertex_count || e.v >= self.vertex_count {
                return bad(format!("edge {i} references a missing vertex"));
            }
            if e.u == e.v {
                return bad(format!("edge {i} is a loop"));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return bad(format!("edge {i} is a repeated edge"));
            }
            for (x, l) in [(e.u, e.lu), (e.v, e.lv)] {
                if l == 0 || l > self.k || !labels[x].insert(l) {
                    return bad(format!("edge {i} has an invalid or repeated label at vertex {x}"));
                }
            }
        }
        for (x, ls) in labels.iter().enumerate() {
            if ls.len() != self.k {
                return bad(format!("vertex {x} has degree {} instead of {}", ls.len(), self.k));
            }
        }
        Ok(())
    }

    /// Length of a shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Result<Option<usize>, GraphError> {
        self.validate()?;
        Ok(girth_of(&self.adjacency()))
    }

    pub fn is_connected(&self) -> bool {
        components(&self.adjacency()) <= 1
    }
}

/// Shortest cycle length by breadth-first search from every vertex.
pub fn girth_of(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                break;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

fn components(adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

fn check_domain(k: usize, l: usize) -> Result<(), GraphError> {
    if k < 2 || l < 3 {
        return Err(GraphError::Domain(format!("need k >= 2 and l >= 3, got k={k}, l={l}")));
    }
    Ok(())
}

/// `4 * sum_{t=1}^{l-2} (k-1)^t`, an upper bound on the order of a smallest
/// k-regular graph of girth l.
pub fn es_bound(k: usize, l: usize) -> Result<u128, GraphError> {
    check_domain(k, l)?;
    let overflow = || GraphError::Domain("bound exceeds 128 bits".into());
    let base = (k - 1) as u128;
    let mut term = 1u128;
    let mut sum = 0u128;
    for _ in 1..=l - 2 {
        term = term.checked_mul(base).ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    sum.checked_mul(4).ok_or_else(overflow)
}

/// `(k-1)^l`, which dominates [`es_bound`] for `k >= 4`.
pub fn es_bound_simplified(k: usize, l: usize) -> Result<u128, GraphError> {
    check_domain(k, l)?;
    ((k - 1) as u128).checked_pow(l as u32).ok_or_else(|| GraphError::Domain("bound exceeds 128 bits".into()))
}

/// Order of a k-regular graph of girth l can be no smaller than this.
pub fn moore_bound(k: usize, l: usize) -> usize {
    let d = l / 2;
    let geo: usize = (0..d).map(|i| (k - 1).pow(i as u32)).sum();
    if l % 2 == 1 {
        1 + k * geo
    } else {
        2 * geo
    }
}

struct Work {
    l: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Work {
    /// Distance from `a` to `b` ignoring the edge `ab`, capped at `cap`.
    fn dist_avoiding(&self, a: usize, b: usize, cap: usize) -> usize {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            if dist[x] >= cap {
                break;
            }
            for &y in &self.adj[x] {
                if (x == a && y == b) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                if y == b {
                    return dist[y];
                }
                q.push_back(y);
            }
        }
        cap
    }

    /// Whether edge `ab` lies on a cycle shorter than `l`.
    fn short(&self, a: usize, b: usize) -> bool {
        self.dist_avoiding(a, b, self.l - 1) < self.l - 1
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Replace `ab, cd` by `ac, bd` when that creates no cycle shorter than `l`.
    fn try_swap(&mut self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || b == d || self.adj[a].contains(&c) || self.adj[b].contains(&d) {
            return false;
        }
        let set = |w: &mut Self, x: usize, y: usize, on: bool| {
            if on {
                w.adj[x].insert(y);
                w.adj[y].insert(x);
            } else {
                w.adj[x].remove(&y);
                w.adj[y].remove(&x);
            }
        };
        set(self, a, b, false);
        set(self, c, d, false);
        set(self, a, c, true);
        set(self, b, d, true);
        if self.short(a, c) || self.short(b, d) {
            set(self, a, c, false);
            set(self, b, d, false);
            set(self, a, b, true);
            set(self, c, d, true);
            return false;
        }
        true
    }
}

/// Simple k-regular pairing on `n` vertices; `None` when the greedy pairing
/// gets stuck.
fn random_pairing(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<BTreeSet<usize>>> {
    let mut points: Vec<usize> = (0..n * k).map(|p| p / k).collect();
    points.shuffle(rng);
    let mut adj = vec![BTreeSet::new(); n];
    while let Some(x) = points.pop() {
        let ok: Vec<usize> = (0..points.len()).filter(|&i| points[i] != x && !adj[x].contains(&points[i])).collect();
        let &i = ok.get(rng.gen_range(0..ok.len().max(1)))?;
        let y = points.swap_remove(i);
        adj[x].insert(y);
        adj[y].insert(x);
    }
    Some(adj)
}

/// A connected simple k-regular graph of girth at least `l` on at most
/// [`es_bound`] vertices, deterministic in `seed`. `budget` caps the number
/// of pairing attempts plus edge swaps.
pub fn generate_regular_girth(k: usize, l: usize, seed: u64, budget: u64) -> Result<RegularGraph, GraphError> {
    check_domain(k, l)?;
    let cap = es_bound(k, l)?.min(usize::MAX as u128) as usize;
    if k == 2 {
        return Ok(RegularGraph::cycle(l));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spent = 0u64;
    // Start well above the Moore bound and grow on repeated failure.
    let mut n = (2 * moore_bound(k, l)).max(k + 1).min(cap);
    loop {
        if n * k % 2 == 1 {
            n += 1;
        }
        if n > cap {
            return Err(GraphError::BudgetExhausted(spent));
        }
        let round_budget = spent + (budget / 4).max(1);
        while spent < round_budget.min(budget) {
            spent += 1;
            let Some(adj) = random_pairing(k, n, &mut rng) else { continue };
            let mut w = Work { l, adj };
            if repair(&mut w, &mut rng, &mut spent, round_budget.min(budget)) {
                let pairs = w.edges();
                let g = RegularGraph::from_pairs(k, n, &pairs);
                if g.girth()?.is_some_and(|x| x >= l) && g.is_connected() {
                    return Ok(g);
                }
            }
        }
        if spent >= budget {
            return Err(GraphError::BudgetExhausted(spent));
        }
        n += (n / 8).max(2);
    }
}

/// Swap away short cycles, then join components. Returns success.
fn repair(w: &mut Work, rng: &mut ChaCha8Rng, spent: &mut u64, limit: u64) -> bool {
    loop {
        let edges = w.edges();
        let bad: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| w.short(a, b)).collect();
        let adjv: Vec<Vec<usize>> = w.adj.iter().map(|s| s.iter().copied().collect()).collect();
        if bad.is_empty() && components(&adjv) == 1 {
            return true;
        }
        let e1 = if let Some(&e) = bad.choose(rng) {
            e
        } else {
            *edges.choose(rng).unwrap()
        };
        let mut moved = false;
        for _ in 0..64 {
            *spent += 1;
            if *spent > limit {
                return false;
            }
            let (c, d) = *edges.choose(rng).unwrap();
            let e2 = if rng.gen_bool(0.5) { (c, d) } else { (d, c) };
            if e2.0 == e1.0 || e2.0 == e1.1 || e2.1 == e1.0 || e2.1 == e1.1 {
                continue;
            }
            if bad.is_empty() {
                // Only join different components when repairing connectivity.
                let comp = component_of(&adjv, e1.0);
                if comp[e2.0] {
                    continue;
                }
            }
            if w.try_swap(e1, e2) {
                moved = true;
                break;
            }
        }
        if !moved && *spent > limit {
            return false;
        }
    }
}

fn component_of(adj: &[Vec<usize>], s: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

pub fn store_graph(g: &RegularGraph) -> String {
    let mut out = format!("{} {}\n", g.k, g.vertex_count);
    for e in &g.edges {
        let _ = writeln!(out, "{} {} {} {}", e.u, e.v, e.lu, e.lv);
    }
    out
}

pub fn load_graph(text: &str) -> Result<RegularGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let nums: Result<Vec<usize>, _> = content.split_whitespace().map(str::parse).collect();
        let err = |msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let nums = nums.map_err(|_| err("expected non-negative integers"))?;
        match (header, nums.as_slice()) {
            (None, &[k, n]) => header = Some((k, n)),
            (None, _) => return Err(err("expected header `k n`")),
            (Some(_), &[u, v, lu, lv]) => edges.push(Edge { u, v, lu, lv }),
            (Some(_), _) => return Err(err("expected `u v lu lv`")),
        }
    }
    let (k, vertex_count) = header.ok_or(GraphError::Parse { line: 0, msg: "empty input".into() })?;
    let g = RegularGraph { k, vertex_count, edges };
    g.validate()?;
    Ok(g)
}
