//! Finite digraphs and their categorical structure: homomorphism search,
//! sums, products, exponentials, cores and connectivity.

use std::fmt::Write as _;

use thiserror::Error;

/// Cap on the vertex count of a constructed exponential digraph.
pub const DEFAULT_EXPONENTIAL_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("arc ({0}, {1}) out of range for {2} vertices")]
    InvalidArc(usize, usize, usize),
    #[error("size limit exceeded: {what} needs {size}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A finite digraph: `n` vertices `0..n`, arcs as a sorted duplicate-free
/// set of ordered pairs. Loops are permitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(DigraphError::InvalidArc(u, v, n));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Digraph { n, arcs })
    }

    fn from_parts(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        Digraph { n, arcs }
    }

    pub fn empty() -> Self {
        Digraph { n: 0, arcs: vec![] }
    }

    pub fn looped_vertex() -> Self {
        Digraph {
            n: 1,
            arcs: vec![(0, 0)],
        }
    }

    /// Directed path with `k` arcs on `k + 1` vertices; `path(0)` is a
    /// single vertex.
    pub fn path(k: usize) -> Self {
        Digraph {
            n: k + 1,
            arcs: (0..k).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Transitive tournament on `k ≥ 1` vertices: arcs `i -> j` for `i < j`.
    pub fn transitive_tournament(k: usize) -> Result<Self, DigraphError> {
        if k == 0 {
            return Err(DigraphError::InvalidParameter(
                "transitive tournament needs at least 1 vertex".into(),
            ));
        }
        let arcs = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        Ok(Digraph { n: k, arcs })
    }

    /// Directed cycle on `k ≥ 1` vertices; `cycle(1)` is the looped vertex.
    pub fn cycle(k: usize) -> Result<Self, DigraphError> {
        if k == 0 {
            return Err(DigraphError::InvalidParameter(
                "cycle needs at least 1 vertex".into(),
            ));
        }
        Ok(Digraph {
            n: k,
            arcs: (0..k).map(|i| (i, (i + 1) % k)).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    /// Induced subgraph on `keep` (strictly increasing vertex list),
    /// relabelled to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let pos = |v: usize| keep.binary_search(&v).ok();
        let arcs = self
            .arcs
            .iter()
            .filter_map(|&(u, v)| Some((pos(u)?, pos(v)?)))
            .collect();
        Digraph::from_parts(keep.len(), arcs)
    }

    /// Relabels vertices: `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Digraph::from_parts(self.n, arcs)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        let mut touched = vec![false; self.n];
        for &(u, v) in &self.arcs {
            touched[u] = true;
            touched[v] = true;
        }
        for (v, seen) in touched.iter().enumerate() {
            if !seen {
                let _ = writeln!(s, "  {v};");
            }
        }
        for &(u, v) in &self.arcs {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }

    /// Parses an adjacency matrix: one row of 0/1 per line, optional
    /// whitespace between entries.
    pub fn from_matrix_str(s: &str) -> Result<Self, DigraphError> {
        let rows: Vec<Vec<bool>> = s
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(DigraphError::InvalidParameter(format!(
                            "matrix entry `{other}` is not 0/1"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        let mut arcs = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(DigraphError::InvalidParameter(format!(
                    "matrix row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (v, &bit) in row.iter().enumerate() {
                if bit {
                    arcs.push((u, v));
                }
            }
        }
        Ok(Digraph::from_parts(n, arcs))
    }
}

/// A vertex map witnessing a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub map: Vec<usize>,
}

impl Hom {
    /// Verifies that the map sends every arc of `g` to an arc of `h`.
    pub fn is_valid(&self, g: &Digraph, h: &Digraph) -> bool {
        self.map.len() == g.vertex_count()
            && self.map.iter().all(|&t| t < h.vertex_count())
            && g.arcs()
                .iter()
                .all(|&(u, v)| h.has_arc(self.map[u], self.map[v]))
    }
}

/// Backtracking homomorphism search with forward checking: every
/// unassigned vertex keeps a candidate set pruned by its assigned
/// neighbours. Vertex order is most-constrained-first, ties by index;
/// candidate order is by index, so the witness is deterministic.
pub fn find_hom(g: &Digraph, h: &Digraph) -> Option<Hom> {
    let gn = g.vertex_count();
    let hn = h.vertex_count();
    if gn == 0 {
        return Some(Hom { map: vec![] });
    }
    if hn == 0 {
        return None;
    }
    let mut out_nbrs = vec![Vec::new(); gn];
    let mut in_nbrs = vec![Vec::new(); gn];
    let mut has_loop = vec![false; gn];
    for &(u, v) in g.arcs() {
        if u == v {
            has_loop[u] = true;
        } else {
            out_nbrs[u].push(v);
            in_nbrs[v].push(u);
        }
    }
    let mut domains: Vec<Vec<bool>> = (0..gn)
        .map(|u| (0..hn).map(|t| !has_loop[u] || h.has_arc(t, t)).collect())
        .collect();
    let mut counts: Vec<usize> = domains
        .iter()
        .map(|d| d.iter().filter(|&&b| b).count())
        .collect();
    let mut assignment = vec![usize::MAX; gn];
    if search(
        g,
        h,
        &out_nbrs,
        &in_nbrs,
        &mut domains,
        &mut counts,
        &mut assignment,
        0,
    ) {
        Some(Hom { map: assignment })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Digraph,
    h: &Digraph,
    out_nbrs: &[Vec<usize>],
    in_nbrs: &[Vec<usize>],
    domains: &mut Vec<Vec<bool>>,
    counts: &mut Vec<usize>,
    assignment: &mut Vec<usize>,
    depth: usize,
) -> bool {
    if depth == g.vertex_count() {
        return true;
    }
    let u = (0..g.vertex_count())
        .filter(|&v| assignment[v] == usize::MAX)
        .min_by_key(|&v| (counts[v], v))
        .expect("unassigned vertex exists");
    for t in 0..h.vertex_count() {
        if !domains[u][t] {
            continue;
        }
        assignment[u] = t;
        let mut pruned: Vec<(usize, usize)> = Vec::new();
        let mut dead = false;
        for &w in &out_nbrs[u] {
            if assignment[w] != usize::MAX {
                if !h.has_arc(t, assignment[w]) {
                    dead = true;
                }
            } else {
                for (c, open) in domains[w].iter_mut().enumerate() {
                    if *open && !h.has_arc(t, c) {
                        *open = false;
                        counts[w] -= 1;
                        pruned.push((w, c));
                    }
                }
                if counts[w] == 0 {
                    dead = true;
                }
            }
            if dead {
                break;
            }
        }
        if !dead {
            for &w in &in_nbrs[u] {
                if assignment[w] != usize::MAX {
                    if !h.has_arc(assignment[w], t) {
                        dead = true;
                    }
                } else {
                    for (c, open) in domains[w].iter_mut().enumerate() {
                        if *open && !h.has_arc(c, t) {
                            *open = false;
                            counts[w] -= 1;
                            pruned.push((w, c));
                        }
                    }
                    if counts[w] == 0 {
                        dead = true;
                    }
                }
                if dead {
                    break;
                }
            }
        }
        if !dead
            && search(
                g,
                h,
                out_nbrs,
                in_nbrs,
                domains,
                counts,
                assignment,
                depth + 1,
            )
        {
            return true;
        }
        for (w, c) in pruned {
            domains[w][c] = true;
            counts[w] += 1;
        }
        assignment[u] = usize::MAX;
    }
    false
}

pub fn hom_exists(g: &Digraph, h: &Digraph) -> bool {
    find_hom(g, h).is_some()
}

/// Disjoint union with vertex offsets; the empty sum is the empty digraph.
pub fn coproduct(parts: &[Digraph]) -> Digraph {
    let n = parts.iter().map(Digraph::vertex_count).sum();
    let mut arcs = Vec::new();
    let mut offset = 0;
    for p in parts {
        arcs.extend(p.arcs().iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += p.vertex_count();
    }
    Digraph::from_parts(n, arcs)
}

/// Categorical product: vertices are pairs, arcs are componentwise arcs.
/// Pair `(u, x)` is encoded as `u * h.n + x`.
pub fn product(g: &Digraph, h: &Digraph) -> Digraph {
    let hn = h.vertex_count();
    let mut arcs = Vec::new();
    for &(u, v) in g.arcs() {
        for &(x, y) in h.arcs() {
            arcs.push((u * hn + x, v * hn + y));
        }
    }
    Digraph::from_parts(g.vertex_count() * hn, arcs)
}

/// Exponential digraph: vertices are all functions `V(b) -> V(c)`, with an
/// arc `f -> g` when every arc `(u, v)` of `b` has `(f(u), g(v))` an arc of
/// `c`. Function `i` sends `u` to the `u`-th base-`|c|` digit of `i`.
pub fn exponential(c: &Digraph, b: &Digraph, cap: usize) -> Result<Digraph, DigraphError> {
    let cn = c.vertex_count();
    let bn = b.vertex_count();
    let size = cn
        .checked_pow(u32::try_from(bn).map_err(|_| DigraphError::SizeLimit {
            what: "exponential",
            size: usize::MAX,
            cap,
        })?)
        .ok_or(DigraphError::SizeLimit {
            what: "exponential",
            size: usize::MAX,
            cap,
        })?;
    if size > cap {
        return Err(DigraphError::SizeLimit {
            what: "exponential",
            size,
            cap,
        });
    }
    let digit = |func: usize, u: usize| {
        let mut f = func;
        for _ in 0..u {
            f /= cn;
        }
        f % cn
    };
    let mut arcs = Vec::new();
    for f in 0..size {
        for g in 0..size {
            let ok = b
                .arcs()
                .iter()
                .all(|&(u, v)| c.has_arc(digit(f, u), digit(g, v)));
            if ok {
                arcs.push((f, g));
            }
        }
    }
    Ok(Digraph::from_parts(size, arcs))
}

/// The core: the smallest retract. Repeatedly maps the graph into a proper
/// induced subgraph and keeps the image until no such map exists; the
/// result is unique up to isomorphism.
pub fn core_of(g: &Digraph) -> Digraph {
    let mut cur = g.clone();
    'outer: loop {
        for v in 0..cur.vertex_count() {
            let keep: Vec<usize> = (0..cur.vertex_count()).filter(|&x| x != v).collect();
            let sub = cur.induced(&keep);
            if let Some(hom) = find_hom(&cur, &sub) {
                let mut image: Vec<usize> = hom.map.clone();
                image.sort_unstable();
                image.dedup();
                cur = sub.induced(&image);
                continue 'outer;
            }
        }
        break;
    }
    cur
}

/// A digraph is a core when it has no homomorphism into a proper induced
/// subgraph. Any such homomorphism restricts to one avoiding a single
/// vertex, so checking single-vertex deletions suffices.
pub fn is_core(g: &Digraph) -> bool {
    (0..g.vertex_count()).all(|v| {
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&x| x != v).collect();
        !hom_exists(g, &g.induced(&keep))
    })
}

/// Weakly connected components as induced subdigraphs, ordered by their
/// smallest vertex.
pub fn weak_components(g: &Digraph) -> Vec<Digraph> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(u, v) in g.arcs() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_index[r] == usize::MAX {
            root_index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_index[r]].push(v);
    }
    groups.iter().map(|grp| g.induced(grp)).collect()
}

/// True when the underlying undirected multigraph is acyclic: loops count
/// as cycles, and opposite arcs `u -> v`, `v -> u` count as two parallel
/// edges (hence a cycle).
pub fn is_forest_orientation(g: &Digraph) -> bool {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(u, v) in g.arcs() {
        if u == v {
            return false;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}
