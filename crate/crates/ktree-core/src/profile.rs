//! Distances from the root clique and the connectivity profile.
//!
//! The profile entry `X[d][j]` counts added vertices whose graph distance
//! to the set of the first `j` root vertices `{1, …, j}` equals `d`
//! (root-clique vertices themselves are not counted). Distances are
//! computed incrementally: a new vertex's only neighbors are its
//! attachment clique, and attaching it creates no shortcut between older
//! vertices, so
//!
//!   dist(v, i) = 1 + min over attachment members w of dist(w, i),
//!
//! with dist between root vertices being 0 or 1. A plain BFS is kept as
//! the independent test oracle.

use std::collections::BTreeMap;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktree::KTree;
use crate::rng::uniform_index;

/// Per-added-vertex distances to each root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    k: usize,
    /// Row per added vertex (creation order), `k` entries each.
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn added_count(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.dist.len() / self.k
        }
    }

    /// Distance from added vertex `index` (0-based creation order) to root
    /// vertex `root` (0-based, i.e. root 0 is the vertex labeled 1).
    #[inline]
    pub fn distance(&self, index: usize, root: usize) -> u32 {
        self.dist[index * self.k + root]
    }

    /// Distance from added vertex `index` to the set of the first `j`
    /// root vertices.
    #[inline]
    pub fn root_set_distance(&self, index: usize, j: usize) -> u32 {
        let row = &self.dist[index * self.k..index * self.k + j];
        *row.iter().min().expect("j >= 1")
    }
}

/// Incremental distances from every added vertex to every root vertex.
pub fn root_distances(tree: &KTree) -> DistanceTable {
    let k = tree.k();
    let n = tree.n();
    let mut dist = vec![0u32; n * k];
    let mut members = Vec::with_capacity(k);
    for (step, &att) in tree.attachments().iter().enumerate() {
        tree.clique_members_into(att as usize, &mut members);
        for root in 0..k {
            let mut best = u32::MAX;
            for &m in &members {
                let d = if (m as usize) <= k {
                    u32::from(m as usize != root + 1)
                } else {
                    dist[(m as usize - k - 1) * k + root]
                };
                best = best.min(d);
            }
            dist[step * k + root] = 1 + best;
        }
    }
    DistanceTable { k, dist }
}

/// Adjacency in compressed sparse rows, vertex labels 1-based.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Adjacency {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let i = (v - 1) as usize;
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Materialize the adjacency lists of the k-tree graph.
pub fn adjacency(tree: &KTree) -> Adjacency {
    let k = tree.k();
    let total = tree.vertex_count();
    let mut degree = vec![0usize; total];
    for v in 0..k {
        degree[v] = k - 1;
    }
    let edges = tree.edges();
    for &(u, v) in edges.iter().skip(k * (k - 1) / 2) {
        degree[(u - 1) as usize] += 1;
        degree[(v - 1) as usize] += 1;
    }
    let mut offsets = vec![0usize; total + 1];
    for v in 0..total {
        offsets[v + 1] = offsets[v] + degree[v];
    }
    let mut cursor = offsets.clone();
    let mut neighbors = vec![0u32; offsets[total]];
    for (u, v) in edges {
        neighbors[cursor[(u - 1) as usize]] = v;
        cursor[(u - 1) as usize] += 1;
        neighbors[cursor[(v - 1) as usize]] = u;
        cursor[(v - 1) as usize] += 1;
    }
    Adjacency { offsets, neighbors }
}

/// Single-source BFS distances over the materialized adjacency; entry `i`
/// is the distance of vertex `i + 1`.
pub fn bfs_distances(tree: &KTree, source: u32) -> Result<Vec<u32>> {
    if source == 0 || source as usize > tree.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: source as usize,
            bound: tree.vertex_count() + 1,
        });
    }
    let adj = adjacency(tree);
    Ok(bfs_from(&adj, source))
}

fn bfs_from(adj: &Adjacency, source: u32) -> Vec<u32> {
    let total = adj.vertex_count();
    let mut dist = vec![u32::MAX; total];
    let mut queue = std::collections::VecDeque::new();
    dist[(source - 1) as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[(u - 1) as usize];
        for &w in adj.neighbors(u) {
            let slot = &mut dist[(w - 1) as usize];
            if *slot == u32::MAX {
                *slot = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Level counts of added vertices: `count(d, j)` is the number of added
/// vertices at distance `d` from the first-`j` root set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileMatrix {
    k: usize,
    n: usize,
    /// rows[d - 1][j - 1]
    rows: Vec<Vec<u64>>,
}

impl ProfileMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Deepest occupied level over any root-set size.
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self, d: usize, j: usize) -> u64 {
        assert!(d >= 1 && (1..=self.k).contains(&j));
        self.rows.get(d - 1).map_or(0, |row| row[j - 1])
    }

    /// Deepest level with a vertex at distance `d` from the full root set.
    pub fn height(&self) -> u32 {
        self.rows
            .iter()
            .rposition(|row| row[self.k - 1] > 0)
            .map_or(0, |i| i as u32 + 1)
    }

    /// Largest level count against the full root set.
    pub fn width(&self) -> u64 {
        self.rows.iter().map(|row| row[self.k - 1]).max().unwrap_or(0)
    }

    /// Degree of the root vertex: its k−1 root-clique neighbors plus the
    /// added vertices at distance 1.
    pub fn root_degree(&self) -> u64 {
        self.count(1, 1) + (self.k as u64 - 1)
    }
}

/// The connectivity profile of a tree.
pub fn connectivity_profile(tree: &KTree) -> ProfileMatrix {
    profile_from_distances(tree.k(), tree.n(), &root_distances(tree))
}

/// Profile from a precomputed distance table.
pub fn profile_from_distances(k: usize, n: usize, table: &DistanceTable) -> ProfileMatrix {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for index in 0..table.added_count() {
        // Distances to {1..j} are nonincreasing in j; compute the running
        // minimum in one pass over the row.
        let mut min = u32::MAX;
        for j in 1..=k {
            min = min.min(table.distance(index, j - 1));
            let d = min as usize;
            if rows.len() < d {
                rows.resize_with(d, || vec![0u64; k]);
            }
            rows[d - 1][j - 1] += 1;
        }
    }
    ProfileMatrix { k, n, rows }
}

/// Per-tree shape record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSummary {
    pub height: u32,
    pub width: u64,
    pub root_degree: u64,
}

/// Height, width and root degree of one tree.
pub fn summary(tree: &KTree) -> TreeSummary {
    let profile = connectivity_profile(tree);
    TreeSummary {
        height: profile.height(),
        width: profile.width(),
        root_degree: profile.root_degree(),
    }
}

/// Degree of every vertex (index = label − 1).
pub fn degrees(tree: &KTree) -> Vec<u32> {
    let k = tree.k();
    let mut deg = vec![0u32; tree.vertex_count()];
    for d in deg.iter_mut().take(k) {
        *d = k as u32 - 1;
    }
    let mut members = Vec::with_capacity(k);
    for (step, &att) in tree.attachments().iter().enumerate() {
        let v = tree.vertex_added_at(step);
        deg[(v - 1) as usize] += k as u32;
        tree.clique_members_into(att as usize, &mut members);
        for &m in &members {
            deg[(m - 1) as usize] += 1;
        }
    }
    deg
}

/// Sample of graph distances between uniform random vertex pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDistanceSample {
    pub pairs: u64,
    pub mean: f64,
    pub histogram: BTreeMap<u32, u64>,
}

/// Distances between `pairs` uniform random (distinct) vertex pairs,
/// measured by BFS from one endpoint.
pub fn sample_pair_distance<R: RngCore>(
    tree: &KTree,
    pairs: u64,
    rng: &mut R,
) -> Result<PairDistanceSample> {
    if pairs == 0 {
        return Err(Error::InvalidParameter("pairs must be >= 1".into()));
    }
    let total = tree.vertex_count() as u64;
    if total < 2 {
        return Err(Error::InvalidParameter(
            "need at least 2 vertices to sample pairs".into(),
        ));
    }
    let adj = adjacency(tree);
    let mut histogram = BTreeMap::new();
    let mut sum = 0u64;
    for _ in 0..pairs {
        let u = uniform_index(rng, total) + 1;
        let mut v = uniform_index(rng, total - 1) + 1;
        if v >= u {
            v += 1;
        }
        let d = bfs_from(&adj, u as u32)[(v - 1) as usize];
        sum += u64::from(d);
        *histogram.entry(d).or_insert(0) += 1;
    }
    Ok(PairDistanceSample {
        pairs,
        mean: sum as f64 / pairs as f64,
        histogram,
    })
}
