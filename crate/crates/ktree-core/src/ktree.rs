//! Increasing k-trees and the clique-uniform growth process.
//!
//! A k-tree starts as a clique on the vertices `{1, …, k}` and grows one
//! vertex at a time: the new vertex (labels are consecutive, so step `t`
//! adds vertex `k + t + 1`) is joined to every vertex of one existing
//! k-clique. Each attachment registers `k` new k-cliques — the chosen
//! clique with one member swapped for the new vertex — so after `n` steps
//! the registry holds `n·k + 1` cliques.
//!
//! Cliques are stored compactly as `(parent clique, replaced position)`
//! pairs; the replacing vertex is implied by the creation step. Member
//! tuples are materialized on demand by walking the parent chain, which
//! for randomly grown trees terminates after a handful of hops (it stops
//! as soon as every position has been overridden once).

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::uniform_index;

/// Hard cap for exhaustive history enumeration.
pub const ENUMERATION_GUARD: u64 = 1_000_000;

/// An increasing k-tree with its clique registry.
///
/// Vertex labels are 1-based; the root clique is always `{1, …, k}`.
/// Values are immutable once built and cheap to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTree {
    k: usize,
    /// Clique index chosen at each growth step.
    attachments: Vec<u32>,
    /// Parent clique of each registered clique (entry 0 is the root clique;
    /// its parent slot is unused).
    clique_parent: Vec<u32>,
    /// Position within the parent that the new vertex replaced.
    clique_replaced_pos: Vec<u8>,
}

impl KTree {
    /// The root clique on `{1, …, k}`.
    pub fn new_root_clique(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if k > u8::MAX as usize {
            return Err(Error::InvalidParameter(format!("k = {k} too large")));
        }
        Ok(Self {
            k,
            attachments: Vec::new(),
            clique_parent: vec![0],
            clique_replaced_pos: vec![0],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of added vertices (total vertices = `n + k`).
    pub fn n(&self) -> usize {
        self.attachments.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.k + self.n()
    }

    pub fn clique_count(&self) -> usize {
        self.clique_parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n() * self.k + self.k * (self.k - 1) / 2
    }

    /// Clique index each added vertex was attached to, in creation order.
    pub fn attachments(&self) -> &[u32] {
        &self.attachments
    }

    /// The vertex label added at growth step `t` (0-based).
    #[inline]
    pub fn vertex_added_at(&self, step: usize) -> u32 {
        (self.k + step + 1) as u32
    }

    /// Attach the next vertex to clique `clique_index`, returning the grown
    /// tree. The original is untouched.
    pub fn apply_step(&self, clique_index: usize) -> Result<Self> {
        if clique_index >= self.clique_count() {
            return Err(Error::IndexOutOfRange {
                index: clique_index,
                bound: self.clique_count(),
            });
        }
        let mut next = self.clone();
        next.push_step(clique_index as u32);
        Ok(next)
    }

    #[inline]
    fn push_step(&mut self, clique_index: u32) {
        self.attachments.push(clique_index);
        // Replaced positions run high-to-low, so attaching vertex 3 to the
        // root clique {1,2} registers {1,3} before {2,3}.
        for pos in (0..self.k).rev() {
            self.clique_parent.push(clique_index);
            self.clique_replaced_pos.push(pos as u8);
        }
    }

    /// Members of clique `id`, resolved through the parent chain.
    ///
    /// Position `p` of a clique holds the same vertex as position `p` of
    /// its parent unless the clique itself replaced `p`; the root clique
    /// holds vertex `p + 1` at position `p`.
    pub fn clique_members(&self, id: usize) -> Result<Vec<u32>> {
        if id >= self.clique_count() {
            return Err(Error::IndexOutOfRange {
                index: id,
                bound: self.clique_count(),
            });
        }
        let mut buf = Vec::new();
        self.clique_members_into(id, &mut buf);
        Ok(buf)
    }

    /// Buffer-reusing variant of [`clique_members`](Self::clique_members).
    pub fn clique_members_into(&self, id: usize, buf: &mut Vec<u32>) {
        debug_assert!(id < self.clique_count());
        buf.clear();
        buf.resize(self.k, 0);
        let mut filled = 0;
        let mut c = id;
        while c != 0 && filled < self.k {
            let step = (c - 1) / self.k;
            let pos = self.clique_replaced_pos[c] as usize;
            if buf[pos] == 0 {
                buf[pos] = self.vertex_added_at(step);
                filled += 1;
            }
            c = self.clique_parent[c] as usize;
        }
        if filled < self.k {
            for (pos, slot) in buf.iter_mut().enumerate() {
                if *slot == 0 {
                    *slot = (pos + 1) as u32;
                }
            }
        }
    }

    /// All registered cliques as sorted member tuples, in creation order.
    pub fn cliques(&self) -> Vec<Vec<u32>> {
        let mut buf = Vec::new();
        (0..self.clique_count())
            .map(|id| {
                self.clique_members_into(id, &mut buf);
                let mut members = buf.clone();
                members.sort_unstable();
                members
            })
            .collect()
    }

    /// Edges in creation order: the root clique pairs first, then the `k`
    /// edges of each added vertex (endpoint-sorted within a step).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 1..=self.k as u32 {
            for j in (i + 1)..=self.k as u32 {
                out.push((i, j));
            }
        }
        let mut buf = Vec::new();
        for (step, &att) in self.attachments.iter().enumerate() {
            let v = self.vertex_added_at(step);
            self.clique_members_into(att as usize, &mut buf);
            buf.sort_unstable();
            for &u in &buf {
                out.push((u, v));
            }
        }
        out
    }

    /// Edge-list text: `# ktree k=<k> n=<n> seed=<seed>` header, then one
    /// `u v` pair per line, ascending by creation.
    pub fn edge_list_text(&self, seed: u64) -> String {
        let mut s = format!("# ktree k={} n={} seed={}\n", self.k, self.n(), seed);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Clique registry as JSON (array of k-arrays).
    pub fn cliques_json(&self) -> String {
        serde_json::to_string(&self.cliques()).expect("serializing Vec<Vec<u32>> cannot fail")
    }
}

/// Grow a random increasing k-tree of `n` added vertices: every step picks
/// a clique uniformly from the current registry. Deterministic given the
/// generator state.
pub fn grow_random<R: RngCore>(k: usize, n: usize, rng: &mut R) -> Result<KTree> {
    let mut tree = KTree::new_root_clique(k)?;
    tree.attachments.reserve(n);
    tree.clique_parent.reserve(n * k);
    tree.clique_replaced_pos.reserve(n * k);
    for step in 0..n {
        let registry = (k * step + 1) as u64;
        let choice = uniform_index(rng, registry);
        tree.push_step(choice as u32);
    }
    Ok(tree)
}

/// The number of increasing k-trees with `n` added vertices:
/// the product of registry sizes over the growth steps.
pub fn count_ktrees(k: usize, n: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut total = BigUint::one();
    for i in 0..n {
        total *= BigUint::from(i * k + 1);
    }
    Ok(total)
}

/// Iterate over every growth history of length `n`, each yielded exactly
/// once. Guarded: errors out if there are more than [`ENUMERATION_GUARD`]
/// histories.
pub fn enumerate_histories(k: usize, n: usize) -> Result<HistoryIter> {
    let total = count_ktrees(k, n)?;
    if total > BigUint::from(ENUMERATION_GUARD) {
        return Err(Error::GuardExceeded(format!(
            "{total} histories exceed the enumeration cap of {ENUMERATION_GUARD}"
        )));
    }
    Ok(HistoryIter {
        k,
        n,
        choices: vec![0; n],
        done: false,
    })
}

/// Mixed-radix odometer over choice sequences; digit `t` ranges over the
/// registry size `k·t + 1` at step `t`.
pub struct HistoryIter {
    k: usize,
    n: usize,
    choices: Vec<u32>,
    done: bool,
}

impl Iterator for HistoryIter {
    type Item = KTree;

    fn next(&mut self) -> Option<KTree> {
        if self.done {
            return None;
        }
        let mut tree = KTree::new_root_clique(self.k).expect("k validated at construction");
        for &c in &self.choices {
            tree.push_step(c);
        }
        // Advance the odometer.
        let mut t = self.n;
        loop {
            if t == 0 {
                self.done = true;
                break;
            }
            t -= 1;
            let radix = (self.k * t + 1) as u32;
            self.choices[t] += 1;
            if self.choices[t] < radix {
                break;
            }
            self.choices[t] = 0;
        }
        Some(tree)
    }
}

/// The increasing-tree form of a k-tree: one white node per k-clique, one
/// black node per added vertex. A black node hangs under the white node of
/// its attachment clique and owns the `k` white nodes its attachment
/// created. White ids follow clique creation order (0 = root clique).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRepr {
    pub k: usize,
    pub blacks: Vec<BlackNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlackNode {
    /// Vertex label carried by this black node.
    pub label: u32,
    /// White node (clique) this black node hangs under.
    pub parent_white: u32,
    /// The k white nodes created by this attachment.
    pub child_whites: Vec<u32>,
}

impl TreeRepr {
    pub fn black_count(&self) -> usize {
        self.blacks.len()
    }

    pub fn white_count(&self) -> usize {
        self.blacks.len() * self.k + 1
    }
}

/// Convert a k-tree to its increasing-tree representation.
pub fn to_tree_repr(tree: &KTree) -> TreeRepr {
    let k = tree.k();
    let blacks = tree
        .attachments()
        .iter()
        .enumerate()
        .map(|(step, &att)| BlackNode {
            label: tree.vertex_added_at(step),
            parent_white: att,
            child_whites: ((step * k + 1) as u32..=(step * k + k) as u32).collect(),
        })
        .collect();
    TreeRepr { k, blacks }
}

/// Rebuild a k-tree from its tree representation, validating structure:
/// consecutive labels, arity `k`, canonical white ids, and the increasing
/// property (a black node may only hang under a white node created before
/// its own label).
pub fn from_tree_repr(repr: &TreeRepr) -> Result<KTree> {
    let k = repr.k;
    let mut tree = KTree::new_root_clique(k)?;
    for (step, black) in repr.blacks.iter().enumerate() {
        let expected_label = (k + step + 1) as u32;
        if black.label != expected_label {
            return Err(Error::MalformedTree(format!(
                "black node {step} has label {}, expected {expected_label}",
                black.label
            )));
        }
        if black.child_whites.len() != k {
            return Err(Error::MalformedTree(format!(
                "black node {} has {} child whites, expected arity {k}",
                black.label,
                black.child_whites.len()
            )));
        }
        let first = (step * k + 1) as u32;
        for (i, &w) in black.child_whites.iter().enumerate() {
            if w != first + i as u32 {
                return Err(Error::MalformedTree(format!(
                    "black node {} child whites are not the cliques it created",
                    black.label
                )));
            }
        }
        // The parent white must already exist, i.e. have been created by a
        // smaller label. This is exactly the increasing property.
        if black.parent_white as usize >= tree.clique_count() {
            return Err(Error::MalformedTree(format!(
                "black node {} hangs under white {} created by a larger label",
                black.label, black.parent_white
            )));
        }
        tree.push_step(black.parent_white);
    }
    Ok(tree)
}
