use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Arrangement, HalfOpenSubspace, SubspaceKey};

#[derive(Clone, Debug)]
pub struct PosetNode {
    pub subspace: HalfOpenSubspace,
    pub dim: usize,
    /// Maximal elements containing this node, ascending.
    pub above: Vec<usize>,
}

/// Intersections of the maximal elements, ordered by inclusion. Node ids are
/// sorted by decreasing dimension, then canonical key.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    pub nodes: Vec<PosetNode>,
    /// `(lower, upper)` covering pairs with `lower ⊂ upper`.
    pub hasse_edges: Vec<(usize, usize)>,
    pub maximal_node_ids: Vec<usize>,
    index: HashMap<SubspaceKey, usize>,
    uppers: Vec<Vec<usize>>,
}

fn is_superset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut i = 0;
    for x in b {
        while i < a.len() && a[i] < *x {
            i += 1;
        }
        if i == a.len() || a[i] != *x {
            return false;
        }
    }
    true
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, s: &HalfOpenSubspace) -> Option<usize> {
        self.index.get(&s.key()).copied()
    }

    /// `a ⊆ b` as sets.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        is_superset(&self.nodes[a].above, &self.nodes[b].above)
    }

    /// Nodes strictly containing `v`, ascending by id.
    pub fn strictly_above(&self, v: usize) -> &[usize] {
        &self.uppers[v]
    }

    pub fn nodes_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.nodes[i].dim == d).collect()
    }

    /// Text Hasse listing: one line per node with its covers.
    pub fn hasse_listing(&self) -> String {
        let mut covers: Vec<Vec<usize>> = vec![vec![]; self.len()];
        for &(lo, up) in &self.hasse_edges {
            covers[lo].push(up);
        }
        let mut s = String::new();
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                s,
                "{i:4} dim {} {:<5} {:<40} covered by {:?}",
                node.dim,
                if node.subspace.is_linear() { "lin" } else { "half" },
                node.subspace.label,
                covers[i]
            );
        }
        s
    }

    /// Counts of nodes per dimension, highest dimension first.
    pub fn levels(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for node in &self.nodes {
            match counts.iter_mut().find(|(d, _)| *d == node.dim) {
                Some(c) => c.1 += 1,
                None => counts.push((node.dim, 1)),
            }
        }
        counts
    }
}

pub fn intersection_poset(arr: &Arrangement) -> IntersectionPoset {
    let maxel = &arr.maximal_elements;
    let mut index: HashMap<SubspaceKey, usize> = HashMap::new();
    let mut found: Vec<HalfOpenSubspace> = Vec::new();
    for m in maxel {
        index.insert(m.key(), found.len());
        found.push(m.clone());
    }
    let mut cursor = 0;
    while cursor < found.len() {
        let x = found[cursor].clone();
        cursor += 1;
        for m in maxel {
            if m.contains(&x) {
                continue;
            }
            let y = x.intersect(m);
            let key = y.key();
            if !index.contains_key(&key) {
                index.insert(key, found.len());
                found.push(y);
            }
        }
    }

    let mut nodes: Vec<PosetNode> = found
        .into_iter()
        .map(|s| {
            let above = (0..maxel.len()).filter(|&k| maxel[k].contains(&s)).collect();
            let dim = s.dim();
            PosetNode { subspace: s, dim, above }
        })
        .collect();
    nodes.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.subspace.key().cmp(&b.subspace.key())));
    for node in nodes.iter_mut() {
        if node.above.len() == 1 && node.subspace.key() == maxel[node.above[0]].key() {
            node.subspace.label = maxel[node.above[0]].label.clone();
        } else {
            node.subspace.label = format!("meet{:?}", node.above);
        }
    }
    let index: HashMap<SubspaceKey, usize> = nodes.iter().enumerate().map(|(i, n)| (n.subspace.key(), i)).collect();
    let maximal_node_ids = maxel.iter().map(|m| index[&m.key()]).collect();

    let count = nodes.len();
    let mut uppers: Vec<Vec<usize>> = vec![vec![]; count];
    let mut below = vec![vec![false; count]; count];
    for v in 0..count {
        for w in 0..count {
            if v != w && is_superset(&nodes[v].above, &nodes[w].above) {
                uppers[v].push(w);
                below[v][w] = true;
            }
        }
    }
    let mut hasse_edges = Vec::new();
    for v in 0..count {
        for &w in &uppers[v] {
            let covered = uppers[v].iter().any(|&z| z != w && below[z][w]);
            if !covered {
                hasse_edges.push((v, w));
            }
        }
    }
    IntersectionPoset { nodes, hasse_edges, maximal_node_ids, index, uppers }
}
