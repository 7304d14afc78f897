//! Merge trees of piecewise-linear series and sublevelset persistence.

use crate::error::{Error, Result};
use crate::series::{CriticalSeries, Domain, Kind};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// A local minimum: a component is born here.
    Leaf,
    /// A local maximum joining two components.
    Internal,
    /// The last merge; every leaf is below it.
    Root,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node<T> {
    pub height: T,
    pub kind: NodeKind,
    /// Left and right subtrees for merge nodes, empty for leaves.
    pub children: Vec<usize>,
    /// Index of the sample in the source series.
    pub origin_index: usize,
    /// Position in the critical series.
    pub critical_index: usize,
}

/// Merge tree of an interval critical series. Nodes are stored in critical
/// series order, so `nodes[k]` is the node of the `k`-th critical point.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTree<T> {
    nodes: Vec<Node<T>>,
    root: usize,
}

impl<T: Scalar> MergeTree<T> {
    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Node<T>> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Leaf)
    }

    /// Node heights in inorder (left subtree, node, right subtree).
    pub fn inorder(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.nodes.len());
        // iterative to stay safe on long monotone staircases
        let mut stack: Vec<(usize, bool)> = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            let node = &self.nodes[id];
            if expanded || node.children.is_empty() {
                out.push(node.height);
                continue;
            }
            let (left, right) = (node.children[0], node.children[1]);
            stack.push((right, false));
            stack.push((id, true));
            stack.push((left, false));
        }
        out
    }

    /// Lowest leaf height of the subtree rooted at `id`.
    pub fn subtree_min(&self, id: usize) -> T {
        let mut best = self.nodes[id].height;
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            if node.height < best {
                best = node.height;
            }
            stack.extend(node.children.iter().copied());
        }
        best
    }
}

/// Union-find over critical-series positions, tracking the node on top of
/// each component and the component's oldest minimum.
struct Components<T> {
    parent: Vec<usize>,
    top: Vec<usize>,
    oldest: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> Components<T> {
    fn new(values: &[T]) -> Self {
        let n = values.len();
        Self {
            parent: (0..n).collect(),
            top: (0..n).collect(),
            oldest: (0..n).collect(),
            values: values.to_vec(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the components of the minima at `left` and `right` under the
    /// node `at`. Returns the two previous component tops followed by the
    /// surviving and the dying minimum under the elder rule: the lower
    /// minimum survives, and on equal heights the earlier one.
    fn merge(&mut self, left: usize, right: usize, at: usize) -> (usize, usize, usize, usize) {
        let (rl, rr) = (self.find(left), self.find(right));
        let (ml, mr) = (self.oldest[rl], self.oldest[rr]);
        let (tl, tr) = (self.top[rl], self.top[rr]);
        let left_elder = self.values[ml] < self.values[mr]
            || (self.values[ml] == self.values[mr] && ml < mr);
        let (elder, younger) = if left_elder { (ml, mr) } else { (mr, ml) };
        self.parent[rr] = rl;
        self.top[rl] = at;
        self.oldest[rl] = elder;
        (tl, tr, elder, younger)
    }
}

/// Maxima in merge order: increasing height, earlier index first on ties.
fn merge_order<T: Scalar>(cs: &[T], kinds: &[Kind]) -> Vec<usize> {
    let mut maxes: Vec<usize> = (0..cs.len()).filter(|&i| kinds[i] == Kind::Max).collect();
    maxes.sort_by(|&a, &b| {
        cs[a]
            .partial_cmp(&cs[b])
            .expect("critical values are finite")
            .then(a.cmp(&b))
    });
    maxes
}

fn require_interval<T: Scalar>(cs: &CriticalSeries<T>) -> Result<()> {
    if cs.domain() != Domain::Interval {
        return Err(Error::WrongDomain {
            expected: Domain::Interval,
            found: cs.domain(),
        });
    }
    if cs.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(())
}

/// Builds the merge tree of the piecewise-linear extension of `cs`.
///
/// Each maximum joins the components on its two sides, processed from the
/// lowest maximum upwards.
pub fn build_merge_tree<T: Scalar>(cs: &CriticalSeries<T>) -> Result<MergeTree<T>> {
    require_interval(cs)?;
    let values = cs.values();
    let kinds = cs.kinds();
    let mut nodes: Vec<Node<T>> = (0..cs.len())
        .map(|k| Node {
            height: values[k],
            kind: match kinds[k] {
                Kind::Min => NodeKind::Leaf,
                Kind::Max => NodeKind::Internal,
            },
            children: Vec::new(),
            origin_index: cs.origin_indices()[k],
            critical_index: k,
        })
        .collect();
    let mut comps = Components::new(values);
    let mut root = 0;
    for m in merge_order(values, kinds) {
        let (left_top, right_top, _, _) = comps.merge(m - 1, m + 1, m);
        nodes[m].children = vec![left_top, right_top];
        root = m;
    }
    if nodes[root].kind == NodeKind::Internal {
        nodes[root].kind = NodeKind::Root;
    }
    Ok(MergeTree { nodes, root })
}

/// Persistence diagram of the sublevelset filtration.
///
/// `essential.1` is `None` for the interval (the class never dies) and the
/// global maximum on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<T> {
    pub pairs: Vec<(T, T)>,
    pub essential: (T, Option<T>),
    pub domain: Domain,
}

impl<T: Scalar> PersistenceDiagram<T> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn interval_pairs<T: Scalar>(values: &[T], kinds: &[Kind]) -> Vec<(T, T)> {
    let mut comps = Components::new(values);
    merge_order(values, kinds)
        .into_iter()
        .map(|m| {
            let (_, _, _, younger) = comps.merge(m - 1, m + 1, m);
            (values[younger], values[m])
        })
        .collect()
}

fn global_min<T: Scalar>(values: &[T]) -> T {
    values
        .iter()
        .copied()
        .fold(values[0], |a, b| if b < a { b } else { a })
}

/// Sublevelset persistence diagram of a critical series.
///
/// On the circle the first occurrence of the global maximum is cut out, the
/// remainder is unrolled into an interval series starting right after it,
/// and the essential class becomes (global min, global max).
pub fn sublevelset_diagram<T: Scalar>(cs: &CriticalSeries<T>) -> Result<PersistenceDiagram<T>> {
    match cs.domain() {
        Domain::Interval => {
            require_interval(cs)?;
            Ok(PersistenceDiagram {
                pairs: interval_pairs(cs.values(), cs.kinds()),
                essential: (global_min(cs.values()), None),
                domain: Domain::Interval,
            })
        }
        Domain::Circle => {
            if cs.is_degenerate() {
                return Err(Error::Degenerate("constant circular series has no diagram"));
            }
            let values = cs.values();
            let n = values.len();
            let mut cut = 0;
            for i in 1..n {
                if values[i] > values[cut] {
                    cut = i;
                }
            }
            let order = (1..n).map(|s| (cut + s) % n);
            let unrolled: Vec<T> = order.clone().map(|i| values[i]).collect();
            let kinds: Vec<Kind> = order.map(|i| cs.kinds()[i]).collect();
            Ok(PersistenceDiagram {
                pairs: interval_pairs(&unrolled, &kinds),
                essential: (global_min(values), Some(values[cut])),
                domain: Domain::Circle,
            })
        }
    }
}
