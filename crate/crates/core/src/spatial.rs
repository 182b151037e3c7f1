//! Static kd-tree over a subset of a [`PointSet`], used to answer bounded
//! "distance to the k-th nearest point" queries.
//!
//! Pruning compares a box lower bound against the current bound with `>`,
//! and the box bound is computed with the same per-axis arithmetic as
//! [`dist`], so it never exceeds the distance of a point inside the box.
//! Queries therefore return exactly the value an exhaustive scan would.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::{dist, PointSet};

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Node {
    start: usize,
    end: usize,
    children: Option<(usize, usize)>,
}

#[derive(Debug)]
pub(crate) struct KdTree<'a> {
    points: &'a PointSet,
    order: Vec<usize>,
    nodes: Vec<Node>,
    // Per node: dim lower corners followed by dim upper corners.
    boxes: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct MaxDist(f64);

impl Eq for MaxDist {}

impl PartialOrd for MaxDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxDist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl<'a> KdTree<'a> {
    pub(crate) fn build(points: &'a PointSet, subset: &[usize]) -> Self {
        let mut tree = KdTree {
            points,
            order: subset.to_vec(),
            nodes: Vec::with_capacity(2 * subset.len() / LEAF_SIZE + 1),
            boxes: Vec::new(),
        };
        if !subset.is_empty() {
            tree.build_node(0, subset.len());
        }
        tree
    }

    fn build_node(&mut self, start: usize, end: usize) -> usize {
        let dim = self.points.dim();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for &i in &self.order[start..end] {
            for (axis, &c) in self.points.point(i).iter().enumerate() {
                lo[axis] = lo[axis].min(c);
                hi[axis] = hi[axis].max(c);
            }
        }
        let id = self.nodes.len();
        self.nodes.push(Node { start, end, children: None });
        self.boxes.extend_from_slice(&lo);
        self.boxes.extend_from_slice(&hi);

        let (axis, extent) = (0..dim)
            .map(|a| (a, hi[a] - lo[a]))
            .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if end - start <= LEAF_SIZE || extent <= 0.0 {
            return id;
        }

        let mid = start + (end - start) / 2;
        let points = self.points;
        self.order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
            points.point(a)[axis]
                .total_cmp(&points.point(b)[axis])
                .then(a.cmp(&b))
        });
        let left = self.build_node(start, mid);
        let right = self.build_node(mid, end);
        self.nodes[id].children = Some((left, right));
        id
    }

    fn box_distance(&self, node: usize, q: &[f64]) -> f64 {
        let dim = q.len();
        let lo = &self.boxes[2 * dim * node..2 * dim * node + dim];
        let hi = &self.boxes[2 * dim * node + dim..2 * dim * (node + 1)];
        let mut acc = 0.0;
        for axis in 0..dim {
            let c = q[axis];
            let gap = if c < lo[axis] {
                lo[axis] - c
            } else if c > hi[axis] {
                c - hi[axis]
            } else {
                0.0
            };
            acc += gap * gap;
        }
        acc.sqrt()
    }

    /// Distance from `q` to its `k`-th nearest tree point (counting a tree
    /// point equal to `q`), provided that distance is at most `limit`.
    pub(crate) fn kth_distance_within(&self, q: &[f64], k: usize, limit: f64) -> Option<f64> {
        if k == 0 || k > self.order.len() {
            return None;
        }
        let mut heap = BinaryHeap::with_capacity(k + 1);
        self.visit(0, q, k, limit, &mut heap);
        if heap.len() == k {
            heap.peek().map(|d| d.0).filter(|&d| d <= limit)
        } else {
            None
        }
    }

    fn visit(&self, node: usize, q: &[f64], k: usize, limit: f64, heap: &mut BinaryHeap<MaxDist>) {
        let bound = match heap.peek() {
            Some(top) if heap.len() == k => top.0.min(limit),
            _ => limit,
        };
        if self.box_distance(node, q) > bound {
            return;
        }
        let Node { start, end, children } = self.nodes[node];
        match children {
            None => {
                for &i in &self.order[start..end] {
                    let d = dist(q, self.points.point(i));
                    if heap.len() < k {
                        if d <= limit {
                            heap.push(MaxDist(d));
                        }
                    } else if d < heap.peek().map_or(f64::INFINITY, |t| t.0) {
                        heap.pop();
                        heap.push(MaxDist(d));
                    }
                }
            }
            Some((left, right)) => {
                let dl = self.box_distance(left, q);
                let dr = self.box_distance(right, q);
                let (first, second) = if dl <= dr { (left, right) } else { (right, left) };
                self.visit(first, q, k, limit, heap);
                self.visit(second, q, k, limit, heap);
            }
        }
    }
}
