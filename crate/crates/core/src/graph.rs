//! The detection multi-graph: curve endpoints become nodes, curves become
//! stroke-wise edges carrying their off-curve control points, and stroke
//! connected components merge into regional clusters whose members are
//! densely connected position-wise (stored implicitly via the cluster map).

use serde::{Deserialize, Serialize};

use crate::document::VectorDocument;
use crate::error::{Error, Result};
use crate::geom::{pt, BoundingBox, Point};

/// Fraction of the document diagonal used as the endpoint merge tolerance.
pub const MERGE_TOL_FRAC: f64 = 1e-4;

/// Default cluster expansion length as a fraction of the document diagonal.
pub const EXPAND_LEN_FRAC: f64 = 0.02;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphNode {
    pub position: Point,
    /// (x, y, r, g, b, stroke_width); the first two entries equal `position`.
    pub attributes: [f64; 6],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrokeEdge {
    /// Unordered node-id pair; equal ids form a self-loop (closed curve).
    pub endpoints: (usize, usize),
    /// Off-curve control points (p1.x, p1.y, p2.x, p2.y).
    pub attributes: [f64; 4],
}

impl StrokeEdge {
    pub fn control_points(&self) -> [Point; 2] {
        [
            pt(self.attributes[0], self.attributes[1]),
            pt(self.attributes[2], self.attributes[3]),
        ]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectionGraph {
    pub nodes: Vec<GraphNode>,
    pub stroke_edges: Vec<StrokeEdge>,
    /// Cluster id per node, in `[0, num_clusters)`.
    pub cluster_of: Vec<usize>,
    /// Minimum bounding rectangle of each cluster's nodes and edge control
    /// points (unexpanded).
    pub cluster_boxes: Vec<BoundingBox>,
}

impl DetectionGraph {
    pub fn num_clusters(&self) -> usize {
        self.cluster_boxes.len()
    }

    /// Number of implicit position-wise neighbors: all other cluster members.
    pub fn position_degree(&self, node_id: usize) -> Result<usize> {
        let cluster = *self
            .cluster_of
            .get(node_id)
            .ok_or_else(|| Error::Data(format!("unknown node id {node_id}")))?;
        let size = self.cluster_of.iter().filter(|&&c| c == cluster).count();
        Ok(size - 1)
    }

    /// Node ids per cluster, each list ascending.
    pub fn cluster_members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.num_clusters()];
        for (node, &c) in self.cluster_of.iter().enumerate() {
            members[c].push(node);
        }
        members
    }

    /// Text dump of the node, edge, and cluster tables (debugging aid; not a
    /// stability-guaranteed format).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str("# nodes: id x y r g b width cluster\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let a = n.attributes;
            out.push_str(&format!(
                "node {i} {} {} {} {} {} {} {}\n",
                a[0], a[1], a[2], a[3], a[4], a[5], self.cluster_of[i]
            ));
        }
        out.push_str("# edges: id node_a node_b c1x c1y c2x c2y\n");
        for (i, e) in self.stroke_edges.iter().enumerate() {
            let a = e.attributes;
            out.push_str(&format!(
                "edge {i} {} {} {} {} {} {}\n",
                e.endpoints.0, e.endpoints.1, a[0], a[1], a[2], a[3]
            ));
        }
        out.push_str("# clusters: id size x_min y_min x_max y_max\n");
        let members = self.cluster_members();
        for (i, b) in self.cluster_boxes.iter().enumerate() {
            out.push_str(&format!(
                "cluster {i} {} {} {} {} {}\n",
                members[i].len(),
                b.x_min,
                b.y_min,
                b.x_max,
                b.y_max
            ));
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins: keeps labels independent of merge order.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Merge nearby points into shared nodes using a uniform grid keyed by the
/// merge tolerance.
struct NodeMerger {
    tol: f64,
    cell: f64,
    grid: std::collections::HashMap<(i64, i64), Vec<usize>>,
    positions: Vec<Point>,
}

impl NodeMerger {
    fn new(tol: f64) -> Self {
        let cell = tol.max(1e-12);
        NodeMerger { tol, cell, grid: Default::default(), positions: Vec::new() }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: Point) -> usize {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if self.positions[id].distance(p) <= self.tol {
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.positions.len();
        self.positions.push(p);
        self.grid.entry((kx, ky)).or_default().push(id);
        id
    }
}

/// Parameters for graph construction, in absolute document units.
#[derive(Debug, Clone, Copy)]
pub struct GraphParams {
    pub merge_tol: f64,
    pub expand_len: f64,
}

impl GraphParams {
    /// Defaults scaled from the document diagonal.
    pub fn for_document(doc: &VectorDocument) -> Self {
        let diag = doc.diagonal().max(1e-9);
        GraphParams {
            merge_tol: MERGE_TOL_FRAC * diag,
            expand_len: EXPAND_LEN_FRAC * diag,
        }
    }

    pub fn with_expand_len(mut self, expand_len: f64) -> Self {
        self.expand_len = expand_len;
        self
    }
}

/// Build nodes and stroke edges from an intersection-split document. Node
/// color and width attributes average over all incident curve endpoints.
pub fn build_nodes_and_stroke_edges(
    doc: &VectorDocument,
    merge_tol: f64,
) -> (Vec<GraphNode>, Vec<StrokeEdge>) {
    let mut merger = NodeMerger::new(merge_tol);
    let mut edges = Vec::with_capacity(doc.curves.len());
    // (sum of color channels + width, incidence count) per node.
    let mut style_sums: Vec<[f64; 4]> = Vec::new();
    let mut style_counts: Vec<usize> = Vec::new();

    for curve in &doc.curves {
        let a = merger.insert(curve.p0);
        let b = merger.insert(curve.p3);
        for id in [a, b] {
            if id >= style_sums.len() {
                style_sums.resize(id + 1, [0.0; 4]);
                style_counts.resize(id + 1, 0);
            }
            let [r, g, bl] = curve.style.color;
            style_sums[id][0] += r;
            style_sums[id][1] += g;
            style_sums[id][2] += bl;
            style_sums[id][3] += curve.style.width;
            style_counts[id] += 1;
        }
        edges.push(StrokeEdge {
            endpoints: (a, b),
            attributes: [curve.p1.x, curve.p1.y, curve.p2.x, curve.p2.y],
        });
    }

    let nodes = merger
        .positions
        .iter()
        .enumerate()
        .map(|(id, &p)| {
            let n = style_counts[id] as f64;
            let s = style_sums[id];
            GraphNode {
                position: p,
                attributes: [p.x, p.y, s[0] / n, s[1] / n, s[2] / n, s[3] / n],
            }
        })
        .collect();
    (nodes, edges)
}

/// Assign regional clusters: stroke connected components whose bounding
/// rectangles, expanded by `expand_len` on all sides, overlap (closed
/// rectangles; touching counts) are merged transitively.
pub fn regional_clusters(
    nodes: &[GraphNode],
    edges: &[StrokeEdge],
    expand_len: f64,
) -> (Vec<usize>, Vec<BoundingBox>) {
    let n = nodes.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut uf = UnionFind::new(n);
    for e in edges {
        uf.union(e.endpoints.0, e.endpoints.1);
    }

    // Component extents over node positions and edge control points.
    let mut comp_box: std::collections::HashMap<usize, BoundingBox> = Default::default();
    let mut extend = |root: usize, p: Point, boxes: &mut std::collections::HashMap<usize, BoundingBox>| {
        let b = BoundingBox { x_min: p.x, y_min: p.y, x_max: p.x, y_max: p.y };
        boxes
            .entry(root)
            .and_modify(|e| *e = e.union(&b))
            .or_insert(b);
    };
    for (i, node) in nodes.iter().enumerate() {
        let root = uf.find(i);
        extend(root, node.position, &mut comp_box);
    }
    for e in edges {
        let root = uf.find(e.endpoints.0);
        for p in e.control_points() {
            extend(root, p, &mut comp_box);
        }
    }

    // Merge components whose expanded boxes overlap, transitively.
    let mut roots: Vec<usize> = comp_box.keys().copied().collect();
    roots.sort_unstable();
    let expanded: Vec<BoundingBox> = roots.iter().map(|r| comp_box[r].expand(expand_len)).collect();
    let mut cluster_uf = UnionFind::new(roots.len());
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if expanded[i].intersects(&expanded[j]) {
                cluster_uf.union(i, j);
            }
        }
    }

    // Compact cluster ids in order of first appearance over ascending roots.
    let mut cluster_ids: std::collections::HashMap<usize, usize> = Default::default();
    let mut cluster_boxes: Vec<BoundingBox> = Vec::new();
    let mut root_to_cluster: std::collections::HashMap<usize, usize> = Default::default();
    for (idx, &root) in roots.iter().enumerate() {
        let leader = cluster_uf.find(idx);
        let next_id = cluster_ids.len();
        let cid = *cluster_ids.entry(leader).or_insert(next_id);
        if cid == cluster_boxes.len() {
            cluster_boxes.push(comp_box[&root]);
        } else {
            cluster_boxes[cid] = cluster_boxes[cid].union(&comp_box[&root]);
        }
        root_to_cluster.insert(root, cid);
    }

    let cluster_of = (0..n).map(|i| root_to_cluster[&uf.find(i)]).collect();
    (cluster_of, cluster_boxes)
}

/// Full graph construction from a pre-split document.
pub fn build_graph(doc: &VectorDocument, params: GraphParams) -> DetectionGraph {
    let (nodes, stroke_edges) = build_nodes_and_stroke_edges(doc, params.merge_tol);
    let (cluster_of, cluster_boxes) = regional_clusters(&nodes, &stroke_edges, params.expand_len);
    let graph = DetectionGraph { nodes, stroke_edges, cluster_of, cluster_boxes };
    debug_assert!(graph
        .stroke_edges
        .iter()
        .all(|e| graph.cluster_of[e.endpoints.0] == graph.cluster_of[e.endpoints.1]));
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier::{elevate_segment, split_at_intersections, Style};
    use crate::geom::pt;

    fn seg(a: (f64, f64), b: (f64, f64)) -> crate::bezier::CubicBezier {
        elevate_segment(pt(a.0, a.1), pt(b.0, b.1), Style::default()).unwrap()
    }

    fn doc(curves: Vec<crate::bezier::CubicBezier>) -> VectorDocument {
        VectorDocument::new(curves, 100.0, 100.0)
    }

    #[test]
    fn one_curve_two_nodes_one_edge() {
        let d = doc(vec![seg((0.0, 0.0), (10.0, 0.0))]);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.01);
        assert_eq!(nodes.len(), 2);
        assert_eq!(edges.len(), 1);
        let e = &edges[0];
        assert_eq!(e.attributes, [10.0 / 3.0, 0.0, 20.0 / 3.0, 0.0]);
    }

    #[test]
    fn shared_endpoint_dedupes() {
        let d = doc(vec![seg((0.0, 0.0), (10.0, 0.0)), seg((10.0, 0.0), (10.0, 10.0))]);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.01);
        assert_eq!(nodes.len(), 3);
        assert_eq!(edges.len(), 2);
    }

    #[test]
    fn near_endpoint_within_tolerance_dedupes() {
        let d = doc(vec![seg((0.0, 0.0), (10.0, 0.0)), seg((10.0, 0.005), (10.0, 10.0))]);
        let (nodes, _) = build_nodes_and_stroke_edges(&d, 0.01);
        assert_eq!(nodes.len(), 3);
        let (nodes, _) = build_nodes_and_stroke_edges(&d, 0.001);
        assert_eq!(nodes.len(), 4);
    }

    #[test]
    fn crossing_lines_after_split_form_five_nodes_four_edges() {
        let crossing = vec![seg((0.0, 0.0), (10.0, 10.0)), seg((0.0, 10.0), (10.0, 0.0))];
        let split = split_at_intersections(&crossing);
        assert_eq!(split.curves.len(), 4);
        let d = doc(split.curves);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.01);
        assert_eq!(nodes.len(), 5);
        assert_eq!(edges.len(), 4);
        // Center node participates in all four edges.
        let center = nodes
            .iter()
            .position(|n| n.position.distance(pt(5.0, 5.0)) < 1e-6)
            .expect("center node");
        let degree = edges
            .iter()
            .filter(|e| e.endpoints.0 == center || e.endpoints.1 == center)
            .count();
        assert_eq!(degree, 4);
    }

    #[test]
    fn node_attributes_average_incident_styles() {
        let mut a = seg((0.0, 0.0), (10.0, 0.0));
        a.style = Style { color: [1.0, 0.0, 0.0], width: 2.0 };
        let mut b = seg((10.0, 0.0), (10.0, 10.0));
        b.style = Style { color: [0.0, 0.0, 1.0], width: 4.0 };
        let d = doc(vec![a, b]);
        let (nodes, _) = build_nodes_and_stroke_edges(&d, 0.01);
        let shared = nodes
            .iter()
            .find(|n| n.position.distance(pt(10.0, 0.0)) < 1e-9)
            .unwrap();
        assert_eq!(&shared.attributes[2..], &[0.5, 0.0, 0.5, 3.0]);
        // Position columns equal the node position exactly.
        for n in &nodes {
            assert_eq!(n.attributes[0], n.position.x);
            assert_eq!(n.attributes[1], n.position.y);
        }
    }

    #[test]
    fn closed_loop_forms_self_loop_edge() {
        let c = crate::bezier::CubicBezier::from_points(
            pt(0.0, 0.0),
            pt(5.0, 5.0),
            pt(-5.0, 5.0),
            pt(0.0, 0.0),
        );
        let d = doc(vec![c]);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.01);
        assert_eq!(nodes.len(), 1);
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].endpoints.0, edges[0].endpoints.1);
    }

    #[test]
    fn expanded_boxes_control_cluster_merging() {
        // Components with boxes [0,0,1,1] and [10,10,11,11].
        let d = doc(vec![seg((0.0, 0.0), (1.0, 1.0)), seg((10.0, 10.0), (11.0, 11.0))]);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.001);
        let (clusters, _) = regional_clusters(&nodes, &edges, 1.0);
        assert_eq!(clusters.iter().collect::<std::collections::HashSet<_>>().len(), 2);
        let (clusters, boxes) = regional_clusters(&nodes, &edges, 5.0);
        assert_eq!(boxes.len(), 1);
        assert!(clusters.iter().all(|&c| c == 0));
    }

    #[test]
    fn single_component_single_cluster() {
        let d = doc(vec![seg((0.0, 0.0), (1.0, 0.0)), seg((1.0, 0.0), (1.0, 1.0))]);
        let (nodes, edges) = build_nodes_and_stroke_edges(&d, 0.001);
        for expand in [0.0, 0.5, 100.0] {
            let (_, boxes) = regional_clusters(&nodes, &edges, expand);
            assert_eq!(boxes.len(), 1);
        }
    }

    #[test]
    fn transitive_merge_is_order_independent() {
        // Three components in a row; middle overlaps both ends after expansion.
        let comps = [
            seg((0.0, 0.0), (1.0, 0.0)),
            seg((2.0, 0.0), (3.0, 0.0)),
            seg((4.0, 0.0), (5.0, 0.0)),
        ];
        let orders: [[usize; 3]; 3] = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
        let mut partitions = Vec::new();
        for order in orders {
            let d = doc(order.iter().map(|&i| comps[i]).collect());
            let g = build_graph(&d, GraphParams { merge_tol: 0.001, expand_len: 0.6 });
            // Canonical partition: sorted clusters of sorted positions.
            let mut clusters: Vec<Vec<(i64, i64)>> = vec![Vec::new(); g.num_clusters()];
            for (i, &c) in g.cluster_of.iter().enumerate() {
                let p = g.nodes[i].position;
                clusters[c].push((p.x.round() as i64, p.y.round() as i64));
            }
            for c in &mut clusters {
                c.sort_unstable();
            }
            clusters.sort();
            partitions.push(clusters);
        }
        assert_eq!(partitions[0], partitions[1]);
        assert_eq!(partitions[0], partitions[2]);
        assert_eq!(partitions[0].len(), 1); // all merged transitively
    }

    #[test]
    fn position_degree_counts_cluster_peers() {
        let d = doc(vec![
            seg((0.0, 0.0), (1.0, 0.0)),
            seg((1.0, 0.0), (1.0, 1.0)),
            seg((50.0, 50.0), (51.0, 50.0)),
        ]);
        let g = build_graph(&d, GraphParams { merge_tol: 0.001, expand_len: 1.0 });
        assert_eq!(g.num_clusters(), 2);
        // Cluster sizes 3 and 2: degrees 2 and 1.
        let mut degrees: Vec<usize> = (0..g.nodes.len()).map(|i| g.position_degree(i).unwrap()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2]);
        // Total undirected position-wise edges per cluster: 3 + 1 = 4.
        let total: usize = degrees.iter().sum::<usize>() / 2;
        assert_eq!(total, 4);
        assert!(g.position_degree(99).is_err());
    }

    #[test]
    fn singleton_cluster_degree_zero() {
        let c = crate::bezier::CubicBezier::from_points(
            pt(0.0, 0.0),
            pt(5.0, 5.0),
            pt(-5.0, 5.0),
            pt(0.0, 0.0),
        );
        let g = build_graph(&doc(vec![c]), GraphParams { merge_tol: 0.001, expand_len: 1.0 });
        assert_eq!(g.position_degree(0).unwrap(), 0);
    }

    #[test]
    fn stroke_edges_stay_within_clusters() {
        let d = doc(vec![
            seg((0.0, 0.0), (1.0, 1.0)),
            seg((1.0, 1.0), (2.0, 0.0)),
            seg((30.0, 30.0), (31.0, 31.0)),
        ]);
        let g = build_graph(&d, GraphParams::for_document(&d));
        for e in &g.stroke_edges {
            assert_eq!(g.cluster_of[e.endpoints.0], g.cluster_of[e.endpoints.1]);
        }
    }

    #[test]
    fn rigid_motion_preserves_topology() {
        use crate::geom::Affine;
        let base = doc(vec![
            seg((10.0, 10.0), (20.0, 10.0)),
            seg((20.0, 10.0), (20.0, 20.0)),
            seg((60.0, 60.0), (70.0, 70.0)),
        ]);
        let params = GraphParams::for_document(&base);
        let reference = build_graph(&base, params);

        for m in [
            Affine::translation(pt(7.0, -3.0)),
            Affine::rotation_about(0.7, pt(50.0, 50.0)),
        ] {
            let moved = base.apply_affine(&m).unwrap();
            let g = build_graph(&moved, params);
            assert_eq!(g.nodes.len(), reference.nodes.len());
            assert_eq!(g.stroke_edges.len(), reference.stroke_edges.len());
            // Edge endpoint multiset corresponds under the motion.
            let mut ref_pairs: Vec<(String, String)> = reference
                .stroke_edges
                .iter()
                .map(|e| {
                    let a = m.apply(reference.nodes[e.endpoints.0].position);
                    let b = m.apply(reference.nodes[e.endpoints.1].position);
                    key_pair(a, b)
                })
                .collect();
            let mut got_pairs: Vec<(String, String)> = g
                .stroke_edges
                .iter()
                .map(|e| key_pair(g.nodes[e.endpoints.0].position, g.nodes[e.endpoints.1].position))
                .collect();
            ref_pairs.sort();
            got_pairs.sort();
            assert_eq!(ref_pairs, got_pairs);
            assert_eq!(g.num_clusters(), reference.num_clusters());
        }
    }

    fn key_pair(a: Point, b: Point) -> (String, String) {
        let k = |p: Point| format!("{:.3},{:.3}", p.x, p.y);
        let (ka, kb) = (k(a), k(b));
        if ka <= kb { (ka, kb) } else { (kb, ka) }
    }
}
