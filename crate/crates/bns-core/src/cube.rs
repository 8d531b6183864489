//! Resolutions of a diagram and the planar data needed for Lee generators.
//!
//! Smoothing convention, with tuple slots counterclockwise from the incoming
//! under-strand: the 0-smoothing joins slots (0,1) and (2,3), the 1-smoothing
//! joins (1,2) and (3,0).

use crate::diagram::PlanarDiagram;
use crate::{Error, Result};

/// Circles of a complete resolution, labelled 0.. in order of first
/// appearance along the sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub circle_of_edge: Vec<usize>,
    pub circle_count: usize,
}

impl Resolution {
    pub fn basepoint_circle(&self, d: &PlanarDiagram) -> usize {
        let idx = d.edge_index(d.basepoint_edge()).unwrap();
        self.circle_of_edge[idx]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
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
            self.parent[ra] = rb;
        }
    }
}

/// Pairs of tuple slots joined by each smoothing choice.
pub fn joined_slots(s: u8) -> [(usize, usize); 2] {
    if s == 0 {
        [(0, 1), (2, 3)]
    } else {
        [(1, 2), (3, 0)]
    }
}

/// Compute the circles of the resolution given one smoothing bit per
/// crossing.
pub fn resolve(d: &PlanarDiagram, smoothing: &[u8]) -> Resolution {
    let ne = d.edge_count();
    let mut uf = UnionFind::new(ne);
    for (ci, c) in d.crossings().iter().enumerate() {
        for (p, q) in joined_slots(smoothing[ci]) {
            let a = d.edge_index(c.edges[p]).unwrap();
            let b = d.edge_index(c.edges[q]).unwrap();
            uf.union(a, b);
        }
    }
    let mut circle_of_edge = vec![usize::MAX; ne];
    let mut label = vec![usize::MAX; ne];
    let mut count = 0;
    for i in 0..ne {
        let r = uf.find(i);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        circle_of_edge[i] = label[r];
    }
    Resolution {
        circle_of_edge,
        circle_count: count,
    }
}

/// The orientation-preserving smoothing: 0 at positive crossings, 1 at
/// negative ones. Its resolution is the Seifert state, at homological
/// degree 0.
pub fn oriented_smoothing(d: &PlanarDiagram) -> Vec<u8> {
    d.crossings()
        .iter()
        .map(|c| if c.sign > 0 { 0 } else { 1 })
        .collect()
}

/// Faces of the underlying 4-valent planar map. `of_half_edge[2i+dir]` is the
/// face to the right of edge `i` traversed forward (dir 0) or backward.
struct Faces {
    of_half_edge: Vec<usize>,
    corner_face: Vec<usize>,
    count: usize,
}

fn trace_faces(d: &PlanarDiagram) -> Result<Faces> {
    let n = d.crossing_count();
    let ne = d.edge_count();
    let mut of_half_edge = vec![usize::MAX; 2 * ne];
    let mut corner_face = vec![usize::MAX; 4 * n];
    let mut count = 0;
    for start in 0..2 * ne {
        if of_half_edge[start] != usize::MAX {
            continue;
        }
        let fid = count;
        count += 1;
        let mut h = start;
        while of_half_edge[h] == usize::MAX {
            of_half_edge[h] = fid;
            let idx = h / 2;
            let (ci, pi) = if h % 2 == 0 {
                d.head_of(idx)
            } else {
                d.tail_of(idx)
            };
            // Turn counterclockwise through corner (ci, pi), leave at the
            // next slot; faces traced this way lie to the right of each
            // directed edge.
            corner_face[4 * ci + pi] = fid;
            let out = (pi + 1) % 4;
            let e2 = d.crossings()[ci].edges[out];
            let i2 = d.edge_index(e2).unwrap();
            h = if d.head_of(i2) == (ci, out) {
                2 * i2 + 1
            } else {
                2 * i2
            };
        }
        // A well-formed orbit returns to its start.
        if h != start {
            return Err(Error::NonPlanarData);
        }
    }
    if n > 0 && count != n + 2 {
        return Err(Error::NonPlanarData);
    }
    Ok(Faces {
        of_half_edge,
        corner_face,
        count,
    })
}

/// Per-circle parity of the Seifert state: nesting depth plus a clockwise
/// bit. Circles are indexed as in `resolve(d, oriented_smoothing(d))`.
pub fn lee_parities(d: &PlanarDiagram) -> Result<Vec<u8>> {
    if d.crossing_count() == 0 {
        return Ok(vec![0]);
    }
    let s = oriented_smoothing(d);
    let res = resolve(d, &s);
    let faces = trace_faces(d)?;

    // Regions of the smoothed diagram: the two corners not cut off by the
    // smoothing arcs merge through the crossing.
    let mut uf = UnionFind::new(faces.count);
    for (ci, &sv) in s.iter().enumerate() {
        let (a, b) = if sv == 0 { (1, 3) } else { (0, 2) };
        uf.union(faces.corner_face[4 * ci + a], faces.corner_face[4 * ci + b]);
    }

    // Each circle has one region per side; all its edges must agree.
    let ne = d.edge_count();
    let mut right = vec![usize::MAX; res.circle_count];
    let mut left = vec![usize::MAX; res.circle_count];
    for i in 0..ne {
        let c = res.circle_of_edge[i];
        let r = uf.find(faces.of_half_edge[2 * i]);
        let l = uf.find(faces.of_half_edge[2 * i + 1]);
        for (slot, v) in [(&mut right[c], r), (&mut left[c], l)] {
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(Error::NonPlanarData);
            }
        }
    }

    // Disjoint circles cut the plane into circle_count + 1 regions forming a
    // tree under adjacency; depth from the unbounded region gives nesting.
    let mut regions: Vec<usize> = (0..faces.count)
        .map(|f| uf.find(f))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    regions.sort_unstable();
    if regions.len() != res.circle_count + 1 {
        return Err(Error::NonPlanarData);
    }
    let rid = |r: usize| regions.binary_search(&r).unwrap();

    // The unbounded region is fixed as the one left of the lowest-numbered
    // edge, traversed along its orientation.
    let unbounded = uf.find(faces.of_half_edge[1]);
    let mut depth = vec![usize::MAX; regions.len()];
    depth[rid(unbounded)] = 0;
    let mut queue = std::collections::VecDeque::from([unbounded]);
    while let Some(r) = queue.pop_front() {
        let dr = depth[rid(r)];
        for c in 0..res.circle_count {
            for other in [left[c], right[c]] {
                if (left[c] == r || right[c] == r) && depth[rid(other)] == usize::MAX {
                    depth[rid(other)] = dr + 1;
                    queue.push_back(other);
                }
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::NonPlanarData);
    }

    let mut parities = vec![0u8; res.circle_count];
    for c in 0..res.circle_count {
        let dl = depth[rid(left[c])];
        let dr = depth[rid(right[c])];
        if dl.abs_diff(dr) != 1 {
            return Err(Error::NonPlanarData);
        }
        let nesting = dl.min(dr);
        // Interior on the right of the strand means clockwise.
        let cw = (dr > dl) as usize;
        parities[c] = ((nesting + cw) % 2) as u8;
    }
    Ok(parities)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_resolutions() {
        let d = PlanarDiagram::parse(TREFOIL).unwrap();
        let all0 = resolve(&d, &[0, 0, 0]);
        assert_eq!(all0.circle_count, 3);
        let all1 = resolve(&d, &[1, 1, 1]);
        assert_eq!(all1.circle_count, 2);
        // Left trefoil is all-negative, so the Seifert state is all-1.
        assert_eq!(oriented_smoothing(&d), vec![1, 1, 1]);
    }

    #[test]
    fn kink_resolutions() {
        let d = PlanarDiagram::parse("X(2,2,1,1)").unwrap();
        assert_eq!(resolve(&d, &[0]).circle_count, 2);
        assert_eq!(resolve(&d, &[1]).circle_count, 1);
    }

    #[test]
    fn trefoil_lee_parities() {
        let d = PlanarDiagram::parse(TREFOIL).unwrap();
        let p = lee_parities(&d).unwrap();
        // Two nested Seifert circles with the same winding sense alternate.
        assert_eq!(p.len(), 2);
        assert_ne!(p[0], p[1]);
    }

    #[test]
    fn figure_eight_lee_parities() {
        let d = PlanarDiagram::parse("dt:4 6 8 2").unwrap();
        let s = oriented_smoothing(&d);
        let r = resolve(&d, &s);
        let p = lee_parities(&d).unwrap();
        assert_eq!(p.len(), r.circle_count);
    }

    #[test]
    fn unknot_lee() {
        let d = PlanarDiagram::unknot();
        assert_eq!(lee_parities(&d).unwrap(), vec![0]);
    }
}
