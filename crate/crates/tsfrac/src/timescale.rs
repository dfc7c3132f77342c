//! Bounded time scales and their computational meshes.
//!
//! A time scale is represented as a finite union of closed intervals; a
//! degenerate interval is an isolated point. Jump operators, graininess and
//! point classification follow the standard time-scale conventions
//! (inf of the empty set is sup T, and symmetrically at the minimum).

use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on mesh node count.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

/// A closed interval `[lo, hi]`; `lo == hi` is an isolated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// A bounded time scale: ordered, strictly separated closed segments.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    segments: Vec<Segment>,
}

/// Classification of one side of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideClass {
    Dense,
    Scattered,
    /// The extremum of the scale; the paper leaves the dichotomy implicit
    /// there, so it is reported explicitly instead of forced.
    Boundary,
}

/// Two-sided point classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClass {
    pub right: SideClass,
    pub left: SideClass,
}

impl PointClass {
    /// Right-scattered and left-scattered at the same time.
    pub fn is_isolated(&self) -> bool {
        self.right == SideClass::Scattered && self.left == SideClass::Scattered
    }

    /// Right-dense and left-dense at the same time.
    pub fn is_dense(&self) -> bool {
        self.right == SideClass::Dense && self.left == SideClass::Dense
    }
}

impl std::fmt::Display for PointClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |s: SideClass, name: &str| match s {
            SideClass::Dense => format!("{name}-dense"),
            SideClass::Scattered => format!("{name}-scattered"),
            SideClass::Boundary => format!("{name}-boundary"),
        };
        if self.is_isolated() {
            write!(f, "isolated")
        } else if self.is_dense() {
            write!(f, "dense")
        } else {
            write!(f, "{}, {}", side(self.right, "right"), side(self.left, "left"))
        }
    }
}

/// Build a normalized time scale from raw segments.
///
/// Segments are sorted; touching segments (`hi_i == lo_{i+1}`) merge,
/// overlapping ones are rejected.
pub fn build_time_scale(segments: &[(f64, f64)]) -> Result<TimeScale> {
    if segments.is_empty() {
        return Err(Error::Overlap("no segments given".into()));
    }
    let mut segs: Vec<Segment> = Vec::with_capacity(segments.len());
    for &(lo, hi) in segments {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Overlap(format!("non-finite segment ({lo}, {hi})")));
        }
        if lo > hi {
            return Err(Error::Overlap(format!("reversed segment ({lo}, {hi})")));
        }
        segs.push(Segment { lo, hi });
    }
    segs.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());

    let mut merged: Vec<Segment> = Vec::with_capacity(segs.len());
    for s in segs {
        match merged.last_mut() {
            Some(prev) if s.lo < prev.hi => {
                return Err(Error::Overlap(format!(
                    "segments ({}, {}) and ({}, {}) overlap",
                    prev.lo, prev.hi, s.lo, s.hi
                )));
            }
            Some(prev) if s.lo == prev.hi => prev.hi = s.hi,
            _ => merged.push(s),
        }
    }
    let a = merged.first().unwrap().lo;
    let b = merged.last().unwrap().hi;
    if a == b {
        return Err(Error::DegenerateScale(a));
    }
    Ok(TimeScale { segments: merged })
}

impl TimeScale {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Minimum of the scale.
    pub fn a(&self) -> f64 {
        self.segments[0].lo
    }

    /// Maximum of the scale.
    pub fn b(&self) -> f64 {
        self.segments[self.segments.len() - 1].hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.segment_of(t).is_some()
    }

    fn segment_of(&self, t: f64) -> Option<usize> {
        // Segments are few; a linear scan keeps the comparisons exact and obvious.
        self.segments.iter().position(|s| s.contains(t))
    }

    fn require_member(&self, t: f64) -> Result<usize> {
        self.segment_of(t).ok_or(Error::NotInScale(t))
    }

    /// Forward jump operator: inf { s in T : s > t }, with sigma(b) = b.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let i = self.require_member(t)?;
        let seg = self.segments[i];
        if t < seg.hi {
            Ok(t) // right-dense inside a nondegenerate segment
        } else if i + 1 < self.segments.len() {
            Ok(self.segments[i + 1].lo)
        } else {
            Ok(t) // maximum
        }
    }

    /// Backward jump operator: sup { s in T : s < t }, with rho(a) = a.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let i = self.require_member(t)?;
        let seg = self.segments[i];
        if t > seg.lo {
            Ok(t)
        } else if i > 0 {
            Ok(self.segments[i - 1].hi)
        } else {
            Ok(t) // minimum
        }
    }

    /// Graininess mu(t) = sigma(t) - t.
    pub fn graininess(&self, t: f64) -> Result<f64> {
        Ok(self.sigma(t)? - t)
    }

    /// Classify a point of the scale; extrema report an explicit boundary side.
    pub fn classify(&self, t: f64) -> Result<PointClass> {
        self.require_member(t)?;
        let right = if t == self.b() {
            SideClass::Boundary
        } else if self.sigma(t)? > t {
            SideClass::Scattered
        } else {
            SideClass::Dense
        };
        let left = if t == self.a() {
            SideClass::Boundary
        } else if self.rho(t)? < t {
            SideClass::Scattered
        } else {
            SideClass::Dense
        };
        Ok(PointClass { right, left })
    }
}

/// Kind of a mesh cell `[t_i, t_{i+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// Both endpoints belong to the same segment; the cell refines a
    /// continuum piece of the scale.
    Dense,
    /// The open gap between the nodes lies outside the scale; the cell
    /// measure equals the true graininess sigma(t_i) - t_i.
    Scattered,
}

/// Computational mesh over a time scale.
///
/// Nodes are strictly increasing members of the scale, include every segment
/// endpoint, and subdivide nondegenerate segments with spacing <= h_max.
/// Immutable after construction; share via `Arc`.
#[derive(Debug)]
pub struct Mesh {
    scale: TimeScale,
    nodes: Vec<f64>,
    /// Per-cell widths; `cells.len() == nodes.len() - 1`.
    widths: Vec<f64>,
    kinds: Vec<CellKind>,
}

/// Build a mesh with dense-segment spacing at most `h_max`.
pub fn build_mesh(scale: &TimeScale, h_max: f64) -> Result<Arc<Mesh>> {
    build_mesh_capped(scale, h_max, DEFAULT_NODE_CAP)
}

/// As [`build_mesh`] with an explicit node-count cap.
pub fn build_mesh_capped(scale: &TimeScale, h_max: f64, cap: usize) -> Result<Arc<Mesh>> {
    if !(h_max > 0.0) {
        return Err(Error::Domain(format!("h_max must be positive, got {h_max}")));
    }

    let mut total = 0usize;
    let mut per_segment = Vec::with_capacity(scale.segments.len());
    for seg in &scale.segments {
        let n = if seg.is_point() {
            1
        } else {
            ((seg.hi - seg.lo) / h_max).ceil().max(1.0) as usize + 1
        };
        per_segment.push(n);
        total += n;
    }
    if total > cap {
        return Err(Error::Resolution {
            requested: total,
            cap,
        });
    }

    let mut nodes = Vec::with_capacity(total);
    let mut widths = Vec::with_capacity(total.saturating_sub(1));
    let mut kinds = Vec::with_capacity(total.saturating_sub(1));
    for (seg, &n) in scale.segments.iter().zip(&per_segment) {
        if !nodes.is_empty() {
            // Gap cell from the previous segment's end to this one's start.
            let prev = *nodes.last().unwrap();
            widths.push(seg.lo - prev);
            kinds.push(CellKind::Scattered);
        }
        if seg.is_point() {
            nodes.push(seg.lo);
        } else {
            let cells = n - 1;
            for j in 0..n {
                let t = if j == cells {
                    seg.hi
                } else {
                    seg.lo + (seg.hi - seg.lo) * j as f64 / cells as f64
                };
                if j > 0 {
                    widths.push(t - *nodes.last().unwrap());
                    kinds.push(CellKind::Dense);
                }
                nodes.push(t);
            }
        }
    }
    debug_assert_eq!(widths.len(), nodes.len() - 1);

    Ok(Arc::new(Mesh {
        scale: scale.clone(),
        nodes,
        widths,
        kinds,
    }))
}

impl Mesh {
    pub fn scale(&self) -> &TimeScale {
        &self.scale
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least two nodes
    }

    pub fn a(&self) -> f64 {
        self.nodes[0]
    }

    pub fn b(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Number of cells (`len() - 1`).
    pub fn cell_count(&self) -> usize {
        self.widths.len()
    }

    /// Cell measure mu_i = t_{i+1} - t_i; zero at the last node.
    pub fn measure(&self, i: usize) -> f64 {
        if i < self.widths.len() {
            self.widths[i]
        } else {
            0.0
        }
    }

    /// Kind of cell i; `None` at the last node.
    pub fn kind(&self, i: usize) -> Option<CellKind> {
        self.kinds.get(i).copied()
    }

    /// Index of a node holding exactly time `t`.
    pub fn node_index(&self, t: f64) -> Result<usize> {
        self.nodes
            .binary_search_by(|x| x.partial_cmp(&t).unwrap())
            .map_err(|_| Error::NotANode(t))
    }

    /// Left-rectangle quadrature weights (the Delta-cell measures).
    pub fn weights(&self) -> Vec<f64> {
        let mut w = self.widths.clone();
        w.push(0.0);
        w
    }

    /// Indices of nodes strictly between a and b.
    pub fn interior_indices(&self) -> std::ops::Range<usize> {
        1..self.nodes.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed() -> TimeScale {
        build_time_scale(&[(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)]).unwrap()
    }

    #[test]
    fn construction_and_normalization() {
        let ts = mixed();
        assert_eq!(ts.a(), 0.0);
        assert_eq!(ts.b(), 3.0);
        assert_eq!(ts.segments().len(), 3);

        let touched = build_time_scale(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(touched.segments(), &[Segment { lo: 0.0, hi: 2.0 }]);

        assert!(matches!(
            build_time_scale(&[(0.0, 2.0), (1.0, 3.0)]),
            Err(Error::Overlap(_))
        ));
        assert!(matches!(
            build_time_scale(&[(1.0, 1.0)]),
            Err(Error::DegenerateScale(_))
        ));
        assert!(matches!(
            build_time_scale(&[(2.0, 1.0)]),
            Err(Error::Overlap(_))
        ));
    }

    #[test]
    fn jump_operators() {
        let ts = mixed();
        assert_eq!(ts.sigma(0.0).unwrap(), 1.0);
        assert_eq!(ts.sigma(1.5).unwrap(), 1.5);
        assert_eq!(ts.sigma(2.0).unwrap(), 3.0);
        assert_eq!(ts.sigma(3.0).unwrap(), 3.0);
        assert_eq!(ts.rho(1.0).unwrap(), 0.0);
        assert_eq!(ts.rho(1.5).unwrap(), 1.5);
        assert_eq!(ts.rho(0.0).unwrap(), 0.0);
        assert!(matches!(ts.sigma(0.5), Err(Error::NotInScale(_))));
    }

    #[test]
    fn graininess_values() {
        let ts = mixed();
        assert_eq!(ts.graininess(0.0).unwrap(), 1.0);
        assert_eq!(ts.graininess(1.5).unwrap(), 0.0);
        assert_eq!(ts.graininess(2.0).unwrap(), 1.0);
        assert_eq!(ts.graininess(3.0).unwrap(), 0.0);
    }

    #[test]
    fn classification() {
        let ts = mixed();
        let at_a = ts.classify(0.0).unwrap();
        assert_eq!(at_a.right, SideClass::Scattered);
        assert_eq!(at_a.left, SideClass::Boundary);

        assert!(ts.classify(1.5).unwrap().is_dense());

        let at_b = ts.classify(3.0).unwrap();
        assert_eq!(at_b.left, SideClass::Scattered);
        assert_eq!(at_b.right, SideClass::Boundary);

        // Consistency: right-scattered iff positive graininess.
        for t in [0.0, 1.0, 1.5, 2.0] {
            let c = ts.classify(t).unwrap();
            let mu = ts.graininess(t).unwrap();
            assert_eq!(c.right == SideClass::Scattered, mu > 0.0, "t = {t}");
        }
    }

    #[test]
    fn mesh_unit_interval() {
        let ts = build_time_scale(&[(0.0, 1.0)]).unwrap();
        let mesh = build_mesh(&ts, 0.25).unwrap();
        assert_eq!(mesh.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(mesh.kinds.iter().all(|&k| k == CellKind::Dense));
        assert!(mesh.widths.iter().all(|&w| w == 0.25));
    }

    #[test]
    fn mesh_integer_scale() {
        let ts = build_time_scale(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).unwrap();
        let mesh = build_mesh(&ts, 0.1).unwrap();
        assert_eq!(mesh.nodes(), &[0.0, 1.0, 2.0, 3.0]);
        assert!(mesh.kinds.iter().all(|&k| k == CellKind::Scattered));
    }

    #[test]
    fn mesh_mixed_measure_invariant() {
        let ts = build_time_scale(&[(0.0, 0.0), (1.0, 2.0)]).unwrap();
        let mesh = build_mesh(&ts, 0.5).unwrap();
        assert_eq!(mesh.nodes(), &[0.0, 1.0, 1.5, 2.0]);
        assert_eq!(mesh.kind(0), Some(CellKind::Scattered));
        assert_eq!(mesh.kind(1), Some(CellKind::Dense));
        let total: f64 = (0..mesh.len()).map(|i| mesh.measure(i)).sum();
        assert!((total - 2.0).abs() <= 1e-12 * 2.0);
    }

    #[test]
    fn mesh_sigma_vs_successor() {
        let ts = mixed();
        let mesh = build_mesh(&ts, 0.25).unwrap();
        for i in 0..mesh.len() - 1 {
            let t = mesh.node(i);
            let sigma = ts.sigma(t).unwrap();
            let succ = mesh.node(i + 1);
            assert!(sigma <= succ + 1e-15);
            match mesh.kind(i).unwrap() {
                CellKind::Scattered => assert_eq!(sigma, succ),
                CellKind::Dense => assert_eq!(sigma, t),
            }
        }
    }

    #[test]
    fn refinement_monotonicity() {
        let ts = mixed();
        let coarse = build_mesh(&ts, 0.25).unwrap();
        let fine = build_mesh(&ts, 0.125).unwrap();
        let dense = |m: &Mesh| m.kinds.iter().filter(|&&k| k == CellKind::Dense).count();
        let scattered = |m: &Mesh| m.kinds.iter().filter(|&&k| k == CellKind::Scattered).count();
        assert!(dense(&fine) >= 2 * dense(&coarse));
        assert_eq!(scattered(&fine), scattered(&coarse));
    }

    #[test]
    fn node_cap() {
        let ts = build_time_scale(&[(0.0, 1.0)]).unwrap();
        assert!(matches!(
            build_mesh_capped(&ts, 1e-4, 100),
            Err(Error::Resolution { .. })
        ));
    }
}
