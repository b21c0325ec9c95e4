//! Cubic Bézier curves: the universal primitive every SVG shape is normalized
//! to, plus subdivision and pairwise intersection splitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{pt, BoundingBox, Point};

/// Offset constant for approximating a quarter circle with one cubic.
/// Minimizes the maximum radial error (below 0.02 % of the radius).
pub const CIRCLE_KAPPA: f64 = 0.551915024494;

/// Subdivision stops once both parameter intervals are narrower than this.
pub const INTERSECT_PARAM_TOL: f64 = 1e-6;

/// Intersections this close to either curve's endpoints do not trigger a
/// split, so chained curves are not re-fragmented at their joints.
pub const ENDPOINT_EXCLUSION: f64 = 1e-4;

/// Stroke style carried by every curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Style {
    /// RGB, each channel in [0, 1].
    pub color: [f64; 3],
    /// Stroke width in document units.
    pub width: f64,
}

impl Style {
    pub fn validate(&self) -> Result<()> {
        if !self.width.is_finite() || self.width < 0.0 {
            return Err(Error::InvalidPrimitive(format!(
                "stroke width {} out of range",
                self.width
            )));
        }
        for c in self.color {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::InvalidPrimitive(format!("color channel {c} out of [0,1]")));
            }
        }
        Ok(())
    }
}

impl Default for Style {
    fn default() -> Self {
        Style { color: [0.0, 0.0, 0.0], width: 1.0 }
    }
}

/// A cubic Bézier curve with stroke style. `p0`/`p3` are the on-curve
/// endpoints; `p1`/`p2` are the off-curve control points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicBezier {
    pub p0: Point,
    pub p1: Point,
    pub p2: Point,
    pub p3: Point,
    pub style: Style,
}

impl CubicBezier {
    pub fn new(p0: Point, p1: Point, p2: Point, p3: Point, style: Style) -> Result<Self> {
        for p in [p0, p1, p2, p3] {
            if !p.is_finite() {
                return Err(Error::InvalidPrimitive("non-finite control point".into()));
            }
        }
        style.validate()?;
        Ok(CubicBezier { p0, p1, p2, p3, style })
    }

    /// Geometry-only constructor with the default style; panics on non-finite
    /// input, which test fixtures never produce.
    pub fn from_points(p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        CubicBezier::new(p0, p1, p2, p3, Style::default()).expect("finite control points")
    }

    fn with_points(&self, p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        CubicBezier { p0, p1, p2, p3, style: self.style }
    }

    /// Curve position at `t`, for `t` in [0, 1].
    pub fn eval(&self, t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("bezier parameter {t} outside [0,1]")));
        }
        Ok(self.point_at(t))
    }

    /// Bernstein-form evaluation without the domain check.
    pub(crate) fn point_at(&self, t: f64) -> Point {
        let u = 1.0 - t;
        self.p0 * (u * u * u)
            + self.p1 * (3.0 * u * u * t)
            + self.p2 * (3.0 * u * t * t)
            + self.p3 * (t * t * t)
    }

    pub fn control_points(&self) -> [Point; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    /// Bounding box of the control polygon (contains the curve by convexity).
    pub fn control_bbox(&self) -> BoundingBox {
        BoundingBox::from_points(self.control_points()).unwrap()
    }

    pub fn apply_affine(&self, m: &crate::geom::Affine) -> Self {
        self.with_points(
            m.apply(self.p0),
            m.apply(self.p1),
            m.apply(self.p2),
            m.apply(self.p3),
        )
    }

    /// De Casteljau subdivision at `t`, both halves retaining the style.
    pub fn subdivide(&self, t: f64) -> (CubicBezier, CubicBezier) {
        let ab = self.p0.lerp(self.p1, t);
        let bc = self.p1.lerp(self.p2, t);
        let cd = self.p2.lerp(self.p3, t);
        let abc = ab.lerp(bc, t);
        let bcd = bc.lerp(cd, t);
        let mid = abc.lerp(bcd, t);
        (
            self.with_points(self.p0, ab, abc, mid),
            self.with_points(mid, bcd, cd, self.p3),
        )
    }

    /// Split at several ascending parameters in (0, 1).
    pub fn split_at_params(&self, ts: &[f64]) -> Vec<CubicBezier> {
        let mut out = Vec::with_capacity(ts.len() + 1);
        let mut rest = *self;
        let mut consumed = 0.0;
        for &t in ts {
            let local = (t - consumed) / (1.0 - consumed);
            let (head, tail) = rest.subdivide(local);
            out.push(head);
            rest = tail;
            consumed = t;
        }
        out.push(rest);
        out
    }

    /// True when the curve is an exactly degree-elevated line segment, i.e.
    /// the interior controls sit at the thirds of `p0..p3`.
    pub fn is_elevated_segment(&self) -> bool {
        let scale = 1.0 + self.p0.distance(self.p3);
        let tol = 1e-9 * scale;
        self.p1.distance(self.p0.lerp(self.p3, 1.0 / 3.0)) <= tol
            && self.p2.distance(self.p0.lerp(self.p3, 2.0 / 3.0)) <= tol
    }

    /// Polyline approximation of arc length with `n` chords.
    pub fn chord_length(&self, n: usize) -> f64 {
        let mut total = 0.0;
        let mut prev = self.p0;
        for i in 1..=n {
            let p = self.point_at(i as f64 / n as f64);
            total += prev.distance(p);
            prev = p;
        }
        total
    }
}

/// Degree-elevate a line segment: interior controls at the thirds.
pub fn elevate_segment(a: Point, b: Point, style: Style) -> Result<CubicBezier> {
    CubicBezier::new(a, a.lerp(b, 1.0 / 3.0), a.lerp(b, 2.0 / 3.0), b, style)
}

/// Degree-elevate a quadratic Bézier to a cubic tracing the same point set.
pub fn elevate_quadratic(q0: Point, q1: Point, q2: Point, style: Style) -> Result<CubicBezier> {
    let p1 = q0 + (q1 - q0) * (2.0 / 3.0);
    let p2 = q2 + (q1 - q2) * (2.0 / 3.0);
    CubicBezier::new(q0, p1, p2, q2, style)
}

/// Convert a circle to four cubics, one per quarter, endpoints at the
/// axis-aligned extreme points.
pub fn circle_to_beziers(center: Point, radius: f64, style: Style) -> Result<[CubicBezier; 4]> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidPrimitive(format!("circle radius {radius} must be positive")));
    }
    ellipse_to_beziers(center, radius, radius, style)
}

/// Convert an ellipse to four cubics via anisotropic scaling of the circle
/// construction.
pub fn ellipse_to_beziers(center: Point, rx: f64, ry: f64, style: Style) -> Result<[CubicBezier; 4]> {
    if !(rx > 0.0) || !(ry > 0.0) || !rx.is_finite() || !ry.is_finite() {
        return Err(Error::InvalidPrimitive(format!("ellipse radii ({rx}, {ry}) must be positive")));
    }
    let c = CIRCLE_KAPPA;
    // Unit-circle quarters starting at (0, 1), continuing through (1, 0),
    // (0, -1), (-1, 0) and back.
    let quarters = [
        [pt(0.0, 1.0), pt(c, 1.0), pt(1.0, c), pt(1.0, 0.0)],
        [pt(1.0, 0.0), pt(1.0, -c), pt(c, -1.0), pt(0.0, -1.0)],
        [pt(0.0, -1.0), pt(-c, -1.0), pt(-1.0, -c), pt(-1.0, 0.0)],
        [pt(-1.0, 0.0), pt(-1.0, c), pt(-c, 1.0), pt(0.0, 1.0)],
    ];
    let map = |p: Point| pt(center.x + rx * p.x, center.y + ry * p.y);
    let mut out = Vec::with_capacity(4);
    for q in quarters {
        out.push(CubicBezier::new(map(q[0]), map(q[1]), map(q[2]), map(q[3]), style)?);
    }
    Ok([out[0], out[1], out[2], out[3]])
}

/// Convert an SVG elliptical-arc command (endpoint parameterization) to a
/// chain of cubics, one per sector of at most 90 degrees.
///
/// Follows the standard endpoint-to-center conversion; out-of-range radii are
/// scaled up as the SVG spec requires, and zero radii degrade to a line.
#[allow(clippy::too_many_arguments)]
pub fn arc_to_beziers(
    from: Point,
    rx: f64,
    ry: f64,
    x_axis_rotation_deg: f64,
    large_arc: bool,
    sweep: bool,
    to: Point,
    style: Style,
) -> Result<Vec<CubicBezier>> {
    if from.distance(to) == 0.0 {
        return Ok(Vec::new());
    }
    let (mut rx, mut ry) = (rx.abs(), ry.abs());
    if rx == 0.0 || ry == 0.0 {
        return Ok(vec![elevate_segment(from, to, style)?]);
    }
    let phi = x_axis_rotation_deg.to_radians();
    let (sin_phi, cos_phi) = phi.sin_cos();

    // Step 1: midpoint in the rotated frame.
    let half = (from - to) * 0.5;
    let x1p = cos_phi * half.x + sin_phi * half.y;
    let y1p = -sin_phi * half.x + cos_phi * half.y;

    // Step 2: radii correction.
    let lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if lambda > 1.0 {
        let s = lambda.sqrt();
        rx *= s;
        ry *= s;
    }

    // Step 3: center in the rotated frame.
    let num = (rx * rx) * (ry * ry) - (rx * rx) * (y1p * y1p) - (ry * ry) * (x1p * x1p);
    let den = (rx * rx) * (y1p * y1p) + (ry * ry) * (x1p * x1p);
    let mut coef = (num / den).max(0.0).sqrt();
    if large_arc == sweep {
        coef = -coef;
    }
    let cxp = coef * rx * y1p / ry;
    let cyp = -coef * ry * x1p / rx;

    let mid = (from + to) * 0.5;
    let center = pt(
        cos_phi * cxp - sin_phi * cyp + mid.x,
        sin_phi * cxp + cos_phi * cyp + mid.y,
    );

    // Step 4: start angle and sweep.
    let angle = |vx: f64, vy: f64| vy.atan2(vx);
    let theta1 = angle((x1p - cxp) / rx, (y1p - cyp) / ry);
    let theta2 = angle((-x1p - cxp) / rx, (-y1p - cyp) / ry);
    let mut delta = theta2 - theta1;
    let tau = std::f64::consts::TAU;
    if !sweep && delta > 0.0 {
        delta -= tau;
    } else if sweep && delta < 0.0 {
        delta += tau;
    }

    let sectors = (delta.abs() / std::f64::consts::FRAC_PI_2).ceil().max(1.0) as usize;
    let step = delta / sectors as f64;
    // Tangent-length constant for one sector of angle `step`.
    let k = 4.0 / 3.0 * (step / 4.0).tan();

    let to_document = |p: Point| {
        pt(
            cos_phi * rx * p.x - sin_phi * ry * p.y + center.x,
            sin_phi * rx * p.x + cos_phi * ry * p.y + center.y,
        )
    };

    let mut out = Vec::with_capacity(sectors);
    for i in 0..sectors {
        let a0 = theta1 + step * i as f64;
        let a1 = a0 + step;
        let (s0, c0) = a0.sin_cos();
        let (s1, c1) = a1.sin_cos();
        let q0 = pt(c0, s0);
        let q3 = pt(c1, s1);
        let q1 = pt(c0 - k * s0, s0 + k * c0);
        let q2 = pt(c1 + k * s1, s1 - k * c1);
        out.push(CubicBezier::new(
            to_document(q0),
            to_document(q1),
            to_document(q2),
            to_document(q3),
            style,
        )?);
    }
    Ok(out)
}

/// Outcome of intersecting one curve pair.
#[derive(Debug, Default)]
struct PairIntersections {
    /// Parameter pairs (t on a, t on b), interior contacts excluded.
    params: Vec<(f64, f64)>,
    /// The curves coincide along a stretch; they are left unsplit.
    overlap: bool,
}

fn segment_segment(a: &CubicBezier, b: &CubicBezier) -> PairIntersections {
    let da = a.p3 - a.p0;
    let db = b.p3 - b.p0;
    let r = b.p0 - a.p0;
    let denom = da.cross(db);
    let scale = da.norm() * db.norm();
    let mut out = PairIntersections::default();
    if denom.abs() <= 1e-12 * scale.max(1e-12) {
        // Parallel. Overlapping collinear segments are reported, not split.
        if r.cross(da).abs() <= 1e-9 * da.norm().max(1e-12) * (r.norm() + 1.0) {
            let len2 = da.dot(da);
            if len2 > 0.0 {
                let t0 = (b.p0 - a.p0).dot(da) / len2;
                let t1 = (b.p3 - a.p0).dot(da) / len2;
                let (lo, hi) = (t0.min(t1), t0.max(t1));
                if hi.min(1.0) - lo.max(0.0) > ENDPOINT_EXCLUSION {
                    out.overlap = true;
                }
            }
        }
        return out;
    }
    let ta = r.cross(db) / denom;
    let tb = r.cross(da) / denom;
    if (0.0..=1.0).contains(&ta) && (0.0..=1.0).contains(&tb) {
        out.params.push((ta, tb));
    }
    out
}

/// Recursive bounding-box subdivision on general curve pairs. Candidate cells
/// get clustered afterwards; a flood of candidates signals coincident curves.
fn subdivide_search(
    a: &CubicBezier,
    (a0, a1): (f64, f64),
    b: &CubicBezier,
    (b0, b1): (f64, f64),
    candidates: &mut Vec<(f64, f64)>,
) -> bool {
    const CANDIDATE_CAP: usize = 512;
    if candidates.len() > CANDIDATE_CAP {
        return false; // abort: treat as overlap
    }
    if !a.control_bbox().intersects(&b.control_bbox()) {
        return true;
    }
    let wa = a1 - a0;
    let wb = b1 - b0;
    if wa < INTERSECT_PARAM_TOL && wb < INTERSECT_PARAM_TOL {
        candidates.push(((a0 + a1) / 2.0, (b0 + b1) / 2.0));
        return true;
    }
    if wa >= wb {
        let am = (a0 + a1) / 2.0;
        let (al, ar) = a.subdivide(0.5);
        subdivide_search(&al, (a0, am), b, (b0, b1), candidates)
            && subdivide_search(&ar, (am, a1), b, (b0, b1), candidates)
    } else {
        let bm = (b0 + b1) / 2.0;
        let (bl, br) = b.subdivide(0.5);
        subdivide_search(a, (a0, a1), &bl, (b0, bm), candidates)
            && subdivide_search(a, (a0, a1), &br, (bm, b1), candidates)
    }
}

fn curves_coincide(a: &CubicBezier, b: &CubicBezier) -> bool {
    let scale = 1.0 + a.control_bbox().diagonal().max(b.control_bbox().diagonal());
    let tol = 1e-9 * scale;
    let fwd = a.p0.distance(b.p0) <= tol
        && a.p1.distance(b.p1) <= tol
        && a.p2.distance(b.p2) <= tol
        && a.p3.distance(b.p3) <= tol;
    let rev = a.p0.distance(b.p3) <= tol
        && a.p1.distance(b.p2) <= tol
        && a.p2.distance(b.p1) <= tol
        && a.p3.distance(b.p0) <= tol;
    fwd || rev
}

fn pair_intersections(a: &CubicBezier, b: &CubicBezier) -> PairIntersections {
    if a.is_elevated_segment() && b.is_elevated_segment() {
        return segment_segment(a, b);
    }
    if curves_coincide(a, b) {
        return PairIntersections { params: Vec::new(), overlap: true };
    }
    let mut candidates = Vec::new();
    let completed = subdivide_search(a, (0.0, 1.0), b, (0.0, 1.0), &mut candidates);
    if !completed {
        return PairIntersections { params: Vec::new(), overlap: true };
    }
    // Cluster candidate cells that bracket the same intersection point.
    candidates.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut clusters: Vec<(f64, f64, usize)> = Vec::new();
    const CLUSTER_RADIUS: f64 = 1e-3;
    for (ta, tb) in candidates {
        match clusters.iter_mut().find(|(ca, cb, n)| {
            (ca / *n as f64 - ta).abs() < CLUSTER_RADIUS && (cb / *n as f64 - tb).abs() < CLUSTER_RADIUS
        }) {
            Some((ca, cb, n)) => {
                *ca += ta;
                *cb += tb;
                *n += 1;
            }
            None => clusters.push((ta, tb, 1)),
        }
    }
    // A transversal crossing yields a handful of adjacent cells; a coincident
    // stretch yields a long smear. Nine is the algebraic maximum for cubics.
    if clusters.len() > 9 {
        return PairIntersections { params: Vec::new(), overlap: true };
    }
    let params = clusters
        .into_iter()
        .map(|(ca, cb, n)| (ca / n as f64, cb / n as f64))
        .collect();
    PairIntersections { params, overlap: false }
}

/// Result of [`split_at_intersections`]: the refined curve list plus the
/// index pairs of curves found to coincide along a stretch (left unsplit).
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub curves: Vec<CubicBezier>,
    pub overlap_pairs: Vec<(usize, usize)>,
}

/// Subdivide every curve at its pairwise intersection points so that the
/// intersections become shared endpoints. Contacts at curve endpoints and
/// coincident overlaps do not trigger splits.
pub fn split_at_intersections(curves: &[CubicBezier]) -> SplitResult {
    let boxes: Vec<BoundingBox> = curves.iter().map(|c| c.control_bbox()).collect();
    let mut splits: Vec<Vec<f64>> = vec![Vec::new(); curves.len()];
    let mut overlap_pairs = Vec::new();

    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            if !boxes[i].intersects(&boxes[j]) {
                continue;
            }
            let found = pair_intersections(&curves[i], &curves[j]);
            if found.overlap {
                overlap_pairs.push((i, j));
                continue;
            }
            for (ta, tb) in found.params {
                // Endpoint contact on either curve: not an interior split.
                if ta < ENDPOINT_EXCLUSION
                    || ta > 1.0 - ENDPOINT_EXCLUSION
                    || tb < ENDPOINT_EXCLUSION
                    || tb > 1.0 - ENDPOINT_EXCLUSION
                {
                    continue;
                }
                splits[i].push(ta);
                splits[j].push(tb);
            }
        }
    }

    let mut out = Vec::with_capacity(curves.len());
    for (curve, mut ts) in curves.iter().zip(splits) {
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ts.dedup_by(|a, b| (*a - *b).abs() < INTERSECT_PARAM_TOL);
        if ts.is_empty() {
            out.push(*curve);
        } else {
            out.extend(curve.split_at_params(&ts));
        }
    }
    SplitResult { curves: out, overlap_pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn seg(a: (f64, f64), b: (f64, f64)) -> CubicBezier {
        elevate_segment(pt(a.0, a.1), pt(b.0, b.1), Style::default()).unwrap()
    }

    #[test]
    fn eval_endpoints_and_domain() {
        let c = CubicBezier::from_points(pt(0.0, 0.0), pt(1.0, 2.0), pt(2.0, -1.0), pt(3.0, 0.5));
        assert_eq!(c.eval(0.0).unwrap(), c.p0);
        assert_eq!(c.eval(1.0).unwrap(), c.p3);
        assert!(c.eval(-0.01).is_err());
        assert!(c.eval(1.01).is_err());
    }

    #[test]
    fn eval_collinear_midpoint() {
        let c = CubicBezier::from_points(pt(0.0, 0.0), pt(1.0, 1.0), pt(2.0, 2.0), pt(3.0, 3.0));
        let p = c.eval(0.5).unwrap();
        assert_abs_diff_eq!(p.x, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(p.y, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn segment_elevation_places_controls_at_thirds() {
        let c = seg((0.0, 0.0), (1.0, 1.0));
        assert_abs_diff_eq!(c.p1.x, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p1.y, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p2.x, 2.0 / 3.0, epsilon = 1e-15);
        assert!(c.is_elevated_segment());

        let line = seg((0.0, 0.0), (3.0, 0.0));
        assert_eq!(line.p1, pt(1.0, 0.0));
        assert_eq!(line.p2, pt(2.0, 0.0));
    }

    #[test]
    fn quadratic_elevation_traces_same_points() {
        let (q0, q1, q2) = (pt(0.0, 0.0), pt(1.0, 2.0), pt(2.0, 0.0));
        let c = elevate_quadratic(q0, q1, q2, Style::default()).unwrap();
        assert_abs_diff_eq!(c.p1.x, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p1.y, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p2.x, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p2.y, 4.0 / 3.0, epsilon = 1e-15);
        // Sampling oracle: quadratic Bernstein form vs the elevated cubic.
        for i in 0..=1000 {
            let t = i as f64 / 1000.0;
            let u = 1.0 - t;
            let q = q0 * (u * u) + q1 * (2.0 * u * t) + q2 * (t * t);
            let p = c.point_at(t);
            assert!(q.distance(p) < 1e-9, "t={t}: {q:?} vs {p:?}");
        }
    }

    #[test]
    fn degenerate_quadratic_elevates_to_a_point() {
        let p = pt(1.0, 1.0);
        let c = elevate_quadratic(p, p, p, Style::default()).unwrap();
        assert_eq!(c.control_points(), [p, p, p, p]);
    }

    #[test]
    fn circle_quarter_matches_kappa_construction() {
        let quarters = circle_to_beziers(pt(0.0, 0.0), 1.0, Style::default()).unwrap();
        let c = CIRCLE_KAPPA;
        // Right-up quarter from (0,1) to (1,0).
        let q = quarters[0];
        assert_eq!(q.p0, pt(0.0, 1.0));
        assert_eq!(q.p1, pt(c, 1.0));
        assert_eq!(q.p2, pt(1.0, c));
        assert_eq!(q.p3, pt(1.0, 0.0));
    }

    #[test]
    fn circle_conversion_is_affine_equivariant() {
        let unit = circle_to_beziers(pt(0.0, 0.0), 1.0, Style::default()).unwrap();
        let moved = circle_to_beziers(pt(5.0, 5.0), 2.0, Style::default()).unwrap();
        for (u, m) in unit.iter().zip(moved.iter()) {
            for (pu, pm) in u.control_points().iter().zip(m.control_points().iter()) {
                assert_abs_diff_eq!(pm.x, pu.x * 2.0 + 5.0, epsilon = 1e-12);
                assert_abs_diff_eq!(pm.y, pu.y * 2.0 + 5.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn circle_radial_error_below_bound() {
        let quarters = circle_to_beziers(pt(0.0, 0.0), 1.0, Style::default()).unwrap();
        let mut max_err: f64 = 0.0;
        for q in &quarters {
            for i in 0..=1000 {
                let t = i as f64 / 1000.0;
                max_err = max_err.max((q.point_at(t).norm() - 1.0).abs());
            }
        }
        assert!(max_err < 0.02, "max radial error {max_err}");
        // The construction is far better than the stated bound.
        assert!(max_err < 1e-3, "measured {max_err}");
    }

    #[test]
    fn circle_rejects_nonpositive_radius() {
        assert!(circle_to_beziers(pt(0.0, 0.0), 0.0, Style::default()).is_err());
        assert!(circle_to_beziers(pt(0.0, 0.0), -1.0, Style::default()).is_err());
    }

    #[test]
    fn arc_quarter_matches_circle_quarter() {
        // Quarter arc from (1,0) to (0,1) on the unit circle, counter-clockwise.
        let arcs = arc_to_beziers(
            pt(1.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            pt(0.0, 1.0),
            Style::default(),
        )
        .unwrap();
        assert_eq!(arcs.len(), 1);
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let r = arcs[0].point_at(t).norm();
            assert!((r - 1.0).abs() < 2e-4, "radial error {}", (r - 1.0).abs());
        }
    }

    #[test]
    fn crossing_segments_split_into_four() {
        let a = seg((0.0, 0.0), (1.0, 1.0));
        let b = seg((0.0, 1.0), (1.0, 0.0));
        let result = split_at_intersections(&[a, b]);
        assert_eq!(result.curves.len(), 4);
        assert!(result.overlap_pairs.is_empty());
        for c in &result.curves {
            let hits_center = c.p0.distance(pt(0.5, 0.5)) < 1e-9 || c.p3.distance(pt(0.5, 0.5)) < 1e-9;
            assert!(hits_center, "sub-segment does not touch the crossing: {c:?}");
        }
    }

    #[test]
    fn disjoint_segments_unchanged() {
        let a = seg((0.0, 0.0), (1.0, 0.0));
        let b = seg((0.0, 2.0), (1.0, 2.0));
        let result = split_at_intersections(&[a, b]);
        assert_eq!(result.curves.len(), 2);
        assert_eq!(result.curves[0], a);
        assert_eq!(result.curves[1], b);
    }

    #[test]
    fn endpoint_contact_does_not_split() {
        let a = seg((0.0, 0.0), (1.0, 0.0));
        let b = seg((1.0, 0.0), (2.0, 1.0));
        let result = split_at_intersections(&[a, b]);
        assert_eq!(result.curves.len(), 2);
    }

    #[test]
    fn t_junction_endpoint_contact_is_excluded() {
        // b's endpoint touches a's interior: excluded on either-curve rule.
        let a = seg((0.0, 0.0), (2.0, 0.0));
        let b = seg((1.0, 0.0), (1.0, 1.0));
        let result = split_at_intersections(&[a, b]);
        assert_eq!(result.curves.len(), 2);
    }

    #[test]
    fn coincident_segments_reported_not_split() {
        let a = seg((0.0, 0.0), (2.0, 0.0));
        let b = seg((1.0, 0.0), (3.0, 0.0));
        let result = split_at_intersections(&[a, b]);
        assert_eq!(result.curves.len(), 2);
        assert_eq!(result.overlap_pairs, vec![(0, 1)]);
    }

    #[test]
    fn curve_segment_intersection_splits_both() {
        // A bowed curve crossing a horizontal line twice.
        let curve = CubicBezier::from_points(pt(0.0, 0.0), pt(1.0, 2.0), pt(2.0, 2.0), pt(3.0, 0.0));
        let line = seg((-1.0, 1.0), (4.0, 1.0));
        let result = split_at_intersections(&[curve, line]);
        // Curve splits into 3, line into 3.
        assert_eq!(result.curves.len(), 6);
        // Shared endpoints at the two crossings, y == 1.
        let mut shared = 0;
        for c in &result.curves {
            if (c.p0.y - 1.0).abs() < 1e-6 {
                shared += 1;
            }
        }
        assert!(shared >= 2, "expected crossing endpoints on y=1");
    }

    #[test]
    fn split_is_idempotent() {
        let a = seg((0.0, 0.0), (1.0, 1.0));
        let b = seg((0.0, 1.0), (1.0, 0.0));
        let curve = CubicBezier::from_points(pt(0.0, 0.5), pt(0.4, 0.9), pt(0.6, 0.1), pt(1.0, 0.5));
        let once = split_at_intersections(&[a, b, curve]);
        let twice = split_at_intersections(&once.curves);
        assert_eq!(once.curves.len(), twice.curves.len());
        for (x, y) in once.curves.iter().zip(twice.curves.iter()) {
            for (px, py) in x.control_points().iter().zip(y.control_points().iter()) {
                assert!(px.distance(*py) < 1e-9);
            }
        }
    }

    #[test]
    fn splitting_preserves_arc_content() {
        let a = seg((0.0, 0.0), (1.0, 1.0));
        let b = seg((0.0, 1.0), (1.0, 0.0));
        let curve = CubicBezier::from_points(pt(0.0, 0.5), pt(0.4, 0.9), pt(0.6, 0.1), pt(1.0, 0.5));
        let input = [a, b, curve];
        let before: f64 = input.iter().map(|c| c.chord_length(2048)).sum();
        let result = split_at_intersections(&input);
        let after: f64 = result.curves.iter().map(|c| c.chord_length(2048)).sum();
        assert!((before - after).abs() / before < 1e-6, "before {before} after {after}");
    }
}
