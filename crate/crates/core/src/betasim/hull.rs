/// Vertex and chain-edge counts of a planar convex hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct PolygonCounts {
    pub f0: usize,
    /// Edges of the upper chain from the leftmost to the rightmost vertex.
    pub f1_up: usize,
    pub f1_low: usize,
}

/// Turns smaller than this are treated as collinear.
const COLLINEAR_EPS: f64 = 1e-14;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Points that can still be hull vertices after discarding everything
/// strictly inside the octagon of extreme points in eight directions.
fn prefilter(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    if points.len() < 64 {
        return points.to_vec();
    }
    let dirs: [[f64; 2]; 8] = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [-1.0, 1.0], [-1.0, 0.0], [-1.0, -1.0], [0.0, -1.0], [1.0, -1.0]];
    let mut best = [points[0]; 8];
    let mut val = [f64::NEG_INFINITY; 8];
    for p in points {
        for (k, d) in dirs.iter().enumerate() {
            let v = p[0] * d[0] + p[1] * d[1];
            if v > val[k] {
                val[k] = v;
                best[k] = *p;
            }
        }
    }
    let mut poly: Vec<[f64; 2]> = Vec::with_capacity(8);
    for b in best {
        if poly.last() != Some(&b) && poly.first() != Some(&b) {
            poly.push(b);
        }
    }
    if poly.len() < 3 {
        return points.to_vec();
    }
    points
        .iter()
        .copied()
        .filter(|&p| (0..poly.len()).any(|k| cross(poly[k], poly[(k + 1) % poly.len()], p) <= COLLINEAR_EPS))
        .collect()
}

/// Counts for the hull of `points`. `None` when the hull is a point or a segment.
pub fn polygon_counts(points: &[[f64; 2]]) -> Option<PolygonCounts> {
    let mut pts = prefilter(points);
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return None;
    }
    let chain = |iter: &mut dyn Iterator<Item = [f64; 2]>, sign: f64| {
        let mut h: Vec<[f64; 2]> = Vec::new();
        for p in iter {
            while h.len() >= 2 && sign * cross(h[h.len() - 2], h[h.len() - 1], p) <= COLLINEAR_EPS {
                h.pop();
            }
            h.push(p);
        }
        h.len() - 1
    };
    let f1_up = chain(&mut pts.iter().copied(), -1.0);
    let f1_low = chain(&mut pts.iter().copied(), 1.0);
    if f1_up + f1_low < 3 {
        return None;
    }
    Some(PolygonCounts { f0: f1_up + f1_low, f1_up, f1_low })
}

/// Distance from the origin to the nearest hull edge line, negative when
/// the origin lies outside the hull.
pub fn inradius_about_origin(points: &[[f64; 2]]) -> Option<f64> {
    let mut pts = prefilter(points);
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return None;
    }
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= COLLINEAR_EPS {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return None;
    }
    let m = hull.len();
    let dist = (0..m)
        .map(|k| {
            let (a, b) = (hull[k], hull[(k + 1) % m]);
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            // Counter-clockwise order: the origin is inside iff every signed distance is positive.
            cross(a, b, [0.0, 0.0]) / len
        })
        .fold(f64::INFINITY, f64::min);
    Some(dist)
}
