//! Newton polygon of a bivariate polynomial: the lower-left convex hull of
//! the support, whose edges enumerate the candidate leading exponents of the
//! branch expansions at the origin.

use super::bipoly::BiPoly;
use super::PuiseuxError;
use num_bigint::BigInt;
use num_rational::BigRational;

/// One edge of the Newton polygon.  A branch led by this edge has
/// w ~ c·z^(rise/run), i.e. z = t^run and leading term c·t^rise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonEdge {
    /// Numerator of the slope in lowest terms (Δ z-exponent / unit).
    pub rise: u32,
    /// Denominator of the slope in lowest terms; the ramification of this step.
    pub run: u32,
    /// Lattice length: number of primitive steps along the edge.
    pub length: u32,
    /// Support points on the edge, ordered by increasing z-exponent.
    pub points: Vec<(u32, u32)>,
}

impl NewtonEdge {
    pub fn slope(&self) -> BigRational {
        BigRational::new(BigInt::from(self.rise), BigInt::from(self.run))
    }
}

/// The Newton polygon: edges with finite positive slope, slopes strictly
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub edges: Vec<NewtonEdge>,
}

/// Compute the Newton polygon of f at the origin.
///
/// Requires f nonzero and f(0,0) = 0; the result enumerates the edges of the
/// lower-left hull with Δz > 0 and Δw < 0.
pub fn newton_polygon(f: &BiPoly) -> Result<NewtonPolygon, PuiseuxError> {
    if f.is_zero() {
        return Err(PuiseuxError::ZeroPolynomial);
    }
    if !f.eval_origin().is_zero() {
        return Err(PuiseuxError::NotOnCurve);
    }
    let support = f.support();

    // Pareto-minimal staircase: sorted by (i asc, j asc), keep strictly
    // decreasing j.
    let mut pts = support.clone();
    pts.sort();
    let mut staircase: Vec<(u32, u32)> = Vec::new();
    let mut best_j = u32::MAX;
    for (i, j) in pts {
        if j < best_j {
            staircase.push((i, j));
            best_j = j;
        }
    }

    // Convex chain over the staircase.
    let cross = |a: (u32, u32), b: (u32, u32), c: (u32, u32)| -> i64 {
        let (ax, ay) = (a.0 as i64, a.1 as i64);
        let (bx, by) = (b.0 as i64, b.1 as i64);
        let (cx, cy) = (c.0 as i64, c.1 as i64);
        (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    };
    let mut chain: Vec<(u32, u32)> = Vec::new();
    for p in staircase {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }

    let mut edges = Vec::new();
    for win in chain.windows(2) {
        let (i1, j1) = win[0];
        let (i2, j2) = win[1];
        let di = i2 - i1;
        let dj = j1 - j2;
        debug_assert!(di > 0 && dj > 0);
        let g = gcd(di, dj);
        let (rise, run) = (di / g, dj / g);
        let on_edge: Vec<(u32, u32)> = support
            .iter()
            .cloned()
            .filter(|&(i, j)| {
                i >= i1
                    && i <= i2
                    && j <= j1
                    && j >= j2
                    && (i as i64 - i1 as i64) * (dj as i64) == (j1 as i64 - j as i64) * (di as i64)
            })
            .collect();
        edges.push(NewtonEdge {
            rise,
            run,
            length: g,
            points: on_edge,
        });
    }
    Ok(NewtonPolygon { edges })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope_of(e: &NewtonEdge) -> (u32, u32) {
        (e.rise, e.run)
    }

    #[test]
    fn cusp_single_edge() {
        let f = BiPoly::parse("w^2 - z^3").unwrap();
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.edges.len(), 1);
        assert_eq!(slope_of(&np.edges[0]), (3, 2));
        assert_eq!(np.edges[0].length, 1);
    }

    #[test]
    fn smooth_line_edge() {
        let f = BiPoly::parse("w - z").unwrap();
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.edges.len(), 1);
        assert_eq!(slope_of(&np.edges[0]), (1, 1));
    }

    #[test]
    fn node_edge_has_lattice_length_two() {
        let f = BiPoly::parse("w^2 - z^2 - z^3").unwrap();
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.edges.len(), 1);
        assert_eq!(slope_of(&np.edges[0]), (1, 1));
        assert_eq!(np.edges[0].length, 2);
    }

    #[test]
    fn two_edges_increasing_slopes() {
        // (w - z)(w^2 - z^3) = w^3 - z w^2 - z^3 w + z^4
        let f = BiPoly::parse("w^3 - z*w^2 - z^3*w + z^4").unwrap();
        let np = newton_polygon(&f).unwrap();
        assert_eq!(np.edges.len(), 2);
        assert_eq!(slope_of(&np.edges[0]), (1, 1));
        assert_eq!(slope_of(&np.edges[1]), (3, 2));
        assert!(np.edges[0].slope() < np.edges[1].slope());
    }

    #[test]
    fn rejects_point_off_curve() {
        let f = BiPoly::parse("w^2 - z^3 + 1").unwrap();
        assert!(matches!(newton_polygon(&f), Err(PuiseuxError::NotOnCurve)));
    }
}
