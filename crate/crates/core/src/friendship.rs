//! Friendship graphs and the one graph cospectral with a friendship graph
//! without being one.
//!
//! `F_n` is `n` triangles glued at a common hub. Its spectrum is
//! `{(1 - s)/2, (-1)^n, 1^(n-1), (1 + s)/2}` with `s = sqrt(1 + 8n)`, so its
//! characteristic polynomial factors as `(x^2 - x - 2n)(x + 1)^n (x - 1)^(n-1)`.

use thiserror::Error;

use crate::charpoly::{char_poly, CharPoly};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("a friendship graph needs at least one triangle")]
pub struct ZeroTriangles;

/// Number of triangles of a friendship graph; always at least one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FriendshipParams(usize);

impl FriendshipParams {
    pub fn new(n: usize) -> Result<Self, ZeroTriangles> {
        if n == 0 {
            Err(ZeroTriangles)
        } else {
            Ok(FriendshipParams(n))
        }
    }

    pub fn triangles(self) -> usize {
        self.0
    }

    pub fn vertices(self) -> usize {
        2 * self.0 + 1
    }

    pub fn edges(self) -> usize {
        3 * self.0
    }

    pub fn hub_degree(self) -> usize {
        2 * self.0
    }
}

/// `F_n` with hub 0 and blades `(2k-1, 2k)` for `k = 1..n`.
pub fn build_friendship(n: usize) -> Result<Graph, ZeroTriangles> {
    let p = FriendshipParams::new(n)?;
    let mut b = GraphBuilder::new(p.vertices());
    for k in 1..=n {
        let (a, c) = (2 * k - 1, 2 * k);
        b.insert(0, a);
        b.insert(0, c);
        b.insert(a, c);
    }
    Ok(b.build())
}

/// `(x^2 - x - 2n)(x + 1)^n (x - 1)^(n-1)`, expanded.
pub fn closed_form_charpoly(n: usize) -> Result<CharPoly, ZeroTriangles> {
    let p = FriendshipParams::new(n)?;
    let quad = CharPoly::from_i64(&[-(2 * p.triangles() as i64), -1, 1]).unwrap();
    let plus = CharPoly::linear(-1).pow(n as u32);
    let minus = CharPoly::linear(1).pow(n as u32 - 1);
    Ok(&(&quad * &plus) * &minus)
}

/// `ceil((1 + sqrt(1 + 8n)) / 2)`, computed without floating point.
pub fn radius_ceil(n: usize) -> Result<usize, ZeroTriangles> {
    let p = FriendshipParams::new(n)?;
    let d = 1 + 8 * p.triangles();
    let s = d.isqrt();
    Ok(if s * s == d {
        s.div_ceil(2)
    } else if s % 2 == 1 {
        (3 + s) / 2
    } else {
        s / 2 + 1
    })
}

/// `(1 + sqrt(1 + 8n)) / 2`.
pub fn closed_form_radius(n: usize) -> Result<f64, ZeroTriangles> {
    let p = FriendshipParams::new(n)?;
    Ok((1.0 + (1.0 + 8.0 * p.triangles() as f64).sqrt()) / 2.0)
}

/// Structural test: one hub adjacent to everything, every other vertex of
/// degree 2, and the non-hub vertices pairing off into adjacent couples.
pub fn is_friendship(g: &Graph) -> bool {
    let n = g.n_vertices();
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let k = (n - 1) / 2;
    if g.edge_count() != 3 * k {
        return false;
    }
    let hubs: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    // K_3 has three candidate hubs; any of them works
    let Some(&hub) = hubs.first() else {
        return false;
    };
    if k > 1 && hubs.len() != 1 {
        return false;
    }
    (0..n)
        .filter(|&v| v != hub)
        .all(|v| g.degree(v) == 2 && g.neighbors(v).filter(|&u| u != hub).all(|u| g.degree(u) == 2))
}

/// The 13-vertex graph whose union with `10 K_2` is cospectral with `F_16`.
///
/// Top row `0..5`, middle row `5..10`, bottom row `10..13`. Top vertex `i`
/// sees every middle vertex except `5 + i` (a `K_{5,5}` minus a perfect
/// matching), the bottom row is a triangle, and each bottom vertex sees the
/// whole middle row.
pub fn figure2_graph() -> Graph {
    let mut b = GraphBuilder::new(13);
    for top in 0..5 {
        for mid in 5..10 {
            if mid != top + 5 {
                b.insert(top, mid);
            }
        }
    }
    b.insert(10, 11);
    b.insert(11, 12);
    b.insert(10, 12);
    for bottom in 10..13 {
        for mid in 5..10 {
            b.insert(bottom, mid);
        }
    }
    let g = b.build();
    // the spectrum {(1 +- sqrt 129)/2, 1^5, -1^6} doubles as a checksum on the edge list
    assert_eq!(char_poly(&g), figure2_charpoly(), "13-vertex graph disagrees with its known spectrum");
    g
}

/// `(x^2 - x - 32)(x - 1)^5 (x + 1)^6`.
pub fn figure2_charpoly() -> CharPoly {
    let quad = CharPoly::from_i64(&[-32, -1, 1]).unwrap();
    &(&quad * &CharPoly::linear(1).pow(5)) * &CharPoly::linear(-1).pow(6)
}

/// `figure2_graph() + 10 K_2`: 33 vertices, 48 edges, disconnected.
pub fn f16_mate() -> Graph {
    figure2_graph().disjoint_union(&Graph::complete(2).repeat(10))
}
