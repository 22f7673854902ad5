//! Explicit colorings: affine planes, Gyárfás colorings, balanced blow-ups
//! and the two-clique 2-coloring.

use thiserror::Error;

use crate::coloring::{ColoringError, EdgeColoring};
use crate::field::{make_field, FieldError, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("the Gyárfás coloring needs r >= 3 with r - 1 a supported prime power, got r = {0}")]
    BadColorCount(usize),
    #[error("blob size must be at least 1")]
    EmptyBlob,
    #[error("the two-clique coloring needs n >= 4 with n = 1 (mod 3), got n = {0}")]
    BadTwoColorOrder(usize),
}

/// Affine plane of order `q` over `GF(q)`.
///
/// Point `(x, y)` has label `x * q + y`. Classes `0..q` hold the lines
/// `y = m x + b` of slope `m`; class `q` holds the vertical lines `x = c`.
#[derive(Clone, Debug)]
pub struct AffinePlane {
    q: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

impl AffinePlane {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn point_count(&self) -> usize {
        self.q * self.q
    }

    /// `q + 1` parallel classes, each a list of `q` lines of `q` sorted points.
    pub fn parallel_classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    /// For each point, the index of its line within every class.
    pub fn line_of(&self, class: usize, point: usize) -> usize {
        self.classes[class]
            .iter()
            .position(|line| line.binary_search(&point).is_ok())
            .expect("classes partition the points")
    }
}

pub fn affine_plane(q: u32) -> Result<AffinePlane, ConstructionError> {
    let field = make_field(q)?;
    Ok(plane_over(&field))
}

fn plane_over(field: &FiniteField) -> AffinePlane {
    let q = field.order();
    let label = |x: u32, y: u32| (x * q + y) as usize;
    let mut classes = Vec::with_capacity(q as usize + 1);
    for m in 0..q {
        let lines = (0..q)
            .map(|b| {
                let mut line: Vec<usize> =
                    (0..q).map(|x| label(x, field.add(field.mul(m, x), b))).collect();
                line.sort_unstable();
                line
            })
            .collect();
        classes.push(lines);
    }
    classes.push((0..q).map(|c| (0..q).map(|y| label(c, y)).collect()).collect());
    AffinePlane {
        q: q as usize,
        classes,
    }
}

/// The `r`-coloring of `K_{(r-1)^2}` that gives the lines of the `i`-th
/// parallel class of the affine plane of order `r - 1` color `i`.
pub fn gyarfas_coloring(r: usize) -> Result<EdgeColoring, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::BadColorCount(r));
    }
    let plane = affine_plane((r - 1) as u32).map_err(|_| ConstructionError::BadColorCount(r))?;
    let n = plane.point_count();
    let mut color = vec![vec![usize::MAX; n]; n];
    for (c, class) in plane.parallel_classes().iter().enumerate() {
        for line in class {
            for (i, &u) in line.iter().enumerate() {
                for &v in &line[i + 1..] {
                    color[u][v] = c;
                }
            }
        }
    }
    Ok(EdgeColoring::from_fn(n, r, |u, v| color[u][v])?)
}

/// Replaces every vertex of `base` by a blob of `k` vertices.
///
/// Blob `b` occupies `[b·k, (b+1)·k)`. Edges between blobs keep the base
/// color of the blob pair. The edges inside each blob, in lexicographic
/// order, are colored cyclically starting at color `b mod r`, so every color
/// appears within `1` of `C(k, 2)/r` times per blob.
pub fn blow_up(base: &EdgeColoring, k: usize) -> Result<EdgeColoring, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::EmptyBlob);
    }
    let r = base.r();
    let n = base.n() * k;
    Ok(EdgeColoring::from_fn(n, r, |u, v| {
        let (bu, bv) = (u / k, v / k);
        if bu != bv {
            return base.color(bu, bv);
        }
        let (i, j) = (u % k, v % k);
        // rank of (i, j) among the pairs of the blob
        let rank = i * k - i * (i + 1) / 2 + (j - i - 1);
        (bu + rank) % r
    })?)
}

/// Two disjoint color-0 cliques on `(2n+1)/3` (low indices) and `(n-1)/3`
/// vertices with color 1 between them.
pub fn two_color_extremal(n: usize) -> Result<EdgeColoring, ConstructionError> {
    if n < 4 || n % 3 != 1 {
        return Err(ConstructionError::BadTwoColorOrder(n));
    }
    let big = (2 * n + 1) / 3;
    Ok(EdgeColoring::from_fn(n, 2, |u, v| usize::from((u < big) != (v < big)))?)
}
