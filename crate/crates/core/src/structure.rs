//! Structural classifiers: 2-colored complete bipartite graphs, spanning
//! covers by few components, disjoint component pairs, the three component
//! structures of 3-colorings, and detection of the 3×3 grid structure of the
//! extremal 4-coloring.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::components::ComponentDecomposition;
use crate::dsu::EdgeCountingDsu;
use crate::Rational;

/// `(color slot, local vertices, weight)` triples.
type LocalParts = Vec<(usize, FixedBitSet, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("vertex sets A1 and A2 must be non-empty")]
    EmptySide,
    #[error("vertex {0} appears twice or in both sides")]
    Overlap(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("the two colors must be distinct and below r = {r}, got {c1} and {c2}")]
    BadColors { c1: usize, c2: usize, r: usize },
    #[error("edge ({u}, {v}) between the sides has color {color}, not one of {c1}, {c2}")]
    ForeignColor {
        u: usize,
        v: usize,
        color: usize,
        c1: usize,
        c2: usize,
    },
    #[error("no case of the bipartite trichotomy applies")]
    NoCaseApplies,
    #[error("this classifier needs r = {expected}, got r = {got}")]
    WrongColorCount { expected: usize, got: usize },
    #[error("enumeration limited to sides of at most 5 vertices, got {0} x {1}")]
    TooLarge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A1,
    A2,
}

/// Which case of the bipartite trichotomy holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BipartiteKind {
    /// Some color has exactly one component. `designated` is `Some(true)`
    /// when that color is the designated one (sub-case a1), `Some(false)`
    /// for the other color (a2), `None` when no color was designated.
    SingleComponent {
        color: usize,
        designated: Option<bool>,
    },
    /// Each color has exactly two components, each meeting both sides.
    TwoPerColor,
    /// One component per color whose intersection contains the side
    /// `toward` and whose union contains both sides.
    Nested { toward: Side },
}

impl fmt::Display for BipartiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipartiteKind::SingleComponent { designated: Some(true), .. } => f.write_str("a1"),
            BipartiteKind::SingleComponent { designated: Some(false), .. } => f.write_str("a2"),
            BipartiteKind::SingleComponent { designated: None, .. } => f.write_str("a"),
            BipartiteKind::TwoPerColor => f.write_str("b"),
            BipartiteKind::Nested { toward: Side::A1 } => f.write_str("c->A1"),
            BipartiteKind::Nested { toward: Side::A2 } => f.write_str("c->A2"),
        }
    }
}

/// A weighted component of the bipartite graph between the two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPart {
    pub color: usize,
    /// Sorted vertex labels.
    pub vertices: Vec<usize>,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteCase {
    pub kind: BipartiteKind,
    pub certificate: Vec<WeightedPart>,
}

/// A 2-coloring of the complete bipartite graph between `0..a` and
/// `a..a+b`; bit `i·b + j` set means the edge `(i, a+j)` has the second
/// color.
#[derive(Debug, Clone)]
struct BipartiteColoring {
    a: usize,
    b: usize,
    second: Vec<bool>,
}

impl BipartiteColoring {
    fn from_mask(a: usize, b: usize, mask: u64) -> Self {
        Self {
            a,
            b,
            second: (0..a * b).map(|k| mask >> k & 1 == 1).collect(),
        }
    }

    /// Components of color `which` (0 or 1) as bitsets over `0..a+b`.
    fn components(&self, which: bool) -> Vec<FixedBitSet> {
        let n = self.a + self.b;
        let mut dsu = EdgeCountingDsu::new(n);
        for i in 0..self.a {
            for j in 0..self.b {
                if self.second[i * self.b + j] == which {
                    dsu.add_edge(i, self.a + j);
                }
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut comps: Vec<FixedBitSet> = Vec::new();
        for v in 0..n {
            let root = dsu.find(v);
            if index[root] == usize::MAX {
                index[root] = comps.len();
                comps.push(FixedBitSet::with_capacity(n));
            }
            comps[index[root]].insert(v);
        }
        comps
    }

    fn side_mask(&self, side: Side) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.a + self.b);
        match side {
            Side::A1 => m.insert_range(0..self.a),
            Side::A2 => m.insert_range(self.a..self.a + self.b),
        }
        m
    }

    /// Local classification; parts carry local vertex indices and color
    /// slots 0/1.
    fn classify(&self, designated: Option<usize>) -> Option<(BipartiteKind, LocalParts)> {
        let comps = [self.components(false), self.components(true)];
        let half = Rational::new(1.into(), 2.into());

        // (a): prefer the designated color when both qualify.
        let mut order = [0usize, 1];
        if designated == Some(1) {
            order = [1, 0];
        }
        for slot in order {
            if comps[slot].len() == 1 {
                let kind = BipartiteKind::SingleComponent {
                    color: slot,
                    designated: designated.map(|d| d == slot),
                };
                return Some((kind, vec![(slot, comps[slot][0].clone(), Rational::one())]));
            }
        }

        // (b)
        let a1 = self.side_mask(Side::A1);
        let a2 = self.side_mask(Side::A2);
        let meets_both = |c: &FixedBitSet| !c.is_disjoint(&a1) && !c.is_disjoint(&a2);
        if comps.iter().all(|cs| cs.len() == 2 && cs.iter().all(meets_both)) {
            let parts = (0..2)
                .flat_map(|slot| comps[slot].iter().map(|c| (slot, c.clone(), half.clone())).collect::<Vec<_>>())
                .collect();
            return Some((BipartiteKind::TwoPerColor, parts));
        }

        // (c)
        let all = {
            let mut m = a1.clone();
            m.union_with(&a2);
            m
        };
        for (side, mask) in [(Side::A1, &a1), (Side::A2, &a2)] {
            for p in &comps[0] {
                if !mask.is_subset(p) {
                    continue;
                }
                for q in &comps[1] {
                    let mut union = p.clone();
                    union.union_with(q);
                    if mask.is_subset(q) && all.is_subset(&union) {
                        let parts = vec![
                            (0, p.clone(), Rational::one()),
                            (1, q.clone(), Rational::one()),
                        ];
                        return Some((BipartiteKind::Nested { toward: side }, parts));
                    }
                }
            }
        }
        None
    }
}

/// Classifies the 2-colored complete bipartite graph between `a1` and `a2`
/// according to the trichotomy, with precedence (a) > (b) > (c). When
/// `designated` names one of the two colors, case (a) is split into a1 (the
/// designated color spans) and a2 (the other one does).
pub fn classify_bipartite(
    coloring: &EdgeColoring,
    a1: &[usize],
    a2: &[usize],
    colors: (usize, usize),
    designated: Option<usize>,
) -> Result<BipartiteCase, StructureError> {
    let (c1, c2) = colors;
    let (n, r) = (coloring.n(), coloring.r());
    if c1 == c2 || c1 >= r || c2 >= r {
        return Err(StructureError::BadColors { c1, c2, r });
    }
    if a1.is_empty() || a2.is_empty() {
        return Err(StructureError::EmptySide);
    }
    let mut seen = vec![false; n];
    for &v in a1.iter().chain(a2) {
        if v >= n {
            return Err(StructureError::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(StructureError::Overlap(v));
        }
    }
    let (a, b) = (a1.len(), a2.len());
    let mut second = Vec::with_capacity(a * b);
    for &u in a1 {
        for &v in a2 {
            let color = coloring.color(u, v);
            if color != c1 && color != c2 {
                return Err(StructureError::ForeignColor { u, v, color, c1, c2 });
            }
            second.push(color == c2);
        }
    }
    let local = BipartiteColoring { a, b, second };
    let slot_of = |c: usize| usize::from(c == c2);
    let designated_slot = designated.filter(|d| *d == c1 || *d == c2).map(slot_of);
    let (kind, parts) = local
        .classify(designated_slot)
        .ok_or(StructureError::NoCaseApplies)?;
    let label: Vec<usize> = a1.iter().chain(a2).copied().collect();
    let color_of = |slot: usize| if slot == 0 { c1 } else { c2 };
    let kind = match kind {
        BipartiteKind::SingleComponent { color, designated } => BipartiteKind::SingleComponent {
            color: color_of(color),
            designated,
        },
        other => other,
    };
    let certificate = parts
        .into_iter()
        .map(|(slot, set, weight)| {
            let mut vertices: Vec<usize> = set.ones().map(|i| label[i]).collect();
            vertices.sort_unstable();
            WeightedPart {
                color: color_of(slot),
                vertices,
                weight,
            }
        })
        .collect();
    Ok(BipartiteCase { kind, certificate })
}

/// Checks a certificate: weights in {1/2, 1}, total at most 2, and every
/// vertex of `a1 ∪ a2` covered with weight at least 1.
pub fn validate_certificate(case: &BipartiteCase, a1: &[usize], a2: &[usize]) -> Result<(), String> {
    let half = Rational::new(1.into(), 2.into());
    let mut total = Rational::zero();
    for part in &case.certificate {
        if part.weight != half && !part.weight.is_one() {
            return Err(format!("weight {} not in {{1/2, 1}}", part.weight));
        }
        total += &part.weight;
    }
    if total > Rational::from_integer(2.into()) {
        return Err(format!("total weight {total} exceeds 2"));
    }
    for &v in a1.iter().chain(a2) {
        let cover: Rational = case
            .certificate
            .iter()
            .filter(|p| p.vertices.binary_search(&v).is_ok())
            .map(|p| p.weight.clone())
            .sum();
        if cover < Rational::one() {
            return Err(format!("vertex {v} covered with weight {cover} < 1"));
        }
    }
    Ok(())
}

/// Tally of an exhaustive run over all 2-colorings of `K_{a,b}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteReport {
    /// `(a, b, colorings)` per shape.
    pub shapes: Vec<(usize, usize, u64)>,
    pub case_a1: u64,
    pub case_a2: u64,
    pub case_b: u64,
    pub case_c: u64,
    /// `(a, b, mask)` of colorings that failed classification or validation.
    pub failures: Vec<(usize, usize, u64)>,
}

impl BipartiteReport {
    pub fn total(&self) -> u64 {
        self.shapes.iter().map(|s| s.2).sum()
    }
}

/// Classifies every 2-coloring of `K_{a,b}` for `1 ≤ a ≤ a_max`,
/// `1 ≤ b ≤ b_max` and validates each certificate. The second color is the
/// designated one.
pub fn verify_bipartite_lemma(a_max: usize, b_max: usize) -> Result<BipartiteReport, StructureError> {
    if a_max > 5 || b_max > 5 {
        return Err(StructureError::TooLarge(a_max, b_max));
    }
    let mut report = BipartiteReport::default();
    for a in 1..=a_max {
        for b in 1..=b_max {
            let count = 1u64 << (a * b);
            let a1: Vec<usize> = (0..a).collect();
            let a2: Vec<usize> = (a..a + b).collect();
            let tally = (0..count)
                .into_par_iter()
                .map(|mask| {
                    let local = BipartiteColoring::from_mask(a, b, mask);
                    let mut t = [0u64; 4];
                    let mut failures = Vec::new();
                    match local.classify(Some(1)) {
                        Some((kind, parts)) => {
                            let case = BipartiteCase {
                                kind,
                                certificate: parts
                                    .into_iter()
                                    .map(|(slot, set, weight)| WeightedPart {
                                        color: slot,
                                        vertices: set.ones().collect(),
                                        weight,
                                    })
                                    .collect(),
                            };
                            let parts_are_components = case.certificate.iter().all(|p| {
                                local
                                    .components(p.color == 1)
                                    .iter()
                                    .any(|c| c.ones().eq(p.vertices.iter().copied()))
                            });
                            if validate_certificate(&case, &a1, &a2).is_err() || !parts_are_components {
                                failures.push((a, b, mask));
                            }
                            let slot = match kind {
                                BipartiteKind::SingleComponent { designated: Some(true), .. } => 0,
                                BipartiteKind::SingleComponent { .. } => 1,
                                BipartiteKind::TwoPerColor => 2,
                                BipartiteKind::Nested { .. } => 3,
                            };
                            t[slot] += 1;
                        }
                        None => failures.push((a, b, mask)),
                    }
                    (t, failures)
                })
                .reduce(
                    || ([0u64; 4], Vec::new()),
                    |(mut t1, mut f1), (t2, f2)| {
                        for k in 0..4 {
                            t1[k] += t2[k];
                        }
                        f1.extend(f2);
                        (t1, f1)
                    },
                );
            report.shapes.push((a, b, count));
            report.case_a1 += tally.0[0];
            report.case_a2 += tally.0[1];
            report.case_b += tally.0[2];
            report.case_c += tally.0[3];
            let mut failures = tally.1;
            failures.sort_unstable();
            report.failures.extend(failures);
        }
    }
    Ok(report)
}

/// Smallest set of at most `m` components of pairwise distinct colors whose
/// vertex sets cover all vertices. Sets of size 1 are tried first, then 2,
/// and so on; within a size the lexicographically least index tuple wins.
pub fn find_spanning_cover(decomp: &ComponentDecomposition, m: usize) -> Option<Vec<usize>> {
    let n = decomp.n();
    let comps = decomp.components();
    for size in 1..=m.min(decomp.r()) {
        let mut chosen = Vec::with_capacity(size);
        let covered = FixedBitSet::with_capacity(n);
        if let Some(found) = cover_search(comps, size, 0, &mut chosen, covered, n) {
            return Some(found);
        }
    }
    None
}

fn cover_search(
    comps: &[crate::components::Component],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    covered: FixedBitSet,
    n: usize,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        return (covered.count_ones(..) == n).then(|| chosen.clone());
    }
    let remaining = size - chosen.len();
    for i in start..comps.len() {
        // components are sorted by color, so distinct colors means strictly
        // increasing colors along the tuple
        if chosen.last().is_some_and(|&last| comps[last].color >= comps[i].color) {
            continue;
        }
        let mut next = covered.clone();
        next.union_with(comps[i].members());
        // the other picks have at most this many vertices each
        let gain_bound: usize = comps[i..].iter().map(|c| c.len()).max().unwrap_or(0) * (remaining - 1);
        if next.count_ones(..) + gain_bound < n {
            continue;
        }
        chosen.push(i);
        if let Some(found) = cover_search(comps, size, i + 1, chosen, next, n) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// First pair (in index order) of vertex-disjoint components of different
/// colors.
pub fn detect_disjoint_pair(decomp: &ComponentDecomposition) -> Option<(usize, usize)> {
    let comps = decomp.components();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if comps[i].color != comps[j].color && comps[i].members().is_disjoint(comps[j].members()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Component structure of a 3-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum R3Case {
    /// Some color has exactly one component.
    OneComponent { color: usize },
    /// Each color has exactly two components.
    TwoEach,
    /// One component per color, every vertex lying in at least two of them.
    TwoCover { components: [usize; 3] },
    /// None of the three structures was found.
    Unclassified,
}

impl R3Case {
    pub fn tag(&self) -> &'static str {
        match self {
            R3Case::OneComponent { .. } => "a",
            R3Case::TwoEach => "b",
            R3Case::TwoCover { .. } => "c",
            R3Case::Unclassified => "unclassified",
        }
    }
}

pub fn classify_r3(decomp: &ComponentDecomposition) -> Result<R3Case, StructureError> {
    if decomp.r() != 3 {
        return Err(StructureError::WrongColorCount {
            expected: 3,
            got: decomp.r(),
        });
    }
    if let Some(color) = (0..3).find(|&c| decomp.components_of_color(c).len() == 1) {
        return Ok(R3Case::OneComponent { color });
    }
    if (0..3).all(|c| decomp.components_of_color(c).len() == 2) {
        return Ok(R3Case::TwoEach);
    }
    for &x in decomp.components_of_color(0) {
        for &y in decomp.components_of_color(1) {
            for &z in decomp.components_of_color(2) {
                let covered_twice = (0..decomp.n()).all(|v| {
                    [x, y, z]
                        .iter()
                        .filter(|&&c| decomp.component(c).contains(v))
                        .count()
                        >= 2
                });
                if covered_twice {
                    return Ok(R3Case::TwoCover { components: [x, y, z] });
                }
            }
        }
    }
    Ok(R3Case::Unclassified)
}

/// A component of one of the two non-grid colors and the cells it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pub component: usize,
    pub color: usize,
    /// `(row, column)` of its three cells, ascending by row.
    pub cells: [(usize, usize); 3],
}

/// The 3×3 cell structure `V_ij = R_i ∩ O_j` of a 4-coloring matching the
/// affine-plane coloring of `K_9`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridStructure {
    pub row_color: usize,
    pub col_color: usize,
    /// Component indices `R_1..R_3`.
    pub rows: [usize; 3],
    /// Component indices `O_1..O_3`.
    pub cols: [usize; 3],
    /// `cells[i][j]` = sorted vertices of `R_i ∩ O_j`.
    pub cells: Vec<Vec<Vec<usize>>>,
    pub transversals: Vec<Transversal>,
}

pub fn detect_gyarfas_grid(decomp: &ComponentDecomposition) -> Result<Option<GridStructure>, StructureError> {
    if decomp.r() != 4 {
        return Err(StructureError::WrongColorCount {
            expected: 4,
            got: decomp.r(),
        });
    }
    if (0..4).any(|c| decomp.components_of_color(c).len() != 3) {
        return Ok(None);
    }
    for row_color in 0..4 {
        for col_color in 0..4 {
            if row_color != col_color {
                if let Some(grid) = grid_for(decomp, row_color, col_color) {
                    return Ok(Some(grid));
                }
            }
        }
    }
    Ok(None)
}

fn grid_for(decomp: &ComponentDecomposition, row_color: usize, col_color: usize) -> Option<GridStructure> {
    let rows: [usize; 3] = decomp.components_of_color(row_color).try_into().ok()?;
    let cols: [usize; 3] = decomp.components_of_color(col_color).try_into().ok()?;
    let mut cell_sets = Vec::with_capacity(9);
    for &ri in &rows {
        for &oj in &cols {
            let mut cell = decomp.component(ri).members().clone();
            cell.intersect_with(decomp.component(oj).members());
            if cell.is_clear() {
                return None;
            }
            cell_sets.push(cell);
        }
    }

    // every component must be a union of cells; record which cells
    let cells_of = |c: usize| -> Option<Vec<usize>> {
        let members = decomp.component(c).members();
        let mut out = Vec::new();
        for (k, cell) in cell_sets.iter().enumerate() {
            if cell.is_subset(members) {
                out.push(k);
            } else if !cell.is_disjoint(members) {
                return None;
            }
        }
        Some(out)
    };

    let mut transversals = Vec::new();
    let mut all_cells = Vec::with_capacity(decomp.len());
    for (idx, comp) in decomp.components().iter().enumerate() {
        let cells = cells_of(idx)?;
        if cells.len() != 3 {
            return None;
        }
        if comp.color != row_color && comp.color != col_color {
            let mut rows_seen = [false; 3];
            let mut cols_seen = [false; 3];
            for &k in &cells {
                rows_seen[k / 3] = true;
                cols_seen[k % 3] = true;
            }
            if !rows_seen.iter().all(|&s| s) || !cols_seen.iter().all(|&s| s) {
                return None;
            }
            let mut pos = [(0, 0); 3];
            for (slot, &k) in cells.iter().enumerate() {
                pos[slot] = (k / 3, k % 3);
            }
            transversals.push(Transversal {
                component: idx,
                color: comp.color,
                cells: pos,
            });
        }
        all_cells.push(cells);
    }
    for i in 0..decomp.len() {
        for j in i + 1..decomp.len() {
            if decomp.component(i).color == decomp.component(j).color {
                continue;
            }
            let shared = all_cells[i].iter().filter(|k| all_cells[j].contains(k)).count();
            if shared != 1 {
                return None;
            }
        }
    }
    let cells = (0..3)
        .map(|i| (0..3).map(|j| cell_sets[i * 3 + j].ones().collect()).collect())
        .collect();
    Some(GridStructure {
        row_color,
        col_color,
        rows,
        cols,
        cells,
        transversals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::decompose;
    use crate::constructions::{gyarfas_coloring, two_color_extremal};

    #[test]
    fn single_edge_is_case_a() {
        let c = EdgeColoring::monochromatic(2, 2).unwrap();
        let case = classify_bipartite(&c, &[0], &[1], (0, 1), None).unwrap();
        assert_eq!(case.kind, BipartiteKind::SingleComponent { color: 0, designated: None });
        validate_certificate(&case, &[0], &[1]).unwrap();
    }

    #[test]
    fn k22_two_matchings_is_case_b() {
        // A1 = {0, 1}, A2 = {2, 3}; 02, 13 color 0; 03, 12 color 1
        let c = EdgeColoring::from_fn(4, 2, |u, v| usize::from(matches!((u, v), (0, 3) | (1, 2))))
            .unwrap();
        let case = classify_bipartite(&c, &[0, 1], &[2, 3], (0, 1), Some(1)).unwrap();
        assert_eq!(case.kind, BipartiteKind::TwoPerColor);
        assert_eq!(case.certificate.len(), 4);
        let half = Rational::new(1.into(), 2.into());
        assert!(case.certificate.iter().all(|p| p.weight == half));
        validate_certificate(&case, &[0, 1], &[2, 3]).unwrap();
    }

    #[test]
    fn path_through_a1_is_case_c_toward_a1() {
        // A1 = {0}, A2 = {1, 2}; 01 color 0, 02 color 1
        let c = EdgeColoring::from_fn(3, 2, |u, v| usize::from((u, v) == (0, 2))).unwrap();
        let case = classify_bipartite(&c, &[0], &[1, 2], (0, 1), None).unwrap();
        assert_eq!(case.kind, BipartiteKind::Nested { toward: Side::A1 });
        assert_eq!(case.kind.to_string(), "c->A1");
        assert!(case.certificate.iter().all(|p| p.weight.is_one()));
        validate_certificate(&case, &[0], &[1, 2]).unwrap();
    }

    #[test]
    fn bipartite_input_errors() {
        let c = EdgeColoring::from_fn(4, 3, |u, v| (u + v) % 3).unwrap();
        assert!(matches!(
            classify_bipartite(&c, &[0], &[1, 2], (0, 1), None),
            Err(StructureError::ForeignColor { .. })
        ));
        assert_eq!(
            classify_bipartite(&c, &[], &[1], (0, 1), None),
            Err(StructureError::EmptySide)
        );
        assert_eq!(
            classify_bipartite(&c, &[0, 1], &[1], (0, 1), None),
            Err(StructureError::Overlap(1))
        );
        assert!(classify_bipartite(&c, &[0], &[1], (1, 1), None).is_err());
    }

    #[test]
    fn small_lemma_runs() {
        let r11 = verify_bipartite_lemma(1, 1).unwrap();
        assert_eq!(r11.total(), 2);
        assert_eq!(r11.case_a1 + r11.case_a2, 2);
        let r22 = verify_bipartite_lemma(2, 2).unwrap();
        assert!(r22.failures.is_empty());
        assert_eq!(r22.shapes.iter().find(|s| s.0 == 2 && s.1 == 2).unwrap().2, 16);
        assert!(verify_bipartite_lemma(6, 1).is_err());
    }

    #[test]
    fn spanning_covers() {
        let mono = decompose(&EdgeColoring::monochromatic(5, 4).unwrap());
        assert_eq!(find_spanning_cover(&mono, 1), Some(vec![0]));

        let g = decompose(&gyarfas_coloring(4).unwrap());
        for m in 1..=3 {
            assert_eq!(find_spanning_cover(&g, m), None);
        }
        // the four lines through one point cover the plane
        let four = find_spanning_cover(&g, 4).unwrap();
        assert_eq!(four.len(), 4);
        assert!(four.iter().all(|&c| g.component(c).contains(0)));

        let t = decompose(&two_color_extremal(7).unwrap().with_color_count(4).unwrap());
        let cover = find_spanning_cover(&t, 2).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(t.component(cover[0]).color, 1);
    }

    #[test]
    fn disjoint_pairs() {
        let g = decompose(&gyarfas_coloring(4).unwrap());
        assert_eq!(detect_disjoint_pair(&g), None);

        // K4: 01 and 23 color 0, rest color 1; r = 4 adds singleton colors
        let c = EdgeColoring::from_fn(4, 4, |u, v| usize::from(!matches!((u, v), (0, 1) | (2, 3))))
            .unwrap();
        let d = decompose(&c);
        let (i, j) = detect_disjoint_pair(&d).unwrap();
        assert_ne!(d.component(i).color, d.component(j).color);
        assert!(d.component(i).members().is_disjoint(d.component(j).members()));
        let spanning = d.components_of_color(1)[0];
        assert_eq!(d.component(spanning).len(), 4);
        assert!(i != spanning && j != spanning);
    }

    #[test]
    fn r3_cases() {
        let mono = decompose(&EdgeColoring::monochromatic(5, 3).unwrap());
        assert_eq!(classify_r3(&mono).unwrap(), R3Case::OneComponent { color: 0 });
        let g3 = decompose(&gyarfas_coloring(3).unwrap());
        assert_eq!(classify_r3(&g3).unwrap(), R3Case::TwoEach);
        let t = decompose(&two_color_extremal(7).unwrap().with_color_count(3).unwrap());
        assert_eq!(classify_r3(&t).unwrap(), R3Case::OneComponent { color: 1 });
        assert!(classify_r3(&decompose(&gyarfas_coloring(4).unwrap())).is_err());
    }

    #[test]
    fn grid_on_gyarfas() {
        let d = decompose(&gyarfas_coloring(4).unwrap());
        let grid = detect_gyarfas_grid(&d).unwrap().expect("grid");
        assert_eq!((grid.row_color, grid.col_color), (0, 1));
        for row in &grid.cells {
            for cell in row {
                assert_eq!(cell.len(), 1);
            }
        }
        assert_eq!(grid.transversals.len(), 6);

        let mono = decompose(&EdgeColoring::monochromatic(9, 4).unwrap());
        assert_eq!(detect_gyarfas_grid(&mono).unwrap(), None);
        assert!(detect_gyarfas_grid(&decompose(&gyarfas_coloring(3).unwrap())).is_err());
    }
}
