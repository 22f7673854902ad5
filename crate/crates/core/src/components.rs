//! Monochromatic component decomposition and the vertex relations derived
//! from it (shared components, equivalence classes, biconnected pairs).

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use thiserror::Error;

use crate::coloring::{pair_count, EdgeColoring};
use crate::dsu::EdgeCountingDsu;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("edge fractions need at least 2 vertices, got n = {0}")]
    TooFewVertices(usize),
    #[error("a vertex pair needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A connected component of one color class, isolated vertices included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub color: usize,
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub edge_count: u64,
    members: FixedBitSet,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    /// Vertex set as a bitset over `0..n`.
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn smallest_vertex(&self) -> usize {
        self.vertices[0]
    }
}

/// All monochromatic components of a coloring.
///
/// Components are ordered by color, then by smallest vertex. For each color
/// the components partition the vertex set, so every vertex lies in exactly
/// `r` components.
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    n: usize,
    r: usize,
    components: Vec<Component>,
    by_color: Vec<Vec<usize>>,
    // membership[v * r + c] = index of the color-c component containing v
    membership: Vec<usize>,
}

/// Splits every color class into its connected components.
pub fn decompose(coloring: &EdgeColoring) -> ComponentDecomposition {
    let (n, r) = (coloring.n(), coloring.r());
    let mut dsus = vec![EdgeCountingDsu::new(n); r];
    for (u, v, c) in coloring.edges() {
        dsus[c].add_edge(u, v);
    }

    let mut components = Vec::new();
    let mut by_color = vec![Vec::new(); r];
    let mut membership = vec![usize::MAX; n * r];
    for (color, dsu) in dsus.iter_mut().enumerate() {
        // Roots are discovered in order of their smallest vertex.
        let mut root_to_index = vec![usize::MAX; n];
        for v in 0..n {
            let root = dsu.find(v);
            if root_to_index[root] == usize::MAX {
                root_to_index[root] = components.len();
                by_color[color].push(components.len());
                components.push(Component {
                    color,
                    vertices: Vec::new(),
                    edge_count: dsu.edge_count(root),
                    members: FixedBitSet::with_capacity(n),
                });
            }
            let idx = root_to_index[root];
            components[idx].vertices.push(v);
            components[idx].members.insert(v);
            membership[v * r + color] = idx;
        }
    }
    ComponentDecomposition {
        n,
        r,
        components,
        by_color,
        membership,
    }
}

impl ComponentDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Indices of the components of one color.
    pub fn components_of_color(&self, color: usize) -> &[usize] {
        &self.by_color[color]
    }

    /// Index of the color-`color` component containing `v`.
    pub fn component_of(&self, v: usize, color: usize) -> usize {
        self.membership[v * self.r + color]
    }

    /// Component indices containing `v`, one per color.
    pub fn components_containing(&self, v: usize) -> &[usize] {
        &self.membership[v * self.r..(v + 1) * self.r]
    }

    /// Largest edge count over all components.
    pub fn max_edges(&self) -> u64 {
        self.components.iter().map(|c| c.edge_count).max().unwrap_or(0)
    }

    /// `max_C |E(C)| / C(n, 2)` as an exact fraction.
    pub fn max_edge_fraction(&self) -> Result<Rational, ComponentError> {
        if self.n < 2 {
            return Err(ComponentError::TooFewVertices(self.n));
        }
        Ok(Rational::new(
            BigInt::from(self.max_edges()),
            BigInt::from(pair_count(self.n)),
        ))
    }

    /// Number of colors in which `u` and `v` lie in a common component.
    pub fn shared_components(&self, u: usize, v: usize) -> Result<usize, ComponentError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(ComponentError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(ComponentError::SameVertex(u));
        }
        Ok(self
            .components_containing(u)
            .iter()
            .zip(self.components_containing(v))
            .filter(|(a, b)| a == b)
            .count())
    }

    /// Classes of vertices sharing a component in every color, ordered by
    /// smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut key_to_class = std::collections::HashMap::new();
        for v in 0..self.n {
            let key = self.components_containing(v);
            let idx = *key_to_class.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(v);
        }
        classes
    }

    /// Pairs `u < v` sharing components in exactly two colors.
    pub fn biconnected_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.shared_components(u, v) == Ok(2) {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    /// `Σ_C |V(C)|`; equals `r·n`.
    pub fn total_vertex_incidences(&self) -> usize {
        self.components.iter().map(Component::len).sum()
    }

    /// `Σ_C |E(C)|`; equals `C(n, 2)`.
    pub fn total_edges(&self) -> u64 {
        self.components.iter().map(|c| c.edge_count).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn k4_matchings() -> EdgeColoring {
        // 01,23 -> 0; 02,13 -> 1; 03,12 -> 2
        EdgeColoring::from_fn(4, 3, |u, v| match (u, v) {
            (0, 1) | (2, 3) => 0,
            (0, 2) | (1, 3) => 1,
            _ => 2,
        })
        .unwrap()
    }

    #[test]
    fn monochromatic_k5() {
        let d = decompose(&EdgeColoring::monochromatic(5, 2).unwrap());
        assert_eq!(d.components_of_color(0).len(), 1);
        assert_eq!(d.component(0).edge_count, 10);
        assert_eq!(d.components_of_color(1).len(), 5);
        assert!(d.components_of_color(1).iter().all(|&i| d.component(i).edge_count == 0));
        assert_eq!(d.max_edge_fraction().unwrap(), Rational::one());
    }

    #[test]
    fn ordering_is_color_then_smallest_vertex() {
        let d = decompose(&k4_matchings());
        let keys: Vec<_> = d
            .components()
            .iter()
            .map(|c| (c.color, c.vertices.clone()))
            .collect();
        assert_eq!(
            keys,
            vec![
                (0, vec![0, 1]),
                (0, vec![2, 3]),
                (1, vec![0, 2]),
                (1, vec![1, 3]),
                (2, vec![0, 3]),
                (2, vec![1, 2]),
            ]
        );
    }

    #[test]
    fn shared_components_errors_and_values() {
        let d = decompose(&k4_matchings());
        assert_eq!(d.shared_components(0, 1), Ok(1));
        assert_eq!(d.shared_components(2, 2), Err(ComponentError::SameVertex(2)));
        assert!(d.shared_components(0, 9).is_err());

        let single = decompose(&EdgeColoring::monochromatic(2, 1).unwrap());
        assert_eq!(single.shared_components(0, 1), Ok(1));
        let k3 = decompose(&EdgeColoring::monochromatic(3, 2).unwrap());
        assert_eq!(k3.shared_components(0, 2), Ok(1));
    }

    #[test]
    fn equivalence_and_biconnected() {
        let d = decompose(&EdgeColoring::monochromatic(4, 1).unwrap());
        assert_eq!(d.equivalence_classes(), vec![vec![0, 1, 2, 3]]);

        let k2 = decompose(&EdgeColoring::monochromatic(2, 4).unwrap());
        assert!(k2.biconnected_pairs().is_empty());
    }

    #[test]
    fn tiny_fraction_rejected() {
        let d = decompose(&EdgeColoring::monochromatic(1, 2).unwrap());
        assert_eq!(d.max_edge_fraction(), Err(ComponentError::TooFewVertices(1)));
    }
}
