//! Monochromatic components with many edges in `r`-edge-colorings of `K_n`.
//!
//! The crate covers the full pipeline: building colorings (affine-plane
//! colorings, blow-ups, extremal 2-colorings), decomposing them into
//! monochromatic components, evaluating fractional-cover lower bounds on the
//! largest component (closed forms, derandomized rounding and an exact LP),
//! structural classifiers, and exhaustive search for `M(n, r)` on small
//! instances.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod components;
pub mod constructions;
mod dsu;
pub mod field;
pub mod quadratic;
pub mod report;
pub mod search;
pub mod simplex;
pub mod structure;

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;

pub use bounds::{
    best_provable_bound, check_main_inequality, evaluate_weighting, min_fractional_cover,
    round_weighting, x_threshold, z_lower_bound, BoundQuery, LpResult, Weighting,
};
pub use coloring::{EdgeColoring, ParseError};
pub use components::{decompose, Component, ComponentDecomposition};
pub use constructions::{affine_plane, blow_up, gyarfas_coloring, two_color_extremal, AffinePlane};
pub use field::{make_field, FiniteField};
pub use quadratic::QuadIrrational;
pub use search::{exact_m, random_coloring, scan_bound_soundness, SearchConfig, Symmetry};
pub use structure::{
    classify_bipartite, classify_r3, detect_disjoint_pair, detect_gyarfas_grid,
    find_spanning_cover, verify_bipartite_lemma, BipartiteCase, GridStructure, R3Case,
};

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    (!den.is_zero()).then(|| Rational::new(num, den))
}
