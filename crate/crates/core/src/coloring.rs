//! Edge-colorings of complete graphs and their plain-text file format.
//!
//! A coloring of `K_n` with `r` colors stores one color per unordered pair
//! `{u, v}`, packed in lexicographic pair order. The text format is:
//!
//! ```text
//! n r
//! u v c        (one line per pair, u < v, ascending lexicographic order)
//! ```
//!
//! with ASCII decimal fields separated by single spaces and LF line endings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported color count; colors are stored as `u8`.
pub const MAX_COLORS: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("color count must be between 1 and {MAX_COLORS}, got {0}")]
    BadColorCount(usize),
    #[error("expected {expected} pair colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("pair ({u}, {v}) has color {color}, but only {r} colors exist")]
    ColorOutOfRange {
        u: usize,
        v: usize,
        color: usize,
        r: usize,
    },
    #[error("permutation of length {got} does not match {expected}")]
    BadPermutation { expected: usize, got: usize },
}

/// Error raised while reading the coloring text format. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Number of unordered pairs in `K_n`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` (`u < v`) in lexicographic pair order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// An `r`-edge-coloring of the complete graph `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    r: usize,
    colors: Vec<u8>,
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeColoring")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("colors", &self.colors)
            .finish()
    }
}

impl EdgeColoring {
    /// Builds a coloring from colors listed in lexicographic pair order.
    pub fn new(n: usize, r: usize, colors: Vec<u8>) -> Result<Self, ColoringError> {
        check_shape(n, r)?;
        if colors.len() != pair_count(n) {
            return Err(ColoringError::WrongLength {
                expected: pair_count(n),
                got: colors.len(),
            });
        }
        if let Some(pos) = colors.iter().position(|&c| c as usize >= r) {
            let (u, v) = pair_at(n, pos);
            return Err(ColoringError::ColorOutOfRange {
                u,
                v,
                color: colors[pos] as usize,
                r,
            });
        }
        Ok(Self { n, r, colors })
    }

    /// Builds a coloring by evaluating `color(u, v)` for every pair `u < v`.
    pub fn from_fn<F>(n: usize, r: usize, mut color: F) -> Result<Self, ColoringError>
    where
        F: FnMut(usize, usize) -> usize,
    {
        check_shape(n, r)?;
        let mut colors = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                let c = color(u, v);
                if c >= r {
                    return Err(ColoringError::ColorOutOfRange { u, v, color: c, r });
                }
                colors.push(c as u8);
            }
        }
        Ok(Self { n, r, colors })
    }

    /// The coloring of `K_n` using color 0 everywhere.
    pub fn monochromatic(n: usize, r: usize) -> Result<Self, ColoringError> {
        Self::from_fn(n, r, |_, _| 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of edges, `C(n, 2)`.
    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Color of the pair `{u, v}`. Panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, a, b)] as usize
    }

    /// Pair colors in lexicographic pair order.
    pub fn raw_colors(&self) -> &[u8] {
        &self.colors
    }

    /// Iterates `(u, v, color)` over all pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colors.iter())
            .map(|((u, v), &c)| (u, v, c as usize))
    }

    /// Number of edges of each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.r];
        for &c in &self.colors {
            counts[c as usize] += 1;
        }
        counts
    }

    /// Same coloring viewed with `r` colors, `r` at least the current count.
    pub fn with_color_count(&self, r: usize) -> Result<Self, ColoringError> {
        Self::new(self.n, r, self.colors.clone())
    }

    /// The coloring whose vertex `perm[v]` plays the role of vertex `v`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self, ColoringError> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(ColoringError::BadPermutation {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut inverse = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        Self::from_fn(self.n, self.r, |u, v| self.color(inverse[u], inverse[v]))
    }

    /// The coloring with every color `c` replaced by `perm[c]`.
    pub fn permute_colors(&self, perm: &[usize]) -> Result<Self, ColoringError> {
        if perm.len() != self.r || !is_permutation(perm) {
            return Err(ColoringError::BadPermutation {
                expected: self.r,
                got: perm.len(),
            });
        }
        let colors = self.colors.iter().map(|&c| perm[c as usize] as u8).collect();
        Self::new(self.n, self.r, colors)
    }

    /// Serializes to the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(12 * self.colors.len() + 16);
        out.push_str(&format!("{} {}\n", self.n, self.r));
        for (u, v, c) in self.edges() {
            out.push_str(&format!("{u} {v} {c}\n"));
        }
        out
    }

    /// Parses the text format, rejecting anything but the exact layout.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines
            .next()
            .filter(|(_, l)| !l.is_empty())
            .ok_or_else(|| ParseError::new(1, "missing header line \"n r\""))?;
        let fields = split_fields(header, 2, 1)?;
        let (n, r) = (fields[0], fields[1]);
        check_shape(n, r).map_err(|e| ParseError::new(1, e.to_string()))?;

        let expected = pair_count(n);
        let mut colors = Vec::with_capacity(expected);
        let (mut u, mut v) = (0usize, 1usize);
        for (line_no, line) in lines.by_ref() {
            if line.is_empty() {
                // Only the empty remainder after the final LF is allowed.
                if colors.len() == expected {
                    break;
                }
                return Err(ParseError::new(line_no, "unexpected empty line"));
            }
            if colors.len() == expected {
                return Err(ParseError::new(line_no, "more pair lines than n(n-1)/2"));
            }
            let f = split_fields(line, 3, line_no)?;
            if (f[0], f[1]) != (u, v) {
                let what = if f[0] >= f[1] {
                    "pair must satisfy u < v"
                } else if (f[0], f[1]) < (u, v) {
                    "duplicate or out-of-order pair"
                } else {
                    "missing pair (gap in lexicographic order)"
                };
                return Err(ParseError::new(
                    line_no,
                    format!("{what}: expected \"{u} {v} c\", found \"{} {}\"", f[0], f[1]),
                ));
            }
            if f[2] >= r {
                return Err(ParseError::new(
                    line_no,
                    format!("color {} out of range for r = {r}", f[2]),
                ));
            }
            colors.push(f[2] as u8);
            v += 1;
            if v == n {
                u += 1;
                v = u + 1;
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(ParseError::new(line_no, "trailing content after last pair"));
        }
        if colors.len() != expected {
            return Err(ParseError::new(
                expected.min(colors.len()) + 2,
                format!("expected {expected} pair lines, found {}", colors.len()),
            ));
        }
        Ok(Self { n, r, colors })
    }
}

impl fmt::Display for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for EdgeColoring {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

fn check_shape(n: usize, r: usize) -> Result<(), ColoringError> {
    if n == 0 {
        return Err(ColoringError::NoVertices);
    }
    if r == 0 || r > MAX_COLORS {
        return Err(ColoringError::BadColorCount(r));
    }
    Ok(())
}

fn pair_at(n: usize, mut pos: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if pos < row {
            return (u, u + 1 + pos);
        }
        pos -= row;
    }
    unreachable!("pair position out of range")
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

fn split_fields(line: &str, count: usize, line_no: usize) -> Result<Vec<usize>, ParseError> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != count {
        return Err(ParseError::new(
            line_no,
            format!("expected {count} space-separated fields, found {}", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseError::new(line_no, format!("not a decimal integer: {p:?}")));
            }
            p.parse::<usize>()
                .map_err(|_| ParseError::new(line_no, format!("integer too large: {p}")))
        })
        .collect()
}
