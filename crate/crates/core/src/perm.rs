//! Permutations of the colour set `{1, .., m}`.
//!
//! Points are 1-based in every public method. Composition is right-to-left:
//! `a.compose(&b)` is the permutation `i -> a(b(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::PermError;

/// A bijection of `{1, .., m}`.
///
/// The derived ordering compares image sequences lexicographically, so the
/// identity is the least permutation of any degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its 1-based image sequence `[π(1), .., π(m)]`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut image = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m {
                return Err(PermError::PointOutOfRange {
                    point: x,
                    degree: m,
                });
            }
            if seen[x - 1] {
                return Err(PermError::NotBijective(x));
            }
            seen[x - 1] = true;
            image.push(x - 1);
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of degree `degree` from disjoint or overlapping
    /// cycles given with 1-based points. Cycles are composed right-to-left,
    /// the same way they are read in cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut image: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if seen[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                seen[p - 1] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                image[p - 1] = q - 1;
            }
            result = Permutation { image }.compose(&result);
        }
        Ok(result)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()` for a permutation
    /// of the given degree.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let body = &open[..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| PermError::Syntax(text.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// The commutator `[self, other] = self·other·self⁻¹·other⁻¹`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    pub fn pow(&self, exp: usize) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        for _ in 0..exp {
            result = self.compose(&result);
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Non-trivial cycles in canonical form: each cycle starts at its least
    /// point, cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a list of 1-based images, e.g. `"2 3 1"`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::Syntax(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(&images)
    }
}
