use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{Int, Rat};
use num_traits::Zero;
use std::fmt;

/// A point of ℚⁿ. Ordering is lexicographic on coordinates, which is the
/// canonical order used everywhere (vertex lists, fan apexes, tie-breaking).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut c = vec![Rat::zero(); dim];
        c[axis] = crate::rat::rat_one();
        Point(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &Point) -> Rat {
        linalg::dot(&self.0, &other.0)
    }

    /// Zeroes every coordinate outside `keep` (ambient-embedded projection
    /// onto a coordinate subspace).
    pub fn mask(&self, keep: &[bool]) -> Point {
        Point(
            self.0
                .iter()
                .zip(keep)
                .map(|(c, &k)| if k { c.clone() } else { Rat::zero() })
                .collect(),
        )
    }

    /// Keeps exactly the coordinates in `keep`, dropping the rest (frame view
    /// of a coordinate subspace).
    pub fn restrict(&self, keep: &[usize]) -> Point {
        Point(keep.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            })
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::rat::format_rat(c))?;
        }
        write!(f, ")")
    }
}

/// Convenience constructor from integer coordinates.
pub fn pt(coords: &[i64]) -> Point {
    Point(coords.iter().map(|&c| crate::rat::rat_int(c)).collect())
}

/// Convenience constructor from rational pairs (num, den).
pub fn ptq(coords: &[(i64, i64)]) -> Point {
    Point(coords.iter().map(|&(n, d)| crate::rat::rat(n, d)).collect())
}

/// Clears denominators: the primitive integer vector spanning the same ray.
pub fn primitive_row(p: &Point) -> Vec<Int> {
    linalg::primitive_integer(&p.0)
}
