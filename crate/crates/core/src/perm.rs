//! Permutations stored as image arrays.
//!
//! Points are 0-indexed internally. Cycle notation on input and output is
//! 1-indexed, so `(1,2,3)` maps point 0 to 1, 1 to 2 and 2 to 0.
//!
//! Products act on the right: `a * b` applies `a` first, then `b`, and the
//! conjugate `x^g` is `g⁻¹ x g`.

use std::fmt;
use std::ops::Mul;

use crate::error::{GroupError, Result};

pub type Point = u32;

/// A bijection on `{0, …, degree − 1}`.
///
/// The derived ordering is lexicographic on the image array; it is the fixed
/// total order used wherever a canonical choice among elements is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image array, checking it is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        if images.is_empty() {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let i = p as usize;
            if i >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {} out of range for degree {n}",
                    p + 1
                )));
            }
            if seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "point {} appears twice among the images",
                    p + 1
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Point>]) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let i = p as usize;
                if i >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if touched[i] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} occurs in more than one cycle position",
                        p + 1
                    )));
                }
                touched[i] = true;
                images[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-indexed cycle notation such as `(1,2,3)(4,5)`, `(1 2 3)` or `()`.
    ///
    /// With `degree = None` the degree is the largest point mentioned.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let max_point = cycles.iter().flatten().copied().max().map_or(0, |p| p as usize + 1);
        let degree = match degree {
            Some(d) if d < max_point => {
                return Err(GroupError::Parse(format!(
                    "{text:?} mentions point {max_point} but the degree is {d}"
                )))
            }
            Some(d) => d,
            None => max_point.max(1),
        };
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    /// Image of a point.
    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as Point == p)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degrees");
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "conjugating by a permutation of different degree");
        // x^g maps p^g to (p^x)^g
        let mut out = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[p as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &p)| other.images[p as usize] == self.images[other.images[i] as usize])
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    fn cycle_lengths(&self) -> Vec<u64> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as Point);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn first_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i as Point != p)
            .map(|(i, _)| i as Point)
    }

    /// Number of points left fixed.
    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i as Point == p)
            .count()
    }

    /// Sign-based parity test.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
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
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses `(a,b,c)(d,e)` into 0-indexed cycles.
fn parse_cycle_list(text: &str) -> Result<Vec<Vec<Point>>> {
    let s = text.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(GroupError::Parse(format!("expected '(' in {text:?} at {rest:?}")));
        };
        let Some(close) = after_open.find(')') else {
            return Err(GroupError::Parse(format!("unclosed cycle in {text:?}")));
        };
        let body = &after_open[..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: u64 = tok
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad point {tok:?} in {text:?}")))?;
            if v == 0 || v > Point::MAX as u64 {
                return Err(GroupError::Parse(format!(
                    "point {tok:?} in {text:?} is outside the 1-indexed range"
                )));
            }
            cycle.push((v - 1) as Point);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = p("(1,3,2,4)", 4);
        assert_eq!(x.images(), &[2, 3, 1, 0]);
        assert_eq!(x.to_string(), "(1,3,2,4)");
        assert_eq!(p("(1 2 3)(4 5)", 5).to_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p("()", 3), Permutation::identity(3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::parse_cycles("(1,2,1)", None).is_err());
        assert!(Permutation::parse_cycles("(1,2", None).is_err());
        assert!(Permutation::parse_cycles("(0,2)", None).is_err());
        assert!(Permutation::parse_cycles("(1,5)", Some(4)).is_err());
    }

    #[test]
    fn products_act_on_the_right() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // point 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!((&a * &b).to_string(), "(1,3,2)");
    }

    #[test]
    fn conjugation_and_commutators() {
        let x = p("(1,2,3)", 4);
        let g = p("(1,3,2,4)", 4);
        let direct = g.inverse().compose(&x).compose(&g);
        assert_eq!(x.conjugate_by(&g), direct);
        // relabelling: (1,2,3)^g = (1^g, 2^g, 3^g) = (3,4,2)
        assert_eq!(x.conjugate_by(&g).to_string(), "(2,3,4)");
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.commutator(&b), a.inverse() * b.inverse() * a.clone() * b.clone());
        assert!(!a.commutes_with(&b));
        assert!(a.commutes_with(&a));
    }

    #[test]
    fn order_pow_inverse() {
        let x = p("(1,2,3)(4,5)", 5);
        assert_eq!(x.order(), 6);
        assert!(x.pow(6).is_identity());
        assert_eq!(x.pow(-1), x.inverse());
        assert!((&x * &x.inverse()).is_identity());
        assert!(!x.is_even());
        assert!(p("(1,2,3)", 4).is_even());
        assert_eq!(x.first_moved_point(), Some(0));
        assert_eq!(p("(2,3)", 4).fixed_points(), 2);
    }
}
