use std::fmt;

use serde::{Deserialize, Serialize};

/// A root written in the ε-basis of the standard Cartan subalgebra.
///
/// For so(n) the coordinates have length l = ⌊n/2⌋; for gl(n) they have
/// length n and the roots are ε_i − ε_j.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub positive: bool,
    pub simple: bool,
}

impl Root {
    /// Positivity is lexicographic: the first nonzero coordinate is positive.
    /// Simplicity is filled in by the root system that owns the root.
    pub fn from_coords(coords: Vec<i64>) -> Self {
        let positive = coords.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        Root {
            coords,
            positive,
            simple: false,
        }
    }

    pub fn neg(&self) -> Root {
        Root::from_coords(self.coords.iter().map(|c| -c).collect())
    }

    pub fn inner(&self, other: &Root) -> i64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sqr(&self) -> i64 {
        self.inner(self)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Evaluate on integer Cartan coordinates.
    pub fn eval(&self, h: &[i64]) -> i64 {
        self.coords.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    /// Reflection s_self applied to `v` (coordinates in the ε-basis).
    pub fn reflect(&self, v: &[i64]) -> Vec<i64> {
        let num: i64 = self.coords.iter().zip(v).map(|(a, b)| a * b).sum();
        let k = 2 * num / self.norm_sqr();
        v.iter().zip(&self.coords).map(|(x, a)| x - k * a).collect()
    }

    /// Same coordinates, ignoring the flags.
    pub fn same_as(&self, other: &Root) -> bool {
        self.coords == other.coords
    }

    /// ε_i ± ε_j style label with 1-based indices.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c > 0 {
                if out.is_empty() {
                    ""
                } else {
                    "+"
                }
            } else {
                "-"
            };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}e{}", i + 1));
            } else {
                out.push_str(&format!("{sign}{mag}e{}", i + 1));
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn unit(l: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = s;
    v
}

fn pair(l: usize, i: usize, si: i64, j: usize, sj: i64) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = si;
    v[j] = sj;
    v
}

/// Simple roots of so(n): ε_i − ε_{i+1} for i < l, then ε_{l−1} + ε_l (even n)
/// or ε_l (odd n).
pub fn so_simple_roots(n: usize) -> Vec<Vec<i64>> {
    let l = n / 2;
    let mut out: Vec<Vec<i64>> = (0..l.saturating_sub(1)).map(|i| pair(l, i, 1, i + 1, -1)).collect();
    if n % 2 == 1 {
        out.push(unit(l, l - 1, 1));
    } else if l >= 2 {
        out.push(pair(l, l - 2, 1, l - 1, 1));
    }
    out
}

/// All roots of so(n) in a fixed order: positive roots (ε_i − ε_j, then
/// ε_i + ε_j, then ε_i for odd n), followed by their negatives in the same order.
pub fn so_roots(n: usize) -> Vec<Root> {
    let l = n / 2;
    let mut pos = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            pos.push(pair(l, i, 1, j, -1));
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            pos.push(pair(l, i, 1, j, 1));
        }
    }
    if n % 2 == 1 {
        for i in 0..l {
            pos.push(unit(l, i, 1));
        }
    }
    let simple = so_simple_roots(n);
    let mut out: Vec<Root> = pos
        .iter()
        .map(|c| {
            let mut r = Root::from_coords(c.clone());
            r.simple = simple.contains(c);
            r
        })
        .collect();
    let neg: Vec<Root> = out.iter().map(Root::neg).collect();
    out.extend(neg);
    out
}

/// Roots ε_i − ε_j of gl(n): positive ones (i < j) first, then negatives.
pub fn gl_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = Root::from_coords(pair(n, i, 1, j, -1));
            r.simple = j == i + 1;
            out.push(r);
        }
    }
    let neg: Vec<Root> = out.iter().map(Root::neg).collect();
    out.extend(neg);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for l in 1..7usize {
            assert_eq!(so_roots(2 * l + 1).len(), 2 * l * l);
            if l >= 2 {
                assert_eq!(so_roots(2 * l).len(), 2 * l * (l - 1));
            }
        }
    }

    #[test]
    fn so5_simple_roots() {
        assert_eq!(so_simple_roots(5), vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(so_simple_roots(4), vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn reflection_is_involutive() {
        let a = Root::from_coords(vec![1, -1, 0]);
        let v = vec![3, 5, -2];
        assert_eq!(a.reflect(&a.reflect(&v)), v);
        assert_eq!(a.reflect(&v), vec![5, 3, -2]);
    }
}
