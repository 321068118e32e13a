use std::collections::BTreeSet;
use std::fmt;

use super::WeylError;

/// Finite Cartan type with Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self, WeylError> {
        let family = family.to_ascii_uppercase();
        let ok = match family {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(WeylError::UnknownType(format!("{family}{rank}")));
        }
        Ok(CartanType { family, rank })
    }

    /// Parses `"A2"`, `"b3"`, `"E8"`.
    pub fn parse(s: &str) -> Result<Self, WeylError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .ok_or_else(|| WeylError::UnknownType(s.into()))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| WeylError::UnknownType(s.into()))?;
        Self::new(family, rank)
    }

    /// `a[i][j] = <α_i^∨, α_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
            'D' => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            'E' => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            'F' => (0..3).for_each(|i| link(i, i + 1)),
            _ => link(0, 1),
        }
        match self.family {
            'B' => a[n - 1][n - 2] = -2,
            'C' => a[n - 2][n - 1] = -2,
            'F' => a[2][1] = -2,
            'G' => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Standard number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            'A' => n * (n + 1) / 2,
            'B' | 'C' => n * n,
            'D' => n * (n - 1),
            'E' => [36, 63, 120][n - 6],
            'F' => 24,
            _ => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Positive roots in the simple-root basis, sorted by height then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub cartan_type: CartanType,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
}

/// `s_i(β) = β - <α_i^∨, β> α_i`.
pub(crate) fn reflect(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

pub fn positive_roots(cartan_type: CartanType) -> RootSystemData {
    let n = cartan_type.rank;
    let cartan = cartan_type.cartan_matrix();
    let simple = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut found: BTreeSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut frontier: Vec<Vec<i64>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let image = reflect(&cartan, i, beta);
                if image.iter().all(|&c| c >= 0) && found.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    let heights = roots.iter().map(|r| r.iter().sum()).collect();
    RootSystemData {
        cartan_type,
        cartan,
        roots,
        heights,
    }
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Symmetrizing weights `d_i` with `d_i a_ij = d_j a_ji`.
    pub(crate) fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank();
        // propagate along the (connected) Dynkin diagram, then clear denominators
        let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
        d[0] = Some((1, 1));
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if let (Some((p, q)), None, true) =
                        (d[i], d[j], self.cartan[i][j] != 0 && i != j)
                    {
                        let (num, den) = (p * self.cartan[i][j], q * self.cartan[j][i]);
                        let g = num_integer::gcd(num, den) * den.signum();
                        d[j] = Some((num / g, den / g));
                        changed = true;
                    }
                }
            }
        }
        let lcm = d
            .iter()
            .fold(1, |acc, x| num_integer::lcm(acc, x.unwrap().1));
        d.iter()
            .map(|x| x.unwrap().0 * lcm / x.unwrap().1)
            .collect()
    }

    /// `(x, y)` for vectors in the simple-root basis.
    pub(crate) fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let d = self.symmetrizer();
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            let row: i64 = self.cartan[i].iter().zip(y).map(|(c, v)| c * v).sum();
            s += x[i] * d[i] * row;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heights(t: &str) -> Vec<i64> {
        positive_roots(CartanType::parse(t).unwrap()).heights
    }

    #[test]
    fn small_systems() {
        let a2 = positive_roots(CartanType::parse("A2").unwrap());
        assert_eq!(a2.roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.heights, vec![1, 1, 2]);
        assert_eq!(heights("A3"), vec![1, 1, 1, 2, 2, 3]);
        assert_eq!(heights("B2"), vec![1, 1, 2, 3]);
        assert_eq!(heights("G2"), vec![1, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn counts_match_standard_tables() {
        for t in [
            "A1", "A4", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            let ct = CartanType::parse(t).unwrap();
            let r = positive_roots(ct);
            assert_eq!(r.roots.len(), ct.positive_root_count(), "{t}");
            assert_eq!(
                r.heights.iter().filter(|&&h| h == 1).count(),
                ct.rank,
                "{t}"
            );
            let d = r.symmetrizer();
            for i in 0..ct.rank {
                for j in 0..ct.rank {
                    assert_eq!(d[i] * r.cartan[i][j], d[j] * r.cartan[j][i]);
                }
            }
        }
    }

    #[test]
    fn bad_types() {
        for t in ["X3", "B1", "E9", "A0", "", "A"] {
            assert!(CartanType::parse(t).is_err(), "{t}");
        }
    }
}
