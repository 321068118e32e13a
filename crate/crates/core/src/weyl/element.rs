use std::fmt;

use super::roots::{reflect, RootSystemData};
use super::WeylError;

/// An element of the Weyl group, stored as a reduced word in the simple
/// reflections (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    /// Checks that `word` is reduced for `r`.
    pub fn from_word(word: Vec<usize>, r: &RootSystemData) -> Result<Self, WeylError> {
        if let Some(&i) = word.iter().find(|&&i| i == 0 || i > r.rank()) {
            return Err(WeylError::BadElement(format!(
                "reflection s{i} outside rank {}",
                r.rank()
            )));
        }
        let w = WeylElement { word };
        let inversions = w.inversions(r).len();
        if inversions != w.word.len() {
            return Err(WeylError::NotReduced {
                length: w.word.len(),
                inversions,
            });
        }
        Ok(w)
    }

    /// One-line notation on `1..=n` (type `A_{n-1}`), e.g. `[3, 1, 2]`.
    pub fn from_permutation(p: &[usize]) -> Result<Self, WeylError> {
        let n = p.len();
        let mut sorted = p.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(WeylError::BadElement(format!(
                "{p:?} is not a permutation of 1..={n}"
            )));
        }
        // peel off right descents: p = p' s_i with p(i) > p(i+1)
        let mut cur = p.to_vec();
        let mut reversed = Vec::new();
        while let Some(i) = (0..n.saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
            cur.swap(i, i + 1);
            reversed.push(i + 1);
        }
        reversed.reverse();
        Ok(WeylElement { word: reversed })
    }

    /// The longest element, built by extending while the length grows.
    pub fn longest(r: &RootSystemData) -> Self {
        let mut w = WeylElement::identity();
        while let Some(i) =
            (1..=r.rank()).find(|&i| w.act(r, &simple(r.rank(), i)).iter().all(|&c| c >= 0))
        {
            w.word.push(i);
        }
        w
    }

    /// `"w0"`, `"e"`, a reduced word such as `"s1 s2 s1"` or `"s1s2"`, or
    /// (type A only) one-line notation `"3,1,2"`.
    pub fn parse(text: &str, r: &RootSystemData) -> Result<Self, WeylError> {
        let t = text.trim();
        match t {
            "w0" => return Ok(Self::longest(r)),
            "e" | "id" | "" => return Ok(Self::identity()),
            _ => {}
        }
        if t.starts_with('s') {
            let word = t
                .split('s')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| WeylError::BadElement(text.into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Self::from_word(word, r);
        }
        if r.cartan_type.family != 'A' {
            return Err(WeylError::BadElement(format!(
                "one-line notation needs type A, got {}",
                r.cartan_type
            )));
        }
        let p = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| WeylError::BadElement(text.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if p.len() != r.rank() + 1 {
            return Err(WeylError::BadElement(format!(
                "{text} has {} entries, expected {}",
                p.len(),
                r.rank() + 1
            )));
        }
        Self::from_permutation(&p)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `w(β)` for `β` in the simple-root basis.
    pub fn act(&self, r: &RootSystemData, beta: &[i64]) -> Vec<i64> {
        self.word
            .iter()
            .rev()
            .fold(beta.to_vec(), |acc, &i| reflect(&r.cartan, i - 1, &acc))
    }

    /// Indices into `r.roots` of the positive roots sent negative by `w`.
    pub fn inversions(&self, r: &RootSystemData) -> Vec<usize> {
        (0..r.roots.len())
            .filter(|&k| self.act(r, &r.roots[k]).iter().any(|&c| c < 0))
            .collect()
    }

    /// One-line notation, for type A.
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (1..=n).collect();
        for &i in &self.word {
            p.swap(i - 1, i);
        }
        p
    }
}

fn simple(n: usize, i: usize) -> Vec<i64> {
    (1..=n).map(|j| i64::from(i == j)).collect()
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Heights of the roots in `R⁺ ∩ w⁻¹(R⁻)`, sorted.
pub fn inversion_set(w: &WeylElement, r: &RootSystemData) -> Vec<i64> {
    let mut h: Vec<i64> = w.inversions(r).into_iter().map(|k| r.heights[k]).collect();
    h.sort_unstable();
    h
}
