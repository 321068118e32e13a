use std::collections::HashMap;

use super::algebra::unlink_factor;
use super::laurent::Laurent2;
use crate::groundring::rat;

/// HOMFLY-PT polynomial of a braid closure by the skein relation
/// `v P(L+) - v^{-1} P(L-) = z P(L0)`, switching crossings until the diagram
/// is descending.
pub struct SkeinEvaluator {
    strands: usize,
    memo: HashMap<Vec<i32>, Laurent2>,
}

impl SkeinEvaluator {
    pub fn new(strands: usize) -> Self {
        SkeinEvaluator {
            strands,
            memo: HashMap::new(),
        }
    }

    pub fn evaluate(&mut self, letters: &[i32]) -> Laurent2 {
        if let Some(p) = self.memo.get(letters) {
            return p.clone();
        }
        let value = match self.first_bad_crossing(letters) {
            Err(components) => unlink_factor().pow(components as u32 - 1),
            Ok(j) => {
                let mut switched = letters.to_vec();
                switched[j] = -switched[j];
                let mut smoothed = letters.to_vec();
                smoothed.remove(j);
                let other = self.evaluate(&switched);
                let zero = self.evaluate(&smoothed);
                let z = Laurent2::y();
                if letters[j] > 0 {
                    // P(L+) = v^{-2} P(L-) + v^{-1} z P(L0)
                    &(&other * &Laurent2::monomial(-2, 0, rat(1)))
                        + &(&zero * &(&z * &Laurent2::monomial(-1, 0, rat(1))))
                } else {
                    // P(L-) = v^2 P(L+) - v z P(L0)
                    &(&other * &Laurent2::monomial(2, 0, rat(1)))
                        - &(&zero * &(&z * &Laurent2::monomial(1, 0, rat(1))))
                }
            }
        };
        self.memo.insert(letters.to_vec(), value.clone());
        value
    }

    /// Walks the components from their lowest bottom position, in order of
    /// that position. Returns the first crossing met from below, or the
    /// number of components when every crossing is first met from above.
    fn first_bad_crossing(&self, letters: &[i32]) -> Result<usize, usize> {
        let n = self.strands;
        let mut seen = vec![false; letters.len()];
        let mut visited = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            components += 1;
            let mut p = start;
            loop {
                visited[p] = true;
                for (j, &l) in letters.iter().enumerate() {
                    let i = l.unsigned_abs() as usize;
                    let over = if p == i - 1 {
                        p = i;
                        l > 0
                    } else if p == i {
                        p = i - 1;
                        l < 0
                    } else {
                        continue;
                    };
                    if !seen[j] {
                        seen[j] = true;
                        if !over {
                            return Ok(j);
                        }
                    }
                }
                if p == start {
                    break;
                }
            }
        }
        Err(components)
    }
}
