use std::collections::BTreeSet;

use super::element::WeylElement;
use super::roots::{reflect, RootSystemData};

/// `Σ_{v ≤ w} q^{ℓ(v)}` and its splitting into q-integers, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatPoincare {
    /// Coefficient of `q^j` at index `j`.
    pub coefficients: Vec<u64>,
    /// `k` with `P = Π [k]_q`, sorted; `None` when no such product exists.
    pub factors: Option<Vec<usize>>,
}

/// Enumerates the lower interval of `w` as subword products of its reduced
/// word, each element identified by where it sends `2ρ`.
pub fn bruhat_poincare(w: &WeylElement, r: &RootSystemData) -> BruhatPoincare {
    let two_rho: Vec<i64> = (0..r.rank())
        .map(|i| r.roots.iter().map(|b| b[i]).sum())
        .collect();
    let mut interval: BTreeSet<Vec<i64>> = BTreeSet::from([two_rho]);
    // left multiplication, last letter first
    for &i in w.word().iter().rev() {
        let moved: Vec<Vec<i64>> = interval
            .iter()
            .map(|x| reflect(&r.cartan, i - 1, x))
            .collect();
        interval.extend(moved);
    }
    let mut coefficients = vec![0u64; w.length() + 1];
    for x in &interval {
        // ℓ(v) = #{β > 0 : (v(2ρ), β) < 0}
        let len = r.roots.iter().filter(|b| r.inner(x, b) < 0).count();
        coefficients[len] += 1;
    }
    let factors = factor_q_integers(&coefficients);
    BruhatPoincare {
        coefficients,
        factors,
    }
}

/// `p / [k]_q` when exact.
fn divide_q_integer(p: &[u64], k: usize) -> Option<Vec<u64>> {
    if p.len() < k {
        return None;
    }
    let mut rem: Vec<i128> = p.iter().map(|&c| c as i128).collect();
    let mut quot = vec![0i128; p.len() + 1 - k];
    for j in (0..quot.len()).rev() {
        let c = rem[j + k - 1];
        quot[j] = c;
        for t in 0..k {
            rem[j + t] -= c;
        }
    }
    if rem.iter().any(|&c| c != 0) || quot.iter().any(|&c| c < 0) {
        return None;
    }
    Some(quot.into_iter().map(|c| c as u64).collect())
}

/// Largest divisor first, backtracking over non-increasing sequences.
pub fn factor_q_integers(p: &[u64]) -> Option<Vec<usize>> {
    fn search(p: &[u64], max_k: usize) -> Option<Vec<usize>> {
        if p == [1] {
            return Some(Vec::new());
        }
        for k in (2..=max_k.min(p.len())).rev() {
            if let Some(q) = divide_q_integer(p, k) {
                if let Some(mut rest) = search(&q, k) {
                    rest.push(k);
                    return Some(rest);
                }
            }
        }
        None
    }
    let mut out = search(p, p.len())?;
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{positive_roots, CartanType};

    fn system(t: &str) -> RootSystemData {
        positive_roots(CartanType::parse(t).unwrap())
    }

    #[test]
    fn small_intervals() {
        let a2 = system("A2");
        let p = bruhat_poincare(&WeylElement::longest(&a2), &a2);
        assert_eq!(p.coefficients, vec![1, 2, 2, 1]);
        assert_eq!(p.factors, Some(vec![2, 3]));
        let s1 = bruhat_poincare(&WeylElement::parse("s1", &a2).unwrap(), &a2);
        assert_eq!(s1.coefficients, vec![1, 1]);
        assert_eq!(s1.factors, Some(vec![2]));
        let e = bruhat_poincare(&WeylElement::identity(), &a2);
        assert_eq!(e.factors, Some(vec![]));
    }

    #[test]
    fn whole_groups() {
        // |W| and the degrees of the basic invariants
        for (t, order, degrees) in [
            ("A3", 24, vec![2, 3, 4]),
            ("B3", 48, vec![2, 4, 6]),
            ("G2", 12, vec![2, 6]),
            ("D4", 192, vec![2, 4, 4, 6]),
        ] {
            let r = system(t);
            let p = bruhat_poincare(&WeylElement::longest(&r), &r);
            assert_eq!(p.coefficients.iter().sum::<u64>(), order, "{t}");
            assert_eq!(p.factors, Some(degrees), "{t}");
        }
    }

    #[test]
    fn singular_element() {
        let a3 = system("A3");
        let p = bruhat_poincare(&WeylElement::parse("3,4,1,2", &a3).unwrap(), &a3);
        assert_eq!(p.coefficients, vec![1, 3, 5, 4, 1]);
        assert_eq!(p.factors, None);
    }

    #[test]
    fn division() {
        assert_eq!(divide_q_integer(&[1, 2, 2, 1], 3), Some(vec![1, 1]));
        assert_eq!(divide_q_integer(&[1, 2, 1], 3), None);
        assert_eq!(factor_q_integers(&[1, 2, 1]), Some(vec![2, 2]));
        assert_eq!(factor_q_integers(&[1, 1, 1, 1]), Some(vec![4]));
    }
}
