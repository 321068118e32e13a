//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with `cargo test --test acceptance`. Failures are reported but the
//! process exits 0 unless `ACCEPTANCE_STRICT` is set, so the rest of the
//! workspace tests still run.

use std::time::Instant;

use clap::Parser;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use hh_soergel::cli::{self, Cli, EXIT_OK};
use hh_soergel::groundring::{rat, HalfInt, LaurentSeries2, Monomial, Poly};
use hh_soergel::hecke::{homfly, Dictionary};
use hh_soergel::koszul::{freeness_check, hochschild_dims, normalize_series, BigradedTable};
use hh_soergel::rouquier::{
    braid_complex, crossing_complex, euler_characteristic, kr_homology_normalized, BimoduleComplex,
    BraidWord,
};
use hh_soergel::soergel::{hom_space, SoergelBimodule};
use hh_soergel::weyl::{
    bruhat_poincare, is_smooth_type_a, positive_roots, smooth_degrees, CartanType, Pad, WeylElement,
};

type Outcome = Result<String, String>;

/// Name, check, runtime budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

fn h(v: i64) -> HalfInt {
    HalfInt::from_int(v)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Π (1 + a q^k) / (1 - q)^{len}` by counting: the a^i q^j coefficient sums,
/// over i-subsets S, the number of monomials of degree j - ΣS in len variables.
fn product_oracle(k: &[usize], through: i64) -> LaurentSeries2 {
    let n = k.len() as i64;
    let mut s = LaurentSeries2::zero_through(h(through));
    for mask in 0u32..(1 << k.len()) {
        let i = mask.count_ones() as i64;
        let shift: i64 = (0..k.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| k[b] as i64)
            .sum();
        for j in shift..=through {
            let c = if n == 0 {
                i64::from(j == shift)
            } else {
                binomial(j - shift + n - 1, n - 1)
            };
            s.add_term(h(i), h(j), rat(c));
        }
    }
    s
}

fn normalized_hh(word: &[usize], n: usize, cutoff_q: i64) -> (BigradedTable, LaurentSeries2) {
    let m = SoergelBimodule::bott_samelson(word, n).expect("bimodule");
    let t = hochschild_dims(&m, 2 * cutoff_q).expect("hochschild homology");
    let s = normalize_series(&t.series()).0;
    (t, s)
}

fn all_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..=letters).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn braid(n: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(n, w.to_vec()).expect("braid")
}

fn bs_hilbert_series() -> Outcome {
    let cli = Cli::try_parse_from([
        "hh-soergel",
        "--format",
        "json",
        "bs-hh",
        "--word",
        "1",
        "--n",
        "2",
        "--cutoff",
        "12",
    ])
    .map_err(|e| e.to_string())?;
    let out = cli::run(&cli);
    if out.code != EXIT_OK {
        return Err(format!("exit code {}: {}", out.code, out.stderr));
    }
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let series: LaurentSeries2 = doc["series"]
        .as_str()
        .ok_or("no series")?
        .parse()
        .map_err(|e| format!("{e:?}"))?;
    let expected = product_oracle(&[1, 2], 10);
    if series.agrees_through(&expected, h(10)) {
        Ok(format!(
            "series through q^10 matches (1+aq)(1+aq^2)/(1-q)^2, shift q^{}",
            doc["shift"]["q"]
        ))
    } else {
        Err(format!(
            "got {}, expected {}",
            series.truncated(h(10)),
            expected
        ))
    }
}

/// Normalized BS(1,2,1) minus the longest-element summand, and that remainder's lowest monomial.
fn bs121_remainder(
    through: i64,
) -> Result<(LaurentSeries2, LaurentSeries2, (HalfInt, HalfInt)), String> {
    let (_, full) = normalized_hh(&[1, 2, 1], 3, through);
    let full = full.truncated(h(through));
    let rem = full
        .sub(&product_oracle(&[1, 2, 3], through))
        .truncated(h(through));
    let (a, q, _) = rem.lowest_term().ok_or("remainder vanishes")?;
    Ok((full, rem, (a, q)))
}

fn decomposition_sum() -> Outcome {
    let (_, rem, (a, q)) = bs121_remainder(8)?;
    if !rem.is_nonnegative() {
        return Err(format!("remainder has negative coefficients: {rem}"));
    }
    let expected = product_oracle(&[1, 1, 2], 10).shift(a, q);
    if rem.agrees_through(&expected, h(8)) {
        Ok(format!(
            "remainder = a^{a} q^{q} * Series(1,1,2) through q^8"
        ))
    } else {
        Err(format!(
            "remainder {rem} differs from {}",
            expected.truncated(h(8))
        ))
    }
}

fn freeness() -> Outcome {
    let words = all_words(2, 3);
    let mut bad = Vec::new();
    for w in &words {
        let (_, s) = normalized_hh(w, 3, 12);
        if !freeness_check(&s, 3).free {
            bad.push(format!("{w:?}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} words free at cutoff q^12", words.len()))
    } else {
        Err(format!("not free: {}", bad.join(", ")))
    }
}

fn fiber_counts() -> Outcome {
    let (_, bs) = normalized_hh(&[1], 2, 12);
    let single = freeness_check(&bs, 2).fiber.sum_coefficients();
    // the fiber has degree 6, so the series must survive the (1-q)^3 truncation
    let (full, rem, _) = bs121_remainder(10)?;
    let summand = full.sub(&rem);
    let fiber = freeness_check(&summand, 3).fiber;
    let total = fiber.sum_coefficients();
    if single == rat(4) && total == rat(8) {
        Ok(format!(
            "B_s fiber sums to {single}, longest summand fiber {fiber} sums to {total}"
        ))
    } else {
        Err(format!("fiber sums {single} and {total}, expected 4 and 8"))
    }
}

fn exponents() -> Outcome {
    let mut agree = 0;
    let mut mismatches = Vec::new();
    for n in [3usize, 4] {
        let r = positive_roots(CartanType::new('A', n - 1).map_err(|e| e.to_string())?);
        let mut p: Vec<usize> = (1..=n).collect();
        let mut perms = vec![p.clone()];
        while next_permutation(&mut p) {
            perms.push(p.clone());
        }
        for p in perms.into_iter().filter(|p| is_smooth_type_a(p)) {
            let w = WeylElement::from_permutation(&p).map_err(|e| e.to_string())?;
            let bruhat = bruhat_poincare(&w, &r).factors;
            let counted = smooth_degrees(&w, &r, Pad::None);
            match (&bruhat, &counted) {
                (Some(f), Ok(k)) if f == k => agree += 1,
                _ => {
                    let shown = |s: String| s.replace(' ', "");
                    let ps: String = p.iter().map(|d| d.to_string()).collect();
                    let l = match &counted {
                        Ok(k) => shown(format!("{k:?}")),
                        Err(e) => format!("error ({e})"),
                    };
                    mismatches.push(format!(
                        "{ps}: bruhat {} height count {l}",
                        shown(format!("{bruhat:?}"))
                    ));
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{agree} smooth permutations agree"))
    } else {
        Err(format!(
            "{agree} agree, {} differ: {}",
            mismatches.len(),
            mismatches.join("; ")
        ))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn invariance() -> Outcome {
    let c = h(8);
    let pairs = [
        (braid(3, &[1, 2, 1]), braid(3, &[2, 1, 2])),
        (braid(2, &[1]), braid(1, &[])),
        (braid(2, &[1, -1]), braid(2, &[])),
    ];
    let mut bad = Vec::new();
    for (x, y) in &pairs {
        let tx = kr_homology_normalized(x, c).map_err(|e| e.to_string())?;
        let ty = kr_homology_normalized(y, c).map_err(|e| e.to_string())?;
        if tx.is_empty() || !tx.agrees_with(&ty) {
            bad.push(format!("{x} vs {y}"));
        }
    }
    if bad.is_empty() {
        Ok("3 pairs agree at cutoff 8".into())
    } else {
        Err(format!("tables differ: {}", bad.join(", ")))
    }
}

fn decategorification() -> Outcome {
    let c = h(8);
    let dict = Dictionary::frozen();
    let mut bad = Vec::new();
    for b in [
        braid(1, &[]),
        braid(2, &[1, 1]),
        braid(2, &[1, 1, 1]),
        braid(3, &[1, -2, 1, -2]),
    ] {
        let euler =
            euler_characteristic(&kr_homology_normalized(&b, c).map_err(|e| e.to_string())?);
        let p = homfly(&b);
        let predicted = dict.euler_series(&p, c).ok_or("dictionary failed")?;
        if !euler.agrees_through(&predicted, c) {
            bad.push(format!("{b}: euler {euler}, homfly {p} gives {predicted}"));
        }
    }
    if bad.is_empty() {
        Ok("unknot, Hopf link, trefoil, figure-eight match through q^8".into())
    } else {
        Err(bad.join("; "))
    }
}

fn properties() -> Outcome {
    let mut complexes: Vec<BimoduleComplex> = Vec::new();
    for n in [2usize, 3] {
        for i in 1..n {
            for positive in [true, false] {
                complexes.push(crossing_complex(i, positive, n).map_err(|e| e.to_string())?);
            }
        }
    }
    for b in [
        braid(2, &[1, 1]),
        braid(2, &[1, 1, 1]),
        braid(2, &[1, -1]),
        braid(3, &[1, 2, 1]),
        braid(3, &[1, -2, 1, -2]),
    ] {
        for simplify in [false, true] {
            complexes.push(braid_complex(&b, simplify).map_err(|e| e.to_string())?);
        }
    }
    for (k, c) in complexes.iter().enumerate() {
        if !c.squares_to_zero() || !c.differentials_valid() {
            return Err(format!("complex {k} fails d^2 = 0"));
        }
    }

    let mut bimodules: Vec<SoergelBimodule> = all_words(2, 3)
        .iter()
        .map(|w| SoergelBimodule::bott_samelson(w, 3))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for c in &complexes {
        bimodules.extend(c.degrees().map(|t| c.term(t)));
    }
    if let Some(m) = bimodules.iter().find(|m| !m.validate().passed()) {
        return Err(format!(
            "right actions fail to commute on a rank {} bimodule",
            m.rank()
        ));
    }

    let mut runner = TestRunner::deterministic();
    let samples = 200;
    for _ in 0..samples {
        let p = random_poly(&mut runner, 3);
        let g = random_poly(&mut runner, 3);
        for i in 1..3 {
            let di = |x: &Poly| x.demazure(i).expect("demazure");
            if !di(&di(&p)).is_zero() {
                return Err(format!("d{i}^2 {p} is nonzero"));
            }
            let lhs = di(&(&p * &g));
            let rhs = &(&di(&p) * &g) + &(&p.swap(i).expect("swap") * &di(&g));
            if lhs != rhs {
                return Err(format!("Leibniz fails for d{i} on {p} and {g}"));
            }
        }
    }

    for w in all_words(2, 2) {
        let m = SoergelBimodule::bott_samelson(&w, 3).map_err(|e| e.to_string())?;
        let t = hochschild_dims(&m, 12).map_err(|e| e.to_string())?;
        if t.regrade().unregrade() != t || t.unregrade().regrade() != t {
            return Err(format!("regrade is not invertible on {w:?}"));
        }
    }

    for n in [2usize, 3] {
        for i in 1..n {
            let bs = SoergelBimodule::bott_samelson(&[i], n).map_err(|e| e.to_string())?;
            let below = SoergelBimodule::unit(n, -1).map_err(|e| e.to_string())?;
            let above = SoergelBimodule::unit(n, 1).map_err(|e| e.to_string())?;
            let up = hom_space(&below, &bs, 0).map_err(|e| e.to_string())?.len();
            let down = hom_space(&bs, &above, 0).map_err(|e| e.to_string())?.len();
            if up != 1 || down != 1 {
                return Err(format!(
                    "crossing hom spaces for s{i} in {n} variables have dims {up}, {down}"
                ));
            }
        }
    }
    Ok(format!(
        "{} complexes, {} bimodules, {samples} polynomial pairs, regrade, crossing maps",
        complexes.len(),
        bimodules.len()
    ))
}

fn random_poly(runner: &mut TestRunner, nvars: usize) -> Poly {
    let terms = proptest::collection::vec(
        (proptest::collection::vec(0u32..4, nvars), -5i64..6, 1i64..4),
        0..6,
    );
    let value = terms.new_tree(runner).expect("sample").current();
    let mut p = Poly::zero(nvars);
    for (e, num, den) in value {
        let t = Poly::from_term(Monomial::new(e), hh_soergel::groundring::rat_frac(num, den));
        p = &p + &t;
    }
    p
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "B_s Hilbert series over GL_2",
            bs_hilbert_series,
            Some(10.0),
        ),
        (
            "BS(1,2,1) decomposition sum over GL_3",
            decomposition_sum,
            Some(300.0),
        ),
        (
            "type-A freeness of all words of length <= 3",
            freeness,
            Some(600.0),
        ),
        ("fiber dimension counts", fiber_counts, None),
        (
            "exponents of smooth permutations vs Bruhat factorization",
            exponents,
            Some(60.0),
        ),
        (
            "braid relation and Markov invariance",
            invariance,
            Some(600.0),
        ),
        (
            "Euler characteristic vs HOMFLY-PT",
            decategorification,
            Some(1800.0),
        ),
        ("property suites", properties, Some(300.0)),
    ];
    let mut failed = Vec::new();
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let secs = start.elapsed().as_secs_f64();
        if let (Ok(_), Some(limit)) = (&result, budget) {
            if secs > *limit {
                result = Err(format!("took {secs:.1}s, budget {limit}s"));
            }
        }
        match result {
            Ok(detail) => println!("PASS {}: {name} ({secs:.1}s) {detail}", k + 1),
            Err(detail) => {
                println!("FAIL {}: {name} ({secs:.1}s) {detail}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
