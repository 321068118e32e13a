//! Command-line front end. `run` does all the work and returns the exit code
//! with the text to print, so it can be tested without spawning processes.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::groundring::{HalfInt, LaurentSeries2};
use crate::hecke::{homfly, Dictionary};
use crate::koszul::{freeness_check, hochschild_dims, normalize_series};
use crate::rouquier::{
    euler_characteristic, kr_homology, kr_homology_normalized, BraidWord, RouquierError,
    TriplyGradedTable,
};
use crate::soergel::SoergelBimodule;
use crate::weyl::{
    bruhat_poincare, is_smooth_type_a, positive_roots, smooth_degrees, smooth_hilbert_series,
    CartanType, Pad, WeylElement, WeylError,
};

pub const EXIT_OK: i32 = 0;
/// A check ran and did not hold.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "hh-soergel",
    version,
    about = "Hochschild homology of Soergel bimodules and braid closures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PadArg {
    /// `n` entries in type A_{n-1} (polynomial ring in n variables).
    Gl,
    /// `rank` entries.
    Sl,
    /// No padding.
    None,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hochschild homology of a Bott-Samelson bimodule.
    BsHh {
        /// Simple reflections, e.g. "1 2 1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Number of polynomial variables (defaults to the largest letter plus one).
        #[arg(long)]
        n: Option<usize>,
        /// Highest q-degree computed.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        cutoff: i64,
        /// Divide the series by its lowest monomial.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        normalize: bool,
    },
    /// Triply graded homology of a braid closure.
    Kr {
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        cutoff: i64,
        /// Apply the Markov normalization.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        normalize: bool,
    },
    /// HOMFLY-PT polynomial of a braid closure.
    Homfly {
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Compares the Euler characteristic of the homology with HOMFLY-PT.
    EulerCheck {
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
        cutoff: i64,
    },
    /// Exponents k and the predicted Hilbert series for a smooth element.
    SmoothSeries {
        /// Cartan type such as "A2".
        #[arg(long = "type")]
        cartan: String,
        /// "w0", a reduced word "s1 s2", or one-line notation "3,1,2".
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = PadArg::Gl)]
        pad: PadArg,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        cutoff: i64,
    },
    /// Poincaré polynomial of the Bruhat interval below an element.
    SchubertPoincare {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        element: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Inapplicable(_) => EXIT_INAPPLICABLE,
            CliError::Truncation(_) => EXIT_TRUNCATION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Inapplicable(_) => "inapplicable",
            CliError::Truncation(_) => "truncation",
        }
    }
}

impl From<RouquierError> for CliError {
    fn from(e: RouquierError) -> Self {
        match e {
            RouquierError::CutoffTooSmall { .. } => CliError::Truncation(e.to_string()),
            RouquierError::NoStrands
            | RouquierError::LetterOutOfRange { .. }
            | RouquierError::BadLetter(_) => CliError::Parse(e.to_string()),
            other => CliError::Inapplicable(other.to_string()),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::NegativeMultiplicity { .. } | WeylError::PadTooSmall { .. } => {
                CliError::Inapplicable(e.to_string())
            }
            _ => CliError::Parse(e.to_string()),
        }
    }
}

fn parse_letters(s: &str) -> Result<Vec<i32>, CliError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<i32>() {
            Ok(0) => Err(CliError::Parse("generator 0 does not exist".into())),
            Ok(v) => Ok(v),
            Err(_) => Err(CliError::Parse(format!("bad token {t:?}"))),
        })
        .collect()
}

/// Signed generators separated by whitespace or commas; `strands` defaults
/// to the largest index plus one.
pub fn parse_braid(s: &str, strands: Option<usize>) -> Result<BraidWord, CliError> {
    let letters = parse_letters(s)?;
    let strands = match strands {
        Some(n) => n,
        None if letters.is_empty() => {
            return Err(CliError::Parse(
                "empty braid needs an explicit strand count".into(),
            ));
        }
        None => {
            letters
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .unwrap_or(0)
                + 1
        }
    };
    BraidWord::new(strands, letters).map_err(CliError::from)
}

/// A Bott-Samelson word of positive indices and its variable count.
pub fn parse_word(s: &str, n: Option<usize>) -> Result<(Vec<usize>, usize), CliError> {
    let letters = parse_letters(s)?;
    if letters.iter().any(|&l| l < 0) {
        return Err(CliError::Parse(
            "Bott-Samelson words use positive indices".into(),
        ));
    }
    let word: Vec<usize> = letters.iter().map(|&l| l as usize).collect();
    let n = match n {
        Some(n) => n,
        None if word.is_empty() => return Err(CliError::Parse("empty word needs --n".into())),
        None => word.iter().max().unwrap() + 1,
    };
    if n == 0 {
        return Err(CliError::Parse("--n must be at least 1".into()));
    }
    if let Some(&i) = word.iter().find(|&&i| i >= n) {
        return Err(CliError::Parse(format!(
            "index {i} needs more than {n} variables"
        )));
    }
    Ok((word, n))
}

fn series_json(s: &LaurentSeries2) -> serde_json::Value {
    json!(s.to_string())
}

fn table_text(t: &TriplyGradedTable) -> String {
    let mut out = String::from("a\tq\tt\tdim\n");
    for (a, q, h, m) in t.entries() {
        out.push_str(&format!("{a}\t{q}\t{h}\t{m}\n"));
    }
    out
}

fn bs_hh(
    word_text: &str,
    n: Option<usize>,
    cutoff: i64,
    normalize: bool,
    format: Format,
) -> Result<String, CliError> {
    let (word, n) = parse_word(word_text, n)?;
    let m = SoergelBimodule::bott_samelson(&word, n).map_err(|e| CliError::Parse(e.to_string()))?;
    let table =
        hochschild_dims(&m, 2 * cutoff).map_err(|e| CliError::Inapplicable(e.to_string()))?;
    if table.is_empty() {
        return Err(CliError::Truncation(format!(
            "no homology through q^{cutoff}"
        )));
    }
    let raw = table.series();
    let (series, shift) = if normalize {
        normalize_series(&raw)
    } else {
        (raw, (HalfInt::ZERO, HalfInt::ZERO))
    };
    let report = freeness_check(&series, n as u32);
    let verdict = if report.free { "PASS" } else { "FAIL" };
    Ok(match format {
        Format::Json => json!({
            "word": word,
            "n": n,
            "table": table.to_json(),
            "series": series_json(&series),
            "shift": {"a": shift.0, "q": shift.1},
            "freeness": {"free": report.free, "fiber": series_json(&report.fiber)},
        })
        .to_string(),
        Format::Text => {
            let mut out =
                format!("bott-samelson word {word:?} over {n} variables\nh\tdegree\tdim\n");
            for (h, p, d) in table.entries() {
                out.push_str(&format!("{h}\t{p}\t{d}\n"));
            }
            if normalize {
                out.push_str(&format!("normalized by a^{} q^{}\n", shift.0, shift.1));
            }
            out.push_str(&format!(
                "series: {series}\nfiber: {}\nfreeness: {verdict}\n",
                report.fiber
            ));
            out
        }
    })
}

fn kr(
    braid: &str,
    strands: Option<usize>,
    cutoff: i64,
    normalize: bool,
    format: Format,
) -> Result<String, CliError> {
    let b = parse_braid(braid, strands)?;
    let c = HalfInt::from_int(cutoff);
    let table = if normalize {
        kr_homology_normalized(&b, c)?
    } else {
        kr_homology(&b, c)?
    };
    Ok(match format {
        Format::Json => {
            json!({"braid": b.letters(), "strands": b.strands(), "table": table.to_json()})
                .to_string()
        }
        Format::Text => {
            let (a, q, t) = table.shift();
            format!(
                "braid {b}\nshift a^{a} q^{q} t^{t}, exact through q^{}\n{}",
                table.cutoff(),
                table_text(&table)
            )
        }
    })
}

fn euler_check(
    braid: &str,
    strands: Option<usize>,
    cutoff: i64,
    format: Format,
) -> Result<(bool, String), CliError> {
    let b = parse_braid(braid, strands)?;
    let c = HalfInt::from_int(cutoff);
    let table = kr_homology_normalized(&b, c)?;
    let euler = euler_characteristic(&table);
    let p = homfly(&b);
    let predicted = Dictionary::frozen()
        .euler_series(&p, c)
        .ok_or_else(|| CliError::Inapplicable("dictionary cannot expand this polynomial".into()))?;
    let ok = euler.agrees_through(&predicted, c);
    let verdict = if ok { "PASS" } else { "FAIL" };
    let out = match format {
        Format::Json => json!({
            "braid": b.letters(),
            "strands": b.strands(),
            "homfly": p.to_string(),
            "euler": series_json(&euler),
            "predicted": series_json(&predicted),
            "cutoff": c,
            "pass": ok,
        })
        .to_string(),
        Format::Text => {
            format!("braid {b}\nhomfly: {p}\neuler: {euler}\npredicted: {predicted}\n{verdict}\n")
        }
    };
    Ok((ok, out))
}

fn smooth_series(
    cartan: &str,
    element: &str,
    pad: PadArg,
    cutoff: i64,
    format: Format,
) -> Result<String, CliError> {
    let r = positive_roots(CartanType::parse(cartan)?);
    let w = WeylElement::parse(element, &r)?;
    let pad = match pad {
        PadArg::Gl => Pad::Gl,
        PadArg::Sl => Pad::Sl,
        PadArg::None => Pad::None,
    };
    let k = smooth_degrees(&w, &r, pad)?;
    let series = smooth_hilbert_series(&k, HalfInt::from_int(cutoff));
    let smooth =
        (r.cartan_type.family == 'A').then(|| is_smooth_type_a(&w.permutation(r.rank() + 1)));
    let verdict = match smooth {
        Some(true) => "smooth",
        Some(false) => "singular",
        None => "not checked outside type A",
    };
    Ok(match format {
        Format::Json => json!({
            "type": r.cartan_type.to_string(),
            "element": w.word(),
            "k": k,
            "series": series_json(&series),
            "smooth": smooth,
        })
        .to_string(),
        Format::Text => format!(
            "element {w} in {}\nk: {k:?}\nseries: {series}\nsmoothness: {verdict}\n",
            r.cartan_type
        ),
    })
}

fn q_polynomial(coefficients: &[u64]) -> String {
    let mut s = LaurentSeries2::zero();
    for (j, &c) in coefficients.iter().enumerate() {
        s.add_term(
            HalfInt::ZERO,
            HalfInt::from_int(j as i64),
            crate::groundring::rat(c as i64),
        );
    }
    s.to_string()
}

fn schubert_poincare(cartan: &str, element: &str, format: Format) -> Result<String, CliError> {
    let r = positive_roots(CartanType::parse(cartan)?);
    let w = WeylElement::parse(element, &r)?;
    let p = bruhat_poincare(&w, &r);
    Ok(match format {
        Format::Json => json!({
            "type": r.cartan_type.to_string(),
            "element": w.word(),
            "coefficients": p.coefficients,
            "factors": p.factors,
        })
        .to_string(),
        Format::Text => {
            let factors = match &p.factors {
                Some(f) => format!("{f:?}"),
                None => "does not factor".into(),
            };
            format!(
                "element {w} in {}\nP(q) = {}\nfactors: {factors}\n",
                r.cartan_type,
                q_polynomial(&p.coefficients)
            )
        }
    })
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    let result = match &cli.command {
        Command::BsHh {
            word,
            n,
            cutoff,
            normalize,
        } => bs_hh(word, *n, *cutoff, *normalize, format).map(|s| (true, s)),
        Command::Kr {
            braid,
            strands,
            cutoff,
            normalize,
        } => kr(braid, *strands, *cutoff, *normalize, format).map(|s| (true, s)),
        Command::Homfly { braid, strands } => parse_braid(braid, *strands).map(|b| {
            let p = homfly(&b);
            let s = match format {
                Format::Json => {
                    json!({"braid": b.letters(), "strands": b.strands(), "homfly": p.to_string()})
                        .to_string()
                }
                Format::Text => format!("{p}\n"),
            };
            (true, s)
        }),
        Command::EulerCheck {
            braid,
            strands,
            cutoff,
        } => euler_check(braid, *strands, *cutoff, format),
        Command::SmoothSeries {
            cartan,
            element,
            pad,
            cutoff,
        } => smooth_series(cartan, element, *pad, *cutoff, format).map(|s| (true, s)),
        Command::SchubertPoincare { cartan, element } => {
            schubert_poincare(cartan, element, format).map(|s| (true, s))
        }
    };
    match result {
        Ok((ok, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = match format {
                Format::Json => {
                    json!({"error": e.kind(), "message": e.to_string()}).to_string() + "\n"
                }
                Format::Text => format!("error: {e}\n"),
            };
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> Outcome {
        let mut full = vec!["hh-soergel"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn braid_parsing() {
        let b = parse_braid("1 1 1", None).unwrap();
        assert_eq!((b.letters(), b.strands()), (&[1, 1, 1][..], 2));
        assert_eq!(parse_braid("1 -2 1 -2", None).unwrap().strands(), 3);
        assert!(matches!(parse_braid("0 1", None), Err(CliError::Parse(_))));
        assert!(matches!(parse_braid("  ", None), Err(CliError::Parse(_))));
        assert_eq!(parse_braid("", Some(1)).unwrap().strands(), 1);
        assert!(matches!(parse_braid("3", Some(3)), Err(CliError::Parse(_))));
        assert_eq!(parse_braid("1,-2", None).unwrap().letters(), &[1, -2]);
    }

    #[test]
    fn truncation_maps_to_its_exit_code() {
        let b = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let e: CliError = kr_homology(&b, HalfInt::from_int(-5)).unwrap_err().into();
        assert_eq!(e.exit_code(), EXIT_TRUNCATION);
        assert_eq!(e.kind(), "truncation");
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("1 2 1", None).unwrap(), (vec![1, 2, 1], 3));
        assert!(parse_word("-1", None).is_err());
        assert!(parse_word("2", Some(2)).is_err());
        assert_eq!(parse_word("", Some(2)).unwrap(), (vec![], 2));
    }

    #[test]
    fn bs_hh_example() {
        let out = invoke(&["bs-hh", "--word", "1", "--n", "2", "--cutoff", "9"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("freeness: PASS"));
        let json = invoke(&[
            "--format", "json", "bs-hh", "--word", "1", "--n", "2", "--cutoff", "9",
        ]);
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["freeness"]["free"], true);
        assert_eq!(v["shift"]["q"], -0.5);
    }

    #[test]
    fn smooth_series_example() {
        let out = invoke(&[
            "smooth-series",
            "--type",
            "A2",
            "--element",
            "w0",
            "--pad",
            "gl",
        ]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("k: [1, 2, 3]"), "{}", out.stdout);
        let bad = invoke(&["smooth-series", "--type", "A3", "--element", "2,4,1,3"]);
        assert_eq!(bad.code, EXIT_INAPPLICABLE);
        assert_eq!(
            invoke(&["smooth-series", "--type", "Q2", "--element", "w0"]).code,
            EXIT_PARSE
        );
    }

    #[test]
    fn homfly_and_euler() {
        assert_eq!(
            invoke(&["homfly", "--braid", "1 1 1"]).stdout,
            "v^-2*z^2 + 2*v^-2 - v^-4\n"
        );
        let check = invoke(&["euler-check", "--braid", "1 1 1", "--cutoff", "4"]);
        assert_eq!(check.code, EXIT_OK, "{}", check.stdout);
        assert!(check.stdout.ends_with("PASS\n"));
        assert_eq!(invoke(&["homfly", "--braid", "0"]).code, EXIT_PARSE);
    }

    #[test]
    fn schubert_output() {
        let out = invoke(&["schubert-poincare", "--type", "A2", "--element", "w0"]);
        assert!(out.stdout.contains("factors: [2, 3]"), "{}", out.stdout);
        let singular = invoke(&["schubert-poincare", "--type", "A3", "--element", "3,4,1,2"]);
        assert!(singular.stdout.contains("does not factor"));
    }

    #[test]
    fn deterministic_output() {
        let args = ["--format", "json", "kr", "--braid", "1 1", "--cutoff", "3"];
        let first = invoke(&args);
        assert_eq!(first.code, EXIT_OK, "{}", first.stderr);
        assert_eq!(first, invoke(&args));
        let v: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
        let t = TriplyGradedTable::from_json(&v["table"]).unwrap();
        assert_eq!(t.to_json(), v["table"]);
    }
}
