//! Computation and rendering behind the subcommands.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use kr_core::chainred::{BigradedDimensions, PoincareEntry};
use kr_core::oracle::{homfly_of_word, homfly_twist_closure, sl2_cube, specialize_sln, Family as Knot};
use kr_core::twist::{
    self, clasp_word_complex, close_tangle, describe, parallel_thin_complex, ScalarComplex,
};
use kr_core::{Closure, Error, Laurent, Result, TangleWord};
use serde::{Deserialize, Serialize};

/// `println!` that ignores a closed stdout.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Family {
    Parallel,
    Clasp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTerm {
    pub q: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oracle {
    /// Ranks from the sl₂ cube; only available at `n = 2`.
    pub poincare: Option<Vec<PoincareEntry>>,
    pub euler: Vec<EulerTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub word: String,
    pub n: u32,
    pub poincare: Vec<PoincareEntry>,
    pub euler: Vec<EulerTerm>,
    pub oracle: Oracle,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn euler_terms(l: &Laurent) -> Vec<EulerTerm> {
    l.coeffs().iter().map(|(&q, c)| EulerTerm { q, coeff: c.to_string() }).collect()
}

fn sorted(h: &BigradedDimensions) -> Vec<PoincareEntry> {
    let mut v = h.entries();
    v.sort_by_key(|e| (e.t, e.q));
    v
}

fn parse(word: &str) -> Result<TangleWord> {
    word.parse()
}

fn closed(word: &str) -> Result<TangleWord> {
    let w = parse(word)?;
    if !w.is_closed() {
        return Err(Error::Parse(format!("\"{word}\" is open; close it with a trailing !")));
    }
    Ok(w)
}

fn dump_scalar(label: &str, c: &ScalarComplex) {
    eprintln!("# {label}");
    for t in c.degrees() {
        let qs: Vec<String> = c.objects(t).iter().map(|q| format!("q^{q}")).collect();
        eprintln!("C{t}: {}", qs.join(" ⊕ "));
    }
}

/// Closed complex of a word in the chosen family.
fn closed_complex(w: &TangleWord, n: u32, family: Family, dump: bool) -> Result<ScalarComplex> {
    match family {
        Family::Parallel => {
            if dump && n == 2 {
                eprintln!("# reduced tangle complex\n{}", describe(&parallel_thin_complex(w, n)?));
            }
            twist::closed_complex(w, n)
        }
        Family::Clasp => {
            let t = clasp_word_complex(&w.generators, n)?;
            if dump {
                eprintln!("# reduced tangle complex\n{}", describe(&t));
            }
            close_tangle(&t, w.closure.unwrap_or(Closure::Braid))
        }
    }
}

impl Report {
    pub fn compute(word: &str, n: u32, family: Family, dump: bool) -> Result<Report> {
        let w = closed(word)?;
        if n == 0 {
            return Err(Error::Unsupported("n must be at least 1".into()));
        }
        let mut c = closed_complex(&w, n, family, dump)?;
        if dump {
            dump_scalar("closed complex", &c);
        }
        c.simplify()?;
        if dump {
            dump_scalar("after elimination", &c);
        }
        let h = c.homology()?;
        let (homfly, cube) = match family {
            Family::Parallel => {
                let cube = if n == 2 { Some(sl2_cube(&w)?) } else { None };
                (homfly_of_word(&w)?, cube)
            }
            Family::Clasp => (homfly_twist_closure(2 * w.net_twist(), Knot::Antiparallel)?, None),
        };
        let oracle = Oracle {
            poincare: cube.map(|m| m.into_iter().map(|((t, q), rank)| PoincareEntry { t, q, rank }).collect()),
            euler: euler_terms(&specialize_sln(&homfly, n)?),
        };
        let poincare = sorted(&h);
        let euler = euler_terms(&h.euler());
        let matches = euler == oracle.euler && oracle.poincare.as_ref().is_none_or(|p| *p == poincare);
        Ok(Report { word: word.to_string(), n, poincare, euler, oracle, matches })
    }

    /// Compute, or read from and write to the cache directory.
    pub fn cached(word: &str, n: u32, family: Family, cache: Option<&Path>, dump: bool) -> Result<Report> {
        let Some(dir) = cache else { return Report::compute(word, n, family, dump) };
        let key: String = word.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        let path = dir.join(format!("{family:?}-n{n}-{key}.json").to_lowercase());
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(r) = serde_json::from_str::<Report>(&text) {
                if r.word == word && r.n == n {
                    return Ok(r);
                }
            }
        }
        let r = Report::compute(word, n, family, dump)?;
        let io = |e: std::io::Error| Error::Unsupported(format!("cache {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(&path, serde_json::to_string_pretty(&r).expect("serializable")).map_err(io)?;
        Ok(r)
    }

    /// Print and return whether the result matches the oracle.
    pub fn print(&self, format: Format, euler_only: bool) -> bool {
        match format {
            Format::Json => outln!("{}", serde_json::to_string_pretty(self).expect("serializable")),
            Format::Table if euler_only => {
                outln!("{:>6} {:>12} {:>12}", "q", "coeff", "oracle");
                let mut qs: Vec<i64> = self.euler.iter().chain(&self.oracle.euler).map(|e| e.q).collect();
                qs.sort_unstable();
                qs.dedup();
                let find = |v: &[EulerTerm], q| v.iter().find(|e| e.q == q).map_or("0".to_string(), |e| e.coeff.clone());
                for q in qs {
                    outln!("{q:>6} {:>12} {:>12}", find(&self.euler, q), find(&self.oracle.euler, q));
                }
                outln!("match: {}", self.matches);
            }
            Format::Table => {
                outln!("{:>4} {:>6} {:>6}", "t", "q", "rank");
                for e in &self.poincare {
                    outln!("{:>4} {:>6} {:>6}", e.t, e.q, e.rank);
                }
                outln!("match: {}", self.matches);
            }
        }
        self.matches
    }
}

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    pass: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    n: u32,
    checks: Vec<CheckOut<'a>>,
    #[serde(rename = "match")]
    matches: bool,
}

pub fn verify_core(n: u32, format: Format) -> Result<bool> {
    if n == 0 {
        return Err(Error::Unsupported("n must be at least 1".into()));
    }
    let r = twist::verify_core(n)?;
    let ok = r.passed();
    match format {
        Format::Json => {
            let out = VerifyOut {
                n,
                checks: r.checks.iter().map(|c| CheckOut { name: &c.name, pass: c.pass, detail: &c.detail }).collect(),
                matches: ok,
            };
            outln!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Table => {
            for c in &r.checks {
                outln!("{:<32} {}", c.name, if c.pass { "ok" } else { "MISMATCH" });
            }
            outln!("match: {ok}");
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct Degree {
    t: i64,
    objects: Vec<String>,
}

#[derive(Serialize)]
struct Differential {
    t: i64,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Reduced {
    word: String,
    n: u32,
    degrees: Vec<Degree>,
    differentials: Vec<Differential>,
}

/// Reduced complex of a word: a tangle complex for open words (thin
/// pipelines only), the closed complex over Q otherwise.
pub fn reduce(word: &str, n: u32, family: Family, format: Format, dump: bool) -> Result<bool> {
    let w = parse(word)?;
    let (degrees, differentials) = if w.is_closed() {
        let mut c = closed_complex(&w, n, family, dump)?;
        c.simplify()?;
        let degrees = c
            .degrees()
            .into_iter()
            .map(|t| Degree { t, objects: c.objects(t).iter().map(|q| format!("q^{q}")).collect() })
            .collect();
        let differentials = c
            .degrees()
            .into_iter()
            .map(|t| Differential { t, entries: c.differential(t).iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect() })
            .filter(|d| d.entries.iter().any(|r| !r.is_empty()))
            .collect();
        (degrees, differentials)
    } else {
        let t = match family {
            Family::Parallel if n == 2 => parallel_thin_complex(&w, n)?,
            Family::Parallel => {
                return Err(Error::Unsupported("open parallel words reduce in the thin category only at n = 2".into()))
            }
            Family::Clasp => {
                if dump {
                    eprintln!("# raw clasp\n{}", describe(&twist::clasp_raw_complex(n)?));
                }
                clasp_word_complex(&w.generators, n)?
            }
        };
        let degrees = t
            .degrees()
            .into_iter()
            .map(|d| Degree { t: d, objects: t.objects(d).iter().map(|o| o.to_string()).collect() })
            .collect();
        let differentials = t
            .degrees()
            .into_iter()
            .map(|d| Differential { t: d, entries: twist::render_matrix(&t.differential(d)) })
            .filter(|d| d.entries.iter().any(|r| !r.is_empty()))
            .collect();
        (degrees, differentials)
    };
    let out = Reduced { word: word.to_string(), n, degrees, differentials };
    match format {
        Format::Json => outln!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Table => {
            for d in &out.degrees {
                outln!("C{}: {}", d.t, d.objects.join(" ⊕ "));
            }
            for d in &out.differentials {
                outln!("d{}: {:?}", d.t, d.entries);
            }
        }
    }
    Ok(true)
}
