//! Local calculus for the maps between a circle with one or two thick edges
//! and its neighbouring arcs.
//!
//! The pattern is a circle (mark `C`) between a left arc (mark `L`) and a
//! right arc (mark `R`). Thick edge `A` joins the circle to the left arc,
//! thick edge `B` to the right arc. Zipping an edge is `χ₀`, unzipping is
//! `χ₁`, and the only relations needed are
//!
//! * `χ₁ ∘ χ₀ = (C - L)` on edge `A` and `(C - R)` on edge `B`,
//! * `S ∘ χ₀ᴮ ∘ χ₀ᴬ ∘ ι(p) = ε(C p) · saddle` for the square's saddle `S`,
//! * `ε(C^{n-1}) = 1` and `C^n = 0` on the circle.
//!
//! Dots on the arcs commute with everything and pass straight through.

use num_traits::Zero;

use super::cob::{Cob, CurveSet};
use super::planar::Planar;
use crate::error::{Error, Result};
use crate::ring::{Mark, Monomial, Polynomial, Rational};

pub const CIRCLE: Mark = Mark(100);
pub const LEFT: Mark = Mark(101);
pub const RIGHT: Mark = Mark(102);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    A,
    B,
}

impl Edge {
    fn index(self) -> usize {
        match self {
            Edge::A => 0,
            Edge::B => 1,
        }
    }

    /// The arc mark across this edge.
    pub fn arc(self) -> Mark {
        match self {
            Edge::A => LEFT,
            Edge::B => RIGHT,
        }
    }

    pub fn other(self) -> Edge {
        match self {
            Edge::A => Edge::B,
            Edge::B => Edge::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Dot(Polynomial),
    Zip(Edge),
    Unzip(Edge),
    Trace,
    Saddle,
}

/// Result of a local evaluation with the circle consumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Local {
    pub saddle: bool,
    pub poly: Polynomial,
}

/// `ε_C`: the coefficient of `C^{n-1}`, as a polynomial in the arc marks.
pub fn trace_circle(n: u32, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        if m.exponent(CIRCLE) == n - 1 {
            let rest = m.div(&Monomial::var(CIRCLE, n - 1)).expect("divisible");
            out.add_term(rest, c.clone());
        }
    }
    out
}

fn truncate_circle(n: u32, p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(p.terms().filter(|(m, _)| m.exponent(CIRCLE) < n).map(|(m, c)| (m.clone(), c.clone())))
}

/// Evaluate a word of local maps applied to `ι(1)`, a newly born circle.
pub fn evaluate(n: u32, steps: &[Step]) -> Result<Local> {
    let mut poly = Polynomial::one();
    let mut open = [false; 2];
    let mut circle = true;
    let mut saddle = false;
    let diff = |e: Edge| &Polynomial::var(CIRCLE) - &Polynomial::var(e.arc());
    for step in steps {
        match step {
            Step::Dot(p) => {
                if !circle && p.degree_in(CIRCLE) > 0 {
                    return Err(Error::Shape("dot on a circle that is gone".into()));
                }
                poly = truncate_circle(n, &(&poly * p));
            }
            Step::Zip(e) => {
                if !circle || open[e.index()] {
                    return Err(Error::Shape(format!("cannot zip edge {e:?}")));
                }
                open[e.index()] = true;
            }
            Step::Unzip(e) => {
                if !open[e.index()] {
                    return Err(Error::Shape(format!("edge {e:?} is not open")));
                }
                open[e.index()] = false;
                poly = truncate_circle(n, &(&poly * &diff(*e)));
            }
            Step::Trace => {
                if !circle || open.iter().any(|&o| o) {
                    return Err(Error::Shape("trace needs a bare circle".into()));
                }
                poly = trace_circle(n, &poly);
                circle = false;
            }
            Step::Saddle => {
                if !circle || !open[0] || !open[1] {
                    return Err(Error::Shape("saddle needs both edges open".into()));
                }
                let shifted = &poly * &Polynomial::var(CIRCLE);
                poly = trace_circle(n, &truncate_circle(n, &shifted));
                let ident = [(LEFT, RIGHT)].into_iter().collect();
                poly = poly.rename_identify(&ident);
                open = [false, false];
                circle = false;
                saddle = true;
            }
        }
    }
    if circle || open.iter().any(|&o| o) {
        return Err(Error::Shape("local word leaves the circle in place".into()));
    }
    Ok(Local { saddle, poly: poly.truncate_powers(n) })
}

impl Local {
    /// As a cobordism out of `)(`: the identity or the saddle to `=`,
    /// decorated on the left (`L`) and right (`R`) arcs.
    pub fn to_cob(&self, n: u32) -> Result<Cob> {
        let map = [(LEFT, Mark(0)), (RIGHT, Mark(1))].into_iter().collect();
        let poly = self.poly.rename_identify(&map);
        let tgt = if self.saddle { Planar::horizontal() } else { Planar::vertical() };
        Cob::decorated(n, Planar::vertical(), tgt, &poly)
    }
}

/// `Σ_{k=0}^{i} C^k X^{i-k}`.
fn complete(i: u32, x: Mark) -> Polynomial {
    let mut p = Polynomial::zero();
    for k in 0..=i {
        p = &p + &(&Polynomial::var_pow(CIRCLE, k) * &Polynomial::var_pow(x, i - k));
    }
    p
}

/// `Σ_{a+b+c=d} L^a R^b C^c`.
fn complete3(d: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for a in 0..=d {
        for b in 0..=d - a {
            let m = Monomial::from_pairs(&[(LEFT, a), (RIGHT, b), (CIRCLE, d - a - b)]);
            p.add_term(m, Rational::from_integer(1.into()));
        }
    }
    p
}

/// Words for the decomposition maps.
pub mod words {
    use super::*;

    /// Decomposition 0, inclusion `ι(C^i)`.
    pub fn circle_incl(i: u32) -> Vec<Step> {
        vec![Step::Dot(Polynomial::var_pow(CIRCLE, i))]
    }

    /// Decomposition 0, projection `ε(C^{n-1-j} ·)`.
    pub fn circle_proj(n: u32, j: u32) -> Vec<Step> {
        vec![Step::Dot(Polynomial::var_pow(CIRCLE, n - 1 - j)), Step::Trace]
    }

    /// Decomposition I, inclusion of summand `i` into the digon on edge `e`:
    /// `χ₀ ∘ Σ_k C^k X^{i-k} ∘ ι`.
    pub fn digon_incl(e: Edge, i: u32) -> Vec<Step> {
        vec![Step::Dot(complete(i, e.arc())), Step::Zip(e)]
    }

    /// Decomposition I, projection to summand `j`: `ε(C^{n-2-j} χ₁ ·)`.
    pub fn digon_proj(n: u32, e: Edge, j: u32) -> Vec<Step> {
        vec![Step::Dot(Polynomial::var_pow(CIRCLE, n - 2 - j)), Step::Unzip(e), Step::Trace]
    }

    /// Decomposition II, projection to the strand summand `j`:
    /// `ε(Σ_{a+b+c=n-3-j} L^a R^b C^c · χ₁ᴬ χ₁ᴮ ·)`.
    pub fn square_proj(n: u32, j: u32) -> Vec<Step> {
        vec![Step::Dot(complete3(n - 3 - j)), Step::Unzip(Edge::A), Step::Unzip(Edge::B), Step::Trace]
    }

    /// Decomposition II, projection to the `=` summand.
    pub fn square_saddle() -> Vec<Step> {
        vec![Step::Saddle]
    }
}

fn eval_cat(n: u32, parts: &[Vec<Step>]) -> Result<Cob> {
    let steps: Vec<Step> = parts.iter().flatten().cloned().collect();
    evaluate(n, &steps)?.to_cob(n)
}

/// Matrix of local maps; rows are targets.
pub type CobMatrix = Vec<Vec<Cob>>;

/// The circle summand `i` of a circle beside `)(` mapped by `χ₀` on `e` to
/// the digon summand `j`: entry `(j, i)` of an `(n-1) × n` matrix.
pub fn theta(n: u32, e: Edge) -> Result<CobMatrix> {
    (0..n - 1)
        .map(|j| {
            (0..n)
                .map(|i| eval_cat(n, &[words::circle_incl(i), vec![Step::Zip(e)], words::digon_proj(n, e, j)]))
                .collect()
        })
        .collect()
}

/// The digon summand `i` on edge `e` mapped by `χ₀` on the other edge into
/// the square: the `=` row (length `n-1`) and the `(n-2) × (n-1)` strand rows.
pub fn omega(n: u32, e: Edge) -> Result<(Vec<Cob>, CobMatrix)> {
    let zip = vec![Step::Zip(e.other())];
    let s_row = (0..n - 1)
        .map(|i| eval_cat(n, &[words::digon_incl(e, i), zip.clone(), words::square_saddle()]))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..n.saturating_sub(2))
        .map(|j| {
            (0..n - 1)
                .map(|i| eval_cat(n, &[words::digon_incl(e, i), zip.clone(), words::square_proj(n, j)]))
                .collect()
        })
        .collect::<Result<CobMatrix>>()?;
    Ok((s_row, rows))
}

/// Outcome of a split check `proj ∘ incl = Id` for a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub summands: usize,
    pub identity: bool,
}

/// Decomposition 0: circle beside `)(` splits into `n` copies of `)(`.
pub fn check_circle(n: u32) -> Result<SplitReport> {
    let identity = matrix_is_identity(n as usize, n as usize, |j, i| {
        eval_cat(n, &[words::circle_incl(i as u32), words::circle_proj(n, j as u32)])
    })?;
    Ok(SplitReport { summands: n as usize, identity })
}

/// Decomposition I: the digon on `e` splits into `n-1` copies of `)(`.
pub fn check_digon(n: u32, e: Edge) -> Result<SplitReport> {
    let k = n as usize - 1;
    let identity = matrix_is_identity(k, k, |j, i| {
        eval_cat(n, &[words::digon_incl(e, i as u32), words::digon_proj(n, e, j as u32)])
    })?;
    Ok(SplitReport { summands: k, identity })
}

/// Decomposition II: the square splits into `=` plus `n-2` copies of `)(`.
///
/// The strand inclusions are `χ₀ᴮ ∘ (digon inclusions i < n-2)` corrected by
/// the inverse of the unitriangular block of `Ω`; the `=` inclusion `S*` is
/// normalised by `S ∘ S* = Id`, and every `strand projection ∘ S*` lies in a
/// Hom space whose degree is below the minimum, hence vanishes.
pub fn check_square(n: u32) -> Result<SplitReport> {
    if n < 2 {
        return Err(Error::Unsupported("the square needs n >= 2".into()));
    }
    let k = n as usize - 2;
    let (s_row, rows) = omega(n, Edge::A)?;
    // S kills the strand inclusions
    let s_kills = s_row[..k].iter().all(Cob::is_zero);
    // unitriangular block, inverted over the commutative ring of arc dots
    let block: Vec<Vec<Cob>> = rows.iter().map(|r| r[..k].to_vec()).collect();
    let unitri = (0..k).all(|j| {
        (0..k).all(|i| match i.cmp(&j) {
            std::cmp::Ordering::Equal => block[j][i].identity_multiple() == Some(Rational::from_integer(1.into())),
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => block[j][i].is_zero(),
        })
    });
    let inv = unitriangular_inverse(n, &block)?;
    let product = mat_mul(&block, &inv)?;
    let product_id = (0..k).all(|j| {
        (0..k).all(|i| product[j][i].identity_multiple() == Some(Rational::from_integer(if i == j { 1 } else { 0 }.into())))
    });
    // degrees of Hom(=, )(): strand summand j sits at 2j + 1 - n relative to
    // the square, the `=` summand at -2
    let min_hz_v = CurveSet::new(&Planar::horizontal(), &Planar::vertical())?
        .curves
        .iter()
        .map(|c| (n as i64 - 1) * (c.points.len() as i64 / 2 - 1))
        .sum::<i64>();
    let cross_vanish = (0..k as i64).all(|j| -2 - (2 * j + 1 - n as i64) < min_hz_v);
    let s_degree = s_row[k].degree() == Some(n as i64 - 1) && s_row[k].identity_multiple().is_none();
    Ok(SplitReport { summands: 1 + k, identity: s_kills && unitri && product_id && cross_vanish && s_degree })
}

fn matrix_is_identity(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Result<Cob>) -> Result<bool> {
    for j in 0..rows {
        for i in 0..cols {
            let expect = Rational::from_integer(if i == j { 1 } else { 0 }.into());
            if f(j, i)?.identity_multiple() != Some(expect) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn mat_mul(a: &CobMatrix, b: &CobMatrix) -> Result<CobMatrix> {
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut r = Vec::with_capacity(b.first().map_or(0, |x| x.len()));
        for col in 0..b.first().map_or(0, |x| x.len()) {
            let mut acc: Option<Cob> = None;
            for (k, x) in row.iter().enumerate() {
                let term = x.compose(&b[k][col])?;
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
            }
            r.push(acc.ok_or_else(|| Error::Shape("empty product".into()))?);
        }
        out.push(r);
    }
    Ok(out)
}

/// Inverse of an upper unitriangular matrix of endomorphisms of `)(`.
fn unitriangular_inverse(n: u32, m: &CobMatrix) -> Result<CobMatrix> {
    let k = m.len();
    let v = Planar::vertical();
    let id = Cob::identity(n, &v);
    let zero = Cob::zero(n, v.clone(), v.clone());
    let mut inv = vec![vec![zero.clone(); k]; k];
    // back substitution: inv[i][c] = δ - Σ_{t>i} m[i][t] inv[t][c]
    for c in 0..k {
        for i in (0..k).rev() {
            let mut acc = if i == c { id.clone() } else { zero.clone() };
            for t in i + 1..k {
                acc = acc.sub(&m[i][t].compose(&inv[t][c])?)?;
            }
            inv[i][c] = acc;
        }
    }
    Ok(inv)
}

/// Scalar entries of a map between delooped closed pieces.
pub fn is_zero_matrix(m: &CobMatrix) -> bool {
    m.iter().all(|r| r.iter().all(Cob::is_zero))
}

pub fn entry_poly(c: &Cob) -> Polynomial {
    let mut p = Polynomial::zero();
    for (e, v) in c.terms() {
        if v.is_zero() {
            continue;
        }
        let m = Monomial::from_pairs(&e.iter().enumerate().map(|(k, &x)| (Mark(k as u32), x)).collect::<Vec<_>>());
        p.add_term(m, v.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn decompositions_split() {
        for n in 1..=5 {
            assert!(check_circle(n).unwrap().identity);
        }
        for n in 2..=5 {
            let d = check_digon(n, Edge::A).unwrap();
            assert_eq!(d.summands, n as usize - 1);
            assert!(d.identity);
            assert!(check_digon(n, Edge::B).unwrap().identity);
            let s = check_square(n).unwrap();
            assert_eq!(s.summands, n as usize - 1);
            assert!(s.identity, "square n={n}");
        }
    }

    #[test]
    fn theta_is_bidiagonal() {
        for n in 2..=5u32 {
            let t = theta(n, Edge::A).unwrap();
            let v = Planar::vertical();
            for j in 0..n as usize - 1 {
                for i in 0..n as usize {
                    let expect = if i == j {
                        Cob::identity(n, &v)
                    } else if i == j + 1 {
                        Cob::identity(n, &v).dot_at_point(0, 1).neg()
                    } else {
                        Cob::zero(n, v.clone(), v.clone())
                    };
                    assert_eq!(t[j][i], expect, "n={n} ({j},{i})");
                }
            }
        }
    }

    #[test]
    fn saddle_row_picks_last_summand() {
        for n in 2..=5u32 {
            let (s, _) = omega(n, Edge::A).unwrap();
            for (i, c) in s.iter().enumerate() {
                assert_eq!(c.is_zero(), i != n as usize - 2);
            }
            assert_eq!(s[n as usize - 2].terms().values().next(), Some(&rat(1)));
        }
    }
}
