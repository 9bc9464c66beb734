//! Independent reference values: the HOMFLY polynomial of two-strand twist
//! closures from the skein relation, its sl(n) specialization, and the sl₂
//! homology of the full cube of resolutions.
//!
//! Nothing here touches the cobordism, chain reduction or twist code apart
//! from the tangle word type.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Laurent, Rational};
use crate::twist::TangleWord;

/// Laurent polynomial in `a` and `z`, keyed by `(exp_a, exp_z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homfly {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl Homfly {
    pub fn zero() -> Self {
        Homfly::default()
    }

    pub fn monomial(ea: i64, ez: i64, c: Rational) -> Self {
        let mut h = Homfly::zero();
        h.add_term(ea, ez, c);
        h
    }

    pub fn one() -> Self {
        Homfly::monomial(0, 0, Rational::one())
    }

    /// `(a - a⁻¹)/z`, the two component unlink.
    pub fn unlink2() -> Self {
        &Homfly::monomial(1, -1, Rational::one()) - &Homfly::monomial(-1, -1, Rational::one())
    }

    pub fn add_term(&mut self, ea: i64, ez: i64, c: Rational) {
        let e = self.terms.entry((ea, ez)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(ea, ez));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.terms
    }

    /// Multiply by `a^ea z^ez`.
    pub fn shift(&self, ea: i64, ez: i64) -> Self {
        Homfly { terms: self.terms.iter().map(|(&(x, y), c)| ((x + ea, y + ez), c.clone())).collect() }
    }

    /// Mirror image: `a ↦ -a⁻¹`.
    pub fn mirror(&self) -> Self {
        let mut out = Homfly::zero();
        for (&(x, y), c) in &self.terms {
            let c = if x.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out.add_term(-x, y, c);
        }
        out
    }
}

impl Add<&Homfly> for &Homfly {
    type Output = Homfly;
    fn add(self, rhs: &Homfly) -> Homfly {
        let mut out = self.clone();
        for (&(x, y), c) in &rhs.terms {
            out.add_term(x, y, c.clone());
        }
        out
    }
}

impl Sub<&Homfly> for &Homfly {
    type Output = Homfly;
    fn sub(self, rhs: &Homfly) -> Homfly {
        let mut out = self.clone();
        for (&(x, y), c) in &rhs.terms {
            out.add_term(x, y, -c.clone());
        }
        out
    }
}

impl Mul<&Homfly> for &Homfly {
    type Output = Homfly;
    fn mul(self, rhs: &Homfly) -> Homfly {
        let mut out = Homfly::zero();
        for (&(a1, z1), c1) in &self.terms {
            for (&(a2, z2), c2) in &rhs.terms {
                out.add_term(a1 + a2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

/// Which two-strand family: parallel strands (torus links), or
/// antiparallel strands where an even number of crossings form clasps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Parallel,
    Antiparallel,
}

/// HOMFLY polynomial, normalized to 1 on the unknot, of the closure of `k`
/// signed crossings, from `a P₊ - a⁻¹ P₋ = z P₀`.
///
/// Parallel: `P₀` of `k` crossings is `P_{k-1}`. Antiparallel: smoothing a
/// crossing gives the unknot, so only even `k` are closures of clasps.
pub fn homfly_twist_closure(k: i64, family: Family) -> Result<Homfly> {
    let z = Homfly::monomial(0, 1, Rational::one());
    let mut p: BTreeMap<i64, Homfly> = BTreeMap::new();
    p.insert(0, Homfly::unlink2());
    let step = match family {
        Family::Parallel => {
            p.insert(1, Homfly::one());
            1
        }
        Family::Antiparallel => {
            if k.rem_euclid(2) != 0 {
                return Err(Error::Unsupported("antiparallel twists need an even crossing number".into()));
            }
            2
        }
    };
    // P₀ of the crossing joining P_{j-step} and P_j
    let smoothing = |p: &BTreeMap<i64, Homfly>, j: i64| match family {
        Family::Parallel => p[&(j - 1)].clone(),
        Family::Antiparallel => Homfly::one(),
    };
    let mut j = *p.keys().next_back().expect("seeded");
    while j < k {
        j += step;
        // P₊ = a⁻¹ (z P₀ + a⁻¹ P₋)
        let next = (&(&z * &smoothing(&p, j)) + &p[&(j - 2)].shift(-1, 0)).shift(-1, 0);
        p.insert(j, next);
    }
    let mut j = 0;
    while j > k {
        j -= step;
        // P₋ = a (a P₊ - z P₀)
        let next = (&p[&(j + 2)].shift(1, 0) - &(&z * &smoothing(&p, j + 2))).shift(1, 0);
        p.insert(j, next);
    }
    Ok(p[&k].clone())
}

/// HOMFLY polynomial of a closed word read as parallel half twists.
pub fn homfly_of_word(word: &TangleWord) -> Result<Homfly> {
    if word.closure.is_none() {
        return Err(Error::OpenBoundary);
    }
    let net: i64 = word.signs().iter().sum();
    homfly_twist_closure(net, Family::Parallel)
}

fn quantum(n: u32) -> Laurent {
    let mut l = Laurent::zero();
    for i in 0..n as i64 {
        l.add_term(1 - n as i64 + 2 * i, Rational::one());
    }
    l
}

fn q_minus_qinv() -> Laurent {
    let mut l = Laurent::zero();
    l.add_term(1, Rational::one());
    l.add_term(-1, -Rational::one());
    l
}

fn lpow(base: &Laurent, e: u32) -> Laurent {
    let mut out = Laurent::one();
    for _ in 0..e {
        out = &out * base;
    }
    out
}

/// Exact quotient by `q - q⁻¹`, if there is one.
pub fn divide_by_q_minus_qinv(l: &Laurent) -> Option<Laurent> {
    // q - q⁻¹ = q⁻¹ (q² - 1); divide q·l by q² - 1 from the top degree down
    let mut rem: BTreeMap<i64, Rational> = l.coeffs().iter().map(|(&e, c)| (e + 1, c.clone())).collect();
    let mut quot = Laurent::zero();
    while let Some((&top, c)) = rem.iter().next_back() {
        let c = c.clone();
        let low = *rem.keys().next().expect("nonempty");
        if top - 2 < low {
            return None;
        }
        quot.add_term(top - 2, c.clone());
        rem.remove(&top);
        let e = rem.entry(top - 2).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            rem.remove(&(top - 2));
        }
    }
    Some(quot)
}

/// `P(q^n, q - q⁻¹) · [n]`.
pub fn specialize_sln(p: &Homfly, n: u32) -> Result<Laurent> {
    let m = p.terms.keys().map(|&(_, z)| (-z).max(0)).max().unwrap_or(0) as u32;
    let d = q_minus_qinv();
    let mut total = Laurent::zero();
    for (&(ea, ez), c) in &p.terms {
        let term = lpow(&d, (ez + m as i64) as u32).shift(ea * n as i64).scale(c);
        total = &total + &term;
    }
    total = &total * &quantum(n);
    for _ in 0..m {
        total = divide_by_q_minus_qinv(&total)
            .ok_or_else(|| Error::NotDivisible { num: total.to_string(), den: "q - q^-1".into() })?;
    }
    Ok(total)
}

/// Graded ranks keyed by `(t, q)`.
pub type OracleRanks = BTreeMap<(i64, i64), usize>;

pub fn euler_of(r: &OracleRanks) -> Laurent {
    let mut l = Laurent::zero();
    for (&(t, q), &k) in r {
        let s = if t.rem_euclid(2) == 0 { 1 } else { -1 };
        l.add_term(q, Rational::from_integer((s * k as i64).into()));
    }
    l
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[a] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (x, y) = (self.find(a), self.find(b));
        self.0[x] = y;
    }
}

/// Circles of one resolution of the closed braid. Strand points are `L_l`
/// and `R_l` at levels `l = 0..k`, level `k` glued to level 0. Returns the
/// circle index of each point.
fn resolution_circles(k: usize, oriented: &[bool]) -> (usize, Vec<usize>) {
    let pt = |side: usize, lvl: usize| side * k + lvl % k;
    let mut dsu = Dsu((0..2 * k).collect());
    for (l, &o) in oriented.iter().enumerate() {
        if o {
            dsu.union(pt(0, l), pt(0, l + 1));
            dsu.union(pt(1, l), pt(1, l + 1));
        } else {
            dsu.union(pt(0, l), pt(1, l));
            dsu.union(pt(0, l + 1), pt(1, l + 1));
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut of = vec![0; 2 * k];
    for (p, slot) in of.iter_mut().enumerate() {
        let r = dsu.find(p);
        let next = ids.len();
        *slot = *ids.entry(r).or_insert(next);
    }
    (ids.len(), of)
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// sl₂ homology of the closed braid on two parallel strands from the full
/// cube of resolutions, with Frobenius algebra `Q[x]/(x²)`. A generator of
/// a circle is `1` (degree -1) or `x` (degree 1). The ranks are computed
/// from the matrices of the cube directly, one quantum degree at a time.
pub fn sl2_cube(word: &TangleWord) -> Result<OracleRanks> {
    if word.closure.is_none() {
        return Err(Error::OpenBoundary);
    }
    let signs = word.signs();
    let k = signs.len();
    let n_plus = signs.iter().filter(|&&s| s > 0).count() as i64;
    let n_minus = k as i64 - n_plus;
    // vertex v: bit c set means the crossing takes its 1-smoothing
    let oriented = |v: usize| -> Vec<bool> {
        (0..k)
            .map(|c| {
                let one = v >> c & 1 == 1;
                (signs[c] > 0) != one
            })
            .collect()
    };
    let verts: Vec<usize> = (0..1usize << k).collect();
    let circles: Vec<(usize, Vec<usize>)> = verts.iter().map(|&v| resolution_circles(k, &oriented(v))).collect();
    let height = |v: usize| v.count_ones() as i64;
    let qdeg = |v: usize, b: usize, nc: usize| -> i64 {
        let ones = b.count_ones() as i64;
        2 * ones - nc as i64 - height(v) - (n_plus - 2 * n_minus)
    };
    // basis per height: (vertex, labels bitmask)
    let basis: Vec<Vec<(usize, usize)>> = (0..=k)
        .map(|h| {
            verts
                .iter()
                .filter(|&&v| height(v) as usize == h)
                .flat_map(|&v| (0..1usize << circles[v].0).map(move |b| (v, b)))
                .collect()
        })
        .collect();
    let zero = Rational::zero();
    let mut maps: Vec<Vec<Vec<Rational>>> = Vec::new();
    for h in 0..k {
        let src = &basis[h];
        let tgt = &basis[h + 1];
        let index: BTreeMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut m = vec![vec![zero.clone(); src.len()]; tgt.len()];
        for (j, &(v, b)) in src.iter().enumerate() {
            for c in 0..k {
                if v >> c & 1 == 1 {
                    continue;
                }
                let w = v | 1 << c;
                let sign = if (v & ((1 << c) - 1)).count_ones() % 2 == 0 { Rational::one() } else { -Rational::one() };
                let (ns, ref of_s) = circles[v];
                let (nt, ref of_t) = circles[w];
                // each source circle and the target circles it meets
                let mut s2t: Vec<Vec<usize>> = vec![Vec::new(); ns];
                let mut t2s: Vec<Vec<usize>> = vec![Vec::new(); nt];
                for p in 0..2 * k {
                    let (s, t) = (of_s[p], of_t[p]);
                    if !s2t[s].contains(&t) {
                        s2t[s].push(t);
                    }
                    if !t2s[t].contains(&s) {
                        t2s[t].push(s);
                    }
                }
                let label = |bits: usize, i: usize| bits >> i & 1;
                if nt < ns {
                    let mut out = 0usize;
                    let mut ok = true;
                    for (t, ss) in t2s.iter().enumerate() {
                        let e: usize = ss.iter().map(|&s| label(b, s)).sum();
                        if e > 1 {
                            ok = false;
                        }
                        out |= e << t;
                    }
                    if ok {
                        m[index[&(w, out)]][j] += &sign;
                    }
                } else if nt > ns {
                    let sc = (0..ns).find(|&s| s2t[s].len() == 2).expect("split circle");
                    let (t1, t2) = (s2t[sc][0], s2t[sc][1]);
                    let mut base = 0usize;
                    for s in 0..ns {
                        if s != sc {
                            base |= label(b, s) << s2t[s][0];
                        }
                    }
                    let opts: &[(usize, usize)] = if label(b, sc) == 1 { &[(1, 1)] } else { &[(0, 1), (1, 0)] };
                    for &(e1, e2) in opts {
                        let o = base | e1 << t1 | e2 << t2;
                        m[index[&(w, o)]][j] += &sign;
                    }
                } else {
                    return Err(Error::Shape("saddle between closed braid resolutions keeps the circle count".into()));
                }
            }
        }
        maps.push(m);
    }
    let mut out = OracleRanks::new();
    let qs: std::collections::BTreeSet<i64> =
        basis.iter().flatten().map(|&(v, b)| qdeg(v, b, circles[v].0)).collect();
    for &q in &qs {
        let pick = |h: usize| -> Vec<usize> {
            basis[h].iter().enumerate().filter(|(_, &(v, b))| qdeg(v, b, circles[v].0) == q).map(|(i, _)| i).collect()
        };
        let idx: Vec<Vec<usize>> = (0..=k).map(pick).collect();
        let ranks: Vec<usize> = (0..k)
            .map(|h| {
                let sub: Vec<Vec<Rational>> =
                    idx[h + 1].iter().map(|&r| idx[h].iter().map(|&c| maps[h][r][c].clone()).collect()).collect();
                rank(sub)
            })
            .collect();
        for h in 0..=k {
            let dim = idx[h].len();
            let r = dim - if h < k { ranks[h] } else { 0 } - if h > 0 { ranks[h - 1] } else { 0 };
            if r > 0 {
                out.insert((h as i64 - n_minus, q), r);
            }
        }
    }
    Ok(out)
}
