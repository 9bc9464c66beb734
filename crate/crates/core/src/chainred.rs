//! Bounded chain complexes over an additive category, Gaussian elimination
//! and bigraded homology over Q.
//!
//! Differentials raise homological degree: `d_i: C_i → C_{i+1}`. A matrix is
//! stored row-major with rows indexed by the target objects.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Laurent, Rational};

/// The operations Gaussian elimination needs from an additive category.
pub trait Additive: Clone {
    type Obj: Clone + Debug + PartialEq;
    type Mor: Clone + Debug + PartialEq;

    fn zero(&self, src: &Self::Obj, tgt: &Self::Obj) -> Self::Mor;
    fn is_zero(&self, m: &Self::Mor) -> bool;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn add(&self, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor>;
    fn neg(&self, a: &Self::Mor) -> Self::Mor;
    /// The inverse when `m` is an isomorphism this category recognises.
    fn invert(&self, m: &Self::Mor) -> Option<Self::Mor>;
    /// Quantum shift of an object.
    fn qshift(&self, o: &Self::Obj) -> i64;
    /// Intrinsic quantum degree of a nonzero morphism, if homogeneous.
    fn degree(&self, m: &Self::Mor) -> Option<i64>;
    /// Object and morphism of the dual complex.
    fn dual_obj(&self, o: &Self::Obj) -> Self::Obj;
    fn dual_mor(&self, m: &Self::Mor) -> Self::Mor;
}

/// Graded Q-vector spaces with one-dimensional objects `Q{s}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Scalars;

impl Additive for Scalars {
    type Obj = i64;
    type Mor = Rational;

    fn zero(&self, _: &i64, _: &i64) -> Rational {
        Rational::zero()
    }
    fn is_zero(&self, m: &Rational) -> bool {
        m.is_zero()
    }
    fn compose(&self, g: &Rational, f: &Rational) -> Result<Rational> {
        Ok(g * f)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(a + b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn invert(&self, m: &Rational) -> Option<Rational> {
        (!m.is_zero()).then(|| m.recip())
    }
    fn qshift(&self, o: &i64) -> i64 {
        *o
    }
    fn degree(&self, _: &Rational) -> Option<i64> {
        Some(0)
    }
    fn dual_obj(&self, o: &i64) -> i64 {
        -o
    }
    fn dual_mor(&self, m: &Rational) -> Rational {
        m.clone()
    }
}

pub type Matrix<M> = Vec<Vec<M>>;

#[derive(Clone, Debug)]
pub struct ChainComplex<C: Additive> {
    cat: C,
    objects: BTreeMap<i64, Vec<C::Obj>>,
    diffs: BTreeMap<i64, Matrix<C::Mor>>,
}

/// A pivot for Gaussian elimination: `d_degree[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pivot {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
}

impl<C: Additive> ChainComplex<C> {
    pub fn new(cat: C) -> Self {
        ChainComplex { cat, objects: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    /// Append an object in homological degree `deg`; returns its index.
    /// Differentials touching `deg` must be set afterwards.
    pub fn push_object(&mut self, deg: i64, obj: C::Obj) -> usize {
        let v = self.objects.entry(deg).or_default();
        v.push(obj);
        v.len() - 1
    }

    pub fn set_differential(&mut self, deg: i64, m: Matrix<C::Mor>) -> Result<()> {
        let rows = self.objects(deg + 1).len();
        let cols = self.objects(deg).len();
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "d_{deg} must be {rows}×{cols}, got {}×{}",
                m.len(),
                m.first().map_or(0, |r| r.len())
            )));
        }
        self.diffs.insert(deg, m);
        Ok(())
    }

    pub fn objects(&self, deg: i64) -> &[C::Obj] {
        self.objects.get(&deg).map_or(&[], |v| v.as_slice())
    }

    /// `d_deg`, with zero matrices filled in where none was set.
    pub fn differential(&self, deg: i64) -> Matrix<C::Mor> {
        if let Some(m) = self.diffs.get(&deg) {
            return m.clone();
        }
        let src = self.objects(deg);
        self.objects(deg + 1).iter().map(|t| src.iter().map(|s| self.cat.zero(s, t)).collect()).collect()
    }

    pub fn entry(&self, deg: i64, row: usize, col: usize) -> Option<&C::Mor> {
        self.diffs.get(&deg).and_then(|m| m.get(row)).and_then(|r| r.get(col))
    }

    /// Homological degrees carrying objects.
    pub fn degrees(&self) -> Vec<i64> {
        self.objects.iter().filter(|(_, v)| !v.is_empty()).map(|(&k, _)| k).collect()
    }

    pub fn rank(&self) -> usize {
        self.objects.values().map(Vec::len).sum()
    }

    fn hom_range(&self) -> Option<(i64, i64)> {
        let d = self.degrees();
        Some((*d.first()?, *d.last()?))
    }

    fn mat_mul(&self, a: &Matrix<C::Mor>, b: &Matrix<C::Mor>, src: &[C::Obj], tgt: &[C::Obj]) -> Result<Matrix<C::Mor>> {
        let mut out = Vec::with_capacity(tgt.len());
        for (r, t) in a.iter().zip(tgt) {
            let mut row = Vec::with_capacity(src.len());
            for (c, s) in src.iter().enumerate() {
                let mut acc = self.cat.zero(s, t);
                for (k, x) in r.iter().enumerate() {
                    if self.cat.is_zero(x) || self.cat.is_zero(&b[k][c]) {
                        continue;
                    }
                    acc = self.cat.add(&acc, &self.cat.compose(x, &b[k][c])?)?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// `d_{i+1} ∘ d_i = 0` for every `i`.
    pub fn check_d_squared(&self) -> Result<bool> {
        let Some((lo, hi)) = self.hom_range() else { return Ok(true) };
        for i in lo..hi {
            let prod = self.mat_mul(&self.differential(i + 1), &self.differential(i), self.objects(i), self.objects(i + 2))?;
            if prod.iter().flatten().any(|m| !self.cat.is_zero(m)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every nonzero entry has degree `shift(src) - shift(tgt)`.
    pub fn is_homogeneous(&self) -> bool {
        self.diffs.iter().all(|(&deg, m)| {
            m.iter().zip(self.objects(deg + 1)).all(|(row, t)| {
                row.iter().zip(self.objects(deg)).all(|(x, s)| {
                    self.cat.is_zero(x) || self.cat.degree(x) == Some(self.cat.qshift(s) - self.cat.qshift(t))
                })
            })
        })
    }

    /// All entries the category can invert, in leftmost-lowest order.
    pub fn invertible_entries(&self) -> Vec<Pivot> {
        let mut out = Vec::new();
        for (&degree, m) in &self.diffs {
            let cols = m.first().map_or(0, |r| r.len());
            for col in 0..cols {
                for (row, r) in m.iter().enumerate() {
                    if !self.cat.is_zero(&r[col]) && self.cat.invert(&r[col]).is_some() {
                        out.push(Pivot { degree, row, col });
                    }
                }
            }
        }
        out
    }

    /// The first invertible entry: lowest degree, then leftmost column, then
    /// first row.
    pub fn first_pivot(&self) -> Option<Pivot> {
        for (&degree, m) in &self.diffs {
            let cols = m.first().map_or(0, |r| r.len());
            for col in 0..cols {
                for (row, r) in m.iter().enumerate() {
                    if !self.cat.is_zero(&r[col]) && self.cat.invert(&r[col]).is_some() {
                        return Some(Pivot { degree, row, col });
                    }
                }
            }
        }
        None
    }

    /// Cancel the isomorphism `d_i[row][col]`, replacing the complex by a
    /// homotopy equivalent one with two fewer objects.
    pub fn eliminate(&mut self, p: Pivot) -> Result<()> {
        let Pivot { degree: i, row: r, col: c } = p;
        let d = self.diffs.get(&i).ok_or_else(|| Error::Shape(format!("no differential in degree {i}")))?;
        let phi = d.get(r).and_then(|x| x.get(c)).ok_or_else(|| Error::Shape("pivot out of range".into()))?;
        let phi_inv = self.cat.invert(phi).ok_or(Error::NotInvertible { degree: i, row: r, col: c })?;
        // φ⁻¹ ∘ δ for every other source column
        let mut t: Vec<Option<C::Mor>> = Vec::with_capacity(d[r].len());
        for (c2, x) in d[r].iter().enumerate() {
            if c2 == c || self.cat.is_zero(x) {
                t.push(None);
            } else {
                t.push(Some(self.cat.compose(&phi_inv, x)?));
            }
        }
        let mut new = Vec::with_capacity(d.len().saturating_sub(1));
        for (r2, row) in d.iter().enumerate() {
            if r2 == r {
                continue;
            }
            let gamma = &row[c];
            let mut out = Vec::with_capacity(row.len() - 1);
            for (c2, x) in row.iter().enumerate() {
                if c2 == c {
                    continue;
                }
                match (&t[c2], self.cat.is_zero(gamma)) {
                    (Some(tc), false) => {
                        let corr = self.cat.compose(gamma, tc)?;
                        out.push(self.cat.add(x, &self.cat.neg(&corr))?);
                    }
                    _ => out.push(x.clone()),
                }
            }
            new.push(out);
        }
        self.diffs.insert(i, new);
        if let Some(prev) = self.diffs.get_mut(&(i - 1)) {
            prev.remove(c);
        }
        if let Some(next) = self.diffs.get_mut(&(i + 1)) {
            for row in next.iter_mut() {
                row.remove(r);
            }
        }
        self.objects.get_mut(&i).expect("degree present").remove(c);
        self.objects.get_mut(&(i + 1)).expect("degree present").remove(r);
        Ok(())
    }

    /// Eliminate leftmost-lowest pivots until none is left. Returns the
    /// number of cancellations.
    pub fn simplify(&mut self) -> Result<usize> {
        let mut count = 0;
        while let Some(p) = self.first_pivot() {
            self.eliminate(p)?;
            count += 1;
        }
        Ok(count)
    }

    /// Eliminate with pivots chosen by `choose` from the current list of
    /// invertible entries.
    pub fn simplify_by(&mut self, mut choose: impl FnMut(&[Pivot]) -> usize) -> Result<usize> {
        let mut count = 0;
        loop {
            let cands = self.invertible_entries();
            if cands.is_empty() {
                return Ok(count);
            }
            let k = choose(&cands).min(cands.len() - 1);
            self.eliminate(cands[k])?;
            count += 1;
        }
    }

    /// Shift homological degree by `t` and quantum degree by `q`, the latter
    /// through `shift_obj`.
    pub fn shifted(&self, t: i64, shift_obj: impl Fn(&C::Obj) -> C::Obj) -> Self {
        ChainComplex {
            cat: self.cat.clone(),
            objects: self.objects.iter().map(|(&k, v)| (k + t, v.iter().map(&shift_obj).collect())).collect(),
            diffs: self.diffs.iter().map(|(&k, m)| (k + t, m.clone())).collect(),
        }
    }

    /// The dual complex: degree `i` becomes `-i`, differentials transpose.
    pub fn dual(&self) -> Self {
        let mut out = ChainComplex::new(self.cat.clone());
        for (&k, v) in &self.objects {
            out.objects.insert(-k, v.iter().map(|o| self.cat.dual_obj(o)).collect());
        }
        for (&k, m) in &self.diffs {
            let rows = self.objects(k).len();
            let cols = self.objects(k + 1).len();
            let t: Matrix<C::Mor> = (0..rows).map(|i| (0..cols).map(|j| self.cat.dual_mor(&m[j][i])).collect()).collect();
            out.diffs.insert(-k - 1, t);
        }
        out
    }

    /// Rebuild in another category, mapping each object to a list of
    /// summands and each differential entry to a block.
    pub fn map_blocks<D: Additive>(
        &self,
        cat: D,
        obj: impl Fn(&C::Obj) -> Result<Vec<D::Obj>>,
        mor: impl Fn(&C::Mor, &C::Obj, &C::Obj, &[D::Obj], &[D::Obj]) -> Result<Matrix<D::Mor>>,
    ) -> Result<ChainComplex<D>> {
        let mut out = ChainComplex::new(cat);
        let mut pieces: BTreeMap<i64, Vec<Vec<D::Obj>>> = BTreeMap::new();
        for (&k, v) in &self.objects {
            let mut list = Vec::new();
            for o in v {
                let parts = obj(o)?;
                for p in &parts {
                    out.push_object(k, p.clone());
                }
                list.push(parts);
            }
            pieces.insert(k, list);
        }
        for (&k, m) in &self.diffs {
            let (Some(src), Some(tgt)) = (pieces.get(&k), pieces.get(&(k + 1))) else { continue };
            let rows: usize = tgt.iter().map(Vec::len).sum();
            let cols: usize = src.iter().map(Vec::len).sum();
            let mut big: Matrix<D::Mor> = Vec::with_capacity(rows);
            let src_flat: Vec<D::Obj> = src.iter().flatten().cloned().collect();
            for (r, tp) in tgt.iter().enumerate() {
                let mut block_rows: Vec<Vec<D::Mor>> = tp.iter().map(|t| src_flat.iter().map(|s| out.cat.zero(s, t)).collect()).collect();
                let mut offset = 0;
                for (c, sp) in src.iter().enumerate() {
                    let x = &m[r][c];
                    if !self.cat.is_zero(x) {
                        let b = mor(x, &self.objects[&k][c], &self.objects[&(k + 1)][r], sp, tp)?;
                        for (i, brow) in b.into_iter().enumerate() {
                            for (j, e) in brow.into_iter().enumerate() {
                                block_rows[i][offset + j] = e;
                            }
                        }
                    }
                    offset += sp.len();
                }
                big.extend(block_rows);
            }
            debug_assert_eq!(big.len(), rows);
            debug_assert!(big.iter().all(|r| r.len() == cols));
            out.diffs.insert(k, big);
        }
        Ok(out)
    }
}

/// Exact rank of a rational matrix.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..cols {
                    let v = &a[rank][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Ranks of a bigraded vector space, keyed by (homological, quantum) degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedDimensions {
    ranks: BTreeMap<(i64, i64), usize>,
}

/// One row of a Poincaré table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareEntry {
    pub t: i64,
    pub q: i64,
    pub rank: usize,
}

impl BigradedDimensions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: i64, q: i64, rank: usize) {
        if rank > 0 {
            *self.ranks.entry((t, q)).or_insert(0) += rank;
        }
    }

    pub fn get(&self, t: i64, q: i64) -> usize {
        self.ranks.get(&(t, q)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.ranks.iter().map(|(&(t, q), &r)| (t, q, r))
    }

    /// Entries sorted by `(t, q)`.
    pub fn entries(&self) -> Vec<PoincareEntry> {
        self.iter().map(|(t, q, rank)| PoincareEntry { t, q, rank }).collect()
    }

    /// `Σ (-1)^t rank · q^j`.
    pub fn euler(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (t, q, r) in self.iter() {
            let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(q, Rational::from_integer((sign * r as i64).into()));
        }
        out
    }

    pub fn shifted(&self, t: i64, q: i64) -> Self {
        BigradedDimensions { ranks: self.ranks.iter().map(|(&(a, b), &r)| ((a + t, b + q), r)).collect() }
    }

    /// Homology of the dual complex: `(t, q) ↦ (-t, -q)`.
    pub fn mirrored(&self) -> Self {
        BigradedDimensions { ranks: self.ranks.iter().map(|(&(a, b), &r)| ((-a, -b), r)).collect() }
    }
}

impl ChainComplex<Scalars> {
    /// Graded dimensions of the chain groups.
    pub fn chain_dimensions(&self) -> BigradedDimensions {
        let mut out = BigradedDimensions::new();
        for (&t, v) in &self.objects {
            for &q in v {
                out.add(t, q, 1);
            }
        }
        out
    }

    /// Homology from exact ranks of the differentials, one quantum degree at
    /// a time.
    pub fn homology(&self) -> Result<BigradedDimensions> {
        if !self.is_homogeneous() {
            return Err(Error::Shape("differential is not homogeneous".into()));
        }
        let mut out = BigradedDimensions::new();
        let mut qs: Vec<i64> = self.objects.values().flatten().copied().collect();
        qs.sort_unstable();
        qs.dedup();
        let Some((lo, hi)) = self.hom_range() else { return Ok(out) };
        let block_rank = |deg: i64, q: i64| -> usize {
            let Some(m) = self.diffs.get(&deg) else { return 0 };
            let cols: Vec<usize> = self.objects(deg).iter().enumerate().filter(|(_, &s)| s == q).map(|(i, _)| i).collect();
            let rows: Vec<usize> = self.objects(deg + 1).iter().enumerate().filter(|(_, &s)| s == q).map(|(i, _)| i).collect();
            if cols.is_empty() || rows.is_empty() {
                return 0;
            }
            let sub: Vec<Vec<Rational>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
            rational_rank(&sub)
        };
        for q in qs {
            for t in lo..=hi {
                let dim = self.objects(t).iter().filter(|&&s| s == q).count();
                if dim == 0 {
                    continue;
                }
                let h = dim - block_rank(t, q) - block_rank(t - 1, q);
                out.add(t, q, h);
            }
        }
        Ok(out)
    }

    /// Simplify and read the surviving generators; valid once no nonzero
    /// entry is left.
    pub fn homology_by_elimination(&self) -> Result<BigradedDimensions> {
        let mut c = self.clone();
        c.simplify()?;
        if c.diffs.values().flatten().flatten().any(|x| !x.is_zero()) {
            return Err(Error::Shape("nonzero differential survived elimination".into()));
        }
        Ok(c.chain_dimensions())
    }

    pub fn scalar_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
    }
}

/// `1` as a rational, for building identity blocks.
pub fn one() -> Rational {
    Rational::one()
}
