//! Dotted cobordisms between crossingless diagrams modulo the sl(n) local
//! relations, kept in a canonical form.
//!
//! For diagrams `D1`, `D2` the boundary of a cobordism splits into curves:
//! each cycle alternating between arcs of `D1` and arcs of `D2` through the
//! boundary points, plus each circle of either diagram. Neck cutting
//! identifies `Hom(D1, D2)` with `A^{⊗ curves}`, `A = Q[x]/(x^n)`, the tensor
//! factor of a curve being a disk it bounds carrying `x^e` dots. A [`Cob`] is
//! a rational combination of exponent vectors, one exponent per curve.
//!
//! Gluing disks produces surfaces; a connected surface of genus `g` with
//! `r` boundary curves and `m` dots equals `Δ^{(r-1)}(x^m h^g)` with
//! `h = n x^{n-1}`, or `ε(x^m h^g)` when closed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::planar::{Closure, Piece, Planar, Traced};
use crate::error::{Error, Result};
use crate::ring::{rat, Mark, Polynomial, Rational};

/// One boundary curve of `Hom(src, tgt)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub src_arcs: Vec<usize>,
    pub tgt_arcs: Vec<usize>,
    pub src_circle: Option<usize>,
    pub tgt_circle: Option<usize>,
    pub points: Vec<usize>,
}

/// The curves of `Hom(src, tgt)` with lookup tables.
#[derive(Clone, Debug)]
pub struct CurveSet {
    pub curves: Vec<Curve>,
    pub of_src_arc: Vec<usize>,
    pub of_tgt_arc: Vec<usize>,
    pub of_src_circle: Vec<usize>,
    pub of_tgt_circle: Vec<usize>,
    pub of_point: Vec<usize>,
}

impl CurveSet {
    pub fn new(src: &Planar, tgt: &Planar) -> Result<Self> {
        if src.boundary() != tgt.boundary() {
            return Err(Error::NotComposable(format!("{src} and {tgt} have different boundaries")));
        }
        let b = src.boundary();
        let mut curves = Vec::new();
        let mut of_point = vec![usize::MAX; b];
        let mut of_src_arc = vec![0; src.arcs().len()];
        let mut of_tgt_arc = vec![0; tgt.arcs().len()];
        for start in 0..b {
            if of_point[start] != usize::MAX {
                continue;
            }
            let id = curves.len();
            let mut curve = Curve { src_arcs: vec![], tgt_arcs: vec![], src_circle: None, tgt_circle: None, points: vec![] };
            let mut p = start;
            loop {
                let sa = src.arc_of_point(p);
                let q = src.partner(p);
                let ta = tgt.arc_of_point(q);
                let r = tgt.partner(q);
                curve.src_arcs.push(sa);
                curve.tgt_arcs.push(ta);
                curve.points.extend([p, q]);
                of_point[p] = id;
                of_point[q] = id;
                of_src_arc[sa] = id;
                of_tgt_arc[ta] = id;
                if r == start {
                    break;
                }
                p = r;
            }
            curve.points.sort_unstable();
            curves.push(curve);
        }
        let mut of_src_circle = Vec::new();
        for c in 0..src.circles() {
            of_src_circle.push(curves.len());
            curves.push(Curve { src_arcs: vec![], tgt_arcs: vec![], src_circle: Some(c), tgt_circle: None, points: vec![] });
        }
        let mut of_tgt_circle = Vec::new();
        for c in 0..tgt.circles() {
            of_tgt_circle.push(curves.len());
            curves.push(Curve { src_arcs: vec![], tgt_arcs: vec![], src_circle: None, tgt_circle: Some(c), points: vec![] });
        }
        Ok(CurveSet { curves, of_src_arc, of_tgt_arc, of_src_circle, of_tgt_circle, of_point })
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Number of curves that are arc cycles (they come first).
    pub fn arc_cycles(&self) -> usize {
        self.curves.iter().filter(|c| !c.points.is_empty()).count()
    }
}

/// The Frobenius algebra `A = Q[x]/(x^n)` with `ε(x^{n-1}) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    pub n: u32,
}

impl FrobeniusAlgebra {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "sl(n) needs n >= 1");
        FrobeniusAlgebra { n }
    }

    pub fn unit(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n as usize];
        v[0] = Rational::one();
        v
    }

    pub fn basis(&self, i: u32) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n as usize];
        v[i as usize] = Rational::one();
        v
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.n as usize;
        let mut out = vec![Rational::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if i + j < n {
                    out[i + j] += ai * bj;
                }
            }
        }
        out
    }

    pub fn counit(&self, a: &[Rational]) -> Rational {
        a[self.n as usize - 1].clone()
    }

    /// `Δ(a)` as an `n × n` coefficient table: entry `[i][j]` is the
    /// coefficient of `x^i ⊗ x^j`.
    pub fn comul(&self, a: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.n as usize;
        let mut out = vec![vec![Rational::zero(); n]; n];
        for (k, ak) in a.iter().enumerate() {
            for i in k..n {
                let j = n - 1 + k - i;
                out[i][j] += ak;
            }
        }
        out
    }

    /// The handle element `m ∘ Δ (1) = n x^{n-1}`.
    pub fn handle(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n as usize];
        v[self.n as usize - 1] = rat(self.n as i64);
        v
    }

    /// Graded dimension `[n]` of `A{1-n}`.
    pub fn qdim(&self) -> crate::ring::Laurent {
        crate::ring::Laurent::quantum_integer(self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cob {
    n: u32,
    src: Planar,
    tgt: Planar,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Connected components of a glued surface.
struct Plan {
    disk_comp: Vec<usize>,
    comps: Vec<Component>,
}

struct Component {
    genus: u32,
    curves: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Glue `disks` along `intervals` and full `circles`; `result_disk[c]` names
/// a disk adjacent to result curve `c`.
fn plan(disks: usize, intervals: &[(usize, usize)], circles: &[(usize, usize)], result_disk: &[usize]) -> Result<Plan> {
    let mut uf = UnionFind::new(disks);
    for &(a, b) in intervals.iter().chain(circles) {
        uf.union(a, b);
    }
    let mut root_comp = BTreeMap::new();
    let mut disk_comp = vec![0; disks];
    for (d, slot) in disk_comp.iter_mut().enumerate() {
        let r = uf.find(d);
        let next = root_comp.len();
        *slot = *root_comp.entry(r).or_insert(next);
    }
    let k = root_comp.len();
    let mut chi = vec![0i64; k];
    for &c in &disk_comp {
        chi[c] += 1;
    }
    for &(a, _) in intervals {
        chi[disk_comp[a]] -= 1;
    }
    let mut curves = vec![Vec::new(); k];
    for (c, &d) in result_disk.iter().enumerate() {
        curves[disk_comp[d]].push(c);
    }
    let mut comps = Vec::with_capacity(k);
    for (i, cs) in curves.into_iter().enumerate() {
        let twice = 2 - chi[i] - cs.len() as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Shape(format!("inconsistent surface: chi {} with {} boundary curves", chi[i], cs.len())));
        }
        comps.push(Component { genus: (twice / 2) as u32, curves: cs });
    }
    Ok(Plan { disk_comp, comps })
}

/// All `e ∈ [0, n)^r` with `Σ e = total`.
fn compositions(r: usize, total: u32, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(i: usize, left: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            if left < n {
                cur[i] = left;
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..n.min(left + 1) {
            cur[i] = e;
            rec(i + 1, left - e, n, cur, out);
        }
    }
    if r == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, n, &mut cur, &mut out);
    out
}

impl Plan {
    fn evaluate(&self, n: u32, exps: &[u32], curves: usize) -> Vec<(Vec<u32>, Rational)> {
        let mut dots = vec![0u32; self.comps.len()];
        for (d, &e) in exps.iter().enumerate() {
            dots[self.disk_comp[d]] += e;
        }
        let mut acc = vec![(vec![0u32; curves], Rational::one())];
        for (comp, &m) in self.comps.iter().zip(&dots) {
            let total = m + comp.genus * (n - 1);
            let coef = Rational::from_integer((n as i64).pow(comp.genus).into());
            let r = comp.curves.len();
            if r == 0 {
                if total != n - 1 {
                    return Vec::new();
                }
                for a in acc.iter_mut() {
                    a.1 *= &coef;
                }
                continue;
            }
            if total >= n {
                return Vec::new();
            }
            let splits = compositions(r, total + (r as u32 - 1) * (n - 1), n);
            let mut next = Vec::with_capacity(acc.len() * splits.len());
            for (v, c) in &acc {
                for s in &splits {
                    let mut w = v.clone();
                    for (&curve, &e) in comp.curves.iter().zip(s) {
                        w[curve] = e;
                    }
                    next.push((w, c * &coef));
                }
            }
            acc = next;
        }
        acc
    }
}

fn piece_disk(piece: Piece, src_side: bool, sets: &[&CurveSet], offsets: &[usize], strip_offset: usize) -> usize {
    match piece {
        Piece::Arc { side, index } => {
            let s = sets[side as usize];
            offsets[side as usize] + if src_side { s.of_src_arc[index] } else { s.of_tgt_arc[index] }
        }
        Piece::Circle { side, index } => {
            let s = sets[side as usize];
            offsets[side as usize] + if src_side { s.of_src_circle[index] } else { s.of_tgt_circle[index] }
        }
        Piece::Closure(j) => strip_offset + j,
    }
}

/// A disk adjacent to each curve of `Hom(src.planar, tgt.planar)`.
fn traced_result_disks(
    result: &CurveSet,
    src: &Traced,
    tgt: &Traced,
    sets: &[&CurveSet],
    offsets: &[usize],
    strip_offset: usize,
) -> Vec<usize> {
    result
        .curves
        .iter()
        .map(|c| {
            if let Some(&a) = c.src_arcs.first() {
                piece_disk(src.arc_pieces[a][0], true, sets, offsets, strip_offset)
            } else if let Some(k) = c.src_circle {
                piece_disk(src.circle_pieces[k][0], true, sets, offsets, strip_offset)
            } else {
                let k = c.tgt_circle.expect("curve without boundary");
                piece_disk(tgt.circle_pieces[k][0], false, sets, offsets, strip_offset)
            }
        })
        .collect()
}

impl Cob {
    pub fn zero(n: u32, src: Planar, tgt: Planar) -> Self {
        Cob { n, src, tgt, terms: BTreeMap::new() }
    }

    /// Every curve bounds an undotted disk: the identity between equal
    /// circle-free diagrams, the saddle between `)(` and `=`.
    pub fn disks(n: u32, src: Planar, tgt: Planar) -> Result<Self> {
        let len = CurveSet::new(&src, &tgt)?.len();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; len], Rational::one());
        Ok(Cob { n, src, tgt, terms })
    }

    pub fn saddle(n: u32, src: Planar, tgt: Planar) -> Result<Self> {
        let cs = CurveSet::new(&src, &tgt)?;
        if src.circles() + tgt.circles() > 0 || cs.len() + 1 != cs.curves.iter().map(|c| c.src_arcs.len()).sum::<usize>() {
            return Err(Error::Shape(format!("no saddle from {src} to {tgt}")));
        }
        Cob::disks(n, src, tgt)
    }

    pub fn identity(n: u32, d: &Planar) -> Self {
        let cs = CurveSet::new(d, d).expect("diagram matches itself");
        let arcs = cs.arc_cycles();
        let mut acc = vec![(vec![0u32; cs.len()], Rational::one())];
        for c in 0..d.circles() {
            let (a, b) = (cs.of_src_circle[c], cs.of_tgt_circle[c]);
            let mut next = Vec::new();
            for (v, coef) in &acc {
                for i in 0..n {
                    let mut w = v.clone();
                    w[a] = i;
                    w[b] = n - 1 - i;
                    next.push((w, coef.clone()));
                }
            }
            acc = next;
        }
        debug_assert!(arcs + 2 * d.circles() == cs.len());
        Cob { n, src: d.clone(), tgt: d.clone(), terms: acc.into_iter().collect() }
    }

    /// The cobordism with every curve bounding a disk, decorated by a
    /// polynomial whose mark `p` puts a dot on the curve through boundary
    /// point `p`.
    pub fn decorated(n: u32, src: Planar, tgt: Planar, poly: &Polynomial) -> Result<Self> {
        let cs = CurveSet::new(&src, &tgt)?;
        let mut out = Cob::zero(n, src, tgt);
        for (mono, c) in poly.terms() {
            let mut exps = vec![0u32; cs.len()];
            for (Mark(p), e) in mono.marks() {
                let curve = *cs
                    .of_point
                    .get(p as usize)
                    .ok_or_else(|| Error::Shape(format!("no boundary point {p}")))?;
                exps[curve] += e;
            }
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// Build from explicit terms, one exponent per curve.
    pub fn from_terms(n: u32, src: Planar, tgt: Planar, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let len = CurveSet::new(&src, &tgt)?.len();
        let mut out = Cob::zero(n, src, tgt);
        for (e, c) in terms {
            if e.len() != len {
                return Err(Error::Shape(format!("expected {len} exponents, got {}", e.len())));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || exps.iter().any(|&e| e >= self.n) {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn src(&self) -> &Planar {
        &self.src
    }

    pub fn tgt(&self) -> &Planar {
        &self.tgt
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn curves(&self) -> CurveSet {
        CurveSet::new(&self.src, &self.tgt).expect("validated at construction")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_hom(&self, other: &Cob) -> Result<()> {
        if self.n != other.n || self.src != other.src || self.tgt != other.tgt {
            return Err(Error::Shape(format!(
                "cannot add {}→{} and {}→{}",
                self.src, self.tgt, other.src, other.tgt
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cob) -> Result<Cob> {
        self.same_hom(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cob) -> Result<Cob> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cob {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Cob {
        let mut out = Cob::zero(self.n, self.src.clone(), self.tgt.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiply by `x^e` on the curve through boundary point `p`.
    pub fn dot_at_point(&self, p: usize, e: u32) -> Cob {
        let curve = self.curves().of_point[p];
        let mut out = Cob::zero(self.n, self.src.clone(), self.tgt.clone());
        for (exps, c) in &self.terms {
            let mut w = exps.clone();
            w[curve] += e;
            out.add_term(w, c.clone());
        }
        out
    }

    /// Quantum degree of each term; `None` if the terms disagree.
    pub fn degree(&self) -> Option<i64> {
        let cs = self.curves();
        let n = self.n as i64;
        let mut deg = None;
        for e in self.terms.keys() {
            let d: i64 = cs
                .curves
                .iter()
                .zip(e)
                .map(|(c, &x)| (n - 1) * (c.points.len() as i64 / 2 - 1) + 2 * x as i64)
                .sum();
            match deg {
                None => deg = Some(d),
                Some(old) if old != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// `Some(c)` when this is `c` times the identity of a circle-free diagram.
    pub fn identity_multiple(&self) -> Option<Rational> {
        if self.src != self.tgt || self.src.circles() > 0 || self.terms.len() > 1 {
            return None;
        }
        match self.terms.iter().next() {
            None => Some(Rational::zero()),
            Some((e, c)) if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Reflect top to bottom: a cobordism `tgt → src`.
    pub fn reflect(&self) -> Cob {
        let cs = self.curves();
        let arcs = cs.arc_cycles();
        let (s, t) = (self.src.circles(), self.tgt.circles());
        let mut out = Cob::zero(self.n, self.tgt.clone(), self.src.clone());
        for (e, c) in &self.terms {
            let mut w = e[..arcs].to_vec();
            w.extend_from_slice(&e[arcs + s..arcs + s + t]);
            w.extend_from_slice(&e[arcs..arcs + s]);
            out.add_term(w, c.clone());
        }
        out
    }

    /// Vertical composition `self ∘ f`.
    pub fn compose(&self, f: &Cob) -> Result<Cob> {
        let g = self;
        if f.tgt != g.src || f.n != g.n {
            return Err(Error::NotComposable(format!("{}→{} then {}→{}", f.src, f.tgt, g.src, g.tgt)));
        }
        let (cf, cg) = (f.curves(), g.curves());
        let cr = CurveSet::new(&f.src, &g.tgt)?;
        let off = cf.len();
        let mid = &f.tgt;
        let intervals: Vec<_> = (0..mid.arcs().len()).map(|a| (cf.of_tgt_arc[a], off + cg.of_src_arc[a])).collect();
        let circles: Vec<_> = (0..mid.circles()).map(|c| (cf.of_tgt_circle[c], off + cg.of_src_circle[c])).collect();
        let result_disk: Vec<usize> = cr
            .curves
            .iter()
            .map(|c| {
                if let Some(&a) = c.src_arcs.first() {
                    cf.of_src_arc[a]
                } else if let Some(k) = c.src_circle {
                    cf.of_src_circle[k]
                } else {
                    off + cg.of_tgt_circle[c.tgt_circle.expect("curve without boundary")]
                }
            })
            .collect();
        let p = plan(off + cg.len(), &intervals, &circles, &result_disk)?;
        let mut out = Cob::zero(f.n, f.src.clone(), g.tgt.clone());
        let mut exps = vec![0u32; off + cg.len()];
        for (ef, vf) in &f.terms {
            exps[..off].copy_from_slice(ef);
            for (eg, vg) in &g.terms {
                exps[off..].copy_from_slice(eg);
                let c = vf * vg;
                for (w, k) in p.evaluate(f.n, &exps, cr.len()) {
                    out.add_term(w, &c * k);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal composition with `self` on the left.
    pub fn hglue(&self, right: &Cob) -> Result<Cob> {
        let f = self;
        let g = right;
        if f.n != g.n {
            return Err(Error::NotComposable("different n".into()));
        }
        let src = f.src.glue(&g.src)?;
        let tgt = f.tgt.glue(&g.tgt)?;
        let (cf, cg) = (f.curves(), g.curves());
        let cr = CurveSet::new(&src.planar, &tgt.planar)?;
        let off = cf.len();
        let intervals = [(cf.of_point[1], off + cg.of_point[0]), (cf.of_point[2], off + cg.of_point[3])];
        let result_disk = traced_result_disks(&cr, &src, &tgt, &[&cf, &cg], &[0, off], off + cg.len());
        let p = plan(off + cg.len(), &intervals, &[], &result_disk)?;
        let mut out = Cob::zero(f.n, src.planar.clone(), tgt.planar.clone());
        let mut exps = vec![0u32; off + cg.len()];
        for (ef, vf) in &f.terms {
            exps[..off].copy_from_slice(ef);
            for (eg, vg) in &g.terms {
                exps[off..].copy_from_slice(eg);
                let c = vf * vg;
                for (w, k) in p.evaluate(f.n, &exps, cr.len()) {
                    out.add_term(w, &c * k);
                }
            }
        }
        Ok(out)
    }

    /// Close a four-ended cobordism by gluing a strip along each closure pair.
    pub fn close(&self, closure: Closure) -> Result<Cob> {
        let src = self.src.close(closure)?;
        let tgt = self.tgt.close(closure)?;
        let cf = self.curves();
        let cr = CurveSet::new(&src.planar, &tgt.planar)?;
        let off = cf.len();
        let mut intervals = Vec::new();
        for (j, &(p, q)) in closure.pairs().iter().enumerate() {
            intervals.push((off + j, cf.of_point[p]));
            intervals.push((off + j, cf.of_point[q]));
        }
        let result_disk = traced_result_disks(&cr, &src, &tgt, &[&cf], &[0], off);
        let p = plan(off + 2, &intervals, &[], &result_disk)?;
        let mut out = Cob::zero(self.n, src.planar.clone(), tgt.planar.clone());
        let mut exps = vec![0u32; off + 2];
        for (e, v) in &self.terms {
            exps[..off].copy_from_slice(e);
            for (w, k) in p.evaluate(self.n, &exps, cr.len()) {
                out.add_term(w, v * k);
            }
        }
        Ok(out)
    }

    /// The component `proj_tgt ∘ self ∘ incl_src` between circle-free
    /// diagrams, where `incl_i` is a birth of each source circle with
    /// `x^{i_k}` and `proj_j` caps each target circle with `x^{n-1-j_k}`.
    pub fn delooped(&self, src_idx: &[u32], tgt_idx: &[u32]) -> Cob {
        let cs = self.curves();
        let arcs = cs.arc_cycles();
        let n = self.n;
        let src0 = self.src.with_circles(0);
        let tgt0 = self.tgt.with_circles(0);
        let mut out = Cob::zero(n, src0, tgt0);
        'terms: for (e, c) in &self.terms {
            for (k, &i) in src_idx.iter().enumerate() {
                if e[cs.of_src_circle[k]] + i != n - 1 {
                    continue 'terms;
                }
            }
            for (k, &j) in tgt_idx.iter().enumerate() {
                if e[cs.of_tgt_circle[k]] != j {
                    continue 'terms;
                }
            }
            out.add_term(e[..arcs].to_vec(), c.clone());
        }
        out
    }

    /// Birth of every circle of `d` with dots `x^{i_k}`, from `d` without
    /// circles.
    pub fn inclusion(n: u32, d: &Planar, idx: &[u32]) -> Cob {
        let src = d.with_circles(0);
        let cs = CurveSet::new(&src, d).expect("same boundary");
        let mut e = vec![0u32; cs.len()];
        for (k, &i) in idx.iter().enumerate() {
            e[cs.of_tgt_circle[k]] = i;
        }
        let mut out = Cob::zero(n, src, d.clone());
        out.add_term(e, Rational::one());
        out
    }

    /// Cap every circle of `d` with dots `x^{n-1-j_k}`.
    pub fn projection(n: u32, d: &Planar, idx: &[u32]) -> Cob {
        let tgt = d.with_circles(0);
        let cs = CurveSet::new(d, &tgt).expect("same boundary");
        let mut e = vec![0u32; cs.len()];
        for (k, &j) in idx.iter().enumerate() {
            e[cs.of_src_circle[k]] = n - 1 - j;
        }
        let mut out = Cob::zero(n, d.clone(), tgt);
        out.add_term(e, Rational::one());
        out
    }

    /// Scalar value of a cobordism between empty diagrams.
    pub fn scalar(&self) -> Result<Rational> {
        if self.src.boundary() + self.src.circles() + self.tgt.boundary() + self.tgt.circles() != 0 {
            return Err(Error::OpenBoundary);
        }
        Ok(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
    }
}

/// Summands of `d{shift}` after removing its circles: index vectors and
/// their quantum shifts.
pub fn deloop_indices(n: u32, circles: usize, shift: i64) -> Vec<(Vec<u32>, i64)> {
    let mut out = vec![(Vec::new(), shift)];
    for _ in 0..circles {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for (v, s) in &out {
            for i in 0..n {
                let mut w = v.clone();
                w.push(i);
                next.push((w, s + 2 * i as i64 + 1 - n as i64));
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for Cob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}: ", self.src, self.tgt)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let dots: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{c}·[{}]", dots.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Planar {
        Planar::vertical()
    }
    fn h() -> Planar {
        Planar::horizontal()
    }

    #[test]
    fn sphere_and_torus_values() {
        for n in 1..=5u32 {
            // a birth followed by a death is a sphere
            let o = Planar::closed(1);
            let e = Planar::closed(0);
            for i in 0..n {
                let birth = Cob::inclusion(n, &o, &[i]);
                let death = Cob::projection(n, &o, &[0]);
                let s = death.compose(&birth).unwrap().scalar().unwrap();
                assert_eq!(s, if i == 0 { rat(1) } else { rat(0) });
            }
            // an undotted sphere vanishes unless n = 1
            let id = Cob::identity(n, &o);
            let cup = Cob::disks(n, e.clone(), o.clone()).unwrap();
            let cap = Cob::disks(n, o.clone(), e.clone()).unwrap();
            let merge = cap.compose(&id).unwrap();
            let sphere = merge.compose(&cup).unwrap().scalar().unwrap();
            assert_eq!(sphere, if n == 1 { rat(1) } else { rat(0) });
        }
    }

    #[test]
    fn saddle_saddle_is_neck() {
        // )( → = → )( equals the identity surgered once: a genus-free tube
        // between two disks, i.e. Δ on the two arcs' curves.
        for n in 1..=4u32 {
            let s1 = Cob::saddle(n, v(), h()).unwrap();
            let s2 = Cob::saddle(n, h(), v()).unwrap();
            let ss = s2.compose(&s1).unwrap();
            // neck cutting: id ∘ ... = Σ x^i (left) x^{n-1-i} (right)
            let mut expect = Cob::zero(n, v(), v());
            for i in 0..n {
                expect = expect.add(&Cob::decorated(n, v(), v(), &(&Polynomial::var_pow(Mark(0), i) * &Polynomial::var_pow(Mark(1), n - 1 - i))).unwrap()).unwrap();
            }
            assert_eq!(ss, expect);
        }
    }

    #[test]
    fn degrees() {
        let n = 3;
        assert_eq!(Cob::identity(n, &v()).degree(), Some(0));
        assert_eq!(Cob::saddle(n, v(), h()).unwrap().degree(), Some(n as i64 - 1));
        assert_eq!(Cob::inclusion(n, &Planar::closed(1), &[1]).degree(), Some(1 - n as i64 + 2));
        assert_eq!(Cob::identity(n, &Planar::closed(2)).degree(), Some(0));
    }

    #[test]
    fn deloop_inverse_pair() {
        for n in 1..=4u32 {
            let d = v().with_circles(1);
            for i in 0..n {
                for j in 0..n {
                    let c = Cob::projection(n, &d, &[j]).compose(&Cob::inclusion(n, &d, &[i])).unwrap();
                    let expect = if i == j { rat(1) } else { rat(0) };
                    assert_eq!(c.identity_multiple(), Some(expect));
                }
            }
            let mut sum = Cob::zero(n, d.clone(), d.clone());
            for i in 0..n {
                sum = sum.add(&Cob::inclusion(n, &d, &[i]).compose(&Cob::projection(n, &d, &[i])).unwrap()).unwrap();
            }
            assert_eq!(sum, Cob::identity(n, &d));
        }
    }

    #[test]
    fn delooped_matches_composition() {
        let n = 3;
        let d = v().with_circles(1);
        let s = Cob::saddle(n, h(), v()).unwrap().hglue(&Cob::saddle(n, h(), v()).unwrap()).unwrap();
        assert_eq!(s.tgt(), &d);
        for j in 0..n {
            let direct = s.delooped(&[], &[j]);
            let via = Cob::projection(n, &d, &[j]).compose(&s).unwrap();
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn hglue_of_identities() {
        let n = 2;
        let idv = Cob::identity(n, &v());
        let idh = Cob::identity(n, &h());
        assert_eq!(idh.hglue(&idh).unwrap(), Cob::identity(n, &h()));
        assert_eq!(idv.hglue(&idh).unwrap(), Cob::identity(n, &v()));
        assert_eq!(idv.hglue(&idv).unwrap(), Cob::identity(n, &v().with_circles(1)));
    }

    #[test]
    fn closed_saddle_is_merge() {
        // braid closure of the saddle )( → = is the split of one circle
        let n = 2;
        let s = Cob::saddle(n, v(), h()).unwrap().close(Closure::Braid).unwrap();
        assert_eq!(s.src(), &Planar::closed(1));
        assert_eq!(s.tgt(), &Planar::closed(2));
        // Δ(1) = x⊗1 + 1⊗x, Δ(x) = x⊗x
        let at = |i: u32, j: [u32; 2]| s.delooped(&[i], &j).scalar().unwrap();
        assert_eq!(at(0, [1, 0]), rat(1));
        assert_eq!(at(0, [0, 1]), rat(1));
        assert_eq!(at(0, [0, 0]), rat(0));
        assert_eq!(at(1, [1, 1]), rat(1));
        assert_eq!(at(1, [1, 0]), rat(0));
    }

    #[test]
    fn frobenius_counit_and_comultiplication() {
        let a = FrobeniusAlgebra::new(3);
        let d = a.comul(&a.unit());
        assert_eq!(d[0][2], rat(1));
        assert_eq!(d[1][1], rat(1));
        assert_eq!(d[2][0], rat(1));
        assert_eq!(a.counit(&a.mul(&a.basis(1), &a.basis(1))), rat(1));
        assert_eq!(a.handle()[2], rat(3));
    }
}
