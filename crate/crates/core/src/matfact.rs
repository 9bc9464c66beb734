//! Graded matrix factorizations over `Q[x_i]`, their tensor products, the
//! arc and thick-edge factorizations and the maps `χ₀`, `χ₁` between them.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{exact_div, pi_polynomial, u_pair, Mark, Polynomial};

/// Dense matrix of polynomials, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        PolyMatrix::scalar(n, &Polynomial::one())
    }

    pub fn scalar(n: usize, p: &Polynomial) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.data[r * self.cols + c] = p;
    }

    pub fn add_at(&mut self, r: usize, c: usize, p: &Polynomial) {
        let idx = r * self.cols + c;
        self.data[idx] = &self.data[idx] + p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape("matrix sum".into()));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&rhs.scale(&Polynomial::int(-1)))
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * p).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[ {} ]", row.join(" | "))?;
        }
        Ok(())
    }
}

/// Free graded module given by the quantum shifts of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    pub shifts: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        GradedFreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifted(&self, k: i64) -> Self {
        GradedFreeModule { shifts: self.shifts.iter().map(|s| s + k).collect() }
    }
}

/// `M⁰ --d0--> M¹ --d1--> M⁰` with `d1∘d0 = d0∘d1 = potential·Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub m0: GradedFreeModule,
    pub m1: GradedFreeModule,
    pub d0: PolyMatrix,
    pub d1: PolyMatrix,
    pub potential: Polynomial,
    /// Labels of the Koszul factors, in tensor order.
    pub labels: Vec<String>,
    /// Label subset naming each generator of `m0` and `m1`.
    pub basis0: Vec<String>,
    pub basis1: Vec<String>,
    pub z2shift: u8,
}

fn label_join(a: &str, b: &str) -> String {
    match (a, b) {
        ("∅", "∅") => "∅".into(),
        ("∅", x) | (x, "∅") => x.into(),
        (x, y) => format!("{x}{y}"),
    }
}

impl MatrixFactorization {
    /// Rank-one factorization `R --p--> R{shift} --q--> R`.
    pub fn koszul(p: Polynomial, q: Polynomial, shift: i64, label: &str) -> Self {
        let potential = &p * &q;
        MatrixFactorization {
            m0: GradedFreeModule::new(vec![0]),
            m1: GradedFreeModule::new(vec![shift]),
            d0: PolyMatrix::from_rows(vec![vec![p]]),
            d1: PolyMatrix::from_rows(vec![vec![q]]),
            potential,
            labels: vec![label.to_string()],
            basis0: vec!["∅".into()],
            basis1: vec![label.to_string()],
            z2shift: 0,
        }
    }

    /// The rank-one factorization `R --1--> R --ω--> R`.
    pub fn trivial(potential: Polynomial) -> Self {
        let mut mf = MatrixFactorization::koszul(Polynomial::one(), potential, 0, "u");
        mf.labels.clear();
        mf
    }

    pub fn identity_check(&self) -> bool {
        let n0 = self.m0.rank();
        let n1 = self.m1.rank();
        let a = self.d1.mul(&self.d0);
        let b = self.d0.mul(&self.d1);
        matches!((a, b), (Ok(a), Ok(b))
            if a == PolyMatrix::scalar(n0, &self.potential) && b == PolyMatrix::scalar(n1, &self.potential))
    }

    /// Graded degree of every nonzero entry of `m` as a map `src -> tgt`.
    fn entry_degrees(m: &PolyMatrix, src: &GradedFreeModule, tgt: &GradedFreeModule) -> Vec<Option<i64>> {
        let mut out = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                out.push(e.graded_degree().map(|d| d + tgt.shifts[r] - src.shifts[c]));
            }
        }
        out
    }

    /// True if both differentials are homogeneous of degree `n + 1`.
    pub fn is_homogeneous_of_degree(&self, deg: i64) -> bool {
        Self::entry_degrees(&self.d0, &self.m0, &self.m1)
            .into_iter()
            .chain(Self::entry_degrees(&self.d1, &self.m1, &self.m0))
            .all(|d| d == Some(deg))
    }

    /// Quantum shift `{k}` and Z/2 shift `⟨z2⟩`.
    pub fn shift(&self, quantum: i64, z2: u8) -> Self {
        let mut out = self.clone();
        out.m0 = out.m0.shifted(quantum);
        out.m1 = out.m1.shifted(quantum);
        if z2 % 2 == 1 {
            std::mem::swap(&mut out.m0, &mut out.m1);
            std::mem::swap(&mut out.d0, &mut out.d1);
            std::mem::swap(&mut out.basis0, &mut out.basis1);
        }
        out.z2shift = (out.z2shift + z2) % 2;
        out
    }

    /// Tensor product. Basis: even part `[a0⊗b0, a1⊗b1]`, odd part
    /// `[a1⊗b0, a0⊗b1]`, each block `a`-major. The differential is
    /// `d(u⊗v) = (-1)^{|v|} du⊗v + u⊗dv`.
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let (ra0, ra1, rb0, rb1) = (a.m0.rank(), a.m1.rank(), b.m0.rank(), b.m1.rank());
        // offsets of the four blocks
        let e00 = 0;
        let e11 = ra0 * rb0;
        let o10 = 0;
        let o01 = ra1 * rb0;
        let n_even = ra0 * rb0 + ra1 * rb1;
        let n_odd = ra1 * rb0 + ra0 * rb1;
        let mut d0 = PolyMatrix::zeros(n_odd, n_even);
        let mut d1 = PolyMatrix::zeros(n_even, n_odd);
        let minus = Polynomial::int(-1);

        // even generators a0⊗b0
        for i in 0..ra0 {
            for j in 0..rb0 {
                let col = e00 + i * rb0 + j;
                for r in 0..ra1 {
                    d0.add_at(o10 + r * rb0 + j, col, a.d0.get(r, i));
                }
                for r in 0..rb1 {
                    d0.add_at(o01 + i * rb1 + r, col, b.d0.get(r, j));
                }
            }
        }
        // even generators a1⊗b1
        for i in 0..ra1 {
            for j in 0..rb1 {
                let col = e11 + i * rb1 + j;
                for r in 0..ra0 {
                    d0.add_at(o01 + r * rb1 + j, col, &(a.d1.get(r, i) * &minus));
                }
                for r in 0..rb0 {
                    d0.add_at(o10 + i * rb0 + r, col, b.d1.get(r, j));
                }
            }
        }
        // odd generators a1⊗b0
        for i in 0..ra1 {
            for j in 0..rb0 {
                let col = o10 + i * rb0 + j;
                for r in 0..ra0 {
                    d1.add_at(e00 + r * rb0 + j, col, a.d1.get(r, i));
                }
                for r in 0..rb1 {
                    d1.add_at(e11 + i * rb1 + r, col, b.d0.get(r, j));
                }
            }
        }
        // odd generators a0⊗b1
        for i in 0..ra0 {
            for j in 0..rb1 {
                let col = o01 + i * rb1 + j;
                for r in 0..ra1 {
                    d1.add_at(e11 + r * rb1 + j, col, &(a.d0.get(r, i) * &minus));
                }
                for r in 0..rb0 {
                    d1.add_at(e00 + i * rb0 + r, col, b.d1.get(r, j));
                }
            }
        }

        let pair_shifts = |x: &GradedFreeModule, y: &GradedFreeModule| -> Vec<i64> {
            x.shifts.iter().flat_map(|s| y.shifts.iter().map(move |t| s + t)).collect()
        };
        let pair_labels = |x: &[String], y: &[String]| -> Vec<String> {
            x.iter().flat_map(|s| y.iter().map(move |t| label_join(s, t))).collect()
        };
        let mut even = pair_shifts(&a.m0, &b.m0);
        even.extend(pair_shifts(&a.m1, &b.m1));
        let mut odd = pair_shifts(&a.m1, &b.m0);
        odd.extend(pair_shifts(&a.m0, &b.m1));
        let mut basis0 = pair_labels(&a.basis0, &b.basis0);
        basis0.extend(pair_labels(&a.basis1, &b.basis1));
        let mut basis1 = pair_labels(&a.basis1, &b.basis0);
        basis1.extend(pair_labels(&a.basis0, &b.basis1));

        MatrixFactorization {
            m0: GradedFreeModule::new(even),
            m1: GradedFreeModule::new(odd),
            d0,
            d1,
            potential: &a.potential + &b.potential,
            labels: a.labels.iter().chain(&b.labels).cloned().collect(),
            basis0,
            basis1,
            z2shift: (a.z2shift + b.z2shift) % 2,
        }
    }

    /// Labeled block-matrix rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "potential: {}", self.potential);
        let gens = |names: &[String], m: &GradedFreeModule| -> String {
            names
                .iter()
                .zip(&m.shifts)
                .map(|(l, k)| format!("R({l}){{{k}}}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(s, "M0: {}", gens(&self.basis0, &self.m0));
        let _ = writeln!(s, "M1: {}", gens(&self.basis1, &self.m1));
        let _ = writeln!(s, "d0:\n{}", self.d0);
        let _ = write!(s, "d1:\n{}", self.d1);
        s
    }
}

/// Arc factorization `L_j^i`: `R --π_ij--> R{1-n} --(x_i - x_j)--> R`.
pub fn build_arc(n: u32, i: Mark, j: Mark, label: &str) -> MatrixFactorization {
    MatrixFactorization::koszul(
        pi_polynomial(n, i, j),
        &Polynomial::var(i) - &Polynomial::var(j),
        1 - n as i64,
        label,
    )
}

/// Thick-edge factorization `C_t`, marks `x1, x2` outgoing and `x3, x4`
/// incoming. The even generators are `R(∅){-1}, R(a'b'){3-2n}` and the odd
/// ones `R(a'){-n}, R(b'){2-n}`.
pub fn build_thick_edge(n: u32, marks: [Mark; 4]) -> Result<MatrixFactorization> {
    let [m1, m2, m3, m4] = marks;
    let x = Polynomial::var;
    let (u1, u2) = u_pair(n, marks)?;
    let lin = x(m1) + x(m2) - x(m3) - x(m4);
    let quad = x(m1) * x(m2) - x(m3) * x(m4);
    let first = MatrixFactorization::koszul(u1, lin, 1 - n as i64, "a'");
    let second = MatrixFactorization::koszul(u2, quad, 3 - n as i64, "b'");
    Ok(MatrixFactorization::tensor(&first, &second).shift(-1, 0))
}

/// The two-arc factorization `L_4^1 ⊗ L_3^2` of the oriented resolution.
pub fn build_two_arcs(n: u32, marks: [Mark; 4]) -> MatrixFactorization {
    let [m1, m2, m3, m4] = marks;
    MatrixFactorization::tensor(&build_arc(n, m1, m4, "a"), &build_arc(n, m2, m3, "b"))
}

/// A morphism of factorizations `(f0: M⁰ -> N⁰, f1: M¹ -> N¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMorphism {
    pub f0: PolyMatrix,
    pub f1: PolyMatrix,
    pub degree: i64,
}

impl FactorMorphism {
    pub fn identity(m: &MatrixFactorization) -> Self {
        FactorMorphism {
            f0: PolyMatrix::identity(m.m0.rank()),
            f1: PolyMatrix::identity(m.m1.rank()),
            degree: 0,
        }
    }

    pub fn scalar(m: &MatrixFactorization, p: &Polynomial) -> Self {
        FactorMorphism {
            f0: PolyMatrix::scalar(m.m0.rank(), p),
            f1: PolyMatrix::scalar(m.m1.rank(), p),
            degree: p.graded_degree().unwrap_or(0),
        }
    }

    /// `N.d0 f0 = f1 M.d0` and `N.d1 f1 = f0 M.d1`.
    pub fn commutes(&self, src: &MatrixFactorization, tgt: &MatrixFactorization) -> bool {
        let sq = |a: Result<PolyMatrix>, b: Result<PolyMatrix>| matches!((a, b), (Ok(a), Ok(b)) if a == b);
        sq(tgt.d0.mul(&self.f0), self.f1.mul(&src.d0)) && sq(tgt.d1.mul(&self.f1), self.f0.mul(&src.d1))
    }

    /// True if every nonzero entry has graded degree `self.degree` as a map
    /// between the shifted generators.
    pub fn is_homogeneous(&self, src: &MatrixFactorization, tgt: &MatrixFactorization) -> bool {
        MatrixFactorization::entry_degrees(&self.f0, &src.m0, &tgt.m0)
            .into_iter()
            .chain(MatrixFactorization::entry_degrees(&self.f1, &src.m1, &tgt.m1))
            .all(|d| d == Some(self.degree))
    }
}

/// `g ∘ f`.
pub fn compose(g: &FactorMorphism, f: &FactorMorphism) -> Result<FactorMorphism> {
    Ok(FactorMorphism { f0: g.f0.mul(&f.f0)?, f1: g.f1.mul(&f.f1)?, degree: f.degree + g.degree })
}

/// The maps `χ₀: C(Γ⁰) -> C(Γ¹)` (matrices `U₀, U₁`) and
/// `χ₁: C(Γ¹) -> C(Γ⁰)` (matrices `V₀, V₁`), with `λ = 0`, `μ = 1`.
pub fn chi_maps(n: u32, marks: [Mark; 4]) -> Result<(FactorMorphism, FactorMorphism)> {
    let [m1, _m2, m3, m4] = marks;
    let x = Polynomial::var;
    let (u1, u2) = u_pair(n, marks)?;
    let pi23 = pi_polynomial(n, marks[1], marks[2]);
    let inner = exact_div(&(&u1 + &(&x(m1) * &u2) - pi23), &(x(m1) - x(m4)))?;
    let one = Polynomial::one;
    let u0 = PolyMatrix::from_rows(vec![vec![x(m1) - x(m3), Polynomial::zero()], vec![inner.clone(), one()]]);
    let u1m = PolyMatrix::from_rows(vec![vec![x(m1), -x(m3)], vec![Polynomial::int(-1), one()]]);
    let v0 = PolyMatrix::from_rows(vec![vec![one(), Polynomial::zero()], vec![-inner, x(m1) - x(m3)]]);
    let v1 = PolyMatrix::from_rows(vec![vec![one(), x(m3)], vec![one(), x(m1)]]);
    Ok((
        FactorMorphism { f0: u0, f1: u1m, degree: 1 },
        FactorMorphism { f0: v0, f1: v1, degree: 1 },
    ))
}

/// Odd map `(h0: M⁰ -> M¹, h1: M¹ -> M⁰)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub h0: PolyMatrix,
    pub h1: PolyMatrix,
}

/// Checks `f = d∘h + h∘d` on an endomorphism `f` of `m`.
pub fn is_null_homotopy(m: &MatrixFactorization, f: &FactorMorphism, h: &Homotopy) -> bool {
    let even = m.d1.mul(&h.h0).and_then(|a| a.add(&h.h1.mul(&m.d0)?));
    let odd = m.d0.mul(&h.h1).and_then(|a| a.add(&h.h0.mul(&m.d1)?));
    matches!((even, odd), (Ok(e), Ok(o)) if e == f.f0 && o == f.f1)
}

/// A homotopy on `C_t` contracting multiplication by `x1 + x2 - x3 - x4`,
/// which is the differential entry of the first Koszul factor.
pub fn thick_edge_linear_homotopy() -> Homotopy {
    let z = Polynomial::zero;
    Homotopy {
        h0: PolyMatrix::from_rows(vec![vec![Polynomial::one(), z()], vec![z(), z()]]),
        h1: PolyMatrix::from_rows(vec![vec![z(), z()], vec![z(), Polynomial::int(-1)]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MARKS: [Mark; 4] = [Mark(1), Mark(2), Mark(3), Mark(4)];

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Mark(i))
    }

    #[test]
    fn arc_n2_matrices() {
        let l = build_arc(2, Mark(1), Mark(4), "a");
        assert_eq!(l.d0.get(0, 0), &(x(1).pow(2) + x(1) * x(4) + x(4).pow(2)));
        assert_eq!(l.d1.get(0, 0), &(x(1) - x(4)));
        assert_eq!(l.m1.shifts, vec![-1]);
        assert!(l.identity_check());
    }

    #[test]
    fn arc_n3_potential() {
        let l = build_arc(3, Mark(1), Mark(4), "a");
        assert_eq!(l.potential, x(1).pow(4) - x(4).pow(4));
        assert!(l.is_homogeneous_of_degree(4));
    }

    #[test]
    fn two_arcs_reproduce_p0_p1() {
        let n = 3;
        let m = build_two_arcs(n, MARKS);
        let pi14 = pi_polynomial(n, Mark(1), Mark(4));
        let pi23 = pi_polynomial(n, Mark(2), Mark(3));
        let p0 = PolyMatrix::from_rows(vec![vec![pi14.clone(), x(2) - x(3)], vec![pi23.clone(), x(4) - x(1)]]);
        let p1 = PolyMatrix::from_rows(vec![vec![x(1) - x(4), x(2) - x(3)], vec![pi23, -pi14]]);
        assert_eq!(m.d0, p0);
        assert_eq!(m.d1, p1);
        assert_eq!(m.basis0, vec!["∅", "ab"]);
        assert_eq!(m.basis1, vec!["a", "b"]);
        assert_eq!(m.m0.shifts, vec![0, 2 - 2 * n as i64]);
        assert_eq!(m.potential, x(1).pow(4) + x(2).pow(4) - x(3).pow(4) - x(4).pow(4));
    }

    #[test]
    fn thick_edge_reproduces_q1_q2() {
        let n = 2;
        let c = build_thick_edge(n, MARKS).unwrap();
        let (u1, u2) = u_pair(n, MARKS).unwrap();
        let s = x(1) + x(2) - x(3) - x(4);
        let t = x(1) * x(2) - x(3) * x(4);
        let q1 = PolyMatrix::from_rows(vec![vec![u1.clone(), t.clone()], vec![u2.clone(), -s.clone()]]);
        let q2 = PolyMatrix::from_rows(vec![vec![s, t], vec![u2, -u1]]);
        assert_eq!(c.d0, q1);
        assert_eq!(c.d1, q2);
        assert_eq!(c.m0.shifts, vec![-1, 3 - 2 * n as i64]);
        assert_eq!(c.m1.shifts, vec![-(n as i64), 2 - n as i64]);
        assert!(c.identity_check());
    }

    #[test]
    fn tensor_with_trivial_factorization() {
        let l = build_arc(2, Mark(1), Mark(2), "a");
        let t = MatrixFactorization::trivial(x(5).pow(3));
        let p = MatrixFactorization::tensor(&l, &t);
        assert!(p.identity_check());
        assert_eq!(p.potential, &l.potential + &x(5).pow(3));
    }

    #[test]
    fn shift_round_trip() {
        let l = build_arc(3, Mark(1), Mark(2), "a");
        assert_eq!(l.shift(0, 0), l);
        assert_eq!(l.shift(2, 1).shift(-2, 1), l);
    }

    #[test]
    fn chi_compositions() {
        for n in 1..=4 {
            let g0 = build_two_arcs(n, MARKS);
            let g1 = build_thick_edge(n, MARKS).unwrap();
            let (c0, c1) = chi_maps(n, MARKS).unwrap();
            assert!(c0.commutes(&g0, &g1));
            assert!(c1.commutes(&g1, &g0));
            assert!(c0.is_homogeneous(&g0, &g1), "n={n}");
            assert!(c1.is_homogeneous(&g1, &g0), "n={n}");
            let c10 = compose(&c1, &c0).unwrap();
            assert_eq!(c10, FactorMorphism { degree: 2, ..FactorMorphism::scalar(&g0, &(x(1) - x(3))) });
            let c01 = compose(&c0, &c1).unwrap();
            assert_eq!(c01.f0, PolyMatrix::scalar(2, &(x(1) - x(3))));
            let diff = FactorMorphism::scalar(&g1, &(&(x(1) + x(2)) - &(x(3) + x(4))));
            assert!(is_null_homotopy(&g1, &diff, &thick_edge_linear_homotopy()));
        }
    }

    #[test]
    fn u1_matrix_entry() {
        let (c0, _) = chi_maps(3, MARKS).unwrap();
        let u1 = PolyMatrix::from_rows(vec![vec![x(1), -x(3)], vec![Polynomial::int(-1), Polynomial::one()]]);
        assert_eq!(c0.f1, u1);
    }
}
