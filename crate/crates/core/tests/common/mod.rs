#![allow(dead_code)]

use kr_core::chainred::{ChainComplex, Scalars};
use kr_core::webcob::CurveSet;
use kr_core::{BigradedDimensions, Cob, FrobeniusAlgebra, Planar, Rational};
use num_traits::Zero;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// A homogeneous complex over Q with known homology: a sum of single
/// generators and contractible pairs, hidden by random degree-preserving
/// changes of basis and shuffles.
pub struct RandomComplex {
    pub complex: ChainComplex<Scalars>,
    pub truth: BigradedDimensions,
}

fn nonzero(rng: &mut impl Rng) -> i64 {
    let c = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

pub fn random_complex(rng: &mut impl Rng) -> RandomComplex {
    let top = rng.random_range(1..=4usize);
    let mut objs: Vec<Vec<i64>> = vec![Vec::new(); top + 1];
    let mut pairs: Vec<(usize, usize, usize, i64)> = Vec::new();
    let mut truth = BigradedDimensions::new();
    for _ in 0..rng.random_range(1..=7) {
        let q = rng.random_range(-3..=3);
        if rng.random_bool(0.4) {
            let t = rng.random_range(0..=top);
            objs[t].push(q);
            truth.add(t as i64, q, 1);
        } else {
            let t = rng.random_range(0..top);
            objs[t].push(q);
            objs[t + 1].push(q);
            pairs.push((t, objs[t].len() - 1, objs[t + 1].len() - 1, nonzero(rng)));
        }
    }
    let mut d: Vec<Vec<Vec<Rational>>> =
        (0..top).map(|t| vec![vec![Rational::zero(); objs[t].len()]; objs[t + 1].len()]).collect();
    for &(t, s, r, c) in &pairs {
        d[t][r][s] = rat(c);
    }
    for t in 0..=top {
        let len = objs[t].len();
        for _ in 0..3 * len {
            let (a, b) = (rng.random_range(0..len.max(1)), rng.random_range(0..len.max(1)));
            if len == 0 || a == b || objs[t][a] != objs[t][b] {
                continue;
            }
            let c = rat(nonzero(rng));
            // new basis vector e_a' = e_a + c e_b on the source side of d_t,
            // rows of d_{t-1} transform by the inverse
            if t < top {
                for row in d[t].iter_mut() {
                    let v = &row[b] * &c;
                    row[a] += v;
                }
            }
            if t > 0 {
                let (ra, rb) = (d[t - 1][a].clone(), d[t - 1][b].clone());
                for (x, y) in d[t - 1][b].iter_mut().zip(ra.iter().zip(&rb)) {
                    *x = y.1 - &(y.0 * &c);
                }
            }
        }
        let mut perm: Vec<usize> = (0..len).collect();
        perm.shuffle(rng);
        objs[t] = perm.iter().map(|&i| objs[t][i]).collect();
        if t < top {
            for row in d[t].iter_mut() {
                *row = perm.iter().map(|&i| row[i].clone()).collect();
            }
        }
        if t > 0 {
            d[t - 1] = perm.iter().map(|&i| d[t - 1][i].clone()).collect();
        }
    }
    let mut complex = ChainComplex::new(Scalars);
    for (t, v) in objs.iter().enumerate() {
        for &q in v {
            complex.push_object(t as i64, q);
        }
    }
    for (t, m) in d.into_iter().enumerate() {
        if !m.is_empty() && !m[0].is_empty() {
            complex.set_differential(t as i64, m).expect("shape");
        }
    }
    RandomComplex { complex, truth }
}

pub fn planar_pool() -> Vec<Planar> {
    let (v, h) = (Planar::vertical(), Planar::horizontal());
    vec![v.clone(), h.clone(), v.with_circles(1), h.with_circles(1), v.with_circles(2)]
}

pub fn random_planar(rng: &mut impl Rng) -> Planar {
    planar_pool().choose(rng).expect("nonempty").clone()
}

/// A random decorated cobordism with up to three terms.
pub fn random_cob(rng: &mut impl Rng, n: u32, src: &Planar, tgt: &Planar) -> Cob {
    let k = CurveSet::new(src, tgt).expect("same boundary").len();
    let terms: Vec<(Vec<u32>, Rational)> = (0..rng.random_range(1..=3))
        .map(|_| ((0..k).map(|_| rng.random_range(0..n)).collect(), rat(nonzero(rng))))
        .collect();
    Cob::from_terms(n, src.clone(), tgt.clone(), terms).expect("valid terms")
}

pub fn random_element(rng: &mut impl Rng, a: &FrobeniusAlgebra) -> Vec<Rational> {
    (0..a.n).map(|_| rat(rng.random_range(-3..=3))).collect()
}
