//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one line; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use kr_core::chainred::Pivot;
use kr_core::matfact::{
    build_thick_edge, build_two_arcs, chi_maps, compose, is_null_homotopy, thick_edge_linear_homotopy, FactorMorphism,
    Homotopy,
};
use kr_core::oracle::{homfly_of_word, sl2_cube, specialize_sln};
use kr_core::twist::{
    clasp_raw_tensor_power, clasp_tensor_power, close_tangle, homology, reduced_twist_complex, strand_difference, strand_polynomial,
    strand_sum, verify_paper_reduction,
};
use kr_core::webcob::chi::{check_circle, check_digon, check_square, Edge};
use kr_core::webcob::CurveSet;
use kr_core::{Closure, Cob, CrossingSign, FrobeniusAlgebra, Laurent, Mark, Polynomial, TangleWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_cob, random_complex, random_element, random_planar};

const MARKS: [Mark; 4] = [Mark(1), Mark(2), Mark(3), Mark(4)];

fn x(i: u32) -> Polynomial {
    Polynomial::var(Mark(i))
}

fn ac1() -> Result<String, String> {
    for n in 1..=6u32 {
        let l = build_two_arcs(n, MARKS);
        let ct = build_thick_edge(n, MARKS).map_err(|e| e.to_string())?;
        if !l.identity_check() || !ct.identity_check() {
            return Err(format!("d0d1 != ω Id at n={n}"));
        }
        let (c0, c1) = chi_maps(n, MARKS).map_err(|e| e.to_string())?;
        if !c0.commutes(&l, &ct) || !c1.commutes(&ct, &l) {
            return Err(format!("χ square fails to commute at n={n}"));
        }
        let c10 = compose(&c1, &c0).map_err(|e| e.to_string())?;
        if c10.f0 != FactorMorphism::scalar(&l, &(x(1) - x(3))).f0 || c10.f1 != FactorMorphism::scalar(&l, &(x(1) - x(3))).f1 {
            return Err(format!("χ1χ0 != (x1-x3) Id at n={n}"));
        }
        let c01 = compose(&c0, &c1).map_err(|e| e.to_string())?;
        // (x4 - x2) Id - χ0χ1 = -(x1 + x2 - x3 - x4) Id, contracted by -h
        let target = FactorMorphism::scalar(&ct, &(x(4) - x(2)));
        let diff = FactorMorphism {
            f0: target.f0.sub(&c01.f0).map_err(|e| e.to_string())?,
            f1: target.f1.sub(&c01.f1).map_err(|e| e.to_string())?,
            degree: 2,
        };
        let h = thick_edge_linear_homotopy();
        let minus = Polynomial::int(-1);
        let neg_h = Homotopy { h0: h.h0.scale(&minus), h1: h.h1.scale(&minus) };
        if !is_null_homotopy(&ct, &diff, &neg_h) {
            return Err(format!("χ0χ1 - (x4-x2) Id is not null-homotopic via h at n={n}"));
        }
        if c01.f0 != FactorMorphism::scalar(&ct, &(x(1) - x(3))).f0 {
            return Err(format!("χ0χ1 != (x1-x3) Id on the nose at n={n}"));
        }
    }
    Ok("n=1..6; χ0χ1=(x4-x2)Id up to an explicit homotopy, (x1-x3)Id on the nose".into())
}

fn ac2() -> Result<String, String> {
    for n in 1..=5u32 {
        let r = check_circle(n).map_err(|e| e.to_string())?;
        if r.summands != n as usize || !r.identity {
            return Err(format!("Decomposition 0 fails at n={n}"));
        }
    }
    for n in 2..=5u32 {
        for e in [Edge::A, Edge::B] {
            let r = check_digon(n, e).map_err(|e| e.to_string())?;
            if r.summands != n as usize - 1 || !r.identity {
                return Err(format!("Decomposition I fails at n={n}"));
            }
        }
        let r = check_square(n).map_err(|e| e.to_string())?;
        if r.summands != 1 + (n as usize - 2) || !r.identity {
            return Err(format!("Decomposition II fails at n={n}"));
        }
    }
    Ok("0: n=1..5, I and II: n=2..5".into())
}

fn ac3() -> Result<String, String> {
    for n in [3u32, 4, 5] {
        let r = verify_paper_reduction(n).map_err(|e| e.to_string())?;
        if let Some(bad) = r.mismatches().first() {
            return Err(format!("n={n}: {} {}", bad.name, bad.detail));
        }
        let mut needed = vec!["theta_a", "theta_b", "omega_a", "omega_b", "m0_entries", "m1_reduced"];
        if n == 3 {
            needed.extend(["m0_display", "m0_bar_display"]);
        }
        for name in needed {
            if !r.checks.iter().any(|c| c.name == name && c.pass) {
                return Err(format!("n={n}: check {name} missing"));
            }
        }
    }
    Ok("n=3,4,5".into())
}

fn ac4() -> Result<String, String> {
    for n in 2..=5u32 {
        let d = strand_difference();
        let a = strand_sum(n);
        for k in 1..=8usize {
            let c = reduced_twist_complex(k, n, CrossingSign::Positive).map_err(|e| e.to_string())?;
            if !c.check_d_squared().map_err(|e| e.to_string())? {
                return Err(format!("d² != 0 at k={k}, n={n}"));
            }
            for deg in 0..2 * k as i64 - 1 {
                let m = c.differential(deg);
                let want = if deg % 2 == 0 { &d } else { &a };
                if m.len() != 1 || m[0].len() != 1 || strand_polynomial(&m[0][0]).as_ref() != Some(want) {
                    return Err(format!("map {deg} is not the expected strand map at k={k}, n={n}"));
                }
            }
        }
    }
    Ok("k=1..8, n=2..5".into())
}

fn ac5() -> Result<String, String> {
    for n in [2u32, 3, 4] {
        let h = homology(&"T!".parse().map_err(|e: kr_core::Error| e.to_string())?, n).map_err(|e| e.to_string())?;
        if h.iter().any(|(t, _, _)| t != 0) {
            return Err(format!("homology outside degree 0 at n={n}"));
        }
        let expected: Vec<(i64, i64, usize)> = (0..n as i64).map(|i| (0, 1 - n as i64 + 2 * i, 1)).collect();
        if h.iter().collect::<Vec<_>>() != expected {
            return Err(format!("graded dimension is not [n] at n={n}: {:?}", h.entries()));
        }
    }
    Ok("n=2,3,4".into())
}

fn ac6() -> Result<String, String> {
    for n in [2u32, 3, 4] {
        for k in 2..=7i64 {
            let w = TangleWord::twist(k, true);
            let e = homology(&w, n).map_err(|e| e.to_string())?.euler();
            let p = specialize_sln(&homfly_of_word(&w).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
            if e != p {
                return Err(format!("k={k}, n={n}: χ = {e}, HOMFLY = {p}"));
            }
        }
    }
    Ok("k=2..7, n=2,3,4".into())
}

fn ac7() -> Result<String, String> {
    for k in 2..=4i64 {
        let w = TangleWord::twist(k, true);
        let local: BTreeMap<(i64, i64), usize> =
            homology(&w, 2).map_err(|e| e.to_string())?.iter().map(|(t, q, r)| ((t, q), r)).collect();
        let cube = sl2_cube(&w).map_err(|e| e.to_string())?;
        if local != cube {
            return Err(format!("k={k}: local {local:?} cube {cube:?}"));
        }
    }
    Ok("k=2,3,4".into())
}

fn ac8() -> Result<String, String> {
    for n in [2u32, 3] {
        for k in 1..=4usize {
            for closure in [Closure::Braid, Closure::Plat] {
                let mut raw = close_tangle(&clasp_tensor_power(k, n, CrossingSign::Positive).map_err(|e| e.to_string())?, closure)
                    .map_err(|e| e.to_string())?;
                raw.simplify().map_err(|e| e.to_string())?;
                let mut red = close_tangle(&reduced_twist_complex(k, n, CrossingSign::Positive).map_err(|e| e.to_string())?, closure)
                    .map_err(|e| e.to_string())?;
                red.simplify().map_err(|e| e.to_string())?;
                let (a, b) = (raw.homology().map_err(|e| e.to_string())?, red.homology().map_err(|e| e.to_string())?);
                if a != b {
                    return Err(format!("k={k}, n={n}, {closure:?}: {:?} vs {:?}", a.entries(), b.entries()));
                }
            }
        }
    }
    // no elimination before closing, where the raw tensor is small enough
    for (n, kmax) in [(2u32, 3usize), (3, 2)] {
        for k in 1..=kmax {
            for closure in [Closure::Braid, Closure::Plat] {
                let raw = clasp_raw_tensor_power(k, n, CrossingSign::Positive).map_err(|e| e.to_string())?;
                let mut raw = close_tangle(&raw, closure).map_err(|e| e.to_string())?;
                raw.simplify().map_err(|e| e.to_string())?;
                let mut red = close_tangle(&reduced_twist_complex(k, n, CrossingSign::Positive).map_err(|e| e.to_string())?, closure)
                    .map_err(|e| e.to_string())?;
                red.simplify().map_err(|e| e.to_string())?;
                if raw.homology().map_err(|e| e.to_string())? != red.homology().map_err(|e| e.to_string())? {
                    return Err(format!("unreduced raw tensor k={k}, n={n}, {closure:?}"));
                }
            }
        }
    }
    Ok("k=1..4, n=2,3 (n=1 has no clasp), braid and plat closures; fully raw tensor for n=2 k<=3, n=3 k<=2".into())
}

fn frobenius_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(1..=6u32);
    let alg = FrobeniusAlgebra::new(n);
    let (a, b, c) = (random_element(rng, &alg), random_element(rng, &alg), random_element(rng, &alg));
    let nu = n as usize;
    if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) || alg.mul(&a, &b) != alg.mul(&b, &a) {
        return Err("multiplication".into());
    }
    if alg.mul(&alg.unit(), &a) != a {
        return Err("unit".into());
    }
    // counit on the left leg of Δ gives back a
    let d = alg.comul(&a);
    let back: Vec<_> = d[nu - 1].clone();
    if back != a {
        return Err("counit".into());
    }
    // Frobenius: Δ(ab) = (a ⊗ 1) Δ(b)
    let lhs = alg.comul(&alg.mul(&a, &b));
    let db = alg.comul(&b);
    let mut rhs = vec![vec![common::rat(0); nu]; nu];
    for (i, row) in db.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            for (k, ak) in a.iter().enumerate() {
                if i + k < nu {
                    rhs[i + k][j] += ak * v;
                }
            }
        }
    }
    if lhs != rhs {
        return Err("Frobenius relation".into());
    }
    // m ∘ Δ is multiplication by the handle
    let mut md = vec![common::rat(0); nu];
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i + j < nu {
                md[i + j] += v;
            }
        }
    }
    if md != alg.mul(&alg.handle(), &a) {
        return Err("handle".into());
    }
    Ok(())
}

fn functoriality_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(1..=4u32);
    let (p0, p1, p2, p3) = (random_planar(rng), random_planar(rng), random_planar(rng), random_planar(rng));
    let f = random_cob(rng, n, &p0, &p1);
    let g = random_cob(rng, n, &p1, &p2);
    let h = random_cob(rng, n, &p2, &p3);
    let e = |r: kr_core::Result<Cob>| r.map_err(|e| e.to_string());
    if e(e(h.compose(&g))?.compose(&f))? != e(h.compose(&e(g.compose(&f))?))? {
        return Err("associativity".into());
    }
    if e(Cob::identity(n, &p1).compose(&f))? != f || e(f.compose(&Cob::identity(n, &p0)))? != f {
        return Err("identity".into());
    }
    let gf = e(g.compose(&f))?;
    if gf.reflect() != e(f.reflect().compose(&g.reflect()))? {
        return Err("reflection".into());
    }
    for closure in [Closure::Braid, Closure::Plat] {
        if e(gf.close(closure))? != e(e(g.close(closure))?.compose(&e(f.close(closure))?))? {
            return Err("closure".into());
        }
    }
    let (q0, q1) = (random_planar(rng), random_planar(rng));
    let f2 = random_cob(rng, n, &q0, &q1);
    let q2 = random_planar(rng);
    let g2 = random_cob(rng, n, &q1, &q2);
    let lhs = e(gf.hglue(&e(g2.compose(&f2))?))?;
    let rhs = e(e(g.hglue(&g2))?.compose(&e(f.hglue(&f2))?))?;
    if lhs != rhs {
        return Err("interchange".into());
    }
    // delooping the middle object: g∘f = Σ_m ι_m π_m inserted between
    let mid: Vec<Vec<u32>> = kr_core::webcob::deloop_indices(n, p1.circles(), 0).into_iter().map(|(i, _)| i).collect();
    for si in kr_core::webcob::deloop_indices(n, p0.circles(), 0) {
        for ti in kr_core::webcob::deloop_indices(n, p2.circles(), 0) {
            let mut acc = Cob::zero(n, p0.with_circles(0), p2.with_circles(0));
            for m in &mid {
                acc = e(acc.add(&e(g.delooped(m, &ti.0).compose(&f.delooped(&si.0, m)))?))?;
            }
            if acc != gf.delooped(&si.0, &ti.0) {
                return Err("delooping".into());
            }
        }
    }
    if let (Some(dg), Some(df), Some(dgf)) = (g.degree(), f.degree(), gf.degree()) {
        if dgf != dg + df {
            return Err("degree".into());
        }
    }
    let _ = CurveSet::new(&p0, &p1).map_err(|e| e.to_string())?;
    Ok(())
}

fn ac9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let complexes = 1000;
    for i in 0..complexes {
        let rc = random_complex(&mut rng);
        if !rc.complex.check_d_squared().map_err(|e| e.to_string())? {
            return Err(format!("random complex {i} has d² != 0"));
        }
        let by_rank = rc.complex.homology().map_err(|e| e.to_string())?;
        let by_elim = rc.complex.homology_by_elimination().map_err(|e| e.to_string())?;
        if by_rank != rc.truth || by_elim != rc.truth {
            return Err(format!("random complex {i}: truth {:?} rank {:?} elim {:?}", rc.truth, by_rank, by_elim));
        }
        // elimination order: a random pivot at every step gives the same result
        let mut c = rc.complex.clone();
        let mut local = ChaCha8Rng::seed_from_u64(i);
        c.simplify_by(|ps: &[Pivot]| local.random_range(0..ps.len())).map_err(|e| e.to_string())?;
        if c.chain_dimensions() != rc.truth {
            return Err(format!("random complex {i}: elimination order changed the result"));
        }
    }
    let frob = 600;
    for _ in 0..frob {
        frobenius_case(&mut rng).map_err(|e| format!("Frobenius axiom: {e}"))?;
    }
    let func = 600;
    for _ in 0..func {
        functoriality_case(&mut rng).map_err(|e| format!("functoriality: {e}"))?;
    }
    // elimination order on a cobordism complex: random pivots, same homology
    for seed in 0..10u64 {
        let mut t = clasp_tensor_power(1, 3, CrossingSign::Positive).map_err(|e| e.to_string())?;
        let raw = kr_core::twist::compose_tangle_complexes(&t, &t).map_err(|e| e.to_string())?;
        let mut local = ChaCha8Rng::seed_from_u64(seed);
        t = raw.clone();
        t.simplify_by(|ps: &[Pivot]| local.random_range(0..ps.len())).map_err(|e| e.to_string())?;
        let mut a = close_tangle(&t, Closure::Braid).map_err(|e| e.to_string())?;
        a.simplify().map_err(|e| e.to_string())?;
        let mut b = close_tangle(&raw, Closure::Braid).map_err(|e| e.to_string())?;
        b.simplify().map_err(|e| e.to_string())?;
        if a.homology().map_err(|e| e.to_string())? != b.homology().map_err(|e| e.to_string())? {
            return Err(format!("cobordism elimination order {seed}"));
        }
    }
    let _ = Laurent::zero();
    Ok(format!("{complexes} complexes, {frob} Frobenius, {func} functoriality cases"))
}

type Criterion = (&'static str, &'static str, fn() -> Result<String, String>, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "matrix factorization identities", ac1, Duration::from_secs(5)),
        ("AC2", "direct sum decompositions", ac2, Duration::from_secs(5)),
        ("AC3", "clasp reduction matrices", ac3, Duration::from_secs(30)),
        ("AC4", "reduced twist complex", ac4, Duration::from_secs(10)),
        ("AC5", "unknot", ac5, Duration::from_secs(5)),
        ("AC6", "Euler characteristic vs HOMFLY", ac6, Duration::from_secs(60)),
        ("AC7", "local pipeline vs sl2 cube", ac7, Duration::from_secs(60)),
        ("AC8", "raw vs closed-form pipeline", ac8, Duration::from_secs(120)),
        ("AC9", "property suites", ac9, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, name, run, bound) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, note) = match outcome {
            Ok(note) if elapsed <= bound => (true, note),
            Ok(note) => (false, format!("{note}; over the time bound")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{id} {} {name} ({:.2}s, bound {}s): {note}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            bound.as_secs()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
