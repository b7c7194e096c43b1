//! Acceptance suite: ten criteria, each checked against an oracle written here, with one
//! PASS/FAIL line per criterion. Runs without the libtest harness so the lines always show.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wildcover::checks::{self, SuiteConfig};
use wildcover::covertorus::CoverTorusGroup;
use wildcover::coxeter::AffineWeyl;
use wildcover::imhecke::{self, sl3f2, HeckeAlgebra, HeckeTrials};
use wildcover::padic::{hilbert, DecompositionCase, FieldSpec, SquareClass, SquareClassSpace};
use wildcover::pseudospherical::{self as ps, Gaussian};
use wildcover::report::all_pass;
use wildcover::rootdata::{CartanType, RootDatum};
use wildcover::Result;

use CartanType::{A, D, E};

type Failures = Vec<String>;

fn fail_if(out: &mut Failures, bad: bool, msg: impl FnOnce() -> String) {
    if bad {
        out.push(msg());
    }
}

fn space(e: usize, f: usize, eis: Option<&[i64]>) -> Result<SquareClassSpace> {
    SquareClassSpace::new(FieldSpec::new(e, f, eis)?)
}

const FIELDS: [(usize, usize); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3)];

/// Reference table: quotient group, [Y:Ỹ] and the odd/even node patterns.
fn table1() -> Vec<(CartanType, usize, &'static str, u64, Vec<&'static str>)> {
    vec![
        (A, 2, "1", 4, vec![]),
        (A, 3, "Z/2", 4, vec!["o*o"]),
        (A, 4, "1", 16, vec![]),
        (A, 5, "Z/2", 16, vec!["o*o*o"]),
        (A, 6, "1", 64, vec![]),
        (A, 7, "Z/2", 64, vec!["o*o*o*o"]),
        (A, 8, "1", 256, vec![]),
        (A, 9, "Z/2", 256, vec!["o*o*o*o*o"]),
        (D, 3, "Z/2", 4, vec!["*oo"]),
        (D, 4, "Z/2 x Z/2", 4, vec!["o*o*", "o**o", "**oo"]),
        (D, 5, "Z/2", 16, vec!["***oo"]),
        (D, 6, "Z/2 x Z/2", 16, vec!["o*o*o*", "o*o**o", "****oo"]),
        (D, 7, "Z/2", 64, vec!["*****oo"]),
        (D, 8, "Z/2 x Z/2", 64, vec!["o*o*o*o*", "o*o*o**o", "******oo"]),
        (E, 6, "1", 64, vec![]),
        (E, 7, "Z/2", 64, vec!["*o**o*o"]),
        (E, 8, "1", 256, vec![]),
    ]
}

fn criterion_1() -> Result<Failures> {
    let mut out = Vec::new();
    for (t, r, group, index, diagrams) in table1() {
        let row = RootDatum::new(t, r)?.lattice_row();
        let want: BTreeSet<&str> = diagrams.into_iter().collect();
        let got: BTreeSet<&str> = row.diagrams.iter().map(|s| s.as_str()).collect();
        fail_if(&mut out, row.quotient != group || row.index != index || want != got, || {
            format!("{t}{r}: got {} {} {:?}", row.quotient, row.index, row.diagrams)
        });
    }
    Ok(out)
}

fn criterion_2() -> Result<Failures> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (e, f) in FIELDS {
        let k = FieldSpec::new(e, f, None)?;
        let conic = hilbert::method("conic")?;
        let tag = format!("(e,f)=({e},{f})");
        let units: Vec<SquareClass> = k.all_classes().filter(|c| k.parity(*c) == 0).collect();
        let mut radical = Vec::new();
        for a in &units {
            let mut trivial = true;
            for b in &units {
                trivial &= conic.symbol(&k, *a, *b)? == 1;
            }
            if trivial {
                radical.push(*a);
            }
        }
        fail_if(&mut out, radical.len() != 2, || format!("{tag}: |R/O×²| = {}", radical.len()));
        fail_if(&mut out, units.len() / radical.len().max(1) != 1 << (e * f), || {
            format!("{tag}: [O×:R] = {}", units.len() / radical.len().max(1))
        });

        let p2e = k.pi_pow(2 * e);
        let u2e: Vec<_> = (0..k.q())
            .map(|c| k.add(&k.one(), &k.mul(&p2e, &k.lift_residue(c))))
            .collect();
        let mut u2e_classes = BTreeSet::new();
        for x in &u2e {
            u2e_classes.insert(k.class_of_ring(x)?);
        }
        let r_set: BTreeSet<SquareClass> = radical.iter().copied().collect();
        fail_if(&mut out, u2e_classes != r_set, || format!("{tag}: U_2e O×² differs from R"));

        // Squares modulo ϖ^(2e+1) of units known modulo ϖ^(e+1).
        let m = 2 * e + 1;
        let mut squares = HashSet::new();
        for key in 0..1u64 << k.key_bits(e + 1) {
            let w = k.unpack(key, e + 1);
            if k.is_unit(&w) {
                squares.insert(k.pack(&k.square(&w), m));
            }
        }
        let outside = u2e.iter().any(|x| !squares.contains(&k.pack(x, m)));
        fail_if(&mut out, !outside, || format!("{tag}: U_2e consists of squares"));

        let n = k.precision();
        let base = k.pi_pow(m);
        for _ in 0..256 {
            let x = k.unpack(rng.gen_range(0..1u64 << k.key_bits(n - m)), n - m);
            let u = k.add(&k.one(), &k.mul(&base, &x));
            let ok = k
                .hensel_sqrt(&u, &k.one(), n)
                .is_some_and(|w| k.truncate(&k.square(&w), n) == k.truncate(&u, n));
            fail_if(&mut out, !ok, || format!("{tag}: element of U_2e+1 without a square root"));
        }

        let u0 = *radical.iter().find(|c| **c != k.trivial_class()).unwrap_or(&k.trivial_class());
        for a in &units {
            for odd in [1, 3, -1] {
                let b = k.class_of(&k.from_unit(odd, &k.class_rep_ring(*a))?)?;
                let s = conic.symbol(&k, u0, b)?;
                fail_if(&mut out, s != -1, || format!("{tag}: (u, a pi^{odd}) = {s}"));
            }
        }
    }
    Ok(out)
}

/// (a, b)_2 = (-1)^(ε(u)ε(v) + α ω(v) + β ω(u)) for a = 2^α u, b = 2^β v.
fn rational_hilbert(a: i64, b: i64) -> i8 {
    let split = |x: i64| (x.trailing_zeros() as i64, x >> x.trailing_zeros());
    let eps = |u: i64| ((u - 1) / 2).rem_euclid(2);
    let omega = |u: i64| ((u * u - 1) / 8).rem_euclid(2);
    let ((al, u), (be, v)) = (split(a), split(b));
    if (eps(u) * eps(v) + al * omega(v) + be * omega(u)) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn criterion_3() -> Result<Failures> {
    let mut out = Vec::new();
    let k = FieldSpec::new(1, 1, None)?;
    let reps = [1i64, 3, 5, 7, 2, 6, 10, 14, -1, -3, -5, -7, -2, -6, -10, -14];
    let mut seen = HashMap::new();
    for a in reps {
        seen.entry(k.class_of(&k.from_int(a))?).or_insert(a);
    }
    fail_if(&mut out, seen.len() != 8, || format!("Q2 has {} classes among reps", seen.len()));
    let mut pairs = 0;
    for a in seen.values() {
        for b in seen.values() {
            pairs += 1;
            let s = hilbert::hilbert(&k, &k.from_int(*a), &k.from_int(*b))?;
            fail_if(&mut out, s != rational_hilbert(*a, *b), || format!("({a},{b}) = {s}"));
        }
    }
    fail_if(&mut out, pairs != 64, || format!("{pairs} pairs"));

    let norm = hilbert::method("norm")?;
    let conic = hilbert::method("conic")?;
    let mut fields: Vec<(usize, usize, Option<&[i64]>)> = FIELDS.iter().map(|(e, f)| (*e, *f, None)).collect();
    fields.push((2, 1, Some(&[2, -2])));
    for (e, f, eis) in fields {
        let s = space(e, f, eis)?;
        for a in s.basis() {
            for b in s.basis() {
                let (x, y) = (norm.symbol(s.field(), *a, *b)?, conic.symbol(s.field(), *a, *b)?);
                fail_if(&mut out, x != y, || format!("({e},{f},{eis:?}) basis pair: {x} vs {y}"));
            }
        }
    }
    Ok(out)
}

fn criterion_4() -> Result<Failures> {
    let mut out = Vec::new();
    let cases: [(Option<&[i64]>, usize, DecompositionCase); 3] = [
        (None, 1, DecompositionCase::MinusOneAnisotropic),
        (Some(&[2, -2]), 2, DecompositionCase::Alternating),
        (Some(&[-2, 0]), 2, DecompositionCase::MinusOneIsotropic),
    ];
    for (eis, e, want) in cases {
        let s = space(e, 1, eis)?;
        let d = s.decomposition();
        fail_if(&mut out, d.case != want, || format!("e={e} {eis:?}: case {:?}", d.case));
        let in_d = d.minus_one >> d.k() == 0;
        match want {
            DecompositionCase::Alternating => {
                fail_if(&mut out, d.minus_one != 0, || "-1 not in R for Q2(sqrt -1)".into())
            }
            _ => fail_if(&mut out, !in_d || d.minus_one == 0, || {
                format!("e={e} {eis:?}: -1 = {:b} not a nonzero vector of D", d.minus_one)
            }),
        }
    }
    Ok(out)
}

fn criterion_5() -> Result<Failures> {
    let mut out = Vec::new();
    for (t, r, max) in [(A, 2, 6), (A, 3, 6), (D, 4, 6), (E, 6, 3)] {
        let g = AffineWeyl::new(RootDatum::new(t, r)?)?;
        // Coxeter length as breadth-first distance from the length-zero elements.
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        for o in g.omegas() {
            dist.insert(o.elt.clone(), 0usize);
            queue.push_back(o.elt.clone());
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == max {
                continue;
            }
            for s in 0..g.n_gens() {
                let y = g.mul_gen(&x, s);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        let mut bad = 0;
        for (x, d) in &dist {
            if g.length_tilde(x) != *d as u64 || g.length_two(x) != 2 * *d as u64 {
                bad += 1;
            }
        }
        let listed: usize = g.elements_by_length(max).iter().map(|l| l.len()).sum();
        fail_if(&mut out, bad > 0 || listed != dist.len(), || {
            format!("{t}{r}: {bad} of {} elements violate l2 = 2 l~ (listed {listed})", dist.len())
        });
    }
    Ok(out)
}

/// Reference table: (dimension, number) of pseudo-spherical representations.
fn table2(t: CartanType, n: usize, ef: u32) -> (usize, usize) {
    let p = |k: u32| 1usize << k;
    let r = (n / 2) as u32;
    match (t, n % 2) {
        (A, 1) => (p(ef * r), p(ef)),
        (A, _) => (p(ef * r), 1),
        (D, 1) => (p(ef * r), p(ef)),
        (D, _) => (p(ef * (r - 1)), p(2 * ef)),
        (E, _) if n == 6 => (p(3 * ef), 1),
        (E, _) if n == 7 => (p(3 * ef), p(ef)),
        _ => (p(4 * ef), 1),
    }
}

fn criterion_6() -> Result<Failures> {
    let mut out = Vec::new();
    let mut cases: Vec<(usize, usize, CartanType, usize)> = [
        (A, 2), (A, 3), (A, 4), (A, 5), (A, 6), (D, 3), (D, 4), (D, 5), (D, 6), (E, 6), (E, 7), (E, 8),
    ]
    .iter()
    .map(|(t, r)| (1, 1, *t, *r))
    .collect();
    for (e, f) in [(2, 1), (1, 2), (3, 1), (1, 3)] {
        for (t, r) in [(A, 2), (A, 3), (D, 4)] {
            cases.push((e, f, t, r));
        }
    }
    for (e, f, t, r) in cases {
        let s = space(e, f, None)?;
        let g = CoverTorusGroup::new(&s, RootDatum::new(t, r)?)?;
        let reps = ps::all_genuine_reps(&g)?;
        let (dim, count) = table2(t, r, (e * f) as u32);
        let dims: BTreeSet<usize> = reps.iter().map(|x| x.dim).collect();
        let squares: usize = reps.iter().map(|x| x.dim * x.dim).sum();
        fail_if(
            &mut out,
            dims != BTreeSet::from([dim]) || reps.len() != count || 2 * squares != g.order(),
            || format!("{t}{r} ef={}: dims {dims:?} count {} sum {squares} |G| {}", e * f, reps.len(), g.order()),
        );
    }
    Ok(out)
}

fn criterion_7() -> Result<Failures> {
    let mut out = Vec::new();
    let q2 = space(1, 1, None)?;
    for (t, r) in [(A, 2), (A, 3), (A, 4), (A, 5), (A, 6), (D, 3), (D, 4), (D, 5), (D, 6), (E, 6), (E, 7)] {
        let g = CoverTorusGroup::new(&q2, RootDatum::new(t, r)?)?;
        for (i, rep) in ps::all_genuine_reps(&g)?.iter().enumerate() {
            let invariant = (0..r).all(|a| g.elements().all(|x| rep.chi(&g, &g.phi(a, &x)) == rep.chi(&g, &x)));
            fail_if(&mut out, !invariant, || format!("{t}{r} rep {i} not Weyl invariant"));
        }
    }
    for (t, big, judge) in [
        (A, 3, "irreducible"),
        (A, 4, "two distinct"),
        (D, 4, "multiplicity free"),
    ] {
        let g = CoverTorusGroup::new(&q2, RootDatum::new(t, big)?)?;
        let sub = CoverTorusGroup::new(&q2, RootDatum::new(t, big - 1)?)?;
        let sub_reps = ps::all_genuine_reps(&sub)?;
        for rep in ps::all_genuine_reps(&g)? {
            let b = ps::restrict_branch(&g, &rep, &sub, &sub_reps)?;
            let mults: Vec<i64> = b.constituents.iter().map(|c| c.1).collect();
            let ok = match judge {
                "irreducible" => mults == [1],
                "two distinct" => mults == [1, 1],
                _ => mults.iter().all(|m| *m == 1),
            };
            fail_if(&mut out, !ok, || format!("{t}{big}: restriction multiplicities {mults:?}"));
        }
    }
    Ok(out)
}

fn dense_mul(a: &[Vec<Gaussian>], b: &[Vec<Gaussian>]) -> Vec<Vec<Gaussian>> {
    let n = a.len();
    let mut c = vec![vec![Complex::new(0, 0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn criterion_8() -> Result<Failures> {
    let mut out = Vec::new();
    let q2 = space(1, 1, None)?;
    let ef = 1i64;
    for (t, r) in [(A, 2), (A, 3), (D, 4)] {
        let g = CoverTorusGroup::new(&q2, RootDatum::new(t, r)?)?;
        let reps = ps::all_genuine_reps(&g)?;
        for j in 0..=1 {
            let classes = ps::unit_filtration_classes(&q2, j);
            let d = classes.len() as i64;
            for rep in &reps {
                let n = rep.dim;
                for alpha in g.root_datum().roots() {
                    let h = rep.matrix(&g, &g.root_element(alpha, g.minus_one_class())?).dense();
                    for u in 0..1u64 << g.dim() {
                        let mut num = vec![vec![Complex::new(0, 0); n]; n];
                        for &v in &classes {
                            let sign = if g.pair(v, u) { -1 } else { 1 };
                            let m = rep.matrix(&g, &g.root_element(alpha, v)?).dense();
                            for (row, mrow) in num.iter_mut().zip(&m) {
                                for (x, y) in row.iter_mut().zip(mrow) {
                                    *x += y * sign;
                                }
                            }
                        }
                        // Tr X = 2^-ef dim with X = N / d.
                        let trace: Gaussian = (0..n).map(|i| num[i][i]).sum();
                        fail_if(&mut out, trace * (1 << ef) != Complex::new(n as i64 * d, 0), || {
                            format!("{t}{r} j={j} u={u} {alpha:?}: trace {trace}")
                        });
                        // X² = (-1,u) 2^-ef h(-1).
                        let chi = if g.pair(g.minus_one_class(), u) { -1 } else { 1 };
                        let lhs = dense_mul(&num, &num);
                        let ok = (0..n).all(|i| (0..n).all(|k| lhs[i][k] * (1 << ef) == h[i][k] * (chi * d * d)));
                        fail_if(&mut out, !ok, || format!("{t}{r} j={j} u={u} {alpha:?}: square identity"));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn criterion_9() -> Result<Failures> {
    let mut out = Vec::new();
    for (t, r, max_len) in [(A, 2, 6), (A, 3, 6), (D, 4, 5), (E, 6, 4)] {
        let alg = HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(t, r)?)?);
        let res = imhecke::verify_relations(&alg, HeckeTrials { trials: 1000, seed: 9, max_len })?;
        for c in res.iter().filter(|c| !c.pass) {
            out.push(format!("{t}{r}: {} {}", c.check, c.actual));
        }
        let families: BTreeSet<&str> = res.iter().map(|c| c.check.as_str()).collect();
        for need in ["hecke.quadratic", "hecke.braid", "hecke.omega_conjugation", "hecke.length_additive_products", "hecke.associativity"] {
            fail_if(&mut out, !families.contains(need), || format!("{t}{r}: {need} not run"));
        }
    }
    let a2 = HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(A, 2)?)?);
    for c in sl3f2::verify(&a2)?.iter().filter(|c| !c.pass) {
        out.push(format!("sl3f2: {} {}", c.check, c.actual));
    }
    let m = sl3f2::Model::new();
    let s = |w: &[usize]| m.weyl.iter().position(|(x, _)| x == w).unwrap_or(usize::MAX);
    let sq = m.convolve(s(&[0]), s(&[0]));
    let index: usize = (0..m.weyl.len()).map(|k| m.double_coset_size(k)).sum::<usize>() / m.borel.len();
    fail_if(&mut out, m.group.len() != 168 || m.borel.len() != 8 || index != 21, || {
        format!("|G| {} |B| {} [G:B] {index}", m.group.len(), m.borel.len())
    });
    fail_if(&mut out, sq[s(&[])] != 2 || sq[s(&[0])] != 1 || sq.iter().sum::<i64>() != 3, || {
        format!("T_s^2 at q=2: {sq:?}")
    });
    Ok(out)
}

fn criterion_10() -> Result<Failures> {
    let mut out = Vec::new();
    let cfg = SuiteConfig { seed: 10, ..SuiteConfig::default() };
    let q2 = space(1, 1, None)?;
    for (t, r, order, center) in [(A, 2, 8, 2), (A, 3, 16, 4), (D, 4, 32, 8)] {
        let g = CoverTorusGroup::new(&q2, RootDatum::new(t, r)?)?;
        fail_if(&mut out, g.order() != order, || format!("{t}{r}: order {}", g.order()));
        let c = g.center()?.len();
        fail_if(&mut out, c != center, || format!("{t}{r}: center {c}"));
        for res in checks::torus_results(&g, 1, &cfg)?.iter().filter(|c| !c.pass) {
            out.push(format!("{t}{r} Q2: {} {}", res.check, res.actual));
        }
    }
    for (e, f) in [(1, 2), (2, 1), (3, 1)] {
        let s = space(e, f, None)?;
        for (t, r) in [(A, 2), (A, 3), (D, 4)] {
            let sys = RootDatum::new(t, r)?;
            let parity = sys.ytilde_mod_2y().len();
            let g = CoverTorusGroup::new(&s, sys)?;
            let ef = e * f;
            fail_if(&mut out, g.order() != 2 << (r * ef), || format!("{t}{r} ef={ef}: order {}", g.order()));
            for res in checks::torus_results(&g, ef, &cfg)?.iter().filter(|c| !c.pass) {
                out.push(format!("{t}{r} ({e},{f}): {} {}", res.check, res.actual));
            }
            // Center of each single-unit factor.
            let subs = g.factor_subgroups()?;
            for m in &subs[..g.factorization_report()?.k] {
                let z = m.iter().filter(|x| m.iter().all(|y| g.commutes(x, y))).count();
                fail_if(&mut out, z != 2 * parity, || format!("{t}{r} ({e},{f}): factor center {z}"));
            }
        }
    }
    Ok(out)
}

type Criterion = (&'static str, Duration, fn() -> Result<Failures>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("parity lattice table", Duration::from_secs(1), criterion_1),
        ("integral radical suite", Duration::from_secs(120), criterion_2),
        ("Q2 Hilbert oracle and method agreement", Duration::from_secs(30), criterion_3),
        ("decomposition cases", Duration::from_secs(30), criterion_4),
        ("l2 = 2 l~", Duration::from_secs(60), criterion_5),
        ("pseudo-spherical dimensions and counts", Duration::from_secs(120), criterion_6),
        ("Weyl invariance and branching", Duration::from_secs(120), criterion_7),
        ("X-element identities", Duration::from_secs(120), criterion_8),
        ("Hecke relations and SL3(F2) model", Duration::from_secs(60), criterion_9),
        ("covering torus suite", Duration::from_secs(120), criterion_10),
    ];
    let mut all_ok = true;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let mut failures = match result {
            Ok(f) => f,
            Err(e) => vec![format!("error: {e}")],
        };
        if elapsed > *budget {
            failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let ok = failures.is_empty();
        all_ok &= ok;
        println!(
            "{} criterion {:>2}: {name} ({elapsed:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
        for f in failures.iter().take(10) {
            println!("      {f}");
        }
    }
    let suite = checks::run_all(&SuiteConfig::default());
    println!(
        "{} registry: {} checks",
        if all_pass(&suite) { "PASS" } else { "FAIL" },
        suite.len()
    );
    if all_ok && all_pass(&suite) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
