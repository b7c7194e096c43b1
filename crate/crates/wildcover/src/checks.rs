//! Registry of verification suites. Each suite returns one `CheckResult` per verified
//! statement so the CLI can stream, aggregate and serialize them uniformly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::covertorus::CoverTorusGroup;
use crate::coxeter::{length_registry, AffineWeyl};
use crate::error::{Error, Result};
use crate::imhecke::{self, HeckeAlgebra, HeckeTrials};
use crate::padic::{hilbert, DecompositionCase, FieldSpec, SquareClassSpace};
use crate::pseudospherical::{self as ps, GenuineRep};
use crate::report::CheckResult;
use crate::rootdata::{CartanType, RootDatum};

/// Field parameters (e, f, Eisenstein coefficients) used across the suites.
pub type FieldParams = (usize, usize, Option<&'static [i64]>);

pub const GAUSSIAN: FieldParams = (2, 1, Some(&[2, -2]));

pub const TEST_FIELDS: [FieldParams; 7] = [
    (1, 1, None),
    (2, 1, None),
    (3, 1, None),
    (1, 2, None),
    (2, 2, None),
    (1, 3, None),
    GAUSSIAN,
];

pub const LATTICE_TYPES: [(CartanType, usize); 17] = [
    (CartanType::A, 2),
    (CartanType::A, 3),
    (CartanType::A, 4),
    (CartanType::A, 5),
    (CartanType::A, 6),
    (CartanType::A, 7),
    (CartanType::A, 8),
    (CartanType::A, 9),
    (CartanType::D, 3),
    (CartanType::D, 4),
    (CartanType::D, 5),
    (CartanType::D, 6),
    (CartanType::D, 7),
    (CartanType::D, 8),
    (CartanType::E, 6),
    (CartanType::E, 7),
    (CartanType::E, 8),
];

/// Knobs shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub hecke_trials: usize,
    pub torus_samples: usize,
    pub permutations: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            hecke_trials: 1000,
            torus_samples: 10_000,
            permutations: 100,
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Result<Vec<CheckResult>>;
}

struct Lattice;
struct Padic;
struct Lengths;
struct Torus;
struct Reps;
struct XElements;
struct Hecke;

pub fn registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Lattice),
        Box::new(Padic),
        Box::new(Lengths),
        Box::new(Torus),
        Box::new(Reps),
        Box::new(XElements),
        Box::new(Hecke),
    ]
}

pub fn check(name: &str) -> Result<Box<dyn Check>> {
    registry()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::Unknown {
            kind: "check",
            name: name.into(),
        })
}

/// Runs every suite in registry order; a suite that errors contributes one failing result.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckResult> {
    registry()
        .iter()
        .flat_map(|c| {
            c.run(cfg).unwrap_or_else(|e| {
                vec![CheckResult::error(c.name(), json!({"seed": cfg.seed}), e)]
            })
        })
        .collect()
}

pub fn field_space((e, f, eis): FieldParams) -> Result<SquareClassSpace> {
    SquareClassSpace::new(FieldSpec::new(e, f, eis)?)
}

fn field_json(space: &SquareClassSpace) -> serde_json::Value {
    let k = space.field();
    json!({"e": k.e(), "f": k.f(), "eisenstein": k.summary().eisenstein})
}

/// Parity classes of Ỹ/2Y predicted by the classification, `o` odd and `*` even.
pub fn classified_parity_diagrams(ty: CartanType, r: usize) -> Vec<String> {
    let alternating = |n: usize| -> String { (0..n).map(|i| if i % 2 == 0 { 'o' } else { '*' }).collect() };
    let tail_pair = |n: usize| format!("{}oo", "*".repeat(n - 2));
    let mut out = match (ty, r % 2) {
        (CartanType::A, 1) => vec![alternating(r)],
        (CartanType::D, 1) => vec![tail_pair(r)],
        (CartanType::D, _) => {
            let head = alternating(r - 2);
            vec![alternating(r), format!("{head}*o"), tail_pair(r)]
        }
        (CartanType::E, _) if r == 7 => vec!["*o**o*o".to_string()],
        _ => vec![],
    };
    out.sort();
    out.reverse();
    out
}

pub fn lattice_results() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (t, r) in LATTICE_TYPES {
        let sys = RootDatum::new(t, r)?;
        let row = sys.lattice_row();
        let diagrams = classified_parity_diagrams(t, r);
        let order = diagrams.len() + 1;
        let params = json!({"type": sys.name()});
        out.push(CheckResult::compare(
            "lattice.parity_classes",
            params.clone(),
            &diagrams,
            &row.diagrams,
        ));
        out.push(CheckResult::compare(
            "lattice.index",
            params.clone(),
            (1u64 << r) / order as u64,
            row.index,
        ));
        let ok = sys.ytilde_mod_2y().iter().all(|v| {
            let y: Vec<i64> = v.iter().map(|c| *c as i64).collect();
            sys.roots().iter().all(|a| sys.pair(a, &y) % 2 == 0)
        });
        out.push(CheckResult::holds("lattice.even_on_all_roots", params, ok));
    }
    Ok(out)
}

pub fn padic_results(space: &SquareClassSpace) -> Result<Vec<CheckResult>> {
    let k = space.field();
    let params = field_json(space);
    let mut out = space.radical_report()?;
    let norm = hilbert::method("norm")?;
    let conic = hilbert::method("conic")?;
    let mut disagree = Vec::new();
    for a in space.basis() {
        for b in space.basis() {
            let n = norm.symbol(k, *a, *b)?;
            let c = conic.symbol(k, *a, *b)?;
            if n != c {
                disagree.push(json!([space.class_label(*a), space.class_label(*b), n, c]));
            }
        }
    }
    out.push(CheckResult::compare(
        "hilbert.norm_vs_conic",
        params.clone(),
        Vec::<serde_json::Value>::new(),
        disagree,
    ));
    let minus_one = space.class_of_minus_one();
    let ok = k
        .all_classes()
        .all(|a| space.symbol(a, k.class_mul(a, minus_one)) == 1);
    out.push(CheckResult::holds("hilbert.a_minus_a", params.clone(), ok));
    out.push(CheckResult::compare(
        "hilbert.space_dimension",
        params.clone(),
        k.ef() + 2,
        space.dim(),
    ));
    if k.e() == 1 && k.f() == 1 {
        let closed = hilbert::method("closed-form")?;
        let mut bad = 0;
        let mut n = 0;
        for a in k.all_classes() {
            for b in k.all_classes() {
                n += 1;
                if closed.symbol(k, a, b)? != space.symbol(a, b) {
                    bad += 1;
                }
            }
        }
        out.push(CheckResult::compare(
            "hilbert.closed_form_pairs",
            params.clone(),
            json!({"pairs": 64, "mismatches": 0}),
            json!({"pairs": n, "mismatches": bad}),
        ));
    }
    let expected_case = match (k.e(), k.f(), k.eisenstein()) {
        (1, 1, _) => Some(DecompositionCase::MinusOneAnisotropic),
        (2, 1, [2, -2]) => Some(DecompositionCase::Alternating),
        (2, 1, [-2, 0]) => Some(DecompositionCase::MinusOneIsotropic),
        _ => None,
    };
    if let Some(c) = expected_case {
        out.push(CheckResult::compare(
            "decomposition.case",
            params,
            c,
            space.decomposition().case,
        ));
    }
    Ok(out)
}

pub fn length_results(g: &AffineWeyl, max_len: usize) -> Result<Vec<CheckResult>> {
    let name = g.root_datum().name();
    let params = json!({"type": name, "max_len": max_len});
    let levels = g.elements_by_length(max_len);
    let mut out = Vec::new();
    let mut count = 0;
    let mut two_bad = Vec::new();
    let mut formula_bad = 0;
    let mut descent_bad = 0;
    let registry = length_registry();
    for x in levels.iter().flatten() {
        count += 1;
        let l = g.length_tilde(x);
        if g.length_two(x) != 2 * l && two_bad.len() < 5 {
            two_bad.push(serde_json::to_value(g.summary(x)?).unwrap_or_default());
        }
        if registry.iter().any(|f| f.name() != "two" && f.length(g, x) != l) {
            formula_bad += 1;
        }
        let desc = g.right_descents(x);
        for s in 0..g.n_gens() {
            if (g.length_tilde(&g.mul_gen(x, s)) < l) != desc.contains(&s) {
                descent_bad += 1;
            }
        }
    }
    out.push(CheckResult::compare(
        "length.two_equals_twice_tilde",
        json!({"type": name, "max_len": max_len, "elements": count}),
        Vec::<serde_json::Value>::new(),
        two_bad,
    ));
    out.push(CheckResult::compare("length.formula_agreement", params.clone(), 0, formula_bad));
    out.push(CheckResult::compare("length.descents", params.clone(), 0, descent_bad));

    let braid_ok = levels
        .iter()
        .take(5)
        .flatten()
        .filter(|x| g.reduced_word(x).map(|w| w.omega == 0).unwrap_or(false))
        .all(|x| g.braid_connected(x));
    out.push(CheckResult::holds("length.braid_connected_words", params.clone(), braid_ok));

    let sys = g.root_datum();
    out.push(CheckResult::compare(
        "omega.order",
        params.clone(),
        sys.ytilde_mod_2y().len(),
        g.omegas().len(),
    ));
    let mut conj_ok = true;
    for o in g.omegas() {
        conj_ok &= g.length_tilde(&o.elt) == 0;
        let inv = g.inverse(&o.elt);
        for s in 0..g.n_gens() {
            let c = g.mul(&g.mul(&o.elt, g.generator(s)), &inv);
            conj_ok &= &c == g.generator(o.nodes[s]);
        }
    }
    out.push(CheckResult::holds("omega.permutes_nodes", params, conj_ok));
    Ok(out)
}

pub const LENGTH_CASES: [(CartanType, usize, usize); 4] = [
    (CartanType::A, 2, 6),
    (CartanType::A, 3, 6),
    (CartanType::D, 4, 6),
    (CartanType::E, 6, 3),
];

/// Order, center and relation checks for one covering torus.
pub fn torus_results(g: &CoverTorusGroup, ef: usize, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let sys = g.root_datum().clone();
    let r = g.rank();
    let params = json!({"type": sys.name(), "dim": g.dim(), "seed": cfg.seed});
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();

    let generated = g.generated(&g.generators())?;
    out.push(CheckResult::compare(
        "torus.order",
        params.clone(),
        2usize << (r * ef),
        generated.len(),
    ));
    let parity = sys.ytilde_mod_2y().len();
    let center = g.center()?;
    out.push(CheckResult::compare(
        "torus.center_order",
        params.clone(),
        2 * parity.pow(ef as u32),
        center.len(),
    ));
    out.push(CheckResult::holds(
        "torus.center_from_lattice",
        params.clone(),
        center == g.center_from_lattice(),
    ));

    // Order independence of ∏ h̃_{α_i}(t^{c_i}) for y ∈ Ỹ.
    let mut order_ok = true;
    let mut nodes: Vec<usize> = (0..r).collect();
    for _ in 0..cfg.permutations {
        let v = sys.ytilde_mod_2y();
        let c: Vec<i64> = v[rng.gen_range(0..v.len())]
            .iter()
            .map(|p| *p as i64 + 2 * rng.gen_range(-2..=2))
            .collect();
        let t = rng.gen_range(0..1u64 << g.dim());
        let base = g.lattice_element(&c, t, &(0..r).collect::<Vec<_>>());
        nodes.shuffle(&mut rng);
        order_ok &= g.lattice_element(&c, t, &nodes) == base;
    }
    out.push(CheckResult::holds(
        "torus.order_independence",
        json!({"type": sys.name(), "permutations": cfg.permutations, "seed": cfg.seed}),
        order_ok,
    ));

    let exhaustive = g.order() <= 1 << 10;
    let els: Vec<_> = g.elements().collect();
    let pick = |rng: &mut ChaCha8Rng| els[rng.gen_range(0..els.len())];
    let pairs: Vec<_> = if exhaustive {
        els.iter().flat_map(|x| els.iter().map(move |y| (*x, *y))).collect()
    } else {
        (0..cfg.torus_samples).map(|_| (pick(&mut rng), pick(&mut rng))).collect()
    };
    let singles: Vec<_> = if exhaustive {
        els.clone()
    } else {
        (0..cfg.torus_samples).map(|_| pick(&mut rng)).collect()
    };
    let triples: Vec<_> = (0..cfg.torus_samples)
        .map(|_| (pick(&mut rng), pick(&mut rng), pick(&mut rng)))
        .collect();
    let mode = json!({
        "type": sys.name(),
        "mode": if exhaustive { "exhaustive" } else { "sampled" },
        "pairs": pairs.len(),
        "seed": cfg.seed,
    });
    let assoc = triples
        .iter()
        .all(|(x, y, z)| g.mul(&g.mul(x, y), z) == g.mul(x, &g.mul(y, z)));
    out.push(CheckResult::holds(
        "torus.associativity",
        json!({"type": sys.name(), "triples": triples.len(), "seed": cfg.seed}),
        assoc,
    ));
    let hom = (0..r).all(|a| {
        pairs
            .iter()
            .all(|(x, y)| g.phi(a, &g.mul(x, y)) == g.mul(&g.phi(a, x), &g.phi(a, y)))
    });
    out.push(CheckResult::holds("torus.phi_homomorphism", mode.clone(), hom));
    let mut braid = true;
    let mut square = true;
    let m1 = g.minus_one_class();
    for a in 0..r {
        for b in 0..r {
            if a == b {
                continue;
            }
            for x in &singles {
                braid &= if sys.adjacent(a, b) {
                    g.phi(a, &g.phi(b, &g.phi(a, x))) == g.phi(b, &g.phi(a, &g.phi(b, x)))
                } else {
                    g.phi(a, &g.phi(b, x)) == g.phi(b, &g.phi(a, x))
                };
            }
        }
        for x in &singles {
            square &= g.phi(a, &g.phi(a, x)) == g.conjugate(&g.gen(a, m1), x);
        }
    }
    out.push(CheckResult::holds("torus.phi_braid", mode.clone(), braid));
    out.push(CheckResult::holds("torus.phi_square", mode, square));
    let fact = g.factorization_report()?;
    out.push(CheckResult::holds("torus.factorization", params, fact.consistent));
    Ok(out)
}

pub const TORUS_TYPES: [(CartanType, usize); 3] =
    [(CartanType::A, 2), (CartanType::A, 3), (CartanType::D, 4)];

pub const TABLE2_EF1: [(CartanType, usize); 12] = [
    (CartanType::A, 2),
    (CartanType::A, 3),
    (CartanType::A, 4),
    (CartanType::A, 5),
    (CartanType::A, 6),
    (CartanType::D, 3),
    (CartanType::D, 4),
    (CartanType::D, 5),
    (CartanType::D, 6),
    (CartanType::E, 6),
    (CartanType::E, 7),
    (CartanType::E, 8),
];

/// Pseudo-spherical data predicted from the lattice: dim = [Y:Ỹ]^(ef/2), count = |Ỹ/2Y|^ef.
pub fn predicted_table2(sys: &RootDatum, ef: usize) -> (usize, usize) {
    let index = sys.ytilde_index() as usize;
    let dim = 1usize << (index.trailing_zeros() as usize * ef / 2);
    (dim, sys.ytilde_mod_2y().len().pow(ef as u32))
}

pub fn rep_results(g: &CoverTorusGroup, reps: &[GenuineRep], e: usize, f: usize) -> Result<Vec<CheckResult>> {
    let row = ps::table2_row(g, reps, e, f);
    let params = json!({"type": row.name, "e": e, "f": f});
    let (dim, count) = predicted_table2(g.root_datum(), e * f);
    let mut out = vec![
        CheckResult::compare("reps.dimensions", params.clone(), vec![dim], &row.dims),
        CheckResult::compare("reps.count", params.clone(), count, row.count),
        CheckResult::compare(
            "reps.sum_of_squares",
            params.clone(),
            row.group_order / 2,
            row.sum_of_squares,
        ),
        CheckResult::holds(
            "reps.irreducible_genuine",
            params.clone(),
            reps.iter().all(|r| r.is_irreducible() && r.is_genuine(g)),
        ),
        CheckResult::holds(
            "reps.weyl_invariant",
            params.clone(),
            reps.iter().all(|r| r.is_weyl_invariant(g)),
        ),
    ];
    let tensor = ps::character_set(ps::tensor_characters(g)?);
    let direct = ps::character_set(reps.iter().map(|r| r.character().to_vec()));
    out.push(CheckResult::holds("reps.tensor_construction", params.clone(), tensor == direct));
    let control = (1..1u64 << g.dim()).any(|l| !ps::is_weyl_invariant(g, &ps::sign_character(g, l)));
    out.push(CheckResult::holds("reps.sign_character_control", params, control || g.dim() == 0));
    Ok(out)
}

/// Pairs (type, rank) whose restriction to the corank-one subsystem has a checked rule.
pub const BRANCH_CASES: [(CartanType, usize); 3] =
    [(CartanType::A, 3), (CartanType::A, 4), (CartanType::D, 4)];

/// Restriction of every pseudo-spherical rep to the subsystem obtained by deleting
/// `branch_node`: irreducible for A₃ ⊃ A₂, 2^ef distinct constituents for A₄ ⊃ A₃,
/// multiplicity-free for D₄ ⊃ D₃.
pub fn branching_result(space: &SquareClassSpace, t: CartanType, rank: usize) -> Result<CheckResult> {
    let ef = space.field().ef();
    let g = CoverTorusGroup::new(space, RootDatum::new(t, rank)?)?;
    let sub = CoverTorusGroup::new(space, RootDatum::new(t, rank - 1)?)?;
    let reps = ps::all_genuine_reps(&g)?;
    let sub_reps = ps::all_genuine_reps(&sub)?;
    let params = json!({
        "group": g.root_datum().name(),
        "subgroup": sub.root_datum().name(),
        "e": space.field().e(),
        "f": space.field().f(),
    });
    let branches = reps
        .iter()
        .map(|r| ps::restrict_branch(&g, r, &sub, &sub_reps))
        .collect::<Result<Vec<_>>>()?;
    let (name, ok) = match (t, rank) {
        (CartanType::A, 3) => ("branch.irreducible", branches.iter().all(|b| b.is_irreducible())),
        (CartanType::A, 4) => (
            "branch.splits_distinct",
            branches
                .iter()
                .all(|b| b.is_multiplicity_free() && b.constituents.len() == 1 << ef),
        ),
        (CartanType::D, 4) => ("branch.multiplicity_free", branches.iter().all(|b| b.is_multiplicity_free())),
        _ => return Err(Error::Unsupported(format!("no branching rule for {}", g.root_datum().name()))),
    };
    Ok(CheckResult::holds(name, params, ok))
}

/// Trace and square identities of τ(X_{α,u,j}) for every root, unit class mod R and j.
pub fn x_results(space: &SquareClassSpace, g: &CoverTorusGroup, reps: &[GenuineRep]) -> Result<Vec<CheckResult>> {
    let params = json!({"type": g.root_datum().name(), "e": space.field().e(), "f": space.field().f()});
    let mut n = 0;
    let mut trace_bad = Vec::new();
    let mut square_bad = Vec::new();
    for j in 0..=1 {
        let classes = ps::unit_filtration_classes(space, j);
        for (ri, rep) in reps.iter().enumerate() {
            for alpha in g.root_datum().roots() {
                for u in 0..1u64 << g.dim() {
                    n += 1;
                    let x = ps::x_matrix(g, rep, alpha, u, &classes)?;
                    let (t, s) = ps::x_identities(g, rep, alpha, u, &x)?;
                    let at = || json!({"rep": ri, "root": alpha, "u": u, "j": j});
                    if !t {
                        trace_bad.push(at());
                    }
                    if !s {
                        square_bad.push(at());
                    }
                }
            }
        }
    }
    let with_n = |mut p: serde_json::Value| {
        p["cases"] = json!(n);
        p
    };
    Ok(vec![
        CheckResult::compare("x.trace", with_n(params.clone()), Vec::<serde_json::Value>::new(), trace_bad),
        CheckResult::compare("x.square", with_n(params), Vec::<serde_json::Value>::new(), square_bad),
    ])
}

pub const HECKE_CASES: [(CartanType, usize, usize); 4] = [
    (CartanType::A, 2, 6),
    (CartanType::A, 3, 6),
    (CartanType::D, 4, 5),
    (CartanType::E, 6, 4),
];

impl Check for Lattice {
    fn name(&self) -> &'static str {
        "lattice"
    }
    fn run(&self, _: &SuiteConfig) -> Result<Vec<CheckResult>> {
        lattice_results()
    }
}

impl Check for Padic {
    fn name(&self) -> &'static str {
        "padic"
    }
    fn run(&self, _: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for f in TEST_FIELDS {
            out.extend(padic_results(&field_space(f)?)?);
        }
        Ok(out)
    }
}

impl Check for Lengths {
    fn name(&self) -> &'static str {
        "lengths"
    }
    fn run(&self, _: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for (t, r, l) in LENGTH_CASES {
            out.extend(length_results(&AffineWeyl::new(RootDatum::new(t, r)?)?, l)?);
        }
        Ok(out)
    }
}

impl Check for Torus {
    fn name(&self) -> &'static str {
        "torus"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for f in [(1, 1, None), (1, 2, None), (2, 1, None), GAUSSIAN, (3, 1, None)] {
            let space = field_space(f)?;
            for (t, r) in TORUS_TYPES {
                let g = CoverTorusGroup::new(&space, RootDatum::new(t, r)?)?;
                out.extend(torus_results(&g, space.field().ef(), cfg)?);
            }
        }
        Ok(out)
    }
}

impl Check for Reps {
    fn name(&self) -> &'static str {
        "reps"
    }
    fn run(&self, _: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let mut cases: Vec<(FieldParams, CartanType, usize)> =
            TABLE2_EF1.iter().map(|(t, r)| ((1, 1, None), *t, *r)).collect();
        for f in [(2, 1, None), (1, 2, None), (3, 1, None), (1, 3, None)] {
            cases.extend(TORUS_TYPES.iter().map(|(t, r)| (f, *t, *r)));
        }
        let mut out = Vec::new();
        for (f, t, r) in cases {
            let space = field_space(f)?;
            let g = CoverTorusGroup::new(&space, RootDatum::new(t, r)?)?;
            let reps = ps::all_genuine_reps(&g)?;
            out.extend(rep_results(&g, &reps, f.0, f.1)?);
        }
        let q2 = field_space((1, 1, None))?;
        for (t, r) in BRANCH_CASES {
            out.push(branching_result(&q2, t, r)?);
        }
        Ok(out)
    }
}

impl Check for XElements {
    fn name(&self) -> &'static str {
        "x-elements"
    }
    fn run(&self, _: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let space = field_space((1, 1, None))?;
        let mut out = Vec::new();
        for (t, r) in TORUS_TYPES {
            let g = CoverTorusGroup::new(&space, RootDatum::new(t, r)?)?;
            let reps = ps::all_genuine_reps(&g)?;
            out.extend(x_results(&space, &g, &reps)?);
        }
        Ok(out)
    }
}

impl Check for Hecke {
    fn name(&self) -> &'static str {
        "hecke"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for (t, r, l) in HECKE_CASES {
            let alg = HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(t, r)?)?);
            out.extend(imhecke::verify_relations(
                &alg,
                HeckeTrials {
                    trials: cfg.hecke_trials,
                    seed: cfg.seed,
                    max_len: l,
                },
            )?);
        }
        let a2 = HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(CartanType::A, 2)?)?);
        out.extend(imhecke::sl3f2::verify(&a2)?);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classified_diagrams() {
        assert_eq!(classified_parity_diagrams(CartanType::A, 5), vec!["o*o*o"]);
        assert!(classified_parity_diagrams(CartanType::A, 4).is_empty());
        assert_eq!(
            classified_parity_diagrams(CartanType::D, 6),
            vec!["o*o*o*", "o*o**o", "****oo"]
        );
    }

    #[test]
    fn predicted_rows() {
        let d4 = RootDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(predicted_table2(&d4, 1), (2, 4));
        assert_eq!(predicted_table2(&d4, 2), (4, 16));
        let e7 = RootDatum::new(CartanType::E, 7).unwrap();
        assert_eq!(predicted_table2(&e7, 1), (8, 2));
    }

    #[test]
    fn lattice_suite_passes() {
        let r = check("lattice").unwrap().run(&SuiteConfig::default()).unwrap();
        assert!(r.iter().all(|c| c.pass), "{r:?}");
        assert!(check("nope").is_err());
    }
}
