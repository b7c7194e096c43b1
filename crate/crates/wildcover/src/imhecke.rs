//! The Iwahori-Matsumoto algebra C[Ω̃] ⊗ H_af over Z[q, q⁻¹] with basis T_x, x in the
//! extended affine Weyl group, and a brute-force Iwahori-Hecke algebra of SL₃(F₂).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::coxeter::{AffineWeyl, ExtAffineWeylElt};
use crate::error::Result;
use crate::report::CheckResult;

/// Finitely supported map from exponents of q to integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(*k, *c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: i64) {
        let e = self.0.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(k, c)| (*k, *c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in o.terms() {
            p.add_term(k, c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut p = Self::zero();
        for (k, c) in self.terms() {
            p.add_term(k, c * s);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (k1, c1) in self.terms() {
            for (k2, c2) in o.terms() {
                p.add_term(k1 + k2, c1 * c2);
            }
        }
        p
    }

    /// Value at an integer q, when all exponents are nonnegative.
    pub fn eval(&self, q: i64) -> Option<i64> {
        self.terms()
            .map(|(k, c)| u32::try_from(k).ok().map(|k| c * q.pow(k)))
            .sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().rev().enumerate() {
            let (k, c) = (*k, *c);
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Σ c_x T_x with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement(BTreeMap<ExtAffineWeylElt, LaurentPoly>);

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffineWeylElt, &LaurentPoly)> {
        self.0.iter()
    }

    pub fn coeff(&self, x: &ExtAffineWeylElt) -> LaurentPoly {
        self.0.get(x).cloned().unwrap_or_default()
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn add_term(&mut self, x: ExtAffineWeylElt, c: &LaurentPoly) {
        let e = self.0.entry(x).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut h = self.clone();
        for (x, c) in o.terms() {
            h.add_term(x.clone(), c);
        }
        h
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut h = Self::zero();
        for (x, p) in self.terms() {
            h.add_term(x.clone(), &p.mul(c));
        }
        h
    }
}

/// The algebra with quadratic relation T_s² = a T_s + b, normally a = q - 1, b = q.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    weyl: AffineWeyl,
    a: LaurentPoly,
    b: LaurentPoly,
}

impl HeckeAlgebra {
    pub fn new(weyl: AffineWeyl) -> Self {
        Self::with_quadratic(
            weyl,
            LaurentPoly::from_terms(&[(1, 1), (0, -1)]),
            LaurentPoly::q(),
        )
    }

    pub fn with_quadratic(weyl: AffineWeyl, a: LaurentPoly, b: LaurentPoly) -> Self {
        HeckeAlgebra { weyl, a, b }
    }

    pub fn weyl(&self) -> &AffineWeyl {
        &self.weyl
    }

    pub fn one(&self) -> HeckeElement {
        self.basis(&self.weyl.identity())
    }

    pub fn basis(&self, x: &ExtAffineWeylElt) -> HeckeElement {
        let mut h = HeckeElement::zero();
        h.add_term(x.clone(), &LaurentPoly::constant(1));
        h
    }

    pub fn gen(&self, s: usize) -> HeckeElement {
        self.basis(self.weyl.generator(s))
    }

    pub fn omega(&self, i: usize) -> HeckeElement {
        self.basis(&self.weyl.omegas()[i].elt)
    }

    /// h · T_s.
    pub fn mul_gen(&self, h: &HeckeElement, s: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in h.terms() {
            let xs = self.weyl.mul_gen(x, s);
            if self.weyl.length_tilde(&xs) > self.weyl.length_tilde(x) {
                out.add_term(xs, c);
            } else {
                out.add_term(x.clone(), &c.mul(&self.a));
                out.add_term(xs, &c.mul(&self.b));
            }
        }
        out
    }

    /// h · T_ω for ω of length zero.
    pub fn mul_omega(&self, h: &HeckeElement, omega: &ExtAffineWeylElt) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in h.terms() {
            out.add_term(self.weyl.mul(x, omega), c);
        }
        out
    }

    /// Expands each T_y of the right factor as T_ω T_{s_1} ⋯ T_{s_k}.
    pub fn mul(&self, h1: &HeckeElement, h2: &HeckeElement) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for (y, c) in h2.terms() {
            let rw = self.weyl.reduced_word(y)?;
            let mut acc = self.mul_omega(h1, &self.weyl.omegas()[rw.omega].elt);
            for s in &rw.word {
                acc = self.mul_gen(&acc, *s);
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    pub fn product(&self, hs: &[HeckeElement]) -> Result<HeckeElement> {
        hs.iter().try_fold(self.one(), |acc, h| self.mul(&acc, h))
    }

    /// T_{s_1} ⋯ T_{s_k} along an arbitrary word.
    pub fn word_product(&self, word: &[usize]) -> Result<HeckeElement> {
        let gens: Vec<HeckeElement> = word.iter().map(|s| self.gen(*s)).collect();
        self.product(&gens)
    }

    /// T_s⁻¹ = q⁻¹ (T_s - (q-1)), valid for the standard quadratic relation.
    pub fn gen_inverse(&self, s: usize) -> HeckeElement {
        let qinv = LaurentPoly::monomial(1, -1);
        self.gen(s)
            .sub(&self.one().scale(&LaurentPoly::from_terms(&[(1, 1), (0, -1)])))
            .scale(&qinv)
    }

    /// T_x⁻¹ = T_{s_k}⁻¹ ⋯ T_{s_1}⁻¹ T_ω⁻¹.
    pub fn basis_inverse(&self, x: &ExtAffineWeylElt) -> Result<HeckeElement> {
        let rw = self.weyl.reduced_word(x)?;
        let mut acc = self.one();
        for s in rw.word.iter().rev() {
            acc = self.mul(&acc, &self.gen_inverse(*s))?;
        }
        let w_inv = self.weyl.inverse(&self.weyl.omegas()[rw.omega].elt);
        Ok(self.mul_omega(&acc, &w_inv))
    }

    /// Terms rendered as (translation, finite word, Ω̃ index, word, coefficient).
    pub fn describe(&self, h: &HeckeElement) -> Result<Vec<serde_json::Value>> {
        h.terms()
            .map(|(x, c)| {
                let rw = self.weyl.reduced_word(x)?;
                Ok(json!({
                    "omega": rw.omega,
                    "word": self.weyl.word_string(&rw.word),
                    "coeff": c.to_string(),
                }))
            })
            .collect()
    }
}

/// Settings for the randomized part of `verify_relations`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HeckeTrials {
    pub trials: usize,
    pub seed: u64,
    /// Random basis elements are drawn from the ball of this length.
    pub max_len: usize,
}

fn standard_quadratic(alg: &HeckeAlgebra, s: usize) -> HeckeElement {
    alg.gen(s)
        .scale(&LaurentPoly::from_terms(&[(1, 1), (0, -1)]))
        .add(&alg.one().scale(&LaurentPoly::q()))
}

/// Every relation family of the algebra, one result per family (or per failure).
pub fn verify_relations(alg: &HeckeAlgebra, cfg: HeckeTrials) -> Result<Vec<CheckResult>> {
    let g = alg.weyl();
    let name = g.root_datum().name();
    let params = |extra: serde_json::Value| {
        let mut p = json!({"type": name, "seed": cfg.seed, "trials": cfg.trials});
        if let (Some(m), Some(e)) = (p.as_object_mut(), extra.as_object()) {
            m.extend(e.clone());
        }
        p
    };
    let n = g.n_gens();
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for s in 0..n {
        let lhs = alg.mul(&alg.gen(s), &alg.gen(s))?;
        if lhs != standard_quadratic(alg, s) {
            bad.push(json!({"generator": g.gen_name(s), "square": alg.describe(&lhs)?}));
        }
    }
    out.push(CheckResult::compare(
        "hecke.quadratic",
        params(json!({"relation": "T_s^2 = (q-1) T_s + q"})),
        Vec::<serde_json::Value>::new(),
        bad,
    ));

    let mut bad = Vec::new();
    for s in 0..n {
        let inv = alg.gen_inverse(s);
        if alg.mul(&alg.gen(s), &inv)? != alg.one() || alg.mul(&inv, &alg.gen(s))? != alg.one() {
            bad.push(g.gen_name(s));
        }
    }
    out.push(CheckResult::compare(
        "hecke.generator_inverse",
        params(json!({"relation": "T_s (T_s - (q-1)) q^-1 = 1"})),
        Vec::<String>::new(),
        bad,
    ));

    let mut bad = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let m = g.braid_order(s, t);
            let w1: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect();
            let w2: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { t } else { s }).collect();
            if alg.word_product(&w1)? != alg.word_product(&w2)? {
                bad.push(json!([g.gen_name(s), g.gen_name(t), m]));
            }
        }
    }
    out.push(CheckResult::compare("hecke.braid", params(json!({})), Vec::<serde_json::Value>::new(), bad));

    let mut bad = Vec::new();
    for (i, o) in g.omegas().iter().enumerate() {
        let inv = alg.omega(g.omega_inverse(i));
        if alg.mul(&alg.omega(i), &inv)? != alg.one() {
            bad.push(json!({"omega": i, "relation": "inverse"}));
        }
        if g.omega_mul(i, i) == 0 && alg.mul(&alg.omega(i), &alg.omega(i))? != alg.one() {
            bad.push(json!({"omega": i, "relation": "square"}));
        }
        for s in 0..n {
            let conj = alg.product(&[alg.omega(i), alg.gen(s), inv.clone()])?;
            if conj != alg.gen(o.nodes[s]) {
                bad.push(json!({"omega": i, "generator": g.gen_name(s)}));
            }
        }
    }
    out.push(CheckResult::compare(
        "hecke.omega_conjugation",
        params(json!({"relation": "T_e T_s T_e^-1 = T_{e(s)}"})),
        Vec::<serde_json::Value>::new(),
        bad,
    ));

    let ball: Vec<ExtAffineWeylElt> = g.elements_by_length(cfg.max_len).into_iter().flatten().collect();
    let affine: Vec<ExtAffineWeylElt> = ball
        .iter()
        .filter(|x| g.reduced_word(x).map(|rw| rw.omega == 0).unwrap_or(false))
        .cloned()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pick = |v: &[ExtAffineWeylElt]| v[rng.gen_range(0..v.len())].clone();
    let triples: Vec<[ExtAffineWeylElt; 3]> =
        (0..cfg.trials).map(|_| [pick(&ball), pick(&ball), pick(&ball)]).collect();
    let twisted: Vec<[ExtAffineWeylElt; 4]> = (0..cfg.trials.min(200))
        .map(|_| {
            let e1 = g.omegas()[rng.gen_range(0..g.omegas().len())].elt.clone();
            let e2 = g.omegas()[rng.gen_range(0..g.omegas().len())].elt.clone();
            let w1 = affine[rng.gen_range(0..affine.len())].clone();
            let w2 = affine[rng.gen_range(0..affine.len())].clone();
            [e1, w1, e2, w2]
        })
        .collect();

    let summary = |x: &ExtAffineWeylElt| -> Result<serde_json::Value> {
        let rw = g.reduced_word(x)?;
        Ok(json!({"omega": rw.omega, "word": g.word_string(&rw.word)}))
    };

    let mut bad = Vec::new();
    let mut additive = 0;
    let mut additive_bad = Vec::new();
    for [x, y, z] in &triples {
        let (tx, ty, tz) = (alg.basis(x), alg.basis(y), alg.basis(z));
        let left = alg.mul(&alg.mul(&tx, &ty)?, &tz)?;
        let right = alg.mul(&tx, &alg.mul(&ty, &tz)?)?;
        if left != right && bad.len() < 5 {
            bad.push(json!([summary(x)?, summary(y)?, summary(z)?]));
        }
        let xy = g.mul(x, y);
        if g.length_tilde(&xy) == g.length_tilde(x) + g.length_tilde(y) {
            additive += 1;
            if alg.mul(&tx, &ty)? != alg.basis(&xy) && additive_bad.len() < 5 {
                additive_bad.push(json!([summary(x)?, summary(y)?]));
            }
        }
    }
    out.push(CheckResult::compare(
        "hecke.associativity",
        params(json!({"max_len": cfg.max_len})),
        Vec::<serde_json::Value>::new(),
        bad,
    ));
    out.push(CheckResult::compare(
        "hecke.length_additive_products",
        params(json!({"max_len": cfg.max_len, "additive_pairs": additive})),
        Vec::<serde_json::Value>::new(),
        additive_bad,
    ));

    let mut bad = Vec::new();
    for [e1, w1, e2, w2] in &twisted {
        let lhs = alg.mul(
            &alg.mul(&alg.basis(e1), &alg.basis(w1))?,
            &alg.mul(&alg.basis(e2), &alg.basis(w2))?,
        )?;
        let conj = g.mul(&g.mul(&g.inverse(e2), w1), e2);
        let rhs = alg.mul(
            &alg.basis(&g.mul(e1, e2)),
            &alg.mul(&alg.basis(&conj), &alg.basis(w2))?,
        )?;
        if lhs != rhs && bad.len() < 5 {
            bad.push(json!([summary(e1)?, summary(w1)?, summary(e2)?, summary(w2)?]));
        }
    }
    out.push(CheckResult::compare(
        "hecke.twisted_tensor_product",
        params(json!({
            "formula": "(e1 (x) t_w1)(e2 (x) t_w2) = e1 e2 (x) t_{e2^-1 w1 e2} t_w2",
            "as_printed": "(e1 (x) t_w1)(e2 (x) t_a2) = e1 e2 (x) t_{e2^-1(a1)} t_a2",
            "samples": twisted.len(),
        })),
        Vec::<serde_json::Value>::new(),
        bad,
    ));

    let mut bad = Vec::new();
    for [x, _, _] in triples.iter().take(50) {
        let inv = alg.basis_inverse(x)?;
        let tx = alg.basis(x);
        if alg.mul(&tx, &inv)? != alg.one() || alg.mul(&inv, &tx)? != alg.one() {
            bad.push(summary(x)?);
        }
    }
    out.push(CheckResult::compare(
        "hecke.basis_inverse",
        params(json!({"samples": triples.len().min(50)})),
        Vec::<serde_json::Value>::new(),
        bad,
    ));

    let mut bad = Vec::new();
    let mut words_checked = 0;
    for [x, _, _] in triples.iter().take(50) {
        let rw = g.reduced_word(x)?;
        let w = g.mul(&g.inverse(&g.omegas()[rw.omega].elt), x);
        for word in g.all_reduced_words(&w) {
            words_checked += 1;
            let t = alg.mul(&alg.omega(rw.omega), &alg.word_product(&word)?)?;
            if t != alg.basis(x) {
                bad.push(json!({"element": summary(x)?, "word": g.word_string(&word)}));
                break;
            }
        }
    }
    out.push(CheckResult::compare(
        "hecke.word_independence",
        params(json!({"words": words_checked})),
        Vec::<serde_json::Value>::new(),
        bad,
    ));
    Ok(out)
}

/// SL₃(F₂) with matrices packed row-major into 9 bits (bit 3i+j is entry (i,j)).
pub mod sl3f2 {
    use super::*;

    pub type Mat = u16;

    pub fn entry(m: Mat, i: usize, j: usize) -> u16 {
        (m >> (3 * i + j)) & 1
    }

    pub fn mul(a: Mat, b: Mat) -> Mat {
        let mut c = 0;
        for i in 0..3 {
            for j in 0..3 {
                let v = (0..3).fold(0, |s, k| s ^ (entry(a, i, k) & entry(b, k, j)));
                c |= v << (3 * i + j);
            }
        }
        c
    }

    pub fn det(m: Mat) -> u16 {
        let e = |i, j| entry(m, i, j);
        (e(0, 0) & ((e(1, 1) & e(2, 2)) ^ (e(1, 2) & e(2, 1))))
            ^ (e(0, 1) & ((e(1, 0) & e(2, 2)) ^ (e(1, 2) & e(2, 0))))
            ^ (e(0, 2) & ((e(1, 0) & e(2, 1)) ^ (e(1, 1) & e(2, 0))))
    }

    pub const IDENTITY: Mat = 0b100_010_001;

    pub fn group() -> Vec<Mat> {
        (0u16..512).filter(|m| det(*m) == 1).collect()
    }

    /// Upper unitriangular matrices.
    pub fn borel() -> Vec<Mat> {
        group()
            .into_iter()
            .filter(|m| (0..3).all(|i| (0..i).all(|j| entry(*m, i, j) == 0)))
            .collect()
    }

    fn perm(p: [usize; 3]) -> Mat {
        (0..3).fold(0, |m, j| m | (1 << (3 * p[j] + j)))
    }

    /// Simple reflections swapping coordinates (1,2) and (2,3).
    pub fn simple(i: usize) -> Mat {
        if i == 0 {
            perm([1, 0, 2])
        } else {
            perm([0, 2, 1])
        }
    }

    pub struct Model {
        pub group: Vec<Mat>,
        pub borel: Vec<Mat>,
        /// Weyl words (over s1, s2) with their permutation matrices, shortest first.
        pub weyl: Vec<(Vec<usize>, Mat)>,
        /// Double coset index of every matrix.
        coset: HashMap<Mat, usize>,
        inverse: HashMap<Mat, Mat>,
    }

    impl Model {
        pub fn new() -> Self {
            let group = group();
            let borel = borel();
            let mut weyl: Vec<(Vec<usize>, Mat)> = vec![(vec![], IDENTITY)];
            let mut i = 0;
            while i < weyl.len() {
                let (w, m) = weyl[i].clone();
                for s in 0..2 {
                    let n = mul(m, simple(s));
                    if !weyl.iter().any(|(_, x)| *x == n) {
                        let mut w2 = w.clone();
                        w2.push(s);
                        weyl.push((w2, n));
                    }
                }
                i += 1;
            }
            let mut coset = HashMap::new();
            for (k, (_, w)) in weyl.iter().enumerate() {
                for b1 in &borel {
                    for b2 in &borel {
                        coset.entry(mul(mul(*b1, *w), *b2)).or_insert(k);
                    }
                }
            }
            let inverse = group
                .iter()
                .map(|a| (*a, *group.iter().find(|b| mul(*a, **b) == IDENTITY).unwrap()))
                .collect();
            Model {
                group,
                borel,
                weyl,
                coset,
                inverse,
            }
        }

        pub fn n_double_cosets(&self) -> usize {
            let mut seen: Vec<usize> = self.coset.values().copied().collect();
            seen.sort();
            seen.dedup();
            seen.len()
        }

        pub fn double_coset_size(&self, k: usize) -> usize {
            self.coset.values().filter(|c| **c == k).count()
        }

        /// T_u * T_v in the basis T_w, with the Haar measure giving B volume 1.
        pub fn convolve(&self, u: usize, v: usize) -> Vec<i64> {
            let b = self.borel.len() as i64;
            self.weyl
                .iter()
                .map(|(_, g)| {
                    let total: i64 = self
                        .group
                        .iter()
                        .filter(|h| self.coset[*h] == u && self.coset[&mul(self.inverse[*h], *g)] == v)
                        .count() as i64;
                    debug_assert_eq!(total % b, 0);
                    total / b
                })
                .collect()
        }
    }

    impl Default for Model {
        fn default() -> Self {
            Self::new()
        }
    }

    /// Convolution identities of the finite model, and coefficientwise agreement of all
    /// 36 products with the generic algebra of type A₂ specialized at q = 2.
    pub fn verify(generic: &HeckeAlgebra) -> Result<Vec<CheckResult>> {
        let m = Model::new();
        let p = json!({"model": "sl3f2", "q": 2});
        let mut out = vec![
            CheckResult::compare("sl3f2.group_order", p.clone(), 168, m.group.len()),
            CheckResult::compare("sl3f2.borel_order", p.clone(), 8, m.borel.len()),
            CheckResult::compare("sl3f2.double_cosets", p.clone(), 6, m.n_double_cosets()),
        ];
        let idx = |w: &[usize]| m.weyl.iter().position(|(x, _)| x == w).unwrap();
        let index: usize = (0..m.weyl.len()).map(|k| m.double_coset_size(k) / m.borel.len()).sum();
        out.push(CheckResult::compare("sl3f2.index_of_borel", p.clone(), 21, index));
        let poincare: usize = m.weyl.iter().map(|(w, _)| 1usize << w.len()).sum();
        out.push(CheckResult::compare("sl3f2.poincare_at_2", p.clone(), index, poincare));
        let sizes_ok = m
            .weyl
            .iter()
            .enumerate()
            .all(|(k, (w, _))| m.double_coset_size(k) == m.borel.len() << w.len());
        out.push(CheckResult::holds("sl3f2.double_coset_sizes", p.clone(), sizes_ok));
        for s in 0..2 {
            let sq = m.convolve(idx(&[s]), idx(&[s]));
            let mut expected = vec![0; 6];
            expected[idx(&[])] = 2;
            expected[idx(&[s])] = 1;
            out.push(CheckResult::compare(
                "sl3f2.quadratic",
                json!({"model": "sl3f2", "q": 2, "generator": s + 1}),
                expected,
                sq,
            ));
        }
        let lhs = {
            let ab = m.convolve(idx(&[0]), idx(&[1]));
            (0..6).fold(vec![0i64; 6], |acc, k| {
                let c = m.convolve(k, idx(&[0]));
                acc.iter().zip(&c).map(|(a, x)| a + ab[k] * x).collect()
            })
        };
        let rhs = {
            let ba = m.convolve(idx(&[1]), idx(&[0]));
            (0..6).fold(vec![0i64; 6], |acc, k| {
                let c = m.convolve(k, idx(&[1]));
                acc.iter().zip(&c).map(|(a, x)| a + ba[k] * x).collect()
            })
        };
        out.push(CheckResult::compare("sl3f2.braid", p.clone(), lhs, rhs));

        let g = generic.weyl();
        let elts: Vec<ExtAffineWeylElt> = m.weyl.iter().map(|(w, _)| g.evaluate_word(w)).collect();
        let mut bad = Vec::new();
        for u in 0..6 {
            for v in 0..6 {
                let conv = m.convolve(u, v);
                let prod = generic.mul(&generic.basis(&elts[u]), &generic.basis(&elts[v]))?;
                let spec: Vec<Option<i64>> = elts.iter().map(|x| prod.coeff(x).eval(2)).collect();
                let outside = prod.terms().any(|(x, _)| !elts.contains(x));
                if outside || spec != conv.iter().map(|c| Some(*c)).collect::<Vec<_>>() {
                    bad.push(json!([m.weyl[u].0, m.weyl[v].0]));
                }
            }
        }
        out.push(CheckResult::compare(
            "sl3f2.generic_specialization",
            json!({"model": "sl3f2", "q": 2, "products": 36}),
            Vec::<serde_json::Value>::new(),
            bad,
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanType, RootDatum};

    fn algebra(t: CartanType, r: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(t, r).unwrap()).unwrap())
    }

    #[test]
    fn laurent_arithmetic() {
        let p = LaurentPoly::from_terms(&[(1, 1), (0, -1)]);
        assert_eq!(p.to_string(), "q - 1");
        assert_eq!(p.mul(&p).to_string(), "q^2 - 2q + 1");
        assert_eq!(p.sub(&p), LaurentPoly::zero());
        assert_eq!(LaurentPoly::monomial(3, -2).to_string(), "3q^-2");
        assert_eq!(p.eval(2), Some(1));
        assert_eq!(LaurentPoly::monomial(1, -1).eval(2), None);
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra(CartanType::A, 2);
        let sq = h.mul(&h.gen(0), &h.gen(0)).unwrap();
        assert_eq!(sq.coeff(h.weyl().generator(0)).to_string(), "q - 1");
        assert_eq!(sq.coeff(&h.weyl().identity()).to_string(), "q");
    }

    #[test]
    fn translation_basis_element() {
        let h = algebra(CartanType::A, 2);
        let t = h.weyl().translation(&[2, 0]).unwrap();
        let rw = h.weyl().reduced_word(&t).unwrap();
        assert_eq!(rw.word.len(), 4);
        assert_eq!(h.word_product(&rw.word).unwrap(), h.basis(&t));
    }

    #[test]
    fn omega_squares_to_one() {
        let h = algebra(CartanType::A, 3);
        assert_eq!(h.mul(&h.omega(1), &h.omega(1)).unwrap(), h.one());
    }

    #[test]
    fn corrupted_quadratic_is_caught() {
        let g = AffineWeyl::new(RootDatum::new(CartanType::A, 2).unwrap()).unwrap();
        let bad = HeckeAlgebra::with_quadratic(g, LaurentPoly::from_terms(&[(1, 1), (0, -2)]), LaurentPoly::q());
        let r = verify_relations(&bad, HeckeTrials { trials: 20, seed: 1, max_len: 3 }).unwrap();
        let failed: Vec<&str> = r.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
        assert!(failed.contains(&"hecke.quadratic"));
        assert!(failed.contains(&"hecke.generator_inverse"));
    }

    #[test]
    fn finite_model() {
        let m = sl3f2::Model::new();
        assert_eq!(m.group.len(), 168);
        assert_eq!(m.n_double_cosets(), 6);
        let r = sl3f2::verify(&algebra(CartanType::A, 2)).unwrap();
        assert!(r.iter().all(|c| c.pass), "{r:?}");
    }
}
