//! The extended affine Weyl group W ⋉ Ỹ acting on Y ⊗ R, its Coxeter part W ⋉ 2Y,
//! length functions measured against the alcove 2𝔄 and the length-zero subgroup.
//!
//! 2𝔄 is the open simplex ⟨α_i, v⟩ > 0, ⟨θ, v⟩ < 2 with vertices 0 and 2ω̌_j / m_j,
//! where m_j are the marks of the highest root θ. Generators are the reflections in its
//! walls: `s_i` in H_{α_i,0} for i < r and the affine reflection `s_r` in H_{θ,2}.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;

/// An element of W ⋉ Ỹ acting by v ↦ w(v) + y. The finite part is kept as an integer
/// matrix on coroot coordinates together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineWeylElt {
    w: Vec<i64>,
    w_inv: Vec<i64>,
    y: Vec<i64>,
}

impl ExtAffineWeylElt {
    pub fn translation(&self) -> &[i64] {
        &self.y
    }

    pub fn rank(&self) -> usize {
        self.y.len()
    }

    /// Row-major matrix of the finite part.
    pub fn finite_matrix(&self) -> &[i64] {
        &self.w
    }

    fn apply(m: &[i64], v: &[i64]) -> Vec<i64> {
        let r = v.len();
        (0..r)
            .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
            .collect()
    }

    fn matmul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
        let mut c = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let x = a[i * r + k];
                if x != 0 {
                    for j in 0..r {
                        c[i * r + j] += x * b[k * r + j];
                    }
                }
            }
        }
        c
    }

    /// Finite part applied to a coroot-coordinate vector. Roots transform by the same
    /// matrix in the simply-laced case.
    pub fn finite_apply(&self, v: &[i64]) -> Vec<i64> {
        Self::apply(&self.w, v)
    }

    pub fn finite_inv_apply(&self, v: &[i64]) -> Vec<i64> {
        Self::apply(&self.w_inv, v)
    }

    pub fn is_pure_translation(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.w[i * r + j] == i64::from(i == j)))
    }

    /// Affine action on a rational point.
    pub fn act(&self, v: &[Rational64]) -> Vec<Rational64> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let mut s = Rational64::from(self.y[i]);
                for j in 0..r {
                    s += v[j] * self.w[i * r + j];
                }
                s
            })
            .collect()
    }
}

/// A length-zero element with its permutation of the nodes {0..r-1, af = r}.
#[derive(Clone, Debug)]
pub struct OmegaElement {
    pub elt: ExtAffineWeylElt,
    /// The Ỹ/2Y class of the translation part.
    pub class: Vec<u8>,
    /// node n is sent to `nodes[n]`.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReducedWord {
    /// Index into `AffineWeyl::omegas`.
    pub omega: usize,
    /// x = ω · s_{word[0]} · s_{word[1]} ⋯
    pub word: Vec<usize>,
}

/// A length function on the extended affine Weyl group.
pub trait LengthFunction: Send + Sync {
    fn name(&self) -> &'static str;
    fn length(&self, g: &AffineWeyl, x: &ExtAffineWeylElt) -> u64;
}

/// Even hyperplanes H_{α,2k} separating the barycenter of 2𝔄 from its image.
pub struct EvenSeparation;
/// The Iwahori-Matsumoto closed formula.
pub struct ClosedFormula;
/// log_q [I₂ x I₂ : I₂] for I₂ = Γ₀(ϖ²), whose root subgroups are U_α(𝒪) for α > 0 and
/// U_α(ϖ²𝒪) for α < 0. Conjugating by x = (w, y) moves the depth of U_α to
/// f(w⁻¹α) - ⟨α, y⟩, and the double coset index is the total depth increase.
pub struct IwahoriIndex;

pub fn length_registry() -> Vec<Box<dyn LengthFunction>> {
    vec![Box::new(EvenSeparation), Box::new(ClosedFormula), Box::new(IwahoriIndex)]
}

pub fn length_function(name: &str) -> Result<Box<dyn LengthFunction>> {
    length_registry()
        .into_iter()
        .find(|l| l.name() == name)
        .ok_or_else(|| Error::Unknown {
            kind: "length function",
            name: name.into(),
        })
}

impl LengthFunction for EvenSeparation {
    fn name(&self) -> &'static str {
        "tilde"
    }

    fn length(&self, g: &AffineWeyl, x: &ExtAffineWeylElt) -> u64 {
        let s = g.scale;
        g.sys
            .positive_roots()
            .iter()
            .map(|a| {
                let v = s * g.sys.pair(a, &x.y) + g.bary(&x.finite_inv_apply(a));
                v.div_euclid(2 * s).unsigned_abs()
            })
            .sum()
    }
}

impl LengthFunction for ClosedFormula {
    fn name(&self) -> &'static str {
        "tilde-formula"
    }

    fn length(&self, g: &AffineWeyl, x: &ExtAffineWeylElt) -> u64 {
        g.sys
            .positive_roots()
            .iter()
            .map(|a| {
                let half = g.sys.pair(a, &x.y) / 2;
                if g.sys.is_positive(&x.finite_inv_apply(a)) {
                    half.unsigned_abs()
                } else {
                    (half - 1).unsigned_abs()
                }
            })
            .sum()
    }
}

impl LengthFunction for IwahoriIndex {
    fn name(&self) -> &'static str {
        "two"
    }

    fn length(&self, g: &AffineWeyl, x: &ExtAffineWeylElt) -> u64 {
        let depth = |b: &[i64]| if g.sys.is_positive(b) { 0 } else { 2 };
        g.sys
            .roots()
            .iter()
            .map(|a| {
                let moved = depth(&x.finite_inv_apply(a)) - g.sys.pair(a, &x.y);
                (moved - depth(a)).max(0) as u64
            })
            .sum()
    }
}

/// The group together with its root datum and cached generators.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    sys: RootDatum,
    marks: Vec<i64>,
    lcm: i64,
    scale: i64,
    gens: Vec<ExtAffineWeylElt>,
    omegas: Vec<OmegaElement>,
    orders: Vec<Vec<usize>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl AffineWeyl {
    pub fn new(sys: RootDatum) -> Result<Self> {
        let r = sys.rank();
        let marks = sys.marks();
        let lcm = marks.iter().fold(1, |l, m| l / gcd(l, *m) * m);
        let mut g = AffineWeyl {
            marks,
            lcm,
            scale: (r as i64 + 1) * lcm,
            gens: vec![],
            omegas: vec![],
            orders: vec![],
            sys,
        };
        let mut gens: Vec<ExtAffineWeylElt> = (0..r)
            .map(|i| {
                let cols: Vec<Vec<i64>> = (0..r).map(|j| g.sys.reflect(i, &g.sys.unit(j))).collect();
                let m = Self::from_columns(&cols);
                ExtAffineWeylElt {
                    w: m.clone(),
                    w_inv: m,
                    y: vec![0; r],
                }
            })
            .collect();
        let theta = g.sys.highest_root().to_vec();
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let e = g.sys.unit(j);
                let p = g.sys.pair(&theta, &e);
                e.iter().zip(&theta).map(|(a, t)| a - p * t).collect()
            })
            .collect();
        let m = Self::from_columns(&cols);
        gens.push(ExtAffineWeylElt {
            w: m.clone(),
            w_inv: m,
            y: theta.iter().map(|t| 2 * t).collect(),
        });
        g.gens = gens;
        g.orders = (0..=r)
            .map(|i| (0..=r).map(|j| g.order(&g.mul(&g.gens[i], &g.gens[j]))).collect())
            .collect();
        g.omegas = g.build_omegas()?;
        Ok(g)
    }

    fn from_columns(cols: &[Vec<i64>]) -> Vec<i64> {
        let r = cols.len();
        let mut m = vec![0; r * r];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..r {
                m[i * r + j] = c[i];
            }
        }
        m
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// Number of Coxeter generators, r + 1.
    pub fn n_gens(&self) -> usize {
        self.sys.rank() + 1
    }

    pub fn gen_name(&self, i: usize) -> String {
        if i == self.rank() {
            "af".into()
        } else {
            format!("s{}", i + 1)
        }
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        word.iter().map(|i| self.gen_name(*i)).collect::<Vec<_>>().join(" ")
    }

    /// S · ⟨β, b⟩ for the barycenter b of 2𝔄, with S = (r+1) · lcm(m).
    fn bary(&self, beta: &[i64]) -> i64 {
        beta.iter()
            .zip(&self.marks)
            .map(|(c, m)| 2 * c * (self.lcm / m))
            .sum()
    }

    pub fn identity(&self) -> ExtAffineWeylElt {
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        ExtAffineWeylElt {
            w: m.clone(),
            w_inv: m,
            y: vec![0; r],
        }
    }

    pub fn generator(&self, i: usize) -> &ExtAffineWeylElt {
        &self.gens[i]
    }

    pub fn translation(&self, y: &[i64]) -> Result<ExtAffineWeylElt> {
        if y.len() != self.rank() || !self.sys.in_y_tilde(y) {
            return Err(Error::InvalidInput(format!("{y:?} is not in the lattice Ỹ")));
        }
        Ok(ExtAffineWeylElt {
            y: y.to_vec(),
            ..self.identity()
        })
    }

    /// (w₁, y₁)(w₂, y₂) = (w₁w₂, y₁ + w₁y₂).
    pub fn mul(&self, a: &ExtAffineWeylElt, b: &ExtAffineWeylElt) -> ExtAffineWeylElt {
        let r = self.rank();
        let wy = a.finite_apply(&b.y);
        ExtAffineWeylElt {
            w: ExtAffineWeylElt::matmul(&a.w, &b.w, r),
            w_inv: ExtAffineWeylElt::matmul(&b.w_inv, &a.w_inv, r),
            y: a.y.iter().zip(&wy).map(|(p, q)| p + q).collect(),
        }
    }

    pub fn inverse(&self, a: &ExtAffineWeylElt) -> ExtAffineWeylElt {
        ExtAffineWeylElt {
            w: a.w_inv.clone(),
            w_inv: a.w.clone(),
            y: a.finite_inv_apply(&a.y).iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_gen(&self, x: &ExtAffineWeylElt, i: usize) -> ExtAffineWeylElt {
        self.mul(x, &self.gens[i])
    }

    pub fn order(&self, x: &ExtAffineWeylElt) -> usize {
        let id = self.identity();
        let mut p = x.clone();
        let mut n = 1;
        while p != id {
            p = self.mul(&p, x);
            n += 1;
        }
        n
    }

    /// Order of s_i s_j.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        self.orders[i][j]
    }

    pub fn length_tilde(&self, x: &ExtAffineWeylElt) -> u64 {
        EvenSeparation.length(self, x)
    }

    pub fn length_two(&self, x: &ExtAffineWeylElt) -> u64 {
        IwahoriIndex.length(self, x)
    }

    /// Generators s with ℓ̃(xs) < ℓ̃(x), found from the sign of the image of the wall.
    pub fn right_descents(&self, x: &ExtAffineWeylElt) -> Vec<usize> {
        let r = self.rank();
        let mut out: Vec<usize> = (0..r)
            .filter(|&i| {
                // xs < x iff x maps the wall H_{α_i,0} to a wall with the alcove on the
                // far side, i.e. the affine root α_i ∘ x⁻¹ is negative.
                let b = x.finite_apply(&self.sys.unit(i));
                let k = self.sys.pair(&b, &x.y);
                k > 0 || (k == 0 && !self.sys.is_positive(&b))
            })
            .collect();
        // af wall: the affine function 2 - θ sent to 2 + ⟨wθ, y⟩ - wθ.
        let t = x.finite_apply(self.sys.highest_root());
        let k = 2 + self.sys.pair(&t, &x.y);
        if k < 0 || (k == 0 && self.sys.is_positive(&t)) {
            out.push(r);
        }
        out
    }

    /// x = ω · word, found by stripping right descents.
    pub fn reduced_word(&self, x: &ExtAffineWeylElt) -> Result<ReducedWord> {
        let mut cur = x.clone();
        let mut stripped = Vec::new();
        while let Some(&s) = self.right_descents(&cur).first() {
            cur = self.mul_gen(&cur, s);
            stripped.push(s);
            if stripped.len() > 10_000 {
                return Err(Error::Inconsistent("descent did not terminate".into()));
            }
        }
        if self.length_tilde(&cur) != 0 {
            return Err(Error::Inconsistent("no descent from a positive-length element".into()));
        }
        stripped.reverse();
        let omega = if self.omegas.is_empty() {
            0
        } else {
            self.omega_index(&cur)?
        };
        Ok(ReducedWord {
            omega,
            word: stripped,
        })
    }

    pub fn evaluate(&self, rw: &ReducedWord) -> ExtAffineWeylElt {
        rw.word
            .iter()
            .fold(self.omegas[rw.omega].elt.clone(), |x, s| self.mul_gen(&x, *s))
    }

    pub fn evaluate_word(&self, word: &[usize]) -> ExtAffineWeylElt {
        word.iter().fold(self.identity(), |x, s| self.mul_gen(&x, *s))
    }

    pub fn omegas(&self) -> &[OmegaElement] {
        &self.omegas
    }

    pub fn omega_index(&self, x: &ExtAffineWeylElt) -> Result<usize> {
        self.omegas
            .iter()
            .position(|o| &o.elt == x)
            .ok_or_else(|| Error::Inconsistent("length-zero element not in Ω̃".into()))
    }

    /// Image of the wall H_{α,k} under x is H_{wα, k + ⟨wα, y⟩}.
    fn wall_image(&self, x: &ExtAffineWeylElt, alpha: &[i64], k: i64) -> Option<usize> {
        let mut b = x.finite_apply(alpha);
        let mut kk = k + self.sys.pair(&b, &x.y);
        if !self.sys.is_positive(&b) {
            b.iter_mut().for_each(|c| *c = -*c);
            kk = -kk;
        }
        if kk == 0 {
            (0..self.rank()).find(|&i| b == self.sys.unit(i))
        } else if kk == 2 && b == self.sys.highest_root() {
            Some(self.rank())
        } else {
            None
        }
    }

    fn build_omegas(&self) -> Result<Vec<OmegaElement>> {
        let r = self.rank();
        let mut out = Vec::new();
        for class in self.sys.ytilde_mod_2y() {
            let y: Vec<i64> = class.iter().map(|c| *c as i64).collect();
            let mut cur = self.translation(&y)?;
            while let Some(&s) = self.right_descents(&cur).first() {
                cur = self.mul_gen(&cur, s);
            }
            if self.length_tilde(&cur) != 0 {
                return Err(Error::Inconsistent(format!("no length-zero element over {class:?}")));
            }
            let theta = self.sys.highest_root().to_vec();
            let nodes = (0..=r)
                .map(|n| {
                    let img = if n < r {
                        self.wall_image(&cur, &self.sys.unit(n), 0)
                    } else {
                        self.wall_image(&cur, &theta, 2)
                    };
                    img.ok_or_else(|| Error::Inconsistent("wall not sent to a wall".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(OmegaElement {
                elt: cur,
                class,
                nodes,
            });
        }
        Ok(out)
    }

    /// Index of ω₁ω₂ in Ω̃.
    pub fn omega_mul(&self, a: usize, b: usize) -> usize {
        let p = self.mul(&self.omegas[a].elt, &self.omegas[b].elt);
        self.omega_index(&p).expect("Ω̃ is closed under products")
    }

    pub fn omega_inverse(&self, a: usize) -> usize {
        let p = self.inverse(&self.omegas[a].elt);
        self.omega_index(&p).expect("Ω̃ is closed under inverses")
    }

    /// All elements with ℓ̃ ≤ `max_len`, grouped by length, each level sorted.
    pub fn elements_by_length(&self, max_len: usize) -> Vec<Vec<ExtAffineWeylElt>> {
        let mut levels: Vec<Vec<ExtAffineWeylElt>> =
            vec![self.omegas.iter().map(|o| o.elt.clone()).collect::<BTreeSet<_>>().into_iter().collect()];
        for k in 0..max_len {
            let mut next = BTreeSet::new();
            for x in &levels[k] {
                for s in 0..self.n_gens() {
                    let y = self.mul_gen(x, s);
                    if self.length_tilde(&y) == k as u64 + 1 {
                        next.insert(y);
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }

    /// Every reduced word of x (ignoring its Ω̃ part).
    pub fn all_reduced_words(&self, x: &ExtAffineWeylElt) -> Vec<Vec<usize>> {
        let mut memo: HashMap<ExtAffineWeylElt, Vec<Vec<usize>>> = HashMap::new();
        self.words_rec(x, &mut memo)
    }

    fn words_rec(
        &self,
        x: &ExtAffineWeylElt,
        memo: &mut HashMap<ExtAffineWeylElt, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(w) = memo.get(x) {
            return w.clone();
        }
        let desc = self.right_descents(x);
        let out = if desc.is_empty() {
            vec![vec![]]
        } else {
            let mut out = Vec::new();
            for s in desc {
                for mut w in self.words_rec(&self.mul_gen(x, s), memo) {
                    w.push(s);
                    out.push(w);
                }
            }
            out
        };
        memo.insert(x.clone(), out.clone());
        out
    }

    /// True when the braid-move graph on the reduced words of x is connected.
    pub fn braid_connected(&self, x: &ExtAffineWeylElt) -> bool {
        let words: HashSet<Vec<usize>> = self.all_reduced_words(x).into_iter().collect();
        let Some(start) = words.iter().min().cloned() else {
            return true;
        };
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for nb in self.braid_neighbors(&w) {
                if words.contains(&nb) && seen.insert(nb.clone()) {
                    queue.push_back(nb);
                }
            }
        }
        seen.len() == words.len()
    }

    fn braid_neighbors(&self, w: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            for j in i + 1..w.len().min(i + 7) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    break;
                }
                let m = self.braid_order(a, b);
                if j - i + 1 != m {
                    continue;
                }
                let alternating = (i..=j).all(|k| w[k] == if (k - i) % 2 == 0 { a } else { b });
                if alternating {
                    let mut nw = w.to_vec();
                    for k in i..=j {
                        nw[k] = if (k - i) % 2 == 0 { b } else { a };
                    }
                    out.push(nw);
                }
            }
        }
        out
    }

    /// Reduced word of the finite part in the simple reflections, w = s_{v[0]} s_{v[1]} ⋯
    pub fn finite_word(&self, x: &ExtAffineWeylElt) -> Vec<usize> {
        let r = self.rank();
        let mut w = ExtAffineWeylElt {
            y: vec![0; r],
            ..x.clone()
        };
        let mut out = Vec::new();
        'outer: loop {
            for i in 0..r {
                if !self.sys.is_positive(&w.finite_apply(&self.sys.unit(i))) {
                    w = self.mul_gen(&w, i);
                    out.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        out.reverse();
        out
    }

    pub fn summary(&self, x: &ExtAffineWeylElt) -> Result<ElementSummary> {
        let rw = self.reduced_word(x)?;
        Ok(ElementSummary {
            translation: x.y.clone(),
            finite_word: self.word_string(&self.finite_word(x)),
            length_tilde: self.length_tilde(x),
            length_two: self.length_two(x),
            omega: rw.omega,
            word: self.word_string(&rw.word),
        })
    }

    pub fn omega_summaries(&self) -> Vec<OmegaSummary> {
        self.omegas
            .iter()
            .map(|o| OmegaSummary {
                class: o.class.clone(),
                translation: o.elt.y.clone(),
                finite_word: self.word_string(&self.finite_word(&o.elt)),
                nodes: (0..self.n_gens())
                    .map(|n| (self.gen_name(n), self.gen_name(o.nodes[n])))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementSummary {
    pub translation: Vec<i64>,
    pub finite_word: String,
    pub length_tilde: u64,
    pub length_two: u64,
    pub omega: usize,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaSummary {
    pub class: Vec<u8>,
    pub translation: Vec<i64>,
    pub finite_word: String,
    pub nodes: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    fn group(t: CartanType, r: usize) -> AffineWeyl {
        AffineWeyl::new(RootDatum::new(t, r).unwrap()).unwrap()
    }

    #[test]
    fn generator_lengths() {
        let g = group(CartanType::A, 2);
        assert_eq!(g.length_tilde(&g.identity()), 0);
        assert_eq!(g.length_two(&g.identity()), 0);
        for s in 0..g.n_gens() {
            assert_eq!(g.length_tilde(g.generator(s)), 1);
            assert_eq!(g.length_two(g.generator(s)), 2);
            assert_eq!(g.order(g.generator(s)), 2);
        }
    }

    #[test]
    fn translation_lengths_in_a2() {
        let g = group(CartanType::A, 2);
        let t = g.translation(&[2, 0]).unwrap();
        assert_eq!(g.length_tilde(&t), 4);
        assert_eq!(g.length_two(&t), 8);
        let rw = g.reduced_word(&t).unwrap();
        assert_eq!(rw.word.len(), 4);
        assert_eq!(g.evaluate(&rw), t);
        assert!(g.translation(&[1, 0]).is_err());
    }

    #[test]
    fn omega_orders() {
        assert_eq!(group(CartanType::A, 2).omegas().len(), 1);
        assert_eq!(group(CartanType::A, 3).omegas().len(), 2);
        assert_eq!(group(CartanType::D, 4).omegas().len(), 4);
    }

    #[test]
    fn a3_omega_nodes() {
        let g = group(CartanType::A, 3);
        let o = &g.omegas()[1];
        assert_eq!(o.nodes, vec![2, 3, 0, 1]);
        for n in 0..g.n_gens() {
            let conj = g.mul(&g.mul(&o.elt, g.generator(n)), &g.inverse(&o.elt));
            assert_eq!(&conj, g.generator(o.nodes[n]));
        }
    }

    #[test]
    fn composition_matches_action() {
        let g = group(CartanType::A, 3);
        let a = g.mul(g.generator(3), g.generator(1));
        let b = g.mul(&g.translation(&[1, 0, 1]).unwrap(), g.generator(0));
        let v = vec![Rational64::new(1, 3), Rational64::new(-2, 5), Rational64::new(7, 2)];
        assert_eq!(g.mul(&a, &b).act(&v), a.act(&b.act(&v)));
        assert_eq!(g.mul(&a, &g.inverse(&a)), g.identity());
    }

    #[test]
    fn braid_orders_follow_affine_diagram() {
        let g = group(CartanType::A, 3);
        assert_eq!(g.braid_order(0, 1), 3);
        assert_eq!(g.braid_order(0, 2), 2);
        assert_eq!(g.braid_order(0, 3), 3);
        assert_eq!(g.braid_order(1, 3), 2);
    }

    #[test]
    fn registry_lookup() {
        assert!(length_function("tilde-formula").is_ok());
        assert!(length_function("bogus").is_err());
    }
}
