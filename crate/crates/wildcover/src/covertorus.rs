//! The finite covering torus T̃₀/T_R: the central extension by μ₂ of (O^×/R)^r given by
//!
//!   h̃_α(t) h̃_α(u) = (t,u) h̃_α(tu),   h̃_α(t) h̃_β(u) = (u, t^⟨β,α̌⟩) h̃_β(u) h̃_α(t).
//!
//! An element is a sign times h̃_{α_1}(x_1) ⋯ h̃_{α_r}(x_r) in node order, with each x_i a
//! bitmask over a basis of an F₂ space carrying a symmetric pairing G (bit set = symbol -1).

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::SquareClassSpace;
use crate::rootdata::RootDatum;

/// `sign` is true for -1; coordinate i sits in bits [i·d, (i+1)·d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    pub bits: u64,
    pub sign: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementView {
    pub sign: i8,
    pub coords: Vec<u64>,
}

fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

#[derive(Clone, Debug)]
pub struct CoverTorusGroup {
    sys: RootDatum,
    d: usize,
    gram: Vec<u64>,
    pair_tab: Vec<u64>,
    minus_one: u64,
    /// Orthogonal pieces of the coordinate space: one bit per u_i, two per (e_j, f_j).
    blocks: Vec<u64>,
    n_u: usize,
    higher_neighbors: Vec<Vec<usize>>,
}

/// The M̃/Ñ factorization and its order bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub k: usize,
    pub l: usize,
    pub m_orders: Vec<usize>,
    pub n_orders: Vec<usize>,
    pub product_order: usize,
    pub group_order: usize,
    pub consistent: bool,
}

/// Largest group the brute-force routines will enumerate.
pub const ENUMERATION_LIMIT: usize = 1 << 16;

impl CoverTorusGroup {
    /// The torus for a field, in the decomposition basis [u.., e.., f..] of O^×/R.
    pub fn new(space: &SquareClassSpace, sys: RootDatum) -> Result<Self> {
        let dec = space.decomposition();
        let (k, l) = (dec.k(), dec.l());
        let mut blocks: Vec<u64> = (0..k).map(|i| 1 << i).collect();
        blocks.extend((0..l).map(|j| (1 << (k + j)) | (1 << (k + l + j))));
        let mut g = Self::from_gram(sys, dec.gram.clone())?;
        if g.minus_one != dec.minus_one {
            return Err(Error::Inconsistent("class of -1 disagrees with the pairing".into()));
        }
        g.blocks = blocks;
        g.n_u = k;
        Ok(g)
    }

    /// A torus over an abstract nondegenerate pairing given by its Gram rows. The class
    /// m playing the role of -1 is the solution of G(v, m) = G(v, v).
    pub fn from_gram(sys: RootDatum, gram: Vec<u64>) -> Result<Self> {
        let d = gram.len();
        if d == 0 || d > 6 {
            return Err(Error::InvalidInput(format!("pairing of dimension {d}")));
        }
        if sys.rank() * d > 60 {
            return Err(Error::FieldTooLarge { e: d, f: sys.rank() });
        }
        for i in 0..d {
            for j in 0..d {
                if (gram[i] >> j) & 1 != (gram[j] >> i) & 1 {
                    return Err(Error::InvalidInput("pairing is not symmetric".into()));
                }
            }
        }
        let pair_tab: Vec<u64> = (0..1u64 << d)
            .map(|b| (0..d).filter(|i| (b >> i) & 1 == 1).fold(0, |m, i| m ^ gram[i]))
            .collect();
        if pair_tab.iter().skip(1).any(|m| *m == 0) {
            return Err(Error::InvalidInput("pairing is degenerate".into()));
        }
        let g_vv = |v: u64| parity(v & pair_tab[v as usize]);
        let minus_one = (0..1u64 << d)
            .find(|m| (0..1u64 << d).all(|v| parity(v & pair_tab[*m as usize]) == g_vv(v)))
            .ok_or_else(|| Error::Inconsistent("no class represents -1".into()))?;
        let r = sys.rank();
        let higher_neighbors = (0..r)
            .map(|j| (j + 1..r).filter(|&i| sys.adjacent(i, j)).collect())
            .collect();
        Ok(CoverTorusGroup {
            sys,
            d,
            gram,
            pair_tab,
            minus_one,
            blocks: vec![(1 << d) - 1],
            n_u: 0,
            higher_neighbors,
        })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// Dimension of the coordinate space (ef for a field).
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gram(&self) -> &[u64] {
        &self.gram
    }

    pub fn minus_one_class(&self) -> u64 {
        self.minus_one
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Number of one-dimensional blocks (the u_i); the rest are hyperbolic planes.
    pub fn n_orthogonal_blocks(&self) -> usize {
        self.n_u
    }

    /// G(a, b) ∈ F₂.
    pub fn pair(&self, a: u64, b: u64) -> bool {
        parity(a & self.pair_tab[b as usize])
    }

    pub fn order(&self) -> usize {
        2usize << (self.rank() * self.d)
    }

    fn mask(&self) -> u64 {
        (1 << self.d) - 1
    }

    pub fn coord(&self, x: &TorusElement, i: usize) -> u64 {
        (x.bits >> (i * self.d)) & self.mask()
    }

    pub fn view(&self, x: &TorusElement) -> ElementView {
        ElementView {
            sign: if x.sign { -1 } else { 1 },
            coords: (0..self.rank()).map(|i| self.coord(x, i)).collect(),
        }
    }

    pub fn identity(&self) -> TorusElement {
        TorusElement { bits: 0, sign: false }
    }

    pub fn minus_one(&self) -> TorusElement {
        TorusElement { bits: 0, sign: true }
    }

    pub fn negate(&self, x: &TorusElement) -> TorusElement {
        TorusElement { sign: !x.sign, ..*x }
    }

    /// h̃_{α_i}(v).
    pub fn gen(&self, i: usize, v: u64) -> TorusElement {
        TorusElement {
            bits: (v & self.mask()) << (i * self.d),
            sign: false,
        }
    }

    pub fn from_coords(&self, sign: bool, coords: &[u64]) -> TorusElement {
        let bits = coords
            .iter()
            .enumerate()
            .fold(0, |b, (i, c)| b | ((c & self.mask()) << (i * self.d)));
        TorusElement { bits, sign }
    }

    pub fn index(&self, x: &TorusElement) -> usize {
        ((x.bits as usize) << 1) | x.sign as usize
    }

    pub fn from_index(&self, i: usize) -> TorusElement {
        TorusElement {
            bits: (i >> 1) as u64,
            sign: i & 1 == 1,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = TorusElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    /// Moves each factor of b leftward into place: passing h̃_{α_i}(a_i) with i > j
    /// costs G(a_i, b_j) when the nodes are adjacent, merging at node j costs G(a_j, b_j).
    pub fn mul(&self, a: &TorusElement, b: &TorusElement) -> TorusElement {
        let mut s = a.sign ^ b.sign;
        for j in 0..self.rank() {
            let bj = self.coord(b, j);
            if bj == 0 {
                continue;
            }
            let m = self.pair_tab[bj as usize];
            s ^= parity(self.coord(a, j) & m);
            for &i in &self.higher_neighbors[j] {
                s ^= parity(self.coord(a, i) & m);
            }
        }
        TorusElement {
            bits: a.bits ^ b.bits,
            sign: s,
        }
    }

    /// x² is the central sign returned here.
    pub fn square_sign(&self, x: &TorusElement) -> bool {
        self.mul(x, x).sign
    }

    pub fn inverse(&self, x: &TorusElement) -> TorusElement {
        TorusElement {
            bits: x.bits,
            sign: x.sign ^ self.square_sign(x),
        }
    }

    pub fn conjugate(&self, g: &TorusElement, x: &TorusElement) -> TorusElement {
        self.mul(&self.mul(g, x), &self.inverse(g))
    }

    pub fn commutes(&self, a: &TorusElement, b: &TorusElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn product(&self, xs: &[TorusElement]) -> TorusElement {
        xs.iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Generators h̃_{α_i}(basis vector).
    pub fn generators(&self) -> Vec<TorusElement> {
        (0..self.rank())
            .flat_map(|i| (0..self.d).map(move |b| (i, b)))
            .map(|(i, b)| self.gen(i, 1 << b))
            .collect()
    }

    fn check_budget(&self) -> Result<()> {
        if self.order() > ENUMERATION_LIMIT {
            return Err(Error::Budget(format!(
                "group of order {} exceeds {}",
                self.order(),
                ENUMERATION_LIMIT
            )));
        }
        Ok(())
    }

    /// Center by testing commutation with every generator.
    pub fn center(&self) -> Result<Vec<TorusElement>> {
        self.check_budget()?;
        let gens = self.generators();
        Ok(self
            .elements()
            .filter(|x| gens.iter().all(|g| self.commutes(x, g)))
            .collect())
    }

    /// ±∏ h̃_{α_i}(x_i) where, for each basis direction, the pattern of bits across the
    /// nodes is a parity vector of Ỹ/2Y. Sorted.
    pub fn center_from_lattice(&self) -> Vec<TorusElement> {
        let classes = self.sys.ytilde_mod_2y();
        let mut out = vec![self.identity()];
        for b in 0..self.d {
            let mut next = Vec::new();
            for x in &out {
                for p in &classes {
                    let mut y = *x;
                    for (i, c) in p.iter().enumerate() {
                        if *c == 1 {
                            y.bits |= 1 << (i * self.d + b);
                        }
                    }
                    next.push(y);
                }
            }
            out = next;
        }
        let mut all: Vec<TorusElement> = out.iter().flat_map(|x| [*x, self.negate(x)]).collect();
        all.sort();
        all
    }

    /// ∏ h̃_{α_i}(t^{c_i}) with the factors multiplied in the given node order.
    pub fn lattice_element(&self, c: &[i64], t: u64, order: &[usize]) -> TorusElement {
        let factors: Vec<TorusElement> = order
            .iter()
            .map(|&i| self.gen(i, if c[i].rem_euclid(2) == 1 { t } else { 0 }))
            .collect();
        self.product(&factors)
    }

    /// h̃_γ(v) for any root γ, normalized by splitting off the lowest-index simple root α
    /// with ⟨γ, α̌⟩ = 1 and using h̃_{-γ}(v) = (v,-1) h̃_γ(v⁻¹).
    pub fn root_element(&self, gamma: &[i64], v: u64) -> Result<TorusElement> {
        self.root_element_via(gamma, v, None)
    }

    /// As `root_element`, but the first split of a positive non-simple root uses the
    /// simple root `first` (which must satisfy ⟨γ, α̌⟩ = 1).
    pub fn root_element_via(
        &self,
        gamma: &[i64],
        v: u64,
        first: Option<usize>,
    ) -> Result<TorusElement> {
        if !self.sys.is_root(gamma) {
            return Err(Error::InvalidInput(format!("{gamma:?} is not a root")));
        }
        if !self.sys.is_positive(gamma) {
            let pos: Vec<i64> = gamma.iter().map(|c| -c).collect();
            let x = self.root_element_via(&pos, v, first)?;
            let s = self.pair(v, self.minus_one);
            return Ok(TorusElement { sign: x.sign ^ s, ..x });
        }
        if let Some(i) = (0..self.rank()).find(|&i| *gamma == self.sys.unit(i)) {
            return Ok(self.gen(i, v));
        }
        let split = |a: usize| {
            let e = self.sys.unit(a);
            self.sys.pair(gamma, &e) == 1
        };
        let a = match first {
            Some(a) if split(a) => a,
            Some(a) => {
                return Err(Error::InvalidInput(format!("node {a} cannot split {gamma:?}")))
            }
            None => (0..self.rank())
                .find(|&a| split(a))
                .ok_or_else(|| Error::Inconsistent("no simple root splits γ".into()))?,
        };
        let mut rest = gamma.to_vec();
        rest[a] -= 1;
        let left = self.root_element_via(&rest, v, None)?;
        Ok(self.mul(&left, &self.gen(a, v)))
    }

    /// Simple roots that can start the canonicalization of γ.
    pub fn splitting_nodes(&self, gamma: &[i64]) -> Vec<usize> {
        (0..self.rank())
            .filter(|&a| self.sys.pair(gamma, &self.sys.unit(a)) == 1)
            .collect()
    }

    /// φ_α: h̃_α(u) ↦ h̃_α(u), h̃_β(u) ↦ h̃_β(u) h̃_α(u) for β adjacent to α, other
    /// generators fixed; extended multiplicatively over the canonical factors.
    pub fn phi(&self, alpha: usize, x: &TorusElement) -> TorusElement {
        let mut out = TorusElement { bits: 0, sign: x.sign };
        for i in 0..self.rank() {
            let v = self.coord(x, i);
            if v == 0 {
                continue;
            }
            let mut img = self.gen(i, v);
            if self.sys.adjacent(i, alpha) {
                img = self.mul(&img, &self.gen(alpha, v));
            }
            out = self.mul(&out, &img);
        }
        out
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[TorusElement]) -> Result<Vec<TorusElement>> {
        self.check_budget()?;
        let mut seen = vec![false; self.order()];
        let id = self.identity();
        seen[self.index(&id)] = true;
        let mut queue = VecDeque::from([id]);
        let mut out = BTreeSet::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if !seen[self.index(&y)] {
                    seen[self.index(&y)] = true;
                    out.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// M̃_i = ⟨h̃_α(u_i)⟩ and Ñ_j = ⟨h̃_α(e_j), h̃_α(f_j)⟩ over all roots α.
    pub fn factor_subgroups(&self) -> Result<Vec<Vec<TorusElement>>> {
        let roots = self.sys.roots().to_vec();
        self.blocks
            .iter()
            .map(|mask| {
                let mut gens = Vec::new();
                for b in (0..self.d).filter(|b| (mask >> b) & 1 == 1) {
                    for g in &roots {
                        gens.push(self.root_element(g, 1 << b)?);
                    }
                }
                self.generated(&gens)
            })
            .collect()
    }

    pub fn factorization_report(&self) -> Result<FactorizationReport> {
        let subs = self.factor_subgroups()?;
        let orders: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        // The product set M̃·Ñ, built one factor at a time.
        let mut prod: BTreeSet<TorusElement> = BTreeSet::from([self.identity()]);
        for s in &subs {
            prod = prod
                .iter()
                .flat_map(|x| s.iter().map(move |y| (*x, *y)))
                .map(|(x, y)| self.mul(&x, &y))
                .collect();
        }
        let k = self.n_u;
        let l = subs.len() - k;
        let total: usize = orders.iter().product();
        let consistent =
            prod.len() == self.order() && total == prod.len() << (subs.len() - 1);
        Ok(FactorizationReport {
            k,
            l,
            m_orders: orders[..k].to_vec(),
            n_orders: orders[k..].to_vec(),
            product_order: prod.len(),
            group_order: self.order(),
            consistent,
        })
    }
}

/// |T̃₀/T_{2e}| = 2 · |O^×/U_{2e}|^r, where |O^×/U_{2e}| = (q-1) q^{2e-1}.
pub fn order_mod_u2e(e: usize, f: usize, rank: usize) -> u128 {
    let q = 1u128 << f;
    let units = (q - 1) * q.pow(2 * e as u32 - 1);
    2 * units.pow(rank as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldSpec;
    use crate::rootdata::CartanType;

    fn torus(e: usize, f: usize, t: CartanType, r: usize) -> (SquareClassSpace, CoverTorusGroup) {
        torus_over(FieldSpec::new(e, f, None).unwrap(), t, r)
    }

    fn torus_over(k: FieldSpec, t: CartanType, r: usize) -> (SquareClassSpace, CoverTorusGroup) {
        let space = SquareClassSpace::new(k).unwrap();
        let g = CoverTorusGroup::new(&space, RootDatum::new(t, r).unwrap()).unwrap();
        (space, g)
    }

    #[test]
    fn rational_a2_relations() {
        let (space, g) = torus(1, 1, CartanType::A, 2);
        let k = space.field();
        let c = |n: i64| space.torus_coords(k.class_of(&k.from_int(n)).unwrap());
        assert_eq!(g.order(), 8);
        let h5 = g.gen(0, c(5));
        assert_eq!(g.mul(&h5, &h5), g.identity());
        let (a, b) = (g.gen(0, c(-1)), g.gen(1, c(-1)));
        assert_eq!(g.mul(&a, &b), g.negate(&g.mul(&b, &a)));
        assert_eq!(g.mul(&g.identity(), &a), a);
    }

    #[test]
    fn negative_root_element() {
        let (space, g) = torus(1, 1, CartanType::A, 2);
        let m = space.torus_coords(space.class_of_minus_one());
        let x = g.root_element(&[-1, 0], m).unwrap();
        assert_eq!(x, g.negate(&g.gen(0, m)));
        let y = g.root_element(&[1, 1], m).unwrap();
        assert_eq!(y, g.mul(&g.gen(1, m), &g.gen(0, m)));
        assert!(g.root_element(&[1, -1], m).is_err());
    }

    #[test]
    fn center_orders() {
        for (t, r, n) in [(CartanType::A, 2, 2), (CartanType::A, 3, 4), (CartanType::D, 4, 8)] {
            let (_, g) = torus(1, 1, t, r);
            let c = g.center().unwrap();
            assert_eq!(c.len(), n);
            assert_eq!(c, g.center_from_lattice());
        }
        let (_, g) = torus(1, 2, CartanType::A, 3);
        assert_eq!(g.center().unwrap().len(), 2 * 4);
    }

    #[test]
    fn phi_examples() {
        let (space, g) = torus(1, 1, CartanType::A, 2);
        let k = space.field();
        let three = space.torus_coords(k.class_of(&k.from_int(3)).unwrap());
        let x = g.gen(1, three);
        assert_eq!(g.phi(0, &x), g.mul(&x, &g.gen(0, three)));
        assert_eq!(g.phi(0, &g.minus_one()), g.minus_one());
    }

    #[test]
    fn factorization_gaussian() {
        let gaussian = FieldSpec::new(2, 1, Some(&[2, -2])).unwrap();
        let (_, g) = torus_over(gaussian, CartanType::A, 2);
        let rep = g.factorization_report().unwrap();
        assert_eq!((rep.k, rep.l), (0, 1));
        assert!(rep.consistent);
        let (_, g) = torus(1, 1, CartanType::A, 2);
        let rep = g.factorization_report().unwrap();
        assert_eq!((rep.k, rep.l), (1, 0));
        assert_eq!(rep.m_orders, vec![8]);
    }

    #[test]
    fn abstract_minus_one() {
        let sys = RootDatum::new(CartanType::A, 2).unwrap();
        let g = CoverTorusGroup::from_gram(sys.clone(), vec![0b10, 0b01]).unwrap();
        assert_eq!(g.minus_one_class(), 0);
        let g = CoverTorusGroup::from_gram(sys.clone(), vec![0b1]).unwrap();
        assert_eq!(g.minus_one_class(), 1);
        assert!(CoverTorusGroup::from_gram(sys, vec![0b01, 0b00]).is_err());
    }

    #[test]
    fn quotient_by_u2e_order() {
        assert_eq!(order_mod_u2e(1, 1, 2), 2 * 4);
        assert_eq!(order_mod_u2e(2, 1, 1), 2 * 8);
    }
}
