//! Genuine irreducible representations of T̃₀/T_R, built as monomial induced
//! representations from a maximal abelian subgroup. All values are Gaussian integers.

use std::collections::BTreeSet;

use num_complex::Complex;
use serde::Serialize;

use crate::covertorus::{CoverTorusGroup, TorusElement};
use crate::error::{Error, Result};
use crate::padic::SquareClassSpace;
use crate::rootdata::CartanType;

pub type Gaussian = Complex<i64>;

const ONE: Gaussian = Complex { re: 1, im: 0 };
const ZERO: Gaussian = Complex { re: 0, im: 0 };
const I: Gaussian = Complex { re: 0, im: 1 };

fn sign_value(neg: bool) -> Gaussian {
    if neg {
        -ONE
    } else {
        ONE
    }
}

/// A character of the center with χ(-1) = -1, listed on every central element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub values: Vec<(TorusElement, Gaussian)>,
}

/// Reduces `bits` against a basis sorted by decreasing leading bit, returning the
/// remainder and the set of lifts used.
fn reduce(basis: &[(u64, u64)], mut bits: u64) -> (u64, u64) {
    let mut combo = 0;
    for (p, c) in basis {
        if bits ^ p < bits {
            bits ^= p;
            combo ^= c;
        }
    }
    (bits, combo)
}

/// Every genuine character of the center, in a fixed order.
pub fn genuine_central_characters(g: &CoverTorusGroup) -> Result<Vec<CentralCharacter>> {
    let center = g.center()?;
    // Lifts of a basis of Z/{±1}; each basis vector remembers which lifts it combines.
    let mut basis: Vec<(u64, u64)> = Vec::new();
    let mut lifts: Vec<TorusElement> = Vec::new();
    for z in &center {
        let (b, c) = reduce(&basis, z.bits);
        if b != 0 {
            basis.push((b, c ^ (1 << lifts.len())));
            basis.sort_by_key(|x| std::cmp::Reverse(x.0));
            lifts.push(TorusElement { bits: z.bits, sign: false });
        }
    }
    let m = lifts.len();
    if center.len() != 2 << m {
        return Err(Error::Inconsistent("center is not ±(elementary abelian)".into()));
    }
    // z = ±∏_{i ∈ combo} z_i; record the combination and whether the sign flips.
    let mut decomp = Vec::with_capacity(center.len());
    for z in &center {
        let (rest, combo) = reduce(&basis, z.bits);
        let prod = (0..m)
            .filter(|i| (combo >> i) & 1 == 1)
            .fold(g.identity(), |p, i| g.mul(&p, &lifts[i]));
        if rest != 0 || prod.bits != z.bits {
            return Err(Error::Inconsistent("central element outside the span".into()));
        }
        decomp.push((combo, prod.sign != z.sign));
    }
    let roots: Vec<Gaussian> = lifts
        .iter()
        .map(|z| if g.square_sign(z) { I } else { ONE })
        .collect();
    let mut out = Vec::new();
    for choice in 0u64..(1 << m) {
        let vals: Vec<Gaussian> = (0..m)
            .map(|i| if (choice >> i) & 1 == 1 { -roots[i] } else { roots[i] })
            .collect();
        let values = center
            .iter()
            .zip(&decomp)
            .map(|(z, (combo, flip))| {
                let v = (0..m)
                    .filter(|i| (combo >> i) & 1 == 1)
                    .fold(sign_value(*flip), |acc, i| acc * vals[i]);
                (*z, v)
            })
            .collect();
        out.push(CentralCharacter { values });
    }
    Ok(out)
}

/// τ = Ind_A^G χ_A with A a maximal abelian subgroup containing the center.
#[derive(Clone, Debug)]
pub struct GenuineRep {
    pub dim: usize,
    polarization: Vec<TorusElement>,
    chi_a: Vec<Option<Gaussian>>,
    coset_reps: Vec<TorusElement>,
    /// For each element x (by group index): the k and a ∈ A with x = t_k a.
    coset_of: Vec<(usize, TorusElement)>,
    character: Vec<Gaussian>,
}

/// A monomial matrix: column k has its single entry `values[k]` in row `rows[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub rows: Vec<usize>,
    pub values: Vec<Gaussian>,
}

impl Monomial {
    pub fn dense(&self) -> Vec<Vec<Gaussian>> {
        let n = self.rows.len();
        let mut m = vec![vec![ZERO; n]; n];
        for k in 0..n {
            m[self.rows[k]][k] = self.values[k];
        }
        m
    }

    pub fn trace(&self) -> Gaussian {
        (0..self.rows.len())
            .filter(|&k| self.rows[k] == k)
            .map(|k| self.values[k])
            .sum()
    }
}

impl GenuineRep {
    pub fn construct(g: &CoverTorusGroup, chi: &CentralCharacter) -> Result<Self> {
        let n = g.order();
        let mut chi_a: Vec<Option<Gaussian>> = vec![None; n];
        let mut members: Vec<TorusElement> = Vec::new();
        for (z, v) in &chi.values {
            if *z == g.minus_one() && *v != -ONE {
                return Err(Error::InvalidInput("central character is not genuine".into()));
            }
            chi_a[g.index(z)] = Some(*v);
            members.push(*z);
        }
        let mut extensions: Vec<TorusElement> = Vec::new();
        for x in g.elements() {
            if chi_a[g.index(&x)].is_some() || !extensions.iter().all(|y| g.commutes(&x, y)) {
                continue;
            }
            let sq = chi_a[g.index(&g.mul(&x, &x))]
                .ok_or_else(|| Error::Inconsistent("square outside the polarization".into()))?;
            let root = if sq == ONE {
                ONE
            } else if sq == -ONE {
                I
            } else {
                return Err(Error::Inconsistent("square of an element is not ±1".into()));
            };
            let mut new = Vec::with_capacity(members.len());
            for a in &members {
                let xa = g.mul(&x, a);
                chi_a[g.index(&xa)] = Some(root * chi_a[g.index(a)].unwrap());
                new.push(xa);
            }
            members.extend(new);
            extensions.push(x);
        }
        let mut coset_of = vec![(usize::MAX, g.identity()); n];
        let mut coset_reps = Vec::new();
        for t in g.elements() {
            if coset_of[g.index(&t)].0 != usize::MAX {
                continue;
            }
            let k = coset_reps.len();
            for a in &members {
                coset_of[g.index(&g.mul(&t, a))] = (k, *a);
            }
            coset_reps.push(t);
        }
        members.sort();
        let mut rep = GenuineRep {
            dim: coset_reps.len(),
            polarization: members,
            chi_a,
            coset_reps,
            coset_of,
            character: vec![],
        };
        rep.character = g.elements().map(|x| rep.matrix(g, &x).trace()).collect();
        Ok(rep)
    }

    pub fn polarization(&self) -> &[TorusElement] {
        &self.polarization
    }

    pub fn matrix(&self, g: &CoverTorusGroup, x: &TorusElement) -> Monomial {
        let mut rows = Vec::with_capacity(self.dim);
        let mut values = Vec::with_capacity(self.dim);
        for t in &self.coset_reps {
            let (k, a) = self.coset_of[g.index(&g.mul(x, t))];
            rows.push(k);
            values.push(self.chi_a[g.index(&a)].expect("coset decomposition lands in A"));
        }
        Monomial { rows, values }
    }

    pub fn character(&self) -> &[Gaussian] {
        &self.character
    }

    pub fn chi(&self, g: &CoverTorusGroup, x: &TorusElement) -> Gaussian {
        self.character[g.index(x)]
    }

    /// Σ |χ(g)|² / |G|, exactly: returns the numerator and |G|.
    pub fn norm(&self) -> (i64, i64) {
        let s: i64 = self.character.iter().map(|c| c.norm_sqr()).sum();
        (s, self.character.len() as i64)
    }

    pub fn is_irreducible(&self) -> bool {
        let (s, n) = self.norm();
        s == n
    }

    pub fn is_genuine(&self, g: &CoverTorusGroup) -> bool {
        g.elements()
            .all(|x| self.chi(g, &g.negate(&x)) == -self.chi(g, &x))
    }

    pub fn is_weyl_invariant(&self, g: &CoverTorusGroup) -> bool {
        is_weyl_invariant(g, &self.character)
    }
}

/// χ ∘ φ_α = χ for every simple α.
pub fn is_weyl_invariant(g: &CoverTorusGroup, character: &[Gaussian]) -> bool {
    (0..g.rank()).all(|a| {
        g.elements()
            .all(|x| character[g.index(&g.phi(a, &x))] == character[g.index(&x)])
    })
}

/// The one-dimensional character x ↦ (-1)^{λ · coords(x)}, which ignores the sign.
pub fn sign_character(g: &CoverTorusGroup, lambda: u64) -> Vec<Gaussian> {
    g.elements()
        .map(|x| sign_value((x.bits & lambda).count_ones() % 2 == 1))
        .collect()
}

/// One representation per genuine central character.
pub fn all_genuine_reps(g: &CoverTorusGroup) -> Result<Vec<GenuineRep>> {
    genuine_central_characters(g)?
        .iter()
        .map(|chi| GenuineRep::construct(g, chi))
        .collect()
}

/// The characters obtained by tensoring one genuine irrep of each orthogonal block
/// (M̃_i for the u_i, Ñ_j for the pairs e_j, f_j) and identifying the central signs.
pub fn tensor_characters(g: &CoverTorusGroup) -> Result<Vec<Vec<Gaussian>>> {
    let d = g.dim();
    let mut comps = Vec::new();
    for &mask in g.blocks() {
        let pos: Vec<usize> = (0..d).filter(|b| (mask >> b) & 1 == 1).collect();
        let gram: Vec<u64> = pos
            .iter()
            .map(|&i| {
                pos.iter()
                    .enumerate()
                    .filter(|(_, &j)| (g.gram()[i] >> j) & 1 == 1)
                    .fold(0, |row, (jj, _)| row | (1 << jj))
            })
            .collect();
        let sub = CoverTorusGroup::from_gram(g.root_datum().clone(), gram)?;
        let chars: Vec<Vec<Gaussian>> = all_genuine_reps(&sub)?
            .into_iter()
            .map(|r| r.character)
            .collect();
        comps.push((pos, sub, chars));
    }
    let project = |x: &TorusElement, pos: &[usize], sub: &CoverTorusGroup| -> TorusElement {
        let coords: Vec<u64> = (0..g.rank())
            .map(|i| {
                let c = g.coord(x, i);
                pos.iter()
                    .enumerate()
                    .fold(0, |acc, (jj, &b)| acc | (((c >> b) & 1) << jj))
            })
            .collect();
        sub.from_coords(false, &coords)
    };
    let mut out = Vec::new();
    let sizes: Vec<usize> = comps.iter().map(|c| c.2.len()).collect();
    let total: usize = sizes.iter().product();
    for mut choice in 0..total {
        let picks: Vec<usize> = sizes
            .iter()
            .map(|s| {
                let p = choice % s;
                choice /= s;
                p
            })
            .collect();
        let ch: Vec<Gaussian> = g
            .elements()
            .map(|x| {
                comps.iter().zip(&picks).fold(sign_value(x.sign), |acc, ((pos, sub, chars), p)| {
                    acc * chars[*p][sub.index(&project(&x, pos, sub))]
                })
            })
            .collect();
        out.push(ch);
    }
    Ok(out)
}

/// Sorted character vectors, for comparing two families as sets.
pub fn character_set(chars: impl IntoIterator<Item = Vec<Gaussian>>) -> BTreeSet<Vec<(i64, i64)>> {
    chars
        .into_iter()
        .map(|c| c.iter().map(|z| (z.re, z.im)).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Table2Row {
    #[serde(rename = "type")]
    pub name: String,
    pub e: usize,
    pub f: usize,
    pub group_order: usize,
    pub dims: Vec<usize>,
    pub count: usize,
    pub sum_of_squares: usize,
}

pub fn table2_row(g: &CoverTorusGroup, reps: &[GenuineRep], e: usize, f: usize) -> Table2Row {
    let dims: BTreeSet<usize> = reps.iter().map(|r| r.dim).collect();
    Table2Row {
        name: g.root_datum().name(),
        e,
        f,
        group_order: g.order(),
        dims: dims.into_iter().collect(),
        count: reps.len(),
        sum_of_squares: reps.iter().map(|r| r.dim * r.dim).sum(),
    }
}

/// Constituents of a restriction: (index into the subgroup's reps, multiplicity).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Branching {
    pub constituents: Vec<(usize, i64)>,
    pub restricted_dim: usize,
}

impl Branching {
    pub fn is_irreducible(&self) -> bool {
        self.constituents.len() == 1 && self.constituents[0].1 == 1
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.constituents.iter().all(|(_, m)| *m == 1)
    }
}

/// Node of the larger diagram that is deleted to reach the corank-one subsystem of the
/// same letter: the last node for A, the first for D.
pub fn branch_node(g: &CoverTorusGroup) -> Result<usize> {
    let sys = g.root_datum();
    match (sys.cartan_type(), sys.rank()) {
        (CartanType::A, r) if r >= 3 => Ok(r - 1),
        (CartanType::D, r) if r >= 4 => Ok(0),
        _ => Err(Error::Unsupported(format!("no branching rule for {}", sys.name()))),
    }
}

/// Restricts τ to the torus of the subsystem spanned by all nodes but `branch_node`
/// and decomposes it against `sub_reps`.
pub fn restrict_branch(
    g: &CoverTorusGroup,
    rep: &GenuineRep,
    sub: &CoverTorusGroup,
    sub_reps: &[GenuineRep],
) -> Result<Branching> {
    let skip = branch_node(g)?;
    let nodes: Vec<usize> = (0..g.rank()).filter(|&i| i != skip).collect();
    if nodes.len() != sub.rank() || sub.dim() != g.dim() || sub.gram() != g.gram() {
        return Err(Error::InvalidInput("subgroup does not match the deleted node".into()));
    }
    let (c, cs) = (g.root_datum().cartan(), sub.root_datum().cartan());
    for (a, &i) in nodes.iter().enumerate() {
        for (b, &j) in nodes.iter().enumerate() {
            if c[i][j] != cs[a][b] {
                return Err(Error::InvalidInput("subsystem Cartan matrix mismatch".into()));
            }
        }
    }
    let embed = |h: &TorusElement| -> TorusElement {
        let mut coords = vec![0; g.rank()];
        for (a, &i) in nodes.iter().enumerate() {
            coords[i] = sub.coord(h, a);
        }
        g.from_coords(h.sign, &coords)
    };
    let restricted: Vec<Gaussian> = sub.elements().map(|h| rep.chi(g, &embed(&h))).collect();
    let n = sub.order() as i64;
    let mut constituents = Vec::new();
    let mut total = 0;
    for (j, s) in sub_reps.iter().enumerate() {
        let ip: Gaussian = restricted
            .iter()
            .zip(s.character())
            .map(|(a, b)| a * b.conj())
            .sum();
        if ip.im != 0 || ip.re % n != 0 {
            return Err(Error::Inconsistent("non-integral multiplicity".into()));
        }
        let m = ip.re / n;
        if m != 0 {
            constituents.push((j, m));
            total += m as usize * s.dim;
        }
    }
    if total != rep.dim {
        return Err(Error::Inconsistent("restriction is not covered by genuine reps".into()));
    }
    Ok(Branching {
        constituents,
        restricted_dim: total,
    })
}

/// Classes in O^×/R (torus coordinates) of the units in U_j; U_0 is the whole unit group.
pub fn unit_filtration_classes(space: &SquareClassSpace, j: usize) -> Vec<u64> {
    let k = space.field();
    let m = 2 * k.e() + 1;
    let one = k.one();
    let mut out = BTreeSet::new();
    for key in 0..(1u64 << k.key_bits(m)) {
        let x = k.unpack(key, m);
        if !k.is_unit(&x) {
            continue;
        }
        if j > 0 && k.val(&k.sub(&x, &one)).is_some_and(|v| v < j) {
            continue;
        }
        out.insert(space.torus_coords(k.class_of_ring(&x).expect("unit")));
    }
    out.into_iter().collect()
}

/// τ(X_{α,u,j}) = N / [U_j : U_j ∩ R] with N = Σ_{v ∈ U_j/(U_j∩R)} (v,u) τ(h̃_α(v)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMatrix {
    pub numerator: Vec<Vec<Gaussian>>,
    pub denominator: i64,
}

pub fn x_matrix(
    g: &CoverTorusGroup,
    rep: &GenuineRep,
    alpha: &[i64],
    u: u64,
    classes: &[u64],
) -> Result<XMatrix> {
    let n = rep.dim;
    let mut num = vec![vec![ZERO; n]; n];
    for &v in classes {
        let h = g.root_element(alpha, v)?;
        let w = sign_value(g.pair(v, u));
        let m = rep.matrix(g, &h);
        for k in 0..n {
            num[m.rows[k]][k] += w * m.values[k];
        }
    }
    Ok(XMatrix {
        numerator: num,
        denominator: classes.len() as i64,
    })
}

pub fn mat_mul(a: &[Vec<Gaussian>], b: &[Vec<Gaussian>]) -> Vec<Vec<Gaussian>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_trace(a: &[Vec<Gaussian>]) -> Gaussian {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn mat_scale(a: &[Vec<Gaussian>], c: Gaussian) -> Vec<Vec<Gaussian>> {
    a.iter().map(|row| row.iter().map(|x| x * c).collect()).collect()
}

/// Checks Tr τ(X) = dim τ / [U_j : U_j∩R] and τ(X)² = (−1,u) [U_j : U_j∩R]⁻¹ τ(h̃_α(−1)),
/// both cleared of denominators.
pub fn x_identities(g: &CoverTorusGroup, rep: &GenuineRep, alpha: &[i64], u: u64, x: &XMatrix) -> Result<(bool, bool)> {
    let d = x.denominator;
    let trace_ok = mat_trace(&x.numerator) == Complex::new(rep.dim as i64, 0);
    let lhs = mat_mul(&x.numerator, &x.numerator);
    let h = rep.matrix(g, &g.root_element(alpha, g.minus_one_class())?).dense();
    let chi_minus_one = sign_value(g.pair(g.minus_one_class(), u));
    let rhs = mat_scale(&h, chi_minus_one * d);
    Ok((trace_ok, lhs == rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldSpec;
    use crate::rootdata::RootDatum;

    fn torus(t: CartanType, r: usize) -> (SquareClassSpace, CoverTorusGroup) {
        let space = SquareClassSpace::new(FieldSpec::new(1, 1, None).unwrap()).unwrap();
        let g = CoverTorusGroup::new(&space, RootDatum::new(t, r).unwrap()).unwrap();
        (space, g)
    }

    #[test]
    fn rational_a2_rep() {
        let (_, g) = torus(CartanType::A, 2);
        let reps = all_genuine_reps(&g).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].dim, 2);
        assert!(reps[0].is_irreducible());
        assert!(reps[0].is_genuine(&g));
        assert!(reps[0].is_weyl_invariant(&g));
    }

    #[test]
    fn d4_counts() {
        let (_, g) = torus(CartanType::D, 4);
        let reps = all_genuine_reps(&g).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(|r| r.dim == 2));
    }

    #[test]
    fn sign_character_control() {
        let (_, g) = torus(CartanType::A, 2);
        assert!(!is_weyl_invariant(&g, &sign_character(&g, 1)));
        assert!(is_weyl_invariant(&g, &sign_character(&g, 0)));
    }

    #[test]
    fn x_matrix_trace() {
        let (space, g) = torus(CartanType::A, 2);
        let rep = &all_genuine_reps(&g).unwrap()[0];
        let classes = unit_filtration_classes(&space, 1);
        assert_eq!(classes.len(), 2);
        let x = x_matrix(&g, rep, &[1, 0], 0, &classes).unwrap();
        assert_eq!(mat_trace(&x.numerator), Complex::new(2, 0));
        assert_eq!(x.denominator, 2);
        assert_eq!(x_identities(&g, rep, &[1, 0], 0, &x).unwrap(), (true, true));
    }

    #[test]
    fn bad_central_character_rejected() {
        let (_, g) = torus(CartanType::A, 2);
        let chi = CentralCharacter {
            values: vec![(g.identity(), ONE), (g.minus_one(), ONE)],
        };
        assert!(GenuineRep::construct(&g, &chi).is_err());
    }
}
