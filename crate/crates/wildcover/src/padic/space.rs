use serde::Serialize;
use serde_json::{json, Value};

use super::classes::SquareClass;
use super::field::{Elt, FieldSpec, PadicElement};
use super::hilbert::norm_classes;
use crate::error::{Error, Result};
use crate::report::CheckResult;

/// Which of the three shapes O^×/R takes as a quadratic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionCase {
    /// -1 ∈ R: the form is alternating, D = 0.
    #[serde(rename = "i")]
    Alternating,
    /// (-1,-1) = -1: D = ⟨-1⟩.
    #[serde(rename = "ii")]
    MinusOneAnisotropic,
    /// -1 ∉ R but (-1,-1) = 1: D = ⟨u0, -u0⟩.
    #[serde(rename = "iii")]
    MinusOneIsotropic,
}

/// O^×/R = D ⊕ D^⊥ with an orthogonal basis of D and a symplectic basis of D^⊥.
/// Vectors are bitmasks over a fixed basis of O^×/R (see `SquareClassSpace::w_coords`).
#[derive(Clone, Debug, Serialize)]
pub struct UnitDecomposition {
    pub case: DecompositionCase,
    pub dim: usize,
    pub u_basis: Vec<u64>,
    pub e_basis: Vec<u64>,
    pub f_basis: Vec<u64>,
    /// Gram matrix in the basis [u.., e.., f..], rows as bitmasks (bit set = symbol -1).
    pub gram: Vec<u64>,
    /// Class of -1 in the basis [u.., e.., f..].
    pub minus_one: u64,
    #[serde(skip)]
    to_basis: Vec<u64>,
}

impl UnitDecomposition {
    pub fn k(&self) -> usize {
        self.u_basis.len()
    }
    pub fn l(&self) -> usize {
        self.e_basis.len()
    }
    /// Ordered basis [u.., e.., f..].
    pub fn basis(&self) -> Vec<u64> {
        let mut b = self.u_basis.clone();
        b.extend(&self.e_basis);
        b.extend(&self.f_basis);
        b
    }
    /// Coordinates of an O^×/R vector in the basis [u.., e.., f..].
    pub fn coords(&self, w: u64) -> u64 {
        self.to_basis[w as usize]
    }
}

/// F^×/F^{×2} as an F_2 space carrying the Hilbert pairing.
#[derive(Clone, Debug)]
pub struct SquareClassSpace {
    field: FieldSpec,
    basis: Vec<SquareClass>,
    coords: Vec<u64>,
    by_coords: Vec<SquareClass>,
    gram: Vec<u64>,
    radical: SquareClass,
    drop_bit: usize,
    decomposition: UnitDecomposition,
}

fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

impl SquareClassSpace {
    pub fn new(field: FieldSpec) -> Result<Self> {
        let k = &field;
        let n = k.n_classes();
        let dim = k.ef() + 2;
        let mut coords = vec![u64::MAX; n];
        let mut span = vec![k.trivial_class()];
        coords[k.trivial_class().0 as usize] = 0;
        let mut basis = Vec::new();

        let mut candidates: Vec<Elt> = vec![k.pi(), k.from_int_elt(-1)];
        for depth in (1..=2 * k.e()).rev() {
            let p = k.pi_pow(depth);
            for c in 1..k.q() {
                candidates.push(k.add(&k.one(), &k.mul(&p, &k.lift_residue(c))));
            }
        }
        for cand in &candidates {
            let c = k.class_of_ring(cand)?;
            if coords[c.0 as usize] != u64::MAX {
                continue;
            }
            let bit = 1u64 << basis.len();
            let mut added = Vec::with_capacity(span.len());
            for s in &span {
                let t = k.class_mul(*s, c);
                coords[t.0 as usize] = coords[s.0 as usize] | bit;
                added.push(t);
            }
            span.extend(added);
            basis.push(c);
            if basis.len() == dim {
                break;
            }
        }
        if basis.len() != dim || span.len() != n {
            return Err(Error::Inconsistent(format!(
                "square-class basis has {} vectors, expected {dim}",
                basis.len()
            )));
        }
        let mut by_coords = vec![SquareClass(0); n];
        for c in k.all_classes() {
            by_coords[coords[c.0 as usize] as usize] = c;
        }

        let mut gram = vec![0u64; dim];
        for (i, bi) in basis.iter().enumerate() {
            let norms = norm_classes(k, *bi)?;
            for (j, bj) in basis.iter().enumerate() {
                if !norms[bj.0 as usize] {
                    gram[i] |= 1 << j;
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if (gram[i] >> j) & 1 != (gram[j] >> i) & 1 {
                    return Err(Error::Inconsistent("Hilbert Gram not symmetric".into()));
                }
            }
        }

        // The nontrivial class of U_2e.
        let p2e = k.pi_pow(2 * k.e());
        let radical = (1..k.q())
            .map(|c| k.class_of_ring(&k.add(&k.one(), &k.mul(&p2e, &k.lift_residue(c)))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|c| *c != k.trivial_class())
            .ok_or_else(|| Error::Inconsistent("U_2e consists of squares".into()))?;
        let r_unit = coords[radical.0 as usize] >> 1;
        let drop_bit = r_unit.trailing_zeros() as usize;

        let mut space = SquareClassSpace {
            field,
            basis,
            coords,
            by_coords,
            gram,
            radical,
            drop_bit,
            decomposition: UnitDecomposition {
                case: DecompositionCase::Alternating,
                dim: 0,
                u_basis: vec![],
                e_basis: vec![],
                f_basis: vec![],
                gram: vec![],
                minus_one: 0,
                to_basis: vec![],
            },
        };
        space.decomposition = space.decompose()?;
        Ok(space)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SquareClass] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<PadicElement> {
        self.basis.iter().map(|c| self.field.class_rep(*c)).collect()
    }

    pub fn gram(&self) -> &[u64] {
        &self.gram
    }

    pub fn coords(&self, c: SquareClass) -> u64 {
        self.coords[c.0 as usize]
    }

    pub fn class_at(&self, coords: u64) -> SquareClass {
        self.by_coords[coords as usize]
    }

    /// The Hilbert symbol through the cached Gram form, as an F_2 value (1 means -1).
    pub fn pairing(&self, a: SquareClass, b: SquareClass) -> u8 {
        let (x, y) = (self.coords(a), self.coords(b));
        let mut acc = 0;
        for i in 0..self.dim() {
            if (x >> i) & 1 == 1 {
                acc ^= parity(self.gram[i] & y);
            }
        }
        acc
    }

    pub fn symbol(&self, a: SquareClass, b: SquareClass) -> i8 {
        if self.pairing(a, b) == 1 {
            -1
        } else {
            1
        }
    }

    pub fn radical_class(&self) -> SquareClass {
        self.radical
    }

    pub fn radical_vector(&self) -> u64 {
        self.coords(self.radical)
    }

    pub fn unit_classes(&self) -> impl Iterator<Item = SquareClass> + '_ {
        (0..self.field.n_unit_classes() as u16).map(SquareClass)
    }

    pub fn class_of_minus_one(&self) -> SquareClass {
        self.field.class_of_ring(&self.field.from_int_elt(-1)).unwrap()
    }

    /// Dimension of O^×/R, which is ef.
    pub fn w_dim(&self) -> usize {
        self.field.ef()
    }

    /// Coordinates in O^×/R of a unit class: unit coordinates with the radical
    /// direction eliminated at `drop_bit`.
    pub fn w_coords(&self, c: SquareClass) -> u64 {
        debug_assert_eq!(self.field.parity(c), 0);
        let mut u = self.coords(c) >> 1;
        let r = self.radical_vector() >> 1;
        if (u >> self.drop_bit) & 1 == 1 {
            u ^= r;
        }
        let j = self.drop_bit;
        (u & ((1 << j) - 1)) | ((u >> (j + 1)) << j)
    }

    /// A unit class lifting an O^×/R vector.
    pub fn w_lift(&self, w: u64) -> SquareClass {
        let j = self.drop_bit;
        let u = (w & ((1 << j) - 1)) | ((w >> j) << (j + 1));
        self.class_at(u << 1)
    }

    pub fn w_pairing(&self, a: u64, b: u64) -> u8 {
        self.pairing(self.w_lift(a), self.w_lift(b))
    }

    pub fn decomposition(&self) -> &UnitDecomposition {
        &self.decomposition
    }

    /// Class of a unit in the decomposition basis [u.., e.., f..] of O^×/R.
    pub fn torus_coords(&self, c: SquareClass) -> u64 {
        self.decomposition.coords(self.w_coords(c))
    }

    /// A unit class with the given decomposition coordinates.
    pub fn class_from_torus_coords(&self, x: u64) -> SquareClass {
        let b = self.decomposition.basis();
        let w = (0..b.len())
            .filter(|i| (x >> i) & 1 == 1)
            .fold(0, |acc, i| acc ^ b[i]);
        self.w_lift(w)
    }

    fn decompose(&self) -> Result<UnitDecomposition> {
        let n = self.w_dim();
        let size = 1u64 << n;
        let g = |a: u64, b: u64| self.w_pairing(a, b);
        for a in 1..size {
            if (0..size).all(|b| g(a, b) == 0) {
                return Err(Error::Inconsistent(
                    "Hilbert form degenerate on O^×/R".into(),
                ));
            }
        }
        let m = self.w_coords(self.class_of_minus_one());
        let (case, u_basis) = if m == 0 {
            (DecompositionCase::Alternating, vec![])
        } else if g(m, m) == 1 {
            (DecompositionCase::MinusOneAnisotropic, vec![m])
        } else {
            let u0 = (1..size).find(|w| g(m, *w) == 1).unwrap();
            (DecompositionCase::MinusOneIsotropic, vec![u0, u0 ^ m])
        };
        let mut rest: Vec<u64> = (1..size)
            .filter(|w| u_basis.iter().all(|u| g(*u, *w) == 0))
            .collect();
        let (mut e_basis, mut f_basis) = (vec![], vec![]);
        while let Some(&e) = rest.first() {
            let f = *rest
                .iter()
                .find(|w| g(e, **w) == 1)
                .ok_or_else(|| Error::Inconsistent("D-perp is degenerate".into()))?;
            rest.retain(|w| g(e, *w) == 0 && g(f, *w) == 0);
            e_basis.push(e);
            f_basis.push(f);
        }
        let mut d = UnitDecomposition {
            case,
            dim: n,
            u_basis,
            e_basis,
            f_basis,
            gram: vec![],
            minus_one: 0,
            to_basis: vec![u64::MAX; size as usize],
        };
        let b = d.basis();
        if b.len() != n {
            return Err(Error::Inconsistent(format!(
                "decomposition has k + 2l = {} != ef = {n}",
                b.len()
            )));
        }
        for mask in 0..size {
            let w = (0..n)
                .filter(|i| (mask >> i) & 1 == 1)
                .fold(0, |acc, i| acc ^ b[i]);
            d.to_basis[w as usize] = mask;
        }
        if d.to_basis.contains(&u64::MAX) {
            return Err(Error::Inconsistent("decomposition basis is dependent".into()));
        }
        d.gram = (0..n)
            .map(|i| {
                (0..n).fold(0u64, |row, j| row | ((g(b[i], b[j]) as u64) << j))
            })
            .collect();
        d.minus_one = d.to_basis[m as usize];
        Ok(d)
    }

    /// Human-readable class label: small signed integers over Q_2, digit data otherwise.
    pub fn class_label(&self, c: SquareClass) -> Value {
        let k = &self.field;
        let rep = k.class_rep(c);
        if k.e() == 1 && k.f() == 1 && k.eisenstein() == [-2] {
            let u = (rep.unit.0[0] & 7) as i64;
            let u = if u > 4 { u - 8 } else { u };
            json!(u << k.parity(c))
        } else {
            json!({"val": k.parity(c), "unit_digits": k.unit_digits(&rep)[..2 * k.e() + 1].to_vec()})
        }
    }

    /// Verifies the structure of the integral radical R.
    pub fn radical_report(&self) -> Result<Vec<CheckResult>> {
        let k = &self.field;
        let (e, ef) = (k.e(), k.ef());
        let params = json!({"e": e, "f": k.f(), "eisenstein": k.summary().eisenstein});
        let mut out = Vec::new();
        let r = self.radical;
        let norms_r = norm_classes(k, r)?;

        out.push(CheckResult::holds(
            "radical.annihilates_units",
            params.clone(),
            self.unit_classes().all(|u| norms_r[u.0 as usize]),
        ));
        // R as the radical of the pairing on units, read off the Gram form.
        let pairing_radical: Vec<SquareClass> = self
            .unit_classes()
            .filter(|a| self.unit_classes().all(|b| self.pairing(*a, b) == 0))
            .collect();
        out.push(CheckResult::compare(
            "radical.quotient_order",
            params.clone(),
            2,
            pairing_radical.len(),
        ));
        out.push(CheckResult::compare(
            "radical.unit_index",
            params.clone(),
            1u64 << ef,
            k.n_unit_classes() / pairing_radical.len().max(1),
        ));
        let p2e = k.pi_pow(2 * e);
        let mut u2e_classes = Vec::new();
        let mut u2e_square = 0;
        for c in 0..k.q() {
            let cl = k.class_of_ring(&k.add(&k.one(), &k.mul(&p2e, &k.lift_residue(c))))?;
            if cl == k.trivial_class() {
                u2e_square += 1;
            }
            if !u2e_classes.contains(&cl) {
                u2e_classes.push(cl);
            }
        }
        u2e_classes.sort();
        out.push(CheckResult::compare(
            "radical.equals_u2e_times_squares",
            params.clone(),
            &pairing_radical,
            &u2e_classes,
        ));
        out.push(CheckResult::compare(
            "radical.u2e_mod_squares_order",
            params.clone(),
            2,
            k.q() / u2e_square.max(1),
        ));
        let odd = self
            .unit_classes()
            .all(|a| !norms_r[k.make_class(1, a.0).0 as usize]);
        out.push(CheckResult::holds(
            "radical.odd_valuation_symbol",
            params.clone(),
            odd,
        ));
        out.push(CheckResult::holds(
            "radical.u2e1_inside_squares",
            params,
            self.u2e1_squares(),
        ));
        Ok(out)
    }

    /// Every element of U_(2e+1) has a Hensel square root to the working precision.
    /// Exhaustive over U_(2e+1)/U_N for small fields, strided otherwise.
    pub fn u2e1_squares(&self) -> bool {
        let k = &self.field;
        let n = k.precision();
        let lo = 2 * k.e() + 1;
        let base = k.pi_pow(lo);
        let depth = n - lo;
        let total = 1u64 << k.key_bits(depth);
        let stride = (total >> 14).max(1);
        (0..total).step_by(stride as usize).all(|key| {
            let u = k.add(&k.one(), &k.mul(&base, &k.unpack(key, depth)));
            match k.hensel_sqrt(&u, &k.one(), n) {
                Some(w) => k.truncate(&k.square(&w), n) == k.truncate(&u, n),
                None => false,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> SquareClassSpace {
        SquareClassSpace::new(FieldSpec::new(1, 1, None).unwrap()).unwrap()
    }

    #[test]
    fn rational_basis() {
        let s = q2();
        let labels: Vec<Value> = s.basis().iter().map(|c| s.class_label(*c)).collect();
        assert_eq!(labels, vec![json!(2), json!(-1), json!(-3)]);
        assert_eq!(s.class_label(s.radical_class()), json!(-3));
    }

    #[test]
    fn dimensions() {
        for (e, f, dim) in [(1, 1, 3), (1, 2, 4), (2, 1, 4), (3, 1, 5)] {
            let s = SquareClassSpace::new(FieldSpec::new(e, f, None).unwrap()).unwrap();
            assert_eq!(s.dim(), dim);
            // Nondegenerate on the whole space.
            for a in 1..(1u64 << dim) {
                assert!((0..(1u64 << dim)).any(|b| {
                    s.pairing(s.class_at(a), s.class_at(b)) == 1
                }));
            }
        }
    }

    #[test]
    fn decomposition_cases() {
        assert_eq!(q2().decomposition().case, DecompositionCase::MinusOneAnisotropic);
        let gauss = SquareClassSpace::new(FieldSpec::new(2, 1, Some(&[2, -2])).unwrap()).unwrap();
        assert_eq!(gauss.decomposition().case, DecompositionCase::Alternating);
        assert_eq!(gauss.decomposition().l(), 1);
        let sqrt2 = SquareClassSpace::new(FieldSpec::new(2, 1, None).unwrap()).unwrap();
        let d = sqrt2.decomposition();
        assert_eq!(d.case, DecompositionCase::MinusOneIsotropic);
        assert_eq!(d.minus_one, 0b11);
    }

    #[test]
    fn radical_report_passes() {
        for (e, f) in [(1, 1), (2, 1), (1, 2)] {
            let s = SquareClassSpace::new(FieldSpec::new(e, f, None).unwrap()).unwrap();
            for r in s.radical_report().unwrap() {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn torus_coordinates_round_trip() {
        let s = SquareClassSpace::new(FieldSpec::new(2, 2, None).unwrap()).unwrap();
        for x in 0..(1u64 << s.w_dim()) {
            assert_eq!(s.torus_coords(s.class_from_torus_coords(x)), x);
        }
    }
}
