use serde::Serialize;

use super::field::{Elt, FieldSpec, PadicElement};
use crate::error::{Error, Result};

const NONUNIT: u16 = u16::MAX;
const UNSEEN: u16 = u16::MAX - 1;

/// Lookup tables for O^× / O^{×2}, keyed by residues modulo ϖ^(2e+1).
#[derive(Clone, Debug, Default)]
pub(crate) struct UnitClasses {
    digits: usize,
    table: Vec<u16>,
    reps: Vec<Elt>,
    mul: Vec<u16>,
}

/// A class in F^× / F^{×2}: `parity * n_unit + unit_class`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct SquareClass(pub u16);

impl UnitClasses {
    pub(crate) fn build(k: &FieldSpec) -> Self {
        let m = 2 * k.e() + 1;
        let size = 1usize << k.key_bits(m);
        // v^2 mod ϖ^(2e+1) only depends on v mod ϖ^(e+1).
        let mut is_sq = vec![false; size];
        for key in 0..(1u64 << k.key_bits(k.e() + 1)) {
            let v = k.unpack(key, k.e() + 1);
            if k.is_unit(&v) {
                is_sq[k.pack(&k.square(&v), m) as usize] = true;
            }
        }
        let squares: Vec<Elt> = (0..size)
            .filter(|&i| is_sq[i])
            .map(|i| k.unpack(i as u64, m))
            .collect();
        let mut table = vec![NONUNIT; size];
        for (key, slot) in table.iter_mut().enumerate() {
            if k.is_unit(&k.unpack(key as u64, m)) {
                *slot = UNSEEN;
            }
        }
        let mut reps = Vec::new();
        for key in 0..size {
            if table[key] != UNSEEN {
                continue;
            }
            let u = k.unpack(key as u64, m);
            let id = reps.len() as u16;
            for s in &squares {
                table[k.pack(&k.mul(&u, s), m) as usize] = id;
            }
            reps.push(u);
        }
        let n = reps.len();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = k.mul(&reps[i], &reps[j]);
                mul[i * n + j] = table[k.pack(&p, m) as usize];
            }
        }
        UnitClasses {
            digits: m,
            table,
            reps,
            mul,
        }
    }
}

impl FieldSpec {
    pub fn n_unit_classes(&self) -> usize {
        self.classes.reps.len()
    }

    pub fn n_classes(&self) -> usize {
        2 * self.n_unit_classes()
    }

    /// Class of a unit in O^× / O^{×2}; only its residue modulo ϖ^(2e+1) matters.
    pub fn unit_class(&self, u: &Elt) -> u16 {
        let c = self.classes.table[self.pack(u, self.classes.digits) as usize];
        debug_assert!(c != NONUNIT, "unit_class of a non-unit");
        c
    }

    pub fn class_of(&self, a: &PadicElement) -> Result<SquareClass> {
        let v = a.val.ok_or(Error::ZeroInput)?;
        if a.prec < 2 * self.e() + 1 {
            return Err(Error::InsufficientPrecision {
                have: a.prec,
                need: 2 * self.e() + 1,
            });
        }
        let p = v.rem_euclid(2) as u16;
        Ok(SquareClass(p * self.n_unit_classes() as u16 + self.unit_class(&a.unit)))
    }

    /// Class of a nonzero ring element.
    pub fn class_of_ring(&self, x: &Elt) -> Result<SquareClass> {
        let v = self.val(x).ok_or(Error::ZeroInput)?;
        let u = self.div_pi(x, v);
        let p = (v % 2) as u16;
        Ok(SquareClass(p * self.n_unit_classes() as u16 + self.unit_class(&u)))
    }

    pub fn parity(&self, c: SquareClass) -> usize {
        c.0 as usize / self.n_unit_classes()
    }

    pub fn unit_part(&self, c: SquareClass) -> u16 {
        c.0 % self.n_unit_classes() as u16
    }

    pub fn make_class(&self, parity: usize, unit_class: u16) -> SquareClass {
        SquareClass((parity % 2) as u16 * self.n_unit_classes() as u16 + unit_class)
    }

    pub fn class_mul(&self, a: SquareClass, b: SquareClass) -> SquareClass {
        let n = self.n_unit_classes();
        let u = self.classes.mul[self.unit_part(a) as usize * n + self.unit_part(b) as usize];
        self.make_class(self.parity(a) + self.parity(b), u)
    }

    /// Representative ϖ^p · u with p in {0, 1}.
    pub fn class_rep(&self, c: SquareClass) -> PadicElement {
        let u = self.classes.reps[self.unit_part(c) as usize];
        PadicElement {
            val: Some(self.parity(c) as i64),
            unit: u,
            prec: self.stored_digits(),
        }
    }

    pub fn class_rep_ring(&self, c: SquareClass) -> Elt {
        let u = self.classes.reps[self.unit_part(c) as usize];
        if self.parity(c) == 1 {
            self.mul(&u, &self.pi())
        } else {
            u
        }
    }

    pub fn trivial_class(&self) -> SquareClass {
        SquareClass(self.unit_class(&self.one()))
    }

    /// True iff a is a square in F: even valuation and a unit part that matches some
    /// v^2 modulo ϖ^(2e+1) with v running over O^× / U_(e+1).
    pub fn is_square(&self, a: &PadicElement) -> Result<bool> {
        Ok(self.class_of(a)? == self.trivial_class())
    }

    pub fn all_classes(&self) -> impl Iterator<Item = SquareClass> {
        (0..self.n_classes() as u16).map(SquareClass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        for (e, f) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3), (6, 1)] {
            let k = FieldSpec::new(e, f, None).unwrap();
            assert_eq!(k.n_unit_classes(), 1 << (e * f + 1), "e={e} f={f}");
            assert_eq!(k.unit_class(&k.one()), 0);
        }
    }

    #[test]
    fn rational_squares() {
        let k = FieldSpec::new(1, 1, None).unwrap();
        assert!(k.is_square(&k.from_int(17)).unwrap());
        assert!(k.is_square(&k.from_int(1)).unwrap());
        assert!(k.is_square(&k.from_int(4 * 9)).unwrap());
        assert!(!k.is_square(&k.from_int(5)).unwrap());
        assert!(!k.is_square(&k.from_int(2)).unwrap());
        assert!(!k.is_square(&k.from_int(-1)).unwrap());
        assert!(k.is_square(&k.from_int(0)).is_err());
    }

    #[test]
    fn class_multiplication_matches_elements() {
        let k = FieldSpec::new(2, 2, None).unwrap();
        for a in k.all_classes() {
            for b in k.all_classes() {
                let p = k.mul_el(&k.class_rep(a), &k.class_rep(b));
                assert_eq!(k.class_of(&p).unwrap(), k.class_mul(a, b));
            }
        }
    }
}
