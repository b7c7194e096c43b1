use super::classes::SquareClass;
use super::field::{Elt, FieldSpec, PadicElement};
use crate::error::{Error, Result};

/// A way of evaluating the quadratic Hilbert symbol on square classes.
pub trait HilbertMethod: Send + Sync {
    fn name(&self) -> &'static str;
    /// Returns +1 or -1.
    fn symbol(&self, field: &FieldSpec, a: SquareClass, b: SquareClass) -> Result<i8>;
}

/// Norm-group method: (a, b) = 1 iff b is a norm from F(√a).
pub struct NormClasses;

/// Searches for a primitive zero of z² - a x² - b y² modulo ϖ^(2e+1) at a coordinate
/// whose coefficient is a unit, which Hensel-lifts to a genuine zero.
pub struct ConicSearch;

/// The classical formula over Q_2; refuses every other field.
pub struct RationalFormula;

pub fn registry() -> Vec<Box<dyn HilbertMethod>> {
    vec![
        Box::new(NormClasses),
        Box::new(ConicSearch),
        Box::new(RationalFormula),
    ]
}

pub fn method(name: &str) -> Result<Box<dyn HilbertMethod>> {
    registry()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::Unknown {
            kind: "hilbert method",
            name: name.into(),
        })
}

/// Membership table (indexed by class id) of the square classes of values of
/// x² - a y², for a non-square a.
///
/// Writing x² - a y² = y²((x/y)² - a) reduces the search to the values 1 - a t² with
/// t ∈ O and s² - a with s ∈ ϖO. Both families have valuation at most 2e, so their
/// classes are fixed by t and s modulo ϖ^(3e+1).
pub fn norm_classes(k: &FieldSpec, a: SquareClass) -> Result<Vec<bool>> {
    if a == k.trivial_class() {
        return Err(Error::InvalidInput("norm classes of a square".into()));
    }
    let a_el = k.class_rep_ring(a);
    let depth = 3 * k.e() + 1;
    let limit = 2 * k.e() + 1;
    let mut seen = vec![false; k.n_classes()];
    let mut record = |z: &Elt| -> Result<()> {
        let v = k
            .val(z)
            .ok_or_else(|| Error::Inconsistent("x² - a y² vanished for non-square a".into()))?;
        if v <= limit {
            seen[k.class_of_ring(z)?.0 as usize] = true;
        }
        Ok(())
    };
    let one = k.one();
    for key in 0..(1u64 << k.key_bits(depth)) {
        let t = k.unpack(key, depth);
        record(&k.sub(&one, &k.mul(&a_el, &k.square(&t))))?;
    }
    let pi = k.pi();
    for key in 0..(1u64 << k.key_bits(depth - 1)) {
        let s = k.mul(&pi, &k.unpack(key, depth - 1));
        record(&k.sub(&k.square(&s), &a_el))?;
    }
    // The norm classes form a subgroup of index 2; anything else is a bug.
    let members: Vec<SquareClass> = k.all_classes().filter(|c| seen[c.0 as usize]).collect();
    if members.len() * 2 != k.n_classes() {
        return Err(Error::Inconsistent(format!(
            "norm group has {} classes, expected {}",
            members.len(),
            k.n_classes() / 2
        )));
    }
    for x in &members {
        for y in &members {
            if !seen[k.class_mul(*x, *y).0 as usize] {
                return Err(Error::Inconsistent("norm classes not closed".into()));
            }
        }
    }
    Ok(seen)
}

impl HilbertMethod for NormClasses {
    fn name(&self) -> &'static str {
        "norm"
    }

    fn symbol(&self, k: &FieldSpec, a: SquareClass, b: SquareClass) -> Result<i8> {
        if a == k.trivial_class() {
            return Ok(1);
        }
        let n = norm_classes(k, a)?;
        Ok(if n[b.0 as usize] { 1 } else { -1 })
    }
}

impl HilbertMethod for ConicSearch {
    fn name(&self) -> &'static str {
        "conic"
    }

    fn symbol(&self, k: &FieldSpec, a: SquareClass, b: SquareClass) -> Result<i8> {
        let m = 2 * k.e() + 1;
        let bits = k.key_bits(m);
        if bits > 24 {
            return Err(Error::Budget(format!("conic search over 2^{bits} residues")));
        }
        let (a_el, mut b_el) = (k.class_rep_ring(a), k.class_rep_ring(b));
        if k.parity(a) == 1 && k.parity(b) == 1 {
            // (a, b) = (a, -ab) and -ab / ϖ² is a unit.
            let prod = k.neg(&k.mul(&a_el, &b_el));
            b_el = k.div_pi(&prod, 2);
        }
        let a_unit = k.is_unit(&a_el);
        let b_unit = k.is_unit(&b_el);
        let mut sq = vec![false; 1usize << bits];
        for key in 0..(1u64 << bits) {
            let w = k.unpack(key, m);
            sq[k.pack(&k.square(&w), m) as usize] = true;
        }
        let is_sq = |x: &Elt| sq[k.pack(x, m) as usize];
        let one = k.one();
        let a_inv = a_unit.then(|| k.inv_unit(&a_el));
        let b_inv = b_unit.then(|| k.inv_unit(&b_el));
        if !a_unit && !b_unit {
            return Err(Error::Inconsistent("both conic coefficients non-units".into()));
        }
        for key in 0..(1u64 << bits) {
            let t = k.unpack(key, m);
            let t2 = k.square(&t);
            // z = 1, solve for y (b unit) or x (a unit).
            let hit = if let Some(bi) = &b_inv {
                is_sq(&k.mul(bi, &k.sub(&one, &k.mul(&a_el, &t2))))
            } else {
                is_sq(&k.mul(a_inv.as_ref().unwrap(), &k.sub(&one, &k.mul(&b_el, &t2))))
            };
            // x = 1 with a a unit: z² = a + b y².
            let hit = hit || (a_unit && is_sq(&k.add(&a_el, &k.mul(&b_el, &t2))));
            // y = 1 with b a unit: z² = b + a x².
            let hit = hit || (b_unit && is_sq(&k.add(&b_el, &k.mul(&a_el, &t2))));
            if hit {
                return Ok(1);
            }
        }
        Ok(-1)
    }
}

impl HilbertMethod for RationalFormula {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn symbol(&self, k: &FieldSpec, a: SquareClass, b: SquareClass) -> Result<i8> {
        if k.e() != 1 || k.f() != 1 || k.eisenstein() != [-2] {
            return Err(Error::Unsupported(
                "the closed formula only applies over Q_2".into(),
            ));
        }
        let unit = |c: SquareClass| (k.class_rep(c).unit.0[0] & 7) as i64;
        let eps = |u: i64| ((u - 1) / 2) & 1;
        let omega = |u: i64| ((u * u - 1) / 8) & 1;
        let (al, be) = (k.parity(a) as i64, k.parity(b) as i64);
        let (u, v) = (unit(a), unit(b));
        let s = eps(u) * eps(v) + al * omega(v) + be * omega(u);
        Ok(if s % 2 == 0 { 1 } else { -1 })
    }
}

/// The authoritative symbol on field elements.
pub fn hilbert(k: &FieldSpec, a: &PadicElement, b: &PadicElement) -> Result<i8> {
    NormClasses.symbol(k, k.class_of(a)?, k.class_of(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        let k = FieldSpec::new(1, 1, None).unwrap();
        let h = |a: i64, b: i64| hilbert(&k, &k.from_int(a), &k.from_int(b)).unwrap();
        assert_eq!(h(-1, -1), -1);
        assert_eq!(h(2, -1), 1);
        assert_eq!(h(5, 2), -1);
        assert_eq!(h(3, 3), -1);
        assert_eq!(h(2, 2), 1);
        assert!(hilbert(&k, &k.from_int(0), &k.from_int(3)).is_err());
    }

    #[test]
    fn methods_agree_on_q2() {
        let k = FieldSpec::new(1, 1, None).unwrap();
        for a in k.all_classes() {
            for b in k.all_classes() {
                let n = NormClasses.symbol(&k, a, b).unwrap();
                assert_eq!(n, ConicSearch.symbol(&k, a, b).unwrap());
                assert_eq!(n, RationalFormula.symbol(&k, a, b).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_refuses_extensions() {
        let k = FieldSpec::new(2, 1, None).unwrap();
        let c = k.trivial_class();
        assert!(matches!(
            RationalFormula.symbol(&k, c, c),
            Err(Error::Unsupported(_))
        ));
        assert!(method("nope").is_err());
        assert_eq!(method("conic").unwrap().name(), "conic");
    }
}
