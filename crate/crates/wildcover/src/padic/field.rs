use serde::Serialize;

use super::classes::UnitClasses;
use crate::error::{Error, Result};

/// Largest supported `e * f`.
pub const MAX_EF: usize = 6;

/// Bits kept per integer coefficient. Far above any working precision, so
/// divisions by powers of the uniformizer never eat into the digits we keep.
const BITS: u32 = 60;
const MASK: u64 = (1u64 << BITS) - 1;

/// Residue-field moduli x^f + ... , low coefficients first. Each is irreducible mod 2.
const DEFAULT_MODULI: [&[i64]; 6] = [
    &[0],
    &[1, 1],
    &[1, 1, 0],
    &[1, 1, 0, 0],
    &[1, 0, 1, 0, 0],
    &[1, 1, 0, 0, 0, 0],
];

/// An element of O / 2^60 O. Coefficient of y^b x^a sits at index `b * f + a`,
/// where x generates the unramified layer and y is the uniformizer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Elt(pub [u64; MAX_EF]);

/// A finite extension F of Q_2 presented as a tower: Z_2[x]/(P) unramified of degree f,
/// then an Eisenstein polynomial E of degree e with integer coefficients on top.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    e: usize,
    f: usize,
    modulus: Vec<i64>,
    eisenstein: Vec<i64>,
    precision: usize,
    eps_inv: Elt,
    pub(crate) classes: UnitClasses,
}

/// ϖ^val · unit, with the unit known modulo ϖ^prec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicElement {
    pub val: Option<i64>,
    pub unit: Elt,
    pub prec: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSummary {
    pub e: usize,
    pub f: usize,
    pub q: u64,
    pub modulus: Vec<i64>,
    pub eisenstein: Vec<i64>,
    pub precision: usize,
}

fn v2(x: u64) -> u32 {
    if x & MASK == 0 {
        BITS
    } else {
        x.trailing_zeros()
    }
}

fn residue_mul(a: u64, b: u64, modulus: &[i64]) -> u64 {
    let f = modulus.len();
    let mut acc = 0u64;
    for i in 0..f {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    let red: u64 = modulus
        .iter()
        .enumerate()
        .filter(|(_, c)| **c & 1 == 1)
        .fold(0, |m, (i, _)| m | (1 << i));
    for d in (f..2 * f).rev() {
        if (acc >> d) & 1 == 1 {
            acc ^= 1 << d;
            acc ^= red << (d - f);
        }
    }
    acc
}

impl FieldSpec {
    /// Builds the field. `eisenstein` lists c_0..c_{e-1} (or with a trailing 1) of
    /// y^e + c_{e-1} y^{e-1} + ... + c_0; the default is y^e - 2.
    pub fn new(e: usize, f: usize, eisenstein: Option<&[i64]>) -> Result<Self> {
        Self::with_precision(e, f, eisenstein, 4 * e + 2)
    }

    pub fn with_precision(
        e: usize,
        f: usize,
        eisenstein: Option<&[i64]>,
        precision: usize,
    ) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::InvalidInput("e and f must be positive".into()));
        }
        if e * f > MAX_EF {
            return Err(Error::FieldTooLarge { e, f });
        }
        if precision < 2 * e + 1 {
            return Err(Error::InsufficientPrecision {
                have: precision,
                need: 2 * e + 1,
            });
        }
        let modulus = DEFAULT_MODULI[f - 1].to_vec();
        let eis: Vec<i64> = match eisenstein {
            None => {
                let mut c = vec![0; e];
                c[0] = -2;
                c
            }
            Some(c) => {
                let mut c = c.to_vec();
                if c.len() == e + 1 {
                    if c[e] != 1 {
                        return Err(Error::InvalidInput(format!("Eisenstein polynomial {c:?} is not monic")));
                    }
                    c.pop();
                }
                if c.len() != e {
                    return Err(Error::InvalidInput(format!(
                        "expected {e} Eisenstein coefficients, got {c:?}"
                    )));
                }
                c
            }
        };
        if eis.iter().any(|c| c % 2 != 0) || (eis[0] / 2) % 2 == 0 {
            return Err(Error::NotEisenstein(poly_string(&eis)));
        }
        let q = 1u64 << f;
        for a in 1..q {
            if !(1..q).any(|b| residue_mul(a, b, &modulus) == 1) {
                return Err(Error::Reducible(poly_string(&modulus)));
            }
        }
        let mut field = FieldSpec {
            e,
            f,
            modulus,
            eisenstein: eis,
            precision,
            eps_inv: Elt::default(),
            classes: UnitClasses::default(),
        };
        // eps = y^e / 2 is a unit: y^e = -sum c_i y^i and c_0/2 is odd.
        let mut eps = Elt::default();
        for i in 0..e {
            eps.0[i * f] = (-(field.eisenstein[i] / 2)) as u64 & MASK;
        }
        field.eps_inv = field.inv_unit(&eps);
        let two = field.from_int_elt(2);
        if field.val(&two) != Some(e) {
            return Err(Error::Inconsistent("2O != ϖ^e O".into()));
        }
        field.classes = UnitClasses::build(&field);
        Ok(field)
    }

    pub fn e(&self) -> usize {
        self.e
    }
    pub fn f(&self) -> usize {
        self.f
    }
    pub fn ef(&self) -> usize {
        self.e * self.f
    }
    /// Residue field size.
    pub fn q(&self) -> u64 {
        1 << self.f
    }
    /// Working precision N in ϖ-digits.
    pub fn precision(&self) -> usize {
        self.precision
    }
    /// Number of stored unit digits, e * ceil(N / e).
    pub fn stored_digits(&self) -> usize {
        self.e * self.precision.div_ceil(self.e)
    }
    pub fn eisenstein(&self) -> &[i64] {
        &self.eisenstein
    }
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn summary(&self) -> FieldSummary {
        let mut eis = self.eisenstein.clone();
        eis.push(1);
        let mut m = self.modulus.clone();
        m.push(1);
        FieldSummary {
            e: self.e,
            f: self.f,
            q: self.q(),
            modulus: m,
            eisenstein: eis,
            precision: self.precision,
        }
    }

    // ---- ring arithmetic on O / 2^60 ----

    pub fn zero(&self) -> Elt {
        Elt::default()
    }

    pub fn one(&self) -> Elt {
        let mut x = Elt::default();
        x.0[0] = 1;
        x
    }

    pub fn from_int_elt(&self, n: i64) -> Elt {
        let mut x = Elt::default();
        x.0[0] = (n as u64) & MASK;
        x
    }

    /// The uniformizer y.
    pub fn pi(&self) -> Elt {
        if self.e == 1 {
            self.from_int_elt(-self.eisenstein[0])
        } else {
            let mut x = Elt::default();
            x.0[self.f] = 1;
            x
        }
    }

    pub fn pi_pow(&self, k: usize) -> Elt {
        let mut acc = self.one();
        let p = self.pi();
        for _ in 0..k {
            acc = self.mul(&acc, &p);
        }
        acc
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        let mut r = Elt::default();
        for i in 0..self.e * self.f {
            r.0[i] = a.0[i].wrapping_add(b.0[i]) & MASK;
        }
        r
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        let mut r = Elt::default();
        for i in 0..self.e * self.f {
            r.0[i] = a.0[i].wrapping_sub(b.0[i]) & MASK;
        }
        r
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        self.sub(&Elt::default(), a)
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let (e, f) = (self.e, self.f);
        let mut t = [[0u64; 2 * MAX_EF]; 2 * MAX_EF];
        for b1 in 0..e {
            for a1 in 0..f {
                let c1 = a.0[b1 * f + a1];
                if c1 == 0 {
                    continue;
                }
                for b2 in 0..e {
                    for a2 in 0..f {
                        let c2 = b.0[b2 * f + a2];
                        t[b1 + b2][a1 + a2] =
                            t[b1 + b2][a1 + a2].wrapping_add(c1.wrapping_mul(c2));
                    }
                }
            }
        }
        if f > 1 {
            for row in t.iter_mut().take(2 * e - 1) {
                for d in (f..2 * f - 1).rev() {
                    let c = row[d];
                    if c == 0 {
                        continue;
                    }
                    row[d] = 0;
                    for (i, p) in self.modulus.iter().enumerate() {
                        row[d - f + i] = row[d - f + i].wrapping_sub(c.wrapping_mul(*p as u64));
                    }
                }
            }
        }
        for d in (e..2 * e - 1).rev() {
            let row = t[d];
            t[d] = [0; 2 * MAX_EF];
            for (i, c) in self.eisenstein.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                for a in 0..f {
                    t[d - e + i][a] = t[d - e + i][a].wrapping_sub(row[a].wrapping_mul(*c as u64));
                }
            }
        }
        let mut r = Elt::default();
        for b in 0..e {
            for a in 0..f {
                r.0[b * f + a] = t[b][a] & MASK;
            }
        }
        r
    }

    pub fn square(&self, a: &Elt) -> Elt {
        self.mul(a, a)
    }

    /// ϖ-adic valuation, `None` when the element vanishes at full internal precision.
    pub fn val(&self, x: &Elt) -> Option<usize> {
        let mut best: Option<usize> = None;
        for b in 0..self.e {
            let v = (0..self.f).map(|a| v2(x.0[b * self.f + a])).min().unwrap();
            if v >= BITS {
                continue;
            }
            let cand = self.e * v as usize + b;
            best = Some(best.map_or(cand, |c| c.min(cand)));
        }
        best
    }

    pub fn is_unit(&self, x: &Elt) -> bool {
        (0..self.f).any(|a| x.0[a] & 1 == 1)
    }

    /// Bits kept for the coefficient of y^b when working modulo ϖ^n.
    fn digit_bits(&self, n: usize, b: usize) -> u32 {
        if n <= b {
            0
        } else {
            (n - b).div_ceil(self.e).min(64) as u32
        }
    }

    /// Reduction modulo ϖ^n (coefficientwise, since ϖ^n O splits along the y-basis).
    pub fn truncate(&self, x: &Elt, n: usize) -> Elt {
        let mut r = *x;
        for b in 0..self.e {
            let bits = self.digit_bits(n, b).min(BITS);
            let m = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
            for a in 0..self.f {
                r.0[b * self.f + a] &= m;
            }
        }
        r
    }

    /// Total bits of a packed residue modulo ϖ^n.
    pub fn key_bits(&self, n: usize) -> u32 {
        (0..self.e).map(|b| self.digit_bits(n, b)).sum::<u32>() * self.f as u32
    }

    /// Packs the residue of x modulo ϖ^n into an integer key.
    pub fn pack(&self, x: &Elt, n: usize) -> u64 {
        let mut key = 0u64;
        let mut shift = 0;
        for b in 0..self.e {
            let bits = self.digit_bits(n, b);
            if bits == 0 {
                continue;
            }
            let m = (1u64 << bits) - 1;
            for a in 0..self.f {
                key |= (x.0[b * self.f + a] & m) << shift;
                shift += bits;
            }
        }
        key
    }

    pub fn unpack(&self, key: u64, n: usize) -> Elt {
        let mut x = Elt::default();
        let mut shift = 0;
        for b in 0..self.e {
            let bits = self.digit_bits(n, b);
            if bits == 0 {
                continue;
            }
            let m = (1u64 << bits) - 1;
            for a in 0..self.f {
                x.0[b * self.f + a] = (key >> shift) & m;
                shift += bits;
            }
        }
        x
    }

    /// Exact division by ϖ^v; requires val(x) >= v.
    pub fn div_pi(&self, x: &Elt, v: usize) -> Elt {
        let (q, s) = (v / self.e, v % self.e);
        let mut w = Elt::default();
        for i in 0..self.e * self.f {
            w.0[i] = x.0[i] >> q;
        }
        // x / 2^q = ϖ^s z eps^q, so z = (w ϖ^(e-s) / 2) eps^-(q+1) when s > 0.
        let mut z = if s > 0 {
            let mut t = self.mul(&w, &self.pi_pow(self.e - s));
            for c in t.0.iter_mut().take(self.e * self.f) {
                *c >>= 1;
            }
            t = self.mul(&t, &self.eps_inv);
            t
        } else {
            w
        };
        for _ in 0..q {
            z = self.mul(&z, &self.eps_inv);
        }
        z
    }

    /// Residue class modulo ϖ as a bitmask over the x-basis.
    pub fn residue(&self, x: &Elt) -> u64 {
        (0..self.f).fold(0, |m, a| m | ((x.0[a] & 1) << a))
    }

    /// Lifts a residue bitmask to O using 0/1 coefficients.
    pub fn lift_residue(&self, r: u64) -> Elt {
        let mut x = Elt::default();
        for a in 0..self.f {
            x.0[a] = (r >> a) & 1;
        }
        x
    }

    /// Inverse of a unit by Newton iteration from a residue inverse.
    pub fn inv_unit(&self, u: &Elt) -> Elt {
        let r = self.residue(u);
        let q = self.q();
        let c = (1..q)
            .find(|&c| residue_mul(r, c, &self.modulus) == 1)
            .expect("inverting a non-unit");
        let mut x = self.lift_residue(c);
        let two = self.from_int_elt(2);
        for _ in 0..64 {
            let ux = self.mul(u, &x);
            if ux == self.one() {
                break;
            }
            x = self.mul(&x, &self.sub(&two, &ux));
        }
        x
    }

    // ---- field elements ----

    pub fn zero_element(&self) -> PadicElement {
        PadicElement {
            val: None,
            unit: self.zero(),
            prec: self.stored_digits(),
        }
    }

    /// Splits a ring element as ϖ^v · unit, keeping `prec` known digits.
    pub fn element_from_ring(&self, x: &Elt, prec: usize) -> PadicElement {
        match self.val(x) {
            None => self.zero_element(),
            Some(v) => {
                let keep = prec.saturating_sub(v).min(self.stored_digits());
                let unit = self.truncate(&self.div_pi(x, v), keep);
                PadicElement {
                    val: Some(v as i64),
                    unit,
                    prec: keep,
                }
            }
        }
    }

    pub fn from_int(&self, n: i64) -> PadicElement {
        let x = self.from_int_elt(n);
        self.element_from_ring(&x, usize::MAX)
    }

    pub fn from_unit(&self, val: i64, unit: &Elt) -> Result<PadicElement> {
        if !self.is_unit(unit) {
            return Err(Error::InvalidInput("unit part has zero leading digit".into()));
        }
        let d = self.stored_digits();
        Ok(PadicElement {
            val: Some(val),
            unit: self.truncate(unit, d),
            prec: d,
        })
    }

    /// Builds ϖ^val · Σ_j ϖ^j d_j from residue digits (inner vectors are x-basis bits).
    pub fn from_digits(&self, val: i64, digits: &[Vec<u8>]) -> Result<PadicElement> {
        if digits.is_empty() {
            return Err(Error::InvalidInput("no unit digits".into()));
        }
        let pi = self.pi();
        let mut x = self.zero();
        for d in digits.iter().rev() {
            if d.len() > self.f || d.iter().any(|b| *b > 1) {
                return Err(Error::InvalidInput(format!(
                    "digit {d:?} is not a 0/1 vector of length <= {}",
                    self.f
                )));
            }
            let r = d.iter().enumerate().fold(0u64, |m, (i, b)| m | ((*b as u64) << i));
            x = self.add(&self.mul(&x, &pi), &self.lift_residue(r));
        }
        self.from_unit(val, &x)
    }

    /// Unit digits d_0, d_1, ... with unit = Σ ϖ^j d_j.
    pub fn unit_digits(&self, a: &PadicElement) -> Vec<Vec<u8>> {
        let mut x = a.unit;
        let mut out = Vec::with_capacity(a.prec);
        for _ in 0..a.prec {
            let r = self.residue(&x);
            out.push((0..self.f).map(|i| ((r >> i) & 1) as u8).collect());
            let rest = self.sub(&x, &self.lift_residue(r));
            x = self.div_pi(&rest, 1);
        }
        out
    }

    pub fn mul_el(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        match (a.val, b.val) {
            (Some(va), Some(vb)) => {
                let prec = a.prec.min(b.prec);
                PadicElement {
                    val: Some(va + vb),
                    unit: self.truncate(&self.mul(&a.unit, &b.unit), prec),
                    prec,
                }
            }
            _ => self.zero_element(),
        }
    }

    pub fn neg_el(&self, a: &PadicElement) -> PadicElement {
        PadicElement {
            unit: self.truncate(&self.neg(&a.unit), a.prec),
            ..*a
        }
    }

    pub fn inv_el(&self, a: &PadicElement) -> Result<PadicElement> {
        let v = a.val.ok_or(Error::ZeroInput)?;
        Ok(PadicElement {
            val: Some(-v),
            unit: self.truncate(&self.inv_unit(&a.unit), a.prec),
            prec: a.prec,
        })
    }

    pub fn add_el(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        let (a, b) = match (a.val, b.val) {
            (None, _) => return *b,
            (_, None) => return *a,
            (Some(va), Some(vb)) if va <= vb => (a, b),
            _ => (b, a),
        };
        let (va, vb) = (a.val.unwrap(), b.val.unwrap());
        let gap = (vb - va) as usize;
        let prec = a.prec.min(b.prec + gap);
        let shifted = self.mul(&b.unit, &self.pi_pow(gap.min(prec)));
        let s = self.truncate(&self.add(&a.unit, &shifted), prec);
        match self.val(&s) {
            Some(t) if t < prec => {
                let unit = self.truncate(&self.div_pi(&s, t), prec - t);
                PadicElement {
                    val: Some(va + t as i64),
                    unit,
                    prec: prec - t,
                }
            }
            _ => self.zero_element(),
        }
    }

    pub fn sub_el(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        self.add_el(a, &self.neg_el(b))
    }

    /// Equality of the known digits.
    pub fn eq_el(&self, a: &PadicElement, b: &PadicElement) -> bool {
        if a.val != b.val {
            return false;
        }
        let p = a.prec.min(b.prec);
        self.truncate(&a.unit, p) == self.truncate(&b.unit, p)
    }

    /// Digit-by-digit square root of a unit congruent to a square modulo ϖ^(2e+1),
    /// lifted until the residual vanishes modulo ϖ^target.
    pub fn hensel_sqrt(&self, u: &Elt, start: &Elt, target: usize) -> Option<Elt> {
        let mut w = *start;
        let m0 = 2 * self.e + 1;
        loop {
            let d = self.truncate(&self.sub(&self.square(&w), u), target);
            let m = match self.val(&d) {
                None => return Some(w),
                Some(m) => m,
            };
            if m < m0 {
                return None;
            }
            let step = self.pi_pow(m - self.e);
            let next = (0..self.q()).find_map(|t| {
                let cand = self.add(&w, &self.mul(&step, &self.lift_residue(t)));
                let d2 = self.truncate(&self.sub(&self.square(&cand), u), target);
                match self.val(&d2) {
                    None => Some(cand),
                    Some(m2) if m2 > m => Some(cand),
                    _ => None,
                }
            })?;
            w = next;
        }
    }
}

pub fn poly_string(c: &[i64]) -> String {
    let mut terms = vec![format!("x^{}", c.len())];
    for (i, v) in c.iter().enumerate().rev() {
        if *v != 0 {
            terms.push(match i {
                0 => format!("{v}"),
                1 => format!("{v}x"),
                _ => format!("{v}x^{i}"),
            });
        }
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_eisenstein() {
        assert!(matches!(
            FieldSpec::new(2, 1, Some(&[-4, 0])),
            Err(Error::NotEisenstein(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 1, Some(&[-2, 1])),
            Err(Error::NotEisenstein(_))
        ));
        assert!(matches!(
            FieldSpec::new(3, 3, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn two_has_valuation_e() {
        for (e, f) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3), (6, 1), (1, 6)] {
            let k = FieldSpec::new(e, f, None).unwrap();
            assert_eq!(k.val(&k.from_int_elt(2)), Some(e));
            assert_eq!(k.val(&k.pi()), Some(1));
            assert_eq!(k.q(), 1 << f);
        }
    }

    #[test]
    fn gaussian_uniformizer_squares_to_unit_times_two() {
        // (1 + i)^2 = 2i, so y^2 / 2 is a unit whose square is -1.
        let k = FieldSpec::new(2, 1, Some(&[2, -2])).unwrap();
        let mut i = k.square(&k.pi());
        for c in i.0.iter_mut() {
            *c >>= 1;
        }
        let i2 = k.square(&i);
        assert_eq!(i2, k.from_int_elt(-1));
    }

    #[test]
    fn division_by_uniformizer_inverts_multiplication() {
        for (e, f) in [(1, 1), (2, 1), (3, 1), (2, 2), (1, 3)] {
            let k = FieldSpec::new(e, f, None).unwrap();
            let u = k.add(&k.from_int_elt(3), &k.pi());
            for v in 0..10 {
                let x = k.mul(&u, &k.pi_pow(v));
                assert_eq!(k.val(&x), Some(v));
                let back = k.div_pi(&x, v);
                assert_eq!(k.truncate(&back, 30), k.truncate(&u, 30));
            }
        }
    }

    #[test]
    fn unit_inverse() {
        let k = FieldSpec::new(2, 2, None).unwrap();
        let mut x = k.one();
        x.0[1] = 5;
        x.0[2] = 6;
        let xi = k.inv_unit(&x);
        assert_eq!(k.mul(&x, &xi), k.one());
    }

    #[test]
    fn digits_round_trip() {
        let k = FieldSpec::new(2, 2, None).unwrap();
        let digits = vec![vec![1, 1], vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]];
        let a = k.from_digits(3, &digits).unwrap();
        let back = k.unit_digits(&a);
        assert_eq!(&back[..digits.len()], &digits[..]);
        assert!(back[digits.len()..].iter().all(|d| d.iter().all(|b| *b == 0)));
    }

    #[test]
    fn field_element_arithmetic() {
        let k = FieldSpec::new(1, 1, None).unwrap();
        let a = k.from_int(12);
        assert_eq!(a.val, Some(2));
        let b = k.from_int(-4);
        let s = k.add_el(&a, &b);
        assert!(k.eq_el(&s, &k.from_int(8)));
        let p = k.mul_el(&a, &b);
        assert!(k.eq_el(&p, &k.from_int(-48)));
        let inv = k.inv_el(&k.from_int(3)).unwrap();
        assert!(k.eq_el(&k.mul_el(&inv, &k.from_int(3)), &k.from_int(1)));
        assert!(k.add_el(&a, &k.neg_el(&a)).val.is_none());
    }

    #[test]
    fn hensel_square_root_of_seventeen() {
        let k = FieldSpec::new(1, 1, None).unwrap();
        let u = k.from_int_elt(17);
        let w = k.hensel_sqrt(&u, &k.one(), 40).unwrap();
        assert_eq!(k.truncate(&k.square(&w), 40), k.truncate(&u, 40));
        assert!(k.hensel_sqrt(&k.from_int_elt(5), &k.one(), 40).is_none());
    }
}
