//! Simply-laced root systems in Bourbaki numbering, the coroot lattice Y and the
//! sublattice Ỹ of coweights pairing evenly with every root.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum CartanType {
    A,
    D,
    E,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CartanType::A),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            _ => Err(Error::Unknown {
                kind: "Cartan type",
                name: s.into(),
            }),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Vectors are integer coordinates: roots in the simple-root basis, coweights in the
/// simple-coroot basis. The pairing between them is ⟨α, y⟩ = αᵀ C y.
#[derive(Clone, Debug)]
pub struct RootDatum {
    ty: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    n_positive: usize,
    index: HashMap<Vec<i64>, usize>,
}

/// One row of the Ỹ/2Y table.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LatticeRow {
    #[serde(rename = "type")]
    pub name: String,
    pub quotient: String,
    pub quotient_order: usize,
    pub index: u64,
    /// Nonzero parity classes, `o` odd and `*` even, in Bourbaki node order.
    pub diagrams: Vec<String>,
}

fn edges(ty: CartanType, r: usize) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::InvalidInput(format!("no root system {ty}{r}"));
    Ok(match ty {
        CartanType::A if r >= 1 => (0..r - 1).map(|i| (i, i + 1)).collect(),
        CartanType::D if r >= 3 => {
            let mut e: Vec<_> = (0..r - 2).map(|i| (i, i + 1)).collect();
            e.push((r - 3, r - 1));
            e
        }
        CartanType::E if (6..=8).contains(&r) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..r - 1).map(|i| (i, i + 1)));
            e
        }
        _ => return Err(bad()),
    })
}

impl RootDatum {
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        if ty == CartanType::A && rank < 2 {
            return Err(Error::InvalidInput("type A needs rank >= 2".into()));
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges(ty, rank)? {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        let mut sys = RootDatum {
            ty,
            rank,
            cartan,
            roots: vec![],
            n_positive: 0,
            index: HashMap::new(),
        };
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = (0..rank).map(|i| sys.unit(i)).collect();
        for v in &queue {
            seen.insert(v.clone(), ());
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..rank {
                let w = sys.reflect(i, &v);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen
            .into_keys()
            .filter(|v| v.iter().all(|c| *c >= 0))
            .collect();
        pos.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));
        let neg: Vec<Vec<i64>> = pos.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
        sys.n_positive = pos.len();
        sys.roots = pos.into_iter().chain(neg).collect();
        sys.index = sys
            .roots
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        Ok(sys)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// ⟨α, y⟩ for α in root coordinates and y in coroot coordinates.
    pub fn pair(&self, alpha: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if alpha[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += alpha[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    /// ⟨α_i, y⟩.
    pub fn pair_simple(&self, i: usize, y: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * y[j]).sum()
    }

    /// w_{α_i}(y) = y - ⟨α_i, y⟩ α̌_i. The same formula reflects roots.
    pub fn reflect(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let mut w = y.to_vec();
        w[i] -= self.pair_simple(i, y);
        w
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_positive]
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn is_positive(&self, v: &[i64]) -> bool {
        v.iter().any(|c| *c > 0) && v.iter().all(|c| *c >= 0)
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.roots[self.n_positive - 1]
    }

    /// α₀ = -θ.
    pub fn lowest_root(&self) -> &[i64] {
        &self.roots[self.roots.len() - 1]
    }

    /// Coefficients m_j of the highest root.
    pub fn marks(&self) -> Vec<i64> {
        self.highest_root().to_vec()
    }

    /// Fundamental coweight ω̌_i in coroot coordinates, C⁻¹ e_i.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Rational64> {
        let n = self.rank;
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rational64> =
                    self.cartan[r].iter().map(|c| Rational64::from(*c)).collect();
                row.push(Rational64::from(if r == i { 1 } else { 0 }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|r| m[*r][col] != Rational64::from(0)).unwrap();
            m.swap(col, p);
            let pv = m[col][col];
            for x in m[col].iter_mut() {
                *x /= pv;
            }
            for r in 0..n {
                if r != col {
                    let fac = m[r][col];
                    if fac != Rational64::from(0) {
                        for c in 0..=n {
                            let t = m[col][c] * fac;
                            m[r][c] -= t;
                        }
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    /// y ∈ Ỹ iff every simple root pairs evenly with y.
    pub fn in_y_tilde(&self, y: &[i64]) -> bool {
        (0..self.rank).all(|i| self.pair_simple(i, y) % 2 == 0)
    }

    /// All parity vectors v ∈ {0,1}^r lying in Ỹ, zero first.
    pub fn ytilde_mod_2y(&self) -> Vec<Vec<u8>> {
        let r = self.rank;
        (0u64..(1 << r))
            .map(|m| (0..r).map(|i| ((m >> i) & 1) as u8).collect::<Vec<u8>>())
            .filter(|v| {
                let y: Vec<i64> = v.iter().map(|c| *c as i64).collect();
                self.in_y_tilde(&y)
            })
            .collect()
    }

    /// [Y : Ỹ] = 2^r / |Ỹ/2Y|.
    pub fn ytilde_index(&self) -> u64 {
        (1u64 << self.rank) / self.ytilde_mod_2y().len() as u64
    }

    pub fn lattice_row(&self) -> LatticeRow {
        let classes = self.ytilde_mod_2y();
        let quotient = match classes.len() {
            1 => "1".to_string(),
            n => vec!["Z/2"; n.trailing_zeros() as usize].join(" x "),
        };
        let mut diagrams: Vec<String> = classes
            .iter()
            .skip(1)
            .map(|v| v.iter().map(|c| if *c == 1 { 'o' } else { '*' }).collect())
            .collect();
        diagrams.sort();
        diagrams.reverse();
        LatticeRow {
            name: self.name(),
            quotient,
            quotient_order: classes.len(),
            index: self.ytilde_index(),
            diagrams,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for r in 2..=9 {
            assert_eq!(RootDatum::new(CartanType::A, r).unwrap().n_roots(), r * (r + 1));
        }
        for r in 3..=8 {
            assert_eq!(RootDatum::new(CartanType::D, r).unwrap().n_roots(), 2 * r * (r - 1));
        }
        for (r, n) in [(6, 72), (7, 126), (8, 240)] {
            assert_eq!(RootDatum::new(CartanType::E, r).unwrap().n_roots(), n);
        }
        assert!(RootDatum::new(CartanType::E, 5).is_err());
        assert!(RootDatum::new(CartanType::D, 2).is_err());
    }

    #[test]
    fn highest_roots() {
        let e8 = RootDatum::new(CartanType::E, 8).unwrap();
        assert_eq!(e8.highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let d4 = RootDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(d4.highest_root(), &[1, 2, 1, 1]);
        assert_eq!(d4.lowest_root(), &[-1, -2, -1, -1]);
    }

    #[test]
    fn membership_examples() {
        let a3 = RootDatum::new(CartanType::A, 3).unwrap();
        assert!(a3.in_y_tilde(&[1, 0, 1]));
        assert!(!a3.in_y_tilde(&[1, 0, 0]));
        assert!(a3.in_y_tilde(&[0, 0, 0]));
    }

    #[test]
    fn reflection_examples() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        assert_eq!(a2.reflect(0, &[1, 0]), vec![-1, 0]);
        assert_eq!(a2.reflect(0, &[0, 1]), vec![1, 1]);
    }

    #[test]
    fn coweights() {
        let a3 = RootDatum::new(CartanType::A, 3).unwrap();
        let w = a3.fundamental_coweight(1);
        assert_eq!(w, vec![Rational64::new(1, 2), Rational64::from(1), Rational64::new(1, 2)]);
    }

    #[test]
    fn e7_row() {
        let row = RootDatum::new(CartanType::E, 7).unwrap().lattice_row();
        assert_eq!(row.diagrams, vec!["*o**o*o".to_string()]);
        assert_eq!(row.index, 64);
    }
}
