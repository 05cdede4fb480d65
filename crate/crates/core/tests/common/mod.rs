//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the algorithms it is compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ep_core::charlat::VirtualCharacter;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Laurent polynomial on doubled coordinates.
pub type Poly = BTreeMap<Vec<i64>, i64>;

pub fn poly(c: &VirtualCharacter) -> Poly {
    c.terms().map(|(w, m)| (w.coords().to_vec(), m.to_i64().expect("small multiplicity"))).collect()
}

fn clean(mut p: Poly) -> Poly {
    p.retain(|_, c| *c != 0);
    p
}

pub fn mono(w: Vec<i64>, c: i64) -> Poly {
    clean(BTreeMap::from([(w, c)]))
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_insert(0) += c;
    }
    clean(out)
}

pub fn neg(a: &Poly) -> Poly {
    a.iter().map(|(w, c)| (w.clone(), -c)).collect()
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            let w: Vec<i64> = u.iter().zip(v).map(|(p, q)| p + q).collect();
            *out.entry(w).or_insert(0) += x * y;
        }
    }
    clean(out)
}

pub fn sum_weights<'a>(rank: usize, ws: impl Iterator<Item = &'a Vec<i64>>) -> Vec<i64> {
    let mut acc = vec![0; rank];
    for w in ws {
        for (a, x) in acc.iter_mut().zip(w) {
            *a += x;
        }
    }
    acc
}

/// `sum over subsets S of (-1)^|S| e^{sum S}`.
pub fn lambda_minus_one(rank: usize, weights: &[Vec<i64>]) -> Poly {
    let mut out = Poly::new();
    for mask in 0u32..(1 << weights.len()) {
        let picked = weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *out.entry(sum_weights(rank, picked)).or_insert(0) += sign;
    }
    clean(out)
}

/// `Lambda^k` by subset enumeration.
pub fn exterior(rank: usize, weights: &[Vec<i64>], k: u32) -> Poly {
    let mut out = Poly::new();
    for mask in 0u32..(1 << weights.len()) {
        if mask.count_ones() == k {
            let picked = weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w);
            *out.entry(sum_weights(rank, picked)).or_insert(0) += 1;
        }
    }
    clean(out)
}

/// `(ch S+, ch S-)` by sign enumeration; weights doubled, halves exact.
pub fn half_spin(rank: usize, mu: &[Vec<i64>]) -> (Poly, Poly) {
    let mut plus = Poly::new();
    let mut minus = Poly::new();
    for mask in 0u32..(1 << mu.len()) {
        let mut w = vec![0; rank];
        for (i, m) in mu.iter().enumerate() {
            for (a, x) in w.iter_mut().zip(m) {
                *a += if mask >> i & 1 == 1 { -x } else { *x };
            }
        }
        assert!(w.iter().all(|x| x % 2 == 0));
        let w: Vec<i64> = w.iter().map(|x| x / 2).collect();
        let target = if mask.count_ones() % 2 == 0 { &mut plus } else { &mut minus };
        *target.entry(w).or_insert(0) += 1;
    }
    (clean(plus), clean(minus))
}

/// Clifford algebra by rewriting generator words into ascending order:
/// `g g = 0`, `u v = -v u - 2 q(u, v)` with `q(e_i, f_i) = -1`.
pub struct WordClifford {
    pub m: usize,
}

pub type Element = BTreeMap<Vec<usize>, BigRational>;

impl WordClifford {
    fn q(&self, a: usize, b: usize) -> i64 {
        if a != b && (a + self.m == b || b + self.m == a) {
            -1
        } else {
            0
        }
    }

    /// Ascending-word expansion of an arbitrary word.
    pub fn normalize(&self, word: Vec<usize>) -> Vec<(Vec<usize>, i64)> {
        let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        let mut stack = vec![(word, 1i64)];
        while let Some((w, c)) = stack.pop() {
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] >= w[i + 1]) {
                None => *out.entry(w).or_insert(0) += c,
                Some(i) if w[i] == w[i + 1] => {}
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    stack.push((swapped, -c));
                    let q = self.q(w[i], w[i + 1]);
                    if q != 0 {
                        let mut shorter = w.clone();
                        shorter.drain(i..i + 2);
                        stack.push((shorter, -2 * q * c));
                    }
                }
            }
        }
        out.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::new();
        for (u, x) in a {
            for (v, y) in b {
                let mut w = u.clone();
                w.extend(v);
                for (n, c) in self.normalize(w) {
                    *out.entry(n).or_insert_with(|| BigRational::from_integer(0.into())) +=
                        x * y * BigRational::from_integer(c.into());
                }
            }
        }
        out.retain(|_, c| *c != BigRational::from_integer(0.into()));
        out
    }
}

pub fn blade_word(blade: u64) -> Vec<usize> {
    (0..64).filter(|k| blade >> k & 1 == 1).collect()
}

/// Dense integer matrices for hand-built operators.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_zero(n: usize) -> IMat {
    vec![vec![0; n]; n]
}

pub fn imat_id(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn imat_add(a: &IMat, b: &IMat, k: i64) -> IMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + k * y).collect()).collect()
}

pub fn imat_kron(a: &IMat, b: &IMat) -> IMat {
    let (n, m) = (a.len(), b.len());
    let mut out = imat_zero(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}
