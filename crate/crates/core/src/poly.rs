//! Polynomials over GF(2) in `n` variables `ρ1, …, ρn`.

use std::collections::BTreeSet;
use std::fmt;

use crate::gf2::Gf2Vector;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeSet<Monomial>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    pub fn monomial(m: Monomial) -> Self {
        Self {
            n: m.len(),
            terms: BTreeSet::from([m]),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        Self::monomial(m)
    }

    /// The linear form `Σ a_i ρ_i`.
    pub fn linear(a: &Gf2Vector) -> Self {
        let mut p = Self::zero(a.len());
        for i in a.ones() {
            p.toggle(&{
                let mut m = vec![0; a.len()];
                m[i] = 1;
                m
            });
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn contains(&self, m: &[u16]) -> bool {
        self.terms.contains(m)
    }

    fn toggle(&mut self, m: &Monomial) {
        if !self.terms.remove(m) {
            self.terms.insert(m.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for a in &self.terms {
            for b in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.toggle(&m);
            }
        }
        out
    }

    pub fn pow(&self, k: u16) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Replaces `ρ_var` by `replacement` everywhere.
    pub fn substitute(&self, var: usize, replacement: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for m in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::take(&mut rest[var]);
            let term = Self::monomial(rest).mul(&replacement.pow(e));
            out = out.add(&term);
        }
        out
    }

    /// Coefficients against `basis` (which must contain every term).
    pub fn coefficients(&self, basis: &[Monomial]) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(basis.len());
        for m in &self.terms {
            let i = basis
                .iter()
                .position(|b| b == m)
                .expect("term outside the monomial basis");
            v.set(i, true);
        }
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest lex terms first
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|m| {
                let factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("r{}", i + 1)
                        } else {
                            format!("r{}^{e}", i + 1)
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Monomials of degree `k` in `n` variables, graded lexicographic
/// (`ρ1^k` first).
pub fn monomial_basis(n: usize, k: usize) -> Vec<Monomial> {
    fn go(n: usize, k: usize, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e as u16);
            go(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of monomials of degree `k` in `n` variables.
pub fn monomial_count(n: usize, k: usize) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    let (top, r) = (k + n - 1, n - 1);
    let r = r.min(top - r);
    (0..r).fold(1u64, |acc, i| acc * (top - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius() {
        // (ρ1 + ρ2)^2 = ρ1^2 + ρ2^2 over GF(2)
        let s = Poly::linear(&Gf2Vector::parse("11").unwrap());
        let sq = s.mul(&s);
        assert_eq!(sq, Poly::var(2, 0).pow(2).add(&Poly::var(2, 1).pow(2)));
    }

    #[test]
    fn substitution() {
        // ρ1ρ2 with ρ1 := ρ2 + ρ3 gives ρ2^2 + ρ2ρ3
        let m = Poly::var(3, 0).mul(&Poly::var(3, 1));
        let r = Poly::var(3, 1).add(&Poly::var(3, 2));
        let out = m.substitute(0, &r);
        assert_eq!(out, Poly::var(3, 1).pow(2).add(&Poly::var(3, 1).mul(&Poly::var(3, 2))));
        assert_eq!(out.to_string(), "r2^2 + r2*r3");
    }

    #[test]
    fn bases() {
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        for n in 0..5 {
            for k in 0..6 {
                assert_eq!(monomial_basis(n, k).len() as u64, monomial_count(n, k), "n={n} k={k}");
            }
        }
    }
}
