use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{Coeff, Rational};
use crate::symcore::SymPoint;
use crate::{Error, Result, C64};

/// Sparse polynomial in `z_1, …, z_n` where `z_j` carries weight `j`.
///
/// Monomials are keyed by exponent vector and iterate in lexicographic order,
/// so evaluation and serialization are deterministic. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHomPoly<C: Coeff = Rational> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type ComplexPoly = QuasiHomPoly<C64>;

/// `Σ_j j·α_j` for an exponent vector `α`.
pub fn monomial_weight(exps: &[u32]) -> u32 {
    exps.iter()
        .enumerate()
        .map(|(j, &a)| (j as u32 + 1) * a)
        .sum()
}

impl<C: Coeff> QuasiHomPoly<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    /// The coordinate `z_j`, 1-based.
    pub fn var(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j), "variable index {j} out of 1..={n}");
        let mut exps = vec![0; n];
        exps[j - 1] = 1;
        Self::monomial(n, exps, C::one())
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length");
        let mut p = Self::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Common weight of all monomials, `None` if they disagree or the
    /// polynomial is zero.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| monomial_weight(e));
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn has_weight(&self, w: u32) -> bool {
        self.terms.keys().all(|e| monomial_weight(e) == w)
    }

    /// Part of ordinary total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Vanishing order at the origin (smallest ordinary degree present).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).min()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.n);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.n, C::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QuasiHomPoly<D> {
        let mut p = QuasiHomPoly::zero(self.n);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn to_complex(&self) -> ComplexPoly {
        self.map_coeffs(|c| c.to_c64())
    }

    /// `Σ coeff·∏ z_j^{α_j}`, summed in exponent order.
    pub fn eval(&self, z: &SymPoint) -> Result<C64> {
        if z.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.n(),
            });
        }
        Ok(self.eval_slice(z.coords()))
    }

    pub(crate) fn eval_slice(&self, z: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_c64();
            for (zj, &a) in z.iter().zip(e) {
                if a > 0 {
                    m *= zj.powu(a);
                }
            }
            acc += m;
        }
        acc
    }
}

impl<C: Coeff> Add for &QuasiHomPoly<C> {
    type Output = QuasiHomPoly<C>;
    fn add(self, rhs: Self) -> QuasiHomPoly<C> {
        assert_eq!(self.n, rhs.n, "polynomials in different variable counts");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<C: Coeff> Sub for &QuasiHomPoly<C> {
    type Output = QuasiHomPoly<C>;
    fn sub(self, rhs: Self) -> QuasiHomPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &QuasiHomPoly<C> {
    type Output = QuasiHomPoly<C>;
    fn neg(self) -> QuasiHomPoly<C> {
        self.scale(&(-C::one()))
    }
}

impl<C: Coeff> Mul for &QuasiHomPoly<C> {
    type Output = QuasiHomPoly<C>;
    fn mul(self, rhs: Self) -> QuasiHomPoly<C> {
        assert_eq!(self.n, rhs.n, "polynomials in different variable counts");
        let mut p = QuasiHomPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca.clone() * cb.clone());
            }
        }
        p
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: usize,
    weight: Option<u32>,
    monomials: Vec<MonomialRepr>,
}

impl<C: Coeff> Serialize for QuasiHomPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            n: self.n,
            weight: self.weight(),
            monomials: self
                .terms
                .iter()
                .map(|(e, c)| MonomialRepr {
                    coeff: c.to_decimal_string(),
                    exponents: e.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for QuasiHomPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let terms = repr
            .monomials
            .into_iter()
            .map(|m| Ok((m.exponents, C::parse_decimal(&m.coeff).map_err(D::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        let p = QuasiHomPoly::from_terms(repr.n, terms).map_err(D::Error::custom)?;
        if let Some(w) = repr.weight {
            if !p.has_weight(w) {
                return Err(D::Error::custom(format!("monomial weight differs from declared weight {w}")));
            }
        }
        Ok(p)
    }
}
