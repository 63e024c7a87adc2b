use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::Coeff;
use super::poly::QuasiHomPoly;
use crate::numfmt::{fmt_complex, parse_complex};
use crate::{Error, Result, C64};

/// Finite exponential sum `F(θ) = Σ_k c_k e^{i⟨k,θ⟩}` on the `m`-torus.
///
/// Terms are kept in lexicographic frequency order and never share a
/// frequency vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum {
    m: usize,
    terms: BTreeMap<Vec<i32>, C64>,
    crude: f64,
}

impl ExpSum {
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<i32>, C64)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<i32>, C64> = BTreeMap::new();
        for (k, c) in terms {
            if k.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: k.len(),
                });
            }
            *map.entry(k).or_insert(C64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != C64::new(0.0, 0.0));
        let crude = map.values().map(|c| c.norm()).sum();
        Ok(Self {
            m,
            terms: map,
            crude,
        })
    }

    pub fn constant(m: usize, c: C64) -> Self {
        Self::from_terms(m, [(vec![0; m], c)]).expect("matching dimension")
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], C64)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), *c))
    }

    /// `Σ|c_k|`, an upper bound for `|F|` everywhere.
    pub fn crude_bound(&self) -> f64 {
        self.crude
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_terms(self.m, self.terms().map(|(k, c)| (k.to_vec(), c * s))).unwrap()
    }

    /// Reference evaluation, one `cis` per term.
    pub fn eval(&self, theta: &[f64]) -> C64 {
        assert_eq!(theta.len(), self.m, "angle vector length");
        self.terms
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(theta).map(|(&kj, &t)| kj as f64 * t).sum();
                c * C64::cis(phase)
            })
            .sum()
    }

    /// `L = Σ_k |c_k|·‖k‖₁`, a Lipschitz constant for `θ ↦ F(θ)` in the
    /// max-metric `d(θ,θ̃) = max_j |θ_j − θ̃_j|`.
    pub fn lipschitz_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.norm() * k.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>())
            .sum()
    }

    pub fn compile(&self) -> CompiledExpSum {
        CompiledExpSum::new(self)
    }
}

/// The smaller of the generic bound and an externally declared constant.
///
/// The caller is responsible for the validity of `declared`; the generic bound
/// is always valid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LipschitzChoice {
    #[serde(with = "crate::numfmt::dec17")]
    pub generic: f64,
    #[serde(with = "crate::numfmt::dec17_opt")]
    pub declared: Option<f64>,
    #[serde(with = "crate::numfmt::dec17")]
    pub effective: f64,
}

pub fn lipschitz_with_override(f: &ExpSum, declared: Option<f64>) -> LipschitzChoice {
    let generic = f.lipschitz_bound();
    let effective = declared.map_or(generic, |d| d.min(generic));
    LipschitzChoice {
        generic,
        declared,
        effective,
    }
}

type Laurent<C> = BTreeMap<Vec<i32>, C>;

fn laurent_mul<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>) -> Laurent<C> {
    let mut out: Laurent<C> = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let e = out.entry(k).or_insert_with(C::zero);
            *e = e.clone() + ca.clone() * cb.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `σ_{n,j}(e^{iθ_1}, …)` as a Laurent polynomial; with `reduce` the last
/// root is pinned to 1 and contributes no frequency.
fn sigma_laurent<C: Coeff>(n: usize, j: usize, m: usize) -> Laurent<C> {
    let mut out: Laurent<C> = BTreeMap::new();
    let mut subset: Vec<usize> = (0..j).collect();
    loop {
        let mut k = vec![0i32; m];
        for &s in &subset {
            if s < m {
                k[s] += 1;
            }
        }
        let e = out.entry(k).or_insert_with(C::zero);
        *e = e.clone() + C::one();
        // next j-subset of 0..n in lexicographic order
        let mut i = j;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < n - j + i {
                subset[i] += 1;
                for t in i + 1..j {
                    subset[t] = subset[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Pulls a quasi-homogeneous polynomial back to the torus through the
/// symmetrization map.
///
/// With `reduce`, substitutes `z_j = σ_{n,j}(e^{iθ_1}, …, e^{iθ_{n−1}}, 1)`;
/// this loses nothing for `|P∘σ|` because `P(σ(e^{iψ}t)) = e^{iwψ}P(σ(t))`
/// for a polynomial of weight `w`. Otherwise all `n` roots get an angle.
/// The expansion runs in the coefficient ring `C` and is converted to binary64
/// only at the end.
pub fn pullback_torus<C: Coeff>(p: &QuasiHomPoly<C>, reduce: bool) -> Result<ExpSum> {
    p.weight().ok_or(Error::WeightUnset)?;
    let n = p.n();
    let m = if reduce { n - 1 } else { n };
    let sigmas: Vec<Laurent<C>> = (1..=n).map(|j| sigma_laurent::<C>(n, j, m)).collect();
    let mut powers: BTreeMap<(usize, u32), Laurent<C>> = BTreeMap::new();
    let mut acc: Laurent<C> = BTreeMap::new();
    for (exps, coeff) in p.terms() {
        let mut term: Laurent<C> = BTreeMap::from([(vec![0; m], coeff.clone())]);
        for (j, &a) in exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let pw = powers
                .entry((j, a))
                .or_insert_with(|| {
                    let mut x: Laurent<C> = BTreeMap::from([(vec![0; m], C::one())]);
                    for _ in 0..a {
                        x = laurent_mul(&x, &sigmas[j]);
                    }
                    x
                })
                .clone();
            term = laurent_mul(&term, &pw);
        }
        for (k, c) in term {
            let e = acc.entry(k).or_insert_with(C::zero);
            *e = e.clone() + c;
        }
    }
    ExpSum::from_terms(
        m,
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.to_c64())),
    )
}

/// Flattened exponential sum with per-axis power tables, for hot loops.
///
/// Each evaluation fills a scratch table with `e^{ikθ_j}` for every frequency
/// in range on every axis, then multiplies table entries per term.
#[derive(Clone, Debug)]
pub struct CompiledExpSum {
    m: usize,
    coeffs: Vec<C64>,
    abs_coeffs: Vec<f64>,
    freqs: Vec<i32>,
    /// table index of frequency k on axis j is `offsets[j] + (k - kmin[j])`
    slots: Vec<usize>,
    kmin: Vec<i32>,
    offsets: Vec<usize>,
    table_len: usize,
    crude: f64,
    lipschitz: f64,
}

impl CompiledExpSum {
    fn new(f: &ExpSum) -> Self {
        let m = f.m;
        let mut kmin = vec![0i32; m];
        let mut kmax = vec![0i32; m];
        for (k, _) in f.terms() {
            for j in 0..m {
                kmin[j] = kmin[j].min(k[j]);
                kmax[j] = kmax[j].max(k[j]);
            }
        }
        let mut offsets = Vec::with_capacity(m);
        let mut table_len = 0;
        for j in 0..m {
            offsets.push(table_len);
            table_len += (kmax[j] - kmin[j] + 1) as usize;
        }
        let mut coeffs = Vec::new();
        let mut freqs = Vec::new();
        let mut slots = Vec::new();
        for (k, c) in f.terms() {
            coeffs.push(c);
            freqs.extend_from_slice(k);
            for j in 0..m {
                slots.push(offsets[j] + (k[j] - kmin[j]) as usize);
            }
        }
        Self {
            m,
            abs_coeffs: coeffs.iter().map(|c| c.norm()).collect(),
            coeffs,
            freqs,
            slots,
            kmin,
            offsets,
            table_len,
            crude: f.crude_bound(),
            lipschitz: f.lipschitz_bound(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn crude_bound(&self) -> f64 {
        self.crude
    }

    pub fn lipschitz_bound(&self) -> f64 {
        self.lipschitz
    }

    pub fn scratch(&self) -> Vec<C64> {
        vec![C64::new(0.0, 0.0); self.table_len]
    }

    fn fill(&self, theta: &[f64], table: &mut [C64]) {
        for j in 0..self.m {
            let u = C64::cis(theta[j]);
            let end = if j + 1 < self.m {
                self.offsets[j + 1]
            } else {
                self.table_len
            };
            let mut w = C64::cis(self.kmin[j] as f64 * theta[j]);
            for slot in &mut table[self.offsets[j]..end] {
                *slot = w;
                w *= u;
            }
        }
    }

    #[inline]
    fn phase(&self, t: usize, table: &[C64]) -> C64 {
        let mut e = C64::new(1.0, 0.0);
        for &s in &self.slots[t * self.m..(t + 1) * self.m] {
            e *= table[s];
        }
        e
    }

    pub fn value(&self, theta: &[f64], scratch: &mut [C64]) -> C64 {
        self.fill(theta, scratch);
        let mut acc = C64::new(0.0, 0.0);
        for t in 0..self.coeffs.len() {
            acc += self.coeffs[t] * self.phase(t, scratch);
        }
        acc
    }

    /// Value and `∂F/∂θ_j` for every axis.
    pub fn value_grad(&self, theta: &[f64], scratch: &mut [C64], grad: &mut [C64]) -> C64 {
        self.fill(theta, scratch);
        grad.iter_mut().for_each(|g| *g = C64::new(0.0, 0.0));
        let mut acc = C64::new(0.0, 0.0);
        for t in 0..self.coeffs.len() {
            let term = self.coeffs[t] * self.phase(t, scratch);
            acc += term;
            let iterm = C64::new(-term.im, term.re);
            for j in 0..self.m {
                let k = self.freqs[t * self.m + j];
                if k != 0 {
                    grad[j] += iterm * k as f64;
                }
            }
        }
        acc
    }

    /// Value, gradient and the row-major Hessian `∂²F/∂θ_j∂θ_l`.
    pub fn value_grad_hess(
        &self,
        theta: &[f64],
        scratch: &mut [C64],
        grad: &mut [C64],
        hess: &mut [C64],
    ) -> C64 {
        let m = self.m;
        self.fill(theta, scratch);
        grad.iter_mut().for_each(|g| *g = C64::new(0.0, 0.0));
        hess.iter_mut().for_each(|g| *g = C64::new(0.0, 0.0));
        let mut acc = C64::new(0.0, 0.0);
        for t in 0..self.coeffs.len() {
            let term = self.coeffs[t] * self.phase(t, scratch);
            acc += term;
            let k = &self.freqs[t * m..(t + 1) * m];
            let iterm = C64::new(-term.im, term.re);
            for j in 0..m {
                grad[j] += iterm * k[j] as f64;
                for l in 0..m {
                    hess[j * m + l] -= term * (k[j] * k[l]) as f64;
                }
            }
        }
        acc
    }

    /// `Σ_k |c_k|·Σ_j |k_j| h_j`: bound on `|F(θc+δ) − F(θc)|` for `|δ_j| ≤ h_j`.
    pub fn first_order_radius(&self, half: &[f64]) -> f64 {
        let mut s = 0.0;
        for t in 0..self.coeffs.len() {
            let r: f64 = (0..self.m)
                .map(|j| self.freqs[t * self.m + j].unsigned_abs() as f64 * half[j])
                .sum();
            s += self.abs_coeffs[t] * r;
        }
        s
    }

    /// `½ Σ_k |c_k| (Σ_j |k_j| h_j)²`: bound on the second-order Taylor
    /// remainder over the box of half-widths `h`.
    pub fn second_order_remainder(&self, half: &[f64]) -> f64 {
        let mut s = 0.0;
        for t in 0..self.coeffs.len() {
            let r: f64 = (0..self.m)
                .map(|j| self.freqs[t * self.m + j].unsigned_abs() as f64 * half[j])
                .sum();
            s += self.abs_coeffs[t] * r * r;
        }
        0.5 * s
    }

    /// Coefficients of `F` as a polynomial in `u = e^{iθ_m}` once the other
    /// angles are fixed, lowest frequency first. `|F| = |Σ a_k u^k|` because
    /// the dropped factor `u^{kmin}` has modulus one.
    pub fn collapse_last(&self, prefix: &[f64], scratch: &mut [C64], out: &mut Vec<C64>) {
        let m = self.m;
        assert_eq!(prefix.len() + 1, m);
        let mut theta = prefix.to_vec();
        theta.push(0.0);
        self.fill(&theta, scratch);
        let width = self.table_len - self.offsets[m - 1];
        out.clear();
        out.resize(width, C64::new(0.0, 0.0));
        for t in 0..self.coeffs.len() {
            let mut e = self.coeffs[t];
            for j in 0..m - 1 {
                e *= scratch[self.slots[t * m + j]];
            }
            out[self.slots[t * m + m - 1] - self.offsets[m - 1]] += e;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    freq: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct ExpSumRepr {
    m: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for ExpSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpSumRepr {
            m: self.m,
            terms: self
                .terms()
                .map(|(k, c)| TermRepr {
                    coeff: fmt_complex(c),
                    freq: k.to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ExpSumRepr::deserialize(d)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| Ok((t.freq, parse_complex(&t.coeff).map_err(D::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        ExpSum::from_terms(repr.m, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::coeff::Rational;
    use super::*;

    #[test]
    fn z1_on_reduced_two_torus_is_one_plus_cis() {
        let p = QuasiHomPoly::<Rational>::var(2, 1);
        let f = pullback_torus(&p, true).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.len(), 2);
        let terms: Vec<_> = f.terms().map(|(k, c)| (k.to_vec(), c)).collect();
        assert_eq!(terms[0], (vec![0], C64::new(1.0, 0.0)));
        assert_eq!(terms[1], (vec![1], C64::new(1.0, 0.0)));
    }

    #[test]
    fn unreduced_pullback_uses_all_angles() {
        let p = QuasiHomPoly::<Rational>::var(3, 2);
        let f = pullback_torus(&p, false).unwrap();
        assert_eq!(f.dim(), 3);
        assert_eq!(f.len(), 3);
        assert!(f.terms().all(|(k, _)| k.iter().sum::<i32>() == 2));
    }

    #[test]
    fn pullback_requires_weight() {
        let p = &QuasiHomPoly::<Rational>::var(3, 1) + &QuasiHomPoly::var(3, 2);
        assert_eq!(pullback_torus(&p, true), Err(Error::WeightUnset));
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(ExpSum::constant(2, C64::new(0.5, 0.0)).lipschitz_bound(), 0.0);
        let f = ExpSum::from_terms(2, [(vec![1, 1], C64::new(1.0, 0.0))]).unwrap();
        assert_eq!(f.lipschitz_bound(), 2.0);
        let c = lipschitz_with_override(&f, Some(1.5));
        assert_eq!(c.effective, 1.5);
        let c = lipschitz_with_override(&f, Some(3.0));
        assert_eq!(c.effective, 2.0);
    }

    #[test]
    fn compiled_matches_reference() {
        let f = ExpSum::from_terms(
            2,
            [
                (vec![-2, 1], C64::new(0.3, -0.1)),
                (vec![0, 0], C64::new(1.0, 0.0)),
                (vec![3, -1], C64::new(-0.7, 0.2)),
            ],
        )
        .unwrap();
        let c = f.compile();
        let mut s = c.scratch();
        let mut g = vec![C64::new(0.0, 0.0); 2];
        for th in [[0.1, 2.0], [3.0, -1.0], [6.0, 0.5]] {
            let v = c.value_grad(&th, &mut s, &mut g);
            assert!((v - f.eval(&th)).norm() < 1e-14);
            // central differences
            for j in 0..2 {
                let mut a = th;
                let mut b = th;
                a[j] += 1e-6;
                b[j] -= 1e-6;
                let fd = (f.eval(&a) - f.eval(&b)) / 2e-6;
                assert!((fd - g[j]).norm() < 1e-8);
            }
            let mut out = Vec::new();
            c.collapse_last(&th[..1], &mut s, &mut out);
            let u = C64::cis(th[1]);
            let h = out.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * u + a);
            assert!((h.norm() - f.eval(&th).norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = ExpSum::from_terms(1, [(vec![2], C64::new(0.25, -1.0))]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"m":1,"terms":[{"coeff":"0.25,-1","freq":[2]}]}"#);
        assert_eq!(serde_json::from_str::<ExpSum>(&s).unwrap(), f);
    }
}
