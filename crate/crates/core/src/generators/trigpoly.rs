//! Closed-form scalar functions `c0 + lin·s + Σ (cₖ cos ωₖs + sₖ sin ωₖs)`.
//!
//! Terms are kept canonical: positive frequencies, sorted, merged when equal
//! within [`FREQ_TOL`], with zero frequencies folded into `c0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FREQ_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub cos: f64,
    pub sin: f64,
    pub freq: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    pub c0: f64,
    pub lin: f64,
    pub terms: Vec<TrigTerm>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: f64) -> Self {
        TrigPoly {
            c0: c,
            ..Default::default()
        }
    }

    pub fn linear(c0: f64, lin: f64) -> Self {
        TrigPoly {
            c0,
            lin,
            terms: Vec::new(),
        }
    }

    /// `cos_amp·cos(freq·s) + sin_amp·sin(freq·s)`.
    pub fn wave(cos_amp: f64, sin_amp: f64, freq: f64) -> Self {
        TrigPoly {
            c0: 0.0,
            lin: 0.0,
            terms: vec![TrigTerm {
                cos: cos_amp,
                sin: sin_amp,
                freq,
            }],
        }
        .canonical()
    }

    pub fn canonical(mut self) -> Self {
        let mut terms: Vec<TrigTerm> = Vec::with_capacity(self.terms.len());
        for mut t in self.terms.drain(..) {
            if t.freq < 0.0 {
                t.freq = -t.freq;
                t.sin = -t.sin;
            }
            if t.freq <= FREQ_TOL {
                self.c0 += t.cos;
                continue;
            }
            terms.push(t);
        }
        terms.sort_by(|u, v| u.freq.total_cmp(&v.freq));
        let mut merged: Vec<TrigTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if (t.freq - last.freq).abs() <= FREQ_TOL => {
                    last.cos += t.cos;
                    last.sin += t.sin;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.cos != 0.0 || t.sin != 0.0);
        self.terms = merged;
        self
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.c0
            + self.lin * s
            + self
                .terms
                .iter()
                .map(|t| {
                    let (sn, cs) = (t.freq * s).sin_cos();
                    t.cos * cs + t.sin * sn
                })
                .sum::<f64>()
    }

    pub fn derivative(&self) -> TrigPoly {
        TrigPoly {
            c0: self.lin,
            lin: 0.0,
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm {
                    cos: t.sin * t.freq,
                    sin: -t.cos * t.freq,
                    freq: t.freq,
                })
                .collect(),
        }
    }

    pub fn nth_derivative(&self, k: usize) -> TrigPoly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term. Fails when a linear term would
    /// integrate to `s²`.
    pub fn antiderivative(&self) -> Result<TrigPoly> {
        if self.lin != 0.0 {
            return Err(Error::Unrepresentable("antiderivative of a linear term"));
        }
        Ok(TrigPoly {
            c0: 0.0,
            lin: self.c0,
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm {
                    cos: -t.sin / t.freq,
                    sin: t.cos / t.freq,
                    freq: t.freq,
                })
                .collect(),
        })
    }

    pub fn scale(&self, k: f64) -> TrigPoly {
        TrigPoly {
            c0: k * self.c0,
            lin: k * self.lin,
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm {
                    cos: k * t.cos,
                    sin: k * t.sin,
                    freq: t.freq,
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        TrigPoly {
            c0: self.c0 + other.c0,
            lin: self.lin + other.lin,
            terms,
        }
        .canonical()
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.scale(-1.0))
    }

    /// Product by the product-to-sum identities. A linear term may only meet a
    /// constant.
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        let has_lin = |p: &TrigPoly| p.lin != 0.0;
        let nonconstant = |p: &TrigPoly| p.lin != 0.0 || !p.terms.is_empty();
        if (has_lin(self) && nonconstant(other)) || (has_lin(other) && nonconstant(self)) {
            return Err(Error::Unrepresentable("product of a linear term with a non-constant"));
        }
        let mut out = TrigPoly {
            c0: self.c0 * other.c0,
            lin: self.lin * other.c0 + other.lin * self.c0,
            terms: Vec::new(),
        };
        for t in &self.terms {
            out.terms.push(TrigTerm {
                cos: t.cos * other.c0,
                sin: t.sin * other.c0,
                freq: t.freq,
            });
        }
        for t in &other.terms {
            out.terms.push(TrigTerm {
                cos: t.cos * self.c0,
                sin: t.sin * self.c0,
                freq: t.freq,
            });
        }
        for u in &self.terms {
            for v in &other.terms {
                let (sum, diff) = (u.freq + v.freq, u.freq - v.freq);
                // cos a cos b = ½[cos(a−b) + cos(a+b)]
                // sin a sin b = ½[cos(a−b) − cos(a+b)]
                // sin a cos b = ½[sin(a+b) + sin(a−b)]
                // cos a sin b = ½[sin(a+b) − sin(a−b)]
                out.terms.push(TrigTerm {
                    cos: 0.5 * (u.cos * v.cos - u.sin * v.sin),
                    sin: 0.5 * (u.sin * v.cos + u.cos * v.sin),
                    freq: sum,
                });
                out.terms.push(TrigTerm {
                    cos: 0.5 * (u.cos * v.cos + u.sin * v.sin),
                    sin: 0.5 * (u.sin * v.cos - u.cos * v.sin),
                    freq: diff,
                });
            }
        }
        Ok(out.canonical())
    }

    /// Coefficients `(cos, sin)` at a frequency, zero when absent.
    pub fn coefficient_at(&self, freq: f64) -> (f64, f64) {
        self.terms
            .iter()
            .find(|t| (t.freq - freq.abs()).abs() <= FREQ_TOL)
            .map(|t| (t.cos, t.sin))
            .unwrap_or((0.0, 0.0))
    }

    /// Largest absolute coefficient, including `c0` and `lin`.
    pub fn max_coeff_abs(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| [t.cos.abs(), t.sin.abs()])
            .fold(self.c0.abs().max(self.lin.abs()), f64::max)
    }

    pub fn lowest_frequency(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.freq).reduce(f64::min)
    }

    pub fn is_constant(&self) -> bool {
        self.lin == 0.0 && self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = TrigPoly> {
        (
            -2.0f64..2.0,
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0.1f64..3.0), 0..4),
        )
            .prop_map(|(c0, ts)| {
                TrigPoly {
                    c0,
                    lin: 0.0,
                    terms: ts.into_iter().map(|(c, s, w)| TrigTerm { cos: c, sin: s, freq: w }).collect(),
                }
                .canonical()
            })
    }

    #[test]
    fn derivative_of_cosine() {
        let p = TrigPoly::wave(1.0, 0.0, 2.5);
        let d = p.derivative();
        assert_eq!(d.terms, vec![TrigTerm { cos: 0.0, sin: -2.5, freq: 2.5 }]);
    }

    #[test]
    fn negative_frequency_is_folded() {
        let p = TrigPoly::wave(1.0, 1.0, -2.0);
        assert_eq!(p.terms, vec![TrigTerm { cos: 1.0, sin: -1.0, freq: 2.0 }]);
        let q = TrigPoly::wave(0.7, 3.0, 0.0);
        assert_eq!(q, TrigPoly::constant(0.7));
    }

    #[test]
    fn square_of_cosine() {
        let p = TrigPoly::wave(1.0, 0.0, 1.5);
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.c0, 0.5);
        assert_eq!(sq.coefficient_at(3.0), (0.5, 0.0));
        let one = p.mul(&p).unwrap().add(&TrigPoly::wave(0.0, 1.0, 1.5).mul(&TrigPoly::wave(0.0, 1.0, 1.5)).unwrap());
        assert!(one.sub(&TrigPoly::constant(1.0)).max_coeff_abs() < 1e-15);
    }

    #[test]
    fn linear_terms_limits() {
        let l = TrigPoly::linear(0.0, 1.0);
        assert!(l.antiderivative().is_err());
        assert!(l.mul(&TrigPoly::wave(1.0, 0.0, 1.0)).is_err());
        assert_eq!(l.mul(&TrigPoly::constant(3.0)).unwrap(), TrigPoly::linear(0.0, 3.0));
        assert_eq!(TrigPoly::constant(2.0).antiderivative().unwrap(), TrigPoly::linear(0.0, 2.0));
    }

    proptest! {
        #[test]
        fn product_matches_pointwise(p in poly(), q in poly(), s in -10.0f64..10.0) {
            let pq = p.mul(&q).unwrap();
            prop_assert!((pq.eval(s) - p.eval(s) * q.eval(s)).abs() < 1e-11);
        }

        #[test]
        fn antiderivative_inverts_derivative(p in poly(), s in -10.0f64..10.0) {
            let back = p.antiderivative().unwrap().derivative();
            prop_assert!(back.sub(&p).max_coeff_abs() < 1e-13);
            let d = p.derivative();
            let h = 1e-5;
            let fd = (p.eval(s + h) - p.eval(s - h)) / (2.0 * h);
            prop_assert!((fd - d.eval(s)).abs() < 1e-6);
        }
    }
}
