//! Sparse multivariate polynomials over the rationals, and the evaluation
//! interface used by the divided symmetrization oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::denom_lcm;
use crate::{format_q, Q};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Polynomial in `nvars` variables with exact rational coefficients.
///
/// Canonical form: no zero coefficients, terms sorted by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl RationalPoly {
    pub fn zero(nvars: usize) -> Self {
        RationalPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = RationalPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        RationalPoly::constant(nvars, Q::one())
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        RationalPoly::monomial(e, Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = RationalPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear_form(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = RationalPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c x^exps`, keeping the canonical form.
    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// The common degree of all terms, or `None` if not homogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return RationalPoly::zero(self.nvars);
        }
        RationalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RationalPoly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(c.clone(), |m, (&k, xv)| {
                m * num_traits::pow(xv.clone(), k as usize)
            });
            acc + m
        })
    }

    /// Sum of all coefficients, i.e. the value with every variable set to 1.
    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = RationalPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format_q(c)
                } else {
                    format!("{}*{}", format_q(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Something that can be evaluated exactly at integer points.
///
/// `f(x) = eval_scaled(x) / scale()`, where `eval_scaled` is integer valued on
/// integer points. This keeps the hot loops of the oracles in integers.
pub trait Evaluate: Sync {
    fn nvars(&self) -> usize;
    /// Degree if the function is a nonzero homogeneous polynomial.
    fn homogeneous_degree(&self) -> Option<usize>;
    fn scale(&self) -> BigInt;
    fn eval_scaled(&self, x: &[BigInt]) -> BigInt;
}

/// Integer-coefficient copy of a rational polynomial, cached for evaluation.
#[derive(Clone, Debug)]
pub struct ScaledPoly {
    nvars: usize,
    degree: Option<usize>,
    scale: BigInt,
    terms: Vec<(Exponents, BigInt)>,
}

impl From<&RationalPoly> for ScaledPoly {
    fn from(p: &RationalPoly) -> Self {
        let scale = denom_lcm(p.terms.values());
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), (c * Q::from_integer(scale.clone())).to_integer()))
            .collect();
        ScaledPoly {
            nvars: p.nvars,
            degree: p.homogeneous_degree(),
            scale,
            terms,
        }
    }
}

impl Evaluate for ScaledPoly {
    fn nvars(&self) -> usize {
        self.nvars
    }
    fn homogeneous_degree(&self) -> Option<usize> {
        self.degree
    }
    fn scale(&self) -> BigInt {
        self.scale.clone()
    }
    fn eval_scaled(&self, x: &[BigInt]) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(c.clone(), |m, (&k, xv)| {
                m * num_traits::pow(xv.clone(), k as usize)
            });
            acc + m
        })
    }
}

/// A product `Π_k (Σ_i a_{k,i} x_i)^{p_k}` of powers of linear forms.
#[derive(Clone, Debug)]
pub struct LinearFormProduct {
    nvars: usize,
    /// Primitive integer forms with their powers.
    factors: Vec<(Vec<BigInt>, u32)>,
    /// Constant `multiplier / scale` collected from clearing denominators.
    multiplier: BigInt,
    scale: BigInt,
    rational: Vec<(Vec<Q>, u32)>,
}

impl LinearFormProduct {
    pub fn new(nvars: usize, factors: Vec<(Vec<Q>, u32)>) -> Self {
        let mut constant = Q::one();
        let mut ints = Vec::with_capacity(factors.len());
        for (form, p) in &factors {
            assert_eq!(form.len(), nvars, "linear form length mismatch");
            let l = denom_lcm(form.iter());
            let scaled: Vec<BigInt> = form
                .iter()
                .map(|c| (c * Q::from_integer(l.clone())).to_integer())
                .collect();
            let g = scaled.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let g = if g.is_zero() { BigInt::one() } else { g.abs() };
            // form = primitive * g / l
            constant *= num_traits::pow(Q::new(g.clone(), l), *p as usize);
            ints.push((scaled.into_iter().map(|c| c / &g).collect(), *p));
        }
        LinearFormProduct {
            nvars,
            factors: ints,
            multiplier: constant.numer().clone(),
            scale: constant.denom().clone(),
            rational: factors,
        }
    }

    /// `Π_i (x_1 + ⋯ + x_i)^{c_i}` in `nvars` variables.
    pub fn partial_sums(nvars: usize, c: &[usize]) -> Self {
        let factors = c
            .iter()
            .enumerate()
            .filter(|(_, &ci)| ci > 0)
            .map(|(i, &ci)| {
                let form = (0..nvars)
                    .map(|j| if j <= i { Q::one() } else { Q::zero() })
                    .collect();
                (form, ci as u32)
            })
            .collect();
        LinearFormProduct::new(nvars, factors)
    }

    /// Expands the product into a polynomial.
    pub fn to_poly(&self) -> RationalPoly {
        self.rational
            .iter()
            .fold(RationalPoly::one(self.nvars), |acc, (form, p)| {
                &acc * &RationalPoly::linear_form(form).pow(*p)
            })
    }
}

impl Evaluate for LinearFormProduct {
    fn nvars(&self) -> usize {
        self.nvars
    }
    fn homogeneous_degree(&self) -> Option<usize> {
        if self
            .rational
            .iter()
            .any(|(f, p)| *p > 0 && f.iter().all(|c| c.is_zero()))
        {
            return None;
        }
        Some(self.rational.iter().map(|(_, p)| *p as usize).sum())
    }
    fn scale(&self) -> BigInt {
        self.scale.clone()
    }
    fn eval_scaled(&self, x: &[BigInt]) -> BigInt {
        let mut acc = self.multiplier.clone();
        for (form, p) in &self.factors {
            let v = form
                .iter()
                .zip(x)
                .filter(|(c, _)| !c.is_zero())
                .fold(BigInt::zero(), |s, (c, xv)| s + c * xv);
            acc *= num_traits::pow(v, *p as usize);
        }
        acc
    }
}
