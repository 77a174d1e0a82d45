//! Classes of the Peterson variety in the square-free `ϖ`-monomial basis, the
//! `ϖ_i`-multiplication rule, integration, and mixed `Φ`-Eulerian numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::mrules::{m_entry, DerivedTable};
use crate::rootsys::{
    connected_components, reduced_words, v_k, volume_normalizer, RootSystem, SubsetMask, WeylWord,
};
use crate::{factorial, format_q, Error, Result, Q};

/// A homogeneous class `Σ_S c_S ∏_{k∈S} ϖ_k` with every `|S|` equal to `grade`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeClass {
    pub grade: usize,
    terms: BTreeMap<SubsetMask, Q>,
}

impl SquareFreeClass {
    pub fn zero(grade: usize) -> Self {
        SquareFreeClass {
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The unit class `1`.
    pub fn one() -> Self {
        SquareFreeClass::monomial(SubsetMask::empty(), Q::one())
    }

    /// `c · ∏_{k∈S} ϖ_k`.
    pub fn monomial(mask: SubsetMask, c: Q) -> Self {
        let mut out = SquareFreeClass::zero(mask.len());
        out.add_term(mask, c);
        out
    }

    /// Adds `c` to the coefficient of `mask`, dropping zeros.
    pub fn add_term(&mut self, mask: SubsetMask, c: Q) {
        assert_eq!(mask.len(), self.grade, "mask {mask} has wrong grade");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn coeff(&self, mask: SubsetMask) -> Q {
        self.terms.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubsetMask, &Q)> {
        self.terms.iter()
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

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = SquareFreeClass::zero(self.grade);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn add(&self, other: &SquareFreeClass) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.grade, other.grade, "adding classes of different grade");
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl fmt::Display for SquareFreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.vertices()
                        .iter()
                        .map(|v| format!("w{v}"))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                format!("{}*{}", format_q(c), mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A weak composition `(c_1, …, c_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Checks length `n` and sum `n`.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::CompositionLength {
                len: self.len(),
                expected: n,
            });
        }
        if self.sum() != n {
            return Err(Error::CompositionSum {
                sum: self.sum(),
                expected: n,
            });
        }
        Ok(())
    }

    /// The multiset `{1^{c_1}, 2^{c_2}, …}` in weakly increasing order.
    pub fn multiset(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
            .collect()
    }

    /// All weak compositions of `total` into `parts` parts, in decreasing
    /// lexicographic order (`(n,0,…,0)` first).
    pub fn all(total: usize, parts: usize) -> Vec<Composition> {
        fn go(rest: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if left == 1 {
                cur.push(rest);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=rest).rev() {
                cur.push(c);
                go(rest - c, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if parts == 0 {
            if total == 0 {
                out.push(Composition(Vec::new()));
            }
            return out;
        }
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
        out
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Usage("empty composition".into()));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad composition entry {:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Where the structure constants `m_{i,K}^J` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MSource {
    /// The hardcoded table with pair classification.
    #[default]
    Table,
    /// Recomputed from Billey's formula.
    Billey,
}

/// Multiplication engine for one root system, caching `m_{i,K}^J` per triple.
#[derive(Debug)]
pub struct PetersonEngine {
    rs: RootSystem,
    source: MSource,
    derived: DerivedTable,
    cache: Mutex<HashMap<(SubsetMask, SubsetMask, usize), Q>>,
}

impl PetersonEngine {
    pub fn new(rs: RootSystem) -> Self {
        PetersonEngine::with_source(rs, MSource::Table)
    }

    pub fn with_source(rs: RootSystem, source: MSource) -> Self {
        PetersonEngine {
            rs,
            source,
            derived: DerivedTable::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn source(&self) -> MSource {
        self.source
    }

    /// `m_{i,K}^J` from the configured source.
    pub fn m(&self, i: usize, k: SubsetMask, j: SubsetMask) -> Result<Q> {
        let key = (k, j, i);
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = match self.source {
            MSource::Table => m_entry(&self.rs, k, j, i)?.value,
            MSource::Billey => self.derived.get(&self.rs, i, k, j)?,
        };
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, v.clone());
        Ok(v)
    }

    /// `ϖ_i · cls`.
    pub fn multiply_omega(&self, cls: &SquareFreeClass, i: usize) -> Result<SquareFreeClass> {
        self.rs.check_vertex(i)?;
        let mut out = SquareFreeClass::zero(cls.grade + 1);
        for (&s, c) in cls.terms() {
            if !s.contains(i) {
                out.add_term(s.insert(i), c.clone());
                continue;
            }
            let k = connected_components(&self.rs, s)
                .into_iter()
                .find(|comp| comp.contains(i))
                .expect("vertex lies in some component");
            for v in self.rs.boundary(k).vertices() {
                if s.contains(v) {
                    return Err(Error::Internal(format!(
                        "square-free closure violated: vertex {v} adjacent to component {k} of {s}"
                    )));
                }
                let m = self.m(i, k, k.insert(v))?;
                out.add_term(s.insert(v), c * m);
            }
        }
        Ok(out)
    }

    /// `ϖ_{i_1} ⋯ ϖ_{i_l} · cls`, multiplying left to right through `order`.
    pub fn multiply_sequence(
        &self,
        cls: &SquareFreeClass,
        order: &[usize],
    ) -> Result<SquareFreeClass> {
        let mut cur = cls.clone();
        for &i in order {
            if cur.is_zero() {
                return Ok(SquareFreeClass::zero(cur.grade + order.len()));
            }
            cur = self.multiply_omega(&cur, i)?;
        }
        Ok(cur)
    }

    /// `∏ ϖ_i^{c_i}` with the factors taken in ascending vertex order.
    pub fn monomial_class(&self, comp: &Composition) -> Result<SquareFreeClass> {
        if comp.len() != self.rs.rank {
            return Err(Error::CompositionLength {
                len: comp.len(),
                expected: self.rs.rank,
            });
        }
        self.multiply_sequence(&SquareFreeClass::one(), &comp.multiset())
    }

    /// Integral of a top-degree class.
    pub fn integrate(&self, cls: &SquareFreeClass) -> Result<Q> {
        integrate(&self.rs, cls)
    }

    /// The mixed `Φ`-Eulerian number `A^Φ_c`.
    pub fn mixed_eulerian(&self, comp: &Composition) -> Result<Q> {
        comp.check(self.rs.rank)?;
        self.integrate(&self.monomial_class(comp)?)
    }

    /// `A^Φ_c` with the factors multiplied in a caller-chosen order.
    pub fn mixed_eulerian_ordered(&self, order: &[usize]) -> Result<Q> {
        let mut counts = vec![0usize; self.rs.rank];
        for &i in order {
            self.rs.check_vertex(i)?;
            counts[i - 1] += 1;
        }
        Composition(counts).check(self.rs.rank)?;
        self.integrate(&self.multiply_sequence(&SquareFreeClass::one(), order)?)
    }

    /// `∏_{i∈I} ϖ_i · ∏_{k∈K} ϖ_k` in the square-free basis.
    pub fn omega_product(&self, i_mask: SubsetMask, k_mask: SubsetMask) -> Result<SquareFreeClass> {
        self.rs.check_mask(i_mask)?;
        self.rs.check_mask(k_mask)?;
        let start = SquareFreeClass::monomial(k_mask, Q::one());
        self.multiply_sequence(&start, &i_mask.vertices())
    }

    /// Coefficients `c_{IK}^J` of `p_{v_I} · p_{v_K} = Σ_J c_{IK}^J p_{v_J}`.
    pub fn peterson_product(
        &self,
        i_mask: SubsetMask,
        k_mask: SubsetMask,
    ) -> Result<BTreeMap<SubsetMask, Q>> {
        if i_mask.is_empty() || k_mask.is_empty() {
            return Err(Error::InvalidSubset(
                "Peterson product needs nonempty subsets".into(),
            ));
        }
        let prod = self.omega_product(i_mask, k_mask)?;
        let gi = giambelli_factor(&self.rs, i_mask)?;
        let gk = giambelli_factor(&self.rs, k_mask)?;
        let mut out = BTreeMap::new();
        for (&j, a) in prod.terms() {
            let gj = giambelli_factor(&self.rs, j)?;
            out.insert(j, &gi * &gk * a / gj);
        }
        Ok(out)
    }

    /// `p_w = (1/ℓ(w)!) Σ_{Red(w)} ϖ_{i_1} ⋯ ϖ_{i_ℓ}`; zero when `ℓ(w) > n`.
    pub fn peterson_class(&self, w: &WeylWord) -> Result<SquareFreeClass> {
        let words = reduced_words(&self.rs, w)?;
        let l = w.len();
        if l > self.rs.rank {
            return Ok(SquareFreeClass::zero(l));
        }
        let mut total = SquareFreeClass::zero(l);
        for word in &words {
            total = total.add(&self.multiply_sequence(&SquareFreeClass::one(), word)?);
        }
        Ok(total.scale(&Q::new(One::one(), factorial(l))))
    }
}

/// `p_{v_X} = g(X) · ∏_{x∈X} ϖ_x` with `g(X) = ∏_comp |Red(v_comp)| / |comp|!`.
pub fn giambelli_factor(rs: &RootSystem, x: SubsetMask) -> Result<Q> {
    let mut g = Q::one();
    for comp in connected_components(rs, x) {
        let red = reduced_words(rs, &v_k(rs, comp)?)?.len();
        g *= Q::new(red.into(), factorial(comp.len()));
    }
    Ok(g)
}

/// `ϖ_i · cls` using the hardcoded table.
pub fn multiply_omega(rs: &RootSystem, cls: &SquareFreeClass, i: usize) -> Result<SquareFreeClass> {
    PetersonEngine::new(rs.clone()).multiply_omega(cls, i)
}

/// Top-degree coefficient times `|W| / det(C)`.
pub fn integrate(rs: &RootSystem, cls: &SquareFreeClass) -> Result<Q> {
    if cls.grade != rs.rank {
        return Err(Error::NotTopDegree {
            grade: cls.grade,
            rank: rs.rank,
        });
    }
    Ok(cls.coeff(rs.full_mask()) * volume_normalizer(rs))
}

/// `A^Φ_c` by the reduction rule with the hardcoded table.
pub fn mixed_eulerian(rs: &RootSystem, comp: &Composition) -> Result<Q> {
    PetersonEngine::new(rs.clone()).mixed_eulerian(comp)
}

pub fn peterson_product(
    rs: &RootSystem,
    i_mask: SubsetMask,
    k_mask: SubsetMask,
) -> Result<BTreeMap<SubsetMask, Q>> {
    PetersonEngine::new(rs.clone()).peterson_product(i_mask, k_mask)
}

pub fn peterson_class(rs: &RootSystem, w: &WeylWord) -> Result<SquareFreeClass> {
    PetersonEngine::new(rs.clone()).peterson_class(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, TypeLabel};
    use crate::{q, qi};

    #[test]
    fn a8_reduction_step() {
        let rs = build_root_system(TypeLabel::A, 8).unwrap();
        let cls = SquareFreeClass::monomial(SubsetMask::from_vertices(&[1, 3, 4, 7, 8]), qi(1));
        let out = multiply_omega(&rs, &cls, 3).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(
            out.coeff(SubsetMask::from_vertices(&[1, 2, 3, 4, 7, 8])),
            q(2, 3)
        );
        assert_eq!(
            out.coeff(SubsetMask::from_vertices(&[1, 3, 4, 5, 7, 8])),
            q(1, 3)
        );
    }

    #[test]
    fn g2_squares() {
        let rs = build_root_system(TypeLabel::G, 2).unwrap();
        let full = SubsetMask::full(2);
        let w1 = SquareFreeClass::monomial(SubsetMask::singleton(1), qi(1));
        let w2 = SquareFreeClass::monomial(SubsetMask::singleton(2), qi(1));
        assert_eq!(multiply_omega(&rs, &w1, 1).unwrap().coeff(full), q(1, 2));
        assert_eq!(multiply_omega(&rs, &w2, 2).unwrap().coeff(full), q(3, 2));
    }

    #[test]
    fn saturated_term_vanishes() {
        let rs = build_root_system(TypeLabel::A, 2).unwrap();
        let cls = SquareFreeClass::monomial(SubsetMask::full(2), qi(1));
        assert!(multiply_omega(&rs, &cls, 1).unwrap().is_zero());
    }

    #[test]
    fn golden_values() {
        let a8 = build_root_system(TypeLabel::A, 8).unwrap();
        let c: Composition = "1,0,2,3,0,0,1,1".parse().unwrap();
        assert_eq!(mixed_eulerian(&a8, &c).unwrap(), qi(23616));
        let e6 = build_root_system(TypeLabel::E, 6).unwrap();
        let c: Composition = "0,1,0,2,3,0".parse().unwrap();
        assert_eq!(mixed_eulerian(&e6, &c).unwrap(), qi(34992));
    }

    #[test]
    fn integrate_rejects_wrong_grade() {
        let rs = build_root_system(TypeLabel::A, 2).unwrap();
        let cls = SquareFreeClass::monomial(SubsetMask::singleton(1), qi(1));
        assert!(matches!(
            integrate(&rs, &cls),
            Err(Error::NotTopDegree { .. })
        ));
    }

    #[test]
    fn compositions_enumeration() {
        let all = Composition::all(2, 2);
        let shown: Vec<String> = all.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["2,0", "1,1", "0,2"]);
        assert_eq!(Composition::all(4, 4).len(), 35);
    }

    #[test]
    fn peterson_class_examples() {
        let rs = build_root_system(TypeLabel::A, 2).unwrap();
        let p = peterson_class(&rs, &WeylWord::new(vec![1])).unwrap();
        assert_eq!(p.coeff(SubsetMask::singleton(1)), qi(1));
        let p = peterson_class(&rs, &WeylWord::new(vec![1, 2])).unwrap();
        assert_eq!(p.coeff(SubsetMask::full(2)), q(1, 2));
        assert!(peterson_class(&rs, &WeylWord::new(vec![1, 2, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn g2_peterson_product() {
        let rs = build_root_system(TypeLabel::G, 2).unwrap();
        let one = SubsetMask::singleton(1);
        let prod = peterson_product(&rs, one, one).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod[&SubsetMask::full(2)], qi(1));
    }
}
