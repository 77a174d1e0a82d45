//! Structure constants `m_{i,K}^J` for multiplying `ϖ_i` into a connected
//! square-free monomial: a hardcoded table keyed by the pair type `(Φ_K, Φ_J)`,
//! and an independent derivation from Billey's restriction formula.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::oracles::poly::RationalPoly;
use crate::rootsys::{
    diagram_isomorphisms, inversion_roots, is_connected, is_reduced, labeling_key, longest_element,
    reduced_words, standard_cartan, v_k, RootSystem, SubsetMask, TypeLabel, WeylWord,
};
use crate::{q, qi, Error, Result, Q};

/// The rows of the structure-constant table, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    AA,
    AB,
    BB,
    AC,
    CC,
    AD,
    DD,
    A5E6,
    D5E6,
    A6E7,
    D6E7,
    E6E7,
    A7E8,
    D7E8,
    E7E8,
    B3F4,
    C3F4,
    A1G2i,
    A1G2ii,
}

impl PairKind {
    pub const ALL: [PairKind; 19] = [
        PairKind::AA,
        PairKind::AB,
        PairKind::BB,
        PairKind::AC,
        PairKind::CC,
        PairKind::AD,
        PairKind::DD,
        PairKind::A5E6,
        PairKind::D5E6,
        PairKind::A6E7,
        PairKind::D6E7,
        PairKind::E6E7,
        PairKind::A7E8,
        PairKind::D7E8,
        PairKind::E7E8,
        PairKind::B3F4,
        PairKind::C3F4,
        PairKind::A1G2i,
        PairKind::A1G2ii,
    ];

    /// Type of `Φ_J`.
    pub fn j_label(self) -> TypeLabel {
        use PairKind::*;
        match self {
            AA => TypeLabel::A,
            AB | BB => TypeLabel::B,
            AC | CC => TypeLabel::C,
            AD | DD => TypeLabel::D,
            A5E6 | D5E6 | A6E7 | D6E7 | E6E7 | A7E8 | D7E8 | E7E8 => TypeLabel::E,
            B3F4 | C3F4 => TypeLabel::F,
            A1G2i | A1G2ii => TypeLabel::G,
        }
    }

    /// Fixed rank of `Φ_J` for the exceptional rows.
    pub fn fixed_rank(self) -> Option<usize> {
        use PairKind::*;
        match self {
            A5E6 | D5E6 => Some(6),
            A6E7 | D6E7 | E6E7 => Some(7),
            A7E8 | D7E8 | E7E8 => Some(8),
            B3F4 | C3F4 => Some(4),
            A1G2i | A1G2ii => Some(2),
            _ => None,
        }
    }

    /// Whether the row applies at rank `r`. With `canonical`, ranks where the
    /// row degenerates into another one (B1, C1, D2, D3 as `Φ_K` or `Φ_J`) are excluded.
    pub fn rank_ok(self, r: usize, canonical: bool) -> bool {
        use PairKind::*;
        if let Some(f) = self.fixed_rank() {
            return r == f;
        }
        let min = match (self, canonical) {
            (AA, _) | (AB, _) | (AC, _) => 2,
            (BB, true) | (CC, true) => 3,
            (BB, false) | (CC, false) => 2,
            (AD, true) => 4,
            (AD, false) => 3,
            (DD, true) => 5,
            (DD, false) => 4,
            _ => unreachable!(),
        };
        r >= min
    }

    /// Relabeling of the standard labels of `Φ_J` used by the row: `β_a` is the
    /// standard vertex `perm[a - 1]`. `None` means the identity.
    fn beta_perm(self) -> Option<&'static [usize]> {
        use PairKind::*;
        match self {
            A5E6 => Some(&[1, 3, 4, 5, 6, 2]),
            A6E7 => Some(&[1, 3, 4, 5, 6, 7, 2]),
            A7E8 => Some(&[1, 3, 4, 5, 6, 7, 8, 2]),
            _ => None,
        }
    }

    /// β-indices forming `K`.
    pub fn k_betas(self, r: usize) -> Vec<usize> {
        use PairKind::*;
        match self {
            BB | CC | DD | D6E7 | D7E8 | C3F4 => (2..=r).collect(),
            A1G2i => vec![1],
            A1G2ii => vec![2],
            _ => (1..r).collect(),
        }
    }

    /// Cartan matrix of `Φ_J` in the row's β-labeling.
    pub fn j_cartan(self, r: usize) -> Result<Vec<Vec<i64>>> {
        let std = standard_cartan(self.j_label(), r)?;
        Ok(match self.beta_perm() {
            None => std,
            Some(p) => (0..r)
                .map(|a| (0..r).map(|b| std[p[a] - 1][p[b] - 1]).collect())
                .collect(),
        })
    }

    /// Display name such as `(A2,A3)`.
    pub fn name(self, r: usize) -> String {
        use PairKind::*;
        let (k, j) = match self {
            AA => (format!("A{}", r - 1), format!("A{r}")),
            AB => (format!("A{}", r - 1), format!("B{r}")),
            BB => (format!("B{}", r - 1), format!("B{r}")),
            AC => (format!("A{}", r - 1), format!("C{r}")),
            CC => (format!("C{}", r - 1), format!("C{r}")),
            AD => (format!("A{}", r - 1), format!("D{r}")),
            DD => (format!("D{}", r - 1), format!("D{r}")),
            A5E6 => ("A5".into(), "E6".into()),
            D5E6 => ("D5".into(), "E6".into()),
            A6E7 => ("A6".into(), "E7".into()),
            D6E7 => ("D6".into(), "E7".into()),
            E6E7 => ("E6".into(), "E7".into()),
            A7E8 => ("A7".into(), "E8".into()),
            D7E8 => ("D7".into(), "E8".into()),
            E7E8 => ("E7".into(), "E8".into()),
            B3F4 => ("B3".into(), "F4".into()),
            C3F4 => ("C3".into(), "F4".into()),
            A1G2i => return "(A1,G2)-(i)".into(),
            A1G2ii => return "(A1,G2)-(ii)".into(),
        };
        format!("({k},{j})")
    }
}

/// Table value of `m_{i,K}^J` for a row, `r = |J|` and the relabeled index `i′`.
pub fn m_value(kind: PairKind, r: usize, ip: usize) -> Result<Q> {
    if !kind.rank_ok(r, false) || !kind.k_betas(r).contains(&ip) {
        return Err(Error::InvalidPair(format!(
            "index {ip} is not a K-vertex of {}",
            kind.name(r)
        )));
    }
    let (r, i) = (r as i64, ip as i64);
    use PairKind::*;
    Ok(match kind {
        AA | AC => q(i, r),
        AB => q(2 * i, r),
        BB => {
            if i == r {
                q(1, 2)
            } else {
                qi(1)
            }
        }
        CC => qi(1),
        AD => {
            if i <= r - 2 {
                q(2 * i, r)
            } else {
                q(r - 2, r)
            }
        }
        DD => {
            if i >= r - 1 {
                q(1, 2)
            } else {
                qi(1)
            }
        }
        A5E6 => {
            if i <= 3 {
                q(i, 2)
            } else {
                q(6 - i, 2)
            }
        }
        D5E6 => {
            if i <= 3 {
                q(i + 1, 4)
            } else {
                q(10 - i, 4)
            }
        }
        A6E7 => {
            if i <= 3 {
                q(4 * i, 7)
            } else {
                q(3 * (7 - i), 7)
            }
        }
        D6E7 => {
            if i <= 3 {
                q(i, 2)
            } else {
                q(8 - i, 2)
            }
        }
        E6E7 => {
            if i <= 3 {
                q(i + 1, 3)
            } else {
                q(10 - i, 3)
            }
        }
        A7E8 => {
            if i <= 3 {
                q(5 * i, 8)
            } else {
                q(3 * (8 - i), 8)
            }
        }
        D7E8 => {
            if i <= 3 {
                q(2 * i + 1, 4)
            } else {
                q(9 - i, 2)
            }
        }
        E7E8 => {
            if i <= 3 {
                q(i + 1, 2)
            } else {
                q(10 - i, 2)
            }
        }
        B3F4 => {
            if i <= 2 {
                qi(i)
            } else {
                q(3, 2)
            }
        }
        C3F4 => q(5 - i, 2),
        A1G2i => q(1, 2),
        A1G2ii => q(3, 2),
    })
}

/// A classified pair `(Φ_K, Φ_J)` with its β-relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairType {
    pub kind: PairKind,
    /// `r = |J|`.
    pub r: usize,
    /// `relabel[a]` is the ambient vertex named `β_{a+1}`.
    pub relabel: Vec<usize>,
}

impl PairType {
    /// β-index of an ambient vertex of `J`.
    pub fn beta_of(&self, v: usize) -> Option<usize> {
        self.relabel.iter().position(|&u| u == v).map(|p| p + 1)
    }

    pub fn name(&self) -> String {
        self.kind.name(self.r)
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .relabel
            .iter()
            .enumerate()
            .map(|(a, v)| format!("b{}={}", a + 1, v))
            .collect();
        write!(f, "{} [{}]", self.name(), labels.join(" "))
    }
}

/// A table entry: a classified pair, the relabeled index and the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTableEntry {
    pub pair: PairType,
    pub i_prime: usize,
    pub value: Q,
}

fn check_triple(rs: &RootSystem, k: SubsetMask, j: SubsetMask, i: usize) -> Result<()> {
    rs.check_mask(j)?;
    rs.check_vertex(i)?;
    let ok = is_connected(rs, k)
        && is_connected(rs, j)
        && k.is_subset(j)
        && j.len() == k.len() + 1
        && k.contains(i);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPair(format!("K={k} J={j} i={i}")))
    }
}

fn matches(
    rs: &RootSystem,
    k: SubsetMask,
    j: SubsetMask,
    i: usize,
    canonical: bool,
    first_only: bool,
) -> Result<Vec<(PairType, usize)>> {
    check_triple(rs, k, j, i)?;
    let r = j.len();
    let verts = j.vertices();
    let mut out = Vec::new();
    for kind in PairKind::ALL {
        if kind.j_label() == TypeLabel::D && r < 2 || !kind.rank_ok(r, canonical) {
            continue;
        }
        let target = kind.j_cartan(r)?;
        let kb = kind.k_betas(r);
        let mut found: Vec<(usize, Vec<usize>)> = diagram_isomorphisms(rs, &verts, &target)
            .into_iter()
            .filter(|phi| {
                SubsetMask::from_vertices(&kb.iter().map(|&b| phi[b - 1]).collect::<Vec<_>>()) == k
            })
            .map(|phi| {
                let ip = phi.iter().position(|&v| v == i).unwrap() + 1;
                (ip, phi)
            })
            .collect();
        found.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| labeling_key(rs, &a.1).cmp(&labeling_key(rs, &b.1)))
        });
        if first_only {
            if let Some((ip, phi)) = found.into_iter().next() {
                out.push((
                    PairType {
                        kind,
                        r,
                        relabel: phi,
                    },
                    ip,
                ));
                return Ok(out);
            }
        } else {
            out.extend(found.into_iter().map(|(ip, phi)| {
                (
                    PairType {
                        kind,
                        r,
                        relabel: phi,
                    },
                    ip,
                )
            }));
        }
    }
    Ok(out)
}

/// Classifies `(Φ_K, Φ_J)` as a table row with a β-relabeling, returning the
/// pair type and `i′`. Ties are broken by the smallest `i′`.
pub fn classify_pair(
    rs: &RootSystem,
    k: SubsetMask,
    j: SubsetMask,
    i: usize,
) -> Result<(PairType, usize)> {
    matches(rs, k, j, i, true, true)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("no table row matches K={k} J={j}")))
}

/// Every row and relabeling that fits the triple, including degenerate ranks.
pub fn all_classifications(
    rs: &RootSystem,
    k: SubsetMask,
    j: SubsetMask,
    i: usize,
) -> Result<Vec<(PairType, usize)>> {
    matches(rs, k, j, i, false, false)
}

/// Table value for a classified pair.
pub fn m_lookup(pair: &PairType, i_prime: usize) -> Result<Q> {
    m_value(pair.kind, pair.r, i_prime)
}

/// Classification together with the table value.
pub fn m_entry(rs: &RootSystem, k: SubsetMask, j: SubsetMask, i: usize) -> Result<MTableEntry> {
    let (pair, ip) = classify_pair(rs, k, j, i)?;
    let value = m_lookup(&pair, ip)?;
    Ok(MTableEntry {
        pair,
        i_prime: ip,
        value,
    })
}

/// Restriction `p_v(w)` of a Schubert class to a fixed point, from Billey's formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilleyEvaluation {
    pub v: WeylWord,
    pub w: WeylWord,
    /// Homogeneous polynomial in `α_1, …, α_n` (variables in vertex order).
    pub value_poly: RationalPoly,
    /// Coefficient `c` of the image `c·t^{ℓ(v)}` under `α_i ↦ t`.
    pub value_t: Q,
    /// `ℓ(v)`, the power of `t`.
    pub degree: usize,
}

/// Matching positions of each letter of `v` and the inversion roots of `w`.
type BilleySetup = (Vec<Vec<usize>>, Vec<Vec<i64>>);

fn billey_setup(rs: &RootSystem, v: &WeylWord, w_word: &WeylWord) -> Result<BilleySetup> {
    for &l in &w_word.letters {
        rs.check_vertex(l)?;
    }
    if !is_reduced(rs, &w_word.letters) {
        return Err(Error::NotReduced(w_word.letters.clone()));
    }
    let words: Vec<Vec<usize>> = reduced_words(rs, v)?.into_iter().collect();
    Ok((words, inversion_roots(rs, &w_word.letters)))
}

/// Billey's formula with `α_i ↦ t`: returns the coefficient of `t^{ℓ(v)}`.
///
/// Dynamic programming over positions of `w` with state (reduced word of `v`,
/// matched prefix length); subsequences are never listed.
pub fn billey_t(rs: &RootSystem, v: &WeylWord, w_word: &WeylWord) -> Result<BigInt> {
    let (words, roots) = billey_setup(rs, v, w_word)?;
    let heights: Vec<BigInt> = roots
        .iter()
        .map(|r| BigInt::from(r.iter().sum::<i64>()))
        .collect();
    let mut total = BigInt::zero();
    for u in &words {
        let l = u.len();
        let mut dp = vec![BigInt::zero(); l + 1];
        dp[0] = BigInt::one();
        for (pos, &letter) in w_word.letters.iter().enumerate() {
            for k in (1..=l).rev() {
                if u[k - 1] == letter && !dp[k - 1].is_zero() {
                    let add = &dp[k - 1] * &heights[pos];
                    dp[k] += add;
                }
            }
        }
        total += &dp[l];
    }
    Ok(total)
}

/// Billey's formula as a polynomial in the simple roots, plus its `t`-image.
pub fn billey_restrict(
    rs: &RootSystem,
    v: &WeylWord,
    w_word: &WeylWord,
) -> Result<BilleyEvaluation> {
    let (words, roots) = billey_setup(rs, v, w_word)?;
    let n = rs.rank;
    let forms: Vec<RationalPoly> = roots
        .iter()
        .map(|r| RationalPoly::linear_form(&r.iter().map(|&c| qi(c)).collect::<Vec<_>>()))
        .collect();
    let mut total = RationalPoly::zero(n);
    for u in &words {
        let l = u.len();
        let mut dp = vec![RationalPoly::zero(n); l + 1];
        dp[0] = RationalPoly::one(n);
        for (pos, &letter) in w_word.letters.iter().enumerate() {
            for k in (1..=l).rev() {
                if u[k - 1] == letter && !dp[k - 1].is_zero() {
                    let add = &dp[k - 1] * &forms[pos];
                    dp[k] = &dp[k] + &add;
                }
            }
        }
        total = &total + &dp[l];
    }
    let value_t = total.coefficient_sum();
    Ok(BilleyEvaluation {
        v: v.clone(),
        w: w_word.clone(),
        value_poly: total,
        value_t,
        degree: v.len(),
    })
}

/// `c_{i,K}^J = (p_{s_i}(w_J) − p_{s_i}(w_K)) · p_{v_K}(w_J) / p_{v_J}(w_J)` after `α ↦ t`.
pub fn c_ikj(rs: &RootSystem, i: usize, k: SubsetMask, j: SubsetMask) -> Result<Q> {
    check_triple(rs, k, j, i)?;
    let w_j = longest_element(rs, j)?;
    let w_k = longest_element(rs, k)?;
    let v_kk = v_k(rs, k)?;
    let v_jj = v_k(rs, j)?;
    let s_i = WeylWord::new(vec![i]);
    // t-degrees: 1 + |K| - |J| = 0, so the ratio is a pure number.
    debug_assert_eq!(s_i.len() + v_kk.len(), v_jj.len());
    let a = billey_t(rs, &s_i, &w_j)?;
    let b = billey_t(rs, &s_i, &w_k)?;
    let x = billey_t(rs, &v_kk, &w_j)?;
    let y = billey_t(rs, &v_jj, &w_j)?;
    if y.is_zero() {
        return Err(Error::Internal(format!("p_(v_J)(w_J) vanishes for J={j}")));
    }
    Ok(Q::new((a - b) * x, y))
}

/// `m_{i,K}^J = |Red(v_J)| / |Red(v_K)| · c_{i,K}^J / |J|`, derived from Billey's formula.
pub fn m_derive(rs: &RootSystem, i: usize, k: SubsetMask, j: SubsetMask) -> Result<Q> {
    let c = c_ikj(rs, i, k, j)?;
    let red_j = reduced_words(rs, &v_k(rs, j)?)?.len() as i64;
    let red_k = reduced_words(rs, &v_k(rs, k)?)?.len() as i64;
    Ok(c * q(red_j, red_k * j.len() as i64))
}

/// Cache of derived values keyed by `(pair kind, r, i′)`.
#[derive(Debug, Default)]
pub struct DerivedTable {
    cache: Mutex<HashMap<(PairKind, usize, usize), Q>>,
}

impl DerivedTable {
    pub fn new() -> Self {
        DerivedTable::default()
    }

    /// Derived `m_{i,K}^J`, computed once per table cell.
    pub fn get(&self, rs: &RootSystem, i: usize, k: SubsetMask, j: SubsetMask) -> Result<Q> {
        let (pair, ip) = classify_pair(rs, k, j, i)?;
        let key = (pair.kind, pair.r, ip);
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = m_derive(rs, i, k, j)?;
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(key)
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.cache.lock().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One `(K, J, i)` triple of an ambient system with table and derived values.
#[derive(Clone, Debug)]
pub struct TripleCheck {
    pub k: SubsetMask,
    pub j: SubsetMask,
    pub i: usize,
    pub entry: MTableEntry,
    pub derived: Option<Q>,
}

impl TripleCheck {
    pub fn agrees(&self) -> bool {
        self.derived.as_ref().is_none_or(|d| *d == self.entry.value)
    }
}

/// All triples `(K, J, i)` with `K ⊂ J` connected, `|J| = |K| + 1`, `i ∈ K`.
pub fn all_triples(rs: &RootSystem) -> Vec<(SubsetMask, SubsetMask, usize)> {
    let mut out = Vec::new();
    for k in crate::rootsys::connected_subsets(rs) {
        for v in rs.boundary(k).vertices() {
            let j = k.insert(v);
            for i in k.vertices() {
                out.push((k, j, i));
            }
        }
    }
    out
}

/// Table (and optionally Billey-derived) values for every triple of the system.
pub fn m_table(rs: &RootSystem, derive: bool) -> Result<Vec<TripleCheck>> {
    use rayon::prelude::*;
    all_triples(rs)
        .into_par_iter()
        .map(|(k, j, i)| {
            let entry = m_entry(rs, k, j, i)?;
            let derived = if derive {
                Some(m_derive(rs, i, k, j)?)
            } else {
                None
            };
            Ok(TripleCheck {
                k,
                j,
                i,
                entry,
                derived,
            })
        })
        .collect()
}
