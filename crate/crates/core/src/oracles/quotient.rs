//! Reduction in `Q[ϖ_1, …, ϖ_n] / (α_i ϖ_i)` to the square-free monomial basis
//! by exact linear algebra, built one degree at a time.
//!
//! Degree `d` is spanned by the symbols `(k, S)` meaning `ϖ_k · ∏_{s∈S} ϖ_s`
//! with `|S| = d − 1`. A symbol with `k ∉ S` is the square-free monomial
//! `S ∪ {k}`; a symbol with `k ∈ S` is an unknown. Every degree-`d` monomial
//! `ϖ^b` maps to `k ⊗ red_{d−1}(ϖ^{b − e_k})` with `k` its smallest index. The
//! relations are
//! (i) an unknown `(k, S)` equals the image of the monomial `ϖ_k ϖ_S`, and
//! (ii) `Σ_j C_ij · image(m ϖ_i ϖ_j) = 0` for every degree-`(d − 2)` monomial `m`.
//! Unknowns with `k > min S` are eliminated through (i); the remaining ones are
//! solved from (ii) using pivot rows found modulo a large prime and an exact
//! rational solve. Every relation is then checked exactly, which shows the
//! square-free monomials form a basis of degree `d`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::RationalPoly;
use crate::petring::{Composition, SquareFreeClass};
use crate::rootsys::{volume_normalizer, RootSystem, SubsetMask, TypeLabel};
use crate::{Error, Result, Q};

type Exps = Vec<u8>;
type SparseVec = Vec<(usize, Q)>;

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn bigmod(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(PRIME))
        .to_u64()
        .expect("reduced below the prime")
}

fn qmod(x: &Q) -> Result<u64> {
    let d = bigmod(x.denom());
    if d == 0 {
        return Err(Error::Internal(
            "denominator vanishes modulo the prime".into(),
        ));
    }
    Ok(mulmod(bigmod(x.numer()), powmod(d, PRIME - 2)))
}

/// All exponent vectors of total degree `d` in `n` variables, lexicographically.
fn monomials(n: usize, d: usize) -> Vec<Exps> {
    fn go(i: usize, left: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i + 1 == cur.len() {
            cur[i] = left as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, d, &mut vec![0; n], &mut out);
    out
}

fn subsets_of_size(n: usize, d: usize) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = (0u64..(1u64 << n))
        .filter(|m| m.count_ones() as usize == d)
        .map(SubsetMask)
        .collect();
    out.sort();
    out
}

/// Reduction tables for every degree up to `max_degree`.
#[derive(Debug)]
pub struct QuotientSpace {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub max_degree: usize,
    /// Square-free basis of each degree.
    basis: Vec<Vec<SubsetMask>>,
    /// `red[d][b]`: square-free expansion (indices into `basis[d]`) of `ϖ^b`.
    red: Vec<HashMap<Exps, SparseVec>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Col {
    Sf(usize),
    Unk(usize),
}

struct DegreeBuilder<'a> {
    cartan: &'a [Vec<i64>],
    prev_basis: &'a [SubsetMask],
    prev_red: &'a HashMap<Exps, SparseVec>,
    basis_index: HashMap<SubsetMask, usize>,
    unk_index: HashMap<(usize, usize), usize>,
    unknowns: Vec<(usize, usize)>,
}

impl<'a> DegreeBuilder<'a> {
    fn col(&self, k: usize, s_idx: usize) -> Col {
        let s = self.prev_basis[s_idx];
        if s.contains(k) {
            Col::Unk(self.unk_index[&(k, s_idx)])
        } else {
            Col::Sf(self.basis_index[&s.insert(k)])
        }
    }

    /// `k ⊗ red_{d−1}(ϖ^{b − e_k})` for the smallest `k` with `b_k ≥ 1`.
    fn lift(&self, b: &[u8]) -> Vec<(Col, Q)> {
        let k0 = b.iter().position(|&e| e > 0).expect("positive degree");
        let mut rest = b.to_vec();
        rest[k0] -= 1;
        self.prev_red[&rest]
            .iter()
            .map(|(s_idx, c)| (self.col(k0 + 1, *s_idx), c.clone()))
            .collect()
    }
}

impl QuotientSpace {
    /// Builds and verifies the reduction tables up to `max_degree`.
    pub fn build(rs: &RootSystem, max_degree: usize) -> Result<Self> {
        let n = rs.rank;
        if n > 16 {
            return Err(Error::Usage(format!(
                "quotient ring method supports rank at most 16, got {n}"
            )));
        }
        // Degree n + 1 is built too: its basis is empty, which certifies that
        // everything above the top degree vanishes.
        let max_degree = max_degree.min(n + 1);
        let mut basis = vec![vec![SubsetMask::empty()]];
        let mut zero_table = HashMap::new();
        zero_table.insert(vec![0u8; n], vec![(0usize, Q::one())]);
        let mut red = vec![zero_table];
        for d in 1..=max_degree {
            let (b, t) = build_degree(rs, d, &basis[d - 1], &red[d - 1])?;
            basis.push(b);
            red.push(t);
        }
        Ok(QuotientSpace {
            type_label: rs.type_label,
            rank: n,
            max_degree,
            basis,
            red,
        })
    }

    /// Dimension of degree `d`, which the construction certified to be `C(n, d)`.
    pub fn dimension(&self, d: usize) -> Option<usize> {
        self.basis.get(d).map(Vec::len)
    }

    /// Square-free expansion of the monomial `ϖ^b`.
    pub fn reduce_monomial(&self, b: &[u8]) -> Result<SquareFreeClass> {
        let d: usize = b.iter().map(|&e| e as usize).sum();
        if b.len() != self.rank {
            return Err(Error::Internal(format!(
                "exponent vector has length {}",
                b.len()
            )));
        }
        if d > self.rank && self.max_degree > self.rank {
            return Ok(SquareFreeClass::zero(d));
        }
        let table = self.red.get(d).ok_or(Error::Degree {
            degree: d,
            expected: self.max_degree,
        })?;
        let mut out = SquareFreeClass::zero(d);
        for (idx, c) in &table[b] {
            out.add_term(self.basis[d][*idx], c.clone());
        }
        Ok(out)
    }

    /// Square-free representative of a homogeneous polynomial in `ϖ_1, …, ϖ_n`.
    pub fn reduce(&self, p: &RationalPoly) -> Result<SquareFreeClass> {
        if p.nvars() != self.rank {
            return Err(Error::Internal(format!(
                "polynomial has {} variables, expected {}",
                p.nvars(),
                self.rank
            )));
        }
        if p.is_zero() {
            return Ok(SquareFreeClass::zero(0));
        }
        let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let mut out = SquareFreeClass::zero(d);
        for (e, c) in p.terms() {
            let b: Exps = e.iter().map(|&x| x as u8).collect();
            out = out.add(&self.reduce_monomial(&b)?.scale(c));
        }
        Ok(out)
    }
}

fn build_degree(
    rs: &RootSystem,
    d: usize,
    prev_basis: &[SubsetMask],
    prev_red: &HashMap<Exps, SparseVec>,
) -> Result<(Vec<SubsetMask>, HashMap<Exps, SparseVec>)> {
    let n = rs.rank;
    let basis = subsets_of_size(n, d);
    let nsf = basis.len();
    let basis_index: HashMap<SubsetMask, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut unknowns = Vec::new();
    let mut unk_index = HashMap::new();
    for (s_idx, s) in prev_basis.iter().enumerate() {
        for k in s.vertices() {
            unk_index.insert((k, s_idx), unknowns.len());
            unknowns.push((k, s_idx));
        }
    }
    let b = DegreeBuilder {
        cartan: &rs.cartan,
        prev_basis,
        prev_red,
        basis_index,
        unk_index,
        unknowns,
    };

    // Base unknowns (k = min S) stay free; the others are expressed through (i)
    // as dense vectors over [base unknowns | square-free monomials].
    let mut base_of: Vec<Option<usize>> = vec![None; b.unknowns.len()];
    let mut nbase = 0;
    for (u, &(k, s_idx)) in b.unknowns.iter().enumerate() {
        if b.prev_basis[s_idx].min_vertex() == Some(k) {
            base_of[u] = Some(nbase);
            nbase += 1;
        }
    }
    let width = nbase + nsf;
    let mut order: Vec<usize> = (0..b.unknowns.len()).collect();
    order.sort_by_key(|&u| b.unknowns[u].0);
    let mut expr: Vec<Vec<Q>> = vec![Vec::new(); b.unknowns.len()];
    for &u in &order {
        let mut v = vec![Q::zero(); width];
        if let Some(bi) = base_of[u] {
            v[bi] = Q::one();
        } else {
            let (k, s_idx) = b.unknowns[u];
            let mut mono = vec![0u8; n];
            for s in b.prev_basis[s_idx].vertices() {
                mono[s - 1] += 1;
            }
            mono[k - 1] += 1;
            for (col, c) in b.lift(&mono) {
                match col {
                    Col::Sf(i) => v[nbase + i] += &c,
                    Col::Unk(w) => {
                        debug_assert!(!expr[w].is_empty(), "unknown used before it was expressed");
                        for (slot, e) in v.iter_mut().zip(&expr[w]) {
                            if !e.is_zero() {
                                *slot += &c * e;
                            }
                        }
                    }
                }
            }
        }
        expr[u] = v;
    }

    // Relations (ii), as lists of lifted columns.
    let relation = |m: &Exps, i: usize| -> Vec<(Col, Q)> {
        let mut out = Vec::new();
        for j in 0..n {
            let cij = b.cartan[i][j];
            if cij == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[i] += 1;
            mono[j] += 1;
            let cq = Q::from_integer(BigInt::from(cij));
            out.extend(b.lift(&mono).into_iter().map(|(col, c)| (col, c * &cq)));
        }
        out
    };
    let lower = if d >= 2 {
        monomials(n, d - 2)
    } else {
        Vec::new()
    };
    let relations: Vec<(Exps, usize)> = lower
        .iter()
        .flat_map(|m| (0..n).map(move |i| (m.clone(), i)))
        .collect();

    // Pick pivot rows for the base unknowns modulo the prime.
    let mut x_base: Vec<Vec<Q>> = Vec::new();
    if nbase > 0 {
        let expr_mod: Vec<Vec<u64>> = expr
            .iter()
            .map(|v| v[..nbase].iter().map(qmod).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        for (ri, (m, i)) in relations.iter().enumerate() {
            if chosen.len() == nbase {
                break;
            }
            let mut row = vec![0u64; nbase];
            for (col, c) in relation(m, *i) {
                if let Col::Unk(u) = col {
                    let cm = qmod(&c)?;
                    for (slot, e) in row.iter_mut().zip(&expr_mod[u]) {
                        if *e != 0 {
                            *slot = addmod(*slot, mulmod(cm, *e));
                        }
                    }
                }
            }
            for (p, prow) in &echelon {
                let f = row[*p];
                if f != 0 {
                    let neg = PRIME - f;
                    for (slot, e) in row.iter_mut().zip(prow) {
                        if *e != 0 {
                            *slot = addmod(*slot, mulmod(neg, *e));
                        }
                    }
                }
            }
            if let Some(p) = row.iter().position(|&e| e != 0) {
                let inv = powmod(row[p], PRIME - 2);
                for e in row.iter_mut() {
                    *e = mulmod(*e, inv);
                }
                echelon.push((p, row));
                chosen.push(ri);
            }
        }
        if chosen.len() < nbase {
            return Err(Error::Internal(format!(
                "quotient ring of {}{} has dimension above C({n},{d}) in degree {d}",
                rs.type_label, n
            )));
        }
        // Exact rows [A | B] over base unknowns and square-free columns.
        let mut system: Vec<Vec<Q>> = chosen
            .iter()
            .map(|&ri| {
                let (m, i) = &relations[ri];
                let mut v = vec![Q::zero(); width];
                for (col, c) in relation(m, *i) {
                    match col {
                        Col::Sf(s) => v[nbase + s] += &c,
                        Col::Unk(u) => {
                            for (slot, e) in v.iter_mut().zip(&expr[u]) {
                                if !e.is_zero() {
                                    *slot += &c * e;
                                }
                            }
                        }
                    }
                }
                v
            })
            .collect();
        gauss_jordan(&mut system, nbase)?;
        // Row r now reads x_r + Σ_s B'_{rs} s = 0.
        x_base = system
            .into_iter()
            .map(|row| row[nbase..].iter().map(|v| -v).collect())
            .collect();
    }

    // Square-free values of every unknown.
    let values: Vec<Vec<Q>> = expr
        .iter()
        .map(|e| {
            let mut v: Vec<Q> = e[nbase..].to_vec();
            for (bi, coeff) in e[..nbase].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (slot, xv) in v.iter_mut().zip(&x_base[bi]) {
                    if !xv.is_zero() {
                        *slot += coeff * xv;
                    }
                }
            }
            v
        })
        .collect();

    let mut table: HashMap<Exps, SparseVec> = HashMap::new();
    for mono in monomials(n, d) {
        let mut acc = vec![Q::zero(); nsf];
        for (col, c) in b.lift(&mono) {
            match col {
                Col::Sf(s) => acc[s] += c,
                Col::Unk(u) => {
                    for (slot, v) in acc.iter_mut().zip(&values[u]) {
                        if !v.is_zero() {
                            *slot += &c * v;
                        }
                    }
                }
            }
        }
        let sparse: SparseVec = acc
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        table.insert(mono, sparse);
    }

    // Exact check of every relation (ii).
    for (m, i) in &relations {
        let mut acc = vec![Q::zero(); nsf];
        for j in 0..n {
            let cij = b.cartan[*i][j];
            if cij == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[*i] += 1;
            mono[j] += 1;
            let cq = Q::from_integer(BigInt::from(cij));
            for (s, v) in &table[&mono] {
                acc[*s] += v * &cq;
            }
        }
        if acc.iter().any(|v| !v.is_zero()) {
            return Err(Error::Internal(format!(
                "relation α_{}ϖ_{} · {:?} fails after reduction in degree {d}",
                i + 1,
                i + 1,
                m
            )));
        }
    }
    Ok((basis, table))
}

/// Gauss-Jordan on the first `ncols` columns of a square system; fails if singular.
fn gauss_jordan(rows: &mut [Vec<Q>], ncols: usize) -> Result<()> {
    let r = rows.len();
    for c in 0..ncols {
        let p = (c..r)
            .find(|&i| !rows[i][c].is_zero())
            .ok_or_else(|| Error::Internal("pivot rows are singular over Q".into()))?;
        rows.swap(c, p);
        let inv = Q::one() / &rows[c][c];
        for v in rows[c].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (slot, pv) in row.iter_mut().zip(&pivot) {
                if !pv.is_zero() {
                    *slot -= &f * pv;
                }
            }
        }
    }
    Ok(())
}

type CacheMap = HashMap<(TypeLabel, usize), Arc<QuotientSpace>>;

fn cache() -> &'static Mutex<CacheMap> {
    static CACHE: OnceLock<Mutex<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared reduction tables covering at least `degree`, built on first use.
pub fn quotient_space(rs: &RootSystem, degree: usize) -> Result<Arc<QuotientSpace>> {
    let key = (rs.type_label, rs.rank);
    let want = degree.min(rs.rank + 1);
    if let Some(s) = cache().lock().expect("cache poisoned").get(&key) {
        if s.max_degree >= want {
            return Ok(Arc::clone(s));
        }
    }
    let built = Arc::new(QuotientSpace::build(rs, want)?);
    let mut guard = cache().lock().expect("cache poisoned");
    let entry = guard.entry(key).or_insert_with(|| Arc::clone(&built));
    if entry.max_degree < built.max_degree {
        *entry = Arc::clone(&built);
    }
    Ok(Arc::clone(entry))
}

/// Verified dimension of degree `d` of the quotient ring.
pub fn dimension(rs: &RootSystem, d: usize) -> Result<usize> {
    if d > rs.rank + 1 {
        return Ok(0);
    }
    let space = quotient_space(rs, d)?;
    space
        .dimension(d)
        .ok_or_else(|| Error::Internal(format!("degree {d} was not built")))
}

/// Square-free representative of a homogeneous `p`; zero above degree `n`.
pub fn quotient_reduce(rs: &RootSystem, p: &RationalPoly) -> Result<SquareFreeClass> {
    if p.is_zero() {
        return Ok(SquareFreeClass::zero(0));
    }
    let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    quotient_space(rs, d)?.reduce(p)
}

/// `A^Φ_c` as the top coefficient of `∏ ϖ_i^{c_i}` in the quotient ring times `|W| / det(C)`.
pub fn mixed_eulerian_quotient(rs: &RootSystem, comp: &Composition) -> Result<Q> {
    comp.check(rs.rank)?;
    let space = quotient_space(rs, rs.rank)?;
    let b: Exps = comp.parts().iter().map(|&c| c as u8).collect();
    let cls = space.reduce_monomial(&b)?;
    Ok(cls.coeff(rs.full_mask()) * volume_normalizer(rs))
}
