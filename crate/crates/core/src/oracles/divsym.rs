//! Divided symmetrization `⟨f⟩ = Σ_{w∈S_n} w(f / ∏_k (t_k − t_{k+1}))` by exact
//! evaluation at generic integer points, and permutohedron volumes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::poly::{Evaluate, LinearFormProduct};
use crate::petring::Composition;
use crate::{factorial, Error, Result, Q};

/// Default seed for generic points.
pub const DEFAULT_SEED: u64 = 1;

/// Upper end of the range generic coordinates are drawn from.
pub const GENERIC_RANGE: i64 = 1_000_000;

/// `n` distinct integers in `[1, 10^6]`, so every difference `t_i − t_j` is nonzero.
pub fn generic_point(n: usize, rng: &mut impl Rng) -> Vec<BigInt> {
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: i64 = rng.gen_range(1..=GENERIC_RANGE);
        if seen.insert(v) {
            out.push(BigInt::from(v));
        }
    }
    out
}

/// The symmetrized rational function of `f` evaluated at `x` (no degree check).
///
/// Every term is brought over the Vandermonde product `V = ∏_{i<j}(x_i − x_j)`,
/// which the chain `∏_k (x_{σ(k)} − x_{σ(k+1)})` divides up to sign.
pub fn divided_symmetrization_at(f: &dyn Evaluate, x: &[BigInt]) -> Result<Q> {
    let n = f.nvars();
    if x.len() != n {
        return Err(Error::Internal(format!(
            "point has {} coordinates, expected {n}",
            x.len()
        )));
    }
    if n == 0 {
        return Ok(Q::new(f.eval_scaled(&[]), f.scale()));
    }
    let mut vand = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = &x[i] - &x[j];
            if d.is_zero() {
                return Err(Error::Internal("evaluation point is not generic".into()));
            }
            vand *= d;
        }
    }
    let total: BigInt = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut perm = vec![first];
            let mut used = vec![false; n];
            used[first] = true;
            let mut acc = BigInt::zero();
            let mut point = Vec::with_capacity(n);
            permute(
                f,
                x,
                &vand,
                &mut perm,
                &mut used,
                BigInt::one(),
                &mut point,
                &mut acc,
            );
            acc
        })
        .sum();
    Ok(Q::new(total, vand * f.scale()))
}

#[allow(clippy::too_many_arguments)]
fn permute(
    f: &dyn Evaluate,
    x: &[BigInt],
    vand: &BigInt,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    chain: BigInt,
    point: &mut Vec<BigInt>,
    acc: &mut BigInt,
) {
    let n = x.len();
    if perm.len() == n {
        point.clear();
        point.extend(perm.iter().map(|&p| x[p].clone()));
        *acc += f.eval_scaled(point) * (vand / &chain);
        return;
    }
    let last = *perm.last().expect("nonempty prefix");
    for next in 0..n {
        if used[next] {
            continue;
        }
        used[next] = true;
        perm.push(next);
        let c = &chain * (&x[last] - &x[next]);
        permute(f, x, vand, perm, used, c, point, acc);
        perm.pop();
        used[next] = false;
    }
}

/// `⟨f⟩` for `f` homogeneous of degree `n − 1`, evaluated at two generic
/// points drawn from `seed` and required to agree.
pub fn divided_symmetrization(f: &dyn Evaluate, seed: u64) -> Result<Q> {
    divided_symmetrization_draws(f, seed, 2)
}

/// `⟨f⟩` evaluated at `draws` generic points that must all agree.
pub fn divided_symmetrization_draws(f: &dyn Evaluate, seed: u64, draws: usize) -> Result<Q> {
    let n = f.nvars();
    let expected = n.saturating_sub(1);
    match f.homogeneous_degree() {
        Some(d) if d == expected => {}
        Some(d) => {
            return Err(Error::Degree {
                degree: d,
                expected,
            })
        }
        None => return Err(Error::NotHomogeneous),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut value: Option<Q> = None;
    for _ in 0..draws.max(1) {
        let x = generic_point(n, &mut rng);
        let v = divided_symmetrization_at(f, &x)?;
        match &value {
            None => value = Some(v),
            Some(prev) if *prev != v => {
                return Err(Error::Internal(format!(
                    "divided symmetrization depends on the point: {prev} vs {v}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(value.expect("at least one draw"))
}

/// `A_c = ⟨∏_i (t_1 + ⋯ + t_i)^{c_i}⟩` for a composition of `n − 1` into `n − 1` parts.
pub fn mixed_eulerian_divsym(comp: &Composition, seed: u64) -> Result<Q> {
    let m = comp.len();
    comp.check(m)?;
    let f = LinearFormProduct::partial_sums(m + 1, comp.parts());
    divided_symmetrization(&f, seed)
}

/// `Vol P_n(a) = ⟨(a_1 t_1 + ⋯ + a_n t_n)^{n−1}⟩ / (n − 1)!`.
pub fn permutohedron_volume(a: &[Q], seed: u64) -> Result<Q> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Usage(
            "permutohedron needs at least one coordinate".into(),
        ));
    }
    if n >= 2 && a.iter().all(|v| v.is_zero()) {
        return Ok(Q::zero());
    }
    let f = LinearFormProduct::new(n, vec![(a.to_vec(), (n - 1) as u32)]);
    Ok(divided_symmetrization(&f, seed)? / Q::from_integer(factorial(n - 1)))
}

/// `Σ_c A_c ∏_i u_i^{c_i} / c_i!` with `u_i = a_i − a_{i+1}`, given a source of `A_c`.
pub fn volume_from_eulerian<F>(a: &[Q], eulerian: F) -> Result<Q>
where
    F: Fn(&Composition) -> Result<Q>,
{
    let n = a.len();
    if n <= 1 {
        return Ok(Q::one());
    }
    let u: Vec<Q> = (0..n - 1).map(|i| &a[i] - &a[i + 1]).collect();
    let mut total = Q::zero();
    for comp in Composition::all(n - 1, n - 1) {
        let mut term = eulerian(&comp)?;
        for (ui, &ci) in u.iter().zip(comp.parts()) {
            term *= num_traits::pow(ui.clone(), ci) / Q::from_integer(factorial(ci));
        }
        total += term;
    }
    Ok(total)
}
