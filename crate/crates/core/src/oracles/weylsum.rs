//! Mixed `Φ`-Eulerian numbers from the Weyl-sum volume formula:
//! `A_c = Σ_{w∈W} ∏_i (t, w ϖ_i)^{c_i} / ∏_j (t, w α_j)` for regular `t`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::divsym::GENERIC_RANGE;
use crate::linalg::{denom_lcm, invert, to_rational};
use crate::petring::Composition;
use crate::rootsys::{cartan_det, orbit_fold, weyl_order_formula, RootSystem};
use crate::{Error, Result, Q};

/// Integer data for evaluating the sum over the orbit of `t` in weight coordinates.
struct WeylSumData {
    n: usize,
    /// `L · (α_j, α_j) / 2`.
    dj: Vec<i64>,
    /// `det(C) · (C^{-1})_{ki} · dj_i`, so `(x, ϖ_i) = Σ_k x_k gd[k][i] / (det · L)`.
    gd: Vec<Vec<i64>>,
    det: BigInt,
}

impl WeylSumData {
    fn new(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank;
        let half = rs.half_norms();
        let l = denom_lcm(half.iter());
        let to_i64 = |v: &Q| -> Result<i64> {
            if !v.is_integer() {
                return Err(Error::Internal("non-integral scaled entry".into()));
            }
            v.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Internal("scaled entry overflows".into()))
        };
        let dj = half
            .iter()
            .map(|h| to_i64(&(h * Q::from_integer(l.clone()))))
            .collect::<Result<Vec<_>>>()?;
        let det = cartan_det(rs);
        let cinv = invert(&to_rational(&rs.cartan))
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        let detq = Q::from_integer(det.clone());
        let mut gd = vec![vec![0i64; n]; n];
        for k in 0..n {
            for i in 0..n {
                gd[k][i] = to_i64(&(&cinv[k][i] * &detq))? * dj[i];
            }
        }
        Ok(WeylSumData { n, dj, gd, det })
    }

    /// `Π_{β>0} L (t, β)` for `t` in weight coordinates.
    fn dfull(&self, rs: &RootSystem, t: &[i64]) -> BigInt {
        rs.positive_roots.iter().fold(BigInt::from(1), |acc, beta| {
            let s: i128 = beta
                .iter()
                .zip(t)
                .zip(&self.dj)
                .map(|((&b, &tj), &d)| b as i128 * tj as i128 * d as i128)
                .sum();
            acc * BigInt::from(s)
        })
    }
}

/// The Weyl sum at one regular dominant `t` given in weight coordinates.
pub fn weylsum_at(rs: &RootSystem, comp: &Composition, t: &[i64]) -> Result<Q> {
    comp.check(rs.rank)?;
    if t.len() != rs.rank || t.iter().any(|&v| v <= 0) {
        return Err(Error::Internal("t must be regular dominant".into()));
    }
    let data = WeylSumData::new(rs)?;
    let dfull = data.dfull(rs, t);
    let c = comp.parts();
    let total = orbit_fold(
        rs,
        t,
        BigInt::zero,
        |acc, x| {
            let mut num = BigInt::from(1);
            for (i, &ci) in c.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                let s: i128 = (0..data.n)
                    .map(|k| x[k] as i128 * data.gd[k][i] as i128)
                    .sum();
                num *= num_traits::pow(BigInt::from(s), ci);
            }
            let den = (0..data.n).fold(BigInt::from(1), |d, j| {
                d * BigInt::from(x[j] as i128 * data.dj[j] as i128)
            });
            acc + num * (&dfull / den)
        },
        |a, b| a + b,
    );
    let denom = num_traits::pow(data.det.clone(), rs.rank) * dfull;
    Ok(Q::new(total, denom))
}

/// `A^Φ_c` from the Weyl sum, evaluated at two random regular `t` that must agree.
pub fn mixed_eulerian_weylsum(
    rs: &RootSystem,
    comp: &Composition,
    seed: u64,
    cap: u64,
) -> Result<Q> {
    weylsum_draws(rs, comp, seed, cap, 2)
}

/// As [`mixed_eulerian_weylsum`] with a chosen number of independent draws.
pub fn weylsum_draws(
    rs: &RootSystem,
    comp: &Composition,
    seed: u64,
    cap: u64,
    draws: usize,
) -> Result<Q> {
    comp.check(rs.rank)?;
    let order = weyl_order_formula(rs.type_label, rs.rank);
    if order > BigInt::from(cap) {
        return Err(Error::OverCap {
            order: order.to_string(),
            cap,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut value: Option<Q> = None;
    for _ in 0..draws.max(1) {
        let t: Vec<i64> = (0..rs.rank)
            .map(|_| rng.gen_range(1..=GENERIC_RANGE))
            .collect();
        let v = weylsum_at(rs, comp, &t)?;
        match &value {
            None => value = Some(v),
            Some(prev) if *prev != v => {
                return Err(Error::Internal(format!(
                    "Weyl sum depends on t: {prev} vs {v}"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(value.expect("at least one draw"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;
    use crate::rootsys::{build_root_system, TypeLabel, DEFAULT_ENUM_CAP};

    #[test]
    fn g2_values() {
        let g2 = build_root_system(TypeLabel::G, 2).unwrap();
        let v = |s: &str| {
            mixed_eulerian_weylsum(&g2, &s.parse().unwrap(), 5, DEFAULT_ENUM_CAP).unwrap()
        };
        assert_eq!(v("1,1"), qi(12));
        assert_eq!(v("2,0"), qi(6));
        assert_eq!(v("0,2"), qi(18));
    }

    #[test]
    fn a2_hand_value() {
        let a2 = build_root_system(TypeLabel::A, 2).unwrap();
        let v = mixed_eulerian_weylsum(&a2, &"1,1".parse().unwrap(), 5, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(v, qi(2));
    }

    #[test]
    fn cap_is_enforced() {
        let e8 = build_root_system(TypeLabel::E, 8).unwrap();
        let c: Composition = "1,1,1,1,1,1,1,1".parse().unwrap();
        assert!(matches!(
            mixed_eulerian_weylsum(&e8, &c, 1, DEFAULT_ENUM_CAP),
            Err(Error::OverCap { .. })
        ));
    }
}
