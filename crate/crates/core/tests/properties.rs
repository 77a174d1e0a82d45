//! Invariants checked on random instances and exhaustive small sweeps.

use mixed_eulerian::diagrams::mixed_eulerian_diagrams;
use mixed_eulerian::mrules::m_table;
use mixed_eulerian::oracles::divsym::divided_symmetrization_draws;
use mixed_eulerian::oracles::weylsum::weylsum_draws;
use mixed_eulerian::oracles::LinearFormProduct;
use mixed_eulerian::oracles::{
    dimension, divided_symmetrization_at, mixed_eulerian_divsym, mixed_eulerian_quotient,
    mixed_eulerian_weylsum, permutohedron_volume, quotient_reduce, volume_from_eulerian,
    RationalPoly, ScaledPoly,
};
use mixed_eulerian::petring::{Composition, PetersonEngine, SquareFreeClass};
use mixed_eulerian::rootsys::{
    build_root_system, RootSystem, SubsetMask, TypeLabel, DEFAULT_ENUM_CAP,
};
use mixed_eulerian::{binomial, Q};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const SMALL_TYPES: [(TypeLabel, usize); 14] = [
    (TypeLabel::A, 1),
    (TypeLabel::A, 2),
    (TypeLabel::A, 3),
    (TypeLabel::A, 4),
    (TypeLabel::A, 5),
    (TypeLabel::B, 2),
    (TypeLabel::B, 3),
    (TypeLabel::B, 5),
    (TypeLabel::C, 3),
    (TypeLabel::C, 4),
    (TypeLabel::D, 4),
    (TypeLabel::D, 5),
    (TypeLabel::F, 4),
    (TypeLabel::G, 2),
];

fn rs(l: TypeLabel, n: usize) -> RootSystem {
    build_root_system(l, n).unwrap()
}

/// Composition of `n` into `n` parts from `n` ball positions.
fn comp_from_slots(n: usize, slots: &[usize]) -> Composition {
    let mut c = vec![0; n];
    for &s in &slots[..n] {
        c[s % n] += 1;
    }
    Composition(c)
}

fn terms(c: &SquareFreeClass) -> Vec<(SubsetMask, Q)> {
    c.terms().map(|(m, v)| (*m, v.clone())).collect()
}

fn class_to_poly(c: &SquareFreeClass, n: usize) -> RationalPoly {
    let mut p = RationalPoly::zero(n);
    for (m, v) in c.terms() {
        let mut e = vec![0u32; n];
        for x in m.vertices() {
            e[x - 1] = 1;
        }
        p.add_term(e, v.clone());
    }
    p
}

fn random_homogeneous(n: usize, d: usize, raw: &[(usize, i64)]) -> RationalPoly {
    let mut p = RationalPoly::zero(n);
    for (k, &(seed, coeff)) in raw.iter().enumerate() {
        let mut e = vec![0u32; n];
        let mut s = seed.wrapping_add(k * 7919);
        for _ in 0..d {
            e[s % n] += 1;
            s = s / n + 31 * (s % 97) + 1;
        }
        p.add_term(e, Q::from_integer(BigInt::from(coeff)));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_weylsum_quotient_agree(t in 0..SMALL_TYPES.len(), slots in prop::collection::vec(0usize..64, 8), seed in 0u64..1000) {
        let (l, n) = SMALL_TYPES[t];
        let r = rs(l, n);
        let c = comp_from_slots(n, &slots);
        let reduce = PetersonEngine::new(r.clone()).mixed_eulerian(&c).unwrap();
        prop_assert_eq!(&reduce, &mixed_eulerian_weylsum(&r, &c, seed, DEFAULT_ENUM_CAP).unwrap());
        prop_assert_eq!(&reduce, &mixed_eulerian_quotient(&r, &c).unwrap());
    }

    #[test]
    fn type_a_reduction_diagrams_divsym_agree(n in 1usize..=6, slots in prop::collection::vec(0usize..64, 8), seed in 0u64..1000) {
        let r = rs(TypeLabel::A, n);
        let c = comp_from_slots(n, &slots);
        let reduce = PetersonEngine::new(r).mixed_eulerian(&c).unwrap();
        prop_assert_eq!(&reduce, &mixed_eulerian_diagrams(&c).unwrap());
        prop_assert_eq!(&reduce, &mixed_eulerian_divsym(&c, seed).unwrap());
        prop_assert!(reduce.is_integer() && reduce.is_positive());
    }

    #[test]
    fn multiplication_order_does_not_matter(t in 0..SMALL_TYPES.len(), slots in prop::collection::vec(0usize..64, 8), perm in prop::collection::vec(any::<u32>(), 8)) {
        let (l, n) = SMALL_TYPES[t];
        let engine = PetersonEngine::new(rs(l, n));
        let c = comp_from_slots(n, &slots);
        let mut order = c.multiset();
        let mut keyed: Vec<(u32, usize)> = perm.iter().copied().zip(order.iter().copied()).collect();
        keyed.sort();
        order = keyed.into_iter().map(|(_, v)| v).collect();
        prop_assert_eq!(engine.mixed_eulerian(&c).unwrap(), engine.mixed_eulerian_ordered(&order).unwrap());
    }

    #[test]
    fn generic_point_independence(n in 1usize..=5, slots in prop::collection::vec(0usize..64, 8), seed in any::<u64>()) {
        let c = comp_from_slots(n, &slots);
        let f = LinearFormProduct::partial_sums(n + 1, c.parts());
        prop_assert_eq!(divided_symmetrization_draws(&f, seed, 4).unwrap(), divided_symmetrization_draws(&f, seed ^ 0xabcdef, 4).unwrap());
        let r = rs(TypeLabel::B, n.max(2));
        let cb = comp_from_slots(r.rank, &slots);
        prop_assert_eq!(weylsum_draws(&r, &cb, seed, DEFAULT_ENUM_CAP, 3).unwrap(), weylsum_draws(&r, &cb, seed.wrapping_add(1), DEFAULT_ENUM_CAP, 3).unwrap());
    }

    #[test]
    fn low_degree_symmetrization_vanishes(n in 2usize..=6, d in 0usize..5, raw in prop::collection::vec((any::<usize>(), -9i64..=9), 1..5), pts in prop::collection::vec(1i64..1_000_000, 6)) {
        prop_assume!(d + 1 < n);
        let mut x: Vec<i64> = pts[..n].to_vec();
        x.sort();
        x.dedup();
        prop_assume!(x.len() == n);
        let p = random_homogeneous(n, d, &raw);
        let xb: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        prop_assert!(divided_symmetrization_at(&ScaledPoly::from(&p), &xb).unwrap().is_zero());
    }

    #[test]
    fn quotient_reduction_is_multiplicative(t in 0..SMALL_TYPES.len(), d1 in 1usize..4, d2 in 1usize..4, a in prop::collection::vec((any::<usize>(), -5i64..=5), 1..4), b in prop::collection::vec((any::<usize>(), -5i64..=5), 1..4)) {
        let (l, n) = SMALL_TYPES[t];
        let r = rs(l, n);
        let p = random_homogeneous(n, d1, &a);
        let q = random_homogeneous(n, d2, &b);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let direct = quotient_reduce(&r, &(&p * &q)).unwrap();
        let rp = class_to_poly(&quotient_reduce(&r, &p).unwrap(), n);
        let via = if rp.is_zero() { SquareFreeClass::zero(d1 + d2) } else { quotient_reduce(&r, &(&rp * &q)).unwrap() };
        prop_assert_eq!(terms(&direct), terms(&via));
    }

    #[test]
    fn permutohedron_volume_expansion(n in 1usize..=5, nums in prop::collection::vec(-20i64..=20, 5), dens in prop::collection::vec(1i64..=7, 5), seed in 0u64..100) {
        let a: Vec<Q> = (0..n).map(|k| Q::new(nums[k].into(), dens[k].into())).collect();
        let engine = (n >= 2).then(|| PetersonEngine::new(rs(TypeLabel::A, n - 1)));
        let expansion = volume_from_eulerian(&a, |c| engine.as_ref().unwrap().mixed_eulerian(c)).unwrap();
        prop_assert_eq!(permutohedron_volume(&a, seed).unwrap(), expansion);
    }
}

#[test]
fn quotient_dimensions_are_binomial() {
    let mut types = Vec::new();
    for n in 1..=8 {
        types.push((TypeLabel::A, n));
    }
    for n in 2..=8 {
        types.push((TypeLabel::B, n));
        types.push((TypeLabel::C, n));
    }
    for n in 4..=8 {
        types.push((TypeLabel::D, n));
    }
    types.extend([
        (TypeLabel::E, 6),
        (TypeLabel::E, 7),
        (TypeLabel::E, 8),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
    ]);
    for (l, n) in types {
        let r = rs(l, n);
        for d in 0..=n {
            assert_eq!(
                BigInt::from(dimension(&r, d).unwrap()),
                binomial(n, d),
                "{l}{n} degree {d}"
            );
        }
        assert_eq!(dimension(&r, n + 1).unwrap(), 0, "{l}{n}");
    }
}

#[test]
fn peterson_product_coefficients_nonnegative() {
    let types = [
        (TypeLabel::A, 2),
        (TypeLabel::A, 3),
        (TypeLabel::A, 4),
        (TypeLabel::B, 3),
        (TypeLabel::B, 4),
        (TypeLabel::C, 3),
        (TypeLabel::C, 4),
        (TypeLabel::D, 4),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
    ];
    for (l, n) in types {
        let engine = PetersonEngine::new(rs(l, n));
        for i in 1u64..1 << n {
            for k in 1u64..1 << n {
                let (im, km) = (SubsetMask(i), SubsetMask(k));
                if im.len() + km.len() > n {
                    continue;
                }
                for (j, c) in engine.peterson_product(im, km).unwrap() {
                    assert!(
                        !c.is_negative(),
                        "{l}{n}: I={im} K={km} J={j} coefficient {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn square_free_closure_holds_on_full_tables() {
    for (l, n) in SMALL_TYPES {
        let engine = PetersonEngine::new(rs(l, n));
        for c in Composition::all(n, n) {
            let v = engine.mixed_eulerian(&c).unwrap();
            assert!(v.is_positive() || v.is_zero(), "{l}{n} {c}");
        }
    }
}

#[test]
fn table_derivation_matches_lookup_small_ranks() {
    for (l, n) in SMALL_TYPES.into_iter().chain([(TypeLabel::E, 6)]) {
        for row in m_table(&rs(l, n), true).unwrap() {
            assert!(row.agrees(), "{l}{n}: K={} J={} i={}", row.k, row.j, row.i);
        }
    }
}
