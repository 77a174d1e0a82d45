//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mixed_eulerian::diagrams::{diagram_summands, mixed_eulerian_diagrams};
use mixed_eulerian::mrules::{m_table, PairKind};
use mixed_eulerian::oracles::divsym::divided_symmetrization_draws;
use mixed_eulerian::oracles::weylsum::weylsum_draws;
use mixed_eulerian::oracles::{
    dimension, mixed_eulerian_divsym, mixed_eulerian_quotient, mixed_eulerian_weylsum,
    permutohedron_volume, verify_appendix, volume_from_eulerian, LinearFormProduct,
};
use mixed_eulerian::petring::{Composition, PetersonEngine};
use mixed_eulerian::rootsys::{
    build_root_system, cartan_det, weyl_order, RootSystem, SubsetMask, TypeLabel, DEFAULT_ENUM_CAP,
};
use mixed_eulerian::{binomial, factorial, format_q, qi, Q};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn rs(l: TypeLabel, n: usize) -> RootSystem {
    build_root_system(l, n).expect("valid type")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(took)
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize) -> Composition {
    let mut c = vec![0; n];
    for _ in 0..n {
        c[rng.gen_range(0..n)] += 1;
    }
    Composition(c)
}

/// Closed forms of `|W| / det(C)` per family.
fn table_one(l: TypeLabel, n: usize) -> BigInt {
    let two = |k: usize| BigInt::from(1u64 << k);
    match l {
        TypeLabel::A => factorial(n),
        TypeLabel::B | TypeLabel::C => two(n - 1) * factorial(n),
        TypeLabel::D => two(n - 3) * factorial(n),
        TypeLabel::E => BigInt::from(match n {
            6 => 128u64 * 27 * 5,
            7 => 512 * 81 * 5 * 7,
            _ => 16384 * 243 * 25 * 7,
        }),
        TypeLabel::F => BigInt::from(128 * 9),
        TypeLabel::G => BigInt::from(12),
    }
}

fn all_types_up_to(max_rank: usize) -> Vec<(TypeLabel, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((TypeLabel::A, n));
    }
    for n in 2..=max_rank {
        out.push((TypeLabel::B, n));
        out.push((TypeLabel::C, n));
    }
    for n in 4..=max_rank {
        out.push((TypeLabel::D, n));
    }
    for n in 6..=max_rank.min(8) {
        out.push((TypeLabel::E, n));
    }
    if max_rank >= 4 {
        out.push((TypeLabel::F, 4));
    }
    if max_rank >= 2 {
        out.push((TypeLabel::G, 2));
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a8 = rs(TypeLabel::A, 8);
    let c: Composition = "1,0,2,3,0,0,1,1".parse().map_err(fail)?;
    let values = [
        (
            "reduce",
            PetersonEngine::new(a8.clone())
                .mixed_eulerian(&c)
                .map_err(fail)?,
        ),
        ("diagrams", mixed_eulerian_diagrams(&c).map_err(fail)?),
        ("divsym", mixed_eulerian_divsym(&c, SEED).map_err(fail)?),
        ("quotient", mixed_eulerian_quotient(&a8, &c).map_err(fail)?),
    ];
    for (m, v) in &values {
        ensure(*v == qi(23616), || format!("{m} gave {}", format_q(v)))?;
    }
    let (_, parts) = diagram_summands(&c).map_err(fail)?;
    ensure(parts == vec![qi(14336), qi(4480), qi(4800)], || {
        format!("diagram summands {parts:?}")
    })?;
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!(
        "A8 (1,0,2,3,0,0,1,1) = 23616 by 4 methods, summands 14336+4480+4800, {took:.1?}"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let e6 = rs(TypeLabel::E, 6);
    let c: Composition = "0,1,0,2,3,0".parse().map_err(fail)?;
    let values = [
        (
            "reduce",
            PetersonEngine::new(e6.clone())
                .mixed_eulerian(&c)
                .map_err(fail)?,
        ),
        (
            "weylsum",
            mixed_eulerian_weylsum(&e6, &c, SEED, DEFAULT_ENUM_CAP).map_err(fail)?,
        ),
        ("quotient", mixed_eulerian_quotient(&e6, &c).map_err(fail)?),
    ];
    for (m, v) in &values {
        ensure(*v == qi(34992), || format!("{m} gave {}", format_q(v)))?;
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("E6 (0,1,0,2,3,0) = 34992 by 3 methods, {took:.1?}"))
}

fn criterion_3() -> Outcome {
    let mut types: Vec<(TypeLabel, usize)> = (1..=7).map(|n| (TypeLabel::A, n)).collect();
    types.extend((2..=6).map(|n| (TypeLabel::B, n)));
    types.extend((2..=6).map(|n| (TypeLabel::C, n)));
    types.extend((4..=6).map(|n| (TypeLabel::D, n)));
    types.extend([
        (TypeLabel::E, 6),
        (TypeLabel::E, 7),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
    ]);
    for &(l, n) in &types {
        let r = rs(l, n);
        let ones = Composition(vec![1; n]);
        let expected = Q::from_integer(table_one(l, n));
        let order = weyl_order(&r, DEFAULT_ENUM_CAP);
        let ratio = Q::new(order.value, cartan_det(&r));
        ensure(ratio == expected, || {
            format!("{l}{n}: |W|/det = {ratio}, closed form {expected}")
        })?;
        let mut got = vec![
            (
                "reduce",
                PetersonEngine::new(r.clone())
                    .mixed_eulerian(&ones)
                    .map_err(fail)?,
            ),
            (
                "quotient",
                mixed_eulerian_quotient(&r, &ones).map_err(fail)?,
            ),
        ];
        if (l, n) != (TypeLabel::E, 7) {
            got.push((
                "weylsum",
                mixed_eulerian_weylsum(&r, &ones, SEED, DEFAULT_ENUM_CAP).map_err(fail)?,
            ));
        }
        for (m, v) in got {
            ensure(v == expected, || format!("{l}{n} {m}: {v} != {expected}"))?;
        }
    }
    Ok(format!("{} types, (1,...,1) = |W|/det(C)", types.len()))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        let r = rs(TypeLabel::B, n);
        let engine = PetersonEngine::new(r.clone());
        for k in 0..=n {
            let mut c = vec![0; n];
            c[0] += k;
            c[n - 1] += n - k;
            let c = Composition(c);
            let expected =
                Q::from_integer(binomial(n, k) * factorial(n - k) * BigInt::from(1u64 << k));
            let v = engine.mixed_eulerian(&c).map_err(fail)?;
            ensure(v == expected, || format!("B{n} k={k}: {v} != {expected}"))?;
            let qv = mixed_eulerian_quotient(&r, &c).map_err(fail)?;
            ensure(qv == expected, || {
                format!("B{n} k={k} quotient: {qv} != {expected}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} instances, n <= 6"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut kinds = BTreeSet::new();
    let mut rows = BTreeSet::new();
    let mut triples = 0usize;
    for (l, n) in all_types_up_to(8) {
        for t in m_table(&rs(l, n), true).map_err(fail)? {
            let derived = t.derived.clone().ok_or("missing derived value")?;
            ensure(derived == t.entry.value, || {
                format!(
                    "{l}{n} K={} J={} i={}: table {} derived {}",
                    t.k,
                    t.j,
                    t.i,
                    format_q(&t.entry.value),
                    format_q(&derived)
                )
            })?;
            kinds.insert(t.entry.pair.kind);
            rows.insert((t.entry.pair.kind, t.entry.pair.r, t.entry.i_prime));
            triples += 1;
        }
    }
    let missing: Vec<PairKind> = PairKind::ALL
        .iter()
        .copied()
        .filter(|k| !kinds.contains(k))
        .collect();
    ensure(missing.is_empty(), || {
        format!("pair types never realized: {missing:?}")
    })?;
    let took = within(Duration::from_secs(600), start)?;
    Ok(format!(
        "{triples} triples, {} distinct (pair, r, i') rows, all {} pair types, {took:.1?}",
        rows.len(),
        PairKind::ALL.len()
    ))
}

fn criterion_6() -> Outcome {
    let types = [
        (TypeLabel::B, 4),
        (TypeLabel::C, 4),
        (TypeLabel::D, 5),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
        (TypeLabel::E, 6),
        (TypeLabel::E, 7),
        (TypeLabel::E, 8),
    ];
    let mut summary = Vec::new();
    for (l, n) in types {
        let rep = verify_appendix(&rs(l, n)).map_err(fail)?;
        ensure(!rep.checks.is_empty(), || format!("{l}{n}: no identities"))?;
        ensure(rep.all_pass(), || rep.to_string())?;
        summary.push(format!("{l}{n} {}/{}", rep.passed(), rep.checks.len()));
    }
    Ok(summary.join(", "))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let types = all_types_up_to(5);
    for k in 0..200 {
        let (l, n) = types[rng.gen_range(0..types.len())];
        let r = rs(l, n);
        let c = random_composition(&mut rng, n);
        let a = PetersonEngine::new(r.clone())
            .mixed_eulerian(&c)
            .map_err(fail)?;
        let b = mixed_eulerian_weylsum(&r, &c, SEED + k, DEFAULT_ENUM_CAP).map_err(fail)?;
        let q = mixed_eulerian_quotient(&r, &c).map_err(fail)?;
        ensure(a == b && b == q, || {
            format!("{l}{n} {c}: reduce {a}, weylsum {b}, quotient {q}")
        })?;
    }
    for k in 0..100 {
        let n = rng.gen_range(2..=8);
        let c = random_composition(&mut rng, n - 1);
        let a = PetersonEngine::new(rs(TypeLabel::A, n - 1))
            .mixed_eulerian(&c)
            .map_err(fail)?;
        let d = mixed_eulerian_diagrams(&c).map_err(fail)?;
        let s = mixed_eulerian_divsym(&c, SEED + k).map_err(fail)?;
        ensure(a == d && d == s, || {
            format!("A{} {c}: reduce {a}, diagrams {d}, divsym {s}", n - 1)
        })?;
    }
    Ok("200 instances rank <= 5 (reduce = weylsum = quotient), 100 type A instances S_n with n <= 8 (reduce = diagrams = divsym)".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut notes = Vec::new();

    // Generic-point independence with 10 draws per instance.
    for n in 2..=6 {
        let c = random_composition(&mut rng, n);
        let f = LinearFormProduct::partial_sums(n + 1, c.parts());
        divided_symmetrization_draws(&f, SEED, 10).map_err(|e| format!("divsym A{n} {c}: {e}"))?;
    }
    for (l, n) in [
        (TypeLabel::B, 3),
        (TypeLabel::D, 4),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
        (TypeLabel::A, 5),
    ] {
        let c = random_composition(&mut rng, n);
        weylsum_draws(&rs(l, n), &c, SEED, DEFAULT_ENUM_CAP, 10)
            .map_err(|e| format!("weylsum {l}{n} {c}: {e}"))?;
    }
    notes.push("generic points (10 draws)");

    // Order independence, 10 random orders per instance.
    for (l, n) in all_types_up_to(6)
        .into_iter()
        .chain([(TypeLabel::E, 6), (TypeLabel::E, 7)])
    {
        let engine = PetersonEngine::new(rs(l, n));
        for _ in 0..3 {
            let c = random_composition(&mut rng, n);
            let base = engine.mixed_eulerian(&c).map_err(fail)?;
            for _ in 0..10 {
                let mut order = c.multiset();
                order.shuffle(&mut rng);
                let v = engine.mixed_eulerian_ordered(&order).map_err(fail)?;
                ensure(v == base, || {
                    format!("{l}{n} order {order:?}: {v} != {base}")
                })?;
            }
        }
    }
    notes.push("multiplication order (10 orders each)");

    // Quotient dimensions.
    for (l, n) in all_types_up_to(8) {
        let r = rs(l, n);
        for d in 0..=n {
            let dim = dimension(&r, d).map_err(fail)?;
            ensure(BigInt::from(dim) == binomial(n, d), || {
                format!("{l}{n} degree {d}: dimension {dim}")
            })?;
        }
    }
    notes.push("quotient dimension = C(n,d) for rank <= 8");

    // Square-free closure: full tables never hit the internal closure error.
    let mut evaluated = 0;
    for (l, n) in all_types_up_to(5) {
        let engine = PetersonEngine::new(rs(l, n));
        for c in Composition::all(n, n) {
            engine
                .mixed_eulerian(&c)
                .map_err(|e| format!("{l}{n} {c}: {e}"))?;
            evaluated += 1;
        }
    }
    notes.push("square-free closure");

    // Non-negativity of Peterson structure constants.
    let mut products = 0;
    for (l, n) in all_types_up_to(4) {
        let engine = PetersonEngine::new(rs(l, n));
        for i in 1u64..1 << n {
            for k in 1u64..1 << n {
                let (im, km) = (SubsetMask(i), SubsetMask(k));
                for (j, c) in engine.peterson_product(im, km).map_err(fail)? {
                    ensure(!c.is_negative(), || {
                        format!("{l}{n} I={im} K={km} J={j}: {c}")
                    })?;
                }
                products += 1;
            }
        }
    }
    notes.push("peterson products >= 0");
    Ok(format!(
        "{} ({evaluated} table entries, {products} products)",
        notes.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut count = 0;
    for n in 1..=6 {
        let engine = (n >= 2).then(|| PetersonEngine::new(rs(TypeLabel::A, n - 1)));
        for _ in 0..20 {
            let a: Vec<Q> = (0..n)
                .map(|_| {
                    Q::new(
                        rng.gen_range(-30i64..=30).into(),
                        rng.gen_range(1i64..=12).into(),
                    )
                })
                .collect();
            let direct = permutohedron_volume(&a, rng.gen()).map_err(fail)?;
            let expansion =
                volume_from_eulerian(&a, |c| engine.as_ref().expect("n >= 2").mixed_eulerian(c))
                    .map_err(fail)?;
            ensure(direct == expansion, || {
                format!("a = {a:?}: {direct} != {expansion}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} random rational vectors, n <= 6"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden A8 value by four methods", criterion_1),
        ("golden E6 value by three methods", criterion_2),
        ("(1,...,1) sweep equals |W|/det(C)", criterion_3),
        ("B_n closed form", criterion_4),
        (
            "structure constants re-derived by Billey's formula",
            criterion_5,
        ),
        (
            "multiplication identities by quotient reduction",
            criterion_6,
        ),
        ("oracle equivalence on random compositions", criterion_7),
        ("invariant suites", criterion_8),
        ("permutohedron volume expansion", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} [{detail}] ({took:.1?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {name} [{e}] ({took:.1?})", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
