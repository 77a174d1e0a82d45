//! The multiplication identities `ϖ_i · ∏_{k∈K} ϖ_k = …` stated per type,
//! checked by reduction in the quotient ring.

use std::fmt;

use num_traits::Zero;

use super::quotient::quotient_space;
use crate::petring::SquareFreeClass;
use crate::rootsys::{RootSystem, SubsetMask, TypeLabel};
use crate::{q, qi, Result, Q};

/// One identity `ϖ_i · ∏_K ϖ = rhs` with its reduced left side.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub i: usize,
    pub k: SubsetMask,
    pub expected: SquareFreeClass,
    pub reduced: SquareFreeClass,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.reduced
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: w{} * {} = {} (reduced {})",
            if self.holds() { "ok  " } else { "FAIL" },
            self.label,
            self.i,
            self.k,
            self.expected,
            self.reduced
        )
    }
}

/// All identities checked for one root system.
#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub type_name: String,
    pub checks: Vec<IdentityCheck>,
}

impl AppendixReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.holds()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.checks.len()
    }
}

impl fmt::Display for AppendixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}: {}/{} identities hold",
            self.type_name,
            self.passed(),
            self.checks.len()
        )
    }
}

/// `(i, K, [(J, coefficient)])` with vertices outside `1..=n` meaning the term vanishes.
struct Identity {
    label: String,
    i: usize,
    k: Vec<usize>,
    rhs: Vec<(Vec<usize>, Q)>,
}

fn interval(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `[a − 1, b]` with the `ϖ_0 = 0` convention.
fn extend_left(a: usize, b: usize) -> Option<Vec<usize>> {
    (a >= 2).then(|| interval(a - 1, b))
}

fn term(set: Option<Vec<usize>>, c: Q, out: &mut Vec<(Vec<usize>, Q)>) {
    if let Some(s) = set {
        if !c.is_zero() {
            out.push((s, c));
        }
    }
}

fn type_a(n: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for i in a..=b {
                let den = (b - a + 2) as i64;
                let mut rhs = Vec::new();
                term(extend_left(a, b), q((b - i + 1) as i64, den), &mut rhs);
                term(
                    (b < n).then(|| interval(a, b + 1)),
                    q((i - a + 1) as i64, den),
                    &mut rhs,
                );
                out.push(Identity {
                    label: format!("A a={a} i={i} b={b}"),
                    i,
                    k: interval(a, b),
                    rhs,
                });
            }
        }
    }
    out
}

/// The two families for `B_n`, `C_n`, `D_n` on `K = [a, n − 1]` and `K = [a, n]`.
fn classical(label: TypeLabel, n: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    let nn = n as i64;
    let a_max = if label == TypeLabel::D { n - 2 } else { n - 1 };
    for a in 1..=a_max {
        let aa = a as i64;
        for i in a..n {
            let ii = i as i64;
            let second = match label {
                TypeLabel::B => q(2 * (ii - aa + 1), nn - aa + 1),
                TypeLabel::C => q(ii - aa + 1, nn - aa + 1),
                _ if i <= n - 2 => q(2 * (ii - aa + 1), nn - aa + 1),
                _ => q(nn - aa - 1, nn - aa + 1),
            };
            let mut rhs = Vec::new();
            term(extend_left(a, n - 1), q(nn - ii, nn - aa + 1), &mut rhs);
            term(Some(interval(a, n)), second, &mut rhs);
            out.push(Identity {
                label: format!("{label}-1 a={a} i={i}"),
                i,
                k: interval(a, n - 1),
                rhs,
            });
        }
    }
    let a2_max = if label == TypeLabel::D { n - 2 } else { n };
    for a in 1..=a2_max {
        for i in a..=n {
            let c = match label {
                TypeLabel::B if i == n => q(1, 2),
                TypeLabel::D if i >= n - 1 => q(1, 2),
                _ => qi(1),
            };
            let mut rhs = Vec::new();
            term(extend_left(a, n), c, &mut rhs);
            out.push(Identity {
                label: format!("{label}-2 a={a} i={i}"),
                i,
                k: interval(a, n),
                rhs,
            });
        }
    }
    out
}

/// Exceptional families: `(name, K, [(i, numerator, denominator)])`, all landing on the full product.
type ExceptionalFamily = (&'static str, &'static [usize], &'static [(usize, i64, i64)]);

const G2_FAMILIES: &[ExceptionalFamily] = &[
    ("G2-(i)", &[1], &[(1, 1, 2)]),
    ("G2-(ii)", &[2], &[(2, 3, 2)]),
];

const F4_FAMILIES: &[ExceptionalFamily] = &[
    ("F4-1", &[1, 2, 3], &[(1, 1, 1), (2, 2, 1), (3, 3, 2)]),
    ("F4-2", &[2, 3, 4], &[(2, 3, 2), (3, 1, 1), (4, 1, 2)]),
];

const E6_FAMILIES: &[ExceptionalFamily] = &[
    (
        "E6-1",
        &[1, 3, 4, 5, 6],
        &[(1, 1, 2), (3, 1, 1), (4, 3, 2), (5, 1, 1), (6, 1, 2)],
    ),
    (
        "E6-2",
        &[1, 2, 3, 4, 5],
        &[(1, 1, 2), (2, 3, 4), (3, 1, 1), (4, 3, 2), (5, 5, 4)],
    ),
];

const E7_FAMILIES: &[ExceptionalFamily] = &[
    (
        "E7-1",
        &[1, 3, 4, 5, 6, 7],
        &[
            (1, 4, 7),
            (3, 8, 7),
            (4, 12, 7),
            (5, 9, 7),
            (6, 6, 7),
            (7, 3, 7),
        ],
    ),
    (
        "E7-2",
        &[2, 3, 4, 5, 6, 7],
        &[
            (2, 1, 1),
            (3, 3, 2),
            (4, 2, 1),
            (5, 3, 2),
            (6, 1, 1),
            (7, 1, 2),
        ],
    ),
    (
        "E7-3",
        &[1, 2, 3, 4, 5, 6],
        &[
            (1, 2, 3),
            (2, 1, 1),
            (3, 4, 3),
            (4, 2, 1),
            (5, 5, 3),
            (6, 4, 3),
        ],
    ),
];

const E8_FAMILIES: &[ExceptionalFamily] = &[
    (
        "E8-1",
        &[1, 3, 4, 5, 6, 7, 8],
        &[
            (1, 5, 8),
            (3, 5, 4),
            (4, 15, 8),
            (5, 3, 2),
            (6, 9, 8),
            (7, 3, 4),
            (8, 3, 8),
        ],
    ),
    (
        "E8-2",
        &[2, 3, 4, 5, 6, 7, 8],
        &[
            (2, 5, 4),
            (3, 7, 4),
            (4, 5, 2),
            (5, 2, 1),
            (6, 3, 2),
            (7, 1, 1),
            (8, 1, 2),
        ],
    ),
    (
        "E8-3",
        &[1, 2, 3, 4, 5, 6, 7],
        &[
            (1, 1, 1),
            (2, 3, 2),
            (3, 2, 1),
            (4, 3, 1),
            (5, 5, 2),
            (6, 2, 1),
            (7, 3, 2),
        ],
    ),
];

fn exceptional(families: &[ExceptionalFamily], n: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for (name, k, lines) in families {
        for &(i, num, den) in lines.iter() {
            out.push(Identity {
                label: format!("{name} i={i}"),
                i,
                k: k.to_vec(),
                rhs: vec![(interval(1, n), q(num, den))],
            });
        }
    }
    out
}

fn identities(rs: &RootSystem) -> Vec<Identity> {
    let n = rs.rank;
    match rs.type_label {
        TypeLabel::A => type_a(n),
        TypeLabel::B | TypeLabel::C if n >= 2 => classical(rs.type_label, n),
        TypeLabel::D => classical(TypeLabel::D, n),
        TypeLabel::G => exceptional(G2_FAMILIES, n),
        TypeLabel::F => exceptional(F4_FAMILIES, n),
        TypeLabel::E => match n {
            6 => exceptional(E6_FAMILIES, n),
            7 => exceptional(E7_FAMILIES, n),
            _ => exceptional(E8_FAMILIES, n),
        },
        _ => Vec::new(),
    }
}

/// Number of identities listed for a root system.
pub fn identity_count(rs: &RootSystem) -> usize {
    identities(rs).len()
}

/// Reduces the left side of every identity listed for the type and compares.
pub fn verify_appendix(rs: &RootSystem) -> Result<AppendixReport> {
    let ids = identities(rs);
    let top = ids.iter().map(|id| id.k.len() + 1).max().unwrap_or(0);
    let space = quotient_space(rs, top)?;
    let mut checks = Vec::with_capacity(ids.len());
    for id in ids {
        let mut b = vec![0u8; rs.rank];
        for &v in &id.k {
            b[v - 1] += 1;
        }
        b[id.i - 1] += 1;
        let reduced = space.reduce_monomial(&b)?;
        let mut expected = SquareFreeClass::zero(id.k.len() + 1);
        for (set, c) in &id.rhs {
            expected.add_term(SubsetMask::from_vertices(set), c.clone());
        }
        checks.push(IdentityCheck {
            label: id.label,
            i: id.i,
            k: SubsetMask::from_vertices(&id.k),
            expected,
            reduced,
        });
    }
    Ok(AppendixReport {
        type_name: rs.cartan_type().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    #[test]
    fn counts() {
        let c = |l, n| identity_count(&build_root_system(l, n).unwrap());
        assert_eq!(c(TypeLabel::G, 2), 2);
        assert_eq!(c(TypeLabel::F, 4), 6);
        assert_eq!(c(TypeLabel::E, 6), 10);
        assert_eq!(c(TypeLabel::E, 7), 18);
        assert_eq!(c(TypeLabel::E, 8), 21);
        assert_eq!(c(TypeLabel::B, 4), 6 + 10);
    }

    #[test]
    fn small_types_pass() {
        for (l, n) in [
            (TypeLabel::A, 4),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::G, 2),
            (TypeLabel::D, 4),
        ] {
            let rep = verify_appendix(&build_root_system(l, n).unwrap()).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
    }
}
