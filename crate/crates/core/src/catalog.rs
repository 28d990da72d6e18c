//! Built-in fixtures with their known invariants: the transposition
//! quandles, the 3-cycle quandle in A₄ and its sign extension, dihedral
//! quandles, and the small affine quandles used throughout the tests.

use crate::coeff::{CoefficientGroup, Value};
use crate::cohomology::Cocycle;
use crate::perm::Perm;
use crate::quandle::{conjugation_quandle, dihedral_table, extension_by_cocycle, Quandle};

/// Invariants a fixture is expected to reproduce, where known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub fx_order: Option<usize>,
    pub n0_order: Option<usize>,
    pub n0_factors: Option<Vec<u64>>,
    pub h2q_factors: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub quandle: Quandle,
    pub expected: Expected,
    pub note: String,
}

/// The conjugacy class of transpositions in `S_n` as permutations, in the
/// element order of the quandle table (lexicographic by image tuple).
pub fn transposition_class(n: usize) -> Vec<Perm> {
    let mut class = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            class.push(Perm::transposition(n, i, j));
        }
    }
    class.sort();
    class
}

/// The quandle of transpositions in `S_n`, `n ≥ 3`. Elements are ordered
/// lexicographically by image tuple, which puts the transposition of the
/// two largest points at index 0.
pub fn transpositions(n: usize) -> Fixture {
    assert!(n >= 3);
    let gens = vec![
        Perm::transposition(n, 0, 1),
        Perm::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]),
    ];
    let quandle = conjugation_quandle(&gens, &Perm::transposition(n, 0, 1), 100_000)
        .expect("transposition classes stay small");
    let factorial = |k: usize| (1..=k).product::<usize>();
    let expected = if n >= 4 {
        Expected {
            fx_order: Some(factorial(n)),
            n0_order: Some(factorial(n - 2)),
            n0_factors: Some(vec![2]),
            h2q_factors: Some(vec![2]),
        }
    } else {
        Expected {
            fx_order: Some(6),
            n0_order: Some(1),
            n0_factors: Some(vec![]),
            h2q_factors: Some(vec![]),
        }
    };
    Fixture {
        name: format!("transpositions_s{n}"),
        quandle,
        expected,
        note: format!("conjugacy class of transpositions in S_{n}"),
    }
}

/// The sign 2-cocycle on the transposition quandle, in additive `ℤ₂` form:
/// for columns indexed by the transposition `(i j)` with `i < j`, the entry
/// at row `σ` is 0 when `σ(i) < σ(j)` and 1 otherwise.
pub fn chi_cocycle(n: usize) -> Cocycle {
    let fixture = transpositions(n);
    let class = transposition_class(n);
    assert_eq!(class.len(), fixture.quandle.size());
    let moved_pair = |p: &Perm| -> (usize, usize) {
        let moved: Vec<usize> = (0..n).filter(|&k| p.apply(k) != k).collect();
        (moved[0], moved[1])
    };
    let m = fixture.quandle.size();
    let mut values = Vec::with_capacity(m * m);
    for sigma in &class {
        for tau in &class {
            let (i, j) = moved_pair(tau);
            let v = if sigma.apply(i) < sigma.apply(j) { 0 } else { 1 };
            values.push(Value::Mod(v));
        }
    }
    Cocycle::from_values(&fixture.quandle, CoefficientGroup::Cyclic(2), values)
}

/// The 3-cycle quandle in A₄, hard-coded from its translation permutations
/// to guard the constructors.
pub fn a4_three_cycles() -> Fixture {
    let table = vec![
        vec![0, 2, 3, 1],
        vec![3, 1, 0, 2],
        vec![1, 3, 2, 0],
        vec![2, 0, 1, 3],
    ];
    Fixture {
        name: "a4_three_cycles".into(),
        quandle: Quandle::from_table(table).expect("fixture table is a quandle"),
        expected: Expected {
            fx_order: None,
            n0_order: None,
            n0_factors: Some(vec![2]),
            h2q_factors: Some(vec![2]),
        },
        note: "conjugacy class of 3-cycles in A_4".into(),
    }
}

/// The ±1 cocycle on the 3-cycle quandle, additive form: 0 when `x = 0`,
/// `y = 0`, or `x = y`; 1 otherwise.
pub fn a4_sign_cocycle() -> Cocycle {
    let q = a4_three_cycles().quandle;
    let mut values = Vec::with_capacity(16);
    for x in 0..4 {
        for y in 0..4 {
            let v = if x == 0 || y == 0 || x == y { 0 } else { 1 };
            values.push(Value::Mod(v));
        }
    }
    Cocycle::from_values(&q, CoefficientGroup::Cyclic(2), values)
}

/// The size-8 extension of the 3-cycle quandle by the sign cocycle. The
/// pair `(x, i)` has index `2x + i`.
pub fn a4_extension() -> Fixture {
    let base = a4_three_cycles().quandle;
    let f = a4_sign_cocycle();
    let table: Vec<Vec<u64>> = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| match f.get(x, y) {
                    Value::Mod(v) => v,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    let quandle = extension_by_cocycle(&base, 2, &table).expect("the sign table is a cocycle");
    Fixture {
        name: "a4_extension".into(),
        quandle,
        expected: Expected {
            fx_order: Some(24),
            n0_order: Some(1),
            n0_factors: Some(vec![]),
            h2q_factors: Some(vec![]),
        },
        note: "extension of the 3-cycle quandle by the sign cocycle".into(),
    }
}

/// The dihedral quandle on `ℤ_p` (an affine quandle with `γ = −1`).
pub fn dihedral(p: usize) -> Fixture {
    Fixture {
        name: format!("dihedral_{p}"),
        quandle: Quandle::from_table(dihedral_table(p)).unwrap(),
        expected: Expected {
            fx_order: Some(2 * p),
            n0_order: Some(1),
            n0_factors: Some(vec![]),
            h2q_factors: Some(vec![]),
        },
        note: format!("dihedral quandle x▷y = 2y−x on Z_{p}"),
    }
}

/// The one-dimensional affine quandle over `ℤ_p` with multiplier `ω`.
pub fn affine_pw(p: u64, w: u64) -> Fixture {
    let spec = crate::affine::AffineSpec::new(vec![p], vec![vec![w as i64]])
        .expect("prime field multiplier");
    let quandle = crate::affine::affine_quandle(&spec).expect("ω ≠ 1 is indecomposable");
    let ord = spec.gamma_order();
    Fixture {
        name: format!("aff_{p}_{w}"),
        quandle,
        expected: Expected {
            fx_order: Some(p as usize * ord),
            n0_order: Some(1),
            n0_factors: Some(vec![]),
            h2q_factors: Some(vec![]),
        },
        note: format!("affine quandle over Z_{p} with multiplier {w}"),
    }
}

/// Every named fixture, for regression sweeps and the CLI catalog verb.
pub fn all() -> Vec<Fixture> {
    vec![
        transpositions(4),
        transpositions(5),
        dihedral(3),
        dihedral(5),
        dihedral(7),
        affine_pw(3, 2),
        affine_pw(5, 2),
        affine_pw(5, 3),
        affine_pw(7, 3),
        a4_three_cycles(),
        a4_extension(),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::inner_action;

    #[test]
    fn transpositions_s4_shape() {
        let f = transpositions(4);
        assert_eq!(f.quandle.size(), 6);
        assert!(inner_action(&f.quandle).is_transitive());
        // Lexicographic image order puts the transposition of the two
        // largest points first: the base point is (2 3).
        assert_eq!(transposition_class(4)[0], Perm::transposition(4, 2, 3));
    }

    #[test]
    fn transpositions_s3_is_dihedral3() {
        let f = transpositions(3);
        assert_eq!(f.quandle.size(), 3);
    }

    #[test]
    fn chi_entries() {
        let chi = chi_cocycle(4);
        let class = transposition_class(4);
        let idx = |a: usize, b: usize| {
            class
                .iter()
                .position(|p| *p == Perm::transposition(4, a, b))
                .unwrap()
        };
        // Every diagonal entry is −1 (additively 1): (ij) reverses i, j.
        for x in 0..6 {
            assert_eq!(chi.get(x, x), Value::Mod(1));
        }
        // Off-diagonal with disjoint supports: σ keeps τ's points in order,
        // so the entry is +1 (additively 0).
        assert_eq!(chi.get(idx(2, 3), idx(0, 1)), Value::Mod(0));
        assert_eq!(chi.get(idx(0, 1), idx(2, 3)), Value::Mod(0));
        assert_eq!(chi.verify(), Ok(()));
    }

    #[test]
    fn a4_fixture_matches_constructor() {
        let fixed = a4_three_cycles();
        assert!(fixed.quandle.is_quandle());
        assert!(inner_action(&fixed.quandle).is_transitive());
        // The constructor-built 3-cycle class has the same size and the same
        // multiset of translation orders.
        let gens = vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]),
            Perm::from_cycles(4, &[&[1, 2, 3]]),
        ];
        let built = conjugation_quandle(&gens, &Perm::from_cycles(4, &[&[0, 1, 2]]), 1000).unwrap();
        assert_eq!(built.size(), fixed.quandle.size());
    }

    #[test]
    fn a4_sign_cocycle_verifies() {
        assert_eq!(a4_sign_cocycle().verify(), Ok(()));
    }

    #[test]
    fn a4_extension_is_size8_quandle() {
        let f = a4_extension();
        assert_eq!(f.quandle.size(), 8);
        assert!(f.quandle.is_quandle());
        assert!(inner_action(&f.quandle).is_transitive());
    }
}
