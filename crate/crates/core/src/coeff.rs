//! Coefficient groups for cocycle values: cyclic groups `ℤ_m` and the
//! torsion group `ℚ/ℤ` of reduced fractions, which carries all roots of
//! unity exactly.

use crate::perm::gcd;
use std::fmt;
use thiserror::Error;

/// The abelian coefficient group `A`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientGroup {
    /// `ℤ_m`, m ≥ 1; elements are residues `0 ≤ k < m`.
    Cyclic(u64),
    /// `ℚ/ℤ`; elements are reduced fractions `p/q` with `0 ≤ p < q`.
    TorsionRational,
}

/// An element of a coefficient group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Value {
    Mod(u64),
    Frac { p: u64, q: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CoeffError {
    #[error("value {0} does not belong to this coefficient group")]
    WrongKind(String),
    #[error("cannot parse {0:?} as a coefficient value")]
    Parse(String),
}

impl CoefficientGroup {
    pub fn zero(&self) -> Value {
        match self {
            CoefficientGroup::Cyclic(_) => Value::Mod(0),
            CoefficientGroup::TorsionRational => Value::Frac { p: 0, q: 1 },
        }
    }

    fn reduce(p: u64, q: u64) -> Value {
        debug_assert!(q > 0);
        let p = p % q;
        let g = gcd(p, q);
        if p == 0 {
            Value::Frac { p: 0, q: 1 }
        } else {
            Value::Frac { p: p / g, q: q / g }
        }
    }

    /// Builds a fraction `p/q` in `ℚ/ℤ` (reduced, `0 ≤ p < q`).
    pub fn frac(p: u64, q: u64) -> Value {
        Self::reduce(p, q)
    }

    pub fn check(&self, v: Value) -> Result<Value, CoeffError> {
        match (self, v) {
            (CoefficientGroup::Cyclic(m), Value::Mod(k)) if k < *m => Ok(v),
            (CoefficientGroup::TorsionRational, Value::Frac { p, q })
                if q > 0 && p < q && gcd(p.max(1), q) == if p == 0 { q } else { 1 } =>
            {
                Ok(v)
            }
            _ => Err(CoeffError::WrongKind(format!("{v:?}"))),
        }
    }

    pub fn add(&self, a: Value, b: Value) -> Value {
        match (self, a, b) {
            (CoefficientGroup::Cyclic(m), Value::Mod(x), Value::Mod(y)) => Value::Mod((x + y) % m),
            (CoefficientGroup::TorsionRational, Value::Frac { p, q }, Value::Frac { p: r, q: s }) => {
                // p/q + r/s over a common denominator, then reduce mod 1.
                let den = q / gcd(q, s) * s;
                Self::reduce(p * (den / q) + r * (den / s), den)
            }
            _ => panic!("mixed coefficient kinds: {a:?} + {b:?}"),
        }
    }

    pub fn neg(&self, a: Value) -> Value {
        match (self, a) {
            (CoefficientGroup::Cyclic(m), Value::Mod(x)) => Value::Mod((m - x % m) % m),
            (CoefficientGroup::TorsionRational, Value::Frac { p, q }) => Self::reduce(q - p, q),
            _ => panic!("mixed coefficient kinds: -{a:?}"),
        }
    }

    pub fn sub(&self, a: Value, b: Value) -> Value {
        self.add(a, self.neg(b))
    }

    /// `k · a` for a non-negative integer `k`.
    pub fn scale(&self, k: u64, a: Value) -> Value {
        match (self, a) {
            (CoefficientGroup::Cyclic(m), Value::Mod(x)) => {
                Value::Mod(((k % m) as u128 * (x as u128) % (*m as u128)) as u64)
            }
            (CoefficientGroup::TorsionRational, Value::Frac { p, q }) => {
                Self::reduce(((k % q) as u128 * p as u128 % q as u128) as u64, q)
            }
            _ => panic!("mixed coefficient kinds: {k}·{a:?}"),
        }
    }

    /// All elements annihilated by `d` (i.e. with `d·a = 0`). Finite for both
    /// variants: the subgroup of order `gcd(d, m)` in `ℤ_m`, and the
    /// fractions with denominator dividing `d` in `ℚ/ℤ`.
    pub fn elements_annihilated_by(&self, d: u64) -> Vec<Value> {
        match self {
            CoefficientGroup::Cyclic(m) => {
                let g = gcd(d, *m);
                let step = m / g;
                (0..g).map(|k| Value::Mod(k * step)).collect()
            }
            CoefficientGroup::TorsionRational => (0..d).map(|p| Self::reduce(p, d)).collect(),
        }
    }

    pub fn all_elements(&self) -> Option<Vec<Value>> {
        match self {
            CoefficientGroup::Cyclic(m) => Some((0..*m).map(Value::Mod).collect()),
            CoefficientGroup::TorsionRational => None,
        }
    }

    /// Renders a value in the file format: integers for `ℤ_m`, `p/q` for `ℚ/ℤ`.
    pub fn render(&self, v: Value) -> String {
        match v {
            Value::Mod(k) => k.to_string(),
            Value::Frac { p, q } => format!("{p}/{q}"),
        }
    }

    /// Parses a value in the file format. Bare integers are accepted for
    /// `ℚ/ℤ` and reduce to 0.
    pub fn parse(&self, s: &str) -> Result<Value, CoeffError> {
        let s = s.trim();
        match self {
            CoefficientGroup::Cyclic(m) => {
                let k: u64 = s.parse().map_err(|_| CoeffError::Parse(s.into()))?;
                if k < *m {
                    Ok(Value::Mod(k))
                } else {
                    Err(CoeffError::Parse(format!("{s} out of range for Z{m}")))
                }
            }
            CoefficientGroup::TorsionRational => {
                if let Some((ps, qs)) = s.split_once('/') {
                    let p: u64 = ps.parse().map_err(|_| CoeffError::Parse(s.into()))?;
                    let q: u64 = qs.parse().map_err(|_| CoeffError::Parse(s.into()))?;
                    if q == 0 {
                        return Err(CoeffError::Parse(s.into()));
                    }
                    Ok(Self::reduce(p, q))
                } else {
                    let _: u64 = s.parse().map_err(|_| CoeffError::Parse(s.into()))?;
                    Ok(self.zero())
                }
            }
        }
    }

    /// The coefficient tag used in `.coc` headers: `Z<m>` or `QZ`.
    pub fn tag(&self) -> String {
        match self {
            CoefficientGroup::Cyclic(m) => format!("Z{m}"),
            CoefficientGroup::TorsionRational => "QZ".into(),
        }
    }

    pub fn parse_tag(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        if s == "QZ" {
            return Ok(CoefficientGroup::TorsionRational);
        }
        if let Some(ms) = s.strip_prefix('Z') {
            let m: u64 = ms.parse().map_err(|_| CoeffError::Parse(s.into()))?;
            if m >= 1 {
                return Ok(CoefficientGroup::Cyclic(m));
            }
        }
        Err(CoeffError::Parse(s.into()))
    }

    /// Numeric rendering of `exp(2πi·v)` for display only.
    pub fn render_exp(&self, v: Value) -> (f64, f64) {
        let t = match v {
            Value::Mod(k) => {
                let m = match self {
                    CoefficientGroup::Cyclic(m) => *m,
                    _ => 1,
                };
                k as f64 / m as f64
            }
            Value::Frac { p, q } => p as f64 / q as f64,
        };
        let ang = 2.0 * std::f64::consts::PI * t;
        (ang.cos(), ang.sin())
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Cyclic(m) => write!(f, "Z_{m}"),
            CoefficientGroup::TorsionRational => write!(f, "Q/Z"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn qz_arithmetic() {
        let a = CoefficientGroup::TorsionRational;
        let x = CoefficientGroup::frac(1, 2);
        let y = CoefficientGroup::frac(1, 3);
        assert_eq!(a.add(x, y), CoefficientGroup::frac(5, 6));
        assert_eq!(a.add(x, x), a.zero());
        assert_eq!(a.neg(y), CoefficientGroup::frac(2, 3));
        assert_eq!(a.scale(3, y), a.zero());
    }

    #[test]
    fn annihilated_subgroups() {
        let z6 = CoefficientGroup::Cyclic(6);
        assert_eq!(
            z6.elements_annihilated_by(2),
            vec![Value::Mod(0), Value::Mod(3)]
        );
        let qz = CoefficientGroup::TorsionRational;
        assert_eq!(qz.elements_annihilated_by(2).len(), 2);
    }

    #[test]
    fn tags_and_parse() {
        assert_eq!(CoefficientGroup::parse_tag("Z6").unwrap(), CoefficientGroup::Cyclic(6));
        assert_eq!(
            CoefficientGroup::parse_tag("QZ").unwrap(),
            CoefficientGroup::TorsionRational
        );
        let qz = CoefficientGroup::TorsionRational;
        assert_eq!(qz.parse("3/6").unwrap(), CoefficientGroup::frac(1, 2));
        assert_eq!(qz.render(qz.zero()), "0/1");
    }

    fn arb_cyclic_pair() -> impl Strategy<Value = (u64, u64, u64, u64)> {
        (1u64..50, 0u64..50, 0u64..50, 0u64..50)
    }

    proptest! {
        #[test]
        fn cyclic_group_laws((m, a, b, c) in arb_cyclic_pair()) {
            let g = CoefficientGroup::Cyclic(m);
            let (a, b, c) = (Value::Mod(a % m), Value::Mod(b % m), Value::Mod(c % m));
            prop_assert_eq!(g.add(a, b), g.add(b, a));
            prop_assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
            prop_assert_eq!(g.add(a, g.zero()), a);
            prop_assert_eq!(g.add(a, g.neg(a)), g.zero());
        }

        #[test]
        fn qz_group_laws((p1, q1, p2, q2) in (0u64..30, 1u64..30, 0u64..30, 1u64..30)) {
            let g = CoefficientGroup::TorsionRational;
            let a = CoefficientGroup::frac(p1, q1);
            let b = CoefficientGroup::frac(p2, q2);
            prop_assert_eq!(g.add(a, b), g.add(b, a));
            prop_assert_eq!(g.add(a, g.neg(a)), g.zero());
            prop_assert_eq!(g.check(g.add(a, b)).is_ok(), true);
        }
    }
}
