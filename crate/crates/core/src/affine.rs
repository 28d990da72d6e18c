//! Affine (Alexander) quandles `x ▷ y = γ(y) + x − γ(x)` over a finite
//! abelian group `L`, the tensor-square cokernel `S(L,γ)` that realizes the
//! stabilizer for these quandles, the explicit enveloping-group model, and
//! the closed-form cocycles for the indecomposable quandles of order `p²`.

use crate::coeff::{CoefficientGroup, Value};
use crate::cohomology::Cocycle;
use crate::homology::{smith_normal_form, HomologyResult, IntMatrix};
use crate::perm::Perm;
use crate::quandle::Quandle;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AffineError {
    #[error("gamma is not an automorphism of the given moduli")]
    NotAutomorphism,
    #[error("1 − gamma is not invertible; the quandle is decomposable")]
    Decomposable,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("family instance admits no non-constant cocycle")]
    InvalidFamily,
}

/// `L = ⊕ ℤ_{m_i}` together with an automorphism given by an integer matrix
/// acting on column tuples: `γ(x)_i = Σ_j gamma[i][j]·x_j mod m_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSpec {
    pub moduli: Vec<u64>,
    pub gamma: Vec<Vec<i64>>,
}

impl AffineSpec {
    pub fn new(moduli: Vec<u64>, gamma: Vec<Vec<i64>>) -> Result<Self, AffineError> {
        let r = moduli.len();
        if gamma.len() != r
            || gamma.iter().any(|row| row.len() != r)
            || moduli.iter().any(|&m| m == 0)
        {
            return Err(AffineError::InvalidParams(
                "gamma must be square and match the moduli".into(),
            ));
        }
        let spec = AffineSpec { moduli, gamma };
        // Well-defined on L: gamma[i][j]·m_j ≡ 0 (mod m_i).
        for i in 0..r {
            for j in 0..r {
                let v = (spec.gamma[i][j].rem_euclid(spec.moduli[i] as i64) as u128)
                    * (spec.moduli[j] as u128);
                if v % spec.moduli[i] as u128 != 0 {
                    return Err(AffineError::NotAutomorphism);
                }
            }
        }
        if !spec.is_bijective(|x| spec.apply_gamma(x)) {
            return Err(AffineError::NotAutomorphism);
        }
        Ok(spec)
    }

    pub fn size(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    /// Mixed-radix index of a tuple (first coordinate outermost).
    pub fn index_of(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (i, &m) in self.moduli.iter().enumerate() {
            idx = idx * m as usize + (x[i] % m) as usize;
        }
        idx
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<u64> {
        let r = self.moduli.len();
        let mut x = vec![0u64; r];
        for i in (0..r).rev() {
            let m = self.moduli[i] as usize;
            x[i] = (idx % m) as u64;
            idx /= m;
        }
        x
    }

    pub fn apply_gamma(&self, x: &[u64]) -> Vec<u64> {
        self.apply_matrix(&self.gamma, x)
    }

    fn apply_matrix(&self, mat: &[Vec<i64>], x: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut acc: i64 = 0;
                for (j, &xj) in x.iter().enumerate() {
                    acc += mat[i][j].rem_euclid(m as i64) * (xj as i64 % m as i64);
                }
                acc.rem_euclid(m as i64) as u64
            })
            .collect()
    }

    fn one_minus_gamma(&self) -> Vec<Vec<i64>> {
        let r = self.moduli.len();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| i64::from(i == j) - self.gamma[i][j])
                    .collect()
            })
            .collect()
    }

    fn is_bijective(&self, f: impl Fn(&[u64]) -> Vec<u64>) -> bool {
        let size = self.size();
        let mut seen = vec![false; size];
        for idx in 0..size {
            let img = self.index_of(&f(&self.tuple_of(idx)));
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
        true
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (x[i] + y[i]) % m)
            .collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (x[i] + m - y[i] % m) % m)
            .collect()
    }

    /// γ as a permutation of element indices.
    pub fn gamma_perm(&self) -> Perm {
        Perm::from_images(
            (0..self.size())
                .map(|i| self.index_of(&self.apply_gamma(&self.tuple_of(i))))
                .collect(),
        )
        .expect("validated gamma is bijective")
    }

    pub fn gamma_order(&self) -> usize {
        self.gamma_perm().order()
    }
}

/// Builds the affine quandle table over `L` in mixed-radix order.
/// Errors when `1 − γ` is not invertible (decomposable).
pub fn affine_quandle(spec: &AffineSpec) -> Result<Quandle, AffineError> {
    let omg = spec.one_minus_gamma();
    if !spec.is_bijective(|x| spec.apply_matrix(&omg, x)) {
        return Err(AffineError::Decomposable);
    }
    let size = spec.size();
    let mut table = vec![vec![0usize; size]; size];
    for (x_idx, row) in table.iter_mut().enumerate() {
        let x = spec.tuple_of(x_idx);
        let gx = spec.apply_gamma(&x);
        let shift = spec.sub(&x, &gx);
        for (y_idx, cell) in row.iter_mut().enumerate() {
            let gy = spec.apply_gamma(&spec.tuple_of(y_idx));
            *cell = spec.index_of(&spec.add(&gy, &shift));
        }
    }
    let q = Quandle::from_table(table).expect("affine tables satisfy the quandle axioms");
    debug_assert!(q.is_quandle());
    Ok(q)
}

/// `S(L,γ)`: the cokernel of `τ_γ(x⊗y) = x⊗y − y⊗γ(x)` on `L ⊗ L`,
/// with its invariant factors and the class map `[x,y]`.
#[derive(Clone, Debug)]
pub struct SGroup {
    /// Nontrivial invariant factors of the cokernel.
    pub factors: Vec<u64>,
    tensor_rank: usize,
    moduli: Vec<u64>,
    /// Left transform of the Smith form of `[τ | diag(tensor moduli)]`.
    u: IntMatrix,
    /// Full diagonal (including trivial entries), aligned with rows of `u`.
    diag: Vec<u64>,
}

impl SGroup {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Coordinates of `[x ⊗ y]` against the nontrivial invariant factors.
    pub fn class(&self, spec: &AffineSpec, x: &[u64], y: &[u64]) -> Vec<u64> {
        let r = spec.moduli.len();
        let mut v = vec![0i64; self.tensor_rank];
        for a in 0..r {
            for b in 0..r {
                let g = self.moduli[a * r + b];
                v[a * r + b] = ((x[a] % g) * (y[b] % g) % g) as i64;
            }
        }
        let mut out = Vec::with_capacity(self.factors.len());
        for i in 0..self.tensor_rank {
            let d = self.diag[i];
            if d <= 1 {
                continue;
            }
            let mut acc: i64 = 0;
            for (j, &vj) in v.iter().enumerate() {
                acc += self.u.get(i, j) * vj;
            }
            out.push(acc.rem_euclid(d as i64) as u64);
        }
        out
    }

    /// Componentwise sum of two coordinate vectors.
    pub fn class_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn class_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x % d) % d)
            .collect()
    }

    pub fn zero_class(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    /// Every element of `S(L,γ)` as a coordinate vector.
    pub fn all_classes(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out
                .iter()
                .flat_map(|c| {
                    (0..d).map(move |k| {
                        let mut c2 = c.clone();
                        c2.push(k);
                        c2
                    })
                })
                .collect();
        }
        out
    }
}

/// Computes `S(L,γ)` by Smith reduction of the relation matrix
/// `[τ_γ | diag(gcd(m_a, m_b))]` over the row-major tensor basis.
pub fn s_group(spec: &AffineSpec) -> SGroup {
    let r = spec.moduli.len();
    let t = r * r;
    let mut moduli = vec![0u64; t];
    for a in 0..r {
        for b in 0..r {
            moduli[a * r + b] = crate::perm::gcd(spec.moduli[a], spec.moduli[b]);
        }
    }
    // τ(e_a ⊗ e_b) = e_a⊗e_b − e_b⊗γ(e_a); γ(e_a) = Σ_i gamma[i][a] e_i.
    let mut rel = IntMatrix::zero(t, 2 * t);
    for a in 0..r {
        for b in 0..r {
            let col = a * r + b;
            rel.add_to(col, col, 1);
            for i in 0..r {
                rel.add_to(b * r + i, col, -spec.gamma[i][a]);
            }
        }
    }
    for (i, &m) in moduli.iter().enumerate() {
        rel.set(i, t + i, m as i64);
    }
    let snf = smith_normal_form(rel, true, false).expect("tensor relation matrices stay small");
    assert_eq!(snf.rank, t, "the relation matrix has full row rank");
    let diag = snf.factors.clone();
    let factors: Vec<u64> = diag.iter().copied().filter(|&d| d > 1).collect();
    SGroup {
        factors,
        tensor_rank: t,
        moduli,
        u: snf.u.unwrap(),
        diag,
    }
}

/// An element of the explicit enveloping-group model for an affine quandle:
/// `(x, m, s)` with `x ∈ L`, `m ∈ ℤ`, and `s ∈ S(L,γ)` in coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClauwensElem {
    pub l: Vec<u64>,
    pub deg: i64,
    pub s: Vec<u64>,
}

/// The enveloping-group model: multiplication
/// `(x,m,s)(y,n,t) = (x + γ^m(y), m+n, s + t + [x ⊗ γ^m(y)])`.
#[derive(Clone, Debug)]
pub struct ClauwensGroup {
    pub spec: AffineSpec,
    pub sgroup: SGroup,
    gamma_perm: Perm,
    gamma_inv_perm: Perm,
}

impl ClauwensGroup {
    pub fn new(spec: AffineSpec) -> Self {
        let sgroup = s_group(&spec);
        let gamma_perm = spec.gamma_perm();
        let gamma_inv_perm = gamma_perm.inverse();
        ClauwensGroup {
            spec,
            sgroup,
            gamma_perm,
            gamma_inv_perm,
        }
    }

    pub fn identity(&self) -> ClauwensElem {
        ClauwensElem {
            l: vec![0; self.spec.moduli.len()],
            deg: 0,
            s: self.sgroup.zero_class(),
        }
    }

    pub fn gamma_pow(&self, x: &[u64], e: i64) -> Vec<u64> {
        let mut idx = self.spec.index_of(x);
        if e >= 0 {
            for _ in 0..e {
                idx = self.gamma_perm.apply(idx);
            }
        } else {
            for _ in 0..-e {
                idx = self.gamma_inv_perm.apply(idx);
            }
        }
        self.spec.tuple_of(idx)
    }

    pub fn mul(&self, a: &ClauwensElem, b: &ClauwensElem) -> ClauwensElem {
        let gy = self.gamma_pow(&b.l, a.deg);
        let s = self.sgroup.class_add(
            &self.sgroup.class_add(&a.s, &b.s),
            &self.sgroup.class(&self.spec, &a.l, &gy),
        );
        ClauwensElem {
            l: self.spec.add(&a.l, &gy),
            deg: a.deg + b.deg,
            s,
        }
    }

    pub fn inverse(&self, a: &ClauwensElem) -> ClauwensElem {
        // (x,m,s)⁻¹ = (−γ^{−m}(x), −m, −s + [x,x]).
        let zero = vec![0; self.spec.moduli.len()];
        let l = self.spec.sub(&zero, &self.gamma_pow(&a.l, -a.deg));
        let s = self.sgroup.class_add(
            &self.sgroup.class_neg(&a.s),
            &self.sgroup.class(&self.spec, &a.l, &a.l),
        );
        ClauwensElem { l, deg: -a.deg, s }
    }

    /// The embedding of the quandle element `x` as `(x, 1, 0)`.
    pub fn embed(&self, x: &[u64]) -> ClauwensElem {
        ClauwensElem {
            l: x.to_vec(),
            deg: 1,
            s: self.sgroup.zero_class(),
        }
    }

    /// The action on the quandle: `(x,m,s) ▷ y = γ^m(y) + (1−γ)(x)`.
    pub fn act(&self, g: &ClauwensElem, y: &[u64]) -> Vec<u64> {
        let gy = self.gamma_pow(y, g.deg);
        let shift = self.spec.sub(&g.l, &self.spec.apply_gamma(&g.l));
        self.spec.add(&gy, &shift)
    }
}

/// The reconstruction cocycle in the affine model:
/// `q_{x,y} = a + Σ_{0<j<ord(γ)} g([x, γ^j(y)])` for a character `g` of
/// `S(L,γ)` given per invariant factor.
pub fn affine_cocycle(
    spec: &AffineSpec,
    q: &Quandle,
    coeff: CoefficientGroup,
    a: Value,
    g: &[Value],
) -> Result<Cocycle, AffineError> {
    let sg = s_group(spec);
    check_character(&sg, &coeff, g)?;
    let ord = spec.gamma_order();
    let gp = spec.gamma_perm();
    let n = spec.size();
    let mut values = Vec::with_capacity(n * n);
    for x_idx in 0..n {
        let x = spec.tuple_of(x_idx);
        for y_idx in 0..n {
            let mut acc = a;
            let mut yj = y_idx;
            for _ in 1..ord {
                yj = gp.apply(yj);
                let cls = sg.class(spec, &x, &spec.tuple_of(yj));
                acc = coeff.add(acc, char_eval(&coeff, g, &cls));
            }
            values.push(acc);
        }
    }
    Ok(Cocycle::from_values(q, coeff, values))
}

/// The first-principles variant of the same cocycle, reading the stabilizer
/// component off the coset factorization directly:
/// `q_{x,y} = a + g([x, γ(1−γ)⁻¹(y)])`.
pub fn affine_cocycle_cmap(
    spec: &AffineSpec,
    q: &Quandle,
    coeff: CoefficientGroup,
    a: Value,
    g: &[Value],
) -> Result<Cocycle, AffineError> {
    let sg = s_group(spec);
    check_character(&sg, &coeff, g)?;
    let omg = spec.one_minus_gamma();
    let omg_perm = Perm::from_images(
        (0..spec.size())
            .map(|i| spec.index_of(&spec.apply_matrix(&omg, &spec.tuple_of(i))))
            .collect(),
    )
    .ok_or(AffineError::Decomposable)?;
    let omg_inv = omg_perm.inverse();
    let n = spec.size();
    let mut values = Vec::with_capacity(n * n);
    for x_idx in 0..n {
        let x = spec.tuple_of(x_idx);
        for y_idx in 0..n {
            let w = spec.apply_gamma(&spec.tuple_of(omg_inv.apply(y_idx)));
            let cls = sg.class(spec, &x, &w);
            values.push(coeff.add(a, char_eval(&coeff, g, &cls)));
        }
    }
    Ok(Cocycle::from_values(q, coeff, values))
}

fn check_character(
    sg: &SGroup,
    coeff: &CoefficientGroup,
    g: &[Value],
) -> Result<(), AffineError> {
    if g.len() != sg.factors.len() {
        return Err(AffineError::InvalidParams(format!(
            "expected {} character components, got {}",
            sg.factors.len(),
            g.len()
        )));
    }
    for (&gi, &d) in g.iter().zip(&sg.factors) {
        if coeff.scale(d, gi) != coeff.zero() {
            return Err(AffineError::InvalidParams(
                "character component not annihilated by its factor".into(),
            ));
        }
    }
    Ok(())
}

fn char_eval(coeff: &CoefficientGroup, g: &[Value], cls: &[u64]) -> Value {
    let mut acc = coeff.zero();
    for (&c, &gi) in cls.iter().zip(g) {
        acc = coeff.add(acc, coeff.scale(c, gi));
    }
    acc
}

/// The four families of indecomposable affine quandles of order `p²`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum P2Family {
    /// `L = ℤ_p ⊕ ℤ_p`, `γ(x,y) = (αx, βy)`.
    A1 { alpha: u64, beta: u64 },
    /// `L = ℤ_p ⊕ ℤ_p`, `γ(x,y) = (αx, αy + x)`.
    A2 { alpha: u64 },
    /// `L = ℤ_p ⊕ ℤ_p` with `γ = [[α₀,α₁],[α₁,α₀]]`, `α₁ ≠ 0`.
    A3 { alpha0: u64, alpha1: u64 },
    /// `L = ℤ_{p²}`, `γ(x) = αx` with `α ≢ 0,1 (mod p)`.
    A4 { alpha: u64 },
}

pub fn d_alpha(p: u64, a0: u64, a1: u64) -> u64 {
    let p = p as i64;
    let (a0, a1) = (a0 as i64, a1 as i64);
    let f1 = 1 - a0 + a1;
    let f2 = 1 - a0 - a1;
    let f3 = 1 - a0 * a0 + a1 * a1;
    (f1 * f2 % p * f3).rem_euclid(p) as u64
}

/// `t_α = (α₀ − α₀² + α₁²)(1 − α₀)⁻¹` and `s_α = (1 − α₀)α₁⁻¹` mod p,
/// defined when `d_α = 0` (which forces `α₀ ≠ 1`).
pub fn t_s_alpha(p: u64, a0: u64, a1: u64) -> (u64, u64) {
    let pi = p as i64;
    let num = (a0 as i64 - (a0 * a0) as i64 + (a1 * a1) as i64).rem_euclid(pi) as u64;
    let one_minus = (1 - a0 as i64).rem_euclid(pi) as u64;
    let t = num * mod_inverse(one_minus, p) % p;
    let s = one_minus * mod_inverse(a1, p) % p;
    (t, s)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime in every caller.
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u64, e: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// The affine spec of a `p²` family instance, validating parameters.
pub fn p2_spec(p: u64, family: P2Family) -> Result<AffineSpec, AffineError> {
    let bad = |msg: &str| Err(AffineError::InvalidParams(msg.into()));
    match family {
        P2Family::A1 { alpha, beta } => {
            if alpha % p <= 1 || beta % p <= 1 {
                return bad("alpha and beta must avoid 0 and 1 mod p");
            }
            AffineSpec::new(
                vec![p, p],
                vec![vec![alpha as i64, 0], vec![0, beta as i64]],
            )
        }
        P2Family::A2 { alpha } => {
            if alpha % p <= 1 {
                return bad("alpha must avoid 0 and 1 mod p");
            }
            AffineSpec::new(
                vec![p, p],
                vec![vec![alpha as i64, 0], vec![1, alpha as i64]],
            )
        }
        P2Family::A3 { alpha0, alpha1 } => {
            if alpha1 % p == 0 {
                return bad("alpha1 must be nonzero mod p");
            }
            AffineSpec::new(
                vec![p, p],
                vec![
                    vec![alpha0 as i64, alpha1 as i64],
                    vec![alpha1 as i64, alpha0 as i64],
                ],
            )
        }
        P2Family::A4 { alpha } => {
            if alpha % p <= 1 {
                return bad("alpha must avoid 0 and 1 mod p");
            }
            AffineSpec::new(vec![p * p], vec![vec![alpha as i64]])
        }
    }
}

/// Predicted `H₂` for a `p²` family instance: `ℤ` in general, with an extra
/// `ℤ_p` exactly when A1 has `αβ = 1`, A2 has `α² = 1`, or A3 has `d_α = 0`;
/// never for A4.
pub fn p2_invariants(p: u64, family: P2Family) -> Result<HomologyResult, AffineError> {
    p2_spec(p, family)?;
    let torsion = match family {
        P2Family::A1 { alpha, beta } => alpha * beta % p == 1,
        P2Family::A2 { alpha } => alpha * alpha % p == 1,
        P2Family::A3 { alpha0, alpha1 } => d_alpha(p, alpha0, alpha1) == 0,
        P2Family::A4 { .. } => false,
    };
    Ok(HomologyResult {
        free_rank: 1,
        torsion: if torsion { vec![p] } else { vec![] },
    })
}

/// All parameter choices for which the family is a valid indecomposable
/// quandle of order `p²` (automorphism and `1−γ` both invertible).
pub fn p2_valid_instances(p: u64) -> Vec<P2Family> {
    let mut out = Vec::new();
    for alpha in 2..p {
        for beta in 2..p {
            out.push(P2Family::A1 { alpha, beta });
        }
    }
    for alpha in 2..p {
        out.push(P2Family::A2 { alpha });
    }
    for alpha0 in 0..p {
        for alpha1 in 1..p {
            let fam = P2Family::A3 { alpha0, alpha1 };
            if p2_spec(p, fam).and_then(|s| affine_quandle(&s)).is_ok() {
                out.push(fam);
            }
        }
    }
    for alpha in 2..p * p {
        if alpha % p > 1 {
            out.push(P2Family::A4 { alpha });
        }
    }
    out
}

/// The `p²` instances that admit a non-constant 2-cocycle, with their
/// pairing data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum P2Nontrivial {
    /// A1 with `β = α⁻¹`.
    A1 { alpha: u64 },
    /// A2 with `α = −1`.
    A2,
    /// A3 with `d_α = 0`.
    A3 { alpha0: u64, alpha1: u64 },
}

impl P2Nontrivial {
    pub fn family(&self, p: u64) -> P2Family {
        match *self {
            P2Nontrivial::A1 { alpha } => P2Family::A1 {
                alpha,
                beta: mod_inverse(alpha, p),
            },
            P2Nontrivial::A2 => P2Family::A2 { alpha: p - 1 },
            P2Nontrivial::A3 { alpha0, alpha1 } => P2Family::A3 { alpha0, alpha1 },
        }
    }
}

/// All nontrivial instances for an odd prime `p`.
pub fn p2_nontrivial_instances(p: u64) -> Vec<P2Nontrivial> {
    let mut out: Vec<P2Nontrivial> = (2..p).map(|alpha| P2Nontrivial::A1 { alpha }).collect();
    if p > 2 {
        out.push(P2Nontrivial::A2);
    }
    for alpha0 in 0..p {
        for alpha1 in 1..p {
            if d_alpha(p, alpha0, alpha1) == 0
                && p2_spec(p, P2Family::A3 { alpha0, alpha1 })
                    .and_then(|s| affine_quandle(&s))
                    .is_ok()
            {
                out.push(P2Nontrivial::A3 { alpha0, alpha1 });
            }
        }
    }
    out
}

/// The closed-form cocycle `q_{x,y} = λ + (ℓ/p)·⟨x,y⟩` in `ℚ/ℤ`, where
/// `⟨x,y⟩ = Σ_{0<j<ord(γ)} ζ_j(x,y)` is the family's pairing.
pub fn explicit_p2_cocycle(
    p: u64,
    fam: P2Nontrivial,
    ell: u64,
    lambda: Value,
) -> Result<Cocycle, AffineError> {
    if ell == 0 || ell >= p {
        return Err(AffineError::InvalidParams("need 0 < ell < p".into()));
    }
    let spec = p2_spec(p, fam.family(p))?;
    let q = affine_quandle(&spec)?;
    let ord = spec.gamma_order();
    let gp = spec.gamma_perm();
    let pi = p as i64;
    let n = spec.size();
    let coeff = CoefficientGroup::TorsionRational;

    // ζ_j with the per-family component conventions: A1/A2 read
    // x = (x₁, x₂) = (coord 0, coord 1); A3 reads x = (x₀, x₁).
    let zeta = |j: usize, x: &[u64], yj: &[u64]| -> i64 {
        match fam {
            P2Nontrivial::A1 { alpha } => {
                let aj = pow_mod(alpha, j as u64, p) as i64;
                let a1j = (alpha % p * pow_mod(mod_inverse(alpha, p), j as u64, p) % p) as i64;
                (aj * (x[1] as i64) % pi * (yj[0] as i64)
                    + a1j * (x[0] as i64) % pi * (yj[1] as i64))
                    .rem_euclid(pi)
            }
            P2Nontrivial::A2 => {
                let sign: i64 = if j % 2 == 0 { 1 } else { -1 };
                let coefj = (j as i64 + 2 * sign).rem_euclid(pi);
                (coefj * (x[0] as i64) % pi * (yj[0] as i64)
                    + sign * ((x[0] as i64) * (yj[1] as i64) - (x[1] as i64) * (yj[0] as i64)))
                    .rem_euclid(pi)
            }
            P2Nontrivial::A3 { alpha0, alpha1 } => {
                let (t, s) = t_s_alpha(p, alpha0, alpha1);
                ((x[1] as i64) * (yj[1] as i64)
                    + t as i64
                        * ((x[0] as i64) * (yj[0] as i64) + (x[0] as i64) * (yj[1] as i64))
                    + s as i64 * (x[1] as i64) * (yj[0] as i64))
                    .rem_euclid(pi)
            }
        }
    };

    let mut values = Vec::with_capacity(n * n);
    for x_idx in 0..n {
        let x = spec.tuple_of(x_idx);
        for y_idx in 0..n {
            let mut pairing: i64 = 0;
            let mut yj_idx = y_idx;
            for j in 1..ord {
                yj_idx = gp.apply(yj_idx);
                pairing = (pairing + zeta(j, &x, &spec.tuple_of(yj_idx))).rem_euclid(pi);
            }
            let v = CoefficientGroup::frac((ell * pairing as u64) % p, p);
            values.push(coeff.add(lambda, v));
        }
    }
    Ok(Cocycle::from_values(&q, coeff, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::dihedral_table;

    fn aff(p: u64, w: u64) -> AffineSpec {
        AffineSpec::new(vec![p], vec![vec![w as i64]]).unwrap()
    }

    #[test]
    fn aff32_is_dihedral() {
        let q = affine_quandle(&aff(3, 2)).unwrap();
        assert_eq!(q.rows(), dihedral_table(3));
    }

    #[test]
    fn identity_gamma_rejected() {
        assert_eq!(affine_quandle(&aff(5, 1)), Err(AffineError::Decomposable));
    }

    #[test]
    fn non_automorphism_rejected() {
        assert_eq!(
            AffineSpec::new(vec![4], vec![vec![2]]).unwrap_err(),
            AffineError::NotAutomorphism
        );
    }

    #[test]
    fn s_group_examples() {
        // Aff(p, ω): S = 0.
        for (p, w) in [(3, 2), (5, 2), (5, 3), (7, 3)] {
            assert!(s_group(&aff(p, w)).factors.is_empty());
        }
        // A1 with αβ = 1 at p = 3: S ≅ ℤ₃.
        let spec = p2_spec(3, P2Family::A1 { alpha: 2, beta: 2 }).unwrap();
        assert_eq!(s_group(&spec).factors, vec![3]);
        // A4 with p = 3, α = 2: S = 0.
        let spec = p2_spec(3, P2Family::A4 { alpha: 2 }).unwrap();
        assert!(s_group(&spec).factors.is_empty());
    }

    #[test]
    fn clauwens_group_laws() {
        let spec = p2_spec(3, P2Family::A1 { alpha: 2, beta: 2 }).unwrap();
        let g = ClauwensGroup::new(spec);
        let elems = [
            ClauwensElem { l: vec![1, 2], deg: 2, s: vec![1] },
            ClauwensElem { l: vec![0, 1], deg: -1, s: vec![2] },
            ClauwensElem { l: vec![2, 2], deg: 3, s: vec![0] },
        ];
        for a in &elems {
            assert_eq!(g.mul(a, &g.identity()), *a);
            assert_eq!(g.mul(&g.identity(), a), *a);
            assert_eq!(g.mul(a, &g.inverse(a)), g.identity());
            for b in &elems {
                for c in &elems {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn clauwens_embeds_the_quandle() {
        // (x,1,0)(y,1,0) = (x▷y,1,0)(x,1,0).
        let spec = p2_spec(3, P2Family::A2 { alpha: 2 }).unwrap();
        let q = affine_quandle(&spec).unwrap();
        let g = ClauwensGroup::new(spec.clone());
        for xi in 0..q.size() {
            for yi in 0..q.size() {
                let (x, y) = (spec.tuple_of(xi), spec.tuple_of(yi));
                let lhs = g.mul(&g.embed(&x), &g.embed(&y));
                let xy = spec.tuple_of(q.act(xi, yi));
                let rhs = g.mul(&g.embed(&xy), &g.embed(&x));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn clauwens_stabilizer_is_s() {
        // Degree-0 elements (x, 0, s) fix the base point 0 iff x = 0.
        let spec = p2_spec(3, P2Family::A1 { alpha: 2, beta: 2 }).unwrap();
        let g = ClauwensGroup::new(spec.clone());
        let zero = vec![0u64, 0];
        let mut stab = 0u64;
        for xi in 0..spec.size() {
            for s in g.sgroup.all_classes() {
                let e = ClauwensElem { l: spec.tuple_of(xi), deg: 0, s };
                if g.act(&e, &zero) == zero {
                    stab += 1;
                    assert_eq!(spec.index_of(&e.l), 0);
                }
            }
        }
        assert_eq!(stab, g.sgroup.order());
    }

    #[test]
    fn clauwens_transversal_is_good() {
        // σ_i = (x_i, 0, 0): σ_0 = 1, x₀ ▷ σ_j = σ_{γ(x_j)}, and the sweep
        // σ_j ▷ 0 = (1−γ)(x_j) covers L.
        let spec = p2_spec(3, P2Family::A1 { alpha: 2, beta: 2 }).unwrap();
        let g = ClauwensGroup::new(spec.clone());
        let x0 = ClauwensElem { l: vec![0, 0], deg: 1, s: g.sgroup.zero_class() };
        let mut swept = vec![false; spec.size()];
        for j in 0..spec.size() {
            let sigma = ClauwensElem {
                l: spec.tuple_of(j),
                deg: 0,
                s: g.sgroup.zero_class(),
            };
            let conj = g.mul(&g.mul(&x0, &sigma), &g.inverse(&x0));
            assert_eq!(conj.deg, 0);
            assert_eq!(conj.s, g.sgroup.zero_class());
            assert_eq!(conj.l, spec.apply_gamma(&spec.tuple_of(j)));
            let pt = g.act(&sigma, &[0, 0]);
            let idx = spec.index_of(&pt);
            assert!(!swept[idx]);
            swept[idx] = true;
        }
        assert!(swept.iter().all(|&b| b));
    }

    #[test]
    fn p2_invariant_predictions() {
        assert_eq!(
            p2_invariants(5, P2Family::A1 { alpha: 2, beta: 3 }).unwrap(),
            HomologyResult { free_rank: 1, torsion: vec![5] }
        );
        assert_eq!(
            p2_invariants(5, P2Family::A2 { alpha: 2 }).unwrap(),
            HomologyResult { free_rank: 1, torsion: vec![] }
        );
        assert_eq!(
            p2_invariants(5, P2Family::A3 { alpha0: 0, alpha1: 2 }).unwrap(),
            HomologyResult { free_rank: 1, torsion: vec![5] }
        );
        assert_eq!(
            p2_invariants(5, P2Family::A4 { alpha: 7 }).unwrap(),
            HomologyResult { free_rank: 1, torsion: vec![] }
        );
        assert_eq!(d_alpha(5, 0, 2), 0);
    }

    #[test]
    fn p2_a3_sweep_membership() {
        // p = 3 admits no valid A3 instance under this matrix model.
        assert!(p2_valid_instances(3)
            .iter()
            .all(|f| !matches!(f, P2Family::A3 { .. })));
        let fives: Vec<_> = p2_valid_instances(5)
            .into_iter()
            .filter(|f| matches!(f, P2Family::A3 { .. }))
            .collect();
        assert_eq!(fives.len(), 6);
        assert!(fives.contains(&P2Family::A3 { alpha0: 0, alpha1: 2 }));
    }

    #[test]
    fn affine_cocycles_verify() {
        let spec = p2_spec(3, P2Family::A1 { alpha: 2, beta: 2 }).unwrap();
        let q = affine_quandle(&spec).unwrap();
        let coeff = CoefficientGroup::Cyclic(3);
        let zero = coeff.zero();
        // g = 0 gives the constant.
        let c0 = affine_cocycle(&spec, &q, coeff, Value::Mod(1), &[zero]).unwrap();
        assert_eq!(c0.verify(), Ok(()));
        assert_eq!(c0.get(0, 1), Value::Mod(1));
        // Non-trivial character: both variants are cocycles.
        let c1 = affine_cocycle(&spec, &q, coeff, zero, &[Value::Mod(1)]).unwrap();
        assert_eq!(c1.verify(), Ok(()));
        let c2 = affine_cocycle_cmap(&spec, &q, coeff, zero, &[Value::Mod(1)]).unwrap();
        assert_eq!(c2.verify(), Ok(()));
    }

    #[test]
    fn explicit_cocycle_a1_p3() {
        let q = explicit_p2_cocycle(
            3,
            P2Nontrivial::A1 { alpha: 2 },
            1,
            CoefficientGroup::TorsionRational.zero(),
        )
        .unwrap();
        assert_eq!(q.verify(), Ok(()));
        let first = q.get(0, 0);
        assert!((0..9).any(|x| (0..9).any(|y| q.get(x, y) != first)));
    }

    #[test]
    fn lambda_shifts_by_constant() {
        let l = CoefficientGroup::frac(1, 2);
        let coeff = CoefficientGroup::TorsionRational;
        let q0 = explicit_p2_cocycle(3, P2Nontrivial::A2, 1, coeff.zero()).unwrap();
        let q1 = explicit_p2_cocycle(3, P2Nontrivial::A2, 1, l).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(coeff.sub(q1.get(x, y), q0.get(x, y)), l);
            }
        }
    }
}
