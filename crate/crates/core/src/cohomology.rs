//! The cocycle engine: normalized coset transversals, reconstruction of
//! 2-cocycle tables from a finite datum `(a, g)`, decomposition of cocycles
//! back into data, verification, and cohomologous testing.
//!
//! The correspondence implemented here is `H²(X, A) ≅ A × Hom(N₀, A)` for a
//! finite indecomposable quandle `X`: `a` is the value `q_{x₀,x₀}` and `g` is
//! a character of the stabilizer `N₀`, evaluated through the invariant-factor
//! coordinates of its abelianization.

use crate::coeff::{CoefficientGroup, Value};
use crate::fp_group::{
    abelian_structure, action_on_x, commutator_subgroup, enveloping_presentation, orbit_transversal,
    stabilizer, todd_coxeter, AbelianStructure, Action, CayleyGroup, EnumerationError, GroupError,
    Subgroup,
};
use crate::perm::gcd;
use crate::quandle::{inner_action, ParseError, Quandle};
use crate::word::Word;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum PipelineError {
    #[error("the table is a rack but the pipeline requires a quandle")]
    NotAQuandle,
    #[error("the quandle is not indecomposable")]
    NotIndecomposable,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EngineError {
    #[error("not a 2-cocycle: condition fails at ({x},{y},{z})")]
    NotACocycle { x: usize, y: usize, z: usize },
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("character evaluation is inconsistent (degree-0 discipline violated)")]
    CharacterInconsistent,
    #[error("cocycles live on different quandles or coefficient groups")]
    Mismatch,
}

/// An `n×n` table of coefficient values attached to a quandle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle {
    pub quandle: Quandle,
    pub coeff: CoefficientGroup,
    values: Vec<Value>,
}

impl Cocycle {
    pub fn constant(q: &Quandle, coeff: CoefficientGroup, a: Value) -> Self {
        let n = q.size();
        Cocycle {
            quandle: q.clone(),
            coeff,
            values: vec![a; n * n],
        }
    }

    pub fn from_values(q: &Quandle, coeff: CoefficientGroup, values: Vec<Value>) -> Self {
        assert_eq!(values.len(), q.size() * q.size());
        Cocycle {
            quandle: q.clone(),
            coeff,
            values,
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Value {
        self.values[x * self.quandle.size() + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: Value) {
        self.values[x * self.quandle.size() + y] = v;
    }

    /// Full scan of the cocycle condition
    /// `q_{x▷y,x▷z} + q_{x,z} = q_{x,y▷z} + q_{y,z}`; returns the first
    /// failing triple.
    pub fn verify(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.quandle.size();
        let a = &self.coeff;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = a.add(
                        self.get(self.quandle.act(x, y), self.quandle.act(x, z)),
                        self.get(x, z),
                    );
                    let rhs = a.add(self.get(x, self.quandle.act(y, z)), self.get(y, z));
                    if lhs != rhs {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the cocycle is normalized in the quandle sense
    /// (`q_{x,x} = 0` for all `x`). Kept separate from [`Cocycle::verify`]:
    /// the second cohomology computed here is rack cohomology.
    pub fn is_quandle_normalized(&self) -> bool {
        (0..self.quandle.size()).all(|x| self.get(x, x) == self.coeff.zero())
    }

    /// Adds the coboundary `dγ(x,y) = γ(x▷y) − γ(y)` of `gamma`.
    pub fn plus_coboundary(&self, gamma: &[Value]) -> Cocycle {
        let n = self.quandle.size();
        assert_eq!(gamma.len(), n);
        let mut out = self.clone();
        for x in 0..n {
            for y in 0..n {
                let d = self.coeff.sub(gamma[self.quandle.act(x, y)], gamma[y]);
                out.set(x, y, self.coeff.add(self.get(x, y), d));
            }
        }
        out
    }

    /// Serializes to the `.coc` format: `n <n> coeff <tag>` then `n` rows.
    pub fn to_coc(&self) -> String {
        let n = self.quandle.size();
        let mut out = format!("n {} coeff {}\n", n, self.coeff.tag());
        for x in 0..n {
            let row: Vec<String> = (0..n).map(|y| self.coeff.render(self.get(x, y))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `.coc` format and binds the table to `q`.
    pub fn parse_coc(input: &str, q: &Quandle) -> Result<Cocycle, ParseError> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim_start();
                !t.is_empty() && !t.starts_with('#')
            });
        let (hline, header) = lines.next().ok_or(ParseError {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || ParseError {
            line: hline,
            col: 1,
            msg: format!("expected header `n <n> coeff <tag>`, got {header:?}"),
        };
        if toks.len() != 4 || toks[0] != "n" || toks[2] != "coeff" {
            return Err(bad_header());
        }
        let n: usize = toks[1].parse().map_err(|_| bad_header())?;
        if n != q.size() {
            return Err(ParseError {
                line: hline,
                col: 1,
                msg: format!("cocycle is {n}×{n} but the quandle has {} elements", q.size()),
            });
        }
        let coeff = CoefficientGroup::parse_tag(toks[3]).map_err(|_| bad_header())?;
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            let (lno, line) = lines.next().ok_or(ParseError {
                line: hline,
                col: 1,
                msg: format!("expected {n} rows, got {x}"),
            })?;
            let mut count = 0;
            for tok in line.split_whitespace() {
                let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
                let v = coeff.parse(tok).map_err(|e| ParseError {
                    line: lno,
                    col,
                    msg: e.to_string(),
                })?;
                values.push(v);
                count += 1;
            }
            if count != n {
                return Err(ParseError {
                    line: lno,
                    col: 1,
                    msg: format!("expected {n} entries, got {count}"),
                });
            }
        }
        Ok(Cocycle::from_values(q, coeff, values))
    }
}

/// The finite datum describing a cohomology class: a coefficient value `a`
/// and a character of `N₀` stored as one value per invariant factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CocycleDatum {
    pub a: Value,
    pub g: Vec<Value>,
}

/// A transversal of `N₀` in the commutator subgroup normalized so that the
/// identity represents the base coset, conjugation by the base generator
/// permutes the representatives, and the representatives sweep the quandle
/// through the base point.
#[derive(Clone, Debug)]
pub struct GoodTransversal {
    pub x0: usize,
    /// `reps[j] = (element, degree-0 word)`, with `reps[0]` the identity.
    pub reps: Vec<(usize, Word)>,
    /// `rep_of_point[y] = j` with `reps[j] ▷ x0 = y`.
    pub rep_of_point: Vec<usize>,
}

/// Builds a good transversal by refining the orbit transversal: repeatedly
/// pick the least conjugate `x0^t ▷ σ_j` that is not itself a representative
/// and promote it to represent its own coset. Coset membership never changes
/// (the promoted conjugate fixes the same swept point), so the sweep property
/// is preserved, and the total conjugate count strictly drops each round.
pub fn good_transversal(
    group: &CayleyGroup,
    nx: &Subgroup,
    act: &Action,
    q: &Quandle,
    x0: usize,
) -> GoodTransversal {
    let n = q.size();
    let by_point = orbit_transversal(group, act, q, x0);
    // σ_0 = identity (the rep of x0), then the other points in index order.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    order.push(x0);
    order.extend((0..n).filter(|&y| y != x0));
    let mut reps: Vec<(usize, Word)> = order.iter().map(|&y| by_point[y].clone()).collect();
    let mut rep_of_point = vec![0usize; n];
    for (j, &y) in order.iter().enumerate() {
        rep_of_point[y] = j;
    }

    let gx0 = group.gen_image(x0);
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        assert!(
            rounds <= nx.order() + 1,
            "transversal refinement failed to terminate"
        );
        let in_s: std::collections::HashSet<usize> =
            reps.iter().skip(1).map(|&(e, _)| e).collect();
        // Walk conjugates τ_{j,t} = x0^t ▷ σ_j in (coset index, power) order
        // up to t_j = min{t ≥ 1 : x0^t ▷ σ_j = σ_j}; take the first escapee.
        let mut escapee: Option<(usize, usize)> = None;
        'outer: for (j, rep) in reps.iter().enumerate().skip(1) {
            let mut cur = rep.0;
            let mut t = 0usize;
            loop {
                cur = group.conj(gx0, cur);
                t += 1;
                if cur == rep.0 {
                    break;
                }
                if !in_s.contains(&cur) {
                    escapee = Some((j, t));
                    break 'outer;
                }
            }
        }
        let Some((j, t)) = escapee else {
            break;
        };
        let mut tau = reps[j].0;
        for _ in 0..t {
            tau = group.conj(gx0, tau);
        }
        let mut w = Word::empty();
        for _ in 0..t {
            w.push((x0, 1));
        }
        w = w.concat(&reps[j].1);
        for _ in 0..t {
            w.push((x0, -1));
        }
        debug_assert_eq!(group.eval(&w), tau);
        let point = act.apply(tau, x0);
        let ell = rep_of_point[point];
        assert_ne!(ell, 0, "the base coset representative is never replaced");
        reps[ell] = (tau, w);
    }

    let t = GoodTransversal {
        x0,
        reps,
        rep_of_point,
    };
    t.assert_conditions(group, act, q);
    t
}

impl GoodTransversal {
    /// Checks the three normalization conditions and the witness discipline.
    pub fn assert_conditions(&self, group: &CayleyGroup, act: &Action, q: &Quandle) {
        assert_eq!(self.reps[0].0, group.identity(), "σ₀ must be the identity");
        assert_eq!(self.reps.len(), q.size());
        let set: std::collections::HashSet<usize> = self.reps.iter().map(|&(e, _)| e).collect();
        assert_eq!(set.len(), self.reps.len(), "representatives must be distinct");
        let gx0 = group.gen_image(self.x0);
        for &(e, ref w) in &self.reps {
            assert!(
                set.contains(&group.conj(gx0, e)),
                "conjugation by the base generator must permute the representatives"
            );
            assert_eq!(w.degree(), 0);
            assert_eq!(group.eval(w), e);
        }
        let mut points = vec![false; q.size()];
        for (j, &(e, _)) in self.reps.iter().enumerate() {
            let p = act.apply(e, self.x0);
            assert!(!points[p], "representatives must sweep distinct points");
            points[p] = true;
            assert_eq!(self.rep_of_point[p], j);
        }
    }

    /// `σ(n)`: the representative index of the coset of `n`, located through
    /// the swept point `n ▷ x0`.
    pub fn sigma_index(&self, act: &Action, n_elem: usize) -> usize {
        self.rep_of_point[act.apply(n_elem, self.x0)]
    }

    /// `c(n) = σ(n)⁻¹ · n`, an element of the stabilizer.
    pub fn c_of(&self, group: &CayleyGroup, act: &Action, n_elem: usize) -> usize {
        let sigma = self.reps[self.sigma_index(act, n_elem)].0;
        group.mul(group.inverse(sigma), n_elem)
    }

    /// `σ_y`: the representative element whose sweep hits `y`.
    pub fn rep_for_point(&self, y: usize) -> usize {
        self.reps[self.rep_of_point[y]].0
    }
}

/// Everything the engine needs about one quandle: the finite quotient, its
/// action, the commutator subgroup, the stabilizer with its abelianization,
/// and a good transversal.
#[derive(Clone, Debug)]
pub struct H2Context {
    pub quandle: Quandle,
    pub x0: usize,
    pub group: CayleyGroup,
    pub action: Action,
    pub nx: Subgroup,
    pub n0: Subgroup,
    pub n0_ab: AbelianStructure,
    pub transversal: GoodTransversal,
}

impl H2Context {
    pub fn build(q: &Quandle, x0: usize, max_cosets: usize) -> Result<Self, PipelineError> {
        if !q.is_quandle() {
            return Err(PipelineError::NotAQuandle);
        }
        if !inner_action(q).is_transitive() {
            return Err(PipelineError::NotIndecomposable);
        }
        let pres = enveloping_presentation(q);
        let group = todd_coxeter(&pres, max_cosets)?;
        let action = action_on_x(&group, q)?;
        let nx = commutator_subgroup(&group);
        let n0 = stabilizer(&group, &nx, &action, q, x0)?;
        let n0_ab = abelian_structure(&group, &n0);
        let transversal = good_transversal(&group, &nx, &action, q, x0);
        Ok(H2Context {
            quandle: q.clone(),
            x0,
            group,
            action,
            nx,
            n0,
            n0_ab,
            transversal,
        })
    }

    /// Validates a datum against the stabilizer structure: one value per
    /// invariant factor, each annihilated by its factor.
    pub fn check_datum(
        &self,
        coeff: &CoefficientGroup,
        datum: &CocycleDatum,
    ) -> Result<(), EngineError> {
        coeff
            .check(datum.a)
            .map_err(|e| EngineError::InvalidDatum(e.to_string()))?;
        if datum.g.len() != self.n0_ab.factors.len() {
            return Err(EngineError::InvalidDatum(format!(
                "expected {} character components, got {}",
                self.n0_ab.factors.len(),
                datum.g.len()
            )));
        }
        for (i, (&gi, &di)) in datum.g.iter().zip(&self.n0_ab.factors).enumerate() {
            coeff
                .check(gi)
                .map_err(|e| EngineError::InvalidDatum(e.to_string()))?;
            if coeff.scale(di, gi) != coeff.zero() {
                return Err(EngineError::InvalidDatum(format!(
                    "component {i} is not annihilated by its invariant factor {di}"
                )));
            }
        }
        Ok(())
    }

    /// Evaluates the character described by `g` on a stabilizer element.
    pub fn char_eval(&self, coeff: &CoefficientGroup, g: &[Value], n0_elem: usize) -> Value {
        let coords = self.n0_ab.coords(n0_elem);
        let mut acc = coeff.zero();
        for (&c, &gi) in coords.iter().zip(g) {
            acc = coeff.add(acc, coeff.scale(c, gi));
        }
        acc
    }

    /// Rebuilds the full cocycle table from a datum:
    /// `q_{x,y} = a + g(c(x · σ_y · x0⁻¹))`.
    pub fn reconstruct(&self, coeff: CoefficientGroup, datum: &CocycleDatum) -> Cocycle {
        let n = self.quandle.size();
        let gx0_inv = self.group.inverse(self.group.gen_image(self.x0));
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            let gx = self.group.gen_image(x);
            for y in 0..n {
                let sigma_y = self.transversal.rep_for_point(y);
                let prod = self.group.mul(self.group.mul(gx, sigma_y), gx0_inv);
                debug_assert!(self.nx.contains(prod));
                let c = self.transversal.c_of(&self.group, &self.action, prod);
                let v = coeff.add(datum.a, self.char_eval(&coeff, &datum.g, c));
                values.push(v);
            }
        }
        let q = Cocycle::from_values(&self.quandle, coeff, values);
        debug_assert_eq!(q.verify(), Ok(()));
        q
    }

    /// The 1-cocycle extension of `q` evaluated on a word, as the vector of
    /// values over the quandle.
    pub fn evaluate_f(&self, q: &Cocycle, w: &Word) -> Vec<Value> {
        evaluate_f(q, w)
    }

    /// Decomposes a verified cocycle into its datum `(q_{x0,x0}, g)` with
    /// `g(n₀) = f_q(n₀)(x0)` read off the degree-0 witness words of the
    /// stabilizer basis.
    pub fn decompose(&self, q: &Cocycle) -> Result<CocycleDatum, EngineError> {
        if let Err((x, y, z)) = q.verify() {
            return Err(EngineError::NotACocycle { x, y, z });
        }
        let coeff = q.coeff;
        let a = q.get(self.x0, self.x0);
        let mut g = Vec::with_capacity(self.n0_ab.basis.len());
        for (&b, &d) in self.n0_ab.basis.iter().zip(&self.n0_ab.factors) {
            let w = self
                .n0
                .word_of(b)
                .expect("stabilizer elements carry degree-0 witnesses");
            let gi = evaluate_f(q, w)[self.x0];
            if coeff.scale(d, gi) != coeff.zero() {
                return Err(EngineError::CharacterInconsistent);
            }
            g.push(gi);
        }
        // Cross-check the character against every stabilizer element.
        for &e in &self.n0.elements {
            let w = self.n0.word_of(e).unwrap();
            let direct = evaluate_f(q, w)[self.x0];
            if direct != self.char_eval(&coeff, &g, e) {
                return Err(EngineError::CharacterInconsistent);
            }
        }
        Ok(CocycleDatum { a, g })
    }

    /// Every datum over a coefficient group with finitely many elements
    /// (`ℤ_m`); `None` for `ℚ/ℤ`, whose `a`-range is infinite.
    pub fn enumerate_data(&self, coeff: &CoefficientGroup) -> Option<Vec<CocycleDatum>> {
        let avals = coeff.all_elements()?;
        Some(
            avals
                .into_iter()
                .flat_map(|a| {
                    self.enumerate_characters(coeff)
                        .into_iter()
                        .map(move |g| CocycleDatum { a, g })
                })
                .collect(),
        )
    }

    /// Every character vector of `N₀` with values in `coeff` (finite for
    /// both variants).
    pub fn enumerate_characters(&self, coeff: &CoefficientGroup) -> Vec<Vec<Value>> {
        let mut gs: Vec<Vec<Value>> = vec![Vec::new()];
        for &d in &self.n0_ab.factors {
            let opts = coeff.elements_annihilated_by(d);
            gs = gs
                .iter()
                .flat_map(|g| {
                    opts.iter().map(move |&o| {
                        let mut g2 = g.clone();
                        g2.push(o);
                        g2
                    })
                })
                .collect();
        }
        gs
    }

    /// The character basis vectors generating the non-constant part of `H²`:
    /// one datum per invariant factor with nontrivial image in `A`.
    pub fn generator_data(&self, coeff: &CoefficientGroup) -> Vec<CocycleDatum> {
        let r = self.n0_ab.factors.len();
        let mut out = Vec::new();
        for (i, &d) in self.n0_ab.factors.iter().enumerate() {
            let gen = match coeff {
                CoefficientGroup::Cyclic(m) => {
                    let g = gcd(d, *m);
                    if g == 1 {
                        continue;
                    }
                    Value::Mod(m / g)
                }
                CoefficientGroup::TorsionRational => CoefficientGroup::frac(1, d),
            };
            let mut g = vec![coeff.zero(); r];
            g[i] = gen;
            out.push(CocycleDatum { a: coeff.zero(), g });
        }
        out
    }

    /// The order of `H²(X, ℤ_m)`: `m · ∏ gcd(d_i, m)`. `None` for `ℚ/ℤ`.
    pub fn h2_order(&self, coeff: &CoefficientGroup) -> Option<u64> {
        match coeff {
            CoefficientGroup::Cyclic(m) => {
                Some(self.n0_ab.factors.iter().map(|&d| gcd(d, *m)).product::<u64>() * m)
            }
            CoefficientGroup::TorsionRational => None,
        }
    }

    /// Symbolic isomorphism type of `H²(X, A)`: the `A`-factor followed by
    /// one cyclic factor per invariant with nontrivial image.
    pub fn h2_type(&self, coeff: &CoefficientGroup) -> String {
        let mut parts = vec![match coeff {
            CoefficientGroup::Cyclic(m) => format!("Z_{m}"),
            CoefficientGroup::TorsionRational => "A".to_string(),
        }];
        for &d in &self.n0_ab.factors {
            match coeff {
                CoefficientGroup::Cyclic(m) => {
                    let g = gcd(d, *m);
                    if g > 1 {
                        parts.push(format!("Z_{g}"));
                    }
                }
                CoefficientGroup::TorsionRational => parts.push(format!("Z_{d}")),
            }
        }
        parts.join(" x ")
    }

    /// The full pipeline summary for one coefficient group.
    pub fn summary(&self, coeff: &CoefficientGroup) -> H2Summary {
        H2Summary {
            quandle_size: self.quandle.size(),
            fx_order: self.group.order(),
            nx_order: self.nx.order(),
            n0_order: self.n0.order(),
            n0_invariant_factors: self.n0_ab.factors.clone(),
            h2_order: self.h2_order(coeff),
            h2_type: self.h2_type(coeff),
            generators: self
                .generator_data(coeff)
                .iter()
                .map(|d| GeneratorRef {
                    a: coeff.render(d.a),
                    g: d.g.iter().map(|&v| coeff.render(v)).collect(),
                    file: None,
                })
                .collect(),
        }
    }
}

/// Standalone fold of the 1-cocycle extension over a word:
/// `f(uv)(z) = f(u)(v ▷ z) + f(v)(z)` with `f(x_i)(z) = q_{x_i,z}` and
/// `f(x_i⁻¹)(z) = −q_{x_i, x_i⁻¹ ▷ z}`.
pub fn evaluate_f(q: &Cocycle, w: &Word) -> Vec<Value> {
    let n = q.quandle.size();
    let coeff = q.coeff;
    let mut f = vec![coeff.zero(); n];
    for &(g, e) in w.letters() {
        let phi = q.quandle.row_perm(g);
        let mut next = Vec::with_capacity(n);
        if e >= 0 {
            for z in 0..n {
                next.push(coeff.add(f[phi.apply(z)], q.get(g, z)));
            }
        } else {
            let phi_inv = phi.inverse();
            for z in 0..n {
                let pz = phi_inv.apply(z);
                next.push(coeff.sub(f[pz], q.get(g, pz)));
            }
        }
        f = next;
    }
    f
}

/// Solves `γ(x▷y) − γ(y) = (q' − q)_{x,y}` by fixing `γ = 0` at a base point
/// and propagating over the connected action graph, then checking every
/// constraint. Returns the correcting function when the cocycles are
/// cohomologous.
pub fn are_cohomologous(q1: &Cocycle, q2: &Cocycle) -> Result<Option<Vec<Value>>, EngineError> {
    if q1.quandle != q2.quandle || q1.coeff != q2.coeff {
        return Err(EngineError::Mismatch);
    }
    let n = q1.quandle.size();
    let coeff = q1.coeff;
    let delta = |x: usize, y: usize| coeff.sub(q2.get(x, y), q1.get(x, y));
    let mut gamma: Vec<Option<Value>> = vec![None; n];
    gamma[0] = Some(coeff.zero());
    let mut frontier = vec![0usize];
    while let Some(y) = frontier.pop() {
        for x in 0..n {
            let img = q1.quandle.act(x, y);
            if gamma[img].is_none() {
                gamma[img] = Some(coeff.add(gamma[y].unwrap(), delta(x, y)));
                frontier.push(img);
            }
            let pre = q1.quandle.act_inv(x, y);
            if gamma[pre].is_none() {
                gamma[pre] = Some(coeff.sub(gamma[y].unwrap(), delta(x, pre)));
                frontier.push(pre);
            }
        }
    }
    let gamma: Vec<Value> = match gamma.into_iter().collect::<Option<Vec<_>>>() {
        Some(g) => g,
        None => return Err(EngineError::Mismatch), // decomposable quandle
    };
    for x in 0..n {
        for y in 0..n {
            if coeff.sub(gamma[q1.quandle.act(x, y)], gamma[y]) != delta(x, y) {
                return Ok(None);
            }
        }
    }
    Ok(Some(gamma))
}

/// One generator reference in a summary: the datum, plus the file it was
/// written to when emitted by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRef {
    pub a: String,
    pub g: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

/// JSON-stable summary of the cohomology computation.
#[derive(Clone, Debug, Serialize)]
pub struct H2Summary {
    pub quandle_size: usize,
    pub fx_order: usize,
    pub nx_order: usize,
    pub n0_order: usize,
    pub n0_invariant_factors: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2_order: Option<u64>,
    pub h2_type: String,
    pub generators: Vec<GeneratorRef>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{dihedral_table, Quandle};

    fn ctx(q: &Quandle) -> H2Context {
        H2Context::build(q, 0, 100_000).unwrap()
    }

    fn dihedral(n: usize) -> Quandle {
        Quandle::from_table(dihedral_table(n)).unwrap()
    }

    #[test]
    fn dihedral3_pipeline_orders() {
        let c = ctx(&dihedral(3));
        assert_eq!(c.group.order(), 6);
        assert_eq!(c.nx.order(), 3);
        assert_eq!(c.n0.order(), 1);
        assert!(c.n0_ab.factors.is_empty());
        assert_eq!(c.h2_order(&CoefficientGroup::Cyclic(3)), Some(3));
    }

    #[test]
    fn transversal_conditions_dihedral3() {
        let c = ctx(&dihedral(3));
        // N₀ trivial: the transversal is all of N_X.
        assert_eq!(c.transversal.reps.len(), 3);
        c.transversal
            .assert_conditions(&c.group, &c.action, &c.quandle);
    }

    #[test]
    fn coset_maps_factorization() {
        let q = dihedral(5);
        let c = ctx(&q);
        for &n in &c.nx.elements {
            let s = c.transversal.reps[c.transversal.sigma_index(&c.action, n)].0;
            let cc = c.transversal.c_of(&c.group, &c.action, n);
            assert!(c.n0.contains(cc));
            assert_eq!(c.group.mul(s, cc), n);
        }
        // c(n·n₀) = c(n)·n₀.
        for &n in &c.nx.elements {
            for &n0 in &c.n0.elements {
                let lhs = c.transversal.c_of(&c.group, &c.action, c.group.mul(n, n0));
                let rhs = c.group.mul(c.transversal.c_of(&c.group, &c.action, n), n0);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn constant_reconstruction_round_trip() {
        let c = ctx(&dihedral(3));
        let coeff = CoefficientGroup::Cyclic(3);
        let datum = CocycleDatum {
            a: Value::Mod(2),
            g: vec![],
        };
        let q = c.reconstruct(coeff, &datum);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q.get(x, y), Value::Mod(2));
            }
        }
        assert_eq!(q.verify(), Ok(()));
        assert_eq!(c.decompose(&q).unwrap(), datum);
    }

    #[test]
    fn verify_catches_perturbation() {
        let c = ctx(&dihedral(3));
        let mut q = c.reconstruct(
            CoefficientGroup::Cyclic(3),
            &CocycleDatum {
                a: Value::Mod(1),
                g: vec![],
            },
        );
        q.set(0, 1, Value::Mod(0));
        assert!(q.verify().is_err());
    }

    #[test]
    fn evaluate_f_base_cases() {
        let c = ctx(&dihedral(3));
        let q = c.reconstruct(
            CoefficientGroup::Cyclic(3),
            &CocycleDatum {
                a: Value::Mod(1),
                g: vec![],
            },
        );
        let f = evaluate_f(&q, &Word::empty());
        assert!(f.iter().all(|&v| v == Value::Mod(0)));
        let fx = evaluate_f(&q, &Word::generator(1));
        assert_eq!(fx, vec![q.get(1, 0), q.get(1, 1), q.get(1, 2)]);
    }

    #[test]
    fn cohomologous_detects_coboundary() {
        let q = dihedral(5);
        let c = ctx(&q);
        let coeff = CoefficientGroup::Cyclic(4);
        let base = c.reconstruct(
            coeff,
            &CocycleDatum {
                a: Value::Mod(3),
                g: vec![],
            },
        );
        let gamma = vec![
            Value::Mod(1),
            Value::Mod(3),
            Value::Mod(0),
            Value::Mod(2),
            Value::Mod(1),
        ];
        let shifted = base.plus_coboundary(&gamma);
        assert_eq!(shifted.verify(), Ok(()));
        let found = are_cohomologous(&base, &shifted).unwrap().unwrap();
        assert_eq!(base.plus_coboundary(&found), shifted);
        // Distinct constants are never cohomologous.
        let other = c.reconstruct(
            coeff,
            &CocycleDatum {
                a: Value::Mod(1),
                g: vec![],
            },
        );
        assert!(are_cohomologous(&base, &other).unwrap().is_none());
    }

    #[test]
    fn coc_round_trip() {
        let q = dihedral(3);
        let c = ctx(&q);
        let cocycle = c.reconstruct(
            CoefficientGroup::Cyclic(3),
            &CocycleDatum {
                a: Value::Mod(2),
                g: vec![],
            },
        );
        let s = cocycle.to_coc();
        assert_eq!(Cocycle::parse_coc(&s, &q).unwrap(), cocycle);
        let qz = Cocycle::constant(
            &q,
            CoefficientGroup::TorsionRational,
            CoefficientGroup::frac(2, 3),
        );
        assert_eq!(Cocycle::parse_coc(&qz.to_coc(), &q).unwrap(), qz);
    }
}
