//! The finite quotient of a quandle's enveloping presentation, materialized
//! by coset enumeration, and the subgroup machinery built on top of it:
//! commutator subgroups, point stabilizers with Schreier generators,
//! centralizers, and invariant-factor decompositions of abelian quotients.
//!
//! Every subgroup generator and witness is stored with a degree-0 word
//! (exponent sum zero), so evaluation lifts from the finite quotient to the
//! infinite enveloping group on commutator-subgroup elements.

mod abelian;
mod todd_coxeter;

pub use abelian::{abelian_structure, AbelianStructure, SmallGroup};
pub use todd_coxeter::todd_coxeter;

use crate::perm::Perm;
use crate::quandle::{inner_action, Quandle};
use crate::word::Word;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EnumerationError {
    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    CapExceeded { cap: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum GroupError {
    #[error("relator {relator} acts as a non-identity permutation")]
    RelatorActsNontrivially { relator: usize },
    #[error("the subgroup does not act transitively on the quandle")]
    ActionNotTransitive,
}

/// A finite presentation: generator count plus freely reduced relators.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n_gens: usize,
    pub relators: Vec<Word>,
}

/// The enveloping presentation of a quandle: braid-type relators
/// `x_i x_j x_i⁻¹ x_{i▷j}⁻¹` (those that do not reduce to the empty word,
/// which drops the `i = j` case) plus the translation-order relators
/// `x_i^{n_i}` with `n_i = ord(φ_i)`. The group so presented is the finite
/// quotient on which the whole pipeline runs.
pub fn enveloping_presentation(q: &Quandle) -> Presentation {
    let n = q.size();
    let ia = inner_action(q);
    let mut relators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = Word::from_letters([(i, 1), (j, 1), (i, -1), (q.act(i, j), -1)]);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    for (i, &ni) in ia.orders.iter().enumerate() {
        relators.push(Word::from_letters(std::iter::repeat((i, 1)).take(ni)));
    }
    Presentation { n_gens: n, relators }
}

/// A finite group materialized as multiplication tables over element indices,
/// with the identity at index 0 and a witness word per element.
#[derive(Clone, Debug)]
pub struct CayleyGroup {
    n_gens: usize,
    order: usize,
    mul: Vec<u32>,
    mul_inv: Vec<u32>,
    inv: Vec<u32>,
    witness: Vec<Word>,
    gen_image: Vec<u32>,
}

impl CayleyGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Image of generator `g` in the quotient.
    pub fn gen_image(&self, g: usize) -> usize {
        self.gen_image[g] as usize
    }

    /// Right multiplication by a signed generator.
    #[inline]
    pub fn mul_gen(&self, e: usize, g: usize, exp: i8) -> usize {
        if exp >= 0 {
            self.mul[e * self.n_gens + g] as usize
        } else {
            self.mul_inv[e * self.n_gens + g] as usize
        }
    }

    /// Right multiplication by a word: `e · w`.
    pub fn apply_word(&self, e: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(e, |acc, &(g, exp)| self.mul_gen(acc, g, exp))
    }

    /// Full multiplication `a · b`, via the witness word of `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.apply_word(a, &self.witness[b])
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inv[e] as usize
    }

    /// Conjugation `a b a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inverse(a))
    }

    /// Evaluates a word at the identity.
    pub fn eval(&self, w: &Word) -> usize {
        self.apply_word(0, w)
    }

    pub fn witness(&self, e: usize) -> &Word {
        &self.witness[e]
    }

    /// Order of an element.
    pub fn element_order(&self, e: usize) -> usize {
        let mut k = 1;
        let mut cur = e;
        while cur != 0 {
            cur = self.mul(cur, e);
            k += 1;
        }
        k
    }

    /// Build-time consistency scan: every relator fixes every element under
    /// right multiplication, and every witness evaluates to its element.
    fn verify(&self, p: &Presentation) {
        for e in 0..self.order {
            for r in &p.relators {
                assert_eq!(
                    self.apply_word(e, r),
                    e,
                    "relator {r:?} does not stabilize element {e}"
                );
            }
            assert_eq!(self.eval(self.witness(e)), e, "bad witness for {e}");
        }
    }
}

/// The action of a [`CayleyGroup`] on the quandle it envelops: one
/// permutation per group element, generator `i` acting as `φ_{x_i}`.
#[derive(Clone, Debug)]
pub struct Action {
    perms: Vec<Perm>,
}

impl Action {
    pub fn of(&self, e: usize) -> &Perm {
        &self.perms[e]
    }

    pub fn apply(&self, e: usize, point: usize) -> usize {
        self.perms[e].apply(point)
    }
}

/// Extends `x_i ↦ φ_{x_i}` to the whole group, verifying along the way that
/// every relator acts as the identity permutation.
pub fn action_on_x(group: &CayleyGroup, q: &Quandle) -> Result<Action, GroupError> {
    let ia = inner_action(q);
    let phi = &ia.generators;
    let phi_inv: Vec<Perm> = phi.iter().map(|p| p.inverse()).collect();
    for (k, r) in enveloping_presentation(q).relators.iter().enumerate() {
        let mut p = Perm::identity(q.size());
        for &(g, e) in r.letters() {
            let factor = if e >= 0 { &phi[g] } else { &phi_inv[g] };
            p = p.compose(factor);
        }
        if !p.is_identity() {
            return Err(GroupError::RelatorActsNontrivially { relator: k });
        }
    }
    // (uv) ▷ x = u ▷ (v ▷ x): extend along witness words.
    let perms: Vec<Perm> = (0..group.order())
        .map(|e| {
            let mut p = Perm::identity(q.size());
            for &(g, exp) in group.witness(e).letters() {
                let factor = if exp >= 0 { &phi[g] } else { &phi_inv[g] };
                p = p.compose(factor);
            }
            p
        })
        .collect();
    Ok(Action { perms })
}

/// A subgroup of a [`CayleyGroup`] held as an explicit element set, with
/// degree-0 generator words and (when tracked) a degree-0 witness word per
/// element.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<(usize, Word)>,
    witnesses: HashMap<usize, Word>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn word_of(&self, e: usize) -> Option<&Word> {
        self.witnesses.get(&e)
    }

    /// Closure of a generator list under multiplication, tracking witness
    /// words (products of generator words).
    pub fn close(group: &CayleyGroup, generators: Vec<(usize, Word)>) -> Subgroup {
        let mut witnesses = HashMap::new();
        witnesses.insert(group.identity(), Word::empty());
        let mut frontier = vec![group.identity()];
        while let Some(e) = frontier.pop() {
            for (ge, gw) in &generators {
                let next = group.mul(e, *ge);
                if !witnesses.contains_key(&next) {
                    let w = witnesses[&e].concat(gw);
                    witnesses.insert(next, w);
                    frontier.push(next);
                }
                let ge_inv = group.inverse(*ge);
                let prev = group.mul(e, ge_inv);
                if !witnesses.contains_key(&prev) {
                    let w = witnesses[&e].concat(&gw.inverse());
                    witnesses.insert(prev, w);
                    frontier.push(prev);
                }
            }
        }
        let mut elements: Vec<usize> = witnesses.keys().copied().collect();
        elements.sort_unstable();
        Subgroup {
            elements,
            generators,
            witnesses,
        }
    }

    /// Element-set intersection; generator words are not carried over.
    pub fn intersect(&self, other: &Subgroup) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect()
    }
}

/// The commutator subgroup, generated by the commutators `[x_i, x_j]` of
/// generator images and closed under conjugation by every generator. All
/// stored words are built from degree-0 atoms.
pub fn commutator_subgroup(group: &CayleyGroup) -> Subgroup {
    let n = group.n_gens();
    let mut gens: Vec<(usize, Word)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    seen.insert(group.identity());
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = Word::from_letters([(i, 1), (j, 1), (i, -1), (j, -1)]);
            let e = group.eval(&w);
            if seen.insert(e) {
                gens.push((e, w));
            }
        }
    }
    let mut sub = Subgroup::close(group, gens.clone());
    loop {
        let mut added = false;
        let snapshot = gens.clone();
        for (_, w) in &snapshot {
            for k in 0..n {
                let cw = w.conjugate_by_gen(k);
                let ce = group.eval(&cw);
                if !sub.contains(ce) {
                    gens.push((ce, cw));
                    sub = Subgroup::close(group, gens.clone());
                    added = true;
                }
            }
        }
        if !added {
            return sub;
        }
    }
}

/// An orbit transversal of `X` inside the degree-0 part of the group:
/// `rep[x0]` is the identity and `rep[x_i ▷ y] = x_i · rep[y] · x0⁻¹`,
/// which keeps every word at degree 0 and satisfies `rep[y] ▷ x0 = y`.
pub fn orbit_transversal(
    group: &CayleyGroup,
    act: &Action,
    q: &Quandle,
    x0: usize,
) -> Vec<(usize, Word)> {
    let n = q.size();
    let mut reps: Vec<Option<(usize, Word)>> = vec![None; n];
    reps[x0] = Some((group.identity(), Word::empty()));
    let mut frontier = vec![x0];
    while let Some(y) = frontier.pop() {
        let wy = reps[y].as_ref().unwrap().1.clone();
        for i in 0..n {
            let img = q.act(i, y);
            if reps[img].is_none() {
                let mut w = Word::generator(i);
                w = w.concat(&wy);
                w.push((x0, -1));
                let e = group.eval(&w);
                debug_assert_eq!(act.apply(e, x0), img);
                reps[img] = Some((e, w));
                frontier.push(img);
            }
        }
    }
    reps.into_iter()
        .map(|r| r.expect("indecomposable quandle sweeps all points"))
        .collect()
}

/// The stabilizer of `x0` inside `sub`, with Schreier generators
/// `rep[g▷y]⁻¹ · g · rep[y]` built from the degree-0 orbit transversal.
pub fn stabilizer(
    group: &CayleyGroup,
    sub: &Subgroup,
    act: &Action,
    q: &Quandle,
    x0: usize,
) -> Result<Subgroup, GroupError> {
    let n = q.size();
    // Transitivity of the subgroup action.
    let mut orbit = vec![false; n];
    orbit[x0] = true;
    let mut frontier = vec![x0];
    let mut count = 1;
    while let Some(y) = frontier.pop() {
        for (ge, _) in &sub.generators {
            for e in [*ge, group.inverse(*ge)] {
                let img = act.apply(e, y);
                if !orbit[img] {
                    orbit[img] = true;
                    count += 1;
                    frontier.push(img);
                }
            }
        }
    }
    if count != n {
        return Err(GroupError::ActionNotTransitive);
    }

    let reps = orbit_transversal(group, act, q, x0);
    for (e, w) in &reps {
        debug_assert!(sub.contains(*e), "transversal rep must lie in the subgroup");
        debug_assert_eq!(w.degree(), 0);
    }

    let stab_elements: Vec<usize> = sub
        .elements
        .iter()
        .copied()
        .filter(|&e| act.apply(e, x0) == x0)
        .collect();

    let mut gens: Vec<(usize, Word)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    seen.insert(group.identity());
    for (ge, gw) in &sub.generators {
        for y in 0..n {
            let img = act.apply(*ge, y);
            let w = reps[img].1.inverse().concat(gw).concat(&reps[y].1);
            let e = group.eval(&w);
            debug_assert_eq!(act.apply(e, x0), x0);
            if seen.insert(e) {
                gens.push((e, w));
            }
        }
    }
    let stab = Subgroup::close(group, gens);
    assert_eq!(
        stab.elements, stab_elements,
        "Schreier generators must generate the full stabilizer"
    );
    assert_eq!(sub.order(), n * stab.order());
    Ok(stab)
}

/// `{h : he = eh}` by direct scan. No generator words are tracked.
pub fn centralizer(group: &CayleyGroup, e: usize) -> Subgroup {
    let elements: Vec<usize> = (0..group.order())
        .filter(|&h| group.mul(h, e) == group.mul(e, h))
        .collect();
    Subgroup {
        elements,
        generators: Vec::new(),
        witnesses: HashMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{dihedral_table, Quandle};

    fn dihedral(n: usize) -> Quandle {
        Quandle::from_table(dihedral_table(n)).unwrap()
    }

    #[test]
    fn single_involution() {
        let p = Presentation {
            n_gens: 1,
            relators: vec![Word::from_letters([(0, 1), (0, 1)])],
        };
        let g = todd_coxeter(&p, 100).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn trivial_quandle_presentation() {
        let q = Quandle::trivial(1);
        let p = enveloping_presentation(&q);
        assert_eq!(p.n_gens, 1);
        let g = todd_coxeter(&p, 100).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn dihedral3_quotient_is_s3() {
        let q = dihedral(3);
        let p = enveloping_presentation(&q);
        // 6 braid-type relators plus 3 squares.
        assert_eq!(p.relators.len(), 9);
        let g = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(g.order(), 6);
        let n = commutator_subgroup(&g);
        assert_eq!(n.order(), 3);
    }

    #[test]
    fn transpositions_s4_quotient() {
        let gens = vec![
            Perm::transposition(4, 0, 1),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]),
        ];
        let q =
            crate::quandle::conjugation_quandle(&gens, &Perm::transposition(4, 0, 1), 10_000)
                .unwrap();
        let p = enveloping_presentation(&q);
        assert_eq!(p.n_gens, 6);
        let g = todd_coxeter(&p, 10_000).unwrap();
        assert_eq!(g.order(), 24);
        let n = commutator_subgroup(&g);
        assert_eq!(n.order(), 12);
        let act = action_on_x(&g, &q).unwrap();
        let stab = stabilizer(&g, &n, &act, &q, 0).unwrap();
        assert_eq!(stab.order(), 2);
    }

    #[test]
    fn dihedral3_action() {
        let q = dihedral(3);
        let g = todd_coxeter(&enveloping_presentation(&q), 1000).unwrap();
        let act = action_on_x(&g, &q).unwrap();
        assert!(act.of(g.identity()).is_identity());
        assert_eq!(act.of(g.gen_image(0)).images(), &[0, 2, 1]);
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let q = dihedral(5);
        let p = enveloping_presentation(&q);
        assert!(matches!(
            todd_coxeter(&p, 3),
            Err(EnumerationError::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn degree_zero_discipline() {
        let q = dihedral(3);
        let g = todd_coxeter(&enveloping_presentation(&q), 1000).unwrap();
        let n = commutator_subgroup(&g);
        for (_, w) in &n.generators {
            assert_eq!(w.degree(), 0);
        }
        for e in &n.elements {
            assert_eq!(n.word_of(*e).unwrap().degree(), 0);
        }
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let q = dihedral(3);
        let g = todd_coxeter(&enveloping_presentation(&q), 1000).unwrap();
        let c = centralizer(&g, g.identity());
        assert_eq!(c.order(), g.order());
    }
}
