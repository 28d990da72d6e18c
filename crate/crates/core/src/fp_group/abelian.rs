//! Invariant-factor decomposition of small abelian quotients.
//!
//! Subgroups here are desk-scale (a point stabilizer and its abelianization),
//! so the structure algorithm is the elementary one: split off a cyclic
//! factor of maximal order, recurse on the quotient, lift the basis, and
//! recover coordinates by exhaustive enumeration.

use super::{CayleyGroup, Subgroup};
use std::collections::HashMap;

/// A small group captured as a dense multiplication table over local indices,
/// remembering the parent Cayley element of each index.
#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub size: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub to_parent: Vec<usize>,
}

impl SmallGroup {
    pub fn from_subgroup(group: &CayleyGroup, sub: &Subgroup) -> Self {
        let to_parent = sub.elements.clone();
        let index: HashMap<usize, usize> = to_parent
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let k = to_parent.len();
        let mut mul = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = group.mul(to_parent[i], to_parent[j]);
                mul[i * k + j] = *index
                    .get(&prod)
                    .expect("subgroup closed under multiplication")
                    as u32;
            }
        }
        let mut inv = vec![0u32; k];
        for i in 0..k {
            let e = group.inverse(to_parent[i]);
            inv[i] = index[&e] as u32;
        }
        SmallGroup {
            size: k,
            mul,
            inv,
            to_parent,
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn id(&self) -> usize {
        // Index 0 is the parent identity: subgroup element lists are sorted
        // and always contain parent index 0.
        0
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut cur = a;
        while cur != self.id() {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.id();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Subgroup closure of a generating set, as a sorted local index set.
    fn close_set(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.size];
        in_set[self.id()] = true;
        let mut frontier = vec![self.id()];
        while let Some(e) = frontier.pop() {
            for &g in gens {
                for next in [self.mul(e, g), self.mul(e, self.inv(g))] {
                    if !in_set[next] {
                        in_set[next] = true;
                        frontier.push(next);
                    }
                }
            }
        }
        (0..self.size).filter(|&i| in_set[i]).collect()
    }

    /// The derived subgroup: normal closure of all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                let c = self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b));
                if c != self.id() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        // Commutator sets of a whole group are conjugation-closed already;
        // the closure below is still cheap at this scale.
        self.close_set(&gens)
    }

    /// The quotient by a normal subgroup given as a local index set.
    /// Returns the quotient group and the projection map.
    pub fn quotient(&self, normal: &[usize]) -> (SmallGroup, Vec<usize>) {
        let mut coset_rep: Vec<Option<usize>> = vec![None; self.size];
        let mut reps: Vec<usize> = Vec::new();
        for e in 0..self.size {
            if coset_rep[e].is_some() {
                continue;
            }
            let rep = e;
            for &n in normal {
                coset_rep[self.mul(e, n)] = Some(rep);
            }
            reps.push(rep);
        }
        let rep_index: HashMap<usize, usize> =
            reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let proj: Vec<usize> = (0..self.size)
            .map(|e| rep_index[&coset_rep[e].unwrap()])
            .collect();
        let k = reps.len();
        let mut mul = vec![0u32; k * k];
        let mut inv = vec![0u32; k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = proj[self.mul(reps[i], reps[j])] as u32;
            }
            inv[i] = proj[self.inv(reps[i])] as u32;
        }
        let quot = SmallGroup {
            size: k,
            mul,
            inv,
            to_parent: reps, // parent here means indices into `self`
        };
        (quot, proj)
    }

    /// Basis of an abelian group with orders forming a divisibility chain
    /// `d₁ | d₂ | … | d_r` (each > 1), as local indices.
    pub fn invariant_basis(&self) -> Vec<(usize, u64)> {
        if self.size == 1 {
            return Vec::new();
        }
        // Maximal-order element; smallest index wins ties for determinism.
        let (a, e) = (0..self.size)
            .map(|i| (i, self.element_order(i)))
            .max_by_key(|&(i, o)| (o, std::cmp::Reverse(i)))
            .unwrap();
        let cyclic: Vec<usize> = (0..e).map(|k| self.pow(a, k)).collect();
        let mut sorted_cyclic = cyclic.clone();
        sorted_cyclic.sort_unstable();
        let (quot, proj) = self.quotient(&sorted_cyclic);
        let sub_basis = quot.invariant_basis();
        let mut basis: Vec<(usize, u64)> = Vec::new();
        for (qb, d) in sub_basis {
            // Lift: r^d lands in ⟨a⟩ as a^t with d | t; correct by a^{-t/d}.
            let r = quot.to_parent[qb];
            let rd = self.pow(r, d);
            let t = cyclic
                .iter()
                .position(|&c| c == rd)
                .expect("power of a lift lies in the split-off cyclic factor")
                as u64;
            assert_eq!(t % d, 0, "maximal-order factor admits a complement");
            let lift = self.mul(r, self.pow(self.inv(a), t / d));
            debug_assert_eq!(self.element_order(lift), d);
            debug_assert_eq!(proj[lift], proj[r]);
            basis.push((lift, d));
        }
        basis.push((a, e));
        basis
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` of an abelianized subgroup, with a
/// basis (as parent element indices) and the coordinate map realizing the
/// isomorphism onto `⊕ ℤ_{d_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    pub factors: Vec<u64>,
    pub basis: Vec<usize>,
    coords: HashMap<usize, Vec<u64>>,
}

impl AbelianStructure {
    /// Coordinates of a subgroup element (as a parent element index).
    pub fn coords(&self, parent_elem: usize) -> &[u64] {
        &self.coords[&parent_elem]
    }

    pub fn quotient_order(&self) -> u64 {
        self.factors.iter().product()
    }
}

/// Computes `(s / [s,s])` with its invariant-factor coordinates.
pub fn abelian_structure(group: &CayleyGroup, sub: &Subgroup) -> AbelianStructure {
    let small = SmallGroup::from_subgroup(group, sub);
    let derived = small.derived_subgroup();
    let (quot, proj) = small.quotient(&derived);
    let basis_local = quot.invariant_basis();
    let factors: Vec<u64> = basis_local.iter().map(|&(_, d)| d).collect();

    // Coordinates by exhaustive enumeration of the quotient.
    let mut coord_of_quot: Vec<Option<Vec<u64>>> = vec![None; quot.size];
    let total: u64 = factors.iter().product();
    for idx in 0..total {
        let mut rem = idx;
        let mut tuple = vec![0u64; factors.len()];
        for i in (0..factors.len()).rev() {
            tuple[i] = rem % factors[i];
            rem /= factors[i];
        }
        let mut e = quot.id();
        for (i, &(b, _)) in basis_local.iter().enumerate() {
            e = quot.mul(e, quot.pow(b, tuple[i]));
        }
        assert!(
            coord_of_quot[e].is_none(),
            "basis enumeration must be bijective"
        );
        coord_of_quot[e] = Some(tuple);
    }
    assert!(
        coord_of_quot.iter().all(|c| c.is_some()),
        "coordinate map must cover the quotient"
    );

    let coords: HashMap<usize, Vec<u64>> = (0..small.size)
        .map(|i| {
            (
                small.to_parent[i],
                coord_of_quot[proj[i]].clone().unwrap(),
            )
        })
        .collect();
    let basis: Vec<usize> = basis_local
        .iter()
        .map(|&(qb, _)| small.to_parent[quot.to_parent[qb]])
        .collect();
    AbelianStructure {
        factors,
        basis,
        coords,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_group::{
        commutator_subgroup, enveloping_presentation, todd_coxeter,
    };
    use crate::quandle::{dihedral_table, Quandle};

    #[test]
    fn trivial_subgroup_has_no_factors() {
        let q = Quandle::from_table(dihedral_table(3)).unwrap();
        let g = todd_coxeter(&enveloping_presentation(&q), 1000).unwrap();
        let trivial = Subgroup::close(&g, Vec::new());
        let ab = abelian_structure(&g, &trivial);
        assert!(ab.factors.is_empty());
        assert_eq!(ab.quotient_order(), 1);
    }

    #[test]
    fn cyclic_three() {
        let q = Quandle::from_table(dihedral_table(3)).unwrap();
        let g = todd_coxeter(&enveloping_presentation(&q), 1000).unwrap();
        let n = commutator_subgroup(&g);
        let ab = abelian_structure(&g, &n);
        assert_eq!(ab.factors, vec![3]);
        // Coordinates form a homomorphism.
        for &x in &n.elements {
            for &y in &n.elements {
                let cx = ab.coords(x)[0];
                let cy = ab.coords(y)[0];
                let cxy = ab.coords(g.mul(x, y))[0];
                assert_eq!((cx + cy) % 3, cxy);
            }
        }
    }
}
