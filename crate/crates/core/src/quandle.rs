//! Finite racks and quandles as explicit operation tables.
//!
//! A table entry at `(x, y)` stores `x ▷ y`. All element indices are 0-based
//! and the left-action convention is fixed throughout: `(uv) ▷ x = u ▷ (v ▷ x)`.

use crate::perm::Perm;
use std::fmt;
use thiserror::Error;

/// Whether a validated table is a quandle (idempotent) or merely a rack.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Rack,
    Quandle,
}

/// The first axiom violation found in a candidate table.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AxiomViolation {
    #[error("entry ({x},{y}) = {val} is out of range for n = {n}")]
    OutOfRange { x: usize, y: usize, val: usize, n: usize },
    #[error("row {x} is not a bijection (value {val} repeats)")]
    NonBijectiveRow { x: usize, val: usize },
    #[error("self-distributivity fails at ({x},{y},{z})")]
    Distributivity { x: usize, y: usize, z: usize },
}

/// Result of [`validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Quandle,
    Rack,
    Invalid(AxiomViolation),
}

/// Classifies an `n×n` index table as a quandle, a rack, or invalid.
///
/// Checks, in order: entries in range, every row a bijection, left
/// self-distributivity `x▷(y▷z) = (x▷y)▷(x▷z)`, and finally idempotence.
pub fn validate(table: &[Vec<usize>]) -> Classification {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Classification::Invalid(AxiomViolation::OutOfRange {
                x,
                y: row.len(),
                val: 0,
                n,
            });
        }
        let mut seen = vec![false; n];
        for (y, &val) in row.iter().enumerate() {
            if val >= n {
                return Classification::Invalid(AxiomViolation::OutOfRange { x, y, val, n });
            }
            if seen[val] {
                return Classification::Invalid(AxiomViolation::NonBijectiveRow { x, val });
            }
            seen[val] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                    return Classification::Invalid(AxiomViolation::Distributivity { x, y, z });
                }
            }
        }
    }
    if (0..n).all(|x| table[x][x] == x) {
        Classification::Quandle
    } else {
        Classification::Rack
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum QuandleError {
    #[error("invalid table: {0}")]
    Invalid(AxiomViolation),
    #[error("table is a rack but not a quandle (x▷x ≠ x at x = {x})")]
    NotAQuandle { x: usize },
    #[error("conjugacy class exceeds cap of {cap} elements")]
    ClassTooLarge { cap: usize },
    #[error("representative does not lie in the generated group")]
    RepNotInGroup,
    #[error("extension datum is not a 2-cocycle (fails at ({x},{y},{z}))")]
    NotACocycle { x: usize, y: usize, z: usize },
}

/// A finite rack or quandle.
#[derive(Clone, PartialEq, Eq)]
pub struct Quandle {
    n: usize,
    table: Vec<usize>,
    kind: Kind,
}

impl Quandle {
    /// Validates and wraps a table; accepts racks as well as quandles.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let kind = match validate(&table) {
            Classification::Quandle => Kind::Quandle,
            Classification::Rack => Kind::Rack,
            Classification::Invalid(v) => return Err(QuandleError::Invalid(v)),
        };
        let n = table.len();
        Ok(Quandle {
            n,
            table: table.into_iter().flatten().collect(),
            kind,
        })
    }

    /// The trivial quandle `x ▷ y = y` on `n` elements.
    pub fn trivial(n: usize) -> Self {
        Quandle {
            n,
            table: (0..n).flat_map(|_| 0..n).collect(),
            kind: Kind::Quandle,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_quandle(&self) -> bool {
        self.kind == Kind::Quandle
    }

    /// `x ▷ y`.
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The inverse action: the unique `z` with `x ▷ z = y`.
    pub fn act_inv(&self, x: usize, y: usize) -> usize {
        self.row_perm(x).inverse().apply(y)
    }

    /// The left translation `φ_x = x ▷ −` as a permutation.
    pub fn row_perm(&self, x: usize) -> Perm {
        Perm::from_images(self.table[x * self.n..(x + 1) * self.n].to_vec())
            .expect("rows of a validated table are bijections")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.table[x * self.n..(x + 1) * self.n].to_vec())
            .collect()
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle(n={}, {:?})", self.n, self.kind)
    }
}

/// The inner group data of a rack: the translations `φ_x`, their orders, and
/// the orbit partition of `⟨φ_x⟩` on the underlying set.
#[derive(Clone, Debug)]
pub struct InnerAction {
    pub generators: Vec<Perm>,
    pub orders: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl InnerAction {
    pub fn is_transitive(&self) -> bool {
        self.orbits.len() <= 1
    }
}

/// Computes the inner action of a valid rack: generators `φ_x`, the orbit
/// partition (by BFS over all translation edges), and each `n_x = ord(φ_x)`.
pub fn inner_action(q: &Quandle) -> InnerAction {
    let n = q.size();
    let generators: Vec<Perm> = (0..n).map(|x| q.row_perm(x)).collect();
    let orders: Vec<usize> = generators.iter().map(|p| p.order()).collect();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut block = vec![start];
        orbit_of[start] = id;
        let mut queue = vec![start];
        while let Some(y) = queue.pop() {
            for p in &generators {
                for img in [p.apply(y), p.inverse().apply(y)] {
                    if orbit_of[img] == usize::MAX {
                        orbit_of[img] = id;
                        block.push(img);
                        queue.push(img);
                    }
                }
            }
        }
        block.sort_unstable();
        orbits.push(block);
    }
    InnerAction {
        generators,
        orders,
        orbits,
    }
}

/// Builds the conjugation quandle on the conjugacy class of `rep` inside the
/// permutation group generated by `gens`, with `x ▷ y = xyx⁻¹`.
///
/// Elements are ordered lexicographically by image tuple so the table is
/// reproducible. The group is materialized by closure, capped at `cap`
/// elements.
pub fn conjugation_quandle(gens: &[Perm], rep: &Perm, cap: usize) -> Result<Quandle, QuandleError> {
    // Full group closure; groups at this scale are at most a few thousand.
    let deg = rep.degree();
    let mut group = vec![Perm::identity(deg)];
    let mut seen: std::collections::HashSet<Perm> = group.iter().cloned().collect();
    let mut frontier = group.clone();
    while let Some(g) = frontier.pop() {
        for h in gens {
            let prod = h.compose(&g);
            if seen.insert(prod.clone()) {
                if seen.len() > cap {
                    return Err(QuandleError::ClassTooLarge { cap });
                }
                group.push(prod.clone());
                frontier.push(prod);
            }
        }
    }
    if !seen.contains(rep) {
        return Err(QuandleError::RepNotInGroup);
    }
    let mut class: Vec<Perm> = group
        .iter()
        .map(|g| g.compose(rep).compose(&g.inverse()))
        .collect();
    class.sort();
    class.dedup();
    if class.len() > cap {
        return Err(QuandleError::ClassTooLarge { cap });
    }
    let index_of = |p: &Perm| class.binary_search(p).expect("class is conjugation-closed");
    let n = class.len();
    let mut table = vec![vec![0; n]; n];
    for (x, gx) in class.iter().enumerate() {
        let gx_inv = gx.inverse();
        for (y, gy) in class.iter().enumerate() {
            table[x][y] = index_of(&gx.compose(gy).compose(&gx_inv));
        }
    }
    let q = Quandle::from_table(table).expect("conjugation tables satisfy the quandle axioms");
    debug_assert!(q.is_quandle());
    Ok(q)
}

/// Extends `q` by a 2-cocycle `f` with values in `ℤ_m`, written additively:
/// `(x,i) ▷ (y,j) = (x▷y, j + f[x][y])`. The pair `(x,i)` gets index `x·m + i`.
///
/// The result is a rack; it is a quandle exactly when `f[x][x] = 0` for all x.
pub fn extension_by_cocycle(
    q: &Quandle,
    m: u64,
    f: &[Vec<u64>],
) -> Result<Quandle, QuandleError> {
    let n = q.size();
    assert_eq!(f.len(), n, "cocycle table must match the quandle size");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = (f[q.act(x, y)][q.act(x, z)] + f[x][z]) % m;
                let rhs = (f[x][q.act(y, z)] + f[y][z]) % m;
                if lhs != rhs {
                    return Err(QuandleError::NotACocycle { x, y, z });
                }
            }
        }
    }
    let mu = m as usize;
    let size = n * mu;
    let mut table = vec![vec![0; size]; size];
    for x in 0..n {
        for i in 0..mu {
            for y in 0..n {
                for j in 0..mu {
                    let jj = (j as u64 + f[x][y]) % m;
                    table[x * mu + i][y * mu + j] = q.act(x, y) * mu + jj as usize;
                }
            }
        }
    }
    let ext = Quandle::from_table(table).expect("cocycle extensions satisfy the rack axioms");
    Ok(ext)
}

/// A parse failure with 1-based line and column positions.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// Parses the `.qnd` text format: optional `#` comment lines, a line holding
/// `n`, then `n` lines of `n` space-separated entries (row `x` holds `x ▷ y`
/// for `y = 0…n-1`). The table is validated before being returned.
pub fn parse_qnd(input: &str) -> Result<Quandle, ParseError> {
    let mut data_lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let (nline, ntext) = data_lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let n: usize = ntext
        .trim()
        .parse()
        .map_err(|_| ParseError::new(nline, 1, format!("expected element count, got {ntext:?}")))?;
    let mut table = Vec::with_capacity(n);
    for x in 0..n {
        let (lno, line) = data_lines
            .next()
            .ok_or_else(|| ParseError::new(nline, 1, format!("expected {n} rows, got {x}")))?;
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
            let v: usize = tok
                .parse()
                .map_err(|_| ParseError::new(lno, col, format!("expected integer, got {tok:?}")))?;
            if v >= n {
                return Err(ParseError::new(lno, col, format!("entry {v} out of range [0,{n})")));
            }
            row.push(v);
        }
        if row.len() != n {
            return Err(ParseError::new(
                lno,
                1,
                format!("expected {n} entries in row {x}, got {}", row.len()),
            ));
        }
        table.push(row);
    }
    if let Some((lno, line)) = data_lines.next() {
        return Err(ParseError::new(lno, 1, format!("trailing data: {line:?}")));
    }
    match Quandle::from_table(table) {
        Ok(q) => Ok(q),
        Err(e) => Err(ParseError::new(nline, 1, e.to_string())),
    }
}

/// Serializes to the canonical `.qnd` form: the size line, then the rows,
/// space-separated, LF-terminated.
pub fn serialize_qnd(q: &Quandle) -> String {
    let mut out = format!("{}\n", q.size());
    for row in q.rows() {
        let strs: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&strs.join(" "));
        out.push('\n');
    }
    out
}

/// The dihedral quandle table `x ▷ y = 2y − x (mod n)`.
pub fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral3() -> Quandle {
        Quandle::from_table(dihedral_table(3)).unwrap()
    }

    #[test]
    fn trivial_is_quandle() {
        assert_eq!(validate(&Quandle::trivial(3).rows()), Classification::Quandle);
    }

    #[test]
    fn dihedral3_is_quandle() {
        // Independent check of all 27 triples.
        let t = dihedral_table(3);
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    assert_eq!(t[x][t[y][z]], t[t[x][y]][t[x][z]]);
                }
            }
        }
        assert_eq!(validate(&t), Classification::Quandle);
    }

    #[test]
    fn repeated_entry_is_non_bijective() {
        let t = vec![vec![0, 0, 1], vec![0, 1, 2], vec![0, 1, 2]];
        assert_eq!(
            validate(&t),
            Classification::Invalid(AxiomViolation::NonBijectiveRow { x: 0, val: 0 })
        );
    }

    #[test]
    fn out_of_range_rejected() {
        let t = vec![vec![0, 5], vec![1, 0]];
        assert!(matches!(
            validate(&t),
            Classification::Invalid(AxiomViolation::OutOfRange { .. })
        ));
    }

    #[test]
    fn dihedral3_inner_action() {
        let q = dihedral3();
        let ia = inner_action(&q);
        assert_eq!(ia.orbits.len(), 1);
        assert_eq!(ia.orders, vec![2, 2, 2]);
        // φ_x is the transposition fixing x.
        assert_eq!(ia.generators[0].images(), &[0, 2, 1]);
    }

    #[test]
    fn trivial_two_orbits() {
        let ia = inner_action(&Quandle::trivial(2));
        assert_eq!(ia.orbits.len(), 2);
    }

    #[test]
    fn conjugation_s4_transpositions() {
        let gens = vec![
            Perm::transposition(4, 0, 1),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]),
        ];
        let q = conjugation_quandle(&gens, &Perm::transposition(4, 0, 1), 10_000).unwrap();
        assert_eq!(q.size(), 6);
        assert!(q.is_quandle());
        assert!(inner_action(&q).is_transitive());
    }

    #[test]
    fn conjugation_abelian_single_class() {
        let gens = vec![Perm::from_cycles(3, &[&[0, 1, 2]])];
        let rep = Perm::from_cycles(3, &[&[0, 1, 2]]);
        let q = conjugation_quandle(&gens, &rep, 100).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn conjugation_rep_not_in_group() {
        let gens = vec![Perm::from_cycles(4, &[&[0, 1, 2]]), Perm::from_cycles(4, &[&[1, 2, 3]])];
        // A4 does not contain a transposition.
        let err = conjugation_quandle(&gens, &Perm::transposition(4, 0, 1), 100).unwrap_err();
        assert_eq!(err, QuandleError::RepNotInGroup);
    }

    #[test]
    fn extension_trivial_cocycle() {
        let q = dihedral3();
        let f = vec![vec![0u64; 3]; 3];
        let e = extension_by_cocycle(&q, 2, &f).unwrap();
        assert_eq!(e.size(), 6);
        assert!(e.is_quandle());
        // Forgetting the fiber coordinate is a homomorphism onto q.
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(e.act(x, y) / 2, q.act(x / 2, y / 2));
            }
        }
    }

    #[test]
    fn extension_rejects_non_cocycle() {
        let q = dihedral3();
        let mut f = vec![vec![0u64; 3]; 3];
        f[0][1] = 1;
        assert!(matches!(
            extension_by_cocycle(&q, 2, &f),
            Err(QuandleError::NotACocycle { .. })
        ));
    }

    #[test]
    fn extension_by_coboundary_isomorphic_to_trivial() {
        // dγ(x,y) = γ(x▷y) − γ(y); the map (x,i) ↦ (x, i − γ(x)) is an
        // isomorphism onto the trivial extension.
        let q = dihedral3();
        let m = 4u64;
        let gamma = [3u64, 1, 2];
        let mut f = vec![vec![0u64; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                f[x][y] = (gamma[q.act(x, y)] + m - gamma[y]) % m;
            }
        }
        let e = extension_by_cocycle(&q, m, &f).unwrap();
        let e0 = extension_by_cocycle(&q, m, &vec![vec![0u64; 3]; 3]).unwrap();
        let mu = m as usize;
        let phi = |idx: usize| {
            let (x, i) = (idx / mu, idx as u64 % m);
            x * mu + ((i + m - gamma[x]) % m) as usize
        };
        for a in 0..e.size() {
            for b in 0..e.size() {
                assert_eq!(phi(e.act(a, b)), e0.act(phi(a), phi(b)));
            }
        }
    }

    #[test]
    fn phi_conjugation_identity() {
        // φ_{x▷y} = φ_x φ_y φ_x⁻¹ is an equivalent form of self-distributivity.
        let q = dihedral3();
        for x in 0..3 {
            for y in 0..3 {
                let lhs = q.row_perm(q.act(x, y));
                let px = q.row_perm(x);
                let rhs = px.compose(&q.row_perm(y)).compose(&px.inverse());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn qnd_round_trip() {
        let q = dihedral3();
        let s = serialize_qnd(&q);
        let q2 = parse_qnd(&s).unwrap();
        assert_eq!(q, q2);
        assert_eq!(serialize_qnd(&q2), s);
    }

    #[test]
    fn qnd_comments_and_errors() {
        let ok = "# dihedral\n3\n0 2 1\n2 1 0\n1 0 2\n";
        assert_eq!(parse_qnd(ok).unwrap(), dihedral3());

        let short = "3\n0 2 1\n2 1 0\n";
        let err = parse_qnd(short).unwrap_err();
        assert!(err.msg.contains("expected 3 rows"));

        let bad_tok = "2\n0 x\n1 0\n";
        let err = parse_qnd(bad_tok).unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }
}
