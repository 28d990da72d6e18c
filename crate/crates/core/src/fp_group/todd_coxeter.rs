//! HLT-style coset enumeration over the trivial subgroup (regular
//! representation), with a union-find coincidence queue and a deduction-only
//! lookahead pass when the table hits its size cap.

use super::{CayleyGroup, EnumerationError, Presentation};
use crate::word::Word;

const UNDEF: u32 = u32::MAX;

struct Table {
    n_gens: usize,
    ncols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
}

/// Column index for a signed generator letter.
fn col(g: usize, e: i8) -> usize {
    2 * g + usize::from(e < 0)
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Table {
    fn new(n_gens: usize) -> Self {
        let ncols = (2 * n_gens).max(1);
        Table {
            n_gens,
            ncols,
            rows: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, a: u32) -> u32 {
        let mut root = a;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = a;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn get(&mut self, a: u32, c: usize) -> Option<u32> {
        let v = self.rows[a as usize * self.ncols + c];
        if v == UNDEF {
            None
        } else {
            Some(self.find(v))
        }
    }

    fn set(&mut self, a: u32, c: usize, b: u32) {
        self.rows[a as usize * self.ncols + c] = b;
        self.rows[b as usize * self.ncols + inv_col(c)] = a;
    }

    fn define(&mut self, a: u32, c: usize) -> u32 {
        let b = self.allocated() as u32;
        self.parent.push(b);
        self.rows.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.live += 1;
        self.set(a, c, b);
        b
    }

    /// Merges the equivalence classes of `a` and `b`, cascading through the
    /// table entries of the dying class.
    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            for c in 0..self.ncols {
                let d = self.rows[kill as usize * self.ncols + c];
                if d == UNDEF {
                    continue;
                }
                let d = self.find(d);
                match self.get(keep, c) {
                    Some(e) if e != d => queue.push((e, d)),
                    Some(_) => {}
                    None => {
                        // Adopt the edge; reconcile the mirror entry on d.
                        self.rows[keep as usize * self.ncols + c] = d;
                        match self.get(d, inv_col(c)) {
                            Some(f) if f != keep => queue.push((f, keep)),
                            Some(_) => {}
                            None => {
                                self.rows[d as usize * self.ncols + inv_col(c)] = keep;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Scans `relator` at `alpha`, filling gaps with deductions and (when
    /// `fill` is set) fresh coset definitions.
    fn scan(&mut self, alpha: u32, relator: &[usize], fill: bool) {
        loop {
            let alpha = self.find(alpha);
            let len = relator.len();
            let mut f = alpha;
            let mut i = 0;
            while i < len {
                match self.get(f, relator[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == len {
                if f != alpha {
                    self.coincide(f, alpha);
                }
                return;
            }
            let mut b = alpha;
            let mut j = len;
            while j > i + 1 {
                match self.get(b, inv_col(relator[j - 1])) {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i + 1 {
                // One pending edge between f and b.
                match self.get(b, inv_col(relator[i])) {
                    Some(d) => self.coincide(f, d),
                    None => self.set(f, relator[i], b),
                }
                return;
            }
            if !fill {
                return;
            }
            self.define(f, relator[i]);
            // Rescan from the top; each pass consumes at least one more edge.
        }
    }
}

/// Runs coset enumeration for `p` and returns the resulting finite group in
/// canonical form (elements relabeled breadth-first from the identity).
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CayleyGroup, EnumerationError> {
    for r in &p.relators {
        for &(g, _) in r.letters() {
            assert!(g < p.n_gens, "relator mentions generator {g} out of range");
        }
    }
    let relator_cols: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|w| w.letters().iter().map(|&(g, e)| col(g, e)).collect())
        .collect();

    let mut t = Table::new(p.n_gens);
    let mut cursor: u32 = 0;
    let mut looked_ahead = false;
    while (cursor as usize) < t.allocated() {
        if t.find(cursor) != cursor {
            cursor += 1;
            continue;
        }
        if t.allocated() > max_cosets {
            if looked_ahead && t.live > max_cosets {
                return Err(EnumerationError::CapExceeded { cap: max_cosets });
            }
            // Lookahead: deduction-only scans to force coincidences, then
            // compact the table to reclaim dead rows.
            for a in 0..t.allocated() as u32 {
                if t.find(a) != a {
                    continue;
                }
                for r in &relator_cols {
                    t.scan(a, r, false);
                }
            }
            if t.live > max_cosets {
                return Err(EnumerationError::CapExceeded { cap: max_cosets });
            }
            cursor = compact(&mut t, cursor);
            looked_ahead = true;
            continue;
        }
        for r in &relator_cols {
            t.scan(cursor, r, true);
            if t.find(cursor) != cursor {
                break;
            }
        }
        if t.find(cursor) == cursor {
            for c in 0..t.ncols {
                if t.get(cursor, c).is_none() {
                    t.define(cursor, c);
                }
            }
        }
        cursor += 1;
    }

    // Stabilize: with the table complete, every relator must trace back to
    // its start coset; process any remaining coincidences until a clean pass.
    loop {
        let mut clean = true;
        for a in 0..t.allocated() as u32 {
            if t.find(a) != a {
                continue;
            }
            for r in &relator_cols {
                let before = t.live;
                t.scan(a, r, false);
                if t.live != before {
                    clean = false;
                }
            }
        }
        if clean {
            break;
        }
    }

    Ok(build_group(&mut t, p))
}

/// Renumbers live cosets contiguously (preserving index order) and rewrites
/// the table. Returns the new cursor position.
fn compact(t: &mut Table, cursor: u32) -> u32 {
    let alloc = t.allocated();
    let mut label = vec![UNDEF; alloc];
    let mut next = 0u32;
    for a in 0..alloc as u32 {
        if t.find(a) == a {
            label[a as usize] = next;
            next += 1;
        }
    }
    let mut rows = vec![UNDEF; next as usize * t.ncols];
    for a in 0..alloc as u32 {
        if t.find(a) != a {
            continue;
        }
        let la = label[a as usize] as usize;
        for c in 0..t.ncols {
            if let Some(b) = t.get(a, c) {
                rows[la * t.ncols + c] = label[b as usize];
            }
        }
    }
    let new_cursor = (0..cursor)
        .filter(|&a| {
            let mut x = a;
            while t.parent[x as usize] != x {
                x = t.parent[x as usize];
            }
            x == a
        })
        .count() as u32;
    t.rows = rows;
    t.parent = (0..next).collect();
    t.live = next as usize;
    new_cursor
}

/// BFS-relabels from the identity and assembles the final structure with
/// witness words, inverses, and generator images.
fn build_group(t: &mut Table, p: &Presentation) -> CayleyGroup {
    let alloc = t.allocated();
    let root = t.find(0);
    let mut label = vec![UNDEF; alloc];
    let mut order_of_visit: Vec<u32> = Vec::with_capacity(t.live);
    label[root as usize] = 0;
    order_of_visit.push(root);
    let mut head = 0;
    while head < order_of_visit.len() {
        let a = order_of_visit[head];
        head += 1;
        for c in 0..t.ncols {
            if let Some(b) = t.get(a, c) {
                if label[b as usize] == UNDEF {
                    label[b as usize] = order_of_visit.len() as u32;
                    order_of_visit.push(b);
                }
            }
        }
    }
    assert_eq!(
        order_of_visit.len(),
        t.live,
        "coset graph must be connected"
    );
    let order = t.live;
    let n_gens = t.n_gens;
    let mut mul = vec![0u32; order * n_gens];
    let mut mul_inv = vec![0u32; order * n_gens];
    let mut witness: Vec<Word> = vec![Word::empty(); order];
    let mut seen = vec![false; order];
    seen[0] = true;
    for (new_a, &a) in order_of_visit.iter().enumerate() {
        for g in 0..n_gens {
            let b = t.get(a, col(g, 1)).expect("complete table");
            let bi = t.get(a, col(g, -1)).expect("complete table");
            let (lb, lbi) = (label[b as usize] as usize, label[bi as usize] as usize);
            mul[new_a * n_gens + g] = lb as u32;
            mul_inv[new_a * n_gens + g] = lbi as u32;
            for (target, e) in [(lb, 1i8), (lbi, -1i8)] {
                if !seen[target] {
                    seen[target] = true;
                    let mut w = witness[new_a].clone();
                    w.push((g, e));
                    witness[target] = w;
                }
            }
        }
    }
    let gen_image: Vec<u32> = (0..n_gens).map(|g| mul[g]).collect();
    let mut group = CayleyGroup {
        n_gens,
        order,
        mul,
        mul_inv,
        inv: Vec::new(),
        witness,
        gen_image,
    };
    let mut inv = vec![0u32; order];
    for e in 0..order {
        let w = group.witness[e].inverse();
        inv[e] = group.apply_word(0, &w) as u32;
    }
    group.inv = inv;
    group.verify(p);
    group
}
