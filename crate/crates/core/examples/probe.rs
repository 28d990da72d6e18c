use quandle_cohomology::catalog;
use quandle_cohomology::fp_group::*;

fn main() {
    let f = catalog::transpositions(4);
    let q = &f.quandle;
    let group = todd_coxeter(&enveloping_presentation(q), 100_000).unwrap();
    let action = action_on_x(&group, q).unwrap();
    let nx = commutator_subgroup(&group);
    let x0 = 0usize;
    let n0: Vec<usize> = nx.elements.iter().copied().filter(|&e| action.apply(e, x0) == x0).collect();
    println!("N0 = {:?}", n0);
    let gx0 = group.gen_image(x0);
    for &e in &n0 { println!("kappa({e}) = {}", group.conj(gx0, e)); }
    // cosets by swept point
    let n = q.size();
    let mut cosets: Vec<Vec<usize>> = vec![vec![]; n];
    for &e in &nx.elements { cosets[action.apply(e, x0)].push(e); }
    println!("cosets by point: {:?}", cosets);
    // brute force transversals: sigma_0 = identity (element 0)
    let points: Vec<usize> = (0..n).filter(|&y| y != x0).collect();
    let sizes: Vec<usize> = points.iter().map(|&y| cosets[y].len()).collect();
    let total: usize = sizes.iter().product();
    let mut found = 0;
    for code in 0..total {
        let mut rem = code;
        let mut reps = vec![0usize]; // identity
        for (k, &y) in points.iter().enumerate() {
            reps.push(cosets[y][rem % sizes[k]]);
            rem /= sizes[k];
        }
        let set: std::collections::HashSet<usize> = reps.iter().copied().collect();
        if reps.iter().all(|&r| set.contains(&group.conj(gx0, r))) {
            found += 1;
            if found <= 3 { println!("good transversal: {:?}", reps); }
        }
    }
    println!("total transversals: {total}, satisfying condition (2): {found}");
}
