//! Seeded generators for set flags, finite groupoids and maps into them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SetFlag;
use crate::strict::{level1, StrictNCat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A flag of height `n` with at most `max` elements per level.
pub fn random_set_flag(rng: &mut impl Rng, n: usize, max: usize) -> SetFlag {
    assert!(n >= 1 && max >= 1);
    let x0 = rng.gen_range(1..=max);
    let x1 = rng.gen_range(1..=x0);
    let mut first: Vec<usize> = (0..x0).map(|i| if i < x1 { i } else { rng.gen_range(0..x1) }).collect();
    first.shuffle(rng);
    let mut maps = vec![first];
    for _ in 1..n {
        let mut perm: Vec<usize> = (0..x1).collect();
        perm.shuffle(rng);
        maps.push(perm);
    }
    let mut levels = vec![(0..x0).map(|i| format!("a{i}")).collect::<Vec<_>>()];
    for l in 1..=n {
        levels.push((0..x1).map(|i| format!("l{l}_{i}")).collect());
    }
    SetFlag::new(levels, maps).expect("generated flags are valid")
}

/// A disjoint union of connected groupoids `codiscrete(k) × Z/m`, with at
/// most `max_arrows` arrows in total (at least one object).
pub fn random_groupoid(rng: &mut impl Rng, max_arrows: usize) -> StrictNCat {
    assert!(max_arrows >= 1);
    // (first object, k, m) per component
    let mut comps: Vec<(usize, usize, usize)> = Vec::new();
    let (mut objects, mut budget) = (0, max_arrows);
    loop {
        let options: Vec<(usize, usize)> =
            (1..=3).flat_map(|k| (1..=4).map(move |m| (k, m))).filter(|&(k, m)| k * k * m <= budget).collect();
        if options.is_empty() || (!comps.is_empty() && rng.gen_bool(0.35)) {
            break;
        }
        let (k, m) = *options.choose(rng).unwrap();
        comps.push((objects, k, m));
        objects += k;
        budget -= k * k * m;
    }
    let mut arrows = Vec::new();
    let mut data = Vec::new();
    for &(o, k, m) in &comps {
        for x in o..o + k {
            for y in o..o + k {
                for g in 0..m {
                    arrows.push((x, y));
                    data.push((g, m));
                }
            }
        }
    }
    let find = |x: usize, y: usize, g: usize| (0..arrows.len()).find(|&i| arrows[i] == (x, y) && data[i].0 == g).unwrap();
    let ident: Vec<usize> = (0..objects).map(|x| find(x, x, 0)).collect();
    let names: Vec<String> = (0..objects).map(|x| format!("o{x}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    level1(&names, &arrows, &ident, |u, v| {
        let m = data[u].1;
        find(arrows[v].0, arrows[u].1, (data[u].0 + data[v].0) % m)
    })
    .expect("generated groupoids are lawful")
}

/// A map from a set of at most `max` elements onto a set of objects of `g`
/// meeting every connected component.
pub fn random_essentially_surjective_map(rng: &mut impl Rng, g: &StrictNCat, max: usize) -> Vec<usize> {
    let reps = component_representatives(g);
    let size = rng.gen_range(reps.len()..=max.max(reps.len()));
    let mut map: Vec<usize> = reps.iter().map(|&r| {
        let comp: Vec<usize> = (0..g.object_count()).filter(|&o| connected(g, r, o)).collect();
        *comp.choose(rng).unwrap()
    }).collect();
    while map.len() < size {
        map.push(rng.gen_range(0..g.object_count()));
    }
    map.shuffle(rng);
    map
}

fn connected(g: &StrictNCat, a: usize, b: usize) -> bool {
    (0..g.count(1)).any(|x| g.src(1, x) == a && g.tgt(1, x) == b)
}

fn component_representatives(g: &StrictNCat) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for o in 0..g.object_count() {
        if !reps.iter().any(|&r| connected(g, r, o)) {
            reps.push(o);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::is_strict_groupoid;

    #[test]
    fn generated_objects_are_valid() {
        for seed in 0..30 {
            let mut r = rng(seed);
            let f = random_set_flag(&mut r, 2, 8);
            assert!(f.levels.iter().all(|l| l.len() <= 8));
            let g = random_groupoid(&mut r, 8);
            assert!(g.count(1) <= 8 && is_strict_groupoid(&g));
            let m = random_essentially_surjective_map(&mut r, &g, 6);
            let reps = component_representatives(&g);
            assert!(reps.iter().all(|&c| m.iter().any(|&o| connected(&g, c, o))));
        }
        assert_eq!(random_set_flag(&mut rng(7), 1, 8), random_set_flag(&mut rng(7), 1, 8));
    }
}
