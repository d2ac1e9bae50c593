//! Seeded random acyclic quivers with monomial relations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::dual_dimension;
use crate::quiver::{Arrow, Path, Quiver, Relation};

pub const MAX_VERTICES: usize = 5;
pub const MAX_ARROWS: usize = 6;
/// Draws whose dual extension exceeds this dimension are redrawn, keeping
/// the quadratic-size linear systems small.
pub const MAX_DUAL_DIM: usize = 30;

const NAMES: [&str; MAX_ARROWS] = ["a", "b", "c", "d", "f", "g"];

fn draw(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(2..=MAX_VERTICES);
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    // arrows only go forward in a shuffled order, so there are no cycles
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let m = rng.gen_range(1..=MAX_ARROWS);
    let arrows: Vec<Arrow> = NAMES[..m]
        .iter()
        .map(|name| {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            Arrow::new(*name, &vertices[order[i]], &vertices[order[j]])
        })
        .collect();
    let mut relations = Vec::new();
    for x in &arrows {
        for y in &arrows {
            if y.target == x.source && rng.gen_bool(0.5) {
                relations.push(Relation::monomial(Path::arrows([
                    x.name.clone(),
                    y.name.clone(),
                ])));
            }
        }
    }
    Quiver::new(vertices, arrows, relations).expect("generated quiver is well formed")
}

/// Deterministic acyclic quiver for `seed` with 2 to [`MAX_VERTICES`]
/// vertices, 1 to [`MAX_ARROWS`] arrows and length-2 monomial relations.
pub fn random_quiver(seed: u64) -> Quiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let q = draw(&mut rng);
        if matches!(dual_dimension(&q), Ok(d) if d <= MAX_DUAL_DIM) {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate_acyclic;

    #[test]
    fn deterministic_and_bounded() {
        for seed in 0..20 {
            let q = random_quiver(seed);
            assert_eq!(q, random_quiver(seed));
            assert!(validate_acyclic(&q));
            assert!(q.vertices().len() <= MAX_VERTICES && q.arrows().len() <= MAX_ARROWS);
            assert!(q
                .relations()
                .iter()
                .all(|r| r.is_monomial() && r.degree() == 2));
        }
    }
}
