#![allow(dead_code)]

use std::sync::Arc;

use findim::algebra::{build_algebra, Algebra};
use findim::dsl::parse_presentation;
use findim::linalg::Mat;
use findim::rep::{cokernel_of_sub, generate, proj, submodule, Representation, ShortExact};
use rand::Rng;

pub fn load(text: &str) -> Arc<Algebra> {
    Arc::new(build_algebra(&parse_presentation(text).unwrap()).unwrap())
}

/// `k[x]/(x^m)`.
pub fn truncated_loop(m: usize) -> Arc<Algebra> {
    load(&format!(
        "algebra k over GF(101)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^{m}\n"
    ))
}

/// A random submodule `L ⊆ M` as `0 -> L -> M -> M/L -> 0`.
pub fn random_sequence<R: Rng>(m: &Representation, rng: &mut R) -> ShortExact {
    let k = rng.gen_range(1..3);
    let seeds = random_seeds(m, rng, k);
    let spaces = generate(m, &seeds);
    let sub = submodule(m, &spaces);
    let quo = cokernel_of_sub(m, &spaces);
    ShortExact {
        left: sub.module,
        mid: m.clone(),
        right: quo.module,
        inj: sub.map,
        surj: quo.map,
    }
}

fn random_seeds<R: Rng>(p: &Representation, rng: &mut R, count: usize) -> Vec<(usize, Vec<u32>)> {
    let f = p.field();
    let n = p.dims().len();
    let mut seeds = Vec::new();
    for _ in 0..count {
        let w = rng.gen_range(0..n);
        if p.dims()[w] == 0 {
            continue;
        }
        seeds.push((w, (0..p.dims()[w]).map(|_| rng.gen_range(0..f.p())).collect()));
    }
    seeds
}

/// A submodule of an indecomposable projective generated by a few random
/// vectors.
pub fn random_submodule<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Representation {
    let p = proj(a, rng.gen_range(0..a.num_vertices())).unwrap();
    let k = rng.gen_range(1..3);
    let seeds = random_seeds(&p, rng, k);
    submodule(&p, &generate(&p, &seeds)).module
}

/// A quotient of an indecomposable projective by a random submodule.
pub fn random_quotient<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Representation {
    let p = proj(a, rng.gen_range(0..a.num_vertices())).unwrap();
    let k = rng.gen_range(1..3);
    let seeds = random_seeds(&p, rng, k);
    cokernel_of_sub(&p, &generate(&p, &seeds)).module
}

pub fn random_module<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Representation {
    if rng.gen_bool(0.5) {
        random_submodule(a, rng)
    } else {
        random_quotient(a, rng)
    }
}

pub fn random_invertible<R: Rng>(n: usize, p: u32, rng: &mut R) -> Mat {
    let f = findim::linalg::Field::new(p);
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        let m = Mat::from_vec(n, n, data);
        if m.rank(f) == n {
            return m;
        }
    }
}
