use std::sync::Arc;

use findim::algebra::*;
use findim::dsl::parse_presentation;
use findim::fixtures;
use findim::linalg::{Mat, Subspace};
use findim::rep::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn load(text: &str) -> Arc<Algebra> {
    Arc::new(build_algebra(&parse_presentation(text).unwrap()).unwrap())
}

fn a2() -> Arc<Algebra> {
    load(fixtures::A2)
}

fn hom_dim(m: &Representation, n: &Representation) -> usize {
    let homs = hom_space(m, n).unwrap();
    for h in &homs {
        assert!(h.is_homomorphism(m, n));
    }
    homs.len()
}

/// Hom dimension by brute force: solve the commuting conditions directly.
fn hom_dim_direct(m: &Representation, n: &Representation) -> usize {
    let a = m.owner();
    let f = a.field();
    let nv = a.num_vertices();
    let mut off = vec![0];
    for v in 0..nv {
        off.push(off[v] + m.dims()[v] * n.dims()[v]);
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for k in 0..a.num_arrows() {
        let e = a.elem(a.arrow(k));
        let (v, w) = (e.source, e.target);
        // (F_w M(a) - N(a) F_v)[r][c] = 0
        for r in 0..n.dims()[w] {
            for c in 0..m.dims()[v] {
                let mut row = vec![0u32; unknowns];
                for t in 0..m.dims()[w] {
                    let x = m.arrow(k).get(t, c);
                    let idx = off[w] + r * m.dims()[w] + t;
                    row[idx] = f.add(row[idx], x);
                }
                for t in 0..n.dims()[v] {
                    let x = n.arrow(k).get(r, t);
                    let idx = off[v] + t * m.dims()[v] + c;
                    row[idx] = f.sub(row[idx], x);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - Mat::from_rows(&rows, unknowns).rank(f)
}

fn random_submodule_of_projective(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Representation {
    let v = rng.gen_range(0..a.num_vertices());
    let p = proj(a, v).unwrap();
    let f = a.field();
    let mut seeds = Vec::new();
    for _ in 0..rng.gen_range(1..3) {
        let w = rng.gen_range(0..a.num_vertices());
        if p.dims()[w] == 0 {
            continue;
        }
        let x: Vec<u32> = (0..p.dims()[w]).map(|_| rng.gen_range(0..f.p())).collect();
        seeds.push((w, x));
    }
    let spaces = generate(&p, &seeds);
    submodule(&p, &spaces).module
}

#[test]
fn a2_basics() {
    let a = a2();
    let s1 = simple(&a, 0).unwrap();
    let s2 = simple(&a, 1).unwrap();
    let p1 = proj(&a, 0).unwrap();
    let p2 = proj(&a, 1).unwrap();
    assert_eq!(s1.dims(), &[1, 0]);
    assert_eq!(s2.dims(), &[0, 1]);
    assert_eq!(p1.dims(), &[1, 1]);
    assert_eq!(p2, s2);
    assert_eq!(hom_dim(&s1, &s2), 0);
    assert_eq!(hom_dim(&p1, &p1), 1);
    assert_eq!(hom_dim(&p1, &s1), 1);
    assert_eq!(hom_dim(&s2, &p1), 1);
    assert!(matches!(simple(&a, 5), Err(RepError::UnknownVertex(5))));

    let c = top_and_cover(&s1).unwrap();
    assert_eq!(c.projective, p1);
    let k = kernel(&c.epi, &c.projective).module;
    assert_eq!(k.dims(), &[0, 1]);
    assert!(c.is_minimal());

    let sum = direct_sum(&a, &[s1.clone(), s1.clone()]).unwrap();
    assert_eq!(sum.dims(), &[2, 0]);
    assert_eq!(direct_sum(&a, &[p1.clone(), s2]).unwrap().dim(), 3);
    assert!(direct_sum(&a, &[]).unwrap().is_zero());
}

#[test]
fn truncated_loop_projective() {
    let a = load("algebra k over GF(101)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^3\n");
    assert_eq!(proj(&a, 0).unwrap().dims(), &[3]);
}

#[test]
fn projective_dims_count_paths_by_endpoints() {
    let a = load(fixtures::EX41);
    for v in 0..a.num_vertices() {
        let p = proj(&a, v).unwrap();
        for w in 0..a.num_vertices() {
            let count = a
                .basis()
                .iter()
                .filter(|b| b.source == v && b.target == w)
                .count();
            assert_eq!(p.dims()[w], count);
        }
    }
    // Frozen from the count above.
    let dims: Vec<usize> = (0..5).map(|v| proj(&a, v).unwrap().dim()).collect();
    assert_eq!(dims, vec![10, 7, 5, 4, 7]);
}

#[test]
fn ideal_and_quotient_modules() {
    let a = load(fixtures::EX43);
    let zero = Ideal::zero(&a);
    let unit = Ideal::unit(&a);
    assert!(ideal_as_module(&a, &zero).unwrap().is_zero());
    assert!(quotient_as_module(&a, &unit).unwrap().is_zero());
    let regular = quotient_as_module(&a, &zero).unwrap();
    assert_eq!(regular.dim(), a.dim());
    let whole = ideal_as_module(&a, &unit).unwrap();
    let projs: Vec<Representation> = (0..a.num_vertices()).map(|v| proj(&a, v).unwrap()).collect();
    let sum = direct_sum(&a, &projs).unwrap();
    assert_eq!(whole.dims(), sum.dims());
    assert_eq!(hom_dim(&whole, &sum), hom_dim(&sum, &sum));

    let i = ideal_generate(&a, &[IdealGen::Arrow(a.arrow_by_name("alpha").unwrap())]).unwrap();
    let im = ideal_as_module(&a, &i).unwrap();
    assert_eq!(im.dim(), i.dim());
    let qm = quotient_as_module(&a, &i).unwrap();
    assert_eq!(qm.dim(), a.dim() - i.dim());
    assert!(qm.annihilated_by(&i));
}

#[test]
fn inflate_and_deflate() {
    let a = load(fixtures::EX41);
    let gens = vec![
        IdealGen::Arrow(a.arrow_by_name("beta").unwrap()),
        IdealGen::Arrow(a.arrow_by_name("gamma1").unwrap()),
        IdealGen::Arrow(a.arrow_by_name("gamma2").unwrap()),
        IdealGen::Vertex(a.vertex_by_name("2").unwrap()),
    ];
    let i2 = ideal_generate(&a, &gens).unwrap();
    let q = quotient_algebra(&a, &i2).unwrap();
    let b = q.quotient();
    for qv in 0..b.num_vertices() {
        let s = simple(b, qv).unwrap();
        let up = inflate(&q, &s).unwrap();
        assert_eq!(up, simple(&a, q.vertex_map()[qv]).unwrap());
        let p = proj(b, qv).unwrap();
        let up = inflate(&q, &p).unwrap();
        assert_eq!(up.dim(), p.dim());
        assert!(up.annihilated_by(&i2));
        assert_eq!(deflate(&q, &up).unwrap(), p);
    }
    let p1 = proj(&a, 0).unwrap();
    assert!(matches!(deflate(&q, &p1), Err(RepError::NotAnnihilated)));
}

#[test]
fn relation_violations_are_rejected() {
    let a = load("algebra k over GF(101)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^2\n");
    let jordan = Mat::from_rows(&[vec![0, 1], vec![0, 0]], 2);
    assert!(Representation::new(a.clone(), vec![2], vec![jordan]).is_ok());
    let bad = Mat::from_rows(&[vec![1, 0], vec![0, 0]], 2);
    assert!(matches!(
        Representation::new(a, vec![2], vec![bad]),
        Err(RepError::RelationViolated(_))
    ));
}

#[test]
fn hom_space_matches_direct_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for text in [fixtures::EX41, fixtures::EX43, &fixtures::ex45(2)] {
        let a = load(text);
        for _ in 0..12 {
            let m = random_submodule_of_projective(&a, &mut rng);
            let n = random_submodule_of_projective(&a, &mut rng);
            assert_eq!(hom_dim(&m, &n), hom_dim_direct(&m, &n));
        }
    }
}

#[test]
fn hom_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = load(fixtures::EX43);
    for _ in 0..10 {
        let m1 = random_submodule_of_projective(&a, &mut rng);
        let m2 = random_submodule_of_projective(&a, &mut rng);
        let n = random_submodule_of_projective(&a, &mut rng);
        let sum = direct_sum(&a, &[m1.clone(), m2.clone()]).unwrap();
        assert_eq!(hom_dim(&sum, &n), hom_dim(&m1, &n) + hom_dim(&m2, &n));
    }
}

#[test]
fn covers_are_minimal_and_projectives_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = load(fixtures::EX41);
    let f = a.field();
    for _ in 0..10 {
        let m = random_submodule_of_projective(&a, &mut rng);
        if m.is_zero() {
            continue;
        }
        let c = top_and_cover(&m).unwrap();
        assert!(c.epi.is_homomorphism(&c.projective, &m));
        assert!(c.epi.is_surjective(f));
        assert!(c.is_minimal());
        // Any map from a projective lifts along the cover.
        let v = rng.gen_range(0..a.num_vertices());
        let p = proj(&a, v).unwrap();
        for h in hom_space(&p, &m).unwrap() {
            let lifts = hom_space(&p, &c.projective).unwrap();
            let images: Vec<Vec<u32>> = lifts
                .iter()
                .map(|l| c.epi.compose(l, f).full(&p, &m).data().to_vec())
                .collect();
            let span = Subspace::span(&images, p.dim() * m.dim(), f);
            assert!(span.contains(h.full(&p, &m).data(), f));
        }
    }
}

#[test]
fn cover_of_radical_of_projective() {
    let a = load(fixtures::EX41);
    let p = proj(&a, 0).unwrap();
    let rad = submodule(&p, &p.radical()).module;
    let c = top_and_cover(&rad).unwrap();
    let k = kernel(&c.epi, &c.projective).module;
    assert!(c.is_minimal());
    assert_eq!(rad.dim(), p.dim() - 1);
    assert_eq!(c.projective.dim() - k.dim(), rad.dim());
}
