mod common;

use std::sync::Arc;

use common::{load, random_invertible, random_module};
use findim::fixtures;
use findim::krull_schmidt::*;
use findim::linalg::{Field, Mat};
use findim::rep::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KRONECKER: &str = "algebra K over GF(7)\nvertices: 1 2\narrows:\n  a: 1 -> 2\n  b: 1 -> 2\nrelations:\n";

fn kronecker(a: &Arc<findim::algebra::Algebra>, b_mat: Mat) -> Representation {
    let n = b_mat.rows();
    Representation::new(a.clone(), vec![n, n], vec![Mat::identity(n), b_mat]).unwrap()
}

fn is_unit(h: &Hom, f: Field) -> bool {
    h.blocks.iter().all(|b| b.rank(f) == b.rows())
}

/// Jacobson radical by definition: `x` with `1 - yx` invertible for all `y`.
fn brute_radical_dim(end: &EndAlgebra, f: Field) -> usize {
    let r = end.dim();
    let p = f.p() as usize;
    let total = p.pow(r as u32);
    let elems: Vec<Hom> = (0..total)
        .map(|mut k| {
            let c: Vec<u32> = (0..r)
                .map(|_| {
                    let d = (k % p) as u32;
                    k /= p;
                    d
                })
                .collect();
            end.element(&c)
        })
        .collect();
    let one = end.identity();
    let count = elems
        .iter()
        .filter(|x| {
            elems
                .iter()
                .all(|y| is_unit(&one.add(&y.compose(x, f).scale(f.neg(1), f), f), f))
        })
        .count();
    // |J| = p^dim J.
    let mut d = 0;
    let mut c = count;
    while c > 1 {
        c /= p;
        d += 1;
    }
    d
}

#[test]
fn radical_matches_definition_in_small_characteristic() {
    let mut checked = 0;
    for (p, seed) in [(2u32, 1u64), (3, 2), (2, 3)] {
        let texts = [
            format!("algebra A over GF({p})\nvertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n"),
            format!("algebra L over GF({p})\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^4\n"),
            format!(
                "algebra B over GF({p})\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 1 -> 3\nrelations:\n"
            ),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in &texts {
            let a = load(t);
            let f = a.field();
            let mut modules = vec![];
            for v in 0..a.num_vertices() {
                let s = simple(&a, v).unwrap();
                let pv = proj(&a, v).unwrap();
                modules.push(direct_sum(&a, &[s.clone(), s.clone(), s]).unwrap());
                modules.push(direct_sum(&a, &[pv.clone(), pv.clone()]).unwrap());
                modules.push(pv);
            }
            for _ in 0..6 {
                let x = random_module(&a, &mut rng);
                let y = random_module(&a, &mut rng);
                modules.push(direct_sum(&a, &[x, y]).unwrap());
            }
            for m in modules {
                if m.is_zero() {
                    continue;
                }
                let end = EndAlgebra::new(&m).unwrap();
                if (p as usize).pow(end.dim() as u32) > 1 << 10 {
                    continue;
                }
                assert_eq!(end.radical().dim(), brute_radical_dim(&end, f), "{t} dims {:?}", m.dims());
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "only {checked} cases small enough");
}

#[test]
fn zero_module_has_empty_decomposition() {
    let a = load(fixtures::A2);
    let (d, reg) = decompose(&Representation::zero(&a), 42).unwrap();
    assert!(d.is_empty());
    assert!(reg.is_empty());
}

#[test]
fn simples_and_projective_over_a2() {
    let a = load(fixtures::A2);
    let s1 = simple(&a, 0).unwrap();
    let p1 = proj(&a, 0).unwrap();
    let m = direct_sum(&a, &[s1.clone(), s1.clone(), p1.clone()]).unwrap();
    let mut reg = Registry::new(&a, 42);
    let is1 = reg.intern(&s1).unwrap();
    let ip1 = reg.intern(&p1).unwrap();
    let d = reg.intern(&m).unwrap();
    let (s_id, p_id) = (is1.parts[0].0, ip1.parts[0].0);
    assert_ne!(s_id, p_id);
    assert_eq!(d.multiplicity(s_id), 2);
    assert_eq!(d.multiplicity(p_id), 1);
    assert_eq!(d.len(), 3);
    assert!(reg.is_projective(p_id));
    assert!(!reg.is_projective(s_id));
    assert_eq!(reg.total_dim(&d), m.dim());
}

#[test]
fn regular_module_of_example_41() {
    let a = load(fixtures::EX41);
    let projs: Vec<Representation> = (0..a.num_vertices()).map(|v| proj(&a, v).unwrap()).collect();
    let regular = direct_sum(&a, &projs).unwrap();
    let (d, reg) = decompose(&regular, 42).unwrap();
    assert_eq!(d.parts.len(), a.num_vertices());
    assert!(d.parts.iter().all(|&(_, k)| k == 1));
    let mut verts: Vec<usize> = d.ids().map(|id| reg.class(id).projective.unwrap()).collect();
    verts.sort();
    assert_eq!(verts, (0..a.num_vertices()).collect::<Vec<_>>());
}

#[test]
fn isomorphism_examples() {
    let a = load(fixtures::A2);
    let f = a.field();
    let p1 = proj(&a, 0).unwrap();
    let s1 = simple(&a, 0).unwrap();
    let s2 = simple(&a, 1).unwrap();
    assert!(is_isomorphic(&p1, &p1, 42).unwrap());
    let split = Representation::new(a.clone(), vec![1, 1], vec![Mat::zeros(1, 1)]).unwrap();
    assert!(!is_isomorphic(&p1, &split, 42).unwrap());
    assert!(is_isomorphic(&split, &direct_sum(&a, &[s1, s2.clone()]).unwrap(), 42).unwrap());
    let scaled = Representation::new(a.clone(), vec![1, 1], vec![Mat::from_vec(1, 1, vec![f.from_i64(-3)])]).unwrap();
    assert!(is_isomorphic(&p1, &scaled, 42).unwrap());
    assert!(!is_isomorphic(&p1, &s2, 42).unwrap());
}

#[test]
fn intern_is_stable_and_order_independent() {
    let a = load(fixtures::A2);
    let s1 = simple(&a, 0).unwrap();
    let s2 = simple(&a, 1).unwrap();
    let mut reg = Registry::new(&a, 1);
    let x = reg.intern(&s1).unwrap();
    let y = reg.intern(&s1).unwrap();
    assert_eq!(x, y);
    let d12 = reg.intern(&direct_sum(&a, &[s1.clone(), s2.clone()]).unwrap()).unwrap();
    let d21 = reg.intern(&direct_sum(&a, &[s2, s1]).unwrap()).unwrap();
    assert_eq!(d12, d21);
    assert_eq!(reg.len(), 2);
}

#[test]
fn kronecker_field_extension_is_indecomposable() {
    let a = load(KRONECKER);
    let f = a.field();
    // x^2 - 3 is irreducible over GF(7); End is GF(49).
    let c = Mat::from_rows(&[vec![0, 3], vec![1, 0]], 2);
    let m = kronecker(&a, c.clone());
    let leaves = split(&m, &mut ChaCha8Rng::seed_from_u64(5), DEFAULT_TRIALS).unwrap();
    assert_eq!(leaves.len(), 1);
    assert_eq!((leaves[0].end_dim, leaves[0].rad_end_dim), (2, 0));
    // (x^2 - 3)^2 has companion of size 4; End is GF(7)[t]/(t^2-3)^2, local.
    let g2 = Mat::from_rows(
        &[vec![0, 0, 0, f.from_i64(-9)], vec![1, 0, 0, 0], vec![0, 1, 0, 6], vec![0, 0, 1, 0]],
        4,
    );
    let leaves = split(&kronecker(&a, g2), &mut ChaCha8Rng::seed_from_u64(5), DEFAULT_TRIALS).unwrap();
    assert_eq!(leaves.len(), 1);
    assert_eq!((leaves[0].end_dim, leaves[0].rad_end_dim), (4, 2));
    // Distinct eigenvalues split.
    let d = Mat::from_rows(&[vec![1, 0], vec![0, 2]], 2);
    let leaves = split(&kronecker(&a, d), &mut ChaCha8Rng::seed_from_u64(5), DEFAULT_TRIALS).unwrap();
    assert_eq!(leaves.len(), 2);
    // Two copies of the GF(49) module: End = M_2(GF(49)).
    let cc = Mat::from_rows(
        &[vec![0, 3, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 3], vec![0, 0, 1, 0]],
        4,
    );
    let (d, reg) = decompose(&kronecker(&a, cc), 5).unwrap();
    assert_eq!(d.parts, vec![(0, 2)]);
    assert!(indecomposables_isomorphic(&reg.class(0).representative, &m).unwrap());
}

fn sample(a: &Arc<findim::algebra::Algebra>, seed: u64) -> (Representation, Representation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = direct_sum(a, &[random_module(a, &mut rng), random_module(a, &mut rng)]).unwrap();
    let n = random_module(a, &mut rng);
    (m, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_is_additive(seed in any::<u64>(), which in 0usize..3) {
        let text = [fixtures::EX41.to_string(), fixtures::EX43.to_string(), fixtures::ex45(2)][which].clone();
        let a = load(&text);
        let (m, n) = sample(&a, seed);
        let mut reg = Registry::new(&a, seed);
        let dm = reg.intern(&m).unwrap();
        let dn = reg.intern(&n).unwrap();
        let dmn = reg.intern(&direct_sum(&a, &[m.clone(), n.clone()]).unwrap()).unwrap();
        prop_assert_eq!(dmn, dm.union(&dn));
        prop_assert_eq!(reg.total_dim(&dm), m.dim());
    }

    #[test]
    fn decomposition_is_invariant_under_base_change(seed in any::<u64>(), which in 0usize..3) {
        let text = [fixtures::EX41.to_string(), fixtures::EX43.to_string(), fixtures::ex45(2)][which].clone();
        let a = load(&text);
        let (m, _) = sample(&a, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let g: Vec<Mat> = m.dims().iter().map(|&d| random_invertible(d, a.field().p(), &mut rng)).collect();
        let m2 = m.base_change(&g);
        let mut reg = Registry::new(&a, seed);
        prop_assert_eq!(reg.intern(&m).unwrap(), reg.intern(&m2).unwrap());
        prop_assert!(is_isomorphic(&m, &m2, seed).unwrap());
        prop_assert!(is_isomorphic(&m2, &m, seed).unwrap());
    }
}
