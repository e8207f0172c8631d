mod common;

use common::{load, random_module, random_sequence, truncated_loop};
use findim::fixtures;
use findim::homological::{PdResult, SyzygyTable, DEFAULT_CUTOFF, DEFAULT_ORBIT_BOUND};
use findim::igusa_todorov::*;
use findim::rep::*;
use findim::session::Session;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const B: usize = DEFAULT_ORBIT_BOUND;
const C: usize = DEFAULT_CUTOFF;

fn class_of(t: &mut SyzygyTable, m: &Representation) -> usize {
    let d = t.intern(m).unwrap();
    assert_eq!(d.len(), 1);
    d.parts[0].0
}

fn k(terms: &[(usize, i64)]) -> KElem {
    KElem::from_terms(terms.iter().map(|&(id, c)| (id, BigInt::from(c))))
}

#[test]
fn integer_rank_is_over_the_rationals() {
    // Both vectors vanish mod 2 but are independent.
    assert_eq!(integer_rank(&[k(&[(0, 2)]), k(&[(1, 2)])]), 2);
    assert_eq!(integer_rank(&[k(&[(0, 2), (1, 4)]), k(&[(0, 1), (1, 2)])]), 1);
    assert_eq!(
        integer_rank(&[k(&[(0, 1), (1, 1)]), k(&[(1, 1), (2, 1)]), k(&[(0, 1), (2, -1)])]),
        2
    );
    assert_eq!(integer_rank(&[k(&[(0, 3), (1, 5)]), k(&[(0, 7), (1, 11)])]), 2);
    assert_eq!(integer_rank(&[KElem::zero()]), 0);
    assert_eq!(integer_rank(&[]), 0);
}

#[test]
fn k_elem_arithmetic_drops_zeros() {
    let x = k(&[(0, 2), (3, -1)]);
    let y = k(&[(3, 1)]);
    assert_eq!(x.add(&y), k(&[(0, 2)]));
    assert!(x.scale(&BigInt::from(0)).is_zero());
    assert_eq!(x.add(&x.scale(&BigInt::from(-1))), KElem::zero());
}

#[test]
fn omega_bar_examples() {
    let a = load(fixtures::A2);
    let mut t = SyzygyTable::new(&a, 1);
    let s1 = class_of(&mut t, &simple(&a, 0).unwrap());
    let x = KElem::class(&t, s1);
    assert!(omega_bar(&mut t, &x).unwrap().is_zero());

    let k2 = truncated_loop(2);
    let mut t = SyzygyTable::new(&k2, 1);
    let s = class_of(&mut t, &simple(&k2, 0).unwrap());
    let x = KElem::class(&t, s);
    assert_eq!(omega_bar(&mut t, &x).unwrap(), x);

    // k[x]/x³: ΩS = rad P (length 2) and Ω rad P = soc P ≅ S.
    let k3 = truncated_loop(3);
    let mut t = SyzygyTable::new(&k3, 1);
    let s = class_of(&mut t, &simple(&k3, 0).unwrap());
    let p = proj(&k3, 0).unwrap();
    let rad = submodule(&p, &p.radical()).module;
    let r = class_of(&mut t, &rad);
    assert_ne!(r, s);
    let x = KElem::class(&t, s);
    let once = omega_bar(&mut t, &x).unwrap();
    assert_eq!(once, KElem::class(&t, r));
    assert_eq!(omega_bar(&mut t, &once).unwrap(), x);
    // Linear: Ω̄(2[S] - [radP]) = 2[radP] - [S].
    let y = x.scale(&BigInt::from(2)).add(&once.scale(&BigInt::from(-1)));
    let expect = once.scale(&BigInt::from(2)).add(&x.scale(&BigInt::from(-1)));
    assert_eq!(omega_bar(&mut t, &y).unwrap(), expect);
}

#[test]
fn phi_examples() {
    let a = load(fixtures::A2);
    let mut t = SyzygyTable::new(&a, 1);
    assert_eq!(phi(&mut t, &proj(&a, 0).unwrap(), B).unwrap(), 0);
    let tr = phi_trace(&mut t, &simple(&a, 0).unwrap(), B).unwrap();
    assert_eq!((tr.phi, tr.ranks.clone(), tr.certified), (1, vec![1, 0], true));
    assert_eq!(phi(&mut t, &Representation::zero(&a), B).unwrap(), 0);

    let k2 = truncated_loop(2);
    let mut t = SyzygyTable::new(&k2, 1);
    let tr = phi_trace(&mut t, &simple(&k2, 0).unwrap(), B).unwrap();
    assert_eq!(tr.phi, 0);
    assert!(tr.certified);
    assert!(tr.ranks.iter().all(|&r| r == 1));
}

#[test]
fn phi_waits_for_rank_to_settle() {
    // Over A2, S1 ⊕ S2 has one nonprojective class; S2 is projective.
    let a = load(fixtures::A2);
    let m = direct_sum(&a, &[simple(&a, 0).unwrap(), simple(&a, 1).unwrap()]).unwrap();
    let mut t = SyzygyTable::new(&a, 1);
    assert_eq!(phi(&mut t, &m, B).unwrap(), 1);
    // Over k[x]/x³, S ⊕ radP spans rank 2 and Ω̄ swaps the two.
    let k3 = truncated_loop(3);
    let p = proj(&k3, 0).unwrap();
    let rad = submodule(&p, &p.radical()).module;
    let m = direct_sum(&k3, &[simple(&k3, 0).unwrap(), rad]).unwrap();
    let mut t = SyzygyTable::new(&k3, 1);
    let tr = phi_trace(&mut t, &m, B).unwrap();
    assert_eq!(tr.phi, 0);
    assert!(tr.ranks.iter().all(|&r| r == 2));
}

#[test]
fn psi_examples() {
    let a = load(fixtures::A2);
    let mut t = SyzygyTable::new(&a, 1);
    let r = psi(&mut t, &simple(&a, 0).unwrap(), C, B).unwrap();
    assert_eq!((r.phi, r.psi), (1, 1));
    let k2 = truncated_loop(2);
    let mut t = SyzygyTable::new(&k2, 1);
    let r = psi(&mut t, &simple(&k2, 0).unwrap(), C, B).unwrap();
    assert_eq!((r.phi, r.psi), (0, 0));
    assert!(r.finite_summands.is_empty());
}

#[test]
fn psi_refuses_unknown_summands() {
    let k3 = truncated_loop(3);
    let mut t = SyzygyTable::new(&k3, 1);
    // With no syzygy explored, the pd of S is unknown; psi must not guess.
    let err = psi(&mut t, &simple(&k3, 0).unwrap(), 0, 0).unwrap_err();
    assert!(matches!(err, ItError::PsiInconclusive { cutoff: 0, .. }));
    // Once the orbit is explored the cached cycle settles it.
    let r = psi(&mut t, &simple(&k3, 0).unwrap(), 0, B).unwrap();
    assert_eq!(r.psi, 0);
}

#[test]
fn psi_equals_finite_pd_on_fixtures() {
    let mut checked = 0;
    for id in ["4.1", "4.3", "4.5"] {
        let s = Session::load(&fixtures::source(id, 3).unwrap()).unwrap();
        let mut t = SyzygyTable::new(&s.algebra, 42);
        let mut modules = s.simples();
        for v in 0..s.algebra.num_vertices() {
            modules.push(proj(&s.algebra, v).unwrap());
        }
        for (name, _) in &s.source.ideals {
            modules.push(s.parse_module(&format!("ideal_as_module:{name}")).unwrap());
            modules.push(s.parse_module(&format!("quotient_as_module:{name}")).unwrap());
        }
        for m in modules {
            if let PdResult::Finite { pd } = t.pd(&m, C).result {
                assert_eq!(psi(&mut t, &m, C, B).unwrap().psi, pd, "{id}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} finite-pd modules");
}

#[test]
fn witness_examples() {
    let a = load(fixtures::A2);
    let mut t = SyzygyTable::new(&a, 1);
    let gens = vec![simple(&a, 0).unwrap(), simple(&a, 1).unwrap()];
    let w = it_witness(&mut t, &gens, B).unwrap().unwrap();
    assert_eq!(w.n, 1);
    assert!(w.closure.is_empty());
    assert_eq!(w.v.dim(), 3);
    assert!(w.all_verified());

    let k2 = truncated_loop(2);
    let mut t = SyzygyTable::new(&k2, 1);
    let w = it_witness(&mut t, &[simple(&k2, 0).unwrap()], B).unwrap().unwrap();
    assert_eq!(w.n, 0);
    assert_eq!(w.closure.len(), 1);
    assert!(w.all_verified());
}

#[test]
fn witness_for_example_45() {
    let s = Session::load(&fixtures::ex45(3)).unwrap();
    let mut t = SyzygyTable::new(&s.algebra, 42);
    let w = it_witness(&mut t, &s.simples(), B).unwrap().expect("orbit closes");
    assert!(w.all_verified());
    assert!(!w.checks.is_empty());
}

#[test]
fn universal_approximation_outside_add_v() {
    // With V = A over k[x]/x², a simple is not in add V; the universal
    // approximation P -> S has kernel S, which is not in add V either.
    let k2 = truncated_loop(2);
    let mut t = SyzygyTable::new(&k2, 1);
    let w = it_witness(&mut t, &[proj(&k2, 0).unwrap()], B).unwrap().unwrap();
    assert!(w.closure.is_empty());
    let c = verify_witness_module(&mut t, &w, &simple(&k2, 0).unwrap(), "S".into()).unwrap();
    assert_eq!(c.approximation, Approximation::Universal);
    assert!(!c.verified);
    // Over A2 the approximation of S1 by A has projective kernel.
    let a = load(fixtures::A2);
    let mut t = SyzygyTable::new(&a, 1);
    let mut w = it_witness(&mut t, &[proj(&a, 0).unwrap()], B).unwrap().unwrap();
    w.n = 0;
    let c = verify_witness_module(&mut t, &w, &simple(&a, 0).unwrap(), "S1".into()).unwrap();
    assert_eq!(c.approximation, Approximation::Universal);
    assert!(c.verified);
}

#[test]
fn witness_bounds_finite_pd_of_samples() {
    for id in ["4.1", "4.5"] {
        let s = Session::load(&fixtures::source(id, 3).unwrap()).unwrap();
        let mut t = SyzygyTable::new(&s.algebra, 42);
        let gens = s.simples();
        let Some(w) = it_witness(&mut t, &gens, B).unwrap() else {
            continue;
        };
        let pv = psi(&mut t, &w.v, C, B).unwrap().psi;
        for g in &gens {
            if let Some(d) = t.pd(g, C).result.finite() {
                assert!(d <= pv + w.n + 1, "{id}: pd {d} > {pv} + {} + 1", w.n);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn psi_is_monotone_on_add(seed in any::<u64>(), which in 0usize..3) {
        let text = [fixtures::EX41.to_string(), fixtures::EX43.to_string(), fixtures::ex45(2)][which].clone();
        let a = load(&text);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_module(&a, &mut rng);
        let z = random_module(&a, &mut rng);
        let y = direct_sum(&a, &[x.clone(), z]).unwrap();
        let xx = direct_sum(&a, &[x.clone(), x.clone()]).unwrap();
        let mut t = SyzygyTable::new(&a, seed);
        let (Ok(px), Ok(py), Ok(pxx)) = (psi(&mut t, &x, C, B), psi(&mut t, &y, C, B), psi(&mut t, &xx, C, B)) else {
            return Ok(());
        };
        prop_assert!(px.trace.certified && py.trace.certified);
        prop_assert!(px.psi <= py.psi);
        prop_assert_eq!(px.psi, pxx.psi);
    }

    #[test]
    fn psi_bounds_pd_of_cokernels(seed in any::<u64>(), which in 0usize..3) {
        let text = [fixtures::EX41.to_string(), fixtures::EX43.to_string(), fixtures::ex45(2)][which].clone();
        let a = load(&text);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = direct_sum(&a, &[random_module(&a, &mut rng), random_module(&a, &mut rng)]).unwrap();
        let s = random_sequence(&y, &mut rng);
        prop_assert!(s.verify());
        let mut t = SyzygyTable::new(&a, seed);
        if let Some(d) = t.pd(&s.right, C).result.finite() {
            let xy = direct_sum(&a, &[s.left.clone(), s.mid.clone()]).unwrap();
            if let Ok(p) = psi(&mut t, &xy, C, B) {
                prop_assert!(d <= p.psi + 1, "pd {} psi {}", d, p.psi);
            }
        }
    }

    #[test]
    fn rank_trace_is_weakly_decreasing(seed in any::<u64>(), which in 0usize..3) {
        let text = [fixtures::EX41.to_string(), fixtures::EX43.to_string(), fixtures::ex45(2)][which].clone();
        let a = load(&text);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = direct_sum(&a, &[random_module(&a, &mut rng), random_module(&a, &mut rng)]).unwrap();
        let mut t = SyzygyTable::new(&a, seed);
        let tr = phi_trace(&mut t, &m, B).unwrap();
        prop_assert!(tr.ranks.windows(2).all(|w| w[0] >= w[1]));
        let last = *tr.ranks.last().unwrap();
        prop_assert!(tr.ranks[tr.phi..].iter().all(|&r| r == last));
        prop_assert!(tr.phi == 0 || tr.ranks[tr.phi - 1] > last);
    }
}
