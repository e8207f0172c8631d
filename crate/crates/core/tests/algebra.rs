use std::collections::HashMap;
use std::sync::Arc;

use findim::algebra::*;
use findim::dsl::{parse_presentation, parse_source, GenSpec};
use findim::fixtures;

/// Independent count of `dim (kQ/J)_d`: enumerate every path of length `d`
/// and take the rank of all `u·r·v` with total length `d`.
fn oracle_dims(p: &Presentation, max_degree: usize) -> Vec<usize> {
    let q = &p.quiver;
    let f = p.field.p() as u64;
    let mut paths_by_len: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_degree + 1];
    paths_by_len[1] = (0..q.arrows.len()).map(|a| vec![a]).collect();
    for d in 2..=max_degree {
        let mut next = Vec::new();
        for w in &paths_by_len[d - 1] {
            for a in 0..q.arrows.len() {
                if q.arrows[a].source == q.arrows[w[0]].target {
                    let mut x = vec![a];
                    x.extend_from_slice(w);
                    next.push(x);
                }
            }
        }
        paths_by_len[d] = next;
    }
    let mut dims = vec![q.vertices.len()];
    for d in 1..=max_degree {
        let index: HashMap<&Vec<usize>, usize> = paths_by_len[d]
            .iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for r in &p.relations {
            let len = r.terms[0].word.len();
            if len > d {
                continue;
            }
            for i in 0..=d - len {
                let left: Vec<Vec<usize>> = if i == 0 { vec![vec![]] } else { paths_by_len[i].clone() };
                let rlen = d - len - i;
                let right: Vec<Vec<usize>> = if rlen == 0 { vec![vec![]] } else { paths_by_len[rlen].clone() };
                for u in &left {
                    for v in &right {
                        let mut row = vec![0u64; paths_by_len[d].len()];
                        let mut any = false;
                        for t in &r.terms {
                            let mut w = u.clone();
                            w.extend_from_slice(&t.word);
                            w.extend_from_slice(v);
                            if let Some(&k) = index.get(&w) {
                                row[k] = (row[k] + t.coeff as u64) % f;
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        dims.push(paths_by_len[d].len() - rank_mod(rows, f));
    }
    while dims.last() == Some(&0) {
        dims.pop();
    }
    dims
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let m = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - m * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn fixture(id: &str) -> Arc<Algebra> {
    let p = parse_presentation(&fixtures::source(id, 3).unwrap()).unwrap();
    Arc::new(build_algebra(&p).unwrap())
}

fn ideal(a: &Arc<Algebra>, id: &str, name: &str) -> Ideal {
    let src = parse_source(&fixtures::source(id, 3).unwrap()).unwrap();
    let gens: Vec<IdealGen> = src
        .ideal(name)
        .unwrap()
        .iter()
        .map(|g| match g {
            GenSpec::Arrow(k) => IdealGen::Arrow(*k),
            GenSpec::Vertex(v) => IdealGen::Vertex(*v),
            GenSpec::RadPower(n) => IdealGen::RadPower(*n),
            GenSpec::Element(r) => IdealGen::Element(a.relation_element(r)),
        })
        .collect();
    ideal_generate(a, &gens).unwrap()
}

#[test]
fn graded_dimensions_match_path_enumeration() {
    for (id, n) in [("4.1", 3), ("4.2", 3), ("4.3", 3), ("4.5", 2), ("4.5", 3), ("a2", 3)] {
        let p = parse_presentation(&fixtures::source(id, n).unwrap()).unwrap();
        let a = build_algebra(&p).unwrap();
        let oracle = oracle_dims(&p, a.nilpotency_index() + 1);
        assert_eq!(a.dims_by_degree(), oracle, "fixture {id} n={n}");
        assert!(a.check_axioms(), "fixture {id}");
    }
}

#[test]
fn frozen_fixture_dimensions() {
    // Values produced by the path-enumeration oracle above.
    assert_eq!(fixture("4.1").dims_by_degree(), vec![5, 8, 9, 6, 3, 2]);
    assert_eq!(fixture("4.2").dims_by_degree(), vec![5, 8, 9, 7, 6, 5, 2]);
    assert_eq!(fixture("4.3").dims_by_degree(), vec![4, 8, 8, 7, 4, 1]);
}

#[test]
fn example_44_is_infinite_dimensional() {
    let p = parse_presentation(fixtures::EX44).unwrap();
    match build_algebra(&p) {
        Err(AlgebraError::InfiniteDimensional { reason }) => {
            assert!(reason.contains("rho") || reason.contains("sigma"), "{reason}")
        }
        other => panic!("expected an infinite-dimensional verdict, got {other:?}"),
    }
}

#[test]
fn truncated_polynomial_rings() {
    for m in 2..6 {
        let text = format!(
            "algebra k over GF(101)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n  x^{m}\n"
        );
        let a = build_algebra(&parse_presentation(&text).unwrap()).unwrap();
        assert_eq!(a.dim(), m);
        assert_eq!(a.nilpotency_index(), m);
    }
    let free = "algebra k over GF(101)\nvertices: 1\narrows:\n  x: 1 -> 1\nrelations:\n";
    assert!(matches!(
        build_algebra(&parse_presentation(free).unwrap()),
        Err(AlgebraError::InfiniteDimensional { .. })
    ));
}

#[test]
fn example_41_ideals_and_quotient() {
    let a = fixture("4.1");
    let i1 = ideal(&a, "4.1", "I1");
    let i2 = ideal(&a, "4.1", "I2");
    assert!(i1.is_subideal_of(&i2));
    let rad = radical_power(&a, 1);
    assert!(ideal_product(&i1, &rad).unwrap().is_zero());
    let q1 = quotient_algebra(&a, &i1).unwrap();
    let i2_bar = push_forward_ideal(&q1, &i2).unwrap();
    let rad1 = radical_power(q1.quotient(), 1);
    assert!(ideal_product(&i2_bar, &rad1).unwrap().is_zero());

    let q2 = quotient_algebra(&a, &i2).unwrap();
    let b = q2.quotient();
    let pres = b.presentation().expect("re-presentation verified");
    assert_eq!(pres.quiver.vertices, vec!["1", "3", "4", "5"]);
    assert_eq!(pres.quiver.arrows.len(), 5);
    assert_eq!(pres.relations.len(), 3);
    assert!(b.is_monomial().unwrap());
    assert!(b.check_axioms());
}

#[test]
fn example_43_quotient_is_monomial() {
    let a = fixture("4.3");
    let i = ideal(&a, "4.3", "I");
    assert!(ideal_product(&i, &radical_power(&a, 1)).unwrap().is_zero());
    let q = quotient_algebra(&a, &i).unwrap();
    let pres = q.quotient().presentation().unwrap();
    assert_eq!(pres.quiver.arrows.len(), 7);
    assert_eq!(pres.relations.len(), 10);
    assert!(pres.is_monomial());
    let names: Vec<String> = pres
        .relations
        .iter()
        .map(|r| pres.quiver.word_name(&r.terms[0].word))
        .collect();
    assert!(names.contains(&"delta*gamma".to_string()));
}

#[test]
fn example_45_square_zero_ideal_and_opposite() {
    for n in 2..=4 {
        let p = parse_presentation(&fixtures::ex45(n)).unwrap();
        let a = Arc::new(build_algebra(&p).unwrap());
        let gens: Vec<IdealGen> = (0..n - 1)
            .map(|i| IdealGen::Arrow(a.arrow_by_name(&format!("gamma{}", i + 1)).unwrap()))
            .collect();
        let i = ideal_generate(&a, &gens).unwrap();
        assert!(ideal_product(&i, &i).unwrap().is_zero());
        let q = quotient_algebra(&a, &i).unwrap();
        let pres = q.quotient().presentation().unwrap();
        assert!(pres.is_monomial());
        assert_eq!(pres.relations.len(), 3);

        let op = opposite(&a).unwrap();
        assert_eq!(op.dims_by_degree(), a.dims_by_degree());
        assert!(op.check_axioms());
        let op_built = build_algebra(op.presentation().unwrap()).unwrap();
        assert_eq!(op_built.dims_by_degree(), a.dims_by_degree());
    }
}

#[test]
fn ideal_closure_is_two_sided() {
    let a = fixture("4.3");
    let i = ideal(&a, "4.3", "I");
    for v in i.space().vectors() {
        for m in 0..a.dim() {
            assert!(i.contains(&a.left_mul(m, &v)));
            assert!(i.contains(&a.right_mul(&v, m)));
        }
    }
    assert!(i.is_graded());
}

#[test]
fn radical_square_zero_dynkin() {
    // A3 linear quiver: separated quiver is A1 ⊔ A2 ⊔ A2 ⊔ A1.
    let text = "algebra L over GF(5)\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  b*a\n";
    let a = build_algebra(&parse_presentation(text).unwrap()).unwrap();
    let cert = separated_quiver_dynkin(&a).unwrap().unwrap();
    assert_eq!(cert.components.len(), 4);
    // Kronecker quiver: separated quiver has a double edge.
    let text = "algebra K over GF(5)\nvertices: 1 2\narrows:\n  a: 1 -> 2\n  b: 1 -> 2\nrelations:\n";
    let k = build_algebra(&parse_presentation(text).unwrap()).unwrap();
    assert_eq!(separated_quiver_dynkin(&k).unwrap(), None);
    assert!(matches!(
        separated_quiver_dynkin(&fixture("4.1")),
        Err(AlgebraError::RadicalSquareNotZero)
    ));
}
