use csg_core::envelope::{all_operations, operad_compose, AssocPhiElem};
use csg_core::field::{Field, Rationals};
use csg_core::gpar::{GroupOps, ParityGroup};
use csg_core::twalg::*;
use num_rational::BigRational;

fn basis(h: &TwistedAlgebra<Rationals>) -> Vec<Vec<BigRational>> {
    (0..h.dim()).map(|i| h.basis_vector(i)).collect()
}

#[test]
fn odd_unary_after_multiplication_is_reversed_multiplication() {
    let h = quaternions(Rationals, true);
    let mul = AssocPhiElem::new(vec![0, 1], vec![0, 0]).unwrap();
    for g in h.group().elements().filter(|g| h.group().is_odd(g)) {
        let unary = AssocPhiElem::new(vec![0], vec![g]).unwrap();
        let flipped = AssocPhiElem::new(vec![1, 0], vec![g, g]).unwrap();
        for a in basis(&h) {
            for b in basis(&h) {
                let ab = operad_eval(&h, &mul, &[a.clone(), b.clone()]).unwrap();
                let lhs = operad_eval(&h, &unary, &[ab]).unwrap();
                assert_eq!(lhs, operad_eval(&h, &flipped, &[a.clone(), b.clone()]).unwrap());
            }
        }
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut r| {
                r.insert(0, first);
                r
            })
        })
        .collect()
}

#[test]
fn evaluation_respects_operad_composition() {
    let h = quaternions(Rationals, true);
    let labels: Vec<usize> = h.group().elements().collect();
    let e = basis(&h);
    // a few fixed argument tuples over the basis, plus a mixed vector
    let f = Rationals;
    let mixed: Vec<BigRational> = vec![f.from_i64(1), f.from_i64(-2), f.from_i64(3), f.parse("1/2").unwrap()];
    let pool = [e[1].clone(), e[2].clone(), e[3].clone(), mixed];
    let mut checks = 0;
    for k in 0..=3 {
        for outer in all_operations(k, &labels) {
            for arities in (0..=3).flat_map(|t| compositions(t, k)) {
                let total: usize = arities.iter().sum();
                if total > 3 {
                    continue;
                }
                let inner_sets: Vec<Vec<AssocPhiElem<usize>>> =
                    arities.iter().map(|&a| all_operations(a, &labels)).collect();
                // one inner choice per slot, cycling deterministically
                let choices = inner_sets.iter().map(|s| s.len()).product::<usize>().min(12);
                for c in 0..choices {
                    let mut idx = c;
                    let inners: Vec<AssocPhiElem<usize>> = inner_sets
                        .iter()
                        .map(|s| {
                            let pick = s[idx % s.len()].clone();
                            idx /= s.len();
                            pick
                        })
                        .collect();
                    let args: Vec<Vec<BigRational>> = (0..total).map(|x| pool[(x + c) % pool.len()].clone()).collect();
                    let lhs = operad_eval(&h, &operad_compose(h.group(), &outer, &inners).unwrap(), &args).unwrap();
                    let mut start = 0;
                    let mid: Vec<Vec<BigRational>> = inners
                        .iter()
                        .map(|b| {
                            let v = operad_eval(&h, b, &args[start..start + b.arity()]).unwrap();
                            start += b.arity();
                            v
                        })
                        .collect();
                    assert_eq!(lhs, operad_eval(&h, &outer, &mid).unwrap());
                    checks += 1;
                }
            }
        }
    }
    assert!(checks > 1000, "{checks}");
}

#[test]
fn evaluation_is_multilinear() {
    let h = quaternions(Rationals, true);
    let f = Rationals;
    let op = AssocPhiElem::new(vec![2, 0, 1], vec![1, 2, 3]).unwrap();
    let e = basis(&h);
    let two = f.from_i64(2);
    let u: Vec<BigRational> = e[1].iter().zip(&e[2]).map(|(a, b)| f.add(a, &f.mul(&two, b))).collect();
    let lhs = operad_eval(&h, &op, &[u, e[3].clone(), e[1].clone()]).unwrap();
    let a = operad_eval(&h, &op, &[e[1].clone(), e[3].clone(), e[1].clone()]).unwrap();
    let b = operad_eval(&h, &op, &[e[2].clone(), e[3].clone(), e[1].clone()]).unwrap();
    let rhs: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| f.add(x, &f.mul(&two, y))).collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn trivial_monoid_gives_the_ground_field() {
    let m = FiniteMonoid::new(vec!["1".into()], vec![vec![0]]).unwrap();
    let a = monoid_algebra(Rationals, &m, ParityGroup::trivial(), &[]).unwrap();
    let k = ground_field(Rationals);
    assert_eq!((a.dim(), a.unit(), a.structure(0, 0)), (k.dim(), k.unit(), k.structure(0, 0)));
    for n in 1..=5 {
        assert_eq!(cyclic_group_algebra(Rationals, n, ParityGroup::c2_odd()).unwrap().dim(), n);
    }
}
