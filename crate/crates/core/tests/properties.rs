#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use transjective::laurent::{explore_exchange_graph, explore_from, Seed};
use transjective::linalg::{Matrix, Q};
use transjective::rep::{hom_dim, Representation};
use transjective::{EulerData, ExchangeMatrix, NamedQuiver, Quiver};

fn skew_matrix(n: usize) -> impl Strategy<Value = ExchangeMatrix> {
    prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut rows = vec![vec![0i64; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                rows[i][j] = v;
                rows[j][i] = -v;
            }
        }
        ExchangeMatrix::new(rows).unwrap()
    })
}

fn named() -> impl Strategy<Value = NamedQuiver> {
    prop::sample::select(NamedQuiver::ALL.to_vec())
}

fn representation(q: Quiver) -> impl Strategy<Value = Representation> {
    let n = q.n();
    let arrows = q.arrows().to_vec();
    prop::collection::vec(0usize..=2, n).prop_flat_map(move |dims| {
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (dims[t], dims[s])).collect();
        let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let q = q.clone();
        let dims = dims.clone();
        prop::collection::vec(-1i64..=1, total).prop_map(move |entries| {
            let mut it = entries.into_iter();
            let mats = shapes
                .iter()
                .map(|&(r, c)| {
                    Matrix::from_fn(r, c, |_, _| Q::from_integer(it.next().unwrap().into()))
                })
                .collect();
            Representation::new(q.clone(), dims.clone(), mats).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_mutation_is_an_involution(b in (2usize..=5).prop_flat_map(skew_matrix), k in 0usize..5) {
        let k = k % b.n();
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn seed_mutation_is_an_involution(q in named(), seq in prop::collection::vec(0usize..4, 0..6), k in 0usize..4) {
        let b = ExchangeMatrix::from_quiver(&q.quiver());
        let n = b.n();
        let seq: Vec<usize> = seq.into_iter().map(|k| k % n).collect();
        let s = Seed::initial(b).mutate_sequence(&seq).unwrap();
        prop_assert_eq!(s.mutate(k % n).unwrap().mutate(k % n).unwrap(), s);
    }

    #[test]
    fn euler_form_and_coxeter(q in named(), d in prop::collection::vec(-3i64..=3, 4), e in prop::collection::vec(-3i64..=3, 4)) {
        let quiver = q.quiver();
        let n = quiver.n();
        let (d, e) = (&d[..n], &e[..n]);
        let data = EulerData::new(&quiver).unwrap();
        let phi_d = data.coxeter(d).unwrap();
        prop_assert_eq!(data.form(d, e).unwrap(), -data.form(e, &phi_d).unwrap());
        prop_assert_eq!(data.coxeter_inverse(&phi_d).unwrap(), d.to_vec());
    }

    #[test]
    fn hom_is_additive(
        (x, y, z) in named().prop_flat_map(|q| {
            let quiver = q.quiver();
            (representation(quiver.clone()), representation(quiver.clone()), representation(quiver))
        })
    ) {
        let yz = y.direct_sum(&z).unwrap();
        prop_assert_eq!(hom_dim(&x, &yz).unwrap(), hom_dim(&x, &y).unwrap() + hom_dim(&x, &z).unwrap());
        prop_assert_eq!(hom_dim(&yz, &x).unwrap(), hom_dim(&y, &x).unwrap() + hom_dim(&z, &x).unwrap());
    }
}

#[test]
fn exploration_is_order_independent() {
    for q in [NamedQuiver::A3, NamedQuiver::A4, NamedQuiver::D4] {
        let b = ExchangeMatrix::from_quiver(&q.quiver());
        let base = explore_exchange_graph(&b, None).unwrap();
        for shift in 1..b.n() {
            let other =
                explore_from(Seed::initial(b.clone()), None, |i, n| (i * shift) % n).unwrap();
            assert_eq!(other.clusters, base.clusters, "{}", q.name());
            assert_eq!(
                other.variables.keys().collect::<Vec<_>>(),
                base.variables.keys().collect::<Vec<_>>()
            );
        }
    }
}
