use num_bigint::BigInt;
use proptest::prelude::*;

use twist_core::exactla::{kills_relations, Matrix};
use twist_core::freegrp::{FreeEndo, Word};
use twist_core::grouphom::{Cyclic, FiniteGroup, FiniteHom, Perm, Permutations};

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len)
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(Word::from_blocks)
}

fn endo(rank: usize, max_len: usize) -> impl Strategy<Value = FreeEndo> {
    prop::collection::vec(word(rank, max_len), rank).prop_map(|images| FreeEndo::new(images).unwrap())
}

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|images| Perm::from_images(images).unwrap())
}

/// Cancels adjacent inverse pairs in the order chosen by `picks`, then
/// finishes left to right.
fn reduce_by_schedule(mut w: Vec<(usize, i64)>, picks: &[usize]) -> Vec<(usize, i64)> {
    let cancellable = |w: &[(usize, i64)]| -> Vec<usize> {
        (0..w.len().saturating_sub(1)).filter(|&k| w[k].0 == w[k + 1].0 && w[k].1 == -w[k + 1].1).collect()
    };
    for &p in picks {
        let spots = cancellable(&w);
        if spots.is_empty() {
            break;
        }
        let k = spots[p % spots.len()];
        w.drain(k..k + 2);
    }
    while let Some(&k) = cancellable(&w).first() {
        w.drain(k..k + 2);
    }
    w
}

proptest! {
    #[test]
    fn free_reduction_is_confluent(w in letters(3, 40), picks in prop::collection::vec(any::<usize>(), 0..30)) {
        let reduced = reduce_by_schedule(w.clone(), &picks);
        let expanded: Vec<(usize, i64)> = Word::from_blocks(w).letters().collect();
        prop_assert_eq!(reduced, expanded);
    }

    #[test]
    fn apply_is_a_homomorphism(f in endo(3, 6), u in word(3, 10), v in word(3, 10)) {
        let lhs = f.apply(&u.concat(&v)).unwrap();
        let rhs = f.apply(&u).unwrap().concat(&f.apply(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.apply(&Word::empty()).unwrap().is_empty());
    }

    #[test]
    fn powers_compose(f in endo(2, 3), a in 0u32..=3, b in 0u32..=3) {
        let lhs = f.power(a + b).unwrap();
        let rhs = f.power(a).unwrap().compose(&f.power(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelianization_of_power(f in endo(3, 4), d in 1u32..=5) {
        let t: Matrix<BigInt> = f.abelianization_matrix();
        prop_assert_eq!(f.power(d).unwrap().abelianization_matrix::<BigInt>(), t.pow(d));
    }

    #[test]
    fn abelianization_of_composite(f in endo(3, 5), g in endo(3, 5)) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(
            fg.abelianization_matrix::<BigInt>(),
            f.abelianization_matrix::<BigInt>().matmul(&g.abelianization_matrix())
        );
    }

    #[test]
    fn cyclic_compatibility_is_a_cokernel_condition(f in endo(2, 4), d in 1u32..=3, r in 2u64..=5, a in 0u64..5, b in 0u64..5) {
        let alpha = FiniteHom::new(Cyclic::new(r).unwrap(), vec![a % r, b % r]).unwrap();
        let fd = f.power(d).unwrap();
        let t: Matrix<BigInt> = fd.abelianization_matrix();
        let rel = t.sub(&Matrix::identity(2));
        prop_assert_eq!(fd.check_compatibility(&alpha).unwrap(), kills_relations(&rel, &[a % r, b % r], r));
    }

    #[test]
    fn cycle_notation_round_trips((degree, g) in (1usize..=9).prop_flat_map(|n| (Just(n), perm(n)))) {
        prop_assert_eq!(Perm::parse_cycles(&g.to_string(), degree).unwrap(), g);
    }

    #[test]
    fn evaluate_kills_w_winv(w in word(3, 20), imgs in prop::collection::vec(perm(5), 3)) {
        let hom = FiniteHom::new(Permutations::symmetric(5), imgs).unwrap();
        let id = hom.group().identity();
        prop_assert_eq!(hom.evaluate(&w.concat(&w.inverse())).unwrap(), id);
        let u = w.concat(&Word::generator(1));
        let prod = hom.group().multiply(&hom.evaluate(&w).unwrap(), &hom.images()[1]);
        prop_assert_eq!(hom.evaluate(&u).unwrap(), prod);
    }

    #[test]
    fn subgroup_order_divides_group_order(imgs in prop::collection::vec(perm(5), 1..=3)) {
        let hom = FiniteHom::new(Permutations::symmetric(5), imgs).unwrap();
        let order = hom.generated_subgroup_order().unwrap() as u128;
        prop_assert_eq!(120 % order, 0);
    }
}

#[test]
fn trefoil_power_images() {
    let h = FreeEndo::new(vec![Word::power_of(1, -1), Word::from_blocks([(0, 1), (1, 1)])]).unwrap();
    let h2 = h.power(2).unwrap();
    assert_eq!(h2.image(0), &Word::from_blocks([(1, -1), (0, -1)]));
    assert_eq!(h2.image(1), &Word::from_blocks([(1, -1), (0, 1), (1, 1)]));
    assert_eq!(h.power(4).unwrap(), h2.power(2).unwrap());
}
