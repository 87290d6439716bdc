mod common;

use delsarte_core::cyclic::{check_field, closed_form_factors, cyclic_weights, verify_cyclic, CyclicData};
use delsarte_core::FiniteQuotient;

#[test]
fn random_weights_match_closed_form() {
    for (m, w) in common::random_cyclic_weights(31, 40, 40) {
        let q = FiniteQuotient::cyclic(m, w).unwrap();
        let v = verify_cyclic(&q).unwrap();
        assert!(v.closed_form_matches, "m={m} w={w:?}: {:?}", v.fields);
        assert!(v.degree_sums_equal, "m={m} w={w:?}: {} {} {}", v.integer_rank, v.rank_from_divisors, v.rank_from_subgroups);
        assert!(v.torsion_free);
    }
}

#[test]
fn weights_survive_unit_rescaling() {
    for (m, w) in common::random_cyclic_weights(8, 20, 30) {
        let base = CyclicData::from_weights(m, w).unwrap();
        for u in (1..m).filter(|u| num_integer::gcd(*u, m) == 1) {
            let scaled = CyclicData::from_weights(m, w.map(|x| x * u % m)).unwrap();
            assert_eq!(scaled.weights, base.weights);
        }
        let q = FiniteQuotient::cyclic(m, w).unwrap();
        assert_eq!(cyclic_weights(&q).unwrap().weights, base.weights);
    }
}

#[test]
fn degree_one_factors_are_t_minus_one() {
    let c = CyclicData::from_weights(7, [3, 1, 2, 1]).unwrap();
    let f = closed_form_factors(&c).unwrap();
    assert!(f[..3].iter().all(|x| x.degree() == 1));
    let q = check_field(&c, 0).unwrap();
    assert_eq!(q.smith[0], q.closed_form[0]);
    assert_eq!(q.degree_sum as u64, f.iter().map(|x| x.degree()).sum::<u64>());
}

#[test]
fn delta_one_in_characteristic_two() {
    let c = CyclicData::from_weights(8, [5, 1, 1, 1]).unwrap();
    assert_eq!(c.delta, 1);
    assert!(check_field(&c, 2).unwrap().matches);
    assert!(check_field(&c, 0).unwrap().matches);
}
