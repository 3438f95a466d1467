mod common;

use common::*;
use isoperiod_core::arith::{Int, Rat};
use isoperiod_core::covers::{genus_of_branched_cover, genus_of_origami, BranchedTorusCover, Origami, Permutation};
use isoperiod_core::lattice::{canonical_rank2, canonical_rank4, Sublattice};
use isoperiod_core::matrix;
use isoperiod_core::realize::{area, is_realizable_line, period_group, sl2_act, CohomologyClass};
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn random_cover(r: &mut impl Rng, d: usize) -> Option<BranchedTorusCover> {
    let a = random_permutation(r, d);
    let b = random_permutation(r, d);
    let comm = a.commutator(&b).unwrap();
    let mut branch = vec![comm.inverse()];
    if r.gen_bool(0.5) {
        let c = random_permutation(r, d);
        branch.push(c.clone());
        branch.push(c.inverse());
    }
    let branch: Vec<Permutation> = branch.into_iter().filter(|p| !p.is_identity()).collect();
    BranchedTorusCover::new(a, b, branch).ok()
}

#[test]
fn branched_genus_matches_euler_characteristic() {
    let mut r = rng(11);
    let mut n = 0;
    while n < 300 {
        let d = r.gen_range(2..=9);
        let Some(c) = random_cover(&mut r, d) else { continue };
        assert_eq!(genus_of_branched_cover(&c).unwrap(), branched_genus_by_euler(&c));
        let q = random_permutation(&mut r, d);
        let c2 = c.relabeled(&q).unwrap();
        assert_eq!(genus_of_branched_cover(&c2).unwrap(), branched_genus_by_euler(&c));
        n += 1;
    }
}

#[test]
fn origami_genus_matches_square_complex() {
    let mut r = rng(12);
    let mut n = 0;
    while n < 300 {
        let d = r.gen_range(1..=10);
        let Ok(o) = Origami::new(random_permutation(&mut r, d), random_permutation(&mut r, d)) else { continue };
        assert_eq!(genus_of_origami(&o), origami_genus_by_euler(&o));
        assert_eq!(genus_of_branched_cover(&o.to_cover()).unwrap(), genus_of_origami(&o));
        n += 1;
    }
}

fn abs_pfaffian(u: &Sublattice) -> Rat {
    let gram = matrix::to_rat(&u.gram());
    brute_pfaffian(&gram).abs()
}

#[test]
fn determinant_matches_expanded_pfaffian() {
    let mut r = rng(13);
    for _ in 0..100 {
        let g = r.gen_range(3..=5);
        let d = Int::from(r.gen_range(1..=30i64));
        let u = if r.gen_bool(0.5) { canonical_rank2(g, &d) } else { canonical_rank4(g, &d) }.unwrap();
        let u = u.transformed(&random_sp(&mut r, g, 12));
        assert_eq!(Rat::from_integer(u.determinant().unwrap()), abs_pfaffian(&u));
        assert_eq!(u.determinant().unwrap(), d);
    }
}

#[test]
fn pfaffian_squares_to_gram_determinant() {
    let mut r = rng(14);
    for _ in 0..50 {
        let g = r.gen_range(2..=4);
        let u = canonical_rank4(g.max(3), &Int::from(r.gen_range(1..=9i64))).unwrap();
        let u = u.transformed(&random_sp(&mut r, g.max(3), 6));
        let gram = matrix::to_rat(&u.gram());
        let p = brute_pfaffian(&gram);
        assert_eq!(&p * &p, matrix::det(&gram));
    }
}

fn class_strategy() -> impl Strategy<Value = CohomologyClass> {
    (2usize..=4).prop_flat_map(|g| {
        prop::collection::vec((-20i64..=20, -20i64..=20), 2 * g)
            .prop_map(move |v| CohomologyClass::from_ints(g, &v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_is_symplectic_invariant(c in class_strategy(), seed in any::<u64>()) {
        prop_assume!(!c.is_zero());
        let mut r = rng(seed);
        let t = c.transformed(&random_sp(&mut r, c.genus(), 10)).unwrap();
        match (is_realizable_line(&c), is_realizable_line(&t)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.realizable, b.realizable);
                prop_assert_eq!(a.det, b.det);
                prop_assert_eq!(a.area, b.area);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn area_scales_under_sl2(c in class_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_sl2(&mut r);
        let t = sl2_act(&m, &c).unwrap();
        prop_assert_eq!(area(&t), area(&c));
        if let (Ok(a), Ok(b)) = (period_group(&c).covolume(), period_group(&t).covolume()) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn conjugation_negates_area(c in class_strategy()) {
        prop_assert_eq!(area(&c.conj()), -area(&c));
        prop_assert!(area(&c.conj().conj()) == area(&c));
    }
}
