use gaussoid::relation::{orbit, slot_count};
use gaussoid::{canonical_class, Couple, Permutation, Relation};
use proptest::prelude::*;

fn r4(s: &str) -> Relation {
    Relation::parse(s, 4).unwrap()
}

fn cycles(s: &str) -> Permutation {
    Permutation::parse_cycles(s, 4).unwrap()
}

/// Dual by complementing each conditioning set, one couple at a time.
fn naive_dual(l: &Relation) -> Relation {
    let m = l.ground();
    let full: u8 = ((1u16 << m) - 1) as u8;
    let couples = l.iter().map(|c| {
        let (i, j) = c.pair();
        let rest = full & !c.cond() & !(1 << i) & !(1 << j);
        Couple::new(m, i, j, rest).unwrap()
    });
    Relation::from_couples(m, couples).unwrap()
}

/// Smallest relation of the orbit under the crate's total order.
fn naive_canonical(l: &Relation) -> Relation {
    Permutation::all(l.ground())
        .iter()
        .map(|p| l.permuted(p).unwrap())
        .min()
        .unwrap()
}

fn relation_m(m: usize) -> impl Strategy<Value = Relation> {
    let n = slot_count(m);
    proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
        let couples = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(s, _)| Couple::from_slot(m, s));
        Relation::from_couples(m, couples).unwrap()
    })
}

#[test]
fn slot_counts() {
    assert_eq!(slot_count(3), 6);
    assert_eq!(slot_count(4), 24);
    assert_eq!(slot_count(5), 80);
}

#[test]
fn dual_examples() {
    assert_eq!(r4("12,13|2").dual(), r4("12|34,13|4"));
    assert_eq!(r4("23|14").dual(), r4("23"));
    let l = r4("14|*,23|1,23|14,24|*,34|*");
    assert_eq!(l.dual().dual(), l);
}

#[test]
fn permutation_examples() {
    assert_eq!(r4("13|2").permuted(&cycles("(23)")).unwrap(), r4("12|3"));
    let l = r4("14|*,23|1,23|14");
    assert_eq!(l.permuted(&Permutation::identity(4)).unwrap(), l);
}

#[test]
fn canonical_examples() {
    assert_eq!(canonical_class(&r4("13|2")).representative, r4("12|3"));
    let empty = Relation::empty(4).unwrap();
    assert_eq!(canonical_class(&empty).representative, empty);
}

#[test]
fn star_notation_expands() {
    assert_eq!(r4("13|*,14|*,23|*,24|*,34|*").len(), 20);
    assert_eq!(r4("12|*").len(), 4);
}

#[test]
fn parse_rejects_bad_input() {
    assert!(Relation::parse("15", 4).is_err());
    assert!(Relation::parse("11", 4).is_err());
    assert!(Relation::parse("12|1", 4).is_err());
    assert!(Relation::parse("1", 4).is_err());
    assert!(Relation::parse("12", 7).is_err());
    assert!(Permutation::parse_cycles("(15)", 4).is_err());
}

#[test]
fn whitespace_and_braces_ignored() {
    assert_eq!(Relation::parse(" { 12 , 13 | 2 } ", 4).unwrap(), r4("12,13|2"));
}

proptest! {
    #[test]
    fn display_roundtrip_m4(l in relation_m(4)) {
        prop_assert_eq!(Relation::parse(&l.to_string(), 4).unwrap(), l);
    }

    #[test]
    fn display_roundtrip_m5(l in relation_m(5)) {
        prop_assert_eq!(Relation::parse(&l.to_string(), 5).unwrap(), l);
    }

    #[test]
    fn dual_matches_naive(l in relation_m(4)) {
        prop_assert_eq!(l.dual(), naive_dual(&l));
        prop_assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn dual_matches_naive_m5(l in relation_m(5)) {
        prop_assert_eq!(l.dual(), naive_dual(&l));
    }

    #[test]
    fn dual_commutes_with_permutation(l in relation_m(4), k in 0usize..24) {
        let p = &Permutation::all(4)[k];
        prop_assert_eq!(l.permuted(p).unwrap().dual(), l.dual().permuted(p).unwrap());
    }

    #[test]
    fn canonical_is_orbit_minimum(l in relation_m(4)) {
        let cf = canonical_class(&l);
        prop_assert_eq!(&cf.representative, &naive_canonical(&l));
        prop_assert_eq!(l.permuted(&cf.witness_perm).unwrap(), cf.representative);
    }

    #[test]
    fn orbit_size_divides_group_order(l in relation_m(4)) {
        let o = orbit(&l);
        prop_assert_eq!(24 % o.len(), 0);
        prop_assert!(o.contains(&l));
    }

    #[test]
    fn compose_is_application_order(a in 0usize..24, b in 0usize..24, l in relation_m(4)) {
        let all = Permutation::all(4);
        let (p, q) = (&all[a], &all[b]);
        let pq = p.compose(q).unwrap();
        prop_assert_eq!(l.permuted(&pq).unwrap(), l.permuted(q).unwrap().permuted(p).unwrap());
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn set_operations(a in relation_m(4), b in relation_m(4)) {
        let u = a.union(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert!(a.is_subset(&u).unwrap() && b.is_subset(&u).unwrap());
        prop_assert!(i.is_subset(&a).unwrap() && i.is_subset(&b).unwrap());
        prop_assert_eq!(u.len() + i.len(), a.len() + b.len());
        prop_assert_eq!(a.difference(&b).unwrap().len(), a.len() - i.len());
    }
}
