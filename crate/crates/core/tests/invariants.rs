use std::collections::HashSet;

use glaisher::verify::inadmissible_k4_fixture;
use glaisher::*;
use num_bigint::BigUint;
use proptest::prelude::*;

const SCHEMES: [PermutationScheme; 5] = [
    PermutationScheme::Swap,
    PermutationScheme::Rotate,
    PermutationScheme::Seeded(1),
    PermutationScheme::Seeded(42),
    PermutationScheme::Seeded(7),
];

// Partitions of n with every part at most `max`, by plain recursion.
fn count_bounded(n: u64, max: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|m| count_bounded(n - m, m)).sum()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn enumeration_matches_recursion_and_recurrence() {
    for n in 0..=30 {
        let all: Vec<Partition> = enumerate_partitions(n).collect();
        assert_eq!(all.len() as u64, count_bounded(n, n), "n={n}");
        assert_eq!(BigUint::from(all.len()), partition_count(n), "n={n}");
        assert!(all.iter().all(|q| q.weight() == n));
        let distinct: HashSet<&Partition> = all.iter().collect();
        assert_eq!(distinct.len(), all.len(), "duplicates at n={n}");
    }
}

#[test]
fn enumeration_order_is_reverse_lexicographic() {
    for n in 1..=15 {
        let lists: Vec<Vec<u64>> = enumerate_partitions(n).map(|q| q.parts()).collect();
        assert_eq!(lists[0], vec![n]);
        assert!(lists.windows(2).all(|w| w[0] > w[1]), "n={n}");
    }
}

#[test]
fn large_modulus_makes_classes_trivial() {
    for n in 1..=12 {
        let d = n + 1;
        for q in enumerate_partitions(n) {
            assert!(q.is_d_nondivisible(d).unwrap());
            assert!(q.is_d_regular(d).unwrap());
        }
        // d = n: only {n} has a divisible part, only {1^n} repeats d times.
        if n >= 2 {
            let a: Vec<Partition> = enumerate_partitions(n)
                .filter(|q| !q.is_d_nondivisible(n).unwrap())
                .collect();
            let b: Vec<Partition> = enumerate_partitions(n)
                .filter(|q| !q.is_d_regular(n).unwrap())
                .collect();
            assert_eq!(a, [Partition::from_parts([n]).unwrap()]);
            assert_eq!(b, [Partition::from_parts(vec![1; n as usize]).unwrap()]);
        }
    }
}

#[test]
fn counts_agree_and_match_filters() {
    for d in 2..=5 {
        for n in 0..=40 {
            assert_eq!(
                count_nondivisible(n, d).unwrap(),
                count_regular(n, d).unwrap(),
                "n={n} d={d}"
            );
        }
    }
    for d in [2, 3] {
        for n in 0..=25 {
            let all: Vec<Partition> = enumerate_partitions(n).collect();
            let a = all
                .iter()
                .filter(|q| q.is_d_nondivisible(d).unwrap())
                .count();
            let b = all.iter().filter(|q| q.is_d_regular(d).unwrap()).count();
            assert_eq!(count_nondivisible(n, d).unwrap(), BigUint::from(a));
            assert_eq!(count_regular(n, d).unwrap(), BigUint::from(b));
        }
    }
}

#[test]
fn counts_are_monotone() {
    for d in 2..=5 {
        let rows = count_table(40, d).unwrap();
        assert!(rows
            .windows(2)
            .skip(1)
            .all(|w| w[0].a_n <= w[1].a_n && w[0].p_n <= w[1].p_n));
    }
}

#[test]
fn codec_round_trip_and_classification() {
    for d in [2, 3, 5] {
        for n in 0..=30 {
            for q in enumerate_partitions(n) {
                let f = encode(&q, d).unwrap();
                assert_eq!(decode(&f), q);
                assert_eq!(f.weight(), n);
                assert!(f
                    .matrices()
                    .flat_map(|m| m.entries())
                    .all(|(_, v)| (1..d).contains(&v)));
                assert_eq!(
                    f.high_column_witness().is_some(),
                    !q.is_d_nondivisible(d).unwrap()
                );
                assert_eq!(f.high_row_witness().is_some(), !q.is_d_regular(d).unwrap());
            }
        }
    }
}

#[test]
fn glaisher_maps_are_inverse() {
    for d in [2, 3, 5] {
        for n in 0..=30 {
            for q in enumerate_partitions(n) {
                if q.is_d_regular(d).unwrap() {
                    let s = split_map(&q, d).unwrap();
                    assert_eq!(s.weight(), n);
                    assert!(s.is_d_nondivisible(d).unwrap());
                    assert_eq!(merge_map(&s, d).unwrap(), q);
                }
                if q.is_d_nondivisible(d).unwrap() {
                    let m = merge_map(&q, d).unwrap();
                    assert_eq!(m.weight(), n);
                    assert!(m.is_d_regular(d).unwrap());
                    assert_eq!(split_map(&m, d).unwrap(), q);
                }
            }
        }
    }
}

#[test]
fn diagonal_family_is_a_global_bijection() {
    for d in [2, 3] {
        for s in SCHEMES {
            for n in 0..=25 {
                let all: Vec<Partition> = enumerate_partitions(n).collect();
                let images: Vec<Partition> = all
                    .iter()
                    .map(|q| apply_forward(q, d, &s).unwrap())
                    .collect();
                let set: HashSet<&Partition> = images.iter().collect();
                assert_eq!(set.len(), all.len(), "n={n} d={d} {s}");
                for (q, img) in all.iter().zip(&images) {
                    assert_eq!(img.weight(), n);
                    assert_eq!(&apply_inverse(img, d, &s).unwrap(), q);
                    assert_eq!(
                        &apply_forward(&apply_inverse(q, d, &s).unwrap(), d, &s).unwrap(),
                        q
                    );
                    let in_a = !q.is_d_nondivisible(d).unwrap();
                    assert_eq!(in_a, !img.is_d_regular(d).unwrap(), "{q} -> {img}");
                    if !in_a {
                        assert_eq!(img, &merge_map(q, d).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn swap_on_first_row_and_column_is_glaisher() {
    // Swap exchanges (1, j) and (j, 1), which is exactly merge on the
    // nondivisible side and split on the other.
    for d in [2, 3, 4] {
        for n in 0..=20 {
            for q in enumerate_partitions(n).filter(|q| q.is_d_regular(d).unwrap()) {
                assert!(encode(&q, d).unwrap().high_row_witness().is_none());
                assert_eq!(
                    apply_inverse(&q, d, &PermutationScheme::Swap).unwrap(),
                    split_map(&q, d).unwrap()
                );
            }
        }
    }
}

#[test]
fn inadmissible_fixture_breaks_class_mapping() {
    let fixture = inadmissible_k4_fixture();
    assert_eq!(apply_forward(&p("2+2"), 2, &fixture).unwrap(), p("4"));
    assert!(!p("2+2").is_d_nondivisible(2).unwrap());
    assert!(p("4").is_d_regular(2).unwrap());
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..=40, 0..14).prop_map(|parts| Partition::from_parts(parts).unwrap())
}

fn scheme_strategy() -> impl Strategy<Value = PermutationScheme> {
    prop_oneof![
        Just(PermutationScheme::Swap),
        Just(PermutationScheme::Rotate),
        any::<u64>().prop_map(PermutationScheme::Seeded),
    ]
}

proptest! {
    #[test]
    fn text_format_round_trips(q in partition_strategy()) {
        let again: Partition = q.to_string().parse().unwrap();
        prop_assert_eq!(&again, &q);
        prop_assert_eq!(Partition::from_parts(q.parts()).unwrap(), q);
    }

    #[test]
    fn family_json_round_trips(q in partition_strategy(), d in 2u64..=7) {
        let f = encode(&q, d).unwrap();
        prop_assert_eq!(DigitMatrixFamily::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn transport_round_trips(q in partition_strategy(), d in 2u64..=6, s in scheme_strategy()) {
        let img = apply_forward(&q, d, &s).unwrap();
        prop_assert_eq!(img.weight(), q.weight());
        prop_assert_eq!(apply_inverse(&img, d, &s).unwrap(), q.clone());
        prop_assert_eq!(!q.is_d_nondivisible(d).unwrap(), !img.is_d_regular(d).unwrap());
    }

    #[test]
    fn seeded_schemes_are_admissible(seed in any::<u64>(), x in 1u64..1000, k in 2u32..40) {
        let perm = PermutationScheme::Seeded(seed).scheme_permutation(x, k).unwrap();
        let pairs = perm.as_permutation().pairs();
        prop_assert!(is_admissible(&pairs, k).unwrap());
        prop_assert_eq!(perm, PermutationScheme::Seeded(seed).scheme_permutation(x, k).unwrap());
    }
}
