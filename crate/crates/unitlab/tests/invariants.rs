//! Cross-module property tests. The kernel-sequence oracle here is
//! deliberately independent of the production path: it never builds a
//! matrix, it only counts collapse classes of the power map g -> g^(p^k)
//! on the group itself.

use proptest::prelude::*;

use unitlab::decomp::{CyclicDecomposition, Factor, FactorEntry};
use unitlab::field::Field;
use unitlab::group::AbelianGroup;
use unitlab::modular::frobenius_kernel_sequence;
use unitlab::oracle::{enumerate_units, DEFAULT_ENUMERATION_CAP};
use unitlab::semisimple::unit_group_semisimple;
use unitlab::unit_group_pn;

/// Independent oracle: a_k = n (|G| - |G^(p^k)|).
///
/// An element sum(c_g g) of the augmentation ideal satisfies x^(p^k) = 0 iff
/// the coefficients sum to zero over every fiber of g -> g^(p^k) (the p^k
/// power of the sum collapses each fiber to a single basis element, and the
/// field Frobenius is injective). That is one F-linear condition per distinct
/// image element, and every solution lies in the augmentation ideal
/// automatically, so dim ker over GF(p) is n (|G| - #images).
fn kernel_dims_by_collapse(p: u64, n: usize, group: &AbelianGroup) -> Vec<usize> {
    let e = group.exponent().ilog(p);
    let mut dims = Vec::new();
    for k in 1..=e {
        let pk = p.pow(k);
        let mut images: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
        for g in group.elements() {
            images.insert(group.index_of(&group.scale(&g, pk % group.exponent())));
        }
        dims.push(n * (group.order() as usize - images.len()));
    }
    dims
}

#[test]
fn kernel_sequences_match_the_collapse_oracle() {
    let cases: Vec<(u64, usize, Vec<u64>)> = vec![
        (2, 1, vec![32]),
        (2, 1, vec![16, 2]),
        (2, 1, vec![8, 4]),
        (2, 1, vec![8, 2, 2]),
        (2, 1, vec![4, 4, 2]),
        (2, 1, vec![4, 2, 2, 2]),
        (2, 1, vec![2, 2, 2, 2, 2]),
        (2, 2, vec![8, 2]),
        (2, 3, vec![4, 4]),
        (3, 1, vec![27]),
        (3, 2, vec![9, 3]),
        (5, 1, vec![25]),
        (7, 2, vec![7]),
    ];
    for (p, n, orders) in cases {
        let group = AbelianGroup::new(&orders).unwrap();
        let field = Field::new(p, n).unwrap();
        let via_matrix = frobenius_kernel_sequence(&field, &group).unwrap();
        let via_collapse = kernel_dims_by_collapse(p, n, &group);
        assert_eq!(
            via_matrix.dims(),
            via_collapse.as_slice(),
            "GF({p}^{n}), {group}"
        );
    }
}

#[test]
fn frozen_kernel_sequences_for_the_seven_groups() {
    // values computed with the collapse oracle (and checkable by hand from
    // the image sizes of squaring maps)
    let expected: Vec<(Vec<u64>, Vec<usize>)> = vec![
        (vec![32], vec![16, 24, 28, 30, 31]),
        (vec![16, 2], vec![24, 28, 30, 31]),
        (vec![8, 4], vec![24, 30, 31]),
        (vec![8, 2, 2], vec![28, 30, 31]),
        (vec![4, 4, 2], vec![28, 31]),
        (vec![4, 2, 2, 2], vec![30, 31]),
        (vec![2, 2, 2, 2, 2], vec![31]),
    ];
    let field = Field::new(2, 1).unwrap();
    for (orders, dims) in expected {
        let group = AbelianGroup::new(&orders).unwrap();
        assert_eq!(kernel_dims_by_collapse(2, 1, &group), dims, "{group} (oracle)");
        let seq = frobenius_kernel_sequence(&field, &group).unwrap();
        assert_eq!(seq.dims(), dims.as_slice(), "{group} (matrix)");
    }
}

#[test]
fn multiplicative_group_has_q_minus_1_elements_up_to_2_pow_12() {
    let mut checked = 0;
    for q in 2u64..=(1 << 12) {
        if unitlab::arith::prime_power(q).is_none() {
            continue;
        }
        let field = Field::with_order(q).unwrap();
        let one = field.one();
        let mut units = 0u64;
        for a in field.elements().unwrap() {
            if !field.is_zero(&a) {
                units += 1;
                assert_eq!(field.pow(&a, (q - 1) as u128), one, "a^(q-1) in GF({q})");
            }
        }
        assert_eq!(units, q - 1);
        checked += 1;
    }
    assert!(checked > 600); // all prime powers up to 4096
}

#[test]
fn inverse_is_multiplicative_up_to_q_64() {
    for q in 2u64..=64 {
        if unitlab::arith::prime_power(q).is_none() {
            continue;
        }
        let field = Field::with_order(q).unwrap();
        let els: Vec<_> = field.elements().unwrap().collect();
        for a in &els {
            if field.is_zero(a) {
                continue;
            }
            for b in &els {
                if field.is_zero(b) {
                    continue;
                }
                let lhs = field.inv(&field.mul(a, b)).unwrap();
                let rhs = field.mul(&field.inv(a).unwrap(), &field.inv(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

/// Small group strategy: up to three cyclic factors from a prime-power pool.
fn small_group() -> impl Strategy<Value = AbelianGroup> {
    proptest::collection::vec(
        prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(8), Just(9), Just(7)],
        1..=3,
    )
    .prop_map(|orders| AbelianGroup::new(&orders).unwrap())
}

fn arbitrary_decomposition() -> impl Strategy<Value = CyclicDecomposition> {
    proptest::collection::vec(
        (
            prop_oneof![
                (1u32..=6).prop_map(Factor::FieldUnitOrder),
                (1u64..=120).prop_map(Factor::Concrete),
            ],
            1u64..=20,
        ),
        0..=6,
    )
    .prop_map(|parts| {
        let mut d = CyclicDecomposition::new();
        for (f, m) in parts {
            d.push(f, m);
        }
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbits_partition_the_group(group in small_group(), t in 1u64..300) {
        let exp = group.exponent();
        prop_assume!(unitlab::arith::gcd(t % exp, exp) == 1);
        let orbits = group.power_map_orbits(t).unwrap();
        let total: usize = orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(total as u64, group.order());
        for orbit in &orbits {
            let order = group.element_order(&orbit[0]);
            for m in orbit {
                prop_assert_eq!(group.element_order(m), order);
                prop_assert!(orbit.contains(&group.scale(m, t)));
            }
        }
        // orbit structure only depends on t mod exp(G)
        let shifted = group.power_map_orbits(t % exp + exp).unwrap();
        prop_assert_eq!(orbits, shifted);
    }

    #[test]
    fn primary_split_reconstructs(group in small_group(), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let (part, rest) = group.primary_split(p);
        prop_assert!(part.is_p_group(p));
        prop_assert_eq!(part.order() * rest.order(), group.order());
        prop_assert_eq!(part.direct_product(&rest).unwrap(), group);
    }

    #[test]
    fn factor_entries_round_trip_through_json(dec in arbitrary_decomposition()) {
        let entries = dec.factor_entries();
        let json = serde_json::to_string(&entries).unwrap();
        let parsed: Vec<FactorEntry> = serde_json::from_str(&json).unwrap();
        let back = CyclicDecomposition::from_factor_entries(&parsed, dec.q(), dec.is_normalized()).unwrap();
        prop_assert_eq!(back, dec);
    }

    #[test]
    fn evaluation_is_idempotent(dec in arbitrary_decomposition(), q in prop_oneof![Just(2u64), Just(3), Just(5), Just(9)]) {
        let once = dec.evaluate(Some(q)).unwrap();
        let twice = once.evaluate(Some(q)).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.is_normalized());
        // evaluation preserves the total order (when it fits u128 at all)
        if let Ok(total) = dec.clone().with_q(q).total_order() {
            prop_assert_eq!(once.total_order().unwrap(), total);
        }
    }

    #[test]
    fn semisimple_shape_depends_only_on_the_residue(group in small_group(), q in 2u64..2000, k in 1u64..20) {
        prop_assume!(unitlab::arith::gcd(q, group.order()) == 1);
        let shifted = q + k * group.exponent();
        let a = unit_group_semisimple(&group, q).unwrap();
        let b = unit_group_semisimple(&group, shifted).unwrap();
        prop_assert!(a.same_shape(&b));
    }

    #[test]
    fn engine_matches_oracle_on_random_small_cases(
        group in small_group(),
        (p, n) in prop_oneof![Just((2u64, 1u32)), Just((3, 1)), Just((2, 2)), Just((5, 1))],
    ) {
        let q = p.pow(n);
        prop_assume!((q as u128).checked_pow(group.order() as u32).map(|t| t <= 1 << 14).unwrap_or(false));
        let field = Field::new(p, n as usize).unwrap();
        let engine = unit_group_pn(p, n, &group).unwrap();
        let table = enumerate_units(&field, &group, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(engine.total_order().unwrap(), table.order() as u128);
        prop_assert!(engine.is_isomorphic(&table.abelian_invariants().unwrap()));
    }
}
