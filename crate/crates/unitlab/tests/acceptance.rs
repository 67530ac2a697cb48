//! Acceptance suite. One test per criterion; each prints a single
//! "ACCEPTANCE <k> ...: PASS" line (visible with `--nocapture`).
//!
//! Criterion 6 is a scoping statement rather than a runnable check: the
//! published part-(2) decompositions for large q cannot be enumerated
//! extensionally, so their acceptance is structural (criteria 2 and 5),
//! with extensional confirmation delegated to the small-field grid of
//! criterion 4. Nothing further is asserted here for it.

use std::time::Instant;

use unitlab::decomp::{CyclicDecomposition, Factor};
use unitlab::field::Field;
use unitlab::group::AbelianGroup;
use unitlab::modular::unit_group_modular;
use unitlab::semisimple::unit_group_semisimple;
use unitlab::tables::{check_all_theorems, witnesses, THEOREMS};
use unitlab::verify::{closed_form_checks, invariant_checks, oracle_grid};

fn concrete(parts: &[(u64, u64)]) -> CyclicDecomposition {
    let mut d = CyclicDecomposition::new();
    for &(order, mult) in parts {
        d.push(Factor::Concrete(order), mult);
    }
    d
}

fn symbolic(parts: &[(u32, u64)]) -> CyclicDecomposition {
    let mut d = CyclicDecomposition::new();
    for &(deg, mult) in parts {
        d.push(Factor::FieldUnitOrder(deg), mult);
    }
    d
}

/// Criterion 1: for each of the seven groups of order 32 and n in {1,2,3},
/// the modular engine over GF(2^n) reproduces the published part-(1)
/// decomposition exactly, in under 5 seconds total.
#[test]
fn criterion_1_modular_reproduction() {
    let start = Instant::now();
    for theorem in THEOREMS {
        let group = theorem.group();
        for n in 1..=3u32 {
            let field = Field::new(2, n as usize).unwrap();
            let computed = unit_group_modular(&field, &group).unwrap();
            let expected = theorem.char2_expected(n);
            assert!(
                computed.same_shape(&expected),
                "theorem {} over GF(2^{n}): computed {computed}, expected {expected}",
                theorem.id
            );
        }
    }
    // spot check against a decomposition spelled out by hand:
    // C_8 x C_4 -> C_8^n x C_4^{5n} x C_2^{18n} x C_{2^n - 1}
    for n in 1..=3u64 {
        let field = Field::new(2, n as usize).unwrap();
        let group = AbelianGroup::new(&[8, 4]).unwrap();
        let expected = concrete(&[(8, n), (4, 5 * n), (2, 18 * n), ((1 << n) - 1, 1)]);
        let computed = unit_group_modular(&field, &group).unwrap();
        assert!(computed.same_shape(&expected), "C_8 x C_4 at n = {n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("ACCEPTANCE 1 (modular theorem reproduction, 7 groups x n=1..3): PASS ({elapsed:?})");
}

/// Criterion 2: every residue case of every theorem's part (2) is reproduced
/// by at least one witness prime power (the runner uses two where they
/// exist, plus the residue-class path), and the two residues missing from
/// the published Theorem 3.1 compute to the shapes of the -7 and 7 cases.
#[test]
fn criterion_2_semisimple_reproduction() {
    let start = Instant::now();
    let rows = check_all_theorems().unwrap();
    for row in &rows {
        assert!(
            row.pass,
            "theorem {} row '{}': {}",
            row.theorem, row.label, row.detail
        );
    }
    // every residue of every case produced a row, plus 21 char-2 rows and
    // the two extra residues
    let residue_rows: usize = THEOREMS
        .iter()
        .map(|t| {
            t.residue_cases.iter().map(|c| c.residues.len()).sum::<usize>()
                + t.missing_residues.len()
        })
        .sum();
    assert_eq!(rows.len(), 21 + residue_rows);
    assert!(rows.iter().any(|r| r.label.contains("q ≡ 9 (mod 32)")));
    assert!(rows.iter().any(|r| r.label.contains("q ≡ 23 (mod 32)")));

    // the absent residues, asserted directly against the referenced shapes
    let c32 = AbelianGroup::new(&[32]).unwrap();
    let minus7_shape = symbolic(&[(4, 4), (2, 4), (1, 8)]);
    let seven_shape = symbolic(&[(4, 4), (2, 7), (1, 2)]);
    for q in witnesses(9, 32, 32, 2) {
        assert!(unit_group_semisimple(&c32, q).unwrap().same_shape(&minus7_shape));
    }
    for q in witnesses(23, 32, 32, 2) {
        assert!(unit_group_semisimple(&c32, q).unwrap().same_shape(&seven_shape));
    }
    // a hand-spelled row: q = 31 gives C_{q^2-1}^15 x C_{q-1}^2
    let q31 = unit_group_semisimple(&c32, 31).unwrap();
    assert!(q31.same_shape(&symbolic(&[(2, 15), (1, 2)])));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("ACCEPTANCE 2 (semisimple theorem reproduction, all residue cases): PASS ({elapsed:?})");
}

/// Criterion 3: the filtration engine agrees with the closed forms for all
/// cyclic p-groups (p in {2,3,5}, p^k <= 64) and all elementary abelian
/// C_p^k with p^k <= 64, for n <= 3. Exact.
#[test]
fn criterion_3_closed_form_cross_check() {
    let checks = closed_form_checks();
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.pass, "{}: {}", c.label, c.detail);
    }
    println!("ACCEPTANCE 3 (closed-form cross-check, {} cases): PASS", checks.len());
}

/// Criterion 4: for every abelian G and field with q^|G| <= 2^16, the engine
/// decomposition equals the brute-force abelian invariants after CRT
/// normalization and the unit counts match. Under 3 minutes single-threaded.
#[test]
fn criterion_4_oracle_equivalence_grid() {
    let start = Instant::now();
    let checks = oracle_grid(1 << 16);
    // 25 + 13 + 11 + 7 + 6 + 6 + 6 groups across the seven grid fields
    assert_eq!(checks.len(), 74);
    for c in &checks {
        assert!(c.pass, "{}: {}", c.label, c.detail);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 180.0, "took {elapsed:?}, budget 3 min");
    println!(
        "ACCEPTANCE 4 (oracle equivalence grid, {} cases): PASS ({elapsed:?})",
        checks.len()
    );
}

/// Criterion 5: the property suites — Witt–Berman component counts,
/// dimension sums, order/exponent/linearity identities for every modular
/// run, kernel-sequence concavity, and the W-set dimension identity for
/// C_16 x C_2.
#[test]
fn criterion_5_invariant_suites() {
    let checks = invariant_checks();
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.pass, "{}: {}", c.label, c.detail);
    }
    println!("ACCEPTANCE 5 (invariant suites, {} cases): PASS", checks.len());
}
