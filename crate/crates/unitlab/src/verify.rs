//! The verification battery behind `unitlab verify`: the closed-form
//! cross-checks, the oracle-equivalence grid over every small field/group
//! pair, and the structural invariant suites. Each check is reported as one
//! deterministic pass/fail row; engine errors surface as failed rows rather
//! than aborting the battery.

use crate::arith::gcd;
use crate::decomp::{CyclicDecomposition, Factor};
use crate::field::Field;
use crate::group::AbelianGroup;
use crate::mixed::unit_group;
use crate::modular::{
    closed_form_cyclic, closed_form_elementary_abelian, frobenius_kernel_sequence,
    ulm_invariants, unit_group_modular, w_set_dimension,
};
use crate::oracle::{abelian_invariants_from_units, enumerate_units};
use crate::semisimple::{f_conjugacy_classes_residue, wedderburn_degrees_residue};
use crate::tables::THEOREMS;

/// One verification row.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

fn check(label: String, pass: bool, detail: String) -> Check {
    Check { label, pass, detail }
}

fn ok(label: String) -> Check {
    check(label, true, String::new())
}

fn fail(label: String, detail: String) -> Check {
    check(label, false, detail)
}

/// The field/group grid of the oracle-equivalence criterion:
/// (p, n, max |G|) with q^|G| <= 2^16 throughout.
pub const GRID: &[(u64, u32, u64)] = &[
    (2, 1, 16),
    (3, 1, 9),
    (2, 2, 8),
    (5, 1, 6),
    (7, 1, 5),
    (2, 3, 5),
    (3, 2, 5),
];

/// Modular engine vs. the closed forms for cyclic and elementary abelian
/// p-groups.
pub fn closed_form_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        // cyclic C_{p^k}, p in {2, 3, 5}, p^k <= 64
        for p in [2u64, 3, 5] {
            let mut k = 1u32;
            while p.pow(k) <= 64 {
                let label = format!("closed-form cyclic C_{} over GF({p}^{n})", p.pow(k));
                out.push(run_closed_form(p, n, k, label, |p, n, k| {
                    closed_form_cyclic(p, n, k)
                }));
                k += 1;
            }
        }
        // elementary abelian C_p^k, any prime, p^k <= 64
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut k = 1u32;
            while p.pow(k) <= 64 {
                let label = format!("closed-form elementary C_{p}^{k} over GF({p}^{n})");
                out.push(run_elementary(p, n, k, label));
                k += 1;
            }
        }
    }
    out
}

fn run_closed_form(
    p: u64,
    n: u32,
    k: u32,
    label: String,
    closed: impl Fn(u64, u32, u32) -> crate::error::Result<CyclicDecomposition>,
) -> Check {
    let result = (|| -> crate::error::Result<(CyclicDecomposition, CyclicDecomposition)> {
        let field = Field::new(p, n as usize)?;
        let group = AbelianGroup::new(&[p.pow(k)])?;
        Ok((unit_group_modular(&field, &group)?, closed(p, n, k)?))
    })();
    match result {
        Ok((computed, expected)) if computed.same_shape(&expected) => ok(label),
        Ok((computed, expected)) => {
            fail(label, format!("filtration {computed} vs closed form {expected}"))
        }
        Err(e) => fail(label, e.to_string()),
    }
}

fn run_elementary(p: u64, n: u32, k: u32, label: String) -> Check {
    let result = (|| -> crate::error::Result<(CyclicDecomposition, CyclicDecomposition)> {
        let field = Field::new(p, n as usize)?;
        let group = AbelianGroup::new(&vec![p; k as usize])?;
        Ok((
            unit_group_modular(&field, &group)?,
            closed_form_elementary_abelian(p, n, k)?,
        ))
    })();
    match result {
        Ok((computed, expected)) if computed.same_shape(&expected) => ok(label),
        Ok((computed, expected)) => {
            fail(label, format!("filtration {computed} vs closed form {expected}"))
        }
        Err(e) => fail(label, e.to_string()),
    }
}

/// Oracle-equivalence grid: for every field and abelian group with
/// q^|G| below the cap, the engine decomposition must match the
/// brute-force invariants after CRT normalization, and the unit counts
/// must agree.
pub fn oracle_grid(cap: u128) -> Vec<Check> {
    oracle_grid_inner(cap, false)
}

fn oracle_grid_inner(cap: u128, inject_fault: bool) -> Vec<Check> {
    let mut out = Vec::new();
    let mut first = inject_fault;
    for &(p, n, max_order) in GRID {
        let field = match Field::new(p, n as usize) {
            Ok(f) => f,
            Err(e) => {
                out.push(fail(format!("grid GF({p}^{n})"), e.to_string()));
                continue;
            }
        };
        let q = field.q();
        for order in 1..=max_order {
            let within = crate::arith::checked_pow_u128(q as u128, order as u32)
                .map(|t| t <= cap)
                .unwrap_or(false);
            if !within {
                continue;
            }
            let groups = match AbelianGroup::all_of_order(order) {
                Ok(g) => g,
                Err(e) => {
                    out.push(fail(format!("grid order {order}"), e.to_string()));
                    continue;
                }
            };
            for group in groups {
                out.push(run_grid_case(&field, &group, cap, std::mem::take(&mut first)));
            }
        }
    }
    out
}

fn run_grid_case(field: &Field, group: &AbelianGroup, cap: u128, inject_fault: bool) -> Check {
    let label = format!("grid {field} {group}");
    let result = (|| -> crate::error::Result<(CyclicDecomposition, CyclicDecomposition, u64, u128)> {
        let mut engine = unit_group(field, group)?;
        if inject_fault {
            engine.push(Factor::Concrete(2), 1); // negative control
        }
        let table = enumerate_units(field, group, cap)?;
        let recovered = abelian_invariants_from_units(&table)?;
        let count = table.order();
        let total = engine.total_order()?;
        Ok((engine, recovered, count, total))
    })();
    match result {
        Ok((engine, recovered, count, total)) => {
            if !engine.is_isomorphic(&recovered) {
                fail(
                    label,
                    format!("engine {engine} vs oracle {recovered}"),
                )
            } else if total != count as u128 {
                fail(label, format!("engine order {total} vs {count} enumerated units"))
            } else {
                ok(label)
            }
        }
        Err(e) => fail(label, e.to_string()),
    }
}

/// Structural invariant suites: Witt–Berman and dimension counts for
/// semisimple runs; order, exponent, linearity-in-n and W-set identities for
/// modular runs.
pub fn invariant_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(semisimple_invariants());
    out.extend(modular_invariants());
    out.extend(w_set_invariants());
    out
}

fn semisimple_invariants() -> Vec<Check> {
    let mut out = Vec::new();
    for theorem in THEOREMS {
        let group = theorem.group();
        let m = group.exponent();
        for r in (1..m).filter(|&r| gcd(r, m) == 1) {
            let label = format!("semisimple invariants {group}, q ≡ {r} (mod {m})");
            let result = (|| -> crate::error::Result<(usize, u64, u64)> {
                let classes = f_conjugacy_classes_residue(&group, r, m)?;
                let shape = wedderburn_degrees_residue(&group, r, m)?;
                Ok((classes.class_count(), shape.component_count(), shape.dimension()))
            })();
            match result {
                Ok((classes, components, dim)) => {
                    if components != classes as u64 {
                        out.push(fail(
                            label,
                            format!("{components} components vs {classes} classes"),
                        ));
                    } else if dim != group.order() {
                        out.push(fail(label, format!("component degrees sum to {dim}")));
                    } else {
                        out.push(ok(label));
                    }
                }
                Err(e) => out.push(fail(label, e.to_string())),
            }
        }
    }
    out
}

/// All abelian p-groups used for the modular invariant sweep.
fn modular_sweep() -> Vec<(u64, AbelianGroup)> {
    let mut out = Vec::new();
    for theorem in THEOREMS {
        out.push((2, theorem.group()));
    }
    for (p, max) in [(2u64, 16u64), (3, 27), (5, 25)] {
        let mut pk = p;
        while pk <= max {
            for g in AbelianGroup::all_of_order(pk).expect("prime power order") {
                out.push((p, g));
            }
            pk *= p;
        }
    }
    out
}

fn modular_invariants() -> Vec<Check> {
    let mut out = Vec::new();
    for (p, group) in modular_sweep() {
        let mut base_mult: Option<Vec<(u32, u64)>> = None;
        for n in 1..=3u32 {
            let label = format!("modular invariants {group} over GF({p}^{n})");
            let run = || -> crate::error::Result<crate::modular::UlmInvariants> {
                let field = Field::new(p, n as usize)?;
                let seq = frobenius_kernel_sequence(&field, &group)?;
                ulm_invariants(&seq)
            };
            let ulm = match run() {
                Ok(u) => u,
                Err(e) => {
                    out.push(fail(label, e.to_string()));
                    continue;
                }
            };
            // order identity: sum of s * m_s = n (|G| - 1)
            let expect_log = n as u64 * (group.order() - 1);
            if ulm.log_order() != expect_log {
                out.push(fail(
                    label,
                    format!("log |V| = {} instead of {expect_log}", ulm.log_order()),
                ));
                continue;
            }
            // exponent identity: exp V(FG) = exp G
            if ulm.exponent() != group.exponent() {
                out.push(fail(
                    label,
                    format!("exp V = {} vs exp G = {}", ulm.exponent(), group.exponent()),
                ));
                continue;
            }
            // linearity in n against the n = 1 run
            let mult: Vec<(u32, u64)> = ulm.multiplicities().collect();
            match &base_mult {
                None => base_mult = Some(mult),
                Some(base) => {
                    let scaled: Vec<(u32, u64)> =
                        base.iter().map(|&(s, m)| (s, m * n as u64)).collect();
                    if mult != scaled {
                        out.push(fail(
                            label,
                            format!("multiplicities {mult:?} are not n x {base:?}"),
                        ));
                        continue;
                    }
                }
            }
            out.push(ok(label));
        }
    }
    out
}

fn w_set_invariants() -> Vec<Check> {
    let mut out = Vec::new();
    let group = AbelianGroup::new(&[16, 2]).expect("C_16 x C_2");
    for n in 1..=3u32 {
        let label = format!("W-set dimension, {group} over GF(2^{n}), j = 3");
        let result = (|| -> crate::error::Result<usize> {
            let field = Field::new(2, n as usize)?;
            let seq = frobenius_kernel_sequence(&field, &group)?;
            w_set_dimension(&seq, 3)
        })();
        match result {
            Ok(dim) if dim == n as usize => out.push(ok(label)),
            Ok(dim) => out.push(fail(label, format!("dimension {dim}, expected {n}"))),
            Err(e) => out.push(fail(label, e.to_string())),
        }
    }
    out
}

/// The whole battery, in deterministic order. `inject_fault` corrupts the
/// first grid comparison as a negative control.
pub fn run_verification(cap: u128, inject_fault: bool) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(closed_form_checks());
    out.extend(oracle_grid_inner(cap, inject_fault));
    out.extend(invariant_checks());
    out
}
