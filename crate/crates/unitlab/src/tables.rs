//! Reference tables: the published classification of U(FG) for the seven
//! abelian groups of order 32 (Theorems 3.1–3.7), transcribed from the
//! theorem statements, plus the deterministic witness rule used to test each
//! residue class with concrete prime powers.

use crate::decomp::{CyclicDecomposition, Factor};
use crate::error::Result;
use crate::field::Field;
use crate::group::AbelianGroup;
use crate::modular::unit_group_modular;
use crate::semisimple::{unit_group_semisimple, unit_group_semisimple_residue};

/// One residue case of a theorem's part (2): a set of residues mod the
/// theorem's modulus sharing one decomposition, given as (degree d,
/// multiplicity) pairs meaning C_{q^d-1}^mult.
#[derive(Debug, Clone, Copy)]
pub struct ResidueCase {
    pub residues: &'static [u64],
    pub degrees: &'static [(u32, u64)],
}

/// A residue mod 32 that the published Theorem 3.1 omits; its computed shape
/// must equal that of the referenced case.
#[derive(Debug, Clone, Copy)]
pub struct MissingResidue {
    pub residue: u64,
    pub matches_case: usize,
}

/// One published theorem: the group, the char-2 decomposition of part (1) as
/// n-multiples, and the residue table of part (2).
#[derive(Debug, Clone, Copy)]
pub struct Theorem {
    pub id: &'static str,
    pub group_orders: &'static [u64],
    /// (cyclic order 2^s, coefficient c) meaning C_{2^s}^{c n}.
    pub char2: &'static [(u64, u64)],
    /// Modulus of the part-(2) residue classification.
    pub modulus: u64,
    pub residue_cases: &'static [ResidueCase],
    pub missing_residues: &'static [MissingResidue],
}

pub const THEOREMS: &[Theorem] = &[
    Theorem {
        id: "3.1",
        group_orders: &[32],
        char2: &[(32, 1), (16, 1), (8, 2), (4, 4), (2, 8)],
        modulus: 32,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[31], degrees: &[(2, 15), (1, 2)] },
            ResidueCase {
                residues: &[3, 27, 11, 19],
                degrees: &[(8, 2), (4, 2), (2, 3), (1, 2)],
            },
            ResidueCase {
                residues: &[29, 5, 21, 13],
                degrees: &[(8, 2), (4, 2), (2, 2), (1, 4)],
            },
            ResidueCase { residues: &[7], degrees: &[(4, 4), (2, 7), (1, 2)] },
            ResidueCase { residues: &[25], degrees: &[(4, 4), (2, 4), (1, 8)] },
            ResidueCase { residues: &[15], degrees: &[(2, 15), (1, 2)] },
            ResidueCase { residues: &[17], degrees: &[(2, 8), (1, 16)] },
        ],
        missing_residues: &[
            MissingResidue { residue: 9, matches_case: 5 },  // the q = -7 case
            MissingResidue { residue: 23, matches_case: 4 }, // the q = 7 case
        ],
    },
    Theorem {
        id: "3.2",
        group_orders: &[16, 2],
        char2: &[(16, 1), (8, 1), (4, 2), (2, 20)],
        modulus: 16,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[15], degrees: &[(2, 14), (1, 4)] },
            ResidueCase { residues: &[3, 11], degrees: &[(4, 4), (2, 6), (1, 4)] },
            ResidueCase { residues: &[13, 5], degrees: &[(4, 4), (2, 4), (1, 8)] },
            ResidueCase { residues: &[7], degrees: &[(2, 14), (1, 4)] },
            ResidueCase { residues: &[9], degrees: &[(2, 8), (1, 16)] },
        ],
        missing_residues: &[],
    },
    Theorem {
        id: "3.3",
        group_orders: &[8, 4],
        char2: &[(8, 1), (4, 5), (2, 18)],
        modulus: 8,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[7], degrees: &[(2, 14), (1, 4)] },
            ResidueCase { residues: &[3], degrees: &[(2, 14), (1, 4)] },
            ResidueCase { residues: &[5], degrees: &[(2, 8), (1, 16)] },
        ],
        missing_residues: &[],
    },
    Theorem {
        id: "3.4",
        group_orders: &[8, 2, 2],
        char2: &[(8, 1), (4, 1), (2, 26)],
        modulus: 8,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[7], degrees: &[(2, 12), (1, 8)] },
            ResidueCase { residues: &[3], degrees: &[(2, 12), (1, 8)] },
            ResidueCase { residues: &[5], degrees: &[(2, 8), (1, 16)] },
        ],
        missing_residues: &[],
    },
    Theorem {
        id: "3.5",
        group_orders: &[4, 4, 2],
        char2: &[(4, 3), (2, 25)],
        modulus: 4,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[3], degrees: &[(2, 12), (1, 8)] },
        ],
        missing_residues: &[],
    },
    Theorem {
        id: "3.6",
        group_orders: &[4, 2, 2, 2],
        char2: &[(4, 1), (2, 29)],
        modulus: 4,
        residue_cases: &[
            ResidueCase { residues: &[1], degrees: &[(1, 32)] },
            ResidueCase { residues: &[3], degrees: &[(2, 8), (1, 16)] },
        ],
        missing_residues: &[],
    },
    Theorem {
        id: "3.7",
        group_orders: &[2, 2, 2, 2, 2],
        char2: &[(2, 31)],
        modulus: 2,
        residue_cases: &[ResidueCase { residues: &[1], degrees: &[(1, 32)] }],
        missing_residues: &[],
    },
];

impl Theorem {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(self.group_orders).expect("theorem group is valid")
    }

    /// Expected U(F G) over GF(2^n): C_{2^s}^{c n} factors times C_{2^n - 1}.
    pub fn char2_expected(&self, n: u32) -> CyclicDecomposition {
        let mut dec = CyclicDecomposition::new().with_q(1 << n);
        for &(order, coef) in self.char2 {
            dec.push(Factor::Concrete(order), coef * n as u64);
        }
        dec.push(Factor::Concrete((1u64 << n) - 1), 1);
        dec
    }
}

impl ResidueCase {
    /// Expected symbolic decomposition: product of C_{q^d-1}^mult.
    pub fn expected(&self) -> CyclicDecomposition {
        let mut dec = CyclicDecomposition::new();
        for &(d, mult) in self.degrees {
            dec.push(Factor::FieldUnitOrder(d), mult);
        }
        dec
    }
}

/// First `count` prime powers q = p^j < 2^16 with p an odd prime coprime to
/// `group_order` and q = r (mod m), ascending.
pub fn witnesses(r: u64, m: u64, group_order: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 3u64;
    while q < (1 << 16) && out.len() < count {
        if q % m == r % m {
            if let Some((p, _)) = crate::arith::prime_power(q) {
                if p != 2 && crate::arith::gcd(p, group_order) == 1 {
                    out.push(q);
                }
            }
        }
        q += 2; // prime powers coprime to 32 are odd
    }
    out
}

/// Outcome of one comparison row of the reproduction tables.
#[derive(Debug, Clone)]
pub struct RowResult {
    pub theorem: &'static str,
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

fn row(theorem: &'static str, label: String, pass: bool, detail: String) -> RowResult {
    RowResult { theorem, label, pass, detail }
}

fn compare_case(
    theorem: &Theorem,
    group: &AbelianGroup,
    r: u64,
    expected: &CyclicDecomposition,
    extra: &str,
) -> Vec<RowResult> {
    let mut rows = Vec::new();
    let m = theorem.modulus;
    let qs = witnesses(r, m, group.order(), 2);
    if qs.is_empty() {
        rows.push(row(
            theorem.id,
            format!("q ≡ {r} (mod {m})"),
            false,
            "no witness prime power below 2^16".into(),
        ));
        return rows;
    }
    // residue-class computation, once per residue
    let by_class = unit_group_semisimple_residue(group, r, m);
    let class_pass = by_class.as_ref().map(|d| d.same_shape(expected)).unwrap_or(false);
    let mut detail = match &by_class {
        Ok(d) => format!("expected {expected}, residue-class run {d}"),
        Err(e) => format!("residue-class run failed: {e}"),
    };
    let mut pass = class_pass;
    // concrete witnesses
    for &q in &qs {
        match unit_group_semisimple(group, q) {
            Ok(d) => {
                if !d.same_shape(expected) {
                    pass = false;
                    detail.push_str(&format!("; q = {q} gave {d}"));
                }
            }
            Err(e) => {
                pass = false;
                detail.push_str(&format!("; q = {q} failed: {e}"));
            }
        }
    }
    let wit = qs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    rows.push(row(
        theorem.id,
        format!("q ≡ {r} (mod {m}){extra}  [q = {wit}]"),
        pass,
        detail,
    ));
    rows
}

/// Runs every row of every theorem: part (1) over GF(2^n) for n = 1, 2, 3,
/// part (2) for every residue with two concrete witnesses and the
/// residue-class path, and the two residues missing from Theorem 3.1.
pub fn check_all_theorems() -> Result<Vec<RowResult>> {
    let mut rows = Vec::new();
    for theorem in THEOREMS {
        let group = theorem.group();
        for n in 1..=3u32 {
            let field = Field::new(2, n as usize)?;
            let expected = theorem.char2_expected(n);
            let label = format!("p = 2, n = {n}");
            match unit_group_modular(&field, &group) {
                Ok(d) => {
                    let pass = d.same_shape(&expected);
                    rows.push(row(
                        theorem.id,
                        label,
                        pass,
                        format!("expected {expected}, computed {d}"),
                    ));
                }
                Err(e) => rows.push(row(theorem.id, label, false, format!("failed: {e}"))),
            }
        }
        for case in theorem.residue_cases {
            let expected = case.expected();
            for &r in case.residues {
                rows.extend(compare_case(theorem, &group, r, &expected, ""));
            }
        }
        for missing in theorem.missing_residues {
            let expected = theorem.residue_cases[missing.matches_case].expected();
            rows.extend(compare_case(
                theorem,
                &group,
                missing.residue,
                &expected,
                " [absent from the published table]",
            ));
        }
    }
    Ok(rows)
}
