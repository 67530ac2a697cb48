//! Brute-force ground truth: enumerate every element of a small group
//! algebra, decide invertibility by row-reducing the regular representation,
//! and recover the abelian invariants of the unit group purely by counting
//! solutions of u^(l^k) = 1.
//!
//! Elements are handled as vectors of field-element indices with all field
//! and group arithmetic precomputed into lookup tables, so the q^|G| sweep
//! stays cheap.

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::arith::factor_complete;
use crate::decomp::{CyclicDecomposition, Factor};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::AbelianGroup;

/// Default cap on q^|G|, overridable per call (the CLI exposes UNITLAB_CAP).
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;
/// Cap on q for the lookup tables.
const TABLE_CAP: u64 = 1 << 11;
/// Cap on q^|G| for the quadratic pair-scan cross-check.
pub const PAIR_SCAN_CAP: u128 = 1 << 12;

/// Field and group arithmetic flattened into index tables.
struct Tables {
    q: usize,
    gsize: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>, // inv[0] is a sentinel 0
    gadd: Vec<u32>,
    gsub: Vec<u32>,
}

impl Tables {
    fn build(field: &Field, group: &AbelianGroup) -> Result<Tables> {
        let q = field.q();
        if q > TABLE_CAP {
            return Err(Error::Capacity(format!(
                "oracle tables for q = {q} exceed the cap {TABLE_CAP}"
            )));
        }
        let q = q as usize;
        let gsize = group.order() as usize;
        let els: Vec<_> = (0..q as u64).map(|i| field.element_from_index(i)).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = field.index_of(&field.neg(&els[a])) as u16;
            if a != 0 {
                inv[a] = field.index_of(&field.inv(&els[a]).expect("nonzero")) as u16;
            }
            for b in 0..q {
                add[a * q + b] = field.index_of(&field.add(&els[a], &els[b])) as u16;
                mul[a * q + b] = field.index_of(&field.mul(&els[a], &els[b])) as u16;
            }
        }
        let gels: Vec<_> = (0..gsize as u64).map(|i| group.element_from_index(i)).collect();
        let mut gadd = vec![0u32; gsize * gsize];
        let mut gsub = vec![0u32; gsize * gsize];
        for i in 0..gsize {
            for j in 0..gsize {
                gadd[i * gsize + j] = group.index_of(&group.add(&gels[i], &gels[j])) as u32;
                gsub[i * gsize + j] =
                    group.index_of(&group.add(&gels[i], &group.neg(&gels[j]))) as u32;
            }
        }
        Ok(Tables { q, gsize, add, mul, neg, inv, gadd, gsub })
    }

    #[inline]
    fn fadd(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn fmul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Convolution product of coefficient-index vectors.
    fn conv(&self, a: &[u16], b: &[u16], out: &mut [u16]) {
        out.fill(0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.gadd[i * self.gsize..(i + 1) * self.gsize];
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let k = row[j] as usize;
                out[k] = self.fadd(out[k], self.fmul(ai, bj));
            }
        }
    }

    fn pow(&self, a: &[u16], mut e: u64) -> Vec<u16> {
        let mut acc = vec![0u16; self.gsize];
        acc[0] = 1;
        let mut base = a.to_vec();
        let mut tmp = vec![0u16; self.gsize];
        while e > 0 {
            if e & 1 == 1 {
                self.conv(&acc, &base, &mut tmp);
                std::mem::swap(&mut acc, &mut tmp);
            }
            e >>= 1;
            if e > 0 {
                self.conv(&base, &base, &mut tmp);
                std::mem::swap(&mut base, &mut tmp);
            }
        }
        acc
    }

    fn is_one(&self, a: &[u16]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    /// Fills the regular-representation matrix of the element x.
    fn regular_rep(&self, coeffs: &[u16], m: &mut [u16]) {
        let g = self.gsize;
        for r in 0..g {
            for c in 0..g {
                m[r * g + c] = coeffs[self.gsub[r * g + c] as usize];
            }
        }
    }

    /// Full-rank test by in-place elimination; full rank means the element
    /// is invertible.
    fn is_nonsingular(&self, m: &mut [u16]) -> bool {
        let g = self.gsize;
        let q = self.q;
        for col in 0..g {
            let mut pivot = None;
            for r in col..g {
                if m[r * g + col] != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot else { return false };
            if pr != col {
                for c in col..g {
                    m.swap(pr * g + c, col * g + c);
                }
            }
            let piv_inv = self.inv[m[col * g + col] as usize];
            for r in (col + 1)..g {
                let f = m[r * g + col];
                if f == 0 {
                    continue;
                }
                let s = self.mul[f as usize * q + piv_inv as usize];
                for c in col..g {
                    let sub = self.mul[s as usize * q + m[col * g + c] as usize];
                    m[r * g + c] = self.add[m[r * g + c] as usize * q + self.neg[sub as usize] as usize];
                }
            }
        }
        true
    }
}

/// The units of FG, found extensionally.
pub struct UnitTable {
    algebra: GroupAlgebra,
    tables: Option<Tables>,
    unit_indices: Vec<u64>, // linear indices, ascending
}

fn decode(mut idx: u64, q: u64, gsize: usize) -> Vec<u16> {
    let mut coeffs = vec![0u16; gsize];
    for c in coeffs.iter_mut() {
        *c = (idx % q) as u16;
        idx /= q;
    }
    coeffs
}

impl UnitTable {
    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> u64 {
        self.unit_indices.len() as u64
    }

    pub fn unit_indices(&self) -> &[u64] {
        &self.unit_indices
    }

    pub fn contains_index(&self, idx: u64) -> bool {
        self.unit_indices.binary_search(&idx).is_ok()
    }

    fn coeff_vector(&self, idx: u64) -> Vec<u16> {
        decode(idx, self.algebra.field().q(), self.algebra.dim())
    }

    /// Linear index (base-q digits over the group enumeration) to element.
    pub fn element_from_linear_index(&self, idx: u64) -> AlgebraElement {
        let field = self.algebra.field();
        let coeffs = self
            .coeff_vector(idx)
            .into_iter()
            .map(|c| field.element_from_index(c as u64))
            .collect();
        self.algebra.from_coeffs(coeffs).expect("decoded element is valid")
    }

    pub fn units(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        self.unit_indices.iter().map(|&i| self.element_from_linear_index(i))
    }

    /// Post-construction sanity: 1 is a unit, every unit's u^(|U|-1) is its
    /// inverse inside the table (which also checks Lagrange), and products
    /// of a deterministic sample of pairs stay inside the table.
    fn verify(&self) -> Result<()> {
        if !self.contains_index(1) {
            return Err(Error::Inconsistency("unit table does not contain 1".into()));
        }
        let m = self.order();
        match &self.tables {
            Some(t) => {
                let mut prod = vec![0u16; t.gsize];
                for &ui in &self.unit_indices {
                    let u = decode(ui, t.q as u64, t.gsize);
                    let v = t.pow(&u, m - 1);
                    let vi = encode(&v, t.q as u64);
                    if !self.contains_index(vi) {
                        return Err(Error::Inconsistency(format!(
                            "inverse of unit {ui} escapes the table"
                        )));
                    }
                    t.conv(&u, &v, &mut prod);
                    if !t.is_one(&prod) {
                        return Err(Error::Inconsistency(format!(
                            "u * u^(|U|-1) is not 1 for unit {ui}"
                        )));
                    }
                }
                // multiplication closure on a deterministic pair sample
                let mut state = 0x243f6a8885a308d3u64;
                let samples = if m <= 64 { m * m } else { 4096 };
                for _ in 0..samples {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    let a = self.unit_indices[(state >> 33) as usize % m as usize];
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    let b = self.unit_indices[(state >> 33) as usize % m as usize];
                    let av = decode(a, t.q as u64, t.gsize);
                    let bv = decode(b, t.q as u64, t.gsize);
                    t.conv(&av, &bv, &mut prod);
                    if !self.contains_index(encode(&prod, t.q as u64)) {
                        return Err(Error::Inconsistency(format!(
                            "product of units {a} and {b} escapes the table"
                        )));
                    }
                }
            }
            None => {
                // trivial group: units are exactly the nonzero field elements
                let field = self.algebra.field();
                let expected: Vec<u64> = (1..field.q()).collect();
                if self.unit_indices != expected {
                    return Err(Error::Inconsistency(
                        "unit table of a field is not F*".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Abelian invariants by solution counting: for each prime l dividing
    /// |U| the counts N_k = #{u : u^(l^k) = 1} grow to the full l-part of
    /// |U|, and the multiplicity of C_{l^s} is the second difference
    /// 2 log N_s - log N_{s-1} - log N_{s+1}.
    pub fn abelian_invariants(&self) -> Result<CyclicDecomposition> {
        let m = self.order();
        let primes = factor_complete(m).ok_or_else(|| {
            Error::Capacity(format!("cannot factor the unit count {m}"))
        })?;
        let mut dec = CyclicDecomposition::new().with_q(self.algebra.field().q());
        for (l, nu) in primes {
            let logs = self.torsion_log_counts(l, nu)?;
            for (s, ms) in second_differences(&logs)? {
                dec.push(Factor::Concrete(l.pow(s)), ms);
            }
        }
        let dec = dec.normalize();
        debug_assert!(dec.is_normalized());
        Ok(dec)
    }

    /// r_k = log_l N_{l,k} for k = 1.. until the full l-part l^nu is reached.
    fn torsion_log_counts(&self, l: u64, nu: u32) -> Result<Vec<u32>> {
        let target = l.pow(nu);
        let mut logs = Vec::new();
        match &self.tables {
            Some(t) => {
                let mut cur: Vec<Vec<u16>> =
                    self.unit_indices.iter().map(|&i| decode(i, t.q as u64, t.gsize)).collect();
                for _k in 1..=64 {
                    for v in cur.iter_mut() {
                        if !t.is_one(v) {
                            *v = t.pow(v, l);
                        }
                    }
                    let count = cur.iter().filter(|v| t.is_one(v)).count() as u64;
                    logs.push(exact_log(count, l)?);
                    if count == target {
                        return Ok(logs);
                    }
                    if count > target {
                        break;
                    }
                }
            }
            None => {
                let field = self.algebra.field();
                let mut cur: Vec<_> = (1..field.q()).map(|i| field.element_from_index(i)).collect();
                let one = field.one();
                for _k in 1..=64 {
                    for v in cur.iter_mut() {
                        if *v != one {
                            *v = field.pow(v, l as u128);
                        }
                    }
                    let count = cur.iter().filter(|v| **v == one).count() as u64;
                    logs.push(exact_log(count, l)?);
                    if count == target {
                        return Ok(logs);
                    }
                    if count > target {
                        break;
                    }
                }
            }
        }
        Err(Error::Inconsistency(format!(
            "{l}-torsion counts never reach the {l}-part of |U|"
        )))
    }
}

fn encode(coeffs: &[u16], q: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
}

fn exact_log(count: u64, l: u64) -> Result<u32> {
    if count == 0 {
        return Err(Error::Inconsistency("empty torsion layer".into()));
    }
    let r = count.ilog(l);
    if l.pow(r) != count {
        return Err(Error::Inconsistency(format!(
            "torsion count {count} is not a power of {l}"
        )));
    }
    Ok(r)
}

/// Multiplicities from the log-count sequence, with r_0 = 0 and the sequence
/// frozen at its last value; rejects non-concave sequences.
fn second_differences(logs: &[u32]) -> Result<Vec<(u32, u64)>> {
    let get = |k: isize| -> i64 {
        if k <= 0 {
            0
        } else if k as usize > logs.len() {
            logs[logs.len() - 1] as i64
        } else {
            logs[k as usize - 1] as i64
        }
    };
    let mut out = Vec::new();
    for s in 1..=logs.len() as isize {
        let m = 2 * get(s) - get(s - 1) - get(s + 1);
        if m < 0 {
            return Err(Error::Inconsistency(
                "torsion log-counts are not concave".into(),
            ));
        }
        if m > 0 {
            out.push((s as u32, m as u64));
        }
    }
    Ok(out)
}

fn check_cap(field: &Field, group: &AbelianGroup, cap: u128) -> Result<u64> {
    let total = crate::arith::checked_pow_u128(field.q() as u128, group.order() as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "q^|G| = {}^{} exceeds the enumeration cap {cap}",
                field.q(),
                group.order()
            ))
        })?;
    Ok(total as u64)
}

/// Enumerates the units of FG by the regular-representation test.
pub fn enumerate_units(field: &Field, group: &AbelianGroup, cap: u128) -> Result<UnitTable> {
    let total = check_cap(field, group, cap)?;
    let algebra = GroupAlgebra::new(field.clone(), group.clone())?;
    let unit_indices: Vec<u64>;
    let tables;
    if group.is_trivial() {
        unit_indices = (1..field.q()).collect();
        tables = None;
    } else {
        let t = Tables::build(field, group)?;
        let g = t.gsize;
        let q = t.q as u16;
        let mut coeffs = vec![0u16; g];
        let mut matrix = vec![0u16; g * g];
        let mut units = Vec::new();
        for idx in 0..total {
            if idx > 0 {
                // odometer increment of the base-q digit vector
                for d in coeffs.iter_mut() {
                    *d += 1;
                    if *d == q {
                        *d = 0;
                    } else {
                        break;
                    }
                }
            }
            t.regular_rep(&coeffs, &mut matrix);
            if t.is_nonsingular(&mut matrix) {
                units.push(idx);
            }
        }
        unit_indices = units;
        tables = Some(t);
    }
    let table = UnitTable { algebra, tables, unit_indices };
    table.verify()?;
    Ok(table)
}

/// Cross-check mode: a unit is anything with a two-sided partner xy = 1,
/// found by scanning all candidates. Quadratic, so capped much lower.
pub fn enumerate_units_scan(field: &Field, group: &AbelianGroup, cap: u128) -> Result<Vec<u64>> {
    let total = check_cap(field, group, cap.min(PAIR_SCAN_CAP))?;
    if group.is_trivial() {
        return Ok((1..field.q()).collect());
    }
    let t = Tables::build(field, group)?;
    let g = t.gsize;
    let q = field.q();
    let all: Vec<Vec<u16>> = (0..total).map(|i| decode(i, q, g)).collect();
    let mut out = Vec::new();
    let mut prod = vec![0u16; g];
    for (i, x) in all.iter().enumerate() {
        for y in &all {
            t.conv(x, y, &mut prod);
            if t.is_one(&prod) {
                out.push(i as u64);
                break;
            }
        }
    }
    Ok(out)
}

/// Free-function form of [`UnitTable::abelian_invariants`].
pub fn abelian_invariants_from_units(table: &UnitTable) -> Result<CyclicDecomposition> {
    table.abelian_invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units_of(p: u64, n: usize, orders: &[u64]) -> UnitTable {
        let field = Field::new(p, n).unwrap();
        let group = if orders.is_empty() {
            AbelianGroup::trivial()
        } else {
            AbelianGroup::new(orders).unwrap()
        };
        enumerate_units(&field, &group, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    #[test]
    fn gf2_c2_units() {
        let t = units_of(2, 1, &[2]);
        assert_eq!(t.order(), 2);
        // 1 and a
        assert_eq!(t.unit_indices(), &[1, 2]);
    }

    #[test]
    fn gf3_c4_units() {
        let t = units_of(3, 1, &[4]);
        assert_eq!(t.order(), 32);
        let inv = t.abelian_invariants().unwrap();
        assert_eq!(inv.multiplicity(Factor::Concrete(8)), 1);
        assert_eq!(inv.multiplicity(Factor::Concrete(2)), 2);
    }

    #[test]
    fn gf4_c2_units() {
        let t = units_of(2, 2, &[2]);
        assert_eq!(t.order(), 12);
    }

    #[test]
    fn field_units_are_cyclic() {
        let t = units_of(5, 1, &[]);
        assert_eq!(t.order(), 4);
        let inv = t.abelian_invariants().unwrap();
        assert_eq!(inv.multiplicity(Factor::Concrete(4)), 1);
    }

    #[test]
    fn gf2_c3_units() {
        let t = units_of(2, 1, &[3]);
        assert_eq!(t.order(), 3);
        let inv = t.abelian_invariants().unwrap();
        assert_eq!(inv.multiplicity(Factor::Concrete(3)), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let field = Field::new(2, 1).unwrap();
        let group = AbelianGroup::new(&[32]).unwrap();
        assert!(matches!(
            enumerate_units(&field, &group, DEFAULT_ENUMERATION_CAP),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn scan_agrees_with_determinant() {
        for (p, n, orders) in
            [(2u64, 1usize, vec![6]), (3, 1, vec![4]), (2, 2, vec![2, 2]), (5, 1, vec![3])]
        {
            let field = Field::new(p, n).unwrap();
            let group = AbelianGroup::new(&orders).unwrap();
            let det = enumerate_units(&field, &group, DEFAULT_ENUMERATION_CAP).unwrap();
            let scan = enumerate_units_scan(&field, &group, PAIR_SCAN_CAP).unwrap();
            assert_eq!(det.unit_indices(), scan.as_slice());
        }
    }

    #[test]
    fn lagrange_on_samples() {
        let t = units_of(3, 1, &[3]);
        let alg = t.algebra();
        for u in t.units() {
            assert_eq!(alg.element_power(&u, t.order() as u128), alg.one());
        }
    }

    #[test]
    fn unit_count_matches_engine() {
        let t = units_of(2, 1, &[6]);
        let dec = crate::mixed::unit_group_pn(2, 1, &t.algebra().group().clone()).unwrap();
        assert_eq!(dec.total_order().unwrap(), t.order() as u128);
        assert!(dec.is_isomorphic(&t.abelian_invariants().unwrap()));
    }
}
