//! Semisimple case gcd(q, |G|) = 1: F-conjugacy classes of G are the orbits
//! of g -> g^q, each orbit of size d contributes one field component F_{q^d},
//! and the unit group is the product of the component unit groups C_{q^d - 1}.
//!
//! Only the residue of q mod exp(G) matters, so the engine accepts either a
//! concrete q or a residue class r (mod m); no field object is needed.

use std::collections::BTreeMap;

use crate::arith::{gcd, lcm};
use crate::decomp::{CyclicDecomposition, Factor};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

/// The class-defining data: the modulus m = exp(G), the residue of q, and
/// the subgroup of units mod m it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FConjugacyContext {
    pub m: u64,
    pub residue: u64,
    pub t_set: Vec<u64>,
}

/// The context together with the orbit partition of G.
#[derive(Debug, Clone)]
pub struct FConjugacyClasses {
    pub context: FConjugacyContext,
    pub orbits: Vec<Vec<GroupElement>>,
}

impl FConjugacyClasses {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Component degrees of the Wedderburn decomposition: degree d with
/// multiplicity k means k summands isomorphic to F_{q^d}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnShape {
    degrees: BTreeMap<u64, u64>,
}

impl WedderburnShape {
    pub fn degrees(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.degrees.iter().map(|(&d, &m)| (d, m))
    }

    pub fn multiplicity(&self, d: u64) -> u64 {
        self.degrees.get(&d).copied().unwrap_or(0)
    }

    pub fn component_count(&self) -> u64 {
        self.degrees.values().sum()
    }

    /// Sum of component degrees = dim of the algebra = |G|.
    pub fn dimension(&self) -> u64 {
        self.degrees.iter().map(|(&d, &m)| d * m).sum()
    }

    /// lcm of the degrees present: the degree of a common splitting field.
    pub fn splitting_lcm(&self) -> u64 {
        self.degrees.keys().fold(1, |acc, &d| lcm(acc, d))
    }
}

fn residue_for(group: &AbelianGroup, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("field size q = {q} is < 2")));
    }
    if gcd(q, group.order()) != 1 {
        return Err(Error::InvalidInput(format!(
            "q = {q} shares a factor with |G| = {}; the semisimple engine needs gcd(q, |G|) = 1",
            group.order()
        )));
    }
    Ok(q % group.exponent())
}

/// Validates a residue-class input r (mod m): the class must determine the
/// orbit structure, which requires exp(G) | m and gcd(r, m) = 1.
fn residue_for_class(group: &AbelianGroup, r: u64, m: u64) -> Result<u64> {
    if m == 0 || gcd(r % m.max(1), m) != 1 {
        return Err(Error::InvalidInput(format!(
            "residue class {r} mod {m} is not a unit class"
        )));
    }
    if !m.is_multiple_of(group.exponent()) {
        return Err(Error::InvalidInput(format!(
            "residue modulus {m} does not determine q mod exp(G) = {}",
            group.exponent()
        )));
    }
    Ok(r % m)
}

fn classes_from_residue(group: &AbelianGroup, m: u64, residue: u64) -> Result<FConjugacyClasses> {
    let orbits = group.power_map_orbits(residue % group.exponent())?;
    let mut t_set = vec![1u64];
    if m > 1 {
        let mut t = residue % m;
        while t != 1 {
            t_set.push(t);
            t = ((t as u128 * (residue % m) as u128) % m as u128) as u64;
        }
        t_set.sort_unstable();
    }
    Ok(FConjugacyClasses {
        context: FConjugacyContext { m, residue: residue % m.max(1), t_set },
        orbits,
    })
}

/// F-conjugacy classes of G for a field of size q coprime to |G|.
pub fn f_conjugacy_classes(group: &AbelianGroup, q: u64) -> Result<FConjugacyClasses> {
    let residue = residue_for(group, q)?;
    classes_from_residue(group, group.exponent(), residue)
}

/// Same, from a residue class r (mod m) instead of a concrete q.
pub fn f_conjugacy_classes_residue(
    group: &AbelianGroup,
    r: u64,
    m: u64,
) -> Result<FConjugacyClasses> {
    let residue = residue_for_class(group, r, m)?;
    classes_from_residue(group, m, residue)
}

fn shape_from(classes: &FConjugacyClasses) -> WedderburnShape {
    let mut degrees = BTreeMap::new();
    for orbit in &classes.orbits {
        *degrees.entry(orbit.len() as u64).or_insert(0u64) += 1;
    }
    WedderburnShape { degrees }
}

/// FG = direct sum of F_{q^d}, one component of degree d per orbit of size d.
pub fn wedderburn_degrees(group: &AbelianGroup, q: u64) -> Result<WedderburnShape> {
    Ok(shape_from(&f_conjugacy_classes(group, q)?))
}

pub fn wedderburn_degrees_residue(
    group: &AbelianGroup,
    r: u64,
    m: u64,
) -> Result<WedderburnShape> {
    Ok(shape_from(&f_conjugacy_classes_residue(group, r, m)?))
}

fn units_from_shape(shape: &WedderburnShape) -> CyclicDecomposition {
    let mut dec = CyclicDecomposition::new();
    for (d, mult) in shape.degrees() {
        dec.push(Factor::FieldUnitOrder(d as u32), mult);
    }
    dec
}

/// U(FG) as a symbolic product of C_{q^d - 1}, with q attached.
pub fn unit_group_semisimple(group: &AbelianGroup, q: u64) -> Result<CyclicDecomposition> {
    Ok(units_from_shape(&wedderburn_degrees(group, q)?).with_q(q))
}

/// Residue-class form; the result stays fully symbolic.
pub fn unit_group_semisimple_residue(
    group: &AbelianGroup,
    r: u64,
    m: u64,
) -> Result<CyclicDecomposition> {
    Ok(units_from_shape(&wedderburn_degrees_residue(group, r, m)?))
}
