//! Unit group of FG for arbitrary finite abelian G over GF(p^n).
//!
//! Dispatch: coprime order -> semisimple engine; p-group -> modular engine;
//! otherwise split G = P x H into the p-primary part and its complement,
//! decompose FH into field components F_{q^{d_i}}, and use
//! FG = ⊕_i F_{q^{d_i}}[P], i.e. one modular computation per component over
//! the extension field of degree d_i.

use crate::arith::gcd;
use crate::decomp::CyclicDecomposition;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::AbelianGroup;
use crate::modular::unit_group_modular;
use crate::semisimple::{unit_group_semisimple, wedderburn_degrees};

/// U(FG) for any finite abelian G and any constructed field.
pub fn unit_group(field: &Field, group: &AbelianGroup) -> Result<CyclicDecomposition> {
    unit_group_pn(field.p(), field.n() as u32, group)
}

/// Same, from (p, n) directly. The field object is only constructed when the
/// modular engine actually needs one (the semisimple branch uses q alone).
pub fn unit_group_pn(p: u64, n: u32, group: &AbelianGroup) -> Result<CyclicDecomposition> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    let q = p
        .checked_pow(n)
        .filter(|&q| q <= crate::field::ARITHMETIC_CAP)
        .ok_or_else(|| Error::Capacity(format!("{p}^{n} exceeds the arithmetic cap")))?;

    if gcd(q, group.order()) == 1 {
        return unit_group_semisimple(group, q);
    }
    if group.is_p_group(p) {
        let field = Field::new(p, n as usize)?;
        return unit_group_modular(&field, group);
    }

    // mixed: FG = ⊕ F_{q^{d_i}}[P] over the components of FH
    let (p_part, complement) = group.primary_split(p);
    let shape = wedderburn_degrees(&complement, q)?;
    let mut out = CyclicDecomposition::new().with_q(q);
    for (d, mult) in shape.degrees() {
        let degree = n as u64 * d;
        let degree = usize::try_from(degree)
            .map_err(|_| Error::Capacity(format!("extension degree {degree} too large")))?;
        let component_field = Field::new(p, degree)?;
        let part = unit_group_modular(&component_field, &p_part)?;
        out.combine(&part.repeated(mult));
    }
    Ok(out)
}
