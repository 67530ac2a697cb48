//! Products of cyclic groups: the answer type of every engine. Factors are
//! either concrete orders C_m or the symbolic C_{q^d - 1}; CRT normalization
//! rewrites every concrete order as a product of prime powers, which is the
//! canonical form used for isomorphism comparison.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// One kind of cyclic factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// C_{q^d - 1} for the decomposition's field size q.
    FieldUnitOrder(u32),
    /// C_m for a concrete order m >= 1.
    Concrete(u64),
}

// Canonical ordering: symbolic factors by d descending, then concrete
// factors by m descending.
impl Ord for Factor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Factor::*;
        match (self, other) {
            (FieldUnitOrder(a), FieldUnitOrder(b)) => b.cmp(a),
            (FieldUnitOrder(_), Concrete(_)) => std::cmp::Ordering::Less,
            (Concrete(_), FieldUnitOrder(_)) => std::cmp::Ordering::Greater,
            (Concrete(a), Concrete(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Serde form of one factor, matching the CLI JSON schema:
/// kind "q_pow" carries the degree d, kind "cyclic" the concrete order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub kind: String,
    pub param: u64,
    pub mult: u64,
}

/// A finite abelian group presented as a multiset of cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    factors: BTreeMap<Factor, u64>,
    q: Option<u64>,
    normalized: bool,
}

impl Default for CyclicDecomposition {
    fn default() -> Self {
        Self::new()
    }
}

impl CyclicDecomposition {
    /// The empty product (trivial group).
    pub fn new() -> CyclicDecomposition {
        CyclicDecomposition { factors: BTreeMap::new(), q: None, normalized: false }
    }

    pub fn with_q(mut self, q: u64) -> CyclicDecomposition {
        self.q = Some(q);
        self
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn factors(&self) -> impl Iterator<Item = (Factor, u64)> + '_ {
        self.factors.iter().map(|(&f, &m)| (f, m))
    }

    pub fn multiplicity(&self, f: Factor) -> u64 {
        self.factors.get(&f).copied().unwrap_or(0)
    }

    /// Multiplies a factor in; C_1 factors are kept (they only disappear
    /// under CRT normalization).
    pub fn push(&mut self, factor: Factor, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.factors.entry(factor).or_insert(0) += mult;
        self.normalized = false;
    }

    /// Direct product with another decomposition.
    pub fn combine(&mut self, other: &CyclicDecomposition) {
        for (f, m) in other.factors() {
            self.push(f, m);
        }
        if self.q.is_none() {
            self.q = other.q;
        }
    }

    /// Raises the whole decomposition to a power (multiplies every
    /// multiplicity by k).
    pub fn repeated(&self, k: u64) -> CyclicDecomposition {
        let mut out = self.clone();
        if k == 0 {
            out.factors.clear();
            return out;
        }
        for m in out.factors.values_mut() {
            *m *= k;
        }
        out
    }

    /// True when the two decompositions have identical factor multisets
    /// (ignoring any attached q). Symbolic shapes compare with this.
    pub fn same_shape(&self, other: &CyclicDecomposition) -> bool {
        self.factors == other.factors
    }

    fn resolve_q(&self, q: Option<u64>) -> Result<Option<u64>> {
        match (self.q, q) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidInput(format!(
                "decomposition is attached to q = {a}, cannot evaluate at q = {b}"
            ))),
            (a, b) => Ok(a.or(b)),
        }
    }

    /// Replaces every C_{q^d - 1} by the concrete C_{q^d - 1} value, without
    /// normalizing. Errors when a symbolic factor has no q to evaluate at.
    pub fn concretize(&self, q: Option<u64>) -> Result<CyclicDecomposition> {
        let q = self.resolve_q(q)?;
        let mut out = CyclicDecomposition::new();
        out.q = q;
        for (f, m) in self.factors() {
            match f {
                Factor::Concrete(v) => out.push(Factor::Concrete(v), m),
                Factor::FieldUnitOrder(d) => {
                    let q = q.ok_or_else(|| {
                        Error::InvalidInput("symbolic decomposition with no q attached".into())
                    })?;
                    let v = arith::checked_pow_u128(q as u128, d)
                        .filter(|&v| v - 1 <= u64::MAX as u128)
                        .ok_or_else(|| {
                            Error::Capacity(format!("{q}^{d} - 1 exceeds u64"))
                        })?;
                    out.push(Factor::Concrete((v - 1) as u64), m);
                }
            }
        }
        Ok(out)
    }

    /// CRT normal form: every concrete order is split into its prime-power
    /// parts and C_1 factors vanish. Idempotent. Orders whose factorization
    /// defeats the 64-bit trial-division budget are kept whole and leave the
    /// result flagged as not normalized.
    pub fn normalize(&self) -> CyclicDecomposition {
        let mut out = CyclicDecomposition::new();
        out.q = self.q;
        let mut complete = true;
        for (f, m) in self.factors() {
            match f {
                Factor::FieldUnitOrder(_) => {
                    out.push(f, m);
                    complete = false;
                }
                Factor::Concrete(1) => {}
                Factor::Concrete(v) => {
                    let fact = arith::factor(v);
                    for &(p, e) in &fact.factors {
                        out.push(Factor::Concrete(p.pow(e)), m);
                    }
                    if let Some(c) = fact.cofactor {
                        out.push(Factor::Concrete(c), m);
                        complete = false;
                    }
                }
            }
        }
        out.normalized = complete;
        out
    }

    /// Evaluation: all-concrete and CRT-normalized.
    pub fn evaluate(&self, q: Option<u64>) -> Result<CyclicDecomposition> {
        Ok(self.concretize(q)?.normalize())
    }

    /// Isomorphism comparison through CRT normal forms. Symbolic factors are
    /// evaluated first when a q is attached; two decompositions that stay
    /// symbolic compare by shape.
    pub fn is_isomorphic(&self, other: &CyclicDecomposition) -> bool {
        let concrete = |d: &CyclicDecomposition| {
            d.concretize(None).unwrap_or_else(|_| d.clone()).normalize()
        };
        concrete(self).factors == concrete(other).factors
    }

    /// Product of the factor orders.
    pub fn total_order(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for (f, m) in self.factors() {
            let base: u128 = match f {
                Factor::Concrete(v) => v as u128,
                Factor::FieldUnitOrder(d) => {
                    let q = self.q.ok_or_else(|| {
                        Error::InvalidInput("symbolic decomposition with no q attached".into())
                    })?;
                    arith::checked_pow_u128(q as u128, d)
                        .ok_or_else(|| Error::Capacity(format!("{q}^{d} exceeds u128")))?
                        - 1
                }
            };
            for _ in 0..m {
                acc = acc
                    .checked_mul(base)
                    .ok_or_else(|| Error::Capacity("total order exceeds u128".into()))?;
            }
        }
        Ok(acc)
    }

    /// Canonically ordered serde entries (see [`FactorEntry`]).
    pub fn factor_entries(&self) -> Vec<FactorEntry> {
        self.factors()
            .map(|(f, m)| match f {
                Factor::FieldUnitOrder(d) => FactorEntry {
                    kind: "q_pow".into(),
                    param: d as u64,
                    mult: m,
                },
                Factor::Concrete(v) => FactorEntry { kind: "cyclic".into(), param: v, mult: m },
            })
            .collect()
    }

    pub fn from_factor_entries(
        entries: &[FactorEntry],
        q: Option<u64>,
        normalized: bool,
    ) -> Result<CyclicDecomposition> {
        let mut out = CyclicDecomposition::new();
        out.q = q;
        for e in entries {
            let factor = match e.kind.as_str() {
                "q_pow" => Factor::FieldUnitOrder(e.param.try_into().map_err(|_| {
                    Error::InvalidInput(format!("q_pow degree {} too large", e.param))
                })?),
                "cyclic" => Factor::Concrete(e.param),
                other => {
                    return Err(Error::InvalidInput(format!("unknown factor kind '{other}'")))
                }
            };
            out.push(factor, e.mult);
        }
        out.normalized = normalized;
        Ok(out)
    }
}

impl std::fmt::Display for CyclicDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C_1");
        }
        let mut first = true;
        for (factor, mult) in self.factors() {
            if !first {
                write!(f, " × ")?;
            }
            first = false;
            match factor {
                Factor::FieldUnitOrder(1) => write!(f, "C_{{q-1}}")?,
                Factor::FieldUnitOrder(d) => write!(f, "C_{{q^{d}-1}}")?,
                Factor::Concrete(m) => write!(f, "C_{m}")?,
            }
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(parts: &[(Factor, u64)]) -> CyclicDecomposition {
        let mut d = CyclicDecomposition::new();
        for &(f, m) in parts {
            d.push(f, m);
        }
        d
    }

    #[test]
    fn evaluate_symbolic_at_small_q() {
        let d = dec(&[(Factor::FieldUnitOrder(1), 1)]);
        let e = d.evaluate(Some(3)).unwrap();
        assert_eq!(e.multiplicity(Factor::Concrete(2)), 1);
        assert!(e.is_normalized());
    }

    #[test]
    fn evaluate_the_q31_case() {
        // C_{q^2-1}^15 x C_{q-1}^2 at q = 31
        let d = dec(&[(Factor::FieldUnitOrder(2), 15), (Factor::FieldUnitOrder(1), 2)]);
        let raw = d.concretize(Some(31)).unwrap();
        assert_eq!(raw.multiplicity(Factor::Concrete(960)), 15);
        assert_eq!(raw.multiplicity(Factor::Concrete(30)), 2);
        let e = raw.normalize();
        assert_eq!(e.multiplicity(Factor::Concrete(64)), 15);
        assert_eq!(e.multiplicity(Factor::Concrete(3)), 17);
        assert_eq!(e.multiplicity(Factor::Concrete(5)), 17);
        assert_eq!(e.multiplicity(Factor::Concrete(2)), 2);
        // idempotence
        assert_eq!(e.evaluate(Some(31)).unwrap(), e);
    }

    #[test]
    fn evaluate_requires_q() {
        let d = dec(&[(Factor::FieldUnitOrder(2), 1)]);
        assert!(matches!(d.evaluate(None), Err(Error::InvalidInput(_))));
        assert!(matches!(
            d.clone().with_q(5).evaluate(Some(7)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn total_orders() {
        let d = dec(&[(Factor::FieldUnitOrder(1), 1)]).with_q(2);
        assert_eq!(d.total_order().unwrap(), 1);
        let v = dec(&[
            (Factor::Concrete(32), 1),
            (Factor::Concrete(16), 1),
            (Factor::Concrete(8), 2),
            (Factor::Concrete(4), 4),
            (Factor::Concrete(2), 8),
            (Factor::Concrete(1), 1),
        ]);
        assert_eq!(v.total_order().unwrap(), 1u128 << 31);
        let sym = dec(&[(Factor::FieldUnitOrder(2), 1)]);
        assert!(sym.total_order().is_err());
    }

    #[test]
    fn isomorphism_ignores_presentation() {
        let a = dec(&[(Factor::Concrete(6), 1)]);
        let b = dec(&[(Factor::Concrete(2), 1), (Factor::Concrete(3), 1)]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.same_shape(&b));
        let c = dec(&[(Factor::Concrete(4), 1)]);
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn canonical_display_order() {
        let d = dec(&[
            (Factor::FieldUnitOrder(1), 2),
            (Factor::FieldUnitOrder(2), 15),
        ]);
        assert_eq!(d.to_string(), "C_{q^2-1}^15 × C_{q-1}^2");
        let m = dec(&[
            (Factor::Concrete(2), 8),
            (Factor::Concrete(32), 1),
            (Factor::Concrete(1), 1),
            (Factor::Concrete(16), 1),
            (Factor::Concrete(8), 2),
            (Factor::Concrete(4), 4),
        ]);
        assert_eq!(m.to_string(), "C_32 × C_16 × C_8^2 × C_4^4 × C_2^8 × C_1");
        assert_eq!(CyclicDecomposition::new().to_string(), "C_1");
    }

    #[test]
    fn factor_entry_round_trip() {
        let d = dec(&[
            (Factor::FieldUnitOrder(4), 4),
            (Factor::FieldUnitOrder(1), 8),
            (Factor::Concrete(9), 2),
        ])
        .with_q(5);
        let entries = d.factor_entries();
        let back =
            CyclicDecomposition::from_factor_entries(&entries, d.q(), d.is_normalized()).unwrap();
        assert_eq!(back, d);
    }
}
