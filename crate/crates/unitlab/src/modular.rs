//! Modular case: G an abelian p-group over GF(p^n). The normalized units
//! V(FG) = 1 + ω(G) form an abelian p-group whose p^k-torsion is
//! 1 + ker(T^k) for the p-power map T on ω(G), so the kernel filtration of T
//! determines V(FG) completely: the multiplicity of C_{p^s} is the second
//! difference 2a_s - a_{s-1} - a_{s+1} of the kernel dimensions
//! a_k = dim ker(T^k). U(FG) is then V(FG) x C_{q-1}.
//!
//! The closed forms for cyclic and elementary abelian p-groups are kept as
//! independent oracles against the filtration computation.

use crate::algebra::GroupAlgebra;
use crate::decomp::{CyclicDecomposition, Factor};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::AbelianGroup;

/// Kernel dimensions a_k = dim_{GF(p)} ker(T^k) on ω(G), k = 1..e with
/// p^e = exp(G).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSequence {
    p: u64,
    n: usize,
    dims: Vec<usize>,
}

impl KernelSequence {
    /// Directly wraps a dimension sequence, re-validating the filtration
    /// shape (positive, non-decreasing, concave increments).
    pub fn from_dims(p: u64, n: usize, dims: Vec<usize>) -> Result<KernelSequence> {
        if dims.is_empty() || dims[0] == 0 {
            return Err(Error::Inconsistency(
                "kernel sequence must start with a positive dimension".into(),
            ));
        }
        let mut prev_inc = usize::MAX;
        let mut prev = 0usize;
        for &a in &dims {
            let inc = a
                .checked_sub(prev)
                .ok_or_else(|| Error::Inconsistency("kernel sequence must be non-decreasing".into()))?;
            if inc > prev_inc {
                return Err(Error::Inconsistency(
                    "kernel sequence increments must be non-increasing".into(),
                ));
            }
            prev_inc = inc;
            prev = a;
        }
        Ok(KernelSequence { p, n, dims })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// Multiplicities m_s of C_{p^s} in V(FG), s = 1..e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlmInvariants {
    p: u64,
    mult: Vec<u64>, // mult[s-1] = m_s
}

impl UlmInvariants {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// (s, m_s) pairs for s = 1..e.
    pub fn multiplicities(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.mult.iter().enumerate().map(|(i, &m)| (i as u32 + 1, m))
    }

    pub fn multiplicity(&self, s: u32) -> u64 {
        if s == 0 || s as usize > self.mult.len() {
            0
        } else {
            self.mult[s as usize - 1]
        }
    }

    /// p^s of the largest s with m_s > 0, i.e. the exponent of V(FG).
    pub fn exponent(&self) -> u64 {
        let top = self
            .mult
            .iter()
            .rposition(|&m| m > 0)
            .map(|i| i as u32 + 1)
            .unwrap_or(0);
        self.p.pow(top)
    }

    /// Sum of s * m_s, so |V| = p^(this).
    pub fn log_order(&self) -> u64 {
        self.multiplicities().map(|(s, m)| s as u64 * m).sum()
    }
}

/// Builds the Frobenius operator of (F, G) and row-reduces its powers.
pub fn frobenius_kernel_sequence(field: &Field, group: &AbelianGroup) -> Result<KernelSequence> {
    let algebra = GroupAlgebra::new(field.clone(), group.clone())?;
    let op = algebra.frobenius_operator()?;
    let e = op.nilpotency();
    let mut dims = Vec::with_capacity(e as usize);
    let mut power = op.matrix().clone();
    for k in 1..=e {
        if k > 1 {
            power = power.mul(op.matrix());
        }
        dims.push(power.kernel_dim());
    }
    let seq = KernelSequence::from_dims(field.p(), field.n(), dims)?;
    let full = field.n() * (group.order() as usize - 1);
    if *seq.dims().last().unwrap() != full {
        return Err(Error::Inconsistency(format!(
            "T^e is not zero on ω(G): kernel {} of {full}",
            seq.dims().last().unwrap()
        )));
    }
    Ok(seq)
}

/// Inverts the filtration: m_s = 2a_s - a_{s-1} - a_{s+1}, with a_0 = 0 and
/// a_{e+1} = a_e.
pub fn ulm_invariants(seq: &KernelSequence) -> Result<UlmInvariants> {
    let a = seq.dims();
    let e = a.len();
    let get = |k: isize| -> i128 {
        if k <= 0 {
            0
        } else if k as usize > e {
            a[e - 1] as i128
        } else {
            a[k as usize - 1] as i128
        }
    };
    let mut mult = Vec::with_capacity(e);
    for s in 1..=e as isize {
        let m = 2 * get(s) - get(s - 1) - get(s + 1);
        if m < 0 {
            return Err(Error::Inconsistency(format!(
                "negative multiplicity at s = {s}"
            )));
        }
        mult.push(m as u64);
    }
    if *mult.last().unwrap() == 0 {
        return Err(Error::Inconsistency(
            "top Ulm invariant vanishes; sequence length disagrees with exp(G)".into(),
        ));
    }
    Ok(UlmInvariants { p: seq.p(), mult })
}

/// dim over GF(p) of im(T^j) ∩ ker(T) = a_{j+1} - a_j, the rank identity
/// behind the W-set computations.
pub fn w_set_dimension(seq: &KernelSequence, j: usize) -> Result<usize> {
    if j == 0 || j >= seq.len() {
        return Err(Error::InvalidInput(format!(
            "W-set index {j} outside 1..{}",
            seq.len()
        )));
    }
    Ok(seq.dims()[j] - seq.dims()[j - 1])
}

/// U(FG) = V(FG) x C_{q-1} for a p-group G over GF(p^n) with q = p^n.
pub fn unit_group_modular(field: &Field, group: &AbelianGroup) -> Result<CyclicDecomposition> {
    let p = field.p();
    if !group.is_p_group(p) {
        return Err(Error::InvalidInput(format!(
            "{group} is not a {p}-group; use the mixed engine"
        )));
    }
    let mut dec = CyclicDecomposition::new().with_q(field.q());
    if !group.is_trivial() {
        let seq = frobenius_kernel_sequence(field, group)?;
        let ulm = ulm_invariants(&seq)?;
        for (s, m) in ulm.multiplicities() {
            dec.push(Factor::Concrete(p.pow(s)), m);
        }
    }
    dec.push(Factor::Concrete(field.q() - 1), 1);
    Ok(dec)
}

/// U(F C_p^k) = C_p^{n(p^k - 1)} x C_{p^n - 1}.
pub fn closed_form_elementary_abelian(p: u64, n: u32, k: u32) -> Result<CyclicDecomposition> {
    let (q, pk) = closed_form_args(p, n, k)?;
    let mut dec = CyclicDecomposition::new().with_q(q);
    dec.push(Factor::Concrete(p), n as u64 * (pk - 1));
    dec.push(Factor::Concrete(q - 1), 1);
    Ok(dec)
}

/// U(F C_{p^k}): for k = 1 the elementary abelian case; otherwise the
/// product over s = 1..k of C_{p^s}^{h_s} times C_{p^n - 1}, with
/// h_k = n(p - 1) and h_s = n p^{k-s-1} (p-1)^2 for s < k.
pub fn closed_form_cyclic(p: u64, n: u32, k: u32) -> Result<CyclicDecomposition> {
    if k == 1 {
        return closed_form_elementary_abelian(p, n, 1);
    }
    let (q, _) = closed_form_args(p, n, k)?;
    let mut dec = CyclicDecomposition::new().with_q(q);
    dec.push(Factor::Concrete(p.pow(k)), n as u64 * (p - 1));
    for s in 1..k {
        let h = n as u64 * p.pow(k - s - 1) * (p - 1) * (p - 1);
        dec.push(Factor::Concrete(p.pow(s)), h);
    }
    dec.push(Factor::Concrete(q - 1), 1);
    Ok(dec)
}

fn closed_form_args(p: u64, n: u32, k: u32) -> Result<(u64, u64)> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("need n >= 1 and k >= 1".into()));
    }
    let q = p
        .checked_pow(n)
        .ok_or_else(|| Error::Capacity(format!("{p}^{n} exceeds u64")))?;
    let pk = p
        .checked_pow(k)
        .ok_or_else(|| Error::Capacity(format!("{p}^{k} exceeds u64")))?;
    Ok((q, pk))
}
