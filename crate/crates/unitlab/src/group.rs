//! Finite abelian groups in elementary-divisor form: element arithmetic,
//! orders, power-map orbit partitions, and p-primary splitting.
//!
//! Elements are exponent tuples, written additively; the enumeration order is
//! lexicographic on the tuple, so element index 0 is the identity and orbit
//! representatives chosen by first appearance are automatically the
//! lexicographically smallest members.

use crate::arith::{factor_complete, gcd, lcm};
use crate::error::{Error, Result};

/// Cap on |G| for whole-group enumeration (orbit computation).
pub const ORBIT_CAP: u64 = 1 << 16;

/// A finite abelian group as a canonically sorted list of prime-power
/// divisors. Two groups are isomorphic iff their divisor lists are equal.
/// The trivial group is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    divisors: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// One residue per divisor; componentwise addition mod the divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

impl AbelianGroup {
    /// Canonicalizes a direct-product presentation: every order is split into
    /// prime-power factors and the factors are sorted ascending, so [12] and
    /// [4, 3] yield the same group.
    pub fn new(orders: &[u64]) -> Result<AbelianGroup> {
        let mut divisors = Vec::new();
        for &m in orders {
            if m < 2 {
                return Err(Error::InvalidInput(format!(
                    "cyclic factor order {m} is < 2"
                )));
            }
            let factors = factor_complete(m).ok_or_else(|| {
                Error::Capacity(format!("cannot factor cyclic order {m}"))
            })?;
            for (p, e) in factors {
                divisors.push(p.pow(e));
            }
        }
        divisors.sort_unstable();
        Self::from_canonical(divisors)
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { divisors: Vec::new(), order: 1, exponent: 1 }
    }

    fn from_canonical(divisors: Vec<u64>) -> Result<AbelianGroup> {
        let mut order = 1u64;
        let mut exponent = 1u64;
        for &d in &divisors {
            order = order
                .checked_mul(d)
                .ok_or_else(|| Error::Capacity("group order exceeds u64".into()))?;
            exponent = lcm(exponent, d);
        }
        Ok(AbelianGroup { divisors, order, exponent })
    }

    /// All abelian groups of order n, one per isomorphism class
    /// (partitions of each prime exponent), deterministically ordered.
    pub fn all_of_order(n: u64) -> Result<Vec<AbelianGroup>> {
        if n == 0 {
            return Err(Error::InvalidInput("group order 0".into()));
        }
        if n == 1 {
            return Ok(vec![AbelianGroup::trivial()]);
        }
        let factors = factor_complete(n)
            .ok_or_else(|| Error::Capacity(format!("cannot factor order {n}")))?;
        let mut groups: Vec<Vec<u64>> = vec![Vec::new()];
        for (p, e) in factors {
            let mut next = Vec::new();
            for part in partitions(e) {
                for g in &groups {
                    let mut divisors = g.clone();
                    divisors.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(divisors);
                }
            }
            groups = next;
        }
        groups
            .into_iter()
            .map(|mut d| {
                d.sort_unstable();
                Self::from_canonical(d)
            })
            .collect()
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// True when every divisor is a power of p (vacuously true for the
    /// trivial group).
    pub fn is_p_group(&self, p: u64) -> bool {
        self.divisors.iter().all(|&d| d % p == 0)
    }

    /// Invariant-factor form d_1 | d_2 | ... | d_k (display only).
    pub fn invariant_factors(&self) -> Vec<u64> {
        use std::collections::BTreeMap;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in &self.divisors {
            let p = smallest_prime_factor(d);
            by_prime.entry(p).or_default().push(d);
        }
        let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; depth];
        for powers in by_prime.values() {
            // powers are ascending; align them at the top
            for (i, &pw) in powers.iter().rev().enumerate() {
                out[depth - 1 - i] *= pw;
            }
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exponents: vec![0; self.divisors.len()] }
    }

    pub fn element(&self, exponents: &[u64]) -> Result<GroupElement> {
        if exponents.len() != self.divisors.len() {
            return Err(Error::InvalidInput(format!(
                "{} exponents for {} divisors",
                exponents.len(),
                self.divisors.len()
            )));
        }
        let exps = exponents
            .iter()
            .zip(&self.divisors)
            .map(|(&e, &d)| e % d)
            .collect();
        Ok(GroupElement { exponents: exps })
    }

    pub fn is_member(&self, g: &GroupElement) -> bool {
        g.exponents.len() == self.divisors.len()
            && g.exponents.iter().zip(&self.divisors).all(|(&e, &d)| e < d)
    }

    fn check(&self, g: &GroupElement) {
        assert!(self.is_member(g), "element does not belong to this group");
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check(a);
        self.check(b);
        let exponents = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .zip(&self.divisors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        GroupElement { exponents }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.check(a);
        let exponents = a
            .exponents
            .iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        GroupElement { exponents }
    }

    /// g^t in multiplicative notation: t-fold sum of the exponent tuple.
    pub fn scale(&self, g: &GroupElement, t: u64) -> GroupElement {
        self.check(g);
        let exponents = g
            .exponents
            .iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| ((x as u128 * t as u128) % d as u128) as u64)
            .collect();
        GroupElement { exponents }
    }

    /// o(g) = lcm over coordinates of d_i / gcd(d_i, g_i).
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        self.check(g);
        g.exponents
            .iter()
            .zip(&self.divisors)
            .fold(1, |acc, (&e, &d)| lcm(acc, d / gcd(d, e)))
    }

    /// Index <-> element bijection in lexicographic order: the first
    /// coordinate is the most significant mixed-radix digit.
    pub fn element_from_index(&self, mut idx: u64) -> GroupElement {
        debug_assert!(idx < self.order);
        let k = self.divisors.len();
        let mut exponents = vec![0; k];
        for i in (0..k).rev() {
            exponents[i] = idx % self.divisors[i];
            idx /= self.divisors[i];
        }
        GroupElement { exponents }
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        self.check(g);
        g.exponents
            .iter()
            .zip(&self.divisors)
            .fold(0, |acc, (&e, &d)| acc * d + e)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_from_index(i))
    }

    /// Partition of G into orbits of g -> g^t, for t invertible mod exp(G).
    /// Orbits are sorted by their lexicographically smallest member, and each
    /// orbit lists its members in iteration order from that member.
    pub fn power_map_orbits(&self, t: u64) -> Result<Vec<Vec<GroupElement>>> {
        let t = t % self.exponent;
        if gcd(t, self.exponent) != 1 {
            return Err(Error::InvalidInput(format!(
                "power map exponent {t} is not invertible mod exp(G) = {}",
                self.exponent
            )));
        }
        if self.order > ORBIT_CAP {
            return Err(Error::Capacity(format!(
                "orbit enumeration over {} elements exceeds the cap 2^16",
                self.order
            )));
        }
        let mut seen = vec![false; self.order as usize];
        let mut orbits = Vec::new();
        for idx in 0..self.order {
            if seen[idx as usize] {
                continue;
            }
            let start = self.element_from_index(idx);
            let mut orbit = Vec::new();
            let mut cur = start.clone();
            loop {
                seen[self.index_of(&cur) as usize] = true;
                orbit.push(cur.clone());
                cur = self.scale(&cur, t);
                if cur == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Splits G = P x H with P the p-primary part and H its complement.
    pub fn primary_split(&self, p: u64) -> (AbelianGroup, AbelianGroup) {
        let (p_part, rest): (Vec<u64>, Vec<u64>) =
            self.divisors.iter().partition(|&&d| d % p == 0);
        let mk = |d: Vec<u64>| {
            Self::from_canonical(d).expect("sub-product of a valid group")
        };
        (mk(p_part), mk(rest))
    }

    pub fn direct_product(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let mut divisors = self.divisors.clone();
        divisors.extend_from_slice(&other.divisors);
        divisors.sort_unstable();
        Self::from_canonical(divisors)
    }

    /// Parses the group-spec grammar shared with the CLI: orders separated by
    /// 'x' or ',', each a positive integer or a `b^e` shorthand for e copies
    /// of C_b; "1" denotes a trivial factor.
    pub fn parse_spec(spec: &str) -> Result<AbelianGroup> {
        let mut orders = Vec::new();
        for token in spec.split(['x', ',']) {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::InvalidInput(format!("empty factor in '{spec}'")));
            }
            let (base, copies) = match token.split_once('^') {
                Some((b, e)) => {
                    let base = parse_u64(b, spec)?;
                    let copies = parse_u64(e, spec)?;
                    (base, copies)
                }
                None => (parse_u64(token, spec)?, 1),
            };
            if base == 0 {
                return Err(Error::InvalidInput(format!("factor 0 in '{spec}'")));
            }
            if base == 1 {
                continue; // trivial factor
            }
            for _ in 0..copies {
                orders.push(base);
            }
        }
        AbelianGroup::new(&orders)
    }
}

fn parse_u64(s: &str, ctx: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad integer '{s}' in group spec '{ctx}'")))
}

fn smallest_prime_factor(d: u64) -> u64 {
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    d
}

/// Partitions of e as non-increasing parts, deterministic order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "C_1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.divisors.len() {
            let d = self.divisors[i];
            let mut mult = 0;
            while i < self.divisors.len() && self.divisors[i] == d {
                mult += 1;
                i += 1;
            }
            if !first {
                write!(f, " × ")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "C_{d}")?;
            } else {
                write!(f, "C_{d}^{mult}")?;
            }
        }
        Ok(())
    }
}
