//! The group algebra FG: dense coefficient vectors over a fixed enumeration
//! of G, convolution, augmentation, and the p-power map on the augmentation
//! ideal as an explicit GF(p)-matrix.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg::MatrixGFp;

/// Cap on |G| for dense coefficient arrays.
pub const ALGEBRA_CAP: u64 = 1 << 16;
/// Cap on the Frobenius-operator matrix side n(|G|-1).
const OPERATOR_SIDE_CAP: usize = 1 << 12;

/// The algebra FG for a fixed field and abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    field: Field,
    group: AbelianGroup,
}

/// An element of FG: one field coefficient per group element, in the group's
/// enumeration order (index 0 is the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: Vec<FieldElement>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

impl GroupAlgebra {
    pub fn new(field: Field, group: AbelianGroup) -> Result<GroupAlgebra> {
        if group.order() > ALGEBRA_CAP {
            return Err(Error::Capacity(format!(
                "group of order {} exceeds the dense-algebra cap 2^16",
                group.order()
            )));
        }
        Ok(GroupAlgebra { field, group })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order() as usize
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { coeffs: vec![self.field.zero(); self.dim()] }
    }

    pub fn one(&self) -> AlgebraElement {
        let mut x = self.zero();
        x.coeffs[0] = self.field.one();
        x
    }

    /// The basis element corresponding to a group element.
    pub fn basis(&self, g: &GroupElement) -> AlgebraElement {
        let mut x = self.zero();
        x.coeffs[self.group.index_of(g) as usize] = self.field.one();
        x
    }

    pub fn scalar(&self, c: &FieldElement) -> AlgebraElement {
        let mut x = self.zero();
        x.coeffs[0] = c.clone();
        x
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        for c in &coeffs {
            if !self.field.is_member(c) {
                return Err(Error::InvalidInput("coefficient from a foreign field".into()));
            }
        }
        Ok(AlgebraElement { coeffs })
    }

    fn check(&self, x: &AlgebraElement) {
        assert_eq!(x.coeffs.len(), self.dim(), "element from a different algebra");
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.check(x);
        self.check(y);
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        AlgebraElement { coeffs }
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        self.check(x);
        AlgebraElement { coeffs: x.coeffs.iter().map(|a| self.field.neg(a)).collect() }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.add(x, &self.neg(y))
    }

    /// Convolution over the group law: (xy)_h = sum over g of x_g y_{g^-1 h}.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.check(x);
        self.check(y);
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            let gi = self.group.element_from_index(i as u64);
            for (j, b) in y.coeffs.iter().enumerate() {
                if self.field.is_zero(b) {
                    continue;
                }
                let gj = self.group.element_from_index(j as u64);
                let k = self.group.index_of(&self.group.add(&gi, &gj)) as usize;
                let term = self.field.mul(a, b);
                out.coeffs[k] = self.field.add(&out.coeffs[k], &term);
            }
        }
        out
    }

    /// x^k by repeated squaring; x^0 = 1.
    pub fn element_power(&self, x: &AlgebraElement, mut k: u128) -> AlgebraElement {
        self.check(x);
        let mut acc = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// x^(p^j) by the characteristic-p closed form:
    /// (sum c_g g)^(p^j) = sum c_g^(p^j) g^(p^j).
    pub fn frobenius_power(&self, x: &AlgebraElement, j: u32) -> AlgebraElement {
        self.check(x);
        let p = self.field.p();
        let pj = (p as u128).pow(j);
        let mut out = self.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let g = self.group.element_from_index(i as u64);
            let gp = self.group.scale(&g, (pj % self.group.exponent() as u128) as u64);
            let k = self.group.index_of(&gp) as usize;
            let cp = self.field.pow(c, pj);
            out.coeffs[k] = self.field.add(&out.coeffs[k], &cp);
        }
        out
    }

    /// Coefficient sum; its kernel is the augmentation ideal.
    pub fn augmentation(&self, x: &AlgebraElement) -> FieldElement {
        self.check(x);
        x.coeffs
            .iter()
            .fold(self.field.zero(), |acc, c| self.field.add(&acc, c))
    }

    pub fn in_augmentation_ideal(&self, x: &AlgebraElement) -> bool {
        self.field.is_zero(&self.augmentation(x))
    }

    /// GF(p)-coordinates of an augmentation-ideal element in the operator
    /// basis {x^u (g_i - 1)}: coordinate (i-1)*n + u is the coefficient of
    /// x^u in the coefficient at the non-identity group element g_i.
    pub fn omega_coordinates(&self, x: &AlgebraElement) -> Result<Vec<u64>> {
        if !self.in_augmentation_ideal(x) {
            return Err(Error::InvalidInput(
                "element is not in the augmentation ideal".into(),
            ));
        }
        let n = self.field.n();
        let mut coords = Vec::with_capacity((self.dim() - 1) * n);
        for c in &x.coeffs[1..] {
            coords.extend_from_slice(c.coeffs());
        }
        Ok(coords)
    }

    pub fn from_omega_coordinates(&self, coords: &[u64]) -> Result<AlgebraElement> {
        let n = self.field.n();
        if coords.len() != (self.dim() - 1) * n {
            return Err(Error::InvalidInput("coordinate vector of wrong length".into()));
        }
        let mut coeffs = vec![self.field.zero(); self.dim()];
        let mut sum = self.field.zero();
        for i in 1..self.dim() {
            let c = self.field.element(&coords[(i - 1) * n..i * n])?;
            sum = self.field.add(&sum, &c);
            coeffs[i] = c;
        }
        coeffs[0] = self.field.neg(&sum); // forces augmentation zero
        Ok(AlgebraElement { coeffs })
    }

    /// Matrix over GF(p) of T(a) = a^p on the augmentation ideal, for G a
    /// nontrivial p-group with p = char F. Basis vector x^u (g_i - 1) maps to
    /// (x^u)^p (g_i^p - 1), which is zero when g_i^p is the identity.
    pub fn frobenius_operator(&self) -> Result<FrobeniusOperator> {
        let p = self.field.p();
        let n = self.field.n();
        if self.group.is_trivial() || !self.group.is_p_group(p) {
            return Err(Error::InvalidInput(format!(
                "Frobenius operator needs a nontrivial {p}-group",
            )));
        }
        let side = (self.dim() - 1) * n;
        if side > OPERATOR_SIDE_CAP {
            return Err(Error::Capacity(format!(
                "operator side {side} exceeds the cap {OPERATOR_SIDE_CAP}"
            )));
        }
        let mut matrix = MatrixGFp::zeros(p, side, side);
        // images of the field basis under the Frobenius x -> x^p
        let frob_basis: Vec<FieldElement> = (0..n)
            .map(|u| {
                let mut coeffs = vec![0; n];
                coeffs[u] = 1;
                let xu = self.field.element(&coeffs).expect("basis element");
                self.field.frobenius(&xu, 1)
            })
            .collect();
        for i in 1..self.dim() {
            let g = self.group.element_from_index(i as u64);
            let gp = self.group.scale(&g, p);
            let j = self.group.index_of(&gp) as usize;
            if j == 0 {
                continue; // g^p = 1, so the whole block maps to zero
            }
            for (u, img) in frob_basis.iter().enumerate() {
                let col = (i - 1) * n + u;
                for (v, &cv) in img.coeffs().iter().enumerate() {
                    if cv != 0 {
                        matrix.set((j - 1) * n + v, col, cv);
                    }
                }
            }
        }
        let exponent = self.group.exponent();
        let nilpotency = exponent.ilog(p);
        Ok(FrobeniusOperator { matrix, nilpotency })
    }
}

/// The p-power map on the augmentation ideal as a GF(p)-matrix of side
/// n(|G|-1).
#[derive(Debug, Clone)]
pub struct FrobeniusOperator {
    matrix: MatrixGFp,
    nilpotency: u32,
}

impl FrobeniusOperator {
    pub fn matrix(&self) -> &MatrixGFp {
        &self.matrix
    }

    pub fn side(&self) -> usize {
        self.matrix.rows()
    }

    /// e with p^e = exp(G); T^e = 0 on the augmentation ideal.
    pub fn nilpotency(&self) -> u32 {
        self.nilpotency
    }

    /// Matrix–vector product on omega coordinates.
    pub fn apply(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.side());
        let p = self.matrix.p();
        let mut out = vec![0u64; self.side()];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (c, &x) in coords.iter().enumerate() {
                if x != 0 {
                    acc = (acc + crate::arith::mod_mul(self.matrix.get(r, c), x, p)) % p;
                }
            }
            *o = acc;
        }
        out
    }
}
