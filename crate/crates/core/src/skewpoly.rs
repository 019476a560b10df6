//! The twisted polynomial ring K[t; sigma] with sigma = x -> x^(2^k).
//!
//! Coefficient `coeffs[i]` multiplies `t^i` from the left, so a polynomial
//! reads `a_n t^n + ... + a_1 t + a_0` and `t a = sigma(a) t`. "R right-divides
//! P" always means a zero remainder from [`SkewPoly::divmod_right`].

use std::fmt;

use thiserror::Error;

use crate::gf::{ExtCtx, ExtFelt, Felt, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("operands live in different rings")]
    CtxMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcrd of two zero polynomials")]
    BothZero,
    #[error("lclm with a zero operand")]
    ZeroInput,
}

/// A finite field of characteristic two usable as a coefficient ring.
pub trait SkewField: Clone + PartialEq + fmt::Debug {
    type Elem: Copy + Eq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: Self::Elem) -> bool;
    fn add(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element; panics on zero.
    fn inv(&self, x: Self::Elem) -> Self::Elem;
    /// x^(2^e), e reduced modulo the degree.
    fn frob(&self, x: Self::Elem, e: u64) -> Self::Elem;
    /// Degree over GF(2).
    fn degree(&self) -> u32;
    /// Every element, in ascending packed-bit order.
    fn all_elements(&self) -> Vec<Self::Elem>;
}

impl SkewField for FieldCtx {
    type Elem = Felt;

    fn zero(&self) -> Felt {
        Felt::ZERO
    }
    fn one(&self) -> Felt {
        Felt::ONE
    }
    fn is_zero(&self, x: Felt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: Felt, y: Felt) -> Felt {
        FieldCtx::add(self, x, y)
    }
    fn mul(&self, x: Felt, y: Felt) -> Felt {
        FieldCtx::mul(self, x, y)
    }
    fn inv(&self, x: Felt) -> Felt {
        FieldCtx::inv(self, x).expect("inverse of a nonzero coefficient")
    }
    fn frob(&self, x: Felt, e: u64) -> Felt {
        self.frobenius(x, (e % self.m() as u64) as u32)
    }
    fn degree(&self) -> u32 {
        self.m()
    }
    fn all_elements(&self) -> Vec<Felt> {
        self.elements().collect()
    }
}

impl SkewField for ExtCtx {
    type Elem = ExtFelt;

    fn zero(&self) -> ExtFelt {
        ExtFelt::ZERO
    }
    fn one(&self) -> ExtFelt {
        ExtFelt::ONE
    }
    fn is_zero(&self, x: ExtFelt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: ExtFelt, y: ExtFelt) -> ExtFelt {
        ExtCtx::add(self, x, y)
    }
    fn mul(&self, x: ExtFelt, y: ExtFelt) -> ExtFelt {
        ExtCtx::mul(self, x, y)
    }
    fn inv(&self, x: ExtFelt) -> ExtFelt {
        ExtCtx::inv(self, x).expect("inverse of a nonzero coefficient")
    }
    fn frob(&self, x: ExtFelt, e: u64) -> ExtFelt {
        self.frobenius(x, (e % self.degree() as u64) as u32)
    }
    fn degree(&self) -> u32 {
        ExtCtx::degree(self)
    }
    fn all_elements(&self) -> Vec<ExtFelt> {
        self.elements().collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly<F: SkewField> {
    field: F,
    k: u32,
    coeffs: Vec<F::Elem>,
}

impl<F: SkewField> fmt::Debug for SkewPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly[k={}]({})", self.k, self)
    }
}

impl<F: SkewField> fmt::Display for SkewPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: SkewField> SkewPoly<F> {
    /// Builds a polynomial from coefficients listed low to high.
    pub fn new(field: F, k: u32, coeffs: Vec<F::Elem>) -> Self {
        let mut p = SkewPoly { field, k, coeffs };
        p.normalize();
        p
    }

    pub fn zero(field: F, k: u32) -> Self {
        SkewPoly {
            field,
            k,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F, k: u32) -> Self {
        let one = field.one();
        Self::new(field, k, vec![one])
    }

    pub fn constant(field: F, k: u32, c: F::Elem) -> Self {
        Self::new(field, k, vec![c])
    }

    /// `c t^i`
    pub fn monomial(field: F, k: u32, c: F::Elem, i: usize) -> Self {
        let mut coeffs = vec![field.zero(); i + 1];
        coeffs[i] = c;
        Self::new(field, k, coeffs)
    }

    /// `t - b`, which is `t + b` in characteristic two.
    pub fn linear(field: F, k: u32, b: F::Elem) -> Self {
        let one = field.one();
        Self::new(field, k, vec![b, one])
    }

    fn normalize(&mut self) {
        while let Some(&c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    fn like(&self, coeffs: Vec<F::Elem>) -> Self {
        Self::new(self.field.clone(), self.k, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn twist(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<F::Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    /// sigma^i(x)
    fn sigma_pow(&self, x: F::Elem, i: usize) -> F::Elem {
        self.field.frob(x, self.k as u64 * i as u64)
    }

    /// sigma^-i(x)
    fn sigma_inv_pow(&self, x: F::Elem, i: usize) -> F::Elem {
        let deg = self.field.degree() as u64;
        let e = (self.k as u64 * i as u64) % deg;
        self.field.frob(x, (deg - e) % deg)
    }

    fn check_same(&self, other: &Self) -> Result<(), SkewError> {
        if self.k % self.field.degree() != other.k % other.field.degree()
            || self.field != other.field
        {
            return Err(SkewError::CtxMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SkewError> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(self.like(coeffs))
    }

    /// Subtraction coincides with addition in characteristic two.
    pub fn sub(&self, other: &Self) -> Result<Self, SkewError> {
        self.add(other)
    }

    /// `(sum a_i t^i)(sum b_j t^j) = sum a_i sigma^i(b_j) t^(i+j)`
    pub fn mul(&self, other: &Self) -> Result<Self, SkewError> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.like(Vec::new()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = f.mul(a, self.sigma_pow(b, i));
                out[i + j] = f.add(out[i + j], term);
            }
        }
        Ok(self.like(out))
    }

    /// Left multiplication by a constant.
    pub fn scale_left(&self, c: F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect();
        self.like(coeffs)
    }

    /// Left-scales by the inverse leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale_left(self.field.inv(l)),
        }
    }

    /// `P = Q R + S` with `deg S < deg R`.
    pub fn divmod_right(&self, r: &Self) -> Result<(Self, Self), SkewError> {
        self.check_same(r)?;
        let dr = r.degree().ok_or(SkewError::DivisionByZeroPoly)?;
        let f = &self.field;
        let lead_r = r.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dr)];
        while let Some(dp) = rem.degree() {
            if dp < dr {
                break;
            }
            let shift = dp - dr;
            // c t^shift * r_d t^d = c sigma^shift(r_d) t^dp
            let c = f.mul(rem.leading().unwrap(), f.inv(self.sigma_pow(lead_r, shift)));
            quot[shift] = f.add(quot[shift], c);
            let term = Self::monomial(f.clone(), self.k, c, shift).mul(r)?;
            rem = rem.sub(&term)?;
        }
        Ok((self.like(quot), rem))
    }

    /// `P = R Q + S` with `deg S < deg R`.
    pub fn divmod_left(&self, r: &Self) -> Result<(Self, Self), SkewError> {
        self.check_same(r)?;
        let dr = r.degree().ok_or(SkewError::DivisionByZeroPoly)?;
        let f = &self.field;
        let lead_r = r.leading().unwrap();
        let inv_lead = f.inv(lead_r);
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dr)];
        while let Some(dp) = rem.degree() {
            if dp < dr {
                break;
            }
            let shift = dp - dr;
            // r_d t^d * c t^shift = r_d sigma^d(c) t^dp
            let c = self.sigma_inv_pow(f.mul(inv_lead, rem.leading().unwrap()), dr);
            quot[shift] = f.add(quot[shift], c);
            let term = r.mul(&Self::monomial(f.clone(), self.k, c, shift))?;
            rem = rem.sub(&term)?;
        }
        Ok((self.like(quot), rem))
    }

    pub fn right_divides(&self, p: &Self) -> Result<bool, SkewError> {
        Ok(p.divmod_right(self)?.1.is_zero())
    }

    pub fn left_divides(&self, p: &Self) -> Result<bool, SkewError> {
        Ok(p.divmod_left(self)?.1.is_zero())
    }

    /// Monic greatest common right divisor by the right Euclidean algorithm.
    pub fn gcrd(&self, other: &Self) -> Result<Self, SkewError> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(SkewError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod_right(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common left multiple via the extended right Euclidean
    /// algorithm: when `u P1 + v P2 = 0` first occurs, `u P1` is the lclm.
    pub fn lclm(&self, other: &Self) -> Result<Self, SkewError> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(SkewError::ZeroInput);
        }
        let zero = self.like(Vec::new());
        let one = Self::one(self.field.clone(), self.k);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (one, zero);
        while !r1.is_zero() {
            let (q, r2) = r0.divmod_right(&r1)?;
            let u2 = u0.sub(&q.mul(&u1)?)?;
            (r0, r1) = (r1, r2);
            (u0, u1) = (u1, u2);
        }
        let lclm = u1.mul(self)?.monic();
        let gcrd_deg = r0.degree().unwrap();
        assert_eq!(
            lclm.degree().unwrap() + gcrd_deg,
            self.degree().unwrap() + other.degree().unwrap(),
            "lclm degree identity violated"
        );
        Ok(lclm)
    }

    /// Least b (in ascending element order) with `t - b` right-dividing P.
    pub fn linear_right_divisor(&self) -> Option<F::Elem> {
        self.field.all_elements().into_iter().find(|&b| {
            let lin = Self::linear(self.field.clone(), self.k, b);
            lin.right_divides(self).expect("same ring")
        })
    }

    /// Least b with `t - b` left-dividing P.
    pub fn linear_left_divisor(&self) -> Option<F::Elem> {
        self.field.all_elements().into_iter().find(|&b| {
            let lin = Self::linear(self.field.clone(), self.k, b);
            lin.left_divides(self).expect("same ring")
        })
    }
}

impl SkewPoly<FieldCtx> {
    /// The same polynomial read in GF(q^2)[t; sigma].
    pub fn lift(&self, ext: &ExtCtx) -> SkewPoly<ExtCtx> {
        assert_eq!(ext.base(), &self.field, "lift into a foreign extension");
        let coeffs = self.coeffs.iter().map(|&c| ext.embed(c)).collect();
        SkewPoly::new(ext.clone(), self.k, coeffs)
    }
}
