//! The trivariate semiquadratic family F = (F1, F2, F3) on GF(q)^3,
//! q = 2^m, sigma = 2^k:
//!
//! ```text
//! F1 = x^(s+1) + a y^s z + b x^s y + c x^s z
//! F2 = a y^(s+1) + z^s x + b z^s y + c x^s y
//! F3 = z^(s+1) + x^s y
//! ```
//!
//! together with its root condition `a X^(s^2+s+1) + b X^(s+1) + c X + 1`,
//! projective bijectivity, the scalar automorphisms, the three earlier
//! trivariate families it contains, and the Gold baseline.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{gcd_power, ExtCtx, Felt, FieldCtx, GfError, Sign};
use crate::skewpoly::{SkewField, SkewPoly};
use crate::vectfun::{ImageClass, LinMap3, Lut, LutError, MAX_LUT_BITS};

/// Above this field degree the scalar-automorphism and Gold checks sample.
const EXHAUSTIVE_MAX_M: u32 = 4;
const GOLD_EXHAUSTIVE_MAX_N: u32 = 12;
const SAMPLE_POINTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("coefficient a must be nonzero")]
    ZeroA,
    #[error("twist k={k} must satisfy 1 <= k < m={m}")]
    BadTwist { k: u32, m: u32 },
    #[error(
        "root search ({direct}) and skew linear-divisor search ({skew}) disagree; this is a defect"
    )]
    OracleDisagreement { direct: bool, skew: bool },
    #[error("nonzero point {0} maps to zero; the projective map is undefined")]
    ZeroImage(Vec3),
    #[error("table width {n} exceeds the limit {limit}")]
    TooLarge { n: u32, limit: u32 },
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("gcd({i}, {n}) != 1")]
    NotCoprime { i: u32, n: u32 },
    #[error("exponent j={j} must be below n={n}")]
    BadExponent { j: u32, n: u32 },
    #[error(transparent)]
    Gf(#[from] GfError),
}

impl From<LutError> for FamilyError {
    fn from(e: LutError) -> Self {
        match e {
            LutError::TooLarge(n) => FamilyError::TooLarge {
                n,
                limit: MAX_LUT_BITS,
            },
            other => panic!("family table construction produced {other}"),
        }
    }
}

/// A point of GF(q)^3.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Vec3 {
    pub x: Felt,
    pub y: Felt,
    pub z: Felt,
}

impl std::fmt::Display for Vec3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:x}, {:x}, {:x})", self.x.0, self.y.0, self.z.0)
    }
}

impl Vec3 {
    pub fn new(x: Felt, y: Felt, z: Felt) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `x + y 2^m + z 2^(2m)`
    #[inline]
    pub fn pack(&self, m: u32) -> u32 {
        self.x.0 | (self.y.0 << m) | (self.z.0 << (2 * m))
    }

    #[inline]
    pub fn unpack(w: u32, m: u32) -> Self {
        let mask = (1u32 << m) - 1;
        Vec3::new(
            Felt(w & mask),
            Felt(w >> m & mask),
            Felt(w >> (2 * m) & mask),
        )
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            Felt(self.x.0 ^ o.x.0),
            Felt(self.y.0 ^ o.y.0),
            Felt(self.z.0 ^ o.z.0),
        )
    }

    pub fn scale(&self, ctx: &FieldCtx, l: Felt) -> Vec3 {
        Vec3::new(ctx.mul(l, self.x), ctx.mul(l, self.y), ctx.mul(l, self.z))
    }

    fn first_nonzero(&self) -> Option<Felt> {
        [self.x, self.y, self.z].into_iter().find(|c| !c.is_zero())
    }
}

/// Canonical representative of a point of P^2(GF(q)): first nonzero
/// coordinate equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec3);

impl ProjPoint {
    pub fn canonical(ctx: &FieldCtx, v: Vec3) -> Option<Self> {
        let lead = v.first_nonzero()?;
        let inv = ctx.inv(lead).expect("nonzero lead");
        Some(ProjPoint(v.scale(ctx, inv)))
    }

    pub fn rep(&self) -> Vec3 {
        self.0
    }

    /// The q^2 + q + 1 canonical points in the order (1,y,z), (0,1,z), (0,0,1).
    pub fn all(ctx: &FieldCtx) -> Vec<ProjPoint> {
        let els: Vec<Felt> = ctx.elements().collect();
        let mut out = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
        for &y in &els {
            for &z in &els {
                out.push(ProjPoint(Vec3::new(Felt::ONE, y, z)));
            }
        }
        for &z in &els {
            out.push(ProjPoint(Vec3::new(Felt::ZERO, Felt::ONE, z)));
        }
        out.push(ProjPoint(Vec3::new(Felt::ZERO, Felt::ZERO, Felt::ONE)));
        out
    }
}

/// Parameters (k, a, b, c) of one family member over a fixed field.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    ctx: FieldCtx,
    k: u32,
    a: Felt,
    b: Felt,
    c: Felt,
    d: u32,
    sigma: Arc<[Felt]>,
}

impl PartialEq for FamilyParams {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.k == o.k && self.a == o.a && self.b == o.b && self.c == o.c
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FamilyParams {
    pub fn new(ctx: FieldCtx, k: u32, a: Felt, b: Felt, c: Felt) -> Result<Self, FamilyError> {
        let m = ctx.m();
        if k == 0 || k >= m {
            return Err(FamilyError::BadTwist { k, m });
        }
        if a.is_zero() {
            return Err(FamilyError::ZeroA);
        }
        for v in [a, b, c] {
            ctx.felt(v.0)?;
        }
        let sigma = ctx.frobenius_table(k).into();
        Ok(FamilyParams {
            d: gcd(k, m),
            ctx,
            k,
            a,
            b,
            c,
            sigma,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn a(&self) -> Felt {
        self.a
    }
    pub fn b(&self) -> Felt {
        self.b
    }
    pub fn c(&self) -> Felt {
        self.c
    }
    /// gcd(k, m)
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Differential uniformity predicted when the condition has no root.
    pub fn expected_uniformity(&self) -> u32 {
        1 << self.d
    }

    /// Image class predicted when the condition has no root:
    /// gcd(2^k + 1, 2^m - 1)-to-1 on nonzero points.
    pub fn expected_image_class(&self) -> ImageClass {
        match gcd_power(self.k, self.ctx.m(), Sign::Plus) {
            1 => ImageClass::Bijective,
            r => ImageClass::RToOne { r: r as u32 },
        }
    }

    #[inline]
    fn sig(&self, x: Felt) -> Felt {
        self.sigma[x.0 as usize]
    }

    /// Evaluates (F1, F2, F3) at `v`.
    pub fn eval(&self, v: Vec3) -> Vec3 {
        let f = &self.ctx;
        let Vec3 { x, y, z } = v;
        let (xs, ys, zs) = (self.sig(x), self.sig(y), self.sig(z));
        // F1 = x^s (x + b y + c z) + a y^s z
        let inner = f.add(f.add(x, f.mul(self.b, y)), f.mul(self.c, z));
        let f1 = f.add(f.mul(xs, inner), f.mul(self.a, f.mul(ys, z)));
        // F2 = y (a y^s + c x^s) + z^s (x + b y)
        let f2 = f.add(
            f.mul(y, f.add(f.mul(self.a, ys), f.mul(self.c, xs))),
            f.mul(zs, f.add(x, f.mul(self.b, y))),
        );
        let f3 = f.add(f.mul(zs, z), f.mul(xs, y));
        Vec3::new(f1, f2, f3)
    }
}

/// Free-function form of [`FamilyParams::new`].
pub fn family_create(
    ctx: FieldCtx,
    k: u32,
    a: Felt,
    b: Felt,
    c: Felt,
) -> Result<FamilyParams, FamilyError> {
    FamilyParams::new(ctx, k, a, b, c)
}

pub fn family_eval(p: &FamilyParams, v: Vec3) -> Vec3 {
    p.eval(v)
}

/// Direct root search for `a X^(s^2+s+1) + b X^(s+1) + c X + 1` over any
/// characteristic-two field, s = 2^k.
pub fn condition_root_direct<F: SkewField>(
    field: &F,
    k: u32,
    a: F::Elem,
    b: F::Elem,
    c: F::Elem,
) -> bool {
    field.all_elements().into_iter().any(|x| {
        let n2 = field.mul(field.frob(x, k as u64), x);
        let n3 = field.mul(field.frob(n2, k as u64), x);
        let v = field.add(
            field.add(field.mul(a, n3), field.mul(b, n2)),
            field.add(field.mul(c, x), field.one()),
        );
        field.is_zero(v)
    })
}

/// Linear right divisor search on `a t^3 + b t^2 + c t + 1`.
pub fn condition_root_skew<F: SkewField>(
    field: &F,
    k: u32,
    a: F::Elem,
    b: F::Elem,
    c: F::Elem,
) -> bool {
    SkewPoly::new(field.clone(), k, vec![field.one(), c, b, a])
        .linear_right_divisor()
        .is_some()
}

fn agree(direct: bool, skew: bool) -> Result<bool, FamilyError> {
    if direct != skew {
        return Err(FamilyError::OracleDisagreement { direct, skew });
    }
    Ok(direct)
}

/// True iff the root condition has a solution in GF(q); decided by root
/// search and by the skew-polynomial divisor test, which must agree.
pub fn condition_has_root(p: &FamilyParams) -> Result<bool, FamilyError> {
    let f = p.ctx();
    agree(
        condition_root_direct(f, p.k, p.a, p.b, p.c),
        condition_root_skew(f, p.k, p.a, p.b, p.c),
    )
}

/// The same condition with a, b, c embedded in GF(q^2).
pub fn condition_has_root_lifted(p: &FamilyParams) -> Result<bool, FamilyError> {
    let ext = ExtCtx::new(p.ctx().clone());
    let (a, b, c) = (ext.embed(p.a), ext.embed(p.b), ext.embed(p.c));
    agree(
        condition_root_direct(&ext, p.k, a, b, c),
        condition_root_skew(&ext, p.k, a, b, c),
    )
}

/// Whether F induces a permutation of P^2(GF(q)), by enumeration.
pub fn projective_bijective(p: &FamilyParams) -> Result<bool, FamilyError> {
    let ctx = p.ctx();
    let m = ctx.m();
    let points = ProjPoint::all(ctx);
    let mut images = HashSet::with_capacity(points.len());
    let mut injective = true;
    for pt in points {
        let img = p.eval(pt.rep());
        let canon = ProjPoint::canonical(ctx, img).ok_or(FamilyError::ZeroImage(pt.rep()))?;
        injective &= images.insert(canon.rep().pack(m));
    }
    Ok(injective)
}

fn check_width(n: u32) -> Result<(), FamilyError> {
    if n > MAX_LUT_BITS {
        return Err(FamilyError::TooLarge {
            n,
            limit: MAX_LUT_BITS,
        });
    }
    Ok(())
}

/// Builds a table from a map on GF(q)^3 using the normative packing.
pub fn lut_from_vec3(ctx: &FieldCtx, f: impl Fn(Vec3) -> Vec3 + Sync) -> Result<Lut, FamilyError> {
    let m = ctx.m();
    check_width(3 * m)?;
    Ok(Lut::from_fn(3 * m, |w| f(Vec3::unpack(w, m)).pack(m))?)
}

/// Table of F over all 2^(3m) packed inputs.
pub fn family_lut(p: &FamilyParams) -> Result<Lut, FamilyError> {
    lut_from_vec3(p.ctx(), |v| p.eval(v))
}

/// Checks F(s v) = s^(sigma+1) F(v); exhaustive for m <= 4, otherwise on
/// 10^4 seeded random points.
pub fn verify_scalar_automorphism(p: &FamilyParams, s: Felt) -> Result<bool, FamilyError> {
    if s.is_zero() {
        return Err(FamilyError::ZeroScalar);
    }
    let ctx = p.ctx();
    let m = ctx.m();
    let factor = ctx.mul(p.sig(s), s);
    let holds = |v: Vec3| p.eval(v.scale(ctx, s)) == p.eval(v).scale(ctx, factor);
    if m <= EXHAUSTIVE_MAX_M {
        Ok((0..1u32 << (3 * m)).all(|w| holds(Vec3::unpack(w, m))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6175_746f);
        Ok((0..SAMPLE_POINTS).all(|_| holds(Vec3::unpack(rng.gen_range(0..1u32 << (3 * m)), m))))
    }
}

/// Block-permutation witness: `literal = components o family o variables`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockWitness {
    /// Output block i of the literal function is family component `components[i]`.
    pub components: [usize; 3],
    /// The family is evaluated at variable `variables[i]` in slot i.
    pub variables: [usize; 3],
}

impl BlockWitness {
    pub fn maps(&self) -> (LinMap3, LinMap3) {
        (
            LinMap3::blocks(self.components).expect("witness blocks are permutations"),
            LinMap3::blocks(self.variables).expect("witness blocks are permutations"),
        )
    }
}

/// A literal earlier-family table together with the family member it
/// reduces to and the block witness connecting them.
#[derive(Clone, Debug)]
pub struct PriorReproduction {
    pub name: &'static str,
    pub literal: Lut,
    pub params: FamilyParams,
    pub witness: BlockWitness,
}

fn s1(ctx: &FieldCtx, k: u32, x: Felt) -> Felt {
    // x^(sigma+1)
    ctx.mul(ctx.frobenius(x, k), x)
}

/// (x^(s+1) + x^s z + y z^s, x^s z + y^(s+1), x y^s + y^s z + z^(s+1))
pub fn li_kaleyski_1_eval(ctx: &FieldCtx, k: u32, v: Vec3) -> Vec3 {
    let f = ctx;
    let Vec3 { x, y, z } = v;
    let (xs, ys, zs) = (f.frobenius(x, k), f.frobenius(y, k), f.frobenius(z, k));
    Vec3::new(
        f.add(f.add(s1(f, k, x), f.mul(xs, z)), f.mul(y, zs)),
        f.add(f.mul(xs, z), s1(f, k, y)),
        f.add(f.add(f.mul(x, ys), f.mul(ys, z)), s1(f, k, z)),
    )
}

/// (x^(s+1) + x y^s + y z^s, x y^s + z^(s+1), x^s z + y^s z + y^(s+1))
///
/// The middle component carries `z^(s+1)`; see [`li_kaleyski_2_as_printed_eval`].
pub fn li_kaleyski_2_eval(ctx: &FieldCtx, k: u32, v: Vec3) -> Vec3 {
    let f = ctx;
    let Vec3 { x, y, z } = v;
    let (xs, ys, zs) = (f.frobenius(x, k), f.frobenius(y, k), f.frobenius(z, k));
    Vec3::new(
        f.add(f.add(s1(f, k, x), f.mul(x, ys)), f.mul(y, zs)),
        f.add(f.mul(x, ys), s1(f, k, z)),
        f.add(f.add(f.mul(xs, z), f.mul(ys, z)), s1(f, k, y)),
    )
}

/// The second family with middle component `x y^s + y^(s+1)`, the form in
/// which it is commonly quoted. Not linearly equivalent to the family by a
/// block witness; kept for the comparison report.
pub fn li_kaleyski_2_as_printed_eval(ctx: &FieldCtx, k: u32, v: Vec3) -> Vec3 {
    let f = ctx;
    let mut out = li_kaleyski_2_eval(ctx, k, v);
    out.y = f.add(f.mul(v.x, f.frobenius(v.y, k)), s1(f, k, v.y));
    out
}

/// (x^(s+1) + a x y^s + y z^s, x y^s + z^(s+1), x^s z + y^(s+1) + a y^s z)
pub fn bartoli_stanica_eval(ctx: &FieldCtx, k: u32, a: Felt, v: Vec3) -> Vec3 {
    let f = ctx;
    let Vec3 { x, y, z } = v;
    let (xs, ys, zs) = (f.frobenius(x, k), f.frobenius(y, k), f.frobenius(z, k));
    Vec3::new(
        f.add(f.add(s1(f, k, x), f.mul(a, f.mul(x, ys))), f.mul(y, zs)),
        f.add(f.mul(x, ys), s1(f, k, z)),
        f.add(f.add(f.mul(xs, z), s1(f, k, y)), f.mul(a, f.mul(ys, z))),
    )
}

/// The same formula with q-th powers taken literally; on GF(q) every x^q is
/// x, so this is the sigma = identity map.
pub fn bartoli_stanica_literal_q_eval(ctx: &FieldCtx, a: Felt, v: Vec3) -> Vec3 {
    let f = ctx;
    let Vec3 { x, y, z } = v;
    Vec3::new(
        f.add(f.add(f.square(x), f.mul(a, f.mul(x, y))), f.mul(y, z)),
        f.add(f.mul(x, y), f.square(z)),
        f.add(f.add(f.mul(x, z), f.square(y)), f.mul(a, f.mul(y, z))),
    )
}

fn reproduce(
    name: &'static str,
    ctx: &FieldCtx,
    k: u32,
    literal: impl Fn(Vec3) -> Vec3 + Sync,
    (a, b, c): (Felt, Felt, Felt),
    witness: BlockWitness,
) -> Result<PriorReproduction, FamilyError> {
    let params = FamilyParams::new(ctx.clone(), k, a, b, c)?;
    Ok(PriorReproduction {
        name,
        literal: lut_from_vec3(ctx, literal)?,
        params,
        witness,
    })
}

/// Swap components 2 and 3 and rename y <-> z; family member (1, 1, 0).
pub fn li_kaleyski_1(ctx: &FieldCtx, k: u32) -> Result<PriorReproduction, FamilyError> {
    reproduce(
        "li_kaleyski_1",
        ctx,
        k,
        |v| li_kaleyski_1_eval(ctx, k, v),
        (Felt::ONE, Felt::ONE, Felt::ZERO),
        BlockWitness {
            components: [0, 2, 1],
            variables: [0, 2, 1],
        },
    )
}

/// Cyclic shift of components and x <-> y; family member (1, 0, 1).
pub fn li_kaleyski_2(ctx: &FieldCtx, k: u32) -> Result<PriorReproduction, FamilyError> {
    reproduce(
        "li_kaleyski_2",
        ctx,
        k,
        |v| li_kaleyski_2_eval(ctx, k, v),
        (Felt::ONE, Felt::ZERO, Felt::ONE),
        BlockWitness {
            components: [1, 2, 0],
            variables: [1, 0, 2],
        },
    )
}

/// x <-> y and component rotation; family member (1, 0, a).
pub fn bartoli_stanica(ctx: &FieldCtx, k: u32, a: Felt) -> Result<PriorReproduction, FamilyError> {
    ctx.felt(a.0)?;
    reproduce(
        "bartoli_stanica",
        ctx,
        k,
        |v| bartoli_stanica_eval(ctx, k, a, v),
        (Felt::ONE, Felt::ZERO, a),
        BlockWitness {
            components: [1, 2, 0],
            variables: [1, 0, 2],
        },
    )
}

/// Gold function x -> x^(2^i + 1) on GF(2^n).
#[derive(Clone, Debug)]
pub struct Gold {
    ctx: FieldCtx,
    i: u32,
}

impl Gold {
    pub fn new(n: u32, i: u32) -> Result<Self, FamilyError> {
        // the field layer caps the degree below the table limit
        if n > crate::gf::MAX_DEGREE {
            return Err(FamilyError::TooLarge {
                n,
                limit: crate::gf::MAX_DEGREE,
            });
        }
        if gcd(i, n) != 1 {
            return Err(FamilyError::NotCoprime { i, n });
        }
        Ok(Gold {
            ctx: FieldCtx::new(n, None)?,
            i,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn eval(&self, x: Felt) -> Felt {
        self.ctx.mul(self.ctx.frobenius(x, self.i), x)
    }

    pub fn lut(&self) -> Result<Lut, FamilyError> {
        Ok(Lut::from_fn(self.ctx.m(), |x| self.eval(Felt(x)).0)?)
    }

    /// Checks s^(2^i+1) G(x)^(2^j) = G(s x^(2^j)); exhaustive for n <= 12.
    pub fn automorphism_holds(&self, s: Felt, j: u32) -> Result<bool, FamilyError> {
        let f = &self.ctx;
        let n = f.m();
        if s.is_zero() {
            return Err(FamilyError::ZeroScalar);
        }
        if j >= n {
            return Err(FamilyError::BadExponent { j, n });
        }
        f.felt(s.0)?;
        let factor = self.eval(s);
        let holds = |x: Felt| {
            f.mul(factor, f.frobenius(self.eval(x), j)) == self.eval(f.mul(s, f.frobenius(x, j)))
        };
        if n <= GOLD_EXHAUSTIVE_MAX_N {
            Ok(f.elements().all(holds))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x676f_6c64);
            Ok((0..SAMPLE_POINTS).all(|_| holds(Felt(rng.gen_range(0..f.order())))))
        }
    }
}

pub fn gold_lut(n: u32, i: u32) -> Result<Lut, FamilyError> {
    Gold::new(n, i)?.lut()
}

pub fn gold_automorphism_check(n: u32, i: u32, s: Felt, j: u32) -> Result<bool, FamilyError> {
    Gold::new(n, i)?.automorphism_holds(s, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectfun::lut_transform;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::new(m, None).unwrap()
    }

    fn params(m: u32, k: u32, a: u32, b: u32, c: u32) -> FamilyParams {
        FamilyParams::new(ctx(m), k, Felt(a), Felt(b), Felt(c)).unwrap()
    }

    #[test]
    fn create() {
        assert_eq!(params(3, 1, 1, 1, 0).d(), 1);
        assert_eq!(params(4, 2, 1, 0, 1).d(), 2);
        assert_eq!(
            FamilyParams::new(ctx(3), 1, Felt(0), Felt(1), Felt(0)),
            Err(FamilyError::ZeroA)
        );
        assert_eq!(
            FamilyParams::new(ctx(3), 3, Felt(1), Felt(1), Felt(0)),
            Err(FamilyError::BadTwist { k: 3, m: 3 })
        );
        assert_eq!(
            FamilyParams::new(ctx(3), 0, Felt(1), Felt(1), Felt(0)),
            Err(FamilyError::BadTwist { k: 0, m: 3 })
        );
        assert!(FamilyParams::new(ctx(3), 1, Felt(1), Felt(8), Felt(0)).is_err());
    }

    #[test]
    fn eval_examples() {
        let p = params(3, 1, 1, 1, 0);
        let v = |x, y, z| Vec3::new(Felt(x), Felt(y), Felt(z));
        assert_eq!(p.eval(v(0, 0, 0)), v(0, 0, 0));
        assert_eq!(p.eval(v(1, 0, 0)), v(1, 0, 0));
        assert_eq!(p.eval(v(0, 1, 1)), v(1, 0, 1));
    }

    #[test]
    fn eval_matches_textbook_formula() {
        for (m, k) in [(3, 1), (3, 2), (4, 3)] {
            let f = ctx(m);
            for (a, b, c) in [(1, 0, 0), (3, 5, 7), (2, 1, 6)] {
                let p = params(m, k, a, b, c);
                let (a, b, c) = (Felt(a), Felt(b), Felt(c));
                let sp = |x| f.frobenius(x, k);
                for w in 0..1u32 << (3 * m) {
                    let Vec3 { x, y, z } = Vec3::unpack(w, m);
                    let mul3 = |p: Felt, q: Felt, r: Felt| f.mul(p, f.mul(q, r));
                    let f1 = [
                        f.mul(sp(x), x),
                        mul3(a, sp(y), z),
                        mul3(b, sp(x), y),
                        mul3(c, sp(x), z),
                    ];
                    let f2 = [
                        mul3(a, sp(y), y),
                        f.mul(sp(z), x),
                        mul3(b, sp(z), y),
                        mul3(c, sp(x), y),
                    ];
                    let f3 = [f.mul(sp(z), z), f.mul(sp(x), y)];
                    let sum = |ts: &[Felt]| ts.iter().fold(Felt::ZERO, |acc, &t| f.add(acc, t));
                    assert_eq!(
                        p.eval(Vec3 { x, y, z }),
                        Vec3::new(sum(&f1), sum(&f2), sum(&f3))
                    );
                }
            }
        }
    }

    #[test]
    fn condition_examples() {
        assert!(!condition_has_root(&params(3, 1, 1, 1, 0)).unwrap());
        assert!(condition_has_root(&params(3, 1, 1, 0, 0)).unwrap());
        assert!(!condition_has_root(&params(2, 1, 1, 0, 1)).unwrap());
    }

    #[test]
    fn projective_examples() {
        assert!(projective_bijective(&params(3, 1, 1, 1, 0)).unwrap());
        assert_eq!(ProjPoint::all(&ctx(3)).len(), 73);
        assert_eq!(ProjPoint::all(&ctx(2)).len(), 21);
        assert!(projective_bijective(&params(2, 1, 1, 0, 1)).unwrap());
        assert!(!matches!(
            projective_bijective(&params(3, 1, 1, 0, 0)),
            Ok(true)
        ));
    }

    #[test]
    fn projective_iff_condition_small() {
        for m in [2, 3] {
            for k in 1..m {
                let f = ctx(m);
                for a in f.nonzero_elements() {
                    for b in f.elements() {
                        for c in f.elements() {
                            let p = FamilyParams::new(f.clone(), k, a, b, c).unwrap();
                            let root = condition_has_root(&p).unwrap();
                            match projective_bijective(&p) {
                                Ok(bij) => assert_eq!(bij, !root),
                                Err(FamilyError::ZeroImage(_)) => assert!(root),
                                Err(e) => panic!("{e}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lut_examples() {
        let lut = family_lut(&params(3, 1, 1, 1, 0)).unwrap();
        assert_eq!(lut.get(0), 0);
        assert!(lut.is_permutation());
        let lut = family_lut(&params(2, 1, 1, 0, 1)).unwrap();
        let mut counts = vec![0u32; 64];
        for &v in lut.table() {
            counts[v as usize] += 1;
        }
        assert!(counts[1..].iter().all(|&c| c == 0 || c == 3));
        let wide = FamilyParams::new(ctx(11), 1, Felt(1), Felt(0), Felt(0)).unwrap();
        assert!(matches!(
            family_lut(&wide),
            Err(FamilyError::TooLarge { n: 33, .. })
        ));
    }

    #[test]
    fn scalar_automorphisms() {
        let p = params(3, 1, 1, 1, 0);
        for s in ctx(3).nonzero_elements() {
            assert!(verify_scalar_automorphism(&p, s).unwrap());
        }
        assert_eq!(
            verify_scalar_automorphism(&p, Felt(0)),
            Err(FamilyError::ZeroScalar)
        );
        let big = params(6, 1, 3, 2, 1);
        assert!(verify_scalar_automorphism(&big, Felt(0x21)).unwrap());
    }

    #[test]
    fn prior_families_match() {
        let f = ctx(3);
        for rep in [
            li_kaleyski_1(&f, 1).unwrap(),
            li_kaleyski_2(&f, 1).unwrap(),
            bartoli_stanica(&f, 1, Felt(2)).unwrap(),
        ] {
            let (l1, l2) = rep.witness.maps();
            let fam = family_lut(&rep.params).unwrap();
            assert_eq!(
                lut_transform(&l1, &fam, &l2).unwrap(),
                rep.literal,
                "{}",
                rep.name
            );
        }
    }

    #[test]
    fn gold() {
        let lut = gold_lut(9, 1).unwrap();
        assert_eq!(lut.get(0), 0);
        assert_eq!(lut.get(1), 1);
        assert_eq!(
            gold_lut(9, 3).unwrap_err(),
            FamilyError::NotCoprime { i: 3, n: 9 }
        );
        assert!(matches!(gold_lut(30, 1), Err(FamilyError::TooLarge { .. })));
        assert!(gold_automorphism_check(9, 1, Felt(1), 0).unwrap());
        assert!(gold_automorphism_check(9, 1, Felt(0x1a7), 3).unwrap());
        assert_eq!(
            gold_automorphism_check(9, 1, Felt(0), 0),
            Err(FamilyError::ZeroScalar)
        );
    }
}
