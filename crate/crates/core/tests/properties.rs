use proptest::prelude::*;

use triproj::family::{family_lut, Gold};
use triproj::gf::{gcd_power, Sign};
use triproj::vectfun::{differential_uniformity, lut_transform, walsh_spectrum, BitMatrix};
use triproj::{FamilyParams, Felt, FieldCtx, LinMap3, Lut, SkewPoly, Vec3};

fn field_and_elems() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (2u32..=16).prop_flat_map(|m| {
        let top = 1u32 << m;
        (Just(m), 0..top, 0..top, 0..top)
    })
}

fn poly(m: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..1u32 << m, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((m, x, y, z) in field_and_elems()) {
        let f = FieldCtx::with_degree(m).unwrap();
        let (x, y, z) = (Felt(x), Felt(y), Felt(z));
        prop_assert_eq!(f.mul(x, y), f.mul(y, x));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(x, y), f.mul_schoolbook(x, y));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Felt::ONE);
        }
        // Frobenius is additive and multiplicative
        let k = 1 + x.0 % (m - 1).max(1);
        prop_assert_eq!(f.frobenius(f.add(x, y), k), f.add(f.frobenius(x, k), f.frobenius(y, k)));
        prop_assert_eq!(f.frobenius(f.mul(x, y), k), f.mul(f.frobenius(x, k), f.frobenius(y, k)));
    }

    #[test]
    fn skew_division_identities(
        m in 2u32..=5,
        k_seed in 0u32..8,
        p in poly(5, 7),
        r in poly(5, 4),
    ) {
        let f = FieldCtx::with_degree(m).unwrap();
        let k = 1 + k_seed % (m - 1);
        let mask = f.mask();
        let mk = |c: &[u32]| SkewPoly::new(f.clone(), k, c.iter().map(|&v| Felt(v & mask)).collect());
        let (p, r) = (mk(&p), mk(&r));
        prop_assume!(!r.is_zero());
        let (q, s) = p.divmod_right(&r).unwrap();
        prop_assert_eq!(q.mul(&r).unwrap().add(&s).unwrap(), p.clone());
        prop_assert!(s.degree().is_none_or(|d| d < r.degree().unwrap()));
        let (q, s) = p.divmod_left(&r).unwrap();
        prop_assert_eq!(r.mul(&q).unwrap().add(&s).unwrap(), p.clone());
        prop_assert!(s.degree().is_none_or(|d| d < r.degree().unwrap()));
        if !p.is_zero() {
            let g = p.gcrd(&r).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(g.right_divides(&p).unwrap());
            prop_assert!(g.right_divides(&r).unwrap());
            let l = p.lclm(&r).unwrap();
            prop_assert!(p.right_divides(&l).unwrap());
            prop_assert!(r.right_divides(&l).unwrap());
            prop_assert_eq!(
                l.degree().unwrap() + g.degree().unwrap(),
                p.degree().unwrap() + r.degree().unwrap()
            );
        }
    }

    #[test]
    fn skew_multiplication_is_associative(
        k_seed in 0u32..8,
        a in poly(4, 4),
        b in poly(4, 4),
        c in poly(4, 4),
    ) {
        let f = FieldCtx::with_degree(4).unwrap();
        let k = 1 + k_seed % 3;
        let mk = |v: &[u32]| SkewPoly::new(f.clone(), k, v.iter().map(|&x| Felt(x)).collect());
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pack_roundtrip(m in 2u32..=10, w in any::<u32>()) {
        let w = w & ((1u32 << (3 * m)) - 1);
        prop_assert_eq!(Vec3::unpack(w, m).pack(m), w);
    }

    #[test]
    fn family_is_quadratic(
        m in 2u32..=4,
        k_seed in 0u32..4,
        a in 1u32..16,
        b in 0u32..16,
        c in 0u32..16,
        u in any::<u32>(),
        v in any::<u32>(),
    ) {
        let f = FieldCtx::with_degree(m).unwrap();
        let k = 1 + k_seed % (m - 1);
        let mask = f.mask();
        prop_assume!(a & mask != 0);
        let p = FamilyParams::new(f, k, Felt(a & mask), Felt(b & mask), Felt(c & mask)).unwrap();
        let lut = family_lut(&p).unwrap();
        let n = 3 * m;
        let (u, v) = (u & ((1 << n) - 1), v & ((1 << n) - 1));
        // the second derivative is constant in x
        let dd = |x: u32| lut.get(x) ^ lut.get(x ^ u) ^ lut.get(x ^ v) ^ lut.get(x ^ u ^ v);
        prop_assert_eq!(lut.get(0), 0);
        for x in [0, 1, u ^ 3, v ^ 5, (1 << n) - 1] {
            prop_assert_eq!(dd(x), dd(0));
        }
    }

    #[test]
    fn uniformity_invariant_under_linear_maps(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = FieldCtx::with_degree(2).unwrap();
        let p = FamilyParams::new(f, 1, Felt(1), Felt(1), Felt(0)).unwrap();
        let lut = family_lut(&p).unwrap();
        let l1 = LinMap3::matrix(BitMatrix::random_invertible(6, &mut rng));
        let l2 = LinMap3::matrix(BitMatrix::random_invertible(6, &mut rng));
        let moved = lut_transform(&l1, &lut, &l2).unwrap();
        let a = differential_uniformity(&lut, None);
        let b = differential_uniformity(&moved, None);
        prop_assert_eq!(a.spectrum, b.spectrum);
        prop_assert_eq!(
            walsh_spectrum(&lut, None).unwrap().combined(),
            walsh_spectrum(&moved, None).unwrap().combined()
        );
    }

    #[test]
    fn gcd_closed_form(m in 1u32..=62, n in 1u32..=62) {
        let d = gcd(m, n);
        prop_assert_eq!(gcd_power(m, n, Sign::Minus), (1u64 << d) - 1);
        let plus = gcd_power(m, n, Sign::Plus);
        prop_assert!(plus == 1 || plus == (1u64 << d) + 1);
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn gold_is_apn_for_coprime_exponents() {
    for n in 3..=8 {
        for i in 1..n {
            match Gold::new(n, i) {
                Ok(g) => {
                    let du = differential_uniformity(&g.lut().unwrap(), None).max_uniformity;
                    assert_eq!(du, 2, "n={n} i={i}");
                }
                Err(_) => assert_ne!(gcd(n, i), 1),
            }
        }
    }
}

#[test]
fn sbox_text_roundtrip() {
    let f = FieldCtx::with_degree(3).unwrap();
    let p = FamilyParams::new(f, 1, Felt(1), Felt(1), Felt(0)).unwrap();
    let lut = family_lut(&p).unwrap();
    let text = lut.to_text();
    assert_eq!(text.lines().count(), 512);
    assert!(text
        .lines()
        .all(|l| l == l.to_lowercase() && u32::from_str_radix(l, 16).is_ok()));
    let back = Lut::read_text(text.as_bytes()).unwrap();
    assert_eq!(back, lut);
}
