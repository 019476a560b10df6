//! Lookup-table kernels for vectorial functions F: GF(2)^n -> GF(2)^n.
//!
//! The DDT is never materialized: rows are streamed by input difference with
//! one counter buffer per worker. Walsh spectra use an integer butterfly on
//! the sign vector of each component function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead, Write};
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{family_lut, FamilyError, FamilyParams, Vec3};
use crate::gf::{Felt, FieldCtx};

/// Widest table accepted anywhere (2^30 words).
pub const MAX_LUT_BITS: u32 = 30;
/// Widest table for the all-masks Walsh mode.
pub const MAX_WALSH_BITS: u32 = 20;

/// Rows per early-abort block; abort decisions are taken at block
/// boundaries so aborted reports do not depend on scheduling.
const DDT_BLOCK: u32 = 256;

#[derive(Debug, Error)]
pub enum LutError {
    #[error("table of width {n} needs {expected} entries, got {len}")]
    Length { n: u32, expected: usize, len: usize },
    #[error("entry {index:#x} = {value:#x} does not fit in {n} bits")]
    EntryOutOfRange { n: u32, index: usize, value: u32 },
    #[error("width {0} exceeds the supported {MAX_LUT_BITS} bits")]
    TooLarge(u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error)]
pub enum VectfunError {
    #[error("width {n} exceeds the limit {limit}")]
    TooLarge { n: u32, limit: u32 },
    #[error("derivative direction must be nonzero")]
    ZeroDirection,
    #[error("linear map is singular")]
    Singular,
    #[error("linear map width does not match a {0}-bit table")]
    WidthMismatch(u32),
    #[error("mask {0:#x} is zero or too wide")]
    BadMask(u32),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Lut(#[from] LutError),
}

/// Full lookup table of an n-bit to n-bit function.
#[derive(Clone, PartialEq, Eq)]
pub struct Lut {
    n: u32,
    table: Vec<u32>,
}

impl fmt::Debug for Lut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lut(n={}, {} entries)", self.n, self.table.len())
    }
}

impl Lut {
    pub fn new(n: u32, table: Vec<u32>) -> Result<Self, LutError> {
        if n > MAX_LUT_BITS {
            return Err(LutError::TooLarge(n));
        }
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(LutError::Length {
                n,
                expected,
                len: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >> n != 0) {
            return Err(LutError::EntryOutOfRange { n, index, value });
        }
        Ok(Lut { n, table })
    }

    pub fn identity(n: u32) -> Self {
        Lut::new(n, (0..1u32 << n).collect()).expect("identity fits")
    }

    pub fn from_fn(n: u32, f: impl Fn(u32) -> u32 + Sync) -> Result<Self, LutError> {
        if n > MAX_LUT_BITS {
            return Err(LutError::TooLarge(n));
        }
        let table = (0..1u32 << n).into_par_iter().map(&f).collect();
        Lut::new(n, table)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn get(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// Writes one lowercase hex word per line, index ascending.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut buf = io::BufWriter::new(&mut w);
        for v in &self.table {
            writeln!(buf, "{v:x}")?;
        }
        buf.flush()
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write_text(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("hex is ascii")
    }

    /// Reads the sbox text format; the width comes from the line count.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self, LutError> {
        let mut table = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v = u32::from_str_radix(t, 16).map_err(|e| LutError::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            table.push(v);
        }
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(LutError::Parse {
                line: len,
                msg: format!("{len} entries is not a power of two"),
            });
        }
        Lut::new(len.trailing_zeros(), table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdtReport {
    pub n: u32,
    pub max_uniformity: u32,
    /// DDT value -> number of (u != 0, v) cells holding it.
    pub spectrum: BTreeMap<u32, u64>,
    pub early_aborted: bool,
}

struct RowAcc {
    counters: Vec<u32>,
    hist: Vec<u64>,
    max: u32,
}

impl RowAcc {
    fn new(n: u32) -> Self {
        RowAcc {
            counters: vec![0; 1 << n],
            hist: vec![0; (1 << n) + 1],
            max: 0,
        }
    }

    fn row(mut self, table: &[u32], u: u32) -> Self {
        let size = table.len() as u32;
        let top = 1u32 << (31 - u.leading_zeros());
        // x and x^u land in the same cell; visit each pair once
        for base in (0..size).step_by(2 * top as usize) {
            for x in base..base + top {
                let v = table[x as usize] ^ table[(x ^ u) as usize];
                self.counters[v as usize] += 2;
            }
        }
        let mut sum = 0u64;
        // small values are counted in registers; repeated increments of one
        // histogram slot would serialize on memory
        let (mut zero, mut two, mut four) = (0u64, 0u64, 0u64);
        for c in self.counters.iter_mut() {
            let val = *c;
            debug_assert!(val % 2 == 0, "odd DDT entry");
            sum += val as u64;
            zero += (val == 0) as u64;
            two += (val == 2) as u64;
            four += (val == 4) as u64;
            if val > 4 {
                self.hist[val as usize] += 1;
            }
            self.max = self.max.max(val);
            *c = 0;
        }
        for (v, count) in [(0, zero), (2, two), (4, four)] {
            if count > 0 {
                self.hist[v] += count;
            }
        }
        assert_eq!(sum, size as u64, "DDT row {u:#x} does not sum to 2^n");
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for (h, o) in self.hist.iter_mut().zip(other.hist) {
            *h += o;
        }
        self.max = self.max.max(other.max);
        self
    }
}

/// Differential uniformity of `lut`, streaming the DDT row by row.
///
/// With `abort_above`, processing stops at the end of the first block of
/// rows that contains an entry above the bound.
pub fn differential_uniformity(lut: &Lut, abort_above: Option<u32>) -> DdtReport {
    differential_uniformity_until(lut, abort_above, None).expect("no deadline")
}

/// [`differential_uniformity`] that gives up once `deadline` has passed,
/// checked between row blocks.
pub fn differential_uniformity_until(
    lut: &Lut,
    abort_above: Option<u32>,
    deadline: Option<Instant>,
) -> Option<DdtReport> {
    let n = lut.n;
    let size = 1u32 << n;
    let table = lut.table();
    let mut total = RowAcc {
        counters: Vec::new(),
        hist: vec![0; size as usize + 1],
        max: 0,
    };
    let mut early_aborted = false;
    let mut start = 1u32;
    while start < size {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return None;
        }
        let end = if abort_above.is_some() || deadline.is_some() {
            size.min(start.saturating_add(DDT_BLOCK))
        } else {
            size
        };
        let block = (start..end)
            .into_par_iter()
            .fold(|| RowAcc::new(n), |acc, u| acc.row(table, u))
            .reduce_with(RowAcc::merge)
            .expect("non-empty block");
        total
            .hist
            .iter_mut()
            .zip(block.hist)
            .for_each(|(h, o)| *h += o);
        total.max = total.max.max(block.max);
        start = end;
        if abort_above.is_some_and(|b| total.max > b) && start < size {
            early_aborted = true;
            break;
        }
    }
    let spectrum = total
        .hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(v, &c)| (v as u32, c))
        .collect();
    Some(DdtReport {
        n,
        max_uniformity: total.max,
        spectrum,
        early_aborted,
    })
}

/// Preimage structure of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImageClass {
    Bijective,
    /// 0 maps to 0 and every nonzero image has exactly `r` nonzero preimages.
    RToOne {
        r: u32,
    },
    /// preimage count -> number of image values with that count.
    Irregular {
        histogram: BTreeMap<u32, u64>,
    },
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageClass::Bijective => write!(f, "bijective"),
            ImageClass::RToOne { r } => write!(f, "{r}-to-1"),
            ImageClass::Irregular { .. } => write!(f, "irregular"),
        }
    }
}

pub fn image_multiplicity(lut: &Lut) -> ImageClass {
    let mut counts = vec![0u32; lut.len()];
    for &v in lut.table() {
        counts[v as usize] += 1;
    }
    if counts.iter().all(|&c| c == 1) {
        return ImageClass::Bijective;
    }
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    for &c in counts.iter().skip(1).filter(|&&c| c > 0) {
        *histogram.entry(c).or_default() += 1;
    }
    let zero_only_from_zero = lut.get(0) == 0 && counts[0] == 1;
    if zero_only_from_zero && histogram.len() == 1 {
        let r = *histogram.keys().next().unwrap();
        return ImageClass::RToOne { r };
    }
    if !zero_only_from_zero {
        histogram.insert(0, counts[0] as u64);
    }
    ImageClass::Irregular { histogram }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskSpectrum {
    pub v: u32,
    /// W(u, v) value -> multiplicity over all u.
    pub values: BTreeMap<i64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshReport {
    pub n: u32,
    pub masks: Vec<MaskSpectrum>,
}

impl WalshReport {
    /// Union of all per-mask multisets.
    pub fn combined(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for m in &self.masks {
            for (&w, &c) in &m.values {
                *out.entry(w).or_default() += c;
            }
        }
        out
    }
}

/// In-place Walsh-Hadamard butterfly.
pub fn fwht(data: &mut [i32]) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for chunk in data.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Exact spectra W(u, v) = sum_x (-1)^(v.F(x) + u.x) for the requested masks
/// (every nonzero mask when `masks` is `None`).
pub fn walsh_spectrum(lut: &Lut, masks: Option<&[u32]>) -> Result<WalshReport, VectfunError> {
    let n = lut.n;
    let masks: Vec<u32> = match masks {
        Some(ms) => {
            if let Some(&bad) = ms.iter().find(|&&v| v == 0 || v >> n != 0) {
                return Err(VectfunError::BadMask(bad));
            }
            ms.to_vec()
        }
        None => {
            if n > MAX_WALSH_BITS {
                return Err(VectfunError::TooLarge {
                    n,
                    limit: MAX_WALSH_BITS,
                });
            }
            (1..1u32 << n).collect()
        }
    };
    let table = lut.table();
    let spectra = masks
        .par_iter()
        .map_init(
            || vec![0i32; table.len()],
            |buf, &v| {
                for (slot, &fx) in buf.iter_mut().zip(table) {
                    *slot = if (fx & v).count_ones() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                }
                fwht(buf);
                let mut values = BTreeMap::new();
                let mut energy = 0i64;
                for &w in buf.iter() {
                    energy += (w as i64) * (w as i64);
                    *values.entry(w as i64).or_default() += 1;
                }
                assert_eq!(energy, 1i64 << (2 * n), "Parseval fails for mask {v:#x}");
                MaskSpectrum { v, values }
            },
        )
        .collect();
    Ok(WalshReport { n, masks: spectra })
}

/// Zeros of L_y(x) = F(x + y) + F(x) + F(y), packed words, from a table.
pub fn derivative_kernel_lut(lut: &Lut, y: u32) -> Vec<u32> {
    let t = lut.table();
    let fy = t[y as usize];
    (0..lut.len() as u32)
        .filter(|&x| t[(x ^ y) as usize] ^ t[x as usize] ^ fy == 0)
        .collect()
}

/// Kernel of the derivative map in direction `y`, by enumeration.
pub fn derivative_kernel(p: &FamilyParams, y: Vec3) -> Result<Vec<Vec3>, VectfunError> {
    if y.is_zero() {
        return Err(VectfunError::ZeroDirection);
    }
    let lut = family_lut(p)?;
    let m = p.ctx().m();
    Ok(derivative_kernel_lut(&lut, y.pack(m))
        .into_iter()
        .map(|w| Vec3::unpack(w, m))
        .collect())
}

/// The set y * GF(2^e), packed and sorted.
pub fn scaled_subfield(p: &FamilyParams, y: Vec3, e: u32) -> Vec<u32> {
    let ctx = p.ctx();
    let mut out: Vec<u32> = ctx
        .subfield_elements(e)
        .expect("e divides m")
        .into_iter()
        .map(|l| y.scale(ctx, l).pack(ctx.m()))
        .collect();
    out.sort_unstable();
    out
}

/// Largest divisor e of m such that every derivative map L_y is
/// GF(2^e)-linear; exhaustive for m <= 4, sampled otherwise.
pub fn compute_core(p: &FamilyParams) -> Result<u32, VectfunError> {
    let lut = family_lut(p)?;
    Ok(compute_core_lut(p, &lut))
}

/// [`compute_core`] on a prebuilt family table.
pub fn compute_core_lut(p: &FamilyParams, lut: &Lut) -> u32 {
    let ctx = p.ctx();
    let m = ctx.m();
    let size = lut.len() as u32;
    let t = lut.table();
    let (ys, xs): (Vec<u32>, Vec<u32>) = if m <= 4 {
        ((1..size).collect(), (0..size).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x636f7265);
        let ys = (0..64).map(|_| rng.gen_range(1..size)).collect();
        let xs = (0..1024).map(|_| rng.gen_range(0..size)).collect();
        (ys, xs)
    };
    let scale = |l, w| Vec3::unpack(w, m).scale(ctx, l).pack(m);
    let mut divisors: Vec<u32> = (1..=m).filter(|&e| m.is_multiple_of(e)).collect();
    divisors.reverse();
    for e in divisors {
        // the relation is closed under products of scalars, so a generator
        // of the subfield's unit group stands for all of them
        let lambdas: Vec<_> = subfield_generator(ctx, e).into_iter().collect();
        let scaled: Vec<Vec<u32>> = lambdas
            .iter()
            .map(|&l| (0..size).map(|w| scale(l, w)).collect())
            .collect();
        let linear = ys.par_iter().all(|&y| {
            let fy = t[y as usize];
            let deriv: Vec<u32> = (0..size)
                .map(|x| t[(x ^ y) as usize] ^ t[x as usize] ^ fy)
                .collect();
            scaled.iter().all(|s| {
                xs.iter()
                    .all(|&x| deriv[s[x as usize] as usize] == s[deriv[x as usize] as usize])
            })
        });
        if linear {
            return e;
        }
    }
    unreachable!("every map is GF(2)-linear")
}

fn subfield_generator(ctx: &FieldCtx, e: u32) -> Option<Felt> {
    let units = (1u64 << e) - 1;
    ctx.subfield_elements(e)
        .expect("divisor")
        .into_iter()
        .filter(|l| l.0 > 1)
        .find(|&l| {
            let mut x = l;
            let mut order = 1;
            while x != Felt::ONE {
                x = ctx.mul(x, l);
                order += 1;
            }
            order == units
        })
}

/// Invertible GF(2)-linear map on n-bit words, stored by column images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: u32,
    cols: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(n: u32) -> Self {
        BitMatrix {
            n,
            cols: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// Column i is the image of the i-th unit vector.
    pub fn from_columns(n: u32, cols: Vec<u32>) -> Result<Self, VectfunError> {
        if cols.len() != n as usize || cols.iter().any(|c| c >> n != 0) {
            return Err(VectfunError::WidthMismatch(n));
        }
        let mat = BitMatrix { n, cols };
        if mat.rank() != n {
            return Err(VectfunError::Singular);
        }
        Ok(mat)
    }

    pub fn random_invertible<R: Rng>(n: u32, rng: &mut R) -> Self {
        loop {
            let cols = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
            if let Ok(m) = Self::from_columns(n, cols) {
                return m;
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> u32 {
        let mut rows = self.cols.clone();
        let mut rank = 0;
        for bit in 0..self.n {
            let Some(pivot) = (rank as usize..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank as usize, pivot);
            let pr = rows[rank as usize];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank as usize && *r >> bit & 1 == 1 {
                    *r ^= pr;
                }
            }
            rank += 1;
        }
        rank
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }
}

/// Linear map on GF(2^m)^3 words: a permutation of the three m-bit blocks
/// (output block i takes input block `blocks[i]`), optionally followed by a
/// general bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap3 {
    blocks: [usize; 3],
    matrix: Option<BitMatrix>,
}

impl Default for LinMap3 {
    fn default() -> Self {
        Self::identity()
    }
}

impl LinMap3 {
    pub fn identity() -> Self {
        LinMap3 {
            blocks: [0, 1, 2],
            matrix: None,
        }
    }

    pub fn blocks(blocks: [usize; 3]) -> Result<Self, VectfunError> {
        let mut sorted = blocks;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(VectfunError::Singular);
        }
        Ok(LinMap3 {
            blocks,
            matrix: None,
        })
    }

    pub fn matrix(m: BitMatrix) -> Self {
        LinMap3 {
            blocks: [0, 1, 2],
            matrix: Some(m),
        }
    }

    pub fn block_perm(&self) -> [usize; 3] {
        self.blocks
    }

    fn check(&self, n: u32) -> Result<(), VectfunError> {
        if self.blocks != [0, 1, 2] && !n.is_multiple_of(3) {
            return Err(VectfunError::WidthMismatch(n));
        }
        if let Some(mat) = &self.matrix {
            if mat.n != n {
                return Err(VectfunError::WidthMismatch(n));
            }
            if mat.rank() != n {
                return Err(VectfunError::Singular);
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: u32, n: u32) -> u32 {
        let mut y = x;
        if self.blocks != [0, 1, 2] {
            let m = n / 3;
            let mask = (1u32 << m) - 1;
            y = self.blocks.iter().enumerate().fold(0, |acc, (i, &src)| {
                acc | ((x >> (src as u32 * m) & mask) << (i as u32 * m))
            });
        }
        match &self.matrix {
            Some(mat) => mat.apply(y),
            None => y,
        }
    }
}

/// `result[x] = l1(lut[l2(x)])`.
pub fn lut_transform(l1: &LinMap3, lut: &Lut, l2: &LinMap3) -> Result<Lut, VectfunError> {
    let n = lut.n();
    l1.check(n)?;
    l2.check(n)?;
    Ok(Lut::from_fn(n, |x| l1.apply(lut.get(l2.apply(x, n)), n))?)
}

/// Sorted, deduplicated packed words; used to compare point sets.
pub fn sorted_set(words: impl IntoIterator<Item = u32>) -> Vec<u32> {
    words
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
