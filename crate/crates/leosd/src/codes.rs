//! Binary linear block codes: extended BCH construction over GF(2^m),
//! random codes, plain-text storage, and encoding.

use crate::gf2::{ge_systematic, BitMatrix, BitVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum CodeError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed code file: {0}")]
    Malformed(String),
    #[error("generator matrix is rank-deficient")]
    RankDeficient,
    #[error("design parameter t={t} leaves no nonzero dimension for m={m}")]
    DesignTooStrong { m: u32, t: usize },
    #[error("no BCH dimension {k} exists at length {n}")]
    NoSuchDimension { n: usize, k: usize },
    #[error("field degree m={0} outside supported range 3..=8")]
    UnsupportedDegree(u32),
}

// ============================================================================
// GF(2^m)
// ============================================================================

/// An element of GF(2^m) in polynomial basis (bit `i` is the coefficient of
/// `x^i` modulo the field's primitive polynomial).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf2mElement(pub u32);

/// GF(2^m) with log/antilog tables built from a fixed primitive polynomial.
pub struct Gf2mField {
    pub m: u32,
    /// Field order 2^m.
    pub order: u32,
    /// Primitive polynomial bits, degree m.
    pub primitive_poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Conventional primitive polynomials per degree.
const PRIMITIVE_POLYS: [(u32, u32); 6] = [
    (3, 0b1011),
    (4, 0b1_0011),
    (5, 0b10_0101),
    (6, 0b100_0011),
    (7, 0b1000_1001),
    (8, 0b1_0001_1101),
];

impl Gf2mField {
    pub fn new(m: u32) -> Result<Self, CodeError> {
        let &(_, poly) = PRIMITIVE_POLYS
            .iter()
            .find(|&&(deg, _)| deg == m)
            .ok_or(CodeError::UnsupportedDegree(m))?;
        let order = 1u32 << m;
        let group = order - 1;
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..group {
            exp[i as usize] = x;
            log[x as usize] = i;
            x <<= 1;
            if x & order != 0 {
                x ^= poly;
            }
        }
        // Doubled table lets mul skip the mod on exponent sums.
        for i in group..2 * group {
            exp[i as usize] = exp[(i - group) as usize];
        }
        Ok(Self {
            m,
            order,
            primitive_poly: poly,
            exp,
            log,
        })
    }

    /// The primitive element α = x.
    #[must_use]
    pub fn alpha(&self) -> Gf2mElement {
        Gf2mElement(2)
    }

    /// α^i (exponent taken modulo 2^m − 1).
    #[must_use]
    pub fn alpha_pow(&self, i: u64) -> Gf2mElement {
        Gf2mElement(self.exp[(i % u64::from(self.order - 1)) as usize])
    }

    #[must_use]
    pub fn add(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        Gf2mElement(a.0 ^ b.0)
    }

    #[must_use]
    pub fn mul(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        if a.0 == 0 || b.0 == 0 {
            return Gf2mElement(0);
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Gf2mElement(self.exp[s])
    }
}

/// Cyclotomic coset of `s` modulo 2^m − 1.
fn cyclotomic_coset(s: u64, m: u32) -> Vec<u64> {
    let modulus = (1u64 << m) - 1;
    let mut coset = vec![s % modulus];
    let mut x = (s * 2) % modulus;
    while x != s % modulus {
        coset.push(x);
        x = (x * 2) % modulus;
    }
    coset
}

/// Minimal polynomial of α^s over GF(2): the product of (x + α^i) across the
/// cyclotomic coset of s. All coefficients land in {0, 1}.
fn minimal_polynomial(field: &Gf2mField, s: u64) -> Vec<bool> {
    let coset = cyclotomic_coset(s, field.m);
    let mut poly = vec![Gf2mElement(1)];
    for &i in &coset {
        let root = field.alpha_pow(i);
        let mut next = vec![Gf2mElement(0); poly.len() + 1];
        for (d, &coef) in poly.iter().enumerate() {
            next[d + 1] = field.add(next[d + 1], coef);
            next[d] = field.add(next[d], field.mul(coef, root));
        }
        poly = next;
    }
    poly.iter()
        .map(|c| {
            assert!(c.0 <= 1, "minimal polynomial has a coefficient outside GF(2)");
            c.0 == 1
        })
        .collect()
}

/// Binary polynomial product (coefficient vectors, lowest degree first).
fn poly_mul_gf2(a: &[bool], b: &[bool]) -> Vec<bool> {
    let mut out = vec![false; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] ^= bj;
            }
        }
    }
    out
}

// ============================================================================
// LinearCode
// ============================================================================

/// A binary linear block code given by a full-rank generator matrix, with an
/// optional parity-check matrix and known minimum distance.
#[derive(Clone)]
pub struct LinearCode {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub g: BitMatrix,
    pub h: Option<BitMatrix>,
    pub d_min: Option<usize>,
}

impl LinearCode {
    /// Wraps a generator matrix, checking rank and (when `h` is given) that
    /// `G · H^T = 0`.
    pub fn new(
        name: impl Into<String>,
        g: BitMatrix,
        h: Option<BitMatrix>,
        d_min: Option<usize>,
    ) -> Result<Self, CodeError> {
        let (k, n) = (g.rows(), g.cols());
        if k == 0 || k >= n {
            return Err(CodeError::Malformed(format!(
                "need 0 < k < n, got k={k}, n={n}"
            )));
        }
        if g.rank() != k {
            return Err(CodeError::RankDeficient);
        }
        if let Some(h) = &h {
            if h.rows() != n - k || h.cols() != n {
                return Err(CodeError::Malformed(format!(
                    "parity-check matrix must be {}x{n}, got {}x{}",
                    n - k,
                    h.rows(),
                    h.cols()
                )));
            }
            if !g.mul(&h.transpose()).is_zero() {
                return Err(CodeError::Malformed(
                    "generator and parity-check matrices are inconsistent".into(),
                ));
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            k,
            g,
            h,
            d_min,
        })
    }

    /// `b · G`.
    #[must_use]
    pub fn encode(&self, b: &BitVector) -> BitVector {
        assert_eq!(b.len(), self.k, "message length must be k");
        self.g.vec_mul(b)
    }

    /// True iff `c` is a codeword (checked against H when present, else by
    /// rank).
    #[must_use]
    pub fn contains(&self, c: &BitVector) -> bool {
        assert_eq!(c.len(), self.n);
        match &self.h {
            Some(h) => h.mul_vec(c).is_zero(),
            None => {
                let stacked = self.g.vstack(&BitMatrix::from_rows(&[c.clone()]));
                stacked.rank() == self.k
            }
        }
    }
}

/// Encodes a message with the given code (`b · G`).
#[must_use]
pub fn encode(code: &LinearCode, b: &BitVector) -> BitVector {
    code.encode(b)
}

/// Derives a parity-check matrix from a full-rank generator matrix.
#[must_use]
pub fn parity_check_from_generator(g: &BitMatrix) -> BitMatrix {
    let (k, n) = (g.rows(), g.cols());
    let ge = ge_systematic(g);
    assert_eq!(ge.rank, k, "generator must have full rank");
    let p = ge.r.submatrix(0..k, k..n);
    let h_sys = p.transpose().hstack(&BitMatrix::identity(n - k));
    h_sys.permute_cols(&ge.pi.inverse())
}

// ============================================================================
// Constructions
// ============================================================================

/// Builds the length-2^m extended BCH code of design parameter `t` (roots
/// α, α^2, ..., α^2t): cyclotomic cosets give the minimal polynomials, their
/// product is the generator polynomial g(x) of the cyclic BCH(2^m−1, k)
/// code, and an overall even-parity bit extends it to length 2^m.
pub fn build_ebch(m: u32, t: usize) -> Result<LinearCode, CodeError> {
    let field = Gf2mField::new(m)?;
    let n_cyclic = (1usize << m) - 1;

    let mut gen_poly = vec![true];
    let mut covered: Vec<u64> = Vec::new();
    for s in 1..=(2 * t as u64) {
        let coset = cyclotomic_coset(s, m);
        let rep = *coset.iter().min().unwrap();
        if covered.contains(&rep) {
            continue;
        }
        covered.push(rep);
        gen_poly = poly_mul_gf2(&gen_poly, &minimal_polynomial(&field, s));
    }
    let deg = gen_poly.len() - 1;
    if deg >= n_cyclic {
        return Err(CodeError::DesignTooStrong { m, t });
    }
    let k = n_cyclic - deg;

    let n = n_cyclic + 1;
    let g = BitMatrix::from_fn(k, n, |r, c| {
        if c < n_cyclic {
            c >= r && c - r < gen_poly.len() && gen_poly[c - r]
        } else {
            // Overall parity of the shifted generator polynomial row.
            gen_poly.iter().filter(|&&b| b).count() % 2 == 1
        }
    });
    let h = parity_check_from_generator(&g);
    let d_min = KNOWN_EBCH_DISTANCES
        .iter()
        .find(|&&(nn, kk, _)| nn == n && kk == k)
        .map(|&(_, _, d)| d);
    LinearCode::new(format!("eBCH({n},{k})"), g, Some(h), d_min)
}

/// Minimum distances of the extended BCH codes used in the experiments.
const KNOWN_EBCH_DISTANCES: [(usize, usize, usize); 6] = [
    (8, 4, 4),
    (64, 30, 14),
    (64, 16, 24),
    (128, 85, 14),
    (128, 50, 28),
    (128, 78, 16),
];

/// Builds the extended BCH code of length 2^m with the requested dimension
/// by sweeping the design parameter.
pub fn build_ebch_by_k(m: u32, target_k: usize) -> Result<LinearCode, CodeError> {
    for t in 1.. {
        match build_ebch(m, t) {
            Ok(code) if code.k == target_k => return Ok(code),
            Ok(code) if code.k < target_k => break,
            Ok(_) => continue,
            Err(CodeError::DesignTooStrong { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Err(CodeError::NoSuchDimension {
        n: 1 << m,
        k: target_k,
    })
}

/// A random code: i.i.d. uniform generator bits, redrawn until full rank.
/// Deterministic for a given seed.
#[must_use]
pub fn random_code(n: usize, k: usize, seed: u64) -> LinearCode {
    assert!(0 < k && k < n, "need 0 < k < n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = BitMatrix::random(k, n, &mut rng);
        if g.rank() == k {
            let h = parity_check_from_generator(&g);
            return LinearCode::new(format!("random({n},{k},seed={seed})"), g, Some(h), None)
                .expect("full-rank by construction");
        }
    }
}

// ============================================================================
// Storage
// ============================================================================

/// Serializes a code: header "k n", then the k rows of G as 0/1 strings,
/// then optionally a line "H" followed by the n−k rows of H.
pub fn save_code(code: &LinearCode, path: &Path) -> Result<(), CodeError> {
    let mut out = String::new();
    writeln!(out, "{} {}", code.k, code.n).unwrap();
    for r in 0..code.k {
        for c in 0..code.n {
            out.push(if code.g.get(r, c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    if let Some(h) = &code.h {
        out.push_str("H\n");
        for r in 0..code.n - code.k {
            for c in 0..code.n {
                out.push(if h.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Parses the format written by [`save_code`]. `name` labels the resulting
/// code. Lengths are capped at 1024 so malformed headers cannot request
/// absurd allocations.
pub fn parse_code(text: &str, name: &str) -> Result<LinearCode, CodeError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CodeError::Malformed("empty file".into()))?;
    let mut parts = header.split_whitespace();
    let k: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| CodeError::Malformed("header must be \"k n\"".into()))?;
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| CodeError::Malformed("header must be \"k n\"".into()))?;
    if parts.next().is_some() {
        return Err(CodeError::Malformed("header must be \"k n\"".into()));
    }
    if k == 0 || k >= n {
        return Err(CodeError::Malformed(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    if n > 1024 {
        return Err(CodeError::Malformed(format!(
            "block length {n} exceeds the supported maximum of 1024"
        )));
    }

    let parse_row = |line: &str, what: &str| -> Result<BitVector, CodeError> {
        if line.len() != n {
            return Err(CodeError::Malformed(format!(
                "{what} row has {} characters, expected {n}",
                line.len()
            )));
        }
        let mut v = BitVector::zeros(n);
        for (i, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(CodeError::Malformed(format!(
                        "{what} row contains non-binary character {ch:?}"
                    )))
                }
            }
        }
        Ok(v)
    };

    let mut g_rows = Vec::with_capacity(k);
    for _ in 0..k {
        let line = lines
            .next()
            .ok_or_else(|| CodeError::Malformed("missing generator rows".into()))?;
        g_rows.push(parse_row(line, "generator")?);
    }
    let g = BitMatrix::from_rows(&g_rows);

    let h = match lines.next() {
        None => None,
        Some("H") => {
            let mut h_rows = Vec::with_capacity(n - k);
            for _ in 0..n - k {
                let line = lines
                    .next()
                    .ok_or_else(|| CodeError::Malformed("missing parity-check rows".into()))?;
                h_rows.push(parse_row(line, "parity-check")?);
            }
            if lines.next().is_some() {
                return Err(CodeError::Malformed("trailing content after H rows".into()));
            }
            Some(BitMatrix::from_rows(&h_rows))
        }
        Some(other) => {
            return Err(CodeError::Malformed(format!(
                "expected \"H\" sentinel or end of file, got {other:?}"
            )))
        }
    };

    LinearCode::new(name.to_string(), g, h, None)
}

/// Reads and parses a code file; the file stem becomes the code name.
pub fn load_code(path: &Path) -> Result<LinearCode, CodeError> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map_or_else(|| "loaded".to_string(), |s| s.to_string_lossy().into_owned());
    parse_code(&text, &name)
}

// ============================================================================
// Distance oracle
// ============================================================================

/// Exhaustive minimum distance over all 2^k − 1 nonzero codewords, walking
/// messages in Gray-code order so each step is one row XOR. Requires k ≤ 20.
#[must_use]
pub fn min_distance_bruteforce(code: &LinearCode) -> usize {
    assert!(code.k <= 20, "brute-force distance limited to k <= 20");
    let mut c = BitVector::zeros(code.n);
    let mut best = usize::MAX;
    for msg in 1u64..(1 << code.k) {
        let flip = msg.trailing_zeros() as usize;
        c.xor_assign_words(code.g.row_words(flip));
        best = best.min(c.weight());
    }
    best
}
