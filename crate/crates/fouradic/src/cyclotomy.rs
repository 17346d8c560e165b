//! Generalized cyclotomic classes of order 4 modulo pq.
//!
//! For distinct odd primes p, q with gcd(p-1, q-1) = 4, a common primitive
//! root g of p and q together with the CRT element h (h = g mod p, h = 1
//! mod q) splits the units of Z_pq into four classes
//! D_i = { g^s h^i : 0 <= s < e }, e = (p-1)(q-1)/4. The remaining residues
//! are the nonzero multiples of p (set P), of q (set Q), and zero (R).
//!
//! The module builds the full residue labeling, counts the order-4
//! cyclotomic numbers (i,j) = |(1 + D_i) ∩ D_j| both by enumeration and by
//! the closed-form tables parameterized by p*q = a^2 + 4b^2, and counts
//! solutions of x + y = target with x, y in prescribed classes.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// The arithmetic frame: the pair (p, q) plus the derived generator data.
///
/// Construction validates every structural requirement; downstream code
/// assumes a valid frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoPrimeParams {
    p: u64,
    q: u64,
    g: u64,
    h: u64,
    e: u64,
}

impl TwoPrimeParams {
    /// Validates the pair and derives (g, h, e).
    ///
    /// `g` is the smallest common primitive root of p and q, so the whole
    /// structure is a deterministic function of the ordered pair.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !arith::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if p == q {
            return Err(Error::EqualPrimes);
        }
        let d = arith::gcd(p - 1, q - 1);
        if d != 4 {
            return Err(Error::GcdConstraint { p, q, found: d });
        }
        // keep 6pq + 1 and 1 + 2*lambda*pq inside u64
        match p.checked_mul(q) {
            Some(pq) if pq <= u64::MAX / 8 => {}
            _ => return Err(Error::PairTooLarge { p, q }),
        }
        let g = find_common_primitive_root(p, q)?;
        let h = derive_h(p, q, g);
        let e = (p - 1) * (q - 1) / 4;
        // The order of g mod pq is lcm(p-1, q-1) = e; check it rather than
        // trust the derivation.
        debug_assert_eq!(arith::order_dividing(g, p * q, e), e);
        Ok(Self { p, q, g, h, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The common primitive root of p and q used to generate the classes.
    pub fn g(&self) -> u64 {
        self.g
    }

    /// The CRT element with h = g (mod p), h = 1 (mod q).
    pub fn h(&self) -> u64 {
        self.h
    }

    /// Class size e = (p-1)(q-1)/4, also the order of g mod pq.
    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn pq(&self) -> u64 {
        self.p * self.q
    }

    /// Whether (p-1)(q-1)/16 is even. This single bit selects the closed-form
    /// table, the solution-count branches and the reversal behaviour; it is
    /// even exactly when p = q + 4 (mod 8) and odd exactly when
    /// p = q = 5 (mod 8).
    pub fn parity_even(&self) -> bool {
        ((self.p - 1) * (self.q - 1) / 16).is_multiple_of(2)
    }
}

/// Label of a residue mod pq: one of the four unit classes, the nonzero
/// multiples of p or of q, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    D0,
    D1,
    D2,
    D3,
    P,
    Q,
    R,
}

impl ClassLabel {
    /// Index 0..=3 for unit classes, `None` otherwise.
    pub fn unit_index(self) -> Option<usize> {
        match self {
            ClassLabel::D0 => Some(0),
            ClassLabel::D1 => Some(1),
            ClassLabel::D2 => Some(2),
            ClassLabel::D3 => Some(3),
            _ => None,
        }
    }

    pub fn unit(i: usize) -> Result<Self> {
        match i {
            0 => Ok(ClassLabel::D0),
            1 => Ok(ClassLabel::D1),
            2 => Ok(ClassLabel::D2),
            3 => Ok(ClassLabel::D3),
            _ => Err(Error::BadClassIndex(i)),
        }
    }
}

/// Total labeling of the residues 0..pq-1.
#[derive(Debug, Clone)]
pub struct ClassTable {
    params: TwoPrimeParams,
    labels: Vec<ClassLabel>,
}

/// Builds the class table by direct enumeration of g^s h^i mod pq.
pub fn build_class_table(params: &TwoPrimeParams) -> ClassTable {
    let pq = params.pq();
    let (p, q, g, h, e) = (params.p, params.q, params.g, params.h, params.e);
    let mut labels = vec![None; pq as usize];
    for i in 0..4u64 {
        let mut x = arith::pow_mod(h, i, pq);
        for _ in 0..e {
            let slot = &mut labels[x as usize];
            assert!(slot.is_none(), "residue {x} assigned twice");
            *slot = Some(ClassLabel::unit(i as usize).unwrap());
            x = arith::mul_mod(x, g, pq);
        }
    }
    for k in 1..q {
        labels[(k * p) as usize] = Some(ClassLabel::P);
    }
    for k in 1..p {
        labels[(k * q) as usize] = Some(ClassLabel::Q);
    }
    labels[0] = Some(ClassLabel::R);
    let labels: Vec<ClassLabel> = labels
        .into_iter()
        .map(|l| l.expect("classes must cover every residue"))
        .collect();
    ClassTable {
        params: *params,
        labels,
    }
}

impl ClassTable {
    pub fn params(&self) -> &TwoPrimeParams {
        &self.params
    }

    pub fn pq(&self) -> u64 {
        self.params.pq()
    }

    pub fn label_of(&self, residue: u64) -> ClassLabel {
        self.labels[(residue % self.pq()) as usize]
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// All residues carrying the given label, ascending.
    pub fn members(&self, label: ClassLabel) -> Vec<u64> {
        (0..self.pq())
            .filter(|&r| self.labels[r as usize] == label)
            .collect()
    }
}

/// 4x4 matrix of cyclotomic numbers; entry `[i][j]` is |(1 + D_i) ∩ D_j|.
pub type CycloMatrix = [[u64; 4]; 4];

/// Smallest g < pq that is a primitive root of both p and q.
pub fn find_common_primitive_root(p: u64, q: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::EqualPrimes);
    }
    // by CRT there are phi(p-1) * phi(q-1) > 0 common primitive roots
    Ok((2..p * q)
        .find(|&g| arith::is_primitive_root(g, p) && arith::is_primitive_root(g, q))
        .expect("distinct primes admit a common primitive root"))
}

/// CRT solve for h = g (mod p), h = 1 (mod q); unique in 0..pq.
pub fn derive_h(p: u64, q: u64, g: u64) -> u64 {
    let pq = p * q;
    let q_inv_p = arith::inv_mod(q % p, p);
    let p_inv_q = arith::inv_mod(p % q, q);
    let term_p = arith::mul_mod(arith::mul_mod(g % p, q % pq, pq), q_inv_p, pq);
    let term_q = arith::mul_mod(p % pq, p_inv_q, pq);
    (term_p + term_q) % pq
}

/// Counts (i,j) = |(1 + D_i) ∩ D_j| by scanning every residue once.
pub fn cyclotomic_numbers_bruteforce(table: &ClassTable) -> CycloMatrix {
    let pq = table.pq();
    let mut counts = [[0u64; 4]; 4];
    for x in 0..pq {
        if let Some(i) = table.label_of(x).unit_index() {
            if let Some(j) = table.label_of((x + 1) % pq).unit_index() {
                counts[i][j] += 1;
            }
        }
    }
    counts
}

/// All (a, b), b != 0, with pq = a^2 + 4 b^2 and a = 1 (mod 4).
///
/// Both signs of b are candidates; a is sign-fixed by the congruence. The
/// composite pq generally admits several representations.
pub fn partition_candidates(pq: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1i64;
    loop {
        for sa in [a, -a] {
            if sa.rem_euclid(4) != 1 {
                continue;
            }
            let rem = pq as i64 - sa * sa;
            if rem <= 0 || rem % 4 != 0 {
                continue;
            }
            let b2 = (rem / 4) as u64;
            let b = b2.isqrt();
            if b > 0 && b * b == b2 {
                out.push((sa, b as i64));
                out.push((sa, -(b as i64)));
            }
        }
        a += 1;
        if (a * a) as u64 > pq {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The five closed-form table constants for the parity of `params`.
///
/// Even parity uses (A, B, C, D, E); odd parity uses (F, G, H, I, J). Returns
/// an error when any constant fails the required divisibility by 8.
pub fn formula_constants(params: &TwoPrimeParams, a: i64, b: i64) -> Result<[i64; 5]> {
    let p = params.p() as i64;
    let q = params.q() as i64;
    let m = ((p - 2) * (q - 2) - 1) / 4;
    let raw: [i64; 5] = if params.parity_even() {
        [
            -a + 2 * m + 3,
            -a - 4 * b + 2 * m - 1,
            3 * a + 2 * m - 1,
            -a + 4 * b + 2 * m - 1,
            a + 2 * m + 1,
        ]
    } else {
        [
            3 * a + 2 * m + 5,
            -a + 4 * b + 2 * m + 1,
            -a + 2 * m + 1,
            -a - 4 * b + 2 * m + 1,
            a + 2 * m - 1,
        ]
    };
    let mut out = [0i64; 5];
    for (slot, v) in out.iter_mut().zip(raw) {
        if v % 8 != 0 {
            return Err(Error::NonIntegralConstants { a, b });
        }
        *slot = v / 8;
    }
    Ok(out)
}

/// Lays the five constants out into the 4x4 table for the given parity.
pub fn matrix_from_constants(parity_even: bool, c: &[i64; 5]) -> [[i64; 4]; 4] {
    let [c0, c1, c2, c3, c4] = *c;
    if parity_even {
        // (A B C D / E E D B / A E A E / E D B E)
        [
            [c0, c1, c2, c3],
            [c4, c4, c3, c1],
            [c0, c4, c0, c4],
            [c4, c3, c1, c4],
        ]
    } else {
        // (F G H I / G I J J / H J H J / I J J G)
        [
            [c0, c1, c2, c3],
            [c1, c3, c4, c4],
            [c2, c4, c2, c4],
            [c3, c4, c4, c1],
        ]
    }
}

/// Closed-form cyclotomic numbers for a calibrated representation (a, b).
pub fn cyclotomic_numbers_formula(params: &TwoPrimeParams, a: i64, b: i64) -> Result<CycloMatrix> {
    let consts = formula_constants(params, a, b)?;
    let signed = matrix_from_constants(params.parity_even(), &consts);
    let mut out = [[0u64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if signed[i][j] < 0 {
                return Err(Error::NonIntegralConstants { a, b });
            }
            out[i][j] = signed[i][j] as u64;
        }
    }
    Ok(out)
}

/// Selects the unique (a, b) whose closed-form table reproduces the
/// brute-force matrix exactly.
///
/// Zero or multiple matches signal a structural bug and fail loudly.
pub fn quadratic_partition(table: &ClassTable, brute: &CycloMatrix) -> Result<(i64, i64)> {
    let params = table.params();
    let pq = params.pq();
    let mut matches = Vec::new();
    for (a, b) in partition_candidates(pq) {
        let Ok(consts) = formula_constants(params, a, b) else {
            continue;
        };
        let candidate = matrix_from_constants(params.parity_even(), &consts);
        let hit = (0..4).all(|i| (0..4).all(|j| candidate[i][j] == brute[i][j] as i64));
        if hit {
            matches.push((a, b));
        }
    }
    match matches.as_slice() {
        [unique] => Ok(*unique),
        [] => Err(Error::PartitionNotFound { pq }),
        _ => Err(Error::PartitionAmbiguous {
            pq,
            matches: matches.len(),
        }),
    }
}

/// Cyclotomic numbers together with the calibrated quadratic-partition data.
#[derive(Debug, Clone, Serialize)]
pub struct CyclotomicTable {
    pub counts: CycloMatrix,
    pub a: i64,
    pub b: i64,
    /// M = ((p-2)(q-2) - 1) / 4, the shared offset in the table constants.
    pub m: i64,
    pub parity_even: bool,
}

impl CyclotomicTable {
    /// Brute-force count, calibrate (a, b), and cross-check the closed form.
    pub fn calibrated(table: &ClassTable) -> Result<Self> {
        let params = table.params();
        let brute = cyclotomic_numbers_bruteforce(table);
        let (a, b) = quadratic_partition(table, &brute)?;
        let formula = cyclotomic_numbers_formula(params, a, b)?;
        debug_assert_eq!(formula, brute);
        let p = params.p() as i64;
        let q = params.q() as i64;
        Ok(Self {
            counts: brute,
            a,
            b,
            m: ((p - 2) * (q - 2) - 1) / 4,
            parity_even: params.parity_even(),
        })
    }
}

/// Which family of targets a pair-sum count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// x + y = 0 (mod pq)
    Zero,
    /// x + y = u*p (mod pq), 1 <= u <= q-1
    MultipleOfP,
    /// x + y = v*q (mod pq), 1 <= v <= p-1
    MultipleOfQ,
}

impl TargetKind {
    fn name(self) -> &'static str {
        match self {
            TargetKind::Zero => "zero",
            TargetKind::MultipleOfP => "multiple-of-p",
            TargetKind::MultipleOfQ => "multiple-of-q",
        }
    }
}

/// Counts pairs x in D_l, y in D_{l+k} with x + y = target (mod pq).
///
/// The target must match `kind`: 0, a nonzero multiple of p that is not a
/// multiple of q, or vice versa. The congruence mod pq already pins the
/// residues mod p and mod q, so no further side conditions apply.
pub fn count_pair_solutions(
    table: &ClassTable,
    l: usize,
    k: usize,
    kind: TargetKind,
    target: u64,
) -> Result<u64> {
    if l > 3 {
        return Err(Error::BadClassIndex(l));
    }
    if k > 3 {
        return Err(Error::BadClassIndex(k));
    }
    let params = table.params();
    let pq = params.pq();
    let bad = || Error::InvalidTarget {
        kind: kind.name(),
        target,
        modulus: pq,
    };
    match kind {
        TargetKind::Zero => {
            if target != 0 {
                return Err(bad());
            }
        }
        TargetKind::MultipleOfP => {
            if target == 0
                || target >= pq
                || !target.is_multiple_of(params.p())
                || target.is_multiple_of(params.q())
            {
                return Err(bad());
            }
        }
        TargetKind::MultipleOfQ => {
            if target == 0
                || target >= pq
                || !target.is_multiple_of(params.q())
                || target.is_multiple_of(params.p())
            {
                return Err(bad());
            }
        }
    }
    let x_label = ClassLabel::unit(l)?;
    let y_label = ClassLabel::unit((l + k) % 4)?;
    let mut count = 0;
    for x in 0..pq {
        if table.label_of(x) == x_label {
            let y = (target + pq - x) % pq;
            if table.label_of(y) == y_label {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The closed-form count that `count_pair_solutions` must reproduce.
///
/// The distinguished branch applies when k = 0 with odd parity or k = 2 with
/// even parity; every other (k, parity) combination uses the generic value.
pub fn expected_pair_count(params: &TwoPrimeParams, k: usize, kind: TargetKind) -> u64 {
    let p = params.p();
    let q = params.q();
    let special = special_branch(params, k);
    match kind {
        TargetKind::Zero => {
            if special {
                (p - 1) * (q - 1) / 4
            } else {
                0
            }
        }
        TargetKind::MultipleOfP => {
            if special {
                (p - 1) * (q - 5) / 16
            } else {
                (p - 1) * (q - 1) / 16
            }
        }
        TargetKind::MultipleOfQ => {
            if special {
                (p - 5) * (q - 1) / 16
            } else {
                (p - 1) * (q - 1) / 16
            }
        }
    }
}

/// True for the (k, parity) combinations that carry the distinguished
/// solution counts (and, downstream, the distinguished Delta term).
pub fn special_branch(params: &TwoPrimeParams, k: usize) -> bool {
    (k == 0 && !params.parity_even()) || (k == 2 && params.parity_even())
}
