//! Exact m-adic complexity and the 4-adic structure of the two-prime
//! sequence.
//!
//! The complexity of a T-periodic sequence with generating value S(m) is
//! ceil(log_m((m^T - 1) / gcd(S(m), m^T - 1))). Everything here is exact
//! big-integer arithmetic; the ceiling of the logarithm is computed by
//! integer bracketing, never through floating point.
//!
//! For the two-prime sequence the module also provides the gcd split of
//! 4^pq - 1 into its three pairwise-coprime parts, the closed-form
//! prediction of the possible complexity values, and the probe for the
//! special prime divisor 2pq+1 / 6pq+1.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::cyclotomy::{ClassLabel, ClassTable, TwoPrimeParams};
use crate::error::{Error, Result};
use crate::sequence::{generate_from_table, QuaternarySequence};

/// 4^exp - 1.
pub fn four_pow_minus_one(exp: u64) -> BigUint {
    (BigUint::one() << (2 * exp as usize)) - 1u32
}

/// Exact value of sum `digits[i] * m^i`, accumulated from the top
/// coefficient.
pub fn evaluate_big(seq: &QuaternarySequence, m: u64) -> BigUint {
    let m = BigUint::from(m);
    let mut acc = BigUint::zero();
    for &d in seq.digits().iter().rev() {
        acc = acc * &m + d;
    }
    acc
}

/// `evaluate_big(seq, m) % modulus` in one pass of multiply-adds mod N.
pub fn evaluate_mod(seq: &QuaternarySequence, m: u64, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u32) {
        return Err(Error::BadModulus);
    }
    let m = BigUint::from(m);
    let mut acc = BigUint::zero();
    for &d in seq.digits().iter().rev() {
        acc = (acc * &m + d) % modulus;
    }
    Ok(acc)
}

/// Smallest k with m^k >= x, by squaring to bracket and then binary search.
pub fn ceil_log(m: u64, x: &BigUint) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadBase(m));
    }
    if x.is_zero() {
        return Err(Error::LogOfZero);
    }
    if x.is_one() {
        return Ok(0);
    }
    let m_big = BigUint::from(m);
    let mut pow = m_big.clone();
    let mut k = 1u64;
    while pow < *x {
        pow = &pow * &pow;
        k *= 2;
    }
    if k == 1 {
        return Ok(1);
    }
    // invariant: m^lo < x <= m^hi
    let (mut lo, mut hi) = (k / 2, k);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if m_big.pow(mid as u32) >= *x {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The m-adic complexity of one period.
pub fn madic_complexity(seq: &QuaternarySequence, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadBase(m));
    }
    let period_value = BigUint::from(m).pow(seq.period() as u32) - 1u32;
    let s = evaluate_big(seq, m);
    let g = s.gcd(&period_value);
    ceil_log(m, &(period_value / g))
}

/// Exact value of the class indicator polynomial of D_j at 4^w:
/// sum over u in D_j of 4^{(u*w) mod pq}.
pub fn hall_value(table: &ClassTable, j: usize, w: u64) -> Result<BigUint> {
    let label = ClassLabel::unit(j)?;
    let pq = table.pq();
    if arith::gcd(w % pq, pq) != 1 {
        return Err(Error::NotCoprime {
            base: w,
            modulus: pq,
        });
    }
    let mut digits = vec![0u8; pq as usize];
    for u in 0..pq {
        if table.label_of(u) == label {
            digits[(arith::mul_mod(u, w, pq)) as usize] = 1;
        }
    }
    Ok(BigUint::from_radix_le(&digits, 4).expect("digits are < 4"))
}

/// `hall_value(table, j, w) % modulus`.
pub fn hall_value_mod(table: &ClassTable, j: usize, w: u64, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u32) {
        return Err(Error::BadModulus);
    }
    Ok(hall_value(table, j, w)? % modulus)
}

/// The weighted combination U(4^w) = H_1(4^w) + 2 H_2(4^w) + 3 H_3(4^w),
/// evaluated exactly in a single pass.
pub fn u_value(table: &ClassTable, w: u64) -> Result<BigUint> {
    let pq = table.pq();
    if arith::gcd(w % pq, pq) != 1 {
        return Err(Error::NotCoprime {
            base: w,
            modulus: pq,
        });
    }
    let mut digits = vec![0u8; pq as usize];
    for u in 0..pq {
        let weight = match table.label_of(u) {
            ClassLabel::D1 => 1,
            ClassLabel::D2 => 2,
            ClassLabel::D3 => 3,
            _ => continue,
        };
        digits[(arith::mul_mod(u, w, pq)) as usize] = weight;
    }
    Ok(BigUint::from_radix_le(&digits, 4).expect("digits are < 4"))
}

/// Which congruence class mod 8 the pair falls into. A valid pair admits
/// exactly these two shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// p = q + 4 (mod 8); the special divisor candidate is 2pq + 1.
    Mixed,
    /// p = q = 5 (mod 8); the special divisor candidate is 6pq + 1.
    Both5,
}

impl CaseTag {
    pub fn of(params: &TwoPrimeParams) -> Self {
        if params.p() % 8 == 5 && params.q() % 8 == 5 {
            CaseTag::Both5
        } else {
            CaseTag::Mixed
        }
    }

    /// The only prime that can divide the cofactor part of the gcd.
    pub fn candidate_divisor(self, pq: u64) -> u64 {
        match self {
            CaseTag::Mixed => 2 * pq + 1,
            CaseTag::Both5 => 6 * pq + 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Mixed => "mixed",
            CaseTag::Both5 => "both5",
        }
    }
}

/// Closed-form prediction of the possible 4-adic complexity values.
#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub p: u64,
    pub q: u64,
    /// gcd(p + 3, 4^q - 1).
    pub r1: u64,
    /// gcd(q - 1, 4^p - 1), divided by 3 exactly when q = 1 (mod 3).
    pub r2: u64,
    pub case_tag: CaseTag,
    pub candidate_d: u64,
    pub candidate_prime: bool,
    /// One or two possible complexities; the second member appears only when
    /// the candidate divisor is prime.
    pub phi_set: BTreeSet<u64>,
}

/// Computes the prediction for a validated pair.
///
/// Also enforces min(r1, r2) = 1, so a violation of that expectation is
/// surfaced as an error instead of being silently folded into max(r1, r2).
pub fn predict(params: &TwoPrimeParams) -> Result<Prediction> {
    let (p, q) = (params.p(), params.q());
    let r1_big = BigUint::from(p + 3).gcd(&four_pow_minus_one(q));
    let r1 = r1_big.to_u64().expect("r1 <= p + 3");
    let mut r2 = BigUint::from(q - 1)
        .gcd(&four_pow_minus_one(p))
        .to_u64()
        .expect("r2 <= q - 1");
    if q % 3 == 1 {
        assert_eq!(r2 % 3, 0, "3 must divide gcd(q-1, 4^p-1) when q = 1 mod 3");
        r2 /= 3;
    }
    if r1 != 1 && r2 != 1 {
        return Err(Error::BothFactorsNontrivial {
            r1: r1.to_string(),
            r2: r2.to_string(),
        });
    }
    let case_tag = CaseTag::of(params);
    let candidate_d = case_tag.candidate_divisor(params.pq());
    let candidate_prime = arith::is_prime(candidate_d);
    let full = four_pow_minus_one(params.pq());
    let mx = r1.max(r2);
    let mut phi_set = BTreeSet::new();
    phi_set.insert(ceil_log(4, &(&full / mx))?);
    if candidate_prime {
        phi_set.insert(ceil_log(4, &(&full / (mx * BigUint::from(candidate_d))))?);
    }
    Ok(Prediction {
        p,
        q,
        r1,
        r2,
        case_tag,
        candidate_d,
        candidate_prime,
        phi_set,
    })
}

fn big_str<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The three-way gcd split of 4^pq - 1 against the sequence value E(4).
#[derive(Debug, Clone, Serialize)]
pub struct GcdDecomposition {
    /// gcd(E(4), 4^p - 1)
    #[serde(serialize_with = "big_str")]
    pub gcd_p: BigUint,
    /// gcd(E(4), (4^q - 1) / 3)
    #[serde(serialize_with = "big_str")]
    pub gcd_q: BigUint,
    /// gcd(E(4), 3 (4^pq - 1) / ((4^p - 1)(4^q - 1)))
    #[serde(serialize_with = "big_str")]
    pub gcd_cofactor: BigUint,
    /// gcd(E(4), 4^pq - 1)
    #[serde(serialize_with = "big_str")]
    pub gcd_total: BigUint,
}

/// The cofactor 3 (4^pq - 1) / ((4^p - 1)(4^q - 1)), exactly.
pub fn cofactor(p: u64, q: u64) -> BigUint {
    let numerator = 3u32 * four_pow_minus_one(p * q);
    let denominator = four_pow_minus_one(p) * four_pow_minus_one(q);
    let (quot, rem) = numerator.div_rem(&denominator);
    assert!(
        rem.is_zero(),
        "3 (4^pq - 1) must be divisible by (4^p - 1)(4^q - 1)"
    );
    quot
}

/// Splits gcd(E(4), 4^pq - 1) along the three factors and checks that the
/// factors are pairwise coprime and multiply back to the total.
///
/// `seq` must be the generated sequence for `params`.
pub fn gcd_decomposition(
    params: &TwoPrimeParams,
    seq: &QuaternarySequence,
) -> Result<GcdDecomposition> {
    let (p, q) = (params.p(), params.q());
    let e4 = evaluate_big(seq, 4);
    let n_p = four_pow_minus_one(p);
    let n_q3 = {
        let (quot, rem) = four_pow_minus_one(q).div_rem(&BigUint::from(3u32));
        assert!(rem.is_zero(), "3 divides 4^q - 1");
        quot
    };
    let gcd_p = e4.gcd(&n_p);
    let gcd_q = e4.gcd(&n_q3);
    let gcd_cofactor = e4.gcd(&cofactor(p, q));
    let gcd_total = e4.gcd(&four_pow_minus_one(p * q));

    let product = &gcd_p * &gcd_q * &gcd_cofactor;
    if product != gcd_total {
        return Err(Error::FactorizationMismatch(format!(
            "({p},{q}): {gcd_p} * {gcd_q} * {gcd_cofactor} != {gcd_total}"
        )));
    }
    for (x, y, what) in [
        (&gcd_p, &gcd_q, "p/q"),
        (&gcd_p, &gcd_cofactor, "p/cofactor"),
        (&gcd_q, &gcd_cofactor, "q/cofactor"),
    ] {
        if !x.gcd(y).is_one() {
            return Err(Error::FactorizationMismatch(format!(
                "({p},{q}): parts {what} share a factor"
            )));
        }
    }
    Ok(GcdDecomposition {
        gcd_p,
        gcd_q,
        gcd_cofactor,
        gcd_total,
    })
}

/// Outcome of testing whether the case's special prime divides E(4).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivisorProbe {
    pub candidate_d: u64,
    pub candidate_prime: bool,
    pub divides: bool,
}

/// Tests divisibility of E(4) by the special candidate 2pq+1 / 6pq+1.
///
/// A composite candidate cannot divide the cofactor part, so by default it
/// short-circuits to `divides = false` without touching the sequence;
/// `force_eval` runs the modular evaluation regardless.
pub fn probe_special_divisor(
    params: &TwoPrimeParams,
    seq: &QuaternarySequence,
    force_eval: bool,
) -> DivisorProbe {
    let candidate_d = CaseTag::of(params).candidate_divisor(params.pq());
    let candidate_prime = arith::is_prime(candidate_d);
    let divides = if candidate_prime || force_eval {
        evaluate_mod(seq, 4, &BigUint::from(candidate_d))
            .expect("candidate divisor is >= 2")
            .is_zero()
    } else {
        false
    };
    DivisorProbe {
        candidate_d,
        candidate_prime,
        divides,
    }
}

/// Full exact-plus-predicted complexity analysis of one pair.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityReport {
    pub prediction: Prediction,
    pub decomposition: GcdDecomposition,
    pub probe: DivisorProbe,
    pub phi_exact: u64,
    /// Whether the exact complexity lies in the predicted set.
    pub consistent: bool,
}

/// Generates the sequence and assembles the complete report.
pub fn complexity_report(params: &TwoPrimeParams) -> Result<ComplexityReport> {
    let table = crate::cyclotomy::build_class_table(params);
    let seq = generate_from_table(&table);
    let prediction = predict(params)?;
    let decomposition = gcd_decomposition(params, &seq)?;
    let probe = probe_special_divisor(params, &seq, false);
    let phi_exact = ceil_log(
        4,
        &(four_pow_minus_one(params.pq()) / &decomposition.gcd_total),
    )?;
    let consistent = prediction.phi_set.contains(&phi_exact);
    Ok(ComplexityReport {
        prediction,
        decomposition,
        probe,
        phi_exact,
        consistent,
    })
}

/// Exact-integer form of the complexity lower bound for p < q:
/// 4^(phi+1) * p * q^2 > 4^pq.
pub fn exceeds_lower_bound(params: &TwoPrimeParams, phi_exact: u64) -> bool {
    let (p, q) = (params.p(), params.q());
    let lhs = (BigUint::one() << (2 * (phi_exact + 1) as usize)) * p * (q * q);
    lhs > (BigUint::one() << (2 * params.pq() as usize))
}
