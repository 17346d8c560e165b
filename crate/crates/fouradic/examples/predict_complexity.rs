//! Closed-form prediction of the 4-adic complexity against the exact value.
//!
//! The gcd factors r1 = gcd(p+3, 4^q - 1) and r2 = gcd(q-1, 4^p - 1)
//! (divided by 3 when q = 1 mod 3) determine the complexity up to the
//! special-divisor branch, which in practice never occurs.

use fouradic::adic::{complexity_report, predict};
use fouradic::TwoPrimeParams;

fn main() {
    println!(
        "{:>5} {:>5} {:>4} {:>4} {:>22} {:>10}",
        "p", "q", "r1", "r2", "predicted", "exact"
    );
    for (p, q) in [
        (41u64, 5u64),
        (5, 89),
        (617, 5),
        (5, 1117),
        (233, 29),
        (1361, 5),
        (5, 2729),
    ] {
        let params = TwoPrimeParams::new(p, q).unwrap();
        let prediction = predict(&params).unwrap();
        let report = complexity_report(&params).unwrap();
        assert!(report.consistent);
        println!(
            "{:>5} {:>5} {:>4} {:>4} {:>22} {:>10}",
            p,
            q,
            prediction.r1,
            prediction.r2,
            format!("{:?}", prediction.phi_set),
            report.phi_exact,
        );
    }
}
