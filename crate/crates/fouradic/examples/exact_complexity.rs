//! Exact 4-adic complexity of one pair, with the gcd split of 4^pq - 1.

use fouradic::adic::complexity_report;
use fouradic::TwoPrimeParams;

fn main() {
    let params = TwoPrimeParams::new(41, 5).unwrap();
    let report = complexity_report(&params).unwrap();

    let pq = params.pq();
    println!("pair (41, 5), period {pq}");
    println!(
        "phi_4 = {} (period minus {})",
        report.phi_exact,
        pq - report.phi_exact
    );
    println!(
        "gcd(E(4), 4^pq - 1) = {} = {} * {} * {}",
        report.decomposition.gcd_total,
        report.decomposition.gcd_p,
        report.decomposition.gcd_q,
        report.decomposition.gcd_cofactor,
    );
    println!(
        "candidate divisor {}: prime = {}, divides = {}",
        report.probe.candidate_d, report.probe.candidate_prime, report.probe.divides,
    );
    assert!(report.consistent);
}
