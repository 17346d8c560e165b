//! Sweep all valid ordered pairs with pq <= 2000 and confirm the special
//! candidate divisor 2pq+1 / 6pq+1 never divides the sequence value.

use fouradic::scan::{run_scan, write_csv, ScanOptions};

fn main() {
    let rows = run_scan(&ScanOptions {
        exact: true,
        ..ScanOptions::up_to(2_000)
    })
    .unwrap();

    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    assert!(
        rows.iter().all(|r| !r.d_divides),
        "a counterexample would be a discovery"
    );
    let prime_candidates = rows.iter().filter(|r| r.candidate_prime).count();
    eprintln!(
        "{} pairs, {} with a prime candidate divisor, none dividing",
        rows.len(),
        prime_candidates
    );
}
