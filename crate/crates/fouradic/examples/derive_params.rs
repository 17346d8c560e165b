//! Derive the generator frame (g, h, e) for a few valid pairs.

use fouradic::TwoPrimeParams;

fn main() {
    for (p, q) in [(5, 13), (13, 5), (5, 41), (41, 5), (233, 29)] {
        let params = TwoPrimeParams::new(p, q).expect("valid pair");
        println!(
            "(p, q) = ({:>3}, {:>3}): g = {:>2}, h = {:>5}, e = {:>4}, parity {}",
            params.p(),
            params.q(),
            params.g(),
            params.h(),
            params.e(),
            if params.parity_even() { "even" } else { "odd" },
        );
    }

    // the gcd constraint rejects most prime pairs
    let err = TwoPrimeParams::new(7, 11).unwrap_err();
    println!("(7, 11) rejected: {err}");
}
