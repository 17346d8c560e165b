//! Generate one period of the quaternary sequence and show both on-disk
//! encodings.

use fouradic::sequence::{generate, SequenceFormat};
use fouradic::TwoPrimeParams;

fn main() {
    let params = TwoPrimeParams::new(5, 13).unwrap();
    let seq = generate(&params);

    println!("period {}:", seq.period());
    println!("{}", seq.to_digit_string());

    let hist = seq.histogram();
    println!(
        "digit counts: 0 -> {}, 1 -> {}, 2 -> {}, 3 -> {}",
        hist[0], hist[1], hist[2], hist[3]
    );
    let e = params.e();
    assert_eq!(hist, [e + params.q() - 1, e, e + params.p(), e]);

    println!();
    println!(
        "digits encoding:     {}",
        seq.serialize(SequenceFormat::Digits).trim_end()
    );
    println!(
        "structured encoding: {}",
        seq.serialize(SequenceFormat::Structured).trim_end()
    );
}
