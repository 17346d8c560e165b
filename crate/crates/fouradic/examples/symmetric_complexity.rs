//! Reversing the sequence preserves its 4-adic complexity, so the symmetric
//! complexity (the minimum over both directions) equals the complexity
//! itself.

use fouradic::adic::madic_complexity;
use fouradic::sequence::generate;
use fouradic::TwoPrimeParams;

fn main() {
    for (p, q) in [(5u64, 13u64), (5, 41), (41, 5), (13, 17)] {
        let params = TwoPrimeParams::new(p, q).unwrap();
        let seq = generate(&params);
        let reversed = seq.reverse();

        let phi = madic_complexity(&seq, 4).unwrap();
        let phi_rev = madic_complexity(&reversed, 4).unwrap();
        println!("({p:>2}, {q:>2}): phi = {phi}, reversed phi = {phi_rev}");
        assert_eq!(phi, phi_rev);
    }
}
