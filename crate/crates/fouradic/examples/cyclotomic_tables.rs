//! Cyclotomic numbers of order 4: brute-force counts against the closed-form
//! tables, with the calibrated representation pq = a^2 + 4b^2.

use fouradic::cyclotomy::{
    build_class_table, cyclotomic_numbers_bruteforce, cyclotomic_numbers_formula,
    partition_candidates, quadratic_partition,
};
use fouradic::TwoPrimeParams;

fn main() {
    for (p, q) in [(5u64, 13u64), (5, 41)] {
        let params = TwoPrimeParams::new(p, q).unwrap();
        let table = build_class_table(&params);
        let brute = cyclotomic_numbers_bruteforce(&table);

        println!("pair ({p}, {q}), pq = {}", params.pq());
        println!(
            "  representations a^2 + 4b^2: {:?}",
            partition_candidates(params.pq())
        );
        let (a, b) = quadratic_partition(&table, &brute).unwrap();
        println!("  calibrated (a, b) = ({a}, {b})");

        let formula = cyclotomic_numbers_formula(&params, a, b).unwrap();
        for i in 0..4 {
            println!("  brute {:?}  formula {:?}", brute[i], formula[i]);
        }
        assert_eq!(brute, formula);
        println!();
    }
}
