//! Distinct real roots in (lo, hi] by Sturm sequences, all exact.
//!
//! cargo run --example sturm_roots -- lo hi c0 c1 c2 ...
//! e.g. `-- -3 3 -2 0 1` counts the roots of x² - 2 in (-3, 3].

use isoflow::sturm::{integer, RationalPolynomial, SturmChain};
use num_bigint::BigInt;
use num_rational::BigRational;

fn parse(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((n, d)) => BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap()),
        None => BigRational::from_integer(s.parse::<BigInt>().expect("integer or fraction")),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (lo, hi, p) = if args.len() >= 3 {
        let coeffs = args[2..].iter().map(|s| parse(s)).collect();
        (parse(&args[0]), parse(&args[1]), RationalPolynomial::new(coeffs))
    } else {
        // (x - 1)² (x + 2) (x² - 1/2)
        let p = &(&RationalPolynomial::from_integers(&[-1, 1]).pow(2) * &RationalPolynomial::from_integers(&[2, 1]))
            * &RationalPolynomial::new(vec![BigRational::new((-1).into(), 2.into()), integer(0), integer(1)]);
        (integer(-3), integer(3), p)
    };
    let chain = SturmChain::new(&p).expect("nonzero polynomial");
    println!("p = {p}");
    for (k, e) in chain.elements().iter().enumerate() {
        println!("p{k} = {e}");
    }
    match chain.count_roots(&lo, &hi) {
        Ok(n) => println!("{n} distinct real roots in ({lo}, {hi}]"),
        Err(e) => println!("cannot count: {e}"),
    }
}
