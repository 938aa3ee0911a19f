//! Exact certificate that F < 0 on (0, 1), and what a tampered polynomial
//! does to it.

use isoflow::sturm::{certify_gap_negativity, certify_with_q, RationalPolynomial, PRINTED_COEFFICIENTS};

fn main() {
    let cert = certify_gap_negativity();
    print!("{}", cert.report());
    println!("k = {}", cert.k);

    let mut c = PRINTED_COEFFICIENTS;
    c[2] = -c[2];
    let tampered = certify_with_q(RationalPolynomial::from_integers(&c).compose_square());
    println!();
    println!("with the x^4 coefficient of q flipped:");
    print!("{}", tampered.report());
}
