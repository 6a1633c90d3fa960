//! Certificates for the smallest biquadratic case and a cyclic-cubic one.
//! Pass `--json` to print the full certificate.

use tame_approx::certificate::{certify, CertifyOptions};

fn main() {
    let json = std::env::args().any(|a| a == "--json");
    for (ell, n, p) in [(2, 1, 3), (2, 1, 5), (3, 1, 7)] {
        let cert = certify(ell, n, p, None, CertifyOptions::default()).unwrap();
        if json {
            println!("{}", cert.to_json());
            continue;
        }
        println!(
            "ell = {ell}, n = {n}, p = {p}, q = {:?}: {}",
            cert.q, cert.conclusion
        );
        for c in &cert.checks {
            println!(
                "  {:<6} {:<26} {}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.witness
            );
        }
        assert!(cert.is_certified());
    }

    let bad = certify(2, 1, 3, Some(15), CertifyOptions::default()).unwrap();
    println!("with q = 15: {}", bad.conclusion);
}
