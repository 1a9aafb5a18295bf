use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polydep::depend::{multiplicative_dependence, SearchParameters};
use polydep::factorize;
use polydep::IntPolynomial;
use std::collections::BTreeMap;

fn main() {
    let mut args = std::env::args().skip(1);
    let h: i64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(20);
    let params = SearchParameters::for_degree_height(3, h as f64);
    let mut shapes: BTreeMap<String, u64> = BTreeMap::new();
    let mut samples: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    for a2 in -h..=h {
        for a1 in -h..=h {
            for a0 in -h..=h {
                let f = IntPolynomial::from_i64(&[a0, a1, a2, 1]);
                let fac = factorize::factor(&f);
                if fac.is_irreducible() {
                    continue;
                }
                if f.evaluate(&one).is_zero() || f.evaluate(&minus_one).is_zero() {
                    continue;
                }
                let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.degree()).collect();
                if !(degs.contains(&2) && degs.contains(&1)) {
                    continue;
                }
                let v = multiplicative_dependence(&f, &params).unwrap();
                if !v.is_dependent() {
                    continue;
                }
                let quad = &fac.factors.iter().find(|(g, _)| g.degree() == 2).unwrap().0;
                let lin = &fac.factors.iter().find(|(g, _)| g.degree() == 1).unwrap().0;
                let b = quad.coeff(0).to_i64().unwrap();
                let a = quad.coeff(1).to_i64().unwrap();
                let s = -lin.coeff(0).to_i64().unwrap();
                let key = if s == 0 {
                    "zero-root".to_string()
                } else if b.abs() == 1 {
                    "unit-norm-quad".to_string()
                } else if a == 0 || a * a == b || a * a == 2 * b || a * a == 3 * b {
                    "torsion-quad".to_string()
                } else if b == s || b == -s || b == s * s || b == -s * s || s == b * b || s == -b * b
                {
                    "norm-power".to_string()
                } else {
                    format!("other a={a} b={b} s={s}")
                };
                let short = if key.starts_with("other") { "other".to_string() } else { key.clone() };
                *shapes.entry(short.clone()).or_default() += 1;
                let list = samples.entry(short).or_default();
                if list.len() < 12 {
                    list.push(format!("{f}  [quad {quad}; s={s}]"));
                }
            }
        }
    }
    println!("H = {h}");
    println!("{shapes:#?}");
    for (k, v) in &samples {
        println!("== {k}");
        for s in v {
            println!("   {s}");
        }
    }
}
