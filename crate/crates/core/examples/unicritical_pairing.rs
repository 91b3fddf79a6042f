//! The pairing verdict for x^d1 + c1 and x^d2 + c2 over Q and over Q(i).

use splitdyn::algebra::Field;
use splitdyn::classify::{classify_unicritical_pair, UnicriticalMap};
use splitdyn::cli::parse_field_element;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d1, c1, d2, c2) in [(3, 1, 3, -1), (2, 1, 2, -1), (5, 2, 5, -2), (4, 3, 4, 3), (2, -2, 2, -2), (3, 1, 2, 1)] {
        let v = classify_unicritical_pair(&UnicriticalMap::from_int(d1, c1)?, &UnicriticalMap::from_int(d2, c2)?)?;
        println!("x^{d1} + {c1} vs x^{d2} + {c2}: {}", serde_json::to_string(&v)?);
    }
    let k = Field::extension_from_ints(&[1, 0, 1])?;
    let u1 = UnicriticalMap::new(5, parse_field_element("1", &k)?)?;
    let u2 = UnicriticalMap::new(5, parse_field_element("t", &k)?)?;
    println!("over Q(i), x^5 + 1 vs x^5 + i: {}", serde_json::to_string(&classify_unicritical_pair(&u1, &u2)?)?);
    Ok(())
}
