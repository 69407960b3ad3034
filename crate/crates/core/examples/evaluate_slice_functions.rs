//! Polynomials, two-slice functions and JSON specs.
use slicereg::fixtures;
use slicereg::fnspec::parse_function_spec;
use slicereg::Quaternion;

fn main() {
    let x = Quaternion::new(0.3, 0.4, -0.2, 0.7);

    let f = parse_function_spec(r#"{"type": "polynomial", "coeffs": [[0,0,1,0],[1,0,0,0]]}"#).unwrap();
    println!("x + j at i: {}", f.evaluate(Quaternion::I).unwrap());

    // f(α + Iβ) = 1 - Ii: 2 on the slice of i, 0 on the semislice of -i.
    let e = fixtures::exe1();
    println!("exe1 at {x}: {}", e.evaluate(x).unwrap());
    println!("exe1 at -i: {}", e.evaluate(-Quaternion::I).unwrap());

    let h = fixtures::h();
    println!("h(-j) = {}", h.evaluate(-Quaternion::J).unwrap());
    println!(
        "h on C_-i^+: {}",
        h.evaluate(Quaternion::new(0.7, -1.3, 0.0, 0.0)).unwrap()
    );
}
