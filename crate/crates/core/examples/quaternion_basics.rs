//! Hamilton products, inverses and slice coordinates.
use slicereg::quaternion::{characteristic_poly, to_slice_coords};
use slicereg::{ImaginaryUnit, Quaternion};

fn main() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("ij = {}, ji = {}, ijk = {}", i * j, j * i, i * j * k);

    let p = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    println!("p = {p}, |p| = {:.6}, p⁻¹ = {}", p.norm(), p.inverse().unwrap());

    // Every non-real quaternion is α + Iβ on exactly one upper half slice.
    let c = to_slice_coords(p).unwrap();
    println!("α = {}, β = {:.6}, I = {}", c.alpha, c.beta, c.unit.get());
    println!("back: {}", c.to_quaternion());

    // The sphere α + Sβ is the zero set of x² - 2αx + α² + β².
    let chi = characteristic_poly(p);
    let other = slicereg::SliceCoordinates::new(c.alpha, c.beta, ImaginaryUnit::from_angles(0.4, 2.0));
    println!(
        "Δ(p) = {}, Δ(rotated p) = {}",
        chi.eval(p),
        chi.eval(other.to_quaternion())
    );
}
